use std::time::Instant;
use gdl_core::triangles::{label_c4_plus_n_c3, label_n_c3};
use gdl_core::verify_gdl;

fn main() {
    let hi: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(300);
    let start = Instant::now();
    let mut fb = 0;
    for n in 2..=hi {
        match label_n_c3(n) {
            Ok(c) => {
                let r = verify_gdl(&c.labeling);
                let ok = r.is_gdl && r.max_magnitude <= 3 * n as u64 - 2 && r.count_at(3 * n as u64 - 2) <= 1;
                if !ok || c.trace.fallback_used {
                    fb += 1;
                    println!("nC3 n={n} ok={ok} fb={} case={:?} notes={:?}", c.trace.fallback_used, c.trace.case.map(|p| p.case_tag), c.trace.notes);
                }
            }
            Err(e) => println!("nC3 n={n} ERR {e}"),
        }
    }
    println!("nC3 done {:.2}s fallbacks {fb}", start.elapsed().as_secs_f64());
    let start = Instant::now();
    let mut fb = 0;
    for n in 1..=hi {
        match label_c4_plus_n_c3(n) {
            Ok(c) => {
                let r = verify_gdl(&c.labeling);
                if !r.is_gdl || c.trace.fallback_used() {
                    fb += 1;
                    println!("c4 n={n} ok={} fb={} notes={:?}", r.is_gdl, c.trace.fallback_used(), c.trace.notes);
                }
            }
            Err(e) => println!("c4 n={n} ERR {e}"),
        }
    }
    println!("c4 done {:.2}s fallbacks {fb}", start.elapsed().as_secs_f64());
}
