//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use gdl_core::catalog::{self, Catalog, ProfileKind};
use gdl_core::constructions::{
    extend_with_even_circuit, extend_with_two_c4, is_exception, label_single_circuit,
    within_constructive_coverage,
};
use gdl_core::search::certify_nonexistence;
use gdl_core::triangles::{
    base_table_labeling, case_parameters, classify_pairs, label_c4_plus_n_c3, label_n_c3,
};
use gdl_core::{
    plan_and_construct, search_gdl, verify_gdl, CircuitFamily, Labeling, SearchBudget, Status,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: f64, what: &str) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit, || {
        format!("{what} took {:.2}s (limit {limit}s)", elapsed.as_secs_f64())
    })
}

fn nonexistence() -> Outcome {
    for (lengths, raw) in [(vec![3], 6.0), (vec![2, 3], 120.0)] {
        let family = CircuitFamily::new(lengths).unwrap();
        let start = Instant::now();
        let cert = certify_nonexistence(&family, false).map_err(|e| e.to_string())?;
        within(start.elapsed(), 1.0, &family.to_string())?;
        match cert.status {
            Status::NoGdlExhaustive { stats } => ensure(stats.raw_space <= raw, || {
                format!("{family}: raw space {} > {raw}", stats.raw_space)
            })?,
            other => return Err(format!("{family}: {other:?}")),
        }
    }
    Ok("{3} and {2,3} exhausted".into())
}

fn single_circuits() -> Outcome {
    let start = Instant::now();
    for k in std::iter::once(2).chain(4..=1000) {
        let g = label_single_circuit(k).map_err(|e| format!("k={k}: {e}"))?;
        let r = verify_gdl(&g.labeling);
        ensure(r.is_gdl, || format!("C{k} is not a gdl"))?;
        if k >= 5 {
            ensure(r.count_at(1) == 1, || format!("C{k}: {} arcs of magnitude 1", r.count_at(1)))?;
        }
    }
    within(start.elapsed(), 5.0, "sweep")?;
    Ok(format!("k = 2, 4..=1000 in {:.2}s", start.elapsed().as_secs_f64()))
}

fn triangle_sweep() -> Outcome {
    let start = Instant::now();
    for n in 2..=300 {
        let c = label_n_c3(n).map_err(|e| format!("n={n}: {e}"))?;
        let r = verify_gdl(&c.labeling);
        let top = 3 * n as u64 - 2;
        ensure(r.is_gdl, || format!("{n}·C3 is not a gdl"))?;
        ensure(r.max_magnitude <= top && r.count_at(top) <= 1, || {
            format!("{n}·C3 breaks the magnitude bound")
        })?;
    }
    within(start.elapsed(), 30.0, "sweep")?;
    Ok(format!("n = 2..=300 in {:.2}s", start.elapsed().as_secs_f64()))
}

fn c4_sweep() -> Outcome {
    let start = Instant::now();
    for n in 1..=300 {
        let c = label_c4_plus_n_c3(n).map_err(|e| format!("n={n}: {e}"))?;
        ensure(verify_gdl(&c.labeling).is_gdl, || format!("C4+{n}·C3 is not a gdl"))?;
    }
    within(start.elapsed(), 30.0, "sweep")?;
    Ok(format!("n = 1..=300 in {:.2}s", start.elapsed().as_secs_f64()))
}

fn random_covered_family(rng: &mut ChaCha8Rng) -> CircuitFamily {
    loop {
        let target = rng.gen_range(2..=60);
        let mut lengths = Vec::new();
        if rng.gen_bool(0.5) {
            let max_tri = target / 3;
            let tri = rng.gen_range(0..=max_tri);
            lengths.extend(std::iter::repeat_n(3, tri));
        } else if rng.gen_bool(0.7) && target >= 3 {
            let m = 2 * rng.gen_range(1..=(target - 1) / 2) + 1;
            lengths.push(m);
        }
        let mut total: usize = lengths.iter().sum();
        while total + 2 <= target {
            let room = (target - total) / 2;
            let half = if rng.gen_bool(0.5) {
                rng.gen_range(1..=room.min(3))
            } else {
                rng.gen_range(1..=room)
            };
            lengths.push(2 * half);
            total += 2 * half;
        }
        if lengths.is_empty() {
            continue;
        }
        lengths.shuffle(rng);
        let family = CircuitFamily::new(lengths).unwrap();
        if within_constructive_coverage(&family) && !is_exception(&family) {
            return family;
        }
    }
}

fn theorem_coverage() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6d6c);
    let mut fallbacks = Vec::new();
    for _ in 0..1000 {
        let family = random_covered_family(&mut rng);
        let cert = plan_and_construct(&family, None).map_err(|e| format!("{family}: {e}"))?;
        let l = cert.labeling().ok_or_else(|| format!("{family}: {:?}", cert.status))?;
        ensure(l.family() == &family, || format!("{family}: circuits reordered"))?;
        ensure(verify_gdl(l).is_gdl, || format!("{family}: not a gdl"))?;
        if cert.fallback_used() {
            fallbacks.push(family.to_string());
        }
    }
    for f in &fallbacks {
        println!("    fallback used for {f}");
    }
    ensure(fallbacks.len() <= 5, || format!("{} fallback activations", fallbacks.len()))?;
    Ok(format!("1000 families, {} fallback activations", fallbacks.len()))
}

fn partitions(max: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
        }
        for k in min..=rest {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for total in 2..=max {
        go(total, 2, &mut Vec::new(), &mut out);
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let families = partitions(11);
    let mut without = Vec::new();
    for lengths in &families {
        let family = CircuitFamily::new(lengths.clone()).unwrap();
        let built = plan_and_construct(&family, None).map_err(|e| format!("{family}: {e}"))?;
        let searched = search_gdl(&family, &SearchBudget::unlimited(), None);
        match (&built.status, &searched.status) {
            (Status::Gdl { .. }, Status::Gdl { labeling }) => {
                ensure(verify_gdl(labeling).is_gdl, || format!("{family}: search output"))?
            }
            (Status::Gdl { .. }, other) => {
                return Err(format!("{family}: constructed but search says {other:?}"))
            }
            (_, Status::NoGdlExhaustive { .. }) => without.push(lengths.clone()),
            (_, Status::Gdl { .. }) => {}
            (_, other) => return Err(format!("{family}: search gave {other:?}")),
        }
    }
    ensure(without == vec![vec![3], vec![2, 3]], || format!("no-gdl families {without:?}"))?;
    within(start.elapsed(), 600.0, "equivalence")?;
    Ok(format!(
        "{} families, only {{3}} and {{2,3}} without gdl, {:.2}s",
        families.len(),
        start.elapsed().as_secs_f64()
    ))
}

fn composition_chains() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut steps = 0;
    for _ in 0..200 {
        let k = if rng.gen_bool(0.1) { 2 } else { rng.gen_range(4..=40) };
        let mut g: Labeling = label_single_circuit(k).unwrap().labeling;
        for _ in 0..rng.gen_range(1..=8) {
            let before = g.len();
            let old_circuits = g.family().circuit_count();
            g = if rng.gen_bool(0.4) {
                extend_with_two_c4(&g)
            } else {
                let two_k = *[2, 6, 8, 10, 12, 14, 20, 30].choose(&mut rng).unwrap();
                extend_with_even_circuit(&g, two_k)
            }
            .map_err(|e| e.to_string())?;
            steps += 1;
            ensure(verify_gdl(&g).is_gdl, || format!("{} is not a gdl", g.family()))?;
            for c in old_circuits..g.family().circuit_count() {
                for d in g.circuit_difference_labels(c) {
                    ensure(d.unsigned_abs() as usize > before, || {
                        format!("added arc dl {d} not above |V| = {before}")
                    })?;
                }
            }
        }
    }
    Ok(format!("200 chains, {steps} extension steps"))
}

fn random_labeling(rng: &mut ChaCha8Rng, lengths: Vec<usize>) -> Labeling {
    let family = CircuitFamily::new(lengths).unwrap();
    let mut labels: Vec<usize> = (1..=family.total_vertices()).collect();
    labels.shuffle(rng);
    Labeling::new(family, labels).unwrap()
}

fn property_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    const CASES: usize = 1000;
    for _ in 0..CASES {
        let n = rng.gen_range(1..=30);
        let l = random_labeling(&mut rng, vec![3; n]);
        let c = rng.gen_range(0..n);
        let once = l.flip_triangle(c).unwrap();
        ensure(once.flip_triangle(c).unwrap() == l, || "flip is not an involution".into())?;
        let mut before = l.circuit_difference_labels(c);
        let mut after: Vec<i64> = once.circuit_difference_labels(c).iter().map(|d| -d).collect();
        before.sort_unstable();
        after.sort_unstable();
        ensure(before == after, || "flip does not negate the dls".into())?;
        for other in (0..n).filter(|&o| o != c) {
            ensure(l.circuit_labels(other) == once.circuit_labels(other), || {
                "flip touched another circuit".into()
            })?;
        }
    }
    let mut pairs_checked = 0;
    for i in 0..CASES {
        let n = 10 + i;
        let p = case_parameters(n).unwrap();
        let sub = label_n_c3(p.t).unwrap().labeling;
        let base = base_table_labeling(&p, &sub).unwrap();
        let done = label_n_c3(n).unwrap().labeling;
        for l in [&base, &done] {
            for pair in classify_pairs(l, &p).map_err(|e| e.to_string())? {
                for m in pair.members {
                    ensure(m.small + m.medium == -m.big, || format!("n={n}: s+m != -b"))?;
                    pairs_checked += 1;
                }
            }
        }
    }
    for _ in 0..CASES {
        let count = rng.gen_range(1..=6);
        let lengths: Vec<usize> = (0..count).map(|_| rng.gen_range(2..=12)).collect();
        let l = random_labeling(&mut rng, lengths);
        for c in 0..l.family().circuit_count() {
            ensure(l.circuit_difference_labels(c).iter().sum::<i64>() == 0, || {
                "circuit dls do not sum to zero".into()
            })?;
        }
    }
    Ok(format!(
        "{CASES} flips, {pairs_checked} pair members over {CASES} sizes, {CASES} zero-sum labelings"
    ))
}

fn catalog_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let start = Instant::now();
    let first = catalog::generate_catalog(&a).map_err(|e| e.to_string())?;
    let second = catalog::generate_catalog(&b).map_err(|e| e.to_string())?;
    let count = |kind| first.iter().filter(|e| e.profile == kind).count();
    ensure(count(ProfileKind::UniqueTop) == 8 && count(ProfileKind::Plain) == 7, || {
        format!("{} entries", first.len())
    })?;
    for e in &first {
        e.check().map_err(|e| e.to_string())?;
    }
    ensure(first == second, || "two canonical runs differ".into())?;
    let bytes = std::fs::read_to_string(&a).map_err(|e| e.to_string())?;
    ensure(bytes == std::fs::read_to_string(&b).unwrap(), || "files differ".into())?;
    let loaded = Catalog::load(&a).map_err(|e| e.to_string())?;
    ensure(loaded.to_json() == bytes, || "round trip changed the file".into())?;
    ensure(bytes == catalog::BUNDLED, || "bundled catalog is stale".into())?;
    Ok(format!("15 entries, identical runs, {:.1}s", start.elapsed().as_secs_f64()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("non-existence of C3 and C2+C3", nonexistence),
        ("single-circuit sweep", single_circuits),
        ("n·C3 sweep", triangle_sweep),
        ("C4 + n·C3 sweep", c4_sweep),
        ("theorem coverage", theorem_coverage),
        ("oracle equivalence up to 11 vertices", oracle_equivalence),
        ("composition invariants", composition_chains),
        ("property suite", property_suite),
        ("catalog determinism", catalog_determinism),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
        match outcome {
            Ok(detail) => println!("acceptance {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("acceptance {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
