//! Human-readable renderings for `--text`.

use std::fmt::Write;

use gdl_core::{Certificate, Labeling, Provenance, Status, VerificationReport};

use crate::survey::SurveyReport;

fn circuits(l: &Labeling) -> String {
    let mut s = String::new();
    for c in 0..l.family().circuit_count() {
        let labels: Vec<String> = l.circuit_labels(c).iter().map(|x| x.to_string()).collect();
        let dls: Vec<String> = l
            .circuit_difference_labels(c)
            .iter()
            .map(|d| format!("{d:+}"))
            .collect();
        let _ = writeln!(
            s,
            "  C{:<3} ({})   dl [{}]",
            l.family().lengths()[c],
            labels.join(" "),
            dls.join(" ")
        );
    }
    s
}

pub fn certificate(cert: &Certificate) -> String {
    let mut s = String::new();
    match &cert.status {
        Status::Gdl { labeling } => {
            let _ = writeln!(s, "gdl found for {}", labeling.family());
            s.push_str(&circuits(labeling));
        }
        Status::NoGdlExhaustive { stats } => {
            let _ = writeln!(
                s,
                "no gdl: search space exhausted after {} nodes ({:.3}s)",
                stats.nodes, stats.elapsed_seconds
            );
        }
        Status::Unsupported { reason, exception } => {
            let tag = if *exception { "no gdl" } else { "unsupported" };
            let _ = writeln!(s, "{tag}: {reason}");
        }
        Status::Timeout { budget } => {
            let _ = writeln!(
                s,
                "timeout: budget exhausted (nodes {}, seconds {})",
                budget.max_nodes.map_or("unbounded".into(), |n| n.to_string()),
                budget.max_seconds.map_or("unbounded".into(), |x| x.to_string())
            );
        }
    }
    match &cert.provenance {
        Provenance::Construction(t) => {
            let _ = writeln!(s, "plan: {}", t.plan);
            if let Some(tri) = &t.triangles {
                let mut cur = Some(tri);
                while let Some(step) = cur {
                    let case = step
                        .case
                        .map(|p| format!(" case {} t={} r={} theta={}", p.case_tag, p.t, p.r, p.theta))
                        .unwrap_or_default();
                    let _ = writeln!(
                        s,
                        "  {:?} n={} from {:?}{case}, {} flips{}",
                        step.kind,
                        step.n,
                        step.source,
                        step.flips.len(),
                        if step.fallback_used { ", fallback used" } else { "" }
                    );
                    cur = step.inner.as_deref();
                }
            }
        }
        Provenance::Search(st) => {
            let _ = writeln!(
                s,
                "search: {} nodes, {:.3}s, symmetry factor {}, {} task(s)",
                st.nodes, st.elapsed_seconds, st.symmetry_factor, st.tasks
            );
        }
        Provenance::None => {}
    }
    s
}

pub fn report(l: &Labeling, r: &VerificationReport) -> String {
    let mut s = String::new();
    let verdict = if r.is_gdl {
        "is a gdl"
    } else if !r.is_bijection {
        "is not a bijection onto 1..n"
    } else {
        "is not a gdl"
    };
    let _ = writeln!(s, "labeling of {} {verdict}", l.family());
    s.push_str(&circuits(l));
    let _ = writeln!(s, "max magnitude {}", r.max_magnitude);
    for (a, b) in &r.duplicate_pairs {
        let _ = writeln!(
            s,
            "  arcs {a} and {b} share dl {:+}",
            r.difference_labels[*a]
        );
    }
    s
}

pub fn survey(rep: &SurveyReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{:<24} {:<15} {:>8} {:>10}", "family", "status", "max|dl|", "seconds");
    for r in &rep.rows {
        let fam: Vec<String> = r.family.iter().map(|k| k.to_string()).collect();
        let status = serde_json::to_value(r.status).unwrap();
        let _ = writeln!(
            s,
            "{:<24} {:<15} {:>8} {:>10.4}",
            format!("{{{}}}", fam.join(",")),
            status.as_str().unwrap_or("?"),
            r.max_magnitude.map_or("-".into(), |m| m.to_string()),
            r.elapsed_seconds
        );
    }
    let _ = writeln!(s, "{} families", rep.summary.families);
    for (k, v) in &rep.summary.counts {
        let name = serde_json::to_value(k).unwrap();
        let _ = writeln!(s, "  {:<15} {v}", name.as_str().unwrap_or("?"));
    }
    if rep.summary.conjecture_falsified {
        let _ = writeln!(
            s,
            "COUNTEREXAMPLES to the conjecture: {:?}",
            rep.summary.counterexamples
        );
    }
    s
}
