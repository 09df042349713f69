//! Acceptance run: one PASS/FAIL line per criterion, each with its time
//! limit. Runs without the libtest harness so the lines are always shown.

use std::time::{Duration, Instant};

use isotope::commands::{self, AtlasArgs};
use isotope_core::classify::{Oracle, TypeTag};
use isotope_core::verify::{self, Coverage, SuiteReport};
use isotope_core::CyclicExtension;

struct Criterion {
    id: u8,
    title: &'static str,
    limit: Duration,
}

fn ext(p: u32, m: u32, n: usize) -> CyclicExtension {
    CyclicExtension::build(p, m, n).expect("valid extension")
}

fn summarize(reports: &[SuiteReport]) -> (bool, String) {
    let ok = reports.iter().all(|r| r.passed());
    let detail = reports
        .iter()
        .map(|r| {
            let mut s = format!("{} {}/{}", r.name, r.checked - r.failures, r.checked);
            if let Some(n) = &r.note {
                s.push_str(&format!(" ({n})"));
            }
            if let Some(c) = &r.counterexample {
                s.push_str(&format!(" first failure: {c}"));
            }
            s
        })
        .collect::<Vec<_>>()
        .join("; ");
    (ok, detail)
}

fn det_identity() -> (bool, String) {
    let t = Instant::now();
    let mut reports = vec![verify::det_identity(&ext(2, 1, 3), Coverage::Exhaustive)];
    let exhaustive = t.elapsed();
    for (i, (p, m, n)) in [(3, 1, 3), (2, 2, 3), (5, 1, 3), (2, 1, 2), (2, 1, 4)].into_iter().enumerate() {
        reports.push(verify::det_identity(&ext(p, m, n), Coverage::Random { samples: 10_000, seed: 100 + i as u64 }));
    }
    let (ok, detail) = summarize(&reports);
    let fast = exhaustive <= Duration::from_secs(1);
    (ok && fast, format!("exhaustive GF(8) part {:.3}s; {detail}", exhaustive.as_secs_f64()))
}

fn hilbert90() -> (bool, String) {
    let mut reports = Vec::new();
    let mut fields = 0;
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29] {
        for m in 1..=9u32 {
            for n in 1..=9usize {
                let order = (p as u64).pow(m).saturating_pow(n as u32);
                if order > 729 || (n == 1 && m > 1) {
                    continue;
                }
                reports.push(verify::hilbert90(&ext(p, m, n)));
                fields += 1;
            }
        }
    }
    let (ok, _) = summarize(&reports);
    let checked: u64 = reports.iter().map(|r| r.checked).sum();
    (ok, format!("{fields} extensions with q^n <= 729, {checked} checks"))
}

fn heart() -> (bool, String) {
    summarize(&[verify::heart_roundtrip(&ext(2, 1, 3), 1000, 1000, 3)])
}

fn pairs_q2() -> Vec<(isotope_core::IsotopePresentation, isotope_core::IsotopePresentation)> {
    let e = ext(2, 1, 3);
    let forms = verify::canonical_forms(&e).unwrap();
    verify::within_type_pairs(&e, &forms)
}

fn oracle_equivalence() -> (bool, String) {
    let e2 = ext(2, 1, 3);
    let e3 = ext(3, 1, 3);
    let o2 = Oracle::new(&e2).unwrap();
    let o3 = Oracle::new(&e3).unwrap();
    let r2 = verify::oracle_equivalence(&e2, &o2, &pairs_q2()).unwrap();
    let r3 = verify::oracle_equivalence(&e3, &o3, &verify::random_pairs(&e3, 1000, 42).unwrap()).unwrap();
    summarize(&[r2, r3])
}

fn fast_paths() -> (bool, String) {
    let e2 = ext(2, 1, 3);
    let e3 = ext(3, 1, 3);
    let e4 = ext(2, 2, 3);
    let mut reports = vec![
        verify::cubic_fast_paths(&e2, &pairs_q2()).unwrap(),
        verify::cubic_fast_paths(&e3, &verify::random_pairs(&e3, 1000, 42).unwrap()).unwrap(),
    ];
    // Alternative readings of the second unit type, against the oracle.
    for e in [&e3, &e4] {
        let o = Oracle::new(e).unwrap();
        let (mut r, _) = verify::case2_readings(e, &o, 300, 5).unwrap();
        r.name = if e.q() == 3 { "case2_readings q=3" } else { "case2_readings q=4" };
        reports.push(r);
    }
    summarize(&reports)
}

fn emptiness() -> (bool, String) {
    summarize(&[verify::type_emptiness(&ext(2, 1, 3)).unwrap()])
}

fn scaling() -> (bool, String) {
    summarize(&[verify::scaling(&ext(3, 1, 3), 100, 11).unwrap()])
}

fn atlas() -> (bool, String) {
    let e = ext(2, 1, 3);
    let consistency = verify::atlas_consistency(&e).unwrap();
    let args = AtlasArgs { samples: None, seed: 42, oracle: true, budget: None };
    let render = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| serde_json::to_string_pretty(&commands::atlas(&e, &args).unwrap().value).unwrap())
    };
    let first = render(1);
    let stable = [1, 4].iter().all(|&t| render(t) == first);
    let counts: Vec<String> = serde_json::from_str::<serde_json::Value>(&first).unwrap()["types"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| format!("{}:{}", t["type_index"], t["class_count"]))
        .collect();
    let (ok, detail) = summarize(&[consistency]);
    (ok && stable, format!("{detail}; classes per type {}; byte-stable: {stable}", counts.join(" ")))
}

fn division() -> (bool, String) {
    let e = ext(2, 1, 3);
    let forms = verify::canonical_forms(&e).unwrap();
    let random = verify::random_presentations(&e, 1000, 9);
    let mut a = verify::division_closure(&e, forms.iter());
    a.note = Some(format!(
        "{} canonical forms over {} types",
        forms.len(),
        forms.iter().map(TypeTag::of_presentation).collect::<std::collections::BTreeSet<_>>().len()
    ));
    summarize(&[a, verify::division_closure(&e, random.iter())])
}

fn main() {
    let criteria: [(Criterion, fn() -> (bool, String)); 9] = [
        (Criterion { id: 1, title: "determinant identity", limit: Duration::from_secs(10) }, det_identity),
        (Criterion { id: 2, title: "Hilbert 90", limit: Duration::from_secs(1) }, hilbert90),
        (Criterion { id: 3, title: "Kaplansky heart round trip", limit: Duration::from_secs(60) }, heart),
        (Criterion { id: 4, title: "oracle equivalence", limit: Duration::from_secs(300) }, oracle_equivalence),
        (Criterion { id: 5, title: "cubic closed forms", limit: Duration::from_secs(300) }, fast_paths),
        (Criterion { id: 6, title: "types 2/3 empty over GF(2)", limit: Duration::from_secs(1) }, emptiness),
        (Criterion { id: 7, title: "scaling isomorphism", limit: Duration::from_secs(30) }, scaling),
        (Criterion { id: 8, title: "atlas self-consistency", limit: Duration::from_secs(600) }, atlas),
        (Criterion { id: 9, title: "division closure", limit: Duration::from_secs(60) }, division),
    ];
    let mut failed = 0;
    for (c, run) in criteria {
        let t = Instant::now();
        let (ok, detail) = run();
        let dt = t.elapsed();
        let in_time = dt <= c.limit;
        let pass = ok && in_time;
        failed += !pass as u32;
        println!(
            "{} [{}] {} ({:.2}s, limit {}s{}): {}",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            dt.as_secs_f64(),
            c.limit.as_secs(),
            if in_time { "" } else { ", over time" },
            detail
        );
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
