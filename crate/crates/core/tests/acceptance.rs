//! End-to-end acceptance checks. Prints one `PASS`/`FAIL` line per criterion and exits
//! non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use tropfrieze::classical::{
    enumerate_triangulations, frieze_from_quiddity, quiddity_from_triangulation, tropical_band_from_diagonal,
};
use tropfrieze::dynkin::{cartan_data, DynkinType, Orientation};
use tropfrieze::frieze::{compatible, evaluate, is_tropical_frieze};
use tropfrieze::harness::{verify, Report, Theorem, VerifyConfig};
use tropfrieze::io::{build_cache, check_cache, CacheStatus};
use tropfrieze::ClusterCategory;

type Check = Result<String, String>;

fn cat(t: DynkinType, o: &str) -> ClusterCategory {
    ClusterCategory::new(t, &o.parse::<Orientation>().unwrap()).unwrap()
}

fn sample_types() -> Vec<DynkinType> {
    vec![DynkinType::a(2), DynkinType::a(3), DynkinType::a(4), DynkinType::a(5), DynkinType::d(4)]
}

/// The value-sample configuration shared by criteria 3, 4, 7 and 8.
fn value_config(theorem: Theorem, t: DynkinType) -> VerifyConfig {
    let small = t == DynkinType::a(2) || t == DynkinType::a(3);
    VerifyConfig {
        samples: 500,
        per_seed: true,
        exhaustive: small,
        range: if small { (-2, 2) } else { (-10, 10) },
        rng_seed: 2024,
        ..VerifyConfig::new(theorem)
    }
}

fn run_suite(configs: impl IntoIterator<Item = (DynkinType, VerifyConfig)>) -> Check {
    let mut total = 0;
    let mut summary = Vec::new();
    for (t, config) in configs {
        let c = cat(t, "linear");
        let report: Report = verify(&c, &config).map_err(|e| format!("{t}: {e}"))?;
        if let Some(f) = report.failures.first() {
            return Err(format!("{t}: {} failures, first at sample {}: {}", report.failures.len(), f.sample, f.detail));
        }
        total += report.samples;
        if !report.notes.is_empty() {
            summary.push(format!("{t} {:?}", report.notes));
        }
    }
    Ok(format!("{total} samples {}", summary.join(" ")).trim_end().to_string())
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn contains_row_up_to_translation(rows: &[Vec<i64>], want: &[i64]) -> bool {
    rows.iter().any(|row| (0..row.len()).any(|s| (0..row.len()).all(|j| row[(j + s) % row.len()] == want[j])))
}

fn c1_tropical_band() -> Check {
    let band = tropical_band_from_diagonal(6, &[2, 3, 4]).map_err(|e| e.to_string())?;
    ensure(band.is_valid(), "band violates the tropical diamond rule")?;
    for want in [[2, 1, 1, -1, 4, -2], [3, 2, -2, 3, 2, -2], [4, -2, 2, 1, 1, -1]] {
        ensure(contains_row_up_to_translation(band.rows(), &want), format!("row {want:?} missing"))?;
    }
    Ok("rows (2,1,1,-1,4,-2) (3,2,-2,3,2,-2) (4,-2,2,1,1,-1) present".into())
}

fn c2_classical_frieze() -> Check {
    let band = frieze_from_quiddity(&[2, 2, 2, 1, 4, 1]).map_err(|e| e.to_string())?;
    let want: [[i64; 6]; 5] =
        [[1; 6], [2, 2, 2, 1, 4, 1], [3, 3, 1, 3, 3, 1], [4, 1, 2, 2, 2, 1], [1; 6]];
    ensure(band.rows().iter().zip(&want).all(|(r, w)| r[..] == w[..]), format!("rows {:?}", band.rows()))?;
    ensure(band.rows().iter().flatten().all(|&v| v > 0), "non-positive entry")?;
    ensure(band.is_valid(), "unimodular rule fails")?;
    // the fan triangulation gives the same quiddity class
    let fan = quiddity_from_triangulation(6, &[(0, 2), (0, 3), (0, 4)]).map_err(|e| e.to_string())?;
    ensure(contains_row_up_to_translation(&[fan], &[2, 2, 2, 1, 4, 1]), "fan quiddity not in the class")?;
    Ok("rows match, all positive".into())
}

fn c3_round_trip() -> Check {
    run_suite(sample_types().into_iter().map(|t| (t, value_config(Theorem::Prop16, t))))
}

fn c4_sign() -> Check {
    run_suite(sample_types().into_iter().map(|t| (t, value_config(Theorem::Prop4, t))))
}

fn c5_criterion() -> Check {
    run_suite([DynkinType::a(2), DynkinType::a(3)].map(|t| {
        (t, VerifyConfig { exhaustive: true, range: (-3, 3), ..VerifyConfig::new(Theorem::Thm2) })
    }))
}

fn c6_transport() -> Check {
    run_suite(
        sample_types()
            .into_iter()
            .map(|t| (t, VerifyConfig { samples: 500, rng_seed: 10, ..VerifyConfig::new(Theorem::Prop10) })),
    )
}

fn c7_normal_form() -> Check {
    run_suite(sample_types().into_iter().map(|t| (t, value_config(Theorem::Thm15, t))))
}

fn c8_sign_coherent() -> Check {
    run_suite(sample_types().into_iter().map(|t| (t, value_config(Theorem::Thm17, t))))
}

fn c9_counterexample() -> Check {
    let c = cat(DynkinType::a(3), "linear");
    let g = c.ar();
    let id = |s: &str| g.lookup(s).map_err(|e| e.to_string());
    let d1 = c.hammocks().get(id("SP[1]")?).values.clone();
    let d3 = c.hammocks().get(id("SP[3]")?).values.clone();
    for (name, d) in [("d1", &d1), ("d3", &d3)] {
        let check = is_tropical_frieze(&c, d).map_err(|e| e.to_string())?;
        ensure(check.is_frieze(), format!("{name} is not a frieze"))?;
    }
    ensure(!compatible(&c, &d1, &d3).map_err(|e| e.to_string())?, "d1 and d3 reported compatible")?;
    let (l, m) = (id("SP[2]")?, id("M[1,1,1]")?);
    let graph = c.graph().map_err(|e| e.to_string())?;
    let rel = graph
        .relations
        .iter()
        .find(|r| (r.l, r.m) == (l.min(m), l.max(m)) && r.from_exchange)
        .ok_or("exchange pair SP[2] / M[1,1,1] missing")?;
    let diff = |d: &[i64]| evaluate(d, &rel.e).unwrap() - evaluate(d, &rel.e_prime).unwrap();
    let product = diff(&d1) * diff(&d3);
    ensure(product == -1, format!("product {product}"))?;
    let sum: Vec<i64> = d1.iter().zip(&d3).map(|(a, b)| a + b).collect();
    let check = is_tropical_frieze(&c, &sum).map_err(|e| e.to_string())?;
    let v = check.violation_at(l, m).ok_or("d1 + d3 satisfies the exchange relation")?;
    ensure((v.lhs, v.rhs) == (2, 1), format!("lhs {} rhs {}", v.lhs, v.rhs))?;
    Ok(format!("product -1 at {}, lhs 2 vs rhs 1", rel.render(&c)))
}

fn catalan(n: u64) -> u64 {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

fn c10_counts() -> Check {
    let mut out = Vec::new();
    for (t, want) in [
        (DynkinType::a(1), 2),
        (DynkinType::a(2), 5),
        (DynkinType::a(3), 14),
        (DynkinType::a(4), 42),
        (DynkinType::d(4), 50),
    ] {
        let c = cat(t, "linear");
        let cliques = tropfrieze::hammock::enumerate_cluster_tilting(c.ar(), c.hammocks()).map_err(|e| e.to_string())?;
        let nodes = c.graph().map_err(|e| e.to_string())?.len();
        ensure(cliques.len() == want && nodes == want, format!("{t}: cliques {} graph {nodes}", cliques.len()))?;
        if let tropfrieze::dynkin::Family::A = t.family() {
            let n = t.rank() + 3;
            let tri = enumerate_triangulations(n).len();
            ensure(tri == want && catalan(n as u64 - 2) == want as u64, format!("{t}: {tri} triangulations"))?;
        }
        out.push(format!("{t}:{want}"));
    }
    Ok(out.join(" "))
}

fn c11_ringel() -> Check {
    let random = sample_types()
        .into_iter()
        .map(|t| (t, VerifyConfig { samples: 200, range: (0, 4), rng_seed: 11, ..VerifyConfig::new(Theorem::Ringel) }));
    let exhaustive = [DynkinType::a(2), DynkinType::a(3)]
        .map(|t| (t, VerifyConfig { exhaustive: true, range: (0, 2), ..VerifyConfig::new(Theorem::Ringel) }));
    run_suite(random.chain(exhaustive))
}

fn supported_types() -> Vec<DynkinType> {
    let mut v: Vec<DynkinType> = (1..=8).map(DynkinType::a).collect();
    v.extend((4..=6).map(DynkinType::d));
    v.extend((6..=8).map(DynkinType::e));
    v
}

fn c12_structure() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut checked = 0;
    for t in supported_types() {
        for o in ["linear", "alternating"] {
            let c = cat(t, o);
            let g = c.ar();
            let data = cartan_data(t);
            let want = t.rank() * (data.coxeter_number + 2) / 2;
            ensure(g.len() == want, format!("{t} {o}: {} vertices, expected {want}", g.len()))?;
            g.check_structure().map_err(|e| format!("{t} {o}: {e}"))?;
            for v in 0..g.len() {
                ensure(g.tau_inv(g.tau(v)) == v, format!("{t} {o}: τ not bijective at {}", g.id(v)))?;
            }
            // every cache build is checked against a fresh one
            if t.rank() <= 6 {
                build_cache(dir.path(), &c).map_err(|e| e.to_string())?;
                let fresh = ClusterCategory::new(t, &o.parse::<Orientation>().unwrap()).unwrap();
                let status = check_cache(dir.path(), &fresh).map_err(|e| e.to_string())?;
                ensure(status.iter().all(|(_, s)| *s == CacheStatus::Fresh), format!("{t} {o}: cache {status:?}"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (type, orientation) pairs"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check, Duration); 12] = [
        ("1  order-6 tropical band", c1_tropical_band, Duration::from_millis(1)),
        ("2  order-6 classical frieze", c2_classical_frieze, Duration::from_millis(1)),
        ("3  values -> frieze -> values bijection", c3_round_trip, Duration::from_secs(30)),
        ("4  one-signed friezes vanish", c4_sign, Duration::from_secs(30)),
        ("5  f_{T,m} frieze criterion", c5_criterion, Duration::from_secs(60)),
        ("6  g-vector transport", c6_transport, Duration::from_secs(10)),
        ("7  normal form", c7_normal_form, Duration::from_secs(60)),
        ("8  sign-coherent tilters", c8_sign_coherent, Duration::from_secs(60)),
        ("9  A3 non-compatible pair", c9_counterexample, Duration::from_secs(1)),
        ("10 cluster-tilting counts", c10_counts, Duration::from_secs(30)),
        ("11 hammock decomposition", c11_ringel, Duration::from_secs(60)),
        ("12 AR quiver invariants", c12_structure, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let line = match &result {
            Ok(detail) => format!("PASS {name} [{elapsed:.2?}, budget {budget:?}] {detail}"),
            Err(why) => {
                failed += 1;
                format!("FAIL {name} [{elapsed:.2?}] {why}")
            }
        };
        println!("{line}");
        if result.is_ok() && elapsed > budget {
            println!("     note: {name} exceeded its runtime budget");
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
