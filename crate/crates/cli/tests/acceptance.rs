//! One PASS/FAIL line per acceptance criterion. All comparisons are exact
//! integer equalities; each criterion also has a wall-clock budget.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use pureres::builders::{
    build_anyhd_minimal, gorenstein_presentation, koszul_complex, GorensteinSpec, KoszulSpec,
};
use pureres::cohomology::certify_acyclic;
use pureres::complex::{check_composition_zero, check_exactness_graded, default_exactness_window};
use pureres::drivers::{
    euler_form_suite, hom_agreement_suite, quartic_counterexample, retry_seed, steiner_checks,
    verify_anyhd, verify_gorenstein, verify_koszul, RunOptions, TheoremReport,
};
use pureres::verdict::{combine, render_table};
use pureres::{
    CohomologyDim, Field, Hypercohomology, LineComplex, Matrix, PolyRing, Presentation, PrimeField,
    Status, Verdict,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 1;
const SAMPLE_POINTS: usize = 50;

type Criterion = (&'static str, Duration, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn field() -> PrimeField {
    PrimeField::default_prime()
}

fn opts() -> RunOptions {
    RunOptions {
        seed: SEED,
        sample_points: SAMPLE_POINTS,
        slack: 2,
    }
}

fn from_verdicts(verdicts: &[Verdict]) -> Outcome {
    let pass = combine(verdicts) == Status::Pass;
    let detail = if pass {
        format!("{} verdicts", verdicts.len())
    } else {
        format!("\n{}", render_table(verdicts))
    };
    Outcome { pass, detail }
}

/// Verdicts for a seeded check, retried once with the derived seed.
fn seeded(check: impl Fn(u64) -> pureres::Result<Vec<Verdict>>) -> Outcome {
    let mut seeds = vec![SEED];
    let mut result = check(SEED);
    let failed = match &result {
        Ok(v) => combine(v) != Status::Pass,
        Err(e) => e.is_genericity_failure(),
    };
    if failed {
        seeds.push(retry_seed(SEED));
        result = check(retry_seed(SEED));
    }
    match result {
        Ok(v) => {
            let mut o = from_verdicts(&v);
            o.detail = format!("{}, seeds {seeds:?}", o.detail);
            o
        }
        Err(e) => Outcome {
            pass: false,
            detail: format!("error: {e}, seeds {seeds:?}"),
        },
    }
}

fn from_reports(reports: pureres::Result<Vec<TheoremReport>>) -> Outcome {
    match reports {
        Ok(rs) => {
            let pass = rs.iter().all(|r| r.passed());
            let mut detail = rs
                .iter()
                .map(|r| {
                    format!(
                        "{} {} {} seeds {:?}",
                        r.theorem,
                        serde_json::Value::Object(r.parameters.clone()),
                        r.status,
                        r.seeds
                    )
                })
                .collect::<Vec<_>>()
                .join("; ");
            for r in rs.iter().filter(|r| !r.passed()) {
                detail.push('\n');
                detail.push_str(&render_table(&r.verdicts));
            }
            Outcome { pass, detail }
        }
        Err(e) => Outcome {
            pass: false,
            detail: format!("error: {e}"),
        },
    }
}

fn criterion_1() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_pureres"))
        .env_remove("PURERES_PRIME")
        .env_remove("PURERES_SEED")
        .args([
            "--format", "text", "quiver", "tits", "--w", "35", "--a", "1", "--b", "35",
        ])
        .output()
        .expect("binary runs");
    let printed = String::from_utf8_lossy(&out.stdout).trim().to_string();
    Outcome {
        pass: out.status.success() && printed == "1",
        detail: format!("printed {printed:?}"),
    }
}

fn criterion_2() -> Outcome {
    // Hom = 1 and Ext^2 = 35; the exceptionality verdict belongs to criterion 8.
    seeded(|s| {
        let v = quartic_counterexample(&field(), SAMPLE_POINTS, s)?;
        Ok(v.into_iter()
            .filter(|v| v.claim.starts_with("dim "))
            .collect())
    })
}

fn criterion_3() -> Outcome {
    seeded(|s| Ok(vec![euler_form_suite(&field(), 100, s)?]))
}

fn criterion_4() -> Outcome {
    let f = field();
    from_reports(
        [(2, 1), (3, 1), (3, 2)]
            .iter()
            .map(|&(n, d)| verify_koszul(&f, n, d, &opts()))
            .collect(),
    )
}

fn criterion_5() -> Outcome {
    from_reports(verify_gorenstein(&field(), 3, 1, &opts()).map(|r| vec![r]))
}

fn criterion_6() -> Outcome {
    let f = field();
    let reports: pureres::Result<Vec<_>> = (1..=3)
        .map(|l| verify_anyhd(&f, 4, l, 1, None, &opts()))
        .collect();
    let witnesses: Vec<String> = reports
        .iter()
        .flatten()
        .flat_map(|r| r.verdicts.iter())
        .filter(|v| v.claim.starts_with("hd("))
        .map(|v| format!("{} witness {}", v.claim, v.provenance["witness_q_t_dim"]))
        .collect();
    let mut o = from_reports(reports);
    o.pass &= witnesses.len() == 3 && witnesses.iter().all(|w| !w.ends_with("null"));
    o.detail = format!("{}; {}", o.detail, witnesses.join("; "));
    o
}

fn count_monomials(vars: usize, d: i64) -> usize {
    match (vars, d) {
        (_, d) if d < 0 => 0,
        (1, _) => 1,
        _ => (0..=d).map(|k| count_monomials(vars - 1, d - k)).sum(),
    }
}

fn exact(c: &LineComplex<PrimeField>) -> bool {
    check_composition_zero(c).passed()
        && check_exactness_graded(c, default_exactness_window(c, 2)).is_exact()
}

fn criterion_7() -> Outcome {
    let f = field();
    let mut failures = Vec::new();
    // (a) Bott against monomial counts.
    for n in 1..=4 {
        let ring = PolyRing::new(n, f).unwrap();
        for d in -8..=8 {
            let p = Presentation::line_bundle(&ring, d);
            let h = Hypercohomology::new(&p);
            for q in 0..=n {
                let expected = match q {
                    0 => count_monomials(n + 1, d),
                    q if q == n => count_monomials(n + 1, -d - n as i64 - 1),
                    _ => 0,
                };
                if h.dim(q as i64, 0) != CohomologyDim::Exact(expected) {
                    failures.push(format!("(a) n={n} d={d} q={q}"));
                }
            }
        }
    }
    // (b) the full Koszul complex has no hypercohomology; (c) exactness of
    // every resolution built here.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut built: Vec<(String, LineComplex<PrimeField>)> = Vec::new();
    for (n, d) in [(2, 1), (3, 1), (3, 2)] {
        let ring = PolyRing::new(n, f).unwrap();
        let Ok(spec) = KoszulSpec::random(&ring, d, &mut rng) else {
            failures.push(format!("(b) koszul n={n} d={d}: no regular sequence"));
            continue;
        };
        let c = koszul_complex(&spec);
        match certify_acyclic(&c, 2) {
            Some(cert) => {
                let h = Hypercohomology::new(&c).with_certificate(cert);
                let nonzero =
                    (-8..=8).any(|u| h.degrees().any(|m| h.dim(m, u) != CohomologyDim::Exact(0)));
                if nonzero {
                    failures.push(format!("(b) koszul n={n} d={d}"));
                }
            }
            None => failures.push(format!("(b) koszul n={n} d={d}: not certified")),
        }
        built.push((format!("koszul n={n} d={d}"), c));
    }
    let ring3 = PolyRing::new(3, f).unwrap();
    match GorensteinSpec::random(&ring3, 1, &mut rng).and_then(|s| gorenstein_presentation(&s)) {
        Ok(p) => built.push(("gorenstein n=3 t=1".into(), (*p).clone())),
        Err(e) => failures.push(format!("(c) gorenstein: {e}")),
    }
    let ring4 = PolyRing::new(4, f).unwrap();
    match build_anyhd_minimal(&ring4, 2, 1, &mut rng) {
        Ok(b) => built.extend(
            b.bundles
                .iter()
                .map(|e| (e.label().to_string(), (**e).clone())),
        ),
        Err(e) => failures.push(format!("(c) anyhd: {e}")),
    }
    for (label, c) in &built {
        if !exact(c) {
            failures.push(format!("(c) {label}"));
        }
    }
    // (d) rank-nullity and kernel annihilation.
    for k in 0..200u64 {
        let mut r = ChaCha8Rng::seed_from_u64(k);
        let (rows, cols) = (1 + (k as usize * 7) % 23, 1 + (k as usize * 11) % 19);
        let data = (0..rows * cols).map(|_| f.random(&mut r)).collect();
        let mut m = Matrix::new(f, rows, cols, data).unwrap();
        // Force rank deficiency on some samples.
        if k % 3 == 0 && rows > 1 {
            let first = m.row(0).to_vec();
            for (c, v) in first.into_iter().enumerate() {
                m.set(rows - 1, c, v);
            }
        }
        let kernel = m.kernel_basis();
        let annihilated = kernel.cols() == 0 || m.product(&kernel).unwrap().is_zero();
        if m.rank() + kernel.cols() != cols || !annihilated || kernel.rank() != kernel.cols() {
            failures.push(format!("(d) sample {k}"));
        }
    }
    // (e) Hom agreement on realized line-bundle-pair instances.
    match hom_agreement_suite(&f, SAMPLE_POINTS, SEED) {
        Ok(v) if v.passed() => {}
        Ok(v) => failures.push(format!("(e) {}", v.computed)),
        Err(e) => failures.push(format!("(e) {e}")),
    }
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("(a)-(e) hold; {} resolutions checked", built.len())
        } else {
            failures.join(", ")
        },
    }
}

fn criterion_8() -> Outcome {
    seeded(|s| {
        let mut v = steiner_checks(&field(), SAMPLE_POINTS, s)?;
        let quartic = quartic_counterexample(&field(), SAMPLE_POINTS, s)?;
        v.extend(
            quartic
                .into_iter()
                .filter(|v| v.claim.contains("not exceptional")),
        );
        Ok(v)
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "tits form q(1,35) = 1 with w = 35",
            Duration::from_secs(1),
            criterion_1,
        ),
        (
            "quartic cokernel: Hom = 1, Ext^2 = 35",
            Duration::from_secs(60),
            criterion_2,
        ),
        (
            "Hom - Ext^1 = q(a,b) on 100 representations",
            Duration::from_secs(10),
            criterion_3,
        ),
        (
            "Koszul syzygies: rank, hd, simple, self-dual",
            Duration::from_secs(300),
            criterion_4,
        ),
        (
            "Gorenstein syzygies n=3 t=1",
            Duration::from_secs(300),
            criterion_5,
        ),
        (
            "prescribed hd l = 1, 2, 3 on P^4",
            Duration::from_secs(600),
            criterion_6,
        ),
        (
            "oracle suites (a)-(e)",
            Duration::from_secs(120),
            criterion_7,
        ),
        (
            "Steiner Ext vanishing and exceptionality",
            Duration::from_secs(120),
            criterion_8,
        ),
    ];
    let mut all = true;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let within = elapsed <= *budget;
        let pass = outcome.pass && within;
        all &= pass;
        println!(
            "criterion {}: {} | {name} | {:.1}s of {}s budget | tolerance exact | {}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            outcome.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
