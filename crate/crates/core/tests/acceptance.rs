//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any of them fails.

mod common;

use std::time::{Duration, Instant};

use num_complex::Complex64;
use num_rational::Rational64;
use soq::classify::{
    classify_irreducible, compare_with_scan, predict_constituents, scan_lattice, scan_spec,
};
use soq::compactrep::build_class1;
use soq::degenrep::{build_degenerate, build_degenerate_primed, RepSpec};
use soq::gtbasis::{enumerate_chain, HalfInt};
use soq::qarith::{QParam, SpectralParam};
use soq::verify::{check_relations, check_star, solve_intertwiner, solve_metric, MetricStatus};
use soq::Error;

type Verdict = Result<String, String>;

fn rat(n: i64, d: i64) -> Rational64 {
    Rational64::new(n, d)
}

fn q(v: f64) -> QParam {
    QParam::new(v).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || {
        format!("took {:.1}s, limit {}s", t.as_secs_f64(), limit.as_secs())
    })
}

fn compact_relations() -> Verdict {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for qv in [0.5, 1.0, 2.0] {
        for n in 3..=6 {
            for m in 0..=4 {
                let rep = build_class1(n, m, &q(qv)).map_err(|e| e.to_string())?;
                let report = check_relations(&rep, 0, 1e-10).map_err(|e| e.to_string())?;
                ensure(report.pass, || {
                    format!("n={n} m={m} q={qv}: {:?}", report.worst())
                })?;
                worst = worst.max(report.max_residual);
                count += 1;
            }
        }
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!(
        "{count} representations, max residual {worst:.2e} < 1e-10, {:.2}s",
        start.elapsed().as_secs_f64()
    ))
}

fn dimension_oracle() -> Verdict {
    let mut count = 0;
    for n in 3..=6 {
        for m in 0..=4usize {
            let got = enumerate_chain(n, HalfInt::int(m as i64))
                .map_err(|e| e.to_string())?
                .len();
            let want = common::class1_dim(n, m);
            ensure(got == want, || format!("n={n} m={m}: {got} != {want}"))?;
            count += 1;
        }
    }
    Ok(format!(
        "{count} (n, m) pairs equal the classical dimension formula"
    ))
}

fn degenerate_relations() -> Verdict {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (r, s) in [(3, 3), (3, 4), (4, 3), (4, 4)] {
        let center = (r + s - 2) as f64 / 2.0;
        let lambdas = [
            SpectralParam::real(rat(37, 100)),
            SpectralParam::integer(-2),
            SpectralParam::inexact(Complex64::new(center, 1.0)),
            SpectralParam::exact(rat(37, 100), rat(1, 1)),
        ];
        for eps in 0..2u8 {
            for lam in lambdas {
                for qv in [0.5, 2.0] {
                    let spec = RepSpec::new(r, s, eps, lam, q(qv), 8).map_err(|e| e.to_string())?;
                    let rep = build_degenerate(&spec).map_err(|e| e.to_string())?;
                    let report = check_relations(&rep, 3, 1e-9).map_err(|e| e.to_string())?;
                    ensure(report.pass, || {
                        format!("r={r} s={s} ε={eps} λ={lam} q={qv}: {:?}", report.worst())
                    })?;
                    worst = worst.max(report.max_residual);
                    count += 1;
                }
            }
        }
    }
    within(Duration::from_secs(120), start)?;
    Ok(format!(
        "{count} representations, max residual {worst:.2e} < 1e-9, {:.2}s",
        start.elapsed().as_secs_f64()
    ))
}

fn grid_rationals() -> Vec<Rational64> {
    [
        (1, 2),
        (-1, 2),
        (3, 2),
        (5, 2),
        (7, 2),
        (9, 2),
        (1, 3),
        (2, 3),
        (-5, 3),
        (7, 3),
        (1, 4),
        (-7, 4),
        (13, 4),
        (2, 5),
        (37, 100),
        (11, 6),
        (-13, 6),
        (17, 7),
        (9, 8),
        (29, 10),
    ]
    .iter()
    .map(|&(n, d)| rat(n, d))
    .collect()
}

fn in_odd_odd_gap(r: usize, s: usize, eps: u8, l: Option<i64>) -> bool {
    let Some(l) = l else { return false };
    r % 2 == 1
        && s % 2 == 1
        && (l - eps as i64).rem_euclid(2) == 0
        && !(l > 0 && 2 * l < (r + s) as i64 - 4)
}

fn theorem_consistency() -> Verdict {
    let mut checked = 0;
    let mut disagreements = Vec::new();
    let mut unclassified = Vec::new();
    for r in 3..=5usize {
        for s in 3..=5usize {
            for eps in 0..2u8 {
                let mut grid: Vec<SpectralParam> = (-6..=(r + s) as i64 + 4)
                    .map(SpectralParam::integer)
                    .collect();
                grid.extend(grid_rationals().into_iter().map(SpectralParam::real));
                // the 2πi/h shift leaves the vanishing pattern unchanged
                grid.extend(
                    (-2..=2).map(|l| SpectralParam::exact(Rational64::from_integer(l), rat(2, 1))),
                );
                for lam in grid {
                    let scan =
                        scan_lattice(&scan_spec(r, s, eps, lam, None).map_err(|e| e.to_string())?)
                            .map_err(|e| e.to_string())?;
                    match predict_constituents(r, s, eps, &lam) {
                        Err(Error::UnclassifiedReducibleCase { .. }) => {
                            let gap = in_odd_odd_gap(
                                r,
                                s,
                                eps,
                                soq::qarith::normalize_spectral(&lam)
                                    .map_err(|e| e.to_string())?
                                    .0
                                    .as_integer(),
                            );
                            unclassified.push((r, s, eps, lam, scan.is_irreducible(), gap));
                            continue;
                        }
                        Err(e) => return Err(e.to_string()),
                        Ok(_) => {}
                    }
                    let theorem =
                        classify_irreducible(r, s, eps, &lam).map_err(|e| e.to_string())?;
                    if theorem != scan.is_irreducible() {
                        disagreements.push(format!("r={r} s={s} ε={eps} λ={lam}"));
                    }
                    checked += 1;
                }
            }
        }
    }
    ensure(disagreements.is_empty(), || {
        format!("disagreements: {}", disagreements.join(", "))
    })?;
    let outside: Vec<_> = unclassified.iter().filter(|u| !u.5).collect();
    ensure(outside.is_empty(), || {
        format!("unclassified outside the odd/odd gap: {outside:?}")
    })?;
    let scanner_irreducible = unclassified.iter().filter(|u| u.4).count();
    Ok(format!(
        "{checked} points agree; {} unclassified (all in the odd/odd gap, scanner: {} irreducible, {} reducible)",
        unclassified.len(),
        scanner_irreducible,
        unclassified.len() - scanner_irreducible
    ))
}

fn decomposition_agreement() -> Verdict {
    let mut cases = 0;
    let mut failures = Vec::new();
    for r in 3..=5usize {
        for s in 3..=5usize {
            for eps in 0..2u8 {
                for l in -4..=(r + s) as i64 {
                    let lam = SpectralParam::integer(l);
                    let Ok(c) = predict_constituents(r, s, eps, &lam) else {
                        continue;
                    };
                    if c.irreducible {
                        continue;
                    }
                    let scan =
                        scan_lattice(&scan_spec(r, s, eps, lam, None).map_err(|e| e.to_string())?)
                            .map_err(|e| e.to_string())?;
                    let d = compare_with_scan(&c, &scan);
                    if !d.is_empty() {
                        failures.push(format!("r={r} s={s} ε={eps} λ={l}: {}", d.join("; ")));
                    }
                    cases += 1;
                }
            }
        }
    }
    ensure(failures.is_empty(), || failures.join(" | "))?;
    Ok(format!(
        "{cases} reducible cases: block sets and subspace/quotient roles match the scanner"
    ))
}

fn periodicity() -> Verdict {
    let cases = [
        (3, 3, 0, SpectralParam::real(rat(37, 100)), 2.0),
        (4, 4, 1, SpectralParam::integer(-2), 2.0),
        (3, 4, 0, SpectralParam::exact(rat(5, 2), rat(1, 3)), 0.5),
        (
            4,
            3,
            1,
            SpectralParam::inexact(Complex64::new(1.2, 0.4)),
            2.0,
        ),
        (4, 4, 0, SpectralParam::exact(rat(-7, 3), rat(1, 1)), 0.5),
    ];
    let mut worst_diff: f64 = 0.0;
    let mut worst_res: f64 = 0.0;
    for (r, s, eps, lam, qv) in cases {
        let p = q(qv);
        let build = |l: SpectralParam| -> Result<_, String> {
            build_degenerate(&RepSpec::new(r, s, eps, l, p, 8).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())
        };
        let a = build(lam)?;
        let full = build(
            lam.shift_imaginary(rat(4, 1), &p)
                .map_err(|e| e.to_string())?,
        )?;
        for (x, y) in a.generators.iter().zip(&full.generators) {
            let d = x.matrix.max_abs_diff(&y.matrix);
            ensure(d < 1e-12, || {
                format!("r={r} s={s} λ={lam}: 4πi/h shift differs by {d:.2e}")
            })?;
            worst_diff = worst_diff.max(d);
        }
        let half = build(
            lam.shift_imaginary(rat(2, 1), &p)
                .map_err(|e| e.to_string())?,
        )?;
        let sol = solve_intertwiner(&a, &half, 1e-8)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("r={r} s={s} λ={lam}: no intertwiner for the 2πi/h shift"))?;
        ensure(sol.residual < 1e-8, || {
            format!("residual {:.2e}", sol.residual)
        })?;
        ensure(
            sol.weights
                .iter()
                .all(|w| (w.value().norm() - 1.0).abs() < 1e-8),
            || format!("r={r} s={s} λ={lam}: intertwiner is not unimodular"),
        )?;
        worst_res = worst_res.max(sol.residual);
    }
    Ok(format!(
        "{} cases: 4πi/h max diff {worst_diff:.2e} < 1e-12, 2πi/h unimodular intertwiner residual {worst_res:.2e} < 1e-8",
        cases.len()
    ))
}

fn mirror_equivalence() -> Verdict {
    let lambdas = [
        SpectralParam::real(rat(37, 100)),
        SpectralParam::real(rat(7, 3)),
        SpectralParam::real(rat(-5, 4)),
        SpectralParam::real(rat(13, 10)),
        SpectralParam::exact(rat(1, 3), rat(1, 2)),
    ];
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for (r, s) in [(3, 3), (3, 4), (4, 4)] {
        for eps in 0..2u8 {
            for lam in lambdas {
                let spec = RepSpec::new(r, s, eps, lam, q(2.0), 8).map_err(|e| e.to_string())?;
                let a = build_degenerate(&spec).map_err(|e| e.to_string())?;
                let mirrored = lam.reflect(Rational64::from_integer((r + s) as i64 - 2));
                let b = build_degenerate(&spec.with_lambda(mirrored)).map_err(|e| e.to_string())?;
                let sol = solve_intertwiner(&a, &b, 1e-8)
                    .map_err(|e| e.to_string())?
                    .ok_or_else(|| format!("r={r} s={s} ε={eps} λ={lam}: no intertwiner"))?;
                ensure(sol.residual < 1e-8, || {
                    format!("residual {:.2e}", sol.residual)
                })?;
                worst = worst.max(sol.residual);
                count += 1;
            }
        }
    }
    Ok(format!(
        "{count} pairs (λ, r+s−2−λ) intertwined, max residual {worst:.2e} < 1e-8"
    ))
}

fn metric_tests() -> Verdict {
    let p = q(2.0);
    let status = |r, s, eps, lam| -> Result<MetricStatus, String> {
        let rep = build_degenerate(&RepSpec::new(r, s, eps, lam, p, 8).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        Ok(solve_metric(&rep).map_err(|e| e.to_string())?.status)
    };
    let positive = [
        (
            "principal",
            4,
            4,
            0,
            SpectralParam::exact(rat(3, 1), rat(1, 3)),
        ),
        (
            "principal",
            3,
            4,
            1,
            SpectralParam::exact(rat(5, 2), rat(3, 5)),
        ),
        (
            "strange",
            4,
            4,
            0,
            SpectralParam::exact(rat(1, 2), rat(1, 1)),
        ),
        (
            "strange",
            3,
            4,
            1,
            SpectralParam::exact(rat(7, 10), rat(1, 1)),
        ),
        (
            "supplementary even/even",
            4,
            4,
            0,
            SpectralParam::real(rat(7, 2)),
        ),
        (
            "supplementary odd/odd",
            3,
            3,
            0,
            SpectralParam::real(rat(5, 2)),
        ),
        (
            "supplementary mixed",
            4,
            5,
            1,
            SpectralParam::real(rat(15, 4)),
        ),
    ];
    for (name, r, s, eps, lam) in positive {
        let st = status(r, s, eps, lam)?;
        ensure(st == MetricStatus::Found, || {
            format!("{name} r={r} s={s} ε={eps} λ={lam}: {st:?}")
        })?;
    }
    let controls = [
        (4, 4, 0, SpectralParam::inexact(Complex64::new(0.7, 1.3))),
        (3, 4, 0, SpectralParam::real(rat(9, 2))),
    ];
    for (r, s, eps, lam) in controls {
        let st = status(r, s, eps, lam)?;
        ensure(st != MetricStatus::Found, || {
            format!("control r={r} s={s} ε={eps} λ={lam} has a metric")
        })?;
    }
    let mut worst: f64 = 0.0;
    for (r, s, eps, lam) in [
        (4, 4, 0, SpectralParam::exact(rat(3, 1), rat(1, 3))),
        (3, 4, 1, SpectralParam::inexact(Complex64::new(2.5, 0.9))),
    ] {
        let rep = build_degenerate_primed(
            &RepSpec::new(r, s, eps, lam, p, 8).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        let report = check_star(&rep, 1e-9).map_err(|e| e.to_string())?;
        ensure(report.pass, || {
            format!("primed star r={r} s={s} λ={lam}: {:?}", report.worst())
        })?;
        worst = worst.max(report.max_residual);
    }
    Ok(format!(
        "{} positive metrics, {} controls without, primed principal star residual {worst:.2e} < 1e-9",
        positive.len(),
        controls.len()
    ))
}

fn classical_limit() -> Verdict {
    let near = q(1.0 + 1e-8);
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in 3..=6 {
        for m in 0..=4 {
            let rep = build_class1(n, m, &near).map_err(|e| e.to_string())?;
            worst = worst.max(common::compact_gap(&rep));
            count += 1;
        }
    }
    for (r, s) in [(3, 3), (3, 4), (4, 3), (4, 4)] {
        for eps in 0..2u8 {
            for (num, den) in [(37, 100), (-2, 1), (5, 2)] {
                let spec = RepSpec::new(r, s, eps, SpectralParam::real(rat(num, den)), near, 8)
                    .map_err(|e| e.to_string())?;
                let rep = build_degenerate(&spec).map_err(|e| e.to_string())?;
                worst = worst.max(common::degenerate_gap(&rep, num as f64 / den as f64));
                count += 1;
            }
        }
    }
    ensure(worst < 1e-6, || format!("max entrywise gap {worst:.2e}"))?;
    Ok(format!(
        "{count} representations at q = 1+1e-8, max gap to the classical oracle {worst:.2e} < 1e-6"
    ))
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 9] = [
        ("compact relation suite", compact_relations),
        ("dimension oracle", dimension_oracle),
        ("degenerate relation suite", degenerate_relations),
        ("irreducibility vs scanner", theorem_consistency),
        ("decomposition agreement", decomposition_agreement),
        ("imaginary periodicity", periodicity),
        ("mirror equivalence", mirror_equivalence),
        ("invariant metrics", metric_tests),
        ("classical limit", classical_limit),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
