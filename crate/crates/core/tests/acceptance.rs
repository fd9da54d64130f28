//! Acceptance suite. Each test prints one `ACCEPTANCE Cn <name>: PASS|FAIL`
//! line (run with `--nocapture` to see the lines for passing tests) and
//! enforces its stated tolerance and runtime budget.

use num_complex::Complex64;
use num_rational::Ratio;
use std::time::Instant;
use univalence_core::*;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn line(id: &str, name: &str, passed: bool, started: Instant, detail: &str) {
    println!(
        "ACCEPTANCE {id} {name}: {} ({:.2}s) {detail}",
        if passed { "PASS" } else { "FAIL" },
        started.elapsed().as_secs_f64()
    );
}

#[test]
fn criterion_01_constants_exact_rational() {
    let t0 = Instant::now();
    type Rat = Ratio<i64>;
    let one = Rat::from_integer(1);
    let at_52 = bounds::exact::logderiv_bound(Rat::new(5, 2), one);
    let at_32 = bounds::exact::logderiv_bound(Rat::new(3, 2), one);
    let f_factor = bounds::exact::f_threshold_factor(Rat::new(3, 2), one);
    let ok = at_52 == Rat::new(28, 233) && at_32 == Rat::new(20, 89) && f_factor == Rat::new(89, 20);
    let fast = t0.elapsed().as_secs_f64() < 1.0;
    line(
        "C1",
        "constants-exact",
        ok && fast,
        t0,
        &format!("logderiv(5/2)={at_52}, logderiv(3/2)={at_32}, F-factor={f_factor}"),
    );
    assert_eq!(at_52, Rat::new(28, 233));
    assert_eq!(at_32, Rat::new(20, 89));
    assert_eq!(f_factor, Rat::new(89, 20));
    assert!(fast, "must finish within 1 s");
}

#[test]
fn criterion_02_constants_floating() {
    let t0 = Instant::now();
    let op = OperatorParams::identity();

    let b1 = BesselParams::new_real(0.5, 1.0, 1.0).unwrap();
    let a1 = check_admissible(&b1, &op, DEFAULT_M_INDEX).unwrap();
    let thr1 = g_threshold(&a1);

    let b2 = BesselParams::new_real(-0.5, 1.0, -1.0).unwrap();
    let a2 = check_admissible(&b2, &op, DEFAULT_M_INDEX).unwrap();
    let thr2 = g_threshold(&a2);

    let ok = (thr1 - 1.8959).abs() < 1e-4 && (thr2 - 1.1809).abs() < 1e-4;
    let fast = t0.elapsed().as_secs_f64() < 1.0;
    line(
        "C2",
        "constants-floating",
        ok && fast,
        t0,
        &format!("G thresholds {thr1:.6} (vs 1.8959), {thr2:.6} (vs 1.1809)"),
    );
    assert!((thr1 - 1.8959).abs() < 1e-4);
    assert!((thr2 - 1.1809).abs() < 1e-4);
    assert!(fast, "must finish within 1 s");
}

#[test]
fn criterion_03_multiplier_formula_equivalence() {
    let t0 = Instant::now();
    let lambdas: Vec<f64> = (0..10).map(|i| 0.1 * 100f64.powf(i as f64 / 9.0)).collect();
    let gammas = [0.0, 0.225, 0.45, 0.675, 0.9];
    let ns = [0u32, 1, 2, 4];
    let mut tuples = 0usize;
    let mut worst: f64 = 0.0;
    for &lam in &lambdas {
        for &g in &gammas {
            for &n in &ns {
                tuples += 1;
                let op = OperatorParams::new(lam, g, n).unwrap();
                for m in 1..=60usize {
                    let a = multiplier(m, &op).unwrap();
                    let b = multiplier_pochhammer(m, &op).unwrap();
                    let rel = (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
                    worst = worst.max(rel);
                }
            }
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    let ok = tuples == 200 && worst <= 1e-12 && elapsed < 5.0;
    line(
        "C3",
        "multiplier-equivalence",
        ok,
        t0,
        &format!("{tuples} tuples, m <= 60, worst relative gap {worst:.3e}"),
    );
    assert_eq!(tuples, 200);
    assert!(worst <= 1e-12, "worst relative disagreement {worst}");
    assert!(elapsed < 5.0, "must finish within 5 s");
}

#[test]
fn criterion_04_closed_form_identities() {
    let t0 = Instant::now();
    let grid = DiskGrid::new(64, 128, 0.9).unwrap();
    let mut worst: f64 = 0.0;
    for family in [BesselFamily::FirstKind, BesselFamily::Modified] {
        let (b, d) = family.bd();
        for v in [-0.5, 0.5, 1.5] {
            let params = BesselParams::new_real(v, b, d).unwrap();
            let series = phi_series(&params, 40).unwrap();
            for z in grid.points() {
                let by_series = evaluate(&series, z).unwrap().value;
                let closed = closed_form_value(family, v, z).unwrap();
                worst = worst.max((by_series - closed).norm());
            }
        }
    }
    let elapsed = t0.elapsed().as_secs_f64();
    let ok = worst < 1e-10 && elapsed < 10.0;
    line(
        "C4",
        "closed-form-identities",
        ok,
        t0,
        &format!("six forms on 64x128 grid |z| <= 0.9, worst |gap| {worst:.3e}"),
    );
    assert!(worst < 1e-10, "worst gap {worst}");
    assert!(elapsed < 10.0, "must finish within 10 s");
}

struct GridExtrema {
    ratio_min: f64,
    ratio_max: f64,
    diff_max: f64,
    logderiv_max: f64,
    zderiv_max: f64,
    deriv_min: f64,
    second_max: f64,
}

fn grid_extrema(series: &NormalizedSeries, grid: &DiskGrid) -> GridExtrema {
    let mut e = GridExtrema {
        ratio_min: f64::INFINITY,
        ratio_max: 0.0,
        diff_max: 0.0,
        logderiv_max: 0.0,
        zderiv_max: 0.0,
        deriv_min: f64::INFINITY,
        second_max: 0.0,
    };
    for z in grid.points() {
        let ev = evaluate(series, z).unwrap();
        let (f, f1, f2) = (ev.value, ev.first_derivative, ev.second_derivative);
        let ratio = (f / z).norm();
        e.ratio_min = e.ratio_min.min(ratio);
        e.ratio_max = e.ratio_max.max(ratio);
        e.diff_max = e.diff_max.max((f1 - f / z).norm());
        e.logderiv_max = e.logderiv_max.max((z * f1 / f - 1.0).norm());
        e.zderiv_max = e.zderiv_max.max((z * f1).norm());
        e.deriv_min = e.deriv_min.min(f1.norm());
        e.second_max = e.second_max.max((z * z * f2).norm());
    }
    e
}

/// Containment of the sampled quantities in their closed-form bounds over
/// the default sweep. The two-sided ratio bound and the log-derivative
/// bound hold throughout; the difference, derivative and second-derivative
/// bounds are genuinely violated for iteration orders n >= 1 (their
/// derivation collapses an m-dependent majorant into a geometric series,
/// which is only valid at n = 0), so this criterion is expected to fail on
/// those rows and the failure is reported, not masked. The n = 0 subset
/// passes in full, with the lower derivative bound checked against
/// inf |(D phi)'|, the quantity its derivation actually controls
/// (inf |z (D phi)'| is 0 at the origin for every function).
#[test]
fn criterion_05_inequality_containment() {
    let t0 = Instant::now();
    let grid = DiskGrid::default();
    const TOL: f64 = -1e-9;
    let mut admissible_tuples = 0usize;
    let mut rows = 0usize;
    let mut violations: Vec<(String, String, f64)> = Vec::new();
    let mut n_zero_violations = 0usize;
    let mut ns_seen = std::collections::BTreeSet::new();

    for n in [0u32, 1, 2] {
        for lam in [0.0, 0.5, 1.0] {
            for g in [0.0, 0.5] {
                for v in [-0.5, 0.5, 1.5] {
                    let bessel = BesselParams::new_real(v, 1.0, 1.0).unwrap();
                    let op = OperatorParams::new(lam, g, n).unwrap();
                    let bundle = match check_admissible(&bessel, &op, DEFAULT_M_INDEX) {
                        Ok(b) => b,
                        Err(_) => continue,
                    };
                    admissible_tuples += 1;
                    ns_seen.insert(n);
                    let tuple = format!("n={n} lambda={lam} gamma={g} v={v}");
                    let series =
                        apply_operator(&phi_series(&bessel, 40).unwrap(), &op).unwrap();
                    let e = grid_extrema(&series, &grid);

                    let mut push = |name: &str, margin: f64| {
                        rows += 1;
                        if margin < TOL {
                            if n == 0 {
                                n_zero_violations += 1;
                            }
                            violations.push((tuple.clone(), name.to_string(), margin));
                        }
                    };

                    push("ratio_lower", e.ratio_min - ratio_lower_bound(&bundle));
                    if let Ok(up) = ratio_upper_bound(&bundle) {
                        push("ratio_upper", up - e.ratio_max);
                    }
                    push("diff", diff_bound(&bundle) - e.diff_max);
                    if let Ok(b) = logderiv_bound(&bundle) {
                        push("logderiv", b - e.logderiv_max);
                    }
                    if let Ok(b) = deriv_lower_bound(&bundle) {
                        push("deriv_lower", e.deriv_min - b);
                    }
                    if let Ok(b) = deriv_upper_bound(&bundle) {
                        push("deriv_upper", b - e.zderiv_max);
                    }
                    push("second_deriv", second_deriv_bound(&bundle) - e.second_max);
                }
            }
        }
    }

    let elapsed = t0.elapsed().as_secs_f64();
    let spanning = ns_seen.len() == 3 && admissible_tuples >= 30;
    let ok = violations.is_empty() && spanning && elapsed < 60.0;
    let worst = violations
        .iter()
        .map(|(_, _, m)| *m)
        .fold(f64::INFINITY, f64::min);
    line(
        "C5",
        "inequality-containment",
        ok,
        t0,
        &format!(
            "{admissible_tuples} admissible tuples, {rows} bound rows, \
             {} violations (n=0 subset: {n_zero_violations}), worst margin {}",
            violations.len(),
            if violations.is_empty() {
                "-".to_string()
            } else {
                format!("{worst:.3e}")
            }
        ),
    );
    assert!(spanning, "sweep must span n in {{0,1,2}} with >= 30 tuples");
    assert!(elapsed < 60.0, "must finish within 60 s");
    assert_eq!(
        n_zero_violations, 0,
        "the n = 0 bounds are established results and must hold"
    );
    assert!(
        violations.is_empty(),
        "bound containment fails on {} of {} rows, all at n >= 1 \
         (the closed-form diff/derivative/second-derivative bounds are \
         invalid for n >= 1: the second series term already exceeds the \
         geometric majorant by the factor [3(1+2*lambda)/(2(1+lambda))]^n). \
         First violations: {:?}",
        violations.len(),
        rows,
        &violations[..violations.len().min(5)]
    );
}

#[test]
fn criterion_06_n_zero_reduction() {
    let t0 = Instant::now();
    // substituted forms: delta -> k+w, beta -> |d|, M = N = 1
    fn oracle(k: f64, b: f64) -> [Option<f64>; 7] {
        let den = k * (4.0 * (k + 1.0) - b);
        let ratio_lo = (4.0 * k * (k + 1.0) - (2.0 * k + 1.0) * b + b * b / 8.0) / den;
        let ratio_up = if 4.0 * k - b > 0.0 {
            Some((32.0 * k * k - b * b) / (8.0 * k * (4.0 * k - b)))
        } else {
            None
        };
        let diff = (k + 1.0) * b / den;
        let ld_den = 32.0 * k * (k + 1.0) - 8.0 * (2.0 * k + 1.0) * b + b * b;
        let logd = if ld_den > 0.0 {
            Some(8.0 * (k + 1.0) * b / ld_den)
        } else {
            None
        };
        let dlo_num = 4.0 * k * (k + 1.0) - (3.0 * k + 2.0) * b;
        let dlo = if dlo_num > 0.0 { Some(dlo_num / den) } else { None };
        let dup = (4.0 * k * (k + 1.0) + (k + 2.0) * b) / den;
        let second = (b / (2.0 * k)) * (4.0 * (k + 1.0) + b) / (4.0 * (k + 1.0) - b);
        [
            Some(ratio_lo),
            ratio_up,
            Some(diff),
            logd,
            dlo,
            Some(dup),
            Some(second),
        ]
    }

    let lam_gamma = [(0.0, 0.0), (0.5, 0.25), (1.0, 0.5), (2.0, 0.9), (0.25, 0.75)];
    let mut tuples = 0usize;
    let mut compared = 0usize;
    let mut worst: f64 = 0.0;
    for i in 0..20 {
        let k = 0.6 + 9.4 * i as f64 / 19.0;
        for (j, &d_abs) in [0.0, 0.5, 1.0, 1.5, 2.0].iter().enumerate() {
            let (lam, g) = lam_gamma[(i + j) % lam_gamma.len()];
            let bessel = BesselParams::new_real(k - 1.0, 1.0, d_abs).unwrap();
            let op = OperatorParams::new(lam, g, 0).unwrap();
            let bundle = check_admissible(&bessel, &op, DEFAULT_M_INDEX).unwrap();
            tuples += 1;

            let got: [Option<f64>; 7] = [
                ratio_bounds(&bundle).ok().map(|(lo, _)| lo),
                ratio_bounds(&bundle).ok().map(|(_, up)| up),
                Some(diff_bound(&bundle)),
                logderiv_bound(&bundle).ok(),
                deriv_lower_bound(&bundle).ok(),
                deriv_upper_bound(&bundle).ok(),
                Some(second_deriv_bound(&bundle)),
            ];
            let expect = oracle(k, d_abs);
            for (a, b) in got.iter().zip(&expect) {
                assert_eq!(a.is_some(), b.is_some(), "availability differs at k={k} d={d_abs}");
                if let (Some(a), Some(b)) = (a, b) {
                    compared += 1;
                    worst = worst.max((a - b).abs() / a.abs().max(b.abs()).max(1.0));
                }
            }
        }
    }
    let ok = tuples == 100 && worst <= 1e-14;
    line(
        "C6",
        "n-zero-reduction",
        ok,
        t0,
        &format!("{tuples} tuples, {compared} comparisons, worst relative gap {worst:.3e}"),
    );
    assert_eq!(tuples, 100);
    assert!(worst <= 1e-14, "worst gap {worst}");
}

#[test]
fn criterion_07_quadrature_oracle() {
    let t0 = Instant::now();
    let spec = QuadratureSpec::default();
    let bessel = BesselParams::new_real(0.5, 1.0, 1.0).unwrap();
    let phi = phi_series(&bessel, 40).unwrap();

    // 50 deterministic points on a spiral with |z| <= 0.8
    let points: Vec<Complex64> = (1..=50)
        .map(|i| Complex64::from_polar(0.8 * i as f64 / 50.0, 2.399963229728653 * i as f64))
        .collect();

    // H at m = 1, mu = eta = 1 against termwise integration of the series
    let hp = HParams::new(
        &[0.5],
        1.0,
        c64(1.0, 0.0),
        OperatorParams::identity(),
        vec![c64(1.0, 0.0)],
        c64(1.0, 0.0),
        c64(0.0, 0.0),
    )
    .unwrap();
    let h = HOperator::new(&hp, 40).unwrap();
    let mut worst_h: f64 = 0.0;
    for &z in &points {
        let got = h.evaluate(z, &spec).unwrap().value;
        let mut expect = c64(0.0, 0.0);
        for m in (1..=40usize).rev() {
            expect = expect * z + phi.coefficient(m) / m as f64;
        }
        expect *= z;
        worst_h = worst_h.max((got - expect).norm());
    }

    // G at zeta = 1 against the termwise-integrated exponential of the series
    let gp = GParams::new(bessel, OperatorParams::identity(), c64(1.0, 0.0)).unwrap();
    let g = GOperator::new(&gp, 40).unwrap();
    let mut exp_coeffs = vec![c64(0.0, 0.0); 41];
    exp_coeffs[0] = c64(1.0, 0.0);
    for j in 1..=40usize {
        let mut s = c64(0.0, 0.0);
        for i in 1..=j.min(40) {
            s += i as f64 * phi.coefficient(i) * exp_coeffs[j - i];
        }
        exp_coeffs[j] = s / j as f64;
    }
    let mut worst_g: f64 = 0.0;
    for &z in &points {
        let got = g.evaluate(z, &spec).unwrap().value;
        let mut expect = c64(0.0, 0.0);
        for j in (0..=40usize).rev() {
            expect = expect * z + exp_coeffs[j] / (j + 1) as f64;
        }
        expect *= z;
        worst_g = worst_g.max((got - expect).norm());
    }

    let elapsed = t0.elapsed().as_secs_f64();
    let ok = worst_h < 1e-9 && worst_g < 1e-9 && elapsed < 10.0;
    line(
        "C7",
        "quadrature-oracle",
        ok,
        t0,
        &format!("50 points |z| <= 0.8: worst H gap {worst_h:.3e}, worst G gap {worst_g:.3e}"),
    );
    assert!(worst_h < 1e-9, "H gap {worst_h}");
    assert!(worst_g < 1e-9, "G gap {worst_g}");
    assert!(elapsed < 10.0, "must finish within 10 s");
}

#[test]
fn criterion_08_injectivity_spot_check() {
    let t0 = Instant::now();
    // the certified parameter set: order 3/2, b = d = 1, n = 0, eta = mu = 1, c = 0
    let hp = HParams::new(
        &[1.5],
        1.0,
        c64(1.0, 0.0),
        OperatorParams::identity(),
        vec![c64(1.0, 0.0)],
        c64(1.0, 0.0),
        c64(0.0, 0.0),
    )
    .unwrap();
    let cert = criterion_h(&hp, DEFAULT_M_INDEX).unwrap();
    assert!(cert.passed, "the criterion must certify this parameter set");

    let h = HOperator::new(&hp, 40).unwrap();
    let spec = QuadratureSpec::default();
    let grid = DiskGrid::new(32, 64, 0.999).unwrap();
    let report = empirical_injectivity(
        |z| h.evaluate(z, &spec).map(|e| e.value),
        &grid,
        2_000_000,
        42,
    )
    .unwrap();

    let elapsed = t0.elapsed().as_secs_f64();
    let ok = !report.collision && report.min_ratio > 1e-8 && elapsed < 30.0;
    line(
        "C8",
        "injectivity-spot-check",
        ok,
        t0,
        &format!(
            "certified margin {:.6}; {} points, {} pairs, min ratio {:.6}",
            cert.margin, report.points, report.pairs_checked, report.min_ratio
        ),
    );
    assert!(report.min_ratio > 1e-8, "min ratio {}", report.min_ratio);
    assert!(!report.collision);
    assert!(elapsed < 30.0, "must finish within 30 s");
}

#[test]
fn criterion_09_degenerate_cases() {
    let t0 = Instant::now();
    let spec = QuadratureSpec::default();

    // d = 0: the series is the identity and every bound collapses
    let bessel0 = BesselParams::new_real(0.7, 1.0, 0.0).unwrap();
    let op = OperatorParams::new(0.5, 0.25, 2).unwrap();
    assert_eq!(
        phi_series(&bessel0, 12).unwrap(),
        NormalizedSeries::identity(12)
    );
    let bundle = check_admissible(&bessel0, &op, DEFAULT_M_INDEX).unwrap();
    assert_eq!(ratio_bounds(&bundle).unwrap(), (1.0, 1.0));
    assert_eq!(diff_bound(&bundle), 0.0);
    assert_eq!(logderiv_bound(&bundle).unwrap(), 0.0);
    assert_eq!(deriv_bounds(&bundle).unwrap(), (1.0, 1.0));
    assert_eq!(second_deriv_bound(&bundle), 0.0);

    // d = 0 operators act as the identity map (eta = 1; fractional eta
    // puts an oscillatory branch point of t^{eta-1} at the origin, where
    // equal-panel refinement correctly reports an accuracy error instead)
    let hp = HParams::new(
        &[0.7],
        1.0,
        c64(0.0, 0.0),
        op,
        vec![c64(2.0, -1.0)],
        c64(1.0, 0.0),
        c64(0.0, 0.0),
    )
    .unwrap();
    let h = HOperator::new(&hp, 20).unwrap();
    let fp = FParams::new(&[0.7], 1.0, c64(0.0, 0.0), op, c64(1.0, 0.0)).unwrap();
    let f = FOperator::new(&fp, 20).unwrap();
    let g = GOperator::from_series(None, c64(1.0, 0.0));
    let mut worst_id: f64 = 0.0;
    for z in [c64(0.4, 0.3), c64(-0.2, 0.5), c64(0.6, -0.1)] {
        worst_id = worst_id.max((h.evaluate(z, &spec).unwrap().value - z).norm());
        worst_id = worst_id.max((g.evaluate(z, &spec).unwrap().value - z).norm());
    }
    // F carries the (m mu + 1)-th root, so its identity reduction
    // [z^2]^{1/2} = z needs |arg z| < pi/2 on the principal branch
    for z in [c64(0.4, 0.3), c64(0.5, -0.45), c64(0.6, -0.1)] {
        worst_id = worst_id.max((f.evaluate(z, &spec).unwrap().value - z).norm());
    }
    assert!(worst_id < 1e-10, "identity gap {worst_id}");

    // lambda = 0 limit convention: the multiplier agrees with the direct
    // gamma-ratio evaluation of the defining formula (independent gamma)
    let mut worst_rel: f64 = 0.0;
    for n in [0u32, 1, 2] {
        for &g in &[0.0, 0.5, 0.9] {
            let op0 = OperatorParams::new(0.0, g, n).unwrap();
            for m in 1..=30usize {
                let got = multiplier(m, &op0).unwrap();
                assert!(got.is_finite());
                let mf = m as f64;
                let direct = (statrs::function::gamma::gamma(mf + 1.0)
                    * statrs::function::gamma::gamma(2.0 - g)
                    / statrs::function::gamma::gamma(mf + 1.0 - g))
                .powi(n as i32);
                worst_rel = worst_rel.max((got - direct).abs() / direct.abs());
                if g == 0.0 {
                    assert_eq!(got, 1.0, "order-0 operator at lambda = 0 is the identity");
                }
                let poch = multiplier_pochhammer(m, &op0).unwrap();
                assert!((got - poch).abs() <= 1e-12 * got.abs().max(poch.abs()));
            }
        }
    }
    assert!(worst_rel <= 1e-12, "lambda = 0 multiplier gap {worst_rel}");

    line(
        "C9",
        "degenerate-cases",
        true,
        t0,
        &format!("identity gap {worst_id:.2e}, lambda=0 multiplier gap {worst_rel:.2e}"),
    );
}
