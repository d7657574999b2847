use laxlab_numeric::*;
use num_complex::Complex64 as C;
use proptest::prelude::*;

fn c(re: f64) -> C {
    C::new(re, 0.0)
}

fn pii(alpha: f64, convention: PiiConvention, z0: f64, z1: f64, u0: f64, du0: f64) -> OdeProblem {
    OdeProblem::scalar(
        Equation::Pii {
            alpha: c(alpha),
            convention,
        },
        z0,
        z1,
        c(u0),
        c(du0),
    )
}

#[test]
fn reciprocal_solution() {
    let t = integrate(&pii(1.0, PiiConvention::Printed, 1.0, 5.0, 1.0, -1.0)).unwrap();
    let err =
        t.z.iter()
            .enumerate()
            .map(|(k, z)| (t.u(k)[0] - c(1.0 / z)).norm())
            .fold(0.0, f64::max);
    assert!(err < 1e-8, "{err:e}");
    assert!(t.max_residual() < 1e-6);
    assert_eq!(*t.z.last().unwrap(), 5.0);
    assert_eq!(t.z.len(), 401);
}

#[test]
fn zero_solution() {
    let t = integrate(&pii(0.0, PiiConvention::Printed, 1.0, 5.0, 0.0, 0.0)).unwrap();
    assert!(t.states.iter().all(|s| s[0].norm() < 1e-12));
}

#[test]
fn reciprocal_is_not_a_solution_under_the_other_sign() {
    let t = integrate(&pii(1.0, PiiConvention::LaxPair, 1.0, 1.5, 1.0, -1.0)).unwrap();
    assert!((t.last()[0] - c(1.0 / 1.5)).norm() > 1e-2);
}

#[test]
fn diagonal_matrix_splits_into_scalar_runs() {
    let (a, b, da, db) = (0.3, -0.1, -0.2, 0.4);
    let mut m = pii(0.7, PiiConvention::Printed, 1.0, 2.0, 0.0, 0.0);
    m.n = 2;
    m.u0 = vec![c(a), c(0.0), c(0.0), c(b)];
    m.du0 = vec![c(da), c(0.0), c(0.0), c(db)];
    let tm = integrate(&m).unwrap();
    let ta = integrate(&pii(0.7, PiiConvention::Printed, 1.0, 2.0, a, da)).unwrap();
    let tb = integrate(&pii(0.7, PiiConvention::Printed, 1.0, 2.0, b, db)).unwrap();
    for k in 0..tm.z.len() {
        let u = tm.u(k);
        assert!((u[0] - ta.u(k)[0]).norm() < 1e-9);
        assert!((u[3] - tb.u(k)[0]).norm() < 1e-9);
        assert_eq!(u[1], c(0.0));
        assert_eq!(u[2], c(0.0));
    }
}

#[test]
fn noncommuting_matrix_run_has_small_residual() {
    let mut m = pii(0.2, PiiConvention::LaxPair, 0.0, 1.0, 0.0, 0.0);
    m.n = 2;
    m.u0 = vec![c(0.1), C::new(0.2, 0.1), c(-0.3), c(0.05)];
    m.du0 = vec![c(0.0), c(0.1), C::new(0.0, -0.2), c(0.2)];
    let t = integrate(&m).unwrap();
    assert!(t.max_residual() < 1e-6, "{:e}", t.max_residual());
}

#[test]
fn size_one_matrix_path_matches_scalar() {
    let s = pii(0.7, PiiConvention::LaxPair, 1.0, 1.5, 0.3, -0.2);
    let mut m = s.clone();
    m.u0 = vec![c(0.3)];
    m.du0 = vec![c(-0.2)];
    let (ts, tm) = (integrate(&s).unwrap(), integrate(&m).unwrap());
    for (a, b) in ts.states.iter().zip(&tm.states) {
        assert!((a[0] - b[0]).norm() < 1e-12);
    }
    let d3 = OdeProblem {
        ddu0: Some(vec![c(0.1)]),
        ..OdeProblem::scalar(Equation::Dpii3, 0.0, 1.0, c(0.2), c(0.3))
    };
    let mut d3m = d3.clone();
    d3m.n = 1;
    assert_eq!(integrate(&d3).unwrap().states, integrate(&d3m).unwrap().states);
}

#[test]
fn reversal_returns_to_initial_data() {
    let f = integrate(&pii(0.7, PiiConvention::LaxPair, 1.0, 1.5, 0.3, -0.2)).unwrap();
    let end = f.last();
    let back = OdeProblem::scalar(f.equation, 1.5, 1.0, end[0], end[1]);
    let b = integrate(&back).unwrap();
    assert!((b.last()[0] - c(0.3)).norm() < 1e-6);
    assert!((b.last()[1] - c(-0.2)).norm() < 1e-6);
}

#[test]
fn tighter_tolerance_does_not_worsen_residuals() {
    let spans = [
        pii(1.0, PiiConvention::Printed, 1.0, 5.0, 1.0, -1.0),
        pii(0.7, PiiConvention::LaxPair, 1.0, 1.5, 0.3, -0.2),
        pii(0.7, PiiConvention::Printed, 1.0, 2.0, 0.3, -0.2),
    ];
    for p in spans {
        let mut prev = f64::INFINITY;
        for rtol in [1e-6, 5e-7, 2.5e-7, 1.25e-7] {
            let mut q = p.clone();
            q.tol.rtol = rtol;
            q.tol.atol = rtol * 1e-2;
            let r = integrate(&q).unwrap().max_residual();
            assert!(r <= 2.0 * prev, "{rtol}: {r:e} vs {prev:e}");
            prev = r;
        }
    }
}

#[test]
fn p34_direct_run_matches_the_mapped_trajectory() {
    let (alpha, z0, u0, du0) = (0.7, 1.0, 0.3, -0.2);
    let t = integrate(&pii(alpha, PiiConvention::LaxPair, z0, 1.5, u0, du0)).unwrap();
    let ddu0 = 2.0 * u0 * u0 * u0 + z0 * u0 + alpha;
    let p0 = u0 * u0 + du0 + z0 / 2.0;
    let dp0 = 2.0 * u0 * du0 + ddu0 + 0.5;
    let p = OdeProblem::scalar(
        Equation::P34 {
            alpha: c(alpha),
            pairing: Pairing::AlphaPlusHalf,
        },
        z0,
        1.5,
        c(p0),
        c(dp0),
    );
    let tp = integrate(&p).unwrap();
    for k in 0..t.z.len() {
        let (u, du) = (t.states[k][0], t.states[k][1]);
        assert!((u * u + du + t.z[k] / 2.0 - tp.states[k][0]).norm() < 1e-8);
    }
}

#[test]
fn p34_rejects_small_initial_value() {
    let p = OdeProblem::scalar(
        Equation::P34 {
            alpha: c(0.0),
            pairing: Pairing::AlphaMinusHalf,
        },
        1.0,
        2.0,
        c(0.0),
        c(1.0),
    );
    assert!(matches!(integrate(&p), Err(NumericError::NearZero { .. })));
}

#[test]
fn pole_is_reported() {
    let r = integrate(&pii(0.7, PiiConvention::LaxPair, 1.0, 3.0, 0.3, -0.2));
    assert!(
        matches!(r, Err(NumericError::Blowup { z, .. } | NumericError::StepUnderflow { z }) if z > 2.9 && z < 2.96),
        "{r:?}"
    );
}

#[test]
fn declared_pole_inside_span() {
    let mut p = pii(0.0, PiiConvention::Printed, 1.0, 2.0, 0.0, 0.0);
    p.poles = vec![1.5];
    assert_eq!(integrate(&p).unwrap_err(), NumericError::SpanContainsPole { pole: 1.5 });
}

#[test]
fn malformed_problems() {
    let mut p = pii(0.0, PiiConvention::Printed, 1.0, 2.0, 0.0, 0.0);
    p.n = 2;
    assert!(matches!(integrate(&p), Err(NumericError::InvalidProblem(_))));
    let d = OdeProblem::scalar(Equation::Dpii3, 0.0, 1.0, c(0.0), c(0.0));
    assert!(matches!(integrate(&d), Err(NumericError::InvalidProblem(_))));
    let e = pii(0.0, PiiConvention::Printed, 1.0, 1.0, 0.0, 0.0);
    assert!(matches!(integrate(&e), Err(NumericError::InvalidProblem(_))));
}

#[test]
fn generic_map_check_finds_one_pairing_per_variable() {
    let m = MapCheck::new(c(0.7), c(0.3), c(-0.2), 1.0, 1.5, PiiConvention::LaxPair);
    let r = p34_map_check(&m).unwrap();
    assert_eq!(r.p.winner, Winner::Only(Pairing::AlphaPlusHalf));
    assert_eq!(r.q.winner, Winner::Only(Pairing::AlphaMinusHalf));
    for v in [&r.p, &r.q] {
        assert!(v.winning_residual() < 1e-6);
        assert!(v.losing_residual().unwrap() > 1e-2);
    }
}

#[test]
fn printed_sign_breaks_the_map() {
    let m = MapCheck::new(c(0.7), c(0.3), c(-0.2), 1.0, 1.5, PiiConvention::Printed);
    assert!(matches!(
        p34_map_check(&m),
        Err(NumericError::BothPairingsFail { variable: "p", .. })
    ));
}

#[test]
fn half_z_closed_form() {
    for z in [0.5, 1.0, 3.0] {
        let r = |alpha: f64, pairing| p34_residual(c(z / 2.0), c(0.5), c(0.0), z, c(alpha), pairing).norm();
        assert!(r(1.0, Pairing::AlphaMinusHalf) < 1e-15);
        assert!((r(1.0, Pairing::AlphaPlusHalf) - 2.0 / z).abs() < 1e-12);
        assert!(r(0.0, Pairing::AlphaMinusHalf) < 1e-15);
        assert!(r(0.0, Pairing::AlphaPlusHalf) < 1e-15);
    }
}

#[test]
fn half_z_from_trajectories() {
    let m = MapCheck::new(c(0.0), c(0.0), c(0.0), 1.0, 5.0, PiiConvention::LaxPair);
    let r = p34_map_check(&m).unwrap();
    assert_eq!((r.p.winner, r.q.winner), (Winner::Both, Winner::Both));

    let t = integrate(&pii(1.0, PiiConvention::Printed, 1.0, 5.0, 1.0, -1.0)).unwrap();
    let p: Vec<C> = t
        .states
        .iter()
        .zip(&t.z)
        .map(|(s, z)| s[0] * s[0] + s[1] + z / 2.0)
        .collect();
    let got = classify("p", &p, &t.z, c(1.0)).unwrap();
    assert_eq!(got.winner, Winner::Only(Pairing::AlphaMinusHalf));
}

#[test]
fn first_integral_with_zero_constant() {
    let (u0, du0, z0) = (0.2, -0.1, 0.5);
    let ddu0 = 2.0 * u0 * u0 * u0 - z0 * u0 / 3.0;
    let r = dpii_first_integral_check(c(u0), c(du0), c(ddu0), z0, 2.5, TolSpec::default()).unwrap();
    assert!(r.initial.norm() < 1e-15);
    assert!(r.max_drift < 1e-7, "{:e}", r.max_drift);
}

#[test]
fn first_integral_at_equilibrium() {
    let r = dpii_first_integral_check(c(0.0), c(0.0), c(0.0), 0.0, 2.0, TolSpec::default()).unwrap();
    assert_eq!(r.max_drift, 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn first_integral_is_conserved(u0 in -0.5..0.5f64, du0 in -0.5..0.5f64, ddu0 in -0.5..0.5f64, ui in -0.2..0.2f64) {
        let r = dpii_first_integral_check(C::new(u0, ui), c(du0), c(ddu0), 0.0, 1.0, TolSpec::default()).unwrap();
        prop_assert!(r.max_drift < 1e-7);
    }
}
