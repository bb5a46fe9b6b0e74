use proptest::prelude::*;
use qspecial::identities::acceptance_criteria;
use qspecial::qsu2::{dressed_element, pi_element, pi_generator, rho_element};
use qspecial::{
    AlgebraElement, BasisVector, ExtReal, Generator, QParam, SuiteConfig, TruncatedOperator, TruncationPolicy,
    VerificationReport, C64,
};

fn q(v: f64) -> QParam {
    QParam::new(v).unwrap()
}

fn word(gs: &[Generator]) -> AlgebraElement {
    AlgebraElement::product(gs.iter().map(|&g| AlgebraElement::generator(g)).collect::<Vec<_>>().iter())
}

fn gen_strategy() -> impl Strategy<Value = Generator> {
    prop::sample::select(Generator::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // pi is multiplicative on the window where truncation is exact.
    #[test]
    fn representation_is_multiplicative(ws in prop::collection::vec(gen_strategy(), 1..5), vs in prop::collection::vec(gen_strategy(), 1..5), phase in prop::option::of(0.0f64..3.0)) {
        let (dim, qq) = (40, q(0.6));
        let (x, y) = (word(&ws), word(&vs));
        let direct = pi_element(&x.mul(&y), dim, qq, phase).unwrap();
        let composed = pi_element(&x, dim, qq, phase).unwrap().mul(&pi_element(&y, dim, qq, phase).unwrap());
        let w = direct.trust().min(composed.trust());
        prop_assert!(w > 0);
        prop_assert!(direct.sub(&composed).window_max_abs(w) <= 1e-14);
    }
}

#[test]
fn generators_are_adjoint_pairs() {
    let (dim, qq) = (30, q(0.4));
    let op = |g| pi_generator(g, dim, qq, None).unwrap();
    let w = dim - 1;
    assert!(op(Generator::Alpha).adjoint().sub(&op(Generator::Delta)).window_max_abs(w) == 0.0);
    let minus_q = C64::new(-qq.value(), 0.0);
    assert!(op(Generator::Beta).adjoint().sub(&op(Generator::Gamma).scale(minus_q)).window_max_abs(w) <= 1e-16);
    assert!(op(Generator::Gamma).adjoint().sub(&op(Generator::Beta).scale(minus_q.inv())).window_max_abs(w) <= 1e-15);
}

#[test]
fn quantum_determinant_is_one() {
    let (dim, qq) = (50, q(0.5));
    let e = word(&[Generator::Alpha, Generator::Delta])
        .sub(&word(&[Generator::Beta, Generator::Gamma]).scale(C64::new(qq.value(), 0.0)));
    let op = pi_element(&e, dim, qq, Some(0.9)).unwrap();
    let diff = op.sub(&TruncatedOperator::identity(dim));
    assert!(diff.window_max_abs(op.trust()) <= 1e-15);
}

#[test]
fn rho_is_selfadjoint_and_banded() {
    let (dim, qq) = (60, q(0.5));
    // Pentadiagonal for finite sigma, a Jacobi matrix at sigma = infinity.
    for (sigma, band) in [(ExtReal::Finite(-0.3), 2), (ExtReal::Finite(0.8), 2), (ExtReal::Infinity, 1)] {
        let op = pi_element(&rho_element(0.2, sigma, qq), dim, qq, None).unwrap();
        let w = op.trust();
        assert!(op.sub(&op.adjoint()).window_max_abs(w) <= 1e-14);
        for i in 0..w {
            for j in 0..w {
                if i.abs_diff(j) > band {
                    assert!(op.get(i, j).norm() <= 1e-14, "{sigma:?} ({i},{j}) {}", op.get(i, j));
                } else if i.abs_diff(j) == band && i.max(j) < 4 {
                    assert!(op.get(i, j).norm() > 1e-6);
                }
            }
        }
    }
}

#[test]
fn dressed_elements_reduce_to_generators() {
    let qq = q(0.5);
    let inf = ExtReal::Infinity;
    let a = dressed_element(Generator::Alpha, inf, inf, qq);
    let expect = AlgebraElement::generator(Generator::Alpha).scale(C64::new(qq.value().sqrt(), 0.0));
    let d = pi_element(&a.sub(&expect), 20, qq, None).unwrap();
    assert!(d.window_max_abs(d.trust()) <= 1e-15);
}

#[test]
fn basis_vector_arithmetic() {
    let v = BasisVector::new(vec![C64::new(3.0, 0.0), C64::new(0.0, 4.0)]);
    assert_eq!(v.norm(), 5.0);
    assert_eq!(v.inner(&v), C64::new(25.0, 0.0));
    assert_eq!(v.sub(&v).norm(), 0.0);
    assert_eq!(v.scale(C64::new(0.0, 2.0)).norm(), 10.0);
}

#[test]
fn report_schema_round_trip() {
    let r = VerificationReport::scalar("demo", &[("q", 0.5), ("l", 2.0)], C64::new(1.0, -2.0), C64::new(1.0, -2.0 + 1e-12), 1e-9)
        .with_seed(7);
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    let keys = [
        "identity_id",
        "params",
        "lhs_re",
        "lhs_im",
        "rhs_re",
        "rhs_im",
        "abs_residual",
        "rel_residual",
        "pass",
        "tolerance",
        "seed",
    ];
    for k in keys {
        assert!(v.get(k).is_some(), "missing {k}");
    }
    assert_eq!(v["lhs_im"], -2.0);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["pass"], true);
    let back: VerificationReport = serde_json::from_value(v).unwrap();
    assert_eq!(back, r);
}

#[test]
fn report_zero_floor() {
    let tiny = VerificationReport::scalar("z", &[], C64::new(1e-9, 0.0), C64::new(0.0, 0.0), 1e-8);
    assert!(tiny.pass);
    let off = VerificationReport::scalar("z", &[], C64::new(1.0, 0.0), C64::new(1.1, 0.0), 1e-8);
    assert!(!off.pass);
    assert!((off.rel_residual - 0.1 / 1.1).abs() < 1e-15);
}

#[test]
fn zero_trials_skip_every_criterion() {
    let cfg = SuiteConfig { seed: 1, trials: Some(0), policy: TruncationPolicy::default() };
    let criteria = acceptance_criteria();
    assert_eq!(criteria.iter().map(|c| c.number).collect::<Vec<_>>(), (1..=10).collect::<Vec<_>>());
    for c in criteria {
        let o = c.run(&cfg);
        assert!(o.reports.is_empty() && o.errors.is_empty() && o.pass());
    }
}

#[test]
fn insufficient_truncation_is_reported() {
    let e = word(&[Generator::Alpha; 6]);
    assert!(pi_element(&e, 5, q(0.5), None).is_err());
}
