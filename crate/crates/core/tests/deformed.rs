use algebroid::biproduct::extend_algebroid;
use algebroid::deformed::{verify_deformed_properties, DeformedCalculus};
use algebroid::graded::pair;
use algebroid::{fixtures, Algebroid, Cocycle, Form, SampleConfig, Sampler, Scalar};

/// Small algebroids with nonzero cocycles, rank and dimension at most three.
fn cases() -> Vec<(&'static str, Algebroid, Form)> {
    let affine = fixtures::affine_algebra();
    let (ext, einf) = extend_algebroid(&Algebroid::tangent(&fixtures::plane()).unwrap()).unwrap();
    let r3 = Algebroid::tangent(&fixtures::r3()).unwrap();
    let y = Scalar::var(3, 1).unwrap();
    // d(y dx) = -dx ^ dy, so use the exact form d(x y)
    let exact = r3.differential(&Form::scalar(3, Scalar::var(3, 0).unwrap() * &y)).unwrap();
    vec![
        ("affine", affine, fixtures::affine_cocycle().form().clone()),
        ("extended plane", ext, einf.form().clone()),
        ("R^3", r3, exact),
    ]
}

#[test]
fn twisted_calculus_properties_on_a_hundred_samples() {
    let cfg = SampleConfig::new(7, 2, 34).unwrap();
    let fixtures = cases();
    assert!(fixtures.len() * cfg.trials >= 100);
    for (name, alg, phi) in &fixtures {
        let c = Cocycle::new(alg, phi.clone()).unwrap();
        let report = verify_deformed_properties(&c.calculus(), &cfg);
        assert_eq!(report.len(), 8);
        assert!(report.passed(), "{name}: {:#?}", report.failures().collect::<Vec<_>>());
    }
}

#[test]
fn twisted_differential_squares_to_d_phi_wedge() {
    let alg = Algebroid::tangent(&fixtures::r3()).unwrap();
    let y = Scalar::var(3, 1).unwrap();
    let phi = alg.coframe(0).scale(&y);
    let dphi = alg.differential(&phi).unwrap();
    assert!(!dphi.is_zero());
    let calc = DeformedCalculus::unvalidated(&alg, &phi).unwrap();
    let mut s = Sampler::new(&SampleConfig::default(), 3, "test/dphi-square");
    for d in 0..=1 {
        for _ in 0..6 {
            let a: Form = s.graded(3, d);
            let twice = calc.differential(&calc.differential(&a).unwrap()).unwrap();
            assert_eq!(twice, dphi.wedge(&a).unwrap());
        }
    }
}

#[test]
fn non_closed_forms_are_not_cocycles() {
    let alg = Algebroid::tangent(&fixtures::r3()).unwrap();
    let phi = alg.coframe(0).scale(&Scalar::var(3, 1).unwrap());
    assert!(Cocycle::new(&alg, phi).is_err());
}

#[test]
fn twisted_lie_derivatives_respect_the_pairing() {
    // rho^phi(X) <a, Y> = <L^phi_X a, Y> + <a, [X, Y]>
    let c = fixtures::affine_cocycle();
    let alg = c.owner();
    let calc = c.calculus();
    let mut s = Sampler::new(&SampleConfig::default(), 0, "test/pairing");
    for _ in 0..16 {
        let (x, y) = (s.section(2), s.section(2));
        let a: Form = s.graded(2, 1);
        let lhs = calc.anchor_apply(&x, &pair(&a, &y).unwrap()).unwrap();
        let rhs = pair(&calc.lie_derivative_form(&x, &a).unwrap(), &y).unwrap()
            + pair(&a, &calc.lie_derivative_multivector(&x, &y).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(calc.lie_derivative_multivector(&x, &y).unwrap(), alg.bracket(&x, &y).unwrap());
    }
}

#[test]
fn corrupted_schouten_sign_is_caught() {
    // rebuild [X, f]^phi with the wrong sign on the cocycle term
    let c = fixtures::affine_cocycle();
    let calc = c.calculus();
    let x = c.owner().frame(0);
    let f = Scalar::from_int(0, 1);
    let good = calc.bracket_function(&x, &f).unwrap();
    let bad = c.owner().anchor_apply(&x, &f).unwrap() - pair(c.form(), &x).unwrap() * &f;
    assert_ne!(good, bad);
    assert_eq!(good, calc.anchor_apply(&x, &f).unwrap());
}
