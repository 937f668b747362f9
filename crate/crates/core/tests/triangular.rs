use algebroid::fixtures;
use algebroid::jacobi::cotangent_algebroid;
use algebroid::triangular::*;
use algebroid::{Algebroid, Cocycle, Form, SampleConfig, Section};

#[test]
fn poisson_plane_matches_cotangent_algebroid() {
    let base = fixtures::plane();
    let t = Algebroid::tangent(&base).unwrap();
    let pi = fixtures::poisson_plane_bivector();
    let datum = TriangularDatum::new(Cocycle::zero(&t), pi.clone()).unwrap();
    let pair = build_dual(&datum, &SampleConfig::default()).unwrap();
    let cot = cotangent_algebroid(&base, &pi).unwrap();
    assert_eq!(pair.adual().anchor_matrix(), cot.anchor_matrix());
    assert_eq!(pair.adual().structure(), cot.structure());
    assert!(pair.x0_section().is_zero());
    let report = verify_triangular(&datum, &SampleConfig::default()).unwrap();
    assert!(report.passed(), "{:#?}", report.failures().collect::<Vec<_>>());
}

#[test]
fn affine_algebra_datum() {
    let phi0 = fixtures::affine_cocycle();
    let p = algebroid::Multivector::basis(2, 0, &[0, 1]).unwrap();
    let report = check_maurer_cartan(&phi0, &p).unwrap();
    assert!(report.passed());
    let datum = TriangularDatum::new(phi0.clone(), p).unwrap();
    assert_eq!(datum.x0(), -Section::basis(2, 0, &[1]).unwrap());
    assert!(algebroid::graded::pair(phi0.form(), &datum.x0()).unwrap().is_zero());
    let pair = build_dual(&datum, &SampleConfig::default()).unwrap();
    assert!(pair.adual().check_axioms(&SampleConfig::default()).passed());
    assert!(verify_triangular(&datum, &SampleConfig::default()).unwrap().passed());
}

#[test]
fn non_cocycle_is_rejected_before_construction() {
    let a = fixtures::affine_algebra();
    assert!(Cocycle::new(&a, Form::basis(2, 0, &[1]).unwrap()).is_err());
}
