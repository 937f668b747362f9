use algebroid::bialgebroid::*;
use algebroid::fixtures;
use algebroid::jacobi::jacobi_bracket;
use algebroid::{Algebroid, Cocycle, Form, SampleConfig, Sampler, Scalar, Section};

fn cfg() -> SampleConfig {
    SampleConfig::new(0, 2, 8).unwrap()
}

fn assert_passed(r: &algebroid::CheckReport) {
    let failed: Vec<_> = r.failures().collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn contact_pair_is_compatible() {
    assert_passed(&check_compatibility(&fixtures::contact_pair(), &cfg()));
}

#[test]
fn contact_pair_lemmas_and_differentials() {
    let p = fixtures::contact_pair();
    assert_passed(&verify_duality_lemmas(&p, &cfg()));
    assert_passed(&verify_bracket_differentials(&p, &cfg()));
}

#[test]
fn poisson_plane_pair_passes_everything() {
    let p = fixtures::poisson_plane_pair();
    assert_passed(&check_compatibility(&p, &cfg()));
    assert_passed(&verify_duality_lemmas(&p, &cfg()));
    assert_passed(&verify_bracket_differentials(&p, &cfg()));
    let (l, e) = induced_tensors(&p).unwrap();
    assert_eq!(l, fixtures::poisson_plane_bivector());
    assert!(e.is_zero());
}

#[test]
fn contact_induced_structure_round_trips() {
    let j = fixtures::contact_r3();
    let p = fixtures::contact_pair();
    let induced = induced_jacobi(&p, &cfg()).unwrap();
    assert_eq!(induced.lambda(), j.lambda());
    assert_eq!(induced.e(), j.e());
    let x = Scalar::var(3, 0).unwrap();
    let z = Scalar::var(3, 2).unwrap();
    assert_eq!(induced_bracket(&p, &x, &z).unwrap(), x);
    assert!(induced_bracket(&p, &z, &z).unwrap().is_zero());
    // E from both sides
    let minus_rho_x0: Vec<Scalar> = p.a().anchor_vector(&p.x0_section()).unwrap().into_iter().map(|c| -c).collect();
    assert_eq!(minus_rho_x0, j.e().vector_components());
    let mut s = Sampler::new(&cfg(), 3, "test/induced");
    for _ in 0..16 {
        let (f, g) = (s.scalar(), s.scalar());
        assert_eq!(induced_bracket(&p, &f, &g).unwrap(), jacobi_bracket(&j, &f, &g).unwrap());
    }
}

#[test]
fn bracket_with_one_is_dual_anchor_of_phi0() {
    let p = fixtures::contact_pair();
    let mut s = Sampler::new(&cfg(), 3, "test/one");
    let one = Scalar::one(3);
    for _ in 0..8 {
        let g = s.scalar();
        let rho = p.adual().anchor_apply(&p.phi0().form().to_dual_kind(), &g).unwrap();
        assert_eq!(induced_bracket(&p, &one, &g).unwrap(), rho);
    }
}

#[test]
fn twisted_differentials_pairing_instance() {
    let p = fixtures::contact_pair();
    let (x, z) = (Scalar::var(3, 0).unwrap(), Scalar::var(3, 2).unwrap());
    let mv = |f: &Scalar| algebroid::Multivector::scalar(4, f.clone());
    let fm = |f: &Scalar| Form::scalar(4, f.clone());
    let a = algebroid::graded::pair(&p.d_phi(&fm(&z)).unwrap(), &p.d_star(&mv(&x)).unwrap()).unwrap();
    let b = algebroid::graded::pair(&p.d_phi(&fm(&x)).unwrap(), &p.d_star(&mv(&z)).unwrap()).unwrap();
    assert!(!a.is_zero());
    assert_eq!(a + b, Scalar::zero(3));
}

#[test]
fn hamiltonian_of_one_is_minus_x0() {
    let p = fixtures::contact_pair();
    assert_eq!(hamiltonian_section(&p, &Scalar::one(3)).unwrap(), -p.x0_section());
}

#[test]
fn dual_pair_is_compatible_with_opposite_structure() {
    let p = fixtures::contact_pair();
    let d = p.dualize();
    assert_eq!(d.dualize(), p);
    assert_passed(&check_compatibility(&d, &cfg()));
    let (l, e) = induced_tensors(&d).unwrap();
    let j = fixtures::contact_r3();
    assert_eq!(l, -j.lambda());
    assert_eq!(e, -j.e());
    let mut s = Sampler::new(&cfg(), 3, "test/dual");
    for _ in 0..8 {
        let (f, g) = (s.scalar(), s.scalar());
        assert_eq!(induced_bracket(&d, &f, &g).unwrap(), -induced_bracket(&p, &f, &g).unwrap());
    }
}

#[test]
fn canonical_morphism_of_contact_pair() {
    let p = fixtures::contact_pair();
    let m = canonical_morphism(&p, &cfg()).unwrap();
    assert_passed(&is_morphism(&m, &cfg()));
    let j = fixtures::contact_r3();
    let image = m.apply(&p.x0_section()).unwrap();
    let mut expected = j.e().vector_components().into_iter().map(|c| -c).collect::<Vec<_>>();
    expected.push(Scalar::zero(3));
    assert_eq!(image.vector_components(), expected);
    assert_eq!(&m.apply_dual(m.target().phi0().form()).unwrap(), p.phi0().form());
    // a 1-jet pair maps to itself by the identity-shaped matrix
    for (b, row) in m.matrix().iter().enumerate() {
        for (a, c) in row.iter().enumerate() {
            assert_eq!(c, &Scalar::from_int(3, i64::from(a == b)));
        }
    }
}

#[test]
fn identity_morphism_passes() {
    let p = fixtures::poisson_plane_pair();
    assert_passed(&is_morphism(&PairMorphism::identity(&p), &cfg()));
}

#[test]
fn perturbed_morphism_fails_bracket_preservation() {
    let p = fixtures::contact_pair();
    let m = canonical_morphism(&p, &cfg()).unwrap();
    let mut matrix = m.matrix().to_vec();
    matrix[0][1] = Scalar::var(3, 0).unwrap();
    let bad = PairMorphism::new(m.source().clone(), m.target().clone(), matrix).unwrap();
    let r = is_morphism(&bad, &cfg());
    let e = r.entry("Phi preserves brackets").unwrap();
    assert!(!e.passed());
    assert_ne!(e.counterexample.as_ref().unwrap().residual, "0");
}

#[test]
fn non_cocycle_x0_is_rejected() {
    let base = fixtures::plane();
    let t = Algebroid::tangent(&base).unwrap();
    let c = algebroid::jacobi::cotangent_algebroid(&base, &fixtures::poisson_plane_bivector()).unwrap();
    let x = Scalar::var(2, 1).unwrap();
    let x0 = t.frame(1).scale(&x);
    let err = GenBialgebroidPair::new(&t, Form::zero(2, 1, 2), &c, x0, &cfg());
    assert!(matches!(err, Err(algebroid::AlgebraError::Validation { .. })));
    assert!(GenBialgebroidPair::new(&t, Form::zero(2, 1, 2), &c, Section::zero(2, 1, 2), &cfg()).is_ok());
}

#[test]
fn incompatible_cocycle_breaks_the_pair() {
    // (T R^2, 0) with the cotangent algebroid and the constant cocycle X0 = d_x
    let base = fixtures::plane();
    let t = Algebroid::tangent(&base).unwrap();
    let c = algebroid::jacobi::cotangent_algebroid(&base, &fixtures::poisson_plane_bivector()).unwrap();
    let x0 = Cocycle::new(&c, c.coframe(0)).unwrap();
    let p = GenBialgebroidPair::from_cocycles(Cocycle::zero(&t), x0).unwrap();
    let r = check_compatibility(&p, &cfg());
    let e = r.entry("anchors of the cocycles are opposite").unwrap();
    assert!(!e.passed());
    assert!(!r.passed());
}
