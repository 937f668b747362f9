//! Algebraic invariants checked on proptest-driven sample streams.

use algebroid::biproduct::{join, split};
use algebroid::graded::{contract, pair};
use algebroid::jacobi::{jacobi_bracket, jacobiator};
use algebroid::{fixtures, Algebroid, Form, Multivector, SampleConfig, Sampler, Scalar, Section};
use proptest::prelude::*;

fn sampler(seed: u64, nvars: usize) -> Sampler {
    Sampler::new(&SampleConfig::new(seed, 2, 1).unwrap(), nvars, "proptest")
}

fn small_scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-4i64..=4, 0u32..3, 0u32..3), 0..5).prop_map(|terms| {
        let mut out = Scalar::zero(2);
        for (c, a, b) in terms {
            out += &Scalar::monomial(2, vec![a, b], algebroid::scalar::rational(c)).unwrap();
        }
        out
    })
}

fn negate_if<T: std::ops::Neg<Output = T>>(t: T, flip: bool) -> T {
    if flip {
        -t
    } else {
        t
    }
}

fn algebroids() -> Vec<Algebroid> {
    vec![
        Algebroid::tangent(&fixtures::r3()).unwrap(),
        fixtures::affine_algebra(),
        algebroid::jacobi::cotangent_algebroid(&fixtures::plane(), &fixtures::poisson_plane_bivector()).unwrap(),
        algebroid::jacobi::one_jet_algebroid(&fixtures::contact_r3()).unwrap().0,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms_and_leibniz(f in small_scalar(), g in small_scalar(), h in small_scalar()) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&f - &f, Scalar::zero(2));
        for i in 0..2 {
            let lhs = (&f * &g).partial(i).unwrap();
            prop_assert_eq!(lhs, &f.partial(i).unwrap() * &g + &f * &g.partial(i).unwrap());
        }
        prop_assert_eq!(f.partial(0).unwrap().partial(1).unwrap(), f.partial(1).unwrap().partial(0).unwrap());
    }

    #[test]
    fn rendering_is_stable_under_arithmetic(f in small_scalar(), g in small_scalar()) {
        let names = ["x".to_string(), "y".to_string()];
        prop_assert_eq!((&f + &g).render(&names), (&g + &f).render(&names));
    }

    #[test]
    fn wedge_is_graded_commutative(seed: u64, p in 0usize..=3, q in 0usize..=3) {
        let mut s = sampler(seed, 2);
        let a: Form = s.graded(4, p);
        let b: Form = s.graded(4, q);
        prop_assert_eq!(a.wedge(&b).unwrap(), negate_if(b.wedge(&a).unwrap(), p * q % 2 == 1));
    }

    #[test]
    fn contraction_is_adjoint_to_wedge_and_squares_to_zero(seed: u64, d in 1usize..=3) {
        let mut s = sampler(seed, 2);
        let a: Form = s.graded(3, 1);
        let g: Form = s.graded(3, d - 1);
        let b: Multivector = s.graded(3, d);
        prop_assert_eq!(pair(&g, &contract(&a, &b).unwrap()).unwrap(), pair(&a.wedge(&g).unwrap(), &b).unwrap());
        if d >= 2 {
            prop_assert!(contract(&a, &contract(&a, &b).unwrap()).unwrap().is_zero());
        }
    }

    #[test]
    fn differential_squares_to_zero(seed: u64, which in 0usize..4, d in 0usize..=2) {
        let alg = &algebroids()[which];
        let mut s = sampler(seed, alg.dim());
        let a: Form = s.graded(alg.rank(), d.min(alg.rank()));
        prop_assert!(alg.differential(&alg.differential(&a).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn schouten_antisymmetry_and_jacobi(seed: u64, which in 0usize..4, p in 0usize..=2, q in 0usize..=2, r in 1usize..=2) {
        let alg = &algebroids()[which];
        let k = alg.rank();
        let mut s = sampler(seed, alg.dim());
        let (p, q, r) = (p.min(k), q.min(k), r.min(k));
        let a: Multivector = s.graded(k, p);
        let b: Multivector = s.graded(k, q);
        let c: Multivector = s.graded(k, r);
        let ab = alg.schouten(&a, &b).unwrap();
        let ba = alg.schouten(&b, &a).unwrap();
        if !(ab.is_zero() && ba.is_zero()) {
            let flip = (p + 1) * (q + 1) % 2 == 0;
            prop_assert_eq!(&ab, &negate_if(ba, flip));
        }
        if p + q >= 1 && q + r >= 1 {
            // [a, [b, c]] = [[a, b], c] + (-1)^((p-1)(q-1)) [b, [a, c]]
            let lhs = alg.schouten(&a, &alg.schouten(&b, &c).unwrap()).unwrap();
            let t1 = alg.schouten(&ab, &c).unwrap();
            let t2 = negate_if(alg.schouten(&b, &alg.schouten(&a, &c).unwrap()).unwrap(), (p + 1) * (q + 1) % 2 == 1);
            let res = lhs - t1 - t2;
            prop_assert!(res.is_zero(), "{}", res.render(alg.coords()));
        }
    }

    #[test]
    fn jacobi_bracket_invariants(seed: u64) {
        let j = fixtures::contact_r3();
        let mut s = sampler(seed, 3);
        let (f, g, h) = (s.scalar(), s.scalar(), s.scalar());
        prop_assert_eq!(jacobi_bracket(&j, &f, &g).unwrap(), -jacobi_bracket(&j, &g, &f).unwrap());
        prop_assert!(jacobiator(&j, &f, &g, &h).unwrap().is_zero());
        // first order: {f, g h} = {f, g} h + g {f, h} - g h {f, 1}
        let lhs = jacobi_bracket(&j, &f, &(&g * &h)).unwrap();
        let rhs = &jacobi_bracket(&j, &f, &g).unwrap() * &h + &g * &jacobi_bracket(&j, &f, &h).unwrap()
            - &(&g * &h) * &jacobi_bracket(&j, &f, &Scalar::one(3)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn join_and_split_are_inverse(seed: u64, d in 0usize..=3) {
        let mut s = sampler(seed, 2);
        let m: Section = s.graded(4, d);
        prop_assert_eq!(join(&split(&m).unwrap()), m);
    }
}
