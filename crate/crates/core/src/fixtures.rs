//! Shipped example structures.

use crate::algebroid::Algebroid;
use crate::bialgebroid::{jacobi_pair, GenBialgebroidPair};
use crate::deformed::Cocycle;
use crate::graded::{Form, Multivector, Section};
use crate::jacobi::{cotangent_algebroid, JacobiStructure};
use crate::scalar::{BasePatch, Scalar};

pub fn r3() -> BasePatch {
    BasePatch::new(["x", "y", "z"]).expect("distinct names")
}

pub fn plane() -> BasePatch {
    BasePatch::new(["x", "y"]).expect("distinct names")
}

/// `Lambda = (d_x + y d_z) ^ d_y`, `E = d_z` on `R^3`.
pub fn contact_r3() -> JacobiStructure {
    let base = r3();
    let t = Algebroid::tangent(&base).expect("tangent");
    let y = Scalar::var(3, 1).expect("coordinate");
    let lambda = (t.frame(0) + t.frame(2).scale(&y)).wedge(&t.frame(1)).expect("same frame");
    JacobiStructure::new(&base, lambda, t.frame(2)).expect("contact structure is Jacobi")
}

/// `pi = d_x ^ d_y` on `R^2`.
pub fn poisson_plane_bivector() -> Multivector {
    Multivector::basis(2, 2, &[0, 1]).expect("indices in range")
}

pub fn poisson_plane() -> JacobiStructure {
    JacobiStructure::poisson(&plane(), poisson_plane_bivector()).expect("constant bivector is Poisson")
}

/// The 1-jet pair of the contact structure.
pub fn contact_pair() -> GenBialgebroidPair {
    jacobi_pair(&contact_r3()).expect("contact pair")
}

/// `(T R^2, 0)` with `(T*R^2, 0)` for `pi = d_x ^ d_y`.
pub fn poisson_plane_pair() -> GenBialgebroidPair {
    let base = plane();
    let t = Algebroid::tangent(&base).expect("tangent");
    let c = cotangent_algebroid(&base, &poisson_plane_bivector()).expect("Poisson");
    GenBialgebroidPair::from_cocycles(Cocycle::zero(&t), Cocycle::zero(&c)).expect("dual frames")
}

/// The Lie algebra `[e1, e2] = e2`.
pub fn affine_algebra() -> Algebroid {
    let e2 = Section::basis(2, 0, &[1]).expect("index in range");
    Algebroid::lie_algebra(2, [((0, 1), e2)]).expect("valid shape")
}

/// `e^1` on [`affine_algebra`].
pub fn affine_cocycle() -> Cocycle {
    let a = affine_algebra();
    Cocycle::new(&a, Form::basis(2, 0, &[0]).expect("index in range")).expect("closed")
}

/// Rank-3 structure constants `[e1,e2] = e3`, `[e2,e3] = e1`, `[e1,e3] = e3`,
/// which violate Jacobi on the frame triple.
pub fn bad_rank3() -> Algebroid {
    let e = |i: usize| Section::basis(3, 0, &[i]).expect("index in range");
    Algebroid::lie_algebra(3, [((0, 1), e(2)), ((1, 2), e(0)), ((0, 2), e(2))]).expect("valid shape")
}
