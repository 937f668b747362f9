//! Graded exterior algebra over a global frame.
//!
//! [`Multivector`]s live over the frame `e_1..e_k` of a bundle, [`Form`]s over
//! the dual frame `e^1..e^k`. The two kinds never mix in a wedge product; only
//! [`pair`] and [`contract`] cross kinds.
//!
//! Contraction is normalized by the pairing contract
//! `<b, i_a P> = <a ^ b, P>` (contraction in the first slot), which gives
//! `i_{e^j} e_J = (-1)^(pos(j in J) - 1) e_{J \ j}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::marker::PhantomData;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use crate::error::{AlgebraError, Result};
use crate::scalar::Scalar;

/// Largest supported frame size.
pub const MAX_RANK: usize = 32;

/// Strictly increasing index set, stored as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Blade(u32);

impl Blade {
    pub const EMPTY: Blade = Blade(0);

    pub fn single(i: usize) -> Blade {
        Blade(1 << i)
    }

    pub fn from_indices(indices: &[usize]) -> Blade {
        Blade(indices.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn is_subset_of(self, other: Blade) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn without(self, other: Blade) -> Blade {
        Blade(self.0 & !other.0)
    }

    pub fn union(self, other: Blade) -> Blade {
        Blade(self.0 | other.0)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits & (1 << i) != 0)
    }

    /// Sign of `e_A ^ e_B` relative to `e_{A u B}`, or `None` when they overlap.
    pub fn wedge_sign(a: Blade, b: Blade) -> Option<bool> {
        if a.0 & b.0 != 0 {
            return None;
        }
        let mut inversions = 0u32;
        for j in b.indices() {
            let above = if j >= 31 { 0 } else { a.0 & !((1u32 << (j + 1)) - 1) };
            inversions += above.count_ones();
        }
        Some(inversions % 2 == 1)
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.indices().cmp(other.indices())
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All blades of the given degree in a frame of size `rank`, in index-lex order.
pub fn blades(rank: usize, degree: usize) -> Vec<Blade> {
    fn rec(start: usize, rank: usize, left: usize, acc: u32, out: &mut Vec<Blade>) {
        if left == 0 {
            out.push(Blade(acc));
            return;
        }
        for i in start..rank {
            if rank - i < left {
                break;
            }
            rec(i + 1, rank, left - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if degree <= rank {
        rec(0, rank, degree, 0, &mut out);
    }
    out
}

/// Which frame an element is written in.
pub trait Kind: Clone + Copy + Debug + Default + PartialEq + Eq + Hash + Send + Sync + 'static {
    type Dual: Kind<Dual = Self>;
    /// Symbol used when rendering basis elements.
    const SYMBOL: &'static str;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vectors;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Covectors;

impl Kind for Vectors {
    type Dual = Covectors;
    const SYMBOL: &'static str = "e";
}

impl Kind for Covectors {
    type Dual = Vectors;
    const SYMBOL: &'static str = "E";
}

/// Homogeneous element of the exterior algebra with polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graded<K: Kind> {
    rank: usize,
    degree: usize,
    nvars: usize,
    terms: BTreeMap<Blade, Scalar>,
    kind: PhantomData<K>,
}

pub type Multivector = Graded<Vectors>;
pub type Form = Graded<Covectors>;
/// A section of the bundle: a degree-1 multivector.
pub type Section = Multivector;

impl<K: Kind> Graded<K> {
    pub fn zero(rank: usize, degree: usize, nvars: usize) -> Self {
        assert!(rank <= MAX_RANK, "frame size {rank} exceeds {MAX_RANK}");
        Self {
            rank,
            degree,
            nvars,
            terms: BTreeMap::new(),
            kind: PhantomData,
        }
    }

    /// Degree-0 element equal to a function.
    pub fn scalar(rank: usize, s: Scalar) -> Self {
        let mut out = Self::zero(rank, 0, s.nvars());
        out.insert(Blade::EMPTY, s);
        out
    }

    /// `e_{i1} ^ ... ^ e_{ir}` for arbitrary distinct indices (zero-based).
    pub fn basis(rank: usize, nvars: usize, indices: &[usize]) -> Result<Self> {
        let mut out = Self::zero(rank, indices.len(), nvars);
        let mut blade = Blade::EMPTY;
        let mut negative = false;
        for &i in indices {
            if i >= rank {
                return Err(AlgebraError::IndexOutOfRange { index: i, bound: rank });
            }
            match Blade::wedge_sign(blade, Blade::single(i)) {
                None => return Ok(out),
                Some(s) => {
                    negative ^= s;
                    blade = blade.union(Blade::single(i));
                }
            }
        }
        let one = Scalar::one(nvars);
        out.insert(blade, if negative { -one } else { one });
        Ok(out)
    }

    /// Degree-1 element with the given frame components.
    pub fn vector(components: Vec<Scalar>, nvars: usize) -> Result<Self> {
        let mut out = Self::zero(components.len(), 1, nvars);
        for (i, c) in components.into_iter().enumerate() {
            if c.nvars() != nvars {
                return Err(AlgebraError::BaseMismatch {
                    expected: nvars,
                    found: c.nvars(),
                });
            }
            out.insert(Blade::single(i), c);
        }
        Ok(out)
    }

    /// Builds an element from `(strictly increasing indices, coefficient)` pairs.
    pub fn from_components(
        rank: usize,
        degree: usize,
        nvars: usize,
        components: impl IntoIterator<Item = (Vec<usize>, Scalar)>,
    ) -> Result<Self> {
        let mut out = Self::zero(rank, degree, nvars);
        for (idx, c) in components {
            if idx.len() != degree {
                return Err(AlgebraError::DegreeMismatch {
                    expected: degree,
                    found: idx.len(),
                });
            }
            if c.nvars() != nvars {
                return Err(AlgebraError::BaseMismatch {
                    expected: nvars,
                    found: c.nvars(),
                });
            }
            let basis = Self::basis(rank, nvars, &idx)?;
            out += &basis.scale(&c);
        }
        Ok(out)
    }

    pub(crate) fn insert(&mut self, blade: Blade, c: Scalar) {
        debug_assert_eq!(blade.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(blade) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn insert_signed(&mut self, blade: Blade, c: Scalar, negative: bool) {
        self.insert(blade, if negative { -c } else { c });
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero components in index-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Scalar)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn component(&self, blade: Blade) -> Scalar {
        self.terms
            .get(&blade)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.nvars))
    }

    /// Component on the frame element `e_i` of a degree-1 element.
    pub fn coeff(&self, i: usize) -> Scalar {
        self.component(Blade::single(i))
    }

    /// Dense component list of a degree-1 element.
    pub fn vector_components(&self) -> Vec<Scalar> {
        (0..self.rank).map(|i| self.coeff(i)).collect()
    }

    /// The function of a degree-0 element.
    pub fn as_scalar(&self) -> Option<Scalar> {
        (self.degree == 0).then(|| self.component(Blade::EMPTY))
    }

    /// Multiplication by a function.
    pub fn scale(&self, f: &Scalar) -> Self {
        let mut out = Self::zero(self.rank, self.degree, self.nvars);
        if f.is_zero() {
            return out;
        }
        for (b, c) in &self.terms {
            out.insert(*b, c * f);
        }
        out
    }

    pub fn map_coeffs(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> Self {
        let mut out = Self::zero(self.rank, self.degree, self.nvars);
        for (b, c) in &self.terms {
            out.insert(*b, f(c));
        }
        out
    }

    /// Reinterprets this element in the dual frame (same components).
    pub fn into_dual_kind(self) -> Graded<K::Dual> {
        Graded {
            rank: self.rank,
            degree: self.degree,
            nvars: self.nvars,
            terms: self.terms,
            kind: PhantomData,
        }
    }

    /// The same element viewed in a frame of size `rank`.
    ///
    /// Fails if a component uses a frame index that does not fit.
    pub fn with_rank(&self, rank: usize) -> Result<Self> {
        if rank > MAX_RANK {
            return Err(AlgebraError::IndexOutOfRange { index: rank, bound: MAX_RANK });
        }
        if let Some(top) = self.terms.keys().filter_map(|b| b.indices().last()).max() {
            if top >= rank {
                return Err(AlgebraError::IndexOutOfRange { index: top, bound: rank });
            }
        }
        Ok(Graded {
            rank,
            degree: self.degree,
            nvars: self.nvars,
            terms: self.terms.clone(),
            kind: PhantomData,
        })
    }

    pub fn to_dual_kind(&self) -> Graded<K::Dual> {
        self.clone().into_dual_kind()
    }

    fn check_compatible<L: Kind>(&self, other: &Graded<L>) -> Result<()> {
        if self.rank != other.rank {
            return Err(AlgebraError::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        if self.nvars != other.nvars {
            return Err(AlgebraError::BaseMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.degree != other.degree {
            return Err(AlgebraError::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.insert(*b, c.clone());
        }
        Ok(out)
    }

    /// Exterior product; degree-0 operands act by multiplication.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.rank, self.degree + other.degree, self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if let Some(neg) = Blade::wedge_sign(*a, *b) {
                    out.insert_signed(a.union(*b), ca * cb, neg);
                }
            }
        }
        Ok(out)
    }

    /// Renders as a sum of `coeff * e[i,j]` terms (one-based indices).
    pub fn render(&self, coords: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(b, c)| {
                let idx: Vec<String> = b.indices().map(|i| (i + 1).to_string()).collect();
                let coeff = c.render(coords);
                let coeff = if c.len() > 1 { format!("({coeff})") } else { coeff };
                format!("{coeff} * {}[{}]", K::SYMBOL, idx.join(","))
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Interior product `i_a b`, characterized by `<g, i_a b> = <a ^ g, b>`.
pub fn contract<K: Kind>(a: &Graded<K::Dual>, b: &Graded<K>) -> Result<Graded<K>> {
    b.check_compatible(a)?;
    if a.degree > b.degree {
        return Err(AlgebraError::DegreeUnderflow {
            contractor: a.degree,
            target: b.degree,
        });
    }
    Ok(contract_unchecked(a, b))
}

fn contract_unchecked<K: Kind>(a: &Graded<K::Dual>, b: &Graded<K>) -> Graded<K> {
    let mut out = Graded::zero(b.rank, b.degree - a.degree, b.nvars);
    for (s, ca) in &a.terms {
        for (j, cb) in &b.terms {
            if s.is_subset_of(*j) {
                let rest = j.without(*s);
                let neg = Blade::wedge_sign(*s, rest).expect("disjoint by construction");
                out.insert_signed(rest, ca * cb, neg);
            }
        }
    }
    out
}

/// `i_phi P` for a form `phi` of degree `s <= deg P`.
pub fn interior_form_on_multivector(phi: &Form, p: &Multivector) -> Result<Multivector> {
    contract(phi, p)
}

/// `i_X alpha` for a form `alpha` of degree at least the degree of `X`.
pub fn interior_vector_on_form(x: &Multivector, alpha: &Form) -> Result<Form> {
    contract(x, alpha)
}

/// Degree-matched pairing `<a, b>`; frame monomials pair to the Kronecker delta.
pub fn pair<K: Kind>(a: &Graded<K::Dual>, b: &Graded<K>) -> Result<Scalar> {
    b.check_compatible(a)?;
    if a.degree != b.degree {
        return Err(AlgebraError::DegreeMismatch {
            expected: a.degree,
            found: b.degree,
        });
    }
    let mut acc = Scalar::zero(b.nvars);
    for (blade, ca) in &a.terms {
        if let Some(cb) = b.terms.get(blade) {
            acc += &(ca * cb);
        }
    }
    Ok(acc)
}

impl<K: Kind> AddAssign<&Graded<K>> for Graded<K> {
    fn add_assign(&mut self, rhs: &Graded<K>) {
        assert!(
            self.rank == rhs.rank && self.nvars == rhs.nvars && self.degree == rhs.degree,
            "incompatible graded operands"
        );
        for (b, c) in &rhs.terms {
            self.insert(*b, c.clone());
        }
    }
}

impl<K: Kind> SubAssign<&Graded<K>> for Graded<K> {
    fn sub_assign(&mut self, rhs: &Graded<K>) {
        assert!(
            self.rank == rhs.rank && self.nvars == rhs.nvars && self.degree == rhs.degree,
            "incompatible graded operands"
        );
        for (b, c) in &rhs.terms {
            self.insert(*b, -c);
        }
    }
}

impl<K: Kind> Add<&Graded<K>> for &Graded<K> {
    type Output = Graded<K>;
    fn add(self, rhs: &Graded<K>) -> Graded<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Kind> Add for Graded<K> {
    type Output = Graded<K>;
    fn add(mut self, rhs: Graded<K>) -> Graded<K> {
        self += &rhs;
        self
    }
}

impl<K: Kind> Sub<&Graded<K>> for &Graded<K> {
    type Output = Graded<K>;
    fn sub(self, rhs: &Graded<K>) -> Graded<K> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<K: Kind> Sub for Graded<K> {
    type Output = Graded<K>;
    fn sub(mut self, rhs: Graded<K>) -> Graded<K> {
        self -= &rhs;
        self
    }
}

impl<K: Kind> Neg for &Graded<K> {
    type Output = Graded<K>;
    fn neg(self) -> Graded<K> {
        self.map_coeffs(|c| -c)
    }
}

impl<K: Kind> Neg for Graded<K> {
    type Output = Graded<K>;
    fn neg(self) -> Graded<K> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(rank: usize, idx: &[usize]) -> Multivector {
        Multivector::basis(rank, 0, idx).unwrap()
    }

    fn fm(rank: usize, idx: &[usize]) -> Form {
        Form::basis(rank, 0, idx).unwrap()
    }

    #[test]
    fn wedge_basics() {
        let e1 = mv(3, &[0]);
        assert!(e1.wedge(&e1).unwrap().is_zero());
        let e12 = mv(3, &[0]).wedge(&mv(3, &[1])).unwrap();
        assert_eq!(e12, mv(3, &[0, 1]));
        assert_eq!(mv(3, &[1, 0]), -mv(3, &[0, 1]));
    }

    #[test]
    fn wedge_bilinear_expansion() {
        let n = 2;
        let x = Scalar::var(n, 0).unwrap();
        let y = Scalar::var(n, 1).unwrap();
        let e = |i| Multivector::basis(3, n, &[i]).unwrap();
        let lhs = e(0).scale(&x).wedge(&(e(1).scale(&y) + e(2))).unwrap();
        let expected = Multivector::from_components(
            3,
            2,
            n,
            [(vec![0, 1], &x * &y), (vec![0, 2], x.clone())],
        )
        .unwrap();
        assert_eq!(lhs, expected);
        let names = vec!["x".to_string(), "y".to_string()];
        assert_eq!(lhs.render(&names), "x*y * e[1,2] + x * e[1,3]");
    }

    #[test]
    fn interior_signs() {
        assert_eq!(interior_form_on_multivector(&fm(3, &[0]), &mv(3, &[0, 1])).unwrap(), mv(3, &[1]));
        assert_eq!(interior_form_on_multivector(&fm(3, &[1]), &mv(3, &[0, 1])).unwrap(), -mv(3, &[0]));
        assert!(interior_form_on_multivector(&fm(3, &[0]), &mv(3, &[1, 2])).unwrap().is_zero());
        assert_eq!(interior_vector_on_form(&mv(2, &[0]), &fm(2, &[0, 1])).unwrap(), fm(2, &[1]));
        assert_eq!(interior_vector_on_form(&mv(2, &[1]), &fm(2, &[0, 1])).unwrap(), -fm(2, &[0]));
    }

    #[test]
    fn contraction_underflow() {
        let f = Form::scalar(2, Scalar::one(0));
        assert!(matches!(
            interior_vector_on_form(&mv(2, &[0]), &f),
            Err(AlgebraError::DegreeUnderflow { contractor: 1, target: 0 })
        ));
        let top = interior_form_on_multivector(&fm(2, &[0, 1]), &mv(2, &[0, 1])).unwrap();
        assert_eq!(top.degree(), 0);
        assert_eq!(top.as_scalar().unwrap(), Scalar::one(0));
    }

    #[test]
    fn pairing() {
        assert_eq!(pair(&fm(2, &[0, 1]), &mv(2, &[0, 1])).unwrap(), Scalar::one(0));
        assert!(pair(&fm(3, &[0, 1]), &mv(3, &[1, 2])).unwrap().is_zero());
        assert!(pair(&fm(3, &[0]), &mv(3, &[0, 1])).is_err());
    }

    #[test]
    fn pairing_of_decomposables() {
        // <dx ^ dy, (d_x + y d_z) ^ d_y> on the tangent frame of R^3
        let n = 3;
        let y = Scalar::var(n, 1).unwrap();
        let e = |i| Multivector::basis(3, n, &[i]).unwrap();
        let a = e(0) + e(2).scale(&y);
        let p = a.wedge(&e(1)).unwrap();
        let alpha = Form::basis(3, n, &[0, 1]).unwrap();
        assert_eq!(pair(&alpha, &p).unwrap(), Scalar::one(n));
    }

    #[test]
    fn blade_enumeration_order() {
        let b: Vec<Vec<usize>> = blades(4, 2).into_iter().map(|b| b.indices().collect()).collect();
        assert_eq!(
            b,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert!(blades(2, 3).is_empty());
        assert_eq!(blades(3, 0), vec![Blade::EMPTY]);
    }

    #[test]
    fn kinds_do_not_mix_but_can_be_relabeled() {
        let v = mv(2, &[0]);
        let f: Form = v.to_dual_kind();
        assert_eq!(f, fm(2, &[0]));
        assert_eq!(f.render(&[]), "1 * E[1]");
    }
}
