//! Exact sparse multivariate polynomials over the rationals.
//!
//! A [`Scalar`] is the coefficient ring of every section in this crate: a
//! polynomial in the coordinates of a [`BasePatch`]. Terms are kept in a
//! canonical sparse form (no zero coefficients), so equality is structural.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{AlgebraError, Result};

/// Exact rational number used for all coefficients.
pub type Rational = BigRational;

/// Builds an integer-valued [`Rational`].
pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds the rational `num / den`.
///
/// # Panics
///
/// Panics if `den` is zero.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// A coordinate patch: the base manifold of every algebroid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasePatch {
    coords: Vec<String>,
}

impl BasePatch {
    pub fn new<S: Into<String>>(coords: impl IntoIterator<Item = S>) -> Result<Self> {
        let coords: Vec<String> = coords.into_iter().map(Into::into).collect();
        for (i, c) in coords.iter().enumerate() {
            if coords[..i].contains(c) {
                return Err(AlgebraError::InvalidStructure(format!(
                    "duplicate coordinate name `{c}`"
                )));
            }
        }
        Ok(Self { coords })
    }

    /// The zero-dimensional patch. Scalars over it are constants.
    pub fn point() -> Self {
        Self { coords: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name)
    }

    /// The `i`-th coordinate function.
    pub fn coordinate(&self, i: usize) -> Result<Scalar> {
        Scalar::var(self.dim(), i)
    }

    pub fn render(&self, s: &Scalar) -> String {
        s.render(&self.coords)
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Exact polynomial over the rationals in `nvars` coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Scalar {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, value: Rational) -> Self {
        let mut s = Self::zero(nvars);
        if !value.is_zero() {
            s.terms.insert(Monomial::one(nvars), value);
        }
        s
    }

    pub fn from_int(nvars: usize, value: i64) -> Self {
        Self::constant(nvars, rational(value))
    }

    /// The coordinate function `x_i`.
    pub fn var(nvars: usize, i: usize) -> Result<Self> {
        if i >= nvars {
            return Err(AlgebraError::IndexOutOfRange {
                index: i,
                bound: nvars,
            });
        }
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Self::monomial(nvars, exps, Rational::one())
    }

    pub fn monomial(nvars: usize, exponents: Vec<u32>, coeff: Rational) -> Result<Self> {
        if exponents.len() != nvars {
            return Err(AlgebraError::BaseMismatch {
                expected: nvars,
                found: exponents.len(),
            });
        }
        let mut s = Self::zero(nvars);
        if !coeff.is_zero() {
            s.terms.insert(Monomial(exponents), coeff);
        }
        Ok(s)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// The value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    fn check_same(&self, other: &Scalar) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::BaseMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        let mut out = Scalar::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, q: &Rational) -> Scalar {
        if q.is_zero() {
            return Scalar::zero(self.nvars);
        }
        Scalar {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut out = Scalar::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to coordinate `i`.
    pub fn partial(&self, i: usize) -> Result<Scalar> {
        if i >= self.nvars {
            return Err(AlgebraError::IndexOutOfRange {
                index: i,
                bound: self.nvars,
            });
        }
        let mut out = Scalar::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c * rational(i64::from(e)));
        }
        Ok(out)
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(AlgebraError::BaseMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Renders with the given coordinate names, highest graded-lex term first.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                let name = names
                    .get(i)
                    .cloned()
                    .unwrap_or_else(|| format!("x{}", i + 1));
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar operands over different bases")
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        assert_eq!(self.nvars, rhs.nvars, "scalar operands over different bases");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        assert_eq!(self.nvars, rhs.nvars, "scalar operands over different bases");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
