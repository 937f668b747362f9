//! Lie algebroids over a coordinate patch and their undeformed calculus.
//!
//! An [`Algebroid`] is stored by its frame data: an anchor matrix and the
//! structure functions `[e_i, e_j]` for `i < j`. Brackets of general sections
//! follow from the Leibniz rule, forms are differentiated with the Cartan
//! formula, and the Schouten bracket is expanded recursively from its base
//! cases. Construction never checks the Lie axioms; call
//! [`Algebroid::check_axioms`] for that.

use std::collections::{BTreeMap, HashMap};

use crate::check::{verify_cases, CheckEntry, CheckReport};
use crate::error::{AlgebraError, Result};
use crate::graded::{blades, contract, Blade, Form, Graded, Multivector, Section, MAX_RANK};
use crate::sample::{SampleConfig, Sampler};
use crate::scalar::{BasePatch, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebroid {
    base: BasePatch,
    frame_names: Vec<String>,
    anchor: Vec<Vec<Scalar>>,
    structure: BTreeMap<(usize, usize), Section>,
}

impl Algebroid {
    /// Assembles an algebroid from raw frame data.
    ///
    /// `anchor[i][j]` is the `d/dx_j` component of `rho(e_i)`; `structure`
    /// lists `[e_i, e_j]` for `i < j` (zero-based). Shapes are validated, the
    /// Lie axioms are not.
    pub fn new(
        base: BasePatch,
        frame_names: Vec<String>,
        anchor: Vec<Vec<Scalar>>,
        structure: impl IntoIterator<Item = ((usize, usize), Section)>,
    ) -> Result<Self> {
        let rank = frame_names.len();
        let n = base.dim();
        if rank == 0 || rank > MAX_RANK {
            return Err(AlgebraError::InvalidStructure(format!(
                "rank must be between 1 and {MAX_RANK}, got {rank}"
            )));
        }
        if anchor.len() != rank {
            return Err(AlgebraError::RankMismatch {
                expected: rank,
                found: anchor.len(),
            });
        }
        for row in &anchor {
            if row.len() != n {
                return Err(AlgebraError::BaseMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            if let Some(bad) = row.iter().find(|s| s.nvars() != n) {
                return Err(AlgebraError::BaseMismatch {
                    expected: n,
                    found: bad.nvars(),
                });
            }
        }
        let mut table = BTreeMap::new();
        for ((i, j), s) in structure {
            if i >= j {
                return Err(AlgebraError::InvalidStructure(format!(
                    "structure entry [{i},{j}] must have increasing indices"
                )));
            }
            if j >= rank {
                return Err(AlgebraError::IndexOutOfRange { index: j, bound: rank });
            }
            if s.rank() != rank {
                return Err(AlgebraError::RankMismatch {
                    expected: rank,
                    found: s.rank(),
                });
            }
            if s.degree() != 1 {
                return Err(AlgebraError::DegreeMismatch {
                    expected: 1,
                    found: s.degree(),
                });
            }
            if s.nvars() != n {
                return Err(AlgebraError::BaseMismatch {
                    expected: n,
                    found: s.nvars(),
                });
            }
            if table.insert((i, j), s).is_some() {
                return Err(AlgebraError::InvalidStructure(format!(
                    "duplicate structure entry [{i},{j}]"
                )));
            }
        }
        table.retain(|_, s: &mut Section| !s.is_zero());
        Ok(Self {
            base,
            frame_names,
            anchor,
            structure: table,
        })
    }

    /// The tangent algebroid: frame `d/dx_i`, identity anchor, commuting frame.
    pub fn tangent(base: &BasePatch) -> Result<Self> {
        let n = base.dim();
        let names = base.coords().iter().map(|c| format!("d_{c}")).collect();
        let anchor = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Scalar::from_int(n, i64::from(i == j)))
                    .collect()
            })
            .collect();
        Self::new(base.clone(), names, anchor, std::iter::empty())
    }

    /// A Lie algebra viewed as an algebroid over a point.
    pub fn lie_algebra(
        rank: usize,
        structure: impl IntoIterator<Item = ((usize, usize), Section)>,
    ) -> Result<Self> {
        let names = (1..=rank).map(|i| format!("e{i}")).collect();
        Self::new(BasePatch::point(), names, vec![Vec::new(); rank], structure)
    }

    pub fn base(&self) -> &BasePatch {
        &self.base
    }

    pub fn rank(&self) -> usize {
        self.frame_names.len()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn coords(&self) -> &[String] {
        self.base.coords()
    }

    pub fn frame_names(&self) -> &[String] {
        &self.frame_names
    }

    pub fn anchor_matrix(&self) -> &[Vec<Scalar>] {
        &self.anchor
    }

    /// Nonzero structure entries `[e_i, e_j]`, `i < j`.
    pub fn structure(&self) -> &BTreeMap<(usize, usize), Section> {
        &self.structure
    }

    pub fn frame(&self, i: usize) -> Section {
        Section::basis(self.rank(), self.dim(), &[i]).expect("frame index in range")
    }

    pub fn coframe(&self, i: usize) -> Form {
        Form::basis(self.rank(), self.dim(), &[i]).expect("frame index in range")
    }

    pub fn zero_section(&self) -> Section {
        Section::zero(self.rank(), 1, self.dim())
    }

    pub fn function(&self, f: Scalar) -> Multivector {
        Multivector::scalar(self.rank(), f)
    }

    /// `[e_i, e_j]` for any pair of frame indices.
    pub fn structure_constant(&self, i: usize, j: usize) -> Section {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => self.zero_section(),
            Less => self
                .structure
                .get(&(i, j))
                .cloned()
                .unwrap_or_else(|| self.zero_section()),
            Greater => -self.structure_constant(j, i),
        }
    }

    pub(crate) fn check_graded<K: crate::graded::Kind>(&self, g: &Graded<K>) -> Result<()> {
        if g.rank() != self.rank() {
            return Err(AlgebraError::RankMismatch {
                expected: self.rank(),
                found: g.rank(),
            });
        }
        if g.nvars() != self.dim() {
            return Err(AlgebraError::BaseMismatch {
                expected: self.dim(),
                found: g.nvars(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_section(&self, x: &Section) -> Result<()> {
        self.check_graded(x)?;
        if x.degree() != 1 {
            return Err(AlgebraError::DegreeMismatch {
                expected: 1,
                found: x.degree(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_scalar(&self, f: &Scalar) -> Result<()> {
        if f.nvars() != self.dim() {
            return Err(AlgebraError::BaseMismatch {
                expected: self.dim(),
                found: f.nvars(),
            });
        }
        Ok(())
    }

    /// `rho(e_i) f`.
    fn frame_derivation(&self, i: usize, f: &Scalar) -> Scalar {
        let mut acc = Scalar::zero(self.dim());
        for (j, a) in self.anchor[i].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            acc += &(a * &f.partial(j).expect("coordinate index in range"));
        }
        acc
    }

    /// Components of the vector field `rho(X)` on `d/dx_j`.
    pub fn anchor_vector(&self, x: &Section) -> Result<Vec<Scalar>> {
        self.check_section(x)?;
        let n = self.dim();
        let mut out = vec![Scalar::zero(n); n];
        for (b, c) in x.terms() {
            let i = b.indices().next().expect("degree-1 blade");
            for (j, a) in self.anchor[i].iter().enumerate() {
                out[j] += &(c * a);
            }
        }
        Ok(out)
    }

    /// `rho(X) f`.
    pub fn anchor_apply(&self, x: &Section, f: &Scalar) -> Result<Scalar> {
        self.check_section(x)?;
        self.check_scalar(f)?;
        Ok(self.anchor_apply_unchecked(x, f))
    }

    pub(crate) fn anchor_apply_unchecked(&self, x: &Section, f: &Scalar) -> Scalar {
        let mut acc = Scalar::zero(self.dim());
        for (b, c) in x.terms() {
            let i = b.indices().next().expect("degree-1 blade");
            acc += &(c * &self.frame_derivation(i, f));
        }
        acc
    }

    /// Section bracket extended from the frame by the Leibniz rule in each slot.
    pub fn bracket(&self, x: &Section, y: &Section) -> Result<Section> {
        self.check_section(x)?;
        self.check_section(y)?;
        let mut out = self.zero_section();
        for (bi, xi) in x.terms() {
            let i = bi.indices().next().expect("degree-1 blade");
            for (bj, yj) in y.terms() {
                let j = bj.indices().next().expect("degree-1 blade");
                out += &self.structure_constant(i, j).scale(&(xi * yj));
            }
        }
        for (bj, yj) in y.terms() {
            let d = self.anchor_apply_unchecked(x, yj);
            out.insert(bj, d);
        }
        for (bi, xi) in x.terms() {
            let d = self.anchor_apply_unchecked(y, xi);
            out.insert(bi, -d);
        }
        Ok(out)
    }

    /// Algebroid differential from the Cartan formula on frame tuples.
    pub fn differential(&self, alpha: &Form) -> Result<Form> {
        self.check_graded(alpha)?;
        let k = self.rank();
        let p = alpha.degree();
        let mut out = Form::zero(k, p + 1, self.dim());
        if p >= k {
            return Ok(out);
        }
        for target in blades(k, p + 1) {
            let idx: Vec<usize> = target.indices().collect();
            let mut acc = Scalar::zero(self.dim());
            for (a, &ia) in idx.iter().enumerate() {
                let rest = target.without(Blade::single(ia));
                let term = self.frame_derivation(ia, &alpha.component(rest));
                if a % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            for a in 0..idx.len() {
                for b in (a + 1)..idx.len() {
                    let br = self.structure_constant(idx[a], idx[b]);
                    if br.is_zero() {
                        continue;
                    }
                    let rest = target.without(Blade::single(idx[a])).without(Blade::single(idx[b]));
                    // alpha([e_a, e_b], e_rest) = sum_c br_c <alpha, e_c ^ e_rest>
                    let mut val = Scalar::zero(self.dim());
                    for (bc, c) in br.terms() {
                        if let Some(neg) = Blade::wedge_sign(bc, rest) {
                            let comp = alpha.component(bc.union(rest));
                            let t = c * &comp;
                            if neg {
                                val -= &t;
                            } else {
                                val += &t;
                            }
                        }
                    }
                    if (a + b) % 2 == 0 {
                        acc += &val;
                    } else {
                        acc -= &val;
                    }
                }
            }
            out.insert(target, acc);
        }
        Ok(out)
    }

    /// Lie derivative on forms, `L_X = d i_X + i_X d`.
    pub fn lie_derivative(&self, x: &Section, alpha: &Form) -> Result<Form> {
        self.check_section(x)?;
        self.check_graded(alpha)?;
        let d_alpha = self.differential(alpha)?;
        let mut out = contract(x, &d_alpha)?;
        if alpha.degree() > 0 {
            out += &self.differential(&contract(x, alpha)?)?;
        }
        Ok(out)
    }

    /// Schouten bracket of multivectors, degree `r + r' - 1`.
    ///
    /// Expanded recursively from `[X, Y]`, `[X, f] = rho(X) f`, `[f, g] = 0`
    /// using the Leibniz rule in the second slot and graded antisymmetry.
    /// Brackets of frame blades are memoized within a call. Two functions
    /// bracket to the zero element of degree 0.
    pub fn schouten(&self, p: &Multivector, q: &Multivector) -> Result<Multivector> {
        self.check_graded(p)?;
        self.check_graded(q)?;
        let degree = (p.degree() + q.degree()).max(1) - 1;
        let mut out = Multivector::zero(self.rank(), degree, self.dim());
        let mut ctx = SchoutenExpansion {
            alg: self,
            memo: HashMap::new(),
        };
        for (bp, cp) in p.terms() {
            for (bq, cq) in q.terms() {
                let (wp, kp) = Word::from_term(bp, cp);
                let (wq, kq) = Word::from_term(bq, cq);
                if let Some(v) = ctx.bracket(&wp.atoms, &wq.atoms) {
                    let factor = &kp * &kq;
                    out += &v.scale(&factor);
                }
            }
        }
        Ok(out)
    }

    /// Verifies the Jacobi identity and the anchor homomorphism property on
    /// frame tuples and seeded sample sections.
    pub fn check_axioms(&self, config: &SampleConfig) -> CheckReport {
        let mut report = CheckReport::new();
        report.push(self.check_jacobi(config));
        report.push(self.check_anchor_homomorphism(config));
        report
    }

    fn check_jacobi(&self, config: &SampleConfig) -> CheckEntry {
        let k = self.rank();
        let mut cases = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                for l in (j + 1)..k {
                    cases.push((self.frame(i), self.frame(j), self.frame(l)));
                }
            }
        }
        let mut s = Sampler::new(config, self.dim(), "axioms/jacobi");
        for _ in 0..config.trials {
            cases.push((s.section(k), s.section(k), s.section(k)));
        }
        let coords = self.coords();
        verify_cases(
            "bracket Jacobi identity",
            "[[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y] = 0",
            coords,
            &cases,
            |(x, y, z)| self.jacobiator(x, y, z),
            |(x, y, z)| {
                vec![
                    ("X".into(), x.render(coords)),
                    ("Y".into(), y.render(coords)),
                    ("Z".into(), z.render(coords)),
                ]
            },
        )
    }

    /// `[[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y]`.
    pub fn jacobiator(&self, x: &Section, y: &Section, z: &Section) -> Result<Section> {
        let a = self.bracket(&self.bracket(x, y)?, z)?;
        let b = self.bracket(&self.bracket(y, z)?, x)?;
        let c = self.bracket(&self.bracket(z, x)?, y)?;
        Ok(a + b + c)
    }

    fn check_anchor_homomorphism(&self, config: &SampleConfig) -> CheckEntry {
        let k = self.rank();
        let n = self.dim();
        let mut cases = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                for c in 0..n {
                    let xc = Scalar::var(n, c).expect("coordinate");
                    cases.push((self.frame(i), self.frame(j), xc));
                }
            }
        }
        let mut s = Sampler::new(config, n, "axioms/anchor");
        for _ in 0..config.trials {
            cases.push((s.section(k), s.section(k), s.scalar()));
        }
        let coords = self.coords();
        verify_cases(
            "anchor is a bracket homomorphism",
            "rho([X,Y]) f = rho(X) rho(Y) f - rho(Y) rho(X) f",
            coords,
            &cases,
            |(x, y, f)| {
                let lhs = self.anchor_apply(&self.bracket(x, y)?, f)?;
                let xy = self.anchor_apply(x, &self.anchor_apply(y, f)?)?;
                let yx = self.anchor_apply(y, &self.anchor_apply(x, f)?)?;
                Ok(lhs - xy + yx)
            },
            |(x, y, f)| {
                vec![
                    ("X".into(), x.render(coords)),
                    ("Y".into(), y.render(coords)),
                    ("f".into(), f.render(coords)),
                ]
            },
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Atom {
    Fun(Scalar),
    Vec(usize),
}

impl Atom {
    fn degree(&self) -> usize {
        match self {
            Atom::Fun(_) => 0,
            Atom::Vec(_) => 1,
        }
    }
}

/// A decomposable term `f ^ e_{i1} ^ ... ^ e_{ir}` as a list of atoms.
struct Word {
    atoms: Vec<Atom>,
}

impl Word {
    /// Splits `c e_I` into a word and a constant factor pulled out of it.
    fn from_term(blade: Blade, c: &Scalar) -> (Word, Scalar) {
        let mut atoms = Vec::new();
        let factor = if c.as_constant().is_some() {
            c.clone()
        } else {
            atoms.push(Atom::Fun(c.clone()));
            Scalar::one(c.nvars())
        };
        atoms.extend(blade.indices().map(Atom::Vec));
        (Word { atoms }, factor)
    }
}

struct SchoutenExpansion<'a> {
    alg: &'a Algebroid,
    memo: HashMap<(u32, u32), Option<Multivector>>,
}

fn word_degree(w: &[Atom]) -> usize {
    w.iter().map(Atom::degree).sum()
}

/// `(-1)^((a - 1) * b)` for possibly zero `a`.
fn shifted_sign_negative(a: usize, b: usize) -> bool {
    ((a + 1) * b) % 2 == 1
}

impl SchoutenExpansion<'_> {
    fn value(&self, w: &[Atom]) -> Multivector {
        let alg = self.alg;
        let mut out = Multivector::scalar(alg.rank(), Scalar::one(alg.dim()));
        for a in w {
            let piece = match a {
                Atom::Fun(f) => Multivector::scalar(alg.rank(), f.clone()),
                Atom::Vec(i) => alg.frame(*i),
            };
            out = out.wedge(&piece).expect("same frame");
        }
        out
    }

    fn pure_key(w: &[Atom]) -> Option<u32> {
        let mut bits = 0u32;
        for a in w {
            match a {
                Atom::Vec(i) => bits |= 1 << i,
                Atom::Fun(_) => return None,
            }
        }
        Some(bits)
    }

    /// `None` stands for zero (including the degree -1 bracket of functions).
    fn bracket(&mut self, p: &[Atom], q: &[Atom]) -> Option<Multivector> {
        if p.is_empty() || q.is_empty() {
            // constants are central
            return None;
        }
        let key = match (Self::pure_key(p), Self::pure_key(q)) {
            (Some(a), Some(b)) => Some((a, b)),
            _ => None,
        };
        if let Some(key) = key {
            if let Some(hit) = self.memo.get(&key) {
                return hit.clone();
            }
        }
        let result = self.expand(p, q);
        if let Some(key) = key {
            self.memo.insert(key, result.clone());
        }
        result
    }

    fn expand(&mut self, p: &[Atom], q: &[Atom]) -> Option<Multivector> {
        let alg = self.alg;
        let dp = word_degree(p);
        if q.len() >= 2 {
            let (q1, rest) = q.split_at(1);
            let mut acc: Option<Multivector> = None;
            if let Some(a) = self.bracket(p, q1) {
                let t = a.wedge(&self.value(rest)).expect("same frame");
                acc = Some(t);
            }
            if let Some(b) = self.bracket(p, rest) {
                let mut t = self.value(q1).wedge(&b).expect("same frame");
                if shifted_sign_negative(dp, q1[0].degree()) {
                    t = -t;
                }
                acc = Some(match acc {
                    Some(a) => a + t,
                    None => t,
                });
            }
            return acc;
        }
        if p.len() >= 2 {
            let dq = word_degree(q);
            let v = self.bracket(q, p)?;
            // [P,Q] = -(-1)^((p-1)(q-1)) [Q,P]
            let flip = ((dp + 1) * (dq + 1)) % 2 == 1;
            return Some(if flip { v } else { -v });
        }
        match (&p[0], &q[0]) {
            (Atom::Vec(i), Atom::Vec(j)) => Some(alg.structure_constant(*i, *j)),
            (Atom::Vec(i), Atom::Fun(f)) => {
                Some(Multivector::scalar(alg.rank(), alg.frame_derivation(*i, f)))
            }
            (Atom::Fun(f), Atom::Vec(i)) => {
                Some(Multivector::scalar(alg.rank(), -alg.frame_derivation(*i, f)))
            }
            (Atom::Fun(_), Atom::Fun(_)) => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn plane() -> Algebroid {
        Algebroid::tangent(&BasePatch::new(["x", "y"]).unwrap()).unwrap()
    }

    /// Rank-2 Lie algebra with `[e1, e2] = e2`.
    fn affine() -> Algebroid {
        let e2 = Section::basis(2, 0, &[1]).unwrap();
        Algebroid::lie_algebra(2, [((0, 1), e2)]).unwrap()
    }

    #[test]
    fn anchor_on_tangent_plane() {
        let a = plane();
        let x = Scalar::var(2, 0).unwrap();
        let y = Scalar::var(2, 1).unwrap();
        assert_eq!(a.anchor_apply(&a.frame(0), &(&x * &y)).unwrap(), y);
    }

    #[test]
    fn anchor_over_point_vanishes() {
        let a = affine();
        let c = Scalar::from_int(0, 5);
        assert!(a.anchor_apply(&a.frame(0), &c).unwrap().is_zero());
    }

    #[test]
    fn bracket_examples() {
        let a = plane();
        let x = Scalar::var(2, 0).unwrap();
        let lhs = a.bracket(&a.frame(0), &a.frame(1).scale(&x)).unwrap();
        assert_eq!(lhs, a.frame(1));
        let b = affine();
        assert_eq!(b.bracket(&b.frame(0), &b.frame(1)).unwrap(), b.frame(1));
        assert_eq!(b.bracket(&b.frame(1), &b.frame(0)).unwrap(), -b.frame(1));
    }

    #[test]
    fn de_rham_of_product() {
        let a = plane();
        let x = Scalar::var(2, 0).unwrap();
        let y = Scalar::var(2, 1).unwrap();
        let d = a.differential(&Form::scalar(2, &x * &y)).unwrap();
        let expected = a.coframe(0).scale(&y) + a.coframe(1).scale(&x);
        assert_eq!(d, expected);
    }

    #[test]
    fn differential_on_affine_algebra() {
        let a = affine();
        let e12 = Form::basis(2, 0, &[0, 1]).unwrap();
        assert_eq!(a.differential(&a.coframe(1)).unwrap(), -e12);
        assert!(a.differential(&a.coframe(0)).unwrap().is_zero());
    }

    #[test]
    fn lie_derivative_examples() {
        let line = Algebroid::tangent(&BasePatch::new(["x"]).unwrap()).unwrap();
        let x = Scalar::var(1, 0).unwrap();
        let xdx = line.coframe(0).scale(&x);
        assert_eq!(line.lie_derivative(&line.frame(0), &xdx).unwrap(), line.coframe(0));
        let a = affine();
        assert_eq!(a.lie_derivative(&a.frame(0), &a.coframe(1)).unwrap(), -a.coframe(1));
        let f = Scalar::from_int(0, 3);
        assert!(a.lie_derivative(&a.frame(0), &Form::scalar(2, f)).unwrap().is_zero());
    }

    #[test]
    fn schouten_base_cases() {
        let a = plane();
        let x = Scalar::var(2, 0).unwrap();
        let pi = Multivector::basis(2, 2, &[0, 1]).unwrap();
        let r = a.schouten(&pi, &a.function(x.clone())).unwrap();
        assert_eq!(r, -a.frame(1));
        assert!(a.schouten(&pi, &pi).unwrap().is_zero());
        let xe2 = a.frame(1).scale(&x);
        assert_eq!(a.schouten(&a.frame(0), &xe2).unwrap(), a.bracket(&a.frame(0), &xe2).unwrap());
        let fx = a.schouten(&a.frame(0), &a.function(&x * &x)).unwrap();
        assert_eq!(fx.as_scalar().unwrap(), x.scale(&rational(2)));
        let xf = a.schouten(&a.function(&x * &x), &a.frame(0)).unwrap();
        assert_eq!(xf.as_scalar().unwrap(), x.scale(&rational(-2)));
    }

    #[test]
    fn axioms_of_tangent_algebroid() {
        let a = Algebroid::tangent(&BasePatch::new(["x", "y", "z"]).unwrap()).unwrap();
        let report = a.check_axioms(&SampleConfig::new(7, 2, 8).unwrap());
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn jacobi_violation_is_caught_on_frame_triple() {
        let e = |i| Section::basis(3, 0, &[i]).unwrap();
        let a = Algebroid::lie_algebra(3, [((0, 1), e(2)), ((0, 2), e(0))]).unwrap();
        let report = a.check_axioms(&SampleConfig::default());
        let entry = report.entry("bracket Jacobi identity").unwrap();
        assert!(!entry.passed());
        let cx = entry.counterexample.as_ref().unwrap();
        assert_eq!(cx.inputs[0].1, "1 * e[1]");
        assert_eq!(cx.inputs[1].1, "1 * e[2]");
        assert_eq!(cx.inputs[2].1, "1 * e[3]");
        assert_eq!(cx.residual, "-1 * e[3]");
    }

    #[test]
    fn construction_rejects_bad_shapes() {
        let e = Section::basis(2, 0, &[0]).unwrap();
        assert!(Algebroid::lie_algebra(2, [((1, 0), e.clone())]).is_err());
        assert!(Algebroid::lie_algebra(2, [((0, 2), e.clone())]).is_err());
        let base = BasePatch::new(["x"]).unwrap();
        assert!(Algebroid::new(base, vec!["a".into()], vec![vec![]], []).is_err());
        assert!(Algebroid::lie_algebra(0, []).is_err());
    }

    #[test]
    fn mismatched_operands_are_errors() {
        let a = plane();
        let wrong = Section::basis(3, 2, &[0]).unwrap();
        assert!(a.bracket(&a.frame(0), &wrong).is_err());
        assert!(a.anchor_apply(&a.frame(0), &Scalar::one(3)).is_err());
    }
}
