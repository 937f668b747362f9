//! The extension `A x R` and the splitting of its multisections.
//!
//! The extra frame element `e_inf` is always the last index. An element
//! `M` of degree `r` over the extended frame splits as `M = P + e_inf ^ Q`
//! with `P` of degree `r` and `Q` of degree `r - 1` over the original frame;
//! with this embedding a split multivector `(P, Q)` evaluates on
//! `(a_1, f_1), ..., (a_r, f_r)` as
//! `P(a_1..a_r) + sum_i (-1)^(i+1) f_i Q(a_1..^a_i..a_r)`.

use crate::algebroid::Algebroid;
use crate::check::{verify_cases, CheckReport};
use crate::deformed::Cocycle;
use crate::error::{AlgebraError, Result};
use crate::graded::{contract, Blade, Covectors, Graded, Kind, Vectors};
use crate::sample::{SampleConfig, Sampler};
use crate::scalar::Scalar;

/// A pair `(P, Q)` with `deg Q = deg P - 1`; `Q` is absent in degree 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split<K: Kind> {
    head: Graded<K>,
    tail: Option<Graded<K>>,
}

pub type SplitMultivector = Split<Vectors>;
pub type SplitForm = Split<Covectors>;

impl<K: Kind> Split<K> {
    pub fn new(head: Graded<K>, tail: Option<Graded<K>>) -> Result<Self> {
        match &tail {
            None if head.degree() != 0 => Err(AlgebraError::InvalidStructure(format!(
                "split element of degree {} needs a second component",
                head.degree()
            ))),
            Some(_) if head.degree() == 0 => Err(AlgebraError::InvalidStructure(
                "split element of degree 0 has no second component".into(),
            )),
            Some(t) if t.degree() + 1 != head.degree() => Err(AlgebraError::DegreeMismatch {
                expected: head.degree() - 1,
                found: t.degree(),
            }),
            Some(t) if t.rank() != head.rank() => Err(AlgebraError::RankMismatch {
                expected: head.rank(),
                found: t.rank(),
            }),
            Some(t) if t.nvars() != head.nvars() => Err(AlgebraError::BaseMismatch {
                expected: head.nvars(),
                found: t.nvars(),
            }),
            _ => Ok(Self { head, tail }),
        }
    }

    /// `(P, 0)`.
    pub fn from_head(head: Graded<K>) -> Self {
        let tail = (head.degree() > 0)
            .then(|| Graded::zero(head.rank(), head.degree() - 1, head.nvars()));
        Self { head, tail }
    }

    /// `(0, Q)`.
    pub fn from_tail(tail: Graded<K>) -> Self {
        Self {
            head: Graded::zero(tail.rank(), tail.degree() + 1, tail.nvars()),
            tail: Some(tail),
        }
    }

    pub fn zero(rank: usize, degree: usize, nvars: usize) -> Self {
        Self::from_head(Graded::zero(rank, degree, nvars))
    }

    pub fn head(&self) -> &Graded<K> {
        &self.head
    }

    pub fn tail(&self) -> Option<&Graded<K>> {
        self.tail.as_ref()
    }

    pub fn degree(&self) -> usize {
        self.head.degree()
    }

    /// Rank of the original frame.
    pub fn rank(&self) -> usize {
        self.head.rank()
    }

    pub fn nvars(&self) -> usize {
        self.head.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.head.is_zero() && self.tail.as_ref().is_none_or(Graded::is_zero)
    }

    fn tail_or_zero(&self) -> Graded<K> {
        self.tail.clone().unwrap_or_else(|| Graded::zero(self.rank(), 0, self.nvars()))
    }

    pub fn render(&self, coords: &[String]) -> String {
        match &self.tail {
            None => format!("({}, -)", self.head.render(coords)),
            Some(t) => format!("({}, {})", self.head.render(coords), t.render(coords)),
        }
    }
}

impl<K: Kind> crate::check::Residual for Split<K> {
    fn is_zero(&self) -> bool {
        Split::is_zero(self)
    }
    fn render(&self, coords: &[String]) -> String {
        Split::render(self, coords)
    }
}

/// `A x R`: `[(X,f),(Y,g)] = ([X,Y], rho(X)g - rho(Y)f)`, `rho(X,f) = rho(X)`.
///
/// Returns the extended algebroid and its canonical cocycle `e^inf = (0, 1)`.
pub fn extend_algebroid(a: &Algebroid) -> Result<(Algebroid, Cocycle)> {
    let k = a.rank();
    let n = a.dim();
    let mut names = a.frame_names().to_vec();
    names.push(unique_name(&names, "e_inf"));
    let mut anchor = a.anchor_matrix().to_vec();
    anchor.push(vec![Scalar::zero(n); n]);
    let structure = a
        .structure()
        .iter()
        .map(|(&ij, s)| Ok((ij, s.with_rank(k + 1)?)))
        .collect::<Result<Vec<_>>>()?;
    let ext = Algebroid::new(a.base().clone(), names, anchor, structure)?;
    let phi = Cocycle::new(&ext, ext.coframe(k))?;
    Ok((ext, phi))
}

fn unique_name(taken: &[String], stem: &str) -> String {
    let mut name = stem.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

/// Splits an element over the extended frame of size `rank + 1`.
pub fn split<K: Kind>(m: &Graded<K>) -> Result<Split<K>> {
    let k = m.rank().checked_sub(1).ok_or(AlgebraError::InvalidStructure(
        "cannot split an element over an empty frame".into(),
    ))?;
    let r = m.degree();
    let inf = Blade::single(k);
    let mut head = Graded::zero(k, r, m.nvars());
    let mut tail = (r > 0).then(|| Graded::zero(k, r - 1, m.nvars()));
    for (b, c) in m.terms() {
        if b.contains(k) {
            let j = b.without(inf);
            // e_inf ^ e_J = (-1)^|J| e_{J u inf}
            tail.as_mut()
                .expect("degree is positive")
                .insert_signed(j, c.clone(), j.degree() % 2 == 1);
        } else {
            head.insert(b, c.clone());
        }
    }
    Ok(Split { head, tail })
}

/// `join(P, Q) = P + e_inf ^ Q`.
pub fn join<K: Kind>(s: &Split<K>) -> Graded<K> {
    let k = s.rank();
    let mut out = s.head.with_rank(k + 1).expect("frame grows");
    if let Some(t) = &s.tail {
        let e_inf = Graded::<K>::basis(k + 1, s.nvars(), &[k]).expect("index in range");
        out += &e_inf.wedge(&t.with_rank(k + 1).expect("frame grows")).expect("compatible");
    }
    out
}

fn check_same_frame<K: Kind, L: Kind>(s: &Split<K>, t: &Split<L>) -> Result<()> {
    if s.rank() != t.rank() {
        return Err(AlgebraError::RankMismatch {
            expected: s.rank(),
            found: t.rank(),
        });
    }
    if s.nvars() != t.nvars() {
        return Err(AlgebraError::BaseMismatch {
            expected: s.nvars(),
            found: t.nvars(),
        });
    }
    Ok(())
}

/// `i_(a,b) (P, Q) = (i_a P + i_b Q, (-1)^k i_a Q)` for `(a, b)` of degree `k`.
pub fn tilde_contract(s: &SplitForm, t: &SplitMultivector) -> Result<SplitMultivector> {
    check_same_frame(s, t)?;
    let (k, r) = (s.degree(), t.degree());
    if k > r {
        return Err(AlgebraError::DegreeUnderflow {
            contractor: k,
            target: r,
        });
    }
    let mut head = contract(&s.head, &t.head)?;
    if let (Some(b), Some(q)) = (&s.tail, &t.tail) {
        head += &contract(b, q)?;
    }
    let tail = match &t.tail {
        None => None,
        Some(_) if k == r => None,
        Some(q) => {
            let c = contract(&s.head, q)?;
            Some(if k % 2 == 1 { -c } else { c })
        }
    };
    Ok(Split { head, tail })
}

/// `(P,Q) ^ (P',Q') = (P ^ P', Q ^ P' + (-1)^r P ^ Q')`.
pub fn tilde_wedge<K: Kind>(s: &Split<K>, t: &Split<K>) -> Result<Split<K>> {
    check_same_frame(s, t)?;
    let head = s.head.wedge(&t.head)?;
    let degree = s.degree() + t.degree();
    if degree == 0 {
        return Ok(Split { head, tail: None });
    }
    let mut tail = Graded::zero(s.rank(), degree - 1, s.nvars());
    if let Some(q) = &s.tail {
        tail += &q.wedge(&t.head)?;
    }
    if let Some(q) = &t.tail {
        let w = s.head.wedge(q)?;
        tail += &if s.degree() % 2 == 1 { -w } else { w };
    }
    Ok(Split {
        head,
        tail: Some(tail),
    })
}

/// `d~(a, b) = (d a, -d b)`.
pub fn tilde_differential(a: &Algebroid, s: &SplitForm) -> Result<SplitForm> {
    a.check_graded(&s.head)?;
    let head = a.differential(&s.head)?;
    let tail = match &s.tail {
        Some(b) => -a.differential(b)?,
        None => Graded::zero(a.rank(), 0, a.dim()),
    };
    Ok(Split {
        head,
        tail: Some(tail),
    })
}

/// Evaluates `(P, Q)` on `(a_1, f_1), ..., (a_r, f_r)` by the split formula.
pub fn evaluate_split(s: &SplitMultivector, args: &[(crate::graded::Form, Scalar)]) -> Result<Scalar> {
    let r = s.degree();
    if args.len() != r {
        return Err(AlgebraError::DegreeMismatch {
            expected: r,
            found: args.len(),
        });
    }
    let wedge_all = |items: &[&crate::graded::Form]| -> Result<crate::graded::Form> {
        let mut acc = Graded::scalar(s.rank(), Scalar::one(s.nvars()));
        for a in items {
            acc = acc.wedge(a)?;
        }
        Ok(acc)
    };
    let alphas: Vec<&crate::graded::Form> = args.iter().map(|(a, _)| a).collect();
    let mut out = crate::graded::pair(&wedge_all(&alphas)?, &s.head)?;
    if let Some(q) = &s.tail {
        for (i, (_, f)) in args.iter().enumerate() {
            let rest: Vec<&crate::graded::Form> =
                alphas.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, a)| *a).collect();
            let v = f * &crate::graded::pair(&wedge_all(&rest)?, q)?;
            if i % 2 == 0 {
                out += &v;
            } else {
                out -= &v;
            }
        }
    }
    Ok(out)
}

fn sample_split<K: Kind>(s: &mut Sampler, rank: usize, degree: usize) -> Split<K> {
    let head = s.graded(rank, degree);
    let tail = (degree > 0).then(|| s.graded(rank, degree - 1));
    Split { head, tail }
}

/// Checks every split operation against the direct computation over the
/// extended frame, on seeded samples of degree up to `min(rank + 1, 3)`.
pub fn verify_biproduct(a: &Algebroid, config: &SampleConfig) -> Result<CheckReport> {
    let (ext, _) = extend_algebroid(a)?;
    let k = a.rank();
    let n = a.dim();
    let coords = a.coords();
    let max_deg = (k + 1).min(3);
    let mut report = CheckReport::new();

    let mut s = Sampler::new(config, n, "biproduct/join");
    let cases: Vec<SplitMultivector> = (0..config.trials)
        .map(|_| {
            let d = s.degree(max_deg);
            sample_split(&mut s, k, d)
        })
        .collect();
    report.push(verify_cases(
        "split inverts join",
        "split(join(P, Q)) = (P, Q)",
        coords,
        &cases,
        |t| {
            let back = split(&join(t))?;
            Ok(difference(&back, t))
        },
        |t| vec![("(P, Q)".into(), t.render(coords))],
    ));

    let mut s = Sampler::new(config, n, "biproduct/evaluation");
    let cases: Vec<(SplitMultivector, Vec<(crate::graded::Form, Scalar)>)> = (0..config.trials)
        .map(|_| {
            let d = s.degree(max_deg);
            let t = sample_split(&mut s, k, d);
            let args = (0..d).map(|_| (s.graded(k, 1), s.scalar())).collect();
            (t, args)
        })
        .collect();
    report.push(verify_cases(
        "split evaluation formula",
        "(P,Q)((a_1,f_1),...,(a_r,f_r)) = P(a_1,...,a_r) + sum (-1)^(i+1) f_i Q(a_1,...,^a_i,...,a_r)",
        coords,
        &cases,
        |(t, args)| {
            let direct = {
                let mut acc = Graded::scalar(k + 1, Scalar::one(n));
                for (alpha, f) in args {
                    acc = acc.wedge(&join(&Split {
                        head: alpha.clone(),
                        tail: Some(Graded::scalar(k, f.clone())),
                    }))?;
                }
                crate::graded::pair(&acc, &join(t))?
            };
            Ok(direct - evaluate_split(t, args)?)
        },
        |(t, args)| {
            let mut v = vec![("(P, Q)".to_string(), t.render(coords))];
            for (i, (alpha, f)) in args.iter().enumerate() {
                v.push((format!("arg{}", i + 1), format!("({}, {})", alpha.render(coords), f.render(coords))));
            }
            v
        },
    ));

    let mut s = Sampler::new(config, n, "biproduct/contract");
    let cases: Vec<(SplitForm, SplitMultivector)> = (0..config.trials)
        .map(|_| {
            let r = s.degree(max_deg);
            let d = s.degree(r);
            (sample_split(&mut s, k, d), sample_split(&mut s, k, r))
        })
        .collect();
    report.push(verify_cases(
        "split interior product",
        "i_(a,b)(P,Q) = (i_a P + i_b Q, (-1)^k i_a Q)",
        coords,
        &cases,
        |(f, t)| {
            let direct = split(&contract(&join(f), &join(t))?)?;
            Ok(difference(&tilde_contract(f, t)?, &direct))
        },
        |(f, t)| vec![("(a, b)".into(), f.render(coords)), ("(P, Q)".into(), t.render(coords))],
    ));

    let mut s = Sampler::new(config, n, "biproduct/wedge");
    let cases: Vec<(SplitMultivector, SplitMultivector)> = (0..config.trials)
        .map(|_| {
            let r = s.degree(max_deg);
            let r2 = s.degree(max_deg - r);
            (sample_split(&mut s, k, r), sample_split(&mut s, k, r2))
        })
        .collect();
    report.push(verify_cases(
        "split wedge product",
        "(P,Q) ^ (P',Q') = (P ^ P', Q ^ P' + (-1)^r P ^ Q')",
        coords,
        &cases,
        |(x, y)| {
            let direct = split(&join(x).wedge(&join(y))?)?;
            Ok(difference(&tilde_wedge(x, y)?, &direct))
        },
        |(x, y)| vec![("(P, Q)".into(), x.render(coords)), ("(P', Q')".into(), y.render(coords))],
    ));

    let mut s = Sampler::new(config, n, "biproduct/differential");
    let cases: Vec<SplitForm> = (0..config.trials)
        .map(|_| {
            let d = s.degree(max_deg - 1);
            sample_split(&mut s, k, d)
        })
        .collect();
    report.push(verify_cases(
        "split differential",
        "d~(a, b) = (d a, -d b)",
        coords,
        &cases,
        |f| {
            let direct = split(&ext.differential(&join(f))?)?;
            Ok(difference(&tilde_differential(a, f)?, &direct))
        },
        |f| vec![("(a, b)".into(), f.render(coords))],
    ));
    Ok(report)
}

fn difference<K: Kind>(x: &Split<K>, y: &Split<K>) -> Split<K> {
    let head = &x.head - &y.head;
    let tail = match (&x.tail, &y.tail) {
        (None, None) => None,
        _ => Some(&x.tail_or_zero() - &y.tail_or_zero()),
    };
    Split { head, tail }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{Form, Multivector, Section};
    use crate::scalar::BasePatch;

    fn line() -> Algebroid {
        Algebroid::tangent(&BasePatch::new(["x"]).unwrap()).unwrap()
    }

    #[test]
    fn extended_bracket_of_function_slot() {
        let (ext, phi) = extend_algebroid(&line()).unwrap();
        assert_eq!(ext.rank(), 2);
        let x = Scalar::var(1, 0).unwrap();
        let dx = ext.frame(0);
        let xslot = ext.frame(1).scale(&x);
        assert_eq!(ext.bracket(&dx, &xslot).unwrap(), ext.frame(1));
        assert_eq!(phi.form(), &ext.coframe(1));
        let g = x.pow(2);
        let fx = &dx + &xslot;
        assert_eq!(ext.anchor_apply(&fx, &g).unwrap(), line().anchor_apply(&line().frame(0), &g).unwrap());
        assert!(ext.bracket(&fx, &fx).unwrap().is_zero());
    }

    #[test]
    fn join_split_basics() {
        let a = line();
        let p = a.frame(0);
        assert_eq!(join(&Split::from_head(p.clone())), p.with_rank(2).unwrap());
        let m = Multivector::basis(3, 0, &[0, 2]).unwrap();
        let s = split(&m).unwrap();
        // e1 ^ e_inf = -e_inf ^ e1
        assert_eq!(s.tail().unwrap(), &-Multivector::basis(2, 0, &[0]).unwrap());
        assert!(s.head().is_zero());
    }

    #[test]
    fn tilde_instances() {
        let base = BasePatch::new(["x", "y"]).unwrap();
        let a = Algebroid::tangent(&base).unwrap();
        let x = Scalar::var(2, 0).unwrap();
        let p = Multivector::basis(2, 2, &[0, 1]).unwrap();
        let alpha = a.coframe(0);
        let r = tilde_contract(&Split::from_head(alpha.clone()), &Split::from_head(p.clone())).unwrap();
        assert_eq!(r, Split::from_head(contract(&alpha, &p).unwrap()));
        let q = a.frame(1);
        let beta = Form::scalar(2, x.clone());
        let r = tilde_contract(&Split::from_tail(beta.clone()), &Split::from_tail(q.clone())).unwrap();
        assert_eq!(r, Split::from_head(contract(&beta, &q).unwrap()));
        let w = tilde_wedge(&Split::<Vectors>::from_tail(a.frame(0)), &Split::from_tail(a.frame(1))).unwrap();
        assert!(w.is_zero());
        let f = Split::from_tail(Form::scalar(2, x.clone()));
        let d = tilde_differential(&a, &f).unwrap();
        assert!(d.head().is_zero());
        assert_eq!(d.tail().unwrap(), &-a.differential(&Form::scalar(2, x.clone())).unwrap());
        let df = Split::from_head(a.differential(&Form::scalar(2, x)).unwrap());
        assert!(tilde_differential(&a, &df).unwrap().is_zero());
    }

    #[test]
    fn twisted_differential_on_extension_splits() {
        let base = BasePatch::new(["x", "y"]).unwrap();
        let a = Algebroid::tangent(&base).unwrap();
        let (ext, phi) = extend_algebroid(&a).unwrap();
        let f = &Scalar::var(2, 0).unwrap() * &Scalar::var(2, 1).unwrap();
        let d = phi.calculus().differential(&Form::scalar(3, f.clone())).unwrap();
        let s = split(&d).unwrap();
        assert_eq!(s.head(), &a.differential(&Form::scalar(2, f.clone())).unwrap());
        assert_eq!(s.tail().unwrap(), &Form::scalar(2, f));
        let _ = ext;
    }

    #[test]
    fn identification_holds() {
        let base = BasePatch::new(["x", "y"]).unwrap();
        let e2 = Section::basis(2, 2, &[1]).unwrap().scale(&Scalar::var(2, 0).unwrap());
        let a = Algebroid::new(
            base,
            vec!["a".into(), "b".into()],
            vec![
                vec![Scalar::one(2), Scalar::zero(2)],
                vec![Scalar::zero(2), Scalar::var(2, 0).unwrap()],
            ],
            [((0, 1), e2)],
        )
        .unwrap();
        let report = verify_biproduct(&a, &SampleConfig::new(5, 1, 8).unwrap()).unwrap();
        assert!(report.passed(), "{report:#?}");
    }

    #[test]
    fn canonical_cocycle_everywhere() {
        let a = Algebroid::lie_algebra(2, [((0, 1), Section::basis(2, 0, &[1]).unwrap())]).unwrap();
        assert!(extend_algebroid(&a).is_ok());
        assert!(extend_algebroid(&line()).is_ok());
    }
}
