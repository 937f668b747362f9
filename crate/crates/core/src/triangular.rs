//! The triangular construction: a bivector `P` with `[P,P]^{phi0} = 0`
//! turns `A*` into an algebroid with
//!
//! ```text
//! [a, b]_* = L^{phi0}_{P#a} b - L^{phi0}_{P#b} a - d^{phi0}(P(a, b)),   rho_* = rho . P#
//! ```
//!
//! and `X0 = -P#(phi0)` is a cocycle of it.

use crate::algebroid::Algebroid;
use crate::bialgebroid::{check_compatibility, verify_duality_lemmas, GenBialgebroidPair};
use crate::check::{verify_cases, CheckReport};
use crate::deformed::Cocycle;
use crate::error::{AlgebraError, Result};
use crate::graded::{contract, pair, Form, Multivector, Section};
use crate::sample::{SampleConfig, Sampler};
use crate::scalar::Scalar;

/// `P#(a) = i_a P`, so that `<b, P#(a)> = P(a, b)`.
pub fn sharp(p: &Multivector, alpha: &Form) -> Result<Section> {
    if p.degree() != 2 {
        return Err(AlgebraError::DegreeMismatch {
            expected: 2,
            found: p.degree(),
        });
    }
    if alpha.degree() != 1 {
        return Err(AlgebraError::DegreeMismatch {
            expected: 1,
            found: alpha.degree(),
        });
    }
    contract(alpha, p)
}

/// `P(a, b) = <a ^ b, P>`.
pub fn evaluate_bivector(p: &Multivector, a: &Form, b: &Form) -> Result<Scalar> {
    pair(&a.wedge(b)?, p)
}

/// Reports whether `[P,P]^{phi0}` vanishes.
pub fn check_maurer_cartan(phi0: &Cocycle, p: &Multivector) -> Result<CheckReport> {
    let a = phi0.owner();
    a.check_graded(p)?;
    if p.degree() != 2 {
        return Err(AlgebraError::DegreeMismatch {
            expected: 2,
            found: p.degree(),
        });
    }
    let coords = a.coords();
    let mut report = CheckReport::new();
    report.push(verify_cases(
        "Maurer-Cartan equation",
        "[P, P]^{phi0} = 0",
        coords,
        &[()],
        |_| phi0.calculus().schouten(p, p),
        |_| vec![("P".into(), p.render(coords))],
    ));
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularDatum {
    phi0: Cocycle,
    p: Multivector,
}

impl TriangularDatum {
    pub fn new(phi0: Cocycle, p: Multivector) -> Result<Self> {
        let report = check_maurer_cartan(&phi0, &p)?;
        if !report.passed() {
            return Err(AlgebraError::Validation {
                what: "Maurer-Cartan bivector".into(),
                report: Box::new(report),
            });
        }
        Ok(Self { phi0, p })
    }

    pub fn algebroid(&self) -> &Algebroid {
        self.phi0.owner()
    }

    pub fn phi0(&self) -> &Cocycle {
        &self.phi0
    }

    pub fn bivector(&self) -> &Multivector {
        &self.p
    }

    pub fn sharp(&self, alpha: &Form) -> Result<Section> {
        sharp(&self.p, alpha)
    }

    /// `X0 = -P#(phi0)`.
    pub fn x0(&self) -> Section {
        -self.sharp(self.phi0.form()).expect("phi0 is a 1-form")
    }

    /// `[a, b]_*` evaluated by its defining formula on arbitrary 1-forms.
    pub fn dual_bracket(&self, a: &Form, b: &Form) -> Result<Form> {
        let calc = self.phi0.calculus();
        let l1 = calc.lie_derivative_form(&self.sharp(a)?, b)?;
        let l2 = calc.lie_derivative_form(&self.sharp(b)?, a)?;
        let f = Form::scalar(a.rank(), evaluate_bivector(&self.p, a, b)?);
        Ok(l1 - l2 - calc.differential(&f)?)
    }

    /// The dual algebroid on the coframe of `A`.
    pub fn dual_algebroid(&self) -> Result<Algebroid> {
        let a = self.algebroid();
        let k = a.rank();
        let anchor = (0..k)
            .map(|i| a.anchor_vector(&self.sharp(&a.coframe(i))?))
            .collect::<Result<Vec<_>>>()?;
        let mut structure = Vec::new();
        for i in 0..k {
            for j in (i + 1)..k {
                let b = self.dual_bracket(&a.coframe(i), &a.coframe(j))?;
                structure.push(((i, j), b.into_dual_kind()));
            }
        }
        let names = a.frame_names().iter().map(|n| format!("{n}_dual")).collect();
        Algebroid::new(a.base().clone(), names, anchor, structure)
    }
}

/// Assembles `((A, phi0), (A*, X0))` from a triangular datum.
pub fn build_dual(t: &TriangularDatum, config: &SampleConfig) -> Result<GenBialgebroidPair> {
    let adual = t.dual_algebroid()?;
    GenBialgebroidPair::new(t.algebroid(), t.phi0.form().clone(), &adual, t.x0(), config)
}

/// Checks the triangular identities and runs the full compatibility and
/// duality suites on the assembled pair.
pub fn verify_triangular(t: &TriangularDatum, config: &SampleConfig) -> Result<CheckReport> {
    let pairing = build_dual(t, config)?;
    let a = t.algebroid();
    let coords = a.coords();
    let k = a.rank();
    let n = a.dim();
    let mut report = CheckReport::new();

    let mut xs: Vec<Section> = (0..k).map(|i| a.frame(i)).collect();
    let mut s = Sampler::new(config, n, "triangular/sections");
    for i in 0..config.trials {
        xs.push(a.frame(i % k).scale(&s.scalar()));
    }
    for _ in 0..config.trials {
        xs.push(s.section(k));
    }
    report.push(verify_cases(
        "d_* is the bracket with P",
        "d_*^{X0} X = [P, X]^{phi0}",
        coords,
        &xs,
        |x| Ok(pairing.d_star(x)? - t.phi0.calculus().schouten(&t.p, x)?),
        |x| vec![("X".into(), x.render(coords))],
    ));

    report.push(verify_cases(
        "transpose of P# maps phi0 to X0",
        "(P#)*(phi0) = X0",
        coords,
        &[()],
        |_| {
            let comps = (0..k)
                .map(|i| pair(t.phi0.form(), &t.sharp(&a.coframe(i))?))
                .collect::<Result<Vec<_>>>()?;
            Ok(Section::vector(comps, n)? - t.x0())
        },
        |_| vec![("phi0".into(), t.phi0.form().render(coords))],
    ));

    let mut fs: Vec<(Form, Form)> = Vec::new();
    for i in 0..k {
        for j in 0..k {
            fs.push((a.coframe(i), a.coframe(j)));
        }
    }
    let mut s = Sampler::new(config, n, "triangular/forms");
    for _ in 0..config.trials {
        fs.push((s.graded(k, 1), s.graded(k, 1)));
    }
    let describe = |(u, v): &(Form, Form)| vec![("alpha".into(), u.render(coords)), ("beta".into(), v.render(coords))];
    report.push(verify_cases(
        "dual bracket matches its formula",
        "[a, b]_* = L^{phi0}_{P#a} b - L^{phi0}_{P#b} a - d^{phi0}(P(a, b))",
        coords,
        &fs,
        |(u, v)| {
            let stored = pairing.adual().bracket(&u.to_dual_kind(), &v.to_dual_kind())?.into_dual_kind();
            Ok(stored - t.dual_bracket(u, v)?)
        },
        describe,
    ));
    report.push(verify_cases(
        "P# preserves brackets",
        "P#[a, b]_* = [P#a, P#b]",
        coords,
        &fs,
        |(u, v)| {
            let lhs = t.sharp(&pairing.adual().bracket(&u.to_dual_kind(), &v.to_dual_kind())?.into_dual_kind())?;
            Ok(lhs - a.bracket(&t.sharp(u)?, &t.sharp(v)?)?)
        },
        describe,
    ));
    report.push(verify_cases(
        "dual anchor factors through P#",
        "rho_* = rho . P#",
        coords,
        &fs,
        |(u, _)| {
            let x = pairing.rho_star(u)?;
            let y = a.anchor_vector(&t.sharp(u)?)?;
            Ok(x.into_iter().zip(y).map(|(p, q)| p - q).collect::<Vec<_>>())
        },
        describe,
    ));
    report.extend(check_compatibility(&pairing, config));
    report.extend(verify_duality_lemmas(&pairing, config));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn sharp_on_basis() {
        let p = Multivector::basis(2, 0, &[0, 1]).unwrap();
        let e1 = Form::basis(2, 0, &[0]).unwrap();
        let e2 = Form::basis(2, 0, &[1]).unwrap();
        assert_eq!(sharp(&p, &e1).unwrap(), Section::basis(2, 0, &[1]).unwrap());
        assert_eq!(sharp(&p, &e2).unwrap(), -Section::basis(2, 0, &[0]).unwrap());
        let alpha = &e1 + &e2;
        assert!(pair(&alpha, &sharp(&p, &alpha).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn affine_datum() {
        let phi0 = fixtures::affine_cocycle();
        let p = Multivector::basis(2, 0, &[0, 1]).unwrap();
        let t = TriangularDatum::new(phi0, p).unwrap();
        assert_eq!(t.x0(), -Section::basis(2, 0, &[1]).unwrap());
        let pair = build_dual(&t, &SampleConfig::default()).unwrap();
        assert_eq!(
            pair.adual().structure_constant(0, 1),
            Section::basis(2, 0, &[0]).unwrap()
        );
        let report = verify_triangular(&t, &SampleConfig::default()).unwrap();
        assert!(report.passed(), "{report:#?}");
    }

    #[test]
    fn generic_rank3_bivector_fails() {
        // so(3), where no nonzero constant bivector is Maurer-Cartan
        let a = Algebroid::lie_algebra(
            3,
            [((0, 1), Section::basis(3, 0, &[2]).unwrap()), ((1, 2), Section::basis(3, 0, &[0]).unwrap()), ((0, 2), -Section::basis(3, 0, &[1]).unwrap())],
        )
        .unwrap();
        let phi0 = Cocycle::zero(&a);
        let p = Multivector::from_components(
            3,
            2,
            0,
            [(vec![0, 1], Scalar::from_int(0, 2)), (vec![0, 2], Scalar::from_int(0, -1)), (vec![1, 2], Scalar::from_int(0, 3))],
        )
        .unwrap();
        let report = check_maurer_cartan(&phi0, &p).unwrap();
        assert!(!report.passed());
        let cx = report.entries[0].counterexample.as_ref().unwrap();
        assert_ne!(cx.residual, "0");
        assert!(TriangularDatum::new(phi0, p).is_err());
    }
}
