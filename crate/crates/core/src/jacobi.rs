//! Jacobi and Poisson structures on a coordinate patch.
//!
//! A Jacobi structure `(Lambda, E)` defines the bracket
//! `{f,g} = Lambda(df, dg) + f E(g) - g E(f)`. Multivectors here are written
//! in the tangent frame `d/dx_i` and forms in `dx_i`.
//!
//! Under the Schouten sign convention of [`Algebroid::schouten`] the Jacobi
//! identity is equivalent to `[Lambda, Lambda] + 2 E ^ Lambda = 0` together
//! with `[E, Lambda] = 0`. Both are checked, alongside the Jacobiator itself.

use crate::algebroid::Algebroid;
use crate::check::{verify_cases, CheckReport};
use crate::deformed::Cocycle;
use crate::error::{AlgebraError, Result};
use crate::graded::{contract, pair, Form, Multivector, Section};
use crate::sample::{SampleConfig, Sampler};
use crate::scalar::{rational, BasePatch, Scalar};

/// A bivector and vector field satisfying the Jacobi identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiStructure {
    tangent: Algebroid,
    lambda: Multivector,
    e: Section,
}

impl JacobiStructure {
    /// Validates with [`check_jacobi_structure`] under the default sampling.
    pub fn new(base: &BasePatch, lambda: Multivector, e: Section) -> Result<Self> {
        Self::with_config(base, lambda, e, &SampleConfig::default())
    }

    pub fn with_config(
        base: &BasePatch,
        lambda: Multivector,
        e: Section,
        config: &SampleConfig,
    ) -> Result<Self> {
        let report = check_jacobi_structure(base, &lambda, &e, config)?;
        if !report.passed() {
            return Err(AlgebraError::Validation {
                what: "Jacobi structure".into(),
                report: Box::new(report),
            });
        }
        Ok(Self {
            tangent: Algebroid::tangent(base)?,
            lambda,
            e,
        })
    }

    /// A Poisson structure, i.e. `E = 0`.
    pub fn poisson(base: &BasePatch, pi: Multivector) -> Result<Self> {
        let e = Section::zero(base.dim(), 1, base.dim());
        Self::new(base, pi, e)
    }

    pub fn base(&self) -> &BasePatch {
        self.tangent.base()
    }

    pub fn tangent(&self) -> &Algebroid {
        &self.tangent
    }

    pub fn lambda(&self) -> &Multivector {
        &self.lambda
    }

    pub fn e(&self) -> &Section {
        &self.e
    }

    pub fn is_poisson(&self) -> bool {
        self.e.is_zero()
    }

    /// `Lambda(a, b) = <a ^ b, Lambda>`.
    pub fn lambda_apply(&self, a: &Form, b: &Form) -> Result<Scalar> {
        pair(&a.wedge(b)?, &self.lambda)
    }

    /// `Lambda#(a)`, defined by `<b, Lambda#(a)> = Lambda(a, b)`.
    pub fn sharp(&self, a: &Form) -> Result<Section> {
        contract(a, &self.lambda)
    }

    /// The negated structure `(-Lambda, -E)`, which is again Jacobi.
    pub fn negate(&self) -> Self {
        Self {
            tangent: self.tangent.clone(),
            lambda: -&self.lambda,
            e: -&self.e,
        }
    }
}

fn check_shapes(tangent: &Algebroid, lambda: &Multivector, e: &Section) -> Result<()> {
    tangent.check_graded(lambda)?;
    if lambda.degree() != 2 {
        return Err(AlgebraError::DegreeMismatch {
            expected: 2,
            found: lambda.degree(),
        });
    }
    tangent.check_section(e)
}

fn raw_bracket(tangent: &Algebroid, lambda: &Multivector, e: &Section, f: &Scalar, g: &Scalar) -> Result<Scalar> {
    tangent.check_scalar(f)?;
    tangent.check_scalar(g)?;
    let k = tangent.rank();
    let df = tangent.differential(&Form::scalar(k, f.clone()))?;
    let dg = tangent.differential(&Form::scalar(k, g.clone()))?;
    let l = pair(&df.wedge(&dg)?, lambda)?;
    Ok(l + f * &tangent.anchor_apply(e, g)? - g * &tangent.anchor_apply(e, f)?)
}

/// `{f,g} = Lambda(df, dg) + f E(g) - g E(f)`.
pub fn jacobi_bracket(j: &JacobiStructure, f: &Scalar, g: &Scalar) -> Result<Scalar> {
    raw_bracket(&j.tangent, &j.lambda, &j.e, f, g)
}

/// `{{f,g},h} + {{g,h},f} + {{h,f},g}`.
pub fn jacobiator(j: &JacobiStructure, f: &Scalar, g: &Scalar, h: &Scalar) -> Result<Scalar> {
    jacobiator_raw(&j.tangent, &j.lambda, &j.e, f, g, h)
}

fn jacobiator_raw(
    t: &Algebroid,
    lambda: &Multivector,
    e: &Section,
    f: &Scalar,
    g: &Scalar,
    h: &Scalar,
) -> Result<Scalar> {
    let b = |u: &Scalar, v: &Scalar| raw_bracket(t, lambda, e, u, v);
    Ok(b(&b(f, g)?, h)? + b(&b(g, h)?, f)? + b(&b(h, f)?, g)?)
}

/// Coordinate functions preceded by the constant `1`.
pub(crate) fn coordinate_functions(n: usize) -> Vec<Scalar> {
    std::iter::once(Scalar::one(n))
        .chain((0..n).map(|i| Scalar::var(n, i).expect("coordinate")))
        .collect()
}

/// Checks the Jacobi identity tensorially and by the Jacobiator on all triples
/// from `1, x_1, ..., x_n` and on seeded polynomial triples.
pub fn check_jacobi_structure(
    base: &BasePatch,
    lambda: &Multivector,
    e: &Section,
    config: &SampleConfig,
) -> Result<CheckReport> {
    let t = Algebroid::tangent(base)?;
    check_shapes(&t, lambda, e)?;
    let coords = t.coords();
    let mut report = CheckReport::new();
    report.push(verify_cases(
        "Schouten square of Lambda",
        "[Lambda, Lambda] + 2 E ^ Lambda = 0",
        coords,
        &[()],
        |_| {
            let two_e_l = e.wedge(lambda)?.map_coeffs(|c| c.scale(&rational(2)));
            Ok(t.schouten(lambda, lambda)? + two_e_l)
        },
        |_| vec![("Lambda".into(), lambda.render(coords)), ("E".into(), e.render(coords))],
    ));
    report.push(verify_cases(
        "E preserves Lambda",
        "[E, Lambda] = 0",
        coords,
        &[()],
        |_| t.schouten(e, lambda),
        |_| vec![("Lambda".into(), lambda.render(coords)), ("E".into(), e.render(coords))],
    ));
    let n = base.dim();
    let fs = coordinate_functions(n);
    let mut cases = Vec::new();
    for i in 0..fs.len() {
        for j in (i + 1)..fs.len() {
            for l in (j + 1)..fs.len() {
                cases.push((fs[i].clone(), fs[j].clone(), fs[l].clone()));
            }
        }
    }
    let mut s = Sampler::new(config, n, "jacobi/jacobiator");
    for _ in 0..config.trials {
        cases.push((s.scalar(), s.scalar(), s.scalar()));
    }
    report.push(verify_cases(
        "Jacobi identity of the bracket",
        "{{f,g},h} + {{g,h},f} + {{h,f},g} = 0",
        coords,
        &cases,
        |(f, g, h)| jacobiator_raw(&t, lambda, e, f, g, h),
        |(f, g, h)| {
            vec![
                ("f".into(), f.render(coords)),
                ("g".into(), g.render(coords)),
                ("h".into(), h.render(coords)),
            ]
        },
    ));
    Ok(report)
}

/// Checks that the bracket is a first-order operator in its first slot:
/// `{fg,h} = f{g,h} + g{f,h} - fg{1,h}`, plus antisymmetry.
pub fn check_first_order(j: &JacobiStructure, config: &SampleConfig) -> CheckReport {
    let n = j.base().dim();
    let coords = j.tangent.coords();
    let mut s = Sampler::new(config, n, "jacobi/first-order");
    let cases: Vec<(Scalar, Scalar, Scalar)> =
        (0..config.trials).map(|_| (s.scalar(), s.scalar(), s.scalar())).collect();
    let describe = |(f, g, h): &(Scalar, Scalar, Scalar)| {
        vec![
            ("f".into(), f.render(coords)),
            ("g".into(), g.render(coords)),
            ("h".into(), h.render(coords)),
        ]
    };
    let mut report = CheckReport::new();
    report.push(verify_cases(
        "bracket is antisymmetric",
        "{f,g} + {g,f} = 0",
        coords,
        &cases,
        |(f, g, _)| Ok(jacobi_bracket(j, f, g)? + jacobi_bracket(j, g, f)?),
        describe,
    ));
    report.push(verify_cases(
        "bracket is first order",
        "{fg,h} = f{g,h} + g{f,h} - fg{1,h}",
        coords,
        &cases,
        |(f, g, h)| {
            let one = Scalar::one(n);
            Ok(jacobi_bracket(j, &(f * g), h)?
                - f * &jacobi_bracket(j, g, h)?
                - g * &jacobi_bracket(j, f, h)?
                + (f * g) * jacobi_bracket(j, &one, h)?)
        },
        describe,
    ));
    report
}

fn coframe_names(base: &BasePatch) -> Vec<String> {
    base.coords().iter().map(|c| format!("d{c}")).collect()
}

/// The cotangent algebroid of a Poisson bivector: anchor `pi#` and
/// `[a, b]_pi = L_{pi#a} b - L_{pi#b} a - d(pi(a, b))`.
pub fn cotangent_algebroid(base: &BasePatch, pi: &Multivector) -> Result<Algebroid> {
    let j = JacobiStructure::poisson(base, pi.clone())?;
    let t = &j.tangent;
    let n = base.dim();
    let anchor = (0..n)
        .map(|i| j.sharp(&t.coframe(i)).map(|v| v.vector_components()))
        .collect::<Result<Vec<_>>>()?;
    let mut structure = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            let v = cotangent_bracket(&j, &t.coframe(a), &t.coframe(b))?;
            structure.push(((a, b), v.into_dual_kind()));
        }
    }
    Algebroid::new(base.clone(), coframe_names(base), anchor, structure)
}

/// `L_{pi#a} b - L_{pi#b} a - d(pi(a, b))` on arbitrary 1-forms.
pub fn cotangent_bracket(j: &JacobiStructure, a: &Form, b: &Form) -> Result<Form> {
    let t = &j.tangent;
    let l1 = t.lie_derivative(&j.sharp(a)?, b)?;
    let l2 = t.lie_derivative(&j.sharp(b)?, a)?;
    let d = t.differential(&Form::scalar(t.rank(), j.lambda_apply(a, b)?))?;
    Ok(l1 - l2 - d)
}

/// The 1-jet bracket on pairs `(a, f)` of a 1-form and a function:
///
/// ```text
/// [(a,f),(b,g)] = ( L_{L#a} b - L_{L#b} a - d(L(a,b)) + f L_E b - g L_E a - i_E(a ^ b),
///                   L(b,a) + L#(a)(g) - L#(b)(f) + f E(g) - g E(f) )
/// ```
pub fn jet_bracket(j: &JacobiStructure, x: &(Form, Scalar), y: &(Form, Scalar)) -> Result<(Form, Scalar)> {
    let t = &j.tangent;
    let ((a, f), (b, g)) = (x, y);
    let e = &j.e;
    let mut form = cotangent_bracket(j, a, b)?;
    form += &t.lie_derivative(e, b)?.scale(f);
    form -= &t.lie_derivative(e, a)?.scale(g);
    form -= &contract(e, &a.wedge(b)?)?;
    let func = j.lambda_apply(b, a)? + t.anchor_apply(&j.sharp(a)?, g)? - t.anchor_apply(&j.sharp(b)?, f)?
        + f * &t.anchor_apply(e, g)?
        - g * &t.anchor_apply(e, f)?;
    Ok((form, func))
}

/// Packs `(a, f)` as a section of the 1-jet algebroid (slot last).
pub fn jet_section(a: &Form, f: &Scalar) -> Section {
    let n = a.rank();
    let mut comps = a.vector_components();
    comps.push(f.clone());
    Section::vector(comps, a.nvars()).expect("components share the base").with_rank(n + 1).expect("rank fits")
}

/// Unpacks a section of the 1-jet algebroid into `(a, f)`.
pub fn jet_components(x: &Section) -> (Form, Scalar) {
    let n = x.rank() - 1;
    let c = x.vector_components();
    let a = Form::vector(c[..n].to_vec(), x.nvars()).expect("components share the base");
    (a, c[n].clone())
}

/// The Lie algebroid on `T*M x R` of a Jacobi structure, on the frame
/// `(dx_1, ..., dx_n, 1)`, with its 1-cocycle `X0 = (-E, 0)`.
pub fn one_jet_algebroid(j: &JacobiStructure) -> Result<(Algebroid, Cocycle)> {
    let t = &j.tangent;
    let n = j.base().dim();
    let zero = Scalar::zero(n);
    let one = Scalar::one(n);
    let gens: Vec<(Form, Scalar)> = (0..n)
        .map(|i| (t.coframe(i), zero.clone()))
        .chain(std::iter::once((Form::zero(n, 1, n), one.clone())))
        .collect();
    let mut anchor = Vec::with_capacity(n + 1);
    for (a, f) in &gens {
        let v = j.sharp(a)? + j.e.scale(f);
        anchor.push(v.vector_components());
    }
    let mut structure = Vec::new();
    for p in 0..=n {
        for q in (p + 1)..=n {
            let (form, func) = jet_bracket(j, &gens[p], &gens[q])?;
            structure.push(((p, q), jet_section(&form, &func)));
        }
    }
    let mut names = coframe_names(j.base());
    names.push("u".into());
    let alg = Algebroid::new(j.base().clone(), names, anchor, structure)?;
    let x0 = jet_section(&(-&j.e).into_dual_kind(), &zero).into_dual_kind();
    let x0 = Cocycle::new(&alg, x0)?;
    Ok((alg, x0))
}
