//! Generalized Lie bialgebroids `((A, phi0), (A*, X0))`.
//!
//! `A*` is a second [`Algebroid`] of the same rank whose frame is declared
//! dual to the frame of `A`. A section of `A*` is therefore stored as a form
//! of `A`, and a form of `A*` as a multivector of `A`; the conversions are
//! pure relabelings. Below, `d`, `[,]`, `L` belong to `A` twisted by `phi0`
//! and `d_*`, `[,]_*`, `L_*` to `A*` twisted by `X0`.

use crate::algebroid::Algebroid;
use crate::biproduct::extend_algebroid;
use crate::check::{verify_cases, CheckReport};
use crate::deformed::{Cocycle, DeformedCalculus};
use crate::error::{AlgebraError, Result};
use crate::graded::{pair, Form, Multivector, Section};
use crate::jacobi::{coordinate_functions, one_jet_algebroid, JacobiStructure};
use crate::sample::{SampleConfig, Sampler};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenBialgebroidPair {
    phi0: Cocycle,
    x0: Cocycle,
}

fn validated(alg: &Algebroid, what: &str, config: &SampleConfig) -> Result<()> {
    let report = alg.check_axioms(config);
    if report.passed() {
        Ok(())
    } else {
        Err(AlgebraError::Validation {
            what: what.into(),
            report: Box::new(report),
        })
    }
}

impl GenBialgebroidPair {
    /// Assembles a pair after checking the Lie axioms of both algebroids and
    /// the cocycle condition of both cocycles. Compatibility is not checked.
    pub fn new(
        a: &Algebroid,
        phi0: Form,
        adual: &Algebroid,
        x0: Section,
        config: &SampleConfig,
    ) -> Result<Self> {
        if a.rank() != adual.rank() {
            return Err(AlgebraError::RankMismatch {
                expected: a.rank(),
                found: adual.rank(),
            });
        }
        if a.base() != adual.base() {
            return Err(AlgebraError::InvalidStructure(
                "paired algebroids live over different bases".into(),
            ));
        }
        validated(a, "algebroid A", config)?;
        validated(adual, "dual algebroid", config)?;
        let phi0 = Cocycle::new(a, phi0)?;
        let x0 = Cocycle::new(adual, x0.into_dual_kind())?;
        Ok(Self { phi0, x0 })
    }

    /// Pairs two already validated cocycles whose owners are declared dual.
    pub fn from_cocycles(phi0: Cocycle, x0: Cocycle) -> Result<Self> {
        let (a, b) = (phi0.owner(), x0.owner());
        if a.rank() != b.rank() || a.base() != b.base() {
            return Err(AlgebraError::InvalidStructure(
                "paired algebroids must share rank and base".into(),
            ));
        }
        Ok(Self { phi0, x0 })
    }

    pub fn a(&self) -> &Algebroid {
        self.phi0.owner()
    }

    pub fn adual(&self) -> &Algebroid {
        self.x0.owner()
    }

    pub fn phi0(&self) -> &Cocycle {
        &self.phi0
    }

    pub fn x0(&self) -> &Cocycle {
        &self.x0
    }

    /// `X0` as a section of `A`.
    pub fn x0_section(&self) -> Section {
        self.x0.form().to_dual_kind()
    }

    pub fn rank(&self) -> usize {
        self.a().rank()
    }

    pub fn dim(&self) -> usize {
        self.a().dim()
    }

    pub fn coords(&self) -> &[String] {
        self.a().coords()
    }

    fn calc(&self) -> DeformedCalculus<'_> {
        self.phi0.calculus()
    }

    fn star(&self) -> DeformedCalculus<'_> {
        self.x0.calculus()
    }

    /// `((A*, X0), (A, phi0))`.
    pub fn dualize(&self) -> Self {
        Self {
            phi0: self.x0.clone(),
            x0: self.phi0.clone(),
        }
    }

    pub fn d_phi(&self, alpha: &Form) -> Result<Form> {
        self.calc().differential(alpha)
    }

    pub fn d_star(&self, p: &Multivector) -> Result<Multivector> {
        Ok(self.star().differential(&p.to_dual_kind())?.into_dual_kind())
    }

    pub fn bracket_phi(&self, p: &Multivector, q: &Multivector) -> Result<Multivector> {
        self.calc().schouten(p, q)
    }

    pub fn bracket_star(&self, xi: &Form, eta: &Form) -> Result<Form> {
        Ok(self.star().schouten(&xi.to_dual_kind(), &eta.to_dual_kind())?.into_dual_kind())
    }

    /// `L_{X}^{phi0}` on forms of `A`.
    pub fn lie_phi(&self, x: &Section, alpha: &Form) -> Result<Form> {
        self.calc().lie_derivative_form(x, alpha)
    }

    /// `L_{*xi}^{X0}` on forms of `A*`, i.e. multivectors of `A`.
    pub fn lie_star(&self, xi: &Form, p: &Multivector) -> Result<Multivector> {
        Ok(self
            .star()
            .lie_derivative_form(&xi.to_dual_kind(), &p.to_dual_kind())?
            .into_dual_kind())
    }

    /// `rho^{phi0}(X) f`.
    pub fn rho_phi(&self, x: &Section, f: &Scalar) -> Result<Scalar> {
        self.calc().anchor_apply(x, f)
    }

    /// `rho_*^{X0}(xi) f`.
    pub fn rho_star_phi(&self, xi: &Form, f: &Scalar) -> Result<Scalar> {
        self.star().anchor_apply(&xi.to_dual_kind(), f)
    }

    pub fn rho_star(&self, xi: &Form) -> Result<Vec<Scalar>> {
        self.adual().anchor_vector(&xi.to_dual_kind())
    }

    fn function_form(&self, f: &Scalar) -> Form {
        Form::scalar(self.rank(), f.clone())
    }

    fn function_mv(&self, f: &Scalar) -> Multivector {
        Multivector::scalar(self.rank(), f.clone())
    }

    fn frames(&self) -> Vec<Section> {
        (0..self.rank()).map(|i| self.a().frame(i)).collect()
    }

    fn coframes(&self) -> Vec<Form> {
        (0..self.rank()).map(|i| self.a().coframe(i)).collect()
    }

    fn describe(&self, items: Vec<(&str, String)>) -> Vec<(String, String)> {
        items.into_iter().map(|(n, v)| (n.to_string(), v)).collect()
    }
}

/// Frame pairs, then seeded `f e_i` pairs, then seeded general sections.
fn section_pairs(p: &GenBialgebroidPair, config: &SampleConfig, label: &str) -> Vec<(Section, Section)> {
    let k = p.rank();
    let fr = p.frames();
    let mut cases = Vec::new();
    for i in 0..k {
        for j in 0..k {
            cases.push((fr[i].clone(), fr[j].clone()));
        }
    }
    let mut s = Sampler::new(config, p.dim(), label);
    for t in 0..config.trials {
        let (i, j) = (t % k, (t / k + 1) % k);
        cases.push((fr[i].scale(&s.scalar()), fr[j].scale(&s.scalar())));
    }
    for _ in 0..config.trials {
        cases.push((s.section(k), s.section(k)));
    }
    cases
}

fn sections(p: &GenBialgebroidPair, config: &SampleConfig, label: &str) -> Vec<Section> {
    let mut out = p.frames();
    let mut s = Sampler::new(config, p.dim(), label);
    for _ in 0..config.trials {
        out.push(s.section(p.rank()));
    }
    out
}

fn functions(p: &GenBialgebroidPair, config: &SampleConfig, label: &str) -> Vec<Scalar> {
    let mut out = coordinate_functions(p.dim());
    let mut s = Sampler::new(config, p.dim(), label);
    for _ in 0..config.trials {
        out.push(s.scalar());
    }
    out
}

/// Checks the defining compatibility conditions of a generalized Lie
/// bialgebroid and their degree-0 and degree-1 consequences.
pub fn check_compatibility(p: &GenBialgebroidPair, config: &SampleConfig) -> CheckReport {
    let coords = p.coords();
    let k = p.rank();
    let mut report = CheckReport::new();

    report.push(verify_cases(
        "d_* is a derivation of the bracket",
        "d_*^{X0}[X,Y] = [d_*^{X0}X, Y]^{phi0} + [X, d_*^{X0}Y]^{phi0}",
        coords,
        &section_pairs(p, config, "compat/derivation"),
        |(x, y)| {
            let lhs = p.d_star(&p.a().bracket(x, y)?)?;
            let r1 = p.bracket_phi(&p.d_star(x)?, y)?;
            let r2 = p.bracket_phi(x, &p.d_star(y)?)?;
            Ok(lhs - r1 - r2)
        },
        |(x, y)| p.describe(vec![("X", x.render(coords)), ("Y", y.render(coords))]),
    ));

    let x0 = p.x0_section();
    let phi0 = p.phi0.form().clone();
    report.push(verify_cases(
        "cocycles annihilate each other",
        "phi0(X0) = 0",
        coords,
        &[()],
        |_| pair(&phi0, &x0),
        |_| p.describe(vec![("phi0", phi0.render(coords)), ("X0", x0.render(coords))]),
    ));
    report.push(verify_cases(
        "anchors of the cocycles are opposite",
        "rho(X0) = -rho_*(phi0)",
        coords,
        &[()],
        |_| {
            let a = p.a().anchor_vector(&x0)?;
            let b = p.rho_star(&phi0)?;
            Ok(a.into_iter().zip(b).map(|(u, v)| u + v).collect::<Vec<_>>())
        },
        |_| p.describe(vec![("phi0", phi0.render(coords)), ("X0", x0.render(coords))]),
    ));
    report.push(verify_cases(
        "phi0 acts on sections as minus X0",
        "L_{*phi0} X + [X0, X] = 0",
        coords,
        &sections(p, config, "compat/sections"),
        |x| Ok(p.adual().lie_derivative(&phi0.to_dual_kind(), &x.to_dual_kind())?.into_dual_kind()
            + p.a().bracket(&x0, x)?),
        |x| p.describe(vec![("X", x.render(coords))]),
    ));

    let mut s = Sampler::new(config, p.dim(), "compat/cocycle-lie");
    for degree in 0..=2usize.min(k) {
        let mut cases: Vec<Multivector> = crate::deformed::frame_and_samples(p.a(), degree, &mut s, config.trials);
        if degree == 0 {
            cases.splice(0..0, coordinate_functions(p.dim()).iter().map(|f| p.function_mv(f)));
        }
        report.push(verify_cases(
            &format!("cocycle Lie derivatives cancel in degree {degree}"),
            "L_{*phi0}^{X0} P + L_{X0}^{phi0} P = 0",
            coords,
            &cases,
            |q| Ok(p.lie_star(&phi0, q)? + p.calc().lie_derivative_multivector(&x0, q)?),
            |q| p.describe(vec![("P", q.render(coords))]),
        ));
    }
    report
}

/// Checks the identities leading to self-duality on frames, coordinate
/// functions and seeded samples.
pub fn verify_duality_lemmas(p: &GenBialgebroidPair, config: &SampleConfig) -> CheckReport {
    let coords = p.coords();
    let k = p.rank();
    let n = p.dim();
    let mut report = CheckReport::new();

    // (X, f) cases
    let mut xf: Vec<(Section, Scalar)> = Vec::new();
    let fs = coordinate_functions(n);
    for x in p.frames() {
        for f in &fs {
            xf.push((x.clone(), f.clone()));
        }
    }
    let mut s = Sampler::new(config, n, "lemmas/section-function");
    for _ in 0..config.trials {
        xf.push((s.section(k), s.scalar()));
    }
    let describe_xf = |(x, f): &(Section, Scalar)| p.describe(vec![("X", x.render(coords)), ("f", f.render(coords))]);
    report.push(verify_cases(
        "d_* differentiates the bracket with a function",
        "d_*^{X0}[X,f]^{phi0} = [d_*^{X0}X, f]^{phi0} + [X, d_*^{X0}f]^{phi0}",
        coords,
        &xf,
        |(x, f)| {
            let fm = p.function_mv(f);
            let lhs = p.d_star(&p.bracket_phi(x, &fm)?)?;
            let r1 = p.bracket_phi(&p.d_star(x)?, &fm)?;
            let r2 = p.bracket_phi(x, &p.d_star(&fm)?)?;
            Ok(lhs - r1 - r2)
        },
        describe_xf,
    ));
    report.push(verify_cases(
        "Lie derivatives along differentials cancel on sections",
        "L_{*d^{phi0}f}^{X0} X + L_{d_*^{X0}f}^{phi0} X = 0",
        coords,
        &xf,
        |(x, f)| {
            let df = p.d_phi(&p.function_form(f))?;
            let dsf = p.d_star(&p.function_mv(f))?;
            Ok(p.lie_star(&df, x)? + p.bracket_phi(&dsf, x)?)
        },
        describe_xf,
    ));

    let mut fg: Vec<(Scalar, Scalar)> = Vec::new();
    for f in &fs {
        for g in &fs {
            fg.push((f.clone(), g.clone()));
        }
    }
    let mut s = Sampler::new(config, n, "lemmas/functions");
    for _ in 0..config.trials {
        fg.push((s.scalar(), s.scalar()));
    }
    report.push(verify_cases(
        "twisted differentials pair antisymmetrically",
        "<d_*^{X0}f, d^{phi0}g> + <d^{phi0}f, d_*^{X0}g> = 0",
        coords,
        &fg,
        |(f, g)| {
            let (dsf, dsg) = (p.d_star(&p.function_mv(f))?, p.d_star(&p.function_mv(g))?);
            let (df, dg) = (p.d_phi(&p.function_form(f))?, p.d_phi(&p.function_form(g))?);
            Ok(pair(&dg, &dsf)? + pair(&df, &dsg)?)
        },
        |(f, g)| p.describe(vec![("f", f.render(coords)), ("g", g.render(coords))]),
    ));

    // (xi, f) cases
    let mut xif: Vec<(Form, Scalar)> = Vec::new();
    for xi in p.coframes() {
        for f in &fs {
            xif.push((xi.clone(), f.clone()));
        }
    }
    let mut s = Sampler::new(config, n, "lemmas/form-function");
    for _ in 0..config.trials {
        xif.push((s.graded(k, 1), s.scalar()));
    }
    let describe_xif = |(xi, f): &(Form, Scalar)| p.describe(vec![("xi", xi.render(coords)), ("f", f.render(coords))]);
    report.push(verify_cases(
        "Lie derivatives along differentials cancel on forms",
        "L_{*d^{phi0}f}^{X0} xi + L_{d_*^{X0}f}^{phi0} xi = 0",
        coords,
        &xif,
        |(xi, f)| {
            let df = p.d_phi(&p.function_form(f))?;
            let dsf = p.d_star(&p.function_mv(f))?;
            Ok(p.bracket_star(&df, xi)? + p.lie_phi(&dsf, xi)?)
        },
        describe_xif,
    ));
    report.push(verify_cases(
        "d differentiates the dual bracket with a function",
        "d^{phi0}[xi,f]_*^{X0} = [d^{phi0}xi, f]_*^{X0} + [xi, d^{phi0}f]_*^{X0}",
        coords,
        &xif,
        |(xi, f)| {
            let ff = p.function_form(f);
            let lhs = p.d_phi(&p.bracket_star(xi, &ff)?)?;
            let r1 = p.bracket_star(&p.d_phi(xi)?, &ff)?;
            let r2 = p.bracket_star(xi, &p.d_phi(&ff)?)?;
            Ok(lhs - r1 - r2)
        },
        describe_xif,
    ));

    // (xi, X, f) cases
    let mut xixf: Vec<(Form, Section, Scalar)> = Vec::new();
    for xi in p.coframes() {
        for x in p.frames() {
            for f in &fs {
                xixf.push((xi.clone(), x.clone(), f.clone()));
            }
        }
    }
    let mut s = Sampler::new(config, n, "lemmas/mixed");
    for _ in 0..config.trials {
        xixf.push((s.graded(k, 1), s.section(k), s.scalar()));
    }
    report.push(verify_cases(
        "mixed Lie derivative identity",
        "[L_X^{phi0}, L_{*xi}^{X0}] f - L_{*L_X^{phi0} xi}^{X0} f + L_{L_{*xi}^{X0} X}^{phi0} f = L_{d_*^{X0}<xi,X>}^{phi0} f",
        coords,
        &xixf,
        |(xi, x, f)| {
            let lx = |y: &Section, g: &Scalar| p.rho_phi(y, g);
            let lxi = |e: &Form, g: &Scalar| p.rho_star_phi(e, g);
            let comm = lx(x, &lxi(xi, f)?)? - lxi(xi, &lx(x, f)?)?;
            let t2 = lxi(&p.lie_phi(x, xi)?, f)?;
            let t3 = lx(&p.lie_star(xi, x)?, f)?;
            let rhs = lx(&p.d_star(&p.function_mv(&pair(xi, x)?))?, f)?;
            Ok(comm - t2 + t3 - rhs)
        },
        |(xi, x, f)| {
            p.describe(vec![
                ("xi", xi.render(coords)),
                ("X", x.render(coords)),
                ("f", f.render(coords)),
            ])
        },
    ));

    // (xi, eta) cases
    let mut xe: Vec<(Form, Form)> = Vec::new();
    for a in p.coframes() {
        for b in p.coframes() {
            xe.push((a.clone(), b));
        }
    }
    let mut s = Sampler::new(config, n, "lemmas/forms");
    for _ in 0..config.trials {
        xe.push((s.graded(k, 1), s.graded(k, 1)));
    }
    report.push(verify_cases(
        "d is a derivation of the dual bracket",
        "d^{phi0}[xi,eta]_* = [d^{phi0}xi, eta]_*^{X0} + [xi, d^{phi0}eta]_*^{X0}",
        coords,
        &xe,
        |(xi, eta)| {
            let lhs = p.d_phi(&p.adual().bracket(&xi.to_dual_kind(), &eta.to_dual_kind())?.into_dual_kind())?;
            let r1 = p.bracket_star(&p.d_phi(xi)?, eta)?;
            let r2 = p.bracket_star(xi, &p.d_phi(eta)?)?;
            Ok(lhs - r1 - r2)
        },
        |(xi, eta)| p.describe(vec![("xi", xi.render(coords)), ("eta", eta.render(coords))]),
    ));

    let mut forms = p.coframes();
    let mut s = Sampler::new(config, n, "lemmas/observation");
    for _ in 0..config.trials {
        forms.push(s.graded(k, 1));
    }
    let x0 = p.x0_section();
    let phi0 = p.phi0.form().to_dual_kind();
    report.push(verify_cases(
        "X0 acts on forms as minus phi0",
        "L_{*phi0} xi + L_{X0} xi = 0",
        coords,
        &forms,
        |xi| Ok(p.adual().bracket(&phi0, &xi.to_dual_kind())?.into_dual_kind() + p.a().lie_derivative(&x0, xi)?),
        |xi| p.describe(vec![("xi", xi.render(coords))]),
    ));
    report
}

/// `{f,g} = <d^{phi0} f, d_*^{X0} g>`.
pub fn induced_bracket(p: &GenBialgebroidPair, f: &Scalar, g: &Scalar) -> Result<Scalar> {
    p.a().check_scalar(f)?;
    p.a().check_scalar(g)?;
    pair(&p.d_phi(&p.function_form(f))?, &p.d_star(&p.function_mv(g))?)
}

/// `X_f = -d_*^{X0} f`.
pub fn hamiltonian_section(p: &GenBialgebroidPair, f: &Scalar) -> Result<Section> {
    p.a().check_scalar(f)?;
    Ok(-p.d_star(&p.function_mv(f))?)
}

/// Bivector components `Lambda(dx_i, dx_j) = <d x_i, d_* x_j>` and
/// `E = rho_*(phi0)`, on the tangent frame of the base.
pub fn induced_tensors(p: &GenBialgebroidPair) -> Result<(Multivector, Section)> {
    let n = p.dim();
    let xs: Vec<Scalar> = (0..n).map(|i| Scalar::var(n, i).expect("coordinate")).collect();
    let mut comps = Vec::new();
    for (i, xi) in xs.iter().enumerate() {
        let dxi = p.a().differential(&p.function_form(xi))?;
        for (j, xj) in xs.iter().enumerate().skip(i + 1) {
            let dsxj = p.adual().differential(&Form::scalar(p.rank(), xj.clone()))?.into_dual_kind();
            comps.push((vec![i, j], pair(&dxi, &dsxj)?));
        }
    }
    let lambda = Multivector::from_components(n, 2, n, comps)?;
    let e = Section::vector(p.rho_star(p.phi0.form())?, n)?;
    Ok((lambda, e))
}

/// The Jacobi structure induced on the base.
pub fn induced_jacobi(p: &GenBialgebroidPair, config: &SampleConfig) -> Result<JacobiStructure> {
    let (lambda, e) = induced_tensors(p)?;
    JacobiStructure::with_config(p.a().base(), lambda, e, config)
}

/// The pair `((TM x R, (0,1)), (T*M x R, (-E, 0)))` of a Jacobi structure.
pub fn jacobi_pair(j: &JacobiStructure) -> Result<GenBialgebroidPair> {
    let (_, phi0) = extend_algebroid(j.tangent())?;
    let (_, x0) = one_jet_algebroid(j)?;
    GenBialgebroidPair::from_cocycles(phi0, x0)
}

/// Checks the differentials of the induced bracket and its Hamiltonian sections.
pub fn verify_bracket_differentials(p: &GenBialgebroidPair, config: &SampleConfig) -> CheckReport {
    let coords = p.coords();
    let n = p.dim();
    let fs = coordinate_functions(n);
    let mut cases: Vec<(Scalar, Scalar)> = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        for g in fs.iter().skip(i) {
            cases.push((f.clone(), g.clone()));
        }
    }
    let mut s = Sampler::new(config, n, "induced/pairs");
    for _ in 0..config.trials {
        cases.push((s.scalar(), s.scalar()));
    }
    let describe = |(f, g): &(Scalar, Scalar)| p.describe(vec![("f", f.render(coords)), ("g", g.render(coords))]);
    let mut report = CheckReport::new();
    report.push(verify_cases(
        "induced bracket is antisymmetric",
        "{f,g} + {g,f} = 0",
        coords,
        &cases,
        |(f, g)| Ok(induced_bracket(p, f, g)? + induced_bracket(p, g, f)?),
        describe,
    ));
    report.push(verify_cases(
        "d of the induced bracket",
        "d^{phi0}{f,g} = [d^{phi0}f, d^{phi0}g]_*",
        coords,
        &cases,
        |(f, g)| {
            let lhs = p.d_phi(&p.function_form(&induced_bracket(p, f, g)?))?;
            let df = p.d_phi(&p.function_form(f))?;
            let dg = p.d_phi(&p.function_form(g))?;
            Ok(lhs - p.adual().bracket(&df.to_dual_kind(), &dg.to_dual_kind())?.into_dual_kind())
        },
        describe,
    ));
    report.push(verify_cases(
        "d_* of the induced bracket",
        "d_*^{X0}{f,g} = -[d_*^{X0}f, d_*^{X0}g]",
        coords,
        &cases,
        |(f, g)| {
            let lhs = p.d_star(&p.function_mv(&induced_bracket(p, f, g)?))?;
            let dsf = p.d_star(&p.function_mv(f))?;
            let dsg = p.d_star(&p.function_mv(g))?;
            Ok(lhs + p.a().bracket(&dsf, &dsg)?)
        },
        describe,
    ));
    report.push(verify_cases(
        "Hamiltonian sections generate the bracket",
        "rho^{phi0}(X_f) g = {f,g}",
        coords,
        &cases,
        |(f, g)| Ok(p.rho_phi(&hamiltonian_section(p, f)?, g)? - induced_bracket(p, f, g)?),
        describe,
    ));
    report.push(verify_cases(
        "Hamiltonian sections form a Lie algebra",
        "[X_f, X_g] = X_{f,g}",
        coords,
        &cases,
        |(f, g)| {
            let lhs = p.a().bracket(&hamiltonian_section(p, f)?, &hamiltonian_section(p, g)?)?;
            Ok(lhs - hamiltonian_section(p, &induced_bracket(p, f, g)?)?)
        },
        describe,
    ));
    let mut triples: Vec<(Scalar, Scalar, Scalar)> = Vec::new();
    for i in 0..fs.len() {
        for j in (i + 1)..fs.len() {
            for l in (j + 1)..fs.len() {
                triples.push((fs[i].clone(), fs[j].clone(), fs[l].clone()));
            }
        }
    }
    let mut s = Sampler::new(config, n, "induced/triples");
    for _ in 0..config.trials {
        triples.push((s.scalar(), s.scalar(), s.scalar()));
    }
    report.push(verify_cases(
        "induced bracket satisfies Jacobi",
        "{{f,g},h} + {{g,h},f} + {{h,f},g} = 0",
        coords,
        &triples,
        |(f, g, h)| {
            let b = |u: &Scalar, v: &Scalar| induced_bracket(p, u, v);
            Ok(b(&b(f, g)?, h)? + b(&b(g, h)?, f)? + b(&b(h, f)?, g)?)
        },
        |(f, g, h)| {
            p.describe(vec![
                ("f", f.render(coords)),
                ("g", g.render(coords)),
                ("h", h.render(coords)),
            ])
        },
    ));
    report
}

/// A bundle map `A -> B` over the identity between the first algebroids of
/// two pairs, with transpose `B* -> A*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairMorphism {
    source: GenBialgebroidPair,
    target: GenBialgebroidPair,
    /// `matrix[b][a]` is the `e_b` component of `Phi(e_a)`.
    matrix: Vec<Vec<Scalar>>,
}

impl PairMorphism {
    pub fn new(source: GenBialgebroidPair, target: GenBialgebroidPair, matrix: Vec<Vec<Scalar>>) -> Result<Self> {
        if source.a().base() != target.a().base() {
            return Err(AlgebraError::InvalidStructure(
                "morphism endpoints live over different bases".into(),
            ));
        }
        if matrix.len() != target.rank() {
            return Err(AlgebraError::RankMismatch {
                expected: target.rank(),
                found: matrix.len(),
            });
        }
        for row in &matrix {
            if row.len() != source.rank() {
                return Err(AlgebraError::RankMismatch {
                    expected: source.rank(),
                    found: row.len(),
                });
            }
            for c in row {
                source.a().check_scalar(c)?;
            }
        }
        Ok(Self { source, target, matrix })
    }

    pub fn identity(p: &GenBialgebroidPair) -> Self {
        let k = p.rank();
        let n = p.dim();
        let matrix = (0..k)
            .map(|b| (0..k).map(|a| Scalar::from_int(n, i64::from(a == b))).collect())
            .collect();
        Self {
            source: p.clone(),
            target: p.clone(),
            matrix,
        }
    }

    pub fn source(&self) -> &GenBialgebroidPair {
        &self.source
    }

    pub fn target(&self) -> &GenBialgebroidPair {
        &self.target
    }

    pub fn matrix(&self) -> &[Vec<Scalar>] {
        &self.matrix
    }

    /// `Phi(X)`.
    pub fn apply(&self, x: &Section) -> Result<Section> {
        self.source.a().check_section(x)?;
        let c = x.vector_components();
        let comps = self
            .matrix
            .iter()
            .map(|row| row.iter().zip(&c).fold(Scalar::zero(self.source.dim()), |acc, (m, v)| acc + m * v))
            .collect();
        Section::vector(comps, self.source.dim())
    }

    /// `Phi*(psi)` for a section `psi` of `B*`.
    pub fn apply_dual(&self, psi: &Form) -> Result<Form> {
        self.target.a().check_graded(psi)?;
        let c = psi.vector_components();
        let comps = (0..self.source.rank())
            .map(|a| {
                self.matrix
                    .iter()
                    .zip(&c)
                    .fold(Scalar::zero(self.source.dim()), |acc, (row, v)| acc + &row[a] * v)
            })
            .collect();
        Form::vector(comps, self.source.dim())
    }
}

/// `Phi_A(X) = (rho(X), phi0(X))` into the 1-jet pair of the induced structure.
pub fn canonical_morphism(p: &GenBialgebroidPair, config: &SampleConfig) -> Result<PairMorphism> {
    let j = induced_jacobi(p, config)?;
    let target = jacobi_pair(&j)?;
    let n = p.dim();
    let k = p.rank();
    let mut matrix = vec![Vec::with_capacity(k); n + 1];
    for a in 0..k {
        let v = p.a().anchor_vector(&p.a().frame(a))?;
        for (row, c) in matrix.iter_mut().zip(v) {
            row.push(c);
        }
        matrix[n].push(p.phi0.form().coeff(a));
    }
    PairMorphism::new(p.clone(), target, matrix)
}

/// Checks that a bundle map is a morphism of generalized Lie bialgebroids
/// and that the induced brackets of its endpoints agree.
pub fn is_morphism(m: &PairMorphism, config: &SampleConfig) -> CheckReport {
    let (src, tgt) = (&m.source, &m.target);
    let coords = src.coords();
    let n = src.dim();
    let mut report = CheckReport::new();

    let xs = sections(src, config, "morphism/sections");
    report.push(verify_cases(
        "Phi intertwines the anchors",
        "rho_B(Phi X) = rho_A(X)",
        coords,
        &xs,
        |x| {
            let a = tgt.a().anchor_vector(&m.apply(x)?)?;
            let b = src.a().anchor_vector(x)?;
            Ok(a.into_iter().zip(b).map(|(u, v)| u - v).collect::<Vec<_>>())
        },
        |x| src.describe(vec![("X", x.render(coords))]),
    ));
    report.push(verify_cases(
        "Phi preserves brackets",
        "Phi[X,Y] = [Phi X, Phi Y]",
        coords,
        &section_pairs(src, config, "morphism/brackets"),
        |(x, y)| Ok(m.apply(&src.a().bracket(x, y)?)? - tgt.a().bracket(&m.apply(x)?, &m.apply(y)?)?),
        |(x, y)| src.describe(vec![("X", x.render(coords)), ("Y", y.render(coords))]),
    ));

    let kb = tgt.rank();
    let mut psis: Vec<Form> = (0..kb).map(|b| tgt.a().coframe(b)).collect();
    let mut s = Sampler::new(config, n, "morphism/dual-sections");
    for _ in 0..config.trials {
        psis.push(s.graded(kb, 1));
    }
    report.push(verify_cases(
        "Phi* intertwines the anchors",
        "rho_{A*}(Phi* psi) = rho_{B*}(psi)",
        coords,
        &psis,
        |psi| {
            let a = src.rho_star(&m.apply_dual(psi)?)?;
            let b = tgt.rho_star(psi)?;
            Ok(a.into_iter().zip(b).map(|(u, v)| u - v).collect::<Vec<_>>())
        },
        |psi| src.describe(vec![("psi", psi.render(coords))]),
    ));
    let mut pairs: Vec<(Form, Form)> = Vec::new();
    for a in 0..kb {
        for b in 0..kb {
            pairs.push((tgt.a().coframe(a), tgt.a().coframe(b)));
        }
    }
    let mut s = Sampler::new(config, n, "morphism/dual-brackets");
    for _ in 0..config.trials {
        pairs.push((s.graded(kb, 1), s.graded(kb, 1)));
    }
    report.push(verify_cases(
        "Phi* preserves brackets",
        "Phi*[psi,chi]_{B*} = [Phi* psi, Phi* chi]_{A*}",
        coords,
        &pairs,
        |(u, v)| {
            let lhs = m.apply_dual(&tgt.adual().bracket(&u.to_dual_kind(), &v.to_dual_kind())?.into_dual_kind())?;
            let rhs = src
                .adual()
                .bracket(&m.apply_dual(u)?.to_dual_kind(), &m.apply_dual(v)?.to_dual_kind())?
                .into_dual_kind();
            Ok(lhs - rhs)
        },
        |(u, v)| src.describe(vec![("psi", u.render(coords)), ("chi", v.render(coords))]),
    ));

    report.push(verify_cases(
        "Phi maps X0 to Y0",
        "Phi(X0) = Y0",
        coords,
        &[()],
        |_| Ok(m.apply(&src.x0_section())? - tgt.x0_section()),
        |_| src.describe(vec![("X0", src.x0_section().render(coords))]),
    ));
    report.push(verify_cases(
        "Phi* maps psi0 to phi0",
        "Phi*(psi0) = phi0",
        coords,
        &[()],
        |_| Ok(&m.apply_dual(tgt.phi0.form())? - src.phi0.form()),
        |_| src.describe(vec![("psi0", tgt.phi0.form().render(coords))]),
    ));

    let fs = functions(src, config, "morphism/functions");
    let mut fg = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        fg.push((f.clone(), fs[(i + 1) % fs.len()].clone()));
        fg.push((f.clone(), fs[(i * 7 + 3) % fs.len()].clone()));
    }
    report.push(verify_cases(
        "induced brackets agree",
        "{f,g}_source = {f,g}_target",
        coords,
        &fg,
        |(f, g)| Ok(induced_bracket(src, f, g)? - induced_bracket(tgt, f, g)?),
        |(f, g)| src.describe(vec![("f", f.render(coords)), ("g", g.render(coords))]),
    ));
    report
}
