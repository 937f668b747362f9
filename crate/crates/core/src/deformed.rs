//! Calculus twisted by a 1-cocycle `phi`.
//!
//! A [`Cocycle`] is a closed 1-form validated against the algebroid that owns
//! it. Its [`DeformedCalculus`] view provides the twisted anchor
//! `rho^phi(X) f = rho(X) f + phi(X) f`, the differential
//! `d^phi a = d a + phi ^ a`, the Lie derivatives and the twisted Schouten
//! bracket
//!
//! ```text
//! [P,Q]^phi = [P,Q] + (r-1) P ^ i_phi Q - (-1)^(r-1) (r'-1) (i_phi P) ^ Q
//! ```

use crate::algebroid::Algebroid;
use crate::check::{verify_cases, CheckEntry, CheckReport};
use crate::error::{AlgebraError, Result};
use crate::graded::{contract, pair, Form, Graded, Kind, Multivector, Section};
use crate::sample::{SampleConfig, Sampler};
use crate::scalar::{rational, Scalar};

/// A closed 1-form of an algebroid, carrying its owner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    owner: Algebroid,
    form: Form,
}

impl Cocycle {
    /// Validates `d phi = 0` exactly.
    pub fn new(owner: &Algebroid, form: Form) -> Result<Self> {
        owner.check_graded(&form)?;
        if form.degree() != 1 {
            return Err(AlgebraError::DegreeMismatch {
                expected: 1,
                found: form.degree(),
            });
        }
        let report = closedness(owner, &form);
        if !report.passed() {
            let mut full = CheckReport::new();
            full.push(report);
            return Err(AlgebraError::Validation {
                what: "cocycle".into(),
                report: Box::new(full),
            });
        }
        Ok(Self {
            owner: owner.clone(),
            form,
        })
    }

    pub fn zero(owner: &Algebroid) -> Self {
        Self {
            owner: owner.clone(),
            form: Form::zero(owner.rank(), 1, owner.dim()),
        }
    }

    pub fn owner(&self) -> &Algebroid {
        &self.owner
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn calculus(&self) -> DeformedCalculus<'_> {
        DeformedCalculus {
            alg: &self.owner,
            phi: &self.form,
        }
    }
}

fn closedness(alg: &Algebroid, phi: &Form) -> CheckEntry {
    let coords = alg.coords();
    verify_cases(
        "cocycle is closed",
        "d phi = 0",
        coords,
        &[()],
        |_| alg.differential(phi),
        |_| vec![("phi".into(), phi.render(coords))],
    )
}

/// Checks that `phi` is a 1-cocycle: `d phi = 0` exactly, cross-checked by
/// `phi([X,Y]) = rho(X) phi(Y) - rho(Y) phi(X)` on frame pairs and samples.
pub fn is_cocycle(alg: &Algebroid, phi: &Form, config: &SampleConfig) -> Result<CheckReport> {
    alg.check_graded(phi)?;
    if phi.degree() != 1 {
        return Err(AlgebraError::DegreeMismatch {
            expected: 1,
            found: phi.degree(),
        });
    }
    let mut report = CheckReport::new();
    report.push(closedness(alg, phi));
    let k = alg.rank();
    let mut cases = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            cases.push((alg.frame(i), alg.frame(j)));
        }
    }
    let mut s = Sampler::new(config, alg.dim(), "cocycle/identity");
    for _ in 0..config.trials {
        cases.push((s.section(k), s.section(k)));
    }
    let coords = alg.coords();
    report.push(verify_cases(
        "cocycle identity",
        "phi([X,Y]) = rho(X) phi(Y) - rho(Y) phi(X)",
        coords,
        &cases,
        |(x, y)| {
            let lhs = pair(phi, &alg.bracket(x, y)?)?;
            let a = alg.anchor_apply(x, &pair(phi, y)?)?;
            let b = alg.anchor_apply(y, &pair(phi, x)?)?;
            Ok(lhs - a + b)
        },
        |(x, y)| vec![("X".into(), x.render(coords)), ("Y".into(), y.render(coords))],
    ));
    Ok(report)
}

fn negate_if<K: Kind>(g: Graded<K>, negative: bool) -> Graded<K> {
    if negative {
        -g
    } else {
        g
    }
}

/// The calculus of an algebroid twisted by a 1-form.
#[derive(Clone, Copy, Debug)]
pub struct DeformedCalculus<'a> {
    alg: &'a Algebroid,
    phi: &'a Form,
}

impl<'a> DeformedCalculus<'a> {
    /// Twisted calculus for an arbitrary 1-form, closed or not.
    ///
    /// Only [`Cocycle::calculus`] guarantees `(d^phi)^2 = 0`; this view
    /// satisfies `(d^phi)^2 a = d phi ^ a` instead.
    pub fn unvalidated(alg: &'a Algebroid, phi: &'a Form) -> Result<Self> {
        alg.check_graded(phi)?;
        if phi.degree() != 1 {
            return Err(AlgebraError::DegreeMismatch {
                expected: 1,
                found: phi.degree(),
            });
        }
        Ok(Self { alg, phi })
    }

    pub fn algebroid(&self) -> &'a Algebroid {
        self.alg
    }

    pub fn phi(&self) -> &'a Form {
        self.phi
    }

    /// `rho^phi(X) f = rho(X) f + phi(X) f`.
    pub fn anchor_apply(&self, x: &Section, f: &Scalar) -> Result<Scalar> {
        let rho = self.alg.anchor_apply(x, f)?;
        Ok(rho + pair(self.phi, x)? * f)
    }

    /// `d^phi a = d a + phi ^ a`.
    pub fn differential(&self, alpha: &Form) -> Result<Form> {
        let d = self.alg.differential(alpha)?;
        Ok(d + self.phi.wedge(alpha)?)
    }

    /// `L^phi_X a = d^phi(i_X a) + i_X(d^phi a)`.
    pub fn lie_derivative_form(&self, x: &Section, alpha: &Form) -> Result<Form> {
        self.alg.check_section(x)?;
        let mut out = contract(x, &self.differential(alpha)?)?;
        if alpha.degree() > 0 {
            out += &self.differential(&contract(x, alpha)?)?;
        }
        Ok(out)
    }

    /// Twisted Schouten bracket, from the closed formula over [`Algebroid::schouten`].
    pub fn schouten(&self, p: &Multivector, q: &Multivector) -> Result<Multivector> {
        let mut out = self.alg.schouten(p, q)?;
        let (r, rq) = (p.degree() as i64, q.degree() as i64);
        if r + rq == 0 {
            return Ok(out);
        }
        if rq > 0 && r != 1 {
            let t = p.wedge(&contract(self.phi, q)?)?;
            out += &t.map_coeffs(|c| c.scale(&rational(r - 1)));
        }
        if r > 0 && rq != 1 {
            // -(-1)^(r-1) (r'-1) (i_phi P) ^ Q
            let t = contract(self.phi, p)?.wedge(q)?;
            let sign = if (r - 1) % 2 == 0 { -1 } else { 1 };
            out += &t.map_coeffs(|c| c.scale(&rational(sign * (rq - 1))));
        }
        Ok(out)
    }

    /// `L^phi_X P = [X, P]^phi`.
    pub fn lie_derivative_multivector(&self, x: &Section, p: &Multivector) -> Result<Multivector> {
        self.alg.check_section(x)?;
        self.schouten(x, p)
    }

    /// `[X, f]^phi` as a scalar.
    pub fn bracket_function(&self, x: &Section, f: &Scalar) -> Result<Scalar> {
        let v = self.schouten(x, &self.alg.function(f.clone()))?;
        Ok(v.as_scalar().expect("degree 0"))
    }
}

/// Frame elements of a given degree followed by seeded samples.
pub(crate) fn frame_and_samples<K: Kind>(
    alg: &Algebroid,
    degree: usize,
    sampler: &mut Sampler,
    trials: usize,
) -> Vec<Graded<K>> {
    let mut out: Vec<Graded<K>> = crate::graded::blades(alg.rank(), degree)
        .into_iter()
        .map(|b| {
            Graded::basis(alg.rank(), alg.dim(), &b.indices().collect::<Vec<_>>())
                .expect("blade in range")
        })
        .collect();
    for _ in 0..trials {
        out.push(sampler.graded(alg.rank(), degree));
    }
    out
}

fn render_inputs(coords: &[String], items: Vec<(&str, String)>) -> Vec<(String, String)> {
    let _ = coords;
    items.into_iter().map(|(n, v)| (n.to_string(), v)).collect()
}

/// Checks the four Leibniz-type properties of the twisted calculus on forms
/// and the four defining properties of the twisted Schouten bracket, on frame
/// elements and seeded samples of degree up to `min(rank, 3)`.
pub fn verify_deformed_properties(calc: &DeformedCalculus<'_>, config: &SampleConfig) -> CheckReport {
    let alg = calc.alg;
    let coords = alg.coords();
    let k = alg.rank();
    let n = alg.dim();
    let max_deg = k.min(3);
    let phi = calc.phi;
    let mut report = CheckReport::new();

    // Pairs of forms (alpha, beta)
    {
        let mut s = Sampler::new(config, n, "deformed/forms-wedge");
        let mut cases: Vec<(Form, Form)> = Vec::new();
        for i in 0..k {
            for j in 0..k {
                cases.push((alg.coframe(i), alg.coframe(j)));
            }
        }
        for _ in 0..config.trials {
            let a = s.degree(max_deg);
            let b = s.degree(max_deg - a.min(max_deg));
            cases.push((s.graded(k, a), s.graded(k, b)));
        }
        report.push(verify_cases(
            "twisted differential of a wedge",
            "d^phi(a ^ b) = d^phi a ^ b + (-1)^|a| a ^ d^phi b - phi ^ a ^ b",
            coords,
            &cases,
            |(a, b)| {
                let lhs = calc.differential(&a.wedge(b)?)?;
                let t1 = calc.differential(a)?.wedge(b)?;
                let t2 = negate_if(a.wedge(&calc.differential(b)?)?, a.degree() % 2 == 1);
                let t3 = phi.wedge(a)?.wedge(b)?;
                Ok(lhs - t1 - t2 + t3)
            },
            |(a, b)| render_inputs(coords, vec![("alpha", a.render(coords)), ("beta", b.render(coords))]),
        ));
    }

    // (X, f, alpha)
    let mut s = Sampler::new(config, n, "deformed/lie-forms");
    let mut xfa: Vec<(Section, Scalar, Form)> = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let f = if n > 0 { Scalar::var(n, (i + j) % n).expect("coordinate") } else { Scalar::one(0) };
            xfa.push((alg.frame(i), f, alg.coframe(j)));
        }
    }
    for _ in 0..config.trials {
        let d = s.degree(max_deg);
        xfa.push((s.section(k), s.scalar(), s.graded(k, d)));
    }
    let describe_xfa = |(x, f, a): &(Section, Scalar, Form)| {
        render_inputs(
            coords,
            vec![("X", x.render(coords)), ("f", f.render(coords)), ("alpha", a.render(coords))],
        )
    };
    report.push(verify_cases(
        "twisted Lie derivative of f alpha",
        "L^phi_X (f a) = f L^phi_X a + (rho(X) f) a",
        coords,
        &xfa,
        |(x, f, a)| {
            let lhs = calc.lie_derivative_form(x, &a.scale(f))?;
            let rhs = calc.lie_derivative_form(x, a)?.scale(f) + a.scale(&alg.anchor_apply(x, f)?);
            Ok(lhs - rhs)
        },
        describe_xfa,
    ));
    report.push(verify_cases(
        "twisted Lie derivative along f X",
        "L^phi_{fX} a = f L^phi_X a + df ^ i_X a",
        coords,
        &xfa,
        |(x, f, a)| {
            let lhs = calc.lie_derivative_form(&x.scale(f), a)?;
            let df = alg.differential(&Form::scalar(k, f.clone()))?;
            let mut rhs = calc.lie_derivative_form(x, a)?.scale(f);
            if a.degree() > 0 {
                rhs += &df.wedge(&contract(x, a)?)?;
            }
            Ok(lhs - rhs)
        },
        describe_xfa,
    ));

    // (X, alpha, beta)
    {
        let mut s = Sampler::new(config, n, "deformed/lie-wedge");
        let mut cases: Vec<(Section, Form, Form)> = Vec::new();
        for i in 0..k {
            for j in 0..k {
                cases.push((alg.frame(i), alg.coframe(j), alg.coframe((i + j + 1) % k)));
            }
        }
        for _ in 0..config.trials {
            let a = s.degree(max_deg);
            let b = s.degree(max_deg - a.min(max_deg));
            cases.push((s.section(k), s.graded(k, a), s.graded(k, b)));
        }
        report.push(verify_cases(
            "twisted Lie derivative of a wedge",
            "L^phi_X(a ^ b) = L^phi_X a ^ b + a ^ L^phi_X b - phi(X) a ^ b",
            coords,
            &cases,
            |(x, a, b)| {
                let lhs = calc.lie_derivative_form(x, &a.wedge(b)?)?;
                let t1 = calc.lie_derivative_form(x, a)?.wedge(b)?;
                let t2 = a.wedge(&calc.lie_derivative_form(x, b)?)?;
                let t3 = a.wedge(b)?.scale(&pair(phi, x)?);
                Ok(lhs - t1 - t2 + t3)
            },
            |(x, a, b)| {
                render_inputs(
                    coords,
                    vec![("X", x.render(coords)), ("alpha", a.render(coords)), ("beta", b.render(coords))],
                )
            },
        ));
    }

    // Schouten properties
    {
        let mut s = Sampler::new(config, n, "deformed/schouten-function");
        let mut cases: Vec<(Section, Scalar)> = Vec::new();
        for i in 0..k {
            for c in 0..n {
                cases.push((alg.frame(i), Scalar::var(n, c).expect("coordinate")));
            }
            cases.push((alg.frame(i), Scalar::one(n)));
        }
        for _ in 0..config.trials {
            cases.push((s.section(k), s.scalar()));
        }
        report.push(verify_cases(
            "twisted bracket with a function",
            "[X, f]^phi = rho^phi(X) f",
            coords,
            &cases,
            |(x, f)| Ok(calc.bracket_function(x, f)? - calc.anchor_apply(x, f)?),
            |(x, f)| render_inputs(coords, vec![("X", x.render(coords)), ("f", f.render(coords))]),
        ));
    }
    {
        let mut s = Sampler::new(config, n, "deformed/schouten-sections");
        let mut cases: Vec<(Section, Section)> = Vec::new();
        for i in 0..k {
            for j in 0..k {
                cases.push((alg.frame(i), alg.frame(j)));
            }
        }
        for _ in 0..config.trials {
            cases.push((s.section(k), s.section(k)));
        }
        report.push(verify_cases(
            "twisted bracket of sections",
            "[X, Y]^phi = [X, Y]",
            coords,
            &cases,
            |(x, y)| Ok(calc.schouten(x, y)? - alg.bracket(x, y)?),
            |(x, y)| render_inputs(coords, vec![("X", x.render(coords)), ("Y", y.render(coords))]),
        ));
    }
    let max_mv = k.min(2);
    {
        let mut s = Sampler::new(config, n, "deformed/schouten-antisymmetry");
        let mut cases: Vec<(Multivector, Multivector)> = Vec::new();
        for d in 0..=max_mv {
            for e in 0..=max_mv {
                for p in frame_and_samples::<crate::graded::Vectors>(alg, d, &mut s, 0).into_iter().take(2) {
                    for q in frame_and_samples::<crate::graded::Vectors>(alg, e, &mut s, 0).into_iter().rev().take(2) {
                        cases.push((p.clone(), q));
                    }
                }
            }
        }
        for _ in 0..config.trials {
            let a = s.degree(max_mv);
            let b = s.degree(max_mv);
            cases.push((s.graded(k, a), s.graded(k, b)));
        }
        report.push(verify_cases(
            "twisted bracket graded antisymmetry",
            "[P, Q]^phi = -(-1)^((r-1)(r'-1)) [Q, P]^phi",
            coords,
            &cases,
            |(p, q)| {
                let lhs = calc.schouten(p, q)?;
                let rp = p.degree() + 1;
                let rq = q.degree() + 1;
                let rhs = negate_if(calc.schouten(q, p)?, (rp * rq) % 2 == 0);
                Ok(lhs - rhs)
            },
            |(p, q)| render_inputs(coords, vec![("P", p.render(coords)), ("Q", q.render(coords))]),
        ));
    }
    {
        let mut s = Sampler::new(config, n, "deformed/schouten-leibniz");
        let mut cases: Vec<(Multivector, Multivector, Multivector)> = Vec::new();
        for i in 0..k {
            for j in 0..k {
                let f = if n > 0 { Scalar::var(n, j % n).expect("coordinate") } else { Scalar::one(0) };
                cases.push((alg.frame(i), alg.function(f), alg.frame(j)));
                cases.push((alg.frame(i), alg.frame(j), alg.frame((i + 1) % k)));
            }
        }
        for _ in 0..config.trials {
            let a = s.degree(max_mv);
            let b = s.degree(max_mv);
            let c = s.degree(max_mv);
            cases.push((s.graded(k, a), s.graded(k, b), s.graded(k, c)));
        }
        report.push(verify_cases(
            "twisted bracket Leibniz rule",
            "[P, Q ^ R]^phi = [P, Q]^phi ^ R + (-1)^((r-1)q) Q ^ [P, R]^phi - (-1)^(r-1) (i_phi P) ^ Q ^ R",
            coords,
            &cases,
            |(p, q, r)| lie_leibniz_residual(calc, p, q, r),
            |(p, q, r)| {
                render_inputs(
                    coords,
                    vec![("P", p.render(coords)), ("Q", q.render(coords)), ("R", r.render(coords))],
                )
            },
        ));
    }
    report
}

fn lie_leibniz_residual(
    calc: &DeformedCalculus<'_>,
    p: &Multivector,
    q: &Multivector,
    r: &Multivector,
) -> Result<Multivector> {
    // The bracket of two functions is a zero of degree 0 standing in for
    // degree -1; realign such terms to the expected degree.
    let d = (p.degree() + q.degree() + r.degree()).max(1) - 1;
    let align = |g: Multivector| {
        if g.is_zero() && g.degree() != d {
            Multivector::zero(g.rank(), d, g.nvars())
        } else {
            g
        }
    };
    let lhs = align(calc.schouten(p, &q.wedge(r)?)?);
    let t1 = align(calc.schouten(p, q)?.wedge(r)?);
    let negative = ((p.degree() + 1) * q.degree()) % 2 == 1;
    let t2 = align(negate_if(q.wedge(&calc.schouten(p, r)?)?, negative));
    let mut out = lhs - t1 - t2;
    if p.degree() > 0 {
        // the cocycle term carries (-1)^(r-1); without it the rule fails for even r
        let t = contract(calc.phi, p)?.wedge(q)?.wedge(r)?;
        out += &negate_if(t, p.degree().is_multiple_of(2));
    }
    Ok(out)
}
