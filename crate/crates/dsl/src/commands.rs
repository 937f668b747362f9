//! The verification commands. Each produces a [`Report`]; the exit code is 0
//! when every check passes, 1 when one fails and 2 when the input cannot be
//! parsed or resolved or the command arguments are invalid.

use algebroid::bialgebroid::{
    canonical_morphism, check_compatibility, induced_tensors, is_morphism, jacobi_pair,
    verify_bracket_differentials, verify_duality_lemmas,
};
use algebroid::check::verify_cases;
use algebroid::deformed::is_cocycle;
use algebroid::jacobi::check_jacobi_structure;
use algebroid::triangular::{build_dual, check_maurer_cartan, verify_triangular};
use algebroid::{
    AlgebraError, Algebroid, CheckEntry, CheckReport, Cocycle, GenBialgebroidPair, JacobiStructure,
    PairMorphism, SampleConfig, TriangularDatum,
};

use crate::ast::StructureFile;
use crate::emit::{self, PairNames};
use crate::error::{DslError, Result};
use crate::model::{resolve, Item, Model};
use crate::parser::parse;
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    CheckPair(String),
    Dualize(String),
    Induce(String),
    Triangular { algebroid: String, cocycle: String, bivector: String },
    Jacobi(String),
    Morphism(String),
}

impl Command {
    pub fn label(&self) -> String {
        match self {
            Command::Validate => "validate".into(),
            Command::CheckPair(n) => format!("check-pair {n}"),
            Command::Dualize(n) => format!("dualize {n}"),
            Command::Induce(n) => format!("induce {n}"),
            Command::Triangular { algebroid, cocycle, bivector } => {
                format!("triangular {algebroid} {cocycle} {bivector}")
            }
            Command::Jacobi(n) => format!("jacobi {n}"),
            Command::Morphism(n) => format!("morphism {n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

/// Parses `source` and runs `cmd` on it.
pub fn run(cmd: &Command, source: &str, config: &SampleConfig) -> Outcome {
    let label = cmd.label();
    let result = parse(source).and_then(|f| resolve(&f)).and_then(|m| execute(cmd, &m, config));
    match result {
        Ok((checks, output)) => {
            let report = Report::new(label, config.seed, &checks, output);
            let exit_code = if report.passed() { 0 } else { 1 };
            Outcome { report, exit_code }
        }
        Err(e) => Outcome { report: Report::failed(label, config.seed, &e), exit_code: 2 },
    }
}

type Run = (CheckReport, Option<String>);

fn algebra(e: AlgebraError) -> DslError {
    DslError::command(e.to_string())
}

/// Turns a failed validation into report entries and any other error into a
/// command error.
fn validated<T>(report: &mut CheckReport, r: algebroid::Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(AlgebraError::Validation { report: inner, .. }) => {
            report.extend(*inner);
            Ok(None)
        }
        Err(e) => Err(algebra(e)),
    }
}

pub fn execute(cmd: &Command, model: &Model, config: &SampleConfig) -> Result<Run> {
    match cmd {
        Command::Validate => validate(model, config),
        Command::CheckPair(name) => {
            let mut report = CheckReport::new();
            if let Some((p, _)) = build_pair(model, name, config, &mut report)? {
                report.extend(check_compatibility(&p, config));
                report.extend(verify_duality_lemmas(&p, config));
                report.extend(verify_bracket_differentials(&p, config));
            }
            Ok((report, None))
        }
        Command::Dualize(name) => dualize(model, name, config),
        Command::Induce(name) => induce(model, name, config),
        Command::Triangular { algebroid, cocycle, bivector } => {
            triangular(model, algebroid, cocycle, bivector, config)
        }
        Command::Jacobi(name) => jacobi(model, name, config),
        Command::Morphism(name) => morphism(model, name, config),
    }
}

fn validate(model: &Model, config: &SampleConfig) -> Result<Run> {
    let mut report = CheckReport::new();
    for item in &model.items {
        match item {
            Item::Algebroid { name, alg } => report.extend_prefixed(&format!("{name}: "), alg.check_axioms(config)),
            Item::Cocycle { name, on, form } => {
                let alg = model.algebroid(on).expect("resolved");
                report.extend_prefixed(&format!("{name}: "), is_cocycle(alg, form, config).map_err(algebra)?);
            }
            Item::Jacobi { name, lambda, e } => {
                let r = check_jacobi_structure(&model.base, lambda, e, config).map_err(algebra)?;
                report.extend_prefixed(&format!("{name}: "), r);
            }
            Item::Bivector { .. } | Item::Pair { .. } | Item::Morphism { .. } => {}
        }
    }
    Ok((report, None))
}

fn cocycle_of<'m>(model: &'m Model, name: &str) -> &'m algebroid::Form {
    match model.get(name) {
        Some(Item::Cocycle { form, .. }) => form,
        _ => unreachable!("resolved cocycle"),
    }
}

fn jacobi_structure(
    model: &Model,
    name: &str,
    config: &SampleConfig,
    report: &mut CheckReport,
) -> Result<Option<JacobiStructure>> {
    let Some(Item::Jacobi { lambda, e, .. }) = model.get(name) else {
        return Err(wrong_kind(model, name, "a Jacobi structure"));
    };
    let checks = check_jacobi_structure(&model.base, lambda, e, config).map_err(algebra)?;
    let ok = checks.passed();
    report.extend_prefixed(&format!("{name}: "), checks);
    if !ok {
        return Ok(None);
    }
    let j = JacobiStructure::with_config(&model.base, lambda.clone(), e.clone(), config);
    validated(report, j)
}

fn wrong_kind(model: &Model, name: &str, expected: &str) -> DslError {
    match model.get(name) {
        Some(item) => DslError::command(format!("'{name}' is {}, expected {expected}", item.kind())),
        None => DslError::command(format!("unknown name '{name}'")),
    }
}

/// Builds the pair a name denotes, after checking the algebroid axioms and
/// both cocycles. Returns `None` when those checks fail.
fn build_pair(
    model: &Model,
    name: &str,
    config: &SampleConfig,
    report: &mut CheckReport,
) -> Result<Option<(GenBialgebroidPair, PairNames)>> {
    match model.get(name) {
        Some(Item::Pair { name, a, phi0, adual, x0 }) => {
            let (alg_a, alg_d) = (model.algebroid(a).expect("resolved"), model.algebroid(adual).expect("resolved"));
            let mut pre = CheckReport::new();
            pre.extend_prefixed(&format!("{a}: "), alg_a.check_axioms(config));
            if adual != a {
                pre.extend_prefixed(&format!("{adual}: "), alg_d.check_axioms(config));
            }
            let (f0, fx) = (cocycle_of(model, phi0), cocycle_of(model, x0));
            pre.extend_prefixed(&format!("{phi0}: "), is_cocycle(alg_a, f0, config).map_err(algebra)?);
            pre.extend_prefixed(&format!("{x0}: "), is_cocycle(alg_d, fx, config).map_err(algebra)?);
            let ok = pre.passed();
            report.extend(pre);
            if !ok {
                return Ok(None);
            }
            let c0 = Cocycle::new(alg_a, f0.clone()).map_err(algebra)?;
            let cx = Cocycle::new(alg_d, fx.clone()).map_err(algebra)?;
            let p = GenBialgebroidPair::from_cocycles(c0, cx).map_err(algebra)?;
            let names = PairNames {
                pair: name.clone(),
                a: a.clone(),
                phi0: phi0.clone(),
                adual: adual.clone(),
                x0: x0.clone(),
            };
            Ok(Some((p, names)))
        }
        Some(Item::Jacobi { .. }) => {
            let Some(j) = jacobi_structure(model, name, config, report)? else {
                return Ok(None);
            };
            let p = jacobi_pair(&j).map_err(algebra)?;
            Ok(Some((p, PairNames::of_jacobi(name))))
        }
        _ => Err(wrong_kind(model, name, "a pair or a Jacobi structure")),
    }
}

fn same_algebroid(a: &Algebroid, b: &Algebroid) -> bool {
    let k = a.rank();
    k == b.rank()
        && a.base() == b.base()
        && a.frame_names() == b.frame_names()
        && a.anchor_matrix() == b.anchor_matrix()
        && (0..k).all(|i| (0..k).all(|j| a.structure_constant(i, j) == b.structure_constant(i, j)))
}

/// Renders `p` as a file and checks that the text resolves back to `p`.
fn emit_pair(p: &GenBialgebroidPair, names: &PairNames, report: &mut CheckReport) -> String {
    let file: StructureFile = emit::pair_file(p, names);
    let text = file.to_string();
    let reparsed = parse(&text).ok().filter(|f| *f == file).and_then(|f| resolve(&f).ok());
    let same = reparsed.is_some_and(|m| {
        m.algebroid(&names.a).is_some_and(|a| same_algebroid(a, p.a()))
            && m.algebroid(&names.adual).is_some_and(|a| same_algebroid(a, p.adual()))
            && cocycle_of(&m, &names.phi0) == p.phi0().form()
            && cocycle_of(&m, &names.x0) == p.x0().form()
    });
    let (name, reference) = ("emitted file resolves to the same pair", "resolve(parse(render(pair))) = pair");
    report.push(if same {
        CheckEntry::pass(name, reference)
    } else {
        CheckEntry::fail(
            name,
            reference,
            algebroid::Counterexample { inputs: vec![("file".into(), text.clone())], residual: "mismatch".into() },
        )
    });
    text
}

fn dualize(model: &Model, name: &str, config: &SampleConfig) -> Result<Run> {
    let mut report = CheckReport::new();
    let Some((p, names)) = build_pair(model, name, config, &mut report)? else {
        return Ok((report, None));
    };
    let d = p.dualize();
    let text = emit_pair(&d, &names.dual(), &mut report);
    report.extend(check_compatibility(&d, config));
    Ok((report, Some(text)))
}

fn induce(model: &Model, name: &str, config: &SampleConfig) -> Result<Run> {
    let mut report = CheckReport::new();
    let Some((p, _)) = build_pair(model, name, config, &mut report)? else {
        return Ok((report, None));
    };
    let (lambda, e) = induced_tensors(&p).map_err(algebra)?;
    let coords = model.base.coords();
    let text = emit::jacobi(&format!("{name}_induced"), &lambda, &e, coords);
    report.extend_prefixed(
        "induced structure: ",
        check_jacobi_structure(&model.base, &lambda, &e, config).map_err(algebra)?,
    );
    if let Some(Item::Jacobi { lambda: l0, e: e0, .. }) = model.get(name) {
        report.push(verify_cases(
            "induced structure equals the declaration",
            "(Lambda_induced - Lambda, E_induced - E) = 0",
            coords,
            &[()],
            |_| Ok(vec![&lambda - l0, &e - e0]),
            |_| vec![("Lambda".into(), l0.render(coords)), ("E".into(), e0.render(coords))],
        ));
    }
    Ok((report, Some(crate::render::decl(&text) + "\n")))
}

fn triangular(model: &Model, alg: &str, cocycle: &str, bivector: &str, config: &SampleConfig) -> Result<Run> {
    let a = model.algebroid(alg).ok_or_else(|| wrong_kind(model, alg, "an algebroid"))?;
    let form = match model.get(cocycle) {
        Some(Item::Cocycle { on, form, .. }) if on == alg => form,
        Some(Item::Cocycle { on, .. }) => {
            return Err(DslError::command(format!("cocycle '{cocycle}' lives on '{on}', not on '{alg}'")));
        }
        _ => return Err(wrong_kind(model, cocycle, "a cocycle")),
    };
    let p = match model.get(bivector) {
        Some(Item::Bivector { on, p, .. }) if on == alg => p,
        Some(Item::Bivector { on, .. }) => {
            return Err(DslError::command(format!("bivector '{bivector}' lives on '{on}', not on '{alg}'")));
        }
        _ => return Err(wrong_kind(model, bivector, "a bivector")),
    };
    let mut report = CheckReport::new();
    report.extend_prefixed(&format!("{alg}: "), a.check_axioms(config));
    report.extend_prefixed(&format!("{cocycle}: "), is_cocycle(a, form, config).map_err(algebra)?);
    if !report.passed() {
        return Ok((report, None));
    }
    let phi0 = Cocycle::new(a, form.clone()).map_err(algebra)?;
    let mc = check_maurer_cartan(&phi0, p).map_err(algebra)?;
    let ok = mc.passed();
    report.extend(mc);
    if !ok {
        return Ok((report, None));
    }
    let Some(datum) = validated(&mut report, TriangularDatum::new(phi0, p.clone()))? else {
        return Ok((report, None));
    };
    let Some(pair) = validated(&mut report, build_dual(&datum, config))? else {
        return Ok((report, None));
    };
    let names = PairNames {
        pair: format!("{bivector}_pair"),
        a: alg.to_string(),
        phi0: cocycle.to_string(),
        adual: format!("{alg}_dual"),
        x0: format!("{bivector}_X0"),
    };
    let text = emit_pair(&pair, &names, &mut report);
    if let Some(r) = validated(&mut report, verify_triangular(&datum, config))? {
        report.extend(r);
    }
    Ok((report, Some(text)))
}

fn jacobi(model: &Model, name: &str, config: &SampleConfig) -> Result<Run> {
    let mut report = CheckReport::new();
    let Some(j) = jacobi_structure(model, name, config, &mut report)? else {
        return Ok((report, None));
    };
    let p = jacobi_pair(&j).map_err(algebra)?;
    let text = emit_pair(&p, &PairNames::of_jacobi(name), &mut report);
    report.extend(check_compatibility(&p, config));
    Ok((report, Some(text)))
}

fn morphism(model: &Model, name: &str, config: &SampleConfig) -> Result<Run> {
    let mut report = CheckReport::new();
    let (m, output) = match model.get(name) {
        Some(Item::Morphism { source, target, matrix, .. }) => {
            let src = build_pair(model, source, config, &mut report)?;
            let tgt = if target == source {
                src.clone()
            } else {
                build_pair(model, target, config, &mut report)?
            };
            let (Some((s, _)), Some((t, _))) = (src, tgt) else {
                return Ok((report, None));
            };
            (PairMorphism::new(s, t, matrix.clone()).map_err(algebra)?, None)
        }
        Some(Item::Pair { .. } | Item::Jacobi { .. }) => {
            let Some((p, _)) = build_pair(model, name, config, &mut report)? else {
                return Ok((report, None));
            };
            let Some(m) = validated(&mut report, canonical_morphism(&p, config))? else {
                return Ok((report, None));
            };
            let decl = emit::morphism(
                &format!("{name}_canonical"),
                name,
                &format!("{name}_induced_pair"),
                m.matrix(),
                model.base.coords(),
            );
            (m, Some(crate::render::decl(&decl) + "\n"))
        }
        _ => return Err(wrong_kind(model, name, "a morphism, a pair or a Jacobi structure")),
    };
    report.extend(is_morphism(&m, config));
    Ok((report, output))
}
