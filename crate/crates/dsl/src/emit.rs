//! Structure-file declarations for computed objects.

use algebroid::{Algebroid, BasePatch, Form, GenBialgebroidPair, Multivector, Scalar, Section};

use crate::ast::*;
use crate::error::Pos;
use crate::parser::parse_expr;

pub fn expr(s: &Scalar, coords: &[String]) -> Expr {
    parse_expr(&s.render(coords)).expect("rendered polynomials parse")
}

fn list(v: &[Scalar], coords: &[String]) -> ExprList {
    ExprList { items: v.iter().map(|s| expr(s, coords)).collect(), pos: Pos::default() }
}

fn matrix(rows: &[Vec<Scalar>], coords: &[String]) -> Matrix {
    Matrix { rows: rows.iter().map(|r| list(r, coords)).collect(), pos: Pos::default() }
}

fn idents<'a>(names: impl IntoIterator<Item = &'a String>) -> Vec<Ident> {
    names.into_iter().map(Ident::new).collect()
}

pub fn manifold(base: &BasePatch) -> Decl {
    Decl::Manifold(ManifoldDecl { dim: Nat::new(base.dim()), coords: idents(base.coords()), pos: Pos::default() })
}

pub fn algebroid(name: &str, alg: &Algebroid) -> Decl {
    let coords = alg.coords();
    let k = alg.rank();
    let mut brackets = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            let c = alg.structure_constant(i, j);
            if !c.is_zero() {
                brackets.push(BracketDecl {
                    i: Nat::new(i + 1),
                    j: Nat::new(j + 1),
                    value: list(&c.vector_components(), coords),
                });
            }
        }
    }
    Decl::Algebroid(AlgebroidDecl {
        name: Ident::new(name),
        rank: Nat::new(k),
        frame: idents(alg.frame_names()),
        anchor: matrix(alg.anchor_matrix(), coords),
        brackets,
    })
}

pub fn cocycle(name: &str, on: &str, form: &Form, coords: &[String]) -> Decl {
    let comps: Vec<Scalar> = (0..form.rank()).map(|i| form.coeff(i)).collect();
    Decl::Cocycle(CocycleDecl { name: Ident::new(name), on: Ident::new(on), value: list(&comps, coords) })
}

pub fn bivector_body(p: &Multivector, coords: &[String]) -> BivectorBody {
    let entries = p
        .terms()
        .map(|(b, c)| {
            let idx: Vec<usize> = b.indices().collect();
            BivectorEntry { i: Nat::new(idx[0] + 1), j: Nat::new(idx[1] + 1), value: expr(c, coords) }
        })
        .collect();
    BivectorBody { entries, pos: Pos::default() }
}

pub fn jacobi(name: &str, lambda: &Multivector, e: &Section, coords: &[String]) -> Decl {
    Decl::Jacobi(JacobiDecl {
        name: Ident::new(name),
        lambda: bivector_body(lambda, coords),
        e: list(&e.vector_components(), coords),
    })
}

pub fn morphism(name: &str, source: &str, target: &str, m: &[Vec<Scalar>], coords: &[String]) -> Decl {
    Decl::Morphism(MorphismDecl {
        name: Ident::new(name),
        source: Ident::new(source),
        target: Ident::new(target),
        matrix: matrix(m, coords),
    })
}

/// Names given to the parts of an emitted pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairNames {
    pub pair: String,
    pub a: String,
    pub phi0: String,
    pub adual: String,
    pub x0: String,
}

impl PairNames {
    pub fn of_jacobi(name: &str) -> Self {
        Self {
            pair: format!("{name}_pair"),
            a: format!("{name}_ext"),
            phi0: format!("{name}_phi0"),
            adual: format!("{name}_jet"),
            x0: format!("{name}_X0"),
        }
    }

    pub fn dual(&self) -> Self {
        Self {
            pair: format!("{}_dual", self.pair),
            a: self.adual.clone(),
            phi0: self.x0.clone(),
            adual: self.a.clone(),
            x0: self.phi0.clone(),
        }
    }
}

/// A self-contained file declaring both algebroids, both cocycles and the pair.
pub fn pair_file(p: &GenBialgebroidPair, names: &PairNames) -> StructureFile {
    let coords = p.coords();
    let decls = vec![
        manifold(p.a().base()),
        algebroid(&names.a, p.a()),
        algebroid(&names.adual, p.adual()),
        cocycle(&names.phi0, &names.a, p.phi0().form(), coords),
        cocycle(&names.x0, &names.adual, p.x0().form(), coords),
        Decl::Pair(PairDecl {
            name: Ident::new(&names.pair),
            a: Ident::new(&names.a),
            phi0: Ident::new(&names.phi0),
            adual: Ident::new(&names.adual),
            x0: Ident::new(&names.x0),
        }),
    ];
    StructureFile { decls }
}
