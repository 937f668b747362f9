//! Syntax tree of a structure file. Positions point at the first token of
//! each node and are ignored by equality.

use algebroid::Rational;

use crate::error::Pos;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ident {
    pub name: String,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nat {
    pub value: usize,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprKind {
    Num(Rational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// A bracketed, comma-separated list of expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExprList {
    pub items: Vec<Expr>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: Vec<ExprList>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivectorEntry {
    pub i: Nat,
    pub j: Nat,
    pub value: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivectorBody {
    pub entries: Vec<BivectorEntry>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifoldDecl {
    pub dim: Nat,
    pub coords: Vec<Ident>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketDecl {
    pub i: Nat,
    pub j: Nat,
    pub value: ExprList,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebroidDecl {
    pub name: Ident,
    pub rank: Nat,
    pub frame: Vec<Ident>,
    pub anchor: Matrix,
    pub brackets: Vec<BracketDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleDecl {
    pub name: Ident,
    pub on: Ident,
    pub value: ExprList,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BivectorDecl {
    pub name: Ident,
    pub on: Ident,
    pub body: BivectorBody,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiDecl {
    pub name: Ident,
    pub lambda: BivectorBody,
    pub e: ExprList,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDecl {
    pub name: Ident,
    pub a: Ident,
    pub phi0: Ident,
    pub adual: Ident,
    pub x0: Ident,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismDecl {
    pub name: Ident,
    pub source: Ident,
    pub target: Ident,
    pub matrix: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Manifold(ManifoldDecl),
    Algebroid(AlgebroidDecl),
    Cocycle(CocycleDecl),
    Bivector(BivectorDecl),
    Jacobi(JacobiDecl),
    Pair(PairDecl),
    Morphism(MorphismDecl),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StructureFile {
    pub decls: Vec<Decl>,
}

impl Ident {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), pos: Pos::default() }
    }
}

impl Nat {
    pub fn new(value: usize) -> Self {
        Self { value, pos: Pos::default() }
    }
}

impl Expr {
    pub fn new(kind: ExprKind, pos: Pos) -> Self {
        Self { kind, pos }
    }
}
