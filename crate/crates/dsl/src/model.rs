//! Semantic resolution: names, indices and shapes are checked and every
//! declaration is turned into the algebraic objects it denotes. Frame and
//! coordinate indices in source text are 1-based.

use algebroid::{Algebroid, BasePatch, Form, Multivector, Scalar, Section};

use crate::ast::*;
use crate::error::{DslError, Pos, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Algebroid { name: String, alg: Algebroid },
    Cocycle { name: String, on: String, form: Form },
    Bivector { name: String, on: String, p: Multivector },
    Jacobi { name: String, lambda: Multivector, e: Section },
    Pair { name: String, a: String, phi0: String, adual: String, x0: String },
    Morphism { name: String, source: String, target: String, matrix: Vec<Vec<Scalar>> },
}

impl Item {
    pub fn name(&self) -> &str {
        match self {
            Item::Algebroid { name, .. }
            | Item::Cocycle { name, .. }
            | Item::Bivector { name, .. }
            | Item::Jacobi { name, .. }
            | Item::Pair { name, .. }
            | Item::Morphism { name, .. } => name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Item::Algebroid { .. } => "an algebroid",
            Item::Cocycle { .. } => "a cocycle",
            Item::Bivector { .. } => "a bivector",
            Item::Jacobi { .. } => "a Jacobi structure",
            Item::Pair { .. } => "a pair",
            Item::Morphism { .. } => "a morphism",
        }
    }
}

/// A resolved structure file, items in declaration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    pub base: BasePatch,
    pub items: Vec<Item>,
}

impl Model {
    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.name() == name)
    }

    pub fn algebroid(&self, name: &str) -> Option<&Algebroid> {
        match self.get(name) {
            Some(Item::Algebroid { alg, .. }) => Some(alg),
            _ => None,
        }
    }

    /// Rank of the pair a name denotes: a declared pair, or the 1-jet pair of
    /// a Jacobi structure.
    pub fn pair_rank(&self, name: &str) -> Option<usize> {
        match self.get(name)? {
            Item::Pair { a, .. } => self.algebroid(a).map(Algebroid::rank),
            Item::Jacobi { .. } => Some(self.base.dim() + 1),
            _ => None,
        }
    }
}

pub fn resolve(file: &StructureFile) -> Result<Model> {
    let mut decls = file.decls.iter();
    let manifold = match decls.next() {
        Some(Decl::Manifold(m)) => m,
        Some(other) => {
            return Err(DslError::semantic(decl_pos(other), "the manifold must be declared first"));
        }
        None => return Err(DslError::semantic(Pos::new(1, 1), "missing manifold declaration")),
    };
    let base = resolve_base(manifold)?;
    let mut r = Resolver { base, items: Vec::new() };
    for d in decls {
        let item = r.decl(d)?;
        r.items.push(item);
    }
    Ok(Model { base: r.base, items: r.items })
}

fn decl_pos(d: &Decl) -> Pos {
    match d {
        Decl::Manifold(m) => m.pos,
        Decl::Algebroid(a) => a.name.pos,
        Decl::Cocycle(c) => c.name.pos,
        Decl::Bivector(b) => b.name.pos,
        Decl::Jacobi(j) => j.name.pos,
        Decl::Pair(p) => p.name.pos,
        Decl::Morphism(m) => m.name.pos,
    }
}

fn resolve_base(m: &ManifoldDecl) -> Result<BasePatch> {
    if m.coords.len() != m.dim.value {
        return Err(DslError::semantic(
            m.dim.pos,
            format!("dim = {} but {} coordinates are listed", m.dim.value, m.coords.len()),
        ));
    }
    distinct(&m.coords, "coordinate")?;
    BasePatch::new(m.coords.iter().map(|c| c.name.clone()))
        .map_err(|e| DslError::semantic(m.pos, e.to_string()))
}

fn distinct(ids: &[Ident], what: &str) -> Result<()> {
    for (i, id) in ids.iter().enumerate() {
        if ids[..i].iter().any(|o| o.name == id.name) {
            return Err(DslError::semantic(id.pos, format!("duplicate {what} '{}'", id.name)));
        }
    }
    Ok(())
}

struct Resolver {
    base: BasePatch,
    items: Vec<Item>,
}

impl Resolver {
    fn n(&self) -> usize {
        self.base.dim()
    }

    fn get(&self, id: &Ident) -> Result<&Item> {
        self.items
            .iter()
            .find(|i| i.name() == id.name)
            .ok_or_else(|| DslError::semantic(id.pos, format!("unknown name '{}'", id.name)))
    }

    fn algebroid(&self, id: &Ident) -> Result<&Algebroid> {
        match self.get(id)? {
            Item::Algebroid { alg, .. } => Ok(alg),
            other => Err(DslError::semantic(
                id.pos,
                format!("'{}' is {}, expected an algebroid", id.name, other.kind()),
            )),
        }
    }

    fn cocycle_on(&self, id: &Ident, owner: &Ident) -> Result<()> {
        match self.get(id)? {
            Item::Cocycle { on, .. } if *on == owner.name => Ok(()),
            Item::Cocycle { on, .. } => Err(DslError::semantic(
                id.pos,
                format!("cocycle '{}' lives on '{on}', expected one on '{}'", id.name, owner.name),
            )),
            other => Err(DslError::semantic(
                id.pos,
                format!("'{}' is {}, expected a cocycle", id.name, other.kind()),
            )),
        }
    }

    fn pair_like(&self, id: &Ident) -> Result<usize> {
        let item = self.get(id)?;
        match item {
            Item::Pair { a, .. } => Ok(self.items.iter().find_map(|i| match i {
                Item::Algebroid { name, alg } if name == a => Some(alg.rank()),
                _ => None,
            }).expect("resolved pair")),
            Item::Jacobi { .. } => Ok(self.n() + 1),
            other => Err(DslError::semantic(
                id.pos,
                format!("'{}' is {}, expected a pair or a Jacobi structure", id.name, other.kind()),
            )),
        }
    }

    fn decl(&self, d: &Decl) -> Result<Item> {
        let name = match d {
            Decl::Manifold(m) => {
                return Err(DslError::semantic(m.pos, "duplicate manifold declaration"));
            }
            Decl::Algebroid(a) => &a.name,
            Decl::Cocycle(c) => &c.name,
            Decl::Bivector(b) => &b.name,
            Decl::Jacobi(j) => &j.name,
            Decl::Pair(p) => &p.name,
            Decl::Morphism(m) => &m.name,
        };
        if self.items.iter().any(|i| i.name() == name.name) {
            return Err(DslError::semantic(name.pos, format!("'{}' is already declared", name.name)));
        }
        let n = self.n();
        Ok(match d {
            Decl::Manifold(_) => unreachable!(),
            Decl::Algebroid(a) => Item::Algebroid { name: name.name.clone(), alg: self.algebroid_decl(a)? },
            Decl::Cocycle(c) => {
                let rank = self.algebroid(&c.on)?.rank();
                let comps = self.vector(&c.value, rank, "the algebroid rank")?;
                Item::Cocycle {
                    name: name.name.clone(),
                    on: c.on.name.clone(),
                    form: Form::vector(comps, n).expect("sized components"),
                }
            }
            Decl::Bivector(b) => {
                let rank = self.algebroid(&b.on)?.rank();
                Item::Bivector { name: name.name.clone(), on: b.on.name.clone(), p: self.bivector(&b.body, rank)? }
            }
            Decl::Jacobi(j) => Item::Jacobi {
                name: name.name.clone(),
                lambda: self.bivector(&j.lambda, n)?,
                e: Section::vector(self.vector(&j.e, n, "the manifold dimension")?, n).expect("sized components"),
            },
            Decl::Pair(p) => {
                let ra = self.algebroid(&p.a)?.rank();
                self.cocycle_on(&p.phi0, &p.a)?;
                let rd = self.algebroid(&p.adual)?.rank();
                self.cocycle_on(&p.x0, &p.adual)?;
                if ra != rd {
                    return Err(DslError::semantic(
                        p.adual.pos,
                        format!("'{}' has rank {rd} but '{}' has rank {ra}", p.adual.name, p.a.name),
                    ));
                }
                Item::Pair {
                    name: name.name.clone(),
                    a: p.a.name.clone(),
                    phi0: p.phi0.name.clone(),
                    adual: p.adual.name.clone(),
                    x0: p.x0.name.clone(),
                }
            }
            Decl::Morphism(m) => {
                let ks = self.pair_like(&m.source)?;
                let kt = self.pair_like(&m.target)?;
                Item::Morphism {
                    name: name.name.clone(),
                    source: m.source.name.clone(),
                    target: m.target.name.clone(),
                    matrix: self.matrix(&m.matrix, kt, ks, "target rank", "source rank")?,
                }
            }
        })
    }

    fn algebroid_decl(&self, a: &AlgebroidDecl) -> Result<Algebroid> {
        let k = a.rank.value;
        let n = self.n();
        if k == 0 {
            return Err(DslError::semantic(a.rank.pos, "rank must be at least 1"));
        }
        if a.frame.len() != k {
            return Err(DslError::semantic(
                a.frame.first().map_or(a.rank.pos, |f| f.pos),
                format!("rank = {k} but {} frame names are listed", a.frame.len()),
            ));
        }
        distinct(&a.frame, "frame name")?;
        let anchor = self.matrix(&a.anchor, k, n, "rank", "manifold dimension")?;
        let mut structure = Vec::new();
        for b in &a.brackets {
            let i = self.index(&b.i, k)?;
            let j = self.index(&b.j, k)?;
            if i >= j {
                return Err(DslError::semantic(
                    b.j.pos,
                    format!("bracket indices must increase, found [{},{}]", b.i.value, b.j.value),
                ));
            }
            if structure.iter().any(|((p, q), _)| (*p, *q) == (i, j)) {
                return Err(DslError::semantic(
                    b.i.pos,
                    format!("bracket[{},{}] is declared twice", b.i.value, b.j.value),
                ));
            }
            let comps = self.vector(&b.value, k, "the algebroid rank")?;
            structure.push(((i, j), Section::vector(comps, n).expect("sized components")));
        }
        let names = a.frame.iter().map(|f| f.name.clone()).collect();
        Algebroid::new(self.base.clone(), names, anchor, structure)
            .map_err(|e| DslError::semantic(a.rank.pos, e.to_string()))
    }

    fn index(&self, i: &Nat, bound: usize) -> Result<usize> {
        if i.value == 0 || i.value > bound {
            return Err(DslError::semantic(
                i.pos,
                format!("index {} out of range 1..{bound}", i.value),
            ));
        }
        Ok(i.value - 1)
    }

    fn bivector(&self, body: &BivectorBody, rank: usize) -> Result<Multivector> {
        let mut seen: Vec<(usize, usize)> = Vec::new();
        let mut out = Multivector::zero(rank, 2, self.n());
        for e in &body.entries {
            let i = self.index(&e.i, rank)?;
            let j = self.index(&e.j, rank)?;
            if i >= j {
                return Err(DslError::semantic(
                    e.j.pos,
                    format!("bivector indices must increase, found ({},{})", e.i.value, e.j.value),
                ));
            }
            if seen.contains(&(i, j)) {
                return Err(DslError::semantic(
                    e.i.pos,
                    format!("component ({},{}) is given twice", e.i.value, e.j.value),
                ));
            }
            seen.push((i, j));
            let c = self.scalar(&e.value)?;
            out += &Multivector::basis(rank, self.n(), &[i, j]).expect("indices in range").scale(&c);
        }
        Ok(out)
    }

    fn vector(&self, l: &ExprList, len: usize, what: &str) -> Result<Vec<Scalar>> {
        if l.items.len() != len {
            return Err(DslError::semantic(
                l.pos,
                format!("expected {len} components ({what}), found {}", l.items.len()),
            ));
        }
        l.items.iter().map(|e| self.scalar(e)).collect()
    }

    fn matrix(&self, m: &Matrix, rows: usize, cols: usize, rwhat: &str, cwhat: &str) -> Result<Vec<Vec<Scalar>>> {
        if m.rows.len() != rows {
            return Err(DslError::semantic(
                m.pos,
                format!("expected {rows} rows ({rwhat}), found {}", m.rows.len()),
            ));
        }
        m.rows.iter().map(|r| self.vector(r, cols, &format!("the {cwhat}"))).collect()
    }

    fn scalar(&self, e: &Expr) -> Result<Scalar> {
        eval(e, &self.base)
    }
}

/// Evaluates an expression over the coordinates of `base`.
pub fn eval(e: &Expr, base: &BasePatch) -> Result<Scalar> {
    let n = base.dim();
    Ok(match &e.kind {
        ExprKind::Num(q) => Scalar::constant(n, q.clone()),
        ExprKind::Var(v) => {
            let i = base
                .index_of(v)
                .ok_or_else(|| DslError::semantic(e.pos, format!("unknown coordinate '{v}'")))?;
            Scalar::var(n, i).expect("index from the base")
        }
        ExprKind::Neg(a) => -eval(a, base)?,
        ExprKind::Add(a, b) => eval(a, base)? + eval(b, base)?,
        ExprKind::Sub(a, b) => eval(a, base)? - eval(b, base)?,
        ExprKind::Mul(a, b) => eval(a, base)? * eval(b, base)?,
        ExprKind::Pow(a, k) => eval(a, base)?.pow(*k),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    const PLANE: &str = "
        manifold { dim = 2; coords = [x y] }
        algebroid T { rank = 2; frame = [d_x, d_y]; anchor = [[1, 0], [0, 1]]; }
        algebroid C {
            rank = 2; frame = [dx, dy]; anchor = [[0, 1], [-1, 0]];
        }
        cocycle zero on T = [0, 0];
        cocycle zero_star on C = [0, 0];
        pair p = (T, zero; C, zero_star);
    ";

    fn err(src: &str) -> String {
        resolve(&parse(src).unwrap()).unwrap_err().to_string()
    }

    #[test]
    fn resolves_the_poisson_plane() {
        let m = resolve(&parse(PLANE).unwrap()).unwrap();
        assert_eq!(m.items.len(), 5);
        let c = m.algebroid("C").unwrap();
        assert_eq!(c.anchor_matrix()[1][0], Scalar::from_int(2, -1));
        assert_eq!(m.pair_rank("p"), Some(2));
    }

    #[test]
    fn bracket_indices_must_increase() {
        let src = "manifold { dim = 0; coords = [] }\nalgebroid g { rank = 2; frame = [a b]; anchor = [[], []]; bracket[2,1] = [0, 1]; }";
        assert_eq!(err(src), "2:69: semantic error: bracket indices must increase, found [2,1]");
    }

    #[test]
    fn variables_must_be_coordinates() {
        let src = "manifold { dim = 1; coords = [x] }\nalgebroid g { rank = 1; frame = [a]; anchor = [[t]]; }";
        assert_eq!(err(src), "2:49: semantic error: unknown coordinate 't'");
    }
}
