//! Canonical text form of a structure file. Parsing the output yields a tree
//! equal to the input.

use std::fmt::{self, Write};

use num::One;

use crate::ast::*;

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&expr(self))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Sum,
    Term,
    Factor,
}

fn level(e: &Expr) -> Level {
    match &e.kind {
        ExprKind::Add(..) | ExprKind::Sub(..) => Level::Sum,
        ExprKind::Mul(..) => Level::Term,
        _ => Level::Factor,
    }
}

fn at_least(e: &Expr, min: Level) -> String {
    if level(e) >= min {
        expr(e)
    } else {
        format!("({})", expr(e))
    }
}

fn rational(q: &algebroid::Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn expr(e: &Expr) -> String {
    match &e.kind {
        ExprKind::Num(q) => rational(q),
        ExprKind::Var(v) => v.clone(),
        ExprKind::Neg(inner) => {
            let starts_with_var = match &inner.kind {
                ExprKind::Var(_) | ExprKind::Neg(_) => true,
                ExprKind::Pow(b, _) => !matches!(b.kind, ExprKind::Num(_)),
                _ => false,
            };
            if starts_with_var {
                format!("-{}", expr(inner))
            } else {
                format!("-({})", expr(inner))
            }
        }
        ExprKind::Add(l, r) => format!("{} + {}", expr(l), at_least(r, Level::Term)),
        ExprKind::Sub(l, r) => format!("{} - {}", expr(l), at_least(r, Level::Term)),
        ExprKind::Mul(l, r) => format!("{}*{}", at_least(l, Level::Term), at_least(r, Level::Factor)),
        ExprKind::Pow(b, n) => {
            let base = match &b.kind {
                ExprKind::Var(_) | ExprKind::Num(_) => expr(b),
                _ => format!("({})", expr(b)),
            };
            format!("{base}^{n}")
        }
    }
}

fn list(l: &ExprList) -> String {
    let items: Vec<String> = l.items.iter().map(expr).collect();
    format!("[{}]", items.join(", "))
}

fn matrix(m: &Matrix) -> String {
    let rows: Vec<String> = m.rows.iter().map(list).collect();
    format!("[{}]", rows.join(", "))
}

fn body(b: &BivectorBody) -> String {
    let entries: Vec<String> =
        b.entries.iter().map(|e| format!("({},{}): {}", e.i.value, e.j.value, expr(&e.value))).collect();
    format!("{{ {} }}", entries.join(", ")).replace("{  }", "{}")
}

fn names(ids: &[Ident]) -> String {
    let v: Vec<&str> = ids.iter().map(|i| i.name.as_str()).collect();
    format!("[{}]", v.join(", "))
}

pub fn decl(d: &Decl) -> String {
    let mut s = String::new();
    match d {
        Decl::Manifold(m) => {
            write!(s, "manifold {{ dim = {}; coords = {} }}", m.dim.value, names(&m.coords)).unwrap();
        }
        Decl::Algebroid(a) => {
            writeln!(s, "algebroid {} {{", a.name.name).unwrap();
            writeln!(s, "    rank = {};", a.rank.value).unwrap();
            writeln!(s, "    frame = {};", names(&a.frame)).unwrap();
            writeln!(s, "    anchor = {};", matrix(&a.anchor)).unwrap();
            for b in &a.brackets {
                writeln!(s, "    bracket[{},{}] = {};", b.i.value, b.j.value, list(&b.value)).unwrap();
            }
            s.push('}');
        }
        Decl::Cocycle(c) => {
            write!(s, "cocycle {} on {} = {};", c.name.name, c.on.name, list(&c.value)).unwrap();
        }
        Decl::Bivector(b) => {
            write!(s, "bivector {} on {} = {};", b.name.name, b.on.name, body(&b.body)).unwrap();
        }
        Decl::Jacobi(j) => {
            write!(s, "jacobi {} = {{\n    Lambda: {};\n    E: {}\n}};", j.name.name, body(&j.lambda), list(&j.e))
                .unwrap();
        }
        Decl::Pair(p) => {
            write!(s, "pair {} = ({}, {}; {}, {});", p.name.name, p.a.name, p.phi0.name, p.adual.name, p.x0.name)
                .unwrap();
        }
        Decl::Morphism(m) => {
            write!(s, "morphism {} : {} -> {} = {};", m.name.name, m.source.name, m.target.name, matrix(&m.matrix))
                .unwrap();
        }
    }
    s
}

impl fmt::Display for StructureFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.decls.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            writeln!(f, "{}", decl(d))?;
        }
        Ok(())
    }
}


#[cfg(test)]
mod tests {
    use crate::parser::parse_expr;

    #[test]
    fn expressions_round_trip() {
        for src in [
            "x",
            "-3/2*x + 1",
            "x^2 - y^2",
            "-x^2*y",
            "-3^2",
            "-(3^2)",
            "x - (y - z)",
            "x*(y*z)",
            "(x + 1)^3",
            "-(x + y)",
            "--x",
            "x*-3",
            "(-x)^2",
            "2*(x - 1)*y",
        ] {
            let e = parse_expr(src).unwrap();
            let again = parse_expr(&e.to_string()).unwrap();
            assert_eq!(e, again, "{src} -> {e}");
        }
    }

    #[test]
    fn canonical_spacing() {
        assert_eq!(parse_expr("x*(y*z)").unwrap().to_string(), "x*(y*z)");
        assert_eq!(parse_expr("(x*y)*z").unwrap().to_string(), "x*y*z");
        assert_eq!(parse_expr("x-(y+1)").unwrap().to_string(), "x - (y + 1)");
    }
}
