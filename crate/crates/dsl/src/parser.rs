//! Recursive-descent parser for structure files.
//!
//! ```text
//! file      := decl*
//! manifold  := 'manifold' '{' 'dim' '=' nat ';' 'coords' '=' '[' ident* ']' '}'
//! algebroid := 'algebroid' ident '{' 'rank' '=' nat ';' 'frame' '=' '[' ident+ ']' ';'
//!              'anchor' '=' matrix ';' ('bracket' '[' nat ',' nat ']' '=' list ';')* '}'
//! cocycle   := 'cocycle' ident 'on' ident '=' list ';'
//! bivector  := 'bivector' ident 'on' ident '=' body ';'
//! jacobi    := 'jacobi' ident '=' '{' 'Lambda' ':' body ';' 'E' ':' list '}' ';'
//! pair      := 'pair' ident '=' '(' ident ',' ident ';' ident ',' ident ')' ';'
//! morphism  := 'morphism' ident ':' ident '->' ident '=' matrix ';'
//! body      := '{' ('(' nat ',' nat ')' ':' expr ','?)* '}'
//! list      := '[' (expr (',' expr)*)? ']'      matrix := '[' (list ','?)* ']'
//! expr      := term (('+' | '-') term)*         term := factor ('*' factor)*
//! factor    := '-' factor | base ('^' nat)?     base := rational | ident | '(' expr ')'
//! rational  := ('-')? nat ('/' nat)?
//! ```
//!
//! Identifier lists may be separated by commas or whitespace. A `-` directly
//! before a number is part of the number, so `-3^2` is `(-3)^2`; before
//! anything else it negates the following factor.

use algebroid::Rational;
use num::BigInt;

use crate::ast::*;
use crate::error::{DslError, Pos, Result};
use crate::lexer::{tokenize, Tok, Token};

pub fn parse(src: &str) -> Result<StructureFile> {
    let mut p = Parser::new(src)?;
    let mut decls = Vec::new();
    while !p.at(&Tok::Eof) {
        decls.push(p.decl()?);
    }
    Ok(StructureFile { decls })
}

/// Parses a standalone polynomial expression.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser::new(src)?;
    let e = p.expr()?;
    p.expect(&Tok::Eof, "end of expression")?;
    Ok(e)
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

impl Parser {
    fn new(src: &str) -> Result<Self> {
        Ok(Self { toks: tokenize(src)?, at: 0 })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.at]
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].tok
    }

    fn at(&self, t: &Tok) -> bool {
        &self.peek().tok == t
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.at].clone();
        if t.tok != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.at(t) {
            self.next();
            true
        } else {
            false
        }
    }

    fn unexpected(&self, what: &str) -> DslError {
        let t = self.peek();
        DslError::syntax(t.pos, format!("expected {what}, found {}", t.tok))
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<Pos> {
        if self.at(t) {
            Ok(self.next().pos)
        } else {
            Err(self.unexpected(what))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<Pos> {
        match &self.peek().tok {
            Tok::Ident(s) if s == kw => Ok(self.next().pos),
            _ => Err(self.unexpected(&format!("'{kw}'"))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<Ident> {
        match &self.peek().tok {
            Tok::Ident(s) => {
                let name = s.clone();
                let pos = self.next().pos;
                Ok(Ident { name, pos })
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn nat(&mut self, what: &str) -> Result<Nat> {
        match &self.peek().tok {
            Tok::Nat(s) => {
                let pos = self.peek().pos;
                let value = s
                    .parse::<usize>()
                    .map_err(|_| DslError::syntax(pos, format!("number '{s}' is too large")))?;
                self.next();
                Ok(Nat { value, pos })
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn decl(&mut self) -> Result<Decl> {
        let kw = match &self.peek().tok {
            Tok::Ident(s) => s.clone(),
            _ => return Err(self.unexpected("a declaration")),
        };
        match kw.as_str() {
            "manifold" => self.manifold().map(Decl::Manifold),
            "algebroid" => self.algebroid().map(Decl::Algebroid),
            "cocycle" => self.cocycle().map(Decl::Cocycle),
            "bivector" => self.bivector().map(Decl::Bivector),
            "jacobi" => self.jacobi().map(Decl::Jacobi),
            "pair" => self.pair().map(Decl::Pair),
            "morphism" => self.morphism().map(Decl::Morphism),
            _ => Err(self.unexpected("a declaration")),
        }
    }

    fn ident_list(&mut self, allow_empty: bool) -> Result<Vec<Ident>> {
        self.expect(&Tok::LBrack, "'['")?;
        let mut out = Vec::new();
        while !self.at(&Tok::RBrack) {
            out.push(self.ident("an identifier")?);
            self.eat(&Tok::Comma);
        }
        if out.is_empty() && !allow_empty {
            return Err(self.unexpected("an identifier"));
        }
        self.next();
        Ok(out)
    }

    fn manifold(&mut self) -> Result<ManifoldDecl> {
        let pos = self.keyword("manifold")?;
        self.expect(&Tok::LBrace, "'{'")?;
        self.keyword("dim")?;
        self.expect(&Tok::Eq, "'='")?;
        let dim = self.nat("a dimension")?;
        self.expect(&Tok::Semi, "';'")?;
        self.keyword("coords")?;
        self.expect(&Tok::Eq, "'='")?;
        let coords = self.ident_list(true)?;
        self.eat(&Tok::Semi);
        self.expect(&Tok::RBrace, "'}'")?;
        Ok(ManifoldDecl { dim, coords, pos })
    }

    fn algebroid(&mut self) -> Result<AlgebroidDecl> {
        self.keyword("algebroid")?;
        let name = self.ident("an algebroid name")?;
        self.expect(&Tok::LBrace, "'{'")?;
        self.keyword("rank")?;
        self.expect(&Tok::Eq, "'='")?;
        let rank = self.nat("a rank")?;
        self.expect(&Tok::Semi, "';'")?;
        self.keyword("frame")?;
        self.expect(&Tok::Eq, "'='")?;
        let frame = self.ident_list(false)?;
        self.expect(&Tok::Semi, "';'")?;
        self.keyword("anchor")?;
        self.expect(&Tok::Eq, "'='")?;
        let anchor = self.matrix()?;
        self.expect(&Tok::Semi, "';'")?;
        let mut brackets = Vec::new();
        while !self.at(&Tok::RBrace) {
            self.keyword("bracket")?;
            self.expect(&Tok::LBrack, "'['")?;
            let i = self.nat("a frame index")?;
            self.expect(&Tok::Comma, "','")?;
            let j = self.nat("a frame index")?;
            self.expect(&Tok::RBrack, "']'")?;
            self.expect(&Tok::Eq, "'='")?;
            let value = self.list()?;
            self.expect(&Tok::Semi, "';'")?;
            brackets.push(BracketDecl { i, j, value });
        }
        self.next();
        Ok(AlgebroidDecl { name, rank, frame, anchor, brackets })
    }

    fn cocycle(&mut self) -> Result<CocycleDecl> {
        self.keyword("cocycle")?;
        let name = self.ident("a cocycle name")?;
        self.keyword("on")?;
        let on = self.ident("an algebroid name")?;
        self.expect(&Tok::Eq, "'='")?;
        let value = self.list()?;
        self.expect(&Tok::Semi, "';'")?;
        Ok(CocycleDecl { name, on, value })
    }

    fn bivector(&mut self) -> Result<BivectorDecl> {
        self.keyword("bivector")?;
        let name = self.ident("a bivector name")?;
        self.keyword("on")?;
        let on = self.ident("an algebroid name")?;
        self.expect(&Tok::Eq, "'='")?;
        let body = self.body()?;
        self.expect(&Tok::Semi, "';'")?;
        Ok(BivectorDecl { name, on, body })
    }

    fn jacobi(&mut self) -> Result<JacobiDecl> {
        self.keyword("jacobi")?;
        let name = self.ident("a structure name")?;
        self.expect(&Tok::Eq, "'='")?;
        self.expect(&Tok::LBrace, "'{'")?;
        self.keyword("Lambda")?;
        self.expect(&Tok::Colon, "':'")?;
        let lambda = self.body()?;
        self.expect(&Tok::Semi, "';'")?;
        self.keyword("E")?;
        self.expect(&Tok::Colon, "':'")?;
        let e = self.list()?;
        self.eat(&Tok::Semi);
        self.expect(&Tok::RBrace, "'}'")?;
        self.expect(&Tok::Semi, "';'")?;
        Ok(JacobiDecl { name, lambda, e })
    }

    fn pair(&mut self) -> Result<PairDecl> {
        self.keyword("pair")?;
        let name = self.ident("a pair name")?;
        self.expect(&Tok::Eq, "'='")?;
        self.expect(&Tok::LParen, "'('")?;
        let a = self.ident("an algebroid name")?;
        self.expect(&Tok::Comma, "','")?;
        let phi0 = self.ident("a cocycle name")?;
        self.expect(&Tok::Semi, "';'")?;
        let adual = self.ident("an algebroid name")?;
        self.expect(&Tok::Comma, "','")?;
        let x0 = self.ident("a cocycle name")?;
        self.expect(&Tok::RParen, "')'")?;
        self.expect(&Tok::Semi, "';'")?;
        Ok(PairDecl { name, a, phi0, adual, x0 })
    }

    fn morphism(&mut self) -> Result<MorphismDecl> {
        self.keyword("morphism")?;
        let name = self.ident("a morphism name")?;
        self.expect(&Tok::Colon, "':'")?;
        let source = self.ident("a pair name")?;
        self.expect(&Tok::Arrow, "'->'")?;
        let target = self.ident("a pair name")?;
        self.expect(&Tok::Eq, "'='")?;
        let matrix = self.matrix()?;
        self.expect(&Tok::Semi, "';'")?;
        Ok(MorphismDecl { name, source, target, matrix })
    }

    fn body(&mut self) -> Result<BivectorBody> {
        let pos = self.expect(&Tok::LBrace, "'{'")?;
        let mut entries = Vec::new();
        while !self.at(&Tok::RBrace) {
            self.expect(&Tok::LParen, "'(' or '}'")?;
            let i = self.nat("an index")?;
            self.expect(&Tok::Comma, "','")?;
            let j = self.nat("an index")?;
            self.expect(&Tok::RParen, "')'")?;
            self.expect(&Tok::Colon, "':'")?;
            let value = self.expr()?;
            entries.push(BivectorEntry { i, j, value });
            self.eat(&Tok::Comma);
        }
        self.next();
        Ok(BivectorBody { entries, pos })
    }

    fn list(&mut self) -> Result<ExprList> {
        let pos = self.expect(&Tok::LBrack, "'['")?;
        let mut items = Vec::new();
        if !self.eat(&Tok::RBrack) {
            loop {
                items.push(self.expr()?);
                if self.eat(&Tok::RBrack) {
                    break;
                }
                self.expect(&Tok::Comma, "',' or ']'")?;
            }
        }
        Ok(ExprList { items, pos })
    }

    fn matrix(&mut self) -> Result<Matrix> {
        let pos = self.expect(&Tok::LBrack, "'['")?;
        let mut rows = Vec::new();
        while !self.at(&Tok::RBrack) {
            if !self.at(&Tok::LBrack) {
                return Err(self.unexpected("a matrix row"));
            }
            rows.push(self.list()?);
            self.eat(&Tok::Comma);
        }
        self.next();
        Ok(Matrix { rows, pos })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let sub = match self.peek().tok {
                Tok::Plus => false,
                Tok::Minus => true,
                _ => return Ok(lhs),
            };
            self.next();
            let rhs = self.term()?;
            let pos = lhs.pos;
            let kind = if sub {
                ExprKind::Sub(Box::new(lhs), Box::new(rhs))
            } else {
                ExprKind::Add(Box::new(lhs), Box::new(rhs))
            };
            lhs = Expr::new(kind, pos);
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.eat(&Tok::Star) {
            let rhs = self.factor()?;
            let pos = lhs.pos;
            lhs = Expr::new(ExprKind::Mul(Box::new(lhs), Box::new(rhs)), pos);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let pos = self.peek().pos;
        let base = if self.at(&Tok::Minus) {
            if matches!(self.peek2(), Tok::Nat(_)) {
                self.next();
                self.rational(pos, true)?
            } else {
                self.next();
                let inner = self.factor()?;
                return Ok(Expr::new(ExprKind::Neg(Box::new(inner)), pos));
            }
        } else {
            self.base()?
        };
        if self.at(&Tok::Caret) {
            let caret = self.next().pos;
            let e = match &self.peek().tok {
                Tok::Nat(s) => s.clone(),
                _ => return Err(DslError::syntax(caret, "expected an exponent after '^'")),
            };
            let e = e
                .parse::<u32>()
                .map_err(|_| DslError::syntax(self.peek().pos, format!("exponent '{e}' is too large")))?;
            self.next();
            return Ok(Expr::new(ExprKind::Pow(Box::new(base), e), pos));
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expr> {
        let pos = self.peek().pos;
        match &self.peek().tok {
            Tok::Nat(_) => self.rational(pos, false),
            Tok::Ident(s) => {
                let name = s.clone();
                self.next();
                Ok(Expr::new(ExprKind::Var(name), pos))
            }
            Tok::LParen => {
                self.next();
                let mut e = self.expr()?;
                self.expect(&Tok::RParen, "')'")?;
                e.pos = pos;
                Ok(e)
            }
            _ => Err(self.unexpected("an expression")),
        }
    }

    fn rational(&mut self, pos: Pos, negative: bool) -> Result<Expr> {
        let digits = |t: Token| match t.tok {
            Tok::Nat(s) => s.parse::<BigInt>().expect("digit string"),
            _ => unreachable!("caller checked for a number"),
        };
        let mut num = digits(self.next());
        if negative {
            num = -num;
        }
        let mut den = BigInt::from(1);
        if self.at(&Tok::Slash) {
            let slash = self.next().pos;
            if !matches!(self.peek().tok, Tok::Nat(_)) {
                return Err(self.unexpected("a denominator"));
            }
            den = digits(self.next());
            if den == BigInt::from(0) {
                return Err(DslError::syntax(slash, "division by zero"));
            }
        }
        Ok(Expr::new(ExprKind::Num(Rational::new(num, den)), pos))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(src: &str) -> ExprKind {
        parse_expr(src).unwrap().kind
    }

    fn num(n: i64) -> Box<Expr> {
        Box::new(Expr::new(ExprKind::Num(Rational::from_integer(n.into())), Pos::default()))
    }

    fn var(s: &str) -> Box<Expr> {
        Box::new(Expr::new(ExprKind::Var(s.into()), Pos::default()))
    }

    #[test]
    fn precedence() {
        assert_eq!(
            kind("1 + 2*x^2"),
            ExprKind::Add(num(1), Box::new(Expr::new(ExprKind::Mul(num(2), Box::new(Expr::new(ExprKind::Pow(var("x"), 2), Pos::default()))), Pos::default())))
        );
        assert_eq!(kind("x - y - 1"), kind("(x - y) - 1"));
        assert_ne!(kind("x - y - 1"), kind("x - (y - 1)"));
    }

    #[test]
    fn negative_numbers_bind_to_the_base() {
        assert_eq!(kind("-3^2"), ExprKind::Pow(num(-3), 2));
        assert_eq!(kind("-x^2"), ExprKind::Neg(Box::new(Expr::new(ExprKind::Pow(var("x"), 2), Pos::default()))));
        assert_eq!(kind("-3/2"), ExprKind::Num(Rational::new((-3).into(), 2.into())));
    }

    #[test]
    fn caret_without_exponent() {
        let e = parse_expr("x^").unwrap_err();
        assert_eq!(e.to_string(), "1:2: syntax error: expected an exponent after '^'");
    }

    #[test]
    fn manifold_over_a_point() {
        let f = parse("manifold { dim = 0; coords = [] }").unwrap();
        assert_eq!(f.decls.len(), 1);
    }
}
