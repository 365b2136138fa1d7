//! Expression grammar for potentials and canonical encodings: signed integer
//! literals, symbols, `+ - * / ^`, parentheses; `cosh(x)`/`sinh(x)` accepted
//! as sugar in exponential towers and rewritten over η = eˣ.

use crate::ctx::{DiffCtx, Scalar};
use crate::error::{Error, Result};
use crate::fields::{FieldElem, FieldTower, Generator};
use crate::rat::{rat_i, Rat};
use crate::symbol::Symbol;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    Int(i64),
    Sym(String),
    Call(String, Box<Ast>),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: i64 = text[start..i].parse().map_err(|_| Error::SyntaxError {
                    position: start,
                    message: "integer literal too large".into(),
                })?;
                toks.push((Tok::Int(n), start));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                let mut name = text[start..i].to_string();
                // jet primes: u', u'', ...
                while i < bytes.len() && bytes[i] == b'\'' {
                    name.push('\'');
                    i += 1;
                }
                // jet parenthesized order: u(4)
                if name == "u" && i < bytes.len() && bytes[i] == b'(' {
                    let mut j = i + 1;
                    let dstart = j;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j > dstart && j < bytes.len() && bytes[j] == b')' {
                        name = format!("u({})", &text[dstart..j]);
                        i = j + 1;
                    }
                }
                toks.push((Tok::Ident(name), start));
            }
            _ => {
                return Err(Error::SyntaxError {
                    position: i,
                    message: format!("unexpected character `{c}`"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, p)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok) -> Result<()> {
        let pos = self.here();
        match self.bump() {
            Some(got) if got == t => Ok(()),
            got => Err(Error::SyntaxError {
                position: pos,
                message: format!("expected {:?}, found {:?}", t, got),
            }),
        }
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Ast::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Ast::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Ast> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = Ast::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let rhs = self.factor()?;
                    lhs = Ast::Div(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Ast> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(Ast::Neg(Box::new(self.factor()?)))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            let pos = self.here();
            match self.bump() {
                Some(Tok::Int(n)) if n >= 0 && n <= u32::MAX as i64 => {
                    Ok(Ast::Pow(Box::new(base), n as u32))
                }
                t => Err(Error::SyntaxError {
                    position: pos,
                    message: format!("expected a nonnegative integer exponent, found {:?}", t),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Ast> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Ast::Int(n)),
            Some(Tok::Ident(name)) => {
                if (name == "cosh" || name == "sinh") && self.peek() == Some(&Tok::LParen) {
                    self.bump();
                    let inner = self.expr()?;
                    self.expect(Tok::RParen)?;
                    return Ok(Ast::Call(name, Box::new(inner)));
                }
                Ok(Ast::Sym(name))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            t => Err(Error::SyntaxError {
                position: pos,
                message: format!("expected a value, found {:?}", t),
            }),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Ast> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let ast = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::SyntaxError {
            position: p.here(),
            message: "trailing input".into(),
        });
    }
    Ok(ast)
}

/// Evaluate an expression permissively in a context: any identifier becomes
/// a symbol. Used for canonical-encoding round trips.
pub fn eval_in_ctx(ast: &Ast, ctx: &Arc<DiffCtx>) -> Result<Scalar> {
    let env = |name: &str| -> Result<Scalar> { Ok(Scalar::var(ctx, Symbol::new(name))) };
    eval(ast, ctx, &env, false)
}

/// Parse a canonical encoding in a context (round-trip helper).
pub fn parse_in_ctx(text: &str, ctx: &Arc<DiffCtx>) -> Result<Scalar> {
    eval_in_ctx(&parse_expr(text)?, ctx)
}

/// Parse a potential over a tower: symbols are validated against the tower
/// and cosh/sinh sugar is rewritten over η in exponential towers.
pub fn parse_potential(text: &str, tower: &FieldTower) -> Result<FieldElem> {
    let ast = parse_expr(text)?;
    let allowed = tower.symbols();
    let ctx = tower.ctx();
    let env = |name: &str| -> Result<Scalar> {
        let s = Symbol::new(name);
        if allowed.contains(&s) {
            Ok(Scalar::var(ctx, s))
        } else {
            Err(Error::UnknownSymbol(name.to_string()))
        }
    };
    let sugar = matches!(
        tower.generator,
        Generator::Exponential { .. }
    );
    eval(&ast, ctx, &env, sugar)
}

fn eval(
    ast: &Ast,
    ctx: &Arc<DiffCtx>,
    env: &dyn Fn(&str) -> Result<Scalar>,
    sugar: bool,
) -> Result<Scalar> {
    match ast {
        Ast::Int(n) => Ok(Scalar::constant(ctx, rat_i(*n))),
        Ast::Sym(name) => env(name),
        Ast::Call(f, arg) => {
            if !sugar {
                return Err(Error::UnknownSymbol(f.clone()));
            }
            // only cosh(x)/sinh(x) with the bare x argument are supported
            if **arg != Ast::Sym("x".into()) {
                return Err(Error::UnknownSymbol(format!("{f}(non-x argument)")));
            }
            let eta = Scalar::var(ctx, Symbol::new("eta"));
            let half = Scalar::constant(ctx, Rat::new(1.into(), 2.into()));
            let inv = eta.inv()?;
            match f.as_str() {
                "cosh" => Ok(eta.add(&inv).mul(&half)),
                "sinh" => Ok(eta.sub(&inv).mul(&half)),
                _ => Err(Error::UnknownSymbol(f.clone())),
            }
        }
        Ast::Neg(a) => Ok(eval(a, ctx, env, sugar)?.neg()),
        Ast::Add(a, b) => Ok(eval(a, ctx, env, sugar)?.add(&eval(b, ctx, env, sugar)?)),
        Ast::Sub(a, b) => Ok(eval(a, ctx, env, sugar)?.sub(&eval(b, ctx, env, sugar)?)),
        Ast::Mul(a, b) => Ok(eval(a, ctx, env, sugar)?.mul(&eval(b, ctx, env, sugar)?)),
        Ast::Div(a, b) => eval(a, ctx, env, sugar)?.div(&eval(b, ctx, env, sugar)?),
        Ast::Pow(a, e) => eval(a, ctx, env, sugar)?.pow(*e as i64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn parse_rational_potential() {
        let tower = FieldTower::rational(&[]);
        let u = parse_potential("6/x^2", &tower).unwrap();
        let x = tower.var(Symbol::new("x")).unwrap();
        assert_eq!(u, tower.constant(rat_i(6)).div(&x.pow(2).unwrap()).unwrap());
    }

    #[test]
    fn cosh_sugar_rewrites_over_eta() {
        let tower = FieldTower::exponential(&[]);
        let u = parse_potential("-2/cosh(x)^2", &tower).unwrap();
        // -2/cosh²x = -8η²/(η²+1)²
        let eta = tower.var(Symbol::new("eta")).unwrap();
        let expect = eta
            .pow(2)
            .unwrap()
            .scale(&rat_i(-8))
            .div(&eta.pow(2).unwrap().add(&tower.one()).pow(2).unwrap())
            .unwrap();
        assert_eq!(u, expect);
    }

    #[test]
    fn weierstrass_symbols() {
        let tower = FieldTower::weierstrass(&[], false);
        let u = parse_potential("2*wp", &tower).unwrap();
        let wp = tower.var(Symbol::new("wp")).unwrap();
        assert_eq!(u, wp.scale(&rat_i(2)));
    }

    #[test]
    fn syntax_and_symbol_errors() {
        let tower = FieldTower::rational(&[]);
        assert!(matches!(
            parse_potential("6/", &tower),
            Err(Error::SyntaxError { .. })
        ));
        assert!(matches!(
            parse_potential("eta + 1", &tower),
            Err(Error::UnknownSymbol(_))
        ));
    }

    #[test]
    fn roundtrip_canonical_encoding() {
        let ctx = crate::ctx::DiffCtx::formal();
        let printed = "-1/4*u''' + 3/2*u*u'";
        let parsed = parse_in_ctx(printed, &ctx).unwrap();
        let again = parse_in_ctx(&format!("{}", parsed), &ctx).unwrap();
        assert_eq!(parsed, again);
        // rationals print as p/q and re-parse
        let v = parse_in_ctx("(x^2 - 1)/(2*x - 2)", &ctx).unwrap();
        assert_eq!(format!("{}", v), "1/2*x + 1/2");
    }
}
