//! Parser and evaluator for class expressions such as `xi(2)*cqe(3,2) + 2*e1^4`.
//!
//! ```text
//! expr   := term { "+" term } ;
//! term   := factor { "*" factor } ;
//! factor := atom [ "^" nat ] ;
//! atom   := "xi" "(" nat ")" | "e" "(" nat ")" | "h" "(" nat ")"
//!         | "cqe" "(" nat "," nat ")" | "e1" | "s" "[" nat { "," nat } "]"
//!         | nat | "(" expr ")" ;
//! ```
//!
//! Offsets in errors are byte offsets into the input.

use num_bigint::BigInt;

use super::chern::{chern_sym_power, class_e, class_xi};
use super::class::GrClass;
use super::context::GrContext;
use crate::error::{Error, Result};
use crate::symcore::Partition;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(BigInt),
    Sym(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(Tok, usize)>> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        loop {
            let (tok, at) = lx.next()?;
            let end = tok == Tok::End;
            out.push((tok, at));
            if end {
                return Ok(out);
            }
        }
    }

    fn next(&mut self) -> Result<(Tok, usize)> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(&b) = bytes.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        if b.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: BigInt = self.src[start..self.pos].parse().expect("digits");
            return Ok((Tok::Nat(n), start));
        }
        if b.is_ascii_alphabetic() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            return Ok((Tok::Ident(self.src[start..self.pos].to_string()), start));
        }
        if "()[],+*^-".contains(b as char) {
            self.pos += 1;
            return Ok((Tok::Sym(b as char), start));
        }
        let ch = self.src[start..].chars().next().expect("non-empty");
        Err(Error::Syntax { offset: start, message: format!("unexpected character `{ch}`") })
    }
}

struct Parser {
    ctx: GrContext,
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn offset(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Error {
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::Sym(c) => format!("`{c}`"),
        };
        Error::Syntax { offset: self.offset(), message: format!("expected {wanted}, found {found}") }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == &Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn nat(&mut self) -> Result<(BigInt, usize)> {
        match self.peek().clone() {
            Tok::Nat(n) => {
                let at = self.offset();
                self.bump();
                Ok((n, at))
            }
            Tok::Sym('-') => Err(Error::Syntax {
                offset: self.offset(),
                message: "negative numbers are not allowed".into(),
            }),
            _ => Err(self.unexpected("a natural number")),
        }
    }

    fn small_nat(&mut self) -> Result<i64> {
        let (n, at) = self.nat()?;
        i64::try_from(&n).map_err(|_| Error::Syntax { offset: at, message: format!("index {n} is too large") })
    }

    fn expr(&mut self) -> Result<GrClass> {
        let mut acc = self.term()?;
        while self.peek() == &Tok::Sym('+') {
            self.bump();
            let rhs = self.term()?;
            acc = acc.add(&rhs)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GrClass> {
        let mut acc = self.factor()?;
        while self.peek() == &Tok::Sym('*') {
            self.bump();
            let rhs = self.factor()?;
            acc = acc.mul(&rhs)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<GrClass> {
        let base = self.atom()?;
        if self.peek() != &Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        if self.peek() == &Tok::Sym('-') {
            return Err(Error::NegativeExponent { offset: self.offset() });
        }
        let (k, at) = self.nat()?;
        let k = u32::try_from(&k)
            .map_err(|_| Error::Syntax { offset: at, message: format!("exponent {k} is too large") })?;
        base.pow(k)
    }

    fn call_args(&mut self, count: usize) -> Result<Vec<i64>> {
        self.expect('(')?;
        let mut args = vec![self.small_nat()?];
        while args.len() < count {
            self.expect(',')?;
            args.push(self.small_nat()?);
        }
        self.expect(')')?;
        Ok(args)
    }

    fn atom(&mut self) -> Result<GrClass> {
        let ctx = self.ctx;
        let at = self.offset();
        match self.peek().clone() {
            Tok::Nat(n) => {
                self.bump();
                Ok(GrClass::integer(ctx, n))
            }
            Tok::Sym('(') => {
                self.bump();
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "xi" | "h" => Ok(class_xi(ctx, self.call_args(1)?[0])),
                    "e" => Ok(class_e(ctx, self.call_args(1)?[0])),
                    "e1" => Ok(class_e(ctx, 1)),
                    "cqe" => {
                        let args = self.call_args(2)?;
                        if args[0] < 1 {
                            return Err(Error::Syntax {
                                offset: at,
                                message: "cqe needs a symmetric power degree >= 1".into(),
                            });
                        }
                        let d = u32::try_from(args[0]).map_err(|_| Error::Syntax {
                            offset: at,
                            message: "symmetric power degree too large".into(),
                        })?;
                        chern_sym_power(ctx, d, args[1])
                    }
                    "s" => {
                        self.expect('[')?;
                        let mut parts = vec![self.small_nat()?];
                        while self.peek() == &Tok::Sym(',') {
                            self.bump();
                            parts.push(self.small_nat()?);
                        }
                        self.expect(']')?;
                        let lambda = Partition::new(&parts)
                            .map_err(|e| Error::Syntax { offset: at, message: e.to_string() })?;
                        Ok(GrClass::schur(ctx, lambda))
                    }
                    _ => Err(Error::UnknownSymbol { offset: at, symbol: name }),
                }
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

/// Parses and evaluates `text` in the Chow ring of `ctx`.
pub fn parse_class_expr(ctx: GrContext, text: &str) -> Result<GrClass> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser { ctx, toks, at: 0 };
    let value = p.expr()?;
    if p.peek() != &Tok::End {
        return Err(p.unexpected("`+`, `*` or end of input"));
    }
    Ok(value)
}
