//! Parser for formal polynomials such as `(x+y)^2 - 3/2*x^-1*y`.
//!
//! The result is an unreduced exponent-vector map; reduction against the
//! ring relations happens in `MonomialRing::normal_form`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::coeff::Rational;
use crate::error::{Error, Result};

pub type FormalPolynomial = BTreeMap<Vec<i64>, Rational>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => { out.push(Tok::Plus); i += 1 }
            '-' => { out.push(Tok::Minus); i += 1 }
            '*' => { out.push(Tok::Star); i += 1 }
            '/' => { out.push(Tok::Slash); i += 1 }
            '^' => { out.push(Tok::Caret); i += 1 }
            '(' => { out.push(Tok::LParen); i += 1 }
            ')' => { out.push(Tok::RParen); i += 1 }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Tok::Num(text.parse().expect("digits")));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}` in `{s}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    names: &'a dyn Fn(&str) -> Option<usize>,
    ngens: usize,
    src: &'a str,
}

fn mul(a: &FormalPolynomial, b: &FormalPolynomial) -> FormalPolynomial {
    let mut out = FormalPolynomial::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<i64> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(m).or_insert_with(Rational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn add_into(acc: &mut FormalPolynomial, b: &FormalPolynomial, sign: &Rational) {
    for (m, c) in b {
        *acc.entry(m.clone()).or_insert_with(Rational::zero) += c * sign;
    }
    acc.retain(|_, c| !c.is_zero());
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in `{}`", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn constant(&self, c: Rational) -> FormalPolynomial {
        let mut p = FormalPolynomial::new();
        if !c.is_zero() {
            p.insert(vec![0; self.ngens], c);
        }
        p
    }

    fn expr(&mut self) -> Result<FormalPolynomial> {
        let mut acc = FormalPolynomial::new();
        let mut sign = Rational::one();
        match self.peek() {
            Some(Tok::Plus) => { self.bump(); }
            Some(Tok::Minus) => { self.bump(); sign = -sign; }
            _ => {}
        }
        let t = self.term()?;
        add_into(&mut acc, &t, &sign);
        loop {
            match self.peek() {
                Some(Tok::Plus) => { self.bump(); sign = Rational::one(); }
                Some(Tok::Minus) => { self.bump(); sign = -Rational::one(); }
                _ => break,
            }
            let t = self.term()?;
            add_into(&mut acc, &t, &sign);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FormalPolynomial> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            let f = self.factor()?;
            acc = mul(&acc, &f);
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<Option<i64>> {
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let neg = if let Some(Tok::Minus) = self.peek() {
                self.bump();
                true
            } else {
                false
            };
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let k: i64 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(Some(if neg { -k } else { k }))
                }
                _ => Err(self.err("expected exponent")),
            }
        } else {
            Ok(None)
        }
    }

    fn factor(&mut self) -> Result<FormalPolynomial> {
        match self.bump() {
            Some(Tok::Num(n)) => {
                let mut q = Rational::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Num(d)) if !d.is_zero() => q /= Rational::from_integer(d),
                        _ => return Err(self.err("bad fraction")),
                    }
                }
                if let Some(k) = self.exponent()? {
                    if k < 0 {
                        return Err(self.err("negative power of a constant"));
                    }
                    q = num_traits::pow(q, k as usize);
                }
                Ok(self.constant(q))
            }
            Some(Tok::Ident(name)) => {
                let i = (self.names)(&name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                let k = self.exponent()?.unwrap_or(1);
                let mut e = vec![0; self.ngens];
                e[i] = k;
                let mut p = FormalPolynomial::new();
                p.insert(e, Rational::one());
                Ok(p)
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.bump() != Some(Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                let k = self.exponent()?.unwrap_or(1);
                if k < 0 {
                    return Err(self.err("negative power of a parenthesized expression"));
                }
                let mut acc = self.constant(Rational::one());
                for _ in 0..k {
                    acc = mul(&acc, &inner);
                }
                Ok(acc)
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

pub fn parse_formal(
    src: &str,
    ngens: usize,
    names: &dyn Fn(&str) -> Option<usize>,
) -> Result<FormalPolynomial> {
    let toks = tokenize(src)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0, names, ngens, src };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}
