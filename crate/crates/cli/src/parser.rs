//! The expression grammar: infix arithmetic with ^ powers, ' derivative marks
//! on y, the operator symbol D, zeta(N) constants, lambda torus monomials,
//! and w when a quadratic-extension modulus is declared.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::ToPrimitive;

use fano_core::diffop::{DiffOp, QuadDiffOp};
use fano_core::funcfield::{MoebiusMap, Poly, QuadExt, RatFunc, RationalMap};
use fano_core::groups::{HomogPoly, VarSet};
use fano_core::scalars::{Cyclotomic, Rational};
use fano_core::series::CoefficientPoly;

#[derive(Debug, Clone)]
pub struct ParseError {
    pub position: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at {}: expected {}, found {}",
            self.position, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

pub type PResult<T> = Result<T, ParseError>;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    /// y followed by this many primes
    Y(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn lex(text: &str) -> PResult<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let bytes: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            ',' => {
                out.push((i, Tok::Comma));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                out.push((start, Tok::Int(s.parse().unwrap())));
            }
            'y' if !(i + 1 < bytes.len() && bytes[i + 1].is_ascii_alphanumeric()) => {
                let start = i;
                i += 1;
                let mut primes = 0;
                while i < bytes.len() && bytes[i] == '\'' {
                    primes += 1;
                    i += 1;
                }
                out.push((start, Tok::Y(primes)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                let s: String = bytes[start..i].iter().collect();
                out.push((start, Tok::Ident(s)));
            }
            _ => {
                return Err(ParseError {
                    position: i,
                    expected: "a token".into(),
                    found: format!("'{}'", c),
                })
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub enum Expr {
    Int(BigInt),
    Ident(String),
    Y(usize),
    Call(String, Vec<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn found(&self) -> String {
        match self.peek() {
            None => "end of input".into(),
            Some(t) => format!("{:?}", t),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Tok, what: &str) -> PResult<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError {
                position: self.here(),
                expected: what.into(),
                found: self.found(),
            })
        }
    }

    fn expr(&mut self) -> PResult<Expr> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = Expr::Mul(Box::new(acc), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    acc = Expr::Div(Box::new(acc), Box::new(self.unary()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            // exponent: an integer, possibly negated or parenthesized
            let e = self.exponent()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(e)));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> PResult<Expr> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(Expr::Neg(Box::new(self.exponent()?)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(Tok::Int(_)) => {
                let Some(Tok::Int(n)) = self.bump() else { unreachable!() };
                Ok(Expr::Int(n))
            }
            _ => Err(ParseError {
                position: self.here(),
                expected: "an integer exponent".into(),
                found: self.found(),
            }),
        }
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Expr::Int(n)),
            Some(Tok::Y(k)) => Ok(Expr::Y(k)),
            Some(Tok::Ident(name)) => {
                if self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    let mut args = vec![self.expr()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        args.push(self.expr()?);
                    }
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expr::Call(name, args))
                } else {
                    Ok(Expr::Ident(name))
                }
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            other => Err(ParseError {
                position: self.here().saturating_sub(1),
                expected: "a value".into(),
                found: match other {
                    None => "end of input".into(),
                    Some(t) => format!("{:?}", t),
                },
            }),
        }
    }
}

pub fn parse_expr(text: &str) -> PResult<Expr> {
    let toks = lex(text)?;
    let end = text.len();
    let mut p = Parser { toks, pos: 0, end };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(ParseError {
            position: p.here(),
            expected: "end of input".into(),
            found: p.found(),
        });
    }
    Ok(e)
}

fn perr(msg: impl Into<String>) -> ParseError {
    ParseError { position: 0, expected: msg.into(), found: "expression".into() }
}

fn expr_to_int(e: &Expr) -> PResult<BigInt> {
    match e {
        Expr::Int(n) => Ok(n.clone()),
        Expr::Neg(inner) => Ok(-expr_to_int(inner)?),
        _ => Err(perr("an integer")),
    }
}

/// Evaluate a variable-free expression to an exact cyclotomic constant.
pub fn eval_constant(e: &Expr) -> PResult<Cyclotomic> {
    match e {
        Expr::Int(n) => Ok(Cyclotomic::from_rational(Rational::from_integer(n.clone()))),
        Expr::Call(name, args) if name == "zeta" && args.len() == 1 => {
            let n = expr_to_int(&args[0])?
                .to_u32()
                .ok_or_else(|| perr("a positive zeta order"))?;
            Cyclotomic::zeta(n).map_err(|err| perr(format!("valid zeta order: {}", err)))
        }
        Expr::Neg(a) => Ok(-&eval_constant(a)?),
        Expr::Add(a, b) => Ok(&eval_constant(a)? + &eval_constant(b)?),
        Expr::Sub(a, b) => Ok(&eval_constant(a)? - &eval_constant(b)?),
        Expr::Mul(a, b) => Ok(&eval_constant(a)? * &eval_constant(b)?),
        Expr::Div(a, b) => eval_constant(a)?
            .checked_div(&eval_constant(b)?)
            .map_err(|err| perr(format!("nonzero divisor: {}", err))),
        Expr::Pow(a, b) => {
            let base = eval_constant(a)?;
            let e = expr_to_int(b)?.to_i64().ok_or_else(|| perr("a small exponent"))?;
            base.pow(e).map_err(|err| perr(format!("valid power: {}", err)))
        }
        _ => Err(perr("a constant expression")),
    }
}

/// Evaluate an expression in one function variable to a rational function.
pub fn eval_ratfunc(e: &Expr, var: &str) -> PResult<RatFunc> {
    match e {
        Expr::Int(_) | Expr::Call(..) => Ok(RatFunc::constant(eval_constant(e)?)),
        Expr::Ident(name) if name == var => Ok(RatFunc::var()),
        Expr::Ident(name) => Err(perr(format!("the variable {} (found {})", var, name))),
        Expr::Y(_) => Err(perr("no y in a rational function")),
        Expr::Neg(a) => Ok(eval_ratfunc(a, var)?.neg()),
        Expr::Add(a, b) => Ok(eval_ratfunc(a, var)?.add(&eval_ratfunc(b, var)?)),
        Expr::Sub(a, b) => Ok(eval_ratfunc(a, var)?.sub(&eval_ratfunc(b, var)?)),
        Expr::Mul(a, b) => Ok(eval_ratfunc(a, var)?.mul(&eval_ratfunc(b, var)?)),
        Expr::Div(a, b) => eval_ratfunc(a, var)?
            .div(&eval_ratfunc(b, var)?)
            .map_err(|err| perr(format!("nonzero denominator: {}", err))),
        Expr::Pow(a, b) => {
            let base = eval_ratfunc(a, var)?;
            let e = expr_to_int(b)?.to_i64().ok_or_else(|| perr("a small exponent"))?;
            base.pow(e).map_err(|err| perr(format!("valid power: {}", err)))
        }
    }
}

/// Evaluate with the extension generator w, w^2 = modulus.
pub fn eval_quadext(e: &Expr, var: &str, modulus: &Arc<Poly>) -> PResult<QuadExt> {
    let rational = |f: RatFunc| QuadExt::from_ratfunc(f, modulus.clone());
    match e {
        Expr::Ident(name) if name == "w" => Ok(QuadExt::w(modulus.clone())),
        Expr::Int(_) | Expr::Call(..) | Expr::Ident(_) => {
            Ok(rational(eval_ratfunc(e, var)?))
        }
        Expr::Y(_) => Err(perr("no y in a field element")),
        Expr::Neg(a) => Ok(eval_quadext(a, var, modulus)?.neg()),
        Expr::Add(a, b) => eval_quadext(a, var, modulus)?
            .add(&eval_quadext(b, var, modulus)?)
            .map_err(|err| perr(err.to_string())),
        Expr::Sub(a, b) => eval_quadext(a, var, modulus)?
            .sub(&eval_quadext(b, var, modulus)?)
            .map_err(|err| perr(err.to_string())),
        Expr::Mul(a, b) => eval_quadext(a, var, modulus)?
            .mul(&eval_quadext(b, var, modulus)?)
            .map_err(|err| perr(err.to_string())),
        Expr::Div(a, b) => eval_quadext(a, var, modulus)?
            .div(&eval_quadext(b, var, modulus)?)
            .map_err(|err| perr(err.to_string())),
        Expr::Pow(a, b) => {
            let base = eval_quadext(a, var, modulus)?;
            let e = expr_to_int(b)?.to_i64().ok_or_else(|| perr("a small exponent"))?;
            if e < 0 {
                let inv = base.inv().map_err(|err| perr(err.to_string()))?;
                let mut acc = QuadExt::one(modulus.clone());
                for _ in 0..(-e) {
                    acc = acc.mul(&inv).map_err(|err| perr(err.to_string()))?;
                }
                Ok(acc)
            } else {
                let mut acc = QuadExt::one(modulus.clone());
                for _ in 0..e {
                    acc = acc.mul(&base).map_err(|err| perr(err.to_string()))?;
                }
                Ok(acc)
            }
        }
    }
}

/// Linear form over y-derivatives or D-powers: coefficient vector by order.
fn eval_operator_form(e: &Expr, var: &str) -> PResult<(Vec<RatFunc>, bool)> {
    // returns (coefficients, contains_op); scalars come back as degree-0 with
    // contains_op = false
    let scalarize = |v: &(Vec<RatFunc>, bool)| -> Option<RatFunc> {
        if v.1 {
            None
        } else {
            Some(v.0.first().cloned().unwrap_or_else(RatFunc::zero))
        }
    };
    match e {
        Expr::Y(k) => {
            let mut v = vec![RatFunc::zero(); k + 1];
            v[*k] = RatFunc::one();
            Ok((v, true))
        }
        Expr::Ident(name) if name == "D" => {
            Ok((vec![RatFunc::zero(), RatFunc::one()], true))
        }
        Expr::Pow(a, b) => {
            if let Expr::Ident(name) = a.as_ref() {
                if name == "D" {
                    let k = expr_to_int(b)?
                        .to_usize()
                        .ok_or_else(|| perr("a nonnegative D power"))?;
                    let mut v = vec![RatFunc::zero(); k + 1];
                    v[k] = RatFunc::one();
                    return Ok((v, true));
                }
            }
            Ok((vec![eval_ratfunc(e, var)?], false))
        }
        Expr::Neg(a) => {
            let (v, f) = eval_operator_form(a, var)?;
            Ok((v.iter().map(|c| c.neg()).collect(), f))
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (va, fa) = eval_operator_form(a, var)?;
            let (mut vb, fb) = eval_operator_form(b, var)?;
            if matches!(e, Expr::Sub(..)) {
                vb = vb.iter().map(|c| c.neg()).collect();
            }
            let n = va.len().max(vb.len());
            let mut out = vec![RatFunc::zero(); n];
            for (k, c) in va.iter().enumerate() {
                out[k] = out[k].add(c);
            }
            for (k, c) in vb.iter().enumerate() {
                out[k] = out[k].add(c);
            }
            Ok((out, fa || fb))
        }
        Expr::Mul(a, b) => {
            let va = eval_operator_form(a, var)?;
            let vb = eval_operator_form(b, var)?;
            match (scalarize(&va), scalarize(&vb)) {
                (Some(sa), _) => Ok((vb.0.iter().map(|c| sa.mul(c)).collect(), vb.1)),
                (None, Some(sb)) => Ok((va.0.iter().map(|c| sb.mul(c)).collect(), va.1)),
                (None, None) => Err(perr("at most one operator factor per product")),
            }
        }
        Expr::Div(a, b) => {
            let va = eval_operator_form(a, var)?;
            let (vb, fb) = eval_operator_form(b, var)?;
            if fb {
                return Err(perr("no division by operators"));
            }
            let sb = vb.first().cloned().unwrap_or_else(RatFunc::zero);
            let inv = sb.inv().map_err(|err| perr(err.to_string()))?;
            Ok((va.0.iter().map(|c| c.mul(&inv)).collect(), va.1))
        }
        _ => Ok((vec![eval_ratfunc(e, var)?], false)),
    }
}

/// Parse differential-operator text: either y-primes form or D-power form.
pub fn eval_operator(e: &Expr, var: &str) -> PResult<DiffOp> {
    let (coeffs, has_op) = eval_operator_form(e, var)?;
    if !has_op {
        return Err(perr("an operator (y or D must appear)"));
    }
    Ok(DiffOp::new(coeffs))
}

/// Same, with quadratic-extension coefficients; D denotes the declared
/// derivation v = direction * d/dz.
pub fn eval_quad_operator(
    e: &Expr,
    var: &str,
    modulus: &Arc<Poly>,
    direction: QuadExt,
) -> PResult<QuadDiffOp> {
    fn form(
        e: &Expr,
        var: &str,
        modulus: &Arc<Poly>,
    ) -> PResult<(Vec<QuadExt>, bool)> {
        let zero = || QuadExt::zero(modulus.clone());
        match e {
            Expr::Y(k) => {
                let mut v = vec![zero(); k + 1];
                v[*k] = QuadExt::one(modulus.clone());
                Ok((v, true))
            }
            Expr::Ident(name) if name == "D" => {
                Ok((vec![zero(), QuadExt::one(modulus.clone())], true))
            }
            Expr::Pow(a, b) => {
                if let Expr::Ident(name) = a.as_ref() {
                    if name == "D" {
                        let k = expr_to_int(b)?
                            .to_usize()
                            .ok_or_else(|| perr("a nonnegative D power"))?;
                        let mut v = vec![zero(); k + 1];
                        v[k] = QuadExt::one(modulus.clone());
                        return Ok((v, true));
                    }
                }
                Ok((vec![eval_quadext(e, var, modulus)?], false))
            }
            Expr::Neg(a) => {
                let (v, f) = form(a, var, modulus)?;
                Ok((v.iter().map(|c| c.neg()).collect(), f))
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let (va, fa) = form(a, var, modulus)?;
                let (vb, fb) = form(b, var, modulus)?;
                let n = va.len().max(vb.len());
                let mut out = vec![QuadExt::zero(modulus.clone()); n];
                for (k, c) in va.iter().enumerate() {
                    out[k] = out[k].add(c).map_err(|err| perr(err.to_string()))?;
                }
                for (k, c) in vb.iter().enumerate() {
                    let c = if matches!(e, Expr::Sub(..)) { c.neg() } else { c.clone() };
                    out[k] = out[k].add(&c).map_err(|err| perr(err.to_string()))?;
                }
                Ok((out, fa || fb))
            }
            Expr::Mul(a, b) => {
                let (va, fa) = form(a, var, modulus)?;
                let (vb, fb) = form(b, var, modulus)?;
                match (fa, fb) {
                    (false, _) => {
                        let s = va.first().cloned().unwrap_or_else(|| QuadExt::zero(modulus.clone()));
                        let out: Result<Vec<_>, _> = vb.iter().map(|c| s.mul(c)).collect();
                        Ok((out.map_err(|err| perr(err.to_string()))?, fb))
                    }
                    (true, false) => {
                        let s = vb.first().cloned().unwrap_or_else(|| QuadExt::zero(modulus.clone()));
                        let out: Result<Vec<_>, _> = va.iter().map(|c| s.mul(c)).collect();
                        Ok((out.map_err(|err| perr(err.to_string()))?, fa))
                    }
                    _ => Err(perr("at most one operator factor per product")),
                }
            }
            Expr::Div(a, b) => {
                let (va, fa) = form(a, var, modulus)?;
                let (vb, fb) = form(b, var, modulus)?;
                if fb {
                    return Err(perr("no division by operators"));
                }
                let s = vb.first().cloned().unwrap_or_else(|| QuadExt::zero(modulus.clone()));
                let inv = s.inv().map_err(|err| perr(err.to_string()))?;
                let out: Result<Vec<_>, _> = va.iter().map(|c| c.mul(&inv)).collect();
                Ok((out.map_err(|err| perr(err.to_string()))?, fa))
            }
            _ => Ok((vec![eval_quadext(e, var, modulus)?], false)),
        }
    }
    let (coeffs, has_op) = form(e, var, modulus)?;
    if !has_op {
        return Err(perr("an operator (y or D must appear)"));
    }
    QuadDiffOp::new(coeffs, direction).map_err(|err| perr(err.to_string()))
}

/// Multivariate polynomial in matrix variables Xij (exactly two digits) or
/// named labels, with rational-function coefficients in `var`.
pub struct ParsedPoly {
    pub vars: VarSet,
    pub terms: BTreeMap<Vec<u16>, RatFunc>,
}

impl ParsedPoly {
    /// Constant-coefficient view, when every coefficient is constant.
    pub fn as_homog(&self) -> Option<HomogPoly> {
        let mut p = HomogPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            let cc = c.as_constant()?;
            p = p
                .add(&HomogPoly::monomial(self.vars.clone(), e.clone(), cc))
                .ok()?;
        }
        Some(p)
    }

    pub fn as_coefficient_poly(&self) -> CoefficientPoly {
        CoefficientPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    (
                        c.clone(),
                        HomogPoly::monomial(self.vars.clone(), e.clone(), Cyclotomic::one()),
                    )
                })
                .collect(),
        }
    }
}

fn var_index(vars: &VarSet, name: &str) -> Option<usize> {
    match vars {
        VarSet::Matrix(n) => {
            let b = name.as_bytes();
            if b.len() == 3 && b[0] == b'X' && b[1].is_ascii_digit() && b[2].is_ascii_digit() {
                let i = (b[1] - b'0') as usize;
                let j = (b[2] - b'0') as usize;
                if (1..=*n).contains(&i) && (1..=*n).contains(&j) {
                    return Some((i - 1) * n + (j - 1));
                }
            }
            None
        }
        VarSet::Named(labels) => labels.iter().position(|l| l == name),
    }
}

pub fn eval_poly(e: &Expr, vars: &VarSet, var: &str) -> PResult<ParsedPoly> {
    type Terms = BTreeMap<Vec<u16>, RatFunc>;
    fn constant(vars: &VarSet, c: RatFunc) -> Terms {
        let mut t = Terms::new();
        if !c.is_zero() {
            t.insert(vec![0; vars.len()], c);
        }
        t
    }
    fn add(a: &Terms, b: &Terms) -> Terms {
        let mut out = a.clone();
        for (e, c) in b {
            let entry = out.entry(e.clone()).or_insert_with(RatFunc::zero);
            *entry = entry.add(c);
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
    fn mul(a: &Terms, b: &Terms) -> Terms {
        let mut out = Terms::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<u16> = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let c = ca.mul(cb);
                let entry = out.entry(e).or_insert_with(RatFunc::zero);
                *entry = entry.add(&c);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
    fn go(e: &Expr, vars: &VarSet, var: &str) -> PResult<Terms> {
        match e {
            Expr::Ident(name) => {
                if let Some(idx) = var_index(vars, name) {
                    let mut exps = vec![0u16; vars.len()];
                    exps[idx] = 1;
                    let mut t = Terms::new();
                    t.insert(exps, RatFunc::one());
                    Ok(t)
                } else {
                    Ok(constant(vars, eval_ratfunc(e, var)?))
                }
            }
            Expr::Int(_) | Expr::Call(..) => Ok(constant(vars, eval_ratfunc(e, var)?)),
            Expr::Y(_) => Err(perr("no y in a polynomial")),
            Expr::Neg(a) => {
                let t = go(a, vars, var)?;
                Ok(t.into_iter().map(|(e, c)| (e, c.neg())).collect())
            }
            Expr::Add(a, b) => Ok(add(&go(a, vars, var)?, &go(b, vars, var)?)),
            Expr::Sub(a, b) => {
                let nb: Terms = go(b, vars, var)?
                    .into_iter()
                    .map(|(e, c)| (e, c.neg()))
                    .collect();
                Ok(add(&go(a, vars, var)?, &nb))
            }
            Expr::Mul(a, b) => Ok(mul(&go(a, vars, var)?, &go(b, vars, var)?)),
            Expr::Div(a, b) => {
                let tb = go(b, vars, var)?;
                if tb.len() != 1 || !tb.keys().next().unwrap().iter().all(|&x| x == 0) {
                    return Err(perr("division only by variable-free values"));
                }
                let c = tb.values().next().unwrap().clone();
                let inv = c.inv().map_err(|err| perr(err.to_string()))?;
                let ta = go(a, vars, var)?;
                Ok(ta.into_iter().map(|(e, x)| (e, x.mul(&inv))).collect())
            }
            Expr::Pow(a, b) => {
                let k = expr_to_int(b)?
                    .to_u32()
                    .ok_or_else(|| perr("a nonnegative power"))?;
                let ta = go(a, vars, var)?;
                let mut acc = constant(vars, RatFunc::one());
                for _ in 0..k {
                    acc = mul(&acc, &ta);
                }
                Ok(acc)
            }
        }
    }
    let terms = go(e, vars, var)?;
    Ok(ParsedPoly { vars: vars.clone(), terms })
}

/// Parse a rational map (or a Moebius map when the degree is one).
pub fn eval_map(e: &Expr, var: &str) -> PResult<RationalMap> {
    let f = eval_ratfunc(e, var)?;
    RationalMap::new(f).map_err(|err| perr(err.to_string()))
}

pub fn eval_moebius(e: &Expr, var: &str) -> PResult<MoebiusMap> {
    let f = eval_ratfunc(e, var)?;
    MoebiusMap::from_ratfunc(&f).map_err(|err| perr(err.to_string()))
}

/// Convenience wrappers from text.
pub fn parse_constant(text: &str) -> PResult<Cyclotomic> {
    eval_constant(&parse_expr(text)?)
}

pub fn parse_ratfunc(text: &str, var: &str) -> PResult<RatFunc> {
    eval_ratfunc(&parse_expr(text)?, var)
}

pub fn parse_operator(text: &str, var: &str) -> PResult<DiffOp> {
    eval_operator(&parse_expr(text)?, var)
}

pub fn parse_quadext(text: &str, var: &str, modulus: &Arc<Poly>) -> PResult<QuadExt> {
    eval_quadext(&parse_expr(text)?, var, modulus)
}

pub fn parse_quad_operator(
    text: &str,
    var: &str,
    modulus: &Arc<Poly>,
    direction: QuadExt,
) -> PResult<QuadDiffOp> {
    eval_quad_operator(&parse_expr(text)?, var, modulus, direction)
}

pub fn parse_poly(text: &str, vars: &VarSet, var: &str) -> PResult<ParsedPoly> {
    eval_poly(&parse_expr(text)?, vars, var)
}

pub fn parse_map(text: &str, var: &str) -> PResult<RationalMap> {
    eval_map(&parse_expr(text)?, var)
}

pub fn parse_moebius(text: &str, var: &str) -> PResult<MoebiusMap> {
    eval_moebius(&parse_expr(text)?, var)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fano_core::funcfield::Poly;

    #[test]
    fn parses_the_second_order_equation() {
        let l = parse_operator("y'' - (z^4 - 3*z^2 - 1)/(1 + z^4)*y", "z").unwrap();
        assert_eq!(l.order(), 2);
        let c0 = l.coeff(0);
        assert_eq!(
            c0,
            RatFunc::new(
                Poly::from_ints(&[1, 0, 3, 0, -1]),
                Poly::from_ints(&[1, 0, 0, 0, 1])
            )
        );
        assert!(l.coeff(1).is_zero());
        assert!(l.coeff(2).is_one());
    }

    #[test]
    fn parses_bare_derivation() {
        let l = parse_operator("D", "z").unwrap();
        assert_eq!(l, DiffOp::derivation());
    }

    #[test]
    fn rejects_double_plus() {
        assert!(parse_operator("y'' + + y", "z").is_err());
    }

    #[test]
    fn parses_constants() {
        assert_eq!(parse_constant("3/4").unwrap(),
            Cyclotomic::from_rational(fano_core::scalars::rat(3, 4)));
        let i = parse_constant("zeta(4)").unwrap();
        assert_eq!(&i * &i, Cyclotomic::from_int(-1));
        let z = parse_constant("zeta(8)^2 + 1").unwrap();
        assert_eq!(z, &i + &Cyclotomic::one());
    }

    #[test]
    fn parses_matrix_polynomials() {
        let vars = VarSet::Matrix(2);
        let p = parse_poly("z*X11 - X22", &vars, "z").unwrap();
        assert_eq!(p.terms.len(), 2);
        assert!(p.as_homog().is_none()); // coefficient z is not constant
        let q = parse_poly("X11*X22 - X12*X21", &vars, "z").unwrap();
        assert!(q.as_homog().is_some());
    }

    #[test]
    fn parses_maps() {
        let m = parse_moebius("(x+1)/(x-1)", "x").unwrap();
        assert!(!m.is_identity());
        let r = parse_map("(x^2+1)^4/(16*x^2*(x+1)^2*(x-1)^2)", "x").unwrap();
        assert_eq!(r.degree(), 8);
    }

    #[test]
    fn quad_operator_parses() {
        let modulus = Arc::new(Poly::from_ints(&[0, -1, 0, 1]));
        let v = QuadExt::new(RatFunc::zero(), RatFunc::from_int(2), modulus.clone());
        let l = parse_quad_operator("D^3 - (3*(5*z^2 - 3)/w)*D^2", "z", &modulus, v).unwrap();
        assert_eq!(l.order(), 3);
    }
}
