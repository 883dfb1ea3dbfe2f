//! A small formula language for mean expressions and the duality rewrite
//! that swaps addition with multiplication, division-by-n with n-th root,
//! and power-by-x with scale-by-x.
//!
//! The rewrite is defined on the syntax tree, not on the function it
//! denotes: two formulas for the same function may have different duals,
//! and surfacing that is the point of keeping it syntactic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::MeanError;
use crate::mean::{GeneratorFunction, MeanFunction};
use crate::real::Real;
use crate::tuple::{Arity, DomainBox, RealTuple};

#[derive(Clone, Debug, PartialEq)]
pub enum MeanExpr {
    /// 1-based variable `a1` .. `a9`.
    Var(usize),
    Const(BigRational),
    Add(Vec<MeanExpr>),
    Mul(Vec<MeanExpr>),
    DivN(Box<MeanExpr>, u32),
    RootN(Box<MeanExpr>, u32),
    PowX(Box<MeanExpr>, BigRational),
    ScaleX(Box<MeanExpr>, BigRational),
}

impl MeanExpr {
    pub fn var(i: usize) -> Self {
        MeanExpr::Var(i)
    }

    pub fn int(v: i64) -> Self {
        MeanExpr::Const(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        MeanExpr::Const(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Highest variable index; variables must be contiguous from 1.
    pub fn arity(&self) -> usize {
        let mut seen = [false; 10];
        collect_vars(self, &mut seen);
        (1..10).rev().find(|i| seen[*i]).unwrap_or(0)
    }
}

fn collect_vars(e: &MeanExpr, seen: &mut [bool; 10]) {
    match e {
        MeanExpr::Var(i) => {
            if *i < 10 {
                seen[*i] = true;
            }
        }
        MeanExpr::Const(_) => {}
        MeanExpr::Add(es) | MeanExpr::Mul(es) => es.iter().for_each(|c| collect_vars(c, seen)),
        MeanExpr::DivN(c, _) | MeanExpr::RootN(c, _) => collect_vars(c, seen),
        MeanExpr::PowX(c, _) | MeanExpr::ScaleX(c, _) => collect_vars(c, seen),
    }
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Plus,
    Star,
    Slash,
    LParen,
    RParen,
    Comma,
    Int(BigInt),
    Var(usize),
    Word(String),
}

struct Lexer {
    tokens: Vec<(usize, Token)>,
}

fn lex(text: &str) -> Result<Lexer, MeanError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0usize;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                tokens.push((i, Token::Plus));
                i += 1;
            }
            '*' => {
                tokens.push((i, Token::Star));
                i += 1;
            }
            '/' => {
                tokens.push((i, Token::Slash));
                i += 1;
            }
            '(' => {
                tokens.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                tokens.push((i, Token::RParen));
                i += 1;
            }
            ',' => {
                tokens.push((i, Token::Comma));
                i += 1;
            }
            '-' | '0'..='9' => {
                let start = i;
                if c == '-' {
                    i += 1;
                    if i >= bytes.len() || !(bytes[i] as char).is_ascii_digit() {
                        return Err(MeanError::Parse {
                            position: start,
                            message: "expected digits after minus sign".into(),
                        });
                    }
                }
                while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().map_err(|_| MeanError::Parse {
                    position: start,
                    message: "invalid integer".into(),
                })?;
                tokens.push((start, Token::Int(n)));
            }
            'a' if i + 1 < bytes.len() && (bytes[i + 1] as char).is_ascii_digit() => {
                let d = (bytes[i + 1] as char).to_digit(10).unwrap() as usize;
                if d == 0 {
                    return Err(MeanError::Parse {
                        position: i,
                        message: "variables are a1 through a9".into(),
                    });
                }
                tokens.push((i, Token::Var(d)));
                i += 2;
            }
            'a'..='z' => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphabetic() {
                    i += 1;
                }
                tokens.push((start, Token::Word(text[start..i].to_string())));
            }
            other => {
                return Err(MeanError::Parse {
                    position: i,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(Lexer { tokens })
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Token, what: &str) -> Result<(), MeanError> {
        let pos = self.here();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(MeanError::Parse {
                position: pos,
                message: format!("expected {what}"),
            }),
        }
    }

    fn parse_expr(&mut self) -> Result<MeanExpr, MeanError> {
        let mut terms = vec![self.parse_term()?];
        while self.peek() == Some(&Token::Plus) {
            self.bump();
            terms.push(self.parse_term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            MeanExpr::Add(terms)
        })
    }

    fn parse_term(&mut self) -> Result<MeanExpr, MeanError> {
        let mut factors = vec![self.parse_factor()?];
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    factors.push(self.parse_factor()?);
                }
                Some(Token::Slash) => {
                    let pos = self.here();
                    self.bump();
                    let n = self.parse_positive_int(pos)?;
                    let inner = if factors.len() == 1 {
                        factors.pop().unwrap()
                    } else {
                        MeanExpr::Mul(std::mem::take(&mut factors))
                    };
                    factors.push(MeanExpr::DivN(Box::new(inner), n));
                }
                _ => break,
            }
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            MeanExpr::Mul(factors)
        })
    }

    fn parse_positive_int(&mut self, at: usize) -> Result<u32, MeanError> {
        match self.bump() {
            Some(Token::Int(n)) if n.is_positive() => n.to_u32().ok_or(MeanError::Parse {
                position: at,
                message: "index too large".into(),
            }),
            _ => Err(MeanError::Parse {
                position: at,
                message: "expected a positive integer".into(),
            }),
        }
    }

    fn parse_rational(&mut self) -> Result<BigRational, MeanError> {
        let pos = self.here();
        match self.bump() {
            Some(Token::Int(p)) => {
                if self.peek() == Some(&Token::Slash) {
                    self.bump();
                    let qpos = self.here();
                    match self.bump() {
                        Some(Token::Int(q)) if !q.is_zero() => Ok(BigRational::new(p, q)),
                        _ => Err(MeanError::Parse {
                            position: qpos,
                            message: "expected a nonzero denominator".into(),
                        }),
                    }
                } else {
                    Ok(BigRational::from_integer(p))
                }
            }
            _ => Err(MeanError::Parse {
                position: pos,
                message: "expected a number".into(),
            }),
        }
    }

    fn parse_factor(&mut self) -> Result<MeanExpr, MeanError> {
        let pos = self.here();
        match self.bump() {
            Some(Token::Int(p)) => {
                // A bare p/q numeral is a rational constant; any other
                // division is DivN and handled at term level.
                if self.peek() == Some(&Token::Slash) {
                    if let Some((_, Token::Int(_))) = self.tokens.get(self.pos + 1) {
                        self.bump();
                        let q = match self.bump() {
                            Some(Token::Int(q)) if !q.is_zero() => q,
                            _ => {
                                return Err(MeanError::Parse {
                                    position: pos,
                                    message: "zero denominator".into(),
                                })
                            }
                        };
                        return Ok(MeanExpr::Const(BigRational::new(p, q)));
                    }
                }
                Ok(MeanExpr::Const(BigRational::from_integer(p)))
            }
            Some(Token::Var(i)) => Ok(MeanExpr::Var(i)),
            Some(Token::LParen) => {
                let e = self.parse_expr()?;
                self.expect(Token::RParen, ")")?;
                Ok(e)
            }
            Some(Token::Word(w)) => match w.as_str() {
                "root" => {
                    self.expect(Token::LParen, "(")?;
                    let at = self.here();
                    let n = self.parse_positive_int(at)?;
                    self.expect(Token::Comma, ",")?;
                    let e = self.parse_expr()?;
                    self.expect(Token::RParen, ")")?;
                    Ok(MeanExpr::RootN(Box::new(e), n))
                }
                "pow" | "scale" => {
                    self.expect(Token::LParen, "(")?;
                    let x = self.parse_rational()?;
                    self.expect(Token::Comma, ",")?;
                    let e = self.parse_expr()?;
                    self.expect(Token::RParen, ")")?;
                    Ok(if w == "pow" {
                        MeanExpr::PowX(Box::new(e), x)
                    } else {
                        MeanExpr::ScaleX(Box::new(e), x)
                    })
                }
                other => Err(MeanError::Parse {
                    position: pos,
                    message: format!("unknown operator {other:?}; no dual is defined for it"),
                }),
            },
            _ => Err(MeanError::Parse {
                position: pos,
                message: "expected a factor".into(),
            }),
        }
    }
}

pub fn parse(text: &str) -> Result<MeanExpr, MeanError> {
    let lexer = lex(text)?;
    let mut p = Parser {
        tokens: lexer.tokens,
        pos: 0,
        end: text.len(),
    };
    let e = p.parse_expr()?;
    if p.pos != p.tokens.len() {
        return Err(MeanError::Parse {
            position: p.here(),
            message: "trailing input".into(),
        });
    }
    let mut seen = [false; 10];
    collect_vars(&e, &mut seen);
    let max = e.arity();
    if let Some(i) = (1..=max).find(|i| !seen[*i]) {
        return Err(MeanError::Parse {
            position: 0,
            message: format!("variables must be contiguous from a1; a{i} is missing"),
        });
    }
    Ok(e)
}

// ---------------------------------------------------------------------------
// Render, evaluate, dualize, simplify
// ---------------------------------------------------------------------------

fn render_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

// A constant child must be wrapped too: `3 / 5` would re-parse as the
// rational numeral 3/5 rather than as division.
fn needs_parens(e: &MeanExpr) -> bool {
    matches!(
        e,
        MeanExpr::Add(_) | MeanExpr::Mul(_) | MeanExpr::DivN(..) | MeanExpr::Const(_)
    )
}

/// Parseable text form; `parse(render(e))` reproduces the tree.
pub fn render(e: &MeanExpr) -> String {
    match e {
        MeanExpr::Var(i) => format!("a{i}"),
        MeanExpr::Const(r) => render_rational(r),
        MeanExpr::Add(es) => {
            let parts: Vec<String> = es.iter().map(render_wrapped).collect();
            parts.join(" + ")
        }
        MeanExpr::Mul(es) => {
            let parts: Vec<String> = es
                .iter()
                .map(|c| {
                    if matches!(c, MeanExpr::Add(_) | MeanExpr::Mul(_) | MeanExpr::DivN(..)) {
                        format!("({})", render(c))
                    } else {
                        render(c)
                    }
                })
                .collect();
            parts.join(" * ")
        }
        MeanExpr::DivN(c, n) => {
            if needs_parens(c) {
                format!("({}) / {n}", render(c))
            } else {
                format!("{} / {n}", render(c))
            }
        }
        MeanExpr::RootN(c, n) => format!("root({n}, {})", render(c)),
        MeanExpr::PowX(c, x) => format!("pow({}, {})", render_rational(x), render(c)),
        MeanExpr::ScaleX(c, x) => format!("scale({}, {})", render_rational(x), render(c)),
    }
}

fn render_wrapped(e: &MeanExpr) -> String {
    if matches!(e, MeanExpr::Add(_)) {
        format!("({})", render(e))
    } else {
        render(e)
    }
}

pub fn evaluate(e: &MeanExpr, xs: &[f64]) -> Result<f64, MeanError> {
    match e {
        MeanExpr::Var(i) => xs.get(i - 1).copied().ok_or(MeanError::Arity {
            expected: format!("at least {i}"),
            got: xs.len(),
        }),
        MeanExpr::Const(r) => Ok(r.to_f64().unwrap_or(f64::NAN)),
        MeanExpr::Add(es) => es.iter().map(|c| evaluate(c, xs)).sum(),
        MeanExpr::Mul(es) => es.iter().map(|c| evaluate(c, xs)).product(),
        MeanExpr::DivN(c, n) => Ok(evaluate(c, xs)? / *n as f64),
        MeanExpr::RootN(c, n) => {
            let v = evaluate(c, xs)?;
            if v < 0.0 {
                return Err(MeanError::Domain(format!(
                    "root({n}, .) of a negative value"
                )));
            }
            Ok(v.powf(1.0 / *n as f64))
        }
        MeanExpr::PowX(c, x) => {
            let v = evaluate(c, xs)?;
            let xf = x.to_f64().unwrap_or(f64::NAN);
            if v < 0.0 && !x.denom().is_one() {
                return Err(MeanError::Domain(
                    "fractional power of a negative value".into(),
                ));
            }
            if v < 0.0 {
                Ok(v.powi(x.numer().to_i32().unwrap_or(0)))
            } else {
                Ok(v.powf(xf))
            }
        }
        MeanExpr::ScaleX(c, x) => Ok(evaluate(c, xs)? * x.to_f64().unwrap_or(f64::NAN)),
    }
}

pub fn evaluate_tuple(e: &MeanExpr, t: &RealTuple) -> Result<f64, MeanError> {
    evaluate(e, &t.to_f64_vec())
}

/// The structural duality rewrite: addition with multiplication, division
/// by n with the n-th root, power by x with scaling by x. An involution.
pub fn dualize(e: &MeanExpr) -> MeanExpr {
    match e {
        MeanExpr::Var(i) => MeanExpr::Var(*i),
        MeanExpr::Const(r) => MeanExpr::Const(r.clone()),
        MeanExpr::Add(es) => MeanExpr::Mul(es.iter().map(dualize).collect()),
        MeanExpr::Mul(es) => MeanExpr::Add(es.iter().map(dualize).collect()),
        MeanExpr::DivN(c, n) => MeanExpr::RootN(Box::new(dualize(c)), *n),
        MeanExpr::RootN(c, n) => MeanExpr::DivN(Box::new(dualize(c)), *n),
        MeanExpr::PowX(c, x) => MeanExpr::ScaleX(Box::new(dualize(c)), x.clone()),
        MeanExpr::ScaleX(c, x) => MeanExpr::PowX(Box::new(dualize(c)), x.clone()),
    }
}

/// Exact rational n-th root, when one exists.
fn rational_nth_root(r: &BigRational, n: u32) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let num = integer_nth_root(r.numer(), n)?;
    let den = integer_nth_root(r.denom(), n)?;
    Some(BigRational::new(num, den))
}

fn integer_nth_root(v: &BigInt, n: u32) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    if v.is_zero() || v.is_one() {
        return Some(v.clone());
    }
    let mut lo = BigInt::one();
    let mut hi = v.clone();
    while lo <= hi {
        let mid: BigInt = (&lo + &hi) / 2;
        let p = mid.pow(n);
        match p.cmp(v) {
            std::cmp::Ordering::Equal => return Some(mid),
            std::cmp::Ordering::Less => lo = mid + 1,
            std::cmp::Ordering::Greater => hi = mid - 1,
        }
    }
    None
}

fn pow_rational(r: &BigRational, k: &BigInt) -> Option<BigRational> {
    let e = k.to_i32()?;
    if e.unsigned_abs() > 64 {
        return None;
    }
    let p = BigRational::new(
        r.numer().pow(e.unsigned_abs()),
        r.denom().pow(e.unsigned_abs()),
    );
    if e < 0 {
        if p.is_zero() {
            None
        } else {
            Some(p.recip())
        }
    } else {
        Some(p)
    }
}

fn simplify_once(e: &MeanExpr) -> MeanExpr {
    match e {
        MeanExpr::Var(_) | MeanExpr::Const(_) => e.clone(),
        MeanExpr::Add(es) => {
            let mut flat: Vec<MeanExpr> = Vec::new();
            let mut constant = BigRational::zero();
            let mut saw_const = false;
            for c in es {
                let s = simplify_once(c);
                match s {
                    MeanExpr::Add(inner) => flat.extend(inner),
                    MeanExpr::Const(v) => {
                        constant += v;
                        saw_const = true;
                    }
                    other => flat.push(other),
                }
            }
            if saw_const && (!constant.is_zero() || flat.is_empty()) {
                flat.push(MeanExpr::Const(constant));
            }
            match flat.len() {
                0 => MeanExpr::Const(BigRational::zero()),
                1 => flat.pop().unwrap(),
                _ => MeanExpr::Add(flat),
            }
        }
        MeanExpr::Mul(es) => {
            let mut flat: Vec<MeanExpr> = Vec::new();
            let mut scalar = BigRational::one();
            for c in es {
                let s = simplify_once(c);
                match s {
                    MeanExpr::Mul(inner) => {
                        for i in inner {
                            match i {
                                MeanExpr::Const(v) => scalar *= v,
                                MeanExpr::ScaleX(b, x) => {
                                    scalar *= x;
                                    flat.push(*b);
                                }
                                other => flat.push(other),
                            }
                        }
                    }
                    MeanExpr::Const(v) => scalar *= v,
                    MeanExpr::ScaleX(b, x) => {
                        scalar *= x;
                        flat.push(*b);
                    }
                    other => flat.push(other),
                }
            }
            if scalar.is_zero() {
                return MeanExpr::Const(BigRational::zero());
            }
            let core = match flat.len() {
                0 => return MeanExpr::Const(scalar),
                1 => flat.pop().unwrap(),
                _ => MeanExpr::Mul(flat),
            };
            if scalar.is_one() {
                core
            } else {
                MeanExpr::ScaleX(Box::new(core), scalar)
            }
        }
        MeanExpr::DivN(c, n) => {
            let s = simplify_once(c);
            if *n == 1 {
                return s;
            }
            let divisor = BigRational::from_integer(BigInt::from(*n));
            match s {
                MeanExpr::Const(v) => MeanExpr::Const(v / divisor),
                MeanExpr::ScaleX(b, x) => {
                    let x2 = x / divisor;
                    if x2.is_one() {
                        *b
                    } else {
                        MeanExpr::ScaleX(b, x2)
                    }
                }
                other => MeanExpr::DivN(Box::new(other), *n),
            }
        }
        MeanExpr::RootN(c, n) => {
            let s = simplify_once(c);
            if *n == 1 {
                return s;
            }
            match s {
                MeanExpr::Const(v) => match rational_nth_root(&v, *n) {
                    Some(r) => MeanExpr::Const(r),
                    None => MeanExpr::RootN(Box::new(MeanExpr::Const(v)), *n),
                },
                MeanExpr::ScaleX(b, x) => match rational_nth_root(&x, *n) {
                    Some(r) => {
                        let root = MeanExpr::RootN(b, *n);
                        if r.is_one() {
                            root
                        } else {
                            MeanExpr::ScaleX(Box::new(root), r)
                        }
                    }
                    None => MeanExpr::RootN(Box::new(MeanExpr::ScaleX(b, x)), *n),
                },
                other => MeanExpr::RootN(Box::new(other), *n),
            }
        }
        MeanExpr::PowX(c, x) => {
            let s = simplify_once(c);
            if x.is_one() {
                return s;
            }
            match s {
                MeanExpr::Const(v) if x.denom().is_one() => match pow_rational(&v, x.numer()) {
                    Some(p) => MeanExpr::Const(p),
                    None => MeanExpr::PowX(Box::new(MeanExpr::Const(v)), x.clone()),
                },
                other => MeanExpr::PowX(Box::new(other), x.clone()),
            }
        }
        MeanExpr::ScaleX(c, x) => {
            let s = simplify_once(c);
            if x.is_one() {
                return s;
            }
            match s {
                MeanExpr::Const(v) => MeanExpr::Const(v * x),
                MeanExpr::ScaleX(b, y) => {
                    let xy = x * y;
                    if xy.is_one() {
                        *b
                    } else {
                        MeanExpr::ScaleX(b, xy)
                    }
                }
                other => MeanExpr::ScaleX(Box::new(other), x.clone()),
            }
        }
    }
}

/// Evaluation-preserving cleanup: constant folding over the rationals,
/// scalar extraction out of products, exact roots of constant powers.
/// Idempotent by fixpoint iteration.
pub fn simplify(e: &MeanExpr) -> MeanExpr {
    let mut cur = e.clone();
    for _ in 0..64 {
        let next = simplify_once(&cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
    cur
}

/// Wraps a fixed-arity expression as a `MeanFunction` so the classifiers
/// and measures apply to it. Classification needs at least two variables.
pub fn as_mean_function(e: &MeanExpr, box_: &DomainBox) -> Result<MeanFunction, MeanError> {
    let n = e.arity();
    if n < 2 {
        return Err(MeanError::Construction(
            "classification needs an expression of two or more variables".into(),
        ));
    }
    let expr = e.clone();
    let expr2 = e.clone();
    let box2 = box_.clone();
    let desc = box_.describe();
    Ok(MeanFunction::new(
        format!("expr({})", render(e)),
        Arity::Fixed(n),
        desc,
        std::sync::Arc::new(move |t: &RealTuple| {
            box2.contains_tuple(t) && evaluate_tuple(&expr, t).is_ok()
        }),
        std::sync::Arc::new(move |t: &RealTuple| evaluate_tuple(&expr2, t).map(Real::Approx)),
    ))
}

/// One-variable expressions become generator functions for conjugation.
pub fn to_generator(e: &MeanExpr, bracket: (f64, f64)) -> Result<GeneratorFunction, MeanError> {
    if e.arity() > 1 {
        return Err(MeanError::Construction(
            "a generator takes one variable".into(),
        ));
    }
    let expr = e.clone();
    GeneratorFunction::new(
        format!("expr({})", render(e)),
        std::sync::Arc::new(move |x: f64| evaluate(&expr, &[x]).unwrap_or(f64::NAN)),
        bracket,
    )
}

/// AST export as `{node, params, children}` JSON.
pub fn to_json(e: &MeanExpr) -> Value {
    match e {
        MeanExpr::Var(i) => json!({"node": "var", "params": {"index": i}}),
        MeanExpr::Const(r) => json!({"node": "const", "params": {"value": render_rational(r)}}),
        MeanExpr::Add(es) => {
            json!({"node": "add", "children": es.iter().map(to_json).collect::<Vec<_>>()})
        }
        MeanExpr::Mul(es) => {
            json!({"node": "mul", "children": es.iter().map(to_json).collect::<Vec<_>>()})
        }
        MeanExpr::DivN(c, n) => {
            json!({"node": "divn", "params": {"n": n}, "children": [to_json(c)]})
        }
        MeanExpr::RootN(c, n) => {
            json!({"node": "rootn", "params": {"n": n}, "children": [to_json(c)]})
        }
        MeanExpr::PowX(c, x) => {
            json!({"node": "powx", "params": {"x": render_rational(x)}, "children": [to_json(c)]})
        }
        MeanExpr::ScaleX(c, x) => {
            json!({"node": "scalex", "params": {"x": render_rational(x)}, "children": [to_json(c)]})
        }
    }
}

/// Seeded random expression trees for the structural property tests.
/// Variable indices are compacted so the result always parses back.
pub fn random_expr(rng: &mut crate::rng::SeededRng, arity: usize, depth: usize) -> MeanExpr {
    let e = random_expr_raw(rng, arity, depth);
    let mut seen = [false; 10];
    collect_vars(&e, &mut seen);
    let mut remap = [0usize; 10];
    let mut next = 1;
    for i in 1..10 {
        if seen[i] {
            remap[i] = next;
            next += 1;
        }
    }
    fn apply(e: &MeanExpr, remap: &[usize; 10]) -> MeanExpr {
        match e {
            MeanExpr::Var(i) => MeanExpr::Var(remap[*i]),
            MeanExpr::Const(r) => MeanExpr::Const(r.clone()),
            MeanExpr::Add(es) => MeanExpr::Add(es.iter().map(|c| apply(c, remap)).collect()),
            MeanExpr::Mul(es) => MeanExpr::Mul(es.iter().map(|c| apply(c, remap)).collect()),
            MeanExpr::DivN(c, n) => MeanExpr::DivN(Box::new(apply(c, remap)), *n),
            MeanExpr::RootN(c, n) => MeanExpr::RootN(Box::new(apply(c, remap)), *n),
            MeanExpr::PowX(c, x) => MeanExpr::PowX(Box::new(apply(c, remap)), x.clone()),
            MeanExpr::ScaleX(c, x) => MeanExpr::ScaleX(Box::new(apply(c, remap)), x.clone()),
        }
    }
    apply(&e, &remap)
}

fn random_expr_raw(rng: &mut crate::rng::SeededRng, arity: usize, depth: usize) -> MeanExpr {
    if depth == 0 || rng.below(5) == 0 {
        return match rng.below(3) {
            0 => MeanExpr::Var(1 + rng.below(arity as u64) as usize),
            1 => MeanExpr::int(1 + rng.below(5) as i64),
            _ => MeanExpr::ratio(1 + rng.below(6) as i64, 1 + rng.below(6) as i64),
        };
    }
    match rng.below(6) {
        0 => {
            let k = 2 + rng.below(2) as usize;
            MeanExpr::Add(
                (0..k)
                    .map(|_| random_expr_raw(rng, arity, depth - 1))
                    .collect(),
            )
        }
        1 => {
            let k = 2 + rng.below(2) as usize;
            MeanExpr::Mul(
                (0..k)
                    .map(|_| random_expr_raw(rng, arity, depth - 1))
                    .collect(),
            )
        }
        2 => MeanExpr::DivN(
            Box::new(random_expr_raw(rng, arity, depth - 1)),
            2 + rng.below(4) as u32,
        ),
        3 => MeanExpr::RootN(
            Box::new(random_expr_raw(rng, arity, depth - 1)),
            2 + rng.below(3) as u32,
        ),
        4 => MeanExpr::PowX(
            Box::new(random_expr_raw(rng, arity, depth - 1)),
            BigRational::new(
                BigInt::from(1 + rng.below(4) as i64),
                BigInt::from(1 + rng.below(3) as i64),
            ),
        ),
        _ => MeanExpr::ScaleX(
            Box::new(random_expr_raw(rng, arity, depth - 1)),
            BigRational::new(
                BigInt::from(1 + rng.below(5) as i64),
                BigInt::from(1 + rng.below(4) as i64),
            ),
        ),
    }
}
