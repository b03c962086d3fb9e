//! Expression syntax for polynomials.
//!
//! ```text
//! sum    := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'q' | 't' | 'x' index | 'e' index | '(' sum ')'
//! ```
//!
//! Factors need an explicit `*`; `x12` is the single variable `x12`. A
//! divisor must evaluate to a nonzero element of ℚ(q), so `1/3` and
//! `x1/(1 + q)` are accepted while `1/x1` is not.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::clifford::{Algebra, Multivector};
use crate::cpoly::{CliffordPoly, MultiIndex};
use crate::error::{Error, Result};
use crate::jackson::UniPoly;
use crate::qfield::QScalar;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 1000;

#[derive(Clone, PartialEq, Debug)]
pub enum Expr {
    Int(BigInt),
    Q,
    /// The variable of one-dimensional Jackson calculus.
    T,
    Var(usize),
    Gen(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Whether `x0` or `e0` occurs.
    pub fn uses_index_zero(&self) -> bool {
        match self {
            Expr::Var(0) | Expr::Gen(0) => true,
            Expr::Int(_) | Expr::Q | Expr::T | Expr::Var(_) | Expr::Gen(_) => false,
            Expr::Neg(a) | Expr::Pow(a, _) => a.uses_index_zero(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.uses_index_zero() || b.uses_index_zero()
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Q => write!(f, "q"),
            Expr::T => write!(f, "t"),
            Expr::Var(i) => write!(f, "x{i}"),
            Expr::Gen(i) => write!(f, "e{i}"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Add(a, b) => write!(f, "({a} + {b})"),
            Expr::Sub(a, b) => write!(f, "({a} - {b})"),
            Expr::Mul(a, b) => write!(f, "{a}*{b}"),
            Expr::Div(a, b) => write!(f, "({a}/{b})"),
            Expr::Pow(a, n) => write!(f, "{a}^{n}"),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
enum Tok {
    Int(BigInt),
    Q,
    T,
    Var(usize),
    Gen(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number {n}"),
        Tok::Q => "'q'".into(),
        Tok::T => "'t'".into(),
        Tok::Var(i) => format!("'x{i}'"),
        Tok::Gen(i) => format!("'e{i}'"),
        Tok::Plus => "'+'".into(),
        Tok::Minus => "'-'".into(),
        Tok::Star => "'*'".into(),
        Tok::Slash => "'/'".into(),
        Tok::Caret => "'^'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::End => "end of input".into(),
    }
}

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn lex(text: &str, m: usize) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits_from = |mut j: usize| {
        let start = j;
        while j < chars.len() && chars[j].1.is_ascii_digit() {
            j += 1;
        }
        (start, j)
    };
    while i < chars.len() {
        let (pos, c) = chars[i];
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            'q' => Some(Tok::Q),
            't' => Some(Tok::T),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((pos, t));
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let (s, e) = digits_from(i);
            let lit: String = chars[s..e].iter().map(|(_, c)| c).collect();
            out.push((pos, Tok::Int(lit.parse().expect("digits"))));
            i = e;
            continue;
        }
        if c == 'x' || c == 'e' {
            let (s, e) = digits_from(i + 1);
            if s == e {
                return Err(perr(pos, format!("expected an index after '{c}'")));
            }
            let lit: String = chars[s..e].iter().map(|(_, c)| c).collect();
            let index: usize = lit
                .parse()
                .map_err(|_| perr(pos, format!("index {lit} is too large")))?;
            if index > m {
                return Err(Error::InvalidVariable { index, dim: m });
            }
            out.push((pos, if c == 'x' { Tok::Var(index) } else { Tok::Gen(index) }));
            i = e;
            continue;
        }
        return Err(perr(pos, format!("unexpected character {c:?}")));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => {
                let n = u32::try_from(&n)
                    .ok()
                    .filter(|&n| n <= MAX_EXPONENT)
                    .ok_or_else(|| perr(pos, format!("exponent {n} exceeds {MAX_EXPONENT}")))?;
                Ok(Expr::Pow(Box::new(base), n))
            }
            t => Err(perr(pos, format!("expected a nonnegative integer exponent, found {}", describe(&t)))),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(Expr::Int(n)),
            Tok::Q => Ok(Expr::Q),
            Tok::T => Ok(Expr::T),
            Tok::Var(i) => Ok(Expr::Var(i)),
            Tok::Gen(i) => Ok(Expr::Gen(i)),
            Tok::LParen => {
                let inner = self.sum()?;
                let close = self.pos();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    t => Err(perr(close, format!("expected ')', found {}", describe(&t)))),
                }
            }
            t => Err(perr(pos, format!("expected an operand, found {}", describe(&t)))),
        }
    }
}

/// Parses `text`; variable and generator indices must not exceed `m`.
pub fn parse(text: &str, m: usize) -> Result<Expr> {
    let mut p = Parser { toks: lex(text, m)?, at: 0 };
    let e = p.sum()?;
    match p.peek() {
        Tok::End => Ok(e),
        t => Err(perr(p.pos(), format!("unexpected {}", describe(t)))),
    }
}

fn constant_of(p: &CliffordPoly) -> Option<QScalar> {
    if p.is_zero() {
        return Some(QScalar::zero());
    }
    let zero = MultiIndex::zero(p.dim());
    if p.num_terms() == p.coeff(&zero).len() && p.coeff(&zero).is_scalar() {
        Some(p.coeff(&zero).scalar_part())
    } else {
        None
    }
}

fn nonzero_divisor(c: Option<QScalar>) -> Result<QScalar> {
    match c {
        None => Err(Error::InvalidArgument("divisor must be a scalar in q".into())),
        Some(c) if c.is_zero() => Err(Error::DivisionByZero),
        Some(c) => Ok(c),
    }
}

/// Evaluates the expression as a Clifford-valued polynomial in `Cl(0,m)`,
/// or in the extended algebra when `x0` or `e0` occurs.
pub fn lower(e: &Expr, m: usize) -> Result<CliffordPoly> {
    let alg = if e.uses_index_zero() {
        Algebra::extended(m)?
    } else {
        Algebra::new(m)?
    };
    lower_in(e, alg)
}

pub fn lower_in(e: &Expr, alg: Algebra) -> Result<CliffordPoly> {
    Ok(match e {
        Expr::Int(n) => CliffordPoly::constant(alg, QScalar::from_rational(BigRational::from_integer(n.clone()))),
        Expr::Q => CliffordPoly::constant(alg, QScalar::q()),
        Expr::T => return Err(Error::InvalidArgument("'t' is only meaningful for one-variable expressions".into())),
        Expr::Var(i) => CliffordPoly::variable(alg, *i)?,
        Expr::Gen(i) => CliffordPoly::from_multivector(Multivector::generator(alg, *i)?),
        Expr::Neg(a) => -&lower_in(a, alg)?,
        Expr::Add(a, b) => lower_in(a, alg)?.checked_add(&lower_in(b, alg)?)?,
        Expr::Sub(a, b) => lower_in(a, alg)?.checked_sub(&lower_in(b, alg)?)?,
        Expr::Mul(a, b) => lower_in(a, alg)?.checked_mul(&lower_in(b, alg)?)?,
        Expr::Div(a, b) => {
            let d = nonzero_divisor(constant_of(&lower_in(b, alg)?))?;
            lower_in(a, alg)?.scale(&d.inv()?)
        }
        Expr::Pow(a, n) => lower_in(a, alg)?.pow(*n),
    })
}

/// Evaluates the expression as a polynomial in `t`.
pub fn lower_unipoly(e: &Expr) -> Result<UniPoly> {
    Ok(match e {
        Expr::Int(n) => UniPoly::constant(QScalar::from_rational(BigRational::from_integer(n.clone()))),
        Expr::Q => UniPoly::constant(QScalar::q()),
        Expr::T => UniPoly::t(),
        Expr::Var(_) | Expr::Gen(_) => {
            return Err(Error::InvalidArgument(format!("{e} is not allowed in a polynomial in t")))
        }
        Expr::Neg(a) => -&lower_unipoly(a)?,
        Expr::Add(a, b) => &lower_unipoly(a)? + &lower_unipoly(b)?,
        Expr::Sub(a, b) => &lower_unipoly(a)? - &lower_unipoly(b)?,
        Expr::Mul(a, b) => &lower_unipoly(a)? * &lower_unipoly(b)?,
        Expr::Div(a, b) => {
            let d = lower_unipoly(b)?;
            let c = match d.degree() {
                None | Some(0) => Some(d.coeff(0)),
                _ => None,
            };
            lower_unipoly(a)?.scale(&nonzero_divisor(c)?.inv()?)
        }
        Expr::Pow(a, n) => lower_unipoly(a)?.pow(*n),
    })
}

/// `lower(parse(text, m), m)`.
pub fn parse_poly(text: &str, m: usize) -> Result<CliffordPoly> {
    lower(&parse(text, m)?, m)
}

/// Parses a constant expression in `q` such as `(1 + q)/3`.
pub fn parse_scalar(text: &str) -> Result<QScalar> {
    let u = lower_unipoly(&parse(text, 0)?)?;
    match u.degree() {
        None | Some(0) => Ok(u.coeff(0)),
        _ => Err(Error::InvalidArgument(format!("{text:?} is not a constant"))),
    }
}

/// Parses a rational number such as `-3/4`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    parse_scalar(text)?
        .as_rational()
        .ok_or_else(|| Error::InvalidArgument(format!("{text:?} is not a rational number")))
}
