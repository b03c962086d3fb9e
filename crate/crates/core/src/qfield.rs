//! Exact arithmetic in the rational function field ℚ(q).
//!
//! [`QPoly`] is a dense polynomial in the deformation parameter `q` with
//! arbitrary-precision rational coefficients. [`QScalar`] is a reduced
//! quotient of two such polynomials with a monic denominator, so two values
//! are mathematically equal exactly when they are structurally equal.
//!
//! The q-combinatorial quantities ([`q_bracket`], [`q_factorial`],
//! [`q_binomial`]) live here as well because every other module consumes
//! them as coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Polynomial in `q` with rational coefficients, `coeffs[i]` multiplying `q^i`.
///
/// The highest stored coefficient is never zero; the zero polynomial has no
/// coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * q^degree`.
    pub fn monomial(c: BigRational, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        coeffs[degree] = c;
        QPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    /// Convenience constructor from small integer coefficients, lowest power first.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest power of `q` with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Returns the constant value if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `q^shift`.
    pub fn shift(&self, shift: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Coefficient reversal: `q^deg · p(1/q)`.
    pub fn reversed(&self) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::from_coeffs(coeffs)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, q0: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * q0 + c)
    }

    /// Euclidean division over ℚ[q].
    pub fn div_rem(&self, divisor: &QPoly) -> Result<(QPoly, QPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((QPoly::zero(), QPoly::zero()));
        };
        if nd < dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((QPoly::from_coeffs(quot), QPoly::from_coeffs(rem)))
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) if !l.is_one() => self.scale(&l.recip()),
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor over ℚ[q].
    ///
    /// Runs a primitive polynomial remainder sequence on integer
    /// representatives so intermediate coefficients stay small.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return QPoly::one();
        }
        let mut a = primitive_int(self);
        let mut b = primitive_int(other);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = pseudo_rem(&a, &b);
            a = b;
            b = int_primitive_part(r);
        }
        QPoly::from_coeffs(
            a.into_iter()
                .map(BigRational::from_integer)
                .collect(),
        )
        .monic()
    }
}

fn trim_int(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

/// Integer polynomial with content 1, proportional to `p`.
fn primitive_int(p: &QPoly) -> Vec<BigInt> {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| c.numer() * (&lcm / c.denom()))
        .collect();
    int_primitive_part(ints)
}

fn int_primitive_part(mut v: Vec<BigInt>) -> Vec<BigInt> {
    trim_int(&mut v);
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() || content.is_one() {
        return v;
    }
    v.iter().map(|c| c / &content).collect()
}

/// Pseudo-remainder of `a` by `b` (both nonzero, integer coefficients).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim_int(&mut r);
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        let off = dr - db;
        for (j, bj) in b.iter().enumerate() {
            r[off + j] -= &lr * bj;
        }
        trim_int(&mut r);
    }
    r
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        QPoly::from_coeffs(coeffs)
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

/// Writes `c·q^k` terms in ascending powers: `1 - 2*q + 1/3*q^2`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => write_q_power(f, k)?,
                (_, false) => {
                    write!(f, "{abs}*")?;
                    write_q_power(f, k)?;
                }
            }
        }
        Ok(())
    }
}

fn write_q_power(f: &mut fmt::Formatter<'_>, k: usize) -> fmt::Result {
    if k == 1 {
        write!(f, "q")
    } else {
        write!(f, "q^{k}")
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

/// Element of ℚ(q) in canonical form: `num / den`, coprime, `den` monic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: QPoly,
    den: QPoly,
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(QPoly::one())
    }

    pub fn q() -> Self {
        Self::from_poly(QPoly::q())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_poly(QPoly::constant(r))
    }

    pub fn from_poly(num: QPoly) -> Self {
        QScalar {
            num,
            den: QPoly::one(),
        }
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i32) -> Self {
        let m = QScalar::from_poly(QPoly::monomial(BigRational::one(), k.unsigned_abs() as usize));
        if k >= 0 {
            m
        } else {
            m.inv().expect("q^k is nonzero")
        }
    }

    /// Builds `num / den` and brings it into canonical form.
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_rem(&g).expect("gcd is nonzero").0,
                    den.div_rem(&g).expect("gcd is nonzero").0,
                )
            }
        };
        let lead = den.leading().expect("denominator is nonzero").clone();
        if lead.is_one() {
            QScalar { num, den }
        } else {
            let inv = lead.recip();
            QScalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The rational value if this scalar does not depend on `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &QScalar) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        QScalar {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QScalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Substitutes `q ↦ 1/q`.
    pub fn invert_q(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let num = self.num.reversed().shift(dd);
        let den = self.den.reversed().shift(dn);
        Self::normalized(num, den)
    }

    /// Exact value at `q = q0`.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::PoleAtEvaluationPoint);
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Combined q-degree of numerator and denominator; a cheap size measure for pivoting.
    pub fn size_hint(&self) -> usize {
        self.num.degree().unwrap_or(0) + self.den.degree().unwrap_or(0)
    }

    /// Whether a rendered form needs parentheses when used as a factor.
    pub fn is_atomic(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_integer() && !r.is_negative())
            || (self.den.is_one() && self.num.coeffs().iter().filter(|c| !c.is_zero()).count() == 1
                && self.num.leading().is_some_and(|c| c.is_one()))
    }
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        QScalar::from_int(n)
    }
}

impl From<BigRational> for QScalar {
    fn from(r: BigRational) -> Self {
        QScalar::from_rational(r)
    }
}

impl From<QPoly> for QScalar {
    fn from(p: QPoly) -> Self {
        QScalar::from_poly(p)
    }
}

impl Add<&QScalar> for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QScalar::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return QScalar::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        QScalar::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub<&QScalar> for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul<&QScalar> for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QScalar::from_poly(&self.num * &rhs.num);
        }
        QScalar::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`QScalar::checked_div`] for a fallible version.
impl Div<&QScalar> for &QScalar {
    type Output = QScalar;
    fn div(self, rhs: &QScalar) -> QScalar {
        self.checked_div(rhs).expect("division by the zero element of Q(q)")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar { (&self).$m(&rhs) }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar { (&self).$m(rhs) }
        }
        impl $tr<QScalar> for &QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, rhs: &QScalar) {
        *self = &*self * rhs;
    }
}

impl Zero for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn is_zero(&self) -> bool {
        QScalar::is_zero(self)
    }
}

impl One for QScalar {
    fn one() -> Self {
        QScalar::one()
    }
}

/// Canonical text form, e.g. `1 + q + q^2` or `(1 + q)/(1 + q^3)`.
/// `p = content · primitive` with an integer primitive part.
fn integer_split(p: &QPoly) -> (BigRational, QPoly) {
    let prim = primitive_int(p);
    let lead = BigRational::from_integer(prim.last().expect("nonzero polynomial").clone());
    let prim = QPoly::from_coeffs(prim.into_iter().map(BigRational::from_integer).collect());
    (p.leading().expect("nonzero polynomial") / lead, prim)
}

/// Rational functions are printed with integer coefficients, e.g.
/// `(1 + q)/(4 + 2*q)`; the stored form keeps a monic denominator.
impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let (cn, pn) = integer_split(&self.num);
        let (cd, pd) = integer_split(&self.den);
        let ratio = cn / cd;
        let num = pn.scale(&BigRational::from_integer(ratio.numer().clone()));
        let den = pd.scale(&BigRational::from_integer(ratio.denom().clone()));
        let terms = |p: &QPoly| p.coeffs().iter().filter(|c| !c.is_zero()).count();
        let num_text = if terms(&num) > 1 { format!("({num})") } else { num.to_string() };
        let bare = terms(&den) == 1 && (den.as_constant().is_some() || den.leading().is_some_and(|c| c.is_one()));
        let den_text = if bare { den.to_string() } else { format!("({den})") };
        write!(f, "{num_text}/{den_text}")
    }
}

impl fmt::Debug for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QScalar({self})")
    }
}

/// The q-number `[u]_q = 1 + q + … + q^{u−1}`; zero for `u = 0`.
pub fn q_bracket(u: u32) -> QScalar {
    QScalar::from_poly(QPoly::from_coeffs(
        (0..u).map(|_| BigRational::one()).collect(),
    ))
}

/// `[k]_q! = [k]_q [k−1]_q … [1]_q`, with `[0]_q! = 1`.
pub fn q_factorial(k: u32) -> QScalar {
    (1..=k).fold(QScalar::one(), |acc, j| &acc * &q_bracket(j))
}

/// Gaussian binomial coefficient `[n]_q! / ([n−k]_q! [k]_q!)`.
pub fn q_binomial(n: u32, k: u32) -> Result<QScalar> {
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "q-binomial requires k <= n, got n = {n}, k = {k}"
        )));
    }
    q_factorial(n).checked_div(&(&q_factorial(n - k) * &q_factorial(k)))
}

/// Exact value of `s` at `q = q0`.
pub fn evaluate(s: &QScalar, q0: &BigRational) -> Result<BigRational> {
    s.eval(q0)
}
