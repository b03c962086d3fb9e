//! One-variable Jackson calculus on polynomials in `t` with ℚ(q) coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::clifford::Blade;
use crate::error::{Error, Result};
use crate::qfield::{q_bracket, q_factorial, QScalar};

/// Sparse polynomial `Σ c_k t^k`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct UniPoly {
    coeffs: BTreeMap<u32, QScalar>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(QScalar::one())
    }

    pub fn t() -> Self {
        Self::monomial(1, QScalar::one())
    }

    pub fn constant(c: QScalar) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(k: u32, c: QScalar) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, QScalar)>) -> Self {
        let mut p = Self::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: u32, c: QScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(QScalar::zero);
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: u32) -> QScalar {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &QScalar)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, c: &QScalar) -> Self {
        Self::from_terms(self.terms().map(|(k, a)| (k, a * c)))
    }

    /// Substitution `t ↦ c·t`.
    pub fn substitute_scaled(&self, c: &QScalar) -> Self {
        Self::from_terms(self.terms().map(|(k, a)| (k, a * &c.pow(k))))
    }

    /// `f(qt)`.
    pub fn q_shift(&self) -> Self {
        self.substitute_scaled(&QScalar::q())
    }

    /// Drops all terms of degree above `n`.
    pub fn truncate(&self, n: u32) -> Self {
        UniPoly {
            coeffs: self.coeffs.range(..=n).map(|(k, c)| (*k, c.clone())).collect(),
        }
    }

    pub fn mul_t(&self) -> Self {
        Self::from_terms(self.terms().map(|(k, c)| (k + 1, c.clone())))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Value at `t = t0` as a rational function of `q`.
    pub fn at(&self, t0: &BigRational) -> QScalar {
        let mut acc = QScalar::zero();
        for (k, c) in self.terms() {
            acc += &c.scale(&pow_rational(t0, k));
        }
        acc
    }

    /// Value at `t = t0`, `q = q0`.
    pub fn evaluate(&self, t0: &BigRational, q0: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (k, c) in self.terms() {
            acc += c.eval(q0)? * pow_rational(t0, k);
        }
        Ok(acc)
    }
}

fn pow_rational(x: &BigRational, k: u32) -> BigRational {
    num_traits::pow(x.clone(), k as usize)
}

impl std::ops::Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.clone();
        for (k, c) in rhs.terms() {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl std::ops::Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl std::ops::Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_terms(self.terms().map(|(k, c)| (k, -c)))
    }
}

impl std::ops::Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let mut out = UniPoly::zero();
        for (i, a) in self.terms() {
            for (j, b) in rhs.terms() {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<crate::render::Term> = self
            .terms()
            .map(|(k, c)| {
                let factors = match k {
                    0 => vec![],
                    1 => vec!["t".to_string()],
                    k => vec![format!("t^{k}")],
                };
                (c.clone(), factors, Blade::SCALAR)
            })
            .collect();
        crate::render::write_sum(f, &terms)
    }
}

/// `∂^q_t`: `t^k ↦ [k]_q t^{k−1}`.
pub fn jackson_derivative(f: &UniPoly) -> UniPoly {
    UniPoly::from_terms(
        f.terms()
            .filter(|(k, _)| *k > 0)
            .map(|(k, c)| (k - 1, c * &q_bracket(k))),
    )
}

/// `∫_a^b f d_qt = Σ_k c_k (b^{k+1} − a^{k+1}) / [k+1]_q`, exact in ℚ(q).
pub fn q_integral(f: &UniPoly, a: &BigRational, b: &BigRational) -> QScalar {
    let mut acc = QScalar::zero();
    for (k, c) in f.terms() {
        let span = pow_rational(b, k + 1) - pow_rational(a, k + 1);
        if span.is_zero() {
            continue;
        }
        acc += &(&c.scale(&span) / &q_bracket(k + 1));
    }
    acc
}

fn check_unit_interval(q0: &BigRational) -> Result<()> {
    if q0.is_positive() && *q0 < BigRational::one() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("q0 = {q0} must lie in (0, 1)")))
    }
}

/// Partial sum `(1 − q0) a Σ_{n<terms} f(a q0^n) q0^n` of the series for
/// `∫_0^a f d_qt` at `q = q0`.
pub fn q_integral_series_oracle(f: &UniPoly, a: &BigRational, q0: &BigRational, terms: usize) -> Result<BigRational> {
    check_unit_interval(q0)?;
    let mut sum = BigRational::zero();
    let mut qn = BigRational::one();
    for _ in 0..terms {
        sum += f.evaluate(&(a * &qn), q0)? * &qn;
        qn *= q0;
    }
    Ok((BigRational::one() - q0) * a * sum)
}

/// Upper bound `Σ_k |c_k(q0)| |a|^{k+1} q0^{N(k+1)}` on the error of
/// [`q_integral_series_oracle`] with `N` terms.
pub fn q_integral_tail_bound(f: &UniPoly, a: &BigRational, q0: &BigRational, terms: usize) -> Result<BigRational> {
    check_unit_interval(q0)?;
    let mut bound = BigRational::zero();
    for (k, c) in f.terms() {
        let e = k + 1;
        bound += c.eval(q0)?.abs() * pow_rational(&a.abs(), e) * num_traits::pow(q0.clone(), terms * e as usize);
    }
    Ok(bound)
}

/// Which q-exponential: `E_q(t) = Σ t^j/[j]_q!` or `e_q(t) = E_{1/q}(t)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExpVariant {
    Upper,
    Lower,
}

impl FromStr for ExpVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "E" => Ok(ExpVariant::Upper),
            "e" => Ok(ExpVariant::Lower),
            _ => Err(Error::InvalidArgument(format!("unknown exponential variant {s:?} (expected E or e)"))),
        }
    }
}

impl fmt::Display for ExpVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExpVariant::Upper => "E",
            ExpVariant::Lower => "e",
        })
    }
}

/// Truncation of the chosen q-exponential to degree `order`.
pub fn q_exp(variant: ExpVariant, order: u32) -> UniPoly {
    UniPoly::from_terms((0..=order).map(|j| {
        let fact = q_factorial(j);
        let fact = match variant {
            ExpVariant::Upper => fact,
            ExpVariant::Lower => fact.invert_q(),
        };
        (j, fact.inv().expect("q-factorial is nonzero"))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::QPoly;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn t(k: u32) -> UniPoly {
        UniPoly::monomial(k, QScalar::one())
    }

    #[test]
    fn derivative_examples() {
        for k in 0..6 {
            let expected = if k == 0 { UniPoly::zero() } else { UniPoly::monomial(k - 1, q_bracket(k)) };
            assert_eq!(jackson_derivative(&t(k)), expected);
        }
        let d = jackson_derivative(&(&t(2) + &t(1)));
        assert_eq!(d, &UniPoly::monomial(1, q_bracket(2)) + &UniPoly::one());
        assert_eq!(d.to_string(), "1 + (1 + q) * t");
    }

    #[test]
    fn derivative_matches_difference_quotient() {
        let f = UniPoly::from_terms([(0, QScalar::from_int(3)), (2, QScalar::q()), (5, q_bracket(3))]);
        for q0 in [r(1, 2), r(3, 1)] {
            let t0 = r(2, 3);
            let lhs = jackson_derivative(&f).evaluate(&t0, &q0).unwrap();
            let rhs = (f.evaluate(&(&q0 * &t0), &q0).unwrap() - f.evaluate(&t0, &q0).unwrap())
                / ((&q0 - BigRational::one()) * &t0);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn integral_examples() {
        let a = r(5, 3);
        assert_eq!(q_integral(&UniPoly::one(), &r(0, 1), &a), QScalar::from_rational(a.clone()));
        assert_eq!(q_integral(&t(1), &r(0, 1), &r(1, 1)), q_bracket(2).inv().unwrap());
        let f = &t(3) + &UniPoly::constant(QScalar::q());
        assert!(q_integral(&f, &a, &a).is_zero());
    }

    #[test]
    fn integral_of_derivative() {
        let f = UniPoly::from_terms([(1, QScalar::from_int(2)), (4, QScalar::q()), (6, q_bracket(2))]);
        let (a, b) = (r(-1, 2), r(3, 1));
        assert_eq!(q_integral(&jackson_derivative(&f), &a, &b), &f.at(&b) - &f.at(&a));
    }

    #[test]
    fn series_examples() {
        let half = r(1, 2);
        let s = q_integral_series_oracle(&UniPoly::one(), &r(1, 1), &half, 40).unwrap();
        let exact = BigRational::one();
        assert!((&s - &exact).abs() <= num_traits::pow(half.clone(), 39));
        assert_eq!(&exact - &s, num_traits::pow(half.clone(), 40));

        let s = q_integral_series_oracle(&t(1), &r(1, 1), &half, 60).unwrap();
        let exact = q_integral(&t(1), &r(0, 1), &r(1, 1)).eval(&half).unwrap();
        assert_eq!(exact, r(2, 3));
        assert!((&s - &exact).abs() <= num_traits::pow(half.clone(), 58));

        assert!(q_integral_series_oracle(&t(3), &r(1, 1), &half, 0).unwrap().is_zero());
        for q0 in [r(0, 1), r(1, 1), r(3, 2), r(-1, 2)] {
            assert!(matches!(
                q_integral_series_oracle(&UniPoly::one(), &r(1, 1), &q0, 5),
                Err(Error::InvalidParameter(_))
            ));
        }
    }

    #[test]
    fn exponential_examples() {
        let e2 = q_exp(ExpVariant::Upper, 2);
        assert_eq!(e2.to_string(), "1 + t + (1/(1 + q)) * t^2");
        assert_eq!(q_exp(ExpVariant::Upper, 0), UniPoly::one());
        let l2 = q_exp(ExpVariant::Lower, 2);
        let c = QScalar::new(QPoly::q(), QPoly::from_ints(&[1, 1])).unwrap();
        assert_eq!(l2.coeff(2), c);
        assert_eq!(l2.coeff(1), QScalar::one());
    }

    #[test]
    fn exponential_relations() {
        for n in 0..=8 {
            let big = q_exp(ExpVariant::Upper, n);
            let small = q_exp(ExpVariant::Lower, n);
            let prod = (&big * &small.substitute_scaled(&QScalar::from_int(-1))).truncate(n);
            assert_eq!(prod, UniPoly::one(), "N = {n}");
            if n > 0 {
                assert_eq!(jackson_derivative(&big), q_exp(ExpVariant::Upper, n - 1));
                assert_eq!(jackson_derivative(&small), q_exp(ExpVariant::Lower, n - 1).q_shift());
            }
        }
    }

    fn arb_unipoly() -> impl Strategy<Value = UniPoly> {
        prop::collection::vec((0u32..6, -3i64..=3, -2i64..=2), 0..5).prop_map(|ts| {
            UniPoly::from_terms(
                ts.into_iter()
                    .map(|(k, a, b)| (k, QScalar::from_poly(QPoly::from_ints(&[a, b])))),
            )
        })
    }

    proptest! {
        #[test]
        fn leibniz_rules(f in arb_unipoly(), g in arb_unipoly()) {
            let d = jackson_derivative(&(&f * &g));
            let first = &(&jackson_derivative(&f) * &g) + &(&f.q_shift() * &jackson_derivative(&g));
            let second = &(&jackson_derivative(&f) * &g.q_shift()) + &(&f * &jackson_derivative(&g));
            prop_assert_eq!(&d, &first);
            prop_assert_eq!(&d, &second);
        }

        #[test]
        fn operator_leibniz(f in arb_unipoly()) {
            let lhs = jackson_derivative(&f.mul_t());
            let rhs = &jackson_derivative(&f).mul_t().scale(&QScalar::q()) + &f;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn series_within_tail_bound(f in arb_unipoly(), an in -3i64..=3, qi in 0usize..3, n in 0usize..30) {
            let a = r(an, 2);
            let q0 = [r(1, 4), r(1, 2), r(3, 4)][qi].clone();
            let exact = q_integral(&f, &r(0, 1), &a).eval(&q0).unwrap();
            let partial = q_integral_series_oracle(&f, &a, &q0, n).unwrap();
            let bound = q_integral_tail_bound(&f, &a, &q0, n).unwrap();
            prop_assert!((exact - partial).abs() <= bound);
        }
    }
}
