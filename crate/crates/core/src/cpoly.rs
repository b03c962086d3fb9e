//! Clifford-valued polynomials in commuting variables `x1..xm` (and `x0` in
//! the extended algebra).
//!
//! Variables are central: they commute with each other and with every
//! generator, so a polynomial is a sparse map from exponent multi-indices to
//! multivector coefficients. Multiplication is noncommutative only through the
//! coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::clifford::{Algebra, Blade, Multivector};
use crate::error::{Error, Result};
use crate::qfield::QScalar;

/// Exponent vector `(α0, α1, …, αm)`; slot 0 belongs to `x0`.
///
/// Ordered by total degree first, then with larger powers of `x1`, `x2`, …,
/// `xm`, `x0` (in that priority) coming first. This is the canonical
/// rendering order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    /// The all-zero index for an algebra of dimension `dim`.
    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim + 1])
    }

    /// From spatial exponents `(α1, …, αm)` with `α0 = 0`.
    pub fn spatial(exps: &[u32]) -> Self {
        let mut v = Vec::with_capacity(exps.len() + 1);
        v.push(0);
        v.extend_from_slice(exps);
        MultiIndex(v)
    }

    /// From the full vector `(α0, α1, …, αm)`.
    pub fn from_full(exps: Vec<u32>) -> Self {
        MultiIndex(exps)
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    /// `|α|`, including `α0`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn with_exponent(&self, i: usize, e: u32) -> Self {
        let mut v = self.0.clone();
        v[i] = e;
        MultiIndex(v)
    }

    pub fn add(&self, other: &MultiIndex) -> Self {
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Slot order used for comparison: 1..=m then 0.
    fn ordered_slots(&self) -> impl Iterator<Item = u32> + '_ {
        self.0[1..].iter().chain(std::iter::once(&self.0[0])).copied()
    }

    /// Factor strings like `x1^2`, `x0`, in canonical order.
    pub(crate) fn factors(&self) -> Vec<String> {
        let n = self.0.len();
        (1..n)
            .chain(std::iter::once(0))
            .filter(|&i| self.0[i] > 0)
            .map(|i| match self.0[i] {
                1 => format!("x{i}"),
                e => format!("x{i}^{e}"),
            })
            .collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.ordered_slots().cmp(self.ordered_slots()))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors `(α1..αm)` with `|α| = k`, in canonical order.
pub fn multi_indices(dim: usize, k: u32) -> Vec<MultiIndex> {
    fn rec(slot: usize, dim: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if slot == dim {
            if left == 0 {
                out.push(MultiIndex::spatial(cur));
            }
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(slot + 1, dim, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, dim, k, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Sparse Clifford-valued polynomial `Σ_α x^α a_α`.
#[derive(Clone, PartialEq, Debug)]
pub struct CliffordPoly {
    algebra: Algebra,
    terms: BTreeMap<MultiIndex, Multivector>,
}

impl CliffordPoly {
    pub fn zero(algebra: Algebra) -> Self {
        CliffordPoly {
            algebra,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(algebra: Algebra, c: QScalar) -> Self {
        Self::from_multivector(Multivector::scalar(algebra, c))
    }

    pub fn one(algebra: Algebra) -> Self {
        Self::constant(algebra, QScalar::one())
    }

    pub fn from_multivector(mv: Multivector) -> Self {
        let algebra = mv.algebra();
        let mut p = Self::zero(algebra);
        p.add_term(MultiIndex::zero(algebra.dim()), mv);
        p
    }

    /// `x^α · a`.
    pub fn monomial(index: MultiIndex, coeff: Multivector) -> Result<Self> {
        let algebra = coeff.algebra();
        if index.dim() != algebra.dim() || (!algebra.is_extended() && index.exponent(0) > 0) {
            return Err(Error::AlgebraMismatch(format!(
                "multi-index {:?} does not fit {algebra}",
                index.exponents()
            )));
        }
        let mut p = Self::zero(algebra);
        p.add_term(index, coeff);
        Ok(p)
    }

    /// The variable `x_i`.
    pub fn variable(algebra: Algebra, i: usize) -> Result<Self> {
        algebra.check_index(i)?;
        let idx = MultiIndex::zero(algebra.dim()).with_exponent(i, 1);
        Self::monomial(idx, Multivector::one(algebra))
    }

    /// The constant generator `e_i`.
    pub fn generator(algebra: Algebra, i: usize) -> Result<Self> {
        Ok(Self::from_multivector(Multivector::generator(algebra, i)?))
    }

    pub(crate) fn add_term(&mut self, index: MultiIndex, coeff: Multivector) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(index) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &coeff;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn algebra(&self) -> Algebra {
        self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Multivector)> {
        self.terms.iter()
    }

    pub fn coeff(&self, index: &MultiIndex) -> Multivector {
        self.terms
            .get(index)
            .cloned()
            .unwrap_or_else(|| Multivector::zero(self.algebra))
    }

    /// Number of `(monomial, blade)` pairs with nonzero coefficient.
    pub fn num_terms(&self) -> usize {
        self.terms.values().map(Multivector::len).sum()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    /// Whether every term has total degree `k` (the zero polynomial qualifies).
    pub fn is_homogeneous(&self, k: u32) -> bool {
        self.terms.keys().all(|a| a.degree() == k)
    }

    /// Whether any term involves `x0` or `e0`.
    pub fn uses_extension(&self) -> bool {
        self.terms
            .iter()
            .any(|(a, c)| a.exponent(0) > 0 || c.terms().any(|(b, _)| b.contains(0)))
    }

    /// Polynomial whose coefficients are all scalar multiples of the identity blade.
    pub fn is_scalar_valued(&self) -> bool {
        self.terms.values().all(Multivector::is_scalar)
    }

    pub fn checked_add(&self, rhs: &CliffordPoly) -> Result<Self> {
        let algebra = self.algebra.join(rhs.algebra)?;
        let mut out = self.clone();
        out.algebra = algebra;
        for (a, c) in &rhs.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &CliffordPoly) -> Result<Self> {
        self.checked_add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_terms(|c| c.neg())
    }

    pub fn checked_mul(&self, rhs: &CliffordPoly) -> Result<Self> {
        let algebra = self.algebra.join(rhs.algebra)?;
        let mut out = Self::zero(algebra);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.add(b), ca.geometric_product(cb)?);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(self.algebra), |acc, _| &acc * self)
    }

    /// Multiplies every coefficient by a central scalar.
    pub fn scale(&self, c: &QScalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.algebra);
        }
        self.map_terms(|m| m.scale(c))
    }

    /// `a · P`, multiplying each coefficient on the left.
    pub fn left_mul(&self, a: &Multivector) -> Result<Self> {
        let mut out = Self::zero(self.algebra.join(a.algebra())?);
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), a.geometric_product(c)?);
        }
        Ok(out)
    }

    /// Multiplies by `x_i^e`.
    pub fn mul_variable(&self, i: usize, e: u32) -> Result<Self> {
        self.algebra.check_index(i)?;
        let mut out = Self::zero(self.algebra);
        for (idx, c) in &self.terms {
            out.add_term(idx.with_exponent(i, idx.exponent(i) + e), c.clone());
        }
        Ok(out)
    }

    fn map_terms(&self, mut f: impl FnMut(&Multivector) -> Multivector) -> Self {
        let mut out = Self::zero(self.algebra);
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), f(c));
        }
        out
    }

    /// Keeps only the terms satisfying `keep`.
    pub(crate) fn filter_terms(&self, mut keep: impl FnMut(&MultiIndex) -> bool) -> Self {
        CliffordPoly {
            algebra: self.algebra,
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| keep(a))
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// The degree-`k` component.
    pub fn homogeneous_part(&self, k: u32) -> Self {
        self.filter_terms(|a| a.degree() == k)
    }

    /// Substitution `x_i ↦ q·x_i`.
    pub fn q_shift(&self, i: usize) -> Result<Self> {
        self.algebra.check_index(i)?;
        Ok(self.q_shift_unchecked(i))
    }

    pub(crate) fn q_shift_unchecked(&self, i: usize) -> Self {
        let mut out = Self::zero(self.algebra);
        for (idx, c) in &self.terms {
            let e = idx.exponent(i);
            let c = if e == 0 {
                c.clone()
            } else {
                c.scale(&QScalar::q().pow(e))
            };
            out.add_term(idx.clone(), c);
        }
        out
    }

    /// Moves the polynomial into another algebra of the same dimension.
    pub fn lift(&self, algebra: Algebra) -> Result<Self> {
        let mut out = Self::zero(algebra);
        for (idx, c) in &self.terms {
            if idx.exponent(0) > 0 && !algebra.is_extended() {
                return Err(Error::AlgebraMismatch("x0 present".into()));
            }
            out.add_term(idx.clone(), c.lift(algebra)?);
        }
        Ok(out)
    }

    /// Substitutes `q = q0` in every coefficient, keeping the variables symbolic.
    pub fn specialize_q(&self, q0: &BigRational) -> Result<Self> {
        let mut out = Self::zero(self.algebra);
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), c.map_coeffs(|s| s.eval(q0).map(QScalar::from_rational))?);
        }
        Ok(out)
    }

    /// Exact value at a rational point and `q = q0`.
    ///
    /// `point` lists `x1..xm`, or `x0, x1..xm` for the extended algebra.
    pub fn evaluate(&self, point: &[BigRational], q0: &BigRational) -> Result<Multivector<BigRational>> {
        let m = self.dim();
        let offset = if self.algebra.is_extended() { 0 } else { 1 };
        if point.len() != m + 1 - offset {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                m + 1 - offset,
                point.len()
            )));
        }
        let mut out = Multivector::<BigRational>::zero(self.algebra);
        for (idx, c) in &self.terms {
            let mut mono = BigRational::from_integer(1.into());
            for i in offset..=m {
                let e = idx.exponent(i);
                if e > 0 {
                    mono *= num_traits::pow(point[i - offset].clone(), e as usize);
                }
            }
            if Zero::is_zero(&mono) {
                continue;
            }
            for (b, s) in c.terms() {
                out.add_term(b, s.eval(q0)? * &mono);
            }
        }
        Ok(out)
    }

    /// Flattened `(coefficient, factors, blade)` triples in canonical order.
    pub(crate) fn render_terms(&self) -> Vec<crate::render::Term> {
        self.terms
            .iter()
            .flat_map(|(idx, c)| {
                let factors = idx.factors();
                c.terms()
                    .map(move |(b, s)| (s.clone(), factors.clone(), b))
                    .collect::<Vec<_>>()
            })
            .collect()
    }

    /// The coefficient of `x^α e_A` as a scalar.
    pub fn component(&self, index: &MultiIndex, blade: Blade) -> QScalar {
        self.terms
            .get(index)
            .map(|c| c.coeff(blade))
            .unwrap_or_else(QScalar::zero)
    }
}

macro_rules! panicking_ops {
    ($($tr:ident $m:ident $checked:ident),*) => {$(
        /// Panics if the operands live in different algebras.
        impl std::ops::$tr<&CliffordPoly> for &CliffordPoly {
            type Output = CliffordPoly;
            fn $m(self, rhs: &CliffordPoly) -> CliffordPoly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl std::ops::$tr<CliffordPoly> for CliffordPoly {
            type Output = CliffordPoly;
            fn $m(self, rhs: CliffordPoly) -> CliffordPoly {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    )*};
}
panicking_ops!(Add add checked_add, Sub sub checked_sub, Mul mul checked_mul);

impl std::ops::Neg for &CliffordPoly {
    type Output = CliffordPoly;
    fn neg(self) -> CliffordPoly {
        CliffordPoly::neg(self)
    }
}

impl std::ops::Neg for CliffordPoly {
    type Output = CliffordPoly;
    fn neg(self) -> CliffordPoly {
        CliffordPoly::neg(&self)
    }
}

impl fmt::Display for CliffordPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::render::write_sum(f, &self.render_terms())
    }
}

/// `x̲ = Σ x_i e_i` in Cl(0,m).
pub fn vector_variable(m: usize) -> Result<CliffordPoly> {
    vector_variable_in(Algebra::new(m)?)
}

/// `Σ_{i=1}^m x_i e_i` inside the given algebra (`x0`/`e0` are not included).
pub fn vector_variable_in(algebra: Algebra) -> Result<CliffordPoly> {
    let mut out = CliffordPoly::zero(algebra);
    for i in 1..=algebra.dim() {
        let idx = MultiIndex::zero(algebra.dim()).with_exponent(i, 1);
        out.add_term(idx, Multivector::generator(algebra, i)?);
    }
    Ok(out)
}

/// `|x̲|² = Σ_{i=1}^m x_i²`.
pub fn norm_squared_in(algebra: Algebra) -> CliffordPoly {
    let mut out = CliffordPoly::zero(algebra);
    for i in 1..=algebra.dim() {
        let idx = MultiIndex::zero(algebra.dim()).with_exponent(i, 2);
        out.add_term(idx, Multivector::one(algebra));
    }
    out
}

pub fn homogeneous_part(p: &CliffordPoly, k: u32) -> CliffordPoly {
    p.homogeneous_part(k)
}

pub fn q_shift(p: &CliffordPoly, i: usize) -> Result<CliffordPoly> {
    p.q_shift(i)
}

pub fn evaluate_poly(p: &CliffordPoly, point: &[BigRational], q0: &BigRational) -> Result<Multivector<BigRational>> {
    p.evaluate(point, q0)
}
