//! The Clifford algebra Cl(0,m) and its extension by a generator `e0`.
//!
//! Every generator squares to `-1`. Basis blades are bitmasks: bit `i` set
//! means `e_i` occurs, with the factors in ascending index order. Bit 0 is
//! reserved for `e0`, which only appears in extended algebras.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qfield::QScalar;

/// Largest supported generator index.
pub const MAX_DIM: usize = 30;

/// A basis blade `e_{h1} e_{h2} … e_{hr}` with `h1 < h2 < … < hr`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Blade(u32);

impl Blade {
    /// The identity `e_∅`.
    pub const SCALAR: Blade = Blade(0);

    pub fn from_mask(mask: u32) -> Self {
        Blade(mask)
    }

    /// The single generator `e_i`.
    pub fn generator(i: usize) -> Self {
        assert!(i <= MAX_DIM, "generator index {i} exceeds {MAX_DIM}");
        Blade(1 << i)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn grade(self) -> u32 {
        self.0.count_ones()
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    /// Generator indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |i| self.0 & (1 << i) != 0)
    }

    /// Product of two blades: the resulting blade and whether the sign is negative.
    ///
    /// The sign counts the transpositions needed to sort the concatenated
    /// generator list, then each cancelled pair `e_i e_i` contributes `-1`.
    pub fn product(self, rhs: Blade) -> (Blade, bool) {
        let mut swaps = 0u32;
        let mut b = rhs.0;
        while b != 0 {
            let i = b.trailing_zeros();
            // generators of `self` with a larger index must hop over e_i
            swaps += (self.0 >> (i + 1)).count_ones();
            b &= b - 1;
        }
        swaps += (self.0 & rhs.0).count_ones();
        (Blade(self.0 ^ rhs.0), swaps % 2 == 1)
    }

    /// Whether Clifford conjugation flips this blade's sign: `(-1)^{k(k+1)/2}`.
    pub fn conjugation_negates(self) -> bool {
        let k = self.grade();
        (k * (k + 1) / 2) % 2 == 1
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for i in self.indices() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "e{i}")?;
        }
        Ok(())
    }
}

/// Which algebra an element lives in: generators `e1..em`, plus `e0` when extended.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Algebra {
    dim: usize,
    extended: bool,
}

impl Algebra {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidArgument(format!(
                "dimension must be in 1..={MAX_DIM}, got {dim}"
            )));
        }
        Ok(Algebra {
            dim,
            extended: false,
        })
    }

    /// Cl(0,m) with the extra generator `e0`.
    pub fn extended(dim: usize) -> Result<Self> {
        Ok(Algebra {
            extended: true,
            ..Self::new(dim)?
        })
    }

    pub fn dim(self) -> usize {
        self.dim
    }

    pub fn is_extended(self) -> bool {
        self.extended
    }

    pub fn with_e0(self) -> Self {
        Algebra {
            extended: true,
            ..self
        }
    }

    pub fn without_e0(self) -> Self {
        Algebra {
            extended: false,
            ..self
        }
    }

    /// Whether index `i` names a generator (or variable) of this algebra.
    pub fn has_index(self, i: usize) -> bool {
        (1..=self.dim).contains(&i) || (i == 0 && self.extended)
    }

    pub fn check_index(self, i: usize) -> Result<()> {
        if self.has_index(i) {
            Ok(())
        } else {
            Err(Error::InvalidVariable {
                index: i,
                dim: self.dim,
            })
        }
    }

    pub fn admits(self, blade: Blade) -> bool {
        blade.indices().all(|i| self.has_index(i))
    }

    /// All blades of the algebra in ascending mask order.
    pub fn blades(self) -> impl Iterator<Item = Blade> {
        let lo = if self.extended { 0 } else { 1 };
        let full: u32 = ((1u64 << (self.dim + 1)) - 1) as u32;
        let allowed = full & !((1u32 << lo) - 1);
        (0..=full).filter(move |m| m & !allowed == 0).map(Blade)
    }

    pub(crate) fn join(self, other: Algebra) -> Result<Algebra> {
        if self == other {
            Ok(self)
        } else {
            Err(Error::AlgebraMismatch(format!("{self} vs {other}")))
        }
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cl(0,{})", self.dim)?;
        if self.extended {
            write!(f, "+e0")?;
        }
        Ok(())
    }
}

/// Coefficient ring for multivectors.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Coefficient for QScalar {
    fn zero() -> Self {
        QScalar::zero()
    }
    fn one() -> Self {
        QScalar::one()
    }
    fn is_zero(&self) -> bool {
        QScalar::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Coefficient for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// Sparse element `Σ_A λ_A e_A`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Debug)]
pub struct Multivector<T = QScalar> {
    algebra: Algebra,
    terms: BTreeMap<Blade, T>,
}

impl<T: Coefficient> Multivector<T> {
    pub fn zero(algebra: Algebra) -> Self {
        Multivector {
            algebra,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(algebra: Algebra, c: T) -> Self {
        Self::zero(algebra).with_term(Blade::SCALAR, c)
    }

    pub fn one(algebra: Algebra) -> Self {
        Self::scalar(algebra, T::one())
    }

    /// `c · e_A`; the blade must belong to the algebra.
    pub fn blade(algebra: Algebra, blade: Blade, c: T) -> Result<Self> {
        if !algebra.admits(blade) {
            return Err(Error::AlgebraMismatch(format!("blade {blade} is not in {algebra}")));
        }
        Ok(Self::zero(algebra).with_term(blade, c))
    }

    /// The generator `e_i`.
    pub fn generator(algebra: Algebra, i: usize) -> Result<Self> {
        algebra.check_index(i)?;
        Ok(Self::zero(algebra).with_term(Blade::generator(i), T::one()))
    }

    fn with_term(mut self, blade: Blade, c: T) -> Self {
        self.add_term(blade, c);
        self
    }

    /// Accumulates `c · e_A`, dropping the entry if it cancels.
    pub(crate) fn add_term(&mut self, blade: Blade, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(blade) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
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

    pub fn terms(&self) -> impl Iterator<Item = (Blade, &T)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, blade: Blade) -> T {
        self.terms.get(&blade).cloned().unwrap_or_else(T::zero)
    }

    /// Coefficient of the identity blade.
    pub fn scalar_part(&self) -> T {
        self.coeff(Blade::SCALAR)
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|b| *b == Blade::SCALAR)
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        let mut out = Multivector::zero(self.algebra.join(rhs.algebra)?);
        out.terms = self.terms.clone();
        for (b, c) in &rhs.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Multivector {
            algebra: self.algebra,
            terms: self.terms.iter().map(|(b, c)| (*b, c.neg())).collect(),
        }
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(&rhs.neg())
    }

    /// Multiplies every coefficient by the central scalar `c`.
    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.algebra);
        }
        let mut out = Self::zero(self.algebra);
        for (b, a) in &self.terms {
            out.add_term(*b, a.mul(c));
        }
        out
    }

    /// Bilinear extension of the blade product.
    pub fn geometric_product(&self, rhs: &Self) -> Result<Self> {
        let mut out = Multivector::zero(self.algebra.join(rhs.algebra)?);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let (blade, negative) = a.product(*b);
                let c = ca.mul(cb);
                out.add_term(blade, if negative { c.neg() } else { c });
            }
        }
        Ok(out)
    }

    /// Clifford conjugation: the anti-automorphism with `conj(e_i) = -e_i`.
    pub fn conjugate(&self) -> Self {
        Multivector {
            algebra: self.algebra,
            terms: self
                .terms
                .iter()
                .map(|(b, c)| {
                    (
                        *b,
                        if b.conjugation_negates() {
                            c.neg()
                        } else {
                            c.clone()
                        },
                    )
                })
                .collect(),
        }
    }

    /// Re-homes the element in a larger algebra (e.g. adding `e0`).
    pub fn lift(&self, algebra: Algebra) -> Result<Self> {
        if self.terms.keys().any(|b| !algebra.admits(*b)) || algebra.dim != self.algebra.dim {
            return Err(Error::AlgebraMismatch(format!(
                "cannot move {} element into {algebra}",
                self.algebra
            )));
        }
        Ok(Multivector {
            algebra,
            terms: self.terms.clone(),
        })
    }

    pub fn map_coeffs<U: Coefficient>(&self, mut f: impl FnMut(&T) -> Result<U>) -> Result<Multivector<U>> {
        let mut out = Multivector::zero(self.algebra);
        for (b, c) in &self.terms {
            out.add_term(*b, f(c)?);
        }
        Ok(out)
    }
}

impl Multivector<QScalar> {
    /// Exact value at `q = q0`.
    pub fn evaluate(&self, q0: &BigRational) -> Result<Multivector<BigRational>> {
        self.map_coeffs(|c| c.eval(q0))
    }
}

macro_rules! panicking_ops {
    ($($tr:ident $m:ident $checked:ident),*) => {$(
        /// Panics if the operands live in different algebras.
        impl<T: Coefficient> std::ops::$tr<&Multivector<T>> for &Multivector<T> {
            type Output = Multivector<T>;
            fn $m(self, rhs: &Multivector<T>) -> Multivector<T> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    )*};
}
panicking_ops!(Add add checked_add, Sub sub checked_sub, Mul mul geometric_product);

impl<T: Coefficient> std::ops::Neg for &Multivector<T> {
    type Output = Multivector<T>;
    fn neg(self) -> Multivector<T> {
        Multivector::neg(self)
    }
}

/// Free functions mirroring the operation names used in the docs.
pub fn geometric_product<T: Coefficient>(a: &Multivector<T>, b: &Multivector<T>) -> Result<Multivector<T>> {
    a.geometric_product(b)
}

pub fn conjugate<T: Coefficient>(a: &Multivector<T>) -> Multivector<T> {
    a.conjugate()
}

pub fn scalar_part<T: Coefficient>(a: &Multivector<T>) -> T {
    a.scalar_part()
}

impl fmt::Display for Multivector<QScalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(b, c)| (c.clone(), Vec::new(), *b))
            .collect();
        crate::render::write_sum(f, &terms)
    }
}

impl fmt::Display for Multivector<BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|(b, c)| (QScalar::from_rational(c.clone()), Vec::new(), *b))
            .collect();
        crate::render::write_sum(f, &terms)
    }
}
