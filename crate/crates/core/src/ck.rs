//! Cauchy-Kovalevskaya extension from `x1..xm` to `x0..xm`.
//!
//! `CK(f) = Σ_k x0^k / [k]_q! · (ē0 D)^k f` with `ē0 = −e0` and `D` the
//! spatial q-Dirac operator. For polynomial `f` each application of `D`
//! lowers the degree, so the sum is finite.

use crate::clifford::{Algebra, Blade, Multivector};
use crate::cpoly::CliffordPoly;
use crate::error::{Error, Result};
use crate::qfield::q_factorial;
use crate::qops::{partial_unchecked, spatial_dirac};

fn e0_bar(algebra: Algebra) -> Multivector {
    -&Multivector::generator(algebra, 0).expect("extended algebra")
}

/// `−e0 ∂^q_{x0} F − Σ_{i≥1} e_i ∂^q_{x_i} F`. Inputs over the plain algebra
/// are lifted first.
pub fn extended_dirac(f: &CliffordPoly) -> CliffordPoly {
    let alg = f.algebra().with_e0();
    let f = f.lift(alg).expect("lifting into the extended algebra");
    let e0 = Multivector::generator(alg, 0).expect("extended algebra");
    let t0 = partial_unchecked(&f, 0).left_mul(&e0).expect("same algebra");
    &spatial_dirac(&f) - &t0
}

/// The monogenic extension of `f`, with `extended_dirac(CK f) = 0` and
/// `CK f |_{x0=0} = f`.
pub fn ck_extend(f: &CliffordPoly) -> Result<CliffordPoly> {
    if f.uses_extension() {
        return Err(Error::UsesExtendedAlgebra);
    }
    let alg = f.algebra().with_e0();
    let bar = e0_bar(alg);
    let mut term = f.lift(alg)?;
    let mut out = term.clone();
    let bound = f.degree().unwrap_or(0);
    let mut k = 0;
    loop {
        term = spatial_dirac(&term).left_mul(&bar)?;
        if term.is_zero() {
            break;
        }
        k += 1;
        assert!(k <= bound, "Cauchy-Kovalevskaya series did not terminate at degree {bound}");
        let scaled = term.mul_variable(0, k)?.scale(&q_factorial(k).inv()?);
        out = &out + &scaled;
    }
    Ok(out)
}

/// Substitutes `x0 = 0`. The result drops `e0` from its algebra when no
/// coefficient still uses it.
pub fn restrict_x0(f: &CliffordPoly) -> CliffordPoly {
    let kept = f.filter_terms(|a| a.exponent(0) == 0);
    let uses_e0 = kept.terms().any(|(_, c)| c.terms().any(|(b, _)| b.contains(0)));
    if uses_e0 || !kept.algebra().is_extended() {
        kept
    } else {
        kept.lift(kept.algebra().without_e0())
            .expect("no e0 content")
    }
}

/// `ē0 e_l` for `l ≥ 1`, as it appears in the extension of `x_l`.
pub fn e0_bar_e(algebra: Algebra, l: usize) -> Result<Multivector> {
    let alg = algebra.with_e0();
    alg.check_index(l)?;
    let b = Blade::generator(l);
    e0_bar(alg).geometric_product(&Multivector::blade(alg, b, crate::qfield::QScalar::one())?)
}
