//! Seeded random polynomials for identity sweeps.

use rand::Rng;

use crate::clifford::{Algebra, Blade, Multivector};
use crate::cpoly::{CliffordPoly, MultiIndex};
use crate::qfield::{QPoly, QScalar};

/// Shape of the random polynomials to draw.
#[derive(Clone, Copy, Debug)]
pub struct PolySpec {
    pub max_degree: u32,
    pub max_terms: usize,
    /// When set, every term has exactly degree `max_degree`.
    pub homogeneous: bool,
}

impl PolySpec {
    pub fn new(max_degree: u32, max_terms: usize) -> Self {
        PolySpec {
            max_degree,
            max_terms,
            homogeneous: false,
        }
    }

    pub fn homogeneous(degree: u32, max_terms: usize) -> Self {
        PolySpec {
            max_degree: degree,
            max_terms,
            homogeneous: true,
        }
    }
}

/// A small nonzero coefficient: an integer, sometimes times a low-degree
/// polynomial in `q`, occasionally divided by `1 + q`.
pub fn random_scalar<R: Rng + ?Sized>(rng: &mut R) -> QScalar {
    let mut c = 0;
    while c == 0 {
        c = rng.gen_range(-4i64..=4);
    }
    let mut s = QScalar::from_int(c);
    match rng.gen_range(0..6) {
        0 | 1 => {
            let p: Vec<i64> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(-2..=2)).collect();
            let p = QScalar::from_poly(&QPoly::from_ints(&p) + &QPoly::one());
            if !p.is_zero() {
                s = &s * &p;
            }
        }
        2 => s = &s / &crate::qfield::q_bracket(2),
        _ => {}
    }
    s
}

/// Exponent vector over `x1..xm` with total degree `k`.
pub fn random_index<R: Rng + ?Sized>(rng: &mut R, dim: usize, k: u32) -> MultiIndex {
    let mut exps = vec![0u32; dim];
    for _ in 0..k {
        exps[rng.gen_range(0..dim)] += 1;
    }
    MultiIndex::spatial(&exps)
}

pub fn random_blade<R: Rng + ?Sized>(rng: &mut R, algebra: Algebra) -> Blade {
    let mask: u32 = rng.gen_range(0..(1u32 << algebra.dim()));
    Blade::from_mask(mask << 1)
}

/// Random polynomial over `x1..xm` (no `x0`/`e0` content).
pub fn random_poly<R: Rng + ?Sized>(rng: &mut R, algebra: Algebra, spec: PolySpec) -> CliffordPoly {
    let mut p = CliffordPoly::zero(algebra);
    let n = rng.gen_range(1..=spec.max_terms.max(1));
    for _ in 0..n {
        let k = if spec.homogeneous {
            spec.max_degree
        } else {
            rng.gen_range(0..=spec.max_degree)
        };
        let idx = random_index(rng, algebra.dim(), k);
        let blade = random_blade(rng, algebra);
        let c = Multivector::blade(algebra, blade, random_scalar(rng)).expect("blade drawn from algebra");
        let idx = if algebra.is_extended() {
            let mut full = idx.exponents().to_vec();
            full[0] = 0;
            MultiIndex::from_full(full)
        } else {
            idx
        };
        p.add_term(idx, c);
    }
    p
}

/// Like [`random_poly`], but never the zero polynomial.
pub fn random_nonzero_poly<R: Rng + ?Sized>(rng: &mut R, algebra: Algebra, spec: PolySpec) -> CliffordPoly {
    loop {
        let p = random_poly(rng, algebra, spec);
        if !p.is_zero() {
            return p;
        }
    }
}
