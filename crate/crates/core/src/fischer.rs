//! Fischer inner product on homogeneous polynomials and the monogenic
//! Fischer decomposition `P_k = M_k ⊕ x̲ P_{k−1}`.
//!
//! The decomposition is computed by solving `D(x̲Q) = D(P)` for `Q` over
//! ℚ(q). The map `Q ↦ D(x̲Q)` on `P_{k−1}` is invertible and preserves the
//! parity pattern `(α_l + [l ∈ A]) mod 2` of a basis element `x^α e_A`, so the
//! system splits into small independent blocks.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::clifford::{Algebra, Blade, Multivector};
use crate::cpoly::{multi_indices, vector_variable_in, CliffordPoly, MultiIndex};
use crate::error::{Error, Result};
use crate::linalg::{block_components, Matrix};
use crate::qfield::{q_factorial, QScalar};
use crate::qops::{partial_unchecked, spatial_dirac};

/// `[α]_q! = Π_i [α_i]_q!`.
pub fn multi_factorial(alpha: &MultiIndex) -> QScalar {
    alpha
        .exponents()
        .iter()
        .fold(QScalar::one(), |acc, &a| &acc * &q_factorial(a))
}

fn check_homogeneous(p: &CliffordPoly, k: u32) -> Result<()> {
    if p.is_homogeneous(k) {
        Ok(())
    } else {
        Err(Error::NotHomogeneous { expected: k as usize })
    }
}

/// `⟨R1, R2⟩_{k,q} = Σ_{|α|=k} [α]_q! (conj(a¹_α) a²_α)_0`.
pub fn fischer_inner(r1: &CliffordPoly, r2: &CliffordPoly, k: u32) -> Result<QScalar> {
    check_homogeneous(r1, k)?;
    check_homogeneous(r2, k)?;
    let alg = r1.algebra().join(r2.algebra())?;
    let mut acc = QScalar::zero();
    for (alpha, a1) in r1.terms() {
        let a2 = r2.coeff(alpha);
        if a2.is_zero() {
            continue;
        }
        let (a1, a2) = (a1.lift(alg)?, a2.lift(alg)?);
        let s = a1.conjugate().geometric_product(&a2)?.scalar_part();
        if !s.is_zero() {
            acc += &(&multi_factorial(alpha) * &s);
        }
    }
    Ok(acc)
}

/// The same product through the operator `conj(R1)(∂^q)` applied to `R2`:
/// each `x_j` in `conj(R1)` is replaced by `∂^q_{x_j}` and the scalar part of
/// the resulting constant is taken.
pub fn fischer_inner_operator(r1: &CliffordPoly, r2: &CliffordPoly, k: u32) -> Result<QScalar> {
    check_homogeneous(r1, k)?;
    check_homogeneous(r2, k)?;
    let alg = r1.algebra().join(r2.algebra())?;
    let r2 = r2.lift(alg)?;
    let mut total = CliffordPoly::zero(alg);
    for (alpha, a1) in r1.terms() {
        let mut d = r2.clone();
        for (i, &e) in alpha.exponents().iter().enumerate() {
            for _ in 0..e {
                d = partial_unchecked(&d, i);
            }
        }
        total = &total + &d.left_mul(&a1.lift(alg)?.conjugate())?;
    }
    Ok(total.coeff(&MultiIndex::zero(alg.dim())).scalar_part())
}

/// Both sides of the adjointness of `x̲` on `(Q, P) ∈ P_k × P_{k+1}`:
/// `(⟨x̲Q, P⟩_{k+1,q}, −⟨Q, Σ_i e_i ∂^q_{x_i} P⟩_{k,q})`. The second entry
/// equals `⟨Q, D P⟩_{k,q}`.
pub fn fischer_adjoint_check(q: &CliffordPoly, p: &CliffordPoly, k: u32) -> Result<(QScalar, QScalar)> {
    check_homogeneous(q, k)?;
    check_homogeneous(p, k + 1)?;
    if q.uses_extension() || p.uses_extension() {
        return Err(Error::UsesExtendedAlgebra);
    }
    let alg = q.algebra().join(p.algebra())?;
    let (q, p) = (q.lift(alg)?, p.lift(alg)?);
    let xq = vector_variable_in(alg)?.checked_mul(&q)?;
    let lhs = fischer_inner(&xq, &p, k + 1)?;
    let rhs = fischer_inner(&q, &spatial_dirac(&p), k)?;
    Ok((lhs, rhs))
}

/// Number of basis elements `x^α e_A` of `P_k` over `Cl(0,m)`:
/// `C(k+m−1, m−1)·2^m`.
pub fn homogeneous_dimension(m: usize, k: u32) -> usize {
    multi_indices(m, k).len() << m
}

/// Basis of `P_k`: multi-indices in canonical order, each crossed with the
/// blades in ascending mask order.
pub fn homogeneous_basis(algebra: Algebra, k: u32) -> Vec<(MultiIndex, Blade)> {
    let blades: Vec<Blade> = algebra.blades().collect();
    multi_indices(algebra.dim(), k)
        .into_iter()
        .flat_map(|a| blades.iter().map(move |&b| (a.clone(), b)))
        .collect()
}

fn basis_element(algebra: Algebra, alpha: &MultiIndex, blade: Blade) -> CliffordPoly {
    let c = Multivector::blade(algebra, blade, QScalar::one()).expect("blade of algebra");
    CliffordPoly::monomial(alpha.clone(), c).expect("index of algebra")
}

/// Sparse matrix of a linear map between two homogeneous spaces, in the
/// given bases.
fn operator_matrix(
    algebra: Algebra,
    domain: &[(MultiIndex, Blade)],
    codomain: &[(MultiIndex, Blade)],
    map: impl Fn(&CliffordPoly) -> CliffordPoly,
) -> Vec<((usize, usize), QScalar)> {
    let row: HashMap<(&MultiIndex, Blade), usize> =
        codomain.iter().enumerate().map(|(r, (a, b))| ((a, *b), r)).collect();
    let mut entries = Vec::new();
    for (c, (alpha, blade)) in domain.iter().enumerate() {
        let image = map(&basis_element(algebra, alpha, *blade));
        for (idx, mv) in image.terms() {
            for (b, v) in mv.terms() {
                let r = row[&(idx, b)];
                entries.push(((r, c), v.clone()));
            }
        }
    }
    entries
}

fn dense_block(entries: &HashMap<(usize, usize), QScalar>, rows: &[usize], cols: &[usize]) -> Matrix {
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            if let Some(v) = entries.get(&(r, c)) {
                m.set(i, j, v.clone());
            }
        }
    }
    m
}

/// The split `P = monogenic + x̲·cofactor`.
#[derive(Clone, Debug, PartialEq)]
pub struct FischerSplit {
    pub monogenic: CliffordPoly,
    pub cofactor: CliffordPoly,
}

/// Prepared block system for splitting elements of `P_k`; reusable across
/// many inputs of the same algebra and degree.
pub struct FischerSolver {
    algebra: Algebra,
    k: u32,
    basis: Vec<(MultiIndex, Blade)>,
    row_of: HashMap<(MultiIndex, Blade), usize>,
    blocks: Vec<Block>,
}

struct Block {
    rows: Vec<usize>,
    cols: Vec<usize>,
    matrix: Matrix,
    /// Computed on first use; `None` if the block is singular.
    inverse: OnceLock<Option<Matrix>>,
}

impl FischerSolver {
    pub fn new(algebra: Algebra, k: u32) -> Result<Self> {
        if algebra.is_extended() {
            return Err(Error::UsesExtendedAlgebra);
        }
        let basis = if k == 0 { Vec::new() } else { homogeneous_basis(algebra, k - 1) };
        let xv = vector_variable_in(algebra)?;
        let entries: HashMap<(usize, usize), QScalar> =
            operator_matrix(algebra, &basis, &basis, |b| spatial_dirac(&(&xv * b)))
                .into_iter()
                .collect();
        let nz: Vec<(usize, usize)> = entries.keys().copied().collect();
        let mut blocks = Vec::new();
        for (rows, cols) in block_components(basis.len(), basis.len(), &nz) {
            if rows.len() != cols.len() {
                return Err(Error::SingularSystem);
            }
            let matrix = dense_block(&entries, &rows, &cols);
            blocks.push(Block {
                rows,
                cols,
                matrix,
                inverse: OnceLock::new(),
            });
        }
        let row_of = basis.iter().cloned().enumerate().map(|(i, key)| (key, i)).collect();
        Ok(FischerSolver {
            algebra,
            k,
            basis,
            row_of,
            blocks,
        })
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn split(&self, p: &CliffordPoly) -> Result<FischerSplit> {
        check_homogeneous(p, self.k)?;
        if p.uses_extension() {
            return Err(Error::UsesExtendedAlgebra);
        }
        let p = p.lift(self.algebra)?;
        if self.k == 0 || p.is_zero() {
            return Ok(FischerSplit {
                monogenic: p,
                cofactor: CliffordPoly::zero(self.algebra),
            });
        }
        let dp = spatial_dirac(&p);
        let mut rhs = vec![QScalar::zero(); self.basis.len()];
        for (idx, mv) in dp.terms() {
            for (b, v) in mv.terms() {
                rhs[self.row_of[&(idx.clone(), b)]] = v.clone();
            }
        }
        let mut cofactor = CliffordPoly::zero(self.algebra);
        for block in &self.blocks {
            let b: Vec<QScalar> = block.rows.iter().map(|&r| rhs[r].clone()).collect();
            if b.iter().all(QScalar::is_zero) {
                continue;
            }
            let inv = block.inverse.get_or_init(|| block.matrix.inverse().ok());
            let x = inv.as_ref().ok_or(Error::SingularSystem)?.mul_vec(&b);
            for (&c, v) in block.cols.iter().zip(x) {
                if v.is_zero() {
                    continue;
                }
                let (alpha, blade) = &self.basis[c];
                cofactor.add_term(alpha.clone(), Multivector::blade(self.algebra, *blade, v)?);
            }
        }
        let xv = vector_variable_in(self.algebra)?;
        let monogenic = &p - &(&xv * &cofactor);
        if !spatial_dirac(&monogenic).is_zero() {
            return Err(Error::SingularSystem);
        }
        Ok(FischerSplit { monogenic, cofactor })
    }
}

/// Solvers shared across calls, keyed by algebra and degree.
fn shared_solver(algebra: Algebra, k: u32) -> Result<Arc<FischerSolver>> {
    static SOLVERS: OnceLock<Mutex<HashMap<(Algebra, u32), Arc<FischerSolver>>>> = OnceLock::new();
    let solvers = SOLVERS.get_or_init(Default::default);
    if let Some(s) = solvers.lock().expect("solver cache").get(&(algebra, k)) {
        return Ok(Arc::clone(s));
    }
    let solver = Arc::new(FischerSolver::new(algebra, k)?);
    let mut cache = solvers.lock().expect("solver cache");
    Ok(Arc::clone(cache.entry((algebra, k)).or_insert(solver)))
}

/// Splits `P ∈ P_k` as `M + x̲Q` with `D M = 0`.
pub fn fischer_step(p: &CliffordPoly, k: u32) -> Result<FischerSplit> {
    if p.uses_extension() {
        return Err(Error::UsesExtendedAlgebra);
    }
    shared_solver(p.algebra(), k)?.split(p)
}

/// Components `M_k, M_{k−1}, …, M_0` with `P = Σ_s x̲^s M_{k−s}`.
#[derive(Clone, Debug, PartialEq)]
pub struct FischerTower {
    pub components: Vec<CliffordPoly>,
}

impl FischerTower {
    /// `Σ_s x̲^s · components[s]`.
    pub fn recompose(&self) -> Result<CliffordPoly> {
        let Some(first) = self.components.first() else {
            return Err(Error::InvalidArgument("empty tower".into()));
        };
        let alg = first.algebra();
        let xv = vector_variable_in(alg)?;
        let mut out = CliffordPoly::zero(alg);
        let mut power = CliffordPoly::one(alg);
        for c in &self.components {
            out = &out + &(&power * c);
            power = &power * &xv;
        }
        Ok(out)
    }
}

pub fn fischer_full(p: &CliffordPoly, k: u32) -> Result<FischerTower> {
    check_homogeneous(p, k)?;
    let mut components = Vec::with_capacity(k as usize + 1);
    let mut rest = p.clone();
    for j in (0..=k).rev() {
        let split = fischer_step(&rest, j)?;
        components.push(split.monogenic);
        rest = split.cofactor;
    }
    Ok(FischerTower { components })
}

/// A basis of the monogenic polynomials `M_k = ker D ∩ P_k`.
pub fn monogenic_basis(algebra: Algebra, k: u32) -> Result<Vec<CliffordPoly>> {
    if algebra.is_extended() {
        return Err(Error::UsesExtendedAlgebra);
    }
    let domain = homogeneous_basis(algebra, k);
    if k == 0 {
        return Ok(domain.iter().map(|(a, b)| basis_element(algebra, a, *b)).collect());
    }
    let codomain = homogeneous_basis(algebra, k - 1);
    let entries: HashMap<(usize, usize), QScalar> =
        operator_matrix(algebra, &domain, &codomain, spatial_dirac).into_iter().collect();
    let nz: Vec<(usize, usize)> = entries.keys().copied().collect();
    let mut out = Vec::new();
    for (rows, cols) in block_components(codomain.len(), domain.len(), &nz) {
        if cols.is_empty() {
            continue;
        }
        let m = dense_block(&entries, &rows, &cols);
        for v in m.nullspace() {
            let mut poly = CliffordPoly::zero(algebra);
            for (&c, x) in cols.iter().zip(v) {
                if !x.is_zero() {
                    let (alpha, blade) = &domain[c];
                    poly.add_term(alpha.clone(), Multivector::blade(algebra, *blade, x)?);
                }
            }
            out.push(poly);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::q_bracket;
    use crate::qops::q_dirac;
    use crate::random::{random_nonzero_poly, random_poly, PolySpec};
    use num_rational::BigRational;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn alg(m: usize) -> Algebra {
        Algebra::new(m).unwrap()
    }

    fn x(m: usize, exps: &[u32]) -> CliffordPoly {
        CliffordPoly::monomial(MultiIndex::spatial(exps), Multivector::one(alg(m))).unwrap()
    }

    fn xe(m: usize, exps: &[u32], i: usize) -> CliffordPoly {
        CliffordPoly::monomial(MultiIndex::spatial(exps), Multivector::generator(alg(m), i).unwrap()).unwrap()
    }

    #[test]
    fn inner_product_examples() {
        assert_eq!(fischer_inner(&x(2, &[2, 0]), &x(2, &[2, 0]), 2).unwrap(), q_bracket(2));
        assert!(fischer_inner(&x(2, &[1, 1]), &x(2, &[2, 0]), 2).unwrap().is_zero());
        let r = xe(1, &[1], 1);
        assert!(fischer_inner(&r, &r, 1).unwrap().is_one());
        assert_eq!(
            fischer_inner(&x(2, &[2, 0]), &x(2, &[1, 0]), 2),
            Err(Error::NotHomogeneous { expected: 2 })
        );
    }

    #[test]
    fn derivative_kernel_is_diagonal() {
        for m in 1..=3 {
            let a = alg(m);
            let all: Vec<MultiIndex> = (0..=4).flat_map(|k| multi_indices(m, k)).collect();
            for alpha in &all {
                for beta in &all {
                    let mut p = CliffordPoly::monomial(beta.clone(), Multivector::one(a)).unwrap();
                    for (i, &e) in alpha.exponents().iter().enumerate() {
                        for _ in 0..e {
                            p = partial_unchecked(&p, i);
                        }
                    }
                    let expected = if alpha == beta {
                        CliffordPoly::constant(a, multi_factorial(alpha))
                    } else if alpha.degree() >= beta.degree() {
                        CliffordPoly::zero(a)
                    } else {
                        continue;
                    };
                    assert_eq!(p, expected, "{alpha:?} {beta:?}");
                }
            }
        }
    }

    #[test]
    fn operator_form_matches_sum() {
        let mut rng = StdRng::seed_from_u64(11);
        for m in 1..=3 {
            for k in 0..=4 {
                for _ in 0..4 {
                    let r1 = random_poly(&mut rng, alg(m), PolySpec::homogeneous(k, 4));
                    let r2 = random_poly(&mut rng, alg(m), PolySpec::homogeneous(k, 4));
                    assert_eq!(
                        fischer_inner(&r1, &r2, k).unwrap(),
                        fischer_inner_operator(&r1, &r2, k).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn adjoint_examples() {
        let (l, r) = fischer_adjoint_check(&x(2, &[0, 0]), &xe(2, &[1, 0], 1), 0).unwrap();
        assert!(l.is_one() && r.is_one());
        let (l, r) = fischer_adjoint_check(&x(2, &[1, 0]), &x(2, &[0, 2]), 1).unwrap();
        assert!(l.is_zero() && r.is_zero());
    }

    #[test]
    fn positive_definite_at_sample_points() {
        let mut rng = StdRng::seed_from_u64(5);
        let points = [BigRational::new(1.into(), 2.into()), BigRational::from_integer(1.into()), BigRational::from_integer(2.into())];
        for _ in 0..30 {
            let r = random_nonzero_poly(&mut rng, alg(2), PolySpec::homogeneous(3, 4));
            let s = fischer_inner(&r, &r, 3).unwrap();
            for q0 in &points {
                let v = s.eval(q0).unwrap();
                // A coefficient such as 1 − q can vanish at the sample point.
                if r.specialize_q(q0).unwrap().is_zero() {
                    assert_eq!(v, BigRational::from_integer(0.into()));
                } else {
                    assert!(v > BigRational::from_integer(0.into()), "{r} at {q0}");
                }
            }
        }
    }

    #[test]
    fn step_on_monogenic_and_multiples() {
        let p = &xe(2, &[1, 0], 1) - &xe(2, &[0, 1], 2);
        let s = fischer_step(&p, 1).unwrap();
        assert_eq!(s.monogenic, p);
        assert!(s.cofactor.is_zero());

        let r = &xe(2, &[1, 0], 2) + &x(2, &[0, 1]).scale(&QScalar::q());
        let xr = &vector_variable_in(alg(2)).unwrap() * &r;
        let s = fischer_step(&xr, 2).unwrap();
        assert!(s.monogenic.is_zero());
        assert_eq!(s.cofactor, r);
    }

    #[test]
    fn step_k0_and_errors() {
        let c = CliffordPoly::constant(alg(2), QScalar::from_int(3));
        let s = fischer_step(&c, 0).unwrap();
        assert_eq!(s.monogenic, c);
        assert!(s.cofactor.is_zero());
        assert!(matches!(fischer_step(&x(2, &[1, 0]), 2), Err(Error::NotHomogeneous { .. })));
    }

    #[test]
    fn random_splits_are_sound() {
        let mut rng = StdRng::seed_from_u64(3);
        let xv3 = vector_variable_in(alg(3)).unwrap();
        for k in 1..=3 {
            let solver = FischerSolver::new(alg(3), k).unwrap();
            for _ in 0..5 {
                let p = random_poly(&mut rng, alg(3), PolySpec::homogeneous(k, 5));
                let s = solver.split(&p).unwrap();
                assert!(q_dirac(&s.monogenic).unwrap().is_zero());
                assert_eq!(&s.monogenic + &(&xv3 * &s.cofactor), p);
                assert!(fischer_inner(&s.monogenic, &(&xv3 * &s.cofactor), k).unwrap().is_zero());
            }
        }
    }

    /// Gauss-Jordan with full fractions, no pivot heuristics.
    fn gauss_jordan(mut a: Vec<Vec<QScalar>>, mut b: Vec<QScalar>) -> Vec<QScalar> {
        let n = b.len();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("nonsingular");
            a.swap(c, p);
            b.swap(c, p);
            let inv = a[c][c].inv().unwrap();
            for j in 0..n {
                a[c][j] = &a[c][j] * &inv;
            }
            b[c] = &b[c] * &inv;
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for j in 0..n {
                        let t = &f * &a[c][j];
                        a[r][j] = &a[r][j] - &t;
                    }
                    let t = &f * &b[c];
                    b[r] = &b[r] - &t;
                }
            }
        }
        b
    }

    /// Cofactor of the split as the orthogonal projection of `p` onto
    /// `x̲ P_{k−1}` in the Fischer product.
    fn projection_cofactor(p: &CliffordPoly, k: u32) -> CliffordPoly {
        let a = p.algebra();
        let xv = vector_variable_in(a).unwrap();
        let basis: Vec<CliffordPoly> =
            homogeneous_basis(a, k - 1).iter().map(|(al, b)| basis_element(a, al, *b)).collect();
        let images: Vec<CliffordPoly> = basis.iter().map(|b| &xv * b).collect();
        let gram = images
            .iter()
            .map(|u| images.iter().map(|v| fischer_inner(u, v, k).unwrap()).collect())
            .collect();
        let rhs = images.iter().map(|u| fischer_inner(u, p, k).unwrap()).collect();
        let c = gauss_jordan(gram, rhs);
        basis.iter().zip(c).fold(CliffordPoly::zero(a), |acc, (b, c)| &acc + &b.scale(&c))
    }

    #[test]
    fn split_of_x1_squared_fixture() {
        let p = x(2, &[2, 0]);
        let s = fischer_step(&p, 2).unwrap();
        assert_eq!(s.cofactor, projection_cofactor(&p, 2));
        assert_eq!(s.monogenic.to_string(), "(1/(3 + q)) * x1^2 + ((-1 - q)/(3 + q)) * x1*x2*e1*e2 + (-1/(3 + q)) * x2^2");
        assert_eq!(s.cofactor.to_string(), "((-2 - q)/(3 + q)) * x1*e1 + (-1/(3 + q)) * x2*e2");
    }

    #[test]
    fn projection_oracle_agrees_on_random_input() {
        let mut rng = StdRng::seed_from_u64(19);
        for k in 1..=3 {
            let p = random_poly(&mut rng, alg(2), PolySpec::homogeneous(k, 4));
            assert_eq!(fischer_step(&p, k).unwrap().cofactor, projection_cofactor(&p, k));
        }
    }

    #[test]
    fn tower_of_cube() {
        let p = x(2, &[3, 0]);
        let t = fischer_full(&p, 3).unwrap();
        assert_eq!(t.components.len(), 4);
        assert_eq!(t.recompose().unwrap(), p);
        for c in &t.components {
            assert!(q_dirac(c).unwrap().is_zero());
        }
        let c = CliffordPoly::constant(alg(2), QScalar::q());
        assert_eq!(fischer_full(&c, 0).unwrap().components, vec![c]);
    }

    #[test]
    fn monogenic_dimension_counts() {
        for m in 1..=3 {
            for k in 0..=3 {
                let basis = monogenic_basis(alg(m), k).unwrap();
                let lower = if k == 0 { 0 } else { homogeneous_dimension(m, k - 1) };
                assert_eq!(basis.len(), homogeneous_dimension(m, k) - lower, "m={m} k={k}");
                for b in &basis {
                    assert!(q_dirac(b).unwrap().is_zero());
                }
            }
        }
    }
}
