//! q-deformed differential operators on Clifford-valued polynomials and the
//! catalogue of operator identities they satisfy.
//!
//! All operators act on the left of the Clifford coefficients. The Jackson
//! partial derivative is computed by the monomial rule
//! `∂_i x^α = [α_i]_q x^{α - e_i}`, which agrees with the difference quotient
//! `(f(.., q x_i, ..) - f) / ((q - 1) x_i)` on polynomials.

use std::fmt;
use std::str::FromStr;

use crate::clifford::{Algebra, Multivector};
use crate::cpoly::{norm_squared_in, vector_variable_in, CliffordPoly};
use crate::error::{Error, Result};
use crate::qfield::{q_bracket, QScalar};

pub(crate) fn partial_unchecked(p: &CliffordPoly, i: usize) -> CliffordPoly {
    let mut out = CliffordPoly::zero(p.algebra());
    for (idx, c) in p.terms() {
        let a = idx.exponent(i);
        if a == 0 {
            continue;
        }
        out.add_term(idx.with_exponent(i, a - 1), c.scale(&q_bracket(a)));
    }
    out
}

/// Jackson partial derivative `∂^q_{x_i}`.
pub fn q_partial(p: &CliffordPoly, i: usize) -> Result<CliffordPoly> {
    p.algebra().check_index(i)?;
    Ok(partial_unchecked(p, i))
}

fn partial_pow(p: &CliffordPoly, i: usize, n: u32) -> CliffordPoly {
    (0..n).fold(p.clone(), |acc, _| partial_unchecked(&acc, i))
}

fn gen(algebra: Algebra, i: usize) -> Multivector {
    Multivector::generator(algebra, i).expect("generator index checked by caller")
}

fn left(e: &Multivector, p: &CliffordPoly) -> CliffordPoly {
    p.left_mul(e).expect("same algebra")
}

fn xmul(p: &CliffordPoly, i: usize, e: u32) -> CliffordPoly {
    p.mul_variable(i, e).expect("index checked by caller")
}

/// `−Σ_{i=1}^m e_i ∂_i` without the extension check; used by the CK module.
pub(crate) fn spatial_dirac(p: &CliffordPoly) -> CliffordPoly {
    let alg = p.algebra();
    let mut out = CliffordPoly::zero(alg);
    for i in 1..=alg.dim() {
        out = &out - &left(&gen(alg, i), &partial_unchecked(p, i));
    }
    out
}

/// The q-Dirac operator `D = −Σ e_i ∂^q_{x_i}`.
pub fn q_dirac(p: &CliffordPoly) -> Result<CliffordPoly> {
    if p.uses_extension() {
        return Err(Error::UsesExtendedAlgebra);
    }
    Ok(spatial_dirac(p))
}

/// The q-Euler operator `E = Σ x_i ∂^q_{x_i}`.
pub fn q_euler(p: &CliffordPoly) -> CliffordPoly {
    let mut out = CliffordPoly::zero(p.algebra());
    for i in 1..=p.dim() {
        out = &out + &xmul(&partial_unchecked(p, i), i, 1);
    }
    out
}

/// The q-Gamma operator `Γ = −Σ_{i<j} e_i e_j (x_i ∂_j − x_j ∂_i)`.
pub fn q_gamma(p: &CliffordPoly) -> CliffordPoly {
    let alg = p.algebra();
    let mut out = CliffordPoly::zero(alg);
    for i in 1..=alg.dim() {
        for j in i + 1..=alg.dim() {
            let eij = &gen(alg, i) * &gen(alg, j);
            let inner = &xmul(&partial_unchecked(p, j), i, 1) - &xmul(&partial_unchecked(p, i), j, 1);
            out = &out - &left(&eij, &inner);
        }
    }
    out
}

/// The q-Laplacian `Δ = Σ (∂^q_{x_i})²`.
pub fn q_laplace(p: &CliffordPoly) -> CliffordPoly {
    let mut out = CliffordPoly::zero(p.algebra());
    for i in 1..=p.dim() {
        out = &out + &partial_pow(p, i, 2);
    }
    out
}

/// Whether `D P = 0`.
pub fn is_monogenic(p: &CliffordPoly) -> Result<bool> {
    Ok(q_dirac(p)?.is_zero())
}

/// Kinds of checkable identities. Some are indexed by one variable or a
/// pair of distinct variables; see [`Relation`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum RelationFamily {
    /// `∂_j x_i = x_i ∂_j`, `i ≠ j`
    PartialVarCommute,
    /// `∂_i x_i − q x_i ∂_i = 1`
    Weyl,
    /// `∂_i ∂_j = ∂_j ∂_i`
    PartialCommute,
    /// `∂_i x_i² = q² x_i² ∂_i + [2] x_i`
    PartialXSquared,
    /// `∂_i² x_i = q² x_i ∂_i² + [2] ∂_i`
    PartialSquaredX,
    /// `∂_i² x_i² = q⁴ x_i² ∂_i² + q[2]² x_i ∂_i + [2]`
    PartialSquaredXSquared,
    /// `D x̲ = m`
    AxiomA1,
    /// `D x̲² − q² x̲² D = [2] x̲ + (1 − q²) Σ_i Σ_{j≠i} x_j² e_i ∂_i`
    AxiomA2Replacement,
    /// `D² = −Δ`
    DiracSquared,
    /// `D(x̲² f) = [2] Σ e_i x_i f(x_q^i) + x̲² D f`
    DiracX2fForm1,
    /// `D(x̲² f) = Σ e_i |x_q^i|² ∂_i f + [2] x̲ f`
    DiracX2fForm2,
    /// `{x̲, x̲} = −2|x̲|²`
    AnticommXX,
    /// `{D, x̲} = [2] E + m`
    AnticommDiracX,
    /// `[E, x̲] = x̲ + (q − 1) Σ x_i² e_i ∂_i`
    CommEulerX,
    /// `[E, D] = −D + (q − 1) Σ x_i e_i ∂_i²`
    CommEulerDirac,
    /// `[|x̲|², D] = [2] x̲ + (q² − 1) Σ x_i² e_i ∂_i`
    CommNormsqDirac,
    /// `[E, |x̲|²] = [2] |x̲|² + (q² − 1) Σ x_i³ ∂_i`
    CommEulerNormsq,
    /// `[Δ, x̲] = (q² − 1) Σ x_i e_i ∂_i² − [2] D`
    CommLaplaceX,
    /// `[E, Δ] = (1 − q²) Σ x_i ∂_i³ − [2] Δ`
    CommEulerLaplace,
    /// `[Δ, |x̲|²] = q[2]² E + [2] m + (q⁴ − 1) Σ x_i² ∂_i²`
    CommLaplaceNormsq,
    /// `[x̲, D] = (1 − q) E + 2Γ − m`
    GammaDef,
    /// `x̲ D = E + Γ`
    GammaProduct,
    /// `∂_i(f g) = ∂_i(f) g + f(x_q^i) ∂_i g`
    LeibnizLeft,
    /// `∂_i(f g) = ∂_i(f) g(x_q^i) + f ∂_i g`
    LeibnizRight,
}

impl RelationFamily {
    pub const ALL: [RelationFamily; 24] = [
        Self::PartialVarCommute,
        Self::Weyl,
        Self::PartialCommute,
        Self::PartialXSquared,
        Self::PartialSquaredX,
        Self::PartialSquaredXSquared,
        Self::AxiomA1,
        Self::AxiomA2Replacement,
        Self::DiracSquared,
        Self::DiracX2fForm1,
        Self::DiracX2fForm2,
        Self::AnticommXX,
        Self::AnticommDiracX,
        Self::CommEulerX,
        Self::CommEulerDirac,
        Self::CommNormsqDirac,
        Self::CommEulerNormsq,
        Self::CommLaplaceX,
        Self::CommEulerLaplace,
        Self::CommLaplaceNormsq,
        Self::GammaDef,
        Self::GammaProduct,
        Self::LeibnizLeft,
        Self::LeibnizRight,
    ];

    /// The six single-variable relations of the Jackson partial derivatives.
    pub const PARTIAL_RELATIONS: [RelationFamily; 6] = [
        Self::PartialVarCommute,
        Self::Weyl,
        Self::PartialCommute,
        Self::PartialXSquared,
        Self::PartialSquaredX,
        Self::PartialSquaredXSquared,
    ];

    /// The bracket relations between `x̲`, `D`, `E`, `Δ` and `|x̲|²`.
    pub const SYMMETRY_RELATIONS: [RelationFamily; 10] = [
        Self::AnticommXX,
        Self::DiracSquared,
        Self::AnticommDiracX,
        Self::CommEulerX,
        Self::CommEulerDirac,
        Self::CommNormsqDirac,
        Self::CommEulerNormsq,
        Self::CommLaplaceX,
        Self::CommEulerLaplace,
        Self::CommLaplaceNormsq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::PartialVarCommute => "partial_var_commute",
            Self::Weyl => "weyl",
            Self::PartialCommute => "partial_commute",
            Self::PartialXSquared => "partial_x_squared",
            Self::PartialSquaredX => "partial_squared_x",
            Self::PartialSquaredXSquared => "partial_squared_x_squared",
            Self::AxiomA1 => "axiom_a1",
            Self::AxiomA2Replacement => "axiom_a2_replacement",
            Self::DiracSquared => "dirac_squared",
            Self::DiracX2fForm1 => "dirac_x2f_form1",
            Self::DiracX2fForm2 => "dirac_x2f_form2",
            Self::AnticommXX => "anticomm_x_x",
            Self::AnticommDiracX => "anticomm_dirac_x",
            Self::CommEulerX => "comm_euler_x",
            Self::CommEulerDirac => "comm_euler_dirac",
            Self::CommNormsqDirac => "comm_normsq_dirac",
            Self::CommEulerNormsq => "comm_euler_normsq",
            Self::CommLaplaceX => "comm_laplace_x",
            Self::CommEulerLaplace => "comm_euler_laplace",
            Self::CommLaplaceNormsq => "comm_laplace_normsq",
            Self::GammaDef => "gamma_def",
            Self::GammaProduct => "gamma_product",
            Self::LeibnizLeft => "leibniz_left",
            Self::LeibnizRight => "leibniz_right",
        }
    }

    /// Number of polynomial operands the identity is applied to.
    pub fn arity(self) -> usize {
        match self {
            Self::LeibnizLeft | Self::LeibnizRight => 2,
            _ => 1,
        }
    }

    /// How many variable indices parameterize the identity (0, 1, or a distinct pair).
    pub fn index_count(self) -> usize {
        match self {
            Self::PartialVarCommute | Self::PartialCommute => 2,
            Self::Weyl
            | Self::PartialXSquared
            | Self::PartialSquaredX
            | Self::PartialSquaredXSquared
            | Self::LeibnizLeft
            | Self::LeibnizRight => 1,
            _ => 0,
        }
    }

    /// Every concrete instance in dimension `m`.
    pub fn instances(self, m: usize) -> Vec<Relation> {
        match self.index_count() {
            0 => vec![Relation::new(self, None, None)],
            1 => (1..=m).map(|i| Relation::new(self, Some(i), None)).collect(),
            _ => (1..=m)
                .flat_map(|i| (1..=m).filter(move |&j| j != i).map(move |j| (i, j)))
                .map(|(i, j)| Relation::new(self, Some(i), Some(j)))
                .collect(),
        }
    }
}

impl fmt::Display for RelationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RelationFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown relation `{s}`")))
    }
}

/// A concrete identity: a family plus its variable indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Relation {
    pub family: RelationFamily,
    i: usize,
    j: usize,
}

impl Relation {
    fn new(family: RelationFamily, i: Option<usize>, j: Option<usize>) -> Self {
        Relation {
            family,
            i: i.unwrap_or(0),
            j: j.unwrap_or(0),
        }
    }

    /// Identity without variable indices.
    pub fn global(family: RelationFamily) -> Result<Self> {
        if family.index_count() != 0 {
            return Err(Error::InvalidArgument(format!("{family} needs variable indices")));
        }
        Ok(Self::new(family, None, None))
    }

    pub fn indexed(family: RelationFamily, i: usize) -> Result<Self> {
        if family.index_count() != 1 {
            return Err(Error::InvalidArgument(format!("{family} takes {} indices", family.index_count())));
        }
        Ok(Self::new(family, Some(i), None))
    }

    pub fn pair(family: RelationFamily, i: usize, j: usize) -> Result<Self> {
        if family.index_count() != 2 || i == j {
            return Err(Error::InvalidArgument(format!("{family} takes two distinct indices")));
        }
        Ok(Self::new(family, Some(i), Some(j)))
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family.index_count() {
            0 => write!(f, "{}", self.family),
            1 => write!(f, "{}_{}", self.family, self.i),
            _ => write!(f, "{}_{}_{}", self.family, self.i, self.j),
        }
    }
}

/// Applies both sides of the identity to the operands and returns `LHS − RHS`.
///
/// A zero result certifies the identity on these operands. Index-free
/// identities take one operand; the Leibniz rules take two.
pub fn check_relation(rel: Relation, operands: &[CliffordPoly]) -> Result<CliffordPoly> {
    use RelationFamily as F;
    if operands.len() != rel.family.arity() {
        return Err(Error::InvalidArgument(format!(
            "{rel} takes {} operand(s), got {}",
            rel.family.arity(),
            operands.len()
        )));
    }
    let p = &operands[0];
    let alg = p.algebra();
    if p.uses_extension() || operands.iter().any(|o| o.uses_extension()) {
        return Err(Error::UsesExtendedAlgebra);
    }
    for o in &operands[1..] {
        alg.join(o.algebra())?;
    }
    let m = alg.dim();
    for idx in [rel.i, rel.j].into_iter().take(rel.family.index_count()) {
        if !(1..=m).contains(&idx) {
            return Err(Error::InvalidVariable { index: idx, dim: m });
        }
    }
    let (i, j) = (rel.i, rel.j);
    let q = QScalar::q();
    let q2 = q.pow(2);
    let b2 = q_bracket(2);
    let mq = QScalar::from_int(m as i64);
    let one = QScalar::one();

    let xv = vector_variable_in(alg)?;
    let nsq = norm_squared_in(alg);
    let mulx = |f: &CliffordPoly| &xv * f;
    let muln = |f: &CliffordPoly| &nsq * f;
    let d = spatial_dirac;
    let dp = |f: &CliffordPoly, k: usize| partial_unchecked(f, k);
    let e = |k: usize| gen(alg, k);
    // Σ_k x_k^a e_k ∂_k^b f, or without e_k when `with_e` is false
    let weighted = |f: &CliffordPoly, a: u32, with_e: bool, b: u32| {
        let mut out = CliffordPoly::zero(alg);
        for k in 1..=m {
            let mut t = xmul(&partial_pow(f, k, b), k, a);
            if with_e {
                t = left(&e(k), &t);
            }
            out = &out + &t;
        }
        out
    };

    let res = match rel.family {
        F::PartialVarCommute => &dp(&xmul(p, i, 1), j) - &xmul(&dp(p, j), i, 1),
        F::Weyl => &(&dp(&xmul(p, i, 1), i) - &xmul(&dp(p, i), i, 1).scale(&q)) - p,
        F::PartialCommute => &dp(&dp(p, j), i) - &dp(&dp(p, i), j),
        F::PartialXSquared => {
            let lhs = dp(&xmul(p, i, 2), i);
            let rhs = &xmul(&dp(p, i), i, 2).scale(&q2) + &xmul(p, i, 1).scale(&b2);
            &lhs - &rhs
        }
        F::PartialSquaredX => {
            let lhs = partial_pow(&xmul(p, i, 1), i, 2);
            let rhs = &xmul(&partial_pow(p, i, 2), i, 1).scale(&q2) + &dp(p, i).scale(&b2);
            &lhs - &rhs
        }
        F::PartialSquaredXSquared => {
            let lhs = partial_pow(&xmul(p, i, 2), i, 2);
            let rhs = &(&xmul(&partial_pow(p, i, 2), i, 2).scale(&q.pow(4))
                + &xmul(&dp(p, i), i, 1).scale(&(&q * &b2.pow(2))))
                + &p.scale(&b2);
            &lhs - &rhs
        }
        // D x̲ = m does not involve the operand
        F::AxiomA1 => &d(&xv) - &CliffordPoly::constant(alg, mq.clone()),
        F::AxiomA2Replacement => {
            let x2 = &xv * &xv;
            let lhs = &d(&(&x2 * p)) - &(&x2 * &d(p)).scale(&q2);
            let mut tail = CliffordPoly::zero(alg);
            for k in 1..=m {
                let dk = left(&e(k), &dp(p, k));
                for l in (1..=m).filter(|&l| l != k) {
                    tail = &tail + &xmul(&dk, l, 2);
                }
            }
            let rhs = &mulx(p).scale(&b2) + &tail.scale(&(&one - &q2));
            &lhs - &rhs
        }
        F::DiracSquared => &d(&d(p)) + &q_laplace(p),
        F::DiracX2fForm1 => {
            let x2 = &xv * &xv;
            let lhs = d(&(&x2 * p));
            let mut shifted = CliffordPoly::zero(alg);
            for k in 1..=m {
                shifted = &shifted + &left(&e(k), &xmul(&p.q_shift_unchecked(k), k, 1));
            }
            &lhs - &(&shifted.scale(&b2) + &(&x2 * &d(p)))
        }
        F::DiracX2fForm2 => {
            let x2 = &xv * &xv;
            let lhs = d(&(&x2 * p));
            let mut sum = CliffordPoly::zero(alg);
            for k in 1..=m {
                let shifted_norm = nsq.q_shift_unchecked(k);
                sum = &sum + &left(&e(k), &(&shifted_norm * &dp(p, k)));
            }
            &lhs - &(&sum + &mulx(p).scale(&b2))
        }
        F::AnticommXX => &(&mulx(&mulx(p)) + &mulx(&mulx(p))) + &muln(p).scale(&QScalar::from_int(2)),
        F::AnticommDiracX => {
            let lhs = &d(&mulx(p)) + &mulx(&d(p));
            &lhs - &(&q_euler(p).scale(&b2) + &p.scale(&mq))
        }
        F::CommEulerX => {
            let lhs = &q_euler(&mulx(p)) - &mulx(&q_euler(p));
            &lhs - &(&mulx(p) + &weighted(p, 2, true, 1).scale(&(&q - &one)))
        }
        F::CommEulerDirac => {
            let lhs = &q_euler(&d(p)) - &d(&q_euler(p));
            &lhs - &(&d(p).neg() + &weighted(p, 1, true, 2).scale(&(&q - &one)))
        }
        F::CommNormsqDirac => {
            let lhs = &muln(&d(p)) - &d(&muln(p));
            &lhs - &(&mulx(p).scale(&b2) + &weighted(p, 2, true, 1).scale(&(&q2 - &one)))
        }
        F::CommEulerNormsq => {
            let lhs = &q_euler(&muln(p)) - &muln(&q_euler(p));
            &lhs - &(&muln(p).scale(&b2) + &weighted(p, 3, false, 1).scale(&(&q2 - &one)))
        }
        F::CommLaplaceX => {
            let lhs = &q_laplace(&mulx(p)) - &mulx(&q_laplace(p));
            &lhs - &(&weighted(p, 1, true, 2).scale(&(&q2 - &one)) - &d(p).scale(&b2))
        }
        F::CommEulerLaplace => {
            let lhs = &q_euler(&q_laplace(p)) - &q_laplace(&q_euler(p));
            &lhs - &(&weighted(p, 1, false, 3).scale(&(&one - &q2)) - &q_laplace(p).scale(&b2))
        }
        F::CommLaplaceNormsq => {
            let lhs = &q_laplace(&muln(p)) - &muln(&q_laplace(p));
            let rhs = &(&q_euler(p).scale(&(&q * &b2.pow(2))) + &p.scale(&(&b2 * &mq)))
                + &weighted(p, 2, false, 2).scale(&(&q.pow(4) - &one));
            &lhs - &rhs
        }
        F::GammaDef => {
            let lhs = &mulx(&d(p)) - &d(&mulx(p));
            let rhs = &(&q_euler(p).scale(&(&one - &q)) + &q_gamma(p).scale(&QScalar::from_int(2))) - &p.scale(&mq);
            &lhs - &rhs
        }
        F::GammaProduct => &mulx(&d(p)) - &(&q_euler(p) + &q_gamma(p)),
        F::LeibnizLeft => {
            let g = &operands[1];
            let lhs = dp(&(p * g), i);
            &lhs - &(&(&dp(p, i) * g) + &(&p.q_shift_unchecked(i) * &dp(g, i)))
        }
        F::LeibnizRight => {
            let g = &operands[1];
            let lhs = dp(&(p * g), i);
            &lhs - &(&(&dp(p, i) * &g.q_shift_unchecked(i)) + &(p * &dp(g, i)))
        }
    };
    Ok(res)
}
