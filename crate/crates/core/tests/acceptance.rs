//! Acceptance checks, one PASS/FAIL line per criterion with its time bound.
//!
//! Runs as a plain binary (`harness = false`) so the report reads top to
//! bottom; the process exits nonzero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qclifford::ck::{ck_extend, extended_dirac, restrict_x0};
use qclifford::cpoly::{multi_indices, vector_variable, vector_variable_in, MultiIndex};
use qclifford::expr::parse_poly;
use qclifford::fischer::{
    fischer_adjoint_check, fischer_full, fischer_inner, fischer_inner_operator, homogeneous_basis, monogenic_basis,
    FischerSolver,
};
use qclifford::jackson::{
    jackson_derivative, q_exp, q_integral, q_integral_series_oracle, q_integral_tail_bound, ExpVariant, UniPoly,
};
use qclifford::qfield::{q_bracket, QScalar};
use qclifford::qops::{check_relation, q_dirac, q_euler, q_gamma, q_laplace, q_partial, Relation, RelationFamily};
use qclifford::random::{random_poly, random_scalar, PolySpec};
use qclifford::{Algebra, CliffordPoly, Multivector};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn alg(m: usize) -> Algebra {
    Algebra::new(m).unwrap()
}

fn mono(a: Algebra, exps: &[u32]) -> CliffordPoly {
    CliffordPoly::monomial(MultiIndex::spatial(exps), Multivector::one(a)).unwrap()
}

/// Every `x^α e_A` of degree `k`.
fn basis(a: Algebra, k: u32) -> Vec<CliffordPoly> {
    homogeneous_basis(a, k)
        .into_iter()
        .map(|(idx, b)| CliffordPoly::monomial(idx, Multivector::blade(a, b, QScalar::one()).unwrap()).unwrap())
        .collect()
}

/// 100 seeded polynomials cycling through m = 1..=4, degree ≤ 5.
fn corpus() -> Vec<CliffordPoly> {
    let mut rng = StdRng::seed_from_u64(7);
    (0..100)
        .map(|t| random_poly(&mut rng, alg(1 + t % 4), PolySpec::new(5, 4)))
        .collect()
}

fn binomial(n: i64, k: i64) -> usize {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) as usize / (i + 1) as usize)
}

fn euler_table() -> Outcome {
    let a = alg(3);
    let mut count = 0;
    for idx in multi_indices(3, 3) {
        let mut parts: Vec<u32> = idx.exponents().iter().copied().filter(|&e| e > 0).collect();
        parts.sort_unstable();
        let expected = match parts.as_slice() {
            [1, 1, 1] => QScalar::from_int(3),
            [1, 2] => &QScalar::from_int(2) + &QScalar::q(),
            [3] => q_bracket(3),
            other => return Err(format!("unexpected partition {other:?}")),
        };
        let p = CliffordPoly::monomial(idx.clone(), Multivector::one(a)).unwrap();
        ensure!(q_euler(&p) == p.scale(&expected), "E x^{idx:?} is not {expected} x^{idx:?}");
        count += 1;
    }
    ensure!(count == 10, "expected 10 monomials, saw {count}");
    Ok(format!("{count} monomials"))
}

fn axiom_status() -> Outcome {
    for m in 1..=5 {
        let d = q_dirac(&vector_variable(m).unwrap()).unwrap();
        ensure!(d == CliffordPoly::constant(alg(m), QScalar::from_int(m as i64)), "D x = {d} for m = {m}");
    }
    let a2 = Relation::global(RelationFamily::AxiomA2Replacement).unwrap();
    let sq = Relation::global(RelationFamily::DiracSquared).unwrap();
    let mut checked = 0;
    for m in 1..=3 {
        for k in 0..=4 {
            for p in basis(alg(m), k) {
                for rel in [a2, sq] {
                    let r = check_relation(rel, std::slice::from_ref(&p)).unwrap();
                    ensure!(r.is_zero(), "{rel} on {p}: {r}");
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} basis elements"))
}

fn run_families(families: &[RelationFamily], polys: &[CliffordPoly]) -> Result<usize, String> {
    let mut checked = 0;
    for &family in families {
        for p in polys {
            for rel in family.instances(p.dim()) {
                let r = check_relation(rel, std::slice::from_ref(p)).unwrap();
                ensure!(r.is_zero(), "{rel} on {p}: {r}");
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn symmetry_suite() -> Outcome {
    let mut families = RelationFamily::SYMMETRY_RELATIONS.to_vec();
    families.extend([RelationFamily::GammaDef, RelationFamily::GammaProduct]);
    let checked = run_families(&families, &corpus())?;
    Ok(format!("{} families, {checked} instances", families.len()))
}

fn dd(p: &CliffordPoly, i: usize) -> CliffordPoly {
    q_partial(&q_partial(p, i).unwrap(), i).unwrap()
}

fn partial_suite() -> Outcome {
    let checked = run_families(&RelationFamily::PARTIAL_RELATIONS, &corpus())?;

    // The alternative readings of the second-order rules leave residuals.
    let p = mono(alg(1), &[2]);
    let q = QScalar::q();
    let q2 = &q * &q;
    let two = q_bracket(2);
    let lhs = dd(&p.mul_variable(1, 1).unwrap(), 1);
    let rhs = &dd(&p, 1).mul_variable(1, 2).unwrap().scale(&q2) + &q_partial(&p, 1).unwrap().scale(&two);
    ensure!(!(&lhs - &rhs).is_zero(), "q^2 x^2 reading of the second rule holds");
    let lhs = dd(&p.mul_variable(1, 2).unwrap(), 1);
    let middle = &(&q2 + &QScalar::one()) * &two;
    let rhs = &(&dd(&p, 1).mul_variable(1, 2).unwrap().scale(&(&q2 * &q2))
        + &q_partial(&p, 1).unwrap().mul_variable(1, 1).unwrap().scale(&middle))
        + &p.scale(&two);
    ensure!(!(&lhs - &rhs).is_zero(), "(q^2 + 1)[2] reading of the third rule holds");
    Ok(format!("{checked} instances; alternative second-order forms rejected"))
}

fn fischer_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(11);
    for t in 0..100 {
        let (m, k) = (1 + t % 3, (t / 3 % 4) as u32);
        let spec = PolySpec::homogeneous(k, 4);
        let (r1, r2) = (random_poly(&mut rng, alg(m), spec), random_poly(&mut rng, alg(m), spec));
        let (a, b) = (fischer_inner(&r1, &r2, k).unwrap(), fischer_inner_operator(&r1, &r2, k).unwrap());
        ensure!(a == b, "inner product forms differ on {r1}, {r2}: {a} vs {b}");

        let q = random_poly(&mut rng, alg(m), spec);
        let p = random_poly(&mut rng, alg(m), PolySpec::homogeneous(k + 1, 4));
        let (l, r) = fischer_adjoint_check(&q, &p, k).unwrap();
        ensure!(l == r, "adjointness fails on {q}, {p}: {l} vs {r}");
    }

    let mut elements = 0;
    for m in 1..=3 {
        let a = alg(m);
        let x = vector_variable_in(a).unwrap();
        for k in 0..=4u32 {
            let solver = FischerSolver::new(a, k).unwrap();
            for p in basis(a, k) {
                let s = solver.split(&p).unwrap();
                let xq = x.checked_mul(&s.cofactor).unwrap();
                ensure!(&s.monogenic + &xq == p, "split of {p} does not recompose");
                ensure!(q_dirac(&s.monogenic).unwrap().is_zero(), "monogenic part of {p} is not monogenic");
                let ip = fischer_inner(&s.monogenic, &xq, k).unwrap();
                ensure!(ip.is_zero(), "split of {p} is not orthogonal: {ip}");
                let tower = fischer_full(&p, k).unwrap();
                ensure!(tower.recompose().unwrap() == p, "tower of {p} does not recompose");
                elements += 1;
            }
            let nullity = monogenic_basis(a, k).unwrap().len();
            let (m, k) = (m as i64, k as i64);
            let expected = (binomial(k + m - 1, m - 1) - binomial(k + m - 2, m - 1)) << m;
            ensure!(nullity == expected, "nullity {nullity} != {expected} for m = {m}, k = {k}");
        }
    }
    Ok(format!("200 random pairs, {elements} basis elements"))
}

fn ck_suite() -> Outcome {
    let m = 3;
    let mut examples = 0;
    let mut same = |input: String, closed_form: String| -> Result<(), String> {
        let got = ck_extend(&parse_poly(&input, m).unwrap()).unwrap().to_string();
        let want = parse_poly(&closed_form, m).unwrap().to_string();
        ensure!(got == want, "extension of {input}: {got} != {want}");
        examples += 1;
        Ok(())
    };
    for l in 1..=m {
        same(format!("x{l}"), format!("x{l} - x0*(-e0)*e{l}"))?;
        same(format!("x{l}^2"), format!("x{l}^2 - (1 + q)*x0*x{l}*(-e0)*e{l} - x0^2"))?;
        for j in (1..=m).filter(|&j| j != l) {
            same(
                format!("x{l}*x{j}"),
                format!("x{l}*x{j} - x0*(-e0)*(x{j}*e{l} + x{l}*e{j})"),
            )?;
        }
    }
    ensure!(
        ck_extend(&parse_poly("x1", 2).unwrap()).unwrap().to_string() == "x1 + x0*e0*e1",
        "canonical form of the variable extension changed"
    );

    let mut rng = StdRng::seed_from_u64(13);
    for t in 0..100 {
        let f = random_poly(&mut rng, alg(1 + t % 4), PolySpec::new(4, 4));
        let g = ck_extend(&f).unwrap();
        ensure!(extended_dirac(&g).is_zero(), "extension of {f} is not monogenic");
        ensure!(restrict_x0(&g) == f, "extension of {f} does not restrict back");
    }

    for i in 1..=m {
        let xi = ck_extend(&mono(alg(m), &vec_with(m, i, 1))).unwrap();
        let sq = ck_extend(&mono(alg(m), &vec_with(m, i, 2))).unwrap();
        let w = &sq - &(&xi * &xi);
        ensure!(!w.is_zero(), "extension is multiplicative on x{i}");
        ensure!(w.specialize_q(&BigRational::one()).unwrap().is_zero(), "witness for x{i} survives q = 1");
    }
    Ok(format!("{examples} closed forms, 100 random extensions"))
}

fn vec_with(m: usize, i: usize, e: u32) -> Vec<u32> {
    let mut v = vec![0; m];
    v[i - 1] = e;
    v
}

fn random_unipoly(rng: &mut StdRng) -> UniPoly {
    let n = rng.gen_range(0..=4);
    UniPoly::from_terms((0..n).map(|_| (rng.gen_range(0..=6u32), random_scalar(rng))))
}

fn jackson_suite() -> Outcome {
    for n in 0..=8 {
        let big = q_exp(ExpVariant::Upper, n);
        let small = q_exp(ExpVariant::Lower, n);
        let prod = (&big * &small.substitute_scaled(&QScalar::from_int(-1))).truncate(n);
        ensure!(prod == UniPoly::one(), "E(t) e(-t) != 1 to order {n}");
        if n > 0 {
            ensure!(jackson_derivative(&big) == q_exp(ExpVariant::Upper, n - 1), "D E != E at order {n}");
            ensure!(
                jackson_derivative(&small) == q_exp(ExpVariant::Lower, n - 1).q_shift(),
                "D e != e(qt) at order {n}"
            );
        }
    }

    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..100 {
        let (f, g) = (random_unipoly(&mut rng), random_unipoly(&mut rng));
        let d = jackson_derivative(&(&f * &g));
        let first = &(&jackson_derivative(&f) * &g) + &(&f.q_shift() * &jackson_derivative(&g));
        let second = &(&jackson_derivative(&f) * &g.q_shift()) + &(&f * &jackson_derivative(&g));
        ensure!(d == first && d == second, "Leibniz rules fail on {f}, {g}");
    }

    let mut comparisons = 0;
    for q0 in [rat(1, 4), rat(1, 2), rat(3, 4)] {
        for k in 0..=6 {
            let f = UniPoly::monomial(k, QScalar::one());
            for b in [rat(1, 1), rat(-3, 2), rat(2, 3)] {
                for terms in [5, 20, 60] {
                    let exact = q_integral(&f, &BigRational::zero(), &b).eval(&q0).unwrap();
                    let series = q_integral_series_oracle(&f, &b, &q0, terms).unwrap();
                    let bound = q_integral_tail_bound(&f, &b, &q0, terms).unwrap();
                    ensure!(
                        (&exact - &series).abs() <= bound,
                        "integral of t^{k} over [0, {b}] at q = {q0} misses the series by more than {bound}"
                    );
                    comparisons += 1;
                }
            }
        }
    }
    Ok(format!("orders 0..=8, 100 Leibniz pairs, {comparisons} integral comparisons"))
}

/// `∂^n/∂x_i^n` of `p` at `q = 1`, evaluated at `pt`, from integer exponents.
fn classical_derivative(p: &CliffordPoly, pt: &[BigRational], i: usize, n: u32) -> Multivector<BigRational> {
    let one = BigRational::one();
    let mut total = Multivector::zero(p.algebra());
    for (idx, c) in p.terms() {
        let a = idx.exponent(i);
        if a < n {
            continue;
        }
        let mut value: BigRational = (0..n).map(|s| BigRational::from_integer((a - s).into())).product();
        for (j, x) in pt.iter().enumerate() {
            let e = idx.exponent(j + 1) - if j + 1 == i { n } else { 0 };
            value *= num_traits::pow(x.clone(), e as usize);
        }
        total = &total + &c.evaluate(&one).unwrap().scale(&value);
    }
    total
}

fn classical_dirac(p: &CliffordPoly, pt: &[BigRational]) -> Multivector<BigRational> {
    let mut total = Multivector::zero(p.algebra());
    for i in 1..=pt.len() {
        let ei: Multivector<BigRational> = Multivector::generator(p.algebra(), i).unwrap();
        total = &total - &(&ei * &classical_derivative(p, pt, i, 1));
    }
    total
}

fn classical_euler(p: &CliffordPoly, pt: &[BigRational]) -> Multivector<BigRational> {
    let mut total = Multivector::zero(p.algebra());
    for (i, x) in pt.iter().enumerate() {
        total = &total + &classical_derivative(p, pt, i + 1, 1).scale(x);
    }
    total
}

fn degeneration_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(19);
    let one = BigRational::one();
    for t in 0..100 {
        let m = 1 + t % 4;
        let a = alg(m);
        let p = random_poly(&mut rng, a, PolySpec::new(5, 4));
        let pt: Vec<BigRational> = (0..m).map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))).collect();
        let at_one = |r: CliffordPoly| r.evaluate(&pt, &one).unwrap();

        for i in 1..=m {
            ensure!(
                at_one(q_partial(&p, i).unwrap()) == classical_derivative(&p, &pt, i, 1),
                "partial {i} of {p} at {pt:?}"
            );
        }
        let dirac = classical_dirac(&p, &pt);
        ensure!(at_one(q_dirac(&p).unwrap()) == dirac, "Dirac of {p} at {pt:?}");
        let euler = classical_euler(&p, &pt);
        ensure!(at_one(q_euler(&p)) == euler, "Euler of {p} at {pt:?}");
        let mut laplace = Multivector::zero(a);
        for i in 1..=m {
            laplace = &laplace + &classical_derivative(&p, &pt, i, 2);
        }
        ensure!(at_one(q_laplace(&p)) == laplace, "Laplace of {p} at {pt:?}");
        let x = vector_variable(m).unwrap().evaluate(&pt, &one).unwrap();
        let gamma = &(&x * &dirac) - &euler;
        ensure!(at_one(q_gamma(&p)) == gamma, "Gamma of {p} at {pt:?}");
    }
    Ok("100 pairs, partial/Dirac/Euler/Gamma/Laplace".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 8] = [
        ("Euler eigenvalues, m = 3, k = 3", Duration::from_secs(1), euler_table),
        ("Dirac axioms on the monomial basis", Duration::from_secs(10), axiom_status),
        ("symmetry relations on random polynomials", Duration::from_secs(120), symmetry_suite),
        ("q-partial relations on random polynomials", Duration::from_secs(30), partial_suite),
        ("Fischer inner product and decomposition", Duration::from_secs(300), fischer_suite),
        ("Cauchy-Kovalevskaya extension", Duration::from_secs(60), ck_suite),
        ("one-variable Jackson calculus", Duration::from_secs(30), jackson_suite),
        ("classical limit at q = 1", Duration::from_secs(30), degeneration_suite),
    ];
    let mut failed = 0;
    for (n, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let verdict = match outcome {
            Ok(detail) if elapsed <= limit => format!("PASS  {detail}"),
            Ok(detail) => format!("FAIL  over time bound ({detail})"),
            Err(e) => format!("FAIL  {e}"),
        };
        if verdict.starts_with("FAIL") {
            failed += 1;
        }
        println!(
            "criterion {}  {name}: {verdict}  [{:.2}s / {}s]",
            n + 1,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
