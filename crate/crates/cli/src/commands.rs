use num_rational::BigRational;
use num_traits::Signed;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::{json, Map, Value};

use qclifford::ck::{ck_extend, extended_dirac, restrict_x0};
use qclifford::expr::{lower_unipoly, parse, parse_poly, parse_rational};
use qclifford::fischer::fischer_full;
use qclifford::jackson::{
    jackson_derivative, q_exp, q_integral, q_integral_series_oracle, q_integral_tail_bound, ExpVariant, UniPoly,
};
use qclifford::qops::{check_relation, q_dirac, q_euler, q_gamma, q_laplace, q_partial, RelationFamily};
use qclifford::random::{random_poly, PolySpec};
use qclifford::{Algebra, CliffordPoly, Error, Result};

use crate::report::{Check, Report};
use crate::{Command, JacksonCommand, PolyArgs, VerifyArgs};

/// Terms used when comparing a q-integral with its defining series.
const SERIES_TERMS: usize = 200;

/// Parse and input errors map to 2; a failed internal invariant maps to 3.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SingularSystem => 3,
        _ => 2,
    }
}

fn poly_report(name: &str, args: &PolyArgs) -> Result<(Report, CliffordPoly)> {
    let p = parse_poly(&args.expr, args.m)?;
    let r = Report::new(name).input("m", args.m).input("expr", args.expr.as_str());
    Ok((r, p))
}

fn unary(name: &str, args: &PolyArgs, op: impl Fn(&CliffordPoly) -> Result<CliffordPoly>) -> Result<Vec<Report>> {
    let (r, p) = poly_report(name, args)?;
    Ok(vec![r.text_result(op(&p)?.to_string())])
}

pub fn run(cmd: &Command) -> Result<Vec<Report>> {
    match cmd {
        Command::Deriv { poly, var } => {
            let (r, p) = poly_report("deriv", poly)?;
            let d = q_partial(&p, *var)?;
            Ok(vec![r.input("var", *var).text_result(d.to_string())])
        }
        Command::Dirac(a) => unary("dirac", a, |p| {
            if p.uses_extension() {
                Ok(extended_dirac(p))
            } else {
                q_dirac(p)
            }
        }),
        Command::Euler(a) => unary("euler", a, |p| Ok(q_euler(p))),
        Command::Gamma(a) => unary("gamma", a, |p| Ok(q_gamma(p))),
        Command::Laplace(a) => unary("laplace", a, |p| Ok(q_laplace(p))),
        Command::Fischer(a) => fischer(a),
        Command::Ck(a) => ck(a),
        Command::Verify(v) => verify(v),
        Command::Jackson { command } => jackson(command),
        Command::Eval { poly, q0, at } => eval(poly, q0.as_deref(), at.as_deref()),
    }
}

fn fischer(args: &PolyArgs) -> Result<Vec<Report>> {
    let (mut r, p) = poly_report("fischer", args)?;
    let k = p.degree().unwrap_or(0);
    let tower = fischer_full(&p, k)?;
    let mut components = Map::new();
    for (s, c) in tower.components.iter().enumerate() {
        r.lines.push(format!("s={s}: M_{} = {c}", k as usize - s));
        components.insert(s.to_string(), Value::String(c.to_string()));
    }
    r.result = Value::Object(components);
    r.check("recomposition", tower.recompose()? == p);
    let mut monogenic = true;
    for c in &tower.components {
        monogenic &= q_dirac(c)?.is_zero();
    }
    r.check("monogenic", monogenic);
    Ok(vec![r])
}

fn ck(args: &PolyArgs) -> Result<Vec<Report>> {
    let (r, p) = poly_report("ck", args)?;
    let f = ck_extend(&p)?;
    let mut r = r.text_result(f.to_string());
    r.check("monogenic", extended_dirac(&f).is_zero());
    r.check("restriction", restrict_x0(&f) == p);
    Ok(vec![r])
}

fn verify(v: &VerifyArgs) -> Result<Vec<Report>> {
    let families: Vec<RelationFamily> = match &v.which.relation {
        Some(name) => vec![name.parse()?],
        None => RelationFamily::ALL.to_vec(),
    };
    Algebra::new(v.m)?;
    let mut reports = Vec::new();
    for family in families {
        let mut rng = StdRng::seed_from_u64(v.seed);
        let mut checked = 0usize;
        let mut failures = 0usize;
        let mut witness = None;
        for t in 0..v.trials {
            let m = 1 + t % v.m;
            let alg = Algebra::new(m)?;
            for rel in family.instances(m) {
                let operands: Vec<CliffordPoly> = (0..family.arity())
                    .map(|_| random_poly(&mut rng, alg, PolySpec::new(v.degree, 4)))
                    .collect();
                let residual = check_relation(rel, &operands)?;
                checked += 1;
                if !residual.is_zero() {
                    failures += 1;
                    if witness.is_none() {
                        let ops: Vec<String> = operands.iter().map(ToString::to_string).collect();
                        witness = Some(format!("{rel} on [{}] leaves {residual}", ops.join("; ")));
                    }
                }
            }
        }
        let mut r = Report::new("verify")
            .input("relation", family.name())
            .input("m", v.m)
            .input("degree", v.degree)
            .input("trials", v.trials)
            .input("seed", v.seed);
        r.result = json!({ "relation": family.name(), "checked": checked, "failures": failures });
        r.checks.push(Check {
            name: family.name().to_string(),
            passed: failures == 0,
            detail: Some(match &witness {
                Some(w) => format!("counterexample: {w}"),
                None => format!("{checked} instances checked"),
            }),
        });
        reports.push(r);
    }
    Ok(reports)
}

fn parse_t(expr: &str) -> Result<UniPoly> {
    lower_unipoly(&parse(expr, usize::MAX)?)
}

fn jackson(cmd: &JacksonCommand) -> Result<Vec<Report>> {
    match cmd {
        JacksonCommand::Deriv { expr } => {
            let f = parse_t(expr)?;
            let r = Report::new("jackson deriv").input("expr", expr.as_str());
            Ok(vec![r.text_result(jackson_derivative(&f).to_string())])
        }
        JacksonCommand::Integrate { a, b, q0, expr } => {
            let f = parse_t(expr)?;
            let (ra, rb) = (parse_rational(a)?, parse_rational(b)?);
            let value = q_integral(&f, &ra, &rb);
            let mut r = Report::new("jackson integrate")
                .input("expr", expr.as_str())
                .input("a", a.as_str())
                .input("b", b.as_str())
                .text_result(value.to_string());
            if let Some(q0) = q0 {
                let q0r = parse_rational(q0)?;
                let exact = value.eval(&q0r)?;
                let series = q_integral_series_oracle(&f, &rb, &q0r, SERIES_TERMS)?
                    - q_integral_series_oracle(&f, &ra, &q0r, SERIES_TERMS)?;
                let bound = q_integral_tail_bound(&f, &rb, &q0r, SERIES_TERMS)?
                    + q_integral_tail_bound(&f, &ra, &q0r, SERIES_TERMS)?;
                r = r.input("q0", q0.as_str());
                r.lines.push(format!("at q = {q0r}: {exact}"));
                r.check("series", (exact - series).abs() <= bound);
            }
            Ok(vec![r])
        }
        JacksonCommand::Exp { variant, order } => {
            let v: ExpVariant = variant.parse()?;
            let r = Report::new("jackson exp")
                .input("variant", v.to_string())
                .input("order", *order);
            Ok(vec![r.text_result(q_exp(v, *order).to_string())])
        }
    }
}

fn eval(args: &PolyArgs, q0: Option<&str>, at: Option<&str>) -> Result<Vec<Report>> {
    let (mut r, p) = poly_report("eval", args)?;
    let text = match (q0, at) {
        (None, None) => p.to_string(),
        (None, Some(_)) => return Err(Error::InvalidArgument("--at requires --q0".into())),
        (Some(q0), None) => {
            r = r.input("q0", q0);
            p.specialize_q(&parse_rational(q0)?)?.to_string()
        }
        (Some(q0), Some(at)) => {
            r = r.input("q0", q0).input("at", at);
            let point = at
                .split(',')
                .map(|s| parse_rational(s.trim()))
                .collect::<Result<Vec<BigRational>>>()?;
            p.evaluate(&point, &parse_rational(q0)?)?.to_string()
        }
    };
    Ok(vec![r.text_result(text)])
}
