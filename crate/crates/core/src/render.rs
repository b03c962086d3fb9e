//! Shared canonical text rendering for sums of `coefficient * monomial * blade` terms.

use std::fmt;

use num_traits::{One, Signed};

use crate::clifford::Blade;
use crate::qfield::QScalar;

/// One rendered summand: coefficient, already-formatted variable factors, blade.
pub(crate) type Term = (QScalar, Vec<String>, Blade);

/// Splits `c` into a sign, a rational magnitude, and an optional `q^k` factor
/// when `c` is a single-term polynomial in `q`.
fn simple_parts(c: &QScalar) -> Option<(bool, num_rational::BigRational, Option<String>)> {
    if !c.is_polynomial() {
        return None;
    }
    let mut nz = c.numer().coeffs().iter().enumerate().filter(|(_, a)| !num_traits::Zero::is_zero(*a));
    let (k, a) = nz.next()?;
    if nz.next().is_some() {
        return None;
    }
    let qpow = match k {
        0 => None,
        1 => Some("q".to_string()),
        k => Some(format!("q^{k}")),
    };
    Some((a.is_negative(), a.abs(), qpow))
}

pub(crate) fn write_sum(f: &mut fmt::Formatter<'_>, terms: &[Term]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    let single = terms.len() == 1;
    for (n, (c, factors, blade)) in terms.iter().enumerate() {
        let mut body: Vec<String> = factors.clone();
        if *blade != Blade::SCALAR {
            body.push(blade.to_string());
        }
        let (negative, text) = match simple_parts(c) {
            Some((neg, abs, qpow)) => {
                let mut parts = Vec::new();
                if !abs.is_one() || (qpow.is_none() && body.is_empty()) {
                    parts.push(abs.to_string());
                }
                parts.extend(qpow);
                parts.extend(body);
                (neg, parts.join("*"))
            }
            None if body.is_empty() && single => (false, c.to_string()),
            None if body.is_empty() => (false, format!("({c})")),
            None => (false, format!("({c}) * {}", body.join("*"))),
        };
        match (n, negative) {
            (0, true) => write!(f, "-{text}")?,
            (0, false) => write!(f, "{text}")?,
            (_, true) => write!(f, " - {text}")?,
            (_, false) => write!(f, " + {text}")?,
        }
    }
    Ok(())
}
