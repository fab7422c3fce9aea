use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::geometry::{MPoly, RationalFunction};
use crate::rings::{Ring, RingValue};

use super::series::{LaurentSeries, EXACT};

/// The iterated Laurent ring `A((x_0))((x_1))...((x_{n-1}))`, innermost first.
pub fn iterated_ring(scalar: &Ring, vars: &[&str]) -> Ring {
    vars.iter().fold(scalar.clone(), |r, v| Ring::laurent(&r, v))
}

/// Expands a rational function in an iterated Laurent ring.
///
/// `order[0]` is the innermost variable. The result lives in the ring
/// `A((order[0]))...((order[n-1]))`; every coefficient, at every level, is
/// known below exponent `prec`.
pub fn nest(f: &RationalFunction, order: &[&str], prec: i64) -> Result<LaurentSeries> {
    if order.is_empty() {
        return Err(Error::InvalidValue { ring: f.ring().to_string(), reason: "nesting needs a variable".into() });
    }
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let f = f.reorder(order)?;
    let mut rings = vec![f.ring().clone()];
    for v in order {
        let next = Ring::laurent(rings.last().expect("nonempty"), v);
        rings.push(next);
    }
    let num = to_iterated(f.numerator(), &rings)?;
    let den = to_iterated(f.denominator(), &rings)?;
    let degree = |p: &MPoly| p.total_degree().unwrap_or(0) as i64;
    let m = f.ring().nilpotency_bound() as i64;
    let mut slack = 2 * (degree(f.numerator()) + degree(f.denominator())) * m + 2;
    let mut last = None;
    for _ in 0..8 {
        let attempt = (|| -> Result<LaurentSeries> {
            let d = deep_truncate_series(&den, prec + slack);
            Ok(deep_truncate_series(&num.mul(&d.inv()?)?, prec))
        })();
        match (attempt, last.take()) {
            (Ok(r), Some(Ok(prev))) if r == prev && deep_precision_series(&r) >= prec => return Ok(r),
            (r, _) => last = Some(r),
        }
        slack *= 2;
    }
    match last {
        Some(Err(e)) => Err(e),
        _ => Err(Error::PrecisionExhausted(format!("iterated expansion of {f}"))),
    }
}

/// Converts a polynomial into an exact element of `rings[n]`.
fn to_iterated(p: &MPoly, rings: &[Ring]) -> Result<LaurentSeries> {
    let terms: Vec<(Vec<u32>, RingValue)> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
    let v = convert(&terms, rings.len() - 1, rings)?;
    Ok(v.as_series().expect("Laurent value").clone())
}

fn convert(terms: &[(Vec<u32>, RingValue)], level: usize, rings: &[Ring]) -> Result<RingValue> {
    if level == 0 {
        let mut acc = rings[0].zero();
        for (_, c) in terms {
            acc = acc.try_add(c)?;
        }
        return Ok(acc);
    }
    let mut groups: BTreeMap<u32, Vec<(Vec<u32>, RingValue)>> = BTreeMap::new();
    for t in terms {
        groups.entry(t.0[level - 1]).or_default().push(t.clone());
    }
    let len = groups.keys().next_back().map_or(0, |&k| k as usize + 1);
    let mut coeffs = vec![rings[level - 1].zero(); len];
    for (k, group) in &groups {
        coeffs[*k as usize] = convert(group, level - 1, rings)?;
    }
    Ok(RingValue::from_series(LaurentSeries::new(&rings[level], 0, coeffs, EXACT)?))
}

/// Truncates below `n` at every level.
pub fn deep_truncate(v: &RingValue, n: i64) -> RingValue {
    match v.as_series() {
        None => v.clone(),
        Some(s) => RingValue::from_series(deep_truncate_series(s, n)),
    }
}

pub fn deep_truncate_series(s: &LaurentSeries, n: i64) -> LaurentSeries {
    s.truncate(n).map_coefficients(s.ring(), &|c| deep_truncate(c, n))
}

/// The smallest precision occurring at any level.
pub fn deep_precision(v: &RingValue) -> i64 {
    v.as_series().map_or(EXACT, deep_precision_series)
}

pub fn deep_precision_series(s: &LaurentSeries) -> i64 {
    s.coefficients().iter().map(deep_precision).fold(s.raw_precision(), i64::min)
}
