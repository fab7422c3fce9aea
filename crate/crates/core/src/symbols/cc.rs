use crate::error::{Error, Result};
use crate::laurent::{unit_decompose, LaurentSeries, UnitDecomposition};
use crate::rings::RingValue;

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// The Contou-Carrère symbol `(f, g)` from the unit presentations:
///
/// ```text
/// (-1)^{nu(f)nu(g)} a_0^{nu(g)} prod_{i,j>=1} (1 - a_i^{j/d} b_{-j}^{i/d})^d
///   / ( b_0^{nu(f)} prod_{i,j>=1} (1 - a_{-i}^{j/d} b_j^{i/d})^d ),   d = gcd(i, j).
/// ```
///
/// Each factor carries a power of a nilpotent coefficient, so only
/// `i / gcd(i, j) < m` can contribute; the products are finite.
pub fn cc_symbol(f: &LaurentSeries, g: &LaurentSeries) -> Result<RingValue> {
    if f.ring() != g.ring() {
        return Err(Error::DescriptorMismatch(f.ring().to_string(), g.ring().to_string()));
    }
    cc_from_decompositions(&unit_decompose(f)?, &unit_decompose(g)?)
}

/// [`cc_symbol`] on precomputed presentations.
pub fn cc_from_decompositions(df: &UnitDecomposition, dg: &UnitDecomposition) -> Result<RingValue> {
    let (nf, ng) = (df.valuation, dg.valuation);
    let mut num = df.a0.pow(ng)?;
    let mut den = dg.a0.pow(nf)?;
    cross_products(df, dg, &mut num)?;
    cross_products(dg, df, &mut den)?;
    let v = num.try_mul(&den.inv()?)?;
    Ok(if (nf * ng) % 2 != 0 { -v } else { v })
}

/// Multiplies `acc` by `prod_{i,j>=1} (1 - p_i^{j/d} n_{-j}^{i/d})^d` where
/// `p` supplies the positive factors and `n` the negative ones.
fn cross_products(p: &UnitDecomposition, n: &UnitDecomposition, acc: &mut RingValue) -> Result<()> {
    let m = p.ring().nilpotency_bound() as i64;
    let one = acc.ring().one();
    for (neg_j, b) in &n.negative {
        let j = -neg_j;
        // i / gcd(i, j) < m forces i <= j (m - 1)
        for i in 1..=j * (m - 1) {
            let d = gcd(i, j);
            if i / d >= m {
                continue;
            }
            let b_pow = b.pow(i / d)?;
            if b_pow.is_zero() {
                continue;
            }
            let a = p.factor(i).ok_or_else(|| {
                Error::PrecisionExhausted(format!("positive factor {i} is needed but only {} are known", p.precision - 1))
            })?;
            if a.is_zero() {
                continue;
            }
            let term = one.try_sub(&a.pow(j / d)?.try_mul(&b_pow)?)?;
            *acc = acc.try_mul(&term.pow(d)?)?;
        }
    }
    Ok(())
}
