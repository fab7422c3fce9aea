use crate::error::{Error, Result};
use crate::rings::{Ring, RingValue};

use super::series::{LaurentSeries, EXACT};

/// The presentation
/// `f = prod_{i<0} (1 - a_i t^i) * a_0 t^nu * prod_{i>0} (1 - a_i t^i)`
/// of a unit of `A((t))`. Only nonzero `a_i` are listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitDecomposition {
    pub valuation: i64,
    pub a0: RingValue,
    /// `(i, a_i)` with `i < 0`, ordered by decreasing `i`; every `a_i` is
    /// nilpotent.
    pub negative: Vec<(i64, RingValue)>,
    /// `(i, a_i)` with `1 <= i < precision`, increasing.
    pub positive: Vec<(i64, RingValue)>,
    /// Positive factors are determined for all indices below this bound.
    pub precision: i64,
    ring: Ring,
}

impl UnitDecomposition {
    /// The Laurent ring of the decomposed series.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// `a_i`, zero when the factor is absent; `None` for `i = 0` or when the
    /// index is beyond the known positive factors.
    pub fn factor(&self, i: i64) -> Option<RingValue> {
        let base = self.ring.base().expect("Laurent ring");
        if i == 0 || i >= self.precision {
            return None;
        }
        let list = if i < 0 { &self.negative } else { &self.positive };
        Some(list.iter().find(|(j, _)| *j == i).map(|(_, a)| a.clone()).unwrap_or_else(|| base.zero()))
    }

    /// Multiplies the factors back together.
    pub fn reconstruct(&self) -> Result<LaurentSeries> {
        let ring = &self.ring;
        let base = ring.base().expect("Laurent ring");
        let one = LaurentSeries::constant(ring, base.one());
        let mut neg = one.clone();
        for (i, a) in &self.negative {
            neg = neg.mul(&binomial(ring, *i, a)?)?;
        }
        let mut pos = one.truncate(self.precision);
        for (i, a) in &self.positive {
            pos = pos.mul(&binomial(ring, *i, a)?)?;
        }
        neg.mul(&LaurentSeries::monomial(ring, self.valuation, self.a0.clone()))?.mul(&pos)
    }
}

/// `1 - a t^i`, exactly.
fn binomial(ring: &Ring, i: i64, a: &RingValue) -> Result<LaurentSeries> {
    let base = ring.base().expect("Laurent ring");
    LaurentSeries::polynomial(ring, &[(0, base.one()), (i, -a)])
}

/// `1 / (1 - a t^i)` for nilpotent `a` and `i < 0`: a finite sum.
fn inverse_binomial_negative(ring: &Ring, i: i64, a: &RingValue) -> Result<LaurentSeries> {
    let base = ring.base().expect("Laurent ring");
    let mut terms = vec![(0, base.one())];
    let mut power = base.one();
    for j in 1..ring.nilpotency_bound() as i64 {
        power = power.try_mul(a)?;
        if power.is_zero() {
            break;
        }
        terms.push((i * j, power.clone()));
    }
    LaurentSeries::polynomial(ring, &terms)
}

/// Computes the unit presentation of `f`.
///
/// The negative part `N = prod_{i<0} (1 - a_i t^i)` is found by repeatedly
/// absorbing the polar part of `f t^{-nu} N^{-1}` into `N`; this strictly
/// raises the nilpotent filtration degree of the polar part, so it stops
/// after at most `m * pole order` rounds. `N` is then split into binomials
/// in `s = t^{-1}` from `s^1` upward, and the power-series part is split
/// into `(1 - a_i t^i)` for `i = 1, 2, ...`.
pub fn unit_decompose(f: &LaurentSeries) -> Result<UnitDecomposition> {
    let ring = f.ring().clone();
    let base = f.base().clone();
    let nu = f.valuation()?;
    let g = f.shift(-nu);
    if g.raw_precision() <= 0 {
        return Err(Error::PrecisionExhausted(format!("{f} is known only up to its valuation")));
    }
    let mut n = LaurentSeries::constant(&ring, base.one());
    let pole = (-g.lowest_exponent()).max(0);
    let max_rounds = 4 + pole * ring.nilpotency_bound() as i64 * 2;
    let mut big_g;
    let mut rounds = 0;
    loop {
        big_g = g.mul(&n.inv()?)?;
        if big_g.raw_precision() <= 0 {
            return Err(Error::PrecisionExhausted(format!("negative part of {f} consumed the precision")));
        }
        let polar = big_g.window(i64::MIN / 4, 0);
        if polar.is_zero() {
            break;
        }
        rounds += 1;
        if rounds > max_rounds {
            return Err(Error::PrecisionExhausted(format!("negative part of {f} did not settle")));
        }
        let g0_inv = big_g.coeff_or_zero(0).inv()?;
        let step = LaurentSeries::constant(&ring, base.one()).add(&polar.scale(&g0_inv)?)?;
        n = n.mul(&step)?;
    }

    // split N into binomials in t^{-1}
    let mut negative = Vec::new();
    let mut rest = n;
    let mut k = 1;
    while !rest.is_one() {
        if k > EXACT / 2 || rounds > max_rounds * 64 {
            return Err(Error::PrecisionExhausted("negative factors did not terminate".into()));
        }
        let a = -rest.coeff_or_zero(-k);
        if !a.is_zero() {
            rest = rest.mul(&inverse_binomial_negative(&ring, -k, &a)?)?;
            negative.push((-k, a));
        }
        k += 1;
        rounds += 1;
    }

    let a0 = big_g.coeff_or_zero(0);
    let p = big_g.scale(&a0.inv()?)?;
    let prec = p.raw_precision();
    let len = if prec >= EXACT { p.end().max(1) } else { prec };
    // dense coefficients of P, divided in place by each binomial
    let mut c: Vec<RingValue> = (0..len).map(|i| p.coeff_or_zero(i)).collect();
    let mut positive = Vec::new();
    for i in 1..len {
        let a = -&c[i as usize];
        if a.is_zero() {
            continue;
        }
        // P / (1 - a t^i): q_n = p_n + a q_{n-i}
        for j in i as usize..len as usize {
            let add = a.try_mul(&c[j - i as usize])?;
            c[j] = c[j].try_add(&add)?;
        }
        positive.push((i, a));
    }
    if prec >= EXACT && c.iter().skip(1).any(|x| !x.is_zero()) {
        return Err(Error::PrecisionExhausted(format!("positive part of {f} needs a truncation order")));
    }
    Ok(UnitDecomposition { valuation: nu, a0, negative, positive, precision: prec, ring })
}
