use std::fmt;

use crate::error::{Error, Result};
use crate::rings::{Ring, RingValue};

/// Precision marker for series that are known exactly (Laurent polynomials).
pub const EXACT: i64 = i64::MAX / 4;

fn shifted(n: i64, by: i64) -> i64 {
    if n >= EXACT || by >= EXACT {
        EXACT
    } else {
        (n + by).min(EXACT)
    }
}

/// A truncated Laurent series `sum_{i >= start} c_i t^i + O(t^prec)`.
///
/// Coefficients are stored densely from the first nonzero one; exponents at
/// or beyond `prec` are unknown. `prec == EXACT` marks a Laurent polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries {
    ring: Ring,
    start: i64,
    coeffs: Vec<RingValue>,
    prec: i64,
}

impl LaurentSeries {
    /// Builds a series in the Laurent ring `ring` from coefficients of its
    /// base, starting at exponent `start`, known below `prec`.
    pub fn new(ring: &Ring, start: i64, coeffs: Vec<RingValue>, prec: i64) -> Result<LaurentSeries> {
        let base = ring.base().ok_or_else(|| Error::InvalidValue {
            ring: ring.to_string(),
            reason: "series need a Laurent ring".into(),
        })?;
        if let Some(c) = coeffs.iter().find(|c| c.ring() != base) {
            return Err(Error::DescriptorMismatch(c.ring().to_string(), base.to_string()));
        }
        Ok(Self::normalized(ring, start, coeffs, prec.min(EXACT)))
    }

    /// A Laurent polynomial from `(exponent, coefficient)` pairs.
    pub fn polynomial(ring: &Ring, terms: &[(i64, RingValue)]) -> Result<LaurentSeries> {
        let mut acc = Self::zero_exact(ring);
        for (e, c) in terms {
            acc = acc.add(&Self::monomial(ring, *e, ring.base().expect("Laurent ring").lift(c)?))?;
        }
        Ok(acc)
    }

    fn normalized(ring: &Ring, start: i64, mut coeffs: Vec<RingValue>, prec: i64) -> LaurentSeries {
        let keep = if prec >= EXACT { coeffs.len() } else { (prec - start).clamp(0, coeffs.len() as i64) as usize };
        coeffs.truncate(keep);
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        if lead == coeffs.len() {
            return LaurentSeries { ring: ring.clone(), start: prec, coeffs: Vec::new(), prec };
        }
        coeffs.drain(..lead);
        LaurentSeries { ring: ring.clone(), start: start + lead as i64, coeffs, prec }
    }

    pub fn zero_exact(ring: &Ring) -> LaurentSeries {
        LaurentSeries { ring: ring.clone(), start: EXACT, coeffs: Vec::new(), prec: EXACT }
    }

    /// `O(t^prec)`.
    pub fn zero(ring: &Ring, prec: i64) -> LaurentSeries {
        LaurentSeries { ring: ring.clone(), start: prec, coeffs: Vec::new(), prec }
    }

    pub fn constant(ring: &Ring, c: RingValue) -> LaurentSeries {
        Self::monomial(ring, 0, c)
    }

    /// `c t^e`, exactly.
    pub fn monomial(ring: &Ring, e: i64, c: RingValue) -> LaurentSeries {
        Self::normalized(ring, e, vec![c], EXACT)
    }

    /// The Laurent ring this series belongs to.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// The coefficient ring.
    pub fn base(&self) -> &Ring {
        self.ring.base().expect("Laurent ring")
    }

    pub fn variable(&self) -> &str {
        self.ring.variable_name().expect("Laurent ring")
    }

    /// Lowest stored exponent (equal to the precision for zero series).
    pub fn lowest_exponent(&self) -> i64 {
        self.start
    }

    /// Exponent of the last stored coefficient plus one.
    pub fn end(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.start
        } else {
            self.start + self.coeffs.len() as i64
        }
    }

    /// Truncation order; `None` when exact.
    pub fn precision(&self) -> Option<i64> {
        (self.prec < EXACT).then_some(self.prec)
    }

    pub fn raw_precision(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= EXACT
    }

    pub fn coefficients(&self) -> &[RingValue] {
        &self.coeffs
    }

    /// Nonzero `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &RingValue)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (self.start + i as i64, c))
    }

    /// Coefficient of `t^i`; errors when `i` is beyond the precision.
    pub fn coefficient(&self, i: i64) -> Result<RingValue> {
        if i >= self.prec {
            return Err(Error::PrecisionExhausted(format!("coefficient {i} of a series known to O({}^{})", self.variable(), self.prec)));
        }
        Ok(self.coeff_or_zero(i))
    }

    pub(crate) fn coeff_or_zero(&self, i: i64) -> RingValue {
        if i < self.start || i >= self.end() {
            self.base().zero()
        } else {
            self.coeffs[(i - self.start) as usize].clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.start == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    fn check(&self, other: &LaurentSeries) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::DescriptorMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.check(other)?;
        let prec = self.prec.min(other.prec);
        if self.is_zero() {
            return Ok(Self::normalized(&self.ring, other.start, other.coeffs.clone(), prec));
        }
        if other.is_zero() {
            return Ok(Self::normalized(&self.ring, self.start, self.coeffs.clone(), prec));
        }
        let lo = self.start.min(other.start);
        let hi = self.end().max(other.end()).min(prec);
        let coeffs = (lo..hi.max(lo))
            .map(|i| {
                let a = self.coeff_or_zero(i);
                let b = other.coeff_or_zero(i);
                a.try_add(&b)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::normalized(&self.ring, lo, coeffs, prec))
    }

    pub fn neg(&self) -> LaurentSeries {
        LaurentSeries {
            ring: self.ring.clone(),
            start: self.start,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.check(other)?;
        let prec = shifted(self.prec, other.start).min(shifted(other.prec, self.start));
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring, prec));
        }
        let lo = self.start + other.start;
        let hi = (self.end() + other.end() - 1).min(prec);
        if hi <= lo {
            return Ok(Self::zero(&self.ring, prec));
        }
        let len = (hi - lo) as usize;
        let base = self.base();
        let mut out: Vec<Option<RingValue>> = vec![None; len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                if b.is_zero() {
                    continue;
                }
                let p = a.try_mul(b)?;
                let slot = &mut out[i + j];
                *slot = Some(match slot.take() {
                    None => p,
                    Some(acc) => acc.try_add(&p)?,
                });
            }
        }
        let coeffs = out.into_iter().map(|c| c.unwrap_or_else(|| base.zero())).collect();
        Ok(Self::normalized(&self.ring, lo, coeffs, prec))
    }

    /// Multiplies every coefficient by a scalar of the base ring.
    pub fn scale(&self, c: &RingValue) -> Result<LaurentSeries> {
        let coeffs = self.coeffs.iter().map(|a| a.try_mul(c)).collect::<Result<Vec<_>>>()?;
        Ok(Self::normalized(&self.ring, self.start, coeffs, self.prec))
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentSeries {
        LaurentSeries {
            ring: self.ring.clone(),
            start: shifted(self.start, k),
            coeffs: self.coeffs.clone(),
            prec: shifted(self.prec, k),
        }
    }

    /// Forgets every coefficient at exponent `>= n`.
    pub fn truncate(&self, n: i64) -> LaurentSeries {
        Self::normalized(&self.ring, self.start, self.coeffs.clone(), self.prec.min(n))
    }

    /// The part with exponents in `[lo, hi)`, as an exact Laurent polynomial.
    pub fn window(&self, lo: i64, hi: i64) -> LaurentSeries {
        if self.is_zero() || hi <= lo {
            return Self::zero_exact(&self.ring);
        }
        let a = lo.max(self.start);
        let b = hi.min(self.end());
        if b <= a {
            return Self::zero_exact(&self.ring);
        }
        let coeffs = self.coeffs[(a - self.start) as usize..(b - self.start) as usize].to_vec();
        Self::normalized(&self.ring, a, coeffs, EXACT)
    }

    /// `nu(f)`: the exponent of the first unit coefficient. All earlier
    /// coefficients are then nilpotent.
    pub fn valuation(&self) -> Result<i64> {
        self.terms()
            .find(|(_, c)| c.is_unit())
            .map(|(i, _)| i)
            .ok_or_else(|| Error::NotAUnit(format!("{self} has no unit coefficient below its precision")))
    }

    pub fn is_unit(&self) -> bool {
        self.valuation().is_ok()
    }

    /// Inverse of a unit.
    ///
    /// Writes `f = a t^nu (1 + h_- + h_+)` with `h_-` the (nilpotent)
    /// negative part, inverts `P = 1 + h_+` as a power series, then
    /// `1 + h_- + h_+ = (1 + n) P` with `n = h_- P^{-1}` nilpotent, whose
    /// inverse is a finite geometric sum.
    pub fn inv(&self) -> Result<LaurentSeries> {
        let nu = self.valuation()?;
        let a_inv = self.coeff_or_zero(nu).inv()?;
        let f = self.shift(-nu).scale(&a_inv)?;
        let h_minus = f.window(i64::MIN / 4, 0);
        let p = f.window(0, EXACT).truncate(f.prec);
        let p_inv = p.inv_power_series()?;
        let mut result = p_inv.clone();
        if !h_minus.is_zero() {
            let n = h_minus.mul(&p_inv)?;
            let minus_n = n.neg();
            let mut term = Self::constant(&self.ring, self.base().one());
            let mut sum = term.clone();
            for _ in 1..self.ring.nilpotency_bound() {
                term = term.mul(&minus_n)?;
                if term.is_zero() && term.is_exact() {
                    break;
                }
                sum = sum.add(&term)?;
            }
            result = sum.mul(&p_inv)?;
        }
        let out = result.scale(&a_inv)?.shift(-nu);
        if out.prec <= -nu {
            return Err(Error::PrecisionExhausted(format!("inverse of {self} has no known coefficients")));
        }
        Ok(out)
    }

    /// Inverse of a power series with constant term 1.
    fn inv_power_series(&self) -> Result<LaurentSeries> {
        if self.is_one() {
            return Ok(self.clone());
        }
        if self.is_exact() {
            return Err(Error::PrecisionExhausted(format!("inverting the polynomial {self} needs a truncation order")));
        }
        let n = self.prec;
        let base = self.base();
        let terms: Vec<(usize, RingValue)> =
            self.terms().filter(|&(i, _)| i > 0).map(|(i, c)| (i as usize, c.clone())).collect();
        let mut q: Vec<RingValue> = Vec::with_capacity(n.max(0) as usize);
        for k in 0..n.max(0) as usize {
            if k == 0 {
                q.push(base.one());
                continue;
            }
            let mut acc = base.zero();
            for (i, c) in &terms {
                if *i > k {
                    break;
                }
                if !q[k - i].is_zero() {
                    acc = acc.try_sub(&c.try_mul(&q[k - i])?)?;
                }
            }
            q.push(acc);
        }
        Ok(Self::normalized(&self.ring, 0, q, n))
    }

    pub fn div(&self, other: &LaurentSeries) -> Result<LaurentSeries> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<LaurentSeries> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Self::constant(&self.ring, self.base().one());
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq)?;
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// The constant term of a regular unit: `f` must have valuation 0 and no
    /// negative-exponent terms.
    pub fn reduce_mod_t(&self) -> Result<RingValue> {
        if let Some((i, _)) = self.terms().next() {
            if i < 0 {
                return Err(Error::NotRegular(format!("{self} has a pole")));
            }
        }
        if self.prec <= 0 {
            return Err(Error::PrecisionExhausted(format!("constant term of {self}")));
        }
        let c = self.coeff_or_zero(0);
        if !c.is_unit() {
            return Err(Error::NotRegular(format!("{self} has positive valuation")));
        }
        Ok(c)
    }

    /// Equality of all coefficients below the smaller precision.
    pub fn agrees_with(&self, other: &LaurentSeries) -> bool {
        match self.sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }

    /// Applies `f` to every coefficient, landing in the Laurent ring `target`.
    pub fn map_coefficients(&self, target: &Ring, f: &dyn Fn(&RingValue) -> RingValue) -> LaurentSeries {
        Self::normalized(target, self.start, self.coeffs.iter().map(f).collect(), self.prec)
    }
}

fn needs_parens(s: &str) -> bool {
    s.contains(' ')
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.variable();
        let mut parts = Vec::new();
        for (i, c) in self.terms() {
            let cs = c.to_string();
            let mono = match i {
                0 => None,
                1 => Some(var.to_string()),
                _ => Some(format!("{var}^{i}")),
            };
            parts.push(match mono {
                None if c.as_series().is_some() && needs_parens(&cs) => format!("({cs})"),
                None => cs,
                Some(m) if c.is_one() => m,
                Some(m) if needs_parens(&cs) => format!("({cs})*{m}"),
                Some(m) => format!("{cs}*{m}"),
            });
        }
        if let Some(n) = self.precision() {
            parts.push(format!("O({var}^{n})"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.ring)
    }
}

/// `f + g`.
pub fn laurent_add(f: &LaurentSeries, g: &LaurentSeries) -> Result<LaurentSeries> {
    f.add(g)
}

/// `f g`.
pub fn laurent_mul(f: &LaurentSeries, g: &LaurentSeries) -> Result<LaurentSeries> {
    f.mul(g)
}

/// `f^{-1}`.
pub fn laurent_inv(f: &LaurentSeries) -> Result<LaurentSeries> {
    f.inv()
}

/// `nu(f)`.
pub fn valuation(f: &LaurentSeries) -> Result<i64> {
    f.valuation()
}

/// Constant term of a regular unit.
pub fn reduce_mod_t(f: &LaurentSeries) -> Result<RingValue> {
    f.reduce_mod_t()
}
