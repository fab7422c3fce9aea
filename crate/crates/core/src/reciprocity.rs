//! Executable reciprocity laws: Weil and Contou-Carrère on the projective
//! line, Parshin at the origin of the plane.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{check_flag_cover, flag_expand, joint_support, local_expand, MPoly, Place, RationalFunction, SurfaceFlag};
use crate::laurent::LaurentSeries;
use crate::rings::{ring_norm, Ring, RingValue};
use crate::symbols::{cc_symbol, higher_tame_symbol, tame_symbol};

/// Extra precision used to confirm that values no longer move.
pub const PRECISION_STEP: i64 = 8;

/// One local factor of a reciprocity product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    /// Place or flag label.
    pub place: String,
    /// Local symbol, normed down to the coefficient ring.
    pub value: RingValue,
    /// All arguments are regular units here, so the value is 1 by design.
    pub regular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReciprocityReport {
    pub entries: Vec<LocalFactor>,
    pub product: RingValue,
    pub verdict: bool,
    /// Precision the values were computed at (and confirmed at `+ 8`).
    pub precision: i64,
}

impl ReciprocityReport {
    fn new(ring: &Ring, entries: Vec<LocalFactor>, precision: i64) -> ReciprocityReport {
        let product = entries.iter().fold(ring.one(), |acc, e| &acc * &e.value);
        let verdict = product.is_one();
        ReciprocityReport { entries, product, verdict, precision }
    }

    /// The same report with every local value inverted (the opposite
    /// orientation convention).
    pub fn inverted(&self) -> Result<ReciprocityReport> {
        let entries = self
            .entries
            .iter()
            .map(|e| Ok(LocalFactor { value: e.value.inv()?, ..e.clone() }))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(self.product.ring(), entries, self.precision))
    }
}

impl fmt::Display for ReciprocityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{}: {}{}", e.place, e.value, if e.regular { " (regular)" } else { "" })?;
        }
        writeln!(f, "product: {}", self.product)?;
        write!(f, "verdict: {}", self.verdict)
    }
}

fn max_degree(fs: &[&RationalFunction]) -> i64 {
    fs.iter()
        .flat_map(|f| [f.numerator(), f.denominator()])
        .map(|p| p.total_degree().unwrap_or(0) as i64)
        .max()
        .unwrap_or(0)
}

/// Default truncation order for local expansions of functions of degree at
/// most `d` over a ring with nilpotency bound `m`.
///
/// Valuations at a place are bounded by `d`; the symbol reads the negative
/// factors (indices down to `-d m`) against positive factors up to
/// `d m^2`, which is covered by `d + (d m + 1) m`.
pub fn default_precision(d: i64, m: i64) -> i64 {
    d + (d * m + 1) * m + PRECISION_STEP
}

fn is_regular_unit(f: &LaurentSeries) -> bool {
    f.reduce_mod_t().is_ok()
}

type Symbol = fn(&LaurentSeries, &LaurentSeries) -> Result<RingValue>;

fn curve_value(f: &RationalFunction, g: &RationalFunction, place: &Place, n: i64, symbol: Symbol) -> Result<(RingValue, bool)> {
    let fx = local_expand(f, place, n)?;
    let gx = local_expand(g, place, n)?;
    let value = ring_norm(&symbol(&fx, &gx)?, place.base_field())?;
    Ok((value, is_regular_unit(&fx) && is_regular_unit(&gx)))
}

fn curve_check(f: &RationalFunction, g: &RationalFunction, precision: Option<i64>, symbol: Symbol) -> Result<ReciprocityReport> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if f.vars().len() != 1 || f.vars() != g.vars() || f.ring() != g.ring() {
        return Err(Error::InvalidValue { ring: f.ring().to_string(), reason: "functions must share one variable and ring".into() });
    }
    let places = joint_support(&[f, g])?;
    let m = f.ring().nilpotency_bound() as i64;
    let n = precision.unwrap_or_else(|| default_precision(max_degree(&[f, g]), m));
    let entries = places
        .par_iter()
        .map(|place| {
            let (low, regular) = curve_value(f, g, place, n, symbol)?;
            let (high, _) = curve_value(f, g, place, n + PRECISION_STEP, symbol)?;
            if low != high {
                return Err(Error::PrecisionDependence { low: n, high: n + PRECISION_STEP, detail: format!("at {place}: {low} vs {high}") });
            }
            Ok(LocalFactor { place: place.to_string(), value: low, regular })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReciprocityReport::new(f.ring(), entries, n))
}

/// Weil reciprocity on the projective line over a finite field: the
/// product over all places of the normed tame symbols.
pub fn weil_check(f: &RationalFunction, g: &RationalFunction, precision: Option<i64>) -> Result<ReciprocityReport> {
    if !f.ring().is_field() {
        return Err(Error::UnsupportedArgument(format!("tame reciprocity needs a field, got {}", f.ring())));
    }
    curve_check(f, g, precision, tame_symbol)
}

fn unit_leading(p: &MPoly) -> bool {
    p.leading_term().is_some_and(|(_, c)| c.is_unit())
}

/// Contou-Carrère reciprocity on the projective line over an artinian
/// local ring. Leading coefficients must be units, so that supports are
/// read off the residue reductions.
pub fn cc_check(f: &RationalFunction, g: &RationalFunction, precision: Option<i64>) -> Result<ReciprocityReport> {
    for h in [f, g] {
        for p in [h.numerator(), h.denominator()] {
            if !p.is_zero() && !unit_leading(p) {
                return Err(Error::NonUnitLeadingCoefficient(h.to_string()));
            }
        }
    }
    curve_check(f, g, precision, cc_symbol)
}

fn surface_value(fs: &[&RationalFunction], flag: &SurfaceFlag, n: i64) -> Result<(RingValue, bool)> {
    let series = fs.iter().map(|f| flag_expand(f, flag, n)).collect::<Result<Vec<_>>>()?;
    let regular = series.iter().all(is_regular_unit);
    Ok((higher_tame_symbol(&series)?, regular))
}

/// Parshin reciprocity at the origin of the plane: the product over the
/// given flags of the two-dimensional tame symbols of `(f, g, h)`.
pub fn parshin_check(
    f: &RationalFunction,
    g: &RationalFunction,
    h: &RationalFunction,
    flags: &[SurfaceFlag],
    precision: Option<i64>,
) -> Result<ReciprocityReport> {
    let fs = [f, g, h];
    if fs.iter().any(|x| x.is_zero()) {
        return Err(Error::ZeroFunction);
    }
    if fs.iter().any(|x| x.vars().len() != 2 || x.vars() != f.vars() || x.ring() != f.ring()) {
        return Err(Error::InvalidValue { ring: f.ring().to_string(), reason: "functions must share two variables and a ring".into() });
    }
    if !f.ring().is_field() {
        return Err(Error::UnsupportedArgument(format!("surface reciprocity needs a field, got {}", f.ring())));
    }
    check_flag_cover(&fs, flags)?;
    let n = precision.unwrap_or_else(|| 2 * max_degree(&fs) + PRECISION_STEP);
    let entries = flags
        .par_iter()
        .map(|flag| {
            let (low, regular) = surface_value(&fs, flag, n)?;
            let (high, _) = surface_value(&fs, flag, n + PRECISION_STEP)?;
            if low != high {
                return Err(Error::PrecisionDependence { low: n, high: n + PRECISION_STEP, detail: format!("on {flag}: {low} vs {high}") });
            }
            Ok(LocalFactor { place: flag.to_string(), value: low, regular })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ReciprocityReport::new(f.ring(), entries, n))
}
