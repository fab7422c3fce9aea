use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::{nest, LaurentSeries};
use crate::rings::{Ring, RingValue};

use super::poly::MPoly;
use super::rational::RationalFunction;

/// A flag `origin ∈ C` in the plane with coordinates `(t1, t2)`, where `C`
/// is a smooth curve germ through the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SurfaceFlag {
    /// `C: t2 = phi(t1)` with `phi(0) = 0`; coefficients of `phi` low to
    /// high. Local ring `k((t1))((v))` with `v = t2 - phi(t1)`.
    Graph(Vec<RingValue>),
    /// `C: t1 = 0`. Local ring `k((t2))((t1))`.
    VerticalAxis,
}

impl SurfaceFlag {
    /// The curve `t2 = phi(t1)`.
    pub fn graph(phi: Vec<RingValue>) -> Result<SurfaceFlag> {
        let mut phi = phi;
        while phi.last().is_some_and(|c| c.is_zero()) {
            phi.pop();
        }
        if phi.first().is_some_and(|c| !c.is_zero()) {
            return Err(Error::InvalidPlace("the curve must pass through the origin".into()));
        }
        Ok(SurfaceFlag::Graph(phi))
    }

    /// The line `t2 = lambda t1`.
    pub fn line(ring: &Ring, lambda: RingValue) -> SurfaceFlag {
        SurfaceFlag::Graph(if lambda.is_zero() { Vec::new() } else { vec![ring.zero(), lambda] })
    }

    pub fn horizontal_axis() -> SurfaceFlag {
        SurfaceFlag::Graph(Vec::new())
    }

    fn phi_poly(phi: &[RingValue], ring: &Ring) -> MPoly {
        let mut p = MPoly::zero(ring, 2);
        for (i, c) in phi.iter().enumerate() {
            let e = vec![i as u32, 0];
            p = p.add(&MPoly::monomial(ring, e, ring.lift(c).expect("scalar"))).expect("same ring");
        }
        p
    }

    /// Images of `(t1, t2)` in the local coordinates of the flag, listed
    /// innermost first.
    fn substitution(&self, ring: &Ring) -> Vec<MPoly> {
        match self {
            SurfaceFlag::Graph(phi) => {
                let v = MPoly::var(ring, 2, 1);
                vec![MPoly::var(ring, 2, 0), Self::phi_poly(phi, ring).add(&v).expect("same ring")]
            }
            SurfaceFlag::VerticalAxis => vec![MPoly::var(ring, 2, 1), MPoly::var(ring, 2, 0)],
        }
    }

    /// `nu_C(p)`: the order of vanishing of `p` along the curve.
    pub fn curve_valuation(&self, p: &MPoly) -> Result<Option<u32>> {
        let q = p.compose(&self.substitution(p.ring()))?;
        Ok(q.terms().map(|(e, _)| e[1]).min())
    }

    /// Names of the local coordinates, innermost first.
    pub fn local_variables(&self, vars: &[&str]) -> [String; 2] {
        match self {
            SurfaceFlag::Graph(_) => [vars[0].to_string(), "v".to_string()],
            SurfaceFlag::VerticalAxis => [vars[1].to_string(), vars[0].to_string()],
        }
    }
}

impl fmt::Display for SurfaceFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceFlag::VerticalAxis => write!(f, "t1 = 0"),
            SurfaceFlag::Graph(phi) => {
                let mut parts = Vec::new();
                for (i, c) in phi.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let cs = c.to_string();
                    let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
                    let mono = if i == 1 { "t1".to_string() } else { format!("t1^{i}") };
                    parts.push(if c.is_one() { mono } else { format!("{cs}*{mono}") });
                }
                if parts.is_empty() {
                    write!(f, "t2 = 0")
                } else {
                    write!(f, "t2 = {}", parts.join(" + "))
                }
            }
        }
    }
}

/// Expansion of a function of `(t1, t2)` in the two-dimensional local
/// field of the flag, to precision `prec` at both levels.
pub fn flag_expand(f: &RationalFunction, flag: &SurfaceFlag, prec: i64) -> Result<LaurentSeries> {
    let vars = f.vars();
    if vars.len() != 2 {
        return Err(Error::InvalidPlace(format!("{f} is not a function on the plane")));
    }
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let names = flag.local_variables(&vars);
    let local: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let g = f.compose(&local, &flag.substitution(f.ring()))?;
    let s = nest(&g, &local, prec)?;
    if s.is_zero() {
        return Err(Error::ZeroOnCurve(format!("{f} on {flag}")));
    }
    Ok(s)
}

/// Checks that the flags account for the full multiplicity at the origin
/// of every numerator and denominator: `ord_0(p) = sum_C nu_C(p)`.
pub fn check_flag_cover(fs: &[&RationalFunction], flags: &[SurfaceFlag]) -> Result<()> {
    for f in fs {
        for p in [f.numerator(), f.denominator()] {
            let Some(at_origin) = p.order_at_origin() else { continue };
            let mut total = 0;
            for flag in flags {
                total += flag.curve_valuation(p)?.unwrap_or(u32::MAX / 4);
            }
            if total != at_origin {
                return Err(Error::IncompleteFlagCover(format!(
                    "{f}: multiplicity {at_origin} at the origin, flags account for {total}"
                )));
            }
        }
    }
    Ok(())
}

/// Lines through the origin in the tangent cones of the given functions:
/// the axis `t1 = 0` and every `t2 = lambda t1` with `lambda` in the
/// residue field.
pub fn detect_line_flags(fs: &[&RationalFunction]) -> Result<Vec<SurfaceFlag>> {
    let mut out = Vec::new();
    for f in fs {
        let ring = f.ring();
        let k = ring.residue_field();
        for p in [f.numerator(), f.denominator()] {
            let Some(d) = p.order_at_origin() else { continue };
            if d == 0 {
                continue;
            }
            let cone = p.homogeneous_part(d);
            let residue: Vec<(u32, u32)> = cone.terms().map(|(e, c)| (e[1], c.residue().expect("scalar"))).collect();
            if residue.iter().all(|&(_, c)| c == 0) {
                continue;
            }
            let mut found = Vec::new();
            // t1 divides the cone iff no term is pure in t2
            if residue.iter().all(|&(j, c)| j < d || c == 0) {
                found.push(SurfaceFlag::VerticalAxis);
            }
            for lambda in 0..k.order() {
                let mut acc = 0;
                for &(j, c) in &residue {
                    acc = k.add(acc, k.mul(c, k.pow(lambda, j as i64).unwrap_or(0)));
                }
                if acc == 0 {
                    found.push(SurfaceFlag::line(ring, ring.from_field_element(lambda)));
                }
            }
            for flag in found {
                if !out.contains(&flag) {
                    out.push(flag);
                }
            }
        }
    }
    Ok(out)
}
