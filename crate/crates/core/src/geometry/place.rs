use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;
use crate::rings::{FieldEmbedding, FiniteField, Ring, RingValue};

use super::rational::RationalFunction;

/// Dense polynomials over a finite field, coefficients low to high.
pub(crate) mod fpoly {
    use crate::rings::FiniteField;

    pub fn trim(mut p: Vec<u32>) -> Vec<u32> {
        while p.last() == Some(&0) {
            p.pop();
        }
        p
    }

    pub fn degree(p: &[u32]) -> Option<usize> {
        p.iter().rposition(|&c| c != 0)
    }

    pub fn monic(k: &FiniteField, p: &[u32]) -> Vec<u32> {
        let p = trim(p.to_vec());
        match p.last() {
            None => p,
            Some(&lead) => {
                let inv = k.inv(lead).expect("nonzero");
                p.iter().map(|&c| k.mul(c, inv)).collect()
            }
        }
    }

    /// Remainder and quotient modulo a monic divisor.
    pub fn divrem(k: &FiniteField, p: &[u32], d: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let dd = degree(d).expect("nonzero divisor");
        let mut r = trim(p.to_vec());
        let mut q = vec![0; r.len().saturating_sub(dd)];
        while let Some(dr) = degree(&r) {
            if dr < dd {
                break;
            }
            let c = r[dr];
            let shift = dr - dd;
            q[shift] = c;
            for (i, &di) in d.iter().enumerate() {
                r[shift + i] = k.sub(r[shift + i], k.mul(c, di));
            }
            r = trim(r);
        }
        (trim(q), r)
    }

    /// All monic polynomials of degree `d`, in increasing coefficient code.
    pub fn monic_of_degree(k: &FiniteField, d: usize) -> impl Iterator<Item = Vec<u32>> + '_ {
        let q = k.order() as u64;
        (0..q.pow(d as u32)).map(move |mut code| {
            let mut p: Vec<u32> = (0..d)
                .map(|_| {
                    let c = (code % q) as u32;
                    code /= q;
                    c
                })
                .collect();
            p.push(1);
            p
        })
    }

    /// Distinct monic irreducible factors, ordered by degree then code.
    pub fn distinct_factors(k: &FiniteField, p: &[u32]) -> Vec<Vec<u32>> {
        let mut rest = monic(k, p);
        let mut out = Vec::new();
        let mut d = 1;
        while degree(&rest).is_some_and(|n| 2 * d <= n) {
            let cands: Vec<Vec<u32>> = monic_of_degree(k, d).collect();
            for cand in cands {
                let (_, r) = divrem(k, &rest, &cand);
                if r.is_empty() {
                    loop {
                        let (q, r) = divrem(k, &rest, &cand);
                        if !r.is_empty() {
                            break;
                        }
                        rest = q;
                    }
                    out.push(cand);
                }
            }
            d += 1;
        }
        if degree(&rest).is_some_and(|n| n >= 1) {
            out.push(rest);
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
        out.dedup();
        out
    }

    pub fn is_irreducible(k: &FiniteField, p: &[u32]) -> bool {
        let Some(n) = degree(p) else { return false };
        n >= 1 && (1..=n / 2).all(|d| monic_of_degree(k, d).all(|c| !divrem(k, p, &c).1.is_empty()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceKind {
    /// Zero locus of a monic irreducible polynomial (low to high).
    Finite(Vec<u32>),
    Infinity,
}

/// A closed point of the projective line over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Place {
    kind: PlaceKind,
    base: FiniteField,
    residue: FiniteField,
    /// Pinned root of the modulus in the residue field.
    root: u32,
}

impl Place {
    /// The place cut out by a monic irreducible polynomial.
    pub fn finite(base: &FiniteField, modulus: Vec<u32>) -> Result<Place> {
        let modulus = fpoly::trim(modulus);
        if modulus.last() != Some(&1) || !fpoly::is_irreducible(base, &modulus) {
            return Err(Error::InvalidPlace(format!("{modulus:?} is not monic irreducible over F{}", base.order())));
        }
        let d = (modulus.len() - 1) as u32;
        let residue = FiniteField::new(base.characteristic(), base.degree() * d)?;
        let emb = FieldEmbedding::new(base, &residue)?;
        let image: Vec<u32> = modulus.iter().map(|&c| emb.map(c)).collect();
        // the root with the smallest discrete logarithm; 0 only for `t`
        let root = if modulus[0] == 0 {
            0
        } else {
            (0..residue.order() as u64 - 1)
                .map(|k| residue.exp(k))
                .find(|&x| residue.eval_poly(&image, x) == 0)
                .ok_or_else(|| Error::InvalidPlace("modulus has no root in its residue field".into()))?
        };
        Ok(Place { kind: PlaceKind::Finite(modulus), base: base.clone(), residue, root })
    }

    pub fn infinity(base: &FiniteField) -> Place {
        Place { kind: PlaceKind::Infinity, base: base.clone(), residue: base.clone(), root: 0 }
    }

    pub fn kind(&self) -> &PlaceKind {
        &self.kind
    }

    pub fn is_infinity(&self) -> bool {
        self.kind == PlaceKind::Infinity
    }

    pub fn degree(&self) -> u32 {
        match &self.kind {
            PlaceKind::Finite(m) => (m.len() - 1) as u32,
            PlaceKind::Infinity => 1,
        }
    }

    pub fn base_field(&self) -> &FiniteField {
        &self.base
    }

    pub fn residue_field(&self) -> &FiniteField {
        &self.residue
    }

    /// The pinned root `alpha` (finite places).
    pub fn root(&self) -> Option<u32> {
        (!self.is_infinity()).then_some(self.root)
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        match &self.kind {
            PlaceKind::Finite(m) => Some(m),
            PlaceKind::Infinity => None,
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PlaceKind::Infinity => write!(f, "inf"),
            PlaceKind::Finite(m) => {
                let ring = Ring::field(self.base.clone());
                let mut parts = Vec::new();
                for (i, &c) in m.iter().enumerate().rev() {
                    if c == 0 {
                        continue;
                    }
                    let cs = ring.from_field_element(c).to_string();
                    let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
                    parts.push(match (i, c) {
                        (0, _) => cs,
                        (1, 1) => "t".into(),
                        (1, _) => format!("{cs}*t"),
                        (_, 1) => format!("t^{i}"),
                        _ => format!("{cs}*t^{i}"),
                    });
                }
                write!(f, "{}", parts.join(" + "))
            }
        }
    }
}

fn univariate(f: &RationalFunction) -> Result<()> {
    if f.vars().len() != 1 {
        return Err(Error::InvalidPlace(format!("{f} is not a function of one variable")));
    }
    Ok(())
}

/// Places where `f` may fail to be a regular unit: the irreducible factors
/// of the residue reductions of numerator and denominator, plus infinity
/// when the degrees differ or a leading coefficient is not a unit.
pub fn support_places(f: &RationalFunction) -> Result<Vec<Place>> {
    univariate(f)?;
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    let k = f.ring().residue_field();
    let mut moduli: Vec<Vec<u32>> = Vec::new();
    for p in [f.numerator(), f.denominator()] {
        moduli.extend(fpoly::distinct_factors(k, &p.residue_coefficients()));
    }
    moduli.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.iter().rev().cmp(b.iter().rev())));
    moduli.dedup();
    let mut out = moduli.into_iter().map(|m| Place::finite(k, m)).collect::<Result<Vec<_>>>()?;
    let (n, d) = (f.numerator(), f.denominator());
    let lead_unit = |p: &crate::geometry::MPoly| p.leading_term().is_some_and(|(_, c)| c.is_unit());
    if n.degree_in(0) != d.degree_in(0) || !lead_unit(n) || !lead_unit(d) {
        out.push(Place::infinity(k));
    }
    Ok(out)
}

/// Union of supports, in a stable order.
pub fn joint_support(fs: &[&RationalFunction]) -> Result<Vec<Place>> {
    let mut out: Vec<Place> = Vec::new();
    for f in fs {
        for p in support_places(f)? {
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out.sort_by_key(|p| (p.is_infinity(), p.degree(), p.modulus().map(|m| m.iter().rev().copied().collect::<Vec<_>>())));
    Ok(out)
}

/// Scalar ring of local expansions at `place`: the coefficient ring with
/// its residue field replaced by that of the place.
pub fn local_ring(f: &RationalFunction, place: &Place) -> Ring {
    Ring::laurent(&f.ring().with_residue_field(place.residue_field()), "u")
}

/// Expansion of `f` in the local parameter `u = t - alpha` (or `u = 1/t`
/// at infinity) over the residue field of `place`, to precision `prec`.
pub fn local_expand(f: &RationalFunction, place: &Place, prec: i64) -> Result<LaurentSeries> {
    univariate(f)?;
    if f.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if f.ring().residue_field() != place.base_field() {
        return Err(Error::InvalidPlace(format!("place over F{} for a function over {}", place.base_field().order(), f.ring())));
    }
    let ring = local_ring(f, place);
    let scalar = ring.base().expect("Laurent").clone();
    let emb = FieldEmbedding::new(place.base_field(), place.residue_field())?;
    let lift = |c: &RingValue| c.map_field(&scalar, &|a| emb.map(a));
    let num: Vec<RingValue> = f.numerator().to_dense().iter().map(lift).collect();
    let den: Vec<RingValue> = f.denominator().to_dense().iter().map(lift).collect();
    let (num, den, shift) = if place.is_infinity() {
        let shift = den.len() as i64 - num.len() as i64;
        (num.into_iter().rev().collect(), den.into_iter().rev().collect(), shift)
    } else {
        let alpha = scalar.from_field_element(place.root);
        (taylor_shift(&num, &alpha), taylor_shift(&den, &alpha), 0)
    };
    let as_series = |c: Vec<RingValue>| -> Result<LaurentSeries> {
        LaurentSeries::new(&ring, 0, c, crate::laurent::EXACT)
    };
    let n = as_series(num)?;
    let d = as_series(den)?;
    let nu = d.valuation().map_err(|_| Error::NotAUnit(format!("denominator of {f} at {place}")))?;
    let mut extra = 2 * nu.abs() + 2 + 2 * d.end() * ring.nilpotency_bound() as i64;
    for _ in 0..12 {
        let out = n.mul(&d.truncate(prec + extra).inv()?)?.shift(shift);
        if out.raw_precision() >= prec {
            return Ok(out.truncate(prec));
        }
        extra *= 2;
    }
    Err(Error::PrecisionExhausted(format!("expansion of {f} at {place}")))
}

/// Coefficients of `p(alpha + u)`, low to high.
fn taylor_shift(p: &[RingValue], alpha: &RingValue) -> Vec<RingValue> {
    let mut q: Vec<RingValue> = Vec::new();
    for c in p.iter().rev() {
        // q <- q * (alpha + u) + c
        let mut next = vec![c.ring().zero(); q.len() + 1];
        for (i, qi) in q.iter().enumerate() {
            next[i] = &next[i] + &(qi * alpha);
            next[i + 1] = &next[i + 1] + qi;
        }
        next[0] = &next[0] + c;
        q = next;
    }
    q
}
