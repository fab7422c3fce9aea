//! Joint torsion of Toeplitz compressions of multiplication operators.
//!
//! The literal determinant of `T_f T_g T_f^{-1} T_g^{-1}` on a finite
//! window is always 1, so the commutator is measured on determinant lines
//! instead. For lattices `L_R = t^R A[[t]] ⊂ L_0` and `R <= K`, multiplication
//! by a unit `h` maps `L_0 / L_{K - nu(h)}` isomorphically (for large
//! windows) onto `t^{nu(h)} L_0 / L_K`; the relative determinant of this map
//! against the standard bases is
//!
//! ```text
//! Delta(h, K) = det( h_{r - c} ),  r in [nu(h), K),  c in [0, K - nu(h)).
//! ```
//!
//! Composing `f` then `g` and `g` then `f` on the mixed lattice `L_R + t^R
//! A[[t]]` truncated at `K` gives two such determinants whose ratio,
//! corrected by the one-step determinants of `f` and `g`, is the joint
//! torsion. With the graded sign `(-1)^{nu(f) nu(g)}` it equals the
//! Contou-Carrère symbol raised to [`TOEPLITZ_ORIENTATION`].

use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;
use crate::rings::{unit_determinant, Ring, RingValue};

/// The exponent `s` with `toeplitz(f, g) = cc(f, g)^s`.
pub const TOEPLITZ_ORIENTATION: i64 = -1;

fn coeff(h: &LaurentSeries, i: i64) -> Result<RingValue> {
    h.coefficient(i)
}

fn det(ring: &Ring, rows: std::ops::Range<i64>, columns: Vec<Vec<RingValue>>, what: &str) -> Result<RingValue> {
    let n = (rows.end - rows.start).max(0) as usize;
    if columns.len() != n {
        return Err(Error::SingularCompression(format!("window too small for {what}")));
    }
    let m: Vec<Vec<RingValue>> = (0..n).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    unit_determinant(m, ring).map_err(|e| match e {
        Error::NotAUnit(_) => Error::SingularCompression(format!("{what} is not invertible on this window")),
        other => other,
    })
}

/// Columns `h t^c` for `c` in `cols`, restricted to rows `[lo, hi)`.
fn columns(h: &LaurentSeries, cols: std::ops::Range<i64>, lo: i64, hi: i64) -> Result<Vec<Vec<RingValue>>> {
    cols.map(|c| (lo..hi).map(|r| coeff(h, r - c)).collect()).collect()
}

fn delta(h: &LaurentSeries, nu: i64, k: i64) -> Result<RingValue> {
    det(h.base(), nu..k, columns(h, 0..(k - nu).max(0), nu, k)?, "a one-step compression")
}

/// The window `(M, N)` beyond which the value no longer changes.
///
/// For a unit with valuation `nu`, lowest exponent `l` and nilpotency bound
/// `m`, the polar part of its inverse has order at most `(nu - l)(m - 1)`;
/// the inner lattice must clear `nu` plus that order, and the fine lattice
/// must clear it once more.
pub fn toeplitz_static_window(f: &LaurentSeries, g: &LaurentSeries) -> Result<(i64, i64)> {
    let m = f.ring().nilpotency_bound() as i64;
    let reach = |h: &LaurentSeries| -> Result<i64> {
        let nu = h.valuation()?;
        Ok(nu + (nu - h.lowest_exponent()) * (m - 1))
    };
    let q = reach(f)?.max(reach(g)?).max(0) + 1;
    Ok((q, 2 * q))
}

/// Joint torsion of `f` and `g` at the window `(M, N)`: inner lattice
/// `t^M A[[t]]`, fine lattice `t^N A[[t]]`.
pub fn toeplitz_joint_torsion(f: &LaurentSeries, g: &LaurentSeries, window: (i64, i64)) -> Result<RingValue> {
    if f.ring() != g.ring() {
        return Err(Error::DescriptorMismatch(f.ring().to_string(), g.ring().to_string()));
    }
    let (r, k) = window;
    let nf = f.valuation()?;
    let ng = g.valuation()?;
    if r < nf.max(ng).max(0) || k < r + nf.max(ng).max(0) {
        return Err(Error::SingularCompression(format!("window ({r}, {k}) is below the valuations")));
    }
    let fg = f.mul(g)?;
    for h in [f, g, &fg] {
        if h.raw_precision() < k {
            return Err(Error::PrecisionExhausted(format!("toeplitz window ({r}, {k}) needs coefficients below {k}")));
        }
    }
    let lo = nf + ng;
    let mut cols1 = columns(&fg, 0..r - ng, lo, k)?;
    cols1.extend(columns(f, r..k - nf, lo, k)?);
    let mut cols2 = columns(&fg, 0..r - nf, lo, k)?;
    cols2.extend(columns(g, r..k - ng, lo, k)?);
    let det1 = det(f.base(), lo..k, cols1, "g after f")?;
    let det2 = det(f.base(), lo..k, cols2, "f after g")?;
    let num = delta(f, nf, r)?.try_mul(&delta(g, ng, k)?)?.try_mul(&det1)?;
    let den = delta(g, ng, r)?.try_mul(&delta(f, nf, k)?)?.try_mul(&det2)?;
    let v = num.try_mul(&den.inv()?)?;
    Ok(if (nf * ng) % 2 != 0 { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Ring;
    use crate::symbols::cc_symbol;

    fn ring(s: &str) -> Ring {
        s.parse().unwrap()
    }

    #[test]
    fn t_against_constant() {
        let r = ring("F5((t))");
        let b = r.base().unwrap();
        let t = LaurentSeries::monomial(&r, 1, b.one()).truncate(20);
        let c = LaurentSeries::constant(&r, b.from_int(3)).truncate(20);
        let v = toeplitz_joint_torsion(&t, &c, (4, 12)).unwrap();
        assert_eq!(v, cc_symbol(&t, &c).unwrap().pow(TOEPLITZ_ORIENTATION).unwrap());
        assert_eq!(v, b.from_int(3));
    }

    #[test]
    fn t_and_one_plus_t() {
        let r = ring("F5((t))");
        let b = r.base().unwrap();
        let t = LaurentSeries::monomial(&r, 1, b.one()).truncate(20);
        let u = LaurentSeries::polynomial(&r, &[(0, b.one()), (1, b.one())]).unwrap().truncate(20);
        assert!(toeplitz_joint_torsion(&t, &u, (4, 12)).unwrap().is_one());
        assert!(toeplitz_joint_torsion(&u, &u, (4, 12)).unwrap().is_one());
    }

    #[test]
    fn nilpotent_pole_against_linear() {
        let r = ring("F7[e]/e^2((t))");
        let b = r.base().unwrap();
        let e = b.epsilon().unwrap();
        let f = LaurentSeries::polynomial(&r, &[(0, b.one()), (-1, -&e)]).unwrap().truncate(30);
        let g = LaurentSeries::polynomial(&r, &[(0, b.one()), (1, b.from_int(-4))]).unwrap().truncate(30);
        let (m, n) = toeplitz_static_window(&f, &g).unwrap();
        let expected = cc_symbol(&f, &g).unwrap().pow(TOEPLITZ_ORIENTATION).unwrap();
        for extra in 0..4 {
            assert_eq!(toeplitz_joint_torsion(&f, &g, (m + extra, n + 2 * extra)).unwrap(), expected);
        }
    }
}
