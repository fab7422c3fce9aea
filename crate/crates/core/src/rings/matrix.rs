//! Determinants over local rings.

use crate::error::{Error, Result};

use super::{Ring, RingValue};

/// Determinant of a square matrix over a local ring, by elimination with
/// unit pivots.
///
/// Over a local ring a matrix is invertible exactly when some entry of every
/// remaining column is a unit, so a column without a unit pivot means the
/// determinant lies in the maximal ideal; that case is reported as
/// [`Error::NotAUnit`] instead of being computed.
pub fn unit_determinant(mut m: Vec<Vec<RingValue>>, ring: &Ring) -> Result<RingValue> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidValue { ring: ring.to_string(), reason: "matrix is not square".into() });
    }
    let mut det = ring.one();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| m[r][col].is_unit())
            .ok_or_else(|| Error::NotAUnit(format!("determinant of a {n}x{n} matrix")))?;
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = det.try_mul(&p)?;
        let p_inv = p.inv()?;
        let (top, rest) = m.split_at_mut(col + 1);
        let prow = &top[col];
        for row in rest.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].try_mul(&p_inv)?;
            for (x, y) in row[col + 1..].iter_mut().zip(&prow[col + 1..]) {
                if y.is_zero() {
                    continue;
                }
                *x = x.try_sub(&factor.try_mul(y)?)?;
            }
        }
    }
    Ok(det)
}
