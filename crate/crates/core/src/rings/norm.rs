//! Norms from `F_{q^r}` (possibly tensored with `F_q[e]/(e^m)`) down to `F_q`.

use crate::error::{Error, Result};

use super::{FieldEmbedding, FiniteField, RingValue};

/// Norm of a scalar value down to the subfield `base`.
///
/// For fields this is `x^{(Q-1)/(q-1)}`. Over `F_Q[e]/(e^m)` it is the
/// determinant of multiplication by `x` as an `F_q[e]/(e^m)`-linear map,
/// computed as the product of the `q`-power Frobenius conjugates (the
/// Frobenius acts on `e`-components).
pub fn ring_norm(x: &RingValue, base: &FiniteField) -> Result<RingValue> {
    let ring = x.ring();
    let comps = x
        .components()
        .ok_or_else(|| Error::InvalidValue { ring: ring.to_string(), reason: "norm needs a scalar value".into() })?;
    let big = ring.residue_field();
    let emb = FieldEmbedding::new(base, big)?;
    let target = ring.with_residue_field(base);
    let r = big.degree() / base.degree();
    let q = base.order() as i64;
    let norm = if ring.is_field() {
        let e = ((big.order() as u64 - 1) / (base.order() as u64 - 1)) as i64;
        ring.from_field_element(big.pow(comps[0], e).unwrap_or(0))
    } else {
        let mut acc = x.clone();
        let mut conj = x.clone();
        for _ in 1..r {
            conj = conj.map_field(ring, &|a| big.pow(a, q).unwrap_or(0));
            acc = &acc * &conj;
        }
        acc
    };
    let mut out = Vec::with_capacity(comps.len());
    for &a in norm.components().expect("scalar") {
        out.push(emb.preimage(a).ok_or_else(|| {
            Error::InvalidValue { ring: ring.to_string(), reason: "norm left the base field".into() }
        })?);
    }
    target.scalar(&out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Ring;

    #[test]
    fn f4_generator_has_norm_one() {
        let f4: Ring = "F4".parse().unwrap();
        let f2 = FiniteField::new(2, 1).unwrap();
        assert!(ring_norm(&f4.generator().unwrap(), &f2).unwrap().is_one());
        assert!(ring_norm(&f4.zero(), &f2).unwrap().is_zero());
    }

    #[test]
    fn f9_norm_of_base_constant_is_square() {
        let f9: Ring = "F9".parse().unwrap();
        let f3 = FiniteField::new(3, 1).unwrap();
        let r3 = Ring::field(f3.clone());
        for c in 0..3 {
            let n = ring_norm(&f9.from_int(c), &f3).unwrap();
            assert_eq!(n, r3.from_int(c * c));
        }
    }

    #[test]
    fn field_norm_is_multiplicative_exhaustive() {
        for (q_big, q_small) in [(4u64, 2u64), (8, 2), (9, 3), (16, 4), (25, 5), (27, 3), (49, 7), (81, 9), (81, 3)] {
            let big = Ring::finite_field(q_big).unwrap();
            let small = FiniteField::of_order(q_small).unwrap();
            let elems = big.elements().unwrap();
            for x in &elems {
                for y in &elems {
                    let lhs = ring_norm(&(x * y), &small).unwrap();
                    let rhs = ring_norm(x, &small).unwrap() * ring_norm(y, &small).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    /// Determinant of multiplication by `x` over `F_q[e]/(e^2)`, found by
    /// brute-force coordinates in the basis `g^i`.
    fn determinant_oracle(x: &RingValue, base: &FiniteField) -> RingValue {
        let ring = x.ring();
        let big = ring.residue_field();
        let emb = FieldEmbedding::new(base, big).unwrap();
        let target = ring.with_residue_field(base);
        let r = (big.degree() / base.degree()) as usize;
        let g = big.generator();
        let coords = |a: u32| -> Vec<u32> {
            let q = base.order();
            for n in 0..q.pow(r as u32) {
                let c: Vec<u32> = (0..r).map(|i| (n / q.pow(i as u32)) % q).collect();
                let v = (0..r).fold(0, |acc, i| big.add(acc, big.mul(emb.map(c[i]), big.pow(g, i as i64).unwrap())));
                if v == a {
                    return c;
                }
            }
            unreachable!()
        };
        let comps = x.components().unwrap();
        // matrix entries in target: column i = x * g^i
        let mat: Vec<Vec<RingValue>> = (0..r)
            .map(|row| {
                (0..r)
                    .map(|col| {
                        let gi = big.pow(g, col as i64).unwrap();
                        let per_e: Vec<u32> = comps.iter().map(|&a| coords(big.mul(a, gi))[row]).collect();
                        target.scalar(&per_e).unwrap()
                    })
                    .collect()
            })
            .collect();
        leibniz(&mat, &target)
    }

    fn leibniz(m: &[Vec<RingValue>], ring: &Ring) -> RingValue {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = ring.zero();
        for c in 0..n {
            let minor: Vec<Vec<RingValue>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, v)| v.clone()).collect()).collect();
            let term = &m[0][c] * &leibniz(&minor, ring);
            acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    #[test]
    fn artinian_norm_matches_determinant() {
        for (big, small) in [("F9[e]/e^2", 3u64), ("F8[e]/e^2", 2), ("F25[e]/e^2", 5), ("F27[e]/e^3", 3)] {
            let ring: Ring = big.parse().unwrap();
            let base = FiniteField::of_order(small).unwrap();
            let elems = ring.elements().unwrap();
            let step = (elems.len() / 150).max(1);
            for x in elems.iter().step_by(step) {
                assert_eq!(ring_norm(x, &base).unwrap(), determinant_oracle(x, &base), "{x:?}");
            }
        }
    }
}
