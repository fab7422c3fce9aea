use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::rings::{Ring, RingValue};

/// Sparse polynomial in `nvars` variables over a scalar ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    ring: Ring,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, RingValue>,
}

impl MPoly {
    pub fn zero(ring: &Ring, nvars: usize) -> MPoly {
        MPoly { ring: ring.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Ring, nvars: usize, c: RingValue) -> MPoly {
        Self::monomial(ring, vec![0; nvars], c)
    }

    pub fn monomial(ring: &Ring, exps: Vec<u32>, c: RingValue) -> MPoly {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MPoly { ring: ring.clone(), nvars, terms }
    }

    /// The `i`-th variable.
    pub fn var(ring: &Ring, nvars: usize, i: usize) -> MPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(ring, e, ring.one())
    }

    /// Univariate polynomial from coefficients, low to high.
    pub fn from_dense(ring: &Ring, coeffs: &[RingValue]) -> MPoly {
        let mut p = Self::zero(ring, 1);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                p.terms.insert(vec![i as u32], c.clone());
            }
        }
        p
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &RingValue)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<RingValue> {
        match self.terms.len() {
            0 => Some(self.ring.zero()),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Smallest total degree of a term: the multiplicity at the origin.
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).min()
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> MPoly {
        let terms = self.terms.iter().filter(|(e, _)| e.iter().sum::<u32>() == d).map(|(e, c)| (e.clone(), c.clone())).collect();
        MPoly { ring: self.ring.clone(), nvars: self.nvars, terms }
    }

    /// Lexicographically largest term (the leading term for one variable).
    pub fn leading_term(&self) -> Option<(&Vec<u32>, &RingValue)> {
        self.terms.iter().next_back()
    }

    /// Coefficients low to high (one variable only).
    pub fn to_dense(&self) -> Vec<RingValue> {
        assert_eq!(self.nvars, 1, "to_dense needs a univariate polynomial");
        let n = self.degree_in(0).map_or(0, |d| d as usize + 1);
        let mut out = vec![self.ring.zero(); n];
        for (e, c) in &self.terms {
            out[e[0] as usize] = c.clone();
        }
        out
    }

    fn check(&self, other: &MPoly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::DescriptorMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.nvars != other.nvars {
            return Err(Error::InvalidValue { ring: self.ring.to_string(), reason: "variable count mismatch".into() });
        }
        Ok(())
    }

    fn insert_add(terms: &mut BTreeMap<Vec<u32>, RingValue>, e: Vec<u32>, c: RingValue) -> Result<()> {
        match terms.remove(&e) {
            None => {
                if !c.is_zero() {
                    terms.insert(e, c);
                }
            }
            Some(old) => {
                let s = old.try_add(&c)?;
                if !s.is_zero() {
                    terms.insert(e, s);
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            Self::insert_add(&mut terms, e.clone(), c.clone())?;
        }
        Ok(MPoly { ring: self.ring.clone(), nvars: self.nvars, terms })
    }

    pub fn neg(&self) -> MPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect();
        MPoly { ring: self.ring.clone(), nvars: self.nvars, terms }
    }

    pub fn sub(&self, other: &MPoly) -> Result<MPoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check(other)?;
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                Self::insert_add(&mut terms, e, c1.try_mul(c2)?)?;
            }
        }
        Ok(MPoly { ring: self.ring.clone(), nvars: self.nvars, terms })
    }

    pub fn scale(&self, c: &RingValue) -> Result<MPoly> {
        let mut terms = BTreeMap::new();
        for (e, a) in &self.terms {
            let v = a.try_mul(c)?;
            if !v.is_zero() {
                terms.insert(e.clone(), v);
            }
        }
        Ok(MPoly { ring: self.ring.clone(), nvars: self.nvars, terms })
    }

    pub fn pow(&self, n: u32) -> Result<MPoly> {
        let mut acc = Self::constant(&self.ring, self.nvars, self.ring.one());
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Substitutes `images[i]` for the `i`-th variable; the images share a
    /// (possibly different) variable set.
    pub fn compose(&self, images: &[MPoly]) -> Result<MPoly> {
        let target_vars = images.first().map_or(0, |p| p.nvars);
        let mut acc = Self::zero(&self.ring, target_vars);
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|p| vec![Self::constant(&self.ring, target_vars, self.ring.one()), p.clone()]).collect();
        for (e, c) in &self.terms {
            let mut term = Self::constant(&self.ring, target_vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().expect("nonempty").mul(&images[i])?;
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize])?;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Renames variables: variable `i` becomes variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> MPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut out = vec![0; self.nvars];
                for (i, &k) in e.iter().enumerate() {
                    out[perm[i]] = k;
                }
                (out, c.clone())
            })
            .collect();
        MPoly { ring: self.ring.clone(), nvars: self.nvars, terms }
    }

    /// Applies a coefficient map into `target`.
    pub fn map_coefficients(&self, target: &Ring, f: &dyn Fn(&RingValue) -> RingValue) -> MPoly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let v = f(c);
                (!v.is_zero()).then(|| (e.clone(), v))
            })
            .collect();
        MPoly { ring: target.clone(), nvars: self.nvars, terms }
    }

    /// Residue-field reduction (one variable): coefficients low to high.
    pub fn residue_coefficients(&self) -> Vec<u32> {
        self.to_dense().iter().map(|c| c.residue().expect("scalar ring")).collect::<Vec<_>>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_and_expand() {
        let r: Ring = "F5".parse().unwrap();
        let x = MPoly::var(&r, 2, 0);
        let y = MPoly::var(&r, 2, 1);
        // (x + y)^2 with y -> x + y
        let p = x.add(&y).unwrap().pow(2).unwrap();
        let q = p.compose(&[x.clone(), x.add(&y).unwrap()]).unwrap();
        let expected = x.scale(&r.from_int(2)).unwrap().add(&y).unwrap().pow(2).unwrap();
        assert_eq!(q, expected);
        assert_eq!(p.order_at_origin(), Some(2));
        assert_eq!(p.homogeneous_part(2), p);
    }
}
