use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rings::{Ring, RingValue};

use super::groups::FiniteGroup;

/// A normalized-or-not 2-cocycle `sigma: G x G -> A^x` describing the
/// central extension `A^x -> E -> G` with multiplication
/// `(a, g)(b, h) = (a b sigma(g, h), g h)`, optionally with a grading.
#[derive(Clone, Debug)]
pub struct Cocycle2 {
    group: Arc<FiniteGroup>,
    ring: Ring,
    sigma: Vec<Vec<RingValue>>,
    grading: Option<Vec<i64>>,
}

impl Cocycle2 {
    /// Validates the cocycle identity on all triples, that every value is a
    /// unit, and that the grading is additive. Only the parity of the
    /// grading enters the commutator, and a finite group has no nonzero
    /// homomorphism to the integers, so additivity is checked modulo 2.
    pub fn new(group: Arc<FiniteGroup>, ring: &Ring, sigma: Vec<Vec<RingValue>>, grading: Option<Vec<i64>>) -> Result<Self> {
        let n = group.order();
        if sigma.len() != n || sigma.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCocycle(format!("table must be {n}x{n}")));
        }
        for row in &sigma {
            for v in row {
                if v.ring() != ring {
                    return Err(Error::DescriptorMismatch(v.ring().to_string(), ring.to_string()));
                }
                if !v.is_unit() {
                    return Err(Error::InvalidCocycle(format!("{v} is not a unit")));
                }
            }
        }
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    let lhs = &sigma[g][h] * &sigma[group.mul(g, h)][k];
                    let rhs = &sigma[h][k] * &sigma[g][group.mul(h, k)];
                    if lhs != rhs {
                        return Err(Error::InvalidCocycle(format!("identity fails at ({g}, {h}, {k})")));
                    }
                }
            }
        }
        if let Some(nu) = &grading {
            if nu.len() != n {
                return Err(Error::InvalidCocycle("grading has the wrong length".into()));
            }
            for g in 0..n {
                for h in 0..n {
                    if (nu[group.mul(g, h)] - nu[g] - nu[h]).rem_euclid(2) != 0 {
                        return Err(Error::InvalidCocycle(format!("grading is not additive at ({g}, {h})")));
                    }
                }
            }
        }
        Ok(Cocycle2 { group, ring: ring.clone(), sigma, grading })
    }

    pub fn trivial(group: Arc<FiniteGroup>, ring: &Ring) -> Self {
        let n = group.order();
        let sigma = vec![vec![ring.one(); n]; n];
        Cocycle2 { group, ring: ring.clone(), sigma, grading: None }
    }

    /// `sigma(g, h) = phi(g) phi(h) / phi(g h)`.
    pub fn coboundary(group: Arc<FiniteGroup>, ring: &Ring, phi: &[RingValue]) -> Result<Self> {
        let n = group.order();
        let inv = phi.iter().map(|v| v.inv()).collect::<Result<Vec<_>>>()?;
        let sigma = (0..n).map(|g| (0..n).map(|h| &(&phi[g] * &phi[h]) * &inv[group.mul(g, h)]).collect()).collect();
        Cocycle2::new(group, ring, sigma, None)
    }

    /// `sigma(g, h) = zeta^{alpha(g) beta(h)}` for homomorphisms
    /// `alpha, beta: G -> Z/n` and `zeta^n = 1`.
    pub fn bicharacter(group: Arc<FiniteGroup>, ring: &Ring, zeta: &RingValue, alpha: &[usize], beta: &[usize]) -> Result<Self> {
        let n = group.order();
        let sigma = (0..n)
            .map(|g| (0..n).map(|h| zeta.pow((alpha[g] * beta[h]) as i64)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Cocycle2::new(group, ring, sigma, None)
    }

    /// Pointwise product of two cocycles on the same group.
    pub fn product(&self, other: &Cocycle2) -> Result<Self> {
        if self.group != other.group || self.ring != other.ring {
            return Err(Error::InvalidCocycle("cocycles live on different groups or rings".into()));
        }
        let sigma = self
            .sigma
            .iter()
            .zip(&other.sigma)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x * y).collect())
            .collect();
        Cocycle2::new(self.group.clone(), &self.ring, sigma, self.grading.clone())
    }

    pub fn with_grading(self, grading: Vec<i64>) -> Result<Self> {
        Cocycle2::new(self.group, &self.ring, self.sigma, Some(grading))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self, g: usize, h: usize) -> &RingValue {
        &self.sigma[g][h]
    }

    pub fn grading(&self) -> Option<&[i64]> {
        self.grading.as_deref()
    }
}

/// `(f, g)_e = sigma(f, g) / sigma(g, f)`, times `(-1)^{nu(f) nu(g)}` for a
/// graded extension: the commutator of lifts of commuting elements.
pub fn cocycle_commutator(e: &Cocycle2, f: usize, g: usize) -> Result<RingValue> {
    let n = e.group.order();
    if f >= n || g >= n {
        return Err(Error::InvalidCocycle(format!("element out of range for a group of order {n}")));
    }
    if !e.group.commute(f, g) {
        return Err(Error::NonCommutingPair(f, g));
    }
    let v = e.sigma[f][g].try_mul(&e.sigma[g][f].inv()?)?;
    Ok(match &e.grading {
        Some(nu) if (nu[f] * nu[g]).rem_euclid(2) == 1 => -v,
        _ => v,
    })
}
