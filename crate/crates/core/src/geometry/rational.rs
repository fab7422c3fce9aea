use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rings::{Ring, RingValue};

use super::poly::MPoly;

/// A quotient of polynomials over a scalar ring, in named variables.
///
/// The denominator is scaled so that its leading coefficient is 1 whenever
/// that coefficient is a unit. No common factors are cancelled.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    vars: Arc<[String]>,
    num: MPoly,
    den: MPoly,
}

impl RationalFunction {
    pub fn new(vars: &[&str], num: MPoly, den: MPoly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::NotAUnit("zero denominator".into()));
        }
        if num.nvars() != vars.len() || den.nvars() != vars.len() {
            return Err(Error::InvalidValue { ring: num.ring().to_string(), reason: "variable count mismatch".into() });
        }
        if num.ring() != den.ring() || !num.ring().is_scalar() {
            return Err(Error::DescriptorMismatch(num.ring().to_string(), den.ring().to_string()));
        }
        let vars: Arc<[String]> = vars.iter().map(|s| s.to_string()).collect();
        Ok(Self::normalized(vars, num, den))
    }

    fn normalized(vars: Arc<[String]>, num: MPoly, den: MPoly) -> RationalFunction {
        let lead = den.leading_term().map(|(_, c)| c.clone()).expect("nonzero denominator");
        match lead.inv() {
            Ok(inv) if !lead.is_one() => RationalFunction {
                vars,
                num: num.scale(&inv).expect("same ring"),
                den: den.scale(&inv).expect("same ring"),
            },
            _ => RationalFunction { vars, num, den },
        }
    }

    pub fn from_poly(vars: &[&str], p: MPoly) -> Result<RationalFunction> {
        let one = MPoly::constant(p.ring(), p.nvars(), p.ring().one());
        Self::new(vars, p, one)
    }

    pub fn constant(ring: &Ring, vars: &[&str], c: RingValue) -> Result<RationalFunction> {
        Self::from_poly(vars, MPoly::constant(ring, vars.len(), c))
    }

    /// The variable called `name`.
    pub fn variable(ring: &Ring, vars: &[&str], name: &str) -> Result<RationalFunction> {
        let i = vars
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| Error::InvalidValue { ring: ring.to_string(), reason: format!("unknown variable {name}") })?;
        Self::from_poly(vars, MPoly::var(ring, vars.len(), i))
    }

    pub fn ring(&self) -> &Ring {
        self.num.ring()
    }

    pub fn vars(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn numerator(&self) -> &MPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn check(&self, other: &RationalFunction) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::InvalidValue {
                ring: self.ring().to_string(),
                reason: format!("variables {:?} vs {:?}", self.vars, other.vars),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.check(other)?;
        if self.den == other.den {
            return Ok(Self::normalized(self.vars.clone(), self.num.add(&other.num)?, self.den.clone()));
        }
        let num = self.num.mul(&other.den)?.add(&other.num.mul(&self.den)?)?;
        Ok(Self::normalized(self.vars.clone(), num, self.den.mul(&other.den)?))
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { vars: self.vars.clone(), num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.check(other)?;
        Ok(Self::normalized(self.vars.clone(), self.num.mul(&other.num)?, self.den.mul(&other.den)?))
    }

    pub fn inv(&self) -> Result<RationalFunction> {
        if self.num.is_zero() {
            return Err(Error::NotAUnit("division by zero".into()));
        }
        Ok(Self::normalized(self.vars.clone(), self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<RationalFunction> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs() as u32;
        Ok(Self::normalized(self.vars.clone(), base.num.pow(k)?, base.den.pow(k)?))
    }

    /// The same function with variables listed in `order`.
    pub fn reorder(&self, order: &[&str]) -> Result<RationalFunction> {
        if order.len() != self.vars.len() {
            return Err(Error::InvalidValue { ring: self.ring().to_string(), reason: "variable order has the wrong length".into() });
        }
        let perm = self
            .vars
            .iter()
            .map(|v| order.iter().position(|o| o == v))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidValue { ring: self.ring().to_string(), reason: format!("order {order:?} misses a variable") })?;
        RationalFunction::new(order, self.num.permute(&perm), self.den.permute(&perm))
    }

    /// Substitutes polynomials (in the variables `vars`) for each variable.
    pub fn compose(&self, vars: &[&str], images: &[MPoly]) -> Result<RationalFunction> {
        RationalFunction::new(vars, self.num.compose(images)?, self.den.compose(images)?)
    }

    /// Applies a coefficient map into `target`.
    pub fn map_coefficients(&self, target: &Ring, f: &dyn Fn(&RingValue) -> RingValue) -> Result<RationalFunction> {
        let vars = self.vars();
        RationalFunction::new(&vars, self.num.map_coefficients(target, f), self.den.map_coefficients(target, f))
    }
}

fn fmt_poly(p: &MPoly, vars: &[String]) -> String {
    let mut parts = Vec::new();
    for (e, c) in p.terms() {
        let mut factors = Vec::new();
        let cs = c.to_string();
        let is_const = e.iter().all(|&k| k == 0);
        if is_const || !c.is_one() {
            factors.push(if cs.contains(' ') && !is_const { format!("({cs})") } else { cs });
        }
        for (v, &k) in vars.iter().zip(e) {
            match k {
                0 => {}
                1 => factors.push(v.clone()),
                _ => factors.push(format!("{v}^{k}")),
            }
        }
        parts.push(factors.join("*"));
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = fmt_poly(&self.num, &self.vars);
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            return write!(f, "{num}");
        }
        write!(f, "({num})/({})", fmt_poly(&self.den, &self.vars))
    }
}
