//! Coefficient rings: prime and Galois fields, truncated polynomial rings
//! `F_q[e]/(e^m)`, and iterated Laurent rings over either.

mod field;
mod matrix;
mod norm;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;

pub use field::{prime_power, FieldEmbedding, FiniteField, MAX_FIELD_ORDER};
pub use matrix::unit_determinant;
pub use norm::ring_norm;

/// The shape of a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    /// `F_q`, prime or Galois.
    Field(FiniteField),
    /// `F_q[e]/(e^m)`.
    Artinian { field: FiniteField, nilpotency: u32 },
    /// `base((var))`.
    Laurent { base: Ring, var: Arc<str> },
}

/// Ring descriptor. Cheap to clone; equality is structural.
#[derive(Clone)]
pub struct Ring(Arc<RingKind>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            RingKind::Field(k) => write!(f, "F{}", k.order()),
            RingKind::Artinian { field, nilpotency } => write!(f, "F{}[e]/e^{}", field.order(), nilpotency),
            RingKind::Laurent { base, var } => write!(f, "{base}(({var}))"),
        }
    }
}

impl Ring {
    pub fn field(k: FiniteField) -> Ring {
        Ring(Arc::new(RingKind::Field(k)))
    }

    /// `F_{p^d}`.
    pub fn galois(p: u32, d: u32) -> Result<Ring> {
        Ok(Ring::field(FiniteField::new(p, d)?))
    }

    /// `F_q` for a prime power `q`.
    pub fn finite_field(q: u64) -> Result<Ring> {
        Ok(Ring::field(FiniteField::of_order(q)?))
    }

    /// `k[e]/(e^m)`.
    pub fn artinian(k: FiniteField, m: u32) -> Result<Ring> {
        if m == 0 {
            return Err(Error::InvalidDescriptor("nilpotency bound must be at least 1".into()));
        }
        Ok(Ring(Arc::new(RingKind::Artinian { field: k, nilpotency: m })))
    }

    /// `base((var))`.
    pub fn laurent(base: &Ring, var: &str) -> Ring {
        Ring(Arc::new(RingKind::Laurent { base: base.clone(), var: Arc::from(var) }))
    }

    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    /// The residue field of the innermost scalar ring.
    pub fn residue_field(&self) -> &FiniteField {
        match &*self.0 {
            RingKind::Field(k) => k,
            RingKind::Artinian { field, .. } => field,
            RingKind::Laurent { base, .. } => base.residue_field(),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.residue_field().characteristic()
    }

    /// `m` with `e^m = 0`; 1 for fields. Laurent rings inherit the bound of
    /// their scalar ring, which bounds the nilpotency of non-units.
    pub fn nilpotency_bound(&self) -> u32 {
        match &*self.0 {
            RingKind::Field(_) => 1,
            RingKind::Artinian { nilpotency, .. } => *nilpotency,
            RingKind::Laurent { base, .. } => base.nilpotency_bound(),
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(&*self.0, RingKind::Field(_))
    }

    pub fn is_scalar(&self) -> bool {
        !matches!(&*self.0, RingKind::Laurent { .. })
    }

    /// Coefficient ring of a Laurent ring.
    pub fn base(&self) -> Option<&Ring> {
        match &*self.0 {
            RingKind::Laurent { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn variable_name(&self) -> Option<&str> {
        match &*self.0 {
            RingKind::Laurent { var, .. } => Some(var),
            _ => None,
        }
    }

    /// Number of Laurent layers.
    pub fn depth(&self) -> usize {
        match &*self.0 {
            RingKind::Laurent { base, .. } => 1 + base.depth(),
            _ => 0,
        }
    }

    /// The innermost non-Laurent ring.
    pub fn scalar_ring(&self) -> &Ring {
        match &*self.0 {
            RingKind::Laurent { base, .. } => base.scalar_ring(),
            _ => self,
        }
    }

    /// Same scalar ring with the residue field replaced by `k`.
    pub fn with_residue_field(&self, k: &FiniteField) -> Ring {
        match &*self.0 {
            RingKind::Field(_) => Ring::field(k.clone()),
            RingKind::Artinian { nilpotency, .. } => {
                Ring(Arc::new(RingKind::Artinian { field: k.clone(), nilpotency: *nilpotency }))
            }
            RingKind::Laurent { base, var } => Ring::laurent(&base.with_residue_field(k), var),
        }
    }

    fn width(&self) -> usize {
        self.nilpotency_bound() as usize
    }

    pub fn zero(&self) -> RingValue {
        match &*self.0 {
            RingKind::Laurent { .. } => RingValue::from_series(LaurentSeries::zero_exact(self)),
            _ => RingValue { ring: self.clone(), repr: Repr::Scalar(SmallVec::from_elem(0, self.width())) },
        }
    }

    pub fn one(&self) -> RingValue {
        self.from_field_element(1)
    }

    pub fn from_int(&self, n: i64) -> RingValue {
        self.from_field_element(self.residue_field().from_int(n))
    }

    /// A constant from the residue field.
    pub fn from_field_element(&self, a: u32) -> RingValue {
        match &*self.0 {
            RingKind::Laurent { base, .. } => {
                RingValue::from_series(LaurentSeries::constant(self, base.from_field_element(a)))
            }
            _ => {
                let mut c = SmallVec::from_elem(0, self.width());
                c[0] = a;
                RingValue { ring: self.clone(), repr: Repr::Scalar(c) }
            }
        }
    }

    /// Lifts a value of a coefficient ring through the Laurent layers.
    pub fn lift(&self, x: &RingValue) -> Result<RingValue> {
        if x.ring() == self {
            return Ok(x.clone());
        }
        match &*self.0 {
            RingKind::Laurent { base, .. } => Ok(RingValue::from_series(LaurentSeries::constant(self, base.lift(x)?))),
            _ => Err(Error::DescriptorMismatch(x.ring().to_string(), self.to_string())),
        }
    }

    /// The Galois generator `g`.
    pub fn generator(&self) -> Result<RingValue> {
        let k = self.residue_field();
        if k.degree() == 1 {
            return Err(Error::InvalidValue { ring: self.to_string(), reason: "prime field has no generator symbol".into() });
        }
        Ok(self.from_field_element(k.generator()))
    }

    /// The nilpotent `e`.
    pub fn epsilon(&self) -> Result<RingValue> {
        match &*self.0 {
            RingKind::Artinian { nilpotency, .. } => {
                let mut c = SmallVec::from_elem(0, *nilpotency as usize);
                if *nilpotency > 1 {
                    c[1] = 1;
                }
                Ok(RingValue { ring: self.clone(), repr: Repr::Scalar(c) })
            }
            RingKind::Laurent { base, .. } => self.lift(&base.epsilon()?),
            RingKind::Field(_) => {
                Err(Error::InvalidValue { ring: self.to_string(), reason: "a field has no nilpotent e".into() })
            }
        }
    }

    /// The Laurent variable, exactly.
    pub fn variable(&self) -> Result<RingValue> {
        match &*self.0 {
            RingKind::Laurent { base, .. } => Ok(RingValue::from_series(LaurentSeries::monomial(self, 1, base.one()))),
            _ => Err(Error::InvalidValue { ring: self.to_string(), reason: "not a Laurent ring".into() }),
        }
    }

    /// Lifts a variable of any Laurent layer by name.
    pub fn named_variable(&self, name: &str) -> Result<RingValue> {
        match &*self.0 {
            RingKind::Laurent { base, var } => {
                if &**var == name {
                    self.variable()
                } else {
                    self.lift(&base.named_variable(name)?)
                }
            }
            _ => Err(Error::InvalidValue { ring: self.to_string(), reason: format!("unknown variable {name}") }),
        }
    }

    /// A scalar value from its `e`-components (field elements).
    pub fn scalar(&self, components: &[u32]) -> Result<RingValue> {
        if !self.is_scalar() {
            return Err(Error::InvalidValue { ring: self.to_string(), reason: "not a scalar ring".into() });
        }
        let k = self.residue_field();
        if components.len() > self.width() || components.iter().any(|&a| a >= k.order()) {
            return Err(Error::InvalidValue { ring: self.to_string(), reason: format!("bad components {components:?}") });
        }
        let mut c: SmallVec<[u32; 4]> = SmallVec::from_elem(0, self.width());
        c[..components.len()].copy_from_slice(components);
        Ok(RingValue { ring: self.clone(), repr: Repr::Scalar(c) })
    }

    /// Inverse of [`RingValue::to_coefficients`].
    pub fn value_from_coefficients(&self, digits: &[u32]) -> Result<RingValue> {
        let k = self.residue_field();
        let d = k.degree() as usize;
        if !self.is_scalar() || digits.len() != d * self.width() {
            return Err(Error::InvalidValue { ring: self.to_string(), reason: format!("expected {} digits", d * self.width()) });
        }
        if digits.iter().any(|&x| x >= k.characteristic()) {
            return Err(Error::InvalidValue { ring: self.to_string(), reason: "digit out of range".into() });
        }
        let comps: Vec<u32> = digits.chunks(d).map(|ch| k.from_digits(ch)).collect();
        self.scalar(&comps)
    }

    /// Every element of a finite scalar ring, in coefficient order.
    pub fn elements(&self) -> Result<Vec<RingValue>> {
        if !self.is_scalar() {
            return Err(Error::InvalidValue { ring: self.to_string(), reason: "not a finite ring".into() });
        }
        let q = self.residue_field().order() as u64;
        let total = q.checked_pow(self.nilpotency_bound()).filter(|&n| n <= 1 << 20).ok_or_else(|| {
            Error::InvalidValue { ring: self.to_string(), reason: "too many elements to enumerate".into() }
        })?;
        Ok((0..total)
            .map(|mut n| {
                let comps: Vec<u32> = (0..self.width())
                    .map(|_| {
                        let r = (n % q) as u32;
                        n /= q;
                        r
                    })
                    .collect();
                self.scalar(&comps).expect("in range")
            })
            .collect())
    }
}

impl FromStr for Ring {
    type Err = Error;

    /// Parses `F5`, `F9`, `GF(3^2)`, `F5[e]/e^2`, `F5[e]/(e^2)`, optionally
    /// followed by Laurent layers such as `((s))((t))`.
    fn from_str(src: &str) -> Result<Ring> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::InvalidDescriptor(src.to_string());
        let (head, mut rest) = match s.find("((") {
            Some(i) => (&s[..i], &s[i..]),
            None => (&s[..], ""),
        };
        let (field_part, art) = match head.find('[') {
            Some(i) => (&head[..i], Some(&head[i..])),
            None => (head, None),
        };
        let q: u64 = if let Some(n) = field_part.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            match n.split_once('^') {
                Some((p, d)) => {
                    let p: u64 = p.parse().map_err(|_| bad())?;
                    let d: u32 = d.parse().map_err(|_| bad())?;
                    p.checked_pow(d).ok_or_else(bad)?
                }
                None => n.parse().map_err(|_| bad())?,
            }
        } else if let Some(n) = field_part.strip_prefix('F') {
            n.parse().map_err(|_| bad())?
        } else {
            return Err(bad());
        };
        let k = FiniteField::of_order(q)?;
        let mut ring = match art {
            None => Ring::field(k),
            Some(a) => {
                let tail = a.strip_prefix("[e]/").ok_or_else(bad)?;
                let tail = tail.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(tail);
                let m: u32 = tail.strip_prefix("e^").ok_or_else(bad)?.parse().map_err(|_| bad())?;
                Ring::artinian(k, m)?
            }
        };
        while !rest.is_empty() {
            let inner = rest.strip_prefix("((").ok_or_else(bad)?;
            let end = inner.find("))").ok_or_else(bad)?;
            let var = &inner[..end];
            if var.is_empty() || !var.chars().all(|c| c.is_ascii_alphanumeric()) || var == "e" || var == "g" {
                return Err(bad());
            }
            ring = Ring::laurent(&ring, var);
            rest = &inner[end + 2..];
        }
        Ok(ring)
    }
}

#[derive(Clone)]
enum Repr {
    /// Components along `1, e, ..., e^{m-1}`, each a field element.
    Scalar(SmallVec<[u32; 4]>),
    Series(Arc<LaurentSeries>),
}

/// An element of a [`Ring`], in canonical form.
#[derive(Clone)]
pub struct RingValue {
    ring: Ring,
    repr: Repr,
}

impl PartialEq for RingValue {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && match (&self.repr, &other.repr) {
                (Repr::Scalar(a), Repr::Scalar(b)) => a == b,
                (Repr::Series(a), Repr::Series(b)) => a == b,
                _ => false,
            }
    }
}

impl Eq for RingValue {}

impl fmt::Debug for RingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.ring)
    }
}

impl fmt::Display for RingValue {
    /// Canonical text: prime-field values as integers in `[0, p)`, otherwise
    /// `+`-joined monomials `c*g^i*e^j` in ascending order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Series(s) => write!(f, "{s}"),
            Repr::Scalar(c) => {
                let k = self.ring.residue_field();
                let mut terms = Vec::new();
                for (j, &a) in c.iter().enumerate() {
                    for (i, digit) in k.digits(a).into_iter().enumerate() {
                        if digit == 0 {
                            continue;
                        }
                        let mut factors = Vec::new();
                        if digit != 1 || (i == 0 && j == 0) {
                            factors.push(digit.to_string());
                        }
                        match i {
                            0 => {}
                            1 => factors.push("g".into()),
                            _ => factors.push(format!("g^{i}")),
                        }
                        match j {
                            0 => {}
                            1 => factors.push("e".into()),
                            _ => factors.push(format!("e^{j}")),
                        }
                        terms.push(factors.join("*"));
                    }
                }
                if terms.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", terms.join(" + "))
                }
            }
        }
    }
}

fn mismatch(a: &Ring, b: &Ring) -> Error {
    Error::DescriptorMismatch(a.to_string(), b.to_string())
}

impl RingValue {
    pub fn from_series(s: LaurentSeries) -> RingValue {
        RingValue { ring: s.ring().clone(), repr: Repr::Series(Arc::new(s)) }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Field components along powers of `e` (scalar rings only).
    pub fn components(&self) -> Option<&[u32]> {
        match &self.repr {
            Repr::Scalar(c) => Some(c),
            Repr::Series(_) => None,
        }
    }

    pub fn as_series(&self) -> Option<&LaurentSeries> {
        match &self.repr {
            Repr::Series(s) => Some(s),
            Repr::Scalar(_) => None,
        }
    }

    /// Canonical flat coefficient vector: base-`p` digits of each
    /// `e`-component in the power basis of `g`.
    pub fn to_coefficients(&self) -> Option<Vec<u32>> {
        let k = self.ring.residue_field();
        self.components().map(|c| c.iter().flat_map(|&a| k.digits(a)).collect())
    }

    /// Image in the residue field of a scalar ring.
    pub fn residue(&self) -> Option<u32> {
        self.components().map(|c| c[0])
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Scalar(c) => c.iter().all(|&a| a == 0),
            Repr::Series(s) => s.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Scalar(c) => c[0] == 1 && c[1..].iter().all(|&a| a == 0),
            Repr::Series(s) => s.is_one(),
        }
    }

    pub fn is_unit(&self) -> bool {
        match &self.repr {
            Repr::Scalar(c) => c[0] != 0,
            Repr::Series(s) => s.valuation().is_ok(),
        }
    }

    /// Lies in the maximal ideal (scalars) or has only nilpotent
    /// coefficients (series).
    pub fn is_nilpotent(&self) -> bool {
        match &self.repr {
            Repr::Scalar(c) => c[0] == 0,
            Repr::Series(s) => s.coefficients().iter().all(|x| x.is_nilpotent()),
        }
    }

    /// Smallest `k` with `x^k = 0`, or `None` when `x` is not nilpotent.
    pub fn nilpotency_index(&self) -> Option<u32> {
        if !self.is_nilpotent() {
            return None;
        }
        let bound = self.ring.nilpotency_bound();
        let mut power = self.clone();
        for k in 1..=bound {
            if power.is_zero() {
                return Some(k);
            }
            power = &power * self;
        }
        // every element of the maximal ideal dies by the bound
        Some(bound)
    }

    pub fn try_add(&self, other: &RingValue) -> Result<RingValue> {
        if self.ring != other.ring {
            return Err(mismatch(&self.ring, &other.ring));
        }
        let repr = match (&self.repr, &other.repr) {
            (Repr::Scalar(a), Repr::Scalar(b)) => {
                let k = self.ring.residue_field();
                Repr::Scalar(a.iter().zip(b).map(|(&x, &y)| k.add(x, y)).collect())
            }
            (Repr::Series(a), Repr::Series(b)) => Repr::Series(Arc::new(a.add(b)?)),
            _ => return Err(mismatch(&self.ring, &other.ring)),
        };
        Ok(RingValue { ring: self.ring.clone(), repr })
    }

    pub fn try_sub(&self, other: &RingValue) -> Result<RingValue> {
        self.try_add(&other.neg_value())
    }

    pub fn try_mul(&self, other: &RingValue) -> Result<RingValue> {
        if self.ring != other.ring {
            return Err(mismatch(&self.ring, &other.ring));
        }
        let repr = match (&self.repr, &other.repr) {
            (Repr::Scalar(a), Repr::Scalar(b)) => {
                let k = self.ring.residue_field();
                let m = a.len();
                let mut c: SmallVec<[u32; 4]> = SmallVec::from_elem(0, m);
                for i in 0..m {
                    if a[i] == 0 {
                        continue;
                    }
                    for j in 0..m - i {
                        if b[j] != 0 {
                            c[i + j] = k.add(c[i + j], k.mul(a[i], b[j]));
                        }
                    }
                }
                Repr::Scalar(c)
            }
            (Repr::Series(a), Repr::Series(b)) => Repr::Series(Arc::new(a.mul(b)?)),
            _ => return Err(mismatch(&self.ring, &other.ring)),
        };
        Ok(RingValue { ring: self.ring.clone(), repr })
    }

    fn neg_value(&self) -> RingValue {
        let repr = match &self.repr {
            Repr::Scalar(a) => {
                let k = self.ring.residue_field();
                Repr::Scalar(a.iter().map(|&x| k.neg(x)).collect())
            }
            Repr::Series(s) => Repr::Series(Arc::new(s.neg())),
        };
        RingValue { ring: self.ring.clone(), repr }
    }

    /// Multiplicative inverse. For `k[e]/(e^m)` this is
    /// `a^{-1} sum_{j<m} (-n)^j` with `x = a(1 + n)`, `n` nilpotent.
    pub fn inv(&self) -> Result<RingValue> {
        match &self.repr {
            Repr::Scalar(c) => {
                let k = self.ring.residue_field();
                let a_inv = k.inv(c[0]).ok_or_else(|| Error::NotAUnit(format!("{self} in {}", self.ring)))?;
                let scaled = self.scale(a_inv);
                let mut minus_n = scaled.neg_value();
                if let Repr::Scalar(v) = &mut minus_n.repr {
                    v[0] = 0;
                }
                let one = self.ring.one();
                let mut acc = one.clone();
                let mut power = one;
                for _ in 1..self.ring.nilpotency_bound() {
                    power = &power * &minus_n;
                    if power.is_zero() {
                        break;
                    }
                    acc = &acc + &power;
                }
                Ok(acc.scale(a_inv))
            }
            Repr::Series(s) => Ok(RingValue::from_series(s.inv()?)),
        }
    }

    pub fn try_div(&self, other: &RingValue) -> Result<RingValue> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<RingValue> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = self.ring.one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.try_mul(&sq)?;
            }
            n >>= 1;
            if n > 0 {
                sq = sq.try_mul(&sq)?;
            }
        }
        Ok(acc)
    }

    /// Multiplies by a residue-field constant.
    pub fn scale(&self, a: u32) -> RingValue {
        match &self.repr {
            Repr::Scalar(c) => {
                let k = self.ring.residue_field();
                RingValue { ring: self.ring.clone(), repr: Repr::Scalar(c.iter().map(|&x| k.mul(x, a)).collect()) }
            }
            Repr::Series(_) => self * &self.ring.from_field_element(a),
        }
    }

    /// Applies a map to every residue-field component, recursively.
    pub fn map_field(&self, target: &Ring, f: &dyn Fn(u32) -> u32) -> RingValue {
        match &self.repr {
            Repr::Scalar(c) => RingValue { ring: target.clone(), repr: Repr::Scalar(c.iter().map(|&x| f(x)).collect()) },
            Repr::Series(s) => RingValue::from_series(s.map_coefficients(target, &|v| {
                v.map_field(target.base().expect("Laurent target"), f)
            })),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&RingValue> for &RingValue {
            type Output = RingValue;
            fn $m(self, rhs: &RingValue) -> RingValue {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<RingValue> for RingValue {
            type Output = RingValue;
            fn $m(self, rhs: RingValue) -> RingValue {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &RingValue {
    type Output = RingValue;
    fn neg(self) -> RingValue {
        self.neg_value()
    }
}

impl Neg for RingValue {
    type Output = RingValue;
    fn neg(self) -> RingValue {
        self.neg_value()
    }
}

pub fn ring_add(x: &RingValue, y: &RingValue) -> Result<RingValue> {
    x.try_add(y)
}

pub fn ring_mul(x: &RingValue, y: &RingValue) -> Result<RingValue> {
    x.try_mul(y)
}

pub fn ring_neg(x: &RingValue) -> RingValue {
    -x
}

pub fn ring_inv(x: &RingValue) -> Result<RingValue> {
    x.inv()
}

/// Smallest `k` with `x^k = 0`; `None` stands for infinity.
pub fn nilpotency_index(x: &RingValue) -> Option<u32> {
    x.nilpotency_index()
}
