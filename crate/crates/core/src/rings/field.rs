//! Finite fields `F_{p^d}` with log/antilog tables.
//!
//! Elements are encoded as integers `sum c_i p^i` where `c_i` are the
//! coordinates in the power basis `1, g, ..., g^{d-1}` of the fixed
//! generator `g`. The modulus of `F_{p^d}` is the primitive monic polynomial
//! of degree `d` whose coefficient vector `(c_{d-1}, ..., c_0)`, read as a
//! base-`p` number, is smallest. For `d = 1` the "generator" is the smallest
//! primitive root modulo `p`, which only matters for the tables.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

pub(crate) struct FieldData {
    p: u32,
    degree: u32,
    order: u32,
    /// Monic modulus, low to high, length `degree + 1` (for `d = 1`: `x - r`).
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Handle to a cached finite field. Cloning is cheap.
#[derive(Clone)]
pub struct FiniteField(Arc<FieldData>);

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.degree == other.0.degree)
    }
}

impl Eq for FiniteField {}

impl std::hash::Hash for FiniteField {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.degree.hash(state);
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.order())
    }
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), FiniteField>> {
    static FIELDS: OnceLock<Mutex<HashMap<(u32, u32), FiniteField>>> = OnceLock::new();
    FIELDS.get_or_init(|| Mutex::new(HashMap::new()))
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Splits `q = p^d`; `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    if !is_prime(p) {
        return None;
    }
    let mut d = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        d += 1;
    }
    (r == 1).then_some((p as u32, d))
}

impl FiniteField {
    /// The field with `p^d` elements.
    pub fn new(p: u32, d: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidDescriptor(format!("{p} is not prime")));
        }
        if d == 0 {
            return Err(Error::InvalidDescriptor("extension degree must be at least 1".into()));
        }
        let order = (p as u64).checked_pow(d).filter(|&q| q <= MAX_FIELD_ORDER).ok_or_else(|| {
            Error::InvalidDescriptor(format!("F_{{{p}^{d}}} exceeds the supported field size"))
        })?;
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(f) = reg.get(&(p, d)) {
            return Ok(f.clone());
        }
        let field = FiniteField(Arc::new(build(p, d, order as u32)));
        reg.insert((p, d), field.clone());
        Ok(field)
    }

    /// The field of order `q`.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, d) = prime_power(q).ok_or_else(|| Error::InvalidDescriptor(format!("{q} is not a prime power")))?;
        Self::new(p, d)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Modulus coefficients, low to high (monic).
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// The multiplicative generator `g`.
    pub fn generator(&self) -> u32 {
        self.0.exp[1 % self.0.exp.len()]
    }

    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    pub fn digits(&self, a: u32) -> Vec<u32> {
        let p = self.0.p;
        let mut a = a;
        (0..self.0.degree)
            .map(|_| {
                let r = a % p;
                a /= p;
                r
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        let p = self.0.p;
        digits.iter().rev().fold(0, |acc, &c| acc * p + c % p)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if self.0.degree == 1 {
            return (a + b) % p;
        }
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.p;
        if self.0.degree == 1 {
            return (p - a) % p;
        }
        if p == 2 {
            return a;
        }
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.0.order - 1;
        let s = self.0.log[a as usize] + self.0.log[b as usize];
        self.0.exp[(if s >= n { s - n } else { s }) as usize]
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.0.order - 1;
        Some(self.0.exp[((n - self.0.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: u32, e: i64) -> Option<u32> {
        if e == 0 {
            return Some(1);
        }
        if a == 0 {
            return if e > 0 { Some(0) } else { None };
        }
        let n = (self.0.order - 1) as i64;
        let k = (self.0.log[a as usize] as i64 * e.rem_euclid(n)).rem_euclid(n);
        Some(self.0.exp[k as usize])
    }

    /// Discrete logarithm with respect to [`FiniteField::generator`].
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.0.log[a as usize])
    }

    pub fn exp(&self, k: u64) -> u32 {
        self.0.exp[(k % (self.0.order as u64 - 1).max(1)) as usize]
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.0.p as i64).unwrap_or(0)
    }

    /// Evaluates a polynomial with coefficients in this field (low to high).
    pub fn eval_poly(&self, coeffs: &[u32], x: u32) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

/// Multiplies an encoded element by the generator `x` modulo the monic modulus.
fn mul_by_x(p: u32, modulus: &[u32], digits: &mut [u32]) {
    let d = digits.len();
    let top = digits[d - 1];
    for i in (1..d).rev() {
        digits[i] = digits[i - 1];
    }
    digits[0] = 0;
    if top != 0 {
        for i in 0..d {
            digits[i] = (digits[i] + (p - top) * modulus[i] % p) % p;
        }
    }
}

fn encode(p: u32, digits: &[u32]) -> u32 {
    digits.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn build(p: u32, d: u32, order: u32) -> FieldData {
    let n = (order - 1) as usize;
    if d == 1 {
        for r in 1..p.max(2) {
            let mut exp = Vec::with_capacity(n);
            let mut cur = 1u32;
            let mut ok = true;
            for i in 0..n {
                if i > 0 && cur == 1 {
                    ok = false;
                    break;
                }
                exp.push(cur);
                cur = ((cur as u64 * r as u64) % p as u64) as u32;
            }
            if ok && cur == 1 {
                return tables(p, d, order, vec![(p - r) % p, 1], exp);
            }
        }
        unreachable!("every prime field has a primitive root");
    }
    let du = d as usize;
    for code in 0..(order as u64) {
        let mut modulus: Vec<u32> = (0..du).map(|i| ((code / (p as u64).pow(i as u32)) % p as u64) as u32).collect();
        if modulus[0] == 0 {
            continue;
        }
        modulus.push(1);
        let mut digits = vec![0u32; du];
        digits[0] = 1;
        let mut exp = Vec::with_capacity(n);
        let mut primitive = true;
        for i in 0..n {
            let cur = encode(p, &digits);
            if i > 0 && cur == 1 {
                primitive = false;
                break;
            }
            exp.push(cur);
            mul_by_x(p, &modulus, &mut digits);
        }
        if primitive && encode(p, &digits) == 1 {
            return tables(p, d, order, modulus, exp);
        }
    }
    unreachable!("a primitive polynomial exists in every degree");
}

fn tables(p: u32, degree: u32, order: u32, modulus: Vec<u32>, exp: Vec<u32>) -> FieldData {
    let mut log = vec![0u32; order as usize];
    for (k, &e) in exp.iter().enumerate() {
        log[e as usize] = k as u32;
    }
    FieldData { p, degree, order, modulus, exp, log }
}

/// A fixed embedding `F_{p^e} -> F_{p^D}` for `e | D`.
///
/// The generator of the small field is sent to the root of its modulus with
/// the smallest discrete logarithm in the large field.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    from: FiniteField,
    to: FiniteField,
    /// `log_to(image of generator)`.
    image_log: u64,
}

impl FieldEmbedding {
    pub fn new(from: &FiniteField, to: &FiniteField) -> Result<Self> {
        if from.characteristic() != to.characteristic() || !to.degree().is_multiple_of(from.degree()) {
            return Err(Error::InvalidDescriptor(format!("{from:?} does not embed in {to:?}")));
        }
        let big = to.order() as u64 - 1;
        let small = from.order() as u64 - 1;
        let step = big / small.max(1);
        // Map the small modulus into the big field's prime subfield.
        let m: Vec<u32> = from.modulus().iter().map(|&c| to.from_int(c as i64)).collect();
        for j in 0..small.max(1) {
            let k = j * step;
            let cand = to.exp(k);
            if from.degree() == 1 {
                // prime subfield: image of the primitive root r is r itself
                let r = from.generator();
                if cand == to.from_int(r as i64) {
                    return Ok(Self { from: from.clone(), to: to.clone(), image_log: k });
                }
                continue;
            }
            if to.eval_poly(&m, cand) == 0 {
                return Ok(Self { from: from.clone(), to: to.clone(), image_log: k });
            }
        }
        Err(Error::InvalidDescriptor(format!("no root of the modulus of {from:?} in {to:?}")))
    }

    pub fn source(&self) -> &FiniteField {
        &self.from
    }

    pub fn target(&self) -> &FiniteField {
        &self.to
    }

    pub fn map(&self, a: u32) -> u32 {
        match self.from.log(a) {
            None => 0,
            Some(l) => self.to.exp(l as u64 * self.image_log),
        }
    }

    /// Inverse of [`FieldEmbedding::map`] on its image.
    pub fn preimage(&self, b: u32) -> Option<u32> {
        let Some(lb) = self.to.log(b) else {
            return Some(0);
        };
        let big = self.to.order() as u64 - 1;
        let small = self.from.order() as u64 - 1;
        if small == 0 {
            return (b == 1).then_some(1);
        }
        let s = big / small;
        let lb = lb as u64;
        if !lb.is_multiple_of(s) {
            return None;
        }
        let r = (self.image_log / s) % small;
        let r_inv = mod_inverse(r, small)?;
        Some(self.from.exp(((lb / s) % small) * r_inv % small))
    }
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}
