//! Random inputs and independent oracles shared by the integration tests.
#![allow(dead_code)]

use ccsym::geometry::{MPoly, RationalFunction};
use ccsym::{LaurentSeries, Ring, RingValue};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ring(s: &str) -> Ring {
    s.parse().unwrap()
}

pub fn scalar(rng: &mut impl Rng, r: &Ring) -> RingValue {
    let q = r.residue_field().order();
    let comps: Vec<u32> = (0..r.nilpotency_bound()).map(|_| rng.gen_range(0..q)).collect();
    r.scalar(&comps).unwrap()
}

pub fn unit(rng: &mut impl Rng, r: &Ring) -> RingValue {
    loop {
        let x = scalar(rng, r);
        if x.is_unit() {
            return x;
        }
    }
}

pub fn nilpotent(rng: &mut impl Rng, r: &Ring) -> RingValue {
    let q = r.residue_field().order();
    let mut comps: Vec<u32> = (0..r.nilpotency_bound()).map(|_| rng.gen_range(0..q)).collect();
    comps[0] = 0;
    r.scalar(&comps).unwrap()
}

/// A unit of `A((t))` with valuation in `nu`, nilpotent coefficients down to
/// `nu - pole`, random coefficients up to `nu + len`, known below `prec`.
pub fn unit_series(rng: &mut impl Rng, lr: &Ring, nu: std::ops::RangeInclusive<i64>, pole: i64, len: i64, prec: i64) -> LaurentSeries {
    let base = lr.base().unwrap();
    let v = rng.gen_range(nu);
    let pole = if base.nilpotency_bound() > 1 { rng.gen_range(0..=pole) } else { 0 };
    let mut coeffs = Vec::new();
    for _ in 0..pole {
        coeffs.push(if rng.gen_bool(0.6) { nilpotent(rng, base) } else { base.zero() });
    }
    coeffs.push(unit(rng, base));
    for _ in 0..len {
        coeffs.push(if rng.gen_bool(0.7) { scalar(rng, base) } else { base.zero() });
    }
    LaurentSeries::new(lr, v - pole, coeffs, prec.max(v + 1)).unwrap()
}

/// A polynomial of exact degree `d` in one variable with unit leading
/// coefficient.
pub fn poly(rng: &mut impl Rng, r: &Ring, d: usize) -> MPoly {
    let mut c: Vec<RingValue> = (0..d).map(|_| scalar(rng, r)).collect();
    c.push(unit(rng, r));
    MPoly::from_dense(r, &c)
}

/// A nonzero rational function of `t` with numerator and denominator of
/// degree at most `d` and unit leading coefficients.
pub fn rational(rng: &mut impl Rng, r: &Ring, d: usize) -> RationalFunction {
    let (dn, dd) = (rng.gen_range(0..=d), rng.gen_range(0..=d));
    let num = poly(rng, r, dn);
    let den = poly(rng, r, dd);
    RationalFunction::new(&["t"], num, den).unwrap()
}

/// `prod (1 - a_i t^i)` times `a0 t^nu`, multiplied out exactly and then
/// truncated; the presentation is known by construction.
pub fn from_factors(lr: &Ring, nu: i64, a0: &RingValue, factors: &[(i64, RingValue)], prec: i64) -> LaurentSeries {
    let base = lr.base().unwrap();
    let mut acc = LaurentSeries::monomial(lr, nu, a0.clone());
    for (i, a) in factors {
        let b = LaurentSeries::polynomial(lr, &[(0, base.one()), (*i, -a)]).unwrap();
        acc = acc.mul(&b).unwrap();
    }
    acc.truncate(prec)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The explicit product formula for the symbol, read off factor lists:
/// `(-1)^{nu nu'} a0^{nu'} / b0^{nu} * prod_{i,j>0} (1 - a_i^{j/d} b_{-j}^{i/d})^d
///  / prod_{i,j>0} (1 - a_{-i}^{j/d} b_j^{i/d})^d`, every pair enumerated.
pub fn product_formula(
    nu_f: i64,
    a0: &RingValue,
    fa: &[(i64, RingValue)],
    nu_g: i64,
    b0: &RingValue,
    gb: &[(i64, RingValue)],
) -> RingValue {
    let r = a0.ring().clone();
    let mut num = a0.pow(nu_g).unwrap();
    let mut den = b0.pow(nu_f).unwrap();
    let pairs = |p: &[(i64, RingValue)], n: &[(i64, RingValue)], acc: &mut RingValue| {
        for (i, a) in p.iter().filter(|(i, _)| *i > 0) {
            for (j, b) in n.iter().filter(|(j, _)| *j < 0) {
                let j = -j;
                let d = gcd(*i, j);
                let x = r.one() - &a.pow(j / d).unwrap() * &b.pow(i / d).unwrap();
                *acc = &*acc * &x.pow(d).unwrap();
            }
        }
    };
    pairs(fa, gb, &mut num);
    pairs(gb, fa, &mut den);
    let v = &num * &den.inv().unwrap();
    if (nu_f * nu_g) % 2 != 0 {
        -v
    } else {
        v
    }
}

/// Random factor list: nilpotent `a_i` for `-pole <= i < 0`, arbitrary
/// `a_i` for `0 < i <= pos`.
pub fn random_factors(rng: &mut impl Rng, base: &Ring, pole: i64, pos: i64) -> Vec<(i64, RingValue)> {
    let mut out = Vec::new();
    for i in (-pole..0).rev() {
        if rng.gen_bool(0.5) {
            out.push((i, nilpotent(rng, base)));
        }
    }
    for i in 1..=pos {
        if rng.gen_bool(0.5) {
            out.push((i, scalar(rng, base)));
        }
    }
    out.retain(|(_, a)| !a.is_zero());
    out
}

/// Residue-formula oracle over `F_p[e]/(e^2)` in plain integer arithmetic:
/// for `f = 1 + e h` with `h` a Laurent polynomial and `g` a Laurent
/// polynomial over `F_p` with unit leading term at exponent `nu`,
/// `(f, g) = 1 + e * Res(h dg/g)`, which needs the coefficient of `t^{-1}`
/// in `h g'/g`. Returns the `e`-component.
pub fn residue_oracle(p: i64, h: &[(i64, i64)], g: &[(i64, i64)]) -> i64 {
    let md = |x: i64| x.rem_euclid(p);
    let inv = |x: i64| {
        let mut r = 1;
        for _ in 0..p - 2 {
            r = md(r * x);
        }
        r
    };
    let nu = g.iter().filter(|(_, c)| md(*c) != 0).map(|(i, _)| *i).min().unwrap();
    // g = c t^nu (1 + w), dg/g = nu/t + w'/(1 + w)
    let c = g.iter().filter(|(i, _)| *i == nu).map(|(_, c)| md(*c)).sum::<i64>();
    let cinv = inv(md(c));
    let max_h = h.iter().map(|(i, _)| -i).max().unwrap_or(0).max(0) as usize + 2;
    let mut w = vec![0i64; max_h + 2];
    for (i, a) in g {
        let k = (i - nu) as usize;
        if k > 0 && k < w.len() {
            w[k] = md(w[k] + a * cinv);
        }
    }
    // l = log(1 + w) derivative series: l' = w' / (1 + w), as power series in t
    let n = w.len();
    let mut inv1w = vec![0i64; n];
    inv1w[0] = 1;
    for k in 1..n {
        let mut s = 0;
        for j in 1..=k {
            s = md(s - w[j] * inv1w[k - j]);
        }
        inv1w[k] = s;
    }
    let dw: Vec<i64> = (0..n - 1).map(|k| md((k as i64 + 1) * w[k + 1])).collect();
    // coefficient of t^k in w'/(1+w)
    let dl = |k: usize| -> i64 { (0..=k).filter(|&j| j < dw.len()).map(|j| dw[j] * inv1w[k - j]).fold(0, |a, b| md(a + b)) };
    let mut res = 0;
    for (i, a) in h {
        // t^i * nu t^{-1} contributes at i = 0
        if *i == 0 {
            res = md(res + a * nu);
        }
        // t^i * t^k with i + k = -1
        let k = -1 - i;
        if k >= 0 {
            res = md(res + a * dl(k as usize));
        }
    }
    res
}
