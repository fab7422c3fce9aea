use crate::error::{Error, Result};
use crate::laurent::LaurentSeries;
use crate::rings::RingValue;

use super::steinberg::{steinberg_expand, ElementaryKind};
use super::{cc_symbol, tame_symbol};

/// Higher tame symbol of `n + 1` units of `k((t_1))...((t_n))`.
///
/// Recursion on the outermost variable: after the Steinberg expansion,
/// terms made of regular units are killed by the boundary, and a term
/// `{u_0, ..., u_{n-1}, t_n}` contributes the symbol of the reductions
/// `(u_0 mod t_n, ..., u_{n-1} mod t_n)` one level down. The base case is
/// [`tame_symbol`].
pub fn higher_tame_symbol(args: &[LaurentSeries]) -> Result<RingValue> {
    higher(args, &|f, g| tame_symbol(f, g))
}

/// Higher Contou-Carrère symbol on the restricted domain: in every variable
/// except the innermost the arguments must have no negative elementary
/// factors. The base case is [`cc_symbol`].
pub fn higher_cc_symbol(args: &[LaurentSeries]) -> Result<RingValue> {
    higher(args, &|f, g| cc_symbol(f, g))
}

type Base<'a> = &'a dyn Fn(&LaurentSeries, &LaurentSeries) -> Result<RingValue>;

fn higher(args: &[LaurentSeries], base: Base<'_>) -> Result<RingValue> {
    let Some(first) = args.first() else {
        return Err(Error::UnsupportedArgument("no arguments".into()));
    };
    let ring = first.ring();
    let n = ring.depth();
    if args.len() != n + 1 {
        return Err(Error::UnsupportedArgument(format!("{} arguments over a {n}-dimensional ring", args.len())));
    }
    if n == 1 {
        return base(&args[0], &args[1]);
    }
    let inner_ring = first.base().clone();
    let mut acc = inner_ring.scalar_ring().one();
    for term in steinberg_expand(args)? {
        if term.args.iter().any(|a| a.kind == ElementaryKind::NegativeElementary) {
            return Err(Error::UnsupportedArgument(format!(
                "negative elementary factor in the outer variable {}",
                first.variable()
            )));
        }
        if term.uniformizer_slot().is_none() {
            continue;
        }
        let reduced = term.args[..n]
            .iter()
            .map(|a| {
                let v = a.value.reduce_mod_t()?;
                v.as_series().cloned().ok_or_else(|| Error::UnsupportedArgument("reduction left the Laurent tower".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let v = higher(&reduced, base)?;
        acc = acc.try_mul(&v.pow(term.exponent)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Ring;

    fn two_dim() -> Ring {
        "F7((s))((t))".parse().unwrap()
    }

    fn var(r: &Ring, name: &str, prec: i64) -> LaurentSeries {
        let v = r.named_variable(name).unwrap();
        truncate_all(v.as_series().unwrap(), prec)
    }

    fn truncate_all(f: &LaurentSeries, prec: i64) -> LaurentSeries {
        let inner = f.base().clone();
        let mapped = f.map_coefficients(f.ring(), &|c| match c.as_series() {
            Some(s) => RingValue::from_series(s.truncate(prec)),
            None => c.clone(),
        });
        let _ = inner;
        mapped.truncate(prec)
    }

    #[test]
    fn s_c_t_reduces_to_inner_tame() {
        let r = two_dim();
        let s = var(&r, "s", 8);
        let t = var(&r, "t", 8);
        let c = LaurentSeries::constant(&r, r.base().unwrap().from_int(3)).truncate(8);
        let v = higher_tame_symbol(&[s, c, t]).unwrap();
        let k: Ring = "F7".parse().unwrap();
        assert_eq!(v, k.from_int(3).inv().unwrap());
    }

    #[test]
    fn t_t_s() {
        let r = two_dim();
        let s = var(&r, "s", 8);
        let t = var(&r, "t", 8);
        let k: Ring = "F7".parse().unwrap();
        assert_eq!(higher_tame_symbol(&[t.clone(), t, s]).unwrap(), k.from_int(-1));
    }

    #[test]
    fn regular_units_give_one() {
        let r = two_dim();
        let b = r.base().unwrap();
        let u = LaurentSeries::constant(&r, b.from_int(2)).truncate(8);
        let s = var(&r, "s", 8);
        let v = LaurentSeries::polynomial(&r, &[(0, b.from_int(3)), (1, b.one())]).unwrap().truncate(8);
        assert!(higher_tame_symbol(&[u, s, v]).unwrap().is_one());
    }
}
