use crate::error::{Error, Result};
use crate::laurent::{unit_decompose, LaurentSeries};

/// How an elementary factor of a unit sits in `A((t))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementaryKind {
    /// `t` itself (powers are carried by the term exponent).
    UniformizerPower,
    /// `a_0 prod_{i>0} (1 - a_i t^i)`, a unit of `A[[t]]`.
    RegularUnit,
    /// `1 - a_i t^i` with `i < 0` and `a_i` nilpotent.
    NegativeElementary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolArg {
    pub kind: ElementaryKind,
    pub value: LaurentSeries,
}

/// `{args}^exponent`, one summand of a multilinear expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolTerm {
    pub exponent: i64,
    pub args: Vec<SymbolArg>,
}

impl SymbolTerm {
    /// Position of the uniformizer, if the term has one.
    pub fn uniformizer_slot(&self) -> Option<usize> {
        self.args.iter().position(|a| a.kind == ElementaryKind::UniformizerPower)
    }
}

/// Elementary factors of one argument with their multiplicities.
fn elementary_factors(f: &LaurentSeries) -> Result<Vec<(i64, SymbolArg)>> {
    let ring = f.ring();
    let base = f.base();
    let d = unit_decompose(f)?;
    let mut out = Vec::new();
    let mut regular = LaurentSeries::constant(ring, d.a0.clone()).truncate(d.precision);
    for (i, a) in &d.positive {
        regular = regular.mul(&LaurentSeries::polynomial(ring, &[(0, base.one()), (*i, -a)])?)?;
    }
    if !regular.is_one() {
        out.push((1, SymbolArg { kind: ElementaryKind::RegularUnit, value: regular }));
    }
    if d.valuation != 0 {
        let t = LaurentSeries::monomial(ring, 1, base.one());
        out.push((d.valuation, SymbolArg { kind: ElementaryKind::UniformizerPower, value: t }));
    }
    for (i, a) in &d.negative {
        let v = LaurentSeries::polynomial(ring, &[(0, base.one()), (*i, -a)])?;
        out.push((1, SymbolArg { kind: ElementaryKind::NegativeElementary, value: v }));
    }
    Ok(out)
}

/// Expands `{f_0, ..., f_n}` multilinearly into elementary terms.
///
/// Each argument splits as regular unit, `t^nu` and negative binomials.
/// Within a term, all uniformizers but the last are replaced by `-1`
/// (`{t, t} = {-1, t}`), the remaining one is moved to the last slot with a
/// sign flip per transposition, and terms with an argument equal to 1 are
/// dropped.
pub fn steinberg_expand(args: &[LaurentSeries]) -> Result<Vec<SymbolTerm>> {
    let Some(first) = args.first() else {
        return Ok(Vec::new());
    };
    let ring = first.ring();
    if let Some(bad) = args.iter().find(|a| a.ring() != ring) {
        return Err(Error::DescriptorMismatch(bad.ring().to_string(), ring.to_string()));
    }
    let factors = args.iter().map(elementary_factors).collect::<Result<Vec<_>>>()?;
    let minus_one = LaurentSeries::constant(ring, -first.base().one());
    let n = args.len();
    let mut terms = Vec::new();
    let mut idx = vec![0usize; n];
    if factors.iter().any(|f| f.is_empty()) {
        return Ok(terms);
    }
    loop {
        let mut exponent = 1;
        let mut term_args = Vec::with_capacity(n);
        for (k, &i) in idx.iter().enumerate() {
            let (mult, arg) = &factors[k][i];
            exponent *= mult;
            term_args.push(arg.clone());
        }
        let slots: Vec<usize> = (0..n).filter(|&k| term_args[k].kind == ElementaryKind::UniformizerPower).collect();
        if let Some((&last, rest)) = slots.split_last() {
            for &k in rest {
                term_args[k] = SymbolArg { kind: ElementaryKind::RegularUnit, value: minus_one.clone() };
            }
            let moves = (n - 1 - last) as i64;
            let pi = term_args.remove(last);
            term_args.push(pi);
            if moves % 2 == 1 {
                exponent = -exponent;
            }
        }
        if !term_args.iter().any(|a| a.value.is_one()) {
            terms.push(SymbolTerm { exponent, args: term_args });
        }
        // next index tuple
        let mut k = 0;
        loop {
            if k == n {
                return Ok(terms);
            }
            idx[k] += 1;
            if idx[k] < factors[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
