use crate::error::Result;
use crate::laurent::LaurentSeries;
use crate::rings::RingValue;

/// `(-1)^{nu(f) nu(g)} (f^{nu(g)} / g^{nu(f)})|_{t=0}`.
///
/// Over a coefficient ring without nilpotents only the leading terms
/// matter, so the arguments are cut down to their leading monomials first.
pub fn tame_symbol(f: &LaurentSeries, g: &LaurentSeries) -> Result<RingValue> {
    let nf = f.valuation()?;
    let ng = g.valuation()?;
    let (f, g) = if f.ring().nilpotency_bound() == 1 {
        (leading(f, nf)?, leading(g, ng)?)
    } else {
        (f.clone(), g.clone())
    };
    let x = f.pow(ng)?.mul(&g.pow(-nf)?)?;
    let v = x.reduce_mod_t()?;
    Ok(if (nf * ng) % 2 != 0 { -v } else { v })
}

fn leading(f: &LaurentSeries, nu: i64) -> Result<LaurentSeries> {
    Ok(LaurentSeries::monomial(f.ring(), nu, f.coefficient(nu)?))
}
