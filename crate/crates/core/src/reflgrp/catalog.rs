use crate::cyclo::{CycMatrix, CycNumber};
use crate::error::{Error, Result};

fn zeta(m: usize, k: i64) -> CycNumber {
    CycNumber::zeta(m as u32, k).expect("catalog orders are small")
}

/// Monomial-matrix generators of the imprimitive group G(m, p, r).
///
/// For r ≥ 2 these are the transpositions (i i+1), the twisted
/// transposition with entries ζ_m^{∓1} when p > 1, and diag(ζ_m^p, 1, …)
/// when p < m. G(1, 1, 1) is the trivial group on ℂ¹.
pub fn catalog(m: usize, p: usize, r: usize) -> Result<Vec<CycMatrix>> {
    if m == 0 || p == 0 || r == 0 {
        return Err(Error::domain("G(m,p,r) needs positive parameters"));
    }
    if !m.is_multiple_of(p) {
        return Err(Error::domain(format!("p = {p} does not divide m = {m}")));
    }
    if r == 1 {
        return Ok(vec![CycMatrix::diagonal(&[zeta(m, p as i64)])]);
    }
    let one = CycNumber::one;
    let mut gens = Vec::new();
    if p < m {
        let mut d = vec![one(); r];
        d[0] = zeta(m, p as i64);
        gens.push(CycMatrix::diagonal(&d));
    }
    if p > 1 {
        let mut t = CycMatrix::identity(r);
        t.set(0, 0, CycNumber::zero());
        t.set(1, 1, CycNumber::zero());
        t.set(0, 1, zeta(m, -1));
        t.set(1, 0, zeta(m, 1));
        gens.push(t);
    }
    for i in 0..r - 1 {
        let mut s = CycMatrix::identity(r);
        s.set(i, i, CycNumber::zero());
        s.set(i + 1, i + 1, CycNumber::zero());
        s.set(i, i + 1, one());
        s.set(i + 1, i, one());
        gens.push(s);
    }
    Ok(gens)
}

/// m^r·r!/p.
pub fn catalog_order(m: usize, p: usize, r: usize) -> usize {
    m.pow(r as u32) * (1..=r).product::<usize>() / p
}
