//! The rank-one carousel model: a basis u_0, …, u_{n−1} shifted cyclically
//! by the inverse microlocal monodromy, with sign `sgn` on every step and
//! the extra scalar `twist` on the wrap-around.

use serde::Serialize;

use crate::cyclo::{CycMatrix, CycNumber, CycPoly, RootOfUnity};
use crate::error::{Error, Result};
use crate::extdata::{Character, ExtensionDatum};
use crate::reflgrp::FiniteGroup;

#[derive(Debug, Clone, Serialize)]
pub struct CarouselModel {
    pub n: usize,
    pub e: usize,
    pub sgn: i8,
    pub twist: CycNumber,
    /// λ∘r̃(σ^{-1}): u_j ↦ sgn·u_{j+1}, u_{n−1} ↦ sgn·twist·u_0.
    pub lambda_inv: CycMatrix,
    /// μ(σ^e) = k·lambda_inv^e with k = sgn^e.
    pub mu_e: CycMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CarouselPolys {
    pub r: CycPoly,
    pub rbar: CycPoly,
    pub rbar_mu: CycPoly,
}

impl CarouselModel {
    /// k = sgn^e.
    pub fn k(&self) -> i8 {
        if self.e.is_multiple_of(2) {
            1
        } else {
            self.sgn
        }
    }

    /// sgn^n·twist, the scalar by which lambda_inv^n acts.
    pub fn wrap_scalar(&self) -> CycNumber {
        let s = if self.n.is_multiple_of(2) { 1 } else { self.sgn as i64 };
        self.twist.clone() * CycNumber::from_integer(s)
    }
}

pub fn build_carousel(n: usize, e: usize, sgn: i8, twist: &CycNumber) -> Result<CarouselModel> {
    if n == 0 {
        return Err(Error::domain("carousel needs n ≥ 1"));
    }
    if e == 0 || !n.is_multiple_of(e) {
        return Err(Error::domain(format!("e = {e} does not divide n = {n}")));
    }
    if sgn != 1 && sgn != -1 {
        return Err(Error::domain(format!("sgn = {sgn} is not ±1")));
    }
    if twist.is_zero() {
        return Err(Error::domain("twist must be nonzero"));
    }
    if twist.root_of_unity_exponent().is_none() {
        return Err(Error::domain(format!("twist {twist} is not a root of unity")));
    }
    let s = CycNumber::from_integer(sgn as i64);
    let mut l = CycMatrix::zeros(n, n);
    for j in 0..n - 1 {
        l.set(j + 1, j, s.clone());
    }
    l.set(0, n - 1, s.checked_mul(twist)?);
    let k = if e.is_multiple_of(2) { 1 } else { sgn as i64 };
    let mu_e = l.pow(e as i64)?.scale(&CycNumber::from_integer(k))?;
    Ok(CarouselModel {
        n,
        e,
        sgn,
        twist: twist.clone(),
        lambda_inv: l,
        mu_e,
    })
}

/// k^d·Q(k·z) for Q of degree d and k = ±1, which is again monic.
fn sign_rescale(q: &CycPoly, k: i8) -> CycPoly {
    let d = q.degree();
    let coeffs = q
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| if k < 0 && (i + d) % 2 == 1 { -c } else { c.clone() })
        .collect();
    CycPoly::new(coeffs).expect("monic")
}

/// R, R̄ and R̄^μ of the model, with every identity relating them verified.
pub fn carousel_minpolys(m: &CarouselModel) -> Result<CarouselPolys> {
    let fail = |check: &str, w: String| Err(Error::integrity(check, w));
    let lam = m.lambda_inv.inverse()?;
    if !lam.mul(&m.lambda_inv)?.is_identity() {
        return fail("lambda_inverse", "λ·λ^{-1} ≠ 1".into());
    }
    let r = lam.minpoly()?;
    let rbar = lam.pow(m.e as i64)?.minpoly()?;
    let rbar_mu = m.mu_e.minpoly()?;
    for (name, p) in [("R", &r), ("R̄", &rbar), ("R̄^μ", &rbar_mu)] {
        if !p.is_invertible_type() {
            return fail("minpoly_invertible", format!("{name} = {p}"));
        }
    }
    if r.degree() != m.n {
        return fail("deg_r_equals_n", format!("deg R = {} ≠ n = {}", r.degree(), m.n));
    }
    if r.detect_power_factor(m.e)?.as_ref() != Some(&rbar) {
        return fail("r_is_rbar_of_power", format!("R = {r}, R̄ = {rbar}, e = {}", m.e));
    }
    let expected = sign_rescale(&rbar.theta()?, m.k());
    if rbar_mu != expected {
        return fail(
            "rbar_mu_theta_identity",
            format!("R̄^μ = {rbar_mu}, k^d·(ϑR̄)(kz) = {expected}"),
        );
    }
    let mut u0 = vec![CycNumber::zero(); m.n];
    u0[0] = CycNumber::one();
    let mut ue = vec![CycNumber::zero(); m.n];
    if m.e < m.n {
        ue[m.e] = CycNumber::one();
    } else {
        ue[0] = m.twist.clone();
    }
    if m.mu_e.mul_vec(&u0)? != ue {
        return fail("mu_moves_u0_to_ue", format!("n = {}, e = {}", m.n, m.e));
    }
    if m.mu_e.mul(&m.lambda_inv)? != m.lambda_inv.mul(&m.mu_e)? {
        return fail("mu_commutes_with_lambda", format!("n = {}, e = {}", m.n, m.e));
    }
    let closed = CycPoly::binomial(m.n, &m.wrap_scalar());
    if m.lambda_inv.minpoly()? != closed {
        return fail("lambda_inv_closed_form", format!("expected {closed}"));
    }
    Ok(CarouselPolys { r, rbar, rbar_mu })
}

/// The default R̄ of the model in closed form, w^{n/e} − (sgn^n·twist)^{-1}.
pub fn default_rbar(m: &CarouselModel) -> Result<CycPoly> {
    Ok(CycPoly::binomial(m.n / m.e, &m.wrap_scalar().inv()?))
}

/// χ((r_α^{n_α})^{-1}), the wrap-around scalar the extension induces.
pub fn twist_from_extension(e: &ExtensionDatum, alpha: usize, chi: &Character) -> RootOfUnity {
    let t = &e.wtilde;
    let n = e.arrangement.get(alpha).order as i64;
    chi.value(t.inv(t.pow(e.r(alpha), n)))
}
