//! χ-invariants: the stabilizer W_χ, the local indices e_α, the split
//! A = A⁰ ∪ A¹, the reflection subgroup W_χ⁰ and the character ρ.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cyclo::{CycNumber, CycPoly};
use crate::error::{Error, Result};
use crate::extdata::{act_on_character, Character, ExtensionDatum};
use crate::reflgrp::{subgroup_generated, FiniteGroup};

/// User-supplied R̄ polynomials. Hyperplane entries override orbit entries.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RbarParams {
    #[serde(default)]
    pub by_orbit: BTreeMap<String, CycPoly>,
    #[serde(default)]
    pub by_hyperplane: BTreeMap<String, CycPoly>,
}

impl RbarParams {
    /// Resolves a polynomial for every hyperplane, where one is given.
    pub fn resolve(&self, e: &ExtensionDatum) -> Result<Vec<Option<CycPoly>>> {
        let na = e.hyperplane_count();
        let norb = e.arrangement.orbits().len();
        let mut out: Vec<Option<CycPoly>> = vec![None; na];
        for (k, p) in &self.by_orbit {
            let o: usize = k
                .parse()
                .ok()
                .filter(|&o| o < norb)
                .ok_or_else(|| Error::Parameter(format!("R̄ orbit key `{k}` is not an orbit")))?;
            for &a in &e.arrangement.orbits()[o] {
                out[a] = Some(p.clone());
            }
        }
        for (k, p) in &self.by_hyperplane {
            let a: usize = k
                .parse()
                .ok()
                .filter(|&a| a < na)
                .ok_or_else(|| Error::Parameter(format!("R̄ hyperplane key `{k}` out of range")))?;
            out[a] = Some(p.clone());
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AlphaClass {
    A0,
    A1,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaChi {
    /// W_{α,χ} = W_α ∩ W_χ, sorted.
    pub w_alpha_chi: Vec<usize>,
    pub e_alpha: usize,
    pub class: AlphaClass,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChiInvariants {
    pub w_chi: Vec<usize>,
    pub hyperplanes: Vec<AlphaChi>,
    pub w_chi_zero: Vec<usize>,
    /// Root of the degree-one R̄ on each W_χ⁰-orbit of A¹ hyperplanes,
    /// keyed by the least hyperplane of the orbit.
    pub rho_values: BTreeMap<usize, CycNumber>,
    pub rho_trivial: bool,
    /// R̄ supplied for each hyperplane, if any.
    #[serde(skip)]
    pub rbar: Vec<Option<CycPoly>>,
}

impl ChiInvariants {
    pub fn in_w_chi(&self, w: usize) -> bool {
        self.w_chi.binary_search(&w).is_ok()
    }

    pub fn a0(&self) -> Vec<usize> {
        self.class_members(AlphaClass::A0)
    }

    pub fn a1(&self) -> Vec<usize> {
        self.class_members(AlphaClass::A1)
    }

    fn class_members(&self, c: AlphaClass) -> Vec<usize> {
        (0..self.hyperplanes.len())
            .filter(|&a| self.hyperplanes[a].class == c)
            .collect()
    }
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

pub fn stabilizer(e: &ExtensionDatum, chi: &Character) -> Vec<usize> {
    (0..e.group.order())
        .filter(|&w| act_on_character(e, w, chi) == *chi)
        .collect()
}

/// Generators s_α^{e_α} of W_χ⁰, one per A⁰ hyperplane.
pub fn zero_generators(e: &ExtensionDatum, hyper: &[AlphaChi]) -> Vec<usize> {
    hyper
        .iter()
        .enumerate()
        .filter(|(_, h)| h.class == AlphaClass::A0)
        .map(|(a, h)| e.group.pow(e.arrangement.get(a).generator, h.e_alpha as i64))
        .collect()
}

pub fn compute_chi_invariants(
    e: &ExtensionDatum,
    chi: &Character,
    rbar: Option<&RbarParams>,
) -> Result<ChiInvariants> {
    let w_chi = stabilizer(e, chi);
    let mut hyper = Vec::with_capacity(e.hyperplane_count());
    for h in &e.arrangement.hyperplanes {
        let w_alpha_chi = intersect(&h.stabilizer, &w_chi);
        let e_alpha = h.order / w_alpha_chi.len();
        hyper.push(AlphaChi {
            w_alpha_chi,
            e_alpha,
            class: if e_alpha < h.order {
                AlphaClass::A0
            } else {
                AlphaClass::A1
            },
        });
    }
    let w_chi_zero = subgroup_generated(&e.group, &zero_generators(e, &hyper));

    if let Some(w) = w_chi_zero.iter().find(|w| w_chi.binary_search(w).is_err()) {
        return Err(Error::integrity(
            "w_chi_zero_in_w_chi",
            format!("element {w} of W_χ⁰ moves χ"),
        ));
    }
    for (a, h) in e.arrangement.hyperplanes.iter().enumerate() {
        if intersect(&w_chi_zero, &h.stabilizer) != hyper[a].w_alpha_chi {
            return Err(Error::integrity(
                "w_chi_zero_meets_w_alpha",
                format!("α = {a}: W_χ⁰ ∩ W_α ≠ W_{{α,χ}}"),
            ));
        }
    }

    let resolved = match rbar {
        Some(p) => p.resolve(e)?,
        None => vec![None; e.hyperplane_count()],
    };
    for (a, p) in resolved.iter().enumerate() {
        if let Some(p) = p {
            if !p.is_invertible_type() {
                return Err(Error::Parameter(format!(
                    "R̄ for α = {a} needs degree ≥ 1 and a nonzero constant term"
                )));
            }
        }
    }
    for (a, h) in hyper.iter().enumerate() {
        if let (AlphaClass::A0, Some(p)) = (h.class, &resolved[a]) {
            if p.degree() != h.w_alpha_chi.len() {
                return Err(Error::Parameter(format!(
                    "R̄ for α = {a} ∈ A⁰ has degree {}, expected |W_{{α,χ}}| = {}",
                    p.degree(),
                    h.w_alpha_chi.len()
                )));
            }
        }
    }
    let mut rho_values = BTreeMap::new();
    let a1: Vec<usize> = (0..hyper.len()).filter(|&a| hyper[a].class == AlphaClass::A1).collect();
    for orbit in e.arrangement.orbits_under(&w_chi_zero) {
        let members: Vec<usize> = orbit.iter().copied().filter(|a| a1.contains(a)).collect();
        let mut root: Option<CycNumber> = None;
        for &a in &members {
            let Some(p) = &resolved[a] else { continue };
            if p.degree() != 1 {
                return Err(Error::Parameter(format!(
                    "R̄ for α = {a} ∈ A¹ has degree {}, expected 1",
                    p.degree()
                )));
            }
            let r = -p.constant_term();
            match &root {
                Some(r0) if *r0 != r => {
                    return Err(Error::Parameter(format!(
                        "ρ is not constant on the W_χ⁰-orbit of α = {a}"
                    )))
                }
                _ => root = Some(r),
            }
        }
        if let (Some(r), Some(&first)) = (root, members.first()) {
            rho_values.insert(first, r);
        }
    }
    let rho_trivial = rho_values.values().all(CycNumber::is_one);
    Ok(ChiInvariants {
        w_chi,
        hyperplanes: hyper,
        w_chi_zero,
        rho_values,
        rho_trivial,
        rbar: resolved,
    })
}

/// W_χ⁰ = ⟨∪ W_{α,χ}⟩ and W_{α,χ} = ⟨s_α^{e_α}⟩; the witness names the
/// first failure.
pub fn check_generation(e: &ExtensionDatum, inv: &ChiInvariants) -> std::result::Result<(), String> {
    let mut all = Vec::new();
    for (a, h) in inv.hyperplanes.iter().enumerate() {
        let s = e.arrangement.get(a).generator;
        let gen = subgroup_generated(&e.group, &[e.group.pow(s, h.e_alpha as i64)]);
        if gen != h.w_alpha_chi {
            return Err(format!("α = {a}: W_{{α,χ}} ≠ ⟨s_α^{}⟩", h.e_alpha));
        }
        all.extend_from_slice(&h.w_alpha_chi);
    }
    if subgroup_generated(&e.group, &all) != inv.w_chi_zero {
        return Err("W_χ⁰ differs from the subgroup generated by the W_{α,χ}".into());
    }
    Ok(())
}
