use serde::Serialize;

use super::{act_on_character, Character, ExtensionDatum};
use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};
use crate::reflgrp::FiniteGroup;

/// A braid word: letters (α, ±1) standing for σ_α^{±1}.
pub type BraidWord = Vec<(usize, i8)>;

/// An element (w̃, b) of the fiber product of W̃ and the braid group over
/// W, with b recorded as a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FiberElement {
    pub wt: usize,
    pub word: BraidWord,
}

pub fn free_reduce(word: &[(usize, i8)]) -> BraidWord {
    let mut out: BraidWord = Vec::with_capacity(word.len());
    for &(a, e) in word {
        match out.last() {
            Some(&(b, f)) if b == a && f == -e => {
                out.pop();
            }
            _ => out.push((a, e)),
        }
    }
    out
}

pub fn invert_word(word: &[(usize, i8)]) -> BraidWord {
    word.iter().rev().map(|&(a, e)| (a, -e)).collect()
}

impl ExtensionDatum {
    /// p(word) ∈ W, with p(σ_α) = s_α^{-1}.
    pub fn p_word(&self, word: &[(usize, i8)]) -> usize {
        let g = &self.group;
        word.iter().fold(0, |acc, &(a, e)| {
            let s = self.arrangement.get(a).generator;
            g.mul(acc, if e > 0 { g.inv(s) } else { s })
        })
    }

    /// r(word) ∈ W̃, evaluated letter-wise from the splitting values.
    pub fn r_word(&self, word: &[(usize, i8)]) -> usize {
        let t = &self.wtilde;
        word.iter().fold(t.identity(), |acc, &(a, e)| {
            let r = self.r(a);
            t.mul(acc, if e > 0 { r } else { t.inv(r) })
        })
    }

    /// r̃(word) = (r(word), word).
    pub fn lift_word(&self, word: &[(usize, i8)]) -> FiberElement {
        FiberElement {
            wt: self.r_word(word),
            word: free_reduce(word),
        }
    }

    /// An element of I viewed in the fiber product.
    pub fn inertia(&self, x: usize) -> FiberElement {
        FiberElement { wt: x, word: vec![] }
    }

    pub fn fiber_check(&self, g: &FiberElement) -> Result<()> {
        if self.q[g.wt] != self.p_word(&g.word) {
            return Err(Error::integrity(
                "fiber_compatible",
                format!("q({}) ≠ p({:?})", g.wt, g.word),
            ));
        }
        Ok(())
    }

    pub fn fiber_mul(&self, a: &FiberElement, b: &FiberElement) -> Result<FiberElement> {
        self.fiber_check(a)?;
        self.fiber_check(b)?;
        let mut word = a.word.clone();
        word.extend_from_slice(&b.word);
        Ok(FiberElement {
            wt: self.wtilde.mul(a.wt, b.wt),
            word: free_reduce(&word),
        })
    }

    pub fn fiber_inv(&self, a: &FiberElement) -> FiberElement {
        FiberElement {
            wt: self.wtilde.inv(a.wt),
            word: invert_word(&a.word),
        }
    }

    /// x_g = g.wt·r(g.word)^{-1}, which lies in I.
    pub fn inertia_part(&self, g: &FiberElement) -> Result<usize> {
        self.fiber_check(g)?;
        let t = &self.wtilde;
        let x = t.mul(g.wt, t.inv(self.r_word(&g.word)));
        if !self.in_kernel(x) {
            return Err(Error::integrity(
                "inertia_part_in_kernel",
                format!("{x} for {g:?}"),
            ));
        }
        Ok(x)
    }

    /// χ̂(g) = χ(x_g); defined when the W-image of g stabilizes χ.
    pub fn eval_chi_hat(&self, chi: &Character, g: &FiberElement) -> Result<RootOfUnity> {
        let w = self.q[g.wt];
        if act_on_character(self, w, chi) != *chi {
            return Err(Error::domain(format!(
                "χ̂ is undefined at {g:?}: its W-image {w} does not fix χ"
            )));
        }
        Ok(chi.value(self.inertia_part(g)?))
    }

    /// τ̂(g) = τ(x_g).
    pub fn eval_tau_hat(&self, g: &FiberElement) -> Result<i8> {
        Ok(self.tau[self.inertia_part(g)?])
    }
}
