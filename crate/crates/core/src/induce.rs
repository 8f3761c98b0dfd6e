//! The induced module M_χ: its dimension ledger, the I-isotypic blocks, and
//! in the two constructive regimes an explicit braid-group action.
//!
//! R1 (W_χ⁰ trivial, ρ trivial) realizes M_χ on the basis e_w, w ∈ W, with
//! monomial matrices. R2 (χ fixed by W, every e_α = 1) realizes it on the
//! Hecke algebra module twisted by χτ on I. Other data get the ledger only.

use std::collections::VecDeque;

use serde::Serialize;

use crate::chi::ChiInvariants;
use crate::cyclo::{CycMatrix, CycNumber, RootOfUnity};
use crate::error::{Error, Result};
use crate::extdata::{
    act_on_character, canonical_i_generators, invert_word, Character, Check, Convention, ExtensionDatum,
    FiberElement, Status,
};
use crate::hecke::HeckeAlgebra;
use crate::par::Exec;
use crate::reflgrp::FiniteGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    R1,
    R2,
    LedgerOnly,
}

#[derive(Debug, Clone, Serialize)]
pub struct Block {
    /// Least element of the W_χ-coset labelling the block.
    pub label: usize,
    pub coset: Vec<usize>,
    pub dim: usize,
    /// The inertia character of the block, before the τ twist.
    pub character: Character,
    /// Basis positions spanning the block.
    pub slots: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Ledger {
    pub convention: Convention,
    pub dim_m0: usize,
    pub index: usize,
    pub dim_mchi: usize,
    /// Cosets of W_χ⁰ (left, or right under the flipped convention), each
    /// sorted, ordered by least element. Basis position c·dim_m0 + j is the
    /// j-th vector of M⁰ over coset c.
    pub cosets: Vec<Vec<usize>>,
    pub blocks: Vec<Block>,
}

/// Action of one element of I on the ledger basis, which is diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IAction {
    pub x: usize,
    pub diagonal: Vec<RootOfUnity>,
}

impl IAction {
    pub fn to_matrix(&self) -> Result<CycMatrix> {
        let d: Vec<CycNumber> = self
            .diagonal
            .iter()
            .map(|r| r.to_cyc())
            .collect::<Result<_>>()?;
        Ok(CycMatrix::diagonal(&d))
    }
}

fn cosets<G: FiniteGroup + ?Sized>(g: &G, h: &[usize], right: bool) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for w in 0..g.order() {
        if seen[w] {
            continue;
        }
        let mut c: Vec<usize> = h
            .iter()
            .map(|&x| if right { g.mul(x, w) } else { g.mul(w, x) })
            .collect();
        c.sort_unstable();
        for &y in &c {
            seen[y] = true;
        }
        out.push(c);
    }
    out
}

/// The inertia character attached to a coset label: w·χ, or w^{-1}·χ under
/// the flipped convention.
pub fn label_character(e: &ExtensionDatum, convention: Convention, w: usize, chi: &Character) -> Character {
    match convention {
        Convention::Standard => act_on_character(e, w, chi),
        Convention::FlipInertia => act_on_character(e, e.group.inv(w), chi),
    }
}

pub fn build_ledger(
    e: &ExtensionDatum,
    chi: &Character,
    inv: &ChiInvariants,
    convention: Convention,
) -> Result<Ledger> {
    let right = convention == Convention::FlipInertia;
    let g = &e.group;
    let zero = cosets(g, &inv.w_chi_zero, right);
    let dim_m0 = inv.w_chi_zero.len();
    let index = zero.len();
    let w_chi_cosets = cosets(g, &inv.w_chi, right);
    let mut blocks = Vec::with_capacity(w_chi_cosets.len());
    for c in &w_chi_cosets {
        let mut slots = Vec::new();
        for (k, z) in zero.iter().enumerate() {
            if c.binary_search(&z[0]).is_ok() {
                slots.extend(k * dim_m0..(k + 1) * dim_m0);
            }
        }
        blocks.push(Block {
            label: c[0],
            coset: c.clone(),
            dim: slots.len(),
            character: label_character(e, convention, c[0], chi),
            slots,
        });
    }
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            if blocks[i].character == blocks[j].character {
                return Err(Error::integrity(
                    "block_characters_distinct",
                    format!("blocks {} and {} carry the same character", blocks[i].label, blocks[j].label),
                ));
            }
        }
    }
    Ok(Ledger {
        convention,
        dim_m0,
        index,
        dim_mchi: dim_m0 * index,
        cosets: zero,
        blocks,
    })
}

/// x·(w·χ)(x)τ(x) on each basis vector, for every x in `xs`.
pub fn build_i_action(e: &ExtensionDatum, chi: &Character, ledger: &Ledger, xs: &[usize]) -> Vec<IAction> {
    let chars: Vec<Character> = ledger
        .cosets
        .iter()
        .map(|c| label_character(e, ledger.convention, c[0], chi))
        .collect();
    xs.iter()
        .map(|&x| {
            let t = RootOfUnity::sign(e.tau[x] >= 0);
            let diagonal = chars
                .iter()
                .flat_map(|c| std::iter::repeat_n(c.value(x).mul(t), ledger.dim_m0))
                .collect();
            IAction { x, diagonal }
        })
        .collect()
}

/// A monomial matrix: e_j ↦ scalars[j]·e_{perm[j]}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Monomial {
    pub perm: Vec<usize>,
    pub scalars: Vec<RootOfUnity>,
}

impl Monomial {
    pub fn identity(n: usize) -> Self {
        Monomial {
            perm: (0..n).collect(),
            scalars: vec![RootOfUnity::ONE; n],
        }
    }

    /// self ∘ other.
    pub fn compose(&self, other: &Monomial) -> Monomial {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut scalars = vec![RootOfUnity::ONE; n];
        for j in 0..n {
            let k = other.perm[j];
            perm[j] = self.perm[k];
            scalars[j] = other.scalars[j].mul(self.scalars[k]);
        }
        Monomial { perm, scalars }
    }

    pub fn is_permutation(&self) -> bool {
        self.scalars.iter().all(|s| s.is_one())
    }

    pub fn to_matrix(&self) -> Result<CycMatrix> {
        let n = self.perm.len();
        let mut m = CycMatrix::zeros(n, n);
        for j in 0..n {
            m.set(self.perm[j], j, self.scalars[j].to_cyc()?);
        }
        Ok(m)
    }
}

/// g_w = r̃(b_w), with b_w found by BFS over W in the letters σ_α.
pub fn coset_lift_words(e: &ExtensionDatum) -> Vec<Vec<(usize, i8)>> {
    let g = &e.group;
    let mut words: Vec<Option<Vec<(usize, i8)>>> = vec![None; g.order()];
    words[g.identity()] = Some(vec![]);
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(v) = queue.pop_front() {
        for a in 0..e.hyperplane_count() {
            let x = g.mul(v, e.p_sigma(a));
            if words[x].is_none() {
                let mut w = words[v].clone().expect("visited");
                w.push((a, 1));
                words[x] = Some(w);
                queue.push_back(x);
            }
        }
    }
    words.into_iter().map(|w| w.expect("reflections generate W")).collect()
}

pub struct R1Module {
    /// W element realizing each basis slot.
    pub elements: Vec<usize>,
    slot_of: Vec<usize>,
    lifts: Vec<FiberElement>,
    chi: Character,
}

impl R1Module {
    pub fn new(e: &ExtensionDatum, chi: &Character, ledger: &Ledger) -> Self {
        let g = &e.group;
        let elements: Vec<usize> = ledger
            .cosets
            .iter()
            .map(|c| match ledger.convention {
                Convention::Standard => c[0],
                Convention::FlipInertia => g.inv(c[0]),
            })
            .collect();
        let mut slot_of = vec![0; g.order()];
        for (i, &w) in elements.iter().enumerate() {
            slot_of[w] = i;
        }
        let lifts = coset_lift_words(e).iter().map(|b| e.lift_word(b)).collect();
        R1Module {
            elements,
            slot_of,
            lifts,
            chi: chi.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn rep(&self, e: &ExtensionDatum, g: &FiberElement) -> Result<Monomial> {
        e.fiber_check(g)?;
        let n = self.dim();
        let qg = e.q[g.wt];
        let mut perm = vec![0; n];
        let mut scalars = vec![RootOfUnity::ONE; n];
        for (j, &w) in self.elements.iter().enumerate() {
            let w2 = e.group.mul(qg, w);
            let h = e.fiber_mul(&e.fiber_inv(&self.lifts[w2]), &e.fiber_mul(g, &self.lifts[w])?)?;
            let c = e.eval_chi_hat(&self.chi, &h)?;
            let t = e.eval_tau_hat(&h)?;
            perm[j] = self.slot_of[w2];
            scalars[j] = c.mul(RootOfUnity::sign(t >= 0));
        }
        Ok(Monomial { perm, scalars })
    }
}

pub struct R2Module {
    pub hecke: HeckeAlgebra,
    chi: Character,
    inverses: Vec<CycMatrix>,
}

impl R2Module {
    pub fn new(hecke: HeckeAlgebra, chi: &Character) -> Result<Self> {
        let inverses = hecke
            .generators
            .iter()
            .map(|g| g.matrix.inverse())
            .collect::<Result<_>>()?;
        Ok(R2Module {
            hecke,
            chi: chi.clone(),
            inverses,
        })
    }

    pub fn dim(&self) -> usize {
        self.hecke.dim
    }

    fn letter(&self, a: usize, sign: i8) -> Result<&CycMatrix> {
        let k = self
            .hecke
            .generators
            .iter()
            .position(|g| g.hyperplane == a)
            .ok_or_else(|| Error::domain(format!("no Hecke generator for α = {a}")))?;
        Ok(if sign > 0 {
            &self.hecke.generators[k].matrix
        } else {
            &self.inverses[k]
        })
    }

    pub fn rep(&self, e: &ExtensionDatum, g: &FiberElement) -> Result<CycMatrix> {
        let x = e.inertia_part(g)?;
        let s = self.chi.value(x).mul(RootOfUnity::sign(e.tau[x] >= 0));
        let mut m = CycMatrix::scalar(self.dim(), &s.to_cyc()?);
        for &(a, sign) in &g.word {
            m = m.mul(self.letter(a, sign)?)?;
        }
        Ok(m)
    }
}

pub enum Module {
    R1(R1Module),
    R2(R2Module),
}

impl Module {
    pub fn dim(&self) -> usize {
        match self {
            Module::R1(m) => m.dim(),
            Module::R2(m) => m.dim(),
        }
    }

    pub fn rep_matrix(&self, e: &ExtensionDatum, g: &FiberElement) -> Result<CycMatrix> {
        match self {
            Module::R1(m) => m.rep(e, g)?.to_matrix(),
            Module::R2(m) => m.rep(e, g),
        }
    }
}

/// Picks the constructive regime, or explains why none applies.
pub fn choose_regime(e: &ExtensionDatum, inv: &ChiInvariants) -> std::result::Result<Regime, String> {
    if inv.w_chi_zero.len() == 1 {
        if inv.rho_trivial {
            return Ok(Regime::R1);
        }
        return Err("W_χ⁰ is trivial but ρ is not; no explicit model for a nontrivial ρ".into());
    }
    let invariant = inv.w_chi.len() == e.group.order();
    let unramified = inv.hyperplanes.iter().all(|h| h.e_alpha == 1);
    if invariant && unramified {
        return Ok(Regime::R2);
    }
    Err(format!(
        "W_χ⁰ of order {} is nontrivial and {}",
        inv.w_chi_zero.len(),
        if invariant { "some e_α > 1" } else { "χ is not W-invariant" }
    ))
}

fn as_check(name: &'static str, failure: Option<String>) -> Check {
    Check {
        name,
        status: failure.map_or(Status::Pass, Status::Fail),
    }
}

/// Elements of I used in exhaustive checks: all of I when |I| ≤ 12,
/// otherwise its canonical generators.
pub fn inertia_sample(e: &ExtensionDatum) -> Vec<usize> {
    if e.kernel.len() <= 12 {
        e.kernel.clone()
    } else {
        canonical_i_generators(e)
    }
}

enum Rep {
    Mono(Monomial),
    Dense(CycMatrix),
}

impl Rep {
    fn mul(&self, other: &Rep) -> Result<Rep> {
        Ok(match (self, other) {
            (Rep::Mono(a), Rep::Mono(b)) => Rep::Mono(a.compose(b)),
            _ => Rep::Dense(self.dense()?.mul(&other.dense()?)?),
        })
    }

    fn dense(&self) -> Result<CycMatrix> {
        match self {
            Rep::Mono(m) => m.to_matrix(),
            Rep::Dense(m) => Ok(m.clone()),
        }
    }

    fn same(&self, other: &Rep) -> Result<bool> {
        Ok(match (self, other) {
            (Rep::Mono(a), Rep::Mono(b)) => a == b,
            _ => self.dense()? == other.dense()?,
        })
    }
}

fn rep_of(module: &Module, e: &ExtensionDatum, g: &FiberElement) -> Result<Rep> {
    Ok(match module {
        Module::R1(m) => Rep::Mono(m.rep(e, g)?),
        Module::R2(m) => Rep::Dense(m.rep(e, g)?),
    })
}

/// Consistency checks of a constructed module against the ledger and the
/// defining relations.
pub fn module_checks(
    e: &ExtensionDatum,
    chi: &Character,
    ledger: &Ledger,
    module: &Module,
    exec: Exec,
) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    checks.push(as_check(
        "module_dimension",
        (module.dim() != ledger.dim_mchi).then(|| format!("{} ≠ {}", module.dim(), ledger.dim_mchi)),
    ));

    let xs = inertia_sample(e);
    let actions = build_i_action(e, chi, ledger, &xs);
    let bad = exec.map(&actions, |a| -> Result<bool> {
        let g = e.inertia(a.x);
        Ok(match rep_of(module, e, &g)? {
            Rep::Mono(m) => m.perm.iter().enumerate().all(|(i, &p)| p == i) && m.scalars == a.diagonal,
            Rep::Dense(m) => m == a.to_matrix()?,
        })
    });
    let mut fail = None;
    for (a, ok) in actions.iter().zip(bad) {
        if !ok? {
            fail = Some(format!("x = {}", a.x));
            break;
        }
    }
    checks.push(as_check("i_action_matches_ledger", fail));

    let letters: Vec<FiberElement> = (0..e.hyperplane_count()).map(|a| e.lift_word(&[(a, 1)])).collect();
    let pairs: Vec<(usize, usize)> = (0..letters.len())
        .flat_map(|a| xs.iter().map(move |&x| (a, x)))
        .collect();
    let conj = exec.map(&pairs, |&(a, x)| -> Result<bool> {
        let s = &letters[a];
        let lhs = rep_of(module, e, s)?.mul(&rep_of(module, e, &e.inertia(x))?)?;
        let t = &e.wtilde;
        let y = t.mul(t.mul(s.wt, x), t.inv(s.wt));
        let rhs = rep_of(module, e, &e.inertia(y))?.mul(&rep_of(module, e, s)?)?;
        lhs.same(&rhs)
    });
    let mut fail = None;
    for (p, ok) in pairs.iter().zip(conj) {
        if !ok? {
            fail = Some(format!("α = {}, x = {}", p.0, p.1));
            break;
        }
    }
    checks.push(as_check("conjugation_identity", fail));

    let mut gens = Vec::with_capacity(letters.len());
    let mut inverses = Vec::with_capacity(letters.len());
    for s in &letters {
        gens.push(rep_of(module, e, s)?);
        inverses.push(rep_of(module, e, &e.fiber_inv(s))?);
    }
    let word_rep = |w: &[(usize, i8)]| -> Result<Rep> {
        let mut acc = match module {
            Module::R1(m) => Rep::Mono(Monomial::identity(m.dim())),
            Module::R2(m) => Rep::Dense(CycMatrix::identity(m.dim())),
        };
        for &(a, s) in w {
            acc = acc.mul(if s > 0 { &gens[a] } else { &inverses[a] })?;
        }
        Ok(acc)
    };
    let mut fail = None;
    for (k, [lhs, rhs]) in e.braid_relations.iter().enumerate() {
        if !word_rep(lhs)?.same(&word_rep(rhs)?)? {
            fail = Some(format!("relation {k}"));
            break;
        }
        let round = [lhs.clone(), invert_word(rhs)].concat();
        if !rep_of(module, e, &e.lift_word(&round))?.same(&word_rep(&[])?)? {
            fail = Some(format!("relation {k} evaluated as one word"));
            break;
        }
    }
    checks.push(Check {
        name: "braid_relations_hold",
        status: if e.braid_relations.is_empty() {
            Status::Skipped("no braid relations supplied".into())
        } else {
            fail.map_or(Status::Pass, Status::Fail)
        },
    });

    checks.push(match module {
        Module::R1(_) => {
            let fail = gens.iter().position(|g| !matches!(g, Rep::Mono(m) if m.is_permutation()));
            as_check("generators_are_permutations", fail.map(|a| format!("α = {a}")))
        }
        Module::R2(_) => Check {
            name: "generators_are_permutations",
            status: Status::Skipped("R2 generators are Hecke operators".into()),
        },
    });
    Ok(checks)
}
