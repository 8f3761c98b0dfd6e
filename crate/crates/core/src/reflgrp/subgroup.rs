use serde::Serialize;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// Closure of `elems` under multiplication, sorted. Always contains the
/// identity.
pub fn subgroup_generated<G: FiniteGroup + ?Sized>(g: &G, elems: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; g.order()];
    let id = g.identity();
    inside[id] = true;
    let mut list = vec![id];
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for &s in elems {
            let y = g.mul(x, s);
            if !inside[y] {
                inside[y] = true;
                list.push(y);
            }
        }
        i += 1;
    }
    list.sort_unstable();
    list
}

/// True iff `h` is closed under multiplication (hence a subgroup, being
/// finite and nonempty).
pub fn is_subgroup<G: FiniteGroup + ?Sized>(g: &G, h: &[usize]) -> bool {
    let mut inside = vec![false; g.order()];
    for &x in h {
        inside[x] = true;
    }
    !h.is_empty() && h.iter().all(|&a| h.iter().all(|&b| inside[g.mul(a, b)]))
}

/// Left cosets wH, each represented by its least element index.
#[derive(Debug, Clone, Serialize)]
pub struct CosetTable {
    pub reps: Vec<usize>,
    /// Coset number of every group element.
    pub coset_of: Vec<usize>,
    /// For each generator s (in `g.generators()` order), the permutation
    /// wH ↦ s·wH.
    pub gen_perms: Vec<Vec<usize>>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

pub fn left_cosets<G: FiniteGroup + ?Sized>(g: &G, h: &[usize]) -> Result<CosetTable> {
    if !is_subgroup(g, h) {
        return Err(Error::domain("coset decomposition needs a subgroup"));
    }
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for w in 0..n {
        if coset_of[w] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(w);
        for &x in h {
            coset_of[g.mul(w, x)] = c;
        }
    }
    let gen_perms = g
        .generators()
        .iter()
        .map(|&s| reps.iter().map(|&w| coset_of[g.mul(s, w)]).collect())
        .collect();
    Ok(CosetTable {
        reps,
        coset_of,
        gen_perms,
    })
}

/// Conjugacy classes, each sorted, ordered by least member.
pub fn conjugacy_classes<G: FiniteGroup + ?Sized>(g: &G) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let mut class: Vec<usize> = (0..n).map(|w| g.conjugate(w, x)).collect();
        class.sort_unstable();
        class.dedup();
        for &y in &class {
            seen[y] = true;
        }
        out.push(class);
    }
    out
}
