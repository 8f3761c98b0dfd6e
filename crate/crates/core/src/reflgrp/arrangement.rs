use std::collections::HashMap;

use num_rational::BigRational;
use serde::Serialize;

use super::{FiniteGroup, ReflectionGroup};
use crate::cyclo::{CycMatrix, CycNumber};
use crate::error::{Error, Result};

/// One reflection hyperplane C_α with its pointwise stabilizer.
#[derive(Debug, Clone, Serialize)]
pub struct Hyperplane {
    /// Covector cutting out the hyperplane, first nonzero entry 1.
    pub normal: Vec<CycNumber>,
    /// W_α as sorted element indices, identity included.
    pub stabilizer: Vec<usize>,
    /// n_α = |W_α|.
    pub order: usize,
    /// s_α: the element of W_α acting on the normal line by ζ_{n_α}.
    pub generator: usize,
    pub orbit: usize,
}

#[derive(Debug, Clone)]
pub struct Arrangement {
    pub hyperplanes: Vec<Hyperplane>,
    /// Hyperplane of each reflection.
    reflection_of: HashMap<usize, usize>,
    /// `action[w][α]` = index of w·C_α.
    action: Vec<Vec<usize>>,
    orbits: Vec<Vec<usize>>,
}

/// The covector spanning the row space of m − 1, if m is a reflection.
fn reflection_normal(m: &CycMatrix) -> Result<Option<Vec<CycNumber>>> {
    let n = m.rows();
    let d = m.sub(&CycMatrix::identity(n))?;
    let mut rows = d.row_space()?;
    if rows.len() != 1 {
        return Ok(None);
    }
    Ok(rows.pop())
}

fn normal_key(v: &[CycNumber], order: u32) -> Result<Vec<BigRational>> {
    let mut key = Vec::new();
    for c in v {
        key.extend(c.key_at(order)?);
    }
    Ok(key)
}

/// Eigenvalue of a reflection on its normal line: the one eigenvalue ≠ 1,
/// equal to trace − (rank − 1).
pub fn reflection_eigenvalue(g: &ReflectionGroup, a: usize) -> CycNumber {
    g.trace(a) - CycNumber::from_integer(g.rank() as i64 - 1)
}

/// Reflection hyperplanes of `g`, in order of first appearance when the
/// elements are scanned by index.
pub fn hyperplanes(g: &ReflectionGroup) -> Result<Arrangement> {
    let order = g.cyclotomic_order();
    let mut by_key: HashMap<Vec<BigRational>, usize> = HashMap::new();
    let mut normals: Vec<Vec<CycNumber>> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    let mut reflection_of = HashMap::new();
    for a in 1..g.order() {
        let Some(v) = reflection_normal(g.matrix(a))? else {
            continue;
        };
        let key = normal_key(&v, order)?;
        let h = *by_key.entry(key).or_insert_with(|| {
            normals.push(v);
            members.push(vec![]);
            normals.len() - 1
        });
        members[h].push(a);
        reflection_of.insert(a, h);
    }

    let mut hyper = Vec::with_capacity(normals.len());
    for (h, (normal, refl)) in normals.into_iter().zip(members).enumerate() {
        let n = refl.len() + 1;
        let target = CycNumber::zeta(n as u32, 1)?;
        let generator = *refl
            .iter()
            .find(|&&a| reflection_eigenvalue(g, a) == target)
            .ok_or_else(|| {
                Error::integrity(
                    "stabilizer_cyclic",
                    format!("hyperplane {h}: no element of W_α has eigenvalue ζ_{n}"),
                )
            })?;
        let mut stabilizer = vec![0];
        stabilizer.extend(refl);
        let mut powers: Vec<usize> = (0..n as i64).map(|k| g.pow(generator, k)).collect();
        powers.sort_unstable();
        if powers != stabilizer {
            return Err(Error::integrity(
                "stabilizer_cyclic",
                format!("hyperplane {h}: W_α is not generated by s_α"),
            ));
        }
        hyper.push(Hyperplane {
            normal,
            stabilizer,
            order: n,
            generator,
            orbit: 0,
        });
    }

    // permutation of hyperplanes by each generator, via conjugating s_α
    let gens = g.generator_indices();
    let mut gen_perm = Vec::with_capacity(gens.len());
    for &s in gens {
        let mut p = Vec::with_capacity(hyper.len());
        for (h, hp) in hyper.iter().enumerate() {
            let c = g.conjugate(s, hp.generator);
            let t = *reflection_of.get(&c).ok_or_else(|| {
                Error::integrity(
                    "hyperplanes_permuted",
                    format!("generator {s} sends hyperplane {h} outside the arrangement"),
                )
            })?;
            p.push(t);
        }
        gen_perm.push(p);
    }
    let mut action: Vec<Vec<usize>> = vec![(0..hyper.len()).collect()];
    for w in 1..g.order() {
        let word = g.word(w);
        let last = *word.last().unwrap();
        let parent = g.mul(w, g.inv(gens[last]));
        // w = parent·s, so w·α = parent·(s·α)
        let p: Vec<usize> = (0..hyper.len())
            .map(|h| action[parent][gen_perm[last][h]])
            .collect();
        action.push(p);
    }

    let mut orbit_of = vec![usize::MAX; hyper.len()];
    let mut orbits = Vec::new();
    for h in 0..hyper.len() {
        if orbit_of[h] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orb = vec![h];
        orbit_of[h] = id;
        let mut i = 0;
        while i < orb.len() {
            let x = orb[i];
            for p in &gen_perm {
                let y = p[x];
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = id;
                    orb.push(y);
                }
            }
            i += 1;
        }
        orb.sort_unstable();
        orbits.push(orb);
    }
    for (h, hp) in hyper.iter_mut().enumerate() {
        hp.orbit = orbit_of[h];
    }
    Ok(Arrangement {
        hyperplanes: hyper,
        reflection_of,
        action,
        orbits,
    })
}

impl Arrangement {
    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn get(&self, alpha: usize) -> &Hyperplane {
        &self.hyperplanes[alpha]
    }

    /// Index of w·C_α.
    pub fn act(&self, w: usize, alpha: usize) -> usize {
        self.action[w][alpha]
    }

    /// Hyperplane fixed by a reflection, or `None` for non-reflections.
    pub fn hyperplane_of(&self, reflection: usize) -> Option<usize> {
        self.reflection_of.get(&reflection).copied()
    }

    pub fn reflection_count(&self) -> usize {
        self.reflection_of.len()
    }

    /// W-orbits of hyperplanes, each sorted, numbered by least member.
    pub fn orbits(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// Orbits of the subgroup `h` (given by element indices) on hyperplanes.
    pub fn orbits_under(&self, h: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for a in 0..self.len() {
            if seen[a] {
                continue;
            }
            let mut orb: Vec<usize> = h.iter().map(|&w| self.act(w, a)).collect();
            orb.sort_unstable();
            orb.dedup();
            for &b in &orb {
                seen[b] = true;
            }
            out.push(orb);
        }
        out
    }
}
