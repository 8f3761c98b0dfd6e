use std::collections::BTreeMap;

use serde::Serialize;

use super::ExtensionDatum;
use crate::cyclo::RootOfUnity;
use crate::error::{Error, Result};
use crate::reflgrp::FiniteGroup;

/// A one-dimensional character of I, stored by its value on every element of
/// I (keyed by W̃ index).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Character {
    values: BTreeMap<usize, RootOfUnity>,
}

/// Generators of I chosen greedily: the least element not in the span of
/// those already chosen.
pub fn canonical_i_generators(e: &ExtensionDatum) -> Vec<usize> {
    let g = &e.wtilde;
    let mut gens = Vec::new();
    let mut span = vec![false; g.order()];
    span[g.identity()] = true;
    for &x in &e.kernel {
        if span[x] {
            continue;
        }
        gens.push(x);
        let closure = crate::reflgrp::subgroup_generated(g, &gens);
        for y in closure {
            span[y] = true;
        }
    }
    gens
}

impl Character {
    pub fn trivial(e: &ExtensionDatum) -> Self {
        Character {
            values: e.kernel.iter().map(|&x| (x, RootOfUnity::ONE)).collect(),
        }
    }

    /// Extends prescribed values multiplicatively over I. Fails unless the
    /// prescribed elements generate I and the extension is consistent.
    pub fn extend(e: &ExtensionDatum, given: &[(usize, RootOfUnity)]) -> Result<Self> {
        let g = &e.wtilde;
        for &(x, _) in given {
            if !e.in_kernel(x) {
                return Err(Error::Parameter(format!("element {x} is not in I")));
            }
        }
        let mut values: BTreeMap<usize, RootOfUnity> = BTreeMap::new();
        values.insert(g.identity(), RootOfUnity::ONE);
        let mut queue = vec![g.identity()];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            let vx = values[&x];
            for &(s, vs) in given {
                let y = g.mul(x, s);
                let vy = vx.mul(vs);
                match values.get(&y) {
                    Some(&old) if old != vy => {
                        return Err(Error::Parameter(format!(
                            "values are not multiplicative: element {y} gets {old} and {vy}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        values.insert(y, vy);
                        queue.push(y);
                    }
                }
            }
            i += 1;
        }
        if values.len() != e.kernel.len() {
            return Err(Error::Parameter(format!(
                "prescribed elements generate {} of the {} elements of I",
                values.len(),
                e.kernel.len()
            )));
        }
        Ok(Character { values })
    }

    /// Accepts `trivial`, `k:a1,a2,…` (χ(g_i) = ζ_k^{a_i} on
    /// [`canonical_i_generators`]), or a JSON object
    /// `{"modulus": k, "<I element>": exponent, …}`.
    pub fn parse(e: &ExtensionDatum, spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec == "trivial" {
            return Ok(Self::trivial(e));
        }
        if spec.starts_with('{') {
            let obj: BTreeMap<String, i64> = serde_json::from_str(spec)
                .map_err(|err| Error::Parameter(format!("character JSON: {err}")))?;
            let k = *obj
                .get("modulus")
                .ok_or_else(|| Error::Parameter("character JSON needs `modulus`".into()))?;
            if k <= 0 {
                return Err(Error::Parameter(format!("modulus {k} must be positive")));
            }
            let mut given = Vec::new();
            for (key, &a) in obj.iter().filter(|(key, _)| key.as_str() != "modulus") {
                let x: usize = key
                    .parse()
                    .map_err(|_| Error::Parameter(format!("character key `{key}`")))?;
                if x >= e.wtilde.order() {
                    return Err(Error::Parameter(format!("element {x} out of range")));
                }
                given.push((x, RootOfUnity::new(a, k as u64)));
            }
            return Self::extend(e, &given);
        }
        let (k, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::Parameter(format!("unrecognized character spec `{spec}`")))?;
        let k: u64 = k
            .trim()
            .parse()
            .ok()
            .filter(|&k| k > 0)
            .ok_or_else(|| Error::Parameter(format!("bad modulus in `{spec}`")))?;
        let exps: Vec<i64> = if rest.trim().is_empty() {
            vec![]
        } else {
            rest.split(',')
                .map(|a| a.trim().parse())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parameter(format!("bad exponent list in `{spec}`")))?
        };
        let gens = canonical_i_generators(e);
        if exps.len() != gens.len() {
            return Err(Error::Parameter(format!(
                "I has {} canonical generators {:?}, got {} exponents",
                gens.len(),
                gens,
                exps.len()
            )));
        }
        let given: Vec<_> = gens
            .into_iter()
            .zip(exps)
            .map(|(g, a)| (g, RootOfUnity::new(a, k)))
            .collect();
        Self::extend(e, &given)
    }

    pub fn value(&self, x: usize) -> RootOfUnity {
        *self
            .values
            .get(&x)
            .unwrap_or_else(|| panic!("character evaluated outside I at {x}"))
    }

    pub fn values(&self) -> &BTreeMap<usize, RootOfUnity> {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.values().all(|v| v.is_one())
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Character) -> Character {
        Character {
            values: self
                .values
                .iter()
                .map(|(&x, &v)| (x, v.mul(other.value(x))))
                .collect(),
        }
    }
}

/// (w·χ)(x) = χ(w̃^{-1}·x·w̃) for the least lift w̃ of w. Lifts differ by
/// elements of I, and a one-dimensional χ is invariant under conjugation
/// by those.
pub fn act_on_character(e: &ExtensionDatum, w: usize, chi: &Character) -> Character {
    let g = &e.wtilde;
    let lift = e.lift(w);
    let li = g.inv(lift);
    Character {
        values: chi
            .values
            .keys()
            .map(|&x| (x, chi.value(g.mul(g.mul(li, x), lift))))
            .collect(),
    }
}

/// τ viewed as a character of I.
pub fn tau_character(e: &ExtensionDatum) -> Character {
    Character {
        values: e
            .kernel
            .iter()
            .map(|&x| (x, RootOfUnity::sign(e.tau[x] >= 0)))
            .collect(),
    }
}
