use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::table::{CayleyTable, TableFile};
use super::BraidWord;
use crate::error::{Error, Result};
use crate::reflgrp::{hyperplanes, Arrangement, FiniteGroup, GroupDatum, ReflectionGroup};

pub const SCHEMA_VERSION: u32 = 1;

/// The group entry of a datum file: inline, or a path relative to the
/// datum file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSource {
    Inline(GroupDatum),
    File(String),
}

/// Extension datum as stored on disk. Hyperplane keys are the stable
/// indices of the enumerated arrangement; element keys are W̃ indices.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumFile {
    pub schema_version: u32,
    pub name: String,
    pub group: GroupSource,
    pub wtilde: TableFile,
    pub q: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<Vec<usize>>,
    pub splitting: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wtilde_alpha: Option<BTreeMap<String, Vec<usize>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tau: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sgn: BTreeMap<String, i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub braid_relations: Vec<[BraidWord; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convention: Option<String>,
}

/// Which inertia character labels the block of a coset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// Left cosets wW_χ carry w·χ.
    #[default]
    Standard,
    /// Right cosets W_χw carry w^{-1}·χ.
    FlipInertia,
}

impl Convention {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Convention::Standard),
            "flip-inertia" => Ok(Convention::FlipInertia),
            other => Err(Error::Structural(format!("unknown convention `{other}`"))),
        }
    }
}

/// The extension 1 → I → W̃ → W → 1 with splitting values, local subgroups
/// and the sign character τ. Built from a [`DatumFile`] after structural
/// checks; the algebraic conditions are checked by [`super::validate`].
#[derive(Debug, Clone)]
pub struct ExtensionDatum {
    pub name: String,
    pub group: ReflectionGroup,
    pub arrangement: Arrangement,
    pub wtilde: CayleyTable,
    /// q(w̃) as a W element index.
    pub q: Vec<usize>,
    /// I = ker q, sorted.
    pub kernel: Vec<usize>,
    pub supplied_kernel: Option<Vec<usize>>,
    /// r_α per hyperplane; `None` where the datum gives no value.
    pub splitting: Vec<Option<usize>>,
    /// W̃_α per hyperplane, sorted.
    pub wtilde_alpha: Vec<Vec<usize>>,
    /// True where W̃_α is the default q^{-1}(W_α).
    pub wtilde_alpha_default: Vec<bool>,
    /// τ on W̃ elements of I (other positions unused), as ±1.
    pub tau: Vec<i8>,
    pub tau_keys_outside_kernel: Vec<usize>,
    pub sgn: Vec<i8>,
    pub braid_relations: Vec<[BraidWord; 2]>,
    pub convention: Convention,
    in_kernel: Vec<bool>,
}

fn parse_index(key: &str, what: &str, bound: usize) -> Result<usize> {
    let i: usize = key
        .parse()
        .map_err(|_| Error::Structural(format!("{what} key `{key}` is not an index")))?;
    if i >= bound {
        return Err(Error::Structural(format!("{what} key {i} out of range (< {bound})")));
    }
    Ok(i)
}

fn parse_sign(v: i64, what: &str) -> Result<i8> {
    match v {
        1 => Ok(1),
        -1 => Ok(-1),
        _ => Err(Error::Structural(format!("{what} value {v} is not ±1"))),
    }
}

impl DatumFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let f: DatumFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if f.schema_version != SCHEMA_VERSION {
            return Err(Error::Structural(format!(
                "unsupported schema_version {}",
                f.schema_version
            )));
        }
        Ok(f)
    }

    /// Inline group data, loading a file reference relative to `base`.
    pub fn resolve_group(&self, base: Option<&Path>) -> Result<GroupDatum> {
        match &self.group {
            GroupSource::Inline(g) => Ok(g.clone()),
            GroupSource::File(p) => {
                let path = base.map_or_else(|| Path::new(p).to_path_buf(), |b| b.join(p));
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))
            }
        }
    }
}

impl ExtensionDatum {
    pub fn from_file(f: &DatumFile, base: Option<&Path>, cap: usize) -> Result<Self> {
        let group = f.resolve_group(base)?.build(cap).map_err(|e| match e {
            Error::Domain(m) => Error::Structural(m),
            other => other,
        })?;
        let arrangement = hyperplanes(&group)?;
        let wtilde = CayleyTable::new(&f.wtilde)?;
        let nt = wtilde.order();
        let nw = group.order();
        if f.q.len() != nt {
            return Err(Error::Structural(format!(
                "q has {} entries, W̃ has {nt} elements",
                f.q.len()
            )));
        }
        if let Some(&x) = f.q.iter().find(|&&x| x >= nw) {
            return Err(Error::Structural(format!("q value {x} is not an element of W")));
        }
        let na = arrangement.len();
        let in_kernel: Vec<bool> = f.q.iter().map(|&w| w == 0).collect();
        let kernel: Vec<usize> = (0..nt).filter(|&x| in_kernel[x]).collect();

        let mut splitting = vec![None; na];
        for (k, &v) in &f.splitting {
            let a = parse_index(k, "splitting", na)?;
            if v >= nt {
                return Err(Error::Structural(format!("splitting value {v} out of range")));
            }
            splitting[a] = Some(v);
        }

        let mut wtilde_alpha: Vec<Vec<usize>> = (0..na)
            .map(|a| {
                let st = &arrangement.get(a).stabilizer;
                (0..nt).filter(|&x| st.binary_search(&f.q[x]).is_ok()).collect()
            })
            .collect();
        let mut wtilde_alpha_default = vec![true; na];
        if let Some(map) = &f.wtilde_alpha {
            for (k, v) in map {
                let a = parse_index(k, "wtilde_alpha", na)?;
                if v.iter().any(|&x| x >= nt) {
                    return Err(Error::Structural(format!("wtilde_alpha[{a}] out of range")));
                }
                let mut s = v.clone();
                s.sort_unstable();
                s.dedup();
                wtilde_alpha[a] = s;
                wtilde_alpha_default[a] = false;
            }
        }

        let mut tau = vec![1i8; nt];
        let mut tau_keys_outside_kernel = Vec::new();
        for (k, &v) in &f.tau {
            let x = parse_index(k, "tau", nt)?;
            // values other than ±1 are a validation failure, recorded as 0
            let s = parse_sign(v, "tau").unwrap_or(0);
            if !in_kernel[x] {
                tau_keys_outside_kernel.push(x);
            }
            tau[x] = s;
        }

        let mut sgn = vec![1i8; na];
        for (k, &v) in &f.sgn {
            sgn[parse_index(k, "sgn", na)?] = parse_sign(v, "sgn")?;
        }

        for rel in &f.braid_relations {
            for w in rel {
                if let Some(&(a, e)) = w.iter().find(|(a, e)| *a >= na || e.abs() != 1) {
                    return Err(Error::Structural(format!(
                        "braid relation letter ({a}, {e}) is invalid"
                    )));
                }
            }
        }

        let convention = match &f.convention {
            None => Convention::Standard,
            Some(s) => Convention::parse(s)?,
        };
        let supplied_kernel = f.kernel.as_ref().map(|k| {
            let mut k = k.clone();
            k.sort_unstable();
            k
        });

        Ok(ExtensionDatum {
            name: f.name.clone(),
            group,
            arrangement,
            wtilde,
            q: f.q.clone(),
            kernel,
            supplied_kernel,
            splitting,
            wtilde_alpha,
            wtilde_alpha_default,
            tau,
            tau_keys_outside_kernel,
            sgn,
            braid_relations: f.braid_relations.clone(),
            convention,
            in_kernel,
        })
    }

    pub fn in_kernel(&self, x: usize) -> bool {
        self.in_kernel[x]
    }

    /// r_α; only valid once the splitting has been checked complete.
    pub fn r(&self, alpha: usize) -> usize {
        self.splitting[alpha].expect("splitting checked complete")
    }

    /// s_α^{-1} in W, the image p(σ_α).
    pub fn p_sigma(&self, alpha: usize) -> usize {
        self.group.inv(self.arrangement.get(alpha).generator)
    }

    /// Least W̃ element over w: the canonical lift used for the character
    /// action.
    pub fn lift(&self, w: usize) -> usize {
        self.q.iter().position(|&x| x == w).expect("q surjective")
    }

    pub fn tau_of(&self, x: usize) -> i8 {
        self.tau[x]
    }

    pub fn hyperplane_count(&self) -> usize {
        self.arrangement.len()
    }
}
