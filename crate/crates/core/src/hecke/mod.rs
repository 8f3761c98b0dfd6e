//! Hecke algebras H_{W_χ⁰} in the supported regimes: cyclic, Coxeter with
//! quadratic relations, and direct products of those.
//!
//! The algebra is realized on a module of dimension equal to the group
//! order, and that dimension is certified by exhibiting |W_χ⁰| independent
//! images of a cyclic vector.

mod coxeter;
mod todd_coxeter;

use serde::Serialize;

pub use coxeter::{build_coxeter, find_simple_system, CoxeterHecke, ReflectionInput};
pub use todd_coxeter::coxeter_group_order;

use crate::cyclo::{CycMatrix, CycPoly};
use crate::error::{Error, Result};
use crate::extdata::{Check, Status};
use crate::par::Exec;
use crate::reflgrp::{subgroup_generated, FiniteGroup};

#[derive(Debug, Clone, Serialize)]
pub struct HeckeGenerator {
    pub hyperplane: usize,
    pub rbar: CycPoly,
    pub minpoly: CycPoly,
    #[serde(skip)]
    pub matrix: CycMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FactorKind {
    Cyclic,
    Coxeter {
        /// hyperplane labels of the simple reflections
        simple: Vec<usize>,
        coxeter_matrix: Vec<Vec<usize>>,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct HeckeFactor {
    #[serde(flatten)]
    pub kind: FactorKind,
    pub hyperplanes: Vec<usize>,
    pub dim: usize,
    pub subgroup_order: usize,
    pub certificates: Vec<Check>,
    #[serde(skip)]
    pub matrices: Vec<CycMatrix>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HeckeAlgebra {
    pub dim: usize,
    pub factors: Vec<HeckeFactor>,
    /// Generators acting on the tensor product of the factor modules,
    /// sorted by hyperplane.
    pub generators: Vec<HeckeGenerator>,
    pub certificates: Vec<Check>,
}

impl HeckeAlgebra {
    pub fn generator(&self, hyperplane: usize) -> Option<&HeckeGenerator> {
        self.generators.iter().find(|g| g.hyperplane == hyperplane)
    }

    pub fn is_certified(&self) -> bool {
        self.certificates
            .iter()
            .chain(self.factors.iter().flat_map(|f| &f.certificates))
            .all(|c| !c.status.is_fail())
    }
}

fn check(name: &'static str, failure: Option<String>) -> Check {
    Check {
        name,
        status: match failure {
            None => Status::Pass,
            Some(w) => Status::Fail(w),
        },
    }
}

/// The cyclic Hecke algebra ℂ[T]/R̄(T), acting by the companion matrix.
pub fn build_cyclic(hyperplane: usize, rbar: &CycPoly, group_order: usize) -> Result<HeckeFactor> {
    if !rbar.is_invertible_type() {
        return Err(Error::domain(format!(
            "R̄ for α = {hyperplane} needs degree ≥ 1 and a nonzero constant term"
        )));
    }
    if rbar.degree() != group_order {
        return Err(Error::Parameter(format!(
            "R̄ for α = {hyperplane} has degree {}, the cyclic group has order {group_order}",
            rbar.degree()
        )));
    }
    let t = CycMatrix::companion(rbar)?;
    let mp = t.minpoly()?;
    let certificates = vec![
        check("rbar_annihilates_generators", (!t.eval_poly(rbar)?.is_zero()).then(|| format!("α = {hyperplane}"))),
        check("generator_minpolys", (mp != *rbar).then(|| format!("minpoly {mp} ≠ R̄ {rbar}"))),
    ];
    if let Some(c) = certificates.iter().find(|c| c.status.is_fail()) {
        return Err(Error::integrity(c.name, format!("{:?}", c.status)));
    }
    Ok(HeckeFactor {
        kind: FactorKind::Cyclic,
        hyperplanes: vec![hyperplane],
        dim: rbar.degree(),
        subgroup_order: group_order,
        certificates,
        matrices: vec![t],
    })
}

pub fn coxeter_factor<G: FiniteGroup + Sync + ?Sized>(
    g: &G,
    input: &[ReflectionInput],
    exec: Exec,
) -> Result<HeckeFactor> {
    let c = build_coxeter(g, input, exec)?;
    Ok(HeckeFactor {
        kind: FactorKind::Coxeter {
            simple: c.simple.iter().map(|&i| input[i].hyperplane).collect(),
            coxeter_matrix: c.coxeter_matrix,
        },
        hyperplanes: input.iter().map(|r| r.hyperplane).collect(),
        dim: c.elements.len(),
        subgroup_order: c.elements.len(),
        certificates: c.certificates,
        matrices: c.matrices,
    })
}

/// Tensor product of the factors; each generator acts on its own leg.
pub fn build_product(factors: Vec<HeckeFactor>, rbar: impl Fn(usize) -> CycPoly, exec: Exec) -> Result<HeckeAlgebra> {
    let dims: Vec<usize> = factors.iter().map(|f| f.dim).collect();
    let dim: usize = dims.iter().product();
    let mut legs = Vec::new();
    for (fi, f) in factors.iter().enumerate() {
        let before: usize = dims[..fi].iter().product();
        let after: usize = dims[fi + 1..].iter().product();
        for (k, m) in f.matrices.iter().enumerate() {
            legs.push((fi, f.hyperplanes[k], m, before, after));
        }
    }
    let embedded: Vec<Result<(usize, usize, CycMatrix)>> = exec.map(&legs, |&(fi, a, m, before, after)| {
        let full = CycMatrix::identity(before).kronecker(m)?.kronecker(&CycMatrix::identity(after))?;
        Ok((fi, a, full))
    });
    let mut embedded: Vec<(usize, usize, CycMatrix)> = embedded.into_iter().collect::<Result<_>>()?;
    embedded.sort_by_key(|e| e.1);

    let mut commute_fail = None;
    'outer: for i in 0..embedded.len() {
        for j in i + 1..embedded.len() {
            if embedded[i].0 == embedded[j].0 {
                continue;
            }
            let (x, y) = (&embedded[i].2, &embedded[j].2);
            if x.mul(y)? != y.mul(x)? {
                commute_fail = Some(format!("α = {}, β = {}", embedded[i].1, embedded[j].1));
                break 'outer;
            }
        }
    }
    let minpolys: Vec<Result<CycPoly>> = exec.map(&embedded, |e| e.2.minpoly());
    let mut generators = Vec::with_capacity(embedded.len());
    let mut minpoly_fail = None;
    for ((_, a, m), mp) in embedded.into_iter().zip(minpolys) {
        let mp = mp?;
        let rb = rbar(a);
        if mp != rb && minpoly_fail.is_none() {
            minpoly_fail = Some(format!("α = {a}: {mp} ≠ {rb}"));
        }
        generators.push(HeckeGenerator {
            hyperplane: a,
            rbar: rb,
            minpoly: mp,
            matrix: m,
        });
    }
    let certificates = vec![
        check("factors_commute", commute_fail),
        check("generator_minpolys", minpoly_fail),
    ];
    if let Some(c) = certificates.iter().find(|c| c.status.is_fail()) {
        let Status::Fail(w) = &c.status else { unreachable!() };
        return Err(Error::integrity(c.name, w.clone()));
    }
    Ok(HeckeAlgebra {
        dim,
        factors,
        generators,
        certificates,
    })
}

/// Components of the non-commutation graph on the reflections, each sorted,
/// in order of least member.
pub fn noncommuting_components<G: FiniteGroup + ?Sized>(g: &G, refl: &[usize]) -> Vec<Vec<usize>> {
    let n = refl.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut k = 0;
        while k < members.len() {
            let a = members[k];
            for b in 0..n {
                if comp[b] == usize::MAX && g.mul(refl[a], refl[b]) != g.mul(refl[b], refl[a]) {
                    comp[b] = id;
                    members.push(b);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// H for the reflection subgroup generated by `input`, split into
/// commuting components. A component with one reflection is cyclic; one made
/// of involutions is Coxeter; anything else is outside the supported regimes.
pub fn build_hecke<G: FiniteGroup + Sync + ?Sized>(
    g: &G,
    input: &[ReflectionInput],
    exec: Exec,
) -> Result<HeckeAlgebra> {
    let refl: Vec<usize> = input.iter().map(|r| r.reflection).collect();
    let whole = subgroup_generated(g, &refl).len();
    let comps = noncommuting_components(g, &refl);
    let mut factors = Vec::with_capacity(comps.len());
    for c in &comps {
        let part: Vec<ReflectionInput> = c.iter().map(|&i| input[i].clone()).collect();
        if part.len() == 1 {
            let r = &part[0];
            factors.push(build_cyclic(r.hyperplane, &r.rbar, g.element_order(r.reflection))?);
        } else if part.iter().all(|r| g.element_order(r.reflection) == 2) {
            factors.push(coxeter_factor(g, &part, exec)?);
        } else {
            let labels: Vec<usize> = part.iter().map(|r| r.hyperplane).collect();
            return Err(Error::regime(
                "hecke",
                format!("component {labels:?} mixes non-commuting reflections of order > 2"),
            ));
        }
    }
    let prod: usize = factors.iter().map(|f| f.subgroup_order).product();
    if prod != whole {
        return Err(Error::regime(
            "hecke",
            format!("components have orders with product {prod}, the group has order {whole}"),
        ));
    }
    let lookup: Vec<(usize, CycPoly)> = input.iter().map(|r| (r.hyperplane, r.rbar.clone())).collect();
    build_product(
        factors,
        |a| lookup.iter().find(|(h, _)| *h == a).map(|(_, p)| p.clone()).expect("known hyperplane"),
        exec,
    )
}
