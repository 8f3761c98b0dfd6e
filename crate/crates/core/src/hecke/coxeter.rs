//! Hecke algebras of finite Coxeter groups with quadratic relations
//! R̄_s(T_s) = 0, realized on the left regular module with basis T_w.

use std::collections::VecDeque;

use crate::cyclo::{CycMatrix, CycNumber, CycPoly};
use crate::error::{Error, Result};
use crate::extdata::{Check, Status};
use crate::par::Exec;
use crate::reflgrp::{subgroup_generated, FiniteGroup};

use super::coxeter_group_order;

/// One reflection of the component: its hyperplane label, the reflection as
/// a group element, its root line and its R̄.
#[derive(Debug, Clone)]
pub struct ReflectionInput {
    pub hyperplane: usize,
    pub reflection: usize,
    pub normal: Vec<CycNumber>,
    pub rbar: CycPoly,
}

#[derive(Debug, Clone)]
pub struct CoxeterHecke {
    /// Positions (into the input list) of the simple reflections.
    pub simple: Vec<usize>,
    pub coxeter_matrix: Vec<Vec<usize>>,
    /// Elements of the subgroup in basis order (BFS by length).
    pub elements: Vec<usize>,
    pub lengths: Vec<usize>,
    /// One matrix per input reflection.
    pub matrices: Vec<CycMatrix>,
    pub certificates: Vec<Check>,
}

fn coset_cap(order: usize) -> usize {
    64 + 32 * order
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// First size-r subset (lexicographic) of the reflections that generates the
/// subgroup and whose Coxeter presentation closes at its order.
pub fn find_simple_system<G: FiniteGroup + ?Sized>(
    g: &G,
    refl: &[usize],
    rank: usize,
    order: usize,
) -> Result<(Vec<usize>, Vec<Vec<usize>>)> {
    for subset in combinations(refl.len(), rank) {
        let elems: Vec<usize> = subset.iter().map(|&i| refl[i]).collect();
        if subgroup_generated(g, &elems).len() != order {
            continue;
        }
        let m: Vec<Vec<usize>> = elems
            .iter()
            .map(|&s| elems.iter().map(|&t| g.element_order(g.mul(s, t))).collect())
            .collect();
        match coxeter_group_order(&m, coset_cap(order)) {
            Ok(n) if n == order => return Ok((subset, m)),
            Ok(_) | Err(Error::Capacity { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::regime(
        "coxeter",
        format!("no {rank} reflections give a Coxeter presentation of order {order}"),
    ))
}

fn quadratic_coeffs(p: &CycPoly) -> (CycNumber, CycNumber) {
    (p.coeffs()[1].clone(), p.coeffs()[0].clone())
}

/// L_s on the basis e_w: e_{sw} if sw is longer, −c₁e_w − c₀e_{sw} otherwise.
fn left_matrix<G: FiniteGroup + ?Sized>(
    g: &G,
    s: usize,
    elements: &[usize],
    lengths: &[usize],
    pos: &dyn Fn(usize) -> usize,
    rbar: &CycPoly,
) -> CycMatrix {
    let n = elements.len();
    let (c1, c0) = quadratic_coeffs(rbar);
    let mut m = CycMatrix::zeros(n, n);
    for (j, &w) in elements.iter().enumerate() {
        let i = pos(g.mul(s, w));
        if lengths[i] > lengths[j] {
            m.set(i, j, CycNumber::one());
        } else {
            m.set(j, j, -&c1);
            m.set(i, j, -&c0);
        }
    }
    m
}

/// L_s^{-1} = −(L_s + c₁)/c₀.
fn inverse_of_generator(l: &CycMatrix, rbar: &CycPoly) -> Result<CycMatrix> {
    let (c1, c0) = quadratic_coeffs(rbar);
    let shifted = l.add(&CycMatrix::scalar(l.rows(), &c1))?;
    shifted.scale(&(-c0.inv()?))
}

fn pass_or(ok: bool, witness: impl FnOnce() -> String) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail(witness())
    }
}

pub fn build_coxeter<G: FiniteGroup + Sync + ?Sized>(
    g: &G,
    input: &[ReflectionInput],
    exec: Exec,
) -> Result<CoxeterHecke> {
    let refl: Vec<usize> = input.iter().map(|r| r.reflection).collect();
    for r in input {
        if r.rbar.degree() != 2 {
            return Err(Error::Parameter(format!(
                "R̄ for α = {} must be quadratic, got {}",
                r.hyperplane, r.rbar
            )));
        }
        if r.rbar.constant_term().is_zero() {
            return Err(Error::domain(format!("R̄ for α = {} has c₀ = 0, so T_α is not invertible", r.hyperplane)));
        }
        if g.element_order(r.reflection) != 2 {
            return Err(Error::regime("coxeter", format!("α = {} is not an involution", r.hyperplane)));
        }
    }
    let subgroup = subgroup_generated(g, &refl);
    let order = subgroup.len();
    let rank = CycMatrix::from_rows(input.iter().map(|r| r.normal.clone()).collect())?.rank()?;
    let (simple, coxeter_matrix) = find_simple_system(g, &refl, rank, order)?;
    let sgen: Vec<usize> = simple.iter().map(|&i| refl[i]).collect();

    // R̄ has to be constant on conjugacy classes of reflections
    for (i, r) in input.iter().enumerate() {
        for &s in &sgen {
            let t = g.conjugate(s, r.reflection);
            if let Some(j) = refl.iter().position(|&x| x == t) {
                if input[j].rbar != r.rbar {
                    return Err(Error::Parameter(format!(
                        "R̄ differs on the conjugate reflections α = {} and α = {}",
                        input[i].hyperplane, input[j].hyperplane
                    )));
                }
            }
        }
    }

    // lengths and reduced words via BFS by left multiplication
    let mut slot = std::collections::HashMap::with_capacity(order);
    let mut elements = vec![g.identity()];
    let mut lengths = vec![0usize];
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    slot.insert(g.identity(), 0usize);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (k, &s) in sgen.iter().enumerate() {
            let x = g.mul(s, elements[i]);
            if slot.contains_key(&x) {
                continue;
            }
            slot.insert(x, elements.len());
            let mut w = vec![k];
            w.extend_from_slice(&words[i]);
            elements.push(x);
            lengths.push(lengths[i] + 1);
            words.push(w);
            queue.push_back(elements.len() - 1);
        }
    }
    let pos = |x: usize| slot[&x];

    let simple_mats: Vec<CycMatrix> = simple
        .iter()
        .map(|&i| left_matrix(g, refl[i], &elements, &lengths, &pos, &input[i].rbar))
        .collect();
    let simple_inv: Vec<CycMatrix> = simple
        .iter()
        .zip(&simple_mats)
        .map(|(&i, l)| inverse_of_generator(l, &input[i].rbar))
        .collect::<Result<_>>()?;
    let word_matrix = |word: &[usize], inverse: bool| -> Result<CycMatrix> {
        let mut acc = CycMatrix::identity(order);
        if inverse {
            for &k in word.iter().rev() {
                acc = acc.mul(&simple_inv[k])?;
            }
        } else {
            for &k in word {
                acc = acc.mul(&simple_mats[k])?;
            }
        }
        Ok(acc)
    };

    // T_α = L_w L_s L_w^{-1} for the shortest w with w s w^{-1} = s_α
    let mut matrices = Vec::with_capacity(input.len());
    for (i, r) in input.iter().enumerate() {
        if let Some(k) = simple.iter().position(|&j| j == i) {
            matrices.push(simple_mats[k].clone());
            continue;
        }
        let hit = (0..order).find_map(|wi| {
            sgen.iter()
                .position(|&s| g.conjugate(elements[wi], s) == r.reflection)
                .map(|k| (wi, k))
        });
        let (wi, k) = hit.ok_or_else(|| {
            Error::integrity("reflection_conjugate_to_simple", format!("α = {}", r.hyperplane))
        })?;
        let lw = word_matrix(&words[wi], false)?;
        let lwi = word_matrix(&words[wi], true)?;
        matrices.push(lw.mul(&simple_mats[k])?.mul(&lwi)?);
    }

    let mut certificates = Vec::new();
    let annihilated = simple
        .iter()
        .zip(&simple_mats)
        .position(|(&i, l)| !l.eval_poly(&input[i].rbar).map(|m| m.is_zero()).unwrap_or(false));
    certificates.push(Check {
        name: "rbar_annihilates_generators",
        status: pass_or(annihilated.is_none(), || format!("simple generator {}", annihilated.unwrap())),
    });

    let mut braid_fail = None;
    'outer: for a in 0..sgen.len() {
        for b in a + 1..sgen.len() {
            let m = coxeter_matrix[a][b];
            let mut x = CycMatrix::identity(order);
            let mut y = CycMatrix::identity(order);
            for t in 0..m {
                x = x.mul(&simple_mats[if t % 2 == 0 { a } else { b }])?;
                y = y.mul(&simple_mats[if t % 2 == 0 { b } else { a }])?;
            }
            if x != y {
                braid_fail = Some((a, b, m));
                break 'outer;
            }
        }
    }
    certificates.push(Check {
        name: "braid_relations",
        status: pass_or(braid_fail.is_none(), || format!("{:?}", braid_fail.unwrap())),
    });

    let basis_fail = exec.find_failure(&(0..order).collect::<Vec<_>>(), |&wi| {
        let mut v = vec![CycNumber::zero(); order];
        v[0] = CycNumber::one();
        for &k in words[wi].iter().rev() {
            v = match simple_mats[k].mul_vec(&v) {
                Ok(v) => v,
                Err(_) => return false,
            };
        }
        v.iter().enumerate().all(|(i, c)| if i == wi { c.is_one() } else { c.is_zero() })
    });
    certificates.push(Check {
        name: "basis_certificate",
        status: pass_or(basis_fail.is_none(), || format!("T_w·1 ≠ T_w at w = {}", elements[basis_fail.unwrap()])),
    });

    let minpolys: Vec<Result<CycPoly>> = exec.map(&matrices, |m| m.minpoly());
    let mut minpoly_fail = None;
    for (i, mp) in minpolys.into_iter().enumerate() {
        if mp? != input[i].rbar {
            minpoly_fail = Some(input[i].hyperplane);
            break;
        }
    }
    certificates.push(Check {
        name: "generator_minpolys",
        status: pass_or(minpoly_fail.is_none(), || format!("α = {}", minpoly_fail.unwrap())),
    });

    // at R̄ = z² − 1 the rule must reproduce left multiplication in the group
    let unit = CycPoly::binomial(2, &CycNumber::one());
    let perm_fail = sgen.iter().position(|&s| {
        let l = left_matrix(g, s, &elements, &lengths, &pos, &unit);
        (0..order).any(|j| {
            let i = pos(g.mul(s, elements[j]));
            (0..order).any(|r| {
                let v = l.get(r, j);
                if r == i { !v.is_one() } else { !v.is_zero() }
            })
        })
    });
    certificates.push(Check {
        name: "specializes_to_group_algebra",
        status: pass_or(perm_fail.is_none(), || format!("simple generator {}", perm_fail.unwrap())),
    });

    if let Some(c) = certificates.iter().find(|c| c.status.is_fail()) {
        let Status::Fail(w) = &c.status else { unreachable!() };
        return Err(Error::integrity(c.name, w.clone()));
    }

    Ok(CoxeterHecke {
        simple,
        coxeter_matrix,
        elements,
        lengths,
        matrices,
        certificates,
    })
}
