//! Builders for extension data and the reference corpus used by the tests,
//! the self-test and the CLI fixture files.
//!
//! Element numbering is fixed so that the generated files are stable:
//! in ℤ/k ⋊ W the pair (i, w) has index i + k·w.

use std::collections::BTreeMap;

use crate::chi::RbarParams;
use crate::cyclo::{CycMatrix, CycNumber, CycPoly};
use crate::extdata::{BraidWord, DatumFile, GroupSource, TableFile, SCHEMA_VERSION};
use crate::hecke::{find_simple_system, noncommuting_components};
use crate::reflgrp::{hyperplanes, Arrangement, FiniteGroup, GroupDatum, ReflectionGroup, DEFAULT_GROUP_CAP};

#[derive(Debug, Clone)]
pub enum Contents {
    Datum(Box<DatumFile>),
    /// Not a valid datum file; used to exercise the parser.
    Raw(String),
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    /// Family tag: cyclic, dihedral, s3, b2, g312, a3, product, trivial,
    /// or negative.
    pub family: &'static str,
    pub contents: Contents,
    /// Character specs accepted by `Character::parse`.
    pub characters: Vec<String>,
    pub rbar: Option<RbarParams>,
    pub expected_exit: i32,
}

impl Fixture {
    pub fn datum(&self) -> Option<&DatumFile> {
        match &self.contents {
            Contents::Datum(d) => Some(d),
            Contents::Raw(_) => None,
        }
    }

    pub fn to_json(&self) -> String {
        match &self.contents {
            Contents::Datum(d) => serde_json::to_string_pretty(d).expect("serializable") + "\n",
            Contents::Raw(s) => s.clone(),
        }
    }
}

fn built(g: &GroupDatum) -> (ReflectionGroup, Arrangement) {
    let w = g.build(DEFAULT_GROUP_CAP).expect("fixture group");
    let a = hyperplanes(&w).expect("fixture arrangement");
    (w, a)
}

fn keyed<T>(items: impl IntoIterator<Item = (usize, T)>) -> BTreeMap<String, T> {
    items.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Braid relations that hold for the letters σ_α: those of a simple system
/// inside each Coxeter component, and commutation across components.
pub fn standard_braid_relations(w: &ReflectionGroup, arr: &Arrangement) -> Vec<[BraidWord; 2]> {
    let refl: Vec<usize> = arr.hyperplanes.iter().map(|h| h.generator).collect();
    let comps = noncommuting_components(w, &refl);
    let mut out = Vec::new();
    for c in &comps {
        if c.len() < 2 || c.iter().any(|&a| arr.get(a).order != 2) {
            continue;
        }
        let sub: Vec<usize> = c.iter().map(|&a| refl[a]).collect();
        let order = crate::reflgrp::subgroup_generated(w, &sub).len();
        let normals: Vec<Vec<CycNumber>> = c.iter().map(|&a| arr.get(a).normal.clone()).collect();
        let rank = CycMatrix::from_rows(normals).and_then(|m| m.rank()).expect("normals");
        let Ok((simple, m)) = find_simple_system(w, &sub, rank, order) else { continue };
        for i in 0..simple.len() {
            for j in i + 1..simple.len() {
                let (a, b) = (c[simple[i]], c[simple[j]]);
                let alt = |x: usize, y: usize| -> BraidWord {
                    (0..m[i][j]).map(|t| (if t % 2 == 0 { x } else { y }, 1)).collect()
                };
                out.push([alt(a, b), alt(b, a)]);
            }
        }
    }
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            let (a, b) = (comps[i][0], comps[j][0]);
            out.push([vec![(a, 1), (b, 1)], vec![(b, 1), (a, 1)]]);
        }
    }
    out
}

/// ℤ/k ⋊ W with W acting through the units φ(g) mod k given on the W
/// generators, and splitting r_α = (0, s_α^{-1}).
pub fn semidirect(name: &str, group: GroupDatum, k: usize, phi: &[usize], tau: Option<Vec<i64>>) -> DatumFile {
    let (w, arr) = built(&group);
    let nw = w.order();
    assert_eq!(phi.len(), w.generator_indices().len(), "one unit per W generator");
    let phi_of: Vec<usize> = (0..nw)
        .map(|x| w.word(x).iter().fold(1, |acc, &g| acc * phi[g] % k))
        .collect();
    for a in 0..nw {
        for b in 0..nw {
            assert_eq!(phi_of[w.mul(a, b)], phi_of[a] * phi_of[b] % k, "φ must be a homomorphism");
        }
    }
    let n = k * nw;
    let idx = |i: usize, x: usize| i + k * x;
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| {
            let (i1, w1) = (a % k, a / k);
            (0..n)
                .map(|b| {
                    let (i2, w2) = (b % k, b / k);
                    idx((i1 + phi_of[w1] * i2) % k, w.mul(w1, w2))
                })
                .collect()
        })
        .collect();
    let mut generators = vec![idx(1 % k, 0)];
    generators.extend(w.generator_indices().iter().map(|&g| idx(0, g)));
    let splitting = keyed((0..arr.len()).map(|a| (a, idx(0, w.inv(arr.get(a).generator)))));
    let tau = tau
        .map(|t| keyed((0..k).map(|i| (idx(i, 0), t[i]))))
        .unwrap_or_default();
    DatumFile {
        schema_version: SCHEMA_VERSION,
        name: name.into(),
        group: GroupSource::Inline(group),
        wtilde: TableFile {
            order: n,
            table,
            generators,
        },
        q: (0..n).map(|a| a / k).collect(),
        kernel: Some((0..k).map(|i| idx(i, 0)).collect()),
        splitting,
        wtilde_alpha: None,
        tau,
        sgn: BTreeMap::new(),
        braid_relations: standard_braid_relations(&w, &arr),
        convention: None,
    }
}

pub fn direct(name: &str, group: GroupDatum, k: usize, tau: Option<Vec<i64>>) -> DatumFile {
    let gens = group.generators.len();
    semidirect(name, group, k, &vec![1; gens], tau)
}

/// ℤ/(mk) → ℤ/m = ⟨ζ_m⟩, x ↦ ζ_m^x, which does not split for k > 1.
pub fn cyclic_nonsplit(name: &str, m: usize, k: usize) -> DatumFile {
    let group = GroupDatum::catalog(m, 1, 1).expect("cyclic");
    let (w, arr) = built(&group);
    let power: Vec<usize> = (0..m)
        .map(|j| {
            let z = CycMatrix::scalar(1, &CycNumber::zeta(m as u32, j as i64).expect("zeta"));
            w.find(&z).expect("power of ζ_m")
        })
        .collect();
    let n = m * k;
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    assert_eq!(arr.len(), 1);
    DatumFile {
        schema_version: SCHEMA_VERSION,
        name: name.into(),
        group: GroupSource::Inline(group),
        wtilde: TableFile {
            order: n,
            table,
            generators: vec![1 % n],
        },
        q: (0..n).map(|x| power[x % m]).collect(),
        kernel: None,
        splitting: keyed([(0, m - 1)]),
        wtilde_alpha: None,
        tau: BTreeMap::new(),
        sgn: BTreeMap::new(),
        braid_relations: vec![],
        convention: None,
    }
}

fn permutations3() -> Vec<[usize; 3]> {
    let mut v = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                if a != b && b != c && a != c {
                    v.push([a, b, c]);
                }
            }
        }
    }
    v
}

/// S₃ → S₂ = {±1} by the sign, with I = A₃.
pub fn s2_over_s3(name: &str) -> DatumFile {
    let group = GroupDatum::catalog(2, 1, 1).expect("S2");
    let (w, _) = built(&group);
    let minus = w.find(&CycMatrix::scalar(1, &CycNumber::from_integer(-1))).expect("−1");
    let perms = permutations3();
    let pos = |p: [usize; 3]| perms.iter().position(|&x| x == p).expect("permutation");
    let table = perms
        .iter()
        .map(|a| perms.iter().map(|b| pos([a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect();
    let sign = |p: &[usize; 3]| {
        let inv = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        inv % 2
    };
    DatumFile {
        schema_version: SCHEMA_VERSION,
        name: name.into(),
        group: GroupSource::Inline(group),
        wtilde: TableFile {
            order: 6,
            table,
            generators: vec![pos([1, 0, 2]), pos([1, 2, 0])],
        },
        q: perms.iter().map(|p| if sign(p) == 1 { minus } else { 0 }).collect(),
        kernel: None,
        splitting: keyed([(0, pos([1, 0, 2]))]),
        wtilde_alpha: None,
        tau: BTreeMap::new(),
        sgn: BTreeMap::new(),
        braid_relations: vec![],
        convention: None,
    }
}

fn diag_group(name: &str, entries: &[(u32, i64)], order: u32) -> GroupDatum {
    let r = entries.len();
    let generators = entries
        .iter()
        .enumerate()
        .map(|(i, &(m, e))| {
            let mut d = vec![CycNumber::one(); r];
            d[i] = CycNumber::zeta(m, e).expect("zeta");
            CycMatrix::diagonal(&d)
        })
        .collect();
    GroupDatum {
        name: name.into(),
        rank: r,
        cyclotomic_order: order,
        generators,
    }
}

fn trivial_group_datum() -> GroupDatum {
    GroupDatum {
        name: "trivial".into(),
        rank: 1,
        cyclotomic_order: 1,
        generators: vec![CycMatrix::identity(1)],
    }
}

/// z² + (1 − q)z − q, whose roots are q and −1.
pub fn q_quadratic(q: &CycNumber) -> CycPoly {
    CycPoly::new(vec![-q, CycNumber::one() - q.clone(), CycNumber::one()]).expect("monic")
}

fn cat(m: usize, p: usize, r: usize) -> GroupDatum {
    GroupDatum::catalog(m, p, r).expect("catalog")
}

fn chars(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn fixture(name: &str, family: &'static str, d: DatumFile, characters: &[&str]) -> Fixture {
    Fixture {
        name: name.into(),
        family,
        contents: Contents::Datum(Box::new(d)),
        characters: chars(characters),
        rbar: None,
        expected_exit: 0,
    }
}

fn with_sgn(mut d: DatumFile, sgn: &[(usize, i64)]) -> DatumFile {
    d.sgn = keyed(sgn.iter().copied());
    d
}

/// The reference corpus. Every positive entry analyzes with exit code 0
/// for each listed character; the negative controls carry their expected
/// exit codes.
pub fn corpus() -> Vec<Fixture> {
    let sign_tau = |k: usize| Some((0..k).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect::<Vec<i64>>());
    let mut v = vec![
        fixture(
            "cyclic3_direct",
            "cyclic",
            direct("cyclic3_direct", cat(3, 1, 1), 2, sign_tau(2)),
            &["trivial", "2:1"],
        ),
        fixture("cyclic4_over_z8", "cyclic", cyclic_nonsplit("cyclic4_over_z8", 4, 2), &["trivial", "2:1"]),
        fixture(
            "cyclic3_over_z9",
            "cyclic",
            with_sgn(cyclic_nonsplit("cyclic3_over_z9", 3, 3), &[(0, -1)]),
            &["trivial", "3:1", "3:2"],
        ),
        fixture("s2_over_s3", "s3", s2_over_s3("s2_over_s3"), &["trivial", "3:1"]),
        fixture("s3_direct_z2", "s3", direct("s3_direct_z2", cat(3, 3, 2), 2, None), &["trivial", "2:1"]),
        fixture(
            "s3_semidirect_z3",
            "s3",
            semidirect("s3_semidirect_z3", cat(3, 3, 2), 3, &[2, 2], None),
            &["trivial", "3:1", "3:2"],
        ),
        fixture(
            "s3_semidirect_z4_tau",
            "s3",
            semidirect("s3_semidirect_z4_tau", cat(3, 3, 2), 4, &[3, 3], sign_tau(4)),
            &["trivial", "4:1", "4:2"],
        ),
        {
            let mut f = fixture(
                "b2_direct_z2",
                "b2",
                direct("b2_direct_z2", cat(2, 1, 2), 2, None),
                &["trivial", "2:1"],
            );
            let p = q_quadratic(&CycNumber::from_integer(3));
            f.rbar = Some(RbarParams {
                by_orbit: keyed([(0, p.clone()), (1, p)]),
                by_hyperplane: BTreeMap::new(),
            });
            f
        },
        fixture(
            "b2_semidirect_z3_short",
            "b2",
            semidirect("b2_semidirect_z3_short", cat(2, 1, 2), 3, &[2, 1], None),
            &["trivial", "3:1"],
        ),
        fixture(
            "b2_semidirect_z3_det",
            "b2",
            semidirect("b2_semidirect_z3_det", cat(2, 1, 2), 3, &[2, 2], None),
            &["trivial", "3:1"],
        ),
        fixture(
            "dihedral_i2_5",
            "dihedral",
            semidirect("dihedral_i2_5", cat(5, 5, 2), 3, &[2, 2], None),
            &["trivial", "3:1"],
        ),
        fixture(
            "dihedral_i2_4_direct",
            "dihedral",
            direct("dihedral_i2_4_direct", cat(4, 4, 2), 4, None),
            &["trivial", "4:1", "4:2"],
        ),
        fixture(
            "g312_direct_z2",
            "g312",
            direct("g312_direct_z2", cat(3, 1, 2), 2, None),
            &["trivial", "2:1"],
        ),
        fixture(
            "g312_semidirect_z7",
            "g312",
            semidirect("g312_semidirect_z7", cat(3, 1, 2), 7, &[2, 1], None),
            &["trivial", "7:1", "7:3"],
        ),
        fixture("a3_direct", "a3", direct("a3_direct", cat(1, 1, 4), 2, None), &["trivial", "2:1"]),
        fixture(
            "product_c3_s2",
            "product",
            direct(
                "product_c3_s2",
                diag_group("C3xC2", &[(3, 1), (2, 1)], 6),
                2,
                sign_tau(2),
            ),
            &["trivial", "2:1"],
        ),
        fixture(
            "trivial_group",
            "trivial",
            direct("trivial_group", trivial_group_datum(), 2, None),
            &["trivial", "2:1"],
        ),
    ];

    let mut bad_q = direct("bad_qmap", cat(3, 1, 1), 2, None);
    bad_q.q.swap(2, 4);
    v.push(Fixture {
        expected_exit: 3,
        family: "negative",
        ..fixture("bad_qmap", "negative", bad_q, &["trivial"])
    });
    v.push(Fixture {
        name: "malformed".into(),
        family: "negative",
        contents: Contents::Raw("{\"schema_version\": 1, \"name\": \"malformed\", \"group\": [\n".into()),
        characters: chars(&["trivial"]),
        rbar: None,
        expected_exit: 2,
    });
    let mut bad_rbar = fixture("bad_rbar", "negative", s2_over_s3("bad_rbar"), &["3:1"]);
    bad_rbar.rbar = Some(RbarParams {
        by_orbit: keyed([(0, CycPoly::binomial(2, &CycNumber::one()))]),
        by_hyperplane: BTreeMap::new(),
    });
    bad_rbar.expected_exit = 4;
    v.push(bad_rbar);
    v
}
