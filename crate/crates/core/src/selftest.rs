//! Property suites run by `selftest`. Each suite counts its cases and
//! collects a witness for every failure; random inputs come from a fixed
//! seed so that runs are reproducible.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{analyze, Options};
use crate::carousel::{build_carousel, carousel_minpolys};
use crate::cyclo::{CycMatrix, CycNumber, CycPoly};
use crate::error::{Error, Result};
use crate::extdata::{act_on_character, Character, DatumFile, ExtensionDatum};
use crate::fixtures::{self, Contents};
use crate::hecke::{build_coxeter, build_cyclic, ReflectionInput};
use crate::par::Exec;
use crate::reflgrp::{hyperplanes, FiniteGroup, GroupDatum, DEFAULT_GROUP_CAP};

pub const SCOPES: &[&str] = &["cyclo", "reflgrp", "extdata", "chi", "carousel", "hecke", "induce"];

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub scope: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    fn new(scope: &'static str) -> Self {
        SuiteResult {
            scope,
            cases: 0,
            failures: vec![],
        }
    }

    fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(witness());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs one scope, or every scope for `all`. Unknown scopes are an error.
pub fn run(scope: &str, exec: Exec) -> Result<Vec<SuiteResult>> {
    let scopes: Vec<&str> = if scope == "all" {
        SCOPES.to_vec()
    } else if SCOPES.contains(&scope) {
        vec![scope]
    } else {
        return Err(Error::domain(format!(
            "unknown scope `{scope}`; expected all or one of {}",
            SCOPES.join(", ")
        )));
    };
    scopes
        .into_iter()
        .map(|s| match s {
            "cyclo" => cyclo_suite(),
            "reflgrp" => reflgrp_suite(),
            "extdata" => extdata_suite(),
            "chi" => corpus_suite("chi", exec),
            "carousel" => carousel_suite(exec),
            "hecke" => hecke_suite(exec),
            _ => corpus_suite("induce", exec),
        })
        .collect()
}

pub fn random_cyc(rng: &mut ChaCha8Rng, order: u32) -> CycNumber {
    let terms: Vec<(BigRational, i64)> = (0..order as i64)
        .map(|k| {
            let num = rng.gen_range(-4i64..=4);
            let den = rng.gen_range(1i64..=3);
            (BigRational::new(num.into(), den.into()), k)
        })
        .collect();
    CycNumber::from_terms(order, &terms).expect("valid terms")
}

/// Random monic polynomial of degree 1..=max_deg with nonzero constant term.
pub fn random_monic(rng: &mut ChaCha8Rng, order: u32, max_deg: usize) -> CycPoly {
    let d = rng.gen_range(1..=max_deg);
    loop {
        let mut c: Vec<CycNumber> = (0..d).map(|_| random_cyc(rng, order)).collect();
        c.push(CycNumber::one());
        if !c[0].is_zero() {
            return CycPoly::new(c).expect("monic");
        }
    }
}

fn cyclo_suite() -> Result<SuiteResult> {
    let mut r = SuiteResult::new("cyclo");
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let (a, b, c) = (random_cyc(&mut rng, 12), random_cyc(&mut rng, 12), random_cyc(&mut rng, 12));
        let lhs = (&a + &b) * c.clone();
        let rhs = &a * &c + &b * &c;
        r.case(lhs == rhs, || format!("distributivity at {a}, {b}, {c}"));
        if !a.is_zero() {
            r.case((&a * &a.inv()?).is_one(), || format!("a·a⁻¹ ≠ 1 at {a}"));
        }
        r.case(a.conj().conj() == a, || format!("conj not an involution at {a}"));
    }
    for _ in 0..200 {
        let p = random_monic(&mut rng, 12, 6);
        let t = p.theta()?;
        r.case(t.theta()? == p && t.degree() == p.degree(), || format!("ϑ² ≠ id at {p}"));
    }
    Ok(r)
}

fn reflgrp_suite() -> Result<SuiteResult> {
    let mut r = SuiteResult::new("reflgrp");
    for m in 1..=6 {
        for p in (1..=m).filter(|p| m % p == 0) {
            for rank in 1..=3 {
                let g = GroupDatum::catalog(m, p, rank)?.build(DEFAULT_GROUP_CAP)?;
                let expected = m.pow(rank as u32) * (1..=rank).product::<usize>() / p;
                r.case(g.order() == expected, || format!("|G({m},{p},{rank})| = {} ≠ {expected}", g.order()));
                let arr = hyperplanes(&g)?;
                let direct = (1..g.order())
                    .filter(|&a| {
                        let d = g.matrix(a).sub(&CycMatrix::identity(g.rank())).and_then(|x| x.rank());
                        matches!(d, Ok(1))
                    })
                    .count();
                r.case(arr.reflection_count() == direct, || {
                    format!("G({m},{p},{rank}): Σ(n_α − 1) = {} but {direct} reflections", arr.reflection_count())
                });
                if g.order() <= 200 {
                    let ok = (0..g.order()).all(|w| {
                        (0..arr.len()).all(|a| {
                            let s = arr.get(a).generator;
                            g.conjugate(w, s) == arr.get(arr.act(w, a)).generator
                        })
                    });
                    r.case(ok, || format!("G({m},{p},{rank}): w s_α w⁻¹ ≠ s_(w·α)"));
                }
            }
        }
    }
    Ok(r)
}

fn load(f: &fixtures::Fixture) -> Result<Option<ExtensionDatum>> {
    match &f.contents {
        Contents::Raw(_) => Ok(None),
        Contents::Datum(d) => {
            let text = serde_json::to_string(d.as_ref()).map_err(|e| Error::Parse(e.to_string()))?;
            let file = DatumFile::from_json(&text)?;
            Ok(Some(ExtensionDatum::from_file(&file, None, DEFAULT_GROUP_CAP)?))
        }
    }
}

fn extdata_suite() -> Result<SuiteResult> {
    let mut r = SuiteResult::new("extdata");
    for f in fixtures::corpus() {
        let Some(e) = load(&f)? else { continue };
        let valid = crate::extdata::validate(&e).passed();
        r.case(valid == (f.expected_exit != 3), || format!("{}: validation verdict {valid}", f.name));
        if !valid || e.group.order() > 48 {
            continue;
        }
        for spec in &f.characters {
            let chi = Character::parse(&e, spec)?;
            let w = &e.group;
            let ok = (0..w.order()).all(|a| {
                (0..w.order()).all(|b| {
                    act_on_character(&e, w.mul(a, b), &chi) == act_on_character(&e, a, &act_on_character(&e, b, &chi))
                })
            });
            r.case(ok, || format!("{} {spec}: (ab)·χ ≠ a·(b·χ)", f.name));
        }
    }
    Ok(r)
}

fn corpus_suite(scope: &'static str, exec: Exec) -> Result<SuiteResult> {
    let mut r = SuiteResult::new(scope);
    for f in fixtures::corpus() {
        let e = match load(&f) {
            Ok(Some(e)) => e,
            Ok(None) | Err(_) => {
                r.case(f.expected_exit == 2, || format!("{}: failed to load", f.name));
                continue;
            }
        };
        for spec in &f.characters {
            let chi = Character::parse(&e, spec)?;
            let a = analyze(&e, &chi, f.rbar.as_ref(), Options { convention: None, exec });
            r.case(a.exit_code() == f.expected_exit, || {
                format!("{} {spec}: exit {} ≠ {}", f.name, a.exit_code(), f.expected_exit)
            });
            if f.expected_exit != 0 {
                continue;
            }
            let Some(inv) = &a.invariants else { continue };
            let Some(ledger) = &a.ledger else { continue };
            if scope == "chi" {
                let sub = inv.w_chi_zero.iter().all(|w| inv.in_w_chi(*w));
                r.case(sub && inv.w_chi.len() % inv.w_chi_zero.len() == 0, || format!("{} {spec}: W_χ⁰ ⊄ W_χ", f.name));
            } else {
                r.case(ledger.dim_mchi == e.group.order(), || format!("{} {spec}: dim M_χ ≠ |W|", f.name));
                r.case(ledger.dim_m0 == inv.w_chi_zero.len(), || format!("{} {spec}: dim M⁰ ≠ |W_χ⁰|", f.name));
                let blocks_ok = ledger.blocks.len() * inv.w_chi.len() == e.group.order()
                    && ledger.blocks.iter().all(|b| b.dim == inv.w_chi.len());
                r.case(blocks_ok, || format!("{} {spec}: block sizes", f.name));
            }
        }
    }
    Ok(r)
}

/// Every (n, e, sgn, twist) with n ≤ 12, e | n and twist = ζ_t^a a root of
/// unity of order t ≤ 12, given as (a, t) with gcd(a, t) = 1.
pub fn carousel_tuples() -> Vec<(usize, usize, i8, (i64, u32))> {
    let twists: Vec<(i64, u32)> = (1..=12u32)
        .flat_map(|t| (0..t as i64).filter(move |&a| num_integer::gcd(a, t as i64) == 1).map(move |a| (a, t)))
        .collect();
    let mut v = Vec::new();
    for n in 1..=12 {
        for e in (1..=n).filter(|e| n % e == 0) {
            for sgn in [1i8, -1] {
                v.extend(twists.iter().map(|&tw| (n, e, sgn, tw)));
            }
        }
    }
    v
}

fn carousel_suite(exec: Exec) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("carousel");
    let tuples = carousel_tuples();
    let outcomes = exec.map(&tuples, |&(n, e, sgn, (a, t))| -> Result<()> {
        let twist = CycNumber::zeta(t, a)?;
        let m = build_carousel(n, e, sgn, &twist)?;
        carousel_minpolys(&m).map(|_| ())
    });
    for (tup, out) in tuples.iter().zip(outcomes) {
        r.case(out.is_ok(), || format!("{tup:?}: {}", out.unwrap_err()));
    }
    Ok(r)
}

fn coxeter_inputs(g: &crate::reflgrp::ReflectionGroup, rbar: &CycPoly) -> Result<Vec<ReflectionInput>> {
    let arr = hyperplanes(g)?;
    Ok(arr
        .hyperplanes
        .iter()
        .enumerate()
        .map(|(a, h)| ReflectionInput {
            hyperplane: a,
            reflection: h.generator,
            normal: h.normal.clone(),
            rbar: rbar.clone(),
        })
        .collect())
}

fn hecke_suite(exec: Exec) -> Result<SuiteResult> {
    let mut r = SuiteResult::new("hecke");
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 1..=12 {
        let p = loop {
            let mut c: Vec<CycNumber> = (0..n).map(|_| random_cyc(&mut rng, 3)).collect();
            c.push(CycNumber::one());
            if !c[0].is_zero() {
                break CycPoly::new(c)?;
            }
        };
        let f = build_cyclic(0, &p, n)?;
        r.case(f.dim == n, || format!("cyclic order {n}: dim {}", f.dim));
    }
    let params = [
        CycNumber::from_integer(3),
        CycNumber::from_integer(-2),
        CycNumber::from_frac(1, 2)?,
        CycNumber::zeta(3, 1)?,
    ];
    let groups = [(3, 3, 2), (2, 1, 2), (1, 1, 4), (2, 2, 2), (4, 4, 2), (5, 5, 2), (6, 6, 2)];
    for &(m, p, rank) in &groups {
        let g = GroupDatum::catalog(m, p, rank)?.build(DEFAULT_GROUP_CAP)?;
        for q in &params {
            let rb = fixtures::q_quadratic(q);
            let input = coxeter_inputs(&g, &rb)?;
            match build_coxeter(&g, &input, exec) {
                Ok(h) => r.case(h.elements.len() == g.order(), || format!("G({m},{p},{rank}) q = {q}: dim")),
                Err(err) => r.case(false, || format!("G({m},{p},{rank}) q = {q}: {err}")),
            }
        }
    }
    Ok(r)
}
