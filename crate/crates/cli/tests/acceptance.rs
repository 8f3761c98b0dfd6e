//! Acceptance criteria, one PASS/FAIL line each. Every check compares the
//! library against an oracle computed here from first principles (matrix
//! arithmetic, closed forms, counting formulas), never against the routine
//! under test. Time limits are wall-clock on the test profile.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use reflmono::analysis::{analyze, Analysis, Options};
use reflmono::carousel::{build_carousel, carousel_minpolys};
use reflmono::cyclo::{CycMatrix, CycNumber, CycPoly, RootOfUnity};
use reflmono::extdata::{Character, Convention, ExtensionDatum};
use reflmono::fixtures::{corpus, q_quadratic, Fixture};
use reflmono::hecke::{build_hecke, FactorKind, HeckeAlgebra, ReflectionInput};
use reflmono::induce::build_i_action;
use reflmono::par::Exec;
use reflmono::reflgrp::{catalog, enumerate, hyperplanes, FiniteGroup, GroupDatum, ReflectionGroup, DEFAULT_GROUP_CAP};
use reflmono::selftest::random_monic;
use reflmono_cli::corpus_files::{fixtures_dir, manifest};

const BIN: &str = env!("CARGO_BIN_EXE_reflmono");

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn z(n: i64) -> CycNumber {
    CycNumber::from_integer(n)
}

fn zeta(order: u32, k: i64) -> CycNumber {
    CycNumber::zeta(order, k).unwrap()
}

fn frac(a: i64, b: i64) -> CycNumber {
    CycNumber::from_frac(a, b).unwrap()
}

/// p(m) by Horner's rule with plain matrix products.
fn horner(m: &CycMatrix, p: &CycPoly) -> CycMatrix {
    let n = m.rows();
    let mut acc = CycMatrix::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m).unwrap().add(&CycMatrix::scalar(n, c)).unwrap();
    }
    acc
}

/// True iff the monic p of degree d is the minimal polynomial of m:
/// p(m) = 0 and 1, m, …, m^{d−1} are linearly independent.
fn is_minpoly(m: &CycMatrix, p: &CycPoly) -> bool {
    if !horner(m, p).is_zero() {
        return false;
    }
    let n = m.rows();
    let mut rows = Vec::new();
    let mut pw = CycMatrix::identity(n);
    for _ in 0..p.degree() {
        rows.push(pw.entries().to_vec());
        pw = pw.mul(m).unwrap();
    }
    CycMatrix::from_rows(rows).unwrap().rank().unwrap() == p.degree()
}

fn is_reflection(m: &CycMatrix) -> bool {
    m.sub(&CycMatrix::identity(m.rows())).unwrap().rank().unwrap() == 1
}

/// (w·χ)(x) = χ(w̃⁻¹ x w̃) for the last lift w̃ of w; I is abelian, so any
/// lift gives the same value.
fn act_value(e: &ExtensionDatum, w: usize, chi: &Character, x: usize) -> RootOfUnity {
    let t = &e.wtilde;
    let lift = e.q.iter().rposition(|&v| v == w).unwrap();
    chi.value(t.mul(t.mul(t.inv(lift), x), lift))
}

fn oracle_w_chi(e: &ExtensionDatum, chi: &Character) -> Vec<usize> {
    (0..e.group.order())
        .filter(|&w| e.kernel.iter().all(|&x| act_value(e, w, chi, x) == chi.value(x)))
        .collect()
}

/// Closure under matrix multiplication of the reflections lying in W_χ.
fn oracle_w_chi_zero(g: &ReflectionGroup, w_chi: &[usize]) -> BTreeSet<usize> {
    let gens: Vec<&CycMatrix> = w_chi
        .iter()
        .map(|&w| g.matrix(w))
        .filter(|m| is_reflection(m))
        .collect();
    let id = g.find(&CycMatrix::identity(g.rank())).unwrap();
    let mut seen = BTreeSet::from([id]);
    let mut stack = vec![id];
    while let Some(v) = stack.pop() {
        for s in &gens {
            let p = g.find(&g.matrix(v).mul(s).unwrap()).unwrap();
            if seen.insert(p) {
                stack.push(p);
            }
        }
    }
    seen
}

struct Run {
    fixture: Fixture,
    e: ExtensionDatum,
    chi: Character,
    a: Analysis,
}

fn positive_runs() -> Vec<Run> {
    let mut v = Vec::new();
    for f in corpus().into_iter().filter(|f| f.expected_exit == 0) {
        let e = ExtensionDatum::from_file(f.datum().unwrap(), None, DEFAULT_GROUP_CAP).unwrap();
        for c in &f.characters {
            let chi = Character::parse(&e, c).unwrap();
            let a = analyze(
                &e,
                &chi,
                f.rbar.as_ref(),
                Options {
                    convention: None,
                    exec: Exec::Sequential,
                },
            );
            v.push(Run {
                fixture: f.clone(),
                e: e.clone(),
                chi,
                a,
            });
        }
    }
    v
}

fn label(e: &ExtensionDatum, convention: Convention, coset: &[usize]) -> usize {
    match convention {
        Convention::Standard => coset[0],
        Convention::FlipInertia => e.group.inv(coset[0]),
    }
}

fn criterion_1_dimensions() -> Outcome {
    let runs = positive_runs();
    let mut per_datum: BTreeMap<String, usize> = BTreeMap::new();
    for r in &runs {
        let tag = format!("{} {}", r.fixture.name, r.e.name);
        ensure(r.a.exit_code() == 0, || format!("{tag}: exit {}", r.a.exit_code()))?;
        let l = r.a.ledger.as_ref().ok_or_else(|| format!("{tag}: no ledger"))?;
        let order = r.e.group.elements().len();
        let zero = oracle_w_chi_zero(&r.e.group, &oracle_w_chi(&r.e, &r.chi));
        ensure(l.dim_mchi == order, || format!("{tag}: dim M_χ = {} ≠ |W| = {order}", l.dim_mchi))?;
        ensure(l.dim_m0 == zero.len(), || format!("{tag}: dim M⁰ = {} ≠ |W_χ⁰| = {}", l.dim_m0, zero.len()))?;
        ensure(l.index * l.dim_m0 == order, || format!("{tag}: index"))?;
        *per_datum.entry(r.fixture.name.clone()).or_default() += 1;
    }
    ensure(per_datum.len() >= 12, || format!("only {} data", per_datum.len()))?;
    ensure(per_datum.values().all(|&c| c >= 2), || "a datum has fewer than 2 characters".into())?;
    Ok(format!("{} data, {} characters", per_datum.len(), runs.len()))
}

fn criterion_2_blocks() -> Outcome {
    let mut blocks = 0;
    let runs = positive_runs();
    for r in &runs {
        let tag = format!("{} {:?}", r.fixture.name, r.chi);
        let e = &r.e;
        let l = r.a.ledger.as_ref().unwrap();
        let w_chi = oracle_w_chi(e, &r.chi);
        let order = e.group.order();
        let acts = build_i_action(e, &r.chi, l, &e.kernel);
        let mut spaces: BTreeMap<Vec<RootOfUnity>, Vec<usize>> = BTreeMap::new();
        for b in 0..l.dim_mchi {
            spaces.entry(acts.iter().map(|a| a.diagonal[b]).collect()).or_default().push(b);
        }
        for a in &acts {
            let m = a.to_matrix().unwrap();
            ensure(m.is_diagonal(), || format!("{tag}: I-action of {} not diagonal", a.x))?;
        }
        let expected: BTreeSet<Vec<RootOfUnity>> = (0..order)
            .map(|w| {
                e.kernel
                    .iter()
                    .map(|&x| act_value(e, w, &r.chi, x).mul(RootOfUnity::sign(e.tau[x] >= 0)))
                    .collect()
            })
            .collect();
        ensure(spaces.keys().cloned().collect::<BTreeSet<_>>() == expected, || {
            format!("{tag}: eigencharacters are not the (w·χ)τ")
        })?;
        ensure(spaces.len() * w_chi.len() == order, || format!("{tag}: {} eigenspaces", spaces.len()))?;
        ensure(spaces.values().all(|s| s.len() == w_chi.len()), || format!("{tag}: eigenspace dims"))?;
        ensure(l.blocks.len() == spaces.len(), || format!("{tag}: {} blocks", l.blocks.len()))?;
        for blk in &l.blocks {
            ensure(blk.dim == w_chi.len(), || format!("{tag}: block dim {} ≠ |W_χ|", blk.dim))?;
            let mut coset: Vec<usize> = w_chi
                .iter()
                .map(|&h| match l.convention {
                    Convention::Standard => e.group.mul(blk.label, h),
                    Convention::FlipInertia => e.group.mul(h, blk.label),
                })
                .collect();
            coset.sort_unstable();
            ensure(coset == blk.coset, || format!("{tag}: block {} is not a W_χ-coset", blk.label))?;
            let mut slots = blk.slots.clone();
            slots.sort_unstable();
            ensure(spaces.values().any(|s| *s == slots), || format!("{tag}: block {} is not an eigenspace", blk.label))?;
            for &s in &blk.slots {
                let c = &l.cosets[s / l.dim_m0];
                ensure(coset.binary_search(&c[0]).is_ok(), || format!("{tag}: slot {s} outside its coset"))?;
            }
            blocks += 1;
        }
    }
    Ok(format!("{} runs, {blocks} blocks", runs.len()))
}

fn theta_by_hand(p: &CycPoly) -> CycPoly {
    let c0 = p.coeffs()[0].inv().unwrap();
    CycPoly::new(p.coeffs().iter().rev().map(|c| c * &c0).collect()).unwrap()
}

fn carousel_case(n: usize, e: usize, sgn: i8, a: i64, t: u32) -> Result<(), String> {
    let tag = format!("(n={n}, e={e}, sgn={sgn}, twist=ζ_{t}^{a})");
    let twist = zeta(t, a);
    let m = build_carousel(n, e, sgn, &twist).map_err(|x| format!("{tag}: {x}"))?;
    let s = z(sgn as i64);
    let mut l = CycMatrix::zeros(n, n);
    for j in 0..n - 1 {
        l.set(j + 1, j, s.clone());
    }
    l.set(0, n - 1, &s * &twist);
    ensure(m.lambda_inv == l, || format!("{tag}: λ^{{-1}} is not the twisted shift"))?;
    let polys = carousel_minpolys(&m).map_err(|x| format!("{tag}: {x}"))?;

    // L^n = w·1 with w = sgn^n·twist, and e_0 is a cyclic vector, so λ = L^{-1}
    // has minimal polynomial z^n − w^{-1}; λ^e splits into e cyclic pieces of
    // size d = n/e with (λ^e)^d = w^{-1}.
    let w = &s.pow(n as i64).unwrap() * &twist;
    let d = n / e;
    let k: i64 = if e.is_multiple_of(2) { 1 } else { sgn as i64 };
    ensure(polys.r.degree() == n, || format!("{tag}: deg R = {}", polys.r.degree()))?;
    ensure(polys.r == CycPoly::binomial(n, &w.inv().unwrap()), || format!("{tag}: R = {}", polys.r))?;
    ensure(polys.rbar == CycPoly::binomial(d, &w.inv().unwrap()), || format!("{tag}: R̄ = {}", polys.rbar))?;
    let composed = polys.r.coeffs().len() == d * e + 1
        && polys.r.coeffs().iter().enumerate().all(|(i, c)| {
            if i % e == 0 {
                *c == polys.rbar.coeffs()[i / e]
            } else {
                c.is_zero()
            }
        });
    ensure(composed, || format!("{tag}: R(z) ≠ R̄(z^e)"))?;

    let mut le = CycMatrix::identity(n);
    for _ in 0..e {
        le = le.mul(&l).unwrap();
    }
    ensure(m.mu_e == le.scale(&z(k)).unwrap(), || format!("{tag}: μ(σ^e) ≠ k·λ^{{-e}}"))?;
    ensure(is_minpoly(&m.mu_e, &polys.rbar_mu), || format!("{tag}: R̄^μ is not the minpoly of μ"))?;

    let th = theta_by_hand(&polys.rbar);
    let rhs: Vec<CycNumber> = th
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c * &z(k).pow((i + d) as i64).unwrap())
        .collect();
    ensure(polys.rbar_mu == CycPoly::new(rhs).unwrap(), || format!("{tag}: R̄^μ ≠ k^d(ϑR̄)(kz)"))?;
    ensure(polys.rbar_mu == CycPoly::binomial(d, &(&z(k).pow(d as i64).unwrap() * &w)), || {
        format!("{tag}: R̄^μ closed form")
    })?;
    Ok(())
}

fn criterion_3_carousel() -> Outcome {
    let mut tuples = Vec::new();
    for n in 1..=12usize {
        for e in (1..=n).filter(|e| n % e == 0) {
            for sgn in [1i8, -1] {
                for t in 1..=12u32 {
                    for a in (0..t as i64).filter(|&a| num_gcd(a, t as i64) == 1) {
                        tuples.push((n, e, sgn, a, t));
                    }
                }
            }
        }
    }
    let results = Exec::Rayon.map(&tuples, |&(n, e, sgn, a, t)| carousel_case(n, e, sgn, a, t));
    let failures: Vec<String> = results.into_iter().filter_map(|r| r.err()).collect();
    ensure(tuples.len() >= 500, || format!("only {} tuples", tuples.len()))?;
    ensure(failures.is_empty(), || format!("{} failures, first {}", failures.len(), failures[0]))?;
    Ok(format!("{} tuples", tuples.len()))
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

fn block_diag(a: &CycMatrix, b: &CycMatrix) -> CycMatrix {
    let (n, m) = (a.rows(), b.rows());
    CycMatrix::from_fn(n + m, n + m, |i, j| match (i < n, j < n) {
        (true, true) => a.get(i, j).clone(),
        (false, false) => b.get(i - n, j - n).clone(),
        _ => CycNumber::zero(),
    })
}

fn product_group(a: &[CycMatrix], b: &[CycMatrix]) -> ReflectionGroup {
    let (ia, ib) = (CycMatrix::identity(a[0].rows()), CycMatrix::identity(b[0].rows()));
    let gens: Vec<CycMatrix> = a
        .iter()
        .map(|x| block_diag(x, &ib))
        .chain(b.iter().map(|y| block_diag(&ia, y)))
        .collect();
    enumerate(&gens, DEFAULT_GROUP_CAP).unwrap()
}

/// One Hecke case: the group, its expected order, and R̄ per hyperplane
/// orbit.
struct HeckeCase {
    name: String,
    group: ReflectionGroup,
    order: usize,
    rbar: Vec<CycPoly>,
}

fn quadratic(u: CycNumber, v: CycNumber) -> CycPoly {
    CycPoly::linear(&u).mul(&CycPoly::linear(&v))
}

fn hecke_cases() -> Vec<HeckeCase> {
    let g = |m, p, r| enumerate(&catalog(m, p, r).unwrap(), DEFAULT_GROUP_CAP).unwrap();
    let quads = [
        vec![q_quadratic(&z(3))],
        vec![q_quadratic(&frac(1, 2)), q_quadratic(&z(-2))],
        vec![quadratic(z(2), frac(-1, 3)), quadratic(zeta(3, 1), z(-5))],
        vec![q_quadratic(&zeta(3, 1))],
    ];
    let mut v = Vec::new();
    for m in 2..=12usize {
        let others: Vec<CycPoly> = (1..m as i64).map(|i| CycPoly::linear(&zeta(m as u32, i))).collect();
        for (pi, q) in [z(1), z(3), frac(-1, 2), zeta(3, 1)].into_iter().enumerate() {
            let p = others.iter().fold(CycPoly::linear(&q), |acc, f| acc.mul(f));
            v.push(HeckeCase {
                name: format!("cyclic Z/{m} #{pi}"),
                group: g(m, 1, 1),
                order: m,
                rbar: vec![p],
            });
        }
    }
    let mut coxeter = vec![
        ("A2".to_string(), g(3, 3, 2), 6),
        ("B2".into(), g(2, 1, 2), 8),
        ("A3".into(), g(1, 1, 4), 24),
        ("A1xA1".into(), g(2, 2, 2), 4),
        ("A1xA2".into(), product_group(&catalog(2, 1, 1).unwrap(), &catalog(3, 3, 2).unwrap()), 12),
        ("Z3xA1".into(), product_group(&catalog(3, 1, 1).unwrap(), &catalog(2, 1, 1).unwrap()), 6),
    ];
    for m in 3..=8 {
        coxeter.push((format!("I2({m})"), g(m, m, 2), 2 * m));
    }
    for (name, grp, order) in coxeter {
        for (pi, qs) in quads.iter().enumerate() {
            let norb = hyperplanes(&grp).unwrap().orbits().len();
            let rbar = (0..norb)
                .map(|o| {
                    let h = hyperplanes(&grp).unwrap();
                    let n = h.get(h.orbits()[o][0]).order;
                    if n == 2 {
                        qs[o % qs.len()].clone()
                    } else {
                        (1..n as i64).fold(CycPoly::linear(&z(2)), |acc, i| {
                            acc.mul(&CycPoly::linear(&zeta(n as u32, i)))
                        })
                    }
                })
                .collect();
            v.push(HeckeCase {
                name: format!("{name} #{pi}"),
                group: grp.clone(),
                order,
                rbar,
            });
        }
    }
    v
}

fn hecke_case(c: &HeckeCase) -> Result<(), String> {
    let tag = &c.name;
    let arr = hyperplanes(&c.group).unwrap();
    ensure(c.group.order() == c.order, || format!("{tag}: |W| = {}", c.group.order()))?;
    let orbit_index: BTreeMap<usize, usize> = arr
        .orbits()
        .iter()
        .enumerate()
        .flat_map(|(o, hs)| hs.iter().map(move |&h| (h, o)))
        .collect();
    let input: Vec<ReflectionInput> = arr
        .hyperplanes
        .iter()
        .enumerate()
        .map(|(a, h)| ReflectionInput {
            hyperplane: a,
            reflection: h.generator,
            normal: h.normal.clone(),
            rbar: c.rbar[orbit_index[&a]].clone(),
        })
        .collect();
    let h: HeckeAlgebra = build_hecke(&c.group, &input, Exec::Sequential).map_err(|e| format!("{tag}: {e}"))?;
    ensure(h.dim == c.order, || format!("{tag}: dim H = {} ≠ {}", h.dim, c.order))?;
    ensure(h.is_certified(), || format!("{tag}: uncertified"))?;
    for r in &input {
        let gen = h.generator(r.hyperplane).ok_or_else(|| format!("{tag}: no T_{}", r.hyperplane))?;
        ensure(gen.matrix.rows() == c.order, || format!("{tag}: T size"))?;
        ensure(gen.minpoly == r.rbar, || format!("{tag}: reported minpoly of T_{}", r.hyperplane))?;
        ensure(is_minpoly(&gen.matrix, &r.rbar), || format!("{tag}: R̄ is not the minpoly of T_{}", r.hyperplane))?;
    }
    // braid relations between simple generators, and commutation across factors
    for f in &h.factors {
        if let FactorKind::Coxeter { simple, coxeter_matrix } = &f.kind {
            for i in 0..simple.len() {
                for j in i + 1..simple.len() {
                    let (s, t) = (&h.generator(simple[i]).unwrap().matrix, &h.generator(simple[j]).unwrap().matrix);
                    let m = coxeter_matrix[i][j];
                    let alt = |a: &CycMatrix, b: &CycMatrix| {
                        (0..m).fold(CycMatrix::identity(c.order), |acc, k| acc.mul(if k % 2 == 0 { a } else { b }).unwrap())
                    };
                    ensure(alt(s, t) == alt(t, s), || format!("{tag}: braid relation {i},{j}"))?;
                }
            }
        }
    }
    for (i, f) in h.factors.iter().enumerate() {
        for g2 in &h.factors[i + 1..] {
            for &a in &f.hyperplanes {
                for &b in &g2.hyperplanes {
                    let (x, y) = (&h.generator(a).unwrap().matrix, &h.generator(b).unwrap().matrix);
                    ensure(x.mul(y).unwrap() == y.mul(x).unwrap(), || format!("{tag}: T_{a}, T_{b} commute"))?;
                }
            }
        }
    }
    Ok(())
}

fn criterion_4_hecke() -> Outcome {
    let cases = hecke_cases();
    let results = Exec::Rayon.map(&cases, hecke_case);
    let failures: Vec<String> = results.into_iter().filter_map(|r| r.err()).collect();
    ensure(failures.is_empty(), || format!("{} failures, first {}", failures.len(), failures[0]))?;
    Ok(format!("{} algebras", cases.len()))
}

fn criterion_5_theta() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..200 {
        let p = random_monic(&mut rng, 12, 8);
        let t = p.theta().map_err(|e| e.to_string())?;
        ensure(t == theta_by_hand(&p), || format!("#{i}: ϑ differs from the coefficient formula"))?;
        ensure(t.degree() == p.degree(), || format!("#{i}: degree"))?;
        ensure(t.theta().unwrap() == p, || format!("#{i}: ϑ² ≠ id"))?;
        let c = CycMatrix::companion(&p).unwrap();
        ensure(horner(&c.inverse().unwrap(), &t).is_zero(), || format!("#{i}: ϑR does not kill a^{{-1}}"))?;
    }
    Ok("200 polynomials over ℚ(ζ₁₂)".into())
}

fn criterion_6_module() -> Outcome {
    let (mut conj, mut braid, mut modules) = (0, 0, 0);
    for r in positive_runs() {
        let Some(module) = r.a.module.as_ref() else { continue };
        let e = &r.e;
        let tag = format!("{} {:?}", r.fixture.name, r.chi);
        let l = r.a.ledger.as_ref().unwrap();
        ensure(e.kernel.len() <= 12, || format!("{tag}: |I| = {}", e.kernel.len()))?;
        modules += 1;
        let rep = |g: &reflmono::extdata::FiberElement| module.rep_matrix(e, g).map_err(|x| format!("{tag}: {x}"));
        for &x in &e.kernel {
            let diag: Vec<CycNumber> = l
                .cosets
                .iter()
                .flat_map(|c| {
                    let v = act_value(e, label(e, l.convention, c), &r.chi, x).mul(RootOfUnity::sign(e.tau[x] >= 0));
                    std::iter::repeat_n(v.to_cyc().unwrap(), l.dim_m0)
                })
                .collect();
            ensure(rep(&e.inertia(x))? == CycMatrix::diagonal(&diag), || format!("{tag}: I-restriction at {x}"))?;
        }
        let t = &e.wtilde;
        for a in 0..e.hyperplane_count() {
            let s = e.lift_word(&[(a, 1)]);
            let ms = rep(&s)?;
            for &x in &e.kernel {
                let y = t.mul(t.mul(s.wt, x), t.inv(s.wt));
                let lhs = ms.mul(&rep(&e.inertia(x))?).unwrap();
                let rhs = rep(&e.inertia(y))?.mul(&ms).unwrap();
                ensure(lhs == rhs, || format!("{tag}: conjugation α = {a}, x = {x}"))?;
                conj += 1;
            }
        }
        let letter = |a: usize, sign: i8| -> Result<CycMatrix, String> {
            let s = e.lift_word(&[(a, 1)]);
            rep(&if sign > 0 { s.clone() } else { e.fiber_inv(&s) })
        };
        for [u, v] in &e.braid_relations {
            let eval = |w: &[(usize, i8)]| -> Result<CycMatrix, String> {
                let mut acc = CycMatrix::identity(module.dim());
                for &(a, sign) in w {
                    acc = acc.mul(&letter(a, sign)?).unwrap();
                }
                Ok(acc)
            };
            ensure(eval(u)? == eval(v)?, || format!("{tag}: braid pair {u:?} = {v:?}"))?;
            braid += 1;
        }
    }
    ensure(braid > 0 && conj > 0, || "nothing checked".into())?;
    Ok(format!("{modules} modules, {conj} conjugations, {braid} braid pairs"))
}

fn criterion_7_groups() -> Outcome {
    let mut groups = 0;
    let mut conj = 0;
    for m in 1..=6usize {
        for p in (1..=m).filter(|p| m % p == 0) {
            for r in 1..=3usize {
                let tag = format!("G({m},{p},{r})");
                let d = GroupDatum::catalog(m, p, r).map_err(|e| e.to_string())?;
                let g = d.build(DEFAULT_GROUP_CAP).map_err(|e| e.to_string())?;
                let fact: usize = (1..=r).product();
                let expected = m.pow(r as u32) * fact / p;
                ensure(g.order() == expected, || format!("{tag}: |W| = {} ≠ {expected}", g.order()))?;
                let arr = hyperplanes(&g).map_err(|e| e.to_string())?;
                let sum: usize = arr.hyperplanes.iter().map(|h| h.order - 1).sum();
                let brute = g.elements().iter().filter(|x| is_reflection(x)).count();
                let formula = m * r * (r - 1) / 2 + r * (m / p - 1);
                ensure(sum == brute && brute == formula, || {
                    format!("{tag}: Σ(n_α − 1) = {sum}, counted {brute}, formula {formula}")
                })?;
                ensure(arr.reflection_count() == brute, || format!("{tag}: reflection_count"))?;
                if g.order() <= 200 {
                    for w in 0..g.order() {
                        let mw = g.matrix(w);
                        let mwi = mw.inverse().unwrap();
                        for (a, h) in arr.hyperplanes.iter().enumerate() {
                            let b = arr.act(w, a);
                            let c = mw.mul(g.matrix(h.generator)).unwrap().mul(&mwi).unwrap();
                            ensure(g.find(&c) == Some(arr.get(b).generator), || {
                                format!("{tag}: w s_α w⁻¹ ≠ s_{{w·α}} at w = {w}, α = {a}")
                            })?;
                            // the covector of w·C_α is the α covector composed with w^{-1}
                            let row = CycMatrix::from_rows(vec![h.normal.clone()]).unwrap().mul(&mwi).unwrap();
                            let lead = row.row(0).iter().find(|x| !x.is_zero()).unwrap().inv().unwrap();
                            let scaled: Vec<CycNumber> = row.row(0).iter().map(|x| x * &lead).collect();
                            ensure(scaled == arr.get(b).normal, || format!("{tag}: w·C_α at w = {w}, α = {a}"))?;
                            conj += 1;
                        }
                    }
                }
                groups += 1;
            }
        }
    }
    Ok(format!("{groups} groups, {conj} conjugations"))
}

fn run_bin(args: &[String]) -> (Vec<u8>, i32) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn criterion_8_cli() -> Outcome {
    let dir = fixtures_dir();
    let entries = manifest();
    let mut negatives = BTreeSet::new();
    let mut warned_regime = false;
    for m in &entries {
        let mut args = vec![
            "analyze".to_string(),
            dir.join(&m.datum).display().to_string(),
            "--chi".into(),
            m.chi.clone(),
        ];
        if let Some(r) = &m.rbar {
            args.push("--rbar".into());
            args.push(dir.join(r).display().to_string());
        }
        let (a, ca) = run_bin(&args);
        let (b, cb) = run_bin(&args);
        ensure(a == b && ca == cb, || format!("{} {}: runs differ", m.name, m.chi))?;
        ensure(ca == m.expected_exit, || format!("{} {}: exit {ca}, expected {}", m.name, m.chi, m.expected_exit))?;
        let v: serde_json::Value = serde_json::from_slice(&a).map_err(|e| format!("{}: {e}", m.name))?;
        ensure(v["exit_code"] == ca, || format!("{}: report exit_code", m.name))?;
        if m.expected_exit != 0 {
            negatives.insert(m.expected_exit);
        }
        if ca == 0 && v["sections"]["m_chi"]["regime"] == "LedgerOnly" {
            warned_regime |= !v["warnings"].as_array().unwrap().is_empty();
        }
    }
    ensure(negatives == BTreeSet::from([2, 3, 4]), || format!("negative controls cover {negatives:?}"))?;
    ensure(warned_regime, || "no unsupported-regime run exited 0 with a warning".into())?;
    let usage = run_bin(&["selftest".into(), "no-such-scope".into()]).1;
    ensure(usage == 64, || format!("unknown selftest scope exits {usage}"))?;
    Ok(format!("{} runs twice, negative controls exit {negatives:?}", entries.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 8] = [
        ("1 corpus dimensions", 30, criterion_1_dimensions),
        ("2 block structure", 10, criterion_2_blocks),
        ("3 carousel sweep", 60, criterion_3_carousel),
        ("4 Hecke dimensions and minpolys", 60, criterion_4_hecke),
        ("5 ϑ involution", 5, criterion_5_theta),
        ("6 module identities", 30, criterion_6_module),
        ("7 G(m,p,r) orders, reflections, conjugation", 60, criterion_7_groups),
        ("8 deterministic reports and exit codes", 30, criterion_8_cli),
    ];
    let mut all = true;
    for (name, limit, f) in criteria {
        let t = Instant::now();
        let out = f();
        let dt = t.elapsed();
        let in_time = dt <= Duration::from_secs(limit);
        let ok = out.is_ok() && in_time;
        all &= ok;
        let detail = match &out {
            Ok(s) => s.clone(),
            Err(s) => s.clone(),
        };
        println!(
            "{} criterion {name}: {detail} [{:.2}s, limit {limit}s{}]",
            if ok { "PASS" } else { "FAIL" },
            dt.as_secs_f64(),
            if in_time { "" } else { ", over time" }
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
