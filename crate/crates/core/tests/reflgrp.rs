use reflmono::cyclo::{CycMatrix, CycNumber};
use reflmono::reflgrp::*;

fn group(m: usize, p: usize, r: usize) -> ReflectionGroup {
    enumerate(&catalog(m, p, r).unwrap(), DEFAULT_GROUP_CAP).unwrap()
}

/// Independent count of G(m,p,r): monomial matrices with m-th root entries
/// whose product of entries is an (m/p)-th root of unity, counted as
/// (permutations) × (exponent vectors with sum ≡ 0 mod p).
fn monomial_count(m: usize, p: usize, r: usize) -> usize {
    let perms: usize = (1..=r).product();
    let mut vecs = 0;
    let mut e = vec![0usize; r];
    loop {
        if e.iter().sum::<usize>() % p == 0 {
            vecs += 1;
        }
        let mut i = 0;
        loop {
            if i == r {
                return perms * vecs;
            }
            e[i] += 1;
            if e[i] < m {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn catalog_orders_match_formula() {
    for m in 1..=6 {
        for p in (1..=m).filter(|p| m % p == 0) {
            for r in 1..=3 {
                let g = group(m, p, r);
                assert_eq!(g.order(), catalog_order(m, p, r), "G({m},{p},{r})");
                assert_eq!(g.order(), monomial_count(m, p, r), "G({m},{p},{r})");
            }
        }
    }
    assert!(catalog(4, 3, 2).is_err());
    assert_eq!(group(4, 2, 2).order(), 16);
    assert_eq!(group(2, 1, 2).order(), 8);
}

#[test]
fn arrangement_examples() {
    let z5 = hyperplanes(&group(5, 1, 1)).unwrap();
    assert_eq!(z5.len(), 1);
    assert_eq!(z5.get(0).order, 5);

    // S3 on its 2-dimensional reflection representation G(3,3,2)
    let s3 = group(3, 3, 2);
    let a = hyperplanes(&s3).unwrap();
    assert_eq!(s3.order(), 6);
    assert_eq!(a.len(), 3);
    assert!(a.hyperplanes.iter().all(|h| h.order == 2));
    assert_eq!(a.orbits().len(), 1);

    let b2 = group(2, 1, 2);
    let a = hyperplanes(&b2).unwrap();
    assert_eq!(a.len(), 4);
    assert!(a.hyperplanes.iter().all(|h| h.order == 2));
    let mut sizes: Vec<usize> = a.orbits().iter().map(Vec::len).collect();
    sizes.sort();
    assert_eq!(sizes, vec![2, 2]);

    let g312 = group(3, 1, 2);
    let a = hyperplanes(&g312).unwrap();
    let mut orders: Vec<usize> = a.hyperplanes.iter().map(|h| h.order).collect();
    orders.sort();
    assert_eq!(orders, vec![2, 2, 2, 3, 3]);
}

/// Reflections counted directly from matrices: rank(M − 1) = 1.
fn brute_reflection_count(g: &ReflectionGroup) -> usize {
    (1..g.order())
        .filter(|&a| {
            let d = g.matrix(a).sub(&CycMatrix::identity(g.rank())).unwrap();
            d.rank().unwrap() == 1
        })
        .count()
}

#[test]
fn reflections_and_conjugation() {
    for m in 1..=6 {
        for p in (1..=m).filter(|p| m % p == 0) {
            for r in 1..=3 {
                let g = group(m, p, r);
                let a = hyperplanes(&g).unwrap();
                let sum: usize = a.hyperplanes.iter().map(|h| h.order - 1).sum();
                assert_eq!(sum, a.reflection_count());
                if g.order() <= 200 {
                    assert_eq!(sum, brute_reflection_count(&g));
                }
                for (i, h) in a.hyperplanes.iter().enumerate() {
                    assert_eq!(g.pow(h.generator, h.order as i64), 0);
                    assert_eq!(g.element_order(h.generator), h.order);
                    let ev = reflection_eigenvalue(&g, h.generator);
                    assert_eq!(ev, CycNumber::zeta(h.order as u32, 1).unwrap());
                    if g.order() <= 200 {
                        for w in 0..g.order() {
                            let j = a.act(w, i);
                            assert_eq!(g.conjugate(w, h.generator), a.get(j).generator);
                            assert_eq!(a.get(j).orbit, h.orbit);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn class_sizes_sum_to_order() {
    for (m, p, r) in [(3, 3, 2), (2, 1, 2), (3, 1, 2), (1, 1, 4), (4, 2, 3)] {
        let g = group(m, p, r);
        let classes = conjugacy_classes(&g);
        assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), g.order());
        for c in &classes {
            assert_eq!(g.order() % c.len(), 0);
        }
    }
}

#[test]
fn table_matches_matrix_products() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for (m, p, r) in [(4, 2, 3), (6, 1, 3), (1, 1, 4)] {
        let g = group(m, p, r);
        for _ in 0..100 {
            let a = rng.gen_range(0..g.order());
            let b = rng.gen_range(0..g.order());
            let ab = g.matrix(a).mul(g.matrix(b)).unwrap();
            assert_eq!(g.find(&ab), Some(g.mul(a, b)));
        }
    }
}

#[test]
fn subgroups_and_cosets() {
    let s3 = group(3, 3, 2);
    let a = hyperplanes(&s3).unwrap();
    assert_eq!(subgroup_generated(&s3, &[]), vec![0]);
    let all: Vec<usize> = a.hyperplanes.iter().map(|h| h.generator).collect();
    assert_eq!(subgroup_generated(&s3, &all).len(), 6);

    let h = subgroup_generated(&s3, &[all[0]]);
    assert_eq!(h.len(), 2);
    let c = left_cosets(&s3, &h).unwrap();
    assert_eq!(c.len(), 3);
    for (i, &rep) in c.reps.iter().enumerate() {
        assert_eq!(c.coset_of[rep], i);
        assert!((0..6).filter(|&w| c.coset_of[w] == i).all(|w| w >= rep));
    }
    assert_eq!(left_cosets(&s3, &(0..6).collect::<Vec<_>>()).unwrap().len(), 1);
    assert_eq!(left_cosets(&s3, &[0]).unwrap().len(), 6);
    let mut not_closed = vec![0, all[0], all[1]];
    not_closed.sort();
    assert!(!is_subgroup(&s3, &not_closed));
    assert!(left_cosets(&s3, &not_closed).is_err());

    let b2 = group(2, 1, 2);
    let a = hyperplanes(&b2).unwrap();
    assert_eq!(subgroup_generated(&b2, &[a.get(0).generator]).len(), 2);
}

#[test]
fn group_datum_roundtrip() {
    let d = GroupDatum::catalog(3, 1, 2).unwrap();
    let s = serde_json::to_string(&d).unwrap();
    let back: GroupDatum = serde_json::from_str(&s).unwrap();
    assert_eq!(back.build(1000).unwrap().order(), 18);
    assert_eq!(back.cyclotomic_order, 3);
}
