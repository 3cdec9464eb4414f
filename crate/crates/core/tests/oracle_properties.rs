use std::collections::HashSet;

use hurwitz_core::oracle::SearchOutcome;
use hurwitz_core::{
    count_classes, cross_check, is_transitive, product, search_exists, CycleType, Permutation, Profile,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn sym(d: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<usize>, d: usize, out: &mut Vec<Permutation>) {
        if prefix.len() == d {
            out.push(Permutation::from_images(prefix).unwrap());
            return;
        }
        for p in 1..=d {
            if !prefix.contains(&p) {
                prefix.push(p);
                rec(prefix, d, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), d, &mut out);
    out
}

fn partitions(d: usize) -> Vec<CycleType> {
    fn rec(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            prefix.push(k);
            rec(rest - k, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, &mut Vec::new(), &mut out);
    out.into_iter().map(|p| CycleType::new(p).unwrap()).collect()
}

fn profiles(d: usize, n: usize) -> Vec<Profile> {
    let parts = partitions(d);
    let mut out: Vec<Vec<CycleType>> = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                parts.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(|ps| Profile::new(d, ps).unwrap()).collect()
}

fn accepted(tuple: &[Permutation], profile: &Profile) -> bool {
    let d = profile.degree();
    tuple.len() == profile.n()
        && tuple.iter().zip(profile.partitions()).all(|(s, t)| &s.cycle_type() == t)
        && product(tuple, d).unwrap().is_identity()
        && is_transitive(tuple, d).unwrap()
}

/// Every accepted tuple, with no position fixed.
fn full_enumeration(profile: &Profile) -> Vec<Vec<Permutation>> {
    let d = profile.degree();
    let group = sym(d);
    let mut tuples: Vec<Vec<Permutation>> = vec![vec![]];
    for t in &profile.partitions()[..profile.n() - 1] {
        let class: Vec<&Permutation> = group.iter().filter(|p| &p.cycle_type() == t).collect();
        tuples = tuples
            .into_iter()
            .flat_map(|prefix| {
                class.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push((*p).clone());
                    v
                })
            })
            .collect();
    }
    tuples
        .into_iter()
        .filter_map(|mut t| {
            t.push(product(&t, d).unwrap().inverse());
            accepted(&t, profile).then_some(t)
        })
        .collect()
}

#[test]
fn oracle_agrees_with_riemann_hurwitz_for_single_cycles() {
    for d in 2..=5 {
        for n in 1..=4 {
            for p in profiles(d, n) {
                let Some(orders) = p
                    .partitions()
                    .iter()
                    .map(|t| (t.parts()[1..].iter().all(|&x| x == 1) && t.parts()[0] >= 2).then(|| t.parts()[0]))
                    .collect::<Option<Vec<_>>>()
                else {
                    continue;
                };
                assert!(cross_check(d, &orders).unwrap(), "d = {d}, orders {orders:?}");
            }
        }
    }
}

#[test]
fn conjugated_witnesses_are_accepted() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in 2..=5 {
        let group = sym(d);
        for p in profiles(d, 3) {
            let out = search_exists(&p, true).unwrap();
            let Some(w) = out.witness else { continue };
            assert!(accepted(&w, &p));
            let tau = group.choose(&mut rng).unwrap();
            let conj: Vec<Permutation> = w.iter().map(|s| s.conjugate_by(tau).unwrap()).collect();
            assert!(accepted(&conj, &p), "profile {p}");
        }
    }
}

#[test]
fn two_by_two_products_never_reach_a_three_cycle() {
    for n in 3..=6 {
        let mut parts = vec![CycleType::new(vec![2, 2]).unwrap(); n - 1];
        parts.push(CycleType::new(vec![3, 1]).unwrap());
        let p = Profile::new(4, parts).unwrap();
        let out = search_exists(&p, true).unwrap();
        assert!(!out.exists);
        assert_eq!(out.raw_tuple_count, 0);
    }
}

#[test]
fn fixed_first_counts_match_full_enumeration() {
    for d in 1..=4 {
        for n in 1..=3 {
            for p in profiles(d, n) {
                let full = full_enumeration(&p);
                let out = count_classes(&p).unwrap();
                assert_eq!(out.raw_tuple_count, full.len() as u128, "profile {p}");
                assert_eq!(out.exists, !full.is_empty());

                let group = sym(d);
                let canonical: HashSet<Vec<Permutation>> = full
                    .iter()
                    .map(|t| {
                        group
                            .iter()
                            .map(|tau| t.iter().map(|s| s.conjugate_by(tau).unwrap()).collect::<Vec<_>>())
                            .min()
                            .unwrap()
                    })
                    .collect();
                assert_eq!(out.class_count, Some(canonical.len() as u128), "profile {p}");
            }
        }
    }
}

fn run_in_pool(threads: usize, p: &Profile) -> (SearchOutcome, SearchOutcome) {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    pool.install(|| (search_exists(p, true).unwrap(), count_classes(p).unwrap()))
}

#[test]
fn results_do_not_depend_on_worker_count() {
    for text in ["[3,1,1];[2,2,1];[5];[3,1,1]", "[2,1,1,1];[2,1,1,1];[3,2];[3,1,1];[2,1,1,1]"] {
        let p = Profile::parse(5, text).unwrap();
        let single = run_in_pool(1, &p);
        let many = run_in_pool(4, &p);
        assert_eq!(single, many);
        assert!(single.0.exists);
    }
}
