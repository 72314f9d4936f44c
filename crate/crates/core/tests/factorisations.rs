use std::collections::BTreeSet;

use num_bigint::BigUint;
use pmscheme_core::factorisation::{antidesign, design_violations, dominance_consequences, splits_at, Verdict};
use pmscheme_core::feasibility::Rule;
use pmscheme_core::partition::odd_double_factorial;
use pmscheme_core::setpartition::set_partitions_of_shape;
use pmscheme_core::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn subsets_of(points: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, points: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=points {
            cur.push(v);
            go(v + 1, points, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, points, k, &mut Vec::new(), &mut out);
    out
}

fn agrees(members: &[Matching], lambda: &Partition, table: &ZonalTable) {
    let def = check_by_definition(members, lambda).unwrap().is_yes();
    let des = check_by_design(members, lambda, table).unwrap();
    assert_eq!(def, des, "{lambda:?} {members:?}");
}

#[test]
fn checkers_agree_on_every_subset_for_k6() {
    let t = zonal_table(3).unwrap();
    let all = all_matchings(3).unwrap();
    let mut yes = 0;
    for mask in 1u32..1 << all.len() {
        let z: Vec<Matching> = (0..all.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| all[i].clone())
            .collect();
        for lambda in partitions_of(3) {
            let def = check_by_definition(&z, &lambda).unwrap();
            assert_eq!(def.is_yes(), check_by_design(&z, &lambda, &t).unwrap());
            if lambda != Partition::single(3) && def.index() == Some(1) {
                yes += 1;
            }
        }
    }
    // six 1-factorisations of K6 and the full set for (1,1,1)
    assert_eq!(yes, 6 + 1);
}

#[test]
fn checkers_agree_on_constructions_and_perturbations() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for n in 3..=5 {
        let t = zonal_table(n).unwrap();
        let mut sets = vec![
            round_robin(n).unwrap().into_members(),
            full_set(n).unwrap().into_members(),
        ];
        if n == 5 {
            sets.push(hyperoval_factorisation(3).unwrap().into_members());
        }
        let all = all_matchings(n).unwrap();
        for base in sets.clone() {
            for i in 0..base.len().min(8) {
                let mut smaller = base.clone();
                smaller.remove(i);
                if !smaller.is_empty() {
                    sets.push(smaller);
                }
                let extra = all.iter().find(|m| !base.contains(m)).cloned();
                if let Some(m) = extra {
                    let mut bigger = base.clone();
                    bigger.push(m);
                    sets.push(bigger);
                }
            }
        }
        for _ in 0..30 {
            let k = rng.gen_range(1..=all.len().min(40));
            sets.push(all.choose_multiple(&mut rng, k).cloned().collect());
        }
        for z in &sets {
            for lambda in partitions_of(n) {
                agrees(z, &lambda, &t);
            }
        }
    }
}

#[test]
fn design_violations_name_the_failing_shapes() {
    let t = zonal_table(4).unwrap();
    let rr = round_robin(4).unwrap();
    assert!(design_violations(&rr, &p(&[3, 1]), &t).unwrap().is_empty());
    let bad = design_violations(&rr, &p(&[2, 2]), &t).unwrap();
    assert!(!bad.is_empty());
    assert!(bad
        .iter()
        .all(|mu| dominates(mu, &p(&[2, 2])).unwrap() && *mu != p(&[4])));
}

#[test]
fn factorisations_are_monotone_under_dominance() {
    let cases: Vec<(MatchingSet, Partition)> = vec![
        (round_robin(4).unwrap(), p(&[3, 1])),
        (hyperoval_factorisation(2).unwrap(), p(&[1, 1, 1])),
        (hyperoval_factorisation(3).unwrap(), p(&[3, 1, 1])),
        (agl11_factorisation(), p(&[4, 2])),
    ];
    for (d, lambda) in cases {
        let c = check_by_definition(&d, &lambda).unwrap().index().unwrap();
        for cons in dominance_consequences(&lambda, c) {
            assert!(!cons.is_contradiction());
            let got = check_by_definition(&d, &cons.mu).unwrap().index().unwrap();
            assert_eq!(ExactScalar::from_integer(got.into()), cons.index, "{:?}", cons.mu);
        }
        assert_eq!(expected_size(&lambda, c).unwrap(), BigUint::from(d.len()));
    }
}

#[test]
fn hyperoval_derivations() {
    let h = hyperoval_factorisation(3).unwrap();
    let mut sizes = BTreeSet::new();
    for s in subsets_of(10, 2) {
        let d = derive(&h, &s).unwrap();
        assert_eq!(d.len(), 7);
        assert_eq!(check_by_definition(&d, &p(&[3, 1])).unwrap().index(), Some(1));
        sizes.insert(d.len());
    }
    assert_eq!(sizes.len(), 1);
}

#[test]
fn agl_derivations() {
    let d = agl11_factorisation();
    let mut sizes = BTreeSet::new();
    for s in subsets_of(12, 4) {
        let ds = derive(&d, &s).unwrap();
        assert_eq!(check_by_definition(&ds, &p(&[4])).unwrap().index(), Some(1));
        sizes.insert(ds.len());
    }
    assert_eq!(sizes.into_iter().collect::<Vec<_>>(), vec![1]);
}

#[test]
fn derive_restricts_and_relabels() {
    let m = Matching::from_pairs(&[(1, 4), (2, 3), (5, 6)]).unwrap();
    let d = derive(std::slice::from_ref(&m), &[2, 3]).unwrap();
    assert_eq!(d, vec![Matching::from_pairs(&[(1, 2), (3, 4)]).unwrap()]);
    assert!(derive(std::slice::from_ref(&m), &[1, 2]).unwrap().is_empty());
    assert!(derive(std::slice::from_ref(&m), &[1, 2, 3]).is_err());
    let inside = [true, false, false, true, false, false];
    assert!(splits_at(&m, &inside));
}

#[test]
fn deleting_a_member_gives_a_zero_witness() {
    let d = agl11_factorisation();
    for m in d.iter().take(3) {
        let smaller = d.without(m);
        match check_by_definition(&smaller, &p(&[4, 2])).unwrap().verdict {
            Verdict::No { witness, count } => {
                assert!(count == 0 || count == 1);
                let refining = smaller.iter().filter(|x| x.refines(&witness.block_labels())).count() as u64;
                assert_eq!(refining, count);
            }
            Verdict::Yes { .. } => panic!("still a factorisation"),
        }
    }
    // some partition is refined only by the deleted member
    let m = &d.members()[0];
    let smaller = d.without(m);
    let zero = set_partitions_of_shape(12, &p(&[8, 4]))
        .unwrap()
        .find(|sp| m.refines(&sp.block_labels()))
        .unwrap();
    assert_eq!(smaller.iter().filter(|x| x.refines(&zero.block_labels())).count(), 0);
}

#[test]
fn constructions_pass_the_screen() {
    let cases: Vec<(MatchingSet, Partition)> = vec![
        (round_robin(3).unwrap(), p(&[2, 1])),
        (round_robin(5).unwrap(), p(&[4, 1])),
        (hyperoval_factorisation(3).unwrap(), p(&[3, 1, 1])),
        (agl11_factorisation(), p(&[4, 2])),
    ];
    for (d, lambda) in cases {
        let c = check_by_definition(&d, &lambda).unwrap().index().unwrap();
        assert!(feasibility_screen(&lambda, c).is_empty(), "{lambda:?}");
    }
    let full = full_set(4).unwrap();
    for lambda in partitions_of(4) {
        let c = check_by_definition(&full, &lambda).unwrap().index().unwrap();
        assert!(feasibility_screen(&lambda, c).is_empty());
    }
}

#[test]
fn screen_rejects_known_nonexistent() {
    assert!(feasibility_screen(&p(&[2, 2]), 1)
        .iter()
        .any(|v| v.rule == Rule::KnownNonexistent));
    assert!(!feasibility_screen(&p(&[2, 1, 1]), 1).is_empty());
    assert!(feasibility_screen(&p(&[4, 2, 1]), 1).is_empty());
    assert!(feasibility_screen(&p(&[5, 1, 1]), 1).is_empty());
    assert!(matches!(expected_size(&p(&[2, 2]), 2), Err(Error::NonIntegral)));
}

#[test]
fn large_hyperoval() {
    let h = hyperoval_factorisation(4).unwrap();
    assert_eq!((h.len(), h.n()), (255, 9));
    assert_eq!(check_by_definition(&h, &p(&[7, 1, 1])).unwrap().index(), Some(1));
    assert_eq!(hyperoval_factorisation(2).unwrap(), full_set(3).unwrap());
}

#[test]
fn round_robin_sizes() {
    for n in 3..=6 {
        let rr = round_robin(n).unwrap();
        let lambda = p(&[n - 1, 1]);
        assert_eq!(check_by_definition(&rr, &lambda).unwrap().index(), Some(1));
        assert_eq!(expected_size(&lambda, 1).unwrap(), BigUint::from(2 * n - 1));
    }
}

#[test]
fn antidesign_sizes() {
    for n in 2..=5 {
        for lambda in partitions_of(n) {
            let sp = set_partitions_of_shape(2 * n, &lambda.doubled())
                .unwrap()
                .next()
                .unwrap();
            let a = antidesign(&sp);
            let want: BigUint = lambda.parts().iter().map(|&x| odd_double_factorial(x)).product();
            assert_eq!(BigUint::from(a.len()), want);
            assert!(a.iter().all(|m| m.refines(&sp.block_labels())));
        }
    }
}
