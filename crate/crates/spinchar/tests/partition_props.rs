//! Exhaustive and randomized checks of hook/bar combinatorics against
//! independent oracles (Young-diagram rim hooks, full removal-sequence search).

use std::collections::{BTreeSet, HashMap};

use proptest::prelude::*;
use spinchar::partitions::*;

/// Rim-hook removal read directly off the Young diagram.
fn rim_hook_oracle(lam: &Partition, q: usize) -> BTreeSet<(Partition, usize)> {
    let parts = lam.parts();
    let conj = lam.conjugate();
    let cols = conj.parts();
    let mut out = BTreeSet::new();
    for i in 0..parts.len() {
        for j in 0..parts[i] {
            let arm = parts[i] - j - 1;
            let leg = cols[j] - i - 1;
            if arm + leg + 1 != q {
                continue;
            }
            let mut v = parts.to_vec();
            for r in i..i + leg {
                v[r] = parts[r + 1] - 1;
            }
            v[i + leg] = j;
            out.insert((Partition::new(v), leg));
        }
    }
    out
}

/// Every (core, sign) reachable by some complete removal sequence.
fn all_ends<F>(lam: &Partition, step: &F, memo: &mut HashMap<Partition, BTreeSet<(Partition, i32)>>) -> BTreeSet<(Partition, i32)>
where
    F: Fn(&Partition) -> Vec<(Partition, usize)>,
{
    if let Some(r) = memo.get(lam) {
        return r.clone();
    }
    let moves = step(lam);
    let mut out = BTreeSet::new();
    if moves.is_empty() {
        out.insert((lam.clone(), 1));
    }
    for (mu, l) in moves {
        let s = if l % 2 == 0 { 1 } else { -1 };
        for (c, t) in all_ends(&mu, step, memo) {
            out.insert((c, s * t));
        }
    }
    memo.insert(lam.clone(), out.clone());
    out
}

#[test]
fn hook_removal_matches_young_diagram_oracle() {
    for n in 0..=12 {
        for lam in partitions(n) {
            for q in 1..=n.max(1) {
                let got: BTreeSet<_> = remove_q_hooks(&lam, q).into_iter().collect();
                assert_eq!(got, rim_hook_oracle(&lam, q), "λ = {lam}, q = {q}");
            }
        }
    }
}

#[test]
fn leg_length_identities_hold_exhaustively() {
    for q in [2usize, 3, 5] {
        for n in 0..=14 {
            for lam in partitions(n) {
                let d = delta_hook(&lam, q);
                for (mu, l) in remove_q_hooks(&lam, q) {
                    let s = if l % 2 == 0 { 1 } else { -1 };
                    assert_eq!(s, d * delta_hook(&mu, q), "hook λ = {lam}, q = {q}");
                }
            }
        }
    }
    for q in [1usize, 3, 5, 7] {
        for n in 0..=18 {
            for lam in strict_partitions(n) {
                let d = delta_bar(&lam, q).unwrap();
                for (mu, l) in remove_q_bars(&lam, q).unwrap() {
                    let s = if l % 2 == 0 { 1 } else { -1 };
                    assert_eq!(s, d * delta_bar(&mu, q).unwrap(), "bar λ = {lam}, q = {q}");
                }
            }
        }
    }
}

#[test]
fn bar_cores_and_signs_are_sequence_independent() {
    for q in [3usize, 5, 7] {
        let step = |l: &Partition| remove_q_bars(l, q).unwrap();
        let mut memo = HashMap::new();
        for n in 0..=20 {
            for lam in strict_partitions(n) {
                let ends = all_ends(&lam, &step, &mut memo);
                assert_eq!(ends.len(), 1, "λ = {lam}, q = {q}: {ends:?}");
                let (core, sign) = ends.into_iter().next().unwrap();
                let cq = bar_core_quotient(&lam, q).unwrap();
                assert_eq!(cq.core, core, "λ = {lam}, q = {q}");
                assert_eq!(cq.sign, sign, "λ = {lam}, q = {q}");
            }
        }
    }
}

#[test]
fn hook_cores_are_sequence_independent() {
    for q in [2usize, 3, 5] {
        let step = |l: &Partition| remove_q_hooks(l, q);
        let mut memo = HashMap::new();
        for n in 0..=14 {
            for lam in partitions(n) {
                let ends = all_ends(&lam, &step, &mut memo);
                assert_eq!(ends.len(), 1, "λ = {lam}, q = {q}");
                let (core, sign) = ends.into_iter().next().unwrap();
                let cq = core_quotient(&lam, q);
                assert_eq!((cq.core.clone(), cq.sign), (core, sign), "λ = {lam}, q = {q}");
                assert_eq!(lam.size(), cq.core.size() + q * cq.weight);
                assert_eq!(cq.weight, cq.quotient.size());
            }
        }
    }
}

#[test]
fn all_odd_distinct_partitions_are_even_type() {
    for n in 0..=20 {
        for lam in strict_partitions(n) {
            if lam.all_odd() {
                assert_eq!(lam.sigma(), 1, "λ = {lam}");
            }
        }
    }
}

#[test]
fn sigma_is_preserved_by_bar_quotient_over_even_cores() {
    for p in [3usize, 5, 7] {
        for n in 0..=16 {
            for lam in strict_partitions(n) {
                let cq = bar_core_quotient(&lam, p).unwrap();
                if cq.core.sigma() == 1 {
                    assert_eq!(lam.sigma(), cq.quotient.sigma(), "λ = {lam}, p = {p}");
                }
            }
        }
    }
}

#[test]
fn bar_quotient_counts_match_labels() {
    // Strict partitions with a fixed core and weight w are in bijection with Δ_w.
    for p in [3usize, 5] {
        for n in 0..=14 {
            let mut by_core: HashMap<Partition, Vec<MultiPartition>> = HashMap::new();
            for lam in strict_partitions(n) {
                let cq = bar_core_quotient(&lam, p).unwrap();
                by_core.entry(cq.core).or_default().push(cq.quotient);
            }
            for (core, quots) in by_core {
                let w = (n - core.size()) / p;
                let set: BTreeSet<_> = quots.iter().cloned().collect();
                assert_eq!(set.len(), quots.len());
                let expected: BTreeSet<_> = wreath_labels(w, p).into_iter().collect();
                assert_eq!(set, expected, "core {core}, p = {p}");
            }
        }
    }
}

fn strict_partition() -> impl Strategy<Value = Partition> {
    prop::collection::btree_set(1usize..=12, 0..6)
        .prop_map(|s| Partition::new(s.into_iter().collect()))
}

proptest! {
    #[test]
    fn bar_core_quotient_round_trips(lam in strict_partition(), p in prop::sample::select(vec![3usize, 5, 7])) {
        let cq = bar_core_quotient(&lam, p).unwrap();
        prop_assert_eq!(lam.size(), cq.core.size() + p * cq.weight);
        prop_assert_eq!(cq.weight, cq.quotient.size());
        let back = from_bar_core_quotient(&cq.core, &cq.quotient, p).unwrap();
        prop_assert_eq!(back, lam);
    }

    #[test]
    fn bar_cores_are_order_independent(lam in strict_partition(), p in prop::sample::select(vec![3usize, 5])) {
        let step = |l: &Partition| remove_q_bars(l, p).unwrap();
        let ends = all_ends(&lam, &step, &mut HashMap::new());
        prop_assert_eq!(ends.len(), 1);
    }
}
