//! Poset corpora: exhaustive enumeration, seeded random generation and
//! isomorphism classes.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poset::{build_poset, Edge, LabeledGraph, Poset};

/// Transitive reduction of an acyclic relation on `[n]` oriented by label.
pub fn transitive_reduction(n: usize, pairs: &[Edge]) -> Vec<Edge> {
    let g = LabeledGraph::new(n, pairs.iter().copied()).expect("pairs are oriented by label");
    g.goodify().0.edges().to_vec()
}

/// Every naturally labeled poset on `[n]`: element `k` is added above a
/// down-closed subset of `[k-1]`.
pub fn all_posets(n: usize) -> Vec<Poset> {
    let mut out = Vec::new();
    let mut below: Vec<u32> = vec![0; n + 1];
    grow(n, 1, &mut below, &mut out);
    out
}

fn grow(n: usize, k: usize, below: &mut [u32], out: &mut Vec<Poset>) {
    if k > n {
        let mut pairs = Vec::new();
        for j in 1..=n {
            for i in 1..j {
                if below[j] >> (i - 1) & 1 == 1 {
                    pairs.push((i, j));
                }
            }
        }
        out.push(build_poset(n, &transitive_reduction(n, &pairs)).unwrap());
        return;
    }
    for set in 0u32..(1 << (k - 1)) {
        // Down-closed: everything below a member is a member.
        let closed = (1..k).all(|i| set >> (i - 1) & 1 == 0 || below[i] & !set == 0);
        if closed {
            below[k] = set;
            grow(n, k + 1, below, out);
        }
    }
    below[k] = 0;
}

/// Connected naturally labeled posets with `1 <= n <= n_max`.
pub fn connected_posets(n_max: usize) -> Vec<Poset> {
    (1..=n_max)
        .flat_map(all_posets)
        .filter(Poset::is_connected)
        .collect()
}

/// Canonical form under relabeling, with a permutation realising it:
/// `perm[v]` is the canonical label of `v`.
pub fn canonical_form(p: &Poset) -> (Vec<Edge>, Vec<usize>) {
    let n = p.n();
    let lt = p.strict_order();
    let mut best: Option<(Vec<Edge>, Vec<usize>)> = None;
    let mut perm: Vec<usize> = (0..=n).collect();
    permute(1, n, &mut perm, &mut |perm| {
        let mut rel: Vec<Edge> = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if lt[i][j] {
                    rel.push((perm[i], perm[j]));
                }
            }
        }
        rel.sort_unstable();
        if best.as_ref().is_none_or(|(b, _)| rel < *b) {
            best = Some((rel, perm.to_vec()));
        }
    });
    best.unwrap()
}

fn permute(k: usize, n: usize, perm: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if k > n {
        f(perm);
        return;
    }
    for x in k..=n {
        perm.swap(k, x);
        permute(k + 1, n, perm, f);
        perm.swap(k, x);
    }
}

/// One representative (the first met) per isomorphism class.
pub fn isomorphism_classes(posets: &[Poset]) -> Vec<Poset> {
    let mut seen: BTreeMap<(usize, Vec<Edge>), ()> = BTreeMap::new();
    let mut out = Vec::new();
    for p in posets {
        if seen.insert((p.n(), canonical_form(p).0), ()).is_none() {
            out.push(p.clone());
        }
    }
    out
}

/// Seeded random connected posets with `1 <= n <= n_max`: every pair
/// `(i, j)` is a relation with probability 1/2, then reduced.
pub fn corpus_gen(seed: u64, n_max: usize, count: usize) -> Vec<Poset> {
    assert!(n_max >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(1..=n_max);
        let mut pairs = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                if rng.gen_bool(0.5) {
                    pairs.push((i, j));
                }
            }
        }
        let p = build_poset(n, &transitive_reduction(n, &pairs)).unwrap();
        if p.is_connected() {
            out.push(p);
        }
    }
    out
}
