//! Posets, labeled graphs, skew diagrams, planar embeddings and notches.

mod embedding;
mod graph;
mod notch;
mod skew;

pub use embedding::{
    biconnected_components, bounded_regions, is_cactus, parse_rational, require_two_chains, Coord,
    PlanarEmbedding, Region,
};
pub(crate) use graph::UnionFind;
pub use graph::{parse_edge_list, Edge, LabeledGraph};
pub use notch::{close_notch, find_notches, ClosedNotch, Notch, NotchShape};
pub use skew::{lattice_paths, skew_to_poset, Cell, SkewDiagram};

use crate::error::{GreeneError, Result};

/// Naturally labeled finite poset on `[n]`, stored by its cover relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    covers: Vec<Edge>,
}

/// Validates the cover list: natural labels, acyclic, irredundant.
pub fn build_poset(n: usize, covers: &[Edge]) -> Result<Poset> {
    for &(i, j) in covers {
        for v in [i, j] {
            if v == 0 || v > n {
                return Err(GreeneError::OutOfRange(v, n));
            }
        }
    }
    if has_cycle(n, covers) {
        return Err(GreeneError::CycleDetected);
    }
    if let Some(&(i, j)) = covers.iter().find(|(i, j)| i > j) {
        return Err(GreeneError::NotNaturallyLabeled(i, j));
    }
    let mut sorted = covers.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(GreeneError::RedundantCover(w[0].0, w[0].1));
    }
    let g = LabeledGraph::from_sorted(n, sorted.clone());
    if let Some(&e) = g.goodify().1.first() {
        return Err(GreeneError::RedundantCover(e.0, e.1));
    }
    Ok(Poset { n, covers: sorted })
}

fn has_cycle(n: usize, arcs: &[Edge]) -> bool {
    // Kahn's algorithm on arbitrary orientation.
    let mut indeg = vec![0usize; n + 1];
    let mut succ = vec![Vec::new(); n + 1];
    for &(i, j) in arcs {
        if i == j {
            return true;
        }
        succ[i].push(j);
        indeg[j] += 1;
    }
    let mut stack: Vec<usize> = (1..=n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &w in &succ[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    seen < n
}

impl Poset {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn covers(&self) -> &[Edge] {
        &self.covers
    }

    pub fn covers_pair(&self, i: usize, j: usize) -> bool {
        self.covers.binary_search(&(i, j)).is_ok()
    }

    /// The Hasse diagram `H(P)`.
    pub fn hasse(&self) -> LabeledGraph {
        LabeledGraph::from_sorted(self.n, self.covers.clone())
    }

    /// `lt[i][j]` iff `i <_P j`.
    pub fn strict_order(&self) -> Vec<Vec<bool>> {
        self.hasse().reachability()
    }

    pub fn is_connected(&self) -> bool {
        self.hasse().is_connected()
    }

    /// Every order-preserving listing of `[n]`, in lexicographic order.
    pub fn linear_extensions(&self) -> Vec<Vec<usize>> {
        let mut preds = vec![0usize; self.n + 1];
        let mut succ = vec![Vec::new(); self.n + 1];
        for &(i, j) in &self.covers {
            preds[j] += 1;
            succ[i].push(j);
        }
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.n);
        let mut used = vec![false; self.n + 1];
        extend(self.n, &succ, &mut preds, &mut used, &mut prefix, &mut out);
        out
    }

    /// Minimal elements, ascending.
    pub fn minimal(&self) -> Vec<usize> {
        let mut has_below = vec![false; self.n + 1];
        for &(_, j) in &self.covers {
            has_below[j] = true;
        }
        (1..=self.n).filter(|&v| !has_below[v]).collect()
    }

    /// The order dual on the same labels, relabelled by `v -> n + 1 - v`
    /// so it stays natural.
    pub fn dual(&self) -> Poset {
        let m = self.n + 1;
        let covers: Vec<Edge> = self.covers.iter().map(|&(i, j)| (m - j, m - i)).collect();
        build_poset(self.n, &covers).expect("the dual of a valid poset is valid")
    }
}

fn extend(
    n: usize,
    succ: &[Vec<usize>],
    preds: &mut [usize],
    used: &mut [bool],
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    for v in 1..=n {
        if used[v] || preds[v] > 0 {
            continue;
        }
        used[v] = true;
        prefix.push(v);
        for &w in &succ[v] {
            preds[w] -= 1;
        }
        extend(n, succ, preds, used, prefix, out);
        for &w in &succ[v] {
            preds[w] += 1;
        }
        prefix.pop();
        used[v] = false;
    }
}

/// A few small posets used throughout tests and documentation.
pub mod named {
    use super::{build_poset, Poset};

    pub fn chain(n: usize) -> Poset {
        let covers: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        build_poset(n, &covers).unwrap()
    }

    pub fn antichain(n: usize) -> Poset {
        build_poset(n, &[]).unwrap()
    }

    pub fn diamond() -> Poset {
        build_poset(4, &[(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap()
    }

    pub fn k22() -> Poset {
        build_poset(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]).unwrap()
    }

    pub fn vee() -> Poset {
        build_poset(3, &[(1, 2), (1, 3)]).unwrap()
    }

    pub fn wedge() -> Poset {
        build_poset(3, &[(1, 3), (2, 3)]).unwrap()
    }

    /// Two chains `a_0 < ... < a_k` and `b_0 < ... < b_k` with rungs
    /// `a_i < b_i`; labels follow height so `a_i = 2i+1`, `b_i = 2i+2`.
    /// Each of the `k` squares bounds one region.
    pub fn ladder(k: usize) -> Poset {
        let mut covers = Vec::new();
        for i in 0..=k {
            let a = 2 * i + 1;
            covers.push((a, a + 1));
            if i < k {
                covers.push((a, a + 2));
                covers.push((a + 1, a + 3));
            }
        }
        build_poset(2 * k + 2, &covers).unwrap()
    }

    /// `k` diamonds glued top-to-bottom: `3k + 1` elements.
    pub fn diamond_stack(k: usize) -> Poset {
        let mut covers = Vec::new();
        for c in 0..k {
            let b = 3 * c + 1;
            covers.extend([(b, b + 1), (b, b + 2), (b + 1, b + 3), (b + 2, b + 3)]);
        }
        build_poset(3 * k + 1, &covers).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    #[test]
    fn build_poset_errors() {
        assert!(build_poset(4, &[(1, 2), (1, 3), (2, 4), (3, 4)]).is_ok());
        assert_eq!(
            build_poset(2, &[(2, 1)]),
            Err(GreeneError::NotNaturallyLabeled(2, 1))
        );
        assert_eq!(
            build_poset(3, &[(1, 2), (2, 3), (1, 3)]),
            Err(GreeneError::RedundantCover(1, 3))
        );
        assert_eq!(
            build_poset(2, &[(1, 2), (2, 1)]),
            Err(GreeneError::CycleDetected)
        );
        assert_eq!(
            build_poset(2, &[(1, 5)]),
            Err(GreeneError::OutOfRange(5, 2))
        );
    }

    #[test]
    fn linear_extension_examples() {
        assert_eq!(chain(3).linear_extensions(), vec![vec![1, 2, 3]]);
        assert_eq!(
            diamond().linear_extensions(),
            vec![vec![1, 2, 3, 4], vec![1, 3, 2, 4]]
        );
        assert_eq!(
            antichain(2).linear_extensions(),
            vec![vec![1, 2], vec![2, 1]]
        );
    }

    #[test]
    fn families_have_expected_shape() {
        let l = ladder(2);
        assert_eq!(l.n(), 6);
        assert_eq!(l.covers().len(), 7);
        assert_eq!(diamond_stack(2).n(), 7);
        assert_eq!(diamond().dual(), diamond());
        assert_eq!(vee().dual(), wedge());
    }
}
