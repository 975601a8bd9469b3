use std::collections::BTreeSet;
use std::fmt;

use crate::error::{GreeneError, Result};

/// Edge `(i, j)` with `i < j`, oriented from the smaller label.
pub type Edge = (usize, usize);

/// Graph on `[n]` whose edges are oriented by label.
///
/// The edge list is kept sorted. Repeated edges are allowed so that the
/// rewriting engine can represent transient multigraphs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl LabeledGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut list = Vec::new();
        for (i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(GreeneError::OutOfRange(v, n));
                }
            }
            if i == j {
                return Err(GreeneError::CycleDetected);
            }
            if i > j {
                return Err(GreeneError::NotNaturallyLabeled(i, j));
            }
            list.push((i, j));
        }
        list.sort_unstable();
        Ok(LabeledGraph { n, edges: list })
    }

    /// Builds from edges already known to satisfy `1 <= i < j <= n`.
    pub(crate) fn from_sorted(n: usize, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        debug_assert!(edges.iter().all(|&(i, j)| 1 <= i && i < j && j <= n));
        LabeledGraph { n, edges }
    }

    pub fn empty(n: usize) -> Self {
        LabeledGraph {
            n,
            edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn is_simple(&self) -> bool {
        self.edges.windows(2).all(|w| w[0] != w[1])
    }

    /// No pair `(i,j), (j,k)` with `i < j < k`.
    pub fn is_alternating(&self) -> bool {
        let mut has_in = vec![false; self.n + 1];
        let mut has_out = vec![false; self.n + 1];
        for &(i, j) in &self.edges {
            has_out[i] = true;
            has_in[j] = true;
        }
        (1..=self.n).all(|v| !(has_in[v] && has_out[v]))
    }

    /// All pivots `(i, j, k)` such that `(i,j)` and `(j,k)` are edges.
    pub fn pivots(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        let simple: BTreeSet<Edge> = self.edges.iter().copied().collect();
        for &(i, j) in &simple {
            for &(j2, k) in simple.range((j, 0)..(j + 1, 0)) {
                debug_assert_eq!(j2, j);
                out.push((i, j, k));
            }
        }
        out
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.n + 1];
        for &(i, j) in &self.edges {
            succ[i].push(j);
        }
        succ
    }

    /// `reach[i][j]` iff an increasing path of length >= 1 leads from i to j.
    pub(crate) fn reachability(&self) -> Vec<Vec<bool>> {
        let succ = self.successors();
        let mut reach = vec![vec![false; self.n + 1]; self.n + 1];
        // Labels increase along edges, so process vertices from the top.
        for i in (1..=self.n).rev() {
            for &j in &succ[i] {
                reach[i][j] = true;
                for k in j + 1..=self.n {
                    if reach[j][k] {
                        reach[i][k] = true;
                    }
                }
            }
        }
        reach
    }

    /// Edge `(i,j)` for every increasing path from i to j.
    pub fn transitive_closure(&self) -> LabeledGraph {
        let reach = self.reachability();
        let mut edges = Vec::new();
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                if reach[i][j] {
                    edges.push((i, j));
                }
            }
        }
        LabeledGraph { n: self.n, edges }
    }

    /// The good graph `g(G)` with the same root cone: repeated edges are
    /// merged and every edge with an alternative increasing path is dropped.
    /// Returns the dropped edges (one entry per dropped edge, merges not
    /// counted).
    pub fn goodify(&self) -> (LabeledGraph, Vec<Edge>) {
        let simple: Vec<Edge> = {
            let mut e = self.edges.clone();
            e.dedup();
            e
        };
        let g = LabeledGraph {
            n: self.n,
            edges: simple,
        };
        let reach = g.reachability();
        let succ = g.successors();
        let mut kept = Vec::new();
        let mut removed = Vec::new();
        for &(i, j) in &g.edges {
            let dominated = succ[i].iter().any(|&m| m != j && m < j && reach[m][j]);
            if dominated {
                removed.push((i, j));
            } else {
                kept.push((i, j));
            }
        }
        (
            LabeledGraph {
                n: self.n,
                edges: kept,
            },
            removed,
        )
    }

    pub fn is_good(&self) -> bool {
        self.is_simple() && self.goodify().1.is_empty()
    }

    /// Connected-component id per vertex (index 0 unused); ids are dense
    /// and assigned in order of smallest vertex.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.n + 1);
        for &(i, j) in &self.edges {
            uf.union(i, j);
        }
        let mut id = vec![usize::MAX; self.n + 1];
        let mut root_id = vec![usize::MAX; self.n + 1];
        let mut count = 0;
        for v in 1..=self.n {
            let r = uf.find(v);
            if root_id[r] == usize::MAX {
                root_id[r] = count;
                count += 1;
            }
            id[v] = root_id[r];
        }
        (id, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// Dimension of the root cone: `n` minus the number of components.
    pub fn rank(&self) -> usize {
        self.n - self.components().1
    }

    /// Acyclic as an undirected multigraph.
    pub fn is_forest(&self) -> bool {
        let mut uf = UnionFind::new(self.n + 1);
        self.edges.iter().all(|&(i, j)| uf.union(i, j))
    }

    pub fn is_spanning_tree(&self) -> bool {
        self.n >= 1 && self.edge_count() + 1 == self.n && self.is_forest()
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges.iter().copied().collect()
    }

    pub fn with_edges(&self, edges: Vec<Edge>) -> LabeledGraph {
        LabeledGraph::from_sorted(self.n, edges)
    }
}

impl fmt::Display for LabeledGraph {
    /// `i-j,...` in sorted order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.edges.iter().map(|(i, j)| format!("{i}-{j}")).collect();
        f.write_str(&parts.join(","))
    }
}

/// Parses `i-j,...` edge lists as printed by `Display`.
pub fn parse_edge_list(s: &str) -> Result<Vec<Edge>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            let (a, b) = part
                .trim()
                .split_once('-')
                .ok_or_else(|| GreeneError::parse(1, format!("bad edge {part:?}")))?;
            let a: usize = a
                .trim()
                .parse()
                .map_err(|_| GreeneError::parse(1, format!("bad edge {part:?}")))?;
            let b: usize = b
                .trim()
                .parse()
                .map_err(|_| GreeneError::parse(1, format!("bad edge {part:?}")))?;
            Ok((a.min(b), a.max(b)))
        })
        .collect()
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[Edge]) -> LabeledGraph {
        LabeledGraph::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert_eq!(
            g(3, &[(1, 2), (2, 3)]).transitive_closure(),
            g(3, &[(1, 2), (1, 3), (2, 3)])
        );
        assert_eq!(
            g(4, &[(1, 2), (1, 3), (2, 4), (3, 4)]).transitive_closure(),
            g(4, &[(1, 2), (1, 3), (1, 4), (2, 4), (3, 4)])
        );
        let star = g(3, &[(1, 3), (2, 3)]);
        assert_eq!(star.transitive_closure(), star);
    }

    #[test]
    fn goodify_examples() {
        let (good, removed) = g(3, &[(1, 2), (2, 3), (1, 3)]).goodify();
        assert_eq!(good, g(3, &[(1, 2), (2, 3)]));
        assert_eq!(removed, vec![(1, 3)]);
        let (good, removed) = g(4, &[(1, 2), (1, 3), (2, 4), (3, 4), (1, 4)]).goodify();
        assert_eq!(good, g(4, &[(1, 2), (1, 3), (2, 4), (3, 4)]));
        assert_eq!(removed, vec![(1, 4)]);
        let d = g(4, &[(1, 2), (1, 3), (2, 4), (3, 4)]);
        assert_eq!(d.goodify(), (d.clone(), vec![]));
    }

    #[test]
    fn goodify_merges_multi_edges_silently() {
        let (good, removed) = g(2, &[(1, 2), (1, 2)]).goodify();
        assert_eq!(good, g(2, &[(1, 2)]));
        assert!(removed.is_empty());
    }

    #[test]
    fn flags() {
        let k22 = g(4, &[(1, 3), (1, 4), (2, 3), (2, 4)]);
        assert!(k22.is_alternating());
        assert!(!k22.is_forest());
        assert!(k22.is_connected());
        let path = g(3, &[(1, 2), (2, 3)]);
        assert!(!path.is_alternating());
        assert_eq!(path.pivots(), vec![(1, 2, 3)]);
        assert!(path.is_spanning_tree());
        assert_eq!(k22.to_string(), "1-3,1-4,2-3,2-4");
        assert_eq!(
            parse_edge_list("1-3,1-4,2-3,2-4").unwrap(),
            k22.edges().to_vec()
        );
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            LabeledGraph::new(2, [(2, 1)]),
            Err(GreeneError::NotNaturallyLabeled(2, 1))
        );
        assert_eq!(
            LabeledGraph::new(2, [(1, 3)]),
            Err(GreeneError::OutOfRange(3, 2))
        );
        assert_eq!(
            LabeledGraph::new(2, [(1, 1)]),
            Err(GreeneError::CycleDetected)
        );
    }
}
