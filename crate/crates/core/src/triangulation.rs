//! Spanning trees, Li–Postnikov triangulations of alternating graphs,
//! compatibility of trees, noncrossing trees of skew diagrams and the
//! `L, R` decomposition of a poset.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{GreeneError, Result};
use crate::poset::{Cell, Edge, LabeledGraph, Poset, SkewDiagram, UnionFind};

/// A total order on edges, given by ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeOrder {
    rank: BTreeMap<Edge, usize>,
}

impl EdgeOrder {
    /// Lexicographic order on `(i, j)`.
    pub fn lex(g: &LabeledGraph) -> Self {
        EdgeOrder::from_list(g.edge_set().into_iter().collect())
    }

    /// Reverse lexicographic order.
    pub fn revlex(g: &LabeledGraph) -> Self {
        EdgeOrder::from_list(g.edge_set().into_iter().rev().collect())
    }

    /// Ranks follow the position in `list`, smallest first.
    pub fn from_list(list: Vec<Edge>) -> Self {
        EdgeOrder {
            rank: list
                .into_iter()
                .enumerate()
                .map(|(k, e)| (e, k + 1))
                .collect(),
        }
    }

    /// Explicit list, completed lexicographically by edges of `g` it omits.
    pub fn completed(list: &[Edge], g: &LabeledGraph) -> Self {
        let mut all: Vec<Edge> = list.to_vec();
        for e in g.edge_set() {
            if !all.contains(&e) {
                all.push(e);
            }
        }
        EdgeOrder::from_list(all)
    }

    pub fn rank(&self, e: Edge) -> usize {
        self.rank.get(&e).copied().unwrap_or(usize::MAX)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Every spanning tree, by include-then-exclude recursion on sorted edges.
pub fn spanning_trees(g: &LabeledGraph) -> Result<Vec<LabeledGraph>> {
    if !g.is_connected() {
        return Err(GreeneError::Disconnected);
    }
    Ok(maximal_forests(g))
}

/// Spanning forests with one tree per connected component of `g`.
pub fn maximal_forests(g: &LabeledGraph) -> Vec<LabeledGraph> {
    let edges: Vec<Edge> = g.edge_set().into_iter().collect();
    let target = g.rank();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(target);
    forests_rec(g.n(), &edges, 0, target, &mut chosen, &mut out);
    out.into_iter().map(|e| g.with_edges(e)).collect()
}

fn forests_rec(
    n: usize,
    edges: &[Edge],
    idx: usize,
    target: usize,
    chosen: &mut Vec<Edge>,
    out: &mut Vec<Vec<Edge>>,
) {
    if chosen.len() == target {
        out.push(chosen.clone());
        return;
    }
    if edges.len() - idx < target - chosen.len() {
        return;
    }
    let mut uf = UnionFind::new(n + 1);
    for &(i, j) in chosen.iter() {
        uf.union(i, j);
    }
    let (i, j) = edges[idx];
    if uf.find(i) != uf.find(j) {
        chosen.push((i, j));
        forests_rec(n, edges, idx + 1, target, chosen, out);
        chosen.pop();
    }
    // Excluding the edge must still allow reaching the target rank.
    for &(a, b) in &edges[idx + 1..] {
        uf.union(a, b);
    }
    let reachable = (1..=n).filter(|&v| uf.find(v) == v).count();
    if n - reachable == target {
        forests_rec(n, edges, idx + 1, target, chosen, out);
    }
}

/// Edges of the path from `u` to `v` in the forest `t`, in walking order.
fn tree_path(t: &LabeledGraph, u: usize, v: usize) -> Option<Vec<Edge>> {
    let mut adj = vec![Vec::new(); t.n() + 1];
    for &(i, j) in t.edges() {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut parent = vec![usize::MAX; t.n() + 1];
    parent[u] = u;
    let mut stack = vec![u];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    if parent[v] == usize::MAX {
        return None;
    }
    let mut path = Vec::new();
    let mut x = v;
    while x != u {
        let p = parent[x];
        path.push((p.min(x), p.max(x)));
        x = p;
    }
    path.reverse();
    Some(path)
}

/// Is the non-tree edge `e` externally semi-active for `t`?
fn semi_active(t: &LabeledGraph, order: &EdgeOrder, e: Edge) -> bool {
    // Cycle: e = (u, v), then the tree path from v back to u.
    let path = tree_path(t, e.1, e.0).expect("edge endpoints lie in one tree");
    let mut cycle = vec![e];
    cycle.extend(path);
    let star = (0..cycle.len())
        .max_by_key(|&k| order.rank(cycle[k]))
        .unwrap();
    if star == 0 {
        return true;
    }
    let one_arc = star - 1;
    let other_arc = cycle.len() - star - 1;
    assert_eq!(
        one_arc % 2,
        other_arc % 2,
        "cycles of alternating graphs have even length"
    );
    one_arc % 2 == 1
}

/// Number of externally semi-active edges of `t` in `g` under `order`.
pub fn ext_count(g: &LabeledGraph, order: &EdgeOrder, t: &LabeledGraph) -> Result<usize> {
    if !g.is_alternating() {
        return Err(GreeneError::NotAlternating);
    }
    let gs = g.edge_set();
    if !t.is_spanning_tree() || t.n() != g.n() || !t.edges().iter().all(|e| gs.contains(e)) {
        return Err(GreeneError::NotSpanningTree);
    }
    Ok(ext_count_forest(&gs, order, t))
}

fn ext_count_forest(gs: &BTreeSet<Edge>, order: &EdgeOrder, t: &LabeledGraph) -> usize {
    gs.iter()
        .filter(|e| !t.contains(**e))
        .filter(|&&e| semi_active(t, order, e))
        .count()
}

/// Trees with no externally semi-active edge; their cones tile `C(G)`.
///
/// A disconnected alternating graph yields the maximal forests whose
/// restriction to every component is such a tree.
pub fn lp_triangulation(g: &LabeledGraph, order: &EdgeOrder) -> Result<Vec<LabeledGraph>> {
    if !g.is_alternating() {
        return Err(GreeneError::NotAlternating);
    }
    let gs = g.edge_set();
    Ok(maximal_forests(g)
        .into_iter()
        .filter(|t| {
            !gs.iter()
                .any(|&e| !t.contains(e) && semi_active(t, order, e))
        })
        .collect())
}

/// No directed cycle of length at least 3 in `U(T, T2)`: arcs `i -> j`
/// for edges of `T` and `j -> i` for edges of `T2`.
pub fn compatible(t: &LabeledGraph, t2: &LabeledGraph) -> bool {
    let n = t.n().max(t2.n());
    let mut succ = vec![BTreeSet::new(); n + 1];
    for &(i, j) in t.edges() {
        succ[i].insert(j);
    }
    for &(i, j) in t2.edges() {
        succ[j].insert(i);
    }
    let mut on_path = vec![false; n + 1];
    for s in 1..=n {
        on_path[s] = true;
        if long_cycle_from(s, s, 1, &succ, &mut on_path) {
            return false;
        }
        on_path[s] = false;
    }
    true
}

/// Depth-first search over simple paths from `s` through vertices larger
/// than `s`, looking for a return to `s` after at least 3 arcs.
fn long_cycle_from(
    s: usize,
    x: usize,
    len: usize,
    succ: &[BTreeSet<usize>],
    on_path: &mut [bool],
) -> bool {
    for &y in &succ[x] {
        if y == s && len >= 3 {
            return true;
        }
        if y > s && !on_path[y] {
            on_path[y] = true;
            if long_cycle_from(s, y, len + 1, succ, on_path) {
                return true;
            }
            on_path[y] = false;
        }
    }
    false
}

fn crosses(pos: &[usize], (a, b): Edge, (c, d): Edge) -> bool {
    let (a, b) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
    let (c, d) = (pos[c].min(pos[d]), pos[c].max(pos[d]));
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Alternating spanning trees of `gd` with no two crossing arcs when the
/// vertices are placed on a line in `order`.
pub fn noncrossing_alternating_trees(gd: &LabeledGraph, order: &[usize]) -> Vec<LabeledGraph> {
    let mut pos = vec![0usize; gd.n() + 1];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k + 1;
    }
    let Ok(trees) = spanning_trees(gd) else {
        return Vec::new();
    };
    trees
        .into_iter()
        .filter(|t| t.is_alternating())
        .filter(|t| {
            let e = t.edges();
            (0..e.len()).all(|x| (x + 1..e.len()).all(|y| !crosses(&pos, e[x], e[y])))
        })
        .collect()
}

fn check_path(d: &SkewDiagram, cells: &[Cell]) -> Result<()> {
    let ok = cells.first() == Some(&(1, 1))
        && cells.last() == Some(&(d.rows(), d.cols()))
        && cells.iter().all(|&c| d.contains(c))
        && cells
            .windows(2)
            .all(|w| w[1] == (w[0].0 + 1, w[0].1) || w[1] == (w[0].0, w[0].1 + 1));
    if ok {
        Ok(())
    } else {
        Err(GreeneError::NotInImage)
    }
}

/// The lattice path `{(i, j) : (x_i, y_j) in T}` of a noncrossing
/// alternating spanning tree of `G_D`.
pub fn tree_path_bijection(d: &SkewDiagram, t: &LabeledGraph) -> Result<Vec<Cell>> {
    let mut cells = Vec::new();
    for &e in t.edges() {
        cells.push(d.cell_of_edge(e).ok_or(GreeneError::NotInImage)?);
    }
    cells.sort_by_key(|&(i, j)| (i + j, i));
    check_path(d, &cells)?;
    Ok(cells)
}

/// Inverse of [`tree_path_bijection`].
pub fn path_to_tree(d: &SkewDiagram, cells: &[Cell]) -> Result<LabeledGraph> {
    let mut sorted = cells.to_vec();
    sorted.sort_by_key(|&(i, j)| (i + j, i));
    if sorted != cells {
        return Err(GreeneError::NotInImage);
    }
    check_path(d, cells)?;
    let edges = cells
        .iter()
        .map(|&(i, j)| (d.x_label(i), d.y_label(j)))
        .collect();
    Ok(LabeledGraph::empty(d.rows() + d.cols()).with_edges(edges))
}

/// Bipartitions `(L, R)` whose graph `G_{L,R}` (edges of the transitive
/// closure from `L` to `R`) is connected and spanning, with that graph.
///
/// A one-element poset has the single piece `({1}, {})`.
pub fn decompose_lr(p: &Poset) -> Vec<(Bipartition, LabeledGraph)> {
    let n = p.n();
    let closure = p.hasse().transitive_closure();
    if n == 1 {
        let bp = Bipartition {
            left: vec![1],
            right: vec![],
        };
        return vec![(bp, LabeledGraph::empty(1))];
    }
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << n) {
        let in_left = |v: usize| mask >> (v - 1) & 1 == 1;
        let edges: Vec<Edge> = closure
            .edges()
            .iter()
            .copied()
            .filter(|&(i, j)| in_left(i) && !in_left(j))
            .collect();
        let g = closure.with_edges(edges);
        if g.is_connected() {
            let (left, right) = (1..=n).partition(|&v| in_left(v));
            out.push((Bipartition { left, right }, g));
        }
    }
    out.sort();
    out
}

/// Signed decomposition `[C(G)] = sum c_F [C(F)]` of the cone of an
/// alternating graph into simplicial forest cones: the top forests of
/// [`lp_triangulation`] and their intersections by inclusion–exclusion.
pub fn signed_forest_cover(
    g: &LabeledGraph,
    order: &EdgeOrder,
) -> Result<Vec<(LabeledGraph, i64)>> {
    let tops = lp_triangulation(g, order)?;
    let mut acc: BTreeMap<Vec<Edge>, i64> = BTreeMap::new();
    for t in &tops {
        let te = t.edge_set();
        let snapshot: Vec<(Vec<Edge>, i64)> = acc.iter().map(|(f, c)| (f.clone(), *c)).collect();
        for (f, c) in snapshot {
            let meet: Vec<Edge> = f.into_iter().filter(|e| te.contains(e)).collect();
            *acc.entry(meet).or_insert(0) -= c;
        }
        *acc.entry(t.edges().to_vec()).or_insert(0) += 1;
    }
    Ok(acc
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(f, c)| (g.with_edges(f), c))
        .collect())
}

/// Coordinates of `m` in the generators `e_i - e_j` of a forest, or
/// `None` when `m` is outside their span.
pub fn forest_coordinates(f: &LabeledGraph, m: &[i64]) -> Option<Vec<i64>> {
    let n = f.n();
    let (comp, count) = f.components();
    let mut sums = vec![0i64; count];
    for v in 1..=n {
        sums[comp[v]] += m[v - 1];
    }
    if sums.iter().any(|&s| s != 0) {
        return None;
    }
    // For edge (i, j), the coefficient is the total of m over the side of i.
    let mut adj = vec![Vec::new(); n + 1];
    for &(i, j) in f.edges() {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut coords = Vec::with_capacity(f.edge_count());
    for &(i, j) in f.edges() {
        let mut seen = vec![false; n + 1];
        seen[i] = true;
        seen[j] = true;
        let mut stack = vec![i];
        let mut total = 0;
        while let Some(x) = stack.pop() {
            total += m[x - 1];
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        coords.push(total);
    }
    Some(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::named::*;
    use crate::poset::{lattice_paths, skew_to_poset};

    fn g(n: usize, e: &[Edge]) -> LabeledGraph {
        LabeledGraph::new(n, e.iter().copied()).unwrap()
    }

    fn k22g() -> LabeledGraph {
        g(4, &[(1, 3), (1, 4), (2, 3), (2, 4)])
    }

    #[test]
    fn spanning_tree_counts() {
        assert_eq!(spanning_trees(&k22g()).unwrap().len(), 4);
        let t = g(3, &[(1, 2), (2, 3)]);
        assert_eq!(spanning_trees(&t).unwrap(), vec![t.clone()]);
        let k23 = g(5, &[(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]);
        assert_eq!(spanning_trees(&k23).unwrap().len(), 12);
        assert_eq!(
            spanning_trees(&g(3, &[(1, 2)])),
            Err(GreeneError::Disconnected)
        );
    }

    #[test]
    fn ext_counts_on_k22() {
        let o = EdgeOrder::lex(&k22g());
        let drop = |e: Edge| {
            g(
                4,
                &k22g()
                    .edges()
                    .iter()
                    .copied()
                    .filter(|&f| f != e)
                    .collect::<Vec<_>>(),
            )
        };
        assert_eq!(ext_count(&k22g(), &o, &drop((2, 4))).unwrap(), 1);
        assert_eq!(ext_count(&k22g(), &o, &drop((1, 4))).unwrap(), 0);
        assert_eq!(ext_count(&k22g(), &o, &drop((2, 3))).unwrap(), 0);
        assert_eq!(
            ext_count(&g(3, &[(1, 2), (2, 3)]), &o, &g(3, &[(1, 2), (2, 3)])),
            Err(GreeneError::NotAlternating)
        );
    }

    #[test]
    fn lp_examples() {
        let o = EdgeOrder::lex(&k22g());
        assert_eq!(
            lp_triangulation(&k22g(), &o).unwrap(),
            vec![
                g(4, &[(1, 3), (1, 4), (2, 4)]),
                g(4, &[(1, 3), (2, 3), (2, 4)])
            ]
        );
        let star = g(3, &[(1, 3), (2, 3)]);
        assert_eq!(
            lp_triangulation(&star, &EdgeOrder::lex(&star)).unwrap(),
            vec![star]
        );
    }

    #[test]
    fn compatibility_examples() {
        let a = g(4, &[(1, 3), (1, 4), (2, 4)]);
        let b = g(4, &[(1, 3), (2, 3), (2, 4)]);
        assert!(compatible(&a, &b));
        assert!(compatible(&a, &a));
        assert!(!compatible(&g(4, &[(1, 3), (1, 4), (2, 3)]), &b));
    }

    #[test]
    fn noncrossing_trees_and_paths() {
        for (d, count) in [
            (SkewDiagram::rectangle(2, 2).unwrap(), 2),
            (SkewDiagram::new(3, vec![(1, 3)]).unwrap(), 1),
            (SkewDiagram::new(2, vec![(1, 1), (1, 2)]).unwrap(), 1),
        ] {
            let (p, order) = skew_to_poset(&d);
            let trees = noncrossing_alternating_trees(&p.hasse(), &order);
            assert_eq!(trees.len(), count);
            assert_eq!(trees.len(), lattice_paths(&d).unwrap().len());
            for t in &trees {
                let path = tree_path_bijection(&d, t).unwrap();
                assert_eq!(&path_to_tree(&d, &path).unwrap(), t);
            }
        }
        let d = SkewDiagram::rectangle(2, 2).unwrap();
        assert_eq!(
            path_to_tree(&d, &[(1, 1), (2, 2)]),
            Err(GreeneError::NotInImage)
        );
    }

    #[test]
    fn lr_examples() {
        assert_eq!(decompose_lr(&chain(2)).len(), 1);
        let parts: Vec<Vec<usize>> = decompose_lr(&chain(3))
            .into_iter()
            .map(|(b, _)| b.left)
            .collect();
        assert_eq!(parts, vec![vec![1], vec![1, 2]]);
        let parts: Vec<Vec<usize>> = decompose_lr(&diamond())
            .into_iter()
            .map(|(b, _)| b.left)
            .collect();
        assert_eq!(parts, vec![vec![1], vec![1, 2], vec![1, 2, 3], vec![1, 3]]);
        assert!(decompose_lr(&antichain(2)).is_empty());
        assert_eq!(decompose_lr(&chain(1)).len(), 1);
    }

    #[test]
    fn k22_cover_has_one_shared_face() {
        let cover = signed_forest_cover(&k22g(), &EdgeOrder::lex(&k22g())).unwrap();
        let signs: Vec<i64> = cover.iter().map(|(_, c)| *c).collect();
        assert_eq!(signs.iter().filter(|&&c| c == 1).count(), 2);
        assert_eq!(
            cover.iter().find(|(_, c)| *c == -1).unwrap().0,
            g(4, &[(1, 3), (2, 4)])
        );
    }

    #[test]
    fn forest_coordinates_solve_flows() {
        let t = g(4, &[(1, 2), (2, 4), (3, 4)]);
        assert_eq!(forest_coordinates(&t, &[1, 0, 0, -1]), Some(vec![1, 1, 0]));
        assert_eq!(forest_coordinates(&t, &[1, 0, 0, 0]), None);
        let f = g(4, &[(1, 3)]);
        assert_eq!(forest_coordinates(&f, &[2, 0, -2, 0]), Some(vec![2]));
        assert_eq!(forest_coordinates(&f, &[1, -1, 0, 0]), None);
    }
}
