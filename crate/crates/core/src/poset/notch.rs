//! Notches and the quotient obtained by closing them.
//!
//! A V-notch `(a, b, c)` has `a` covered by both `b` and `c`, with `b` and
//! `c` in different connected components of the subposet of elements that
//! are not below or equal to `a`. A wedge notch is the order dual, using
//! the elements not above or equal to `a`.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use super::{build_poset, Edge, Poset, UnionFind};
use crate::error::{GreeneError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NotchShape {
    V,
    Wedge,
}

/// Triple `(a, b, c)` with `b < c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Notch {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub shape: NotchShape,
}

/// `P / {b = c}` together with the relabelling of the old elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedNotch {
    pub poset: Poset,
    /// `label_map[v]` is the new label of old element `v` (index 0 unused);
    /// `b` and `c` share a label.
    pub label_map: Vec<usize>,
}

impl ClosedNotch {
    pub fn relabel(&self, v: usize) -> usize {
        self.label_map[v]
    }
}

pub fn find_notches(p: &Poset) -> Vec<Notch> {
    let lt = p.strict_order();
    let n = p.n();
    let mut out = Vec::new();
    for a in 1..=n {
        let ups: Vec<usize> = p
            .covers()
            .iter()
            .filter(|e| e.0 == a)
            .map(|e| e.1)
            .collect();
        let downs: Vec<usize> = p
            .covers()
            .iter()
            .filter(|e| e.1 == a)
            .map(|e| e.0)
            .collect();
        for (shape, partners) in [(NotchShape::V, &ups), (NotchShape::Wedge, &downs)] {
            if partners.len() < 2 {
                continue;
            }
            // Elements comparable to `a` on the removed side, `a` included.
            let removed: Vec<bool> = (0..=n)
                .map(|v| {
                    v == a
                        || match shape {
                            NotchShape::V => v >= 1 && lt[v][a],
                            NotchShape::Wedge => v >= 1 && lt[a][v],
                        }
                })
                .collect();
            let mut uf = UnionFind::new(n + 1);
            for &(i, j) in p.covers() {
                if !removed[i] && !removed[j] {
                    uf.union(i, j);
                }
            }
            for (x, &b) in partners.iter().enumerate() {
                for &c in &partners[x + 1..] {
                    if uf.find(b) != uf.find(c) {
                        out.push(Notch { a, b, c, shape });
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Identifies `b` and `c`, keeps the smaller label and restores a natural
/// labelling (order-preserving compression whenever that is natural).
pub fn close_notch(p: &Poset, t: Notch) -> Result<ClosedNotch> {
    let (b, c) = (t.b.min(t.c), t.b.max(t.c));
    let normalized = Notch { b, c, ..t };
    if !find_notches(p).contains(&normalized) {
        return Err(GreeneError::NotANotch(t.a, t.b, t.c));
    }
    let n = p.n();
    let lt = p.strict_order();
    let merge = |v: usize| if v == c { b } else { v };
    let keep: Vec<usize> = (1..=n).filter(|&v| v != c).collect();
    let idx = |v: usize| keep.iter().position(|&w| w == v).unwrap();
    let m = keep.len();
    // Relation on the quotient, closed transitively.
    let mut rel = vec![vec![false; m]; m];
    for x in 1..=n {
        for y in 1..=n {
            if lt[x][y] {
                let (u, v) = (idx(merge(x)), idx(merge(y)));
                if u == v {
                    return Err(GreeneError::CycleDetected);
                }
                rel[u][v] = true;
            }
        }
    }
    for k in 0..m {
        for i in 0..m {
            if rel[i][k] {
                for j in 0..m {
                    if rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
    }
    if (0..m).any(|i| rel[i][i]) {
        return Err(GreeneError::CycleDetected);
    }
    // Linear extension preferring small old labels gives the new labels.
    let mut indeg: Vec<usize> = (0..m)
        .map(|v| (0..m).filter(|&u| rel[u][v]).count())
        .collect();
    let mut heap: BinaryHeap<Reverse<usize>> =
        (0..m).filter(|&v| indeg[v] == 0).map(Reverse).collect();
    let mut new_label = vec![0usize; m];
    let mut next = 1;
    while let Some(Reverse(u)) = heap.pop() {
        new_label[u] = next;
        next += 1;
        for v in 0..m {
            if rel[u][v] {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    heap.push(Reverse(v));
                }
            }
        }
    }
    let mut covers: BTreeSet<Edge> = BTreeSet::new();
    for i in 0..m {
        for j in 0..m {
            if rel[i][j] && !(0..m).any(|k| rel[i][k] && rel[k][j]) {
                covers.insert((new_label[i], new_label[j]));
            }
        }
    }
    let covers: Vec<Edge> = covers.into_iter().collect();
    let poset = build_poset(m, &covers)?;
    let mut label_map = vec![0usize; n + 1];
    for v in 1..=n {
        label_map[v] = new_label[idx(merge(v))];
    }
    Ok(ClosedNotch { poset, label_map })
}
