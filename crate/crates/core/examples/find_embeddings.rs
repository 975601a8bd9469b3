//! Searches small integer grids for upward straight-line planar drawings
//! and writes the corpus data files used by the acceptance suite.
//!
//! `cargo run --release -p greene-core --example find_embeddings -- <out-dir>`

use std::fs;
use std::path::PathBuf;

use greene_core::corpus::{connected_posets, isomorphism_classes};
use greene_core::format::{serialize_poset_file, PosetFile};
use greene_core::poset::{bounded_regions, is_cactus, named, PlanarEmbedding, Poset};

const X_RANGE: i64 = 3;

type Pt = (i64, i64);

fn orient(a: Pt, b: Pt, c: Pt) -> i64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn on_segment(a: Pt, b: Pt, p: Pt) -> bool {
    orient(a, b, p) == 0
        && p.0 >= a.0.min(b.0)
        && p.0 <= a.0.max(b.0)
        && p.1 >= a.1.min(b.1)
        && p.1 <= a.1.max(b.1)
}

fn proper_cross(a: Pt, b: Pt, c: Pt, d: Pt) -> bool {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    o1.signum() * o2.signum() < 0 && o3.signum() * o4.signum() < 0
}

/// Up-directed graph on `0..count`; `edges` is `(lower, upper)`.
struct Search<'a> {
    count: usize,
    edges: &'a [(usize, usize)],
    order: Vec<usize>,
    pos: Vec<Option<Pt>>,
}

impl Search<'_> {
    fn ok_after_placing(&self, v: usize) -> bool {
        let p = |u: usize| self.pos[u];
        let placed: Vec<(usize, usize)> = self
            .edges
            .iter()
            .copied()
            .filter(|&(a, b)| p(a).is_some() && p(b).is_some())
            .collect();
        let pv = p(v).unwrap();
        for u in 0..self.count {
            if u != v && p(u) == Some(pv) {
                return false;
            }
        }
        for &(a, b) in &placed {
            let (pa, pb) = (p(a).unwrap(), p(b).unwrap());
            if a != v && b != v && on_segment(pa, pb, pv) {
                return false;
            }
            if a == v || b == v {
                for u in 0..self.count {
                    if u != a && u != b {
                        if let Some(pu) = p(u) {
                            if on_segment(pa, pb, pu) {
                                return false;
                            }
                        }
                    }
                }
                for &(c, d) in &placed {
                    if (c, d) == (a, b) {
                        continue;
                    }
                    let (pc, pd) = (p(c).unwrap(), p(d).unwrap());
                    let shared = [a, b].iter().any(|&x| x == c || x == d);
                    if !shared && proper_cross(pa, pb, pc, pd) {
                        return false;
                    }
                    if shared {
                        let far1 = if a == c || a == d { pb } else { pa };
                        let far2 = if c == a || c == b { pd } else { pc };
                        if on_segment(pa, pb, far2) || on_segment(pc, pd, far1) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn place(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return true;
        }
        let v = self.order[k];
        let xs: Vec<i64> = if k == 0 {
            vec![0]
        } else {
            (-X_RANGE..=X_RANGE).collect()
        };
        for x in xs {
            self.pos[v] = Some((x, k as i64));
            if self.ok_after_placing(v) && self.place(k + 1) {
                return true;
            }
        }
        self.pos[v] = None;
        false
    }
}

/// Drawing of `H(P)`, optionally with a bottom and a top element adjoined.
fn find(p: &Poset, bounded: bool) -> Option<PlanarEmbedding> {
    let n = p.n();
    let mut edges: Vec<(usize, usize)> = p.covers().to_vec();
    let (bottom, top) = (n + 1, n + 2);
    let count = if bounded { n + 3 } else { n + 1 };
    if bounded {
        for v in p.minimal() {
            edges.push((bottom, v));
        }
        let maximal: Vec<usize> = (1..=n)
            .filter(|&v| !p.covers().iter().any(|e| e.0 == v))
            .collect();
        for v in maximal {
            edges.push((v, top));
        }
    }
    for ext in p.linear_extensions() {
        let order: Vec<usize> = if bounded {
            std::iter::once(bottom)
                .chain(ext)
                .chain(std::iter::once(top))
                .collect()
        } else {
            ext
        };
        let mut s = Search {
            count,
            edges: &edges,
            order,
            pos: vec![None; count],
        };
        if s.place(0) {
            let pts: Vec<(usize, i64, i64)> = (1..=n)
                .map(|v| (v, s.pos[v].unwrap().0, s.pos[v].unwrap().1))
                .collect();
            return Some(PlanarEmbedding::from_ints(&pts));
        }
    }
    None
}

fn main() {
    let out: PathBuf = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "crates/core/tests/data".into())
        .into();
    fs::create_dir_all(&out).unwrap();

    let corpus = connected_posets(5);
    let mut planar = String::from("# Connected posets on at most 5 elements with an upward planar\n# drawing of the Hasse diagram with a bottom and a top adjoined.\n");
    let mut found = 0;
    for p in &corpus {
        if let Some(e) = find(p, true) {
            let regions = bounded_regions(p, &e).expect("search output is a valid drawing");
            assert!(regions.iter().all(|r| r.as_pair().is_some()));
            planar.push_str(&serialize_poset_file(&PosetFile {
                poset: p.clone(),
                embedding: Some(e),
                regions: None,
            }));
            found += 1;
        }
    }
    eprintln!("strongly planar: {found} of {}", corpus.len());
    fs::write(out.join("strongly_planar.posets"), planar).unwrap();

    let mut cactus: Vec<Poset> = corpus
        .iter()
        .filter(|p| is_cactus(&p.hasse()) && !p.hasse().is_forest())
        .cloned()
        .collect();
    let six: Vec<Poset> = isomorphism_classes(&connected_posets(6))
        .into_iter()
        .filter(|p| p.n() == 6 && is_cactus(&p.hasse()) && !p.hasse().is_forest())
        .collect();
    cactus.extend(six);
    cactus.push(named::diamond_stack(2));
    let mut admissible = String::from("# Posets whose Hasse diagram is a cactus with at least one cycle,\n# each with an upward planar drawing.\n");
    let mut found = 0;
    for p in &cactus {
        if let Some(e) = find(p, false) {
            bounded_regions(p, &e).expect("search output is a valid drawing");
            admissible.push_str(&serialize_poset_file(&PosetFile {
                poset: p.clone(),
                embedding: Some(e),
                regions: None,
            }));
            found += 1;
        }
    }
    eprintln!("cactus: {found} of {}", cactus.len());
    fs::write(out.join("admissible.posets"), admissible).unwrap();
}
