//! Straight-line planar drawings of Hasse diagrams and their bounded faces.
//!
//! All predicates use exact rational arithmetic. Faces are traced from the
//! angular rotation system: leaving `v` after arriving from `u`, the walk
//! takes the neighbour of `v` immediately clockwise from `u`. Bounded faces
//! are then the closed walks of positive signed area.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Edge, LabeledGraph, Poset};
use crate::error::{GreeneError, Result};

pub type Coord = (BigRational, BigRational);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarEmbedding {
    coords: BTreeMap<usize, Coord>,
}

/// A bounded face. `boundary` is empty for regions supplied explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub min: Vec<usize>,
    pub max: Vec<usize>,
    pub boundary: Vec<usize>,
}

impl Region {
    pub fn from_extrema(mut min: Vec<usize>, mut max: Vec<usize>) -> Self {
        min.sort_unstable();
        min.dedup();
        max.sort_unstable();
        max.dedup();
        Region {
            min,
            max,
            boundary: Vec::new(),
        }
    }

    /// `(min, max)` when the boundary splits into two chains.
    pub fn as_pair(&self) -> Option<Edge> {
        match (self.min.as_slice(), self.max.as_slice()) {
            ([a], [b]) => Some((*a, *b)),
            _ => None,
        }
    }
}

/// The `(min, max)` pair of every region, or `RegionNotTwoChains`.
pub fn require_two_chains(regions: &[Region]) -> Result<Vec<Edge>> {
    regions
        .iter()
        .map(|r| {
            r.as_pair()
                .ok_or_else(|| GreeneError::RegionNotTwoChains(r.min.clone(), r.max.clone()))
        })
        .collect()
}

impl PlanarEmbedding {
    pub fn new(coords: impl IntoIterator<Item = (usize, Coord)>) -> Self {
        PlanarEmbedding {
            coords: coords.into_iter().collect(),
        }
    }

    /// Integer coordinates, mostly for tests.
    pub fn from_ints(points: &[(usize, i64, i64)]) -> Self {
        PlanarEmbedding::new(points.iter().map(|&(v, x, y)| {
            (
                v,
                (
                    BigRational::from_integer(x.into()),
                    BigRational::from_integer(y.into()),
                ),
            )
        }))
    }

    pub fn coord(&self, v: usize) -> Option<&Coord> {
        self.coords.get(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Coord)> {
        self.coords.iter().map(|(v, c)| (*v, c))
    }

    /// Checks that every element is placed, covers point upward and no two
    /// segments meet outside shared endpoints.
    pub fn validate(&self, p: &Poset) -> Result<()> {
        for v in 1..=p.n() {
            if !self.coords.contains_key(&v) {
                return Err(GreeneError::MissingCoordinate(v));
            }
        }
        for &(i, j) in p.covers() {
            if self.coords[&i].1 >= self.coords[&j].1 {
                return Err(GreeneError::NotUpward(i, j));
            }
        }
        let pts: Vec<(usize, &Coord)> = (1..=p.n()).map(|v| (v, &self.coords[&v])).collect();
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                if pts[a].1 == pts[b].1 {
                    return Err(GreeneError::EdgesCross(
                        pts[a].0, pts[a].0, pts[b].0, pts[b].0,
                    ));
                }
            }
        }
        let covers = p.covers();
        for (k, &(i, j)) in covers.iter().enumerate() {
            let (pi, pj) = (&self.coords[&i], &self.coords[&j]);
            for v in 1..=p.n() {
                if v != i && v != j && on_segment(pi, pj, &self.coords[&v]) {
                    return Err(GreeneError::EdgesCross(i, j, v, v));
                }
            }
            for &(a, b) in &covers[k + 1..] {
                let (pa, pb) = (&self.coords[&a], &self.coords[&b]);
                let shared = [i, j].iter().filter(|v| **v == a || **v == b).count();
                let bad = match shared {
                    0 => segments_meet(pi, pj, pa, pb),
                    // Sharing one endpoint: only a collinear overlap is a crossing.
                    _ => {
                        let other1 = if i == a || i == b { pj } else { pi };
                        let other2 = if a == i || a == j { pb } else { pa };
                        on_segment(pi, pj, other2) || on_segment(pa, pb, other1)
                    }
                };
                if bad {
                    return Err(GreeneError::EdgesCross(i, j, a, b));
                }
            }
        }
        Ok(())
    }
}

fn cross(o: &Coord, a: &Coord, b: &Coord) -> BigRational {
    (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
}

fn sign(x: &BigRational) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// `q` lies on the closed segment `[a, b]` and differs from both ends.
fn on_segment(a: &Coord, b: &Coord, q: &Coord) -> bool {
    if q == a || q == b || !cross(a, b, q).is_zero() {
        return false;
    }
    let within =
        |s: &BigRational, t: &BigRational, u: &BigRational| (s.min(t) <= u) && (u <= s.max(t));
    within(&a.0, &b.0, &q.0) && within(&a.1, &b.1, &q.1)
}

/// Closed segments `[a,b]` and `[c,d]` intersect.
fn segments_meet(a: &Coord, b: &Coord, c: &Coord, d: &Coord) -> bool {
    let d1 = sign(&cross(c, d, a));
    let d2 = sign(&cross(c, d, b));
    let d3 = sign(&cross(a, b, c));
    let d4 = sign(&cross(a, b, d));
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    let touches = |s: &Coord, t: &Coord, q: &Coord| {
        cross(s, t, q).is_zero()
            && s.0.clone().min(t.0.clone()) <= q.0
            && q.0 <= s.0.clone().max(t.0.clone())
            && s.1.clone().min(t.1.clone()) <= q.1
            && q.1 <= s.1.clone().max(t.1.clone())
    };
    touches(c, d, a) || touches(c, d, b) || touches(a, b, c) || touches(a, b, d)
}

/// Counter-clockwise angular order of direction vectors starting at +x.
fn angle_cmp(d1: &Coord, d2: &Coord) -> Ordering {
    let half = |d: &Coord| {
        if d.1.is_positive() || (d.1.is_zero() && d.0.is_positive()) {
            0
        } else {
            1
        }
    };
    half(d1).cmp(&half(d2)).then_with(|| {
        let c = &d1.0 * &d2.1 - &d1.1 * &d2.0;
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Bounded faces of the straight-line drawing of `H(P)`, each carrying
/// the local minima and maxima of its boundary walk.
pub fn bounded_regions(p: &Poset, e: &PlanarEmbedding) -> Result<Vec<Region>> {
    e.validate(p)?;
    let n = p.n();
    let coord = |v: usize| &e.coords[&v];
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for &(i, j) in p.covers() {
        rot[i].push(j);
        rot[j].push(i);
    }
    for v in 1..=n {
        let o = coord(v).clone();
        rot[v].sort_by(|&a, &b| {
            let da = (&coord(a).0 - &o.0, &coord(a).1 - &o.1);
            let db = (&coord(b).0 - &o.0, &coord(b).1 - &o.1);
            angle_cmp(&da, &db)
        });
    }
    let pos = |v: usize, u: usize| rot[v].iter().position(|&w| w == u).unwrap();
    let mut visited: BTreeMap<(usize, usize), bool> = BTreeMap::new();
    for &(i, j) in p.covers() {
        visited.insert((i, j), false);
        visited.insert((j, i), false);
    }
    let (comp, ncomp) = p.hasse().components();
    let mut faces_per_comp = vec![0i64; ncomp];
    let mut regions = Vec::new();
    let darts: Vec<(usize, usize)> = visited.keys().copied().collect();
    for start in darts {
        if visited[&start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut dart = start;
        loop {
            visited.insert(dart, true);
            walk.push(dart.0);
            let (u, v) = dart;
            let k = pos(v, u);
            let deg = rot[v].len();
            let w = rot[v][(k + deg - 1) % deg];
            dart = (v, w);
            if dart == start {
                break;
            }
        }
        faces_per_comp[comp[start.0]] += 1;
        let mut area = BigRational::zero();
        for t in 0..walk.len() {
            let a = coord(walk[t]);
            let b = coord(walk[(t + 1) % walk.len()]);
            area += &a.0 * &b.1 - &b.0 * &a.1;
        }
        if area.is_positive() {
            regions.push(region_from_walk(walk));
        }
    }
    // Euler relation per component; an isolated vertex has one face.
    let g = p.hasse();
    let mut verts = vec![0i64; ncomp];
    let mut edges = vec![0i64; ncomp];
    for v in 1..=n {
        verts[comp[v]] += 1;
    }
    for &(i, _) in g.edges() {
        edges[comp[i]] += 1;
    }
    for c in 0..ncomp {
        let faces = if edges[c] == 0 { 1 } else { faces_per_comp[c] };
        if verts[c] - edges[c] + faces != 2 {
            return Err(GreeneError::EulerMismatch);
        }
    }
    regions.sort_by(|a, b| (&a.min, &a.max, &a.boundary).cmp(&(&b.min, &b.max, &b.boundary)));
    Ok(regions)
}

/// Drops the excursions `u, v, u` that a face walk makes along edges lying
/// inside the face.
fn strip_spurs(mut walk: Vec<usize>) -> Vec<usize> {
    loop {
        let len = walk.len();
        if len < 3 {
            return walk;
        }
        match (0..len).find(|&t| walk[(t + len - 1) % len] == walk[(t + 1) % len]) {
            Some(t) => {
                // Remove the tip and one copy of its base.
                let base = (t + 1) % len;
                let (a, b) = if t < base { (base, t) } else { (t, base) };
                walk.remove(a);
                walk.remove(b);
            }
            None => return walk,
        }
    }
}

fn region_from_walk(walk: Vec<usize>) -> Region {
    let walk = strip_spurs(walk);
    let len = walk.len();
    let mut min = Vec::new();
    let mut max = Vec::new();
    for t in 0..len {
        let prev = walk[(t + len - 1) % len];
        let next = walk[(t + 1) % len];
        let v = walk[t];
        // Natural labels: a neighbour with a larger label lies above.
        if prev > v && next > v {
            min.push(v);
        }
        if prev < v && next < v {
            max.push(v);
        }
    }
    // Rotate so the walk starts at its smallest vertex.
    let start = (0..len).min_by_key(|&t| walk[t]).unwrap();
    let boundary = walk[start..]
        .iter()
        .chain(&walk[..start])
        .copied()
        .collect();
    let mut r = Region::from_extrema(min, max);
    r.boundary = boundary;
    r
}

/// Edge classes of the cycle-equivalence relation (blocks); each class is
/// sorted and classes are ordered by first edge.
pub fn biconnected_components(g: &LabeledGraph) -> Vec<Vec<Edge>> {
    let n = g.n();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n + 1];
    for (idx, &(i, j)) in g.edges().iter().enumerate() {
        adj[i].push((j, idx));
        adj[j].push((i, idx));
    }
    let mut disc = vec![0usize; n + 1];
    let mut low = vec![0usize; n + 1];
    let mut timer = 1;
    let mut stack: Vec<usize> = Vec::new();
    let mut blocks = Vec::new();
    for root in 1..=n {
        if disc[root] == 0 {
            block_dfs(
                root,
                usize::MAX,
                &adj,
                &mut disc,
                &mut low,
                &mut timer,
                &mut stack,
                &mut blocks,
                g.edges(),
            );
        }
    }
    let mut out: Vec<Vec<Edge>> = blocks
        .into_iter()
        .map(|mut b: Vec<Edge>| {
            b.sort_unstable();
            b
        })
        .collect();
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn block_dfs(
    v: usize,
    parent_edge: usize,
    adj: &[Vec<(usize, usize)>],
    disc: &mut [usize],
    low: &mut [usize],
    timer: &mut usize,
    stack: &mut Vec<usize>,
    blocks: &mut Vec<Vec<Edge>>,
    edges: &[Edge],
) {
    disc[v] = *timer;
    low[v] = *timer;
    *timer += 1;
    for &(w, idx) in &adj[v] {
        if idx == parent_edge {
            continue;
        }
        if disc[w] == 0 {
            stack.push(idx);
            block_dfs(w, idx, adj, disc, low, timer, stack, blocks, edges);
            low[v] = low[v].min(low[w]);
            if low[w] >= disc[v] {
                let mut block = Vec::new();
                while let Some(e) = stack.pop() {
                    block.push(edges[e]);
                    if e == idx {
                        break;
                    }
                }
                blocks.push(block);
            }
        } else if disc[w] < disc[v] {
            stack.push(idx);
            low[v] = low[v].min(disc[w]);
        }
    }
}

/// Every block is a single edge or a simple cycle.
pub fn is_cactus(g: &LabeledGraph) -> bool {
    biconnected_components(g).iter().all(|b| {
        if b.len() == 1 {
            return true;
        }
        let mut verts: Vec<usize> = b.iter().flat_map(|&(i, j)| [i, j]).collect();
        verts.sort_unstable();
        verts.dedup();
        verts.len() == b.len()
    })
}

/// Exact rational from `p/q` or an integer literal.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            (!b.is_zero()).then(|| BigRational::new(a, b))
        }
        None => Some(BigRational::from_integer(s.trim().parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::super::build_poset;
    use super::super::named::*;
    use super::*;

    #[test]
    fn diamond_has_one_region() {
        let e = PlanarEmbedding::from_ints(&[(1, 0, 0), (2, -1, 1), (3, 1, 1), (4, 0, 2)]);
        let r = bounded_regions(&diamond(), &e).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].min, vec![1]);
        assert_eq!(r[0].max, vec![4]);
        assert_eq!(r[0].boundary.len(), 4);
        assert_eq!(require_two_chains(&r).unwrap(), vec![(1, 4)]);
    }

    #[test]
    fn chain_has_no_region() {
        let e = PlanarEmbedding::from_ints(&[(1, 0, 0), (2, 0, 1), (3, 0, 2)]);
        assert!(bounded_regions(&chain(3), &e).unwrap().is_empty());
    }

    #[test]
    fn k22_region_has_two_minima() {
        let e = PlanarEmbedding::from_ints(&[(1, -1, 0), (2, 1, 0), (3, 0, 1), (4, 0, 2)]);
        let r = bounded_regions(&k22(), &e).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].min, vec![1, 2]);
        assert_eq!(r[0].max, vec![3, 4]);
        assert!(matches!(
            require_two_chains(&r),
            Err(GreeneError::RegionNotTwoChains(_, _))
        ));
    }

    #[test]
    fn pendant_edge_inside_a_face_is_ignored() {
        let p = build_poset(5, &[(1, 3), (1, 5), (2, 3), (2, 5), (3, 4)]).unwrap();
        let e = PlanarEmbedding::from_ints(&[
            (1, 0, 0),
            (2, -3, 1),
            (3, -2, 2),
            (4, -2, 3),
            (5, -2, 4),
        ]);
        let r = bounded_regions(&p, &e).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].min, vec![1, 2]);
        assert_eq!(r[0].max, vec![3, 5]);
        assert_eq!(r[0].boundary, vec![1, 5, 2, 3]);
    }

    #[test]
    fn rejects_crossings_and_downward_edges() {
        // K22 drawn as a bow-tie: (1,4) crosses (2,3).
        let e = PlanarEmbedding::from_ints(&[(1, 0, 0), (2, 2, 0), (3, 0, 2), (4, 2, 2)]);
        assert!(matches!(
            bounded_regions(&k22(), &e),
            Err(GreeneError::EdgesCross(..))
        ));
        let e = PlanarEmbedding::from_ints(&[(1, 0, 1), (2, 0, 0)]);
        assert_eq!(
            bounded_regions(&chain(2), &e),
            Err(GreeneError::NotUpward(1, 2))
        );
        let e = PlanarEmbedding::from_ints(&[(1, 0, 0)]);
        assert_eq!(
            bounded_regions(&chain(2), &e),
            Err(GreeneError::MissingCoordinate(2))
        );
    }

    #[test]
    fn vertex_on_edge_is_rejected() {
        // 1 < 3 passes straight through 2.
        let p = crate::poset::build_poset(3, &[(1, 3), (2, 3)]).unwrap();
        let e = PlanarEmbedding::from_ints(&[(1, 0, 0), (2, 0, 1), (3, 0, 2)]);
        assert!(matches!(
            bounded_regions(&p, &e),
            Err(GreeneError::EdgesCross(..))
        ));
    }

    #[test]
    fn ladder_regions() {
        let k = 3;
        let pts: Vec<(usize, i64, i64)> = (0..=k)
            .flat_map(|i| {
                let y = 2 * i as i64;
                [(2 * i + 1, 0, y), (2 * i + 2, 1, y + 1)]
            })
            .collect();
        let r = bounded_regions(&ladder(k), &PlanarEmbedding::from_ints(&pts)).unwrap();
        assert_eq!(
            require_two_chains(&r).unwrap(),
            vec![(1, 4), (3, 6), (5, 8)]
        );
    }

    #[test]
    fn blocks_and_cactus() {
        assert!(is_cactus(&k22().hasse()));
        assert!(is_cactus(&diamond().hasse()));
        assert!(is_cactus(&chain(4).hasse()));
        assert!(!is_cactus(&ladder(2).hasse()));
        assert_eq!(biconnected_components(&chain(3).hasse()).len(), 2);
        assert_eq!(biconnected_components(&ladder(2).hasse()).len(), 1);
    }

    #[test]
    fn rationals() {
        assert_eq!(
            parse_rational("-3/6"),
            Some(BigRational::new((-1).into(), 2.into()))
        );
        assert_eq!(
            parse_rational("7"),
            Some(BigRational::from_integer(7.into()))
        );
        assert_eq!(parse_rational("1/0"), None);
    }
}
