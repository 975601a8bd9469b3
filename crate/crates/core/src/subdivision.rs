//! The subdivision-algebra rewriting engine.
//!
//! A term `coeff * beta^k * prod x_e` stands for the cone of its graph.
//! The relation `x_ij x_jk = x_ik (x_ij + x_jk + beta)` splits a graph with
//! a pivot `(i,j),(j,k)` into three. After each split the children are made
//! good; edges dropped because a longer increasing path dominates them are
//! recorded in the branch prefactor.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;

use crate::algebra::{ipt_frac, tree_psi_frac, Polynomial, RatFrac};
use crate::error::{GreeneError, Result};
use crate::poset::{
    bounded_regions, parse_edge_list, require_two_chains, Edge, LabeledGraph, PlanarEmbedding,
    Poset, Region,
};
use crate::triangulation::{signed_forest_cover, EdgeOrder};

pub type Pivot = (usize, usize, usize);

pub const DEFAULT_MAX_STEPS: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GraphTerm {
    pub graph: LabeledGraph,
    pub beta_pow: u32,
    pub coeff: i64,
    /// Sorted multiset of edges removed by goodification on this branch.
    pub prefactor: Vec<Edge>,
}

impl GraphTerm {
    pub fn new(graph: LabeledGraph) -> Self {
        GraphTerm {
            graph,
            beta_pow: 0,
            coeff: 1,
            prefactor: Vec::new(),
        }
    }
}

impl fmt::Display for GraphTerm {
    /// `coeff beta^k [prefactor: i-j,...] edges: i-j,...`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pre: Vec<String> = self
            .prefactor
            .iter()
            .map(|(i, j)| format!("{i}-{j}"))
            .collect();
        write!(
            f,
            "{} beta^{} [prefactor: {}] edges: {}",
            self.coeff,
            self.beta_pow,
            pre.join(","),
            self.graph
        )
    }
}

type TermKey = (u32, LabeledGraph, Vec<Edge>);

/// A finite sum of graph terms with identical terms merged.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<TermKey, i64>,
}

impl FormalSum {
    pub fn new() -> Self {
        FormalSum::default()
    }

    pub fn push(&mut self, t: GraphTerm) {
        let key = (t.beta_pow, t.graph, t.prefactor);
        let c = self.terms.entry(key.clone()).or_insert(0);
        *c += t.coeff;
        if *c == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: by β-power, then graph, then prefactor.
    pub fn terms(&self) -> impl Iterator<Item = GraphTerm> + '_ {
        self.terms.iter().map(|((b, g, p), c)| GraphTerm {
            graph: g.clone(),
            beta_pow: *b,
            coeff: *c,
            prefactor: p.clone(),
        })
    }

    /// One line per term.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for t in self.terms() {
            s.push_str(&t.to_string());
            s.push('\n');
        }
        s
    }

    /// Reads the output of [`FormalSum::dump`] for graphs on `[n]`.
    pub fn parse_dump(n: usize, text: &str) -> Result<FormalSum> {
        let mut sum = FormalSum::new();
        for (k, line) in text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
        {
            let bad = || GreeneError::parse(k + 1, format!("bad term {line:?}"));
            let (coeff, rest) = line.trim().split_once(' ').ok_or_else(bad)?;
            let rest = rest.strip_prefix("beta^").ok_or_else(bad)?;
            let (beta, rest) = rest.split_once(' ').ok_or_else(bad)?;
            let rest = rest.strip_prefix("[prefactor: ").ok_or_else(bad)?;
            let (pre, rest) = rest.split_once(']').ok_or_else(bad)?;
            let edges = rest.trim().strip_prefix("edges:").ok_or_else(bad)?;
            let graph = LabeledGraph::new(n, parse_edge_list(edges)?)?;
            let mut prefactor = parse_edge_list(pre)?;
            prefactor.sort_unstable();
            sum.push(GraphTerm {
                graph,
                beta_pow: beta.parse().map_err(|_| bad())?,
                coeff: coeff.parse().map_err(|_| bad())?,
                prefactor,
            });
        }
        Ok(sum)
    }
}

/// Chooses which pivot to reduce next.
pub trait ReductionStrategy {
    fn name(&self) -> String;
    /// Index into `pivots`, which is non-empty and sorted by `(i, j, k)`.
    fn choose(&self, graph: &LabeledGraph, pivots: &[Pivot]) -> usize;
}

/// Smallest `(j, i, k)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct LexMin;

/// Largest `(j, i, k)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct LexMax;

/// Largest span `k - i`, ties broken by smallest `(j, i, k)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Longest;

/// Pseudo-random pivot, a deterministic function of the graph and seed.
#[derive(Clone, Copy, Debug)]
pub struct Seeded(pub u64);

fn jik(&(i, j, k): &Pivot) -> Pivot {
    (j, i, k)
}

impl ReductionStrategy for LexMin {
    fn name(&self) -> String {
        "lexmin".into()
    }
    fn choose(&self, _: &LabeledGraph, pivots: &[Pivot]) -> usize {
        (0..pivots.len()).min_by_key(|&x| jik(&pivots[x])).unwrap()
    }
}

impl ReductionStrategy for LexMax {
    fn name(&self) -> String {
        "lexmax".into()
    }
    fn choose(&self, _: &LabeledGraph, pivots: &[Pivot]) -> usize {
        (0..pivots.len()).max_by_key(|&x| jik(&pivots[x])).unwrap()
    }
}

impl ReductionStrategy for Longest {
    fn name(&self) -> String {
        "longest".into()
    }
    fn choose(&self, _: &LabeledGraph, pivots: &[Pivot]) -> usize {
        (0..pivots.len())
            .min_by_key(|&x| {
                let p = pivots[x];
                (usize::MAX - (p.2 - p.0), jik(&p))
            })
            .unwrap()
    }
}

impl ReductionStrategy for Seeded {
    fn name(&self) -> String {
        format!("random:{}", self.0)
    }
    fn choose(&self, graph: &LabeledGraph, pivots: &[Pivot]) -> usize {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        graph.hash(&mut h);
        (h.finish() % pivots.len() as u64) as usize
    }
}

/// Restricts the inner strategy to pivots `(i,j,k)` that lie on a cycle,
/// that is, where some increasing path from `i` to `k` avoids `j`. Only
/// when no such pivot exists is the inner strategy offered every pivot.
#[derive(Clone, Copy, Debug, Default)]
pub struct CycleFirst<S>(pub S);

/// The strategy used when none is named: cycle pivots first, then the
/// smallest `(j, i, k)`.
pub type DefaultStrategy = CycleFirst<LexMin>;

fn reaches_avoiding(succ: &[Vec<usize>], i: usize, k: usize, avoid: usize) -> bool {
    let mut seen = vec![false; succ.len()];
    let mut stack = vec![i];
    while let Some(v) = stack.pop() {
        for &w in &succ[v] {
            if w == k {
                return true;
            }
            if w != avoid && w < k && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

/// Pivots whose two edges lie on a common cycle of `graph`.
pub fn cycle_pivots(graph: &LabeledGraph, pivots: &[Pivot]) -> Vec<usize> {
    let mut succ = vec![Vec::new(); graph.n() + 1];
    for &(a, b) in graph.edges() {
        succ[a].push(b);
    }
    (0..pivots.len())
        .filter(|&x| {
            let (i, j, k) = pivots[x];
            succ[i]
                .iter()
                .any(|&w| w != j && (w == k || reaches_avoiding(&succ, w, k, j)))
        })
        .collect()
}

impl<S: ReductionStrategy> ReductionStrategy for CycleFirst<S> {
    fn name(&self) -> String {
        format!("cycle-{}", self.0.name())
    }
    fn choose(&self, graph: &LabeledGraph, pivots: &[Pivot]) -> usize {
        let on_cycle = cycle_pivots(graph, pivots);
        if on_cycle.is_empty() {
            return self.0.choose(graph, pivots);
        }
        let sub: Vec<Pivot> = on_cycle.iter().map(|&x| pivots[x]).collect();
        on_cycle[self.0.choose(graph, &sub)]
    }
}

/// `lexmin`, `lexmax`, `longest` or `random:<seed>`, each optionally
/// prefixed by `cycle-`.
pub fn strategy_by_name(name: &str) -> Result<Box<dyn ReductionStrategy>> {
    if let Some(inner) = name.strip_prefix("cycle-") {
        return Ok(match inner {
            "lexmin" => Box::new(CycleFirst(LexMin)),
            "lexmax" => Box::new(CycleFirst(LexMax)),
            "longest" => Box::new(CycleFirst(Longest)),
            _ => match inner.strip_prefix("random:").map(str::parse::<u64>) {
                Some(Ok(seed)) => Box::new(CycleFirst(Seeded(seed))),
                _ => return Err(GreeneError::parse(1, format!("unknown strategy {name:?}"))),
            },
        });
    }
    match name {
        "lexmin" => Ok(Box::new(LexMin)),
        "lexmax" => Ok(Box::new(LexMax)),
        "longest" => Ok(Box::new(Longest)),
        _ => match name.strip_prefix("random:").map(str::parse::<u64>) {
            Some(Ok(seed)) => Ok(Box::new(Seeded(seed))),
            _ => Err(GreeneError::parse(1, format!("unknown strategy {name:?}"))),
        },
    }
}

fn remove_one(edges: &mut Vec<Edge>, e: Edge) -> bool {
    match edges.iter().position(|&f| f == e) {
        Some(p) => {
            edges.remove(p);
            true
        }
        None => false,
    }
}

/// One application of the relation at `(i,j),(j,k)`, without goodifying.
pub fn reduce_step(t: &GraphTerm, (i, j, k): Pivot) -> Result<[GraphTerm; 3]> {
    let e = t.graph.edges();
    if !(i < j && j < k && e.contains(&(i, j)) && e.contains(&(j, k))) {
        return Err(GreeneError::PivotAbsent(i, j, k));
    }
    let child = |drop: &[Edge], beta: u32| {
        let mut edges = e.to_vec();
        for &d in drop {
            remove_one(&mut edges, d);
        }
        edges.push((i, k));
        GraphTerm {
            graph: t.graph.with_edges(edges),
            beta_pow: t.beta_pow + beta,
            coeff: t.coeff,
            prefactor: t.prefactor.clone(),
        }
    };
    Ok([
        child(&[(j, k)], 0),
        child(&[(i, j)], 0),
        child(&[(i, j), (j, k)], 1),
    ])
}

fn goodified(mut t: GraphTerm) -> GraphTerm {
    let (g, removed) = t.graph.goodify();
    t.graph = g;
    t.prefactor.extend(removed);
    t.prefactor.sort_unstable();
    t
}

#[derive(Clone, Copy, Debug)]
pub struct ReduceOptions {
    pub max_steps: usize,
    /// Triangulate alternating terms that still contain cycles.
    pub finish: bool,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions {
            max_steps: DEFAULT_MAX_STEPS,
            finish: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub sum: FormalSum,
    pub steps: usize,
    /// Alternating terms with cycles that were replaced by forest cones.
    pub finished_cells: usize,
}

/// Reduces until every term is an alternating forest.
pub fn reduce_full(g: &LabeledGraph, strategy: &dyn ReductionStrategy) -> Result<FormalSum> {
    Ok(reduce_with(g, strategy, ReduceOptions::default())?.sum)
}

pub fn reduce_with(
    g: &LabeledGraph,
    strategy: &dyn ReductionStrategy,
    opts: ReduceOptions,
) -> Result<Reduction> {
    let mut queue = FormalSum::new();
    queue.push(goodified(GraphTerm::new(g.clone())));
    let mut done = FormalSum::new();
    let mut steps = 0;
    while let Some((key, coeff)) = queue.terms.pop_first() {
        let (beta_pow, graph, prefactor) = key;
        let t = GraphTerm {
            graph,
            beta_pow,
            coeff,
            prefactor,
        };
        let pivots = t.graph.pivots();
        if pivots.is_empty() {
            done.push(t);
            continue;
        }
        steps += 1;
        if steps > opts.max_steps {
            return Err(GreeneError::StrategyDiverged(opts.max_steps));
        }
        let p = pivots[strategy.choose(&t.graph, &pivots)];
        for child in reduce_step(&t, p)? {
            queue.push(goodified(child));
        }
    }
    let mut finished_cells = 0;
    if opts.finish {
        let mut out = FormalSum::new();
        for t in done.terms() {
            if t.graph.is_forest() {
                out.push(t);
                continue;
            }
            finished_cells += 1;
            let rank = t.graph.rank();
            for (f, mu) in signed_forest_cover(&t.graph, &EdgeOrder::lex(&t.graph))? {
                let codim = (rank - f.edge_count()) as u32;
                let sign = if codim % 2 == 0 { 1 } else { -1 };
                out.push(GraphTerm {
                    graph: f,
                    beta_pow: t.beta_pow + codim,
                    coeff: t.coeff * mu * sign,
                    prefactor: t.prefactor.clone(),
                });
            }
        }
        done = out;
    }
    Ok(Reduction {
        sum: done,
        steps,
        finished_cells,
    })
}

fn require_forests(s: &FormalSum) -> Result<()> {
    if s.terms.keys().all(|(_, g, _)| g.is_forest()) {
        Ok(())
    } else {
        Err(GreeneError::NonForestTerm)
    }
}

/// `sum coeff * (-1)^k * prod x_j / (x_j - x_i)`; prefactors are ignored.
pub fn sigma_from_sum(s: &FormalSum) -> Result<RatFrac> {
    require_forests(s)?;
    let mut parts = Vec::with_capacity(s.len());
    for t in s.terms() {
        let sign = if t.beta_pow % 2 == 0 {
            t.coeff
        } else {
            -t.coeff
        };
        parts.push(ipt_frac(&t.graph)?.mul_poly(&Polynomial::constant(BigInt::from(sign))));
    }
    Ok(RatFrac::sum(parts))
}

/// The same value as `sigma_from_sum(&reduce_full(g, strategy)?)`, summed
/// bottom-up along the reduction: each intermediate total is the transform
/// of one intermediate cone, so denominators stay small.
pub fn sigma_by_reduction(g: &LabeledGraph, strategy: &dyn ReductionStrategy) -> Result<RatFrac> {
    let mut memo: HashMap<LabeledGraph, RatFrac> = HashMap::new();
    let mut steps = 0;
    let root = goodified(GraphTerm::new(g.clone())).graph;
    sigma_node(&root, strategy, &mut memo, &mut steps)
}

fn sigma_node(
    g: &LabeledGraph,
    strategy: &dyn ReductionStrategy,
    memo: &mut HashMap<LabeledGraph, RatFrac>,
    steps: &mut usize,
) -> Result<RatFrac> {
    if let Some(f) = memo.get(g) {
        return Ok(f.clone());
    }
    let pivots = g.pivots();
    let value = if pivots.is_empty() {
        if g.is_forest() {
            ipt_frac(g)?
        } else {
            // The term of codimension d carries beta^d and (-1)^d, which
            // cancel at beta = -1.
            let mut parts = Vec::new();
            for (f, mu) in signed_forest_cover(g, &EdgeOrder::lex(g))? {
                parts.push(ipt_frac(&f)?.mul_poly(&Polynomial::constant(BigInt::from(mu))));
            }
            RatFrac::sum(parts)
        }
    } else {
        *steps += 1;
        if *steps > DEFAULT_MAX_STEPS {
            return Err(GreeneError::StrategyDiverged(DEFAULT_MAX_STEPS));
        }
        let p = pivots[strategy.choose(g, &pivots)];
        let [a, b, c] = reduce_step(&GraphTerm::new(g.clone()), p)?;
        let a = sigma_node(&goodified(a).graph, strategy, memo, steps)?;
        let b = sigma_node(&goodified(b).graph, strategy, memo, steps)?;
        let c = sigma_node(&goodified(c).graph, strategy, memo, steps)?;
        a.add(&b).sub(&c)
    };
    memo.insert(g.clone(), value.clone());
    Ok(value)
}

/// `sum coeff / prod (x_i - x_j)` over the β-free spanning-tree terms.
pub fn psi_from_sum(s: &FormalSum) -> Result<RatFrac> {
    require_forests(s)?;
    let mut parts = Vec::new();
    for t in s.terms() {
        if t.beta_pow == 0 && t.graph.is_spanning_tree() {
            parts.push(tree_psi_frac(&t.graph)?.mul_poly(&Polynomial::constant(t.coeff)));
        }
    }
    Ok(RatFrac::sum(parts))
}

/// Every prefactor is the multiset of region pairs `(min, max)`, β-free
/// terms are spanning trees and `β^k` terms are forests with `n-1-k`
/// edges.
pub fn verify_prefactors(p: &Poset, regions: &[Region], s: &FormalSum) -> Result<bool> {
    let mut pairs = require_two_chains(regions)?;
    pairs.sort_unstable();
    let n = p.n();
    Ok(s.terms().all(|t| {
        t.prefactor == pairs
            && t.graph.is_forest()
            && t.graph.edge_count() + 1 + t.beta_pow as usize == n
    }))
}

pub fn verify_planar_identity(p: &Poset, e: &PlanarEmbedding, s: &FormalSum) -> Result<bool> {
    let regions = bounded_regions(p, e)?;
    verify_prefactors(p, &regions, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::frac_equal;
    use crate::poset::named::*;
    use num_rational::BigRational;

    fn g(n: usize, e: &[Edge]) -> LabeledGraph {
        LabeledGraph::new(n, e.iter().copied()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn path_step() {
        let t = GraphTerm::new(g(3, &[(1, 2), (2, 3)]));
        let [a, b, c] = reduce_step(&t, (1, 2, 3)).unwrap();
        assert_eq!(a.graph, g(3, &[(1, 2), (1, 3)]));
        assert_eq!(b.graph, g(3, &[(1, 3), (2, 3)]));
        assert_eq!(c.graph, g(3, &[(1, 3)]));
        assert_eq!((a.beta_pow, b.beta_pow, c.beta_pow), (0, 0, 1));
        assert_eq!(
            reduce_step(&t, (1, 3, 4)),
            Err(GreeneError::PivotAbsent(1, 3, 4))
        );
    }

    #[test]
    fn diamond_step() {
        let t = GraphTerm::new(diamond().hasse());
        let [a, b, c] = reduce_step(&t, (1, 2, 4)).unwrap();
        assert_eq!(a.graph, g(4, &[(1, 2), (1, 3), (1, 4), (3, 4)]));
        assert_eq!(b.graph, g(4, &[(1, 3), (1, 4), (2, 4), (3, 4)]));
        assert_eq!(c.graph, g(4, &[(1, 3), (1, 4), (3, 4)]));
        assert_eq!(c.beta_pow, 1);
    }

    #[test]
    fn path_reduces_in_one_step() {
        let s = reduce_full(&g(3, &[(1, 2), (2, 3)]), &LexMin).unwrap();
        assert_eq!(
            s.dump(),
            "1 beta^0 [prefactor: ] edges: 1-2,1-3\n\
             1 beta^0 [prefactor: ] edges: 1-3,2-3\n\
             1 beta^1 [prefactor: ] edges: 1-3\n"
        );
        assert!(frac_equal(
            &psi_from_sum(&s).unwrap(),
            &tree_psi_frac(&chain(3).hasse()).unwrap()
        ));
        assert_eq!(FormalSum::parse_dump(3, &s.dump()).unwrap(), s);
    }

    #[test]
    fn alternating_input_is_fixed() {
        let k = k22().hasse();
        let r = reduce_with(
            &k,
            &LexMin,
            ReduceOptions {
                finish: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r.sum.len(), 1);
        assert_eq!(r.steps, 0);
        assert_eq!(sigma_from_sum(&r.sum), Err(GreeneError::NonForestTerm));
    }

    #[test]
    fn diamond_values() {
        let s = reduce_full(&diamond().hasse(), &LexMin).unwrap();
        assert!(s.terms().all(|t| t.prefactor == vec![(1, 4)]));
        let pt = [1, 2, 3, 5];
        assert_eq!(
            sigma_from_sum(&s).unwrap().eval_ints(&pt).unwrap(),
            q(10, 1)
        );
        assert_eq!(psi_from_sum(&s).unwrap().eval_ints(&pt).unwrap(), q(-1, 3));
    }

    #[test]
    fn k22_sigma_value() {
        let s = reduce_full(&k22().hasse(), &LexMin).unwrap();
        let pt = [1, 2, 7, 11];
        assert_eq!(
            sigma_from_sum(&s).unwrap().eval_ints(&pt).unwrap(),
            q(77, 36)
        );
        assert_eq!(
            psi_from_sum(&s).unwrap().eval_ints(&pt).unwrap(),
            q(-1, 180)
        );
    }

    #[test]
    fn cycle_first_keeps_the_region_ledger() {
        // Plain lexmin cuts the region 2 < 3,4 < 5 at the pivot (1,3,5).
        let p = crate::poset::build_poset(5, &[(1, 3), (2, 3), (2, 4), (3, 5), (4, 5)]).unwrap();
        let plain = reduce_full(&p.hasse(), &LexMin).unwrap();
        assert!(plain.terms().any(|t| t.prefactor.is_empty()));
        let s = reduce_full(&p.hasse(), &DefaultStrategy::default()).unwrap();
        assert!(s.terms().all(|t| t.prefactor == vec![(2, 5)]));
        assert_eq!(s.terms().filter(|t| t.beta_pow == 0).count(), 6);
    }

    #[test]
    fn bracketed_sigma_matches_the_flat_sum() {
        for p in [diamond(), k22(), ladder(2), diamond_stack(2), chain(4)] {
            let flat =
                sigma_from_sum(&reduce_full(&p.hasse(), &DefaultStrategy::default()).unwrap());
            let tree = sigma_by_reduction(&p.hasse(), &DefaultStrategy::default()).unwrap();
            assert!(frac_equal(&flat.unwrap(), &tree), "{}", p.hasse());
        }
    }

    #[test]
    fn cycle_pivot_detection() {
        let d = diamond().hasse();
        let pivots = d.pivots();
        assert_eq!(cycle_pivots(&d, &pivots).len(), pivots.len());
        let vee = g(4, &[(1, 2), (2, 3), (2, 4)]);
        assert!(cycle_pivots(&vee, &vee.pivots()).is_empty());
    }

    #[test]
    fn strategies_by_name() {
        for name in [
            "lexmin",
            "lexmax",
            "longest",
            "random:7",
            "cycle-lexmin",
            "cycle-random:3",
        ] {
            assert_eq!(strategy_by_name(name).unwrap().name(), name);
        }
        assert!(strategy_by_name("nope").is_err());
    }
}
