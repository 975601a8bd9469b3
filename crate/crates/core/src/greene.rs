//! Evaluators for `Psi_P` and `sigma_P`, the notch identities and the
//! lattice-point check of the signed cone decomposition.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{Signed, Zero};

use crate::algebra::{frac_equal, tree_psi_frac, Factor, Monomial, Polynomial, RatFrac};
use crate::error::{GreeneError, Result};
use crate::poset::{
    close_notch, is_cactus, lattice_paths, require_two_chains, skew_to_poset, Cell, Edge,
    LabeledGraph, Notch, NotchShape, Poset, Region, SkewDiagram,
};
use crate::subdivision::{
    psi_from_sum, reduce_full, sigma_by_reduction, DefaultStrategy, FormalSum,
};
use crate::triangulation::{decompose_lr, forest_coordinates, lp_triangulation, EdgeOrder};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Oracle,
    General,
    Planar,
    Bflr,
    Admissible,
    Reduction,
}

impl Method {
    pub const ALL: [Method; 6] = [
        Method::Oracle,
        Method::General,
        Method::Planar,
        Method::Bflr,
        Method::Admissible,
        Method::Reduction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::General => "general",
            Method::Planar => "planar",
            Method::Bflr => "bflr",
            Method::Admissible => "admissible",
            Method::Reduction => "reduction",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = GreeneError;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| GreeneError::parse(1, format!("unknown method {s:?}")))
    }
}

/// Data from which a method's result can be recomputed.
#[derive(Clone, Debug)]
pub enum Witness {
    Extensions(usize),
    Trees(Vec<LabeledGraph>),
    Sum(FormalSum),
    Regions(Vec<Region>),
    Paths(Vec<Vec<Cell>>),
}

#[derive(Clone, Debug)]
pub struct MethodReport {
    pub method: Method,
    pub result: RatFrac,
    pub witness: Witness,
}

/// Sum over linear extensions, by dynamic programming over the last
/// placed element and the set still to place.
pub fn psi_oracle(p: &Poset) -> RatFrac {
    let n = p.n();
    assert!(n < 64, "poset too large for the oracle");
    let mut preds = vec![0u64; n + 1];
    for &(i, j) in p.covers() {
        preds[j] |= 1 << (i - 1);
    }
    let full: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut memo: HashMap<(usize, u64), RatFrac> = HashMap::new();
    let starts = (1..=n).filter(|&b| preds[b] == 0);
    RatFrac::sum(
        starts
            .map(|b| tail(b, full & !(1 << (b - 1)), &preds, &mut memo))
            .collect::<Vec<_>>(),
    )
}

/// Sum over orderings `b_1, b_2, ...` of the elements in `rest` of
/// `1 / ((x_a - x_{b_1})(x_{b_1} - x_{b_2}) ...)`.
fn tail(a: usize, rest: u64, preds: &[u64], memo: &mut HashMap<(usize, u64), RatFrac>) -> RatFrac {
    if rest == 0 {
        return RatFrac::one();
    }
    if let Some(f) = memo.get(&(a, rest)) {
        return f.clone();
    }
    let mut parts = Vec::new();
    for b in 1..preds.len() {
        let bit = 1u64 << (b - 1);
        if rest & bit != 0 && preds[b] & rest == 0 {
            parts.push(RatFrac::inv_diff(a, b).mul(&tail(b, rest & !bit, preds, memo)));
        }
    }
    let f = RatFrac::sum(parts);
    memo.insert((a, rest), f.clone());
    f
}

/// Direct sum over the listed linear extensions.
pub fn psi_oracle_naive(p: &Poset) -> RatFrac {
    RatFrac::sum(p.linear_extensions().into_iter().map(|w| {
        w.windows(2).fold(RatFrac::one(), |acc, k| {
            acc.mul(&RatFrac::inv_diff(k[0], k[1]))
        })
    }))
}

/// Ψ as a sum over `L, R` pieces of their Li–Postnikov trees.
pub fn psi_general(p: &Poset) -> Result<RatFrac> {
    Ok(psi_general_report(p)?.result)
}

fn psi_general_report(p: &Poset) -> Result<MethodReport> {
    let mut trees = Vec::new();
    for (_, g) in decompose_lr(p) {
        trees.extend(lp_triangulation(&g, &EdgeOrder::lex(&g))?);
    }
    let parts: Result<Vec<RatFrac>> = trees.iter().map(tree_psi_frac).collect();
    Ok(MethodReport {
        method: Method::General,
        result: RatFrac::sum(parts?),
        witness: Witness::Trees(trees),
    })
}

fn covers_den(p: &Poset) -> Vec<(Factor, u32)> {
    p.covers()
        .iter()
        .map(|&(i, j)| (Factor::Diff(i, j), 1))
        .collect()
}

fn var_prod(vars: &[usize]) -> Monomial {
    vars.iter()
        .fold(Monomial::one(), |m, &v| m.mul(&Monomial::var_pow(v, 1)))
}

/// `1 / prod (1 - x_i/x_j)` over the covers, that is
/// `prod x_j / (x_j - x_i)`.
fn sigma_covers(p: &Poset) -> RatFrac {
    let tops: Vec<usize> = p.covers().iter().map(|e| e.1).collect();
    let sign = if tops.len() % 2 == 0 { 1 } else { -1 };
    RatFrac::new(
        Polynomial::monomial(var_prod(&tops), BigInt::from(sign)),
        covers_den(p),
    )
}

/// `1 - prod x_min / prod x_max`, cleared to `(prod x_max - prod x_min) / prod x_max`.
fn one_minus_ratio(min: &[usize], max: &[usize]) -> RatFrac {
    let mut num = Polynomial::monomial(var_prod(max), BigInt::from(1));
    num.add_term(var_prod(min), BigInt::from(-1));
    RatFrac::new(num, max.iter().map(|&v| (Factor::Var(v), 1)))
}

/// `prod (x_min - x_max) / prod (x_i - x_j)` over regions and covers.
pub fn psi_planar(p: &Poset, regions: &[Region]) -> Result<RatFrac> {
    let pairs = require_two_chains(regions)?;
    let num = pairs
        .iter()
        .fold(Polynomial::one(), |acc, &(a, b)| acc.mul_linear(a, b));
    Ok(RatFrac::new(num, covers_den(p)))
}

pub fn sigma_planar(p: &Poset, regions: &[Region]) -> Result<RatFrac> {
    let pairs = require_two_chains(regions)?;
    Ok(pairs.iter().fold(sigma_covers(p), |acc, &(a, b)| {
        acc.mul(&one_minus_ratio(&[a], &[b]))
    }))
}

/// `prod (sum_{min} x_i - sum_{max} x_j) / prod (x_i - x_j)`.
pub fn psi_admissible(p: &Poset, regions: &[Region]) -> Result<RatFrac> {
    if regions.is_empty() && !p.hasse().is_forest() {
        return Err(GreeneError::MissingRegions);
    }
    let mut num = Polynomial::one();
    for r in regions {
        let mut lin = Polynomial::zero();
        for &i in &r.min {
            lin += &Polynomial::var(i);
        }
        for &j in &r.max {
            lin += &(-&Polynomial::var(j));
        }
        num = &num * &lin;
    }
    Ok(RatFrac::new(num, covers_den(p)))
}

/// `prod (1 - prod_{min} x_i / prod_{max} x_j) / prod (1 - x_i/x_j)`.
pub fn sigma_admissible(p: &Poset, regions: &[Region]) -> Result<RatFrac> {
    if regions.is_empty() && !p.hasse().is_forest() {
        return Err(GreeneError::MissingRegions);
    }
    Ok(regions.iter().fold(sigma_covers(p), |acc, r| {
        acc.mul(&one_minus_ratio(&r.min, &r.max))
    }))
}

/// Admissibility certificate: `H(P)` is a cactus, or closing the listed
/// notches one after another turns the cactus poset `base` into `p`.
pub fn certify_admissible(p: &Poset, script: Option<(&Poset, &[Notch])>) -> Result<()> {
    match script {
        None if is_cactus(&p.hasse()) => Ok(()),
        None => Err(GreeneError::NotAdmissible(
            "Hasse diagram has a block that is neither an edge nor a cycle".into(),
        )),
        Some((base, notches)) => {
            if !is_cactus(&base.hasse()) {
                return Err(GreeneError::NotAdmissible(
                    "base poset is not a cactus".into(),
                ));
            }
            let mut q = base.clone();
            for &t in notches {
                q = close_notch(&q, t)?.poset;
            }
            if &q == p {
                Ok(())
            } else {
                Err(GreeneError::NotAdmissible(
                    "closing script does not reproduce the poset".into(),
                ))
            }
        }
    }
}

/// Sum over lattice paths of `1 / prod (x_i - y_j)` in the labels of
/// [`skew_to_poset`].
pub fn psi_bflr(d: &SkewDiagram) -> Result<RatFrac> {
    Ok(psi_bflr_report(d)?.result)
}

pub fn psi_bflr_report(d: &SkewDiagram) -> Result<MethodReport> {
    let paths = lattice_paths(d)?;
    let parts = paths.iter().map(|path| {
        RatFrac::new(
            Polynomial::one(),
            path.iter()
                .map(|&(i, j)| (Factor::Diff(d.x_label(i), d.y_label(j)), 1)),
        )
    });
    Ok(MethodReport {
        method: Method::Bflr,
        result: RatFrac::sum(parts.collect::<Vec<_>>()),
        witness: Witness::Paths(paths),
    })
}

/// σ of the root cone via the reduction engine with the default strategy.
pub fn sigma_reduction(p: &Poset) -> Result<RatFrac> {
    sigma_by_reduction(&p.hasse(), &DefaultStrategy::default())
}

/// Ψ by `method`. `regions` feeds the planar and admissible formulas;
/// `skew` is required for `bflr`.
pub fn psi_report(
    p: &Poset,
    method: Method,
    regions: Option<&[Region]>,
    skew: Option<&SkewDiagram>,
) -> Result<MethodReport> {
    let with_regions = |f: fn(&Poset, &[Region]) -> Result<RatFrac>| -> Result<MethodReport> {
        let regions = regions.ok_or(GreeneError::MissingRegions)?;
        Ok(MethodReport {
            method,
            result: f(p, regions)?,
            witness: Witness::Regions(regions.to_vec()),
        })
    };
    match method {
        Method::Oracle => Ok(MethodReport {
            method,
            result: psi_oracle(p),
            witness: Witness::Extensions(p.linear_extensions().len()),
        }),
        Method::General => psi_general_report(p),
        Method::Planar => with_regions(psi_planar),
        Method::Admissible => with_regions(psi_admissible),
        Method::Bflr => {
            let d = skew.ok_or_else(|| {
                GreeneError::InvalidSkew("the bflr method needs a skew diagram input".into())
            })?;
            psi_bflr_report(d)
        }
        Method::Reduction => {
            let sum = reduce_full(&p.hasse(), &DefaultStrategy::default())?;
            Ok(MethodReport {
                method,
                result: psi_from_sum(&sum)?,
                witness: Witness::Sum(sum),
            })
        }
    }
}

/// σ by `method`: only `reduction`, `planar` and `admissible` apply.
pub fn sigma_report(p: &Poset, method: Method, regions: Option<&[Region]>) -> Result<MethodReport> {
    let regions_or = || regions.ok_or(GreeneError::MissingRegions);
    match method {
        Method::Reduction => {
            let sum = reduce_full(&p.hasse(), &DefaultStrategy::default())?;
            Ok(MethodReport {
                method,
                result: sigma_reduction(p)?,
                witness: Witness::Sum(sum),
            })
        }
        Method::Planar => Ok(MethodReport {
            method,
            result: sigma_planar(p, regions_or()?)?,
            witness: Witness::Regions(regions_or()?.to_vec()),
        }),
        Method::Admissible => Ok(MethodReport {
            method,
            result: sigma_admissible(p, regions_or()?)?,
            witness: Witness::Regions(regions_or()?.to_vec()),
        }),
        other => Err(GreeneError::parse(
            1,
            format!("method {other} does not compute sigma"),
        )),
    }
}

/// Outcome of both notch identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NotchCheck {
    pub psi: bool,
    pub sigma: bool,
}

impl NotchCheck {
    pub fn holds(&self) -> bool {
        self.psi && self.sigma
    }
}

/// Compares `Psi` and `sigma` of the closed poset with the specialisation
/// `x_c := x_b` of those of `p`, times `(x_a - x_b)` and `(1 - x_a/x_b)`
/// for a V-notch, or `(x_b - x_a)` and `(1 - x_b/x_a)` for a wedge.
pub fn check_notch_identity(p: &Poset, t: Notch) -> Result<NotchCheck> {
    let closed = close_notch(p, t)?;
    let (b, c) = (t.b.min(t.c), t.b.max(t.c));
    let a = t.a;
    // New label -> old representative, with the merged element read as b.
    let mut back = vec![0usize; closed.poset.n() + 1];
    for v in (1..=p.n()).filter(|&v| v != c) {
        back[closed.relabel(v)] = v;
    }
    let to_old = |v: usize| back[v];

    let psi_closed = psi_oracle(&closed.poset).rename(&to_old);
    let sigma_closed = sigma_reduction(&closed.poset)?.rename(&to_old);
    let psi_spec = psi_oracle(p).substitute(c, b)?;
    let sigma_spec = sigma_reduction(p)?.substitute(c, b)?;
    let (psi_factor, sigma_factor) = match t.shape {
        NotchShape::V => (
            RatFrac::from_poly(Polynomial::linear(a, b)),
            one_minus_ratio(&[a], &[b]),
        ),
        NotchShape::Wedge => (
            RatFrac::from_poly(Polynomial::linear(b, a)),
            one_minus_ratio(&[b], &[a]),
        ),
    };
    Ok(NotchCheck {
        psi: frac_equal(&psi_closed, &psi_spec.mul(&psi_factor)),
        sigma: frac_equal(&sigma_closed, &sigma_spec.mul(&sigma_factor)),
    })
}

#[derive(Clone, Debug, Default)]
pub struct LatticeReport {
    pub points: usize,
    pub inside: usize,
    /// Points where the signed incidence disagrees with membership.
    pub mismatches: Vec<Vec<i64>>,
}

impl LatticeReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Solves `A lambda = m` for the vectors `e_i - e_j` of `edges`, assumed
/// independent; `None` when `m` is outside their span.
fn solve_coordinates(n: usize, edges: &[Edge], m: &[i64]) -> Option<Vec<Rational64>> {
    let cols = edges.len();
    let mut a: Vec<Vec<Rational64>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rational64> = edges
                .iter()
                .map(|&(i, j)| {
                    Rational64::from_integer(if r + 1 == i {
                        1
                    } else if r + 1 == j {
                        -1
                    } else {
                        0
                    })
                })
                .collect();
            row.push(Rational64::from_integer(m[r]));
            row
        })
        .collect();
    let mut row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for col in 0..cols {
        let Some(pr) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            return None;
        };
        a.swap(row, pr);
        let inv = a[row][col].recip();
        for x in col..=cols {
            a[row][x] *= inv;
        }
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col];
                for x in col..=cols {
                    let delta = f * a[row][x];
                    a[r][x] -= delta;
                }
            }
        }
        pivots.push(row);
        row += 1;
    }
    if (row..n).any(|r| !a[r][cols].is_zero()) {
        return None;
    }
    Some(pivots.iter().map(|&r| a[r][cols]).collect())
}

/// Independent generator subsets of the cover vectors, for membership in
/// `C(H(P))`.
fn independent_subsets(g: &LabeledGraph) -> Vec<Vec<Edge>> {
    let edges = g.edges();
    let rank = g.rank();
    let mut out = Vec::new();
    let mut pick = Vec::with_capacity(rank);
    subsets_rec(edges, 0, rank, &mut pick, &mut out);
    // Independence of difference vectors: no cycle among the chosen edges.
    out.into_iter()
        .filter(|s| g.with_edges(s.clone()).is_forest())
        .collect()
}

fn subsets_rec(
    edges: &[Edge],
    idx: usize,
    k: usize,
    pick: &mut Vec<Edge>,
    out: &mut Vec<Vec<Edge>>,
) {
    if pick.len() == k {
        out.push(pick.clone());
        return;
    }
    if edges.len() - idx < k - pick.len() {
        return;
    }
    pick.push(edges[idx]);
    subsets_rec(edges, idx + 1, k, pick, out);
    pick.pop();
    subsets_rec(edges, idx + 1, k, pick, out);
}

fn in_cone(n: usize, bases: &[Vec<Edge>], m: &[i64]) -> bool {
    bases
        .iter()
        .any(|b| solve_coordinates(n, b, m).is_some_and(|lam| lam.iter().all(|x| !x.is_negative())))
}

fn signed_incidence(s: &FormalSum, m: &[i64]) -> i64 {
    s.terms()
        .filter(|t| forest_coordinates(&t.graph, m).is_some_and(|c| c.iter().all(|&x| x >= 0)))
        .map(|t| {
            if t.beta_pow % 2 == 0 {
                t.coeff
            } else {
                -t.coeff
            }
        })
        .sum()
}

/// All integer points of `[-bound, bound]^n` with coordinate sum 0.
pub fn box_points(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    points_rec(n, bound, 0, &mut cur, &mut out);
    out
}

fn points_rec(n: usize, bound: i64, sum: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if cur.len() + 1 == n {
        if -sum >= -bound && -sum <= bound {
            cur.push(-sum);
            out.push(cur.clone());
            cur.pop();
        }
        return;
    }
    if n == 0 {
        return;
    }
    for v in -bound..=bound {
        cur.push(v);
        points_rec(n, bound, sum + v, cur, out);
        cur.pop();
    }
}

/// Compares, on every point of [`box_points`], the signed incidence of the
/// terminated sum with membership in `C(H(P))` decided from scratch.
pub fn lattice_point_report(p: &Poset, s: &FormalSum, bound: i64) -> Result<LatticeReport> {
    if s.terms().any(|t| !t.graph.is_forest()) {
        return Err(GreeneError::NonForestTerm);
    }
    let h = p.hasse();
    let bases = independent_subsets(&h);
    let mut report = LatticeReport::default();
    for m in box_points(p.n(), bound) {
        report.points += 1;
        let member = in_cone(p.n(), &bases, &m);
        if member {
            report.inside += 1;
        }
        if signed_incidence(s, &m) != i64::from(member) {
            report.mismatches.push(m);
        }
    }
    Ok(report)
}

pub fn lattice_point_check(p: &Poset, bound: i64) -> Result<bool> {
    let s = reduce_full(&p.hasse(), &DefaultStrategy::default())?;
    Ok(lattice_point_report(p, &s, bound)?.passed())
}

/// The poset of a skew diagram, without its line order.
pub fn skew_poset(d: &SkewDiagram) -> Poset {
    skew_to_poset(d).0
}
