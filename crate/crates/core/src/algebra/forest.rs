//! Valuations of simplicial root cones spanned by forests.

use num_bigint::BigInt;

use super::frac::{Factor, RatFrac};
use super::poly::{Monomial, Polynomial};
use crate::error::{GreeneError, Result};
use crate::poset::LabeledGraph;

/// `1 / prod (x_i - x_j)` over the edges of a forest.
pub fn tree_psi_frac(t: &LabeledGraph) -> Result<RatFrac> {
    if !t.is_forest() {
        return Err(GreeneError::NotAForest);
    }
    Ok(RatFrac::new(
        Polynomial::one(),
        t.edges().iter().map(|&(i, j)| (Factor::Diff(i, j), 1)),
    ))
}

/// `prod 1 / (1 - x_i/x_j) = prod x_j / (x_j - x_i)` over the edges of a
/// forest.
pub fn ipt_frac(t: &LabeledGraph) -> Result<RatFrac> {
    if !t.is_forest() {
        return Err(GreeneError::NotAForest);
    }
    let mut exps = vec![0u32; t.n()];
    for &(_, j) in t.edges() {
        exps[j - 1] += 1;
    }
    let sign = if t.edge_count() % 2 == 0 { 1 } else { -1 };
    let num = Polynomial::monomial(Monomial::from_exponents(exps), BigInt::from(sign));
    Ok(RatFrac::new(
        num,
        t.edges().iter().map(|&(i, j)| (Factor::Diff(i, j), 1)),
    ))
}

#[cfg(test)]
mod tests {
    use num_rational::BigRational;

    use super::*;
    use crate::algebra::canonical_text;

    fn g(n: usize, e: &[(usize, usize)]) -> LabeledGraph {
        LabeledGraph::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn tree_psi_examples() {
        let f = tree_psi_frac(&g(3, &[(1, 2), (2, 3)])).unwrap();
        assert_eq!(canonical_text(&f), "1 / ((x1 - x2)*(x2 - x3))");
        let f = tree_psi_frac(&g(2, &[(1, 2)])).unwrap();
        assert_eq!(canonical_text(&f), "1 / ((x1 - x2))");
        assert_eq!(
            tree_psi_frac(&g(4, &[(1, 3), (1, 4), (2, 3), (2, 4)])),
            Err(GreeneError::NotAForest)
        );
    }

    #[test]
    fn ipt_examples() {
        let f = ipt_frac(&g(2, &[(1, 2)])).unwrap();
        assert_eq!(
            f.eval_ints(&[1, 3]).unwrap(),
            BigRational::new(3.into(), 2.into())
        );
        let f = ipt_frac(&g(4, &[(1, 2), (2, 4), (3, 4)])).unwrap();
        assert_eq!(
            f.eval_ints(&[1, 2, 3, 5]).unwrap(),
            BigRational::new(25.into(), 3.into())
        );
        let f = ipt_frac(&g(3, &[(1, 2), (2, 3)])).unwrap();
        assert_eq!(
            f.eval_ints(&[1, 2, 4]).unwrap(),
            BigRational::from_integer(4.into())
        );
    }
}
