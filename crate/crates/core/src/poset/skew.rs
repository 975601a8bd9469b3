//! Skew Ferrers diagrams and their bipartite posets.
//!
//! Rows are numbered top to bottom `1..=r`, columns right to left `1..=c`;
//! row `i` occupies the column interval `[a_i, b_i]`.

use super::{build_poset, Edge, Poset};
use crate::error::{GreeneError, Result};

/// Cell `(row, column)`.
pub type Cell = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewDiagram {
    cols: usize,
    rows: Vec<(usize, usize)>,
}

impl SkewDiagram {
    pub fn new(cols: usize, rows: Vec<(usize, usize)>) -> Result<Self> {
        if rows.is_empty() || cols == 0 {
            return Err(GreeneError::EmptyDiagram);
        }
        for (k, &(a, b)) in rows.iter().enumerate() {
            if a == 0 || a > b || b > cols {
                return Err(GreeneError::InvalidSkew(format!(
                    "row {} has interval [{a},{b}] outside [1,{cols}]",
                    k + 1
                )));
            }
        }
        for w in rows.windows(2) {
            if w[0].0 > w[1].0 || w[0].1 > w[1].1 {
                return Err(GreeneError::InvalidSkew(
                    "row endpoints must be non-decreasing".into(),
                ));
            }
        }
        let mut covered = vec![false; cols + 1];
        for &(a, b) in &rows {
            for c in a..=b {
                covered[c] = true;
            }
        }
        if covered[1..].iter().any(|&c| !c) {
            return Err(GreeneError::InvalidSkew(
                "rows do not cover every column".into(),
            ));
        }
        Ok(SkewDiagram { cols, rows })
    }

    /// Full `r x c` rectangle.
    pub fn rectangle(r: usize, c: usize) -> Result<Self> {
        SkewDiagram::new(c, vec![(1, c); r])
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn intervals(&self) -> &[(usize, usize)] {
        &self.rows
    }

    pub fn contains(&self, (i, j): Cell) -> bool {
        i >= 1 && i <= self.rows.len() && {
            let (a, b) = self.rows[i - 1];
            a <= j && j <= b
        }
    }

    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (k, &(a, b)) in self.rows.iter().enumerate() {
            for j in a..=b {
                out.push((k + 1, j));
            }
        }
        out
    }

    /// Poset label of `x_i`: the line order is `x_r, ..., x_1, y_1, ..., y_c`.
    pub fn x_label(&self, i: usize) -> usize {
        self.rows.len() - i + 1
    }

    /// Poset label of `y_j`.
    pub fn y_label(&self, j: usize) -> usize {
        self.rows.len() + j
    }

    /// Cell for a cover `(x, y)` of the bipartite poset.
    pub fn cell_of_edge(&self, (x, y): Edge) -> Option<Cell> {
        let r = self.rows.len();
        if x == 0 || x > r || y <= r || y > r + self.cols {
            return None;
        }
        Some((r - x + 1, y - r))
    }

    /// Every skew diagram with at most `max_r` rows and `max_c` columns.
    pub fn enumerate(max_r: usize, max_c: usize) -> Vec<SkewDiagram> {
        let mut out = Vec::new();
        for c in 1..=max_c {
            for r in 1..=max_r {
                let mut rows = Vec::new();
                gen_rows(c, r, 1, 1, &mut rows, &mut out);
            }
        }
        out
    }
}

fn gen_rows(
    c: usize,
    r: usize,
    min_a: usize,
    min_b: usize,
    rows: &mut Vec<(usize, usize)>,
    out: &mut Vec<SkewDiagram>,
) {
    if rows.len() == r {
        if let Ok(d) = SkewDiagram::new(c, rows.clone()) {
            out.push(d);
        }
        return;
    }
    for a in min_a..=c {
        for b in a.max(min_b)..=c {
            rows.push((a, b));
            gen_rows(c, r, a, b, rows, out);
            rows.pop();
        }
    }
}

/// The bipartite poset `P_D` on labels `1..r = x_r..x_1` and
/// `r+1..r+c = y_1..y_c`, together with its left-to-right line order.
pub fn skew_to_poset(d: &SkewDiagram) -> (Poset, Vec<usize>) {
    let mut covers = Vec::new();
    for (i, j) in d.cells() {
        covers.push((d.x_label(i), d.y_label(j)));
    }
    let n = d.rows() + d.cols();
    let p = build_poset(n, &covers).expect("bipartite cover sets are valid posets");
    (p, (1..=n).collect())
}

/// All south/west lattice paths of cells from `(1,1)` to `(r,c)` inside
/// `D`, south steps explored first.
pub fn lattice_paths(d: &SkewDiagram) -> Result<Vec<Vec<Cell>>> {
    if d.rows() == 0 || d.cols() == 0 {
        return Err(GreeneError::EmptyDiagram);
    }
    let mut out = Vec::new();
    if !d.contains((1, 1)) {
        return Ok(out);
    }
    let mut path = vec![(1, 1)];
    walk(d, &mut path, &mut out);
    Ok(out)
}

fn walk(d: &SkewDiagram, path: &mut Vec<Cell>, out: &mut Vec<Vec<Cell>>) {
    let (i, j) = *path.last().unwrap();
    if (i, j) == (d.rows(), d.cols()) {
        out.push(path.clone());
        return;
    }
    for next in [(i + 1, j), (i, j + 1)] {
        if d.contains(next) {
            path.push(next);
            walk(d, path, out);
            path.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
    }

    #[test]
    fn k22_transcription() {
        let d = SkewDiagram::rectangle(2, 2).unwrap();
        let (p, order) = skew_to_poset(&d);
        assert_eq!(p.covers(), &[(1, 3), (1, 4), (2, 3), (2, 4)]);
        assert_eq!(order, vec![1, 2, 3, 4]);
    }

    #[test]
    fn single_row_is_a_star() {
        let d = SkewDiagram::new(3, vec![(1, 3)]).unwrap();
        let (p, _) = skew_to_poset(&d);
        assert_eq!(p.covers(), &[(1, 2), (1, 3), (1, 4)]);
        assert_eq!(lattice_paths(&d).unwrap().len(), 1);
    }

    #[test]
    fn staircase_relabeling() {
        let d = SkewDiagram::new(2, vec![(1, 1), (1, 2)]).unwrap();
        let (p, _) = skew_to_poset(&d);
        // x_1 y_1 -> (2,3); x_2 y_1 -> (1,3); x_2 y_2 -> (1,4).
        assert_eq!(p.covers(), &[(1, 3), (1, 4), (2, 3)]);
    }

    #[test]
    fn two_by_two_paths() {
        let d = SkewDiagram::rectangle(2, 2).unwrap();
        assert_eq!(
            lattice_paths(&d).unwrap(),
            vec![vec![(1, 1), (2, 1), (2, 2)], vec![(1, 1), (1, 2), (2, 2)]]
        );
    }

    #[test]
    fn rectangle_path_counts_are_binomial() {
        for r in 1..=4 {
            for c in 1..=4 {
                let d = SkewDiagram::rectangle(r, c).unwrap();
                assert_eq!(lattice_paths(&d).unwrap().len(), binom(r + c - 2, r - 1));
            }
        }
    }

    #[test]
    fn validation() {
        assert_eq!(SkewDiagram::new(2, vec![]), Err(GreeneError::EmptyDiagram));
        assert!(SkewDiagram::new(2, vec![(2, 2), (1, 2)]).is_err());
        assert!(SkewDiagram::new(3, vec![(1, 1), (3, 3)]).is_err());
        assert!(!SkewDiagram::enumerate(2, 2).is_empty());
    }
}
