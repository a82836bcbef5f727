//! Exact linear algebra over the rationals.
//!
//! Everything here is plain Gaussian elimination on sparse rows, no pivoting
//! heuristics beyond "smallest column first, smallest row index on ties", so
//! results are bit-for-bit deterministic in both execution modes.  Rows are
//! sorted `(column, coefficient)` lists with no zero coefficients.

use crate::exec;
use crate::scalar::Scalar;
use num_traits::{One, Zero};

pub type SparseRow = Vec<(usize, Scalar)>;

/// Drops zero coefficients and asserts ascending column order.
pub fn cleanup_row(row: SparseRow) -> SparseRow {
    debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
    row.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// a - k*b, both sorted, merged in one pass.
pub fn row_sub_scaled(a: &SparseRow, b: &SparseRow, k: &Scalar) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                let v = va - k * vb;
                if !v.is_zero() {
                    out.push((*ca, v));
                }
                i += 1;
                j += 1;
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (Some(_), Some((cb, vb))) => {
                out.push((*cb, -(k * vb)));
                j += 1;
            }
            (Some((ca, va)), None) => {
                out.push((*ca, va.clone()));
                i += 1;
            }
            (None, Some((cb, vb))) => {
                out.push((*cb, -(k * vb)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Reduced row echelon basis of a row space.
#[derive(Debug, Clone)]
pub struct Echelon {
    cols: usize,
    /// Sorted by pivot column; each row has leading coefficient 1 and zeros
    /// in every other row's pivot column.
    rows: Vec<SparseRow>,
}

impl Echelon {
    /// Row-reduces `rows` (need not be sorted or independent).
    pub fn from_rows(cols: usize, rows: Vec<SparseRow>) -> Self {
        let mut pending: Vec<SparseRow> = rows.into_iter().map(cleanup_row).collect();
        let mut basis: Vec<SparseRow> = Vec::new();
        loop {
            pending.retain(|r| !r.is_empty());
            // Invariant: pending rows are reduced against every basis row.
            let Some(best) = pending
                .iter()
                .enumerate()
                .min_by_key(|(idx, r)| (r[0].0, *idx))
                .map(|(idx, _)| idx)
            else {
                break;
            };
            let mut pivot_row = pending.remove(best);
            let lead = pivot_row[0].1.clone();
            let pivot_col = pivot_row[0].0;
            if !lead.is_one() {
                for (_, v) in &mut pivot_row {
                    *v /= &lead;
                }
            }
            let eliminate = |row: &SparseRow| -> Option<SparseRow> {
                let k = row.iter().find(|(c, _)| *c == pivot_col).map(|(_, v)| v.clone())?;
                Some(row_sub_scaled(row, &pivot_row, &k))
            };
            let updated = exec::map_indices(basis.len(), |i| eliminate(&basis[i]));
            for (row, new) in basis.iter_mut().zip(updated) {
                if let Some(new) = new {
                    *row = new;
                }
            }
            let updated = exec::map_indices(pending.len(), |i| eliminate(&pending[i]));
            for (row, new) in pending.iter_mut().zip(updated) {
                if let Some(new) = new {
                    *row = new;
                }
            }
            basis.push(pivot_row);
        }
        basis.sort_by_key(|r| r[0].0);
        Echelon { cols, rows: basis }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r[0].0)
    }

    /// Normal form of `row` modulo the row space.  Idempotent.
    pub fn reduce(&self, row: SparseRow) -> SparseRow {
        let mut row = cleanup_row(row);
        for basis_row in &self.rows {
            if row.is_empty() {
                break;
            }
            let pivot = basis_row[0].0;
            if let Some(k) = row.iter().find(|(c, _)| *c == pivot).map(|(_, v)| v.clone()) {
                row = row_sub_scaled(&row, basis_row, &k);
            }
        }
        row
    }

    /// Whether `row` lies in the row space.
    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }
}

/// Solution set of a consistent linear system: `particular + span(nullspace)`.
#[derive(Debug, Clone)]
pub struct AffineSolution {
    pub particular: Vec<Scalar>,
    pub nullspace: Vec<Vec<Scalar>>,
}

impl AffineSolution {
    pub fn is_unique(&self) -> bool {
        self.nullspace.is_empty()
    }
}

/// Solves `A x = b` given as (row, rhs) pairs; `None` when inconsistent.
///
/// The particular solution sets every free variable to zero, so the output is
/// canonical for a fixed row order.
pub fn solve_affine(unknowns: usize, rows: &[(SparseRow, Scalar)]) -> Option<AffineSolution> {
    let augmented: Vec<SparseRow> = rows
        .iter()
        .map(|(row, rhs)| {
            let mut r = row.clone();
            if !rhs.is_zero() {
                r.push((unknowns, rhs.clone()));
            }
            r
        })
        .collect();
    let ech = Echelon::from_rows(unknowns + 1, augmented);
    let mut particular = vec![Scalar::zero(); unknowns];
    let mut is_pivot = vec![false; unknowns];
    for row in ech.rows() {
        let pivot = row[0].0;
        if pivot == unknowns {
            return None;
        }
        is_pivot[pivot] = true;
        if let Some((_, v)) = row.iter().find(|(c, _)| *c == unknowns) {
            particular[pivot] = v.clone();
        }
    }
    let mut nullspace = Vec::new();
    for free in (0..unknowns).filter(|c| !is_pivot[*c]) {
        let mut vec = vec![Scalar::zero(); unknowns];
        vec[free] = Scalar::one();
        for row in ech.rows() {
            if let Some((_, v)) = row.iter().find(|(c, _)| *c == free) {
                vec[row[0].0] = -v.clone();
            }
        }
        nullspace.push(vec);
    }
    Some(AffineSolution { particular, nullspace })
}

/// Inverse of a dense row-major n x n matrix, `None` when singular.
pub fn invert_dense(n: usize, a: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(a.len(), n * n, "matrix shape");
    // Gauss-Jordan on [A | I].
    let width = 2 * n;
    let mut m: Vec<Scalar> = vec![Scalar::zero(); n * width];
    for r in 0..n {
        for c in 0..n {
            m[r * width + c] = a[r * n + c].clone();
        }
        m[r * width + n + r] = Scalar::one();
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r * width + col].is_zero())?;
        if pivot != col {
            for c in 0..width {
                m.swap(pivot * width + c, col * width + c);
            }
        }
        let lead = m[col * width + col].clone();
        for c in col..width {
            m[col * width + c] /= &lead;
        }
        for r in 0..n {
            if r == col || m[r * width + col].is_zero() {
                continue;
            }
            let k = m[r * width + col].clone();
            for c in col..width {
                let sub = &k * &m[col * width + c];
                m[r * width + c] -= sub;
            }
        }
    }
    let mut inv = vec![Scalar::zero(); n * n];
    for r in 0..n {
        for c in 0..n {
            inv[r * n + c] = m[r * width + n + c].clone();
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|(c, v)| (*c, int(*v))).collect()
    }

    #[test]
    fn echelon_rank_and_reduce() {
        let ech = Echelon::from_rows(
            3,
            vec![row(&[(0, 1), (1, 2)]), row(&[(1, 1), (2, 1)]), row(&[(0, 1), (1, 1), (2, -1)])],
        );
        assert_eq!(ech.rank(), 2);
        assert!(ech.contains(row(&[(0, 2), (1, 3), (2, -1)])));
        assert!(!ech.contains(row(&[(2, 1)])));
        let nf = ech.reduce(row(&[(0, 1)]));
        assert_eq!(ech.reduce(nf.clone()), nf);
    }

    #[test]
    fn echelon_is_reduced_form() {
        let ech = Echelon::from_rows(3, vec![row(&[(0, 2), (1, 4)]), row(&[(0, 1), (1, 1)])]);
        // Pivot columns carry 1 and appear in exactly one row.
        for r in ech.rows() {
            assert!(r[0].1.is_one());
            for other in ech.rows() {
                if other[0].0 != r[0].0 {
                    assert!(other.iter().all(|(c, _)| *c != r[0].0));
                }
            }
        }
    }

    #[test]
    fn solve_affine_unique() {
        // x + y = 3, x - y = 1.
        let sol = solve_affine(
            2,
            &[(row(&[(0, 1), (1, 1)]), int(3)), (row(&[(0, 1), (1, -1)]), int(1))],
        )
        .unwrap();
        assert!(sol.is_unique());
        assert_eq!(sol.particular, vec![int(2), int(1)]);
    }

    #[test]
    fn solve_affine_underdetermined() {
        let sol = solve_affine(3, &[(row(&[(0, 1), (2, 1)]), int(1))]).unwrap();
        assert_eq!(sol.nullspace.len(), 2);
        assert_eq!(sol.particular[0], int(1));
        for null in &sol.nullspace {
            let dot = &null[0] + &null[2];
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn solve_affine_inconsistent() {
        assert!(solve_affine(1, &[(row(&[(0, 1)]), int(1)), (row(&[(0, 1)]), int(2))]).is_none());
    }

    #[test]
    fn invert_dense_roundtrip() {
        let a = vec![int(2), int(1), int(1), int(1)];
        let inv = invert_dense(2, &a).unwrap();
        assert_eq!(inv, vec![int(1), int(-1), int(-1), int(2)]);
        assert!(invert_dense(2, &[int(1), int(2), int(2), int(4)]).is_none());
        let b = vec![frac(1, 2), int(0), int(0), frac(2, 3)];
        let binv = invert_dense(2, &b).unwrap();
        assert_eq!(binv[0], int(2));
        assert_eq!(binv[3], frac(3, 2));
    }

    #[test]
    fn sequential_mode_matches_parallel() {
        let rows = vec![
            row(&[(0, 3), (2, 1), (4, 5)]),
            row(&[(1, 1), (3, 2)]),
            row(&[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]),
            row(&[(2, 7)]),
        ];
        let par = Echelon::from_rows(5, rows.clone());
        let seq = crate::exec::run_sequential(|| Echelon::from_rows(5, rows));
        assert_eq!(par.rows(), seq.rows());
    }
}
