//! Dense exact matrices over ℚ(i) and fraction-free elimination.

use std::fmt;

use crate::numeric::GaussScalar;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<GaussScalar>>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![vec![GaussScalar::zero(); cols]; rows] }
    }

    /// Builds from row vectors; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<GaussScalar>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        ExactMatrix { rows: rows.len(), cols, entries: rows }
    }

    /// Builds from column vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<GaussScalar>]) -> Self {
        let mut m = ExactMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.entries[i][j] = v.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(cols, rows.iter().map(|r| r.iter().map(|&v| GaussScalar::from_int(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussScalar {
        &self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[GaussScalar] {
        &self.entries[i]
    }

    pub fn mul_vec(&self, v: &[GaussScalar]) -> Vec<GaussScalar> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Fraction-free (Bareiss) forward elimination. Returns the echelon
    /// rows and the pivot columns, pivots taken at the lowest available
    /// column index.
    pub fn bareiss_echelon(&self) -> (Vec<Vec<GaussScalar>>, Vec<usize>) {
        let mut a = self.entries.clone();
        let mut prev = GaussScalar::one();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            for i in r + 1..self.rows {
                for j in c + 1..self.cols {
                    let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                    a[i][j] = num.checked_div(&prev).expect("Bareiss divisor is a previous pivot");
                }
                a[i][c] = GaussScalar::zero();
            }
            prev = a[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        a.truncate(r);
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.bareiss_echelon().1.len()
    }

    /// Exact kernel basis in canonical form: reduced row echelon form of the
    /// kernel, leading entry of each vector equal to 1.
    pub fn nullspace(&self) -> Vec<Vec<GaussScalar>> {
        let (echelon, pivots) = self.bareiss_echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut x = vec![GaussScalar::zero(); self.cols];
            x[f] = GaussScalar::one();
            for (k, &pc) in pivots.iter().enumerate().rev() {
                let row = &echelon[k];
                let s: GaussScalar = (pc + 1..self.cols).map(|j| &row[j] * &x[j]).sum();
                x[pc] = (-s).checked_div(&row[pc]).expect("pivot is nonzero");
            }
            basis.push(x);
        }
        rref(basis, self.cols)
    }
}

/// Reduced row echelon form with unit pivots; zero rows dropped.
pub fn rref(mut rows: Vec<Vec<GaussScalar>>, cols: usize) -> Vec<Vec<GaussScalar>> {
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let factor = rows[i][c].clone();
            for j in 0..cols {
                let d = &factor * &rows[r][j];
                rows[i][j] -= &d;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

/// Solves `A x = b` exactly; `None` when `b` is outside the column space.
/// Requires `A` to have independent columns.
pub fn solve(a: &ExactMatrix, b: &[GaussScalar]) -> Option<Vec<GaussScalar>> {
    let aug: Vec<Vec<GaussScalar>> = a
        .entries
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let reduced = rref(aug, a.cols + 1);
    let mut x = vec![GaussScalar::zero(); a.cols];
    for row in &reduced {
        let lead = row.iter().position(|v| !v.is_zero())?;
        if lead == a.cols {
            return None;
        }
        x[lead] = row[a.cols].clone();
    }
    Some(x)
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{}", self.rows, self.cols)?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<GaussScalar> {
        v.iter().map(|&k| GaussScalar::from_int(k)).collect()
    }

    #[test]
    fn nullspace_examples() {
        assert!(ExactMatrix::from_i64(&[&[1, 0], &[0, 1]]).nullspace().is_empty());
        let empty = ExactMatrix::zeros(0, 3);
        assert_eq!(empty.nullspace(), vec![ints(&[1, 0, 0]), ints(&[0, 1, 0]), ints(&[0, 0, 1])]);
        assert_eq!(ExactMatrix::from_i64(&[&[1, 1]]).nullspace(), vec![ints(&[1, -1])]);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let m = ExactMatrix::from_i64(&[&[2, 4, 1, 3], &[1, 2, 0, 1], &[3, 6, 1, 4]]);
        let ker = m.nullspace();
        assert_eq!(ker.len() + m.rank(), 4);
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(GaussScalar::is_zero));
        }
    }

    #[test]
    fn complex_entries() {
        let i = GaussScalar::i();
        let one = GaussScalar::one();
        // [[1, i], [i, -1]] has rank 1; kernel spanned by (1, i).
        let m = ExactMatrix::from_rows(2, vec![vec![one.clone(), i.clone()], vec![i.clone(), -one.clone()]]);
        assert_eq!(m.rank(), 1);
        assert_eq!(m.nullspace(), vec![vec![one, i]]);
    }

    #[test]
    fn solves_in_column_space() {
        let a = ExactMatrix::from_i64(&[&[1, 0], &[1, 1], &[0, 2]]);
        assert_eq!(solve(&a, &ints(&[3, 5, 4])), Some(ints(&[3, 2])));
        assert_eq!(solve(&a, &ints(&[1, 0, 0])), None);
    }
}
