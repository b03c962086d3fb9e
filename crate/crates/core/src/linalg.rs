//! Dense exact linear algebra over ℚ(q).
//!
//! Elimination is fraction-free (Bareiss): each update divides by the
//! previous pivot, so a matrix with polynomial entries keeps polynomial
//! entries throughout. Pivots are chosen by smallest q-degree.

use crate::error::{Error, Result};
use crate::qfield::QScalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<QScalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![QScalar::zero(); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &QScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: QScalar) {
        self.data[r * self.cols + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Bareiss forward elimination in place. Returns the pivot column of each
    /// nonzero row of the resulting echelon form.
    pub fn echelon(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prev = QScalar::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows)
                .filter(|&i| !self.get(i, c).is_zero())
                .min_by_key(|&i| self.get(i, c).size_hint())
            else {
                continue;
            };
            self.swap_rows(r, p);
            let pivot = self.get(r, c).clone();
            for i in r + 1..self.rows {
                let factor = self.get(i, c).clone();
                if factor.is_zero() {
                    if pivot != prev {
                        let ratio = &pivot / &prev;
                        for j in c + 1..self.cols {
                            if !self.get(i, j).is_zero() {
                                let v = self.get(i, j) * &ratio;
                                self.set(i, j, v);
                            }
                        }
                    }
                    continue;
                }
                for j in c + 1..self.cols {
                    let a = self.get(i, j) * &pivot;
                    let b = &factor * self.get(r, j);
                    let v = &(&a - &b) / &prev;
                    self.set(i, j, v);
                }
                self.set(i, c, QScalar::zero());
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    /// Solves `A x = b` for square nonsingular `A`.
    pub fn solve(&self, rhs: &[QScalar]) -> Result<Vec<QScalar>> {
        if self.rows != self.cols || rhs.len() != self.rows {
            return Err(Error::InvalidArgument("solve needs a square system".into()));
        }
        let n = self.cols;
        let mut aug = Matrix::zeros(n, n + 1);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n, rhs[r].clone());
        }
        let pivots = aug.echelon();
        if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
            return Err(Error::SingularSystem);
        }
        let mut x = vec![QScalar::zero(); n];
        for r in (0..n).rev() {
            let mut acc = aug.get(r, n).clone();
            for j in r + 1..n {
                if !aug.get(r, j).is_zero() {
                    acc -= &(aug.get(r, j) * &x[j]);
                }
            }
            x[r] = &acc / aug.get(r, r);
        }
        Ok(x)
    }

    /// Inverse of a square nonsingular matrix: one elimination of `[A | I]`
    /// followed by back substitution for every column.
    pub fn inverse(&self) -> Result<Matrix> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument("inverse needs a square matrix".into()));
        }
        let n = self.cols;
        let mut aug = Matrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, QScalar::one());
        }
        let pivots = aug.echelon();
        if pivots.len() < n || pivots.iter().any(|&c| c >= n) {
            return Err(Error::SingularSystem);
        }
        let mut inv = Matrix::zeros(n, n);
        for col in 0..n {
            for r in (0..n).rev() {
                let mut acc = aug.get(r, n + col).clone();
                for j in r + 1..n {
                    if !aug.get(r, j).is_zero() && !inv.get(j, col).is_zero() {
                        acc -= &(aug.get(r, j) * inv.get(j, col));
                    }
                }
                if !acc.is_zero() {
                    inv.set(r, col, &acc / aug.get(r, r));
                }
            }
        }
        Ok(inv)
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<QScalar>> {
        let mut ech = self.clone();
        let pivots = ech.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![QScalar::zero(); self.cols];
                x[f] = QScalar::one();
                for (r, &pc) in pivots.iter().enumerate().rev() {
                    let mut acc = QScalar::zero();
                    for j in pc + 1..self.cols {
                        if !ech.get(r, j).is_zero() && !x[j].is_zero() {
                            acc -= &(ech.get(r, j) * &x[j]);
                        }
                    }
                    x[pc] = &acc / ech.get(r, pc);
                }
                x
            })
            .collect()
    }

    pub fn mul_vec(&self, x: &[QScalar]) -> Vec<QScalar> {
        (0..self.rows)
            .map(|r| {
                let mut acc = QScalar::zero();
                for (c, xc) in x.iter().enumerate() {
                    if !xc.is_zero() && !self.get(r, c).is_zero() {
                        acc += &(self.get(r, c) * xc);
                    }
                }
                acc
            })
            .collect()
    }
}

/// Connected components of the bipartite row/column graph of a sparse
/// matrix. Each component is `(rows, cols)`, both sorted. Isolated rows and
/// columns form their own components.
pub fn block_components(rows: usize, cols: usize, nonzeros: &[(usize, usize)]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut parent: Vec<usize> = (0..rows + cols).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(r, c) in nonzeros {
        let a = find(&mut parent, r);
        let b = find(&mut parent, rows + c);
        if a != b {
            parent[a] = b;
        }
    }
    let mut groups: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> = Default::default();
    for v in 0..rows + cols {
        let root = find(&mut parent, v);
        let g = groups.entry(root).or_default();
        if v < rows {
            g.0.push(v);
        } else {
            g.1.push(v - rows);
        }
    }
    groups.into_values().collect()
}
