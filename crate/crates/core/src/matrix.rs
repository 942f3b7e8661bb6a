//! Dense matrices over the exact rationals: arithmetic, reduced row echelon
//! form, kernels, images and linear solving. Everything here is exact; there
//! is no pivoting heuristic beyond "first nonzero".

use crate::rat::{self, Rat};
use crate::subspace::Subspace;
use num_traits::{One, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Rat>,
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: rat::zeros(rows * cols) }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Matrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Diagonal matrix with copies of c.
    pub fn scalar(n: usize, c: &Rat) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { c.clone() } else { Rat::zero() })
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Rat> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn scale(&self, c: &Rat) -> Matrix {
        let entries = self.entries.iter().map(|a| a * c).collect();
        Matrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        let cur = out.at(i, j).clone();
                        out.set(i, j, cur + a * b);
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in matrix-vector product");
        let mut out = rat::zeros(self.rows);
        for i in 0..self.rows {
            for (k, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    out[i] += self.at(i, k) * x;
                }
            }
        }
        out
    }

    /// Commutator self*other - other*self.
    pub fn commutator(&self, other: &Matrix) -> Matrix {
        self.mul(other).sub(&other.mul(self))
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(parts: &[&Matrix]) -> Matrix {
        assert!(!parts.is_empty());
        let cols = parts[0].cols;
        assert!(parts.iter().all(|m| m.cols == cols));
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut entries = Vec::with_capacity(rows * cols);
        for m in parts {
            entries.extend(m.entries.iter().cloned());
        }
        Matrix { rows, cols, entries }
    }

    /// Places matrices with equal row counts side by side.
    pub fn hstack(parts: &[&Matrix]) -> Matrix {
        assert!(!parts.is_empty());
        let rows = parts[0].rows;
        assert!(parts.iter().all(|m| m.rows == rows));
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zero(rows, cols);
        let mut off = 0;
        for m in parts {
            for r in 0..rows {
                for c in 0..m.cols {
                    out.set(r, off + c, m.at(r, c).clone());
                }
            }
            off += m.cols;
        }
        out
    }

    /// Kronecker product, blocks of other scaled by entries of self.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zero(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a.is_zero() {
                    continue;
                }
                for r in 0..other.rows {
                    for c in 0..other.cols {
                        let b = other.at(r, c);
                        if !b.is_zero() {
                            out.set(i * other.rows + r, j * other.cols + c, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    /// Pivots are 1 and their columns are cleared above and below.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.entries.swap(r * self.cols + j, pr * self.cols + j);
                }
            }
            let inv = Rat::one() / self.at(r, c).clone();
            for j in c..self.cols {
                let v = self.at(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for j in c..self.cols {
                        let v = self.at(i, j) - &f * self.at(r, j);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Canonical basis of the solution space of self * x = 0.
    pub fn kernel(&self) -> Subspace {
        let (ech, pivots) = self.rref();
        let mut free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.sort_unstable();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = rat::zeros(self.cols);
            v[f] = Rat::one();
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = -ech.at(ri, f).clone();
            }
            basis.push(v);
        }
        Subspace::from_spanning(self.cols, basis)
    }

    /// Canonical (echelon) basis of the column space.
    pub fn image(&self) -> Subspace {
        Subspace::from_spanning(self.rows, self.transpose().rows_vec())
    }

    /// Canonical basis of the row space.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_spanning(self.cols, self.rows_vec())
    }

    /// One solution of self * x = rhs together with the kernel, or None when
    /// the system is inconsistent.
    pub fn solve(&self, rhs: &[Rat]) -> Option<(Vec<Rat>, Subspace)> {
        assert_eq!(self.rows, rhs.len(), "dimension mismatch in solve");
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, self.cols, rhs[r].clone());
        }
        let pivots = aug.rref_in_place();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = rat::zeros(self.cols);
        for (ri, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(ri, self.cols).clone();
        }
        Some((x, self.kernel()))
    }

    /// Inverse of a square matrix, None when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::hstack(&[self, &Matrix::identity(n)]);
        let pivots = aug.rref_in_place();
        if pivots.iter().filter(|&&c| c < n).count() < n {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| aug.at(i, n + j).clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, rat};

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn rref_normalizes_pivots() {
        let (e, p) = m(&[&[2, 4], &[1, 2]]).rref();
        assert_eq!(p, vec![0]);
        assert_eq!(e.row(0), &[rat(1), rat(2)][..]);
        assert!(e.row(1).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        assert_eq!(Matrix::identity(3).kernel().dim(), 0);
    }

    #[test]
    fn kernel_of_dependent_columns() {
        let k = m(&[&[1, 1]]).kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis()[0], vec![rat(1), rat(-1)]);
    }

    #[test]
    fn image_ranks() {
        assert_eq!(Matrix::zero(3, 3).image().dim(), 0);
        assert_eq!(Matrix::identity(4).image().dim(), 4);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[1, 0], &[0, 0]]);
        let (x, k) = a.solve(&[rat(5), rat(0)]).unwrap();
        assert_eq!(x, vec![rat(5), rat(0)]);
        assert_eq!(k.dim(), 1);
        assert!(a.solve(&[rat(0), rat(1)]).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert_eq!(inv.at(0, 0), &rat(1));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
        assert_eq!(m(&[&[2, 0], &[0, 2]]).inverse().unwrap().at(0, 0), &frac(1, 2));
    }

    #[test]
    fn zero_sized_matrices_are_usable() {
        let a = Matrix::zero(0, 5);
        assert_eq!(a.kernel().dim(), 5);
        assert_eq!(a.rank(), 0);
        let b = Matrix::zero(5, 0);
        assert_eq!(b.kernel().dim(), 0);
        assert_eq!(b.mul(&a).rows, 5);
    }

    #[test]
    fn rank_nullity_on_rectangular() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.nullity(), 1);
        let v = a.kernel().basis()[0].clone();
        assert!(rat::is_zero_vec(&a.apply(&v)));
    }
}
