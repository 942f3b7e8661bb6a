//! Subspaces of Q^n in canonical form: the stored basis is the reduced row
//! echelon form of any spanning set, so equal subspaces have equal
//! representations and `==` decides subspace equality.

use crate::matrix::Matrix;
use crate::rat::{self, Rat};
use num_traits::One;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_spanning(ambient, Matrix::identity(ambient).rows_vec())
    }

    /// Canonicalizes a spanning set by reduced row echelon form.
    pub fn from_spanning(ambient: usize, vectors: Vec<Vec<Rat>>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient), "ambient mismatch");
        if vectors.is_empty() {
            return Subspace::zero(ambient);
        }
        let (ech, pivots) = Matrix::from_rows(vectors).rref();
        let basis = (0..pivots.len()).map(|r| ech.row(r).to_vec()).collect();
        Subspace { ambient, basis, pivots }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_matrix(&self) -> Matrix {
        if self.basis.is_empty() {
            Matrix::zero(0, self.ambient)
        } else {
            Matrix::from_rows(self.basis.clone())
        }
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains_vec(&self, v: &[Rat]) -> bool {
        self.coordinates_of(v).is_some()
    }

    /// Coefficients of v in the stored echelon basis, None when v is outside.
    /// Echelon structure makes the coordinates the entries of v at the pivot
    /// columns; reconstruction then certifies membership.
    pub fn coordinates_of(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        let coords: Vec<Rat> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rec = rat::zeros(self.ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            rat::add_scaled_vec(&mut rec, c, b);
        }
        if rec == v { Some(coords) } else { None }
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        other.basis.iter().all(|v| self.contains_vec(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut vs = self.basis.clone();
        vs.extend(other.basis.clone());
        Subspace::from_spanning(self.ambient, vs)
    }

    /// Intersection via the kernel of [A^T | -B^T].
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        let at = self.basis_matrix().transpose();
        let bt = other.basis_matrix().transpose().scale(&-Rat::one());
        let joint = Matrix::hstack(&[&at, &bt]);
        let mut vs = Vec::new();
        for k in joint.kernel().basis() {
            let mut v = rat::zeros(self.ambient);
            for (c, b) in k[..self.dim()].iter().zip(&self.basis) {
                rat::add_scaled_vec(&mut v, c, b);
            }
            vs.push(v);
        }
        Subspace::from_spanning(self.ambient, vs)
    }

    /// Representatives completing `sub` to a basis of self, taken greedily
    /// from self's echelon basis. Requires sub to be contained in self.
    pub fn quotient_basis(&self, sub: &Subspace) -> Result<Vec<Vec<Rat>>, String> {
        if !self.contains(sub) {
            return Err("quotient_basis: claimed subspace is not contained".into());
        }
        let mut span = sub.clone();
        let mut reps = Vec::new();
        for v in &self.basis {
            if !span.contains_vec(v) {
                reps.push(v.clone());
                let mut vs = span.basis.clone();
                vs.push(v.clone());
                span = Subspace::from_spanning(self.ambient, vs);
            }
        }
        assert_eq!(span.dim(), self.dim());
        Ok(reps)
    }

    /// Membership conditions as a matrix: v is in the subspace iff M v = 0.
    /// Rows express "v minus its echelon reconstruction", one row per
    /// non-pivot coordinate of the orthogonal-style complement.
    pub fn membership_conditions(&self) -> Matrix {
        let n = self.ambient;
        // rec(v) = sum_j v[pivot_j] * basis_j ; conditions: (I - Rec) v = 0.
        let mut m = Matrix::identity(n);
        for (j, &p) in self.pivots.iter().enumerate() {
            for r in 0..n {
                let cur = m.at(r, p).clone();
                m.set(r, p, cur - &self.basis[j][r]);
            }
        }
        m
    }
}

/// Change-of-coordinates onto a list of chosen representatives modulo a
/// subspace: expresses v as (kernel part) + sum beta_j reps_j and returns the
/// beta coordinates. Panics when reps do not complete the kernel basis.
pub struct QuotientMap {
    pub kernel: Subspace,
    pub reps: Vec<Vec<Rat>>,
    solver: Matrix,
}

impl QuotientMap {
    pub fn new(kernel: Subspace, reps: Vec<Vec<Rat>>) -> Self {
        let n = kernel.ambient();
        let mut cols: Vec<&[Rat]> = Vec::new();
        for b in kernel.basis() {
            cols.push(b);
        }
        for r in &reps {
            cols.push(r);
        }
        let m = Matrix::from_fn(n, cols.len(), |i, j| cols[j][i].clone());
        assert_eq!(m.rank(), cols.len(), "representatives do not complete the kernel");
        QuotientMap { kernel, reps, solver: m }
    }

    /// Quotient coordinates of v; None when v is outside kernel + span(reps).
    pub fn project(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        let (x, _) = self.solver.solve(v)?;
        Some(x[self.kernel.dim()..].to_vec())
    }

    /// Matrix of the projection on the full ambient space. Only valid when
    /// kernel + span(reps) is the whole space.
    pub fn projection_matrix(&self) -> Matrix {
        let n = self.kernel.ambient();
        let dim_q = self.reps.len();
        let mut out = Matrix::zero(dim_q, n);
        for j in 0..n {
            let mut e = rat::zeros(n);
            e[j] = Rat::one();
            let coords = self.project(&e).expect("projection ambient not covered");
            for i in 0..dim_q {
                out.set(i, j, coords[i].clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn sp(ambient: usize, vs: &[&[i64]]) -> Subspace {
        Subspace::from_spanning(
            ambient,
            vs.iter().map(|v| v.iter().map(|&x| rat(x)).collect()).collect(),
        )
    }

    #[test]
    fn canonical_form_is_representation_equality() {
        let a = sp(3, &[&[1, 1, 0], &[0, 0, 1]]);
        let b = sp(3, &[&[2, 2, 2], &[0, 0, 5], &[1, 1, 1]]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn sum_and_intersection() {
        let a = sp(3, &[&[1, 0, 0]]);
        let b = sp(3, &[&[0, 1, 0]]);
        assert_eq!(a.sum(&b), sp(3, &[&[1, 0, 0], &[0, 1, 0]]));
        assert!(a.intersect(&b).is_zero());
        let c = sp(3, &[&[1, 1, 0], &[0, 1, 1]]);
        let d = sp(3, &[&[1, 2, 1]]);
        assert!(c.contains(&d));
        assert_eq!(c.intersect(&d), d);
    }

    #[test]
    fn full_meets_anything_trivially() {
        let f = Subspace::full(4);
        let a = sp(4, &[&[1, 2, 3, 4]]);
        assert_eq!(f.intersect(&a), a);
        assert_eq!(f.sum(&a), f);
        assert!(f.contains(&a));
        assert!(!a.contains(&f));
    }

    #[test]
    fn quotient_basis_picks_completing_vectors() {
        let whole = Subspace::full(3);
        let sub = sp(3, &[&[1, 0, 0]]);
        let reps = whole.quotient_basis(&sub).unwrap();
        assert_eq!(reps.len(), 2);
        let q = whole.quotient_basis(&whole).unwrap();
        assert!(q.is_empty());
        assert!(sub.quotient_basis(&whole).is_err());
    }

    #[test]
    fn coordinates_read_off_pivots() {
        let s = sp(3, &[&[1, 0, 2], &[0, 1, 3]]);
        let v = vec![rat(2), rat(-1), rat(1)];
        assert_eq!(s.coordinates_of(&v).unwrap(), vec![rat(2), rat(-1)]);
        assert!(s.coordinates_of(&[rat(0), rat(0), rat(1)]).is_none());
    }

    #[test]
    fn membership_conditions_cut_out_the_subspace() {
        let s = sp(4, &[&[1, 0, 1, 0], &[0, 1, 0, 2]]);
        let m = s.membership_conditions();
        assert_eq!(m.kernel(), s);
    }

    #[test]
    fn quotient_map_projects() {
        let kernel = sp(3, &[&[1, 0, 0]]);
        let reps = vec![vec![rat(0), rat(1), rat(0)], vec![rat(0), rat(0), rat(1)]];
        let q = QuotientMap::new(kernel, reps);
        let coords = q.project(&[rat(7), rat(2), rat(3)]).unwrap();
        assert_eq!(coords, vec![rat(2), rat(3)]);
        let p = q.projection_matrix();
        assert_eq!(p.apply(&[rat(7), rat(2), rat(3)]), vec![rat(2), rat(3)]);
    }
}
