//! Finite-dimensional unital associative algebras over Q, presented by
//! structure constants, and their derivation Lie algebras.
//!
//! Conventions: `sc[i][j]` is the coefficient vector of e_i * e_j. A
//! derivation is stored as the n x n matrix sending coordinate vectors of
//! arguments to coordinate vectors of values (column j = image of e_j).

use crate::matrix::Matrix;
use crate::rat::{self, Rat};
use crate::subspace::{QuotientMap, Subspace};
use num_traits::{One, Zero};

#[derive(Clone, Debug)]
pub struct Algebra {
    pub name: String,
    pub dim: usize,
    pub basis_names: Vec<String>,
    /// sc[i][j] = coordinates of e_i * e_j.
    pub sc: Vec<Vec<Vec<Rat>>>,
    /// Coordinates of the unit element.
    pub unit: Vec<Rat>,
}

impl Algebra {
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        sc: Vec<Vec<Vec<Rat>>>,
        unit: Vec<Rat>,
    ) -> Self {
        let dim = basis_names.len();
        assert_eq!(sc.len(), dim);
        assert!(sc.iter().all(|r| r.len() == dim && r.iter().all(|v| v.len() == dim)));
        assert_eq!(unit.len(), dim);
        Algebra { name: name.into(), dim, basis_names, sc, unit }
    }

    pub fn zero_el(&self) -> Vec<Rat> {
        rat::zeros(self.dim)
    }

    pub fn basis_el(&self, i: usize) -> Vec<Rat> {
        let mut v = self.zero_el();
        v[i] = Rat::one();
        v
    }

    pub fn multiply(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        assert_eq!(a.len(), self.dim);
        assert_eq!(b.len(), self.dim);
        let mut out = self.zero_el();
        for i in 0..self.dim {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if b[j].is_zero() {
                    continue;
                }
                let c = &a[i] * &b[j];
                rat::add_scaled_vec(&mut out, &c, &self.sc[i][j]);
            }
        }
        out
    }

    pub fn commutator(&self, a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut ab = self.multiply(a, b);
        let ba = self.multiply(b, a);
        for (x, y) in ab.iter_mut().zip(&ba) {
            *x -= y;
        }
        ab
    }

    /// Matrix of x -> a * x.
    pub fn left_mult(&self, a: &[Rat]) -> Matrix {
        let mut m = Matrix::zero(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.multiply(a, &self.basis_el(j));
            for i in 0..self.dim {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }

    /// Matrix of x -> x * a.
    pub fn right_mult(&self, a: &[Rat]) -> Matrix {
        let mut m = Matrix::zero(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.multiply(&self.basis_el(j), a);
            for i in 0..self.dim {
                m.set(i, j, col[i].clone());
            }
        }
        m
    }

    /// ad(a) = [a, -] as a matrix.
    pub fn inner_derivation(&self, a: &[Rat]) -> Matrix {
        self.left_mult(a).sub(&self.right_mult(a))
    }

    /// Checks associativity on all basis triples and both unit laws.
    /// The error message names the first violated triple or unit side.
    pub fn validate(&self) -> Result<(), String> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let lhs = self.multiply(&self.multiply(&self.basis_el(i), &self.basis_el(j)), &self.basis_el(k));
                    let rhs = self.multiply(&self.basis_el(i), &self.multiply(&self.basis_el(j), &self.basis_el(k)));
                    if lhs != rhs {
                        return Err(format!(
                            "associativity fails at basis triple ({}, {}, {})",
                            self.basis_names[i], self.basis_names[j], self.basis_names[k]
                        ));
                    }
                }
            }
        }
        for j in 0..self.dim {
            if self.multiply(&self.unit, &self.basis_el(j)) != self.basis_el(j) {
                return Err(format!("left unit law fails at basis element {}", self.basis_names[j]));
            }
            if self.multiply(&self.basis_el(j), &self.unit) != self.basis_el(j) {
                return Err(format!("right unit law fails at basis element {}", self.basis_names[j]));
            }
        }
        Ok(())
    }

    /// Center: kernel of the stacked commutator-with-all-basis operator.
    pub fn center(&self) -> Subspace {
        let mats: Vec<Matrix> = (0..self.dim)
            .map(|j| {
                // column i = coordinates of [e_i, e_j]
                Matrix::from_fn(self.dim, self.dim, |k, i| {
                    &self.sc[i][j][k] - &self.sc[j][i][k]
                })
            })
            .collect();
        let refs: Vec<&Matrix> = mats.iter().collect();
        Matrix::vstack(&refs).kernel()
    }

    pub fn is_central(&self, a: &[Rat]) -> bool {
        (0..self.dim).all(|j| rat::is_zero_vec(&self.commutator(a, &self.basis_el(j))))
    }

    /// The Leibniz system for an unknown operator X (n^2 unknowns, vec by
    /// rows): X(e_i e_j) - X(e_i) e_j - e_i X(e_j) = 0 over all pairs.
    pub fn leibniz_system(&self) -> Matrix {
        let n = self.dim;
        let unknowns = n * n;
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                // one vector equation, n scalar rows; unknown entry X[k][l] at k*n+l
                for out_k in 0..n {
                    let mut row = rat::zeros(unknowns);
                    // X(e_i e_j): sum_m c[i][j][m] X[out_k][m]
                    for m in 0..n {
                        if !self.sc[i][j][m].is_zero() {
                            row[out_k * n + m] += &self.sc[i][j][m];
                        }
                    }
                    // - X(e_i) e_j : X(e_i) = sum_k X[k][i] e_k ; times e_j picks c[k][j][out_k]
                    for k in 0..n {
                        if !self.sc[k][j][out_k].is_zero() {
                            row[k * n + i] -= &self.sc[k][j][out_k];
                        }
                    }
                    // - e_i X(e_j)
                    for k in 0..n {
                        if !self.sc[i][k][out_k].is_zero() {
                            row[k * n + j] -= &self.sc[i][k][out_k];
                        }
                    }
                    rows.push(row);
                }
            }
        }
        Matrix::from_rows(rows)
    }

    /// Full derivation Lie algebra data: canonical echelon basis of Der(A),
    /// bracket constants with Jacobi verified, inner derivations, and a
    /// coset description of Out(A) = Der(A)/Int(A).
    pub fn derivations(&self) -> DerivationSpace {
        let n = self.dim;
        let space = self.leibniz_system().kernel();
        let basis: Vec<Matrix> = space
            .basis()
            .iter()
            .map(|v| Matrix::from_fn(n, n, |r, c| v[r * n + c].clone()))
            .collect();
        let m = basis.len();
        // Leibniz sanity on the reported basis
        for x in &basis {
            for i in 0..n {
                for j in 0..n {
                    let lhs = x.apply(&self.multiply(&self.basis_el(i), &self.basis_el(j)));
                    let mut rhs = self.multiply(&x.apply(&self.basis_el(i)), &self.basis_el(j));
                    rat::add_assign_vec(&mut rhs, &self.multiply(&self.basis_el(i), &x.apply(&self.basis_el(j))));
                    assert_eq!(lhs, rhs, "derivation basis fails the Leibniz rule");
                }
            }
        }
        let coords_of = |op: &Matrix| -> Vec<Rat> {
            let flat: Vec<Rat> = op.rows_vec().into_iter().flatten().collect();
            space
                .coordinates_of(&flat)
                .expect("operator claimed to be a derivation is outside Der(A)")
        };
        let mut bracket = vec![vec![rat::zeros(m); m]; m];
        for a in 0..m {
            for b in 0..m {
                bracket[a][b] = coords_of(&basis[a].commutator(&basis[b]));
            }
        }
        // Jacobi on all basis triples, through the structure constants
        let compose = |v: &[Rat], c: usize, bracket: &Vec<Vec<Vec<Rat>>>| -> Vec<Rat> {
            let mut out = rat::zeros(m);
            for (s, x) in v.iter().enumerate() {
                rat::add_scaled_vec(&mut out, x, &bracket[s][c]);
            }
            out
        };
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    let mut j1 = compose(&bracket[a][b], c, &bracket);
                    let j2 = compose(&bracket[b][c], a, &bracket);
                    let j3 = compose(&bracket[c][a], b, &bracket);
                    rat::add_assign_vec(&mut j1, &j2);
                    rat::add_assign_vec(&mut j1, &j3);
                    assert!(rat::is_zero_vec(&j1), "Jacobi identity fails on the derivation basis");
                }
            }
        }
        // inner derivations inside Der(A)
        let mut inner_vecs = Vec::new();
        for i in 0..n {
            let ad = self.inner_derivation(&self.basis_el(i));
            inner_vecs.push(ad.rows_vec().into_iter().flatten().collect::<Vec<Rat>>());
        }
        let int_flat = Subspace::from_spanning(n * n, inner_vecs);
        assert!(space.contains(&int_flat), "inner derivations must be derivations");
        let int_coords = Subspace::from_spanning(
            m,
            int_flat
                .basis()
                .iter()
                .map(|v| space.coordinates_of(v).expect("inner derivation outside Der(A)"))
                .collect(),
        );
        // Int(A) must be an ideal: [Der, Int] inside Int
        for a in 0..m {
            for ib in int_coords.basis() {
                let mut w = rat::zeros(m);
                for (s, x) in ib.iter().enumerate() {
                    rat::add_scaled_vec(&mut w, x, &bracket[a][s]);
                }
                assert!(int_coords.contains_vec(&w), "inner derivations are not an ideal");
            }
        }
        let full = Subspace::full(m);
        let out_reps = full.quotient_basis(&int_coords).expect("Int inside Der");
        let quot = QuotientMap::new(int_coords.clone(), out_reps.clone());
        let proj = if m > 0 { quot.projection_matrix() } else { Matrix::zero(0, 0) };
        // induced bracket on the out representatives
        let q = out_reps.len();
        let mut out_bracket = vec![vec![rat::zeros(q); q]; q];
        for a in 0..q {
            for b in 0..q {
                let mut w = rat::zeros(m);
                for (s, x) in out_reps[a].iter().enumerate() {
                    for (t, y) in out_reps[b].iter().enumerate() {
                        if !x.is_zero() && !y.is_zero() {
                            let c = x * y;
                            rat::add_scaled_vec(&mut w, &c, &bracket[s][t]);
                        }
                    }
                }
                out_bracket[a][b] = proj.apply(&w);
            }
        }
        DerivationSpace {
            dim_algebra: n,
            space,
            basis,
            bracket,
            int_space: int_coords,
            out_reps,
            out_bracket,
            out_proj: proj,
        }
    }

    /// f is an algebra map when it preserves products of basis elements and
    /// sends unit to unit. f maps self to target, as a target.dim x self.dim
    /// matrix.
    pub fn check_hom(&self, target: &Algebra, f: &Matrix) -> Result<bool, String> {
        if f.rows != target.dim || f.cols != self.dim {
            return Err(format!(
                "homomorphism matrix must be {}x{}, got {}x{}",
                target.dim, self.dim, f.rows, f.cols
            ));
        }
        if f.apply(&self.unit) != target.unit {
            return Ok(false);
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let lhs = f.apply(&self.multiply(&self.basis_el(i), &self.basis_el(j)));
                let rhs = target.multiply(&f.apply(&self.basis_el(i)), &f.apply(&self.basis_el(j)));
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Matrix amplification Mat_N(A): basis E_pq (x) e_i, flat index
    /// (p*N + q)*dim + i.
    pub fn amplify(&self, nn: usize) -> Algebra {
        assert!(nn >= 1);
        let n = self.dim;
        let dim = nn * nn * n;
        let idx = |p: usize, q: usize, i: usize| (p * nn + q) * n + i;
        let mut sc = vec![vec![rat::zeros(dim); dim]; dim];
        for p in 0..nn {
            for q in 0..nn {
                for i in 0..n {
                    for r in 0..nn {
                        for s in 0..nn {
                            for j in 0..n {
                                if q != r {
                                    continue;
                                }
                                let a = idx(p, q, i);
                                let b = idx(r, s, j);
                                for k in 0..n {
                                    if !self.sc[i][j][k].is_zero() {
                                        sc[a][b][idx(p, s, k)] = self.sc[i][j][k].clone();
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut unit = rat::zeros(dim);
        for p in 0..nn {
            for i in 0..n {
                if !self.unit[i].is_zero() {
                    unit[idx(p, p, i)] = self.unit[i].clone();
                }
            }
        }
        let mut names = Vec::with_capacity(dim);
        for p in 0..nn {
            for q in 0..nn {
                for i in 0..n {
                    names.push(format!("E{}{}*{}", p + 1, q + 1, self.basis_names[i]));
                }
            }
        }
        Algebra::new(format!("amplify({},{})", self.name, nn), names, sc, unit)
    }
}

/// Der(A) with its canonical echelon basis, bracket constants, the inner
/// derivations Int(A) and coset representatives for Out(A).
pub struct DerivationSpace {
    pub dim_algebra: usize,
    /// Der(A) as a subspace of flattened operators in Q^(n*n).
    pub space: Subspace,
    /// Operator matrices of the canonical basis.
    pub basis: Vec<Matrix>,
    /// bracket[a][b] = coordinates of [X_a, X_b] in the basis.
    pub bracket: Vec<Vec<Vec<Rat>>>,
    /// Int(A) in derivation coordinates.
    pub int_space: Subspace,
    /// Out(A) coset representatives, in derivation coordinates.
    pub out_reps: Vec<Vec<Rat>>,
    /// Bracket constants of the quotient Lie algebra on out_reps.
    pub out_bracket: Vec<Vec<Vec<Rat>>>,
    /// Projection Der coordinates -> Out coordinates (kills Int).
    pub out_proj: Matrix,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_out(&self) -> usize {
        self.out_reps.len()
    }

    /// Derivation coordinates of an operator matrix, None when it is not a
    /// derivation in the span.
    pub fn coordinates_of(&self, op: &Matrix) -> Option<Vec<Rat>> {
        let flat: Vec<Rat> = op.rows_vec().into_iter().flatten().collect();
        self.space.coordinates_of(&flat)
    }

    /// Operator matrix of a coordinate vector.
    pub fn op_of(&self, coords: &[Rat]) -> Matrix {
        assert_eq!(coords.len(), self.dim());
        let n = self.dim_algebra;
        let mut out = Matrix::zero(n, n);
        for (s, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.basis[s].scale(c));
            }
        }
        out
    }

    /// Value of the derivation with the given coordinates on an element.
    pub fn apply_coords(&self, coords: &[Rat], a: &[Rat]) -> Vec<Rat> {
        let mut out = rat::zeros(self.dim_algebra);
        for (s, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                let v = self.basis[s].apply(a);
                rat::add_scaled_vec(&mut out, c, &v);
            }
        }
        out
    }

    /// Bracket of two coordinate vectors, in coordinates.
    pub fn bracket_vec(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let m = self.dim();
        let mut out = rat::zeros(m);
        for (s, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (t, y) in v.iter().enumerate() {
                if !y.is_zero() {
                    let c = x * y;
                    rat::add_scaled_vec(&mut out, &c, &self.bracket[s][t]);
                }
            }
        }
        out
    }

    /// Bracket of basis element s with a coordinate vector.
    pub fn bracket_basis_vec(&self, s: usize, v: &[Rat]) -> Vec<Rat> {
        let m = self.dim();
        let mut out = rat::zeros(m);
        for (t, y) in v.iter().enumerate() {
            if !y.is_zero() {
                rat::add_scaled_vec(&mut out, y, &self.bracket[s][t]);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::rat::rat;

    #[test]
    fn catalog_algebras_validate() {
        for a in [catalog::mat(2), catalog::dual(), catalog::functions(2), catalog::triangular(2)] {
            a.validate().unwrap_or_else(|e| panic!("{} failed validation: {e}", a.name));
        }
    }

    #[test]
    fn perturbed_structure_constants_fail_validation() {
        let mut a = catalog::mat(2);
        // break E11 * E11 = E11
        a.sc[0][0][1] = rat(1);
        let err = a.validate().unwrap_err();
        assert!(err.contains("associativity"), "unexpected message: {err}");
    }

    #[test]
    fn unit_laws_checked() {
        let mut a = catalog::dual();
        a.unit = vec![rat(0), rat(1)];
        assert!(a.validate().is_err());
    }

    #[test]
    fn dual_numbers_multiply() {
        let a = catalog::dual();
        let eps = a.basis_el(1);
        assert!(rat::is_zero_vec(&a.multiply(&eps, &eps)));
    }

    #[test]
    fn matrix_unit_commutator() {
        let a = catalog::mat(2);
        // [E12, E21] = E11 - E22
        let c = a.commutator(&a.basis_el(1), &a.basis_el(2));
        assert_eq!(c, vec![rat(1), rat(0), rat(0), rat(-1)]);
    }

    #[test]
    fn centers_of_catalog() {
        assert_eq!(catalog::mat(2).center().dim(), 1);
        assert_eq!(catalog::dual().center().dim(), 2);
        assert_eq!(catalog::functions(2).center().dim(), 2);
        let t = catalog::triangular(2).center();
        assert_eq!(t.dim(), 1);
        // center of the triangular algebra is spanned by the unit
        assert!(t.contains_vec(&catalog::triangular(2).unit));
    }

    #[test]
    fn center_spans_unit_for_matrices() {
        let a = catalog::mat(2);
        let z = a.center();
        assert!(z.contains_vec(&a.unit));
    }

    #[test]
    fn derivation_dimensions() {
        let m2 = catalog::mat(2).derivations();
        assert_eq!(m2.dim(), 3);
        assert_eq!(m2.int_space.dim(), 3);
        assert_eq!(m2.dim_out(), 0);

        let d2 = catalog::dual().derivations();
        assert_eq!(d2.dim(), 1);
        assert_eq!(d2.int_space.dim(), 0);
        assert_eq!(d2.dim_out(), 1);

        let f2 = catalog::functions(2).derivations();
        assert_eq!(f2.dim(), 0);

        let t2 = catalog::triangular(2).derivations();
        assert_eq!(t2.dim(), 2);
        assert_eq!(t2.int_space.dim(), 2);
        assert_eq!(t2.dim_out(), 0);
    }

    #[test]
    fn matrix_derivations_are_inner() {
        let a = catalog::mat(2);
        let d = a.derivations();
        // span{ad(e_i)} equals Der(A); quotient representatives are empty
        assert_eq!(d.space.dim(), d.int_space.dim());
        assert!(d.out_reps.is_empty());
    }

    #[test]
    fn dual_number_derivation_acts_by_scaling_eps() {
        let d = catalog::dual().derivations();
        // Der(Q[eps]) = span{E}, E(eps) = c*eps; canonical basis scales eps by 1
        let x = &d.basis[0];
        assert!(rat::is_zero_vec(&x.apply(&vec![rat(1), rat(0)])));
        assert_eq!(x.apply(&vec![rat(0), rat(1)]), vec![rat(0), rat(1)]);
    }

    #[test]
    fn inner_derivation_of_central_element_vanishes() {
        let a = catalog::mat(2);
        assert!(a.inner_derivation(&a.unit).is_zero());
        let e12 = a.inner_derivation(&a.basis_el(1));
        // ad(E12)(E21) = E11 - E22
        assert_eq!(e12.apply(&a.basis_el(2)), vec![rat(1), rat(0), rat(0), rat(-1)]);
    }

    #[test]
    fn hom_checks() {
        let a = catalog::mat(2);
        let id = Matrix::identity(4);
        assert!(a.check_hom(&a, &id).unwrap());
        // diagonal embedding functions(2) -> mat(2)
        let f2 = catalog::functions(2);
        let f = catalog::diagonal_embedding();
        assert!(f2.check_hom(&a, &f).unwrap());
        // e1 -> E12 is not a homomorphism
        let mut bad = Matrix::zero(4, 2);
        bad.set(1, 0, rat(1));
        bad.set(3, 1, rat(1));
        assert!(!f2.check_hom(&a, &bad).unwrap());
        // augmentation dual -> Q kills eps
        let d2 = catalog::dual();
        let q = catalog::functions(1);
        assert!(d2.check_hom(&q, &catalog::augmentation()).unwrap());
        // shape mismatch errors out
        assert!(f2.check_hom(&a, &Matrix::identity(3)).is_err());
    }

    #[test]
    fn amplification_of_scalars_is_matrix_algebra() {
        let q = catalog::functions(1);
        let m = q.amplify(2);
        m.validate().unwrap();
        let target = catalog::mat(2);
        assert_eq!(m.dim, target.dim);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m.sc[i][j], target.sc[i][j]);
            }
        }
        assert_eq!(m.unit, target.unit);
    }

    #[test]
    fn amplification_keeps_validity_and_dimension() {
        let a = catalog::dual().amplify(2);
        a.validate().unwrap();
        assert_eq!(a.dim, 8);
        let b = catalog::mat(2).amplify(1);
        b.validate().unwrap();
        assert_eq!(b.dim, 4);
        assert_eq!(b.sc, catalog::mat(2).sc);
    }

    #[test]
    fn amplified_dual_derivations() {
        // Der(Mat_2(Q[eps])) has dimension 7, Int 6, Out 1
        let a = catalog::dual().amplify(2);
        let d = a.derivations();
        assert_eq!(d.dim(), 7);
        assert_eq!(d.int_space.dim(), 6);
        assert_eq!(d.dim_out(), 1);
        assert_eq!(a.center().dim(), 2);
    }

    #[test]
    fn functions_algebra_has_no_derivations() {
        // product of fields: any derivation kills idempotents, hence everything
        let f = catalog::functions(3);
        assert_eq!(f.derivations().dim(), 0);
    }
}
