//! Bimodules over a structure-constant algebra, given by left and right
//! action matrices per basis element: validation of the module laws,
//! bimodule homomorphisms and module-valued derivations as kernels of
//! linear systems, and the universal diagonal quotient obtained by
//! separating points with homomorphisms into the algebra.

use crate::algebra::Algebra;
use crate::chevalley::Complex;
use crate::forms::FormSpace;
use crate::matrix::Matrix;
use crate::rat::{self, Rat};
use crate::report::{CheckRecord, SuiteReport};
use crate::subspace::{QuotientMap, Subspace};
use num_traits::Zero;

/// An A-bimodule: one left and one right action matrix per basis element
/// of the algebra.
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub name: String,
    pub dim: usize,
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
}

/// The universal quotient of a bimodule that embeds into a power of the
/// algebra, with its projection and kernel.
pub struct DiagQuotient {
    pub module: Bimodule,
    pub projection: Matrix,
    pub kernel: Subspace,
}

impl Bimodule {
    pub fn new(name: &str, left: Vec<Matrix>, right: Vec<Matrix>) -> Self {
        assert_eq!(left.len(), right.len());
        assert!(!left.is_empty());
        let dim = left[0].rows;
        for m in left.iter().chain(&right) {
            assert_eq!((m.rows, m.cols), (dim, dim), "action matrices must be square");
        }
        Bimodule { name: name.into(), dim, left, right }
    }

    /// Left action of a general algebra element.
    pub fn left_act(&self, a: &[Rat]) -> Matrix {
        let mut out = Matrix::zero(self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.left[i].scale(c));
            }
        }
        out
    }

    /// Right action of a general algebra element.
    pub fn right_act(&self, a: &[Rat]) -> Matrix {
        let mut out = Matrix::zero(self.dim, self.dim);
        for (i, c) in a.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.right[i].scale(c));
            }
        }
        out
    }

    /// Check the bimodule laws: the unit acts as the identity on both
    /// sides, both actions are compatible with the multiplication, and the
    /// two actions commute.
    pub fn validate(&self, alg: &Algebra) -> Result<(), String> {
        let n = alg.dim;
        if self.left.len() != n {
            return Err(format!(
                "bimodule {} has {} action matrices for an algebra of dimension {n}",
                self.name,
                self.left.len()
            ));
        }
        let id = Matrix::identity(self.dim);
        if self.left_act(&alg.unit) != id {
            return Err(format!("unit does not act as identity on the left of {}", self.name));
        }
        if self.right_act(&alg.unit) != id {
            return Err(format!("unit does not act as identity on the right of {}", self.name));
        }
        for i in 0..n {
            for j in 0..n {
                let prod: Vec<Rat> = (0..n).map(|k| alg.sc[i][j][k].clone()).collect();
                if self.left[i].mul(&self.left[j]) != self.left_act(&prod) {
                    return Err(format!(
                        "left action of {} is not multiplicative at ({}, {})",
                        self.name, alg.basis_names[i], alg.basis_names[j]
                    ));
                }
                if self.right[j].mul(&self.right[i]) != self.right_act(&prod) {
                    return Err(format!(
                        "right action of {} is not multiplicative at ({}, {})",
                        self.name, alg.basis_names[i], alg.basis_names[j]
                    ));
                }
                if self.left[i].mul(&self.right[j]) != self.right[j].mul(&self.left[i]) {
                    return Err(format!(
                        "left and right actions of {} do not commute at ({}, {})",
                        self.name, alg.basis_names[i], alg.basis_names[j]
                    ));
                }
            }
        }
        Ok(())
    }

    /// Linear system for module-valued derivations D: A -> M, one row per
    /// product relation and output coordinate; the unknown map is vectorized
    /// row-major, column j holding the image of the j-th basis element.
    pub fn derivation_system(&self, alg: &Algebra) -> Matrix {
        let n = alg.dim;
        let d = self.dim;
        let mut rows = Vec::with_capacity(n * n * d);
        for i in 0..n {
            for j in 0..n {
                for out in 0..d {
                    let mut row = rat::zeros(d * n);
                    for m in 0..n {
                        let c = &alg.sc[i][j][m];
                        if !c.is_zero() {
                            row[out * n + m] += c;
                        }
                    }
                    for p in 0..d {
                        let r = self.right[j].at(out, p);
                        if !r.is_zero() {
                            row[p * n + i] -= r;
                        }
                        let l = self.left[i].at(out, p);
                        if !l.is_zero() {
                            row[p * n + j] -= l;
                        }
                    }
                    rows.push(row);
                }
            }
        }
        Matrix::from_rows(rows)
    }

    /// Basis of the space of derivations A -> M, as dim x n matrices.
    pub fn derivations(&self, alg: &Algebra) -> Vec<Matrix> {
        let n = alg.dim;
        let d = self.dim;
        self.derivation_system(alg)
            .kernel()
            .basis()
            .iter()
            .map(|v| Matrix::from_fn(d, n, |r, c| v[r * n + c].clone()))
            .collect()
    }

    /// Linear system for bimodule homomorphisms M -> N.
    pub fn hom_system(&self, other: &Bimodule) -> Matrix {
        let (dm, dn) = (self.dim, other.dim);
        let mut rows = Vec::new();
        for i in 0..self.left.len() {
            for (ours, theirs) in
                [(&self.left[i], &other.left[i]), (&self.right[i], &other.right[i])]
            {
                // f ours = theirs f, unknown f vectorized row-major dn x dm
                for r in 0..dn {
                    for c in 0..dm {
                        let mut row = rat::zeros(dn * dm);
                        for p in 0..dm {
                            let v = ours.at(p, c);
                            if !v.is_zero() {
                                row[r * dm + p] += v;
                            }
                        }
                        for p in 0..dn {
                            let v = theirs.at(r, p);
                            if !v.is_zero() {
                                row[p * dm + c] -= v;
                            }
                        }
                        rows.push(row);
                    }
                }
            }
        }
        Matrix::from_rows(rows)
    }

    /// Basis of the space of bimodule homomorphisms M -> N.
    pub fn homs_to(&self, other: &Bimodule) -> Vec<Matrix> {
        let (dm, dn) = (self.dim, other.dim);
        self.hom_system(other)
            .kernel()
            .basis()
            .iter()
            .map(|v| Matrix::from_fn(dn, dm, |r, c| v[r * dm + c].clone()))
            .collect()
    }

    /// Elements commuting with both actions simultaneously,
    /// {m : a.m = m.a for all a}.
    pub fn centralizer(&self) -> Subspace {
        let diffs: Vec<Matrix> =
            self.left.iter().zip(&self.right).map(|(l, r)| l.sub(r)).collect();
        let refs: Vec<&Matrix> = diffs.iter().collect();
        Matrix::vstack(&refs).kernel()
    }

    /// The algebra acting on itself by multiplication.
    pub fn regular(alg: &Algebra) -> Self {
        let n = alg.dim;
        let left = (0..n).map(|i| alg.left_mult(&alg.basis_el(i))).collect();
        let right = (0..n).map(|i| alg.right_mult(&alg.basis_el(i))).collect();
        Bimodule::new(&alg.name, left, right)
    }

    /// A tensor A with the outer actions, basis a_i tensor a_j at index
    /// i * n + j.
    pub fn tensor_square(alg: &Algebra) -> Self {
        let n = alg.dim;
        let id = Matrix::identity(n);
        let left = (0..n)
            .map(|i| alg.left_mult(&alg.basis_el(i)).kronecker(&id))
            .collect();
        let right = (0..n)
            .map(|i| id.kronecker(&alg.right_mult(&alg.basis_el(i))))
            .collect();
        Bimodule::new(&format!("{} (x) {}", alg.name, alg.name), left, right)
    }

    /// Universal one-forms as a bimodule.
    pub fn universal_one_forms(fs: &FormSpace) -> Self {
        let alg = fs.algebra();
        let n = alg.dim;
        let left = (0..n).map(|i| fs.left_mult_form(1, &alg.basis_el(i))).collect();
        let right = (0..n).map(|i| fs.right_mult_form(1, &alg.basis_el(i))).collect();
        Bimodule::new(&format!("one-forms({})", alg.name), left, right)
    }

    /// Degree-k cochains of the derivation complex with the pointwise
    /// actions on values.
    pub fn chevalley_degree(cx: &Complex, k: usize) -> Self {
        let alg = &cx.algebra;
        let n = alg.dim;
        let t = cx.ntuples(k);
        let it = Matrix::identity(t);
        let left = (0..n)
            .map(|i| it.kronecker(&alg.left_mult(&alg.basis_el(i))))
            .collect();
        let right = (0..n)
            .map(|i| it.kronecker(&alg.right_mult(&alg.basis_el(i))))
            .collect();
        Bimodule::new(&format!("cochains-{k}({})", alg.name), left, right)
    }

    /// Direct sum of r copies.
    pub fn finite_power(&self, r: usize) -> Self {
        let ir = Matrix::identity(r);
        let left = self.left.iter().map(|m| ir.kronecker(m)).collect();
        let right = self.right.iter().map(|m| ir.kronecker(m)).collect();
        Bimodule::new(&format!("{}^{r}", self.name), left, right)
    }

    /// The point-separation map into a power of the algebra: all bimodule
    /// homomorphisms M -> A stacked on top of each other.
    pub fn point_separation_map(&self, alg: &Algebra) -> Matrix {
        let homs = self.homs_to(&Bimodule::regular(alg));
        if homs.is_empty() {
            return Matrix::zero(0, self.dim);
        }
        let refs: Vec<&Matrix> = homs.iter().collect();
        Matrix::vstack(&refs)
    }

    /// Kernel of the point-separation map.
    pub fn diag_kernel(&self, alg: &Algebra) -> Subspace {
        self.point_separation_map(alg).kernel()
    }

    /// Whether homomorphisms into the algebra separate points.
    pub fn is_diagonal(&self, alg: &Algebra) -> bool {
        self.diag_kernel(alg).is_zero()
    }

    /// The universal diagonal quotient with its projection.
    pub fn diag(&self, alg: &Algebra) -> DiagQuotient {
        let kernel = self.diag_kernel(alg);
        // the kernel is a submodule, so the actions descend
        for b in kernel.basis() {
            for m in self.left.iter().chain(&self.right) {
                assert!(
                    kernel.contains_vec(&m.apply(b)),
                    "separation kernel must be invariant under both actions"
                );
            }
        }
        let reps = Subspace::full(self.dim)
            .quotient_basis(&kernel)
            .expect("kernel is contained in the full space");
        let qmap = QuotientMap::new(kernel.clone(), reps.clone());
        let proj = qmap.projection_matrix();
        let incl = Matrix::from_fn(self.dim, reps.len(), |r, c| reps[c][r].clone());
        let left = self.left.iter().map(|m| proj.mul(m).mul(&incl)).collect();
        let right = self.right.iter().map(|m| proj.mul(m).mul(&incl)).collect();
        DiagQuotient {
            module: Bimodule::new(&format!("Diag({})", self.name), left, right),
            projection: proj,
            kernel,
        }
    }

    /// Whether every homomorphism from the universal one-forms into M kills
    /// the forms annihilated by all contractions, so that derivations into M
    /// factor through the derivation-based one-forms.
    pub fn is_derivation_based(
        &self,
        one_forms: &Bimodule,
        contraction_kernel: &Subspace,
    ) -> bool {
        let homs = one_forms.homs_to(self);
        homs.iter().all(|f| {
            contraction_kernel.basis().iter().all(|v| rat::is_zero_vec(&f.apply(v)))
        })
    }
}

/// Identity suite for the diagonal quotient on a catalog of modules over
/// one algebra.
pub fn diag_suite(alg: &Algebra, fs: &FormSpace, seed: u64) -> SuiteReport {
    let mut checks = Vec::new();
    let regular = Bimodule::regular(alg);
    let tensor = Bimodule::tensor_square(alg);
    let one_forms = Bimodule::universal_one_forms(fs);
    let ders = alg.derivations();
    let f1 = fs.contraction_kernel_one_forms(&ders);

    let mut modules: Vec<&Bimodule> = vec![&regular, &tensor, &one_forms];
    let power = regular.finite_power(2);
    modules.push(&power);

    let mut ok = true;
    let mut detail = None;
    for m in &modules {
        if let Err(e) = m.validate(alg) {
            ok = false;
            detail = Some(e);
        }
    }
    checks.push(CheckRecord {
        id: "module-laws".into(),
        statement: "unit, multiplicativity and commuting actions hold for the module catalog"
            .into(),
        instances: modules.len(),
        pass: ok,
        detail,
    });

    let mut ok = true;
    let mut detail = None;
    for m in &modules {
        let dq = m.diag(alg);
        if let Err(e) = dq.module.validate(alg) {
            ok = false;
            detail = Some(format!("{}: {e}", dq.module.name));
            continue;
        }
        // the quotient itself is diagonal, so taking it twice changes nothing
        if !dq.module.is_diagonal(alg) {
            ok = false;
            detail = Some(format!("Diag({}) is not diagonal", m.name));
        }
        // the projection is a bimodule homomorphism
        for i in 0..alg.dim {
            if dq.projection.mul(&m.left[i]) != dq.module.left[i].mul(&dq.projection)
                || dq.projection.mul(&m.right[i]) != dq.module.right[i].mul(&dq.projection)
            {
                ok = false;
                detail = Some(format!("projection of {} is not a homomorphism", m.name));
            }
        }
    }
    checks.push(CheckRecord {
        id: "diag-quotient-is-diagonal".into(),
        statement: "Diag(M) is a diagonal bimodule and p_M is a homomorphism".into(),
        instances: modules.len(),
        pass: ok,
        detail,
    });

    let ok = regular.is_diagonal(alg) && regular.diag(alg).kernel.is_zero();
    checks.push(CheckRecord {
        id: "regular-module-is-diagonal".into(),
        statement: "Diag(A) = A".into(),
        instances: 1,
        pass: ok,
        detail: None,
    });

    // Hom(A (x) A, A) is spanned by a (x) b -> a c b for c in A
    let homs = tensor.homs_to(&regular);
    let ok = homs.len() == alg.dim;
    checks.push(CheckRecord {
        id: "tensor-square-homs-are-the-algebra".into(),
        statement: "Hom(A (x) A, A) has the dimension of A".into(),
        instances: 1,
        pass: ok,
        detail: if ok { None } else { Some(format!("found {} homs", homs.len())) },
    });

    // kernel of the separation map of A (x) A: elements with a c b summing
    // to zero for every c, equal to the contraction-horizontal one-forms
    let tk = tensor.diag_kernel(alg);
    let n = alg.dim;
    let mut rows = Vec::new();
    for c in 0..n {
        for out in 0..n {
            let mut row = rat::zeros(n * n);
            for i in 0..n {
                for j in 0..n {
                    // coefficient of e_out in e_i e_c e_j
                    let mut mid = rat::zeros(n);
                    for (k, v) in alg.sc[i][c].iter().enumerate() {
                        mid[k] = v.clone();
                    }
                    let prod = alg.multiply(&mid, &alg.basis_el(j));
                    row[i * n + j] = prod[out].clone();
                }
            }
            rows.push(row);
        }
    }
    let direct = Matrix::from_rows(rows).kernel();
    let ok = tk == direct;
    checks.push(CheckRecord {
        id: "tensor-square-separation-kernel".into(),
        statement: "ker p_{A (x) A} = {sum a (x) b with a c b = 0 for all c}".into(),
        instances: 1,
        pass: ok,
        detail: None,
    });

    // one-forms: the separation kernel equals the forms killed by every
    // contraction
    let of_kernel = one_forms.diag_kernel(alg);
    let ok = of_kernel == f1;
    checks.push(CheckRecord {
        id: "one-forms-diag-kernel-is-contraction-kernel".into(),
        statement: "ker p over the one-forms = forms annihilated by all contractions".into(),
        instances: 1,
        pass: ok,
        detail: if ok {
            None
        } else {
            Some(format!("separation kernel dim {}, contraction kernel dim {}", of_kernel.dim(), f1.dim()))
        },
    });

    let mut ok = true;
    let mut detail = None;
    for m in &modules {
        if m.is_diagonal(alg) && !m.is_derivation_based(&one_forms, &f1) {
            ok = false;
            detail = Some(format!("{} is diagonal but not derivation based", m.name));
        }
    }
    checks.push(CheckRecord {
        id: "diagonal-implies-derivation-based".into(),
        statement: "every diagonal module in the catalog is derivation based".into(),
        instances: modules.len(),
        pass: ok,
        detail,
    });

    SuiteReport::new("diag", &alg.name, seed, checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::chevalley::Codomain;

    #[test]
    fn catalog_modules_validate() {
        for alg in [catalog::mat(2), catalog::dual(), catalog::triangular(2)] {
            let r = Bimodule::regular(&alg);
            r.validate(&alg).unwrap();
            let t = Bimodule::tensor_square(&alg);
            t.validate(&alg).unwrap();
            let p = r.finite_power(3);
            p.validate(&alg).unwrap();
            assert_eq!(p.dim, 3 * alg.dim);
        }
    }

    #[test]
    fn broken_action_fails_validation() {
        let alg = catalog::dual();
        let mut m = Bimodule::regular(&alg);
        m.left[1].set(0, 0, crate::rat::rat(1));
        assert!(m.validate(&alg).is_err());
    }

    #[test]
    fn regular_derivations_match_algebra_derivations() {
        for alg in [catalog::mat(2), catalog::dual(), catalog::triangular(2)] {
            let ders = alg.derivations();
            let module_ders = Bimodule::regular(&alg).derivations(&alg);
            assert_eq!(module_ders.len(), ders.dim());
            for d in &module_ders {
                assert!(ders.coordinates_of(d).is_some());
            }
        }
    }

    #[test]
    fn tensor_square_homs_have_algebra_dimension() {
        for alg in [catalog::mat(2), catalog::dual()] {
            let t = Bimodule::tensor_square(&alg);
            let homs = t.homs_to(&Bimodule::regular(&alg));
            assert_eq!(homs.len(), alg.dim);
        }
    }

    #[test]
    fn matrix_tensor_square_is_diagonal_dual_is_not() {
        let m2 = catalog::mat(2);
        assert!(Bimodule::tensor_square(&m2).is_diagonal(&m2));
        let d2 = catalog::dual();
        let t = Bimodule::tensor_square(&d2);
        assert!(!t.is_diagonal(&d2));
        // over a commutative algebra the kernel is the kernel of the
        // multiplication map, and the quotient is the algebra itself
        let dq = t.diag(&d2);
        assert_eq!(dq.kernel.dim(), 2);
        assert_eq!(dq.module.dim, 2);
        let homs = dq.module.homs_to(&Bimodule::regular(&d2));
        assert!(homs.iter().any(|f| f.inverse().is_some()));
    }

    #[test]
    fn chevalley_degree_module_validates() {
        let cx = Complex::new(catalog::mat(2));
        for k in 0..=3 {
            let m = Bimodule::chevalley_degree(&cx, k);
            m.validate(&cx.algebra).unwrap();
            assert_eq!(m.dim, cx.space_dim(k, Codomain::Algebra));
        }
    }

    #[test]
    fn centralizer_of_regular_is_center() {
        for alg in [catalog::mat(2), catalog::dual(), catalog::triangular(2)] {
            let c = Bimodule::regular(&alg).centralizer();
            assert_eq!(c, alg.center());
        }
    }
}
