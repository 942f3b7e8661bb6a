//! The Chevalley complex of the derivation Lie algebra: alternating
//! multilinear cochains on Der(A) with values in A or in Der(A) itself,
//! together with the graded calculus living on them: wedge products,
//! insertion operators, the differential and its adjoint-action analogue,
//! Lie derivatives, and the two graded brackets (the algebraic bracket of
//! insertion operators and the differential-compatible bracket of Lie
//! derivatives).
//!
//! Cochains are stored by their values on strictly increasing tuples of
//! basis derivations; all formulas are evaluated in that normal form, with
//! shuffle sums realized as signed block splittings of the argument tuple.

use crate::algebra::{Algebra, DerivationSpace};
use crate::matrix::Matrix;
use crate::rat::{self, neg_one_pow, Rat};
use crate::report::{CheckRecord, SuiteReport};
use crate::subspace::Subspace;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Codomain {
    Algebra,
    Der,
}

/// Alternating multilinear map Der(A)^degree -> values, stored on increasing
/// basis tuples. Values are coordinate vectors (algebra coordinates or
/// derivation coordinates).
#[derive(Clone, PartialEq, Debug)]
pub struct Cochain {
    pub degree: usize,
    pub codomain: Codomain,
    pub values: Vec<Vec<Rat>>,
}

/// The Chevalley complex of Der(A) with its tuple tables.
pub struct Complex {
    pub algebra: Algebra,
    pub ders: DerivationSpace,
    tuples: Vec<Vec<Vec<usize>>>,
    ranks: Vec<HashMap<Vec<usize>, usize>>,
}

impl Complex {
    pub fn new(algebra: Algebra) -> Self {
        let ders = algebra.derivations();
        Self::with_derivations(algebra, ders)
    }

    pub fn with_derivations(algebra: Algebra, ders: DerivationSpace) -> Self {
        let m = ders.dim();
        let mut tuples = Vec::with_capacity(m + 2);
        let mut ranks = Vec::with_capacity(m + 2);
        for k in 0..=m + 1 {
            let t = rat::increasing_tuples(m, k);
            let mut map = HashMap::new();
            for (i, tp) in t.iter().enumerate() {
                map.insert(tp.clone(), i);
            }
            tuples.push(t);
            ranks.push(map);
        }
        Complex { algebra, ders, tuples, ranks }
    }

    /// Dimension of the derivation Lie algebra.
    pub fn m(&self) -> usize {
        self.ders.dim()
    }

    pub fn val_dim(&self, c: Codomain) -> usize {
        match c {
            Codomain::Algebra => self.algebra.dim,
            Codomain::Der => self.ders.dim(),
        }
    }

    pub fn tuples(&self, k: usize) -> &[Vec<usize>] {
        if k < self.tuples.len() {
            &self.tuples[k]
        } else {
            &[]
        }
    }

    pub fn ntuples(&self, k: usize) -> usize {
        self.tuples(k).len()
    }

    /// Dimension of the cochain space of the given degree.
    pub fn space_dim(&self, k: usize, c: Codomain) -> usize {
        self.ntuples(k) * self.val_dim(c)
    }

    pub fn zero_cochain(&self, k: usize, c: Codomain) -> Cochain {
        Cochain {
            degree: k,
            codomain: c,
            values: vec![rat::zeros(self.val_dim(c)); self.ntuples(k)],
        }
    }

    /// Basis cochain: value e_coord on the tuple of the given rank, zero
    /// elsewhere.
    pub fn basis_cochain(&self, k: usize, c: Codomain, rank: usize, coord: usize) -> Cochain {
        let mut z = self.zero_cochain(k, c);
        z.values[rank][coord] = Rat::one();
        z
    }

    /// The identity derivation-valued 1-cochain X -> X.
    pub fn identity_cochain(&self) -> Cochain {
        let m = self.m();
        let mut z = self.zero_cochain(1, Codomain::Der);
        for t in 0..m {
            z.values[t][t] = Rat::one();
        }
        z
    }

    pub fn to_coords(&self, phi: &Cochain) -> Vec<Rat> {
        phi.values.iter().flatten().cloned().collect()
    }

    pub fn from_coords(&self, k: usize, c: Codomain, coords: &[Rat]) -> Cochain {
        let vd = self.val_dim(c);
        assert_eq!(coords.len(), self.ntuples(k) * vd);
        let values = coords.chunks(vd.max(1)).map(|x| x.to_vec()).collect::<Vec<_>>();
        let values = if vd == 0 { vec![rat::zeros(0); self.ntuples(k)] } else { values };
        Cochain { degree: k, codomain: c, values }
    }

    pub fn add(&self, a: &Cochain, b: &Cochain) -> Cochain {
        assert_eq!((a.degree, a.codomain), (b.degree, b.codomain));
        let mut out = a.clone();
        for (x, y) in out.values.iter_mut().zip(&b.values) {
            rat::add_assign_vec(x, y);
        }
        out
    }

    pub fn sub(&self, a: &Cochain, b: &Cochain) -> Cochain {
        self.add(a, &self.scale(&-Rat::one(), b))
    }

    pub fn scale(&self, c: &Rat, a: &Cochain) -> Cochain {
        let mut out = a.clone();
        for v in out.values.iter_mut() {
            *v = rat::scale_vec(c, v);
        }
        out
    }

    pub fn is_zero_cochain(&self, a: &Cochain) -> bool {
        a.values.iter().all(|v| rat::is_zero_vec(v))
    }

    /// Value on a tuple of basis indices in any order; zero on repeats.
    pub fn eval_basis(&self, phi: &Cochain, idx: &[usize]) -> Vec<Rat> {
        assert_eq!(idx.len(), phi.degree, "argument count must match the degree");
        match rat::sort_with_sign(idx) {
            None => rat::zeros(self.val_dim(phi.codomain)),
            Some((sorted, sign)) => {
                let rank = self.ranks[phi.degree][&sorted];
                if sign > 0 {
                    phi.values[rank].clone()
                } else {
                    rat::scale_vec(&-Rat::one(), &phi.values[rank])
                }
            }
        }
    }

    /// Value with a general first argument (derivation coordinates) and
    /// basis indices for the remaining slots.
    pub fn eval_gen_first(&self, phi: &Cochain, first: &[Rat], rest: &[usize]) -> Vec<Rat> {
        assert_eq!(rest.len() + 1, phi.degree);
        let mut out = rat::zeros(self.val_dim(phi.codomain));
        for (t, c) in first.iter().enumerate() {
            if c.is_zero() || rest.contains(&t) {
                continue;
            }
            let mut idx = Vec::with_capacity(phi.degree);
            idx.push(t);
            idx.extend_from_slice(rest);
            let v = self.eval_basis(phi, &idx);
            rat::add_scaled_vec(&mut out, c, &v);
        }
        out
    }

    /// Full multilinear evaluation at arbitrary derivation coordinate
    /// vectors. Errors when the argument count does not match the degree.
    pub fn evaluate(&self, phi: &Cochain, args: &[Vec<Rat>]) -> Result<Vec<Rat>, String> {
        if args.len() != phi.degree {
            return Err(format!(
                "evaluate: degree {} cochain applied to {} arguments",
                phi.degree,
                args.len()
            ));
        }
        let m = self.m();
        for a in args {
            if a.len() != m {
                return Err("evaluate: argument has wrong coordinate length".into());
            }
        }
        let mut out = rat::zeros(self.val_dim(phi.codomain));
        let mut idx = vec![0usize; phi.degree];
        self.eval_rec(phi, args, 0, &mut idx, &Rat::one(), &mut out);
        Ok(out)
    }

    fn eval_rec(
        &self,
        phi: &Cochain,
        args: &[Vec<Rat>],
        pos: usize,
        idx: &mut [usize],
        coeff: &Rat,
        out: &mut [Rat],
    ) {
        if pos == args.len() {
            let v = self.eval_basis(phi, idx);
            rat::add_scaled_vec(out, coeff, &v);
            return;
        }
        for t in 0..self.m() {
            let c = &args[pos][t];
            if c.is_zero() {
                continue;
            }
            idx[pos] = t;
            let c2 = coeff * c;
            self.eval_rec(phi, args, pos + 1, idx, &c2, out);
        }
    }

    /// Action of a derivation (coordinates u) on a value of the codomain:
    /// the derivation action on algebra values, the bracket on derivation
    /// values.
    fn der_act(&self, u: &[Rat], v: &[Rat], c: Codomain) -> Vec<Rat> {
        match c {
            Codomain::Algebra => self.ders.apply_coords(u, v),
            Codomain::Der => self.ders.bracket_vec(u, v),
        }
    }

    /// Chevalley coboundary for either codomain: the usual alternating sum
    /// of derivation actions and bracketed-argument insertions. On algebra
    /// values this is the differential d, on derivation values the adjoint
    /// coboundary.
    pub fn coboundary(&self, phi: &Cochain) -> Cochain {
        let k = phi.degree;
        let cod = phi.codomain;
        let mut out = self.zero_cochain(k + 1, cod);
        for (rk, tt) in self.tuples(k + 1).iter().enumerate() {
            let mut acc = rat::zeros(self.val_dim(cod));
            for i in 0..=k {
                let rest: Vec<usize> =
                    tt.iter().enumerate().filter(|&(p, _)| p != i).map(|(_, &x)| x).collect();
                let inner = self.eval_basis(phi, &rest);
                let mut e = rat::zeros(self.m());
                e[tt[i]] = Rat::one();
                let term = self.der_act(&e, &inner, cod);
                rat::add_scaled_vec(&mut acc, &neg_one_pow(i as i64), &term);
            }
            if k >= 1 {
                for i in 0..=k {
                    for j in i + 1..=k {
                        let rest: Vec<usize> = tt
                            .iter()
                            .enumerate()
                            .filter(|&(p, _)| p != i && p != j)
                            .map(|(_, &x)| x)
                            .collect();
                        let br = self.ders.bracket_basis_vec(tt[i], &{
                            let mut e = rat::zeros(self.m());
                            e[tt[j]] = Rat::one();
                            e
                        });
                        let term = self.eval_gen_first(phi, &br, &rest);
                        rat::add_scaled_vec(&mut acc, &neg_one_pow((i + j) as i64), &term);
                    }
                }
            }
            out.values[rk] = acc;
        }
        out
    }

    /// Differential on algebra-valued cochains.
    pub fn differential(&self, phi: &Cochain) -> Cochain {
        assert_eq!(phi.codomain, Codomain::Algebra);
        self.coboundary(phi)
    }

    /// Adjoint coboundary on derivation-valued cochains.
    pub fn adjoint_coboundary(&self, phi: &Cochain) -> Cochain {
        assert_eq!(phi.codomain, Codomain::Der);
        self.coboundary(phi)
    }

    /// Shuffle product over signed block splits: for each increasing result
    /// tuple, sum combine(phi(block1), psi(block2)) over all splits.
    fn shuffle_combine(
        &self,
        phi: &Cochain,
        psi: &Cochain,
        out_cod: Codomain,
        combine: impl Fn(&[Rat], &[Rat]) -> Vec<Rat>,
    ) -> Cochain {
        let (k, l) = (phi.degree, psi.degree);
        let mut out = self.zero_cochain(k + l, out_cod);
        let splits = rat::block_splits(k + l, &[k, l]);
        for (rk, tt) in self.tuples(k + l).iter().enumerate() {
            let mut acc = rat::zeros(self.val_dim(out_cod));
            for (blocks, sign) in &splits {
                let a: Vec<usize> = blocks[0].iter().map(|&p| tt[p]).collect();
                let b: Vec<usize> = blocks[1].iter().map(|&p| tt[p]).collect();
                let va = self.eval_basis(phi, &a);
                let vb = self.eval_basis(psi, &b);
                let v = combine(&va, &vb);
                rat::add_scaled_vec(&mut acc, &rat::rat(*sign), &v);
            }
            out.values[rk] = acc;
        }
        out
    }

    /// Wedge product of algebra-valued cochains,
    /// (phi.psi)(X_1..X_{k+l}) = sum over shuffles of
    /// sign * phi(X_{s(1)}..X_{s(k)}) * psi(X_{s(k+1)}..X_{s(k+l)}).
    pub fn wedge(&self, phi: &Cochain, psi: &Cochain) -> Cochain {
        assert_eq!(phi.codomain, Codomain::Algebra);
        assert_eq!(psi.codomain, Codomain::Algebra);
        self.shuffle_combine(phi, psi, Codomain::Algebra, |a, b| self.algebra.multiply(a, b))
    }

    /// Bracket-valued shuffle product of derivation-valued cochains:
    /// the values are combined with the Lie bracket.
    pub fn wedge_bracket(&self, kk: &Cochain, ll: &Cochain) -> Cochain {
        assert_eq!(kk.codomain, Codomain::Der);
        assert_eq!(ll.codomain, Codomain::Der);
        self.shuffle_combine(kk, ll, Codomain::Der, |a, b| self.ders.bracket_vec(a, b))
    }

    /// Shuffle Lie action: values of K act as derivations on values of an
    /// algebra-valued cochain.
    pub fn lie_wedge(&self, kk: &Cochain, omega: &Cochain) -> Cochain {
        assert_eq!(kk.codomain, Codomain::Der);
        assert_eq!(omega.codomain, Codomain::Algebra);
        self.shuffle_combine(kk, omega, Codomain::Algebra, |a, b| {
            self.ders.apply_coords(a, b)
        })
    }

    /// Insertion of a single derivation (by coordinates) into the first slot.
    pub fn insert_x(&self, x: &[Rat], omega: &Cochain) -> Cochain {
        let l = omega.degree;
        if l == 0 {
            return self.zero_cochain(0, omega.codomain);
        }
        let mut out = self.zero_cochain(l - 1, omega.codomain);
        for (rk, tt) in self.tuples(l - 1).iter().enumerate() {
            out.values[rk] = self.eval_gen_first(omega, x, tt);
        }
        out
    }

    /// Insertion of a derivation-valued k-cochain K into a cochain of
    /// degree l (either codomain): choose k of the l+k-1 arguments for K,
    /// with the interleave sign, and feed the value into the first slot.
    /// Vanishes on degree 0.
    pub fn insert_k(&self, kk: &Cochain, omega: &Cochain) -> Cochain {
        assert_eq!(kk.codomain, Codomain::Der);
        let k = kk.degree;
        let l = omega.degree;
        if l == 0 {
            return self.zero_cochain(k.max(1) - 1, omega.codomain);
        }
        let deg = l + k - 1;
        let mut out = self.zero_cochain(deg, omega.codomain);
        if deg > self.m() {
            return out;
        }
        let splits = rat::block_splits(deg, &[k, l - 1]);
        for (rk, tt) in self.tuples(deg).iter().enumerate() {
            let mut acc = rat::zeros(self.val_dim(omega.codomain));
            for (blocks, sign) in &splits {
                let sel: Vec<usize> = blocks[0].iter().map(|&p| tt[p]).collect();
                let rest: Vec<usize> = blocks[1].iter().map(|&p| tt[p]).collect();
                let kv = self.eval_basis(kk, &sel);
                let v = self.eval_gen_first(omega, &kv, &rest);
                rat::add_scaled_vec(&mut acc, &rat::rat(*sign), &v);
            }
            out.values[rk] = acc;
        }
        out
    }

    /// Algebraic bracket: [K,L]^ = i_K L - (-1)^{(k-1)(l-1)} i_L K.
    pub fn nr_bracket(&self, kk: &Cochain, ll: &Cochain) -> Cochain {
        assert_eq!(kk.codomain, Codomain::Der);
        assert_eq!(ll.codomain, Codomain::Der);
        let (k, l) = (kk.degree as i64, ll.degree as i64);
        let a = self.insert_k(kk, ll);
        let b = self.insert_k(ll, kk);
        self.sub(&a, &self.scale(&neg_one_pow((k - 1) * (l - 1)), &b))
    }

    /// Lie derivative along a derivation-valued cochain, as the graded
    /// commutator with the differential: L_K = i_K d - (-1)^{k-1} d i_K.
    pub fn lie_derivative(&self, kk: &Cochain, omega: &Cochain) -> Cochain {
        assert_eq!(kk.codomain, Codomain::Der);
        assert_eq!(omega.codomain, Codomain::Algebra);
        let k = kk.degree as i64;
        let a = self.insert_k(kk, &self.differential(omega));
        // on degree 0 the insertion vanishes identically, so the second term
        // is the zero cochain in the target degree
        let b = if omega.degree == 0 {
            self.zero_cochain(kk.degree, Codomain::Algebra)
        } else {
            self.differential(&self.insert_k(kk, omega))
        };
        self.sub(&a, &self.scale(&neg_one_pow(k - 1), &b))
    }

    /// Lie derivative by its explicit shuffle expansion: the derivation
    /// action of K-values on omega-values, corrected by bracketed-argument
    /// terms. Used as the independent route against the hook definition.
    pub fn lie_explicit(&self, kk: &Cochain, omega: &Cochain) -> Cochain {
        assert_eq!(kk.codomain, Codomain::Der);
        assert_eq!(omega.codomain, Codomain::Algebra);
        let (k, l) = (kk.degree, omega.degree);
        let deg = k + l;
        let mut out = self.zero_cochain(deg, Codomain::Algebra);
        if deg > self.m() {
            return out;
        }
        let sign_k = neg_one_pow(k as i64);
        let splits_a = rat::block_splits(deg, &[k, l]);
        let splits_b1 = if l >= 1 { rat::block_splits(deg, &[1, k, l - 1]) } else { Vec::new() };
        let splits_b2 = if l >= 1 && k >= 1 {
            rat::block_splits(deg, &[2, k - 1, l - 1])
        } else {
            Vec::new()
        };
        for (rk, tt) in self.tuples(deg).iter().enumerate() {
            let mut acc = rat::zeros(self.algebra.dim);
            for (blocks, sign) in &splits_a {
                let kv = self.eval_basis(kk, &blocks[0].iter().map(|&p| tt[p]).collect::<Vec<_>>());
                let ov = self.eval_basis(omega, &blocks[1].iter().map(|&p| tt[p]).collect::<Vec<_>>());
                let v = self.ders.apply_coords(&kv, &ov);
                rat::add_scaled_vec(&mut acc, &rat::rat(*sign), &v);
            }
            for (blocks, sign) in &splits_b1 {
                // omega([X_a, K(block)], rest)
                let a = tt[blocks[0][0]];
                let kv = self.eval_basis(kk, &blocks[1].iter().map(|&p| tt[p]).collect::<Vec<_>>());
                let br = self.ders.bracket_basis_vec(a, &kv);
                let rest: Vec<usize> = blocks[2].iter().map(|&p| tt[p]).collect();
                let v = self.eval_gen_first(omega, &br, &rest);
                let c = &sign_k * rat::rat(*sign);
                rat::add_scaled_vec(&mut acc, &c, &v);
            }
            for (blocks, sign) in &splits_b2 {
                // - omega(K([X_a, X_b], block), rest)
                let a = tt[blocks[0][0]];
                let b = tt[blocks[0][1]];
                let mut e = rat::zeros(self.m());
                e[b] = Rat::one();
                let br = self.ders.bracket_basis_vec(a, &e);
                let sel: Vec<usize> = blocks[1].iter().map(|&p| tt[p]).collect();
                let kv = self.eval_gen_first(kk, &br, &sel);
                let rest: Vec<usize> = blocks[2].iter().map(|&p| tt[p]).collect();
                let v = self.eval_gen_first(omega, &kv, &rest);
                let c = -(&sign_k * rat::rat(*sign));
                rat::add_scaled_vec(&mut acc, &c, &v);
            }
            out.values[rk] = acc;
        }
        out
    }

    /// Differential-compatible bracket on derivation-valued cochains, by its
    /// explicit shuffle formula.
    pub fn fn_bracket(&self, kk: &Cochain, ll: &Cochain) -> Cochain {
        assert_eq!(kk.codomain, Codomain::Der);
        assert_eq!(ll.codomain, Codomain::Der);
        let (k, l) = (kk.degree, ll.degree);
        let deg = k + l;
        let mut out = self.zero_cochain(deg, Codomain::Der);
        if deg > self.m() {
            return out;
        }
        let m = self.m();
        let c2 = neg_one_pow(k as i64);
        let c3 = -neg_one_pow((k * l + l) as i64);
        let splits_1 = rat::block_splits(deg, &[k, l]);
        let splits_2a = if l >= 1 { rat::block_splits(deg, &[1, k, l - 1]) } else { Vec::new() };
        let splits_2b = if l >= 1 && k >= 1 {
            rat::block_splits(deg, &[2, k - 1, l - 1])
        } else {
            Vec::new()
        };
        let splits_3a = if k >= 1 { rat::block_splits(deg, &[1, l, k - 1]) } else { Vec::new() };
        let splits_3b = if k >= 1 && l >= 1 {
            rat::block_splits(deg, &[2, l - 1, k - 1])
        } else {
            Vec::new()
        };
        for (rk, tt) in self.tuples(deg).iter().enumerate() {
            let mut acc = rat::zeros(m);
            for (blocks, sign) in &splits_1 {
                let kv = self.eval_basis(kk, &blocks[0].iter().map(|&p| tt[p]).collect::<Vec<_>>());
                let lv = self.eval_basis(ll, &blocks[1].iter().map(|&p| tt[p]).collect::<Vec<_>>());
                let v = self.ders.bracket_vec(&kv, &lv);
                rat::add_scaled_vec(&mut acc, &rat::rat(*sign), &v);
            }
            // + (-1)^k sum L([X_a, K(sel)], rest)
            for (blocks, sign) in &splits_2a {
                let a = tt[blocks[0][0]];
                let kv = self.eval_basis(kk, &blocks[1].iter().map(|&p| tt[p]).collect::<Vec<_>>());
                let br = self.ders.bracket_basis_vec(a, &kv);
                let rest: Vec<usize> = blocks[2].iter().map(|&p| tt[p]).collect();
                let v = self.eval_gen_first(ll, &br, &rest);
                let c = &c2 * rat::rat(*sign);
                rat::add_scaled_vec(&mut acc, &c, &v);
            }
            // - (-1)^k sum L(K([X_a, X_b], sel), rest)
            for (blocks, sign) in &splits_2b {
                let a = tt[blocks[0][0]];
                let b = tt[blocks[0][1]];
                let mut e = rat::zeros(m);
                e[b] = Rat::one();
                let br = self.ders.bracket_basis_vec(a, &e);
                let sel: Vec<usize> = blocks[1].iter().map(|&p| tt[p]).collect();
                let kv = self.eval_gen_first(kk, &br, &sel);
                let rest: Vec<usize> = blocks[2].iter().map(|&p| tt[p]).collect();
                let v = self.eval_gen_first(ll, &kv, &rest);
                let c = -(&c2 * rat::rat(*sign));
                rat::add_scaled_vec(&mut acc, &c, &v);
            }
            // - (-1)^{kl+l} sum K([X_a, L(sel)], rest)
            for (blocks, sign) in &splits_3a {
                let a = tt[blocks[0][0]];
                let lv = self.eval_basis(ll, &blocks[1].iter().map(|&p| tt[p]).collect::<Vec<_>>());
                let br = self.ders.bracket_basis_vec(a, &lv);
                let rest: Vec<usize> = blocks[2].iter().map(|&p| tt[p]).collect();
                let v = self.eval_gen_first(kk, &br, &rest);
                let c = &c3 * rat::rat(*sign);
                rat::add_scaled_vec(&mut acc, &c, &v);
            }
            // + (-1)^{kl+l} sum K(L([X_a, X_b], sel), rest)
            for (blocks, sign) in &splits_3b {
                let a = tt[blocks[0][0]];
                let b = tt[blocks[0][1]];
                let mut e = rat::zeros(m);
                e[b] = Rat::one();
                let br = self.ders.bracket_basis_vec(a, &e);
                let sel: Vec<usize> = blocks[1].iter().map(|&p| tt[p]).collect();
                let lv = self.eval_gen_first(ll, &br, &sel);
                let rest: Vec<usize> = blocks[2].iter().map(|&p| tt[p]).collect();
                let v = self.eval_gen_first(kk, &lv, &rest);
                let c = -(&c3 * rat::rat(*sign));
                rat::add_scaled_vec(&mut acc, &c, &v);
            }
            out.values[rk] = acc;
        }
        out
    }

    /// Same bracket through its decomposition into the algebraic bracket and
    /// insertions of adjoint coboundaries:
    /// [K,L] = [K,L]_wedge + (-1)^k i(dK)L - (-1)^{kl+l} i(dL)K.
    pub fn fn_bracket_decomposed(&self, kk: &Cochain, ll: &Cochain) -> Cochain {
        let (k, l) = (kk.degree as i64, ll.degree as i64);
        let mut out = self.wedge_bracket(kk, ll);
        let t2 = self.insert_k(&self.adjoint_coboundary(kk), ll);
        let t3 = self.insert_k(&self.adjoint_coboundary(ll), kk);
        out = self.add(&out, &self.scale(&neg_one_pow(k), &t2));
        out = self.sub(&out, &self.scale(&neg_one_pow(k * l + l), &t3));
        out
    }

    /// Operator matrix of a cochain transformation on the coordinates of a
    /// fixed source degree and codomain.
    pub fn op_matrix(
        &self,
        from_deg: usize,
        from_cod: Codomain,
        op: impl Fn(&Cochain) -> Cochain,
    ) -> Matrix {
        let dim_in = self.space_dim(from_deg, from_cod);
        let probe = op(&self.zero_cochain(from_deg, from_cod));
        let dim_out = self.space_dim(probe.degree, probe.codomain);
        let mut out = Matrix::zero(dim_out, dim_in);
        let vd = self.val_dim(from_cod);
        for rk in 0..self.ntuples(from_deg) {
            for coord in 0..vd {
                let img = op(&self.basis_cochain(from_deg, from_cod, rk, coord));
                let col = self.to_coords(&img);
                for (r, v) in col.iter().enumerate() {
                    if !v.is_zero() {
                        out.set(r, rk * vd + coord, v.clone());
                    }
                }
            }
        }
        out
    }

    /// Differential matrices for all degrees 0..m (algebra values).
    pub fn differential_matrices(&self) -> Vec<Matrix> {
        (0..=self.m())
            .map(|k| self.op_matrix(k, Codomain::Algebra, |p| self.differential(p)))
            .collect()
    }

    /// Subspace of cochains multilinear over the center: conditions
    /// phi(z*X, rest) = z*phi(X, rest) on the first slot, for z running over
    /// a basis of Z(A).
    pub fn z_multilinear_subspace(&self, k: usize, cod: Codomain) -> Subspace {
        let dim = self.space_dim(k, cod);
        if k == 0 {
            return Subspace::full(dim);
        }
        let center = self.algebra.center();
        let m = self.m();
        let vd = self.val_dim(cod);
        // z-multiplication on derivations, in coordinates
        let mut zmul: Vec<Vec<Vec<Rat>>> = Vec::new();
        let mut zval: Vec<Matrix> = Vec::new();
        for z in center.basis() {
            let lz = self.algebra.left_mult(z);
            let per_basis: Vec<Vec<Rat>> = (0..m)
                .map(|t| {
                    let op = lz.mul(&self.ders.basis[t]);
                    self.ders
                        .coordinates_of(&op)
                        .expect("central multiple of a derivation must be a derivation")
                })
                .collect();
            zmul.push(per_basis);
            zval.push(match cod {
                Codomain::Algebra => lz,
                Codomain::Der => {
                    let mut mm = Matrix::zero(m, m);
                    for t in 0..m {
                        let op = self.algebra.left_mult(z).mul(&self.ders.basis[t]);
                        let co = self.ders.coordinates_of(&op).unwrap();
                        for r in 0..m {
                            mm.set(r, t, co[r].clone());
                        }
                    }
                    mm
                }
            });
        }
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for (zi, _z) in center.basis().iter().enumerate() {
            for tt in self.tuples(k) {
                let first = tt[0];
                let rest = &tt[1..];
                // row block: phi(z*X_first, rest) - z*phi(tt) = 0
                for out_c in 0..vd {
                    let mut row = rat::zeros(dim);
                    // phi(z*X_first, rest) = sum_s zmul[zi][first][s] phi(X_s, rest)
                    for s in 0..m {
                        let c = &zmul[zi][first][s];
                        if c.is_zero() || rest.contains(&s) {
                            continue;
                        }
                        let mut idx = vec![s];
                        idx.extend_from_slice(rest);
                        let (sorted, sign) = rat::sort_with_sign(&idx).unwrap();
                        let rk = self.ranks[k][&sorted];
                        row[rk * vd + out_c] += c * rat::rat(sign);
                    }
                    // minus z * phi(tt)
                    let rk0 = self.ranks[k][tt];
                    for in_c in 0..vd {
                        let zc = zval[zi].at(out_c, in_c);
                        if !zc.is_zero() {
                            row[rk0 * vd + in_c] -= zc;
                        }
                    }
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            return Subspace::full(dim);
        }
        Matrix::from_rows(rows).kernel()
    }

    /// Horizontal, invariant and basic subspaces of degree k algebra-valued
    /// cochains with respect to a family of derivations (coordinates).
    pub fn operation_subspaces(
        &self,
        k: usize,
        generators: &[Vec<Rat>],
    ) -> (Subspace, Subspace, Subspace) {
        let dim = self.space_dim(k, Codomain::Algebra);
        let mut horizontal = Subspace::full(dim);
        let mut invariant = Subspace::full(dim);
        for x in generators {
            let ins = self.op_matrix(k, Codomain::Algebra, |p| self.insert_x(x, p));
            horizontal = horizontal.intersect(&ins.kernel());
            let x0 = Cochain { degree: 0, codomain: Codomain::Der, values: vec![x.clone()] };
            let lie = self.op_matrix(k, Codomain::Algebra, |p| self.lie_derivative(&x0, p));
            invariant = invariant.intersect(&lie.kernel());
        }
        let basic = horizontal.intersect(&invariant);
        (horizontal, invariant, basic)
    }

    /// Seeded random cochain with entries in -3..=3.
    pub fn random_cochain(&self, rng: &mut ChaCha8Rng, k: usize, cod: Codomain) -> Cochain {
        let mut out = self.zero_cochain(k, cod);
        for v in out.values.iter_mut() {
            for x in v.iter_mut() {
                *x = rat::rat(rng.gen_range(-3..=3));
            }
        }
        out
    }
}

/// Per-degree dimensions of a complex: (space, kernel of outgoing, image of
/// incoming, betti).
pub fn cohomology_dims(ds: &[Matrix]) -> Result<Vec<(usize, usize, usize, usize)>, String> {
    // ds[k]: degree k -> degree k+1; the last map must land in dimension 0
    for w in ds.windows(2) {
        if w[1].cols != w[0].rows {
            return Err("differentials do not compose".into());
        }
        if !w[1].mul(&w[0]).is_zero() {
            return Err("differential does not square to zero".into());
        }
    }
    let mut out = Vec::new();
    let mut prev_rank = 0usize;
    for d in ds {
        let space = d.cols;
        let rank = d.rank();
        let ker = space - rank;
        let betti = ker - prev_rank;
        out.push((space, ker, prev_rank, betti));
        prev_rank = rank;
    }
    Ok(out)
}

impl Complex {
    fn der_degree_pool(&self) -> Vec<usize> {
        let hi = self.m().min(2).max(1);
        (1..=hi).collect()
    }

    fn fn_degree_pool(&self) -> Vec<usize> {
        (0..=self.m().min(2)).collect()
    }

    /// Seeded identity suite: the operator identities defining the two
    /// graded brackets and the Lie derivative, their compatibilities with
    /// insertion and the coboundaries, and closure of the center-multilinear
    /// subcomplex.
    pub fn identity_suite(&self, seed: u64, instances: usize) -> SuiteReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = self.m();
        let nr_pool = self.der_degree_pool();
        let fn_pool = self.fn_degree_pool();
        let mut checks: Vec<CheckRecord> = Vec::new();

        // d.d = 0 on every degree, as matrices
        let dmats = self.differential_matrices();
        let mut d2_ok = true;
        for k in 0..dmats.len().saturating_sub(1) {
            if !dmats[k + 1].mul(&dmats[k]).is_zero() {
                d2_ok = false;
            }
        }
        checks.push(CheckRecord {
            id: "differential-squares-to-zero".into(),
            statement: "d d = 0".into(),
            instances: dmats.len(),
            pass: d2_ok,
            detail: None,
        });

        // closure of the center-multilinear subcomplex under d
        let mut zd_ok = true;
        let mut zd_n = 0;
        for k in 0..=m {
            let zk = self.z_multilinear_subspace(k, Codomain::Algebra);
            let zk1 = self.z_multilinear_subspace(k + 1, Codomain::Algebra);
            for b in zk.basis() {
                let phi = self.from_coords(k, Codomain::Algebra, b);
                let img = self.to_coords(&self.differential(&phi));
                if !zk1.contains_vec(&img) {
                    zd_ok = false;
                }
                zd_n += 1;
            }
        }
        checks.push(CheckRecord {
            id: "center-subcomplex-closed-under-d".into(),
            statement: "d maps center-multilinear cochains to center-multilinear cochains".into(),
            instances: zd_n,
            pass: zd_ok,
            detail: None,
        });

        let mut run = |id: &str,
                       statement: &str,
                       rng: &mut ChaCha8Rng,
                       body: &mut dyn FnMut(&mut ChaCha8Rng, usize) -> bool| {
            let mut pass = true;
            let mut detail = None;
            for inst in 0..instances {
                if !body(rng, inst) {
                    pass = false;
                    if detail.is_none() {
                        detail = Some(format!("seed {seed} instance {inst}"));
                    }
                }
            }
            checks.push(CheckRecord {
                id: id.into(),
                statement: statement.into(),
                instances,
                pass,
                detail,
            });
        };

        run(
            "coboundary-squares-to-zero",
            "dd dd K = 0 for the adjoint coboundary",
            &mut rng,
            &mut |rng, inst| {
                let k = fn_pool[inst % fn_pool.len()];
                let kk = self.random_cochain(rng, k, Codomain::Der);
                self.is_zero_cochain(&self.adjoint_coboundary(&self.adjoint_coboundary(&kk)))
            },
        );

        run(
            "insertion-commutator-nr",
            "i_K i_L w - (-1)^{(k-1)(l-1)} i_L i_K w = i([K,L]^) w",
            &mut rng,
            &mut |rng, inst| {
                let k = nr_pool[inst % nr_pool.len()];
                let l = nr_pool[(inst / nr_pool.len()) % nr_pool.len()];
                let q = inst % (m + 1);
                let kk = self.random_cochain(rng, k, Codomain::Der);
                let ll = self.random_cochain(rng, l, Codomain::Der);
                let w = self.random_cochain(rng, q, Codomain::Algebra);
                let s = neg_one_pow((k as i64 - 1) * (l as i64 - 1));
                let lhs = self.sub(
                    &self.insert_k(&kk, &self.insert_k(&ll, &w)),
                    &self.scale(&s, &self.insert_k(&ll, &self.insert_k(&kk, &w))),
                );
                let rhs = self.insert_k(&self.nr_bracket(&kk, &ll), &w);
                lhs == rhs
            },
        );

        run(
            "nr-graded-anticommutativity",
            "[K,L]^ = -(-1)^{(k-1)(l-1)} [L,K]^",
            &mut rng,
            &mut |rng, inst| {
                let k = nr_pool[inst % nr_pool.len()];
                let l = nr_pool[(inst / nr_pool.len()) % nr_pool.len()];
                let kk = self.random_cochain(rng, k, Codomain::Der);
                let ll = self.random_cochain(rng, l, Codomain::Der);
                let s = neg_one_pow((k as i64 - 1) * (l as i64 - 1));
                let lhs = self.nr_bracket(&kk, &ll);
                let rhs = self.scale(&-s, &self.nr_bracket(&ll, &kk));
                lhs == rhs
            },
        );

        run(
            "nr-graded-jacobi",
            "[K,[L,J]^]^ = [[K,L]^,J]^ + (-1)^{(k-1)(l-1)} [L,[K,J]^]^",
            &mut rng,
            &mut |rng, inst| {
                let k = nr_pool[inst % nr_pool.len()];
                let l = nr_pool[(inst / nr_pool.len()) % nr_pool.len()];
                let j = nr_pool[(inst / (nr_pool.len() * nr_pool.len())) % nr_pool.len()];
                let kk = self.random_cochain(rng, k, Codomain::Der);
                let ll = self.random_cochain(rng, l, Codomain::Der);
                let jj = self.random_cochain(rng, j, Codomain::Der);
                let s = neg_one_pow((k as i64 - 1) * (l as i64 - 1));
                let lhs = self.nr_bracket(&kk, &self.nr_bracket(&ll, &jj));
                let rhs = self.add(
                    &self.nr_bracket(&self.nr_bracket(&kk, &ll), &jj),
                    &self.scale(&s, &self.nr_bracket(&ll, &self.nr_bracket(&kk, &jj))),
                );
                lhs == rhs
            },
        );

        run(
            "lie-commutator-fn",
            "L_K L_L w - (-1)^{kl} L_L L_K w = L([K,L]) w",
            &mut rng,
            &mut |rng, inst| {
                let k = fn_pool[inst % fn_pool.len()];
                let l = fn_pool[(inst / fn_pool.len()) % fn_pool.len()];
                let q = inst % (m.saturating_sub(k + l) + 1);
                let kk = self.random_cochain(rng, k, Codomain::Der);
                let ll = self.random_cochain(rng, l, Codomain::Der);
                let w = self.random_cochain(rng, q, Codomain::Algebra);
                let s = neg_one_pow((k * l) as i64);
                let lhs = self.sub(
                    &self.lie_derivative(&kk, &self.lie_derivative(&ll, &w)),
                    &self.scale(&s, &self.lie_derivative(&ll, &self.lie_derivative(&kk, &w))),
                );
                let rhs = self.lie_derivative(&self.fn_bracket(&kk, &ll), &w);
                lhs == rhs
            },
        );

        run(
            "fn-graded-anticommutativity",
            "[K,L] = -(-1)^{kl} [L,K]",
            &mut rng,
            &mut |rng, inst| {
                let k = fn_pool[inst % fn_pool.len()];
                let l = fn_pool[(inst / fn_pool.len()) % fn_pool.len()];
                let kk = self.random_cochain(rng, k, Codomain::Der);
                let ll = self.random_cochain(rng, l, Codomain::Der);
                let s = neg_one_pow((k * l) as i64);
                self.fn_bracket(&kk, &ll) == self.scale(&-s, &self.fn_bracket(&ll, &kk))
            },
        );

        run(
            "fn-graded-jacobi",
            "[K,[L,J]] = [[K,L],J] + (-1)^{kl} [L,[K,J]]",
            &mut rng,
            &mut |rng, inst| {
                let k = fn_pool[inst % fn_pool.len()];
                let l = fn_pool[(inst / fn_pool.len()) % fn_pool.len()];
                let j = fn_pool[(inst / (fn_pool.len() * fn_pool.len())) % fn_pool.len()];
                let kk = self.random_cochain(rng, k, Codomain::Der);
                let ll = self.random_cochain(rng, l, Codomain::Der);
                let jj = self.random_cochain(rng, j, Codomain::Der);
                let s = neg_one_pow((k * l) as i64);
                let lhs = self.fn_bracket(&kk, &self.fn_bracket(&ll, &jj));
                let rhs = self.add(
                    &self.fn_bracket(&self.fn_bracket(&kk, &ll), &jj),
                    &self.scale(&s, &self.fn_bracket(&ll, &self.fn_bracket(&kk, &jj))),
                );
                lhs == rhs
            },
        );

        run(
            "fn-direct-vs-decomposed",
            "[K,L] = [K,L]_w + (-1)^k i(dd K)L - (-1)^{kl+l} i(dd L)K",
            &mut rng,
            &mut |rng, inst| {
                let k = fn_pool[inst % fn_pool.len()];
                let l = fn_pool[(inst / fn_pool.len()) % fn_pool.len()];
                let kk = self.random_cochain(rng, k, Codomain::Der);
                let ll = self.random_cochain(rng, l, Codomain::Der);
                self.fn_bracket(&kk, &ll) == self.fn_bracket_decomposed(&kk, &ll)
            },
        );

        run(
            "lie-hook-vs-explicit",
            "[i_K,d] w equals the shuffle expansion of L_K w",
            &mut rng,
            &mut |rng, inst| {
                let k = fn_pool[inst % fn_pool.len()];
                let q = inst % (m.saturating_sub(k) + 1);
                let kk = self.random_cochain(rng, k, Codomain::Der);
                let w = self.random_cochain(rng, q, Codomain::Algebra);
                self.lie_derivative(&kk, &w) == self.lie_explicit(&kk, &w)
            },
        );

        run(
            "lie-wedge-plus-insertion",
            "L_K w = L_w(K) w + (-1)^k i(dd K) w",
            &mut rng,
            &mut |rng, inst| {
                let k = fn_pool[inst % fn_pool.len()];
                let q = inst % (m.saturating_sub(k) + 1);
                let kk = self.random_cochain(rng, k, Codomain::Der);
                let w = self.random_cochain(rng, q, Codomain::Algebra);
                let rhs = self.add(
                    &self.lie_wedge(&kk, &w),
                    &self.scale(
                        &neg_one_pow(k as i64),
                        &self.insert_k(&self.adjoint_coboundary(&kk), &w),
                    ),
                );
                self.lie_derivative(&kk, &w) == rhs
            },
        );

        run(
            "wedge-lie-commutator",
            "L_w(K) L_w(L) w - (-1)^{kl} L_w(L) L_w(K) w = L_w([K,L]_w) w",
            &mut rng,
            &mut |rng, inst| {
                let k = fn_pool[inst % fn_pool.len()];
                let l = fn_pool[(inst / fn_pool.len()) % fn_pool.len()];
                let q = inst % (m.saturating_sub(k + l) + 1);
                let kk = self.random_cochain(rng, k, Codomain::Der);
                let ll = self.random_cochain(rng, l, Codomain::Der);
                let w = self.random_cochain(rng, q, Codomain::Algebra);
                let s = neg_one_pow((k * l) as i64);
                let lhs = self.sub(
                    &self.lie_wedge(&kk, &self.lie_wedge(&ll, &w)),
                    &self.scale(&s, &self.lie_wedge(&ll, &self.lie_wedge(&kk, &w))),
                );
                let rhs = self.lie_wedge(&self.wedge_bracket(&kk, &ll), &w);
                lhs == rhs
            },
        );

        run(
            "insertion-through-wedge-lie",
            "i_K L_w(L) w = L_w(i_K L) w + (-1)^{(k-1)l} L_w(L) i_K w",
            &mut rng,
            &mut |rng, inst| {
                let k = nr_pool[inst % nr_pool.len()];
                let l = fn_pool[(inst / nr_pool.len()) % fn_pool.len()];
                let q = (1 + inst) % (m + 1);
                let kk = self.random_cochain(rng, k, Codomain::Der);
                let ll = self.random_cochain(rng, l, Codomain::Der);
                let w = self.random_cochain(rng, q, Codomain::Algebra);
                let lhs = self.insert_k(&kk, &self.lie_wedge(&ll, &w));
                let rhs = self.add(
                    &self.lie_wedge(&self.insert_k(&kk, &ll), &w),
                    &self.scale(
                        &neg_one_pow((k as i64 - 1) * l as i64),
                        &self.lie_wedge(&ll, &self.insert_k(&kk, &w)),
                    ),
                );
                lhs == rhs
            },
        );

        run(
            "coboundary-of-insertion",
            "dd(i_K L) = i(dd K)L + (-1)^{k-1} i_K dd L + (-1)^k [K,L]_w",
            &mut rng,
            &mut |rng, inst| {
                let k = nr_pool[inst % nr_pool.len()];
                let l = nr_pool[(inst / nr_pool.len()) % nr_pool.len()];
                let kk = self.random_cochain(rng, k, Codomain::Der);
                let ll = self.random_cochain(rng, l, Codomain::Der);
                let lhs = self.adjoint_coboundary(&self.insert_k(&kk, &ll));
                let mut rhs = self.insert_k(&self.adjoint_coboundary(&kk), &ll);
                rhs = self.add(
                    &rhs,
                    &self.scale(
                        &neg_one_pow(k as i64 - 1),
                        &self.insert_k(&kk, &self.adjoint_coboundary(&ll)),
                    ),
                );
                rhs = self.add(
                    &rhs,
                    &self.scale(&neg_one_pow(k as i64), &self.wedge_bracket(&kk, &ll)),
                );
                lhs == rhs
            },
        );

        run(
            "coboundary-of-wedge-bracket",
            "dd [K,L]_w = [dd K,L]_w + (-1)^k [K,dd L]_w",
            &mut rng,
            &mut |rng, inst| {
                let k = fn_pool[inst % fn_pool.len()];
                let l = fn_pool[(inst / fn_pool.len()) % fn_pool.len()];
                let kk = self.random_cochain(rng, k, Codomain::Der);
                let ll = self.random_cochain(rng, l, Codomain::Der);
                let lhs = self.adjoint_coboundary(&self.wedge_bracket(&kk, &ll));
                let rhs = self.add(
                    &self.wedge_bracket(&self.adjoint_coboundary(&kk), &ll),
                    &self.scale(
                        &neg_one_pow(k as i64),
                        &self.wedge_bracket(&kk, &self.adjoint_coboundary(&ll)),
                    ),
                );
                lhs == rhs
            },
        );

        run(
            "lie-insertion-commutator",
            "L_K i_L w - (-1)^{k(l-1)} i_L L_K w = i([K,L]) w - (-1)^{k(l-1)} L(i_L K) w",
            &mut rng,
            &mut |rng, inst| {
                let k = fn_pool[inst % fn_pool.len()];
                let l = nr_pool[(inst / fn_pool.len()) % nr_pool.len()];
                let q = (1 + inst) % (m + 1);
                let kk = self.random_cochain(rng, k, Codomain::Der);
                let ll = self.random_cochain(rng, l, Codomain::Der);
                let w = self.random_cochain(rng, q, Codomain::Algebra);
                let s = neg_one_pow(k as i64 * (l as i64 - 1));
                let lhs = self.sub(
                    &self.lie_derivative(&kk, &self.insert_k(&ll, &w)),
                    &self.scale(&s, &self.insert_k(&ll, &self.lie_derivative(&kk, &w))),
                );
                let rhs = self.sub(
                    &self.insert_k(&self.fn_bracket(&kk, &ll), &w),
                    &self.scale(&s, &self.lie_derivative(&self.insert_k(&ll, &kk), &w)),
                );
                lhs == rhs
            },
        );

        run(
            "semidirect-commutator",
            "[L_K1 + i_L1, L_K2 + i_L2] = L(M) + i(N) with M, N the mixed brackets",
            &mut rng,
            &mut |rng, inst| {
                if m == 0 {
                    return true;
                }
                let kpool: Vec<usize> = (0..=(m - 1).min(1)).collect();
                let k1 = kpool[inst % kpool.len()];
                let k2 = kpool[(inst / kpool.len()) % kpool.len()];
                let q = inst % (m + 1);
                let kk1 = self.random_cochain(rng, k1, Codomain::Der);
                let ll1 = self.random_cochain(rng, k1 + 1, Codomain::Der);
                let kk2 = self.random_cochain(rng, k2, Codomain::Der);
                let ll2 = self.random_cochain(rng, k2 + 1, Codomain::Der);
                let w = self.random_cochain(rng, q, Codomain::Algebra);
                let p1 = |w: &Cochain| {
                    self.add(&self.lie_derivative(&kk1, w), &self.insert_k(&ll1, w))
                };
                let p2 = |w: &Cochain| {
                    self.add(&self.lie_derivative(&kk2, w), &self.insert_k(&ll2, w))
                };
                let s = neg_one_pow((k1 * k2) as i64);
                let lhs = self.sub(&p1(&p2(&w)), &self.scale(&s, &p2(&p1(&w))));
                let mm = self.add(
                    &self.fn_bracket(&kk1, &kk2),
                    &self.sub(
                        &self.insert_k(&ll1, &kk2),
                        &self.scale(&s, &self.insert_k(&ll2, &kk1)),
                    ),
                );
                let nn = self.add(
                    &self.nr_bracket(&ll1, &ll2),
                    &self.sub(
                        &self.fn_bracket(&kk1, &ll2),
                        &self.scale(&s, &self.fn_bracket(&kk2, &ll1)),
                    ),
                );
                let rhs = self.add(&self.lie_derivative(&mm, &w), &self.insert_k(&nn, &w));
                lhs == rhs
            },
        );

        run(
            "insertion-into-fn",
            "i_L[K1,K2] = [i_L K1,K2] + (-1)^{k1 l}[K1,i_L K2] - ((-1)^{k1 l} i([K1,L])K2 - (-1)^{(k1+l)k2} i([K2,L])K1)",
            &mut rng,
            &mut |rng, inst| {
                if m == 0 {
                    return true;
                }
                let lpool: Vec<usize> = (0..=(m - 1).min(1)).collect();
                let l = lpool[inst % lpool.len()];
                let k1 = fn_pool[(inst / lpool.len()) % fn_pool.len()];
                let k2 = fn_pool[(inst / (lpool.len() * fn_pool.len())) % fn_pool.len()];
                let ll = self.random_cochain(rng, l + 1, Codomain::Der);
                let kk1 = self.random_cochain(rng, k1, Codomain::Der);
                let kk2 = self.random_cochain(rng, k2, Codomain::Der);
                let lhs = self.insert_k(&ll, &self.fn_bracket(&kk1, &kk2));
                let s1 = neg_one_pow((k1 * l) as i64);
                let s2 = neg_one_pow(((k1 + l) * k2) as i64);
                let mut rhs = self.fn_bracket(&self.insert_k(&ll, &kk1), &kk2);
                rhs = self.add(
                    &rhs,
                    &self.scale(&s1, &self.fn_bracket(&kk1, &self.insert_k(&ll, &kk2))),
                );
                rhs = self.sub(
                    &rhs,
                    &self.scale(&s1, &self.insert_k(&self.fn_bracket(&kk1, &ll), &kk2)),
                );
                rhs = self.add(
                    &rhs,
                    &self.scale(&s2, &self.insert_k(&self.fn_bracket(&kk2, &ll), &kk1)),
                );
                lhs == rhs
            },
        );

        run(
            "fn-of-nr",
            "[K,[L1,L2]^] = [[K,L1],L2]^ + (-1)^{k k1}[L1,[K,L2]]^ - ((-1)^{k k1}[i(L1)K,L2] - (-1)^{(k+k1)k2}[i(L2)K,L1])",
            &mut rng,
            &mut |rng, inst| {
                if m == 0 {
                    return true;
                }
                let kpool: Vec<usize> = (0..=(m - 1).min(1)).collect();
                let k = fn_pool[inst % fn_pool.len()];
                let k1 = kpool[(inst / fn_pool.len()) % kpool.len()];
                let k2 = kpool[(inst / (fn_pool.len() * kpool.len())) % kpool.len()];
                let kk = self.random_cochain(rng, k, Codomain::Der);
                let ll1 = self.random_cochain(rng, k1 + 1, Codomain::Der);
                let ll2 = self.random_cochain(rng, k2 + 1, Codomain::Der);
                let lhs = self.fn_bracket(&kk, &self.nr_bracket(&ll1, &ll2));
                let s1 = neg_one_pow((k * k1) as i64);
                let s2 = neg_one_pow(((k + k1) * k2) as i64);
                let mut rhs = self.nr_bracket(&self.fn_bracket(&kk, &ll1), &ll2);
                rhs = self.add(
                    &rhs,
                    &self.scale(&s1, &self.nr_bracket(&ll1, &self.fn_bracket(&kk, &ll2))),
                );
                rhs = self.sub(
                    &rhs,
                    &self.scale(&s1, &self.fn_bracket(&self.insert_k(&ll1, &kk), &ll2)),
                );
                rhs = self.add(
                    &rhs,
                    &self.scale(&s2, &self.fn_bracket(&self.insert_k(&ll2, &kk), &ll1)),
                );
                lhs == rhs
            },
        );

        run(
            "coboundary-bracket-hom",
            "dd [K,L] = [dd K, dd L]^",
            &mut rng,
            &mut |rng, inst| {
                let k = fn_pool[inst % fn_pool.len()];
                let l = fn_pool[(inst / fn_pool.len()) % fn_pool.len()];
                let kk = self.random_cochain(rng, k, Codomain::Der);
                let ll = self.random_cochain(rng, l, Codomain::Der);
                let lhs = self.adjoint_coboundary(&self.fn_bracket(&kk, &ll));
                let rhs =
                    self.nr_bracket(&self.adjoint_coboundary(&kk), &self.adjoint_coboundary(&ll));
                lhs == rhs
            },
        );

        run(
            "degree-one-bracket-square",
            "[K,K](X,Y) = 2([KX,KY] - K[KX,Y] - K[X,KY] + KK[X,Y]) for 1-cochains",
            &mut rng,
            &mut |rng, _inst| {
                if m < 2 {
                    return true;
                }
                let kk = self.random_cochain(rng, 1, Codomain::Der);
                let sq = self.fn_bracket(&kk, &kk);
                let kmat = {
                    let mut mm = Matrix::zero(m, m);
                    for t in 0..m {
                        for r in 0..m {
                            mm.set(r, t, kk.values[t][r].clone());
                        }
                    }
                    mm
                };
                for x in 0..m {
                    for y in x + 1..m {
                        let ex = {
                            let mut e = rat::zeros(m);
                            e[x] = Rat::one();
                            e
                        };
                        let ey = {
                            let mut e = rat::zeros(m);
                            e[y] = Rat::one();
                            e
                        };
                        let kx = kmat.apply(&ex);
                        let ky = kmat.apply(&ey);
                        let mut direct = self.ders.bracket_vec(&kx, &ky);
                        let t2 = kmat.apply(&self.ders.bracket_vec(&kx, &ey));
                        let t3 = kmat.apply(&self.ders.bracket_vec(&ex, &ky));
                        let t4 = kmat.apply(&kmat.apply(&self.ders.bracket_vec(&ex, &ey)));
                        for i in 0..m {
                            direct[i] = (&direct[i] - &t2[i] - &t3[i] + &t4[i]) * rat::rat(2);
                        }
                        if self.eval_basis(&sq, &[x, y]) != direct {
                            return false;
                        }
                    }
                }
                true
            },
        );

        run(
            "center-multilinear-closed-under-brackets",
            "[ , ]^ and [ , ] of center-multilinear cochains are center-multilinear",
            &mut rng,
            &mut |rng, inst| {
                let k = nr_pool[inst % nr_pool.len()];
                let l = nr_pool[(inst / nr_pool.len()) % nr_pool.len()];
                let zk = self.z_multilinear_subspace(k, Codomain::Der);
                let zl = self.z_multilinear_subspace(l, Codomain::Der);
                let mut pick = |z: &Subspace, deg: usize| {
                    let mut v = rat::zeros(z.ambient());
                    for b in z.basis() {
                        rat::add_scaled_vec(&mut v, &rat::rat(rng.gen_range(-3..=3)), b);
                    }
                    self.from_coords(deg, Codomain::Der, &v)
                };
                let kk = pick(&zk, k);
                let ll = pick(&zl, l);
                let znr = self.z_multilinear_subspace(k + l - 1, Codomain::Der);
                let zfn = self.z_multilinear_subspace(k + l, Codomain::Der);
                znr.contains_vec(&self.to_coords(&self.nr_bracket(&kk, &ll)))
                    && zfn.contains_vec(&self.to_coords(&self.fn_bracket(&kk, &ll)))
            },
        );

        SuiteReport::new("chevalley", &self.algebra.name, seed, checks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn m2() -> Complex {
        Complex::new(catalog::mat(2))
    }

    fn d2() -> Complex {
        Complex::new(catalog::dual())
    }

    #[test]
    fn space_dimensions_match_binomials() {
        let c = m2();
        assert_eq!(c.m(), 3);
        let dims: Vec<usize> = (0..=3).map(|k| c.space_dim(k, Codomain::Algebra)).collect();
        assert_eq!(dims, vec![4, 12, 12, 4]);
        assert_eq!(c.space_dim(2, Codomain::Der), 9);
        assert_eq!(c.ntuples(4), 0);
    }

    #[test]
    fn evaluation_is_alternating() {
        let c = m2();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let w = c.random_cochain(&mut rng, 2, Codomain::Algebra);
        let v01 = c.eval_basis(&w, &[0, 1]);
        let v10 = c.eval_basis(&w, &[1, 0]);
        assert_eq!(v01, rat::scale_vec(&-Rat::one(), &v10));
        assert!(rat::is_zero_vec(&c.eval_basis(&w, &[1, 1])));
        let args = vec![vec![rat::rat(2), rat::rat(1), rat::rat(0)], vec![
            rat::rat(1),
            rat::rat(1),
            rat::rat(1),
        ]];
        let full = c.evaluate(&w, &args).unwrap();
        let mut expected = rat::zeros(4);
        for i in 0..3 {
            for j in 0..3 {
                let coeff = &args[0][i] * &args[1][j];
                rat::add_scaled_vec(&mut expected, &coeff, &c.eval_basis(&w, &[i, j]));
            }
        }
        assert_eq!(full, expected);
        assert!(c.evaluate(&w, &[vec![Rat::one(); 3]]).is_err());
    }

    #[test]
    fn differential_on_degree_zero_is_derivation_action() {
        let c = m2();
        // phi: constant with value E12, (d phi)(X) = X(E12)
        let mut phi = c.zero_cochain(0, Codomain::Algebra);
        phi.values[0][1] = Rat::one();
        let d = c.differential(&phi);
        for t in 0..3 {
            let expected = c.ders.basis[t].apply(&phi.values[0]);
            assert_eq!(c.eval_basis(&d, &[t]), expected);
        }
    }

    #[test]
    fn coboundary_of_identity_is_bracket_cochain() {
        let c = m2();
        let id = c.identity_cochain();
        let dd = c.adjoint_coboundary(&id);
        for x in 0..3 {
            for y in x + 1..3 {
                let mut e = rat::zeros(3);
                e[y] = Rat::one();
                let br = c.ders.bracket_basis_vec(x, &e);
                assert_eq!(c.eval_basis(&dd, &[x, y]), br);
            }
        }
        assert!(!c.is_zero_cochain(&dd));
    }

    #[test]
    fn identity_cochain_brackets() {
        let c = m2();
        let id = c.identity_cochain();
        // the identity is central for the differential-compatible bracket
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for l in 0..=2usize {
            let ll = c.random_cochain(&mut rng, l, Codomain::Der);
            assert!(c.is_zero_cochain(&c.fn_bracket(&id, &ll)), "[Id,L] = 0 failed at l={l}");
            // algebraic bracket: [Id,L]^ = (l-1) L
            let nr = c.nr_bracket(&id, &ll);
            let expected = c.scale(&rat::rat(l as i64 - 1), &ll);
            assert_eq!(nr, expected, "[Id,L]^ = (l-1)L failed at l={l}");
        }
        assert!(c.is_zero_cochain(&c.fn_bracket(&id, &id)));
    }

    #[test]
    fn insertion_of_identity_counts_degree() {
        let c = m2();
        let id = c.identity_cochain();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for l in 1..=3usize {
            let w = c.random_cochain(&mut rng, l, Codomain::Algebra);
            assert_eq!(c.insert_k(&id, &w), c.scale(&rat::rat(l as i64), &w));
        }
    }

    #[test]
    fn lie_derivative_along_identity_is_differential() {
        let c = m2();
        let id = c.identity_cochain();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for l in 0..=2usize {
            let w = c.random_cochain(&mut rng, l, Codomain::Algebra);
            assert_eq!(c.lie_derivative(&id, &w), c.differential(&w));
        }
    }

    #[test]
    fn wedge_is_associative_and_unital() {
        let c = m2();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = c.random_cochain(&mut rng, 1, Codomain::Algebra);
        let b = c.random_cochain(&mut rng, 1, Codomain::Algebra);
        let w = c.random_cochain(&mut rng, 0, Codomain::Algebra);
        let lhs = c.wedge(&c.wedge(&a, &b), &w);
        let rhs = c.wedge(&a, &c.wedge(&b, &w));
        assert_eq!(lhs, rhs);
        let mut one = c.zero_cochain(0, Codomain::Algebra);
        one.values[0] = c.algebra.unit.clone();
        assert_eq!(c.wedge(&one, &a), a);
        assert_eq!(c.wedge(&a, &one), a);
    }

    #[test]
    fn differential_is_graded_derivation_of_wedge() {
        let c = m2();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for (k, l) in [(0usize, 1usize), (1, 1), (1, 2)] {
            let a = c.random_cochain(&mut rng, k, Codomain::Algebra);
            let b = c.random_cochain(&mut rng, l, Codomain::Algebra);
            let lhs = c.differential(&c.wedge(&a, &b));
            let rhs = c.add(
                &c.wedge(&c.differential(&a), &b),
                &c.scale(&neg_one_pow(k as i64), &c.wedge(&a, &c.differential(&b))),
            );
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn fn_bracket_of_degree_zero_is_lie_bracket() {
        let c = m2();
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let x = c.random_cochain(&mut rng, 0, Codomain::Der);
        let y = c.random_cochain(&mut rng, 0, Codomain::Der);
        let br = c.fn_bracket(&x, &y);
        assert_eq!(br.values[0], c.ders.bracket_vec(&x.values[0], &y.values[0]));
    }

    #[test]
    fn matrix_cohomology_of_full_complex() {
        let c = m2();
        let ds = c.differential_matrices();
        let dims = cohomology_dims(&ds).unwrap();
        let betti: Vec<usize> = dims.iter().map(|d| d.3).collect();
        assert_eq!(betti, vec![1, 0, 0, 1]);
        let ranks: Vec<usize> = ds.iter().map(|d| d.rank()).collect();
        assert_eq!(ranks, vec![3, 9, 3, 0]);
    }

    #[test]
    fn dual_numbers_cohomology() {
        let c = d2();
        let ds = c.differential_matrices();
        let dims = cohomology_dims(&ds).unwrap();
        assert_eq!(dims.iter().map(|d| d.0).collect::<Vec<_>>(), vec![2, 2]);
        assert_eq!(dims.iter().map(|d| d.3).collect::<Vec<_>>(), vec![1, 1]);
    }

    #[test]
    fn center_multilinear_subspace_of_dual_numbers() {
        // over the dual numbers the center is everything, so multilinearity
        // over it cuts the one-form space down
        let c = d2();
        let z1 = c.z_multilinear_subspace(1, Codomain::Algebra);
        assert_eq!(z1.ambient(), 2);
        assert_eq!(z1.dim(), 1);
        let z1d = c.z_multilinear_subspace(1, Codomain::Der);
        assert_eq!(z1d.dim(), 1);
    }

    #[test]
    fn center_multilinear_subspace_of_matrices_is_everything() {
        let c = m2();
        for k in 0..=3 {
            let z = c.z_multilinear_subspace(k, Codomain::Algebra);
            assert_eq!(z.dim(), c.space_dim(k, Codomain::Algebra));
        }
    }

    #[test]
    fn operation_subspaces_are_nested() {
        let c = m2();
        let gens: Vec<Vec<Rat>> = (0..3)
            .map(|t| {
                let mut e = rat::zeros(3);
                e[t] = Rat::one();
                e
            })
            .collect();
        let (hor, inv, bas) = c.operation_subspaces(2, &gens);
        assert!(hor.dim() >= bas.dim());
        assert!(inv.dim() >= bas.dim());
        assert_eq!(bas, hor.intersect(&inv));
    }

    #[test]
    fn identity_suite_passes_on_catalog() {
        for alg in [catalog::mat(2), catalog::dual(), catalog::functions(2), catalog::triangular(2)]
        {
            let c = Complex::new(alg);
            let rep = c.identity_suite(7, 6);
            for chk in &rep.checks {
                assert!(chk.pass, "{} failed on {}: {:?}", chk.id, rep.algebra, chk.detail);
            }
        }
    }

    #[test]
    fn identity_suite_is_deterministic() {
        let c = d2();
        let a = c.identity_suite(3, 5);
        let b = c.identity_suite(3, 5);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
