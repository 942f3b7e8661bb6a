//! Built-in algebras: full matrix algebras, dual numbers, functions on a
//! finite set, upper triangular matrices, and matrix amplifications of any of
//! these. Also the two standard homomorphisms used in tests.

use crate::algebra::Algebra;
use crate::matrix::Matrix;
use crate::rat::{self, Rat};
use num_traits::{One, Zero};

/// Mat_N(Q), basis E_pq in row-major order (E11, E12, ..., ENN).
pub fn mat(n: usize) -> Algebra {
    assert!(n >= 1);
    let dim = n * n;
    let idx = |p: usize, q: usize| p * n + q;
    let mut sc = vec![vec![rat::zeros(dim); dim]; dim];
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    if q == r {
                        sc[idx(p, q)][idx(r, s)][idx(p, s)] = Rat::one();
                    }
                }
            }
        }
    }
    let mut unit = rat::zeros(dim);
    for p in 0..n {
        unit[idx(p, p)] = Rat::one();
    }
    let names = (0..n)
        .flat_map(|p| (0..n).map(move |q| format!("E{}{}", p + 1, q + 1)))
        .collect();
    Algebra::new(format!("mat({n})"), names, sc, unit)
}

/// Dual numbers Q[eps]/(eps^2), basis {1, eps}.
pub fn dual() -> Algebra {
    let mut sc = vec![vec![rat::zeros(2); 2]; 2];
    sc[0][0][0] = Rat::one();
    sc[0][1][1] = Rat::one();
    sc[1][0][1] = Rat::one();
    // eps * eps = 0
    let unit = vec![Rat::one(), Rat::zero()];
    Algebra::new("dual", vec!["1".into(), "eps".into()], sc, unit)
}

/// Functions on an s-point set: Q^s with pointwise product, basis of
/// indicator functions.
pub fn functions(s: usize) -> Algebra {
    assert!(s >= 1);
    let mut sc = vec![vec![rat::zeros(s); s]; s];
    for i in 0..s {
        sc[i][i][i] = Rat::one();
    }
    let unit = vec![Rat::one(); s];
    let names = (0..s).map(|i| format!("d{}", i + 1)).collect();
    Algebra::new(format!("functions({s})"), names, sc, unit)
}

/// Upper triangular N x N matrices, basis E_pq for p <= q in row-major order.
pub fn triangular(n: usize) -> Algebra {
    assert!(n >= 1);
    let mut pairs = Vec::new();
    for p in 0..n {
        for q in p..n {
            pairs.push((p, q));
        }
    }
    let dim = pairs.len();
    let idx = |p: usize, q: usize| pairs.iter().position(|&x| x == (p, q)).unwrap();
    let mut sc = vec![vec![rat::zeros(dim); dim]; dim];
    for (a, &(p, q)) in pairs.iter().enumerate() {
        for (b, &(r, s)) in pairs.iter().enumerate() {
            if q == r {
                sc[a][b][idx(p, s)] = Rat::one();
            }
        }
    }
    let mut unit = rat::zeros(dim);
    for p in 0..n {
        unit[idx(p, p)] = Rat::one();
    }
    let names = pairs.iter().map(|&(p, q)| format!("E{}{}", p + 1, q + 1)).collect();
    Algebra::new(format!("triangular({n})"), names, sc, unit)
}

/// Diagonal embedding functions(2) -> mat(2): d1 -> E11, d2 -> E22.
pub fn diagonal_embedding() -> Matrix {
    let mut f = Matrix::zero(4, 2);
    f.set(0, 0, Rat::one());
    f.set(3, 1, Rat::one());
    f
}

/// Augmentation dual -> functions(1): 1 -> 1, eps -> 0.
pub fn augmentation() -> Matrix {
    let mut f = Matrix::zero(1, 2);
    f.set(0, 0, Rat::one());
    f
}

/// Parses an algebra description: mat(N), dual, functions(S), triangular(N),
/// or amplify(<base>, N).
pub fn parse_spec(spec: &str) -> Result<Algebra, String> {
    let s = spec.trim();
    if s == "dual" {
        return Ok(dual());
    }
    let call = |name: &str| -> Option<&str> {
        s.strip_prefix(name)
            .and_then(|r| r.strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
    };
    if let Some(arg) = call("mat") {
        let n: usize = arg.trim().parse().map_err(|_| format!("bad size in `{s}`"))?;
        if n == 0 {
            return Err("matrix size must be positive".into());
        }
        return Ok(mat(n));
    }
    if let Some(arg) = call("functions") {
        let n: usize = arg.trim().parse().map_err(|_| format!("bad size in `{s}`"))?;
        if n == 0 {
            return Err("set size must be positive".into());
        }
        return Ok(functions(n));
    }
    if let Some(arg) = call("triangular") {
        let n: usize = arg.trim().parse().map_err(|_| format!("bad size in `{s}`"))?;
        if n == 0 {
            return Err("matrix size must be positive".into());
        }
        return Ok(triangular(n));
    }
    if let Some(arg) = call("amplify") {
        let (base, nn) = arg
            .rsplit_once(',')
            .ok_or_else(|| format!("amplify needs two arguments in `{s}`"))?;
        let n: usize = nn.trim().parse().map_err(|_| format!("bad size in `{s}`"))?;
        if n == 0 {
            return Err("amplification size must be positive".into());
        }
        let b = parse_spec(base)?;
        return Ok(b.amplify(n));
    }
    Err(format!("unknown algebra `{s}` (expected mat(N), dual, functions(S), triangular(N), amplify(base,N))"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        assert_eq!(parse_spec("mat(2)").unwrap().dim, 4);
        assert_eq!(parse_spec("dual").unwrap().dim, 2);
        assert_eq!(parse_spec("functions(3)").unwrap().dim, 3);
        assert_eq!(parse_spec("triangular(3)").unwrap().dim, 6);
        assert_eq!(parse_spec("amplify(dual,2)").unwrap().dim, 8);
        assert_eq!(parse_spec("amplify(amplify(dual,2),2)").unwrap().dim, 32);
        assert!(parse_spec("mat(0)").is_err());
        assert!(parse_spec("banana").is_err());
    }

    #[test]
    fn triangular_products() {
        let t = triangular(2);
        // E11 * E12 = E12, E12 * E22 = E12, E12 * E12 = 0
        let e11 = t.basis_el(0);
        let e12 = t.basis_el(1);
        let e22 = t.basis_el(2);
        assert_eq!(t.multiply(&e11, &e12), e12);
        assert_eq!(t.multiply(&e12, &e22), e12);
        assert!(crate::rat::is_zero_vec(&t.multiply(&e12, &e12)));
    }
}
