//! Exact rational scalars and small helpers shared by the whole crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::str::FromStr;

/// Scalar type of the library: arbitrary-precision rational, always reduced,
/// denominator always positive.
pub type Rat = BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Fraction n/d as a rational. Panics on d = 0.
pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// (-1)^e for a possibly negative exponent.
pub fn neg_one_pow(e: i64) -> Rat {
    if e.rem_euclid(2) == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

/// Parses "p/q" or "p". The reduced, sign-normalized value is returned.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    Rat::from_str(s.trim()).map_err(|e| format!("bad rational `{s}`: {e}"))
}

/// Renders as "p/q", or plain "p" for integers.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

/// Zero vector of the given length.
pub fn zeros(n: usize) -> Vec<Rat> {
    vec![Rat::default(); n]
}

/// Componentwise sum, in place.
pub fn add_assign_vec(acc: &mut [Rat], v: &[Rat]) {
    assert_eq!(acc.len(), v.len());
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

/// acc += c * v, componentwise.
pub fn add_scaled_vec(acc: &mut [Rat], c: &Rat, v: &[Rat]) {
    assert_eq!(acc.len(), v.len());
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        *a += c * b;
    }
}

/// Componentwise scaling.
pub fn scale_vec(c: &Rat, v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| c * x).collect()
}

/// True when every entry is zero.
pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Parity (+1/-1) of a sequence of distinct values, counted by inversions.
pub fn perm_sign(seq: &[usize]) -> i64 {
    let mut inv = 0usize;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sorts a tuple of distinct indices, returning (sorted, parity). None when a
/// value repeats.
pub fn sort_with_sign(tuple: &[usize]) -> Option<(Vec<usize>, i64)> {
    let mut sorted: Vec<usize> = tuple.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sorted, perm_sign(tuple)))
}

/// All strictly increasing k-element tuples drawn from 0..m, in
/// lexicographic order.
pub fn increasing_tuples(m: usize, k: usize) -> Vec<Vec<usize>> {
    if k > m {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next increasing tuple
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < m - (k - i) {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Splits positions 0..n into consecutive-ordered blocks of the given sizes
/// (each block internally increasing), with the parity of the interleave.
/// Used to evaluate the normalized shuffle sums of the bracket formulas.
pub fn block_splits(n: usize, sizes: &[usize]) -> Vec<(Vec<Vec<usize>>, i64)> {
    assert_eq!(sizes.iter().sum::<usize>(), n, "block sizes must cover the tuple");
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let all: Vec<usize> = (0..n).collect();
    split_rec(&all, sizes, &mut blocks, &mut out);
    out
}

fn split_rec(
    remaining: &[usize],
    sizes: &[usize],
    blocks: &mut Vec<Vec<usize>>,
    out: &mut Vec<(Vec<Vec<usize>>, i64)>,
) {
    if sizes.is_empty() {
        let flat: Vec<usize> = blocks.iter().flatten().copied().collect();
        out.push((blocks.clone(), perm_sign(&flat)));
        return;
    }
    let k = sizes[0];
    for pick in increasing_tuples(remaining.len(), k) {
        let chosen: Vec<usize> = pick.iter().map(|&i| remaining[i]).collect();
        let rest: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|x| !chosen.contains(x))
            .collect();
        blocks.push(chosen);
        split_rec(&rest, &sizes[1..], blocks, out);
        blocks.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_round_trip() {
        let x = parse_rat("-6/4").unwrap();
        assert_eq!(fmt_rat(&x), "-3/2");
        assert_eq!(parse_rat("7").unwrap(), rat(7));
        assert!(parse_rat("1/0").is_err());
    }

    #[test]
    fn tuple_enumeration() {
        assert_eq!(increasing_tuples(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(increasing_tuples(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(increasing_tuples(2, 3), Vec::<Vec<usize>>::new());
        assert_eq!(increasing_tuples(5, 3).len(), 10);
    }

    #[test]
    fn permutation_parity() {
        assert_eq!(perm_sign(&[0, 1, 2]), 1);
        assert_eq!(perm_sign(&[1, 0, 2]), -1);
        assert_eq!(perm_sign(&[2, 0, 1]), 1);
        let (sorted, sign) = sort_with_sign(&[3, 1]).unwrap();
        assert_eq!((sorted, sign), (vec![1, 3], -1));
        assert!(sort_with_sign(&[2, 2]).is_none());
    }

    #[test]
    fn block_split_counts() {
        // (2,1)-splits of three positions: 3 choices, signs from the interleave
        let splits = block_splits(3, &[2, 1]);
        assert_eq!(splits.len(), 3);
        let total: i64 = splits.iter().map(|(_, s)| s).sum();
        // {01|2} +, {02|1} -, {12|0} +
        assert_eq!(total, 1);
        assert_eq!(block_splits(4, &[2, 2]).len(), 6);
        assert_eq!(block_splits(5, &[1, 2, 2]).len(), 30);
    }
}
