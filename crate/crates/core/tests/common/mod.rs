//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the Smith form code.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use logsyn_core::{PMatrix, ResidueRing};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub fn ring(p: u64, n: u32) -> ResidueRing {
    ResidueRing::new(p, n).unwrap()
}

pub fn entries(m: &PMatrix) -> Vec<Vec<u64>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).residue()).collect())
        .collect()
}

/// All vectors of `(Z/p^N)^len`, in little-endian counting order.
pub fn all_vectors(modulus: u64, len: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = modulus.pow(len as u32);
    (0..total).map(move |mut k| {
        (0..len)
            .map(|_| {
                let digit = k % modulus;
                k /= modulus;
                digit
            })
            .collect()
    })
}

fn apply_columns(rows: &[Vec<u64>], cols: std::ops::Range<usize>, x: &[u64], modulus: u64) -> Vec<u64> {
    rows.iter()
        .map(|row| {
            cols.clone()
                .zip(x)
                .fold(0u128, |acc, (c, &xi)| (acc + row[c] as u128 * xi as u128) % modulus as u128)
                as u64
        })
        .collect()
}

/// `ker(m)` by meet in the middle: `m = [A | B]`, `A a = -B b`.
pub fn kernel(m: &PMatrix) -> Vec<Vec<u64>> {
    let modulus = m.ring().modulus();
    let rows = entries(m);
    let n = m.cols();
    let half = n / 2;
    let mut left: HashMap<Vec<u64>, Vec<Vec<u64>>> = HashMap::new();
    for a in all_vectors(modulus, half) {
        left.entry(apply_columns(&rows, 0..half, &a, modulus))
            .or_default()
            .push(a);
    }
    let mut out = Vec::new();
    for b in all_vectors(modulus, n - half) {
        let image = apply_columns(&rows, half..n, &b, modulus);
        let target: Vec<u64> = image.iter().map(|&v| (modulus - v) % modulus).collect();
        if let Some(matches) = left.get(&target) {
            for a in matches {
                let mut x = a.clone();
                x.extend_from_slice(&b);
                out.push(x);
            }
        }
    }
    out
}

pub fn image(m: &PMatrix) -> HashSet<Vec<u64>> {
    let modulus = m.ring().modulus();
    let rows = entries(m);
    all_vectors(modulus, m.cols())
        .map(|x| apply_columns(&rows, 0..m.cols(), &x, modulus))
        .collect()
}

/// Exponents of `ker(d_out) / im(d_in)` over `Z/p^N`, read off from the
/// orders of its `p^k`-torsion subgroups.
pub fn homology_exponents(d_in: &PMatrix, d_out: &PMatrix) -> Vec<u32> {
    let ring = d_in.ring();
    let (p, n, modulus) = (ring.prime(), ring.precision(), ring.modulus());
    let ker = kernel(d_out);
    let im = image(d_in);
    assert!(im.iter().all(|y| d_out.apply(y).iter().all(|&v| v == 0)));
    let log_p = |mut x: usize| {
        let mut k = 0;
        while x > 1 {
            assert_eq!(x % p as usize, 0);
            x /= p as usize;
            k += 1;
        }
        k
    };
    let quotient_order = ker.len() / im.len();
    assert_eq!(ker.len() % im.len(), 0);
    // c[k] = log_p |H[p^k]|
    let mut c = vec![0u32];
    for k in 1..=n {
        let scale = p.pow(k) % modulus;
        let killed = ker
            .iter()
            .filter(|x| {
                let y: Vec<u64> = x.iter().map(|&v| ((v as u128 * scale as u128) % modulus as u128) as u64).collect();
                im.contains(&y)
            })
            .count();
        c.push(log_p(killed / im.len()));
    }
    assert_eq!(c[n as usize], log_p(quotient_order));
    let mut exps = Vec::new();
    for k in 1..=n as usize {
        let at_least_k = c[k] - c[k - 1];
        let at_least_next = if k < n as usize { c[k + 1] - c[k] } else { 0 };
        exps.extend(std::iter::repeat(k as u32).take((at_least_k - at_least_next) as usize));
    }
    exps.sort_unstable();
    exps
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    match m.len() {
        0 => BigInt::from(1),
        1 => m[0][0].clone(),
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<BigInt>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = &m[0][c] * det(&minor);
                if c % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .fold(BigInt::zero(), |a, b| a + b),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn valuation(p: u64, x: &BigInt) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut x = x.abs();
    while x.is_multiple_of(&pb) {
        x /= &pb;
        v += 1;
    }
    Some(v)
}

/// Smith exponents from determinantal divisors of the integer lift:
/// `d_k = gcd` of the `k x k` minors, exponent `k` is
/// `v(d_k) - v(d_{k-1})`, capped at `N`.
pub fn minor_exponents(m: &PMatrix) -> Vec<u32> {
    let ring = m.ring();
    let (p, n) = (ring.prime(), ring.precision());
    let lift: Vec<Vec<BigInt>> = entries(m)
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    let size = m.rows().min(m.cols());
    let mut previous = 0u32;
    let mut out = Vec::new();
    for k in 1..=size {
        let mut g = BigInt::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let minor: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| lift[r][c].clone()).collect())
                    .collect();
                g = g.gcd(&det(&minor));
            }
        }
        match valuation(p, &g) {
            Some(v) => {
                out.push((v - previous).min(n));
                previous = v;
            }
            None => {
                out.extend(std::iter::repeat(n).take(size - k + 1));
                break;
            }
        }
    }
    // the lift only sees valuations of integers; once a divisor reaches the
    // cap every later one does too
    let mut capped = false;
    for e in out.iter_mut() {
        if capped || *e >= n {
            *e = n;
            capped = true;
        }
    }
    out
}

/// Naive homology exponents of a three-term complex `T0 -> T1 -> T2` by
/// enumeration. `H^2 = coker(d1)` is read off `ker(d1^T)`, which is
/// isomorphic to it over `Z/p^N`.
pub fn brute_force_fiber(d0: &PMatrix, d1: &PMatrix) -> Vec<Vec<u32>> {
    let ring = d0.ring();
    let none_in = PMatrix::zeros(ring, d0.cols(), 0);
    let h0 = homology_exponents(&none_in, d0);
    let h1 = homology_exponents(d0, d1);
    let h2 = homology_exponents(&PMatrix::zeros(ring, d1.rows(), 0), &d1.transpose());
    vec![h0, h1, h2]
}

/// Universal coefficients: the naive `ker / im` mod `p^N` in degree `k` is
/// the lifted group plus the torsion of the lifted group in degree `k + 1`.
pub fn naive_from_lifted(lifted: &[logsyn_core::FinPModule]) -> Vec<Vec<u32>> {
    (0..lifted.len())
        .map(|k| {
            let mut e = lifted[k].exponents().to_vec();
            if let Some(next) = lifted.get(k + 1) {
                e.extend(next.torsion());
            }
            e.sort_unstable();
            e
        })
        .collect()
}
