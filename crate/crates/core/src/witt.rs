//! p-typical Witt vectors over `F_p` and the truncation-set calculus of big
//! Witt vectors.
//!
//! Arithmetic lifts coordinates to `Z`, works on ghost components
//! `g_t = sum_{u <= t} p^u a_u^{p^{t-u}}`, and inverts the ghost map over the
//! integers. `W(Z) -> W(F_p)` is a ring map, so reducing the integral result
//! mod `p` gives the `F_p` answer; each inversion also checks integrality.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{is_prime, FinPModule, ResidueRing};

/// An element of `W_n(F_p)`, coordinates `(a_0, ..., a_{n-1})` in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PTypicalWitt {
    prime: u64,
    coords: Vec<u64>,
}

impl PTypicalWitt {
    pub fn new(prime: u64, coords: Vec<u64>) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::InvalidArgument(format!("{prime} is not prime")));
        }
        let coords = coords.into_iter().map(|a| a % prime).collect();
        Ok(PTypicalWitt { prime, coords })
    }

    pub fn zero(prime: u64, length: usize) -> Self {
        PTypicalWitt {
            prime,
            coords: vec![0; length],
        }
    }

    pub fn one(prime: u64, length: usize) -> Self {
        Self::teichmuller(prime, 1, length)
    }

    /// The Teichmüller lift `[a] = (a, 0, 0, ...)`.
    pub fn teichmuller(prime: u64, a: u64, length: usize) -> Self {
        let mut coords = vec![0; length];
        if length > 0 {
            coords[0] = a % prime;
        }
        PTypicalWitt { prime, coords }
    }

    /// The Witt vector of the integer `m` in `W_n(F_p) = Z/p^n`.
    pub fn from_integer(prime: u64, m: i64, length: usize) -> Self {
        let ghosts: Vec<BigInt> = (0..length).map(|_| BigInt::from(m)).collect();
        let ints = unghost(prime, &ghosts).expect("integers have integral Witt coordinates");
        reduce(prime, &ints)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn ghost(&self) -> Vec<BigInt> {
        let lifted: Vec<BigInt> = self.coords.iter().map(|&a| BigInt::from(a)).collect();
        ghost(self.prime, &lifted)
    }

    /// Ghost map, inversion over `Z`, reduction mod `p`.
    pub fn ghost_roundtrip(&self) -> Result<PTypicalWitt> {
        let ints = unghost(self.prime, &self.ghost())?;
        Ok(reduce(self.prime, &ints))
    }

    fn check_compatible(&self, other: &PTypicalWitt) -> Result<()> {
        if self.prime != other.prime || self.len() != other.len() {
            return Err(Error::InvalidArgument(format!(
                "W_{}(F_{}) vs W_{}(F_{})",
                self.len(),
                self.prime,
                other.len(),
                other.prime
            )));
        }
        Ok(())
    }

    fn ghostwise(
        &self,
        other: &PTypicalWitt,
        op: impl Fn(&BigInt, &BigInt) -> BigInt,
    ) -> Result<PTypicalWitt> {
        self.check_compatible(other)?;
        let g: Vec<BigInt> = self
            .ghost()
            .iter()
            .zip(other.ghost().iter())
            .map(|(a, b)| op(a, b))
            .collect();
        Ok(reduce(self.prime, &unghost(self.prime, &g)?))
    }

    pub fn add(&self, other: &PTypicalWitt) -> Result<PTypicalWitt> {
        self.ghostwise(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PTypicalWitt) -> Result<PTypicalWitt> {
        self.ghostwise(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &PTypicalWitt) -> Result<PTypicalWitt> {
        self.ghostwise(other, |a, b| a * b)
    }

    pub fn neg(&self) -> Result<PTypicalWitt> {
        PTypicalWitt::zero(self.prime, self.len()).sub(self)
    }

    /// `(a + b, a * b)`.
    pub fn ring_ops(&self, other: &PTypicalWitt) -> Result<(PTypicalWitt, PTypicalWitt)> {
        Ok((self.add(other)?, self.mul(other)?))
    }

    /// Frobenius `W_n -> W_{n-1}`, defined by `g_t(F w) = g_{t+1}(w)`.
    pub fn frobenius(&self) -> Result<PTypicalWitt> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        let g = self.ghost();
        Ok(reduce(self.prime, &unghost(self.prime, &g[1..])?))
    }

    /// Verschiebung `W_n -> W_{n+1}`, `(a_0, ...) -> (0, a_0, ...)`.
    pub fn verschiebung(&self) -> PTypicalWitt {
        let mut coords = Vec::with_capacity(self.len() + 1);
        coords.push(0);
        coords.extend_from_slice(&self.coords);
        PTypicalWitt {
            prime: self.prime,
            coords,
        }
    }

    pub fn fv_ops(&self) -> Result<(PTypicalWitt, PTypicalWitt)> {
        Ok((self.frobenius()?, self.verschiebung()))
    }

    /// Keeps the first `length` coordinates.
    pub fn truncate(&self, length: usize) -> PTypicalWitt {
        PTypicalWitt {
            prime: self.prime,
            coords: self.coords[..length.min(self.len())].to_vec(),
        }
    }

    /// The image under `W_n(F_p) = Z/p^n`, `w -> sum_t p^t [a_t]` with the
    /// Teichmüller representative `[a] = a^{p^{n-1}} mod p^n`.
    pub fn to_integer(&self) -> u64 {
        let n = self.len() as u32;
        if n == 0 {
            return 0;
        }
        let ring = ResidueRing::new(self.prime, n).expect("length fits the residue ring");
        let exp = self.prime.pow(n - 1);
        self.coords.iter().enumerate().fold(0, |acc, (t, &a)| {
            let teich = ring.element(ring.pow(a, exp) as i128);
            let term = ring.prime_power(t as u32) * teich;
            (ring.element(acc as i128) + term).residue()
        })
    }

    /// Every element of `W_n(F_p)`, in lexicographic coordinate order.
    pub fn enumerate(prime: u64, length: usize) -> impl Iterator<Item = PTypicalWitt> {
        let total = prime.pow(length as u32);
        (0..total).map(move |mut k| {
            let mut coords = vec![0; length];
            for c in coords.iter_mut() {
                *c = k % prime;
                k /= prime;
            }
            PTypicalWitt { prime, coords }
        })
    }
}

impl fmt::Display for PTypicalWitt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn ghost(p: u64, coords: &[BigInt]) -> Vec<BigInt> {
    let pb = BigInt::from(p);
    (0..coords.len())
        .map(|t| {
            coords[..=t]
                .iter()
                .enumerate()
                .map(|(u, a)| pb.pow(u as u32) * a.pow(p.pow((t - u) as u32) as u32))
                .fold(BigInt::zero(), |acc, x| acc + x)
        })
        .collect()
}

/// Inverts the ghost map over `Z`, failing on a non-integral coordinate.
fn unghost(p: u64, ghosts: &[BigInt]) -> Result<Vec<BigInt>> {
    let pb = BigInt::from(p);
    let mut coords: Vec<BigInt> = Vec::with_capacity(ghosts.len());
    for (t, g) in ghosts.iter().enumerate() {
        let lower = coords
            .iter()
            .enumerate()
            .map(|(u, a)| pb.pow(u as u32) * a.pow(p.pow((t - u) as u32) as u32))
            .fold(BigInt::zero(), |acc, x| acc + x);
        let pt = pb.pow(t as u32);
        let (q, r) = (g - lower).div_rem(&pt);
        if !r.is_zero() {
            return Err(Error::NonIntegralUnghost { index: t });
        }
        coords.push(q);
    }
    Ok(coords)
}

fn reduce(p: u64, coords: &[BigInt]) -> PTypicalWitt {
    let pb = BigInt::from(p);
    let coords = coords
        .iter()
        .map(|a| {
            let r = a.mod_floor(&pb);
            r.to_u64_digits().1.first().copied().unwrap_or(0)
        })
        .collect();
    PTypicalWitt { prime: p, coords }
}

/// `W_m(F_p)` for the truncation set `{1, ..., m}`, split p-typically into
/// `prod_j W_{s_j}(F_p)` over `j` prime to `p`, `s_j = #{t >= 0 : j p^t <= m}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BigWittShape {
    pub prime: u64,
    pub bound: u64,
    pub components: Vec<(u64, u32)>,
}

impl BigWittShape {
    /// `sum_j s_j`; equals `bound`.
    pub fn total_length(&self) -> u64 {
        self.components.iter().map(|&(_, s)| s as u64).sum()
    }

    /// `W_{s_j}(F_p) = Z/p^{s_j}` for each component, capped at `N`.
    pub fn realize(&self, ring: ResidueRing) -> FinPModule {
        FinPModule::from_exponents(ring, self.components.iter().map(|&(_, s)| s))
    }

    pub fn exponents(&self) -> Vec<u32> {
        let mut e: Vec<u32> = self.components.iter().map(|&(_, s)| s).collect();
        e.sort_unstable();
        e
    }
}

impl fmt::Display for BigWittShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|&(j, s)| format!("({j},{s})"))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn ptypical_decomposition(p: u64, m: u64) -> BigWittShape {
    let components = (1..=m)
        .filter(|j| j % p != 0)
        .map(|j| {
            let mut s = 0u32;
            let mut w = j;
            while w <= m {
                s += 1;
                w = match w.checked_mul(p) {
                    Some(next) => next,
                    None => break,
                };
            }
            (j, s)
        })
        .collect();
    BigWittShape {
        prime: p,
        bound: m,
        components,
    }
}

/// Smallest `s >= 0` with `j p^s >= e i`, by integer comparison.
pub fn expected_torsion_exponent(p: u64, e: u64, i: u64, j: u64) -> u32 {
    let target = e as u128 * i as u128;
    let mut w = j as u128;
    let mut s = 0;
    while w < target {
        w *= p as u128;
        s += 1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(p: u64, c: &[u64]) -> PTypicalWitt {
        PTypicalWitt::new(p, c.to_vec()).unwrap()
    }

    #[test]
    fn roundtrip_examples() {
        assert_eq!(w(2, &[1, 0]).ghost_roundtrip().unwrap(), w(2, &[1, 0]));
        assert_eq!(w(3, &[0, 1]).ghost_roundtrip().unwrap(), w(3, &[0, 1]));
    }

    #[test]
    fn one_plus_one_in_w2_f2() {
        // ghost(1,0) = (1,1); sum (2,2) unghosts to (2, -1) = (0, 1) mod 2
        let one = w(2, &[1, 0]);
        assert_eq!(one.ghost(), vec![BigInt::from(1), BigInt::from(1)]);
        let (sum, prod) = one.ring_ops(&one).unwrap();
        assert_eq!(sum, w(2, &[0, 1]));
        assert_eq!(prod, one);
    }

    #[test]
    fn v1_squared_vanishes_in_w2_f2() {
        let v = w(2, &[0, 1]);
        assert_eq!(v.ghost(), vec![BigInt::from(0), BigInt::from(2)]);
        assert_eq!(v.mul(&v).unwrap(), w(2, &[0, 0]));
    }

    #[test]
    fn verschiebung_of_one() {
        assert_eq!(w(2, &[1]).verschiebung(), w(2, &[0, 1]));
    }

    #[test]
    fn frobenius_is_truncation_over_fp() {
        for x in PTypicalWitt::enumerate(3, 3) {
            assert_eq!(x.frobenius().unwrap(), x.truncate(2));
        }
    }

    #[test]
    fn integer_image_is_a_ring_isomorphism() {
        let p = 3;
        let all: Vec<_> = PTypicalWitt::enumerate(p, 2).collect();
        let mut seen = std::collections::HashSet::new();
        for a in &all {
            assert!(seen.insert(a.to_integer()));
            for b in &all {
                let (s, m) = a.ring_ops(b).unwrap();
                assert_eq!(s.to_integer(), (a.to_integer() + b.to_integer()) % 9);
                assert_eq!(m.to_integer(), (a.to_integer() * b.to_integer()) % 9);
            }
        }
        assert_eq!(PTypicalWitt::from_integer(3, 5, 2).to_integer(), 5);
        assert_eq!(PTypicalWitt::from_integer(3, -1, 2).to_integer(), 8);
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        assert!(w(2, &[1]).add(&w(2, &[1, 0])).is_err());
        assert!(w(2, &[1]).add(&w(3, &[1])).is_err());
    }

    #[test]
    fn unghost_detects_non_integral_input() {
        // (0, 1) is not a ghost vector: g_1 = a_0^2 + 2 a_1 forces a_1 = 1/2
        let g = vec![BigInt::from(0), BigInt::from(1)];
        assert_eq!(unghost(2, &g), Err(Error::NonIntegralUnghost { index: 1 }));
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(ptypical_decomposition(2, 5).components, vec![(1, 3), (3, 1), (5, 1)]);
        assert_eq!(ptypical_decomposition(3, 3).components, vec![(1, 2), (2, 1)]);
        assert!(ptypical_decomposition(2, 0).components.is_empty());
        assert_eq!(ptypical_decomposition(2, 3).exponents(), vec![1, 2]);
    }

    #[test]
    fn torsion_exponent_examples() {
        assert_eq!(expected_torsion_exponent(2, 2, 1, 1), 1);
        assert_eq!(expected_torsion_exponent(2, 3, 2, 5), 1);
        assert_eq!(expected_torsion_exponent(5, 1, 1, 1), 0);
        // exact powers sit on the boundary: 1 * 2^3 >= 8
        assert_eq!(expected_torsion_exponent(2, 4, 2, 1), 3);
        assert_eq!(expected_torsion_exponent(3, 1, 0, 1), 0);
    }
}
