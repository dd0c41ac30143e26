//! Fixed-precision p-adic integers, matrices over `Z/p^N`, Smith normal form
//! and homology of bounded cochain complexes of free `Z/p^N`-modules.
//!
//! Everything here is a value type. A [`ResidueRing`] is fixed when a
//! computation starts and all scalars and matrices of that computation share
//! it; combining values from different rings is an error, never a coercion.

mod complex;
mod matrix;
mod module;
mod snf;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};

pub use complex::{homology, homology_mod, ChainMap, CochainComplex};
pub use matrix::PMatrix;
pub use module::FinPModule;
pub use snf::{smith_normal_form, SmithForm};

/// `Z/p^N`, the coefficient ring of every complex in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ResidueRing {
    prime: u64,
    precision: u32,
    #[serde(skip)]
    modulus: u64,
}

impl ResidueRing {
    /// Largest modulus we accept; products are formed in `u128`.
    pub const MAX_MODULUS: u64 = 1 << 62;

    pub fn new(prime: u64, precision: u32) -> Result<Self> {
        if !is_prime(prime) {
            return Err(Error::InvalidArgument(format!("{prime} is not prime")));
        }
        if precision == 0 {
            return Err(Error::InvalidArgument("precision must be positive".into()));
        }
        let mut modulus: u64 = 1;
        for _ in 0..precision {
            modulus = modulus
                .checked_mul(prime)
                .filter(|m| *m <= Self::MAX_MODULUS)
                .ok_or_else(|| {
                    Error::InvalidArgument(format!("{prime}^{precision} exceeds 2^62"))
                })?;
        }
        Ok(ResidueRing {
            prime,
            precision,
            modulus,
        })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The same prime at a different precision.
    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        ResidueRing::new(self.prime, precision)
    }

    pub fn ensure_same(&self, other: &ResidueRing) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::PrecisionMismatch {
                left_p: self.prime,
                left_n: self.precision,
                right_p: other.prime,
                right_n: other.precision,
            })
        }
    }

    pub fn reduce(&self, value: i128) -> u64 {
        value.rem_euclid(self.modulus as i128) as u64
    }

    pub fn reduce_big(&self, value: &num_bigint::BigInt) -> u64 {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        let m = num_bigint::BigInt::from(self.modulus);
        value.mod_floor(&m).to_u64().expect("reduced value fits in u64")
    }

    pub fn element(&self, value: i128) -> PadicScalar {
        PadicScalar {
            ring: *self,
            residue: self.reduce(value),
        }
    }

    pub fn zero(&self) -> PadicScalar {
        self.element(0)
    }

    pub fn one(&self) -> PadicScalar {
        self.element(1)
    }

    /// `p^k`, which is zero once `k >= N`.
    pub fn prime_power(&self, k: u32) -> PadicScalar {
        PadicScalar {
            ring: *self,
            residue: self.pow_residue(k),
        }
    }

    pub(crate) fn pow_residue(&self, k: u32) -> u64 {
        if k >= self.precision {
            0
        } else {
            self.prime.pow(k)
        }
    }

    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.modulus as u128) as u64
    }

    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + self.modulus as u128 - b as u128) % self.modulus as u128) as u64
    }

    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub(crate) fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    pub(crate) fn valuation(&self, a: u64) -> u32 {
        if a == 0 {
            return self.precision;
        }
        let mut v = 0;
        let mut a = a;
        while a % self.prime == 0 {
            a /= self.prime;
            v += 1;
        }
        v
    }

    /// Splits `a = p^v * u` with `u` a unit; for `a = 0` returns `(N, 1)`.
    pub(crate) fn split(&self, a: u64) -> (u32, u64) {
        if a == 0 {
            return (self.precision, 1);
        }
        let mut v = 0;
        let mut a = a;
        while a % self.prime == 0 {
            a /= self.prime;
            v += 1;
        }
        (v, a)
    }

    pub(crate) fn inverse(&self, a: u64) -> Option<u64> {
        let (g, x, _) = extended_gcd(a as i128, self.modulus as i128);
        if g == 1 {
            Some(self.reduce(x))
        } else {
            None
        }
    }

    pub(crate) fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        let mut b = base % self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Display for ResidueRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.prime, self.precision)
    }
}

/// An element of `Z/p^N`, i.e. an element of `W(F_p) = Z_p` known to
/// precision `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicScalar {
    ring: ResidueRing,
    residue: u64,
}

impl PadicScalar {
    pub fn new(ring: ResidueRing, value: i128) -> Self {
        ring.element(value)
    }

    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    pub fn is_zero(&self) -> bool {
        self.residue == 0
    }

    /// `v_p`, with `valuation(0) = N`.
    pub fn valuation(&self) -> u32 {
        self.ring.valuation(self.residue)
    }

    /// The unit `u` with `u * p^v = self` (mod `p^N`). Zero has unit part 1.
    pub fn unit_part(&self) -> PadicScalar {
        let (_, u) = self.ring.split(self.residue);
        PadicScalar {
            ring: self.ring,
            residue: u % self.ring.modulus,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.residue % self.ring.prime != 0
    }

    pub fn inverse(&self) -> Option<PadicScalar> {
        self.ring.inverse(self.residue).map(|residue| PadicScalar {
            ring: self.ring,
            residue,
        })
    }

    /// Signed representative in `(-p^N/2, p^N/2]`.
    pub fn signed(&self) -> i128 {
        let m = self.ring.modulus as i128;
        let r = self.residue as i128;
        if 2 * r > m {
            r - m
        } else {
            r
        }
    }

    pub fn checked_add(self, rhs: PadicScalar) -> Result<PadicScalar> {
        self.ring.ensure_same(&rhs.ring)?;
        Ok(PadicScalar {
            ring: self.ring,
            residue: self.ring.add(self.residue, rhs.residue),
        })
    }

    pub fn checked_mul(self, rhs: PadicScalar) -> Result<PadicScalar> {
        self.ring.ensure_same(&rhs.ring)?;
        Ok(PadicScalar {
            ring: self.ring,
            residue: self.ring.mul(self.residue, rhs.residue),
        })
    }
}

impl Add for PadicScalar {
    type Output = PadicScalar;
    fn add(self, rhs: PadicScalar) -> PadicScalar {
        self.checked_add(rhs).expect("adding scalars of different precision")
    }
}

impl Sub for PadicScalar {
    type Output = PadicScalar;
    fn sub(self, rhs: PadicScalar) -> PadicScalar {
        self + (-rhs)
    }
}

impl Neg for PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        PadicScalar {
            ring: self.ring,
            residue: self.ring.neg(self.residue),
        }
    }
}

impl Mul for PadicScalar {
    type Output = PadicScalar;
    fn mul(self, rhs: PadicScalar) -> PadicScalar {
        self.checked_mul(rhs)
            .expect("multiplying scalars of different precision")
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.residue, self.ring)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn extended_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    (old_r, old_s, old_t)
}

/// `v_p(m!)` by Legendre's formula.
pub fn factorial_valuation(p: u64, m: u64) -> u64 {
    let mut v = 0;
    let mut q = m / p;
    while q > 0 {
        v += q;
        q /= p;
    }
    v
}

/// The unit part of `m!` modulo `p^N`, i.e. `m! / p^{v_p(m!)}`.
///
/// Uses `m! = p^{m/p} (m/p)! * prod_{k<=m, p∤k} k`, where the last product is
/// periodic modulo `p^N`.
pub fn factorial_unit(ring: &ResidueRing, m: u64) -> u64 {
    let p = ring.prime();
    let modulus = ring.modulus();
    let mut acc = 1 % modulus;
    let mut m = m;
    while m > 1 {
        let coprime_prefix = |upto: u64| -> u64 {
            let mut prod = 1 % modulus;
            for k in 1..=upto {
                if k % p != 0 {
                    prod = ring.mul(prod, k % modulus);
                }
            }
            prod
        };
        let full_periods = m / modulus;
        if full_periods > 0 {
            let period = coprime_prefix(modulus);
            acc = ring.mul(acc, ring.pow(period, full_periods));
        }
        acc = ring.mul(acc, coprime_prefix(m % modulus));
        m /= p;
    }
    acc
}

/// `hi! / lo!` as `(valuation, unit part mod p^N)`; requires `lo <= hi`.
pub fn factorial_ratio(ring: &ResidueRing, hi: u64, lo: u64) -> Result<(u64, u64)> {
    if lo > hi {
        return Err(Error::InvalidArgument(format!(
            "factorial ratio {hi}!/{lo}! is not integral"
        )));
    }
    let p = ring.prime();
    let v = factorial_valuation(p, hi) - factorial_valuation(p, lo);
    // short ranges are cheaper to multiply out directly
    let unit = if hi - lo <= 4096 {
        let mut prod = 1 % ring.modulus();
        for k in lo + 1..=hi {
            let (_, u) = ring.split(k);
            prod = ring.mul(prod, u % ring.modulus());
        }
        prod
    } else {
        let lo_inv = ring
            .inverse(factorial_unit(ring, lo))
            .expect("factorial unit part is invertible");
        ring.mul(factorial_unit(ring, hi), lo_inv)
    };
    Ok((v, unit))
}
