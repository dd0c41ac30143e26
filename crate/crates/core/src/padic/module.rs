use std::fmt;

use serde::Serialize;

use super::ResidueRing;

/// Isomorphism type of a finitely generated `Z/p^N`-module: a sorted multiset
/// of cyclic factors `Z/p^a`, `1 <= a <= N`.
///
/// Factors with `a = N` are "at cap": at this precision they cannot be told
/// apart from free summands. Recomputing at `N + 1` decides which they are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FinPModule {
    prime: u64,
    precision: u32,
    exponents: Vec<u32>,
}

impl FinPModule {
    pub fn zero(ring: ResidueRing) -> Self {
        FinPModule {
            prime: ring.prime(),
            precision: ring.precision(),
            exponents: Vec::new(),
        }
    }

    /// Exponents outside `1..=N` are dropped (`0`) or capped (`> N`).
    pub fn from_exponents(ring: ResidueRing, exponents: impl IntoIterator<Item = u32>) -> Self {
        let n = ring.precision();
        let mut exponents: Vec<u32> = exponents
            .into_iter()
            .filter(|&a| a > 0)
            .map(|a| a.min(n))
            .collect();
        exponents.sort_unstable();
        FinPModule {
            prime: ring.prime(),
            precision: n,
            exponents,
        }
    }

    /// `free` copies of `Z/p^N` plus the given torsion.
    pub fn with_free(ring: ResidueRing, free: usize, torsion: impl IntoIterator<Item = u32>) -> Self {
        let n = ring.precision();
        FinPModule::from_exponents(
            ring,
            torsion.into_iter().chain(std::iter::repeat(n).take(free)),
        )
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn at_cap_count(&self) -> usize {
        self.exponents.iter().filter(|&&a| a == self.precision).count()
    }

    /// Factors strictly below the cap.
    pub fn torsion(&self) -> Vec<u32> {
        self.exponents
            .iter()
            .copied()
            .filter(|&a| a < self.precision)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn is_torsion_below_cap(&self) -> bool {
        self.at_cap_count() == 0
    }

    /// `log_p` of the cardinality.
    pub fn length(&self) -> u64 {
        self.exponents.iter().map(|&a| a as u64).sum()
    }

    pub fn direct_sum(&self, other: &FinPModule) -> FinPModule {
        assert_eq!(
            (self.prime, self.precision),
            (other.prime, other.precision),
            "direct sum across different residue rings"
        );
        let mut exponents = self.exponents.clone();
        exponents.extend_from_slice(&other.exponents);
        exponents.sort_unstable();
        FinPModule {
            exponents,
            ..*self
        }
    }

    pub fn sum_all<'a>(ring: ResidueRing, parts: impl IntoIterator<Item = &'a FinPModule>) -> FinPModule {
        parts
            .into_iter()
            .fold(FinPModule::zero(ring), |acc, m| acc.direct_sum(m))
    }

    /// Compact notation: `Z/p^a` factors, then `W` for at-cap factors.
    pub fn describe(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .torsion()
            .into_iter()
            .map(|a| {
                if a == 1 {
                    format!("Z/{}", self.prime)
                } else {
                    format!("Z/{}^{}", self.prime, a)
                }
            })
            .collect();
        out.extend(std::iter::repeat("W".to_string()).take(self.at_cap_count()));
        out
    }
}

impl fmt::Display for FinPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "{}", self.describe().join(" + "))
    }
}
