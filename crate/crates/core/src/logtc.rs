//! Homotopy groups of p-completed log `TC` of `(k[x]/x^e, N)`, read off from
//! the syntomic cohomology through `gr^i = Z_p^syn(i)[2i]`, and their bigraded
//! reindexing.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{FinPModule, ResidueRing};
use crate::prismatic::ModelParams;
use crate::syntomic::{default_orbit_bound, default_precision, syntomic_total, Summand, SYNTOMIC_DEGREES};
use crate::witt::ptypical_decomposition;

/// The summands of `pi_n`; `pi_0` is recorded as the split sum.
pub fn homotopy_summands(e: u64, n: i64) -> Vec<Summand> {
    match n {
        -1 => vec![Summand::W],
        0 => vec![Summand::W, Summand::W],
        1 => vec![Summand::W, Summand::BigWitt(e - 1)],
        n if n >= 3 && n % 2 == 1 => vec![Summand::BigWitt(e * ((n as u64 + 1) / 2) - 1)],
        _ => Vec::new(),
    }
}

fn realize(summands: &[Summand], ring: ResidueRing) -> FinPModule {
    let parts: Vec<FinPModule> = summands.iter().map(|s| s.realize(ring)).collect();
    FinPModule::sum_all(ring, &parts)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomotopyEntry {
    pub degree: i64,
    pub summands: Vec<Summand>,
    pub module: FinPModule,
    /// `sum_i H^{2i - n}` of the computed syntomic complexes.
    pub assembled: FinPModule,
    /// `log_p` of the order of the big Witt part, before any capping.
    pub big_witt_length: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomotopyTable {
    pub p: u64,
    pub e: u64,
    pub precision: u32,
    pub entries: Vec<HomotopyEntry>,
}

/// Weights `i >= 0` with `0 <= 2i - n <= 2`.
fn contributing_weights(n: i64) -> impl Iterator<Item = (u64, usize)> {
    (0..SYNTOMIC_DEGREES as i64).filter_map(move |d| {
        let twice = n + d;
        (twice >= 0 && twice % 2 == 0).then_some(((twice / 2) as u64, d as usize))
    })
}

/// Precision large enough that no factor in the range reaches the cap.
pub fn default_table_precision(p: u64, e: u64, range: &RangeInclusive<i64>) -> u32 {
    let top = (*range.end()).max(0);
    let i_max = ((top + 2) / 2) as u64;
    default_precision(p, e, i_max)
}

/// `pi_n` for `n` in `range`, each checked against the assembled syntomic
/// cohomology.
pub fn logtc_table(e: u64, p: u64, range: RangeInclusive<i64>, precision: u32) -> Result<HomotopyTable> {
    let ring = ResidueRing::new(p, precision)?;
    let params = ModelParams::truncated_log(ring, e)?;
    let mut syntomic: BTreeMap<u64, Vec<FinPModule>> = BTreeMap::new();
    let mut entries = Vec::new();
    for n in range {
        let mut assembled = FinPModule::zero(ring);
        for (i, d) in contributing_weights(n) {
            if !syntomic.contains_key(&i) {
                let total = syntomic_total(&params, i, default_orbit_bound(p, e, i))?;
                syntomic.insert(i, total.degrees);
            }
            assembled = assembled.direct_sum(&syntomic[&i][d]);
        }
        let summands = homotopy_summands(e, n);
        let module = realize(&summands, ring);
        if module != assembled {
            return Err(Error::CrossCheckFailure {
                degree: n,
                detail: format!("table {module}, syntomic {assembled}"),
            });
        }
        let big_witt_length = summands
            .iter()
            .map(|s| match *s {
                Summand::BigWitt(m) => ptypical_decomposition(p, m).total_length(),
                Summand::W => 0,
            })
            .sum();
        entries.push(HomotopyEntry {
            degree: n,
            summands,
            module,
            assembled,
            big_witt_length,
        });
    }
    Ok(HomotopyTable {
        p,
        e,
        precision,
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MotivicEntry {
    pub i: i64,
    pub j: i64,
    pub degree: i64,
    /// The `e = 1` table, `bW_{m-1}` in degree `2m - 1`.
    pub e1_form: Vec<Summand>,
    /// The same entry with the `e`-dependence of the homotopy table.
    pub general_form: Vec<Summand>,
    pub module: FinPModule,
    /// Set when `e != 1`, i.e. when `general_form` extends the `e = 1` table.
    pub extends_e1_table: bool,
}

/// Bigraded entry `(i, j)`, which depends only on `i - 2j`.
pub fn motivic_bigraded(e: u64, p: u64, i: i64, j: i64, precision: u32) -> Result<MotivicEntry> {
    if e == 0 {
        return Err(Error::InvalidArgument("period e must be positive".into()));
    }
    let ring = ResidueRing::new(p, precision)?;
    let degree = i - 2 * j;
    let general_form = homotopy_summands(e, degree);
    Ok(MotivicEntry {
        i,
        j,
        degree,
        e1_form: homotopy_summands(1, degree),
        module: realize(&general_form, ring),
        general_form,
        extends_e1_table: e != 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_examples() {
        let t = logtc_table(2, 2, 3..=3, 5).unwrap();
        assert_eq!(t.entries[0].summands, vec![Summand::BigWitt(3)]);
        assert_eq!(t.entries[0].module.exponents(), &[1, 2]);

        let t = logtc_table(1, 5, 1..=1, 3).unwrap();
        assert_eq!(t.entries[0].module.at_cap_count(), 1);
        assert_eq!(t.entries[0].module.exponents().len(), 1);

        let t = logtc_table(3, 2, 2..=2, 4).unwrap();
        assert!(t.entries[0].module.is_zero());
    }

    #[test]
    fn motivic_examples() {
        let m = motivic_bigraded(1, 3, 0, 0, 4).unwrap();
        assert_eq!(m.general_form, vec![Summand::W, Summand::W]);
        let m = motivic_bigraded(1, 3, 5, 1, 4).unwrap();
        assert_eq!(m.general_form, vec![Summand::BigWitt(1)]);
        assert_eq!(m.module.exponents(), &[1]);
        assert!(motivic_bigraded(1, 3, 2, 0, 4).unwrap().general_form.is_empty());
        let m = motivic_bigraded(2, 3, 3, 0, 4).unwrap();
        assert!(m.extends_e1_table);
        assert_eq!(m.e1_form, vec![Summand::BigWitt(1)]);
        assert_eq!(m.general_form, vec![Summand::BigWitt(3)]);
    }

    #[test]
    fn reindexing_invariance() {
        for e in 1..=3 {
            for i in -4..8 {
                for j in -2..4 {
                    let a = motivic_bigraded(e, 2, i, j, 5).unwrap();
                    let b = motivic_bigraded(e, 2, i + 2, j + 1, 5).unwrap();
                    assert_eq!(a.general_form, b.general_form);
                }
            }
        }
    }
}
