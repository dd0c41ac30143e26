//! Syntomic cohomology of the models, assembled orbit by orbit.
//!
//! Frobenius multiplies weights by `p`, so the complexes split over the
//! weight-0 orbit and the orbits `{j, jp, jp^2, ...}` with `p` not dividing
//! `j`. Each orbit is truncated at `jp^M` and `M` is raised until two
//! consecutive cutoffs give the same homology.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{ChainMap, CochainComplex, FinPModule, ResidueRing};
use crate::prismatic::{syntomic_comparison, ModelParams, Period, WeightedComplex};
use crate::report::{all_pass, Check};
use crate::witt::{expected_torsion_exponent, ptypical_decomposition};

/// Cohomological degrees carried by the syntomic complexes of the models.
pub const SYNTOMIC_DEGREES: usize = 3;

/// How many cutoffs past the first guess are tried before giving up.
pub const STABILIZATION_WINDOW: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitResult {
    pub orbit: u64,
    pub degrees: Vec<FinPModule>,
    pub cutoff: u32,
}

impl OrbitResult {
    pub fn is_zero(&self) -> bool {
        self.degrees.iter().all(|h| h.is_zero())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyntomicResult {
    pub params: ModelParams,
    pub i: u64,
    pub degrees: Vec<FinPModule>,
    pub orbits: Vec<OrbitResult>,
}

fn check_orbit_index(p: u64, j: u64) -> Result<()> {
    if j != 0 && j % p == 0 {
        return Err(Error::InvalidArgument(format!(
            "orbit index {j} is divisible by {p}"
        )));
    }
    Ok(())
}

/// Homology in degrees `0..=2` of an arbitrary syntomic-shaped complex.
fn homology_in_range(complex: &CochainComplex, degrees: usize) -> Result<Vec<FinPModule>> {
    for k in degrees..=complex.top_degree() {
        if complex.dim(k) != 0 {
            return Err(Error::DimensionMismatch(format!(
                "complex has rank {} in degree {k}",
                complex.dim(k)
            )));
        }
    }
    (0..degrees).map(|k| complex.homology(k)).collect()
}

pub fn orbit_homology(params: &ModelParams, i: u64, j: u64, cutoff: u32) -> Result<Vec<FinPModule>> {
    check_orbit_index(params.prime(), j)?;
    let syn = WeightedComplex::orbit(*params, j, cutoff)?.syntomic(i)?;
    homology_in_range(&syn, SYNTOMIC_DEGREES)
}

/// First cutoff tried for orbit `j`.
pub fn initial_cutoff(params: &ModelParams, i: u64, j: u64) -> u32 {
    match params.period {
        Period::Finite(e) => expected_torsion_exponent(params.prime(), e, i, j.max(1)) + 2,
        Period::Polynomial => 2,
    }
}

/// Raises the cutoff from `start` until `compute(M) == compute(M + 1)`.
fn stabilize<T: PartialEq>(
    orbit: u64,
    start: u32,
    compute: impl Fn(u32) -> Result<T>,
) -> Result<(T, u32)> {
    let mut previous = compute(start)?;
    for cutoff in start..start + STABILIZATION_WINDOW {
        let next = compute(cutoff + 1)?;
        if next == previous {
            return Ok((previous, cutoff));
        }
        previous = next;
    }
    Err(Error::StabilizationFailure {
        orbit,
        last_cutoff: start + STABILIZATION_WINDOW,
    })
}

pub fn syntomic_orbit(params: &ModelParams, i: u64, j: u64) -> Result<OrbitResult> {
    check_orbit_index(params.prime(), j)?;
    if j == 0 {
        return Ok(OrbitResult {
            orbit: 0,
            degrees: orbit_homology(params, i, 0, 0)?,
            cutoff: 0,
        });
    }
    let (degrees, cutoff) = stabilize(j, initial_cutoff(params, i, j), |m| {
        orbit_homology(params, i, j, m)
    })?;
    Ok(OrbitResult {
        orbit: j,
        degrees,
        cutoff,
    })
}

/// `0` and every `j <= bound` prime to `p`.
pub fn orbit_indices(p: u64, bound: u64) -> Vec<u64> {
    std::iter::once(0)
        .chain((1..=bound).filter(|j| j % p != 0))
        .collect()
}

/// Whether the orbit is known to contribute nothing: positive-weight orbits
/// of the truncated log models with `j p^0 >= e i`.
fn predicted_zero(params: &ModelParams, i: u64, j: u64) -> bool {
    match params.period {
        Period::Finite(e) if params.log && j != 0 => {
            expected_torsion_exponent(params.prime(), e, i, j) == 0
        }
        _ => false,
    }
}

/// Sum over the weight-0 orbit and all orbits `j <= j_bound`, checking that
/// orbits predicted to vanish do.
pub fn syntomic_total(params: &ModelParams, i: u64, j_bound: u64) -> Result<SyntomicResult> {
    let orbits: Vec<OrbitResult> = orbit_indices(params.prime(), j_bound)
        .into_par_iter()
        .map(|j| syntomic_orbit(params, i, j))
        .collect::<Result<_>>()?;
    for orbit in &orbits {
        if predicted_zero(params, i, orbit.orbit) && !orbit.is_zero() {
            let found: Vec<String> = orbit.degrees.iter().map(|h| h.to_string()).collect();
            return Err(Error::UnexpectedOrbitContribution {
                orbit: orbit.orbit,
                found: found.join(" | "),
            });
        }
    }
    let degrees = (0..SYNTOMIC_DEGREES)
        .map(|k| FinPModule::sum_all(params.ring, orbits.iter().map(|o| &o.degrees[k])))
        .collect();
    Ok(SyntomicResult {
        params: *params,
        i,
        degrees,
        orbits,
    })
}

/// A summand of a closed-form answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "type", content = "m", rename_all = "kebab-case")]
pub enum Summand {
    /// `W(k)`.
    W,
    /// The big Witt vectors `bW_m(k)` on the truncation set `{1, ..., m}`.
    BigWitt(u64),
}

impl Summand {
    pub fn realize(&self, ring: ResidueRing) -> FinPModule {
        match *self {
            Summand::W => FinPModule::with_free(ring, 1, []),
            Summand::BigWitt(m) => ptypical_decomposition(ring.prime(), m).realize(ring),
        }
    }

    /// `"W"`, or `"bW_m"` followed by its p-typical factors.
    pub fn render(&self, p: u64) -> String {
        match *self {
            Summand::W => "W".to_string(),
            Summand::BigWitt(m) => {
                let parts: Vec<String> = ptypical_decomposition(p, m)
                    .components
                    .iter()
                    .map(|&(_, s)| if s == 1 { format!("Z/{p}") } else { format!("Z/{p}^{s}") })
                    .collect();
                let inner = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
                format!("bW_{m} ({inner})")
            }
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::W => write!(f, "W"),
            Summand::BigWitt(m) => write!(f, "bW_{m}"),
        }
    }
}

/// `(degree, summand)` terms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub i: u64,
    pub terms: Vec<(u32, Summand)>,
}

impl ClosedForm {
    pub fn realize(&self, ring: ResidueRing) -> Vec<FinPModule> {
        (0..SYNTOMIC_DEGREES as u32)
            .map(|d| {
                let parts: Vec<FinPModule> = self
                    .terms
                    .iter()
                    .filter(|(deg, _)| *deg == d)
                    .map(|(_, s)| s.realize(ring))
                    .collect();
                FinPModule::sum_all(ring, &parts)
            })
            .collect()
    }

    pub fn in_degree(&self, degree: u32) -> Vec<Summand> {
        self.terms
            .iter()
            .filter(|(d, _)| *d == degree)
            .map(|&(_, s)| s)
            .collect()
    }
}

/// Syntomic cohomology of `(k[x]/x^e, N)` in weight `i`.
pub fn closed_form(e: u64, i: u64) -> ClosedForm {
    let terms = match i {
        0 => vec![(0, Summand::W), (1, Summand::W)],
        1 => vec![(1, Summand::BigWitt(e - 1)), (1, Summand::W), (2, Summand::W)],
        _ => vec![(1, Summand::BigWitt(e * i - 1))],
    };
    ClosedForm { i, terms }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Mismatch,
    PrecisionFailure,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub status: Status,
    pub expected: Vec<FinPModule>,
    pub expected_next: Vec<FinPModule>,
    pub computed_next: Vec<FinPModule>,
    pub discrepancies: Vec<String>,
}

/// Compares results at `N` and `N + 1` with a closed form. Free summands must
/// show up as at-cap factors at both precisions; an at-cap count that moves
/// between `N` and `N + 1` means `N` was too small to separate torsion.
pub fn compare(at_n: &[FinPModule], at_next: &[FinPModule], cf: &ClosedForm, ring: ResidueRing) -> Result<Comparison> {
    let ring_next = ring.with_precision(ring.precision() + 1)?;
    let expected = cf.realize(ring);
    let expected_next = cf.realize(ring_next);
    let mut discrepancies = Vec::new();
    let mut precision_failure = false;
    for d in 0..SYNTOMIC_DEGREES {
        let (a, b) = (at_n[d].at_cap_count(), at_next[d].at_cap_count());
        if a != b {
            precision_failure = true;
            discrepancies.push(format!(
                "degree {d}: {a} factor(s) at cap for N={}, {b} for N={}",
                ring.precision(),
                ring_next.precision()
            ));
        }
    }
    for d in 0..SYNTOMIC_DEGREES {
        if at_n[d] != expected[d] {
            discrepancies.push(format!(
                "degree {d} at N={}: computed {}, expected {}",
                ring.precision(),
                at_n[d],
                expected[d]
            ));
        }
        if at_next[d] != expected_next[d] {
            discrepancies.push(format!(
                "degree {d} at N={}: computed {}, expected {}",
                ring_next.precision(),
                at_next[d],
                expected_next[d]
            ));
        }
    }
    let status = if precision_failure {
        Status::PrecisionFailure
    } else if discrepancies.is_empty() {
        Status::Pass
    } else {
        Status::Mismatch
    };
    Ok(Comparison {
        status,
        expected,
        expected_next,
        computed_next: at_next.to_vec(),
        discrepancies,
    })
}

/// `max_j s_j + 3`, i.e. `s_1 + 3`.
pub fn default_precision(p: u64, e: u64, i: u64) -> u32 {
    expected_torsion_exponent(p, e, i, 1) + 3
}

/// `e i + p`.
pub fn default_orbit_bound(p: u64, e: u64, i: u64) -> u64 {
    e * i + p
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SyntomicRun {
    pub p: u64,
    pub e: u64,
    pub i: u64,
    pub precision: u32,
    pub orbit_bound: u64,
    pub result: SyntomicResult,
    pub closed_form: ClosedForm,
    pub comparison: Comparison,
}

/// Computes `(k[x]/x^e, N)` at `N` and `N + 1` and compares with the closed
/// form.
pub fn run_syntomic(
    p: u64,
    e: u64,
    i: u64,
    precision: Option<u32>,
    orbit_bound: Option<u64>,
) -> Result<SyntomicRun> {
    let precision = precision.unwrap_or_else(|| default_precision(p, e, i));
    let orbit_bound = orbit_bound.unwrap_or_else(|| default_orbit_bound(p, e, i));
    let ring = ResidueRing::new(p, precision)?;
    let params = ModelParams::truncated_log(ring, e)?;
    let result = syntomic_total(&params, i, orbit_bound)?;
    let next = syntomic_total(&params.with_precision(precision + 1)?, i, orbit_bound)?;
    let cf = closed_form(e, i);
    let comparison = compare(&result.degrees, &next.degrees, &cf, ring)?;
    Ok(SyntomicRun {
        p,
        e,
        i,
        precision,
        orbit_bound,
        result,
        closed_form: cf,
        comparison,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilInvarianceReport {
    pub p: u64,
    pub e: u64,
    pub i: u64,
    pub precision: u32,
    pub weight_zero: Vec<FinPModule>,
    pub weight_zero_reduced: Vec<FinPModule>,
    pub positive: Vec<OrbitResult>,
    pub max_torsion_exponent: u32,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Compares `(k[x]/x^e, N)` with `(k, N)`: equal weight-0 parts, and only
/// torsion below the cap in positive weights.
pub fn nil_invariance_check(e: u64, p: u64, i: u64, precision: u32) -> Result<NilInvarianceReport> {
    let ring = ResidueRing::new(p, precision)?;
    let params = ModelParams::truncated_log(ring, e)?;
    let reduced = ModelParams::log_point(ring);
    let total = syntomic_total(&params, i, default_orbit_bound(p, e, i))?;
    let weight_zero = total.orbits[0].degrees.clone();
    let weight_zero_reduced = syntomic_orbit(&reduced, i, 0)?.degrees;
    let positive: Vec<OrbitResult> = total.orbits[1..].to_vec();
    let max_torsion_exponent = positive
        .iter()
        .flat_map(|o| o.degrees.iter().flat_map(|h| h.exponents().iter().copied()))
        .max()
        .unwrap_or(0);
    let bound = expected_torsion_exponent(p, e, i, 1);
    let checks = vec![
        Check::new(
            "weight 0 independent of e",
            weight_zero == weight_zero_reduced,
            format!(
                "e={e}: {}; e=1: {}",
                render_degrees(&weight_zero),
                render_degrees(&weight_zero_reduced)
            ),
        ),
        Check::new(
            "positive weights torsion below cap",
            positive.iter().all(|o| o.degrees.iter().all(|h| h.is_torsion_below_cap())),
            format!("largest exponent {max_torsion_exponent}, cap {precision}"),
        ),
        Check::new(
            "positive-weight exponents bounded by s_1",
            max_torsion_exponent <= bound,
            format!("largest exponent {max_torsion_exponent}, s_1 = {bound}"),
        ),
    ];
    let pass = all_pass(&checks);
    Ok(NilInvarianceReport {
        p,
        e,
        i,
        precision,
        weight_zero,
        weight_zero_reduced,
        positive,
        max_torsion_exponent,
        checks,
        pass,
    })
}

pub fn render_degrees(degrees: &[FinPModule]) -> String {
    let parts: Vec<String> = degrees
        .iter()
        .enumerate()
        .map(|(d, h)| format!("H{d}={h}"))
        .collect();
    parts.join(", ")
}

/// The four corners of the descent square, in the order
/// `k[x]`, `k`, `(k[x], N)`, `(k, N)`.
pub fn descent_corners(ring: ResidueRing) -> [ModelParams; 4] {
    [
        ModelParams::affine_line(ring),
        ModelParams::point(ring),
        ModelParams::log_affine_line(ring),
        ModelParams::log_point(ring),
    ]
}

pub const CORNER_NAMES: [&str; 4] = ["k[x]", "k", "(k[x],N)", "(k,N)"];

/// Total complex `fib(fib(A -> B) -> fib(C -> D))` of the square of
/// syntomic complexes on one orbit, together with the two horizontal fibers.
struct SquareOnOrbit {
    total: CochainComplex,
    syn: Vec<CochainComplex>,
    left_right: [ChainMap; 2],
}

fn square_on_orbit(ring: ResidueRing, i: u64, j: u64, cutoff: u32) -> Result<SquareOnOrbit> {
    let models: Vec<WeightedComplex> = descent_corners(ring)
        .iter()
        .map(|&m| WeightedComplex::orbit(m, j, cutoff))
        .collect::<Result<_>>()?;
    let ab = syntomic_comparison(&models[0], &models[1], i)?;
    let cd = syntomic_comparison(&models[2], &models[3], i)?;
    let ac = syntomic_comparison(&models[0], &models[2], i)?;
    let bd = syntomic_comparison(&models[1], &models[3], i)?;
    let vertical = ab.induced_on_fibers(&cd, &ac, &bd)?;
    let total = CochainComplex::fiber(&vertical)?;
    let syn = models
        .iter()
        .map(|m| m.syntomic(i))
        .collect::<Result<Vec<_>>>()?;
    Ok(SquareOnOrbit {
        total,
        syn,
        left_right: [ac, bd],
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentOrbit {
    pub orbit: u64,
    pub cutoff: u32,
    pub total: Vec<FinPModule>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentReport {
    pub p: u64,
    pub i: u64,
    pub precision: u32,
    pub orbit_bound: u64,
    /// Weight-0 syntomic cohomology of each corner.
    pub corners_weight_zero: Vec<(String, Vec<FinPModule>)>,
    /// Homology of `fib(Syn_{k[x]} -> Syn_{(k[x],N)})` and
    /// `fib(Syn_k -> Syn_{(k,N)})` in weight 0, degrees `0..=3`.
    pub log_fibers_weight_zero: Vec<Vec<FinPModule>>,
    /// Integral homology of the total complex, degrees `0..=4`, per orbit.
    pub orbits: Vec<DescentOrbit>,
    pub checks: Vec<Check>,
    pub pass: bool,
}

/// Weight-0 syntomic cohomology of a corner, worked out by hand: the only
/// basis elements are `1` and, for log corners, `dlog x`, on which
/// `phi / p^i - can` is `p^{-i}p^{i} - p^i` and `p p^{-i}p^{i-1} - p^{i-1}`.
fn expected_weight_zero(ring: ResidueRing, log: bool, i: u64) -> Vec<FinPModule> {
    let w = FinPModule::with_free(ring, 1, []);
    let z = FinPModule::zero(ring);
    match (i, log) {
        (0, _) => vec![w.clone(), w, z],
        (1, true) => vec![z, w.clone(), w],
        _ => vec![z.clone(), z.clone(), z],
    }
}

/// The descent square for `(k, N) <- (k[x], N)`, `k <- k[x]`.
pub fn descent_square_check(p: u64, i: u64, precision: u32, orbit_bound: Option<u64>) -> Result<DescentReport> {
    let ring = ResidueRing::new(p, precision)?;
    let orbit_bound = orbit_bound.unwrap_or_else(|| default_orbit_bound(p, 1, i));
    let log_point = ModelParams::log_point(ring);

    let orbits: Vec<DescentOrbit> = orbit_indices(p, orbit_bound)
        .into_par_iter()
        .map(|j| {
            let compute = |m: u32| {
                let square = square_on_orbit(ring, i, j, m)?;
                (0..=square.total.top_degree())
                    .map(|k| square.total.homology(k))
                    .collect::<Result<Vec<_>>>()
            };
            let (total, cutoff) = if j == 0 {
                (compute(0)?, 0)
            } else {
                stabilize(j, initial_cutoff(&log_point, i, j), compute)?
            };
            Ok(DescentOrbit {
                orbit: j,
                cutoff,
                total,
            })
        })
        .collect::<Result<_>>()?;

    let square = square_on_orbit(ring, i, 0, 0)?;
    let corners_weight_zero: Vec<(String, Vec<FinPModule>)> = CORNER_NAMES
        .iter()
        .zip(&square.syn)
        .map(|(name, syn)| Ok((name.to_string(), homology_in_range(syn, SYNTOMIC_DEGREES)?)))
        .collect::<Result<_>>()?;
    let log_fibers_weight_zero: Vec<Vec<FinPModule>> = square
        .left_right
        .iter()
        .map(|map| CochainComplex::fiber(map)?.all_homology())
        .collect::<Result<_>>()?;

    let mut checks = vec![Check::new(
        "total complex torsion below cap",
        orbits
            .iter()
            .all(|o| o.total.iter().all(|h| h.is_torsion_below_cap())),
        format!("{} orbits, cap {precision}", orbits.len()),
    )];
    let corners_ok = descent_corners(ring)
        .iter()
        .zip(&corners_weight_zero)
        .all(|(m, (_, h))| *h == expected_weight_zero(ring, m.log, i));
    checks.push(Check::new(
        "weight-0 corners",
        corners_ok,
        corners_weight_zero
            .iter()
            .map(|(n, h)| format!("{n}: {}", render_degrees(h)))
            .collect::<Vec<_>>()
            .join("; "),
    ));
    if i == 1 {
        // cofiber of Syn_{k[x]} -> Syn_{(k[x],N)} is W[-1] + W[-2], i.e. the
        // fiber has W in degrees 2 and 3; likewise for k -> (k, N)
        let w = FinPModule::with_free(ring, 1, []);
        let z = FinPModule::zero(ring);
        let shape = vec![z.clone(), z, w.clone(), w];
        let matches = log_fibers_weight_zero.iter().all(|h| {
            h.len() >= 4 && h[..4] == shape[..] && h[4..].iter().all(|x| x.is_zero())
        });
        checks.push(Check::new(
            "weight-0 log cofibers are W[-1] + W[-2]",
            matches,
            log_fibers_weight_zero
                .iter()
                .map(|h| render_degrees(h))
                .collect::<Vec<_>>()
                .join("; "),
        ));
        checks.push(Check::new(
            "weight-0 exceptional summands cancel",
            orbits[0].total.iter().all(|h| h.is_zero()),
            render_degrees(&orbits[0].total),
        ));
    }
    let pass = all_pass(&checks);
    Ok(DescentReport {
        p,
        i,
        precision,
        orbit_bound,
        corners_weight_zero,
        log_fibers_weight_zero,
        orbits,
        checks,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, n: u32) -> ResidueRing {
        ResidueRing::new(p, n).unwrap()
    }

    #[test]
    fn orbit_examples() {
        let m = ModelParams::truncated_log(ring(2, 4), 2).unwrap();
        let o = syntomic_orbit(&m, 1, 1).unwrap();
        assert_eq!(o.degrees[1].exponents(), &[1]);
        assert!(o.degrees[0].is_zero() && o.degrees[2].is_zero());
        assert!(o.cutoff <= 3);

        let m = ModelParams::truncated_log(ring(2, 4), 3).unwrap();
        assert_eq!(syntomic_orbit(&m, 2, 5).unwrap().degrees[1].exponents(), &[1]);

        let m = ModelParams::truncated_log(ring(3, 4), 2).unwrap();
        assert!(syntomic_orbit(&m, 1, 2).unwrap().is_zero());
    }

    #[test]
    fn rejects_orbit_divisible_by_p() {
        let m = ModelParams::truncated_log(ring(3, 3), 1).unwrap();
        assert!(syntomic_orbit(&m, 1, 6).is_err());
    }

    #[test]
    fn closed_form_rows() {
        assert_eq!(closed_form(4, 0).terms, vec![(0, Summand::W), (1, Summand::W)]);
        assert_eq!(
            closed_form(4, 1).terms,
            vec![(1, Summand::BigWitt(3)), (1, Summand::W), (2, Summand::W)]
        );
        assert_eq!(closed_form(2, 3).terms, vec![(1, Summand::BigWitt(5))]);
    }

    #[test]
    fn render_big_witt() {
        assert_eq!(Summand::BigWitt(3).render(2), "bW_3 (Z/2^2 + Z/2)");
        assert_eq!(Summand::BigWitt(0).render(5), "bW_0 (0)");
    }

    #[test]
    fn small_totals() {
        let run = run_syntomic(2, 2, 1, None, None).unwrap();
        assert_eq!(run.comparison.status, Status::Pass, "{:?}", run.comparison);
        let run = run_syntomic(5, 1, 3, None, None).unwrap();
        assert_eq!(run.result.degrees[1].exponents(), &[1, 1]);
    }

    #[test]
    fn dropped_factor_is_a_mismatch() {
        let run = run_syntomic(2, 2, 1, None, None).unwrap();
        let r = ring(2, run.precision);
        let mut broken = run.result.degrees.clone();
        broken[1] = FinPModule::with_free(r, 1, []);
        let mut broken_next = run.comparison.computed_next.clone();
        broken_next[1] = FinPModule::with_free(r.with_precision(run.precision + 1).unwrap(), 1, []);
        let c = compare(&broken, &broken_next, &run.closed_form, r).unwrap();
        assert_eq!(c.status, Status::Mismatch);
        assert!(c.discrepancies.iter().any(|d| d.starts_with("degree 1")));
    }

    #[test]
    fn precision_one_cannot_separate() {
        let run = run_syntomic(2, 2, 1, Some(1), None).unwrap();
        assert_eq!(run.comparison.status, Status::PrecisionFailure);
    }
}
