//! Weight-graded two-term models of Nygaard-completed log prismatic
//! cohomology for `k[x]/x^e` (with or without the log structure `N -> x^N`),
//! `k`, `k[x]` and `(k[x], N)`, with `k = F_p`.
//!
//! In weight `n` the degree-0 basis element is `b0_n = x^n / q(n)!` and the
//! degree-1 element is `b1_n = x^n / q(n)! dlog x` (log) or
//! `x^{n-1} / q(n-1)! dx` (nonlog, `n >= 1`), where `q(n) = floor(n / e)`,
//! or `q = 0` when there are no divided powers. The Nygaard filtration is
//! generated in each weight and degree by `p^alpha * b`; the generators are
//! kept abstract and `can` is the scalar `p^alpha`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::padic::{
    factorial_ratio, ChainMap, CochainComplex, PMatrix, PadicScalar, ResidueRing,
};

/// Divided-power period of the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Period {
    /// Divided powers of `x^e`.
    Finite(u64),
    /// Plain polynomials, no divided powers.
    Polynomial,
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Period::Finite(e) => write!(f, "{e}"),
            Period::Polynomial => write!(f, "none"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ModelParams {
    pub ring: ResidueRing,
    pub period: Period,
    pub log: bool,
}

impl ModelParams {
    pub fn new(ring: ResidueRing, period: Period, log: bool) -> Result<Self> {
        if period == Period::Finite(0) {
            return Err(Error::InvalidArgument("period e must be positive".into()));
        }
        Ok(ModelParams { ring, period, log })
    }

    /// `(k[x]/x^e, N)`.
    pub fn truncated_log(ring: ResidueRing, e: u64) -> Result<Self> {
        Self::new(ring, Period::Finite(e), true)
    }

    /// `k`.
    pub fn point(ring: ResidueRing) -> Self {
        ModelParams {
            ring,
            period: Period::Finite(1),
            log: false,
        }
    }

    /// `(k, N)`.
    pub fn log_point(ring: ResidueRing) -> Self {
        ModelParams {
            ring,
            period: Period::Finite(1),
            log: true,
        }
    }

    /// `k[x]`.
    pub fn affine_line(ring: ResidueRing) -> Self {
        ModelParams {
            ring,
            period: Period::Polynomial,
            log: false,
        }
    }

    /// `(k[x], N)`.
    pub fn log_affine_line(ring: ResidueRing) -> Self {
        ModelParams {
            ring,
            period: Period::Polynomial,
            log: true,
        }
    }

    pub fn prime(&self) -> u64 {
        self.ring.prime()
    }

    pub fn with_precision(&self, precision: u32) -> Result<Self> {
        Ok(ModelParams {
            ring: self.ring.with_precision(precision)?,
            ..*self
        })
    }

    /// `floor(n / e)`, or `0` without divided powers.
    pub fn q(&self, n: u64) -> u64 {
        match self.period {
            Period::Finite(e) => n / e,
            Period::Polynomial => 0,
        }
    }

    pub fn has_basis(&self, degree: u8, weight: u64) -> bool {
        match degree {
            0 => true,
            1 => self.log || weight >= 1,
            _ => false,
        }
    }

    fn require_basis(&self, degree: u8, weight: u64) -> Result<()> {
        if self.has_basis(degree, weight) {
            Ok(())
        } else {
            Err(Error::NoSuchBasisElement { degree, weight })
        }
    }

    /// The `m` in the denominator `m!` of the basis element.
    fn denominator(&self, degree: u8, weight: u64) -> u64 {
        if degree == 1 && !self.log {
            self.q(weight - 1)
        } else {
            self.q(weight)
        }
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(p={}, e={}, {}, N={})",
            self.prime(),
            self.period,
            if self.log { "log" } else { "nonlog" },
            self.ring.precision()
        )
    }
}

/// Exponent `alpha` of the Nygaard generator `p^alpha * b` of `Fil^{>= i}`.
pub fn nygaard_exponent(params: &ModelParams, i: u64, degree: u8, weight: u64) -> Result<u64> {
    params.require_basis(degree, weight)?;
    let shift = if degree == 1 { 1 } else { 0 };
    Ok(i.saturating_sub(params.denominator(degree, weight) + shift))
}

/// `c_d(n)` with `d(b0_n) = c_d(n) b1_n`.
pub fn differential_coeff(params: &ModelParams, weight: u64) -> Result<u64> {
    params.require_basis(1, weight)?;
    if params.log {
        return Ok(weight);
    }
    // x^n / q(n)! -> n x^{n-1} / q(n)! dx; the denominator drops by one
    // factor exactly when e | n, and then n / q(n) = e
    let (q_now, q_prev) = (params.q(weight), params.q(weight - 1));
    Ok(if q_now == q_prev { weight } else { weight / q_now })
}

/// `phi / p^i` on the Nygaard generator at `(degree, weight)`: the target
/// weight `p * weight` and the coefficient on the target basis element.
pub fn frobenius_coeff(
    params: &ModelParams,
    i: u64,
    degree: u8,
    weight: u64,
) -> Result<(u64, PadicScalar)> {
    params.require_basis(degree, weight)?;
    let ring = params.ring;
    let p = ring.prime();
    let target = weight.checked_mul(p).ok_or(Error::WeightOverflow {
        orbit: weight,
        cutoff: 1,
    })?;
    let alpha = nygaard_exponent(params, i, degree, weight)?;
    let (hi, lo) = (params.denominator(degree, target), params.denominator(degree, weight));
    let (mut v, unit) = factorial_ratio(&ring, hi, lo)?;
    if degree == 1 {
        // phi(dlog x) = p dlog x and phi(dx) = p x^{p-1} dx
        v += 1;
    }
    let net = alpha as i64 - i as i64 + v as i64;
    if net < 0 {
        return Err(Error::NegativeDividedPower {
            degree,
            weight,
            exponent: net,
        });
    }
    let scalar = ring.prime_power(net.min(u32::MAX as i64) as u32) * ring.element(unit as i128);
    Ok((target, scalar))
}

/// `{j, jp, ..., jp^M}`, or `{0}` for `j = 0`.
pub fn orbit_weights(p: u64, j: u64, cutoff: u32) -> Result<Vec<u64>> {
    if j == 0 {
        return Ok(vec![0]);
    }
    let mut out = Vec::with_capacity(cutoff as usize + 1);
    let mut w = j;
    out.push(w);
    for _ in 0..cutoff {
        w = w.checked_mul(p).ok_or(Error::WeightOverflow { orbit: j, cutoff })?;
        out.push(w);
    }
    Ok(out)
}

/// The model restricted to a finite set of weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedComplex {
    params: ModelParams,
    weights: Vec<u64>,
    weights1: Vec<u64>,
}

impl WeightedComplex {
    pub fn new(params: ModelParams, weights: Vec<u64>) -> Self {
        let weights1 = weights
            .iter()
            .copied()
            .filter(|&n| params.has_basis(1, n))
            .collect();
        WeightedComplex {
            params,
            weights,
            weights1,
        }
    }

    pub fn orbit(params: ModelParams, j: u64, cutoff: u32) -> Result<Self> {
        Ok(Self::new(params, orbit_weights(params.prime(), j, cutoff)?))
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn weights(&self, degree: u8) -> &[u64] {
        if degree == 0 {
            &self.weights
        } else {
            &self.weights1
        }
    }

    fn index(&self, degree: u8, weight: u64) -> Option<usize> {
        self.weights(degree).iter().position(|&n| n == weight)
    }

    fn ring(&self) -> ResidueRing {
        self.params.ring
    }

    fn differential(&self, scale: impl Fn(u64) -> Result<PadicScalar>) -> Result<PMatrix> {
        let mut d = PMatrix::zeros(self.ring(), self.weights1.len(), self.weights.len());
        for (c, &n) in self.weights.iter().enumerate() {
            if let Some(r) = self.index(1, n) {
                let coeff = self.ring().element(differential_coeff(&self.params, n)? as i128);
                d.set(r, c, coeff * scale(n)?);
            }
        }
        Ok(d)
    }

    pub fn full(&self) -> Result<CochainComplex> {
        let one = self.ring().one();
        let d = self.differential(|_| Ok(one))?;
        CochainComplex::new(self.ring(), vec![self.weights.len(), self.weights1.len()], vec![d])
    }

    /// `Fil^{>= i}` on the abstract generators `p^alpha * b`.
    pub fn nygaard(&self, i: u64) -> Result<CochainComplex> {
        let params = self.params;
        let ring = self.ring();
        let d = self.differential(|n| {
            let gap = nygaard_exponent(&params, i, 0, n)? - nygaard_exponent(&params, i, 1, n)?;
            Ok(ring.prime_power(gap as u32))
        })?;
        CochainComplex::new(ring, vec![self.weights.len(), self.weights1.len()], vec![d])
    }

    fn diagonal(&self, degree: u8, entry: impl Fn(u64) -> Result<PadicScalar>) -> Result<PMatrix> {
        let ws = self.weights(degree);
        let mut m = PMatrix::zeros(self.ring(), ws.len(), ws.len());
        for (k, &n) in ws.iter().enumerate() {
            m.set(k, k, entry(n)?);
        }
        Ok(m)
    }

    fn can_components(&self, i: u64) -> Result<Vec<PMatrix>> {
        let params = self.params;
        let ring = self.ring();
        (0..2u8)
            .map(|deg| {
                self.diagonal(deg, |n| {
                    Ok(ring.prime_power(nygaard_exponent(&params, i, deg, n)? as u32))
                })
            })
            .collect()
    }

    /// Divided Frobenius components; images above the top weight are dropped.
    fn frobenius_components(&self, i: u64) -> Result<Vec<PMatrix>> {
        (0..2u8)
            .map(|deg| {
                let ws = self.weights(deg);
                let mut m = PMatrix::zeros(self.ring(), ws.len(), ws.len());
                for (c, &n) in ws.iter().enumerate() {
                    let (target, scalar) = match frobenius_coeff(&self.params, i, deg, n) {
                        Err(Error::WeightOverflow { .. }) => continue,
                        other => other?,
                    };
                    if let Some(r) = self.index(deg, target) {
                        m.add_to(r, c, scalar);
                    }
                }
                Ok(m)
            })
            .collect()
    }

    pub fn can(&self, i: u64) -> Result<ChainMap> {
        ChainMap::new(self.nygaard(i)?, self.full()?, self.can_components(i)?)
    }

    pub fn divided_frobenius(&self, i: u64) -> Result<ChainMap> {
        ChainMap::new(self.nygaard(i)?, self.full()?, self.frobenius_components(i)?)
    }

    /// `phi / p^i - can : Fil^{>= i} -> full`.
    pub fn syntomic_map(&self, i: u64) -> Result<ChainMap> {
        self.divided_frobenius(i)?.difference(&self.can(i)?)
    }

    /// The mapping fiber of [`Self::syntomic_map`], in degrees 0, 1, 2.
    pub fn syntomic(&self, i: u64) -> Result<CochainComplex> {
        CochainComplex::fiber(&self.syntomic_map(i)?)
    }
}

/// The two differentials of the orbit syntomic complex.
pub fn orbit_fiber_complex(params: &ModelParams, i: u64, j: u64, cutoff: u32) -> Result<(PMatrix, PMatrix)> {
    let syn = WeightedComplex::orbit(*params, j, cutoff)?.syntomic(i)?;
    Ok((syn.diff(0), syn.diff(1)))
}

/// Coefficient of `b_source` on `b_target` under `x^n -> x^n`,
/// `dx = x dlog x`.
fn basis_ratio(source: &ModelParams, target: &ModelParams, degree: u8, weight: u64) -> Result<(u64, u64)> {
    // x^{n-1} dx / m! = x^n dlog x / m!, so only the denominators differ
    factorial_ratio(
        &source.ring,
        target.denominator(degree, weight),
        source.denominator(degree, weight),
    )
}

fn check_comparable(source: &WeightedComplex, target: &WeightedComplex) -> Result<()> {
    source.ring().ensure_same(&target.ring())?;
    let forgets_log = source.params.log && !target.params.log;
    let loses_divided_powers = matches!(
        (source.params.period, target.params.period),
        (Period::Finite(_), Period::Polynomial)
    );
    let refines = match (source.params.period, target.params.period) {
        (Period::Finite(a), Period::Finite(b)) => b % a != 0 || a > b,
        _ => false,
    };
    if forgets_log || loses_divided_powers || refines || source.weights != target.weights {
        return Err(Error::InvalidArgument(format!(
            "no comparison map from {} to {}",
            source.params, target.params
        )));
    }
    Ok(())
}

/// Comparison maps of the Nygaard pieces and of the full complexes between
/// two models on the same weights: divided-power inclusion
/// `x^n / q_S(n)! -> (q_T(n)! / q_S(n)!) x^n / q_T(n)!`, and `dx = x dlog x`.
pub fn comparison_maps(source: &WeightedComplex, target: &WeightedComplex, i: u64) -> Result<(ChainMap, ChainMap)> {
    check_comparable(source, target)?;
    let ring = source.ring();
    let mut on_fil = Vec::with_capacity(2);
    let mut on_full = Vec::with_capacity(2);
    for deg in 0..2u8 {
        let (sw, tw) = (source.weights(deg), target.weights(deg));
        let mut fil = PMatrix::zeros(ring, tw.len(), sw.len());
        let mut full = PMatrix::zeros(ring, tw.len(), sw.len());
        for (c, &n) in sw.iter().enumerate() {
            let r = target
                .index(deg, n)
                .ok_or(Error::NoSuchBasisElement { degree: deg, weight: n })?;
            let (v, unit) = basis_ratio(&source.params, &target.params, deg, n)?;
            let ratio = ring.prime_power(v as u32) * ring.element(unit as i128);
            full.set(r, c, ratio);
            let gap = nygaard_exponent(&source.params, i, deg, n)? as i64
                - nygaard_exponent(&target.params, i, deg, n)? as i64
                + v as i64;
            if gap < 0 {
                return Err(Error::NegativeDividedPower {
                    degree: deg,
                    weight: n,
                    exponent: gap,
                });
            }
            fil.set(r, c, ring.prime_power(gap as u32) * ring.element(unit as i128));
        }
        on_fil.push(fil);
        on_full.push(full);
    }
    Ok((
        ChainMap::new(source.nygaard(i)?, target.nygaard(i)?, on_fil)?,
        ChainMap::new(source.full()?, target.full()?, on_full)?,
    ))
}

/// The induced map of syntomic complexes `Syn_S(i) -> Syn_T(i)`.
pub fn syntomic_comparison(source: &WeightedComplex, target: &WeightedComplex, i: u64) -> Result<ChainMap> {
    let (on_fil, on_full) = comparison_maps(source, target, i)?;
    source
        .syntomic_map(i)?
        .induced_on_fibers(&target.syntomic_map(i)?, &on_fil, &on_full)
}
