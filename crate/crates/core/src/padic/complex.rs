use super::{smith_normal_form, FinPModule, PMatrix, ResidueRing};
use crate::error::{Error, Result};

fn check_pair(d_in: &PMatrix, d_out: &PMatrix) -> Result<()> {
    d_in.ring().ensure_same(&d_out.ring())?;
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch(format!(
            "incoming map lands in rank {}, outgoing map starts from rank {}",
            d_in.rows(),
            d_out.cols()
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::CompositionNotZero(format!(
            "{}x{} after {}x{}",
            d_out.rows(),
            d_out.cols(),
            d_in.rows(),
            d_in.cols()
        )));
    }
    Ok(())
}

/// Homology `ker(d_out) / im(d_in)` of the p-adic lift of a stretch
/// `A -> B -> C` of free modules, read at precision `N`.
///
/// The kernel is the saturated kernel of the lift, so the result is
/// `Z_p^{rank B - rank d_out - rank d_in}` (reported as at-cap factors) plus
/// `Z/p^d` for every elementary divisor `p^d` of `d_in` with `0 < d < N`.
/// This differs from the homology of the complex reduced mod `p^N` exactly
/// by the Tor terms of the universal coefficient sequence; see
/// [`homology_mod`] for the latter.
pub fn homology(d_in: &PMatrix, d_out: &PMatrix) -> Result<FinPModule> {
    check_pair(d_in, d_out)?;
    let ring = d_in.ring();
    let n = ring.precision();
    let incoming = smith_normal_form(d_in);
    let outgoing = smith_normal_form(d_out);
    let used = incoming.rank() + outgoing.rank();
    let free = d_in
        .rows()
        .checked_sub(used)
        .ok_or(Error::PrecisionExhausted {
            precision: n,
            degree: 0,
        })?;
    let torsion = incoming.exponents.iter().copied().filter(|&d| d > 0 && d < n);
    Ok(FinPModule::with_free(ring, free, torsion))
}

/// Homology of the complex of `Z/p^N`-modules itself: `ker(d_out)` and
/// `im(d_in)` are taken inside `(Z/p^N)^rank`.
///
/// In the Smith coordinates `y = right^{-1} x` of `d_out`, the kernel is
/// `K = (+) p^{N - d_k} Z/p^N`. Lifting to `Z_p` lattices, the homology is
/// `K~ / I~` with `I~` spanned by `right^{-1} d_in` and `p^N`; rescaling rows
/// into the basis of `K~` turns this into the cokernel of an integer matrix,
/// whose invariants are again a Smith form (taken one digit finer so that
/// `Z/p^N` factors are not confused with zero).
pub fn homology_mod(d_in: &PMatrix, d_out: &PMatrix) -> Result<FinPModule> {
    check_pair(d_in, d_out)?;
    let ring = d_in.ring();
    let n = ring.precision();
    let rank = d_in.rows();
    let outgoing = smith_normal_form(d_out);

    // d_k for each coordinate: the kernel allows p^{N - d_k}
    let mut allowed: Vec<u32> = vec![n; rank];
    for (k, &d) in outgoing.exponents.iter().enumerate() {
        allowed[k] = d;
    }

    let image = outgoing.right_inverse.mul(d_in)?;
    let fine = ring.with_precision(n + 1)?;
    let mut generators = PMatrix::zeros(fine, rank, d_in.cols() + rank);
    for r in 0..rank {
        let shift = ring.prime().pow(n - allowed[r]);
        for c in 0..d_in.cols() {
            let a = image.raw(r, c);
            debug_assert_eq!(a % shift, 0, "image must lie in the kernel");
            generators.set_raw(r, c, (a / shift) % fine.modulus());
        }
        generators.set_raw(r, d_in.cols() + r, fine.pow_residue(allowed[r]));
    }
    let relations = smith_normal_form(&generators);
    let exponents = relations.exponents.iter().copied().filter(|&d| d > 0);
    Ok(FinPModule::from_exponents(ring, exponents))
}

/// A bounded cochain complex `T^0 -> T^1 -> ... -> T^k` of free modules.
/// `diffs[k]` has shape `dims[k+1] x dims[k]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CochainComplex {
    ring: ResidueRing,
    dims: Vec<usize>,
    diffs: Vec<PMatrix>,
}

impl CochainComplex {
    pub fn new(ring: ResidueRing, dims: Vec<usize>, diffs: Vec<PMatrix>) -> Result<Self> {
        if dims.is_empty() || diffs.len() + 1 != dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} ranks need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            ring.ensure_same(&d.ring())?;
            if d.cols() != dims[k] || d.rows() != dims[k + 1] {
                return Err(Error::DimensionMismatch(format!(
                    "differential {k} is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    dims[k + 1],
                    dims[k]
                )));
            }
        }
        for (k, pair) in diffs.windows(2).enumerate() {
            if !pair[1].mul(&pair[0])?.is_zero() {
                return Err(Error::CompositionNotZero(format!("degrees {k} -> {}", k + 2)));
            }
        }
        Ok(CochainComplex { ring, dims, diffs })
    }

    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn diffs(&self) -> &[PMatrix] {
        &self.diffs
    }

    /// Highest degree carried (possibly with rank zero).
    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }

    /// The differential leaving `degree`, with zero-size matrices off the ends.
    pub fn diff(&self, degree: usize) -> PMatrix {
        self.diffs
            .get(degree)
            .cloned()
            .unwrap_or_else(|| PMatrix::zeros(self.ring, 0, self.dim(degree)))
    }

    fn diff_into(&self, degree: usize) -> PMatrix {
        if degree == 0 {
            PMatrix::zeros(self.ring, self.dim(0), 0)
        } else {
            self.diff(degree - 1)
        }
    }

    pub fn homology(&self, degree: usize) -> Result<FinPModule> {
        homology(&self.diff_into(degree), &self.diff(degree)).map_err(|e| match e {
            Error::PrecisionExhausted { precision, .. } => {
                Error::PrecisionExhausted { precision, degree }
            }
            other => other,
        })
    }

    pub fn homology_mod(&self, degree: usize) -> Result<FinPModule> {
        homology_mod(&self.diff_into(degree), &self.diff(degree))
    }

    /// Homology in every degree `0..=top_degree`.
    pub fn all_homology(&self) -> Result<Vec<FinPModule>> {
        (0..self.dims.len()).map(|k| self.homology(k)).collect()
    }

    /// Pads with zero modules up to `top` so complexes of different lengths
    /// can be compared or mapped.
    pub fn extended_to(&self, top: usize) -> CochainComplex {
        let mut dims = self.dims.clone();
        let mut diffs = self.diffs.clone();
        while dims.len() <= top {
            let last = *dims.last().unwrap();
            dims.push(0);
            diffs.push(PMatrix::zeros(self.ring, 0, last));
        }
        CochainComplex {
            ring: self.ring,
            dims,
            diffs,
        }
    }

    /// Mapping fiber of `map: X -> Y`: `fib^k = X^k (+) Y^{k-1}` with
    /// `(x, y) -> (dx, f(x) - dy)`.
    pub fn fiber(map: &ChainMap) -> Result<CochainComplex> {
        let x = &map.source;
        let y = &map.target;
        let ring = x.ring;
        let top = x.top_degree().max(y.top_degree() + 1);
        let dims: Vec<usize> = (0..=top)
            .map(|k| x.dim(k) + if k == 0 { 0 } else { y.dim(k - 1) })
            .collect();
        let mut diffs = Vec::with_capacity(top);
        for k in 0..top {
            let (xk, xk1) = (x.dim(k), x.dim(k + 1));
            let yprev = if k == 0 { 0 } else { y.dim(k - 1) };
            let yk = y.dim(k);
            let dx = x.diff(k).clone_shaped(ring, xk1, xk);
            let f = map.component(k);
            let neg_dy = if k == 0 {
                PMatrix::zeros(ring, yk, 0)
            } else {
                y.diff(k - 1).clone_shaped(ring, yk, yprev).neg()
            };
            diffs.push(PMatrix::block(
                ring,
                &[xk1, yk],
                &[xk, yprev],
                &[vec![Some(&dx), None], vec![Some(&f), Some(&neg_dy)]],
            )?);
        }
        CochainComplex::new(ring, dims, diffs)
    }
}

impl PMatrix {
    /// Returns `self` unless one of the requested dimensions is zero, in
    /// which case a zero-size matrix of the requested shape is returned.
    fn clone_shaped(&self, ring: ResidueRing, rows: usize, cols: usize) -> PMatrix {
        if self.rows() == rows && self.cols() == cols {
            self.clone()
        } else {
            debug_assert!(self.is_zero());
            PMatrix::zeros(ring, rows, cols)
        }
    }
}

/// A degreewise map of cochain complexes, checked to commute with the
/// differentials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: CochainComplex,
    target: CochainComplex,
    maps: Vec<PMatrix>,
}

impl ChainMap {
    pub fn new(source: CochainComplex, target: CochainComplex, maps: Vec<PMatrix>) -> Result<Self> {
        source.ring.ensure_same(&target.ring)?;
        let top = source.top_degree().max(target.top_degree());
        let source = source.extended_to(top);
        let target = target.extended_to(top);
        let mut full = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let m = match maps.get(k) {
                Some(m) => {
                    if m.cols() != source.dim(k) || m.rows() != target.dim(k) {
                        return Err(Error::DimensionMismatch(format!(
                            "chain map component {k} is {}x{}, expected {}x{}",
                            m.rows(),
                            m.cols(),
                            target.dim(k),
                            source.dim(k)
                        )));
                    }
                    m.clone()
                }
                None => PMatrix::zeros(source.ring, target.dim(k), source.dim(k)),
            };
            full.push(m);
        }
        for k in 0..top {
            let lhs = target.diff(k).mul(&full[k])?;
            let rhs = full[k + 1].mul(&source.diff(k))?;
            if lhs != rhs {
                return Err(Error::NotAChainMap { degree: k });
            }
        }
        Ok(ChainMap {
            source,
            target,
            maps: full,
        })
    }

    pub fn source(&self) -> &CochainComplex {
        &self.source
    }

    pub fn target(&self) -> &CochainComplex {
        &self.target
    }

    pub fn component(&self, degree: usize) -> PMatrix {
        self.maps.get(degree).cloned().unwrap_or_else(|| {
            PMatrix::zeros(
                self.source.ring,
                self.target.dim(degree),
                self.source.dim(degree),
            )
        })
    }

    /// `self - other`, for two maps with the same source and target.
    pub fn difference(&self, other: &ChainMap) -> Result<ChainMap> {
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<Vec<_>>>()?;
        ChainMap::new(self.source.clone(), self.target.clone(), maps)
    }

    /// Given a commutative square `self: X -> Y`, `other: X' -> Y'`,
    /// `on_source: X -> X'`, `on_target: Y -> Y'`, the induced map
    /// `fib(self) -> fib(other)`, `(x, y) -> (h x, h' y)`.
    pub fn induced_on_fibers(
        &self,
        other: &ChainMap,
        on_source: &ChainMap,
        on_target: &ChainMap,
    ) -> Result<ChainMap> {
        let from = CochainComplex::fiber(self)?;
        let to = CochainComplex::fiber(other)?;
        let ring = from.ring;
        let top = from.top_degree().max(to.top_degree());
        let mut maps = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let hx = on_source.component(k);
            let (hy, yk, yk2) = if k == 0 {
                (PMatrix::zeros(ring, 0, 0), 0, 0)
            } else {
                (
                    on_target.component(k - 1),
                    self.target.dim(k - 1),
                    other.target.dim(k - 1),
                )
            };
            let xk = self.source.dim(k);
            let xk2 = other.source.dim(k);
            maps.push(PMatrix::block(
                ring,
                &[xk2, yk2],
                &[xk, yk],
                &[vec![Some(&hx.clone_shaped(ring, xk2, xk)), None], vec![None, Some(&hy.clone_shaped(ring, yk2, yk))]],
            )?);
        }
        ChainMap::new(from, to, maps)
    }
}
