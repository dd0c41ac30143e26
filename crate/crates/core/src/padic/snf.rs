use super::PMatrix;

/// Smith normal form over the local ring `Z/p^N`.
///
/// `left * m * right = diag(p^{exponents[0]}, p^{exponents[1]}, ...)`, with
/// `exponents` nondecreasing, of length `min(rows, cols)`, and exponent `N`
/// standing for a zero diagonal entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub exponents: Vec<u32>,
    pub left: PMatrix,
    pub right: PMatrix,
    pub right_inverse: PMatrix,
}

impl SmithForm {
    /// Number of diagonal entries that are nonzero at this precision.
    pub fn rank(&self) -> usize {
        let cap = self.left.ring().precision();
        self.exponents.iter().filter(|&&e| e < cap).count()
    }

    /// Columns of `right` spanning the kernel of the lifted matrix as seen at
    /// this precision (the columns past the rank).
    pub fn kernel_basis(&self) -> PMatrix {
        let rank = self.rank();
        let n = self.right.cols();
        let mut out = PMatrix::zeros(self.right.ring(), self.right.rows(), n - rank);
        for r in 0..self.right.rows() {
            for c in rank..n {
                out.set_raw(r, c - rank, self.right.raw(r, c));
            }
        }
        out
    }
}

/// Pivots on the entry of least valuation, ties broken in row-major order,
/// so the output is a deterministic function of the input.
pub fn smith_normal_form(m: &PMatrix) -> SmithForm {
    let ring = m.ring();
    let (rows, cols) = (m.rows(), m.cols());
    let mut work = m.clone();
    let mut left = PMatrix::identity(ring, rows);
    let mut right = PMatrix::identity(ring, cols);
    let mut right_inverse = PMatrix::identity(ring, cols);
    let mut exponents = Vec::with_capacity(rows.min(cols));

    for k in 0..rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for r in k..rows {
            for c in k..cols {
                let a = work.raw(r, c);
                if a == 0 {
                    continue;
                }
                let v = ring.valuation(a);
                if best.map_or(true, |(bv, _, _)| v < bv) {
                    best = Some((v, r, c));
                    if v == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((v, pr, pc)) = best else {
            exponents.extend(std::iter::repeat(ring.precision()).take(rows.min(cols) - k));
            break;
        };

        work.swap_rows(k, pr);
        left.swap_rows(k, pr);
        work.swap_cols(k, pc);
        right.swap_cols(k, pc);
        right_inverse.swap_rows(k, pc);

        // normalize the pivot to exactly p^v
        let (_, unit) = ring.split(work.raw(k, k));
        let unit_inv = ring.inverse(unit % ring.modulus()).expect("unit part is invertible");
        work.scale_row(k, unit_inv);
        left.scale_row(k, unit_inv);

        // every remaining entry has valuation >= v, so dividing by p^v is exact
        let pv = ring.pow_residue(v);
        for r in k + 1..rows {
            let a = work.raw(r, k);
            if a != 0 {
                let (w, u) = ring.split(a);
                let factor = ring.mul(u % ring.modulus(), ring.pow_residue(w - v));
                work.row_axpy(r, k, factor);
                left.row_axpy(r, k, factor);
            }
        }
        for c in k + 1..cols {
            let a = work.raw(k, c);
            if a != 0 {
                let (w, u) = ring.split(a);
                let factor = ring.mul(u % ring.modulus(), ring.pow_residue(w - v));
                work.col_axpy(c, k, factor);
                right.col_axpy(c, k, factor);
                // (R E)^{-1} = E^{-1} R^{-1}: row k of R^{-1} gains factor * row c
                right_inverse.row_axpy(k, c, ring.neg(factor));
            }
        }
        debug_assert_eq!(work.raw(k, k), pv);
        exponents.push(v);
    }

    SmithForm {
        exponents,
        left,
        right,
        right_inverse,
    }
}
