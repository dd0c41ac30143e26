use std::fmt;

use super::{PadicScalar, ResidueRing};
use crate::error::{Error, Result};

/// Dense row-major matrix over `Z/p^N`. Zero rows or zero columns are allowed
/// and stand for zero maps to or from the zero module.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PMatrix {
    ring: ResidueRing,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl PMatrix {
    pub fn zeros(ring: ResidueRing, rows: usize, cols: usize) -> Self {
        PMatrix {
            ring,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(ring: ResidueRing, n: usize) -> Self {
        let mut m = PMatrix::zeros(ring, n, n);
        for k in 0..n {
            m.data[k * n + k] = 1 % ring.modulus();
        }
        m
    }

    /// Builds a matrix from integer rows; every row must have `cols` entries.
    pub fn from_rows(ring: ResidueRing, cols: usize, rows: &[Vec<i128>]) -> Result<Self> {
        let mut m = PMatrix::zeros(ring, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {r} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                m.data[r * cols + c] = ring.reduce(v);
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> ResidueRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> PadicScalar {
        PadicScalar {
            ring: self.ring,
            residue: self.data[r * self.cols + c],
        }
    }

    pub(crate) fn raw(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: PadicScalar) {
        assert_eq!(value.ring, self.ring, "entry from a different residue ring");
        self.data[r * self.cols + c] = value.residue;
    }

    pub(crate) fn set_raw(&mut self, r: usize, c: usize, residue: u64) {
        self.data[r * self.cols + c] = residue;
    }

    pub fn add_to(&mut self, r: usize, c: usize, value: PadicScalar) {
        assert_eq!(value.ring, self.ring, "entry from a different residue ring");
        let idx = r * self.cols + c;
        self.data[idx] = self.ring.add(self.data[idx], value.residue);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, rhs: &PMatrix) -> Result<PMatrix> {
        self.ring.ensure_same(&rhs.ring)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let ring = self.ring;
        let mut out = PMatrix::zeros(ring, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.data[k * rhs.cols + c];
                    if b != 0 {
                        let idx = r * rhs.cols + c;
                        out.data[idx] = ring.add(out.data[idx], ring.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(0, |acc, c| {
                    self.ring
                        .add(acc, self.ring.mul(self.data[r * self.cols + c], v[c]))
                })
            })
            .collect()
    }

    pub fn sub(&self, rhs: &PMatrix) -> Result<PMatrix> {
        self.same_shape(rhs)?;
        let ring = self.ring;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| ring.sub(a, b))
            .collect();
        Ok(PMatrix { data, ..*self })
    }

    pub fn add(&self, rhs: &PMatrix) -> Result<PMatrix> {
        self.same_shape(rhs)?;
        let ring = self.ring;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(&a, &b)| ring.add(a, b))
            .collect();
        Ok(PMatrix { data, ..*self })
    }

    pub fn neg(&self) -> PMatrix {
        let ring = self.ring;
        PMatrix {
            data: self.data.iter().map(|&a| ring.neg(a)).collect(),
            ..*self
        }
    }

    fn same_shape(&self, rhs: &PMatrix) -> Result<()> {
        self.ring.ensure_same(&rhs.ring)?;
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn transpose(&self) -> PMatrix {
        let mut out = PMatrix::zeros(self.ring, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        out
    }

    /// Same residues read at a lower precision.
    pub fn reduce_to(&self, ring: ResidueRing) -> Result<PMatrix> {
        if ring.prime() != self.ring.prime() || ring.precision() > self.ring.precision() {
            return Err(Error::InvalidArgument(format!(
                "cannot reduce {} to {}",
                self.ring, ring
            )));
        }
        Ok(PMatrix {
            ring,
            data: self.data.iter().map(|&a| a % ring.modulus()).collect(),
            ..*self
        })
    }

    /// Assembles a block matrix. `blocks[i][j]` may be `None` for a zero
    /// block; row heights and column widths are given explicitly so that
    /// all-`None` rows and columns are still well defined.
    pub fn block(
        ring: ResidueRing,
        heights: &[usize],
        widths: &[usize],
        blocks: &[Vec<Option<&PMatrix>>],
    ) -> Result<PMatrix> {
        let rows: usize = heights.iter().sum();
        let cols: usize = widths.iter().sum();
        let mut out = PMatrix::zeros(ring, rows, cols);
        let mut r0 = 0;
        for (bi, &h) in heights.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &w) in widths.iter().enumerate() {
                if let Some(Some(b)) = blocks.get(bi).map(|row| row.get(bj).copied().flatten()) {
                    ring.ensure_same(&b.ring)?;
                    if b.rows != h || b.cols != w {
                        return Err(Error::DimensionMismatch(format!(
                            "block ({bi},{bj}) is {}x{}, expected {h}x{w}",
                            b.rows, b.cols
                        )));
                    }
                    for r in 0..h {
                        for c in 0..w {
                            out.data[(r0 + r) * cols + c0 + c] = b.data[r * w + c];
                        }
                    }
                }
                c0 += w;
            }
            r0 += h;
        }
        Ok(out)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    pub(crate) fn scale_row(&mut self, row: usize, factor: u64) {
        for c in 0..self.cols {
            let idx = row * self.cols + c;
            self.data[idx] = self.ring.mul(self.data[idx], factor);
        }
    }

    /// `row[target] -= factor * row[source]`
    pub(crate) fn row_axpy(&mut self, target: usize, source: usize, factor: u64) {
        if factor == 0 {
            return;
        }
        for c in 0..self.cols {
            let s = self.data[source * self.cols + c];
            if s != 0 {
                let idx = target * self.cols + c;
                self.data[idx] = self.ring.sub(self.data[idx], self.ring.mul(factor, s));
            }
        }
    }

    /// `col[target] -= factor * col[source]`
    pub(crate) fn col_axpy(&mut self, target: usize, source: usize, factor: u64) {
        if factor == 0 {
            return;
        }
        for r in 0..self.rows {
            let s = self.data[r * self.cols + source];
            if s != 0 {
                let idx = r * self.cols + target;
                self.data[idx] = self.ring.sub(self.data[idx], self.ring.mul(factor, s));
            }
        }
    }
}

impl fmt::Display for PMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} over {}", self.rows, self.cols, self.ring)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.get(r, c).signed().to_string())
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
