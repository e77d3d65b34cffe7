//! Packed symmetric banded matrices with a banded Cholesky factorization.
//!
//! Storage is row-major: row i holds the diagonal entry followed by the w
//! superdiagonal entries A[i][i+1..=i+w] (zero-padded past the edge), so the
//! matrix is symmetric by construction.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SymBandMatrix {
    pub n: usize,
    pub halfband: usize,
    data: Vec<f64>,
}

impl SymBandMatrix {
    pub fn zeros(n: usize, halfband: usize) -> Self {
        assert!(n > 0);
        let w = halfband.min(n - 1);
        SymBandMatrix {
            n,
            halfband: w,
            data: vec![0.0; n * (w + 1)],
        }
    }

    #[inline]
    fn idx(&self, i: usize, off: usize) -> usize {
        i * (self.halfband + 1) + off
    }

    /// Entry (i, j); zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        let off = hi - lo;
        if off > self.halfband || hi >= self.n {
            0.0
        } else {
            self.data[self.idx(lo, off)]
        }
    }

    /// Set entry (i, j) (and its mirror). Panics outside the band.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let (lo, hi) = if i <= j { (i, j) } else { (j, i) };
        let off = hi - lo;
        assert!(off <= self.halfband && hi < self.n, "({i},{j}) outside band");
        let k = self.idx(lo, off);
        self.data[k] = v;
    }

    pub fn scale(&mut self, alpha: f64) {
        for v in &mut self.data {
            *v *= alpha;
        }
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        let mut out = self.clone();
        out.scale(alpha);
        out
    }

    /// self += alpha * other. Requires other's band to fit inside self's.
    pub fn add_scaled(&mut self, other: &SymBandMatrix, alpha: f64) -> Result<()> {
        if other.n != self.n {
            return Err(Error::Assembly("dimension mismatch in add_scaled".into()));
        }
        if other.halfband > self.halfband {
            return Err(Error::Assembly("band of addend exceeds target band".into()));
        }
        for i in 0..self.n {
            for off in 0..=other.halfband.min(self.n - 1 - i) {
                let k = self.idx(i, off);
                self.data[k] += alpha * other.data[other.idx(i, off)];
            }
        }
        Ok(())
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            let mut acc = self.data[self.idx(i, 0)] * x[i];
            let top = self.halfband.min(self.n - 1 - i);
            for off in 1..=top {
                let v = self.data[self.idx(i, off)];
                acc += v * x[i + off];
                y[i + off] += v * x[i];
            }
            y[i] += acc;
        }
        y
    }

    /// Quadratic form x' A x.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        self.matvec(x).iter().zip(x).map(|(a, b)| a * b).sum()
    }

    pub fn diag(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.data[self.idx(i, 0)]).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; self.n]; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                out[i][j] = self.get(i, j);
            }
        }
        out
    }

    /// Banded Cholesky A = L L'. Fails on non-positive pivots.
    pub fn cholesky(&self) -> Result<BandCholesky> {
        let n = self.n;
        let w = self.halfband;
        // lower-band packed: row i holds L[i][i-w..=i] as [off w .. off 0]
        let mut l = vec![0.0; n * (w + 1)];
        let at = |i: usize, j: usize| -> usize {
            // j <= i, i - j <= w; slot (i, i-j)
            i * (w + 1) + (i - j)
        };
        for i in 0..n {
            let j0 = i.saturating_sub(w);
            for j in j0..=i {
                let mut sum = self.get(i, j);
                let k0 = j0.max(j.saturating_sub(w));
                for k in k0..j {
                    sum -= l[at(i, k)] * l[at(j, k)];
                }
                if i == j {
                    if sum <= 0.0 {
                        return Err(Error::Solver(format!(
                            "Cholesky breakdown at pivot {i}: {sum:e}"
                        )));
                    }
                    l[at(i, i)] = sum.sqrt();
                } else {
                    l[at(i, j)] = sum / l[at(j, j)];
                }
            }
        }
        Ok(BandCholesky { n, halfband: w, l })
    }
}

/// Banded lower-triangular Cholesky factor.
#[derive(Debug, Clone)]
pub struct BandCholesky {
    pub n: usize,
    pub halfband: usize,
    l: Vec<f64>,
}

impl BandCholesky {
    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        debug_assert!(j <= i && i - j <= self.halfband);
        self.l[i * (self.halfband + 1) + (i - j)]
    }

    /// Solve L y = b.
    pub fn forward(&self, b: &[f64]) -> Vec<f64> {
        let mut y = b.to_vec();
        for i in 0..self.n {
            let j0 = i.saturating_sub(self.halfband);
            let mut v = y[i];
            for j in j0..i {
                v -= self.at(i, j) * y[j];
            }
            y[i] = v / self.at(i, i);
        }
        y
    }

    /// Solve L' x = y.
    pub fn backward(&self, y: &[f64]) -> Vec<f64> {
        let mut x = y.to_vec();
        for i in (0..self.n).rev() {
            let top = (i + self.halfband).min(self.n - 1);
            let mut v = x[i];
            for j in i + 1..=top {
                v -= self.at(j, i) * x[j];
            }
            x[i] = v / self.at(i, i);
        }
        x
    }

    /// Solve A x = b.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        self.backward(&self.forward(b))
    }
}
