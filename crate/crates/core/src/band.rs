//! Symmetric band storage.
//!
//! Only the lower triangle is kept, one diagonal per row of storage:
//! `diag(k)[i] = A[i + k][i]` for `k = 0..=bandwidth`.

#[derive(Debug, Clone, PartialEq)]
pub struct SymBand {
    order: usize,
    diags: Vec<Vec<f64>>,
}

impl SymBand {
    pub fn zeros(order: usize, bandwidth: usize) -> Self {
        let bandwidth = bandwidth.min(order.saturating_sub(1));
        let diags = (0..=bandwidth)
            .map(|k| vec![0.0; order.saturating_sub(k)])
            .collect();
        Self { order, diags }
    }

    pub fn from_diagonal(values: Vec<f64>) -> Self {
        Self {
            order: values.len(),
            diags: vec![values],
        }
    }

    pub fn from_diags(order: usize, diags: Vec<Vec<f64>>) -> Option<Self> {
        if diags.is_empty() && order > 0 {
            return None;
        }
        for (k, d) in diags.iter().enumerate() {
            if d.len() != order.saturating_sub(k) {
                return None;
            }
        }
        Some(Self { order, diags })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bandwidth(&self) -> usize {
        self.diags.len().saturating_sub(1)
    }

    pub fn diag(&self, k: usize) -> &[f64] {
        &self.diags[k]
    }

    pub fn diags(&self) -> &[Vec<f64>] {
        &self.diags
    }

    /// Symmetric read; zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        self.diags.get(r - c).map_or(0.0, |d| d[c])
    }

    /// Adds `v` to `A[i][j]` (and its mirror). Panics outside the band.
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        self.diags[r - c][c] += v;
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        self.diags[r - c][c] = v;
    }

    /// True when every off-diagonal stored entry is exactly zero.
    pub fn is_diagonal(&self) -> bool {
        self.diags.iter().skip(1).all(|d| d.iter().all(|&v| v == 0.0))
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diags[0]
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.order;
        let mut a = vec![0.0; n * n];
        for (k, d) in self.diags.iter().enumerate() {
            for (c, &v) in d.iter().enumerate() {
                a[(c + k) * n + c] = v;
                a[c * n + c + k] = v;
            }
        }
        a
    }

    pub fn row_sums(&self) -> Vec<f64> {
        let mut s = vec![0.0; self.order];
        for (k, d) in self.diags.iter().enumerate() {
            for (c, &v) in d.iter().enumerate() {
                s[c] += v;
                if k > 0 {
                    s[c + k] += v;
                }
            }
        }
        s
    }

    /// `D A D` for the diagonal matrix `D = diag(scale)`.
    pub fn scaled(&self, scale: &[f64]) -> SymBand {
        let diags = self
            .diags
            .iter()
            .enumerate()
            .map(|(k, d)| {
                d.iter()
                    .enumerate()
                    .map(|(c, &v)| scale[c + k] * v * scale[c])
                    .collect()
            })
            .collect();
        SymBand {
            order: self.order,
            diags,
        }
    }
}
