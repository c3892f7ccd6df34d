//! Band-preserving reduction of a symmetric band matrix to tridiagonal form
//! by plane rotations with bulge chasing. Work and memory are
//! `O(n² b)` and `O(n b)`.

use crate::band::SymBand;

/// Lower band with one extra diagonal of room for the bulge.
struct Work {
    n: usize,
    diags: Vec<Vec<f64>>,
}

impl Work {
    fn new(src: &SymBand) -> Self {
        let n = src.order();
        let b = src.bandwidth();
        let mut diags: Vec<Vec<f64>> = src.diags().to_vec();
        if b + 1 < n {
            diags.push(vec![0.0; n - b - 1]);
        }
        Self { n, diags }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> f64 {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        self.diags.get(r - c).map_or(0.0, |d| d[c])
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: f64) {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        match self.diags.get_mut(r - c) {
            Some(d) => d[c] = v,
            None => debug_assert!(v.abs() <= 1e-300 || v == 0.0, "fill outside band: {v}"),
        }
    }

    /// `A <- G A Gᵀ` with `G` rotating rows `u`, `u + 1` by `(c, s)`.
    fn rotate(&mut self, u: usize, c: f64, s: f64) {
        let v = u + 1;
        let reach = self.diags.len();
        let lo = u.saturating_sub(reach);
        let hi = (v + reach).min(self.n - 1);
        for x in lo..=hi {
            if x == u || x == v {
                continue;
            }
            let a = self.get(u, x);
            let b = self.get(v, x);
            if a == 0.0 && b == 0.0 {
                continue;
            }
            self.set(u, x, c * a + s * b);
            self.set(v, x, -s * a + c * b);
        }
        let (auu, avv, auv) = (self.get(u, u), self.get(v, v), self.get(u, v));
        let cs = c * s;
        self.set(u, u, c * c * auu + 2.0 * cs * auv + s * s * avv);
        self.set(v, v, s * s * auu - 2.0 * cs * auv + c * c * avv);
        self.set(u, v, cs * (avv - auu) + (c * c - s * s) * auv);
    }

    /// Zeroes `A[row][col]` against `A[row - 1][col]`.
    fn annihilate(&mut self, row: usize, col: usize) -> bool {
        let x = self.get(row, col);
        if x == 0.0 {
            return false;
        }
        let a = self.get(row - 1, col);
        let r = a.hypot(x);
        self.rotate(row - 1, a / r, x / r);
        self.set(row, col, 0.0);
        self.set(row - 1, col, r);
        true
    }
}

/// Returns `(diag, off)` of a tridiagonal matrix orthogonally similar to
/// `band`.
pub fn band_to_tridiagonal(band: &SymBand) -> (Vec<f64>, Vec<f64>) {
    let n = band.order();
    let b = band.bandwidth();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    if b <= 1 {
        let off = if b == 1 { band.diag(1).to_vec() } else { vec![0.0; n - 1] };
        return (band.diag(0).to_vec(), off);
    }
    let mut w = Work::new(band);
    for j in 0..n.saturating_sub(2) {
        for k in (2..=b.min(n - 1 - j)).rev() {
            let r = j + k;
            if !w.annihilate(r, j) {
                continue;
            }
            // The rotation in plane (r-1, r) leaves a bulge at (r + b, r - 1).
            let mut p = r;
            while p + b < n {
                let row = p + b;
                if !w.annihilate(row, p - 1) {
                    break;
                }
                p = row;
            }
        }
    }
    let diag = w.diags[0].clone();
    let off = w.diags[1].clone();
    (diag, off)
}
