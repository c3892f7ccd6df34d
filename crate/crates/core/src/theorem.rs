//! Predicted number of trusted eigenvalues for an element of polynomial
//! degree `k - 1` applied to an operator of order `2m` in `d` dimensions,
//! when the relative error must decay like `h^α`.
//!
//! `j_N` is read as a count of eigenvalues; the `λ_{J_N}` that appears next
//! to it is the last of them.

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoremParams {
    m: u32,
    k: u32,
    d: u32,
    alpha: f64,
    dof: u64,
}

impl TheoremParams {
    pub fn new(m: u32, k: u32, d: u32, alpha: f64, dof: u64) -> Result<Self> {
        if m < 1 || k <= m {
            return Err(Error::TheoremParams(format!("need k > m >= 1, got m={m}, k={k}")));
        }
        if !(1..=3).contains(&d) {
            return Err(Error::Dimension { dim: d as usize });
        }
        if dof == 0 {
            return Err(Error::TheoremParams("dof must be positive".into()));
        }
        let max = 2.0 * (k - m) as f64;
        if !(alpha > 0.0 && alpha <= max) {
            return Err(Error::RateRange { alpha, max });
        }
        Ok(Self { m, k, d, alpha, dof })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dof(&self) -> u64 {
        self.dof
    }

    /// Exponent of `N` in [`predicted_jn`].
    pub fn exponent(&self) -> f64 {
        let gap = (self.k - self.m) as f64;
        (gap - self.alpha / 2.0) / gap
    }
}

/// `j_N = N^{(k-m-α/2)/(k-m)} (k-1)^{-d(k-m-α/2)/(k-m)}`.
pub fn predicted_jn(params: &TheoremParams) -> f64 {
    let e = params.exponent();
    let n = params.dof as f64;
    let p = (params.k - 1) as f64;
    n.powf(e) * p.powf(-(params.d as f64) * e)
}

/// Relative error model `h^{2(k-m)} λ^{k/m - 1}`, up to constants.
pub fn composite_relative_error(h: f64, lambda: f64, m: u32, k: u32) -> f64 {
    h.powi(2 * (k as i32 - m as i32)) * lambda.powf(k as f64 / m as f64 - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jn(m: u32, k: u32, d: u32, alpha: f64, dof: u64) -> f64 {
        predicted_jn(&TheoremParams::new(m, k, d, alpha, dof).unwrap())
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * b.abs()
    }

    #[test]
    fn linear_elements() {
        for n in [1u64 << 10, 1 << 20, 8192] {
            let nf = n as f64;
            for d in 1..=3 {
                assert!(close(jn(1, 2, d, 1.0, n), nf.sqrt()));
                assert!(close(jn(1, 2, d, 2.0, n), 1.0));
                assert!(close(jn(1, 2, d, 0.5, n), nf.powf(0.75)));
            }
        }
        assert!((jn(1, 2, 1, 1.0, 8192) - 90.50966799187809).abs() < 1e-9);
    }

    #[test]
    fn quadratic_elements() {
        let n = (1u64 << 20) as f64;
        for d in 1..=3 {
            let df = d as f64;
            assert!(close(jn(1, 3, d, 2.0, 1 << 20), 2f64.powf(-df / 2.0) * n.sqrt()));
            assert!(close(jn(1, 3, d, 1.0, 1 << 20), 2f64.powf(-0.75 * df) * n.powf(0.75)));
            assert!(close(jn(1, 3, d, 4.0, 1 << 20), 1.0));
        }
    }

    #[test]
    fn fourth_order() {
        let n = (1u64 << 10) as f64;
        for d in 1..=3 {
            let df = d as f64;
            assert!(close(jn(2, 3, d, 1.0, 1 << 10), 2f64.powf(-df / 2.0) * n.sqrt()));
            assert!(close(jn(2, 4, d, 1.0, 1 << 10), 3f64.powf(-0.75 * df) * n.powf(0.75)));
        }
    }

    #[test]
    fn rate_range() {
        assert!(matches!(TheoremParams::new(1, 2, 1, 0.0, 10), Err(Error::RateRange { .. })));
        assert!(matches!(TheoremParams::new(1, 2, 1, 2.5, 10), Err(Error::RateRange { .. })));
        assert!(matches!(TheoremParams::new(2, 2, 1, 1.0, 10), Err(Error::TheoremParams(_))));
        assert!(TheoremParams::new(1, 2, 1, 2.0, 10).is_ok());
    }

    #[test]
    fn monotone_in_alpha_and_dof() {
        let mut prev = f64::INFINITY;
        for i in 1..=40 {
            let v = jn(1, 3, 2, i as f64 * 0.1, 4096);
            assert!(v <= prev);
            prev = v;
        }
        let mut prev = 0.0;
        for n in [1u64, 2, 10, 100, 10_000, 1 << 30] {
            let v = jn(2, 4, 3, 1.5, n);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn composite_model_matches_linear_dispersion_term() {
        // Linear elements: relerr ≈ (hλ^{1/2})²/12 for small hλ^{1/2}.
        let h = 1e-3;
        let lam = (10.0 * std::f64::consts::PI).powi(2);
        assert!(close(composite_relative_error(h, lam, 1, 2), h * h * lam));
    }
}
