//! Relative errors of a numerical spectrum against the exact one, and how
//! many of them stay under a tolerance.

use std::collections::HashMap;

use serde::Serialize;

use crate::domain::{Method, ModeIndex};
use crate::error::{Error, Result};
use crate::spectrum::DiscreteSpectrum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Pairing {
    /// i-th smallest numeric value against i-th smallest exact value.
    #[default]
    ByRank,
    /// Same mode label on both sides.
    ByModeIndex,
}

/// `|λ_numeric - λ_exact| / λ_exact`, in the numeric spectrum's order.
pub fn relative_errors(numeric: &DiscreteSpectrum, exact: &DiscreteSpectrum, pairing: Pairing) -> Result<Vec<f64>> {
    if numeric.len() != exact.len() {
        return Err(Error::Pairing(format!(
            "{} numeric values against {} exact values",
            numeric.len(),
            exact.len()
        )));
    }
    let rel = |num: f64, ex: f64| (num - ex).abs() / ex;
    match pairing {
        Pairing::ByRank => Ok(numeric
            .entries()
            .iter()
            .zip(exact.entries())
            .map(|(a, b)| rel(a.value, b.value))
            .collect()),
        Pairing::ByModeIndex => {
            let lookup: HashMap<ModeIndex, f64> = exact.entries().iter().map(|e| (e.mode, e.value)).collect();
            numeric
                .entries()
                .iter()
                .map(|e| {
                    lookup
                        .get(&e.mode)
                        .map(|&ex| rel(e.value, ex))
                        .ok_or_else(|| Error::Pairing(format!("mode {} missing from exact spectrum", e.mode)))
                })
                .collect()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReliableCounts {
    pub total: usize,
    pub prefix: usize,
    pub fraction: f64,
}

pub fn count_reliable(relerrs: &[f64], tolerance: f64) -> Result<ReliableCounts> {
    if !(tolerance > 0.0) || !tolerance.is_finite() {
        return Err(Error::Tolerance(tolerance));
    }
    let ok = |e: &f64| *e <= tolerance;
    let total = relerrs.iter().filter(|e| ok(e)).count();
    let prefix = relerrs.iter().take_while(|e| ok(e)).count();
    let fraction = if relerrs.is_empty() {
        0.0
    } else {
        total as f64 / relerrs.len() as f64
    };
    Ok(ReliableCounts { total, prefix, fraction })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReliabilityReport {
    pub method: Method,
    pub dof: usize,
    pub tolerance: f64,
    pub pairing: Pairing,
    pub per_eigenvalue_relerr: Vec<f64>,
    pub reliable_count_total: usize,
    pub reliable_prefix: usize,
    pub fraction: f64,
    pub predicted_jn: Option<f64>,
}

impl ReliabilityReport {
    pub fn build(
        numeric: &DiscreteSpectrum,
        exact: &DiscreteSpectrum,
        pairing: Pairing,
        tolerance: f64,
        predicted_jn: Option<f64>,
    ) -> Result<Self> {
        let relerr = relative_errors(numeric, exact, pairing)?;
        let counts = count_reliable(&relerr, tolerance)?;
        Ok(Self {
            method: numeric.method(),
            dof: numeric.len(),
            tolerance,
            pairing,
            per_eigenvalue_relerr: relerr,
            reliable_count_total: counts.total,
            reliable_prefix: counts.prefix,
            fraction: counts.fraction,
            predicted_jn,
        })
    }
}

/// Least-squares slope of `log(count)` against `log(dof)`, with `r²`.
pub fn fit_growth_exponent(dof_values: &[f64], counts: &[f64]) -> Result<(f64, f64)> {
    if dof_values.len() != counts.len() {
        return Err(Error::Fit("length mismatch".into()));
    }
    if dof_values.len() < 3 {
        return Err(Error::Fit("need at least three points".into()));
    }
    if dof_values.iter().chain(counts).any(|&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::Fit("all values must be positive".into()));
    }
    let xs: Vec<f64> = dof_values.iter().map(|v| v.ln()).collect();
    let ys: Vec<f64> = counts.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx <= 1e-12 * xs.iter().map(|x| x * x).sum::<f64>().max(1.0) {
        return Err(Error::Fit("all dof values equal".into()));
    }
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok((slope, r2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dispersion::{exact_for_modes, extrapolated_1d, linear_fem_1d};
    use crate::domain::UniformMesh;
    use std::f64::consts::PI;

    #[test]
    fn counting() {
        let c = count_reliable(&[0.001, 0.002, 0.5], 0.01).unwrap();
        assert_eq!((c.total, c.prefix), (2, 2));
        assert!((c.fraction - 2.0 / 3.0).abs() < 1e-15);
        let c = count_reliable(&[0.5, 0.001, 0.002], 0.01).unwrap();
        assert_eq!((c.total, c.prefix), (2, 0));
        assert!(matches!(count_reliable(&[0.1], 0.0), Err(Error::Tolerance(_))));
    }

    #[test]
    fn linear_midpoint_relative_error() {
        let s = linear_fem_1d(&UniformMesh::unit(64).unwrap()).unwrap();
        let ex = exact_for_modes(&s).unwrap();
        let r = relative_errors(&s, &ex, Pairing::ByModeIndex).unwrap();
        let want = 12.0 / (PI * PI) - 1.0;
        assert!((r[31] - want).abs() < 1e-12 * want, "{}", r[31]);
    }

    #[test]
    fn extrapolated_midpoint_relative_error() {
        let s = extrapolated_1d(&UniformMesh::unit(64).unwrap()).unwrap();
        let ex = exact_for_modes(&s).unwrap();
        let r = relative_errors(&s, &ex, Pairing::ByModeIndex).unwrap();
        let want = 10.0 / (PI * PI) - 1.0;
        assert!((r[31] - want).abs() < 1e-12 * want);
    }

    #[test]
    fn self_pairing_is_zero() {
        let s = linear_fem_1d(&UniformMesh::unit(10).unwrap()).unwrap();
        for p in [Pairing::ByRank, Pairing::ByModeIndex] {
            assert!(relative_errors(&s, &s, p).unwrap().iter().all(|&e| e == 0.0));
        }
    }

    #[test]
    fn count_mismatch() {
        let a = linear_fem_1d(&UniformMesh::unit(10).unwrap()).unwrap();
        let b = linear_fem_1d(&UniformMesh::unit(11).unwrap()).unwrap();
        assert!(matches!(relative_errors(&a, &b, Pairing::ByRank), Err(Error::Pairing(_))));
    }

    #[test]
    fn exact_power_law_fit() {
        let ns = [512.0, 1024.0, 2048.0, 4096.0];
        let cs: Vec<f64> = ns.iter().map(|n: &f64| 3.0 * n.sqrt()).collect();
        let (e, r2) = fit_growth_exponent(&ns, &cs).unwrap();
        assert!((e - 0.5).abs() < 1e-12);
        assert!((r2 - 1.0).abs() < 1e-12);
        assert!(matches!(fit_growth_exponent(&[5.0; 3], &[1.0, 2.0, 3.0]), Err(Error::Fit(_))));
        assert!(matches!(fit_growth_exponent(&[1.0, 2.0], &[1.0, 2.0]), Err(Error::Fit(_))));
    }

    #[test]
    fn report_invariants() {
        let s = linear_fem_1d(&UniformMesh::unit(256).unwrap()).unwrap();
        let ex = exact_for_modes(&s).unwrap();
        let r = ReliabilityReport::build(&s, &ex, Pairing::ByRank, 1.0 / 256.0, None).unwrap();
        assert!(r.reliable_prefix <= r.reliable_count_total);
        assert!(r.reliable_count_total <= r.dof);
        assert!((0.0..=1.0).contains(&r.fraction));
    }
}
