//! Closed-form discrete spectra on uniform meshes and the continuum spectra
//! they approximate.
//!
//! Every `2(1 - cos θ)` is evaluated as `4 sin²(θ/2)` and every
//! `1 - cos θ_j cos θ_k` as `a + b - ab` with `a = 1 - cos θ_j`, so small
//! angles keep full relative accuracy.

use crate::domain::{DomainSpec, Method, ModeIndex, UniformMesh};
use crate::error::{Error, Result};
use crate::spectrum::{DiscreteSpectrum, Resolution, SpectrumEntry};

/// `2(1 - cos θ)` without cancellation.
#[inline]
pub fn two_one_minus_cos(theta: f64) -> f64 {
    let s = (0.5 * theta).sin();
    4.0 * s * s
}

/// `1 - cos θ_j cos θ_k` without cancellation.
#[inline]
fn one_minus_cos_product(tj: f64, tk: f64) -> f64 {
    let a = 0.5 * two_one_minus_cos(tj);
    let b = 0.5 * two_one_minus_cos(tk);
    a + b - a * b
}

/// Consistent linear element, one mode.
pub fn linear_1d_mode(theta: f64, h: f64) -> f64 {
    3.0 / (h * h) * two_one_minus_cos(theta) / (2.0 + theta.cos())
}

/// Lumped linear element (central differences), one mode.
pub fn lumped_1d_mode(theta: f64, h: f64) -> f64 {
    two_one_minus_cos(theta) / (h * h)
}

pub fn extrapolated_1d_mode(theta: f64, h: f64) -> f64 {
    0.5 * (linear_1d_mode(theta, h) + lumped_1d_mode(theta, h))
}

/// 5-point stencil (lumped linear triangles).
pub fn five_point_mode(tj: f64, tk: f64, h: f64) -> f64 {
    (two_one_minus_cos(tj) + two_one_minus_cos(tk)) / (h * h)
}

fn bilinear_numerator(tj: f64, tk: f64) -> f64 {
    two_one_minus_cos(tj) + two_one_minus_cos(tk) + 4.0 * one_minus_cos_product(tj, tk)
}

/// 9-point stencil (lumped bilinear elements).
pub fn nine_point_mode(tj: f64, tk: f64, h: f64) -> f64 {
    bilinear_numerator(tj, tk) / (3.0 * h * h)
}

/// Consistent bilinear element.
pub fn bilinear_mode(tj: f64, tk: f64, h: f64) -> f64 {
    let (cj, ck) = (tj.cos(), tk.cos());
    let mass = 4.0 + 2.0 * (cj + ck) + cj * ck;
    3.0 / (h * h) * bilinear_numerator(tj, tk) / mass
}

/// Average of the consistent bilinear and the 5-point value of one mode.
pub fn extrapolated_2d_mode(tj: f64, tk: f64, h: f64) -> f64 {
    0.5 * (bilinear_mode(tj, tk, h) + five_point_mode(tj, tk, h))
}

/// Methods that have a closed-form dispersion relation on a uniform mesh.
pub fn has_closed_form(method: Method) -> bool {
    use Method::*;
    matches!(
        method,
        Linear1D
            | Lumped1D
            | Extrapolated1D
            | FivePointLumped2D
            | NinePointLumped2D
            | BilinearConsistent2D
            | Extrapolated2D
    )
}

/// Value of a single mode under a closed-form method.
pub fn mode_value(method: Method, mesh: &UniformMesh, mode: ModeIndex) -> Result<f64> {
    mesh.require(2)?;
    let h = mesh.spacing();
    let n = mesh.cells();
    let valid = |j: usize| (1..n).contains(&j);
    match (method, mode) {
        (Method::Linear1D | Method::Lumped1D | Method::Extrapolated1D, ModeIndex::One(j))
            if valid(j) =>
        {
            let t = mesh.theta(j);
            Ok(match method {
                Method::Linear1D => linear_1d_mode(t, h),
                Method::Lumped1D => lumped_1d_mode(t, h),
                _ => extrapolated_1d_mode(t, h),
            })
        }
        (
            Method::FivePointLumped2D
            | Method::NinePointLumped2D
            | Method::BilinearConsistent2D
            | Method::Extrapolated2D,
            ModeIndex::Two(j, k),
        ) if valid(j) && valid(k) => {
            let (tj, tk) = (mesh.theta(j), mesh.theta(k));
            Ok(match method {
                Method::FivePointLumped2D => five_point_mode(tj, tk, h),
                Method::NinePointLumped2D => nine_point_mode(tj, tk, h),
                Method::BilinearConsistent2D => bilinear_mode(tj, tk, h),
                _ => extrapolated_2d_mode(tj, tk, h),
            })
        }
        _ => Err(Error::Pairing(format!(
            "mode {mode} is not a valid mode of {method} on {n} cells"
        ))),
    }
}

/// Value at the middle mode `n/2` (or `(n/2, n/2)`); odd `n` is rejected.
pub fn midpoint(method: Method, mesh: &UniformMesh) -> Result<f64> {
    let n = mesh.cells();
    if !n.is_multiple_of(2) {
        return Err(Error::OddMidpoint { cells: n });
    }
    let mode = match method.dim() {
        Some(2) => ModeIndex::Two(n / 2, n / 2),
        _ => ModeIndex::One(n / 2),
    };
    mode_value(method, mesh, mode)
}

fn spectrum_1d(method: Method, mesh: &UniformMesh, f: fn(f64, f64) -> f64) -> Result<DiscreteSpectrum> {
    mesh.require(2)?;
    let h = mesh.spacing();
    let entries = (1..mesh.cells())
        .map(|j| SpectrumEntry {
            mode: ModeIndex::One(j),
            value: f(mesh.theta(j), h),
        })
        .collect();
    let domain = DomainSpec::interval(mesh.extent())?;
    DiscreteSpectrum::new(method, domain, Resolution::Mesh(*mesh), entries)
}

fn spectrum_2d(
    method: Method,
    mesh: &UniformMesh,
    f: fn(f64, f64, f64) -> f64,
) -> Result<DiscreteSpectrum> {
    mesh.require(2)?;
    let h = mesh.spacing();
    let m = mesh.interior();
    let thetas: Vec<f64> = (1..=m).map(|j| mesh.theta(j)).collect();
    let mut entries = Vec::with_capacity(m * m);
    for (j, &tj) in thetas.iter().enumerate() {
        for (k, &tk) in thetas.iter().enumerate() {
            entries.push(SpectrumEntry {
                mode: ModeIndex::Two(j + 1, k + 1),
                value: f(tj, tk, h),
            });
        }
    }
    let domain = DomainSpec::square(mesh.extent())?;
    DiscreteSpectrum::new(method, domain, Resolution::Mesh(*mesh), entries)
}

pub fn linear_fem_1d(mesh: &UniformMesh) -> Result<DiscreteSpectrum> {
    spectrum_1d(Method::Linear1D, mesh, linear_1d_mode)
}

pub fn lumped_fd_1d(mesh: &UniformMesh) -> Result<DiscreteSpectrum> {
    spectrum_1d(Method::Lumped1D, mesh, lumped_1d_mode)
}

/// Mode-by-mode average of the consistent and lumped 1D spectra.
pub fn extrapolated_1d(mesh: &UniformMesh) -> Result<DiscreteSpectrum> {
    spectrum_1d(Method::Extrapolated1D, mesh, extrapolated_1d_mode)
}

pub fn five_point_lumped_2d(mesh: &UniformMesh) -> Result<DiscreteSpectrum> {
    spectrum_2d(Method::FivePointLumped2D, mesh, five_point_mode)
}

pub fn nine_point_lumped_2d(mesh: &UniformMesh) -> Result<DiscreteSpectrum> {
    spectrum_2d(Method::NinePointLumped2D, mesh, nine_point_mode)
}

pub fn bilinear_consistent_2d(mesh: &UniformMesh) -> Result<DiscreteSpectrum> {
    spectrum_2d(Method::BilinearConsistent2D, mesh, bilinear_mode)
}

/// Mode-by-mode average of the bilinear and 5-point spectra.
pub fn extrapolated_2d(mesh: &UniformMesh) -> Result<DiscreteSpectrum> {
    spectrum_2d(Method::Extrapolated2D, mesh, extrapolated_2d_mode)
}

pub fn closed_form(method: Method, mesh: &UniformMesh) -> Result<DiscreteSpectrum> {
    match method {
        Method::Linear1D => linear_fem_1d(mesh),
        Method::Lumped1D => lumped_fd_1d(mesh),
        Method::Extrapolated1D => extrapolated_1d(mesh),
        Method::FivePointLumped2D => five_point_lumped_2d(mesh),
        Method::NinePointLumped2D => nine_point_lumped_2d(mesh),
        Method::BilinearConsistent2D => bilinear_consistent_2d(mesh),
        Method::Extrapolated2D => extrapolated_2d(mesh),
        other => Err(Error::NoClosedForm(other)),
    }
}

/// The `count` smallest Dirichlet Laplace eigenvalues of the domain, with
/// multiplicity.
pub fn exact_spectrum(domain: &DomainSpec, count: usize) -> Result<DiscreteSpectrum> {
    let extent = domain.extent();
    let entries: Vec<SpectrumEntry> = match domain.dim() {
        1 => (1..=count)
            .map(|j| {
                let mode = ModeIndex::One(j);
                SpectrumEntry {
                    mode,
                    value: mode.exact_eigenvalue(extent),
                }
            })
            .collect(),
        2 => lattice_modes(count)
            .into_iter()
            .map(|mode| SpectrumEntry {
                mode,
                value: mode.exact_eigenvalue(extent),
            })
            .collect(),
        dim => return Err(Error::Dimension { dim }),
    };
    DiscreteSpectrum::new(Method::Exact, *domain, Resolution::Continuum, entries)
}

/// The `count` lattice points `(j, k)`, `j, k >= 1`, of smallest `j² + k²`,
/// ties broken lexicographically.
pub fn lattice_modes(count: usize) -> Vec<ModeIndex> {
    if count == 0 {
        return Vec::new();
    }
    let mut side = ((2 * count) as f64).sqrt().ceil() as u64 + 1;
    loop {
        let mut pts: Vec<(u64, u64, u64)> = Vec::with_capacity((side * side) as usize);
        for j in 1..=side {
            for k in 1..=side {
                pts.push((j * j + k * k, j, k));
            }
        }
        pts.sort_unstable();
        pts.truncate(count);
        // Any point left out of the box has norm at least (side+1)^2 + 1.
        let bound = (side + 1) * (side + 1) + 1;
        if pts.len() == count && pts.last().is_some_and(|p| p.0 < bound) {
            return pts
                .into_iter()
                .map(|(_, j, k)| ModeIndex::Two(j as usize, k as usize))
                .collect();
        }
        side *= 2;
    }
}

/// Exact eigenvalues carrying exactly the mode labels of `numeric`, for
/// mode-index pairing.
pub fn exact_for_modes(numeric: &DiscreteSpectrum) -> Result<DiscreteSpectrum> {
    let extent = numeric.domain().extent();
    let entries = numeric
        .entries()
        .iter()
        .map(|e| SpectrumEntry {
            mode: e.mode,
            value: e.mode.exact_eigenvalue(extent),
        })
        .collect();
    DiscreteSpectrum::new(Method::Exact, *numeric.domain(), Resolution::Continuum, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn unit(n: usize) -> UniformMesh {
        UniformMesh::unit(n).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn exact_1d_values() {
        let s = exact_spectrum(&DomainSpec::unit_interval(), 3).unwrap();
        let v = s.values();
        assert!(rel(v[0], PI * PI) < 1e-15);
        assert!(rel(v[1], 4.0 * PI * PI) < 1e-15);
        assert!(rel(v[2], 9.0 * PI * PI) < 1e-15);

        let s = exact_spectrum(&DomainSpec::interval(2.0).unwrap(), 1).unwrap();
        assert!(rel(s.values()[0], PI * PI / 4.0) < 1e-15);
    }

    #[test]
    fn exact_unit_square_multiplicity() {
        let s = exact_spectrum(&DomainSpec::unit_square(), 4).unwrap();
        let p2 = PI * PI;
        let want = [2.0 * p2, 5.0 * p2, 5.0 * p2, 8.0 * p2];
        for (got, want) in s.values().iter().zip(want) {
            assert!(rel(*got, want) < 1e-15);
        }
        assert_eq!(s.entries()[1].mode, ModeIndex::Two(1, 2));
        assert_eq!(s.entries()[2].mode, ModeIndex::Two(2, 1));
    }

    #[test]
    fn exact_rejects_dim3() {
        let cube = DomainSpec::new(3, 1.0).unwrap();
        assert_eq!(exact_spectrum(&cube, 3), Err(Error::Dimension { dim: 3 }));
    }

    #[test]
    fn lattice_enumeration_matches_brute_force() {
        for count in [1usize, 2, 5, 17, 100, 997] {
            let mut all = Vec::new();
            for j in 1..200u64 {
                for k in 1..200u64 {
                    all.push((j * j + k * k, j as usize, k as usize));
                }
            }
            all.sort_unstable();
            let want: Vec<_> = all[..count]
                .iter()
                .map(|&(_, j, k)| ModeIndex::Two(j, k))
                .collect();
            assert_eq!(lattice_modes(count), want);
        }
    }

    #[test]
    fn single_unknown_values() {
        // n = 2: θ = π/2, cos θ = 0, h = 1/2.
        assert!(rel(linear_fem_1d(&unit(2)).unwrap().values()[0], 12.0) < 1e-15);
        assert!(rel(lumped_fd_1d(&unit(2)).unwrap().values()[0], 8.0) < 1e-15);
        assert!(rel(extrapolated_1d(&unit(2)).unwrap().values()[0], 10.0) < 1e-15);
    }

    #[test]
    fn midpoint_identities() {
        let m = unit(64);
        let n2 = 64.0f64 * 64.0;
        let cases = [
            (Method::Linear1D, 3.0 * n2),
            (Method::Lumped1D, 2.0 * n2),
            (Method::Extrapolated1D, 2.5 * n2),
            (Method::FivePointLumped2D, 4.0 * n2),
            (Method::NinePointLumped2D, 8.0 / 3.0 * n2),
            (Method::BilinearConsistent2D, 6.0 * n2),
            (Method::Extrapolated2D, 5.0 * n2),
        ];
        for (method, want) in cases {
            let got = midpoint(method, &m).unwrap();
            assert!(rel(got, want) < 1e-12, "{method}: {got} vs {want}");
        }
    }

    #[test]
    fn midpoint_rejects_odd() {
        assert_eq!(
            midpoint(Method::Linear1D, &unit(7)),
            Err(Error::OddMidpoint { cells: 7 })
        );
    }

    #[test]
    fn coarse_mesh_rejected() {
        assert!(matches!(
            linear_fem_1d(&unit(1)),
            Err(Error::MeshTooCoarse { cells: 1, min: 2 })
        ));
        assert!(nine_point_lumped_2d(&unit(1)).is_err());
    }

    #[test]
    fn last_mode_lumped_expansion() {
        let v = mode_value(Method::Lumped1D, &unit(100), ModeIndex::One(99)).unwrap();
        assert!((39990.0..=39990.2).contains(&v), "{v}");
    }

    #[test]
    fn last_mode_2d_expansions() {
        let m = unit(100);
        let n2 = 1e4;
        let nine = mode_value(Method::NinePointLumped2D, &m, ModeIndex::Two(99, 99)).unwrap();
        assert!((nine - (8.0 / 3.0 * n2 + 2.0 * PI * PI / 3.0)).abs() < 0.05, "{nine}");
        let bil = mode_value(Method::BilinearConsistent2D, &m, ModeIndex::Two(99, 99)).unwrap();
        assert!((bil - (24.0 * n2 - 18.0 * PI * PI)).abs() < 0.5, "{bil}");
        let ext = mode_value(Method::Extrapolated2D, &m, ModeIndex::Two(99, 99)).unwrap();
        assert!((ext - (16.0 * n2 - 10.0 * PI * PI)).abs() < 0.5, "{ext}");
    }

    #[test]
    fn extrapolated_first_mode_expansion() {
        let n = 1024.0f64;
        let v = mode_value(Method::Extrapolated1D, &unit(1024), ModeIndex::One(1)).unwrap();
        let want = PI * PI + PI.powi(6) / (360.0 * n.powi(4));
        assert!((v - want).abs() < 1e-9);
    }

    #[test]
    fn extrapolated_2d_is_bitwise_mean() {
        let m = unit(4);
        let b = mode_value(Method::BilinearConsistent2D, &m, ModeIndex::Two(1, 1)).unwrap();
        let l = mode_value(Method::FivePointLumped2D, &m, ModeIndex::Two(1, 1)).unwrap();
        let x = mode_value(Method::Extrapolated2D, &m, ModeIndex::Two(1, 1)).unwrap();
        assert_eq!(x.to_bits(), (0.5 * (b + l)).to_bits());
    }

    #[test]
    fn five_point_separability() {
        for n in [2usize, 3, 8, 16, 33, 64] {
            let m = unit(n);
            let one = lumped_fd_1d(&m).unwrap();
            let two = five_point_lumped_2d(&m).unwrap();
            for e in two.entries() {
                let (j, k) = (e.mode.first(), e.mode.second().unwrap());
                let sum = one.value_at(ModeIndex::One(j)).unwrap()
                    + one.value_at(ModeIndex::One(k)).unwrap();
                assert!(rel(e.value, sum) < 4.0 * f64::EPSILON);
            }
        }
    }

    #[test]
    fn bilinear_is_sum_of_consistent_1d() {
        let m = unit(16);
        let h = m.spacing();
        for j in 1..16 {
            for k in 1..16 {
                let b = bilinear_mode(m.theta(j), m.theta(k), h);
                let s = linear_1d_mode(m.theta(j), h) + linear_1d_mode(m.theta(k), h);
                assert!(rel(b, s) < 1e-13);
            }
        }
    }

    #[test]
    fn taylor_coefficient_of_first_mode() {
        let target = PI.powi(4) / 12.0;
        let mut last = 0.0;
        for p in 6..=12 {
            let n = 1usize << p;
            let v = mode_value(Method::Linear1D, &unit(n), ModeIndex::One(1)).unwrap();
            last = (v - PI * PI) * (n * n) as f64;
        }
        assert!(rel(last, target) < 0.01, "{last} vs {target}");
    }

    #[test]
    fn stable_near_pi() {
        let h = 1e-3;
        for t in [PI - 1e-12, PI - 1e-8, 1e-12] {
            for v in [
                linear_1d_mode(t, h),
                lumped_1d_mode(t, h),
                nine_point_mode(t, t, h),
                bilinear_mode(t, t, h),
                five_point_mode(t, t, h),
            ] {
                assert!(v.is_finite() && v > 0.0);
            }
        }
        // Small angle keeps relative accuracy: 4 sin²(θ/2)/θ² -> 1.
        assert!(rel(two_one_minus_cos(1e-9), 1e-18) < 1e-12);
    }

    #[test]
    fn extent_scaling() {
        // On [0, 2] with 2n cells the spacing equals the unit interval with n cells.
        let a = linear_fem_1d(&UniformMesh::new(16, 2.0).unwrap()).unwrap();
        let b = linear_fem_1d(&unit(16)).unwrap();
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!(rel(*x * 4.0, y) < 1e-14);
        }
    }

    #[test]
    fn exact_for_modes_copies_labels() {
        let num = nine_point_lumped_2d(&unit(5)).unwrap();
        let ex = exact_for_modes(&num).unwrap();
        assert_eq!(ex.len(), 16);
        assert!(rel(ex.value_at(ModeIndex::Two(2, 3)).unwrap(), 13.0 * PI * PI) < 1e-15);
    }
}
