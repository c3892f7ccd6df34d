//! Spectra that need a matrix solve (quadratic elements, Legendre spectral)
//! and a single entry point that builds any method's spectrum.

use crate::assembly::{assemble_legendre_1d, assemble_quadratic_1d};
use crate::dispersion::{closed_form, exact_spectrum, has_closed_form};
use crate::domain::{DomainSpec, Method, UniformMesh};
use crate::eig::{self, EigenSolveOptions};
use crate::error::{Error, Result};
use crate::ordering::tensorize_magnitude;
use crate::spectrum::{DiscreteSpectrum, Resolution};

/// Continuous quadratic elements; mode labels are ranks.
pub fn quadratic_fem_1d(mesh: &UniformMesh, opts: &EigenSolveOptions) -> Result<DiscreteSpectrum> {
    let pencil = assemble_quadratic_1d(mesh)?;
    let values = eig::solve(&pencil, opts)?;
    DiscreteSpectrum::from_ranked_values(
        Method::Quadratic1D,
        DomainSpec::interval(mesh.extent())?,
        Resolution::Mesh(*mesh),
        values,
    )
}

/// Legendre–Galerkin spectrum of degree `N` on `[-1, 1]`; mode labels are
/// ranks.
pub fn legendre_spectral_1d(degree: usize, opts: &EigenSolveOptions) -> Result<DiscreteSpectrum> {
    let pencil = assemble_legendre_1d(degree)?;
    let values = eig::solve(&pencil, opts)?;
    DiscreteSpectrum::from_ranked_values(
        Method::LegendreSpectral1D,
        DomainSpec::reference(1)?,
        Resolution::Degree(degree),
        values,
    )
}

/// Resolution parameter of [`compute_spectrum`]: cells per axis for mesh
/// methods, polynomial degree for spectral ones. For `QuadraticQ2_2D` and
/// `Quadratic1D` `size` is also the cell count, so `(2·size - 1)` unknowns
/// per axis; callers wanting equal degrees of freedom with linear elements
/// pass half the linear cell count.
pub fn compute_spectrum(
    method: Method,
    domain: &DomainSpec,
    size: usize,
    opts: &EigenSolveOptions,
) -> Result<DiscreteSpectrum> {
    method.check_domain(domain)?;
    if has_closed_form(method) {
        return closed_form(method, &UniformMesh::on(domain, size)?);
    }
    match method {
        Method::Quadratic1D => quadratic_fem_1d(&UniformMesh::on(domain, size)?, opts),
        Method::QuadraticQ2_2D => {
            let one = quadratic_fem_1d(&UniformMesh::on(domain, size)?, opts)?;
            tensorize_magnitude(&one)
        }
        Method::LegendreSpectral1D | Method::LegendreSpectral2D => {
            if domain.extent() != 2.0 {
                return Err(Error::Extent(domain.extent()));
            }
            let one = legendre_spectral_1d(size, opts)?;
            if method == Method::LegendreSpectral1D {
                Ok(one)
            } else {
                tensorize_magnitude(&one)
            }
        }
        Method::Exact => {
            let per_axis = size.saturating_sub(1);
            exact_spectrum(domain, per_axis.pow(domain.dim() as u32))
        }
        _ => unreachable!("closed-form methods handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn quadratic_first_eigenvalue_is_fourth_order() {
        let s = quadratic_fem_1d(&UniformMesh::unit(8).unwrap(), &EigenSolveOptions::default()).unwrap();
        assert_eq!(s.len(), 15);
        let rel = (s.values()[0] - PI * PI) / (PI * PI);
        assert!(rel > 0.0 && rel < 1e-4, "{rel}");
    }

    #[test]
    fn legendre_resolved_modes() {
        let s = legendre_spectral_1d(64, &EigenSolveOptions::banded()).unwrap();
        for (j, v) in s.values().iter().take(5).enumerate() {
            let exact = ((j + 1) as f64 * PI / 2.0).powi(2);
            assert!((v - exact).abs() / exact < 1e-10, "{j}: {v}");
        }
    }

    #[test]
    fn legendre_requires_reference_domain() {
        let e = compute_spectrum(
            Method::LegendreSpectral1D,
            &DomainSpec::unit_interval(),
            8,
            &EigenSolveOptions::default(),
        );
        assert!(matches!(e, Err(Error::Extent(_))));
    }

    #[test]
    fn compute_checks_dimension() {
        let e = compute_spectrum(
            Method::NinePointLumped2D,
            &DomainSpec::unit_interval(),
            8,
            &EigenSolveOptions::default(),
        );
        assert!(matches!(e, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn q2_count_matches_linear() {
        let sq = DomainSpec::reference(2).unwrap();
        let q = compute_spectrum(Method::QuadraticQ2_2D, &sq, 8, &EigenSolveOptions::default()).unwrap();
        let b = compute_spectrum(Method::BilinearConsistent2D, &sq, 16, &EigenSolveOptions::default()).unwrap();
        assert_eq!(q.len(), b.len());
    }
}
