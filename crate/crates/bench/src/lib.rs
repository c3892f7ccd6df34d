//! Fixtures shared by the benchmarks.

use spectra_trust::assembly::{assemble_bilinear_2d, assemble_legendre_1d, assemble_linear_1d};
use spectra_trust::{MatrixPencil, UniformMesh};

/// Consistent linear 1D pencil on the unit interval.
pub fn linear_pencil(cells: usize) -> MatrixPencil {
    assemble_linear_1d(&UniformMesh::unit(cells).expect("valid mesh")).expect("assembles")
}

/// Lumped linear 1D pencil (diagonal mass).
pub fn lumped_pencil(cells: usize) -> MatrixPencil {
    linear_pencil(cells).lumped().expect("nodal pencil")
}

/// Bilinear pencil with identity mass, the 9-point scheme.
pub fn nine_point_pencil(cells: usize) -> MatrixPencil {
    assemble_bilinear_2d(&UniformMesh::unit(cells).expect("valid mesh"))
        .expect("assembles")
        .with_identity_mass()
}

pub fn legendre_pencil(degree: usize) -> MatrixPencil {
    assemble_legendre_1d(degree).expect("degree >= 2")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_orders() {
        assert_eq!(linear_pencil(9).order(), 8);
        assert!(lumped_pencil(9).mass().is_diagonal());
        assert_eq!(nine_point_pencil(5).order(), 16);
        assert_eq!(legendre_pencil(10).order(), 9);
    }
}
