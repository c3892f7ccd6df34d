//! Symmetric generalized eigensolvers for `K u = λ M u`, eigenvalues only.
//!
//! Two independent routes share one result contract (all eigenvalues,
//! ascending):
//!
//! * [`solve_dense`]: Cholesky `M = L Lᵀ`, congruence to `L⁻¹ K L⁻ᵀ`,
//!   Householder tridiagonalization, implicit-shift QL. `O(n³)`; used as the
//!   oracle for every closed form.
//! * [`solve_banded`]: for pencils where `K` or `M` is diagonal, a diagonal
//!   congruence keeps the band, which is then reduced to tridiagonal by
//!   rotations before QL. `O(n² b)`.

pub mod banded;
pub mod dense;
pub mod tridiag;

use crate::assembly::MatrixPencil;
use crate::band::SymBand;
use crate::error::{Error, Result};

pub const MAX_DENSE_ORDER: usize = 4096;
pub const MAX_BANDED_ORDER: usize = 65536;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolvePath {
    #[default]
    DenseOracle,
    Banded,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSolveOptions {
    pub max_iterations_per_eigenvalue: usize,
    /// Deflate when `|e_i| < tol (|d_i| + |d_{i+1}|)`.
    pub convergence_tol: f64,
    pub path: SolvePath,
}

impl Default for EigenSolveOptions {
    fn default() -> Self {
        Self {
            max_iterations_per_eigenvalue: 60,
            convergence_tol: 1e-14,
            path: SolvePath::DenseOracle,
        }
    }
}

impl EigenSolveOptions {
    pub fn banded() -> Self {
        Self {
            path: SolvePath::Banded,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        let tol = self.convergence_tol;
        if tol > 0.0 && tol <= 1e-8 {
            Ok(())
        } else {
            Err(Error::SolverTolerance(tol))
        }
    }
}

fn tridiagonal_eigenvalues(mut d: Vec<f64>, mut e: Vec<f64>, opts: &EigenSolveOptions) -> Result<Vec<f64>> {
    tridiag::ql_eigenvalues(&mut d, &mut e, opts.convergence_tol, opts.max_iterations_per_eigenvalue)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Eigenvalues of a dense symmetric matrix (row-major), ascending.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize, opts: &EigenSolveOptions) -> Result<Vec<f64>> {
    opts.validate()?;
    let (d, e) = dense::tridiagonalize(&mut a, n);
    tridiagonal_eigenvalues(d, e, opts)
}

/// Eigenvalues of a symmetric band matrix, ascending.
pub fn band_eigenvalues(band: &SymBand, opts: &EigenSolveOptions) -> Result<Vec<f64>> {
    opts.validate()?;
    let (d, e) = banded::band_to_tridiagonal(band);
    tridiagonal_eigenvalues(d, e, opts)
}

pub fn solve_dense(pencil: &MatrixPencil, opts: &EigenSolveOptions) -> Result<Vec<f64>> {
    opts.validate()?;
    let n = pencil.order();
    if n > MAX_DENSE_ORDER {
        return Err(Error::Scale {
            order: n,
            limit: MAX_DENSE_ORDER,
        });
    }
    let mut l = pencil.mass().to_dense();
    dense::cholesky(&mut l, n)?;
    let k = pencil.stiffness().to_dense();
    let c = dense::congruence(&l, &k, n);
    symmetric_eigenvalues(c, n, opts)
}

fn inverse_sqrt(diag: &[f64]) -> Result<Vec<f64>> {
    diag.iter()
        .enumerate()
        .map(|(index, &v)| {
            if v > 0.0 {
                Ok(1.0 / v.sqrt())
            } else {
                Err(Error::Factorization { index, pivot: v })
            }
        })
        .collect()
}

pub fn solve_banded(pencil: &MatrixPencil, opts: &EigenSolveOptions) -> Result<Vec<f64>> {
    opts.validate()?;
    let n = pencil.order();
    if n > MAX_BANDED_ORDER {
        return Err(Error::Scale {
            order: n,
            limit: MAX_BANDED_ORDER,
        });
    }
    if pencil.mass().is_diagonal() {
        let scale = inverse_sqrt(pencil.mass().diagonal())?;
        return band_eigenvalues(&pencil.stiffness().scaled(&scale), opts);
    }
    if pencil.stiffness().is_diagonal() {
        // M u = μ K u with μ = 1/λ; K must be positive definite here.
        let scale = inverse_sqrt(pencil.stiffness().diagonal())?;
        let mu = band_eigenvalues(&pencil.mass().scaled(&scale), opts)?;
        if let Some(index) = mu.iter().position(|&m| !(m > 0.0)) {
            return Err(Error::Factorization {
                index,
                pivot: mu[index],
            });
        }
        let mut lambda: Vec<f64> = mu.iter().map(|m| 1.0 / m).collect();
        lambda.sort_by(f64::total_cmp);
        return Ok(lambda);
    }
    Err(Error::UnsupportedStructure)
}

/// Dispatches on `opts.path`; the banded path falls back to the dense solver
/// for pencils it cannot handle when their order permits.
pub fn solve(pencil: &MatrixPencil, opts: &EigenSolveOptions) -> Result<Vec<f64>> {
    match opts.path {
        SolvePath::DenseOracle => solve_dense(pencil, opts),
        SolvePath::Banded => match solve_banded(pencil, opts) {
            Err(Error::UnsupportedStructure) if pencil.order() <= MAX_DENSE_ORDER => {
                solve_dense(pencil, opts)
            }
            other => other,
        },
    }
}
