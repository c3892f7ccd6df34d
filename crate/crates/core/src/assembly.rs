//! Stiffness/mass pencils for the uniform-mesh discretizations.
//!
//! Linear, triangle and bilinear pencils use the classical stencil scaling:
//! the stiffness carries the `1/h²` factor and the mass is dimensionless, so
//! the lumped mass of every interior node is exactly one. Quadratic and
//! Legendre pencils are exact Galerkin integrals of their bases.
//!
//! Dirichlet unknowns are eliminated; 2D unknowns are numbered row by row,
//! `index = p * (n - 1) + i` for grid node `(i + 1, p + 1)`.

use std::fmt::Write as _;

use crate::band::SymBand;
use crate::domain::UniformMesh;
use crate::error::{Error, Result};

/// Largest cell count per axis accepted by the 2D pencil assemblers.
pub const MAX_2D_CELLS: usize = 128;

#[derive(Debug, Clone, PartialEq)]
pub struct MatrixPencil {
    stiffness: SymBand,
    mass: SymBand,
    lumped: Option<Vec<f64>>,
}

impl MatrixPencil {
    pub fn new(stiffness: SymBand, mass: SymBand) -> Result<Self> {
        Self::with_lumped(stiffness, mass, None)
    }

    fn with_lumped(stiffness: SymBand, mass: SymBand, lumped: Option<Vec<f64>>) -> Result<Self> {
        if stiffness.order() != mass.order() {
            return Err(Error::Parse(format!(
                "stiffness order {} differs from mass order {}",
                stiffness.order(),
                mass.order()
            )));
        }
        if let Some(i) = stiffness.diagonal().iter().position(|&v| !(v >= 0.0)) {
            return Err(Error::Parse(format!(
                "stiffness diagonal entry {i} is negative"
            )));
        }
        Ok(Self {
            stiffness,
            mass,
            lumped,
        })
    }

    pub fn order(&self) -> usize {
        self.stiffness.order()
    }

    pub fn stiffness(&self) -> &SymBand {
        &self.stiffness
    }

    pub fn mass(&self) -> &SymBand {
        &self.mass
    }

    /// `∫φ_i` for each unknown (in the pencil's mass scaling), when the basis
    /// is nodal; this is the row sum of the mass before boundary elimination.
    pub fn basis_integrals(&self) -> Option<&[f64]> {
        self.lumped.as_deref()
    }

    /// Same stiffness with the mass replaced by its row-sum lumping.
    pub fn lumped(&self) -> Option<MatrixPencil> {
        let diag = self.lumped.clone()?;
        Some(MatrixPencil {
            stiffness: self.stiffness.clone(),
            mass: SymBand::from_diagonal(diag.clone()),
            lumped: Some(diag),
        })
    }

    /// Same stiffness with an identity mass.
    pub fn with_identity_mass(&self) -> MatrixPencil {
        let n = self.order();
        MatrixPencil {
            stiffness: self.stiffness.clone(),
            mass: SymBand::from_diagonal(vec![1.0; n]),
            lumped: Some(vec![1.0; n]),
        }
    }

    pub fn stiffness_mut(&mut self) -> &mut SymBand {
        &mut self.stiffness
    }

    /// Text dump: a header `order bandwidthK bandwidthM`, then one line per
    /// stored stiffness diagonal (main first), then the mass diagonals.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {}\n",
            self.order(),
            self.stiffness.bandwidth(),
            self.mass.bandwidth()
        );
        for band in [&self.stiffness, &self.mass] {
            for d in band.diags() {
                let mut first = true;
                for v in d {
                    if !first {
                        out.push(' ');
                    }
                    first = false;
                    let _ = write!(out, "{v:?}");
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let fields: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header field {t:?}"))))
            .collect::<Result<_>>()?;
        let [order, bk, bm] = fields[..] else {
            return Err(Error::Parse("header needs three fields".into()));
        };
        let mut read_band = |bw: usize| -> Result<SymBand> {
            let mut diags = Vec::with_capacity(bw + 1);
            for k in 0..=bw {
                let line = lines
                    .next()
                    .ok_or_else(|| Error::Parse(format!("missing diagonal {k}")))?;
                let vals: Vec<f64> = line
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad value {t:?}"))))
                    .collect::<Result<_>>()?;
                diags.push(vals);
            }
            SymBand::from_diags(order, diags)
                .ok_or_else(|| Error::Parse("diagonal length mismatch".into()))
        };
        let k = read_band(bk)?;
        let m = read_band(bm)?;
        Self::new(k, m)
    }
}

/// A constant-coefficient 2D stencil: `(dp, di, weight)` couples grid row
/// offset `dp` and column offset `di`.
type Stencil = [(isize, isize, f64)];

fn assemble_stencil_2d(cells: usize, stencil: &Stencil, scale: f64) -> (SymBand, Vec<f64>) {
    let m = cells - 1;
    let mi = m as isize;
    let bandwidth = stencil
        .iter()
        .map(|&(dp, di, _)| (dp * mi + di).unsigned_abs())
        .max()
        .unwrap_or(0);
    let mut band = SymBand::zeros(m * m, bandwidth);
    let mut full_row_sums = vec![0.0; m * m];
    for p in 0..mi {
        for i in 0..mi {
            let row = (p * mi + i) as usize;
            for &(dp, di, w) in stencil {
                full_row_sums[row] += scale * w;
                let (q, j) = (p + dp, i + di);
                if !(0..mi).contains(&q) || !(0..mi).contains(&j) {
                    continue;
                }
                let col = (q * mi + j) as usize;
                if col <= row {
                    band.set(row, col, scale * w);
                }
            }
        }
    }
    (band, full_row_sums)
}

fn assemble_stencil_1d(cells: usize, stencil: &[(isize, f64)], scale: f64) -> (SymBand, Vec<f64>) {
    let m = cells - 1;
    let bandwidth = stencil.iter().map(|s| s.0.unsigned_abs()).max().unwrap_or(0);
    let mut band = SymBand::zeros(m, bandwidth);
    let mut sums = vec![0.0; m];
    for row in 0..m as isize {
        for &(d, w) in stencil {
            sums[row as usize] += scale * w;
            let col = row + d;
            if (0..=row).contains(&col) {
                band.set(row as usize, col as usize, scale * w);
            }
        }
    }
    (band, sums)
}

/// Consistent linear elements in 1D: `K = tridiag(-1, 2, -1)/h²`,
/// `M = tridiag(1, 4, 1)/6`.
pub fn assemble_linear_1d(mesh: &UniformMesh) -> Result<MatrixPencil> {
    mesh.require(2)?;
    let h = mesh.spacing();
    let (k, _) = assemble_stencil_1d(mesh.cells(), &[(-1, -1.0), (0, 2.0), (1, -1.0)], 1.0 / (h * h));
    let (m, lumped) = assemble_stencil_1d(mesh.cells(), &[(-1, 1.0), (0, 4.0), (1, 1.0)], 1.0 / 6.0);
    MatrixPencil::with_lumped(k, m, Some(lumped))
}

fn check_2d_scale(mesh: &UniformMesh) -> Result<()> {
    mesh.require(2)?;
    if mesh.cells() > MAX_2D_CELLS {
        let m = mesh.interior();
        return Err(Error::Scale {
            order: m * m,
            limit: (MAX_2D_CELLS - 1) * (MAX_2D_CELLS - 1),
        });
    }
    Ok(())
}

/// Linear elements on the right-triangle mesh of the square. Stiffness
/// blocks `(A, -I)/h²` with `A = tridiag(-1, 4, -1)`; mass blocks
/// `(H, D, Dᵀ)/12` with `H = tridiag(1, 6, 1)` and `D` lower bidiagonal.
pub fn assemble_linear_triangle_2d(mesh: &UniformMesh) -> Result<MatrixPencil> {
    check_2d_scale(mesh)?;
    let h = mesh.spacing();
    let stiff = [(0, 0, 4.0), (0, -1, -1.0), (0, 1, -1.0), (-1, 0, -1.0), (1, 0, -1.0)];
    let mass = [
        (0, 0, 6.0),
        (0, -1, 1.0),
        (0, 1, 1.0),
        (1, 0, 1.0),
        (1, -1, 1.0),
        (-1, 0, 1.0),
        (-1, 1, 1.0),
    ];
    let (k, _) = assemble_stencil_2d(mesh.cells(), &stiff, 1.0 / (h * h));
    let (m, lumped) = assemble_stencil_2d(mesh.cells(), &mass, 1.0 / 12.0);
    MatrixPencil::with_lumped(k, m, Some(lumped))
}

/// Bilinear elements on the square. Stiffness blocks `(A, -B)/(3h²)` with
/// `A = tridiag(-1, 8, -1)`, `B = tridiag(1, 1, 1)`; mass blocks
/// `(4C, C)/36` with `C = tridiag(1, 4, 1)`.
pub fn assemble_bilinear_2d(mesh: &UniformMesh) -> Result<MatrixPencil> {
    check_2d_scale(mesh)?;
    let h = mesh.spacing();
    let mut stiff = vec![(0, 0, 8.0), (0, -1, -1.0), (0, 1, -1.0)];
    let mut mass = vec![(0, 0, 16.0), (0, -1, 4.0), (0, 1, 4.0)];
    for dp in [-1, 1] {
        for di in [-1, 0, 1] {
            stiff.push((dp, di, -1.0));
            mass.push((dp, di, if di == 0 { 4.0 } else { 1.0 }));
        }
    }
    let (k, _) = assemble_stencil_2d(mesh.cells(), &stiff, 1.0 / (3.0 * h * h));
    let (m, lumped) = assemble_stencil_2d(mesh.cells(), &mass, 1.0 / 36.0);
    MatrixPencil::with_lumped(k, m, Some(lumped))
}

/// P2 element stiffness `∫φ'_a φ'_b` on a cell of width `h`, nodes ordered
/// (left, midpoint, right).
pub fn quadratic_element_stiffness(h: f64) -> [[f64; 3]; 3] {
    let s = 1.0 / (3.0 * h);
    [
        [7.0 * s, -8.0 * s, s],
        [-8.0 * s, 16.0 * s, -8.0 * s],
        [s, -8.0 * s, 7.0 * s],
    ]
}

/// P2 element mass `∫φ_a φ_b`.
pub fn quadratic_element_mass(h: f64) -> [[f64; 3]; 3] {
    let s = h / 30.0;
    [
        [4.0 * s, 2.0 * s, -s],
        [2.0 * s, 16.0 * s, 2.0 * s],
        [-s, 2.0 * s, 4.0 * s],
    ]
}

/// Continuous quadratic elements on `n` cells: order `2n - 1`, unknowns
/// ordered left to right (vertices and midpoints interleaved).
pub fn assemble_quadratic_1d(mesh: &UniformMesh) -> Result<MatrixPencil> {
    let n = mesh.cells();
    let h = mesh.spacing();
    let order = 2 * n - 1;
    let ke = quadratic_element_stiffness(h);
    let me = quadratic_element_mass(h);
    let mut k = SymBand::zeros(order, 2);
    let mut m = SymBand::zeros(order, 2);
    let mut lumped = vec![0.0; order];
    for cell in 0..n {
        // Global node numbers 2·cell + a; unknown index = node - 1.
        for a in 0..3 {
            let ga = 2 * cell + a;
            if ga == 0 || ga == 2 * n {
                continue;
            }
            let ia = ga - 1;
            for b in 0..3 {
                lumped[ia] += me[a][b];
                let gb = 2 * cell + b;
                if gb == 0 || gb == 2 * n {
                    continue;
                }
                let ib = gb - 1;
                if ib <= ia {
                    k.add(ia, ib, ke[a][b]);
                    m.add(ia, ib, me[a][b]);
                }
            }
        }
    }
    MatrixPencil::with_lumped(k, m, Some(lumped))
}

/// Legendre–Galerkin discretization of degree `N` on `[-1, 1]` with the
/// basis `φ_k = (L_k - L_{k+2}) / √(4k + 6)`, `k = 0..=N-2`. The stiffness is
/// the identity; the mass couples only `k` and `k ± 2`.
pub fn assemble_legendre_1d(degree: usize) -> Result<MatrixPencil> {
    if degree < 2 {
        return Err(Error::Degree { degree, min: 2 });
    }
    let order = degree - 1;
    let norm = |k: usize| 2.0 / (2 * k + 1) as f64;
    let scale = |k: usize| 1.0 / ((4 * k + 6) as f64).sqrt();
    let mut m = SymBand::zeros(order, 2);
    for k in 0..order {
        m.set(k, k, (norm(k) + norm(k + 2)) * scale(k) * scale(k));
        if k + 2 < order {
            m.set(k + 2, k, -norm(k + 2) * scale(k) * scale(k + 2));
        }
    }
    MatrixPencil::new(SymBand::from_diagonal(vec![1.0; order]), m)
}
