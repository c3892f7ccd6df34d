//! Domains, meshes, mode labels and method tags.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// An interval `[a, a + L]`, a square of side `L`, or (for asymptotic
/// queries only) a cube of side `L`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DomainSpec {
    dim: usize,
    extent: f64,
}

impl DomainSpec {
    pub fn new(dim: usize, extent: f64) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::Dimension { dim });
        }
        if !(extent.is_finite() && extent > 0.0) {
            return Err(Error::Extent(extent));
        }
        Ok(Self { dim, extent })
    }

    pub fn interval(length: f64) -> Result<Self> {
        Self::new(1, length)
    }

    pub fn square(side: f64) -> Result<Self> {
        Self::new(2, side)
    }

    pub fn unit_interval() -> Self {
        Self { dim: 1, extent: 1.0 }
    }

    pub fn unit_square() -> Self {
        Self { dim: 2, extent: 1.0 }
    }

    /// `[-1, 1]^dim`, the reference domain of the Legendre discretization.
    pub fn reference(dim: usize) -> Result<Self> {
        Self::new(dim, 2.0)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Side length along every axis.
    pub fn extent(&self) -> f64 {
        self.extent
    }

    /// Lebesgue measure |Ω|.
    pub fn volume(&self) -> f64 {
        self.extent.powi(self.dim as i32)
    }

    /// Volume of the unit ball in R^d, π^{d/2} / Γ(1 + d/2).
    pub fn unit_ball_volume(&self) -> f64 {
        match self.dim {
            1 => 2.0,
            2 => PI,
            _ => 4.0 * PI / 3.0,
        }
    }
}

/// Uniform partition of every axis into `cells` subintervals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UniformMesh {
    cells: usize,
    extent: f64,
}

impl UniformMesh {
    pub fn new(cells: usize, extent: f64) -> Result<Self> {
        if !(extent.is_finite() && extent > 0.0) {
            return Err(Error::Extent(extent));
        }
        if cells == 0 {
            return Err(Error::MeshTooCoarse { cells, min: 1 });
        }
        Ok(Self { cells, extent })
    }

    pub fn unit(cells: usize) -> Result<Self> {
        Self::new(cells, 1.0)
    }

    pub fn on(domain: &DomainSpec, cells: usize) -> Result<Self> {
        Self::new(cells, domain.extent())
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn spacing(&self) -> f64 {
        self.extent / self.cells as f64
    }

    /// Interior (Dirichlet) unknowns per axis.
    pub fn interior(&self) -> usize {
        self.cells - 1
    }

    /// θ_j = jπ/n.
    pub fn theta(&self, j: usize) -> f64 {
        j as f64 * PI / self.cells as f64
    }

    pub(crate) fn require(&self, min: usize) -> Result<()> {
        if self.cells < min {
            Err(Error::MeshTooCoarse {
                cells: self.cells,
                min,
            })
        } else {
            Ok(())
        }
    }
}

/// Mode label of one eigenvalue: `j` in 1D, `(j, k)` in 2D. The derived
/// ordering is lexicographic, which is the tie-break used everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModeIndex {
    One(usize),
    Two(usize, usize),
}

impl ModeIndex {
    pub fn dim(&self) -> usize {
        match self {
            ModeIndex::One(_) => 1,
            ModeIndex::Two(..) => 2,
        }
    }

    pub fn first(&self) -> usize {
        match *self {
            ModeIndex::One(j) | ModeIndex::Two(j, _) => j,
        }
    }

    pub fn second(&self) -> Option<usize> {
        match *self {
            ModeIndex::One(_) => None,
            ModeIndex::Two(_, k) => Some(k),
        }
    }

    /// Continuum Dirichlet eigenvalue of this mode on an axis of length `extent`.
    pub fn exact_eigenvalue(&self, extent: f64) -> f64 {
        let w = PI / extent;
        match *self {
            ModeIndex::One(j) => (j as f64 * w).powi(2),
            ModeIndex::Two(j, k) => (j as f64 * w).powi(2) + (k as f64 * w).powi(2),
        }
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeIndex::One(j) => write!(f, "{j}"),
            ModeIndex::Two(j, k) => write!(f, "({j},{k})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Method {
    Linear1D,
    Lumped1D,
    Extrapolated1D,
    FivePointLumped2D,
    NinePointLumped2D,
    BilinearConsistent2D,
    Extrapolated2D,
    Quadratic1D,
    QuadraticQ2_2D,
    LegendreSpectral1D,
    LegendreSpectral2D,
    Exact,
}

impl Method {
    pub const ALL: [Method; 12] = [
        Method::Linear1D,
        Method::Lumped1D,
        Method::Extrapolated1D,
        Method::FivePointLumped2D,
        Method::NinePointLumped2D,
        Method::BilinearConsistent2D,
        Method::Extrapolated2D,
        Method::Quadratic1D,
        Method::QuadraticQ2_2D,
        Method::LegendreSpectral1D,
        Method::LegendreSpectral2D,
        Method::Exact,
    ];

    /// Spatial dimension implied by the tag; `None` for `Exact`.
    pub fn dim(&self) -> Option<usize> {
        use Method::*;
        match self {
            Linear1D | Lumped1D | Extrapolated1D | Quadratic1D | LegendreSpectral1D => Some(1),
            FivePointLumped2D | NinePointLumped2D | BilinearConsistent2D | Extrapolated2D
            | QuadraticQ2_2D | LegendreSpectral2D => Some(2),
            Exact => None,
        }
    }

    pub fn name(&self) -> &'static str {
        use Method::*;
        match self {
            Linear1D => "linear-1d",
            Lumped1D => "lumped-1d",
            Extrapolated1D => "extrapolated-1d",
            FivePointLumped2D => "five-point-2d",
            NinePointLumped2D => "nine-point-2d",
            BilinearConsistent2D => "bilinear-2d",
            Extrapolated2D => "extrapolated-2d",
            Quadratic1D => "quadratic-1d",
            QuadraticQ2_2D => "quadratic-q2-2d",
            LegendreSpectral1D => "legendre-1d",
            LegendreSpectral2D => "legendre-2d",
            Exact => "exact",
        }
    }

    pub fn from_name(name: &str) -> Option<Method> {
        Method::ALL.into_iter().find(|m| m.name() == name)
    }

    pub fn is_spectral(&self) -> bool {
        matches!(self, Method::LegendreSpectral1D | Method::LegendreSpectral2D)
    }

    pub(crate) fn check_domain(&self, domain: &DomainSpec) -> Result<()> {
        match self.dim() {
            Some(expected) if expected != domain.dim() => Err(Error::DimensionMismatch {
                method: *self,
                expected,
                actual: domain.dim(),
            }),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
