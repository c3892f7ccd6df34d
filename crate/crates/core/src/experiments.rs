//! End-to-end experiment drivers: the 1D and 2D method comparisons, the
//! trusted-count table, the asymptotic-law table, and the closed-form vs
//! assembled-pencil oracle suite.

use std::f64::consts::PI;

use serde::Serialize;

use crate::assembly::{assemble_bilinear_2d, assemble_linear_1d, assemble_linear_triangle_2d, MatrixPencil};
use crate::asymptotics::{li_yau_bound, pleijel, polya_bound, weyl};
use crate::discretize::{compute_spectrum, legendre_spectral_1d, quadratic_fem_1d};
use crate::dispersion::{closed_form, exact_for_modes, exact_spectrum};
use crate::domain::{DomainSpec, Method, ModeIndex, UniformMesh};
use crate::eig::{self, EigenSolveOptions};
use crate::error::{Error, Result};
use crate::ordering::tensorize_magnitude;
use crate::reliability::{Pairing, ReliabilityReport};
use crate::spectrum::DiscreteSpectrum;
use crate::theorem::{predicted_jn, TheoremParams};

fn require_power_of_two(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::MeshTooCoarse { cells: n, min });
    }
    if !n.is_power_of_two() {
        return Err(Error::PowerOfTwo(n));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct Example1 {
    pub n: usize,
    pub tolerance: f64,
    pub reports: Vec<ReliabilityReport>,
    /// Reference abscissas `√N` and `2N/π`.
    pub sqrt_n: f64,
    pub two_n_over_pi: f64,
}

/// Linear elements, lumped finite differences and Legendre spectral of
/// degree `n` on `[-1, 1]` with `n - 1` unknowns each, rank paired, at
/// tolerance `1/n`.
pub fn example1(n: usize) -> Result<Example1> {
    require_power_of_two(n, 64)?;
    let domain = DomainSpec::reference(1)?;
    let mesh = UniformMesh::on(&domain, n)?;
    let tol = 1.0 / n as f64;
    let exact = exact_spectrum(&domain, n - 1)?;
    let spectra = [
        closed_form(Method::Linear1D, &mesh)?,
        closed_form(Method::Lumped1D, &mesh)?,
        legendre_spectral_1d(n, &EigenSolveOptions::banded())?,
    ];
    let reports = spectra
        .iter()
        .map(|s| ReliabilityReport::build(s, &exact, Pairing::ByRank, tol, None))
        .collect::<Result<_>>()?;
    let dof = (n - 1) as f64;
    Ok(Example1 {
        n,
        tolerance: tol,
        reports,
        sqrt_n: dof.sqrt(),
        two_n_over_pi: 2.0 * dof / PI,
    })
}

/// Largest `k` with relative error within tolerance, per row `j` of the
/// mode lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegionPoint {
    pub j: usize,
    pub k_max: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Example2Method {
    pub report: ReliabilityReport,
    pub region: Vec<RegionPoint>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Example2 {
    pub n: usize,
    pub tolerance: f64,
    pub methods: Vec<Example2Method>,
}

fn region(spectrum: &DiscreteSpectrum, relerr: &[f64], tol: f64) -> Vec<RegionPoint> {
    let m = spectrum.max_mode();
    let mut k_max = vec![0; m + 1];
    for (e, &r) in spectrum.entries().iter().zip(relerr) {
        if let ModeIndex::Two(j, k) = e.mode {
            if r <= tol {
                k_max[j] = k_max[j].max(k);
            }
        }
    }
    (1..=m).map(|j| RegionPoint { j, k_max: k_max[j] }).collect()
}

/// Bilinear consistent, 9-point lumped, biquadratic on `n/2` cells and
/// Legendre spectral of degree `n`, all on `[-1, 1]²` with `(n - 1)²`
/// unknowns, paired by mode index at tolerance `1/n`.
pub fn example2(n: usize) -> Result<Example2> {
    require_power_of_two(n, 16)?;
    let domain = DomainSpec::reference(2)?;
    let mesh = UniformMesh::on(&domain, n)?;
    let tol = 1.0 / n as f64;
    let line = DomainSpec::reference(1)?;
    let spectra = [
        closed_form(Method::BilinearConsistent2D, &mesh)?,
        closed_form(Method::NinePointLumped2D, &mesh)?,
        tensorize_magnitude(&quadratic_fem_1d(
            &UniformMesh::on(&line, n / 2)?,
            &EigenSolveOptions::banded(),
        )?)?,
        tensorize_magnitude(&legendre_spectral_1d(n, &EigenSolveOptions::banded())?)?,
    ];
    let methods = spectra
        .iter()
        .map(|s| {
            let exact = exact_for_modes(s)?;
            let report = ReliabilityReport::build(s, &exact, Pairing::ByModeIndex, tol, None)?;
            let region = region(s, &report.per_eigenvalue_relerr, tol);
            Ok(Example2Method { report, region })
        })
        .collect::<Result<_>>()?;
    Ok(Example2 {
        n,
        tolerance: tol,
        methods,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremRow {
    pub params: TheoremParams,
    pub predicted_jn: f64,
    pub empirical: Option<EmpiricalCount>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmpiricalCount {
    pub method: Method,
    pub dof: usize,
    pub count: usize,
    pub ratio: f64,
}

/// Largest per-axis order for which a measured count is attempted with the
/// dense solver.
const EMPIRICAL_DENSE_LIMIT: usize = 1024;

fn perfect_square_root(n: u64) -> Option<usize> {
    let r = (n as f64).sqrt().round() as u64;
    (r * r == n).then_some(r as usize)
}

/// Cells per axis, and the method, giving exactly `params.dof` unknowns on
/// the unit extent, for the element families this crate computes.
fn matching_method(params: &TheoremParams) -> Option<(Method, usize)> {
    if params.m() != 1 {
        return None;
    }
    let per_axis = match params.d() {
        1 => params.dof() as usize,
        2 => perfect_square_root(params.dof())?,
        _ => return None,
    };
    match (params.k(), params.d()) {
        (2, 1) => Some((Method::Linear1D, per_axis + 1)),
        (2, 2) => Some((Method::BilinearConsistent2D, per_axis + 1)),
        (3, d) if per_axis % 2 == 1 && per_axis <= EMPIRICAL_DENSE_LIMIT => Some((
            if d == 1 {
                Method::Quadratic1D
            } else {
                Method::QuadraticQ2_2D
            },
            per_axis.div_ceil(2),
        )),
        _ => None,
    }
}

/// Trusted count measured with `τ = h^α`, `h = 1/cells`.
pub fn empirical_count(params: &TheoremParams) -> Result<Option<EmpiricalCount>> {
    let Some((method, cells)) = matching_method(params) else {
        return Ok(None);
    };
    let d = params.d() as usize;
    let domain = DomainSpec::new(d, 1.0)?;
    let spectrum = compute_spectrum(method, &domain, cells, &EigenSolveOptions::banded())?;
    let exact = exact_for_modes(&spectrum)?;
    let pairing = if d == 1 {
        Pairing::ByRank
    } else {
        Pairing::ByModeIndex
    };
    let tol = (1.0 / cells as f64).powf(params.alpha());
    let report = ReliabilityReport::build(&spectrum, &exact, pairing, tol, Some(predicted_jn(params)))?;
    Ok(Some(EmpiricalCount {
        method,
        dof: report.dof,
        count: report.reliable_count_total,
        ratio: report.reliable_count_total as f64 / predicted_jn(params),
    }))
}

pub fn theorem_table(params: &[TheoremParams], with_empirical: bool) -> Result<Vec<TheoremRow>> {
    params
        .iter()
        .map(|p| {
            Ok(TheoremRow {
                params: *p,
                predicted_jn: predicted_jn(p),
                empirical: if with_empirical { empirical_count(p)? } else { None },
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticsRow {
    pub n: usize,
    pub exact: Option<f64>,
    pub exact_partial_sum: Option<f64>,
    pub weyl: f64,
    pub pleijel: f64,
    pub polya: f64,
    pub li_yau_sum: f64,
    pub li_yau_individual: f64,
}

/// Laws for `n = 1..=max_n`; exact values where the domain is an interval
/// or a square.
pub fn asymptotics_table(domain: &DomainSpec, max_n: usize) -> Result<Vec<AsymptoticsRow>> {
    let exact = match domain.dim() {
        1 | 2 => Some(exact_spectrum(domain, max_n)?.values()),
        _ => None,
    };
    let mut sum = 0.0;
    Ok((1..=max_n)
        .map(|n| {
            let ex = exact.as_ref().map(|v| v[n - 1]);
            if let Some(v) = ex {
                sum += v;
            }
            let ly = li_yau_bound(domain, n);
            AsymptoticsRow {
                n,
                exact: ex,
                exact_partial_sum: ex.map(|_| sum),
                weyl: weyl(domain, n),
                pleijel: pleijel(domain, n),
                polya: polya_bound(domain, n),
                li_yau_sum: ly.sum_bound,
                li_yau_individual: ly.individual_bound,
            }
        })
        .collect())
}

pub const ORACLE_TOLERANCE: f64 = 1e-9;
pub const ORACLE_MESHES: [usize; 4] = [4, 8, 16, 32];

/// A deliberate perturbation of one stiffness entry, for negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Corruption {
    pub method: Method,
    pub row: usize,
    pub col: usize,
    pub delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleCase {
    pub method: Method,
    pub n: usize,
    /// 1-based rank of the worst eigenvalue.
    pub index: usize,
    pub deviation: f64,
}

/// A pencil entry that differs from a clean reassembly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntryDiff {
    pub method: Method,
    pub n: usize,
    pub matrix: &'static str,
    pub row: usize,
    pub col: usize,
    pub value: f64,
    pub expected: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub tolerance: f64,
    pub cases: Vec<OracleCase>,
    pub worst: Option<OracleCase>,
    pub offending_entries: Vec<EntryDiff>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.deviation <= self.tolerance)
    }
}

const ORACLE_METHODS: [Method; 6] = [
    Method::Linear1D,
    Method::Lumped1D,
    Method::Extrapolated1D,
    Method::FivePointLumped2D,
    Method::BilinearConsistent2D,
    Method::NinePointLumped2D,
];

/// The assembled pencils whose eigenvalues should reproduce a closed form;
/// the extrapolated method averages two of them rank by rank.
fn oracle_pencils(method: Method, mesh: &UniformMesh) -> Result<Vec<MatrixPencil>> {
    let lump = |p: MatrixPencil| p.lumped().expect("stencil pencils carry row sums");
    Ok(match method {
        Method::Linear1D => vec![assemble_linear_1d(mesh)?],
        Method::Lumped1D => vec![lump(assemble_linear_1d(mesh)?)],
        Method::Extrapolated1D => {
            let p = assemble_linear_1d(mesh)?;
            vec![p.clone(), lump(p)]
        }
        Method::FivePointLumped2D => vec![lump(assemble_linear_triangle_2d(mesh)?)],
        Method::BilinearConsistent2D => vec![assemble_bilinear_2d(mesh)?],
        Method::NinePointLumped2D => vec![lump(assemble_bilinear_2d(mesh)?)],
        other => return Err(Error::NoClosedForm(other)),
    })
}

fn diff_pencils(method: Method, n: usize, got: &MatrixPencil, want: &MatrixPencil, out: &mut Vec<EntryDiff>) {
    for (matrix, a, b) in [
        ("stiffness", got.stiffness(), want.stiffness()),
        ("mass", got.mass(), want.mass()),
    ] {
        let order = a.order();
        let reach = a.bandwidth().max(b.bandwidth());
        for c in 0..order {
            for r in c..order.min(c + reach + 1) {
                let (x, y) = (a.get(r, c), b.get(r, c));
                if x != y {
                    out.push(EntryDiff {
                        method,
                        n,
                        matrix,
                        row: r,
                        col: c,
                        value: x,
                        expected: y,
                    });
                }
            }
        }
    }
}

/// Closed forms against dense solves of assembled pencils for every
/// oracle mesh up to `max_n`. A corruption, if given, is applied to the
/// stiffness of the named method before solving; entries that differ from
/// a clean reassembly are listed in the report.
pub fn oracle_check(max_n: usize, corruption: Option<Corruption>) -> Result<OracleReport> {
    if max_n > crate::assembly::MAX_2D_CELLS {
        return Err(Error::Scale {
            order: max_n,
            limit: crate::assembly::MAX_2D_CELLS,
        });
    }
    let opts = EigenSolveOptions::default();
    let mut cases = Vec::new();
    let mut offending = Vec::new();
    for &n in ORACLE_MESHES.iter().filter(|&&n| n <= max_n) {
        let mesh = UniformMesh::unit(n)?;
        for method in ORACLE_METHODS {
            let clean = oracle_pencils(method, &mesh)?;
            let mut pencils = clean.clone();
            if let Some(c) = corruption.filter(|c| c.method == method) {
                for p in &mut pencils {
                    let k = p.stiffness_mut();
                    if c.row < k.order() && c.col < k.order() {
                        let v = k.get(c.row, c.col);
                        k.set(c.row, c.col, v + c.delta);
                    }
                }
                for (got, want) in pencils.iter().zip(&clean) {
                    diff_pencils(method, n, got, want, &mut offending);
                }
            }
            let solved = pencils
                .iter()
                .map(|p| eig::solve_dense(p, &opts))
                .collect::<Result<Vec<_>>>()?;
            let numeric: Vec<f64> = (0..solved[0].len())
                .map(|i| solved.iter().map(|s| s[i]).sum::<f64>() / solved.len() as f64)
                .collect();
            let closed = closed_form(method, &mesh)?.values();
            let (index, deviation) = numeric
                .iter()
                .zip(&closed)
                .map(|(a, b)| (a - b).abs() / b.abs())
                .enumerate()
                .fold((0, 0.0), |best, (i, d)| if d > best.1 { (i, d) } else { best });
            cases.push(OracleCase {
                method,
                n,
                index: index + 1,
                deviation,
            });
        }
    }
    offending.dedup_by(|a, b| a.method == b.method && a.matrix == b.matrix && a.row == b.row && a.col == b.col && a.n == b.n);
    let worst = cases
        .iter()
        .copied()
        .max_by(|a, b| a.deviation.total_cmp(&b.deviation));
    Ok(OracleReport {
        tolerance: ORACLE_TOLERANCE,
        cases,
        worst,
        offending_entries: offending,
    })
}
