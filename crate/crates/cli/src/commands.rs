use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;

use serde::Serialize;
use spectra_trust::assembly::{
    assemble_bilinear_2d, assemble_legendre_1d, assemble_linear_1d, assemble_linear_triangle_2d,
    assemble_quadratic_1d,
};
use spectra_trust::discretize::compute_spectrum;
use spectra_trust::dispersion::{exact_for_modes, exact_spectrum};
use spectra_trust::experiments::{
    asymptotics_table, example1, example2, oracle_check, theorem_table, Corruption,
};
use spectra_trust::ordering::apply_ordering;
use spectra_trust::reliability::{count_reliable, relative_errors};
use spectra_trust::theorem::predicted_jn;
use spectra_trust::{
    DiscreteSpectrum, DomainSpec, EigenSolveOptions, Error, Method, ModeIndex, OrderingStrategy, Pairing,
    TheoremParams, UniformMesh,
};

use crate::args::{AsymptoticsArgs, DumpArgs, ExampleArgs, OracleArgs, SpectrumArgs, TheoremArgs};
use crate::report::{emit, open};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        use Error::*;
        match e {
            MeshTooCoarse { .. }
            | Dimension { .. }
            | DimensionMismatch { .. }
            | OddMidpoint { .. }
            | Scale { .. }
            | Degree { .. }
            | Extent(_)
            | SolverTolerance(_)
            | RateRange { .. }
            | TheoremParams(_)
            | Tolerance(_)
            | NotSeparable(_)
            | PowerOfTwo(_)
            | NoClosedForm(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

pub type CliResult = Result<(), CliError>;

fn domain_for(method: Method, dim: usize, extent: Option<f64>) -> Result<DomainSpec, Error> {
    let dim = method.dim().unwrap_or(dim);
    let extent = extent.unwrap_or(if method.is_spectral() { 2.0 } else { 1.0 });
    DomainSpec::new(dim, extent)
}

struct Computed {
    method: Method,
    spectrum: DiscreteSpectrum,
    exact: DiscreteSpectrum,
    pairing: Pairing,
}

fn compute(args: &SpectrumArgs) -> Result<Vec<Computed>, CliError> {
    let pairing = if args.by_mode {
        Pairing::ByModeIndex
    } else {
        Pairing::ByRank
    };
    args.methods
        .iter()
        .map(|&method| {
            let domain = domain_for(method, args.dim, args.extent)?;
            let spectrum = compute_spectrum(method, &domain, args.n, &EigenSolveOptions::banded())?;
            let exact = match pairing {
                Pairing::ByModeIndex => exact_for_modes(&spectrum)?,
                Pairing::ByRank => exact_spectrum(&domain, spectrum.len())?,
            };
            Ok(Computed {
                method,
                spectrum,
                exact,
                pairing,
            })
        })
        .collect()
}

#[derive(Serialize)]
struct SpectrumRow {
    method: &'static str,
    level: usize,
    j: usize,
    k: Option<usize>,
    numeric: f64,
    exact: f64,
    rel_error: f64,
}

pub fn spectrum(args: &SpectrumArgs) -> CliResult {
    let mut rows = Vec::new();
    for c in compute(args)? {
        // Exact partner of each numeric entry under the chosen pairing.
        let partner: HashMap<ModeIndex, (f64, f64)> = match c.pairing {
            Pairing::ByRank => c
                .spectrum
                .entries()
                .iter()
                .zip(c.exact.entries())
                .map(|(e, x)| (e.mode, (e.value, x.value)))
                .collect(),
            Pairing::ByModeIndex => {
                relative_errors(&c.spectrum, &c.exact, c.pairing)?;
                c.spectrum
                    .entries()
                    .iter()
                    .map(|e| (e.mode, (e.value, c.exact.value_at(e.mode).unwrap_or(f64::NAN))))
                    .collect()
            }
        };
        let order: Vec<(usize, ModeIndex)> =
            if c.spectrum.domain().dim() == 2 && args.ordering != OrderingStrategy::Magnitude {
                apply_ordering(&c.spectrum, args.ordering)?
                    .into_iter()
                    .map(|o| (o.level, o.entry.mode))
                    .collect()
            } else {
                c.spectrum
                    .entries()
                    .iter()
                    .enumerate()
                    .map(|(i, e)| (i + 1, e.mode))
                    .collect()
            };
        for (level, mode) in order {
            let (numeric, exact) = partner[&mode];
            rows.push(SpectrumRow {
                method: c.method.name(),
                level,
                j: mode.first(),
                k: mode.second(),
                numeric,
                exact,
                rel_error: (numeric - exact).abs() / exact,
            });
        }
    }
    Ok(emit(&rows, &args.output)?)
}

/// Polynomial degree + 1 and dimension of the element behind a method,
/// for the predicted count.
fn element_of(method: Method) -> Option<(u32, u32)> {
    use Method::*;
    match method {
        Linear1D | Lumped1D => Some((2, 1)),
        FivePointLumped2D | NinePointLumped2D | BilinearConsistent2D => Some((2, 2)),
        Quadratic1D => Some((3, 1)),
        QuadraticQ2_2D => Some((3, 2)),
        _ => None,
    }
}

#[derive(Serialize)]
struct ReliabilityRow {
    method: &'static str,
    dof: usize,
    tolerance: f64,
    pairing: &'static str,
    reliable_total: usize,
    reliable_prefix: usize,
    fraction: f64,
    predicted_jn: Option<f64>,
}

fn pairing_name(p: Pairing) -> &'static str {
    match p {
        Pairing::ByRank => "rank",
        Pairing::ByModeIndex => "mode",
    }
}

pub fn reliability(args: &SpectrumArgs) -> CliResult {
    let tol = args.tol.resolve(args.n, args.alpha);
    let mut rows = Vec::new();
    for c in compute(args)? {
        let rel = relative_errors(&c.spectrum, &c.exact, c.pairing)?;
        let counts = count_reliable(&rel, tol)?;
        let predicted = element_of(c.method)
            .and_then(|(k, d)| TheoremParams::new(1, k, d, args.alpha, c.spectrum.len() as u64).ok())
            .map(|p| predicted_jn(&p));
        rows.push(ReliabilityRow {
            method: c.method.name(),
            dof: c.spectrum.len(),
            tolerance: tol,
            pairing: pairing_name(c.pairing),
            reliable_total: counts.total,
            reliable_prefix: counts.prefix,
            fraction: counts.fraction,
            predicted_jn: predicted,
        });
    }
    Ok(emit(&rows, &args.output)?)
}

const DEFAULT_THEOREM_CASES: [(u32, u32, u32, f64); 12] = [
    (1, 2, 1, 1.0),
    (1, 2, 2, 1.0),
    (1, 2, 1, 2.0),
    (1, 3, 1, 1.0),
    (1, 3, 2, 1.0),
    (1, 3, 1, 2.0),
    (1, 3, 2, 2.0),
    (1, 3, 2, 4.0),
    (2, 3, 1, 1.0),
    (2, 3, 2, 1.0),
    (2, 4, 1, 1.0),
    (2, 4, 2, 1.0),
];

fn parse_params(text: &str, default_dof: u64) -> Result<TheoremParams, CliError> {
    let bad = || CliError::Usage(format!("expected m,k,d,alpha[,N], got {text:?}"));
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 4 && parts.len() != 5 {
        return Err(bad());
    }
    let int = |s: &str| s.parse::<u32>().map_err(|_| bad());
    let alpha = parts[3].parse::<f64>().map_err(|_| bad())?;
    let dof = match parts.get(4) {
        Some(s) => s.parse::<u64>().map_err(|_| bad())?,
        None => default_dof,
    };
    Ok(TheoremParams::new(int(parts[0])?, int(parts[1])?, int(parts[2])?, alpha, dof)?)
}

#[derive(Serialize)]
struct TheoremOutRow {
    m: u32,
    k: u32,
    d: u32,
    alpha: f64,
    dof: u64,
    predicted_jn: f64,
    empirical_method: Option<&'static str>,
    empirical_dof: Option<usize>,
    empirical_count: Option<usize>,
    ratio: Option<f64>,
}

pub fn theorem(args: &TheoremArgs) -> CliResult {
    let params: Vec<TheoremParams> = if args.params.is_empty() {
        DEFAULT_THEOREM_CASES
            .iter()
            .map(|&(m, k, d, a)| TheoremParams::new(m, k, d, a, args.n))
            .collect::<Result<_, _>>()?
    } else {
        args.params
            .iter()
            .map(|p| parse_params(p, args.n))
            .collect::<Result<_, _>>()?
    };
    let rows: Vec<TheoremOutRow> = theorem_table(&params, args.empirical)?
        .into_iter()
        .map(|r| TheoremOutRow {
            m: r.params.m(),
            k: r.params.k(),
            d: r.params.d(),
            alpha: r.params.alpha(),
            dof: r.params.dof(),
            predicted_jn: r.predicted_jn,
            empirical_method: r.empirical.map(|e| e.method.name()),
            empirical_dof: r.empirical.map(|e| e.dof),
            empirical_count: r.empirical.map(|e| e.count),
            ratio: r.empirical.map(|e| e.ratio),
        })
        .collect();
    Ok(emit(&rows, &args.output)?)
}

#[derive(Serialize)]
struct Example1Row {
    method: &'static str,
    dof: usize,
    tolerance: f64,
    reliable_total: usize,
    reliable_prefix: usize,
    fraction: f64,
    count_over_sqrt_n: f64,
    sqrt_n: f64,
    two_n_over_pi: f64,
}

fn write_curves(path: &std::path::Path, header: &[&str], columns: &[&[f64]]) -> std::io::Result<()> {
    let mut out = open(Some(path))?;
    writeln!(out, "{}", header.join(","))?;
    let len = columns.first().map_or(0, |c| c.len());
    for i in 0..len {
        let mut line = (i + 1).to_string();
        for c in columns {
            let _ = write!(line, ",{:?}", c[i]);
        }
        writeln!(out, "{line}")?;
    }
    out.flush()
}

pub fn example_1(args: &ExampleArgs) -> CliResult {
    let e = example1(args.n.unwrap_or(4096))?;
    let rows: Vec<Example1Row> = e
        .reports
        .iter()
        .map(|r| Example1Row {
            method: r.method.name(),
            dof: r.dof,
            tolerance: r.tolerance,
            reliable_total: r.reliable_count_total,
            reliable_prefix: r.reliable_prefix,
            fraction: r.fraction,
            count_over_sqrt_n: r.reliable_count_total as f64 / e.sqrt_n,
            sqrt_n: e.sqrt_n,
            two_n_over_pi: e.two_n_over_pi,
        })
        .collect();
    if let Some(path) = &args.curves {
        let mut header = vec!["rank"];
        header.extend(e.reports.iter().map(|r| r.method.name()));
        let cols: Vec<&[f64]> = e.reports.iter().map(|r| r.per_eigenvalue_relerr.as_slice()).collect();
        write_curves(path, &header, &cols)?;
        if let Some(script) = &args.gnuplot {
            let mut s = String::new();
            let _ = writeln!(s, "set datafile separator ','");
            let _ = writeln!(s, "set key autotitle columnhead");
            let _ = writeln!(s, "set logscale y");
            let _ = writeln!(s, "set xlabel 'eigenvalue index'");
            let _ = writeln!(s, "set ylabel 'relative error'");
            let _ = writeln!(s, "set arrow from {:?}, graph 0 to {:?}, graph 1 nohead", e.sqrt_n, e.sqrt_n);
            let _ = writeln!(
                s,
                "set arrow from {:?}, graph 0 to {:?}, graph 1 nohead",
                e.two_n_over_pi, e.two_n_over_pi
            );
            let _ = writeln!(s, "tol = {:?}", e.tolerance);
            let plots: Vec<String> = (0..e.reports.len())
                .map(|i| format!("'{}' using 1:{} with lines", path.display(), i + 2))
                .collect();
            let _ = writeln!(s, "plot {}, tol title 'tolerance' dashtype 2", plots.join(", "));
            fs::write(script, s)?;
        }
    }
    Ok(emit(&rows, &args.output)?)
}

#[derive(Serialize)]
struct Example2Row {
    method: &'static str,
    dof: usize,
    tolerance: f64,
    reliable_total: usize,
    fraction: f64,
    count_over_sqrt_n: f64,
    fraction_times_n_quarter: f64,
}

#[derive(Serialize)]
struct RegionRow {
    method: &'static str,
    j: usize,
    k_max: usize,
}

pub fn example_2(args: &ExampleArgs) -> CliResult {
    let e = example2(args.n.unwrap_or(64))?;
    let rows: Vec<Example2Row> = e
        .methods
        .iter()
        .map(|m| {
            let r = &m.report;
            let dof = r.dof as f64;
            Example2Row {
                method: r.method.name(),
                dof: r.dof,
                tolerance: r.tolerance,
                reliable_total: r.reliable_count_total,
                fraction: r.fraction,
                count_over_sqrt_n: r.reliable_count_total as f64 / dof.sqrt(),
                fraction_times_n_quarter: r.fraction * dof.powf(0.25),
            }
        })
        .collect();
    if let Some(path) = &args.curves {
        let region: Vec<RegionRow> = e
            .methods
            .iter()
            .flat_map(|m| {
                m.region.iter().map(|p| RegionRow {
                    method: m.report.method.name(),
                    j: p.j,
                    k_max: p.k_max,
                })
            })
            .collect();
        let mut out = open(Some(path))?;
        crate::report::write_rows(&region, crate::args::Format::Csv, &mut *out)?;
        out.flush()?;
        if let Some(script) = &args.gnuplot {
            let mut s = String::new();
            let _ = writeln!(s, "set datafile separator ','");
            let _ = writeln!(s, "set xlabel 'j'");
            let _ = writeln!(s, "set ylabel 'k'");
            let _ = writeln!(s, "set size square");
            let plots: Vec<String> = e
                .methods
                .iter()
                .map(|m| {
                    let name = m.report.method.name();
                    format!(
                        "'{}' using 2:(stringcolumn(1) eq '{name}' ? $3 : 1/0) with steps title '{name}'",
                        path.display()
                    )
                })
                .collect();
            let _ = writeln!(s, "plot {}", plots.join(", "));
            fs::write(script, s)?;
        }
    }
    Ok(emit(&rows, &args.output)?)
}

pub fn asymptotics(args: &AsymptoticsArgs) -> CliResult {
    let domain = DomainSpec::new(args.dim, args.extent)?;
    let rows = asymptotics_table(&domain, args.n)?;
    Ok(emit(&rows, &args.output)?)
}

fn parse_corruption(text: &str) -> Result<Corruption, CliError> {
    let bad = || CliError::Usage(format!("expected method:row:col:delta, got {text:?}"));
    let parts: Vec<&str> = text.split(':').collect();
    let [m, r, c, d] = parts[..] else {
        return Err(bad());
    };
    Ok(Corruption {
        method: Method::from_name(m).ok_or_else(bad)?,
        row: r.parse().map_err(|_| bad())?,
        col: c.parse().map_err(|_| bad())?,
        delta: d.parse().map_err(|_| bad())?,
    })
}

#[derive(Serialize)]
struct OracleRow {
    method: &'static str,
    n: usize,
    index: usize,
    deviation: f64,
    pass: bool,
}

pub fn oracle(args: &OracleArgs) -> CliResult {
    let corruption = args.corrupt.as_deref().map(parse_corruption).transpose()?;
    let report = oracle_check(args.n, corruption)?;
    let rows: Vec<OracleRow> = report
        .cases
        .iter()
        .map(|c| OracleRow {
            method: c.method.name(),
            n: c.n,
            index: c.index,
            deviation: c.deviation,
            pass: c.deviation <= report.tolerance,
        })
        .collect();
    emit(&rows, &args.output)?;
    if report.passed() {
        eprintln!(
            "oracle-check: PASS ({} method/mesh combinations within {:e})",
            report.cases.len(),
            report.tolerance
        );
        return Ok(());
    }
    let mut msg = String::from("oracle-check: FAIL");
    if let Some(w) = report.worst {
        let _ = write!(
            msg,
            "; worst method={} n={} index={} deviation={:e}",
            w.method.name(),
            w.n,
            w.index,
            w.deviation
        );
    }
    for d in &report.offending_entries {
        let _ = write!(
            msg,
            "\noffending entry: {}[{}][{}] of {} at n={} is {:?}, expected {:?}",
            d.matrix,
            d.row,
            d.col,
            d.method.name(),
            d.n,
            d.value,
            d.expected
        );
    }
    Err(CliError::Failure(msg))
}

pub fn dump_pencil(args: &DumpArgs) -> CliResult {
    let mesh = || UniformMesh::unit(args.n);
    let lumped = |p: spectra_trust::MatrixPencil| p.lumped().expect("nodal pencils carry row sums");
    let pencil = match args.method {
        Method::Linear1D => assemble_linear_1d(&mesh()?)?,
        Method::Lumped1D => lumped(assemble_linear_1d(&mesh()?)?),
        Method::FivePointLumped2D if args.consistent => assemble_linear_triangle_2d(&mesh()?)?,
        Method::FivePointLumped2D => lumped(assemble_linear_triangle_2d(&mesh()?)?),
        Method::BilinearConsistent2D => assemble_bilinear_2d(&mesh()?)?,
        Method::NinePointLumped2D => assemble_bilinear_2d(&mesh()?)?.with_identity_mass(),
        Method::Quadratic1D => assemble_quadratic_1d(&mesh()?)?,
        Method::LegendreSpectral1D => assemble_legendre_1d(args.n)?,
        other => {
            return Err(CliError::Usage(format!("{} has no single assembled pencil", other.name())));
        }
    };
    let mut out = open(args.out.as_deref())?;
    out.write_all(pencil.to_text().as_bytes())?;
    Ok(out.flush()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_parsing() {
        let p = parse_params("1,3,2,1.5", 100).unwrap();
        assert_eq!((p.m(), p.k(), p.d(), p.alpha(), p.dof()), (1, 3, 2, 1.5, 100));
        assert_eq!(parse_params("2,4,1,1,77", 100).unwrap().dof(), 77);
        assert!(matches!(parse_params("1,2", 10), Err(CliError::Usage(_))));
        assert!(matches!(parse_params("1,2,1,9", 10), Err(CliError::Usage(_))));
    }

    #[test]
    fn corruption_parsing() {
        let c = parse_corruption("bilinear-2d:2:1:0.5").unwrap();
        assert_eq!(c.method, Method::BilinearConsistent2D);
        assert_eq!((c.row, c.col, c.delta), (2, 1, 0.5));
        assert!(parse_corruption("bilinear-2d:2:1").is_err());
        assert!(parse_corruption("nope:1:1:1").is_err());
    }

    #[test]
    fn library_errors_map_to_exit_classes() {
        assert!(matches!(CliError::from(Error::PowerOfTwo(3)), CliError::Usage(_)));
        assert!(matches!(
            CliError::from(Error::Convergence { index: 0, iterations: 60 }),
            CliError::Failure(_)
        ));
    }

    #[test]
    fn spectral_methods_default_to_reference_extent() {
        assert_eq!(domain_for(Method::LegendreSpectral1D, 1, None).unwrap().extent(), 2.0);
        assert_eq!(domain_for(Method::Linear1D, 1, None).unwrap().extent(), 1.0);
        assert_eq!(domain_for(Method::Exact, 2, Some(3.0)).unwrap().dim(), 2);
    }
}
