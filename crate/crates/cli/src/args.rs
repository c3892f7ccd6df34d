use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spectra_trust::{Method, OrderingStrategy};

#[derive(Debug, Parser)]
#[command(name = "spectra-trust", version, about = "Discrete Laplace spectra and how many eigenvalues to trust")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every eigenvalue of each method with its exact partner and relative error.
    Spectrum(SpectrumArgs),
    /// Reliable counts and fractions per method.
    Reliability(SpectrumArgs),
    /// Predicted trusted counts, optionally with measured counts.
    Theorem(TheoremArgs),
    /// 1D comparison on [-1, 1]: linear, lumped, Legendre spectral.
    Example1(ExampleArgs),
    /// 2D comparison on [-1, 1]^2: bilinear, 9-point, Q2, Legendre spectral.
    Example2(ExampleArgs),
    /// Weyl, Pleijel, Polya and Li-Yau values next to exact eigenvalues.
    Asymptotics(AsymptoticsArgs),
    /// Closed forms against dense solves of the assembled pencils.
    OracleCheck(OracleArgs),
    /// Write a pencil in the banded text format.
    DumpPencil(DumpArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    Auto,
    Value(f64),
}

impl Tolerance {
    /// `auto` is `h^α` with `h = 1/n`.
    pub fn resolve(self, n: usize, alpha: f64) -> f64 {
        match self {
            Tolerance::Auto => (1.0 / n as f64).powf(alpha),
            Tolerance::Value(v) => v,
        }
    }
}

fn parse_tolerance(s: &str) -> Result<Tolerance, String> {
    if s == "auto" {
        return Ok(Tolerance::Auto);
    }
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(Tolerance::Value(v)),
        _ => Err(format!("expected a positive number or `auto`, got {s:?}")),
    }
}

fn parse_method(s: &str) -> Result<Method, String> {
    Method::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = Method::ALL.iter().map(|m| m.name()).collect();
        format!("unknown method {s:?}; expected one of {}", names.join(", "))
    })
}

fn parse_ordering(s: &str) -> Result<OrderingStrategy, String> {
    OrderingStrategy::from_name(s).ok_or_else(|| format!("unknown ordering {s:?}"))
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[arg(long = "method", value_parser = parse_method, required = true)]
    pub methods: Vec<Method>,
    /// Cells per axis, or polynomial degree for spectral methods.
    #[arg(long, default_value_t = 16)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long = "tol", value_parser = parse_tolerance, default_value = "auto")]
    pub tol: Tolerance,
    #[arg(long, value_parser = parse_ordering, default_value = "magnitude")]
    pub ordering: OrderingStrategy,
    /// Pair by mode label instead of by rank.
    #[arg(long)]
    pub by_mode: bool,
    /// Domain side; defaults to 2 for spectral methods and 1 otherwise.
    #[arg(long)]
    pub extent: Option<f64>,
    /// Dimension for the `exact` method.
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct TheoremArgs {
    /// `m,k,d,alpha[,N]`; repeatable. Without it a table of standard cases
    /// is printed.
    #[arg(long = "params")]
    pub params: Vec<String>,
    /// Degrees of freedom for parameter sets that omit N.
    #[arg(long, default_value_t = 8192)]
    pub n: u64,
    /// Measure counts where a matching discretization exists.
    #[arg(long)]
    pub empirical: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ExampleArgs {
    /// Cells per axis (power of two).
    #[arg(long)]
    pub n: Option<usize>,
    /// Write the per-eigenvalue curves (or the 2D region boundary) here.
    #[arg(long)]
    pub curves: Option<PathBuf>,
    /// Write a gnuplot script plotting the curves file.
    #[arg(long, requires = "curves")]
    pub gnuplot: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct AsymptoticsArgs {
    /// Largest eigenvalue index.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, default_value_t = 1.0)]
    pub extent: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Largest mesh of the suite (meshes 4, 8, 16, 32 up to this).
    #[arg(long, default_value_t = 32)]
    pub n: usize,
    /// Test hook: `method:row:col:delta` added to one stiffness entry.
    #[arg(long, hide = true)]
    pub corrupt: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct DumpArgs {
    #[arg(long, value_parser = parse_method)]
    pub method: Method,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    /// Consistent triangle pencil for `five-point-2d` instead of its lumped form.
    #[arg(long)]
    pub consistent: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_parsing() {
        assert_eq!(parse_tolerance("auto"), Ok(Tolerance::Auto));
        assert_eq!(parse_tolerance("0.01"), Ok(Tolerance::Value(0.01)));
        assert!(parse_tolerance("-1").is_err());
        assert!(parse_tolerance("x").is_err());
        assert_eq!(Tolerance::Auto.resolve(64, 1.0), 1.0 / 64.0);
        assert_eq!(Tolerance::Auto.resolve(8, 2.0), 1.0 / 64.0);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
