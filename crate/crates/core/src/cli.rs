//! Command-line front end. [`run`] parses arguments, writes the document to
//! `out` and returns the process exit code: 0 on success, 1 when `verify`
//! finds a failing check, 2 on invalid arguments.

use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::normal_coords::stabilizer_system_0jet;
use crate::poincare::{self, closed_form, format_single_fraction, integral};
use crate::stabilizer::{self, report_with_range, stabilizer_dim_normal_linear, witness_for, StabilizerReport};
use crate::verify::{self, VerifyOptions};
use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "jetmoduli", version, about = "Moduli dimensions and Poincaré series for jets of affine connections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Jet-space, orbit and moduli dimensions.
    Dims(NK),
    /// Poincaré series coefficients a_0, a_1, ...
    Series {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// Closed rational form of the Poincaré series.
    ClosedForm {
        #[arg(long)]
        n: usize,
    },
    /// Stabilizer and orbit dimensions at random integer jets.
    Stabilizer {
        #[command(flatten)]
        nk: NK,
        /// Number of consecutive seeds, starting at --seed.
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Coefficients are drawn from [-r, r].
        #[arg(long, default_value_t = stabilizer::DEFAULT_COEFF_RANGE)]
        coeff_range: u64,
    },
    /// Stabilizer dimensions of the explicit witness jets.
    Witness(NK),
    /// Runs the acceptance checks.
    Verify {
        /// Also checks n = 4, k = 2.
        #[arg(long)]
        deep: bool,
    },
}

#[derive(Args, Debug)]
pub struct NK {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub k: usize,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = if e.use_stderr() { e.render().to_string() } else { e.to_string() };
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}\n\nFor more information, try '--help'.");
            2
        }
    }
}

enum Failure {
    Io(io::Error),
    Domain(Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

fn require_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("--n must be at least 1".into()));
    }
    Ok(())
}

#[derive(Serialize)]
struct DimsRecord {
    n: usize,
    k: usize,
    dim_jets: u64,
    dim_vector_fields: u64,
    expected_stab_dim: usize,
    dim_orbit: u64,
    dim_moduli: u64,
    paper_ref: &'static str,
}

#[derive(Serialize)]
struct SeriesRecord {
    n: usize,
    terms: usize,
    coefficients: Vec<i64>,
    paper_ref: &'static str,
}

#[derive(Serialize)]
struct ClosedFormRecord {
    n: usize,
    polynomial_part: Vec<String>,
    pole_part: Vec<String>,
    partial_fractions: String,
    numerator: Vec<String>,
    denominator_power: usize,
    single_fraction: String,
    paper_ref: &'static str,
}

#[derive(Serialize)]
struct StabilizerRecord<'a> {
    #[serde(flatten)]
    report: &'a StabilizerReport,
    paper_ref: &'static str,
}

#[derive(Serialize)]
struct WitnessRecord {
    n: usize,
    k: usize,
    zero_order_rows: usize,
    zero_order_kernel_dim: usize,
    linear_stab_dim: usize,
    expected_stab_dim: usize,
    paper_ref: &'static str,
}

#[derive(Serialize)]
struct CheckRecord<'a> {
    #[serde(flatten)]
    result: &'a verify::CheckResult,
    paper_ref: String,
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string(value).expect("records serialize"))
}

/// Left-aligned columns separated by two spaces.
fn table(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    let widths: Vec<usize> = (0..header.len())
        .map(|c| rows.iter().map(|r| r[c].len()).chain([header[c].len()]).max().unwrap_or(0))
        .collect();
    let fmt_row = |cells: Vec<&str>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    writeln!(out, "{}", fmt_row(header.to_vec()))?;
    for r in rows {
        writeln!(out, "{}", fmt_row(r.iter().map(String::as_str).collect()))?;
    }
    Ok(())
}

fn csv(out: &mut dyn Write, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    writeln!(out, "{}", header.join(","))?;
    for r in rows {
        writeln!(out, "{}", r.join(","))?;
    }
    Ok(())
}

fn emit_rows(out: &mut dyn Write, format: Format, header: &[&str], rows: &[Vec<String>]) -> io::Result<()> {
    match format {
        Format::Csv => csv(out, header, rows),
        _ => table(out, header, rows),
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Dims(NK { n, k }) => {
            let (n, k) = (*n, *k);
            require_n(n)?;
            let r = DimsRecord {
                n,
                k,
                dim_jets: poincare::dim_f(n, k),
                dim_vector_fields: stabilizer::vector_field_dim(n, k),
                expected_stab_dim: stabilizer::expected_stabilizer_dim(n, k),
                dim_orbit: stabilizer::orbit_dim_formula(n, k),
                dim_moduli: poincare::dim_m(n, k),
                paper_ref: "dimension formulas: dim F_k, dim O_k, dim M_k = dim F_k - dim O_k",
            };
            if format == Format::Json {
                json_line(out, &r)?;
            } else {
                let header = ["n", "k", "dim_jets", "dim_vector_fields", "expected_stab_dim", "dim_orbit", "dim_moduli"];
                let row = [r.n as u64, r.k as u64, r.dim_jets, r.dim_vector_fields, r.expected_stab_dim as u64, r.dim_orbit, r.dim_moduli];
                emit_rows(out, format, &header, &[row.iter().map(u64::to_string).collect()])?;
            }
        }
        Command::Series { n, terms } => {
            let n = *n;
            require_n(n)?;
            if *terms == 0 {
                return Err(Error::InvalidArgument("--terms must be at least 1".into()).into());
            }
            let s = poincare::series_by_difference(n, terms - 1);
            let coefficients: Vec<i64> = s.coefficients().iter().map(integral).collect();
            match format {
                Format::Json => json_line(
                    out,
                    &SeriesRecord { n, terms: *terms, coefficients, paper_ref: "Poincaré series coefficients a_k" },
                )?,
                Format::Csv => {
                    let rows: Vec<Vec<String>> =
                        coefficients.iter().enumerate().map(|(k, a)| vec![k.to_string(), a.to_string()]).collect();
                    csv(out, &["k", "a_k"], &rows)?;
                }
                Format::Text => {
                    let items: Vec<String> = coefficients.iter().map(i64::to_string).collect();
                    writeln!(out, "[{}]", items.join(", "))?;
                }
            }
        }
        Command::ClosedForm { n } => {
            let f = closed_form(*n)?;
            let (numerator, power) = f.to_single_fraction();
            let r = ClosedFormRecord {
                n: *n,
                polynomial_part: f.polynomial_part.iter().map(ToString::to_string).collect(),
                pole_part: f.pole_part.iter().map(ToString::to_string).collect(),
                partial_fractions: f.to_string(),
                single_fraction: format_single_fraction(&numerator, power),
                numerator: numerator.iter().map(ToString::to_string).collect(),
                denominator_power: power,
                paper_ref: "closed rational form of the Poincaré series, poles only at t=1",
            };
            match format {
                Format::Json => json_line(out, &r)?,
                Format::Csv => {
                    let mut rows = vec![
                        vec!["t^0".into(), r.polynomial_part[0].clone()],
                        vec!["t^1".into(), r.polynomial_part[1].clone()],
                    ];
                    for (j, c) in r.pole_part.iter().enumerate() {
                        rows.push(vec![format!("(1-t)^-{}", j + 1), c.clone()]);
                    }
                    csv(out, &["term", "coefficient"], &rows)?;
                }
                Format::Text => {
                    writeln!(out, "partial fractions: {}", r.partial_fractions)?;
                    writeln!(out, "single fraction:   {}", r.single_fraction)?;
                }
            }
        }
        Command::Stabilizer { nk: NK { n, k }, seeds, seed, coeff_range } => {
            require_n(*n)?;
            if *seeds == 0 {
                return Err(Error::InvalidArgument("--seeds must be at least 1".into()).into());
            }
            use rayon::prelude::*;
            let reports = (*seed..*seed + *seeds)
                .into_par_iter()
                .map(|s| report_with_range(*n, *k, s, *coeff_range))
                .collect::<Result<Vec<_>>>()?;
            if format == Format::Json {
                for r in &reports {
                    json_line(out, &StabilizerRecord { report: r, paper_ref: "generic stabilizer dimension of a k-jet" })?;
                }
            } else {
                let header = ["n", "k", "seed", "stab_dim", "expected_stab_dim", "orbit_dim", "formula_orbit_dim", "agree"];
                let rows: Vec<Vec<String>> = reports
                    .iter()
                    .map(|r| {
                        vec![
                            r.n.to_string(),
                            r.k.to_string(),
                            r.seed.to_string(),
                            r.empirical_stab_dim.to_string(),
                            r.expected_stab_dim.to_string(),
                            r.empirical_orbit_dim.to_string(),
                            r.formula_orbit_dim.to_string(),
                            r.agree.to_string(),
                        ]
                    })
                    .collect();
                emit_rows(out, format, &header, &rows)?;
            }
        }
        Command::Witness(NK { n, k }) => {
            require_n(*n)?;
            let g = witness_for(*n, *k)?;
            let zero = stabilizer_system_0jet(&g.project(0)?)?;
            let r = WitnessRecord {
                n: *n,
                k: *k,
                zero_order_rows: zero.matrix.rows(),
                zero_order_kernel_dim: zero.kernel_dim(),
                linear_stab_dim: stabilizer_dim_normal_linear(&g)?,
                expected_stab_dim: stabilizer::expected_stabilizer_dim(*n, *k),
                paper_ref: "explicit witness jets for the linear stabilizer systems in normal coordinates",
            };
            if format == Format::Json {
                json_line(out, &r)?;
            } else {
                let header = ["n", "k", "zero_order_rows", "zero_order_kernel_dim", "linear_stab_dim", "expected_stab_dim"];
                let row = [r.n, r.k, r.zero_order_rows, r.zero_order_kernel_dim, r.linear_stab_dim, r.expected_stab_dim];
                emit_rows(out, format, &header, &[row.iter().map(usize::to_string).collect()])?;
            }
        }
        Command::Verify { deep } => {
            let results = verify::run_all(VerifyOptions { deep: *deep });
            let all = results.iter().all(|r| r.passed);
            match format {
                Format::Json => {
                    for r in &results {
                        json_line(out, &CheckRecord { result: r, paper_ref: format!("acceptance: {}", r.title) })?;
                    }
                }
                Format::Csv => {
                    let rows: Vec<Vec<String>> = results
                        .iter()
                        .map(|r| {
                            vec![r.id.to_string(), r.title.into(), r.passed.to_string(), format!("\"{}\"", r.detail.replace('"', "'"))]
                        })
                        .collect();
                    csv(out, &["id", "title", "passed", "detail"], &rows)?;
                }
                Format::Text => {
                    for r in &results {
                        writeln!(out, "{}", r.line())?;
                    }
                    let failed = results.iter().filter(|r| !r.passed).count();
                    writeln!(out, "{} of {} checks passed", results.len() - failed, results.len())?;
                }
            }
            return Ok(i32::from(!all));
        }
    }
    Ok(0)
}
