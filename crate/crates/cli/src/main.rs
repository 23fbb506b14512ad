use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use specpoly::algebra::{format_rational, parse_rational};
use specpoly::eigen::{eigentable, EigenResultJson};
use specpoly::families::{classical_presets, normalize_operator};
use specpoly::operator::OperatorJson;
use specpoly::orthogonality::{
    finite_orthogonality_report, gram_matrix_for_operator, gram_matrix_from, OrthoReport,
};
use specpoly::weights::{derive_weight, pearson_check, PearsonVerdict, WeightJson};
use specpoly::{DiffOperator, FamilySpec, Rational};

mod render;

#[derive(Parser, Debug)]
#[command(
    name = "specpoly",
    version,
    about = "Polynomial eigenfunctions, weights and orthogonality of differential operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalues of L on P_n (diagonal of the triangular matrix)
    Spectrum(OperatorArgs),
    /// Monic eigenfunctions and eigenspaces for degrees 0..=n-max
    Eigenfns(OperatorArgs),
    /// Weight solving (p a)' = p b, with its interval and a Pearson check
    Weight(OperatorArgs),
    /// Gram matrix of the monic eigenfunctions under the derived weight
    Gram(GramArgs),
    /// Finite orthogonality report for (1 + x^2) y'' + (alpha x + beta) y'
    RomanovskiReport(RomanovskiArgs),
    /// Affine change of variable bringing the leading coefficient to a normal form
    Normalize(OperatorArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Jacobi,
    Laguerre,
    Hermite,
    Romanovski,
    ChaudhryQadir,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Json,
    Table,
}

const SOURCES: [&str; 3] = ["preset", "family", "operator"];

#[derive(Args, Debug)]
#[group(skip)]
struct Source {
    /// Named classical operator
    #[arg(long, value_parser = preset_names())]
    preset: Option<String>,
    /// Operator family, parameterized by --alpha/--beta (and --eps for jacobi)
    #[arg(long, value_enum)]
    family: Option<Family>,
    /// Operator JSON file: {"a": [[a_0 coeffs], [a_1 coeffs], ...]}
    #[arg(long, value_name = "FILE")]
    operator: Option<PathBuf>,
    #[command(flatten)]
    params: FamilyParams,
}

#[derive(Args, Debug)]
#[group(skip)]
struct FamilyParams {
    /// Sign in (x^2 + eps): -1 gives 1 - x^2, +1 gives x^2 + 1
    #[arg(
        long,
        requires = "family",
        allow_hyphen_values = true,
        default_value = "-1"
    )]
    eps: i8,
    #[arg(long, requires = "family", allow_hyphen_values = true, value_parser = rational)]
    alpha: Option<Rational>,
    #[arg(long, requires = "family", allow_hyphen_values = true, value_parser = rational)]
    beta: Option<Rational>,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    /// Quadrature tolerance
    #[arg(long, env = "SPECPOLY_TOL", default_value_t = specpoly::orthogonality::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(SOURCES)))]
struct OperatorArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(SOURCES)))]
struct GramArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    common: Common,
    /// Smallest degree included
    #[arg(long, default_value_t = 0)]
    min_degree: usize,
}

#[derive(Args, Debug)]
struct RomanovskiArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = rational)]
    alpha: Rational,
    #[arg(long, allow_hyphen_values = true, value_parser = rational, default_value = "0")]
    beta: Rational,
    #[command(flatten)]
    common: Common,
}

fn preset_names() -> Vec<&'static str> {
    classical_presets().into_keys().collect()
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

enum Failure {
    Usage(String),
    Domain(specpoly::Error),
}

impl From<specpoly::Error> for Failure {
    fn from(e: specpoly::Error) -> Self {
        Failure::Domain(e)
    }
}

/// Operator plus the family it came from, when known.
struct Resolved {
    op: DiffOperator,
    family: Option<FamilySpec>,
}

fn resolve(source: &Source) -> Result<Resolved, Failure> {
    if let Some(name) = &source.preset {
        let family = specpoly::preset(name)?;
        return Ok(Resolved {
            op: family.build_operator(),
            family: Some(family),
        });
    }
    if let Some(path) = &source.operator {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        // accept the output of `normalize` as well as a bare operator
        let value = value.get("operator").cloned().unwrap_or(value);
        let wire: OperatorJson = serde_json::from_value(value)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        return Ok(Resolved {
            op: DiffOperator::new(wire.a)?,
            family: None,
        });
    }
    let kind = source.family.expect("clap enforces one source");
    let p = &source.params;
    let alpha = p.alpha.clone().unwrap_or_default();
    let beta = p.beta.clone().unwrap_or_default();
    let family = match kind {
        Family::Jacobi => {
            FamilySpec::jacobi(p.eps, alpha, beta).map_err(|e| Failure::Usage(e.to_string()))?
        }
        Family::Laguerre => FamilySpec::laguerre(alpha, beta),
        Family::Hermite => FamilySpec::hermite(alpha, beta),
        Family::Romanovski => FamilySpec::romanovski(alpha, beta),
        Family::ChaudhryQadir => FamilySpec::chaudhry_qadir(),
    };
    Ok(Resolved {
        op: family.build_operator(),
        family: Some(family),
    })
}

fn check_tol(common: &Common) -> Result<(), Failure> {
    if common.tol > 0.0 && common.tol.is_finite() {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "--tol must be positive, got {}",
            common.tol
        )))
    }
}

#[derive(Serialize)]
struct SpectrumEntry {
    degree: usize,
    #[serde(rename = "eigenvalue_of_L")]
    eigenvalue_of_l: String,
    lambda_ode_convention: String,
    multiplicity: usize,
}

#[derive(Serialize)]
struct SpectrumOut {
    operator: DiffOperator,
    n_max: usize,
    values: Vec<SpectrumEntry>,
    distinct: bool,
    degenerate_degrees: Vec<usize>,
}

#[derive(Serialize)]
struct EigenOut {
    operator: DiffOperator,
    n_max: usize,
    eigenfunctions: Vec<EigenResultJson>,
}

#[derive(Serialize)]
struct WeightOut {
    operator: DiffOperator,
    weight: WeightJson,
    formula: String,
    pearson: PearsonVerdict,
}

#[derive(Serialize)]
struct NormalizeOut {
    normal_form: &'static str,
    s: String,
    t: String,
    c: String,
    eigenvalue_scale: String,
    operator: DiffOperator,
}

fn emit<T: Serialize>(value: &T, format: Format, table: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("output is serializable");
            s.push('\n');
            s
        }
        Format::Table => table(),
    }
}

fn spectrum(args: &OperatorArgs) -> Result<String, Failure> {
    let r = resolve(&args.source)?;
    let n = args.common.n_max;
    let spec = r.op.spectrum(n);
    let values = spec
        .values
        .iter()
        .enumerate()
        .map(|(j, v)| SpectrumEntry {
            degree: j,
            eigenvalue_of_l: format_rational(v),
            lambda_ode_convention: format_rational(&-v.clone()),
            multiplicity: spec.multiplicities[v].len(),
        })
        .collect();
    let out = SpectrumOut {
        operator: r.op.clone(),
        n_max: n,
        values,
        distinct: spec.is_distinct(),
        degenerate_degrees: spec.degenerate_degrees(),
    };
    Ok(emit(&out, args.common.format, || {
        render::spectrum(&r.op, &spec)
    }))
}

fn eigenfns(args: &OperatorArgs) -> Result<String, Failure> {
    let r = resolve(&args.source)?;
    let table = eigentable(&r.op, args.common.n_max);
    let out = EigenOut {
        operator: r.op.clone(),
        n_max: args.common.n_max,
        eigenfunctions: table.iter().map(|e| e.to_json()).collect(),
    };
    Ok(emit(&out, args.common.format, || {
        render::eigenfns(&r.op, &table)
    }))
}

fn second_order(op: &DiffOperator) -> Result<(), Failure> {
    if op.order() == 2 {
        Ok(())
    } else {
        Err(Failure::Domain(specpoly::Error::InvalidArgument(format!(
            "weights need a second-order operator, got order {}",
            op.order()
        ))))
    }
}

fn weight(args: &OperatorArgs) -> Result<String, Failure> {
    let r = resolve(&args.source)?;
    second_order(&r.op)?;
    let (a, b) = (r.op.coeff(2), r.op.coeff(1));
    let w = derive_weight(&a, &b)?;
    let pearson = pearson_check(&w, &a, &b);
    let out = WeightOut {
        operator: r.op.clone(),
        weight: w.to_json(),
        formula: w.formula("x"),
        pearson,
    };
    Ok(emit(&out, args.common.format, || {
        render::weight(&w, &out.pearson)
    }))
}

fn gram(args: &GramArgs) -> Result<String, Failure> {
    check_tol(&args.common)?;
    let r = resolve(&args.source)?;
    let (lo, hi) = (args.min_degree, args.common.n_max);
    if lo > hi {
        return Err(Failure::Usage(format!(
            "--min-degree {lo} exceeds --n-max {hi}"
        )));
    }
    let report = match &r.family {
        Some(f) => gram_matrix_from(f, lo, hi, args.common.tol)?,
        None => gram_matrix_for_operator(&r.op, lo, hi, args.common.tol)?,
    };
    Ok(report_out(&report, args.common.format))
}

fn romanovski_report(args: &RomanovskiArgs) -> Result<String, Failure> {
    check_tol(&args.common)?;
    let report = finite_orthogonality_report(
        args.alpha.clone(),
        args.beta.clone(),
        args.common.n_max,
        args.common.tol,
    )?;
    Ok(report_out(&report, args.common.format))
}

fn report_out(report: &OrthoReport, format: Format) -> String {
    emit(&report.to_json(), format, || render::report(report))
}

fn normalize(args: &OperatorArgs) -> Result<String, Failure> {
    let r = resolve(&args.source)?;
    let (norm, op, factor) = normalize_operator(&r.op)?;
    let out = NormalizeOut {
        normal_form: norm.normal_form.label(),
        s: format_rational(&norm.s),
        t: format_rational(&norm.t),
        c: format_rational(&norm.c),
        eigenvalue_scale: format_rational(&factor),
        operator: op,
    };
    Ok(emit(&out, args.common.format, || {
        render::normalize(&out.operator, &norm, &factor)
    }))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    match &cli.command {
        Command::Spectrum(a) => spectrum(a),
        Command::Eigenfns(a) => eigenfns(a),
        Command::Weight(a) => weight(a),
        Command::Gram(a) => gram(a),
        Command::RomanovskiReport(a) => romanovski_report(a),
        Command::Normalize(a) => normalize(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
