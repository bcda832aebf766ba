//! Command-line interface for the lattice-quadrangle degree bound pipeline.

mod input;
mod render;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use latquad_core::bound::{full_ideal_bound, generates_whole_ideal, BoundError};
use latquad_core::fibers::{enumerate_syzygy_fibers, EnumerationLimits, FiberError};
use latquad_core::hilbert::{
    degree_by_differences, degree_closed_form, degree_from_numerator, hilbert_function_range,
    HilbertError, HilbertNumerator,
};
use latquad_core::lattice::{check_hypotheses, LatticeError};
use latquad_core::quadrangle::{build_resolution, split_from_fiber, verify_exactness_products};
use latquad_core::{BoundReport, DegreeProfile};
use num::bigint::BigInt;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "latquad",
    version,
    about = "Degree bounds for codimension-2 lattice ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the lattice hypotheses and survey the fiber classes.
    Check(CheckArgs),
    /// Compute the ideal degree by counting, resolution, and closed formula.
    Degree(DegreeArgs),
    /// Check 2 deg <= M1 * M2 against the resolution shifts.
    Bound(BoundArgs),
    /// Explore the bound gap over profile grids, the tight family, or random profiles.
    Explore(ExploreArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExploreFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Fiber counting plus finite differences only.
    Oracle,
    /// Syzygy-quadrangle resolution numerator only.
    Resolution,
    /// Closed formula in the split block degrees only.
    Formula,
    /// All routes, cross-checked.
    All,
}

#[derive(Args)]
struct CheckArgs {
    /// Input JSON file with the lattice basis.
    file: PathBuf,
    /// Survey cutoff; overrides the file and the environment.
    #[arg(long)]
    max_degree: Option<i64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct DegreeArgs {
    file: PathBuf,
    #[arg(long)]
    max_degree: Option<i64>,
    #[arg(long, value_enum, default_value = "all")]
    method: Method,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct BoundArgs {
    file: PathBuf,
    #[arg(long)]
    max_degree: Option<i64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Double the fiber counts and re-test the bound; demonstrates the check can fail.
    #[arg(long, hide = true)]
    negative_control: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct ExploreSource {
    /// Evaluate every profile with free block degrees in 0..=N (N <= 6).
    #[arg(long, value_name = "N")]
    grid: Option<i64>,
    /// Evaluate the equal-corner, equal-block profile for corner U and block P.
    #[arg(long, num_args = 2, value_names = ["U", "P"])]
    family: Option<Vec<i64>>,
    /// Evaluate COUNT random profiles with block degrees in 0..=6.
    #[arg(long, num_args = 2, value_names = ["COUNT", "SEED"])]
    random: Option<Vec<u64>>,
}

#[derive(Args)]
struct ExploreArgs {
    #[command(flatten)]
    source: ExploreSource,
    #[arg(long, value_enum, default_value = "text")]
    format: ExploreFormat,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

/// Walks the error chain to the most specific known failure.
fn exit_code_for(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(h) = cause.downcast_ref::<HilbertError>() {
            if matches!(h, HilbertError::NotStabilized { .. }) {
                return 5;
            }
        }
        if let Some(b) = cause.downcast_ref::<BoundError>() {
            match b {
                BoundError::EmptyDecomposition { .. } => return 6,
                BoundError::MethodDisagreement { .. } => return 4,
                _ => {}
            }
        }
        if cause.downcast_ref::<LatticeError>().is_some() {
            return 3;
        }
        if let Some(f) = cause.downcast_ref::<FiberError>() {
            if matches!(f, FiberError::UnboundedFiber { .. }) {
                return 3;
            }
        }
    }
    1
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Degree(args) => cmd_degree(args),
        Command::Bound(args) => cmd_bound(args),
        Command::Explore(args) => cmd_explore(args),
    }
}

struct Loaded {
    basis: latquad_core::LatticeBasis,
    certificate: latquad_core::HypothesisCertificate,
    max_degree: i64,
}

fn load_basis(file: &Path, max_degree_flag: Option<i64>) -> Result<Loaded> {
    let parsed = input::load(file)?;
    let (b1, b2) = parsed.rows();
    let (basis, certificate) = check_hypotheses(b1, b2, parsed.weights.clone())?;
    let max_degree = input::resolve_max_degree(max_degree_flag, parsed.max_degree, &basis)?;
    Ok(Loaded {
        basis,
        certificate,
        max_degree,
    })
}

fn emit(format: Format, text: String, value: Value) -> Result<u8> {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value)?),
    }
    Ok(0)
}

fn cmd_check(args: CheckArgs) -> Result<u8> {
    let loaded = load_basis(&args.file, args.max_degree)?;
    let survey = enumerate_syzygy_fibers(
        &loaded.basis,
        loaded.max_degree,
        &EnumerationLimits::default(),
    )?;

    let mut text = String::new();
    render::certificate_text(&mut text, &loaded.certificate);
    render::survey_text(&mut text, &survey);
    let value = json!({
        "certificate": render::certificate_json(&loaded.certificate),
        "survey": render::survey_json(&survey),
    });
    emit(args.format, text, value)
}

fn cmd_degree(args: DegreeArgs) -> Result<u8> {
    let loaded = load_basis(&args.file, args.max_degree)?;
    match args.method {
        Method::Oracle => degree_by_oracle(&loaded, args.format),
        Method::Resolution | Method::Formula => {
            degree_by_resolution(&loaded, args.format, args.method)
        }
        Method::All => degree_by_all_routes(&loaded, args.format),
    }
}

/// Counts fiber classes degree by degree and extracts the leading difference.
fn degree_by_oracle(loaded: &Loaded, format: Format) -> Result<u8> {
    let n = loaded.basis.n();
    let counts = hilbert_function_range(
        &loaded.basis,
        loaded.max_degree,
        &EnumerationLimits::default(),
    )?;
    let degree = degree_by_differences(&counts, n - 2)?;

    let mut text = String::new();
    let _ = writeln!(
        text,
        "fiber class counts through weighted degree {}: {:?}",
        loaded.max_degree,
        counts.iter().map(|c| c.to_string()).collect::<Vec<_>>()
    );
    let _ = writeln!(
        text,
        "degree by order-{} finite differences: {degree}",
        n - 2 - 1
    );
    let value = json!({
        "method": "oracle",
        "max_degree": loaded.max_degree,
        "class_counts": render::big_list(&counts),
        "degree": render::big(&degree),
    });
    emit(format, text, value)
}

/// Resolves each surveyed quadrangle and reports its degree; no fiber counting.
fn degree_by_resolution(loaded: &Loaded, format: Format, method: Method) -> Result<u8> {
    let survey = enumerate_syzygy_fibers(
        &loaded.basis,
        loaded.max_degree,
        &EnumerationLimits::default(),
    )?;
    if survey.quadrangles.is_empty() {
        return Err(BoundError::EmptyDecomposition {
            max_degree: loaded.max_degree,
        }
        .into());
    }

    let mut splits = Vec::new();
    let mut rows = Vec::new();
    for fiber in &survey.quadrangles {
        let split = split_from_fiber(fiber)?;
        let profile = DegreeProfile::from_split(&split, loaded.basis.weights())?;
        let degree = match method {
            Method::Resolution => {
                let resolution = build_resolution(&split, loaded.basis.weights())?;
                verify_exactness_products(&resolution)?;
                let numerator = HilbertNumerator::from_resolution(&resolution);
                degree_from_numerator(&numerator)?
            }
            _ => degree_closed_form(&profile),
        };
        rows.push((fiber.representative.clone(), profile, degree));
        splits.push(split);
    }
    let whole_ideal = generates_whole_ideal(&survey, &splits);

    let label = match method {
        Method::Resolution => "resolution numerator",
        _ => "closed formula",
    };
    let mut text = String::new();
    for (rep, profile, degree) in &rows {
        let _ = writeln!(
            text,
            "quadrangle at class {rep}: degree {degree} by {label}"
        );
        render::profile_text(&mut text, profile);
    }
    if whole_ideal {
        let _ = writeln!(
            text,
            "this quadrangle generates the whole ideal, so its degree is the ideal degree"
        );
    } else {
        let _ = writeln!(
            text,
            "each value is the degree of one quadrangle subideal, an upper bound for the ideal degree"
        );
    }
    let value = json!({
        "method": if matches!(method, Method::Resolution) { "resolution" } else { "formula" },
        "max_degree": loaded.max_degree,
        "quadrangles": rows
            .iter()
            .map(|(rep, profile, degree)| json!({
                "representative": rep.to_string(),
                "profile": render::profile_json(profile),
                "degree": render::big(degree),
            }))
            .collect::<Vec<_>>(),
        "generates_whole_ideal": whole_ideal,
    });
    emit(format, text, value)
}

fn degree_by_all_routes(loaded: &Loaded, format: Format) -> Result<u8> {
    let report = full_ideal_bound(
        &loaded.basis,
        loaded.max_degree,
        &EnumerationLimits::default(),
    )?;

    let mut text = String::new();
    for q in &report.quadrangles {
        let _ = writeln!(
            text,
            "quadrangle at class {}: degree {} (closed formula) = {} (resolution numerator)",
            q.representative, q.formula_degree, q.resolution_degree
        );
    }
    match &report.ideal_degree {
        Some(d) => {
            let _ = writeln!(text, "ideal degree by fiber counting: {d}");
            if report.j_equals_full {
                let _ = writeln!(text, "all three routes agree on the whole ideal");
            }
        }
        None => {
            let _ = writeln!(text, "ideal degree by fiber counting: unavailable");
        }
    }
    for w in &report.warnings {
        let _ = writeln!(text, "note: {w}");
    }
    let value = json!({
        "method": "all",
        "max_degree": loaded.max_degree,
        "quadrangles": report.quadrangles.iter().map(render::quadrangle_report_json).collect::<Vec<_>>(),
        "generates_whole_ideal": report.j_equals_full,
        "ideal_degree": render::opt_big(&report.ideal_degree),
        "warnings": report.warnings,
    });
    emit(format, text, value)
}

fn cmd_bound(args: BoundArgs) -> Result<u8> {
    let loaded = load_basis(&args.file, args.max_degree)?;
    let report = full_ideal_bound(
        &loaded.basis,
        loaded.max_degree,
        &EnumerationLimits::default(),
    )?;

    if args.negative_control {
        return negative_control(&loaded, &report, args.format);
    }

    let mut text = String::new();
    render::certificate_text(&mut text, &loaded.certificate);
    render::full_report_text(&mut text, &report);
    let value = json!({
        "certificate": render::certificate_json(&loaded.certificate),
        "report": render::full_report_json(&report),
    });
    emit(args.format, text, value)?;
    Ok(if report.holds { 0 } else { 2 })
}

/// Doubles every fiber count and re-tests the bound against the same shifts.
///
/// Doubling the counts doubles the extracted degree, so a tight-enough instance
/// pushes 2 deg past M1 * M2 and the check must report the violation.
fn negative_control(
    loaded: &Loaded,
    report: &latquad_core::FullIdealReport,
    format: Format,
) -> Result<u8> {
    if loaded.basis.weights().iter().any(|&w| w != 1) {
        bail!("--negative-control needs the standard grading so the count sequence stabilizes");
    }
    let n = loaded.basis.n();
    let doubled: Vec<BigInt> = report
        .survey
        .class_counts
        .iter()
        .map(|c| c * BigInt::from(2))
        .collect();
    let degree = degree_by_differences(&doubled, n - 2)
        .context("doubled count sequence lost stabilization")?;
    let product = &report.m1 * &report.m2;
    let violated = BigInt::from(2) * &degree > product;

    let mut text = String::new();
    let _ = writeln!(
        text,
        "negative control: fiber counts doubled before difference extraction"
    );
    let _ = writeln!(
        text,
        "doubled degree {degree}, M1 = {}, M2 = {}, so 2 deg = {} vs M1*M2 = {}",
        report.m1,
        report.m2,
        BigInt::from(2) * &degree,
        &report.m1 * &report.m2
    );
    let verdict = if violated {
        "bound VIOLATED as expected: the check detects corrupted counts"
    } else {
        "bound still holds; this instance is too slack for doubling to cross it"
    };
    let _ = writeln!(text, "{verdict}");
    let value = json!({
        "negative_control": true,
        "doubled_degree": render::big(&degree),
        "m1": render::big(&report.m1),
        "m2": render::big(&report.m2),
        "violated": violated,
    });
    emit(format, text, value)?;
    Ok(if violated { 2 } else { 0 })
}

fn cmd_explore(args: ExploreArgs) -> Result<u8> {
    let (label, reports): (String, Vec<BoundReport>) = if let Some(n) = args.source.grid {
        if !(0..=6).contains(&n) {
            bail!("--grid N must be in 0..=6 (the grid has (N+1)^6 profiles), got {n}");
        }
        (
            format!("grid 0..={n}"),
            latquad_core::bound::explore_grid(n),
        )
    } else if let Some(fam) = &args.source.family {
        let (u, p) = (fam[0], fam[1]);
        if u < 0 || p < 0 {
            bail!("--family U P needs nonnegative block degrees, got {u} {p}");
        }
        let report = latquad_core::bound::tight_family(u, p)?;
        let predicted = latquad_core::bound::tight_family_predicted_gap(u, p);
        if report.gap != predicted {
            bail!(
                "family gap {} disagrees with the predicted 2u^2 + 2up + 2p^2 = {predicted}",
                report.gap
            );
        }
        (format!("family u={u} p={p}"), vec![report])
    } else if let Some(rand_args) = &args.source.random {
        let (count, seed) = (rand_args[0], rand_args[1]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut reports = Vec::new();
        while reports.len() < count as usize {
            let free: [i64; 6] = std::array::from_fn(|_| rng.gen_range(0..=6));
            match DegreeProfile::from_free_i64(free) {
                Ok(profile) => reports.push(BoundReport::for_profile(profile)),
                Err(_) => continue,
            }
        }
        (format!("random count={count} seed={seed}"), reports)
    } else {
        unreachable!("clap enforces exactly one source");
    };

    let min_gap = reports.iter().map(|r| r.gap.clone()).min();
    let zero_gaps = reports.iter().filter(|r| r.gap == BigInt::from(0)).count();
    let violations = reports.iter().filter(|r| !r.holds).count();

    match args.format {
        ExploreFormat::Csv => {
            println!("{}", render::CSV_HEADER);
            for r in &reports {
                println!("{}", render::bound_report_csv(r));
            }
        }
        ExploreFormat::Text => {
            let mut text = String::new();
            let _ = writeln!(text, "explore {label}: {} profiles", reports.len());
            if reports.len() <= 8 {
                for r in &reports {
                    render::bound_report_text(&mut text, r);
                }
            }
            match &min_gap {
                Some(g) => {
                    let _ = writeln!(text, "smallest gap M1*M2 - 2 deg: {g}");
                }
                None => {
                    let _ = writeln!(text, "no profiles evaluated");
                }
            }
            let _ = writeln!(text, "zero gaps: {zero_gaps}, violations: {violations}");
            print!("{text}");
        }
        ExploreFormat::Json => {
            let value = json!({
                "source": label,
                "profiles": reports.len(),
                "min_gap": match &min_gap { Some(g) => render::big(g), None => Value::Null },
                "zero_gaps": zero_gaps,
                "violations": violations,
                "reports": reports.iter().map(render::bound_report_json).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        }
    }
    Ok(if violations > 0 { 2 } else { 0 })
}
