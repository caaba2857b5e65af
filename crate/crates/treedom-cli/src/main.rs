//! Command-line front end: single-tree solves, family generation, tree
//! enumeration and the exhaustive verification sweeps.
//!
//! Exit codes: 0 pass, 1 check found violations, 2 input error, 3 domain
//! error (valid input outside the solvers' domain), 4 resource guardrail.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use treedom::exact::ParamKind;
use treedom::verify::{SweepOptions, VerificationReport};
use treedom::{dp, enumerate, family, verify, Limits, Tree};

#[derive(Parser)]
#[command(
    name = "treedom",
    version,
    about = "Exact domination, total domination and semitotal domination on trees"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute domination parameters of one tree
    Solve {
        /// Input file: a graph6 line, or an edge list ("n", then "u v" lines)
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated subset of gamma, gamma-t, gamma-t2, gamma-almost:<v>
        #[arg(long, default_value = "gamma,gamma-t,gamma-t2")]
        params: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check 5*gamma_t2 >= 2(n-l+2) over all trees up to an order
    VerifyBound(SweepArgs),
    /// Compare extremal trees against the labeled family census
    VerifyExtremal(SweepArgs),
    /// Compare trees with gamma = gamma_t2 against the family census
    VerifyGammaEq(SweepArgs),
    /// Write a family census as graph6 lines plus a JSON count sidecar
    Generate {
        #[arg(long, value_enum)]
        family: FamilyName,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        out: PathBuf,
        /// Also export the labeled members as JSON (family t only)
        #[arg(long)]
        labeled_out: Option<PathBuf>,
        /// Enumeration ceiling override (default: TREEDOM_GUARDRAIL_N or 20)
        #[arg(long)]
        guardrail_n: Option<usize>,
    },
    /// Write every non-isomorphic tree of one order as graph6 lines
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        guardrail_n: Option<usize>,
    },
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    n_max: usize,
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Also write the JSON report to this path
    #[arg(long)]
    out: Option<PathBuf>,
    /// Enumeration ceiling override (default: TREEDOM_GUARDRAIL_N or 20)
    #[arg(long)]
    guardrail_n: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    T,
    O,
}

enum CliError {
    Lib(treedom::Error),
    Io(PathBuf, std::io::Error),
    BadParam(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::BadParam(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<treedom::Error> for CliError {
    fn from(e: treedom::Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        use treedom::Error::*;
        match self {
            CliError::Io(..) | CliError::BadParam(_) => ExitCode::from(2),
            CliError::Lib(e) => match e {
                MalformedGraph6(_) | MalformedEdgeList(_) | InvalidVertex { .. } | Io(_) => {
                    ExitCode::from(2)
                }
                NotATree(_) | SelfLoop(_) | IsolatedVertex | WrongStatus { .. }
                | WrongDegree { .. } | PreconditionFailed(_) | InvalidParameter(_) => {
                    ExitCode::from(3)
                }
                SizeLimitExceeded { .. } | TooLarge { .. } => ExitCode::from(4),
            },
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Solve {
            input,
            params,
            format,
        } => solve(&input, &params, format),
        Command::VerifyBound(args) => sweep(args, Check::Bound),
        Command::VerifyExtremal(args) => sweep(args, Check::Extremal),
        Command::VerifyGammaEq(args) => sweep(args, Check::GammaEq),
        Command::Generate {
            family,
            n_max,
            out,
            labeled_out,
            guardrail_n,
        } => generate(family, n_max, &out, labeled_out.as_deref(), guardrail_n),
        Command::Enumerate { n, out, guardrail_n } => enumerate_cmd(n, &out, guardrail_n),
    }
}

fn read_input(path: &Path) -> Result<Tree, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .unwrap_or("");
    // an edge list opens with the decimal order; graph6 bytes start at '?'
    if !first.is_empty() && first.bytes().all(|b| b.is_ascii_digit()) {
        Ok(Tree::from_edge_list(&text)?)
    } else {
        Ok(Tree::from_graph6(first)?)
    }
}

fn parse_params(list: &str, t: &Tree) -> Result<Vec<ParamKind>, CliError> {
    let mut out = Vec::new();
    for token in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if token == "gamma" {
            out.push(ParamKind::Plain);
        } else if token == "gamma-t" {
            out.push(ParamKind::Total);
        } else if token == "gamma-t2" {
            out.push(ParamKind::Semitotal);
        } else if let Some(v) = token.strip_prefix("gamma-almost:") {
            let v: usize = v
                .parse()
                .map_err(|_| CliError::BadParam(format!("bad vertex in {token:?}")))?;
            t.check_vertex(v)?;
            out.push(ParamKind::Almost(v));
        } else {
            return Err(CliError::BadParam(format!(
                "unknown parameter {token:?}; expected gamma, gamma-t, gamma-t2 or gamma-almost:<v>"
            )));
        }
    }
    if out.is_empty() {
        return Err(CliError::BadParam("no parameters requested".into()));
    }
    Ok(out)
}

fn solve(input: &Path, params: &str, format: Format) -> Result<ExitCode, CliError> {
    let t = read_input(input)?;
    if t.n() < 2 {
        return Err(treedom::Error::IsolatedVertex.into());
    }
    let kinds = parse_params(params, &t)?;
    let mut results = Vec::new();
    for kind in kinds {
        let cert = match kind {
            ParamKind::Plain => dp::dp_domination(&t),
            ParamKind::Total => dp::dp_total_domination(&t)?,
            ParamKind::Semitotal => dp::dp_semitotal(&t)?,
            ParamKind::Almost(v) => dp::dp_almost_domination(&t, v)?,
        };
        results.push(cert);
    }
    match format {
        Format::Text => {
            println!("order {} tree with {} leaves", t.n(), t.leaf_count());
            for cert in &results {
                let witness = cert
                    .witness
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(", ");
                println!("{} = {}  witness {{{witness}}}", cert.kind, cert.value);
            }
        }
        Format::Json => {
            let entries: Vec<serde_json::Value> = results
                .iter()
                .map(|cert| {
                    serde_json::json!({
                        "param": cert.kind.to_string(),
                        "value": cert.value,
                        "witness": cert.witness,
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "n": t.n(),
                "leaves": t.leaf_count(),
                "results": entries,
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn effective_limits(guardrail_n: Option<usize>) -> Limits {
    let mut limits = Limits::from_env();
    if let Some(n) = guardrail_n {
        limits.order_ceiling = n;
    }
    limits
}

enum Check {
    Bound,
    Extremal,
    GammaEq,
}

fn sweep(args: SweepArgs, check: Check) -> Result<ExitCode, CliError> {
    let jobs = args.jobs.unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(Into::into)
            .unwrap_or(1)
    });
    let opts = SweepOptions::new(args.n_max)
        .jobs(jobs)
        .limits(effective_limits(args.guardrail_n));
    let mut progress = |n: usize, stats: &BTreeMap<String, u64>| {
        let line = stats
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        eprintln!("order {n}: {line}");
    };
    let report = match check {
        Check::Bound => verify::verify_bound(&opts, &mut progress)?,
        Check::Extremal => verify::verify_extremal(&opts, &mut progress)?,
        Check::GammaEq => verify::verify_gamma_eq(&opts, &mut progress)?,
    };
    if let Some(path) = &args.out {
        let json = serde_json::to_string_pretty(&report).expect("serializable");
        fs::write(path, json).map_err(|e| CliError::Io(path.clone(), e))?;
    }
    match args.format {
        Format::Text => print_report_text(&report),
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
        }
    }
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn print_report_text(report: &VerificationReport) {
    println!("check: {}", report.check);
    println!("orders: {}..={}", report.n_min, report.n_max);
    println!("trees examined: {}", report.trees_examined);
    for (n, stats) in &report.per_order {
        let line = stats
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        println!("  order {n}: {line}");
    }
    println!("violations: {}", report.violations.len());
    for v in &report.violations {
        println!("  {} {}: {}", v.kind, v.graph6, v.detail);
    }
    println!("elapsed: {} ms", report.timing.elapsed_ms);
    println!("{}", if report.passed() { "PASS" } else { "FAIL" });
}

fn write_census(
    census: &family::FamilyCensus,
    n_max: usize,
    out: &Path,
) -> Result<(), CliError> {
    let mut lines = String::new();
    for (_, tree) in census.iter() {
        lines.push_str(&tree.to_graph6()?);
        lines.push('\n');
    }
    fs::write(out, lines).map_err(|e| CliError::Io(out.to_path_buf(), e))?;

    let mut counts: BTreeMap<usize, usize> = (1..=n_max).map(|n| (n, 0)).collect();
    for (n, c) in census.counts() {
        counts.insert(n, c);
    }
    let sidecar = out.with_file_name(format!(
        "{}.counts.json",
        out.file_name().unwrap_or_default().to_string_lossy()
    ));
    let json = serde_json::to_string_pretty(&counts).expect("serializable");
    fs::write(&sidecar, json).map_err(|e| CliError::Io(sidecar.clone(), e))?;
    Ok(())
}

fn generate(
    which: FamilyName,
    n_max: usize,
    out: &Path,
    labeled_out: Option<&Path>,
    guardrail_n: Option<usize>,
) -> Result<ExitCode, CliError> {
    let limits = effective_limits(guardrail_n);
    let census = match which {
        FamilyName::T => {
            let fam = family::generate_family_t(n_max, &limits)?;
            if let Some(path) = labeled_out {
                let exports: Vec<_> = fam.labeled.iter().map(|lt| lt.to_export()).collect();
                let json = serde_json::to_string_pretty(&exports).expect("serializable");
                fs::write(path, json).map_err(|e| CliError::Io(path.to_path_buf(), e))?;
            }
            fam.census
        }
        FamilyName::O => {
            if labeled_out.is_some() {
                return Err(CliError::BadParam(
                    "--labeled-out applies to family t only".into(),
                ));
            }
            family::generate_family_o(n_max, &limits)?
        }
    };
    write_census(&census, n_max, out)?;
    println!(
        "{} classes up to order {n_max} written to {}",
        census.len(),
        out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn enumerate_cmd(n: usize, out: &Path, guardrail_n: Option<usize>) -> Result<ExitCode, CliError> {
    let limits = effective_limits(guardrail_n);
    let stream = enumerate::all_trees(n, &limits)?;
    let total = stream.len();
    let mut buf = Vec::new();
    enumerate::dump_graph6(stream, &mut buf)?;
    fs::write(out, buf).map_err(|e| CliError::Io(out.to_path_buf(), e))?;
    println!("{total} trees of order {n} written to {}", out.display());
    Ok(ExitCode::SUCCESS)
}
