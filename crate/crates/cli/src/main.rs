//! Command-line front end: build complexes and ideals, decide membership,
//! compute initial degrees and Waldschmidt constants, and run the
//! closed-form verification suite.
//!
//! Exit codes: 0 on success, 1 when a verification check fails or a budget
//! cut results short, 2 on usage or input errors.

mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use waldschmidt::{
    alpha_symbolic, alpha_table, bipyramid_ideal, build_bipyramid, covering_lp, gamma_closed_form,
    gamma_lp, gamma_report, gamma_report_bipyramid, AlphaTableCell, BipyramidSpec, Monomial,
    ReportOptions, Simplex, SquarefreeMonomialIdeal, TableOptions,
};

const BUDGET_ENV: &str = "WALDSCHMIDT_BUDGET";

#[derive(Parser)]
#[command(
    name = "waldschmidt",
    version,
    about = "Stanley-Reisner ideals of bipyramids: symbolic powers, initial degrees, Waldschmidt constants",
    after_help = "All rationals are printed exactly as p/q; nothing is ever rounded."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the facets of a bipyramid boundary complex
    Complex(ComplexArgs),
    /// Print an ideal in the generator file format (optionally with primes)
    Ideal(IdealArgs),
    /// Decide whether a monomial lies in the m-th symbolic power
    Membership(MembershipArgs),
    /// Minimal degree in the m-th symbolic power, with a witness monomial
    Alpha(AlphaArgs),
    /// Waldschmidt constant via the exact covering LP
    Gamma(GammaArgs),
    /// Check computed values against the known closed forms
    Verify(verify::VerifyArgs),
    /// Initial degrees over an (n, m) grid with closed-form annotations
    Table(TableArgs),
}

/// Where the ideal comes from: a bipyramid base size or a generator file.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Base size n of the bipyramid B_n (vertices: 0 apex, 1..n cycle, n+1 apex)
    #[arg(long, value_name = "N")]
    bipyramid: Option<usize>,
    /// Ideal file: header `variables N`, then one generator support per line
    #[arg(long, value_name = "FILE")]
    ideal: Option<PathBuf>,
}

impl Source {
    fn load(&self) -> Result<(SquarefreeMonomialIdeal, Option<BipyramidSpec>), CliError> {
        match (self.bipyramid, &self.ideal) {
            (Some(n), None) => {
                let spec = BipyramidSpec::new(n)?;
                Ok((bipyramid_ideal(spec), Some(spec)))
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
                Ok((SquarefreeMonomialIdeal::from_text(&text)?, None))
            }
            _ => unreachable!("clap enforces exactly one source"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Records,
}

#[derive(Args)]
struct ComplexArgs {
    /// Base size n of the bipyramid B_n
    #[arg(long, value_name = "N", required = true)]
    bipyramid: usize,
}

#[derive(Args)]
struct IdealArgs {
    #[command(flatten)]
    source: Source,
    /// Also list the minimal primes as comment lines
    #[arg(long)]
    primes: bool,
}

#[derive(Args)]
struct MembershipArgs {
    #[command(flatten)]
    source: Source,
    /// Monomial as `idx:exp` pairs, e.g. "0:3 3:2 5:1 7:2 10:1"
    #[arg(long, value_name = "MONOMIAL", required = true)]
    monomial: String,
    /// Symbolic power exponent
    #[arg(short, value_name = "M", required = true)]
    m: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct AlphaArgs {
    #[command(flatten)]
    source: Source,
    /// Symbolic power exponent
    #[arg(short, value_name = "M", required = true)]
    m: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct GammaArgs {
    #[command(flatten)]
    source: Source,
    /// Also compute the alpha(m)/m sequence up to this m
    #[arg(short, value_name = "M")]
    m: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for the sequence entries
    #[arg(long, value_name = "J", default_value_t = 1)]
    jobs: usize,
    /// Wall-clock budget in seconds (env: WALDSCHMIDT_BUDGET)
    #[arg(long, value_name = "SECONDS")]
    budget: Option<u64>,
    /// Dump simplex tableaus for the covering LP to stderr
    #[arg(long)]
    debug_lp: bool,
}

#[derive(Args)]
struct TableArgs {
    /// Largest base size (grid runs n = 4..=N)
    #[arg(long, value_name = "N", default_value_t = 10)]
    n_max: usize,
    /// Largest symbolic power (grid runs m = 1..=M)
    #[arg(short, value_name = "M", default_value_t = 6)]
    m: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for grid cells
    #[arg(long, value_name = "J", default_value_t = 1)]
    jobs: usize,
    /// Wall-clock budget in seconds (env: WALDSCHMIDT_BUDGET)
    #[arg(long, value_name = "SECONDS")]
    budget: Option<u64>,
}

/// Input and usage failures; all mapped to exit code 2.
#[derive(Debug)]
enum CliError {
    Input(String),
    Library(waldschmidt::Error),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Library(e) => write!(f, "{e}"),
        }
    }
}

impl From<waldschmidt::Error> for CliError {
    fn from(e: waldschmidt::Error) -> Self {
        CliError::Library(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Complex(args) => cmd_complex(args),
        Command::Ideal(args) => cmd_ideal(args),
        Command::Membership(args) => cmd_membership(args),
        Command::Alpha(args) => cmd_alpha(args),
        Command::Gamma(args) => cmd_gamma(args),
        Command::Verify(args) => verify::run(args),
        Command::Table(args) => cmd_table(args),
    }
}

fn labeling_comment(spec: BipyramidSpec) -> String {
    format!(
        "# labeling: 0 = upper apex, 1..{} = base cycle, {} = lower apex",
        spec.n(),
        spec.lower_apex()
    )
}

/// Budget from the flag, falling back to the environment variable.
fn resolve_budget(flag: Option<u64>) -> Option<Duration> {
    let seconds = flag.or_else(|| {
        let raw = std::env::var(BUDGET_ENV).ok()?;
        match raw.parse::<u64>() {
            Ok(v) => Some(v),
            Err(_) => {
                eprintln!("warning: ignoring non-numeric {BUDGET_ENV}={raw}");
                None
            }
        }
    })?;
    Some(Duration::from_secs(seconds))
}

fn cmd_complex(args: ComplexArgs) -> Result<ExitCode, CliError> {
    let spec = BipyramidSpec::new(args.bipyramid)?;
    let complex = build_bipyramid(spec);
    println!("{}", labeling_comment(spec));
    print!("{}", complex.to_text());
    Ok(ExitCode::SUCCESS)
}

fn cmd_ideal(args: IdealArgs) -> Result<ExitCode, CliError> {
    let (ideal, spec) = args.source.load()?;
    if let Some(spec) = spec {
        println!("{}", labeling_comment(spec));
    }
    print!("{}", ideal.to_text());
    if args.primes {
        let primes = ideal.minimal_primes();
        println!("# minimal primes ({}):", primes.len());
        for prime in primes {
            println!("# {prime}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_membership(args: MembershipArgs) -> Result<ExitCode, CliError> {
    if args.m == 0 {
        return Err(waldschmidt::Error::InvalidMultiplicity.into());
    }
    let (ideal, spec) = args.source.load()?;
    let monomial = Monomial::parse(&args.monomial, ideal.num_variables())?;
    let (min_weight, prime) = ideal.min_prime_weight(&monomial)?;
    let member = min_weight >= args.m;
    match args.format {
        Format::Text => {
            if let Some(spec) = spec {
                println!("{}", labeling_comment(spec));
            }
            println!("{member}");
            if !member {
                println!(
                    "violated prime: {prime} (weight {min_weight} < m {})",
                    args.m
                );
            }
        }
        Format::Csv => {
            println!("member,min_weight,m,violated_prime");
            let violated = if member {
                String::new()
            } else {
                prime.to_string()
            };
            println!("{member},{min_weight},{},{violated}", args.m);
        }
        Format::Records => {
            println!("member: {member}");
            println!("min_weight: {min_weight}");
            println!("m: {}", args.m);
            if !member {
                println!("violated_prime: {prime}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_alpha(args: AlphaArgs) -> Result<ExitCode, CliError> {
    let (ideal, spec) = args.source.load()?;
    let result = alpha_symbolic(&ideal, args.m)?;
    match args.format {
        Format::Text => {
            if let Some(spec) = spec {
                println!("{}", labeling_comment(spec));
            }
            println!("alpha: {}", result.value);
            println!("witness: {}", result.witness);
        }
        Format::Csv => {
            println!("m,alpha,witness");
            println!("{},{},{}", args.m, result.value, result.witness);
        }
        Format::Records => {
            println!("m: {}", args.m);
            println!("alpha: {}", result.value);
            println!("witness: {}", result.witness);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gamma(args: GammaArgs) -> Result<ExitCode, CliError> {
    if args.m == Some(0) {
        return Err(waldschmidt::Error::InvalidMultiplicity.into());
    }
    let (ideal, spec) = args.source.load()?;
    if args.debug_lp {
        let lp = covering_lp(&ideal);
        let mut simplex = Simplex::new(&lp);
        simplex.set_trace(true);
        simplex.solve();
    }

    // Without -m only the LP runs; the alpha sequence is opt-in.
    let Some(m_max) = args.m else {
        let lp_value = gamma_lp(&ideal);
        let closed_form = spec.and_then(|s| gamma_closed_form(s.n()).ok());
        let consistent = closed_form.as_ref().is_none_or(|cf| *cf == lp_value);
        match args.format {
            Format::Text => println!(
                "{}",
                gamma_summary_line(&lp_value, &closed_form, consistent, spec)
            ),
            Format::Csv => {
                println!("gamma,closed_form,consistent");
                let cf = closed_form
                    .as_ref()
                    .map(ToString::to_string)
                    .unwrap_or_default();
                println!("{lp_value},{cf},{consistent}");
            }
            Format::Records => {
                println!("gamma_lp: {lp_value}");
                match &closed_form {
                    Some(cf) => println!("closed_form: {cf}"),
                    None => println!("closed_form: none"),
                }
                println!("consistent: {consistent}");
            }
        }
        return Ok(if consistent {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(1)
        });
    };

    let options = ReportOptions {
        m_max,
        jobs: args.jobs,
        budget: resolve_budget(args.budget),
    };
    let report = match spec {
        Some(spec) => gamma_report_bipyramid(spec, &options)?,
        None => gamma_report(&ideal, &options)?,
    };
    match args.format {
        Format::Text => {
            println!(
                "{}",
                gamma_summary_line(
                    &report.lp_value,
                    &report.closed_form,
                    report.consistent,
                    spec
                )
            );
            print!("{}", report.to_text());
        }
        Format::Csv => print!("{}", report.sequence_csv()),
        Format::Records => print!("{}", report.to_text()),
    }

    let ok = report.consistent && !report.truncated;
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn gamma_summary_line(
    lp_value: &waldschmidt::Rational,
    closed_form: &Option<waldschmidt::Rational>,
    consistent: bool,
    spec: Option<BipyramidSpec>,
) -> String {
    match closed_form {
        Some(cf) => {
            let verdict = if consistent { "consistent" } else { "MISMATCH" };
            format!("{lp_value} (closed form {cf}, {verdict})")
        }
        None => match spec {
            // A bipyramid without a closed form is the complete-intersection
            // base case n = 3, where n/(n-2) does not apply.
            Some(spec) => {
                debug_assert!(gamma_closed_form(spec.n()).is_err());
                format!(
                    "{lp_value} (closed form n/(n-2) not applicable for n = {}: complete intersection)",
                    spec.n()
                )
            }
            None => lp_value.to_string(),
        },
    }
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, CliError> {
    if args.n_max < 4 {
        return Err(CliError::Input(format!(
            "--n-max must be at least 4 (got {})",
            args.n_max
        )));
    }
    if args.m == 0 {
        return Err(waldschmidt::Error::InvalidMultiplicity.into());
    }
    let options = TableOptions {
        jobs: args.jobs,
        budget: resolve_budget(args.budget),
    };
    let cells = alpha_table(4..=args.n_max, 1..=args.m, &options)?;
    print!("{}", render_table(&cells, args.format));

    let any_gap = cells.iter().any(|c| c.result.is_none());
    let any_mismatch = cells.iter().any(|c| c.matches() == Some(false));
    if any_gap {
        eprintln!("warning: budget exhausted, table has gaps");
    }
    Ok(if any_gap || any_mismatch {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

fn render_table(cells: &[AlphaTableCell], format: Format) -> String {
    let mut out = String::new();
    let opt = |v: &Option<String>| v.clone().unwrap_or_default();
    match format {
        Format::Text => {
            let _ = writeln!(
                out,
                "{:<4} {:<4} {:<6} {:<11} {:<6} witness",
                "n", "m", "alpha", "prediction", "match"
            );
            for cell in cells {
                let (alpha, witness) = match &cell.result {
                    Some(r) => (r.value.to_string(), r.witness.to_string()),
                    None => ("-".into(), "-".into()),
                };
                let prediction = cell
                    .prediction
                    .map(|p| p.to_string())
                    .unwrap_or_else(|| "-".into());
                let matches = match cell.matches() {
                    Some(true) => "yes",
                    Some(false) => "NO",
                    None => "-",
                };
                let _ = writeln!(
                    out,
                    "{:<4} {:<4} {:<6} {:<11} {:<6} {witness}",
                    cell.n, cell.m, alpha, prediction, matches
                );
            }
        }
        Format::Csv => {
            let _ = writeln!(out, "n,m,alpha,witness,closed_form_prediction,match");
            for cell in cells {
                let alpha = cell.result.as_ref().map(|r| r.value.to_string());
                let witness = cell.result.as_ref().map(|r| r.witness.to_string());
                let prediction = cell.prediction.map(|p| p.to_string());
                let matches = cell.matches().map(|m| m.to_string());
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    cell.n,
                    cell.m,
                    opt(&alpha),
                    opt(&witness),
                    opt(&prediction),
                    opt(&matches)
                );
            }
        }
        Format::Records => {
            for cell in cells {
                let _ = writeln!(out, "n: {}", cell.n);
                let _ = writeln!(out, "m: {}", cell.m);
                if let Some(r) = &cell.result {
                    let _ = writeln!(out, "alpha: {}", r.value);
                    let _ = writeln!(out, "witness: {}", r.witness);
                } else {
                    let _ = writeln!(out, "alpha: gap");
                }
                if let Some(p) = cell.prediction {
                    let _ = writeln!(out, "prediction: {p}");
                }
                if let Some(m) = cell.matches() {
                    let _ = writeln!(out, "match: {m}");
                }
                let _ = writeln!(out);
            }
        }
    }
    out
}
