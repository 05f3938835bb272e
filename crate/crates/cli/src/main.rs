use clap::{Parser, Subcommand};
use shadowcert_cli::report::Report;
use shadowcert_cli::{run_shadow, run_stoll, run_suite, ScenarioError};
use shadowcert_core::exactalg::parse_rat;

/// Exact verification of the shadow toolkit's curve-family scenarios.
///
/// Rationals cross this boundary as strings "p/q"; cyclotomic constants as
/// polynomial strings in the symbol z24. Exit code 0 when every entry
/// passes, 2 when anything is UNVERIFIED, 1 on failure or error.
#[derive(Parser)]
#[command(name = "verify", version, about)]
struct Cli {
    /// Print the one-line-per-check human summary instead of the JSON report
    #[arg(long, global = true)]
    quiet: bool,

    /// Include integer-millisecond timings (makes reports nondeterministic)
    #[arg(long, global = true)]
    timings: bool,

    /// Write the report to a file as well as stdout
    #[arg(long, global = true)]
    report: Option<std::path::PathBuf>,

    /// Witness primes, comma separated (default pool: eight primes = 1 mod 24
    /// plus 5, 7, 11, 13; also via the SHADOWCERT_PRIME_POOL variable)
    #[arg(long, global = true, value_delimiter = ',')]
    primes: Vec<u64>,

    /// Coefficient bound for the relation sieve fallback
    #[arg(long, global = true, default_value_t = 20)]
    sieve_bound: i64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the one-parameter genus-6 family at an exact rational t
    D12 {
        /// exact rational parameter, e.g. 7/9 (t outside {0, 1, -1})
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        /// fixture overrides
        #[arg(long)]
        fixture: Option<std::path::PathBuf>,
        #[arg(long)]
        covers: Option<std::path::PathBuf>,
    },
    /// Verify the two-parameter plane-quartic family at exact (u, w)
    S3 {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[arg(long)]
        fixture: Option<std::path::PathBuf>,
    },
    /// Run the formal shadow engine on a cover fixture file
    Shadow {
        #[arg(long)]
        fixture: std::path::PathBuf,
    },
    /// Run the exclusion-lemma computation against a polynomial list file
    Stoll {
        #[arg(long)]
        list: Option<std::path::PathBuf>,
    },
    /// Chain the full verification: d12 at 7/9, s3 at (2,1), the bundled
    /// cover fixtures, and the exclusion computation
    Suite {
        #[arg(long)]
        list: Option<std::path::PathBuf>,
    },
}

fn read_file(p: &std::path::Path) -> Result<String, ScenarioError> {
    std::fs::read_to_string(p).map_err(|e| ScenarioError::Io(format!("{}: {e}", p.display())))
}

fn prime_pool(cli: &Cli) -> Vec<u64> {
    if !cli.primes.is_empty() {
        return cli.primes.clone();
    }
    if let Ok(env) = std::env::var("SHADOWCERT_PRIME_POOL") {
        let parsed: Vec<u64> = env
            .split(',')
            .filter_map(|s| s.trim().parse().ok())
            .collect();
        if !parsed.is_empty() {
            return parsed;
        }
    }
    vec![]
}

fn run(cli: &Cli) -> Result<Report, ScenarioError> {
    let pool = prime_pool(cli);
    match &cli.command {
        Command::D12 { t, fixture, covers } => {
            let t = parse_rat(t).map_err(|e| ScenarioError::Parameter(e.to_string()))?;
            let fixture_text = fixture.as_deref().map(read_file).transpose()?;
            let covers_text = covers.as_deref().map(read_file).transpose()?;
            shadowcert_cli::d12::run_d12(
                &t,
                &pool,
                cli.sieve_bound,
                cli.timings,
                fixture_text.as_deref(),
                covers_text.as_deref(),
            )
        }
        Command::S3 { u, w, fixture } => {
            let u = parse_rat(u).map_err(|e| ScenarioError::Parameter(e.to_string()))?;
            let w = parse_rat(w).map_err(|e| ScenarioError::Parameter(e.to_string()))?;
            let fixture_text = fixture.as_deref().map(read_file).transpose()?;
            shadowcert_cli::s3::run_s3(
                &u,
                &w,
                &pool,
                cli.sieve_bound,
                cli.timings,
                fixture_text.as_deref(),
            )
        }
        Command::Shadow { fixture } => {
            let text = read_file(fixture)?;
            run_shadow(&text, cli.timings, &fixture.display().to_string())
        }
        Command::Stoll { list } => {
            let text = list.as_deref().map(read_file).transpose()?;
            run_stoll(
                text.as_deref(),
                cli.timings,
                &list
                    .as_ref()
                    .map(|p| p.display().to_string())
                    .unwrap_or_else(|| "none".into()),
            )
        }
        Command::Suite { list } => {
            let text = list.as_deref().map(read_file).transpose()?;
            run_suite(text.as_deref(), &pool, cli.sieve_bound, cli.timings)
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let body = if cli.quiet { report.summary() } else { report.to_json() };
            print!("{body}");
            if !body.ends_with('\n') {
                println!();
            }
            if let Some(path) = &cli.report {
                if let Err(e) = std::fs::write(path, report.to_json()) {
                    eprintln!("error writing report: {e}");
                    std::process::exit(1);
                }
            }
            std::process::exit(report.exit_code());
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    }
}
