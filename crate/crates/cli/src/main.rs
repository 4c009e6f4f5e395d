use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sumcore::{rational, ModelDesc, Rational, SetSpec};
use sumcore_cli::{
    error_json, run_experiment, with_threads, CliError, ExperimentConfig, FamilyName, Mode, Operation, OutFormat,
    Result, ScorerName, SetEncoding,
};

#[derive(Parser)]
#[command(name = "sumcore", version, about = "Certified sumset, ladder, density and cover experiments")]
struct Cli {
    /// `zwindow:M:L`, `cyclic:n` or `cayley:<table file>`
    #[arg(long, global = true)]
    model: Option<String>,
    /// Set expression, e.g. `union(pow2, translate(pow2, 3))`
    #[arg(long, global = true)]
    set: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker cap; does not change any output
    #[arg(long, global = true, env = "SUMCORE_THREADS")]
    threads: Option<usize>,
    /// Node limit for searches
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(0..=i64::MAX as u64))]
    budget: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = OutFormat::Json)]
    out: OutFormat,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Materialise the set and print it in a set-file encoding
    Gen {
        #[arg(long, value_enum, default_value_t = SetEncoding::Rle)]
        encoding: SetEncoding,
    },
    /// Upper (or lower) Banach density over windows of length n
    Density {
        #[arg(long, conflicts_with = "schedule", required_unless_present = "schedule")]
        n: Option<usize>,
        /// Comma-separated window lengths
        #[arg(long, value_delimiter = ',')]
        schedule: Option<Vec<usize>>,
        #[arg(long)]
        lower: bool,
    },
    /// Regular point or partition certificate on [start, end)
    FindPoint {
        #[arg(long, value_parser = parse_alpha)]
        alpha: Rational,
        #[arg(long = "N")]
        horizon: usize,
        #[arg(long)]
        start: Option<usize>,
        #[arg(long)]
        end: Option<usize>,
    },
    /// Longest order-property ladder up to k-max
    Ladder {
        #[arg(long)]
        k_max: usize,
    },
    /// k x k sumset witness
    Witness {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Triangular witness of length m
    Triangular {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = ScorerName::PoolSize)]
        scorer: ScorerName,
    },
    /// Square witness or ladder extracted from a triangular witness
    Upgrade {
        /// JSON file holding `{b, c}` or a triangular/witness report
        #[arg(long, conflicts_with = "m", required_unless_present = "m")]
        witness: Option<PathBuf>,
        /// Search for a triangular witness of this length first
        #[arg(long)]
        m: Option<usize>,
    },
    /// Witness made of two intervals or arithmetic progressions
    Defwitness {
        #[arg(long, value_enum, default_value_t = FamilyName::Intervals)]
        family: FamilyName,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        step_max: Option<usize>,
    },
    /// Witness existence for k = 1..k-max
    Growth {
        #[arg(long)]
        k_max: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Fewest translates covering a core region
    Syndetic {
        #[arg(long, value_parser = parse_pair::<usize>)]
        core: Option<(usize, usize)>,
        #[arg(long, value_parser = parse_pair::<i64>, allow_hyphen_values = true)]
        shifts: Option<(i64, i64)>,
        #[arg(long, default_value_t = sumcore_cli::config::DEFAULT_T_MAX)]
        t_max: usize,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Run an experiment described by a TOML file
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

fn parse_alpha(s: &str) -> std::result::Result<Rational, String> {
    rational::parse_rational(s).ok_or_else(|| format!("not a rational: {s:?}"))
}

fn parse_pair<T: std::str::FromStr>(s: &str) -> std::result::Result<(T, T), String> {
    let bad = || format!("expected a,b got {s:?}");
    let (x, y) = s.split_once(',').ok_or_else(bad)?;
    Ok((x.trim().parse().map_err(|_| bad())?, y.trim().parse().map_err(|_| bad())?))
}

impl Command {
    fn kind(&self) -> &'static str {
        match self {
            Command::Gen { .. } => "gen",
            Command::Density { .. } => "density",
            Command::FindPoint { .. } => "find-point",
            Command::Ladder { .. } => "ladder",
            Command::Witness { .. } => "witness",
            Command::Triangular { .. } => "triangular",
            Command::Upgrade { .. } => "upgrade",
            Command::Defwitness { .. } => "defwitness",
            Command::Growth { .. } => "growth",
            Command::Syndetic { .. } => "syndetic",
            Command::Run { .. } => "run",
        }
    }
}

fn config(cli: &Cli) -> Result<ExperimentConfig> {
    let operation = match &cli.command {
        Command::Run { config } => {
            let text = std::fs::read_to_string(config)
                .map_err(|e| CliError::Io { path: config.display().to_string(), message: e.to_string() })?;
            return ExperimentConfig::from_toml(&text);
        }
        Command::Gen { encoding } => Operation::Gen { encoding: *encoding },
        Command::Density { n, schedule, lower } => {
            Operation::Density { n: *n, schedule: schedule.clone(), lower: *lower }
        }
        Command::FindPoint { alpha, horizon, start, end } => {
            Operation::FindPoint { alpha: *alpha, horizon: *horizon, start: *start, end: *end }
        }
        Command::Ladder { k_max } => Operation::Ladder { k_max: *k_max },
        Command::Witness { k, mode } => Operation::Witness { k: *k, mode: *mode },
        Command::Triangular { m, mode, scorer } => Operation::Triangular { m: *m, mode: *mode, scorer: *scorer },
        Command::Upgrade { witness, m } => Operation::Upgrade { witness: witness.clone(), m: *m },
        Command::Defwitness { family, n, step_max } => {
            Operation::Defwitness { family: *family, n: *n, step_max: *step_max }
        }
        Command::Growth { k_max, mode } => Operation::Growth { k_max: *k_max, mode: *mode },
        Command::Syndetic { core, shifts, t_max, mode } => {
            Operation::Syndetic { core: *core, shifts: *shifts, t_max: *t_max, mode: *mode }
        }
    };
    let model: ModelDesc = cli.model.as_deref().ok_or(CliError::Missing("model"))?.parse()?;
    let set: SetSpec = cli.set.as_deref().ok_or(CliError::Missing("set"))?.parse().map_err(sumcore::Error::from)?;
    let cfg = ExperimentConfig { model, set, seed: cli.seed, out: cli.out, budget: cli.budget, operation };
    cfg.validate()?;
    Ok(cfg)
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() }),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let cfg = config(cli)?;
    let report = with_threads(cli.threads, || run_experiment(&cfg))??;
    let text = match cfg.out {
        OutFormat::Json => report.to_json()?,
        OutFormat::Csv => report.to_csv()?,
    };
    emit(cli, &text)?;
    Ok(report.status.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            let body = error_json(cli.command.kind(), &err);
            if emit(&cli, &body).is_err() {
                println!("{body}");
            }
            ExitCode::from(2)
        }
    }
}
