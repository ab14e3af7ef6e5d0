//! Command-line front end: mine, oracle, generate and stats-report.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::ingest::{read_delimited, read_fixed_transactions, IngestError, ValueDictionary};
use crate::miner::{mine, MineError, MinerConfig};
use crate::model::{Dataset, Finding};
use crate::oracle::{oracle_mine_with_limit, DEFAULT_ITEM_LIMIT};
use crate::preprocess::{alternative_orderings, decompose, extract_items, OrderingMode};
use crate::report::{ConfigEcho, RunReport};
use crate::synth::{generate, SynthSpec};

/// Errors mapped onto exit codes: usage 1, input 2, resource 3.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Resource(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Input(m) | CliError::Resource(m) => m,
        }
    }
}

impl From<IngestError> for CliError {
    fn from(e: IngestError) -> Self {
        CliError::Input(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "miim", version, about = "Minimal infrequent itemset miner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mine minimal infrequent itemsets from a file
    Mine(MineArgs),
    /// Re-derive results on small inputs by brute-force enumeration
    Oracle(OracleArgs),
    /// Generate a reproducible synthetic table
    Generate(GenerateArgs),
    /// Render a run-report JSON file as a table
    StatsReport(StatsReportArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input file
    input: PathBuf,
    /// Field delimiter
    #[arg(long, default_value_t = ',')]
    delimiter: char,
    /// Treat the first line as column names
    #[arg(long)]
    header: bool,
    /// Read whitespace-separated fixed-arity transactions instead
    #[arg(long)]
    transactions: bool,
}

impl InputArgs {
    fn read(&self) -> Result<(Dataset, ValueDictionary), CliError> {
        Ok(if self.transactions {
            read_fixed_transactions(&self.input)?
        } else {
            read_delimited(&self.input, self.delimiter, self.header)?
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Asc,
    Desc,
    Random,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Jsonl,
}

#[derive(Args)]
struct MineArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Frequency threshold: report itemsets occurring on 1..=tau rows
    #[arg(long, default_value_t = 1)]
    tau: u32,
    /// Largest itemset size (default: the column count)
    #[arg(long)]
    kmax: Option<usize>,
    /// Worker threads; the output is identical for any count
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Lead-item walk order
    #[arg(long, value_enum, default_value_t = OrderArg::Asc)]
    order: OrderArg,
    /// Seed for --order random
    #[arg(long)]
    seed: Option<u64>,
    /// Disable the last-level cardinality-bound prunes
    #[arg(long)]
    no_lemma: bool,
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Write findings here instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
    /// Write a JSON run report here
    #[arg(long)]
    stats: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 1)]
    tau: u32,
    /// Largest itemset size (default: the column count)
    #[arg(long)]
    kmax: Option<usize>,
    /// Enumerate even past the item-count guard
    #[arg(long)]
    force: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct GenerateArgs {
    /// Output file; a `<output>.meta.json` sidecar echoes the parameters
    output: PathBuf,
    #[arg(long)]
    rows: usize,
    #[arg(long)]
    cols: usize,
    #[arg(long, default_value_t = 2)]
    domain_min: u32,
    #[arg(long, default_value_t = 8)]
    domain_max: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct StatsReportArgs {
    /// Run-report JSON written by `mine --stats`
    report: PathBuf,
}

/// Parses arguments, runs the chosen command and returns the exit code.
pub fn main_entry() -> u8 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return 0;
        }
        Err(e) => {
            eprint!("{e}");
            return 1;
        }
    };
    let result = match cli.command {
        Command::Mine(args) => cmd_mine(args),
        Command::Oracle(args) => cmd_oracle(args),
        Command::Generate(args) => cmd_generate(args),
        Command::StatsReport(args) => cmd_stats_report(args),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}

fn validate_tau_kmax(
    tau: u32,
    kmax: Option<usize>,
    d: &Dataset,
) -> Result<(u32, usize), CliError> {
    let n = d.rows() as u32;
    if tau < 1 || tau >= n {
        return Err(CliError::Usage(format!(
            "tau must satisfy 1 <= tau < rows ({n}), got {tau}"
        )));
    }
    let k_max = kmax.unwrap_or(d.cols());
    if k_max < 1 || k_max > d.cols() {
        return Err(CliError::Usage(format!(
            "kmax must be between 1 and the column count ({}), got {k_max}",
            d.cols()
        )));
    }
    Ok((tau, k_max))
}

fn cmd_mine(args: MineArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let (dataset, dict) = args.input.read()?;
    let (tau, k_max) = validate_tau_kmax(args.tau, args.kmax, &dataset)?;
    if args.threads < 1 {
        return Err(CliError::Usage("threads must be at least 1".into()));
    }
    let (ordering, ordering_name) = match (args.order, args.seed) {
        (OrderArg::Asc, _) => (OrderingMode::Ascending, "ascending"),
        (OrderArg::Desc, _) => (OrderingMode::Descending, "descending"),
        (OrderArg::Random, Some(seed)) => (OrderingMode::Random { seed }, "random"),
        (OrderArg::Random, None) => {
            return Err(CliError::Usage("--order random requires --seed".into()));
        }
    };

    let universe = decompose(extract_items(&dataset), tau, dataset.rows() as u32)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let order = alternative_orderings(&universe, ordering);
    let cfg = MinerConfig {
        tau,
        k_max,
        ordering,
        lemma_pruning: !args.no_lemma,
        threads: args.threads,
    };
    let result = mine(&universe, &order, &cfg).map_err(|e| match e {
        MineError::Config(m) => CliError::Usage(m),
        MineError::Resource { .. } => CliError::Resource(e.to_string()),
    })?;

    write_findings(&result.findings, &dict, args.format, args.output.as_deref())?;

    if let Some(stats_path) = &args.stats {
        let echo = ConfigEcho {
            input: args.input.input.display().to_string(),
            tau,
            k_max,
            ordering: ordering_name.to_string(),
            seed: match ordering {
                OrderingMode::Random { seed } => Some(seed),
                _ => None,
            },
            lemma_pruning: cfg.lemma_pruning,
            threads: cfg.threads,
        };
        let report = RunReport::new(echo, &result, started.elapsed().as_millis() as u64);
        let json = serde_json::to_string_pretty(&report)
            .map_err(|e| CliError::Input(format!("encoding stats report: {e}")))?;
        fs::write(stats_path, json)
            .map_err(|e| CliError::Input(format!("writing {}: {e}", stats_path.display())))?;
    }
    Ok(())
}

fn cmd_oracle(args: OracleArgs) -> Result<(), CliError> {
    let (dataset, dict) = args.input.read()?;
    let (tau, k_max) = validate_tau_kmax(args.tau, args.kmax, &dataset)?;
    let limit = if args.force { usize::MAX } else { DEFAULT_ITEM_LIMIT };
    let findings = oracle_mine_with_limit(&dataset, tau, k_max, limit)
        .map_err(|e| CliError::Usage(format!("{e}; pass --force to enumerate anyway")))?;
    write_findings(&findings, &dict, args.format, args.output.as_deref())
}

fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    let spec =
        SynthSpec::new(args.rows, args.cols, args.domain_min, args.domain_max, args.seed)
            .map_err(|e| CliError::Usage(e.to_string()))?;
    let dataset = generate(&spec);
    let mut out = String::with_capacity(dataset.rows() * dataset.cols() * 3);
    for row in 0..dataset.rows() {
        for col in 0..dataset.cols() {
            if col > 0 {
                out.push(',');
            }
            out.push_str(&dataset.cell(row, col).unwrap().to_string());
        }
        out.push('\n');
    }
    fs::write(&args.output, out)
        .map_err(|e| CliError::Input(format!("writing {}: {e}", args.output.display())))?;
    let meta_path = sidecar_path(&args.output);
    let meta = serde_json::to_string_pretty(&spec)
        .map_err(|e| CliError::Input(format!("encoding parameters: {e}")))?;
    fs::write(&meta_path, meta)
        .map_err(|e| CliError::Input(format!("writing {}: {e}", meta_path.display())))?;
    println!(
        "wrote {}x{} table to {} (parameters: {})",
        spec.rows,
        spec.cols,
        args.output.display(),
        meta_path.display()
    );
    Ok(())
}

fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().unwrap_or_default().to_owned();
    name.push(".meta.json");
    output.with_file_name(name)
}

fn cmd_stats_report(args: StatsReportArgs) -> Result<(), CliError> {
    let json = fs::read_to_string(&args.report)
        .map_err(|e| CliError::Input(format!("reading {}: {e}", args.report.display())))?;
    let report: RunReport = serde_json::from_str(&json)
        .map_err(|e| CliError::Input(format!("parsing {}: {e}", args.report.display())))?;
    print!("{}", report.render_table());
    Ok(())
}

#[derive(Serialize)]
struct JsonItem<'a> {
    col: String,
    token: &'a str,
}

#[derive(Serialize)]
struct JsonFinding<'a> {
    freq: u32,
    items: Vec<JsonItem<'a>>,
}

/// One finding as a text line: frequency, tab, then `column=token` pairs
/// sorted by column.
pub fn render_text_line(f: &Finding, dict: &ValueDictionary) -> String {
    let items: Vec<String> = f
        .itemset
        .items()
        .iter()
        .map(|it| format!("{}={}", dict.column_label(it.col), dict.decode(it.col, it.value)))
        .collect();
    format!("{}\t{}", f.freq, items.join(";"))
}

/// One finding as a JSON line with stable field names.
pub fn render_jsonl_line(f: &Finding, dict: &ValueDictionary) -> String {
    let json = JsonFinding {
        freq: f.freq,
        items: f
            .itemset
            .items()
            .iter()
            .map(|it| JsonItem {
                col: dict.column_label(it.col),
                token: dict.decode(it.col, it.value),
            })
            .collect(),
    };
    serde_json::to_string(&json).expect("findings serialize")
}

fn write_findings(
    findings: &[Finding],
    dict: &ValueDictionary,
    format: FormatArg,
    output: Option<&Path>,
) -> Result<(), CliError> {
    let mut rendered = String::new();
    for f in findings {
        rendered.push_str(&match format {
            FormatArg::Text => render_text_line(f, dict),
            FormatArg::Jsonl => render_jsonl_line(f, dict),
        });
        rendered.push('\n');
    }
    match output {
        Some(path) => fs::write(path, rendered)
            .map_err(|e| CliError::Input(format!("writing {}: {e}", path.display()))),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(rendered.as_bytes())
                .map_err(|e| CliError::Input(format!("writing stdout: {e}")))
        }
    }
}
