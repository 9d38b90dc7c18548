//! Command-line front end.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage error. Diagnostics go
//! to the error stream only.

mod crypto;
mod render;
mod report_file;

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{
    aggregate_report, compare_reports, sweep_cases, workload_bytes, Algorithm, BenchCase, BenchError, Category, Runner,
};
use crate::blockcipher::BlockCipherError;
use crate::digest::{HashAlgorithm, HashState};
use crate::homomorphic::HomomorphicError;
use crate::pubkey::PubKeyError;

pub use crypto::{CiphertextFile, KeyFile};
pub use render::{plot_csv, plot_points, row_label, PlotPoint};
pub use report_file::{parse_report, read_report, report_to_json, write_atomic, ReportFile, RowRecord, SCHEMA_VERSION};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Runtime(format!("{}: {e}", path.display()))
    }

    fn block_cipher(e: BlockCipherError) -> Self {
        CliError::Runtime(format!("BlockCipherError: {e}"))
    }

    fn pubkey(e: PubKeyError) -> Self {
        CliError::Runtime(format!("PubKeyError: {e}"))
    }

    fn homomorphic(e: HomomorphicError) -> Self {
        CliError::Runtime(format!("HomomorphicError: {e}"))
    }

    fn bench(e: BenchError) -> Self {
        match e {
            BenchError::InvalidCase(msg) => CliError::Usage(msg),
            e => CliError::Runtime(format!("BenchError: {e}")),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => f.write_str(m),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cryptbench", version, about = "Cryptographic algorithm library and benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write deterministic workload bytes to a file.
    Workload {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        size: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run or compare benchmarks.
    #[command(subcommand)]
    Bench(BenchCommand),
    /// Emit input-size vs. time CSV series from reports.
    PlotData(PlotArgs),
    /// Key generation, file encryption and hashing.
    #[command(subcommand)]
    Crypto(CryptoCommand),
}

#[derive(Debug, Subcommand)]
enum BenchCommand {
    /// Time every selected algorithm over its size sweep and save a report.
    Run(RunArgs),
    /// Print speed-up ratios between two reports.
    Compare {
        local: PathBuf,
        cloud: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Comma-separated algorithms; all eight when omitted.
    #[arg(long, value_delimiter = ',', value_parser = parse_algorithm)]
    algorithms: Vec<Algorithm>,
    /// `paper` for the standard sweep, or a comma-separated list of byte sizes.
    #[arg(long, default_value = "paper")]
    sizes: String,
    /// Key size for RSA, ElGamal, Paillier and Benaloh.
    #[arg(long)]
    key_bits: Option<u64>,
    #[arg(long)]
    rsa_bits: Option<u64>,
    #[arg(long)]
    elgamal_bits: Option<u64>,
    #[arg(long)]
    paillier_bits: Option<u64>,
    #[arg(long)]
    benaloh_bits: Option<u64>,
    /// Generate keys before the clock starts instead of inside each sample.
    #[arg(long)]
    no_keygen: bool,
    /// Generate a new ElGamal group inside every sample.
    #[arg(long)]
    fresh_elgamal_params: bool,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long = "env", default_value = "single-system")]
    environment: String,
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Debug, Args)]
struct PlotArgs {
    #[arg(required = true)]
    reports: Vec<PathBuf>,
    /// Single CSV file; needs one algorithm in scope.
    #[arg(short, long, conflicts_with = "out_dir", required_unless_present = "out_dir")]
    output: Option<PathBuf>,
    /// Directory receiving one `<algorithm>.csv` per algorithm.
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long, value_parser = parse_algorithm, conflicts_with = "out_dir")]
    algorithm: Option<Algorithm>,
}

#[derive(Debug, Subcommand)]
enum CryptoCommand {
    Keygen {
        #[arg(long, value_parser = parse_algorithm)]
        algorithm: Algorithm,
        #[arg(long)]
        bits: Option<u64>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    Encrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Must match the key file when given.
        #[arg(long, value_parser = parse_algorithm)]
        algorithm: Option<Algorithm>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    Decrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, value_parser = parse_algorithm)]
        algorithm: Option<Algorithm>,
    },
    /// Print the lowercase hex digest of a file.
    Hash {
        #[arg(long, value_parser = parse_algorithm)]
        algorithm: Algorithm,
        #[arg(long = "in")]
        input: PathBuf,
    },
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Workload { seed, size, output } => write_atomic(&output, &workload_bytes(seed, size)),
        Command::Bench(BenchCommand::Run(args)) => bench_run(args, out, err),
        Command::Bench(BenchCommand::Compare {
            local,
            cloud,
            format,
            output,
        }) => bench_compare(&local, &cloud, format, output.as_deref(), out),
        Command::PlotData(args) => plot_data(args),
        Command::Crypto(cmd) => crypto_command(cmd, out),
    }
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(path) => write_atomic(path, text.as_bytes()),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Runtime(format!("standard output: {e}"))),
    }
}

fn build_cases(args: &RunArgs) -> Result<Vec<BenchCase>, CliError> {
    let algorithms: Vec<Algorithm> = if args.algorithms.is_empty() {
        Algorithm::ALL.to_vec()
    } else {
        let mut seen = BTreeSet::new();
        args.algorithms.iter().copied().filter(|a| seen.insert(*a)).collect()
    };
    let mut cases = if args.sizes == "paper" {
        sweep_cases(&algorithms, args.seed)
    } else {
        let sizes = args
            .sizes
            .split(',')
            .map(|s| s.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| CliError::Usage(format!("--sizes must be \"paper\" or a list of byte counts, got {:?}", args.sizes)))?;
        let mut cases = Vec::new();
        for &a in &algorithms {
            if a.category() == Category::Homomorphic {
                return Err(CliError::Usage(format!(
                    "{a} takes no input size; use --sizes paper or drop it from --algorithms"
                )));
            }
            cases.extend(sizes.iter().map(|&s| BenchCase::new(a, Some(s), args.seed)));
        }
        cases
    };
    for case in &mut cases {
        let specific = match case.algorithm {
            Algorithm::Rsa => args.rsa_bits,
            Algorithm::ElGamal => args.elgamal_bits,
            Algorithm::Paillier => args.paillier_bits,
            Algorithm::Benaloh => args.benaloh_bits,
            _ => None,
        };
        let public_key = matches!(
            case.algorithm.category(),
            Category::Asymmetric | Category::Homomorphic
        );
        if let Some(bits) = specific.or(args.key_bits.filter(|_| public_key)) {
            case.key_size = Some(bits);
        }
        if public_key {
            case.include_keygen = !args.no_keygen;
        }
        case.validate().map_err(CliError::bench)?;
    }
    Ok(cases)
}

fn bench_run(args: RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let cases = build_cases(&args)?;
    let mut runner = Runner::with_fresh_elgamal_params(args.fresh_elgamal_params);
    let mut rows = Vec::with_capacity(cases.len());
    for case in &cases {
        let row = runner.run_case(case, &mut case.rng()).map_err(CliError::bench)?;
        let _ = writeln!(
            err,
            "{} {} ms",
            row_label(case.algorithm, case.input_size),
            row.average_ms
        );
        rows.push(row);
    }
    let report = aggregate_report(rows, &args.environment).map_err(CliError::bench)?;
    write_atomic(&args.output, report_to_json(&report).as_bytes())?;
    emit(&render::bench_table(&report), None, out)
}

fn bench_compare(
    local: &Path,
    cloud: &Path,
    format: Format,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let local = read_report(local)?;
    let cloud = read_report(cloud)?;
    let table = compare_reports(&local, &cloud).map_err(CliError::bench)?;
    let text = match format {
        Format::Table => render::compare_table(&table),
        Format::Csv => render::compare_csv(&table),
        Format::Json => render::compare_json(&table),
    };
    emit(&text, output, out)
}

fn plot_data(args: PlotArgs) -> Result<(), CliError> {
    let reports = args
        .reports
        .iter()
        .map(|p| read_report(p))
        .collect::<Result<Vec<_>, _>>()?;
    let mut labels = BTreeSet::new();
    for r in &reports {
        if !labels.insert(r.environment_label.as_str()) {
            return Err(CliError::Runtime(format!(
                "duplicate environment label {:?}; every report must name a distinct series",
                r.environment_label
            )));
        }
    }
    let present: BTreeSet<Algorithm> = reports.iter().flat_map(|r| r.algorithms()).collect();
    if let Some(dir) = &args.out_dir {
        for &a in &present {
            let path = dir.join(format!("{}.csv", a.tag().to_lowercase()));
            write_atomic(&path, plot_csv(&plot_points(&reports, a)).as_bytes())?;
        }
        return Ok(());
    }
    let output = args.output.as_ref().expect("clap requires -o or --out-dir");
    let algorithm = match args.algorithm {
        Some(a) => a,
        None if present.len() == 1 => *present.iter().next().expect("one element"),
        None => {
            let names: Vec<_> = present.iter().map(|a| a.tag()).collect();
            return Err(CliError::Usage(format!(
                "reports cover {}; pick one with --algorithm or use --out-dir",
                names.join(", ")
            )));
        }
    };
    write_atomic(output, plot_csv(&plot_points(&reports, algorithm)).as_bytes())
}

fn read_file(path: &Path) -> Result<Vec<u8>, CliError> {
    std::fs::read(path).map_err(|e| CliError::io(path, e))
}

fn load_key(path: &Path, algorithm: Option<Algorithm>) -> Result<KeyFile, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let key = KeyFile::parse(&text)?;
    match algorithm {
        Some(a) if a != key.algorithm => Err(CliError::Usage(format!(
            "--algorithm {a} does not match {} key in {}",
            key.algorithm,
            path.display()
        ))),
        _ => Ok(key),
    }
}

fn crypto_command(cmd: CryptoCommand, out: &mut dyn Write) -> Result<(), CliError> {
    match cmd {
        CryptoCommand::Keygen {
            algorithm,
            bits,
            seed,
            output,
        } => write_atomic(&output, crypto::keygen(algorithm, bits, seed)?.to_json().as_bytes()),
        CryptoCommand::Encrypt {
            key,
            input,
            output,
            algorithm,
            seed,
        } => {
            let key = load_key(&key, algorithm)?;
            write_atomic(&output, &crypto::encrypt(&key, &read_file(&input)?, seed)?)
        }
        CryptoCommand::Decrypt {
            key,
            input,
            output,
            algorithm,
        } => {
            let key = load_key(&key, algorithm)?;
            write_atomic(&output, &crypto::decrypt(&key, &read_file(&input)?)?)
        }
        CryptoCommand::Hash { algorithm, input } => {
            let alg = match algorithm {
                Algorithm::Md5 => HashAlgorithm::Md5,
                Algorithm::Sha1 => HashAlgorithm::Sha1,
                a => return Err(CliError::Usage(format!("{a} is not a hash algorithm"))),
            };
            let mut file = std::fs::File::open(&input).map_err(|e| CliError::io(&input, e))?;
            let mut state = HashState::new(alg);
            let mut buf = vec![0u8; 64 * 1024];
            loop {
                let n = std::io::Read::read(&mut file, &mut buf).map_err(|e| CliError::io(&input, e))?;
                if n == 0 {
                    break;
                }
                state.update(&buf[..n]).expect("state is open");
            }
            let digest = state.finalize().expect("state is open");
            emit(&format!("{}\n", digest.to_hex()), None, out)
        }
    }
}
