//! `revsynth` — optimal reversible-circuit synthesis from the command
//! line.
//!
//! Exit codes are stable: 0 solved/verified, 2 bound or budget
//! exhausted, 3 verification mismatch, 64 usage/input/configuration
//! error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};

use revsynth::bench::{self, CaseStatus, SplitMix64};
use revsynth::encoding::{code_width, encode, enumerate_gates};
use revsynth::formats::{
    parse_problem, read_real, write_real, write_report, ProblemFile, ReportFormat, ResultReport,
};
use revsynth::smv::{emit_model, synthesize_with_checker, CheckerConfig, SpecLogic};
use revsynth::synth::{
    first_mismatch, synthesize, synthesize_with_deadline, Engine, SynthStatus, SynthesisRequest,
};

const EXIT_BOUND_EXHAUSTED: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_USAGE: u8 = 64;

/// Prints to stdout, exiting quietly when the reader hung up.
fn emit(text: impl std::fmt::Display) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = write!(out, "{text}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
    }
}

#[derive(Parser)]
#[command(
    name = "revsynth",
    version,
    about = "Gate-count-optimal synthesis of reversible MCT circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize an optimal circuit for a problem file.
    Synth(SynthArgs),
    /// Check a .real netlist against a problem file.
    Verify(VerifyArgs),
    /// Run the embedded reference suite or the seeded random suite.
    Bench(BenchArgs),
    /// List the MCT gate universe for a line count.
    Gates(GatesArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Iddfs,
    Bfs,
    Smv,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Iddfs => Engine::Iddfs,
            EngineArg::Bfs => Engine::Bfs,
            EngineArg::Smv => Engine::Smv,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpecArg {
    Ltl,
    Ctl,
}

impl From<SpecArg> for SpecLogic {
    fn from(s: SpecArg) -> Self {
        match s {
            SpecArg::Ltl => SpecLogic::Ltl,
            SpecArg::Ctl => SpecLogic::Ctl,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Table,
    Jsonl,
}

impl From<FormatArg> for ReportFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Table => ReportFormat::Table,
            FormatArg::Jsonl => ReportFormat::JsonLines,
        }
    }
}

#[derive(Args)]
struct SynthArgs {
    /// Problem file (key=value: n=, perm=, optional name=).
    problem: PathBuf,
    #[arg(long, value_enum, default_value = "iddfs")]
    engine: EngineArg,
    /// Ceiling for the deepening loop.
    #[arg(long, default_value_t = revsynth::synth::DEFAULT_MAX_BOUND)]
    max_bound: usize,
    /// Worker threads for the native search.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Write the synthesized circuit as a .real netlist.
    #[arg(long, value_name = "PATH")]
    out_real: Option<PathBuf>,
    /// Write the SMV model for this problem and keep going.
    #[arg(long, value_name = "PATH")]
    emit_smv: Option<PathBuf>,
    /// Specification logic for --emit-smv.
    #[arg(long, value_enum, default_value = "ltl")]
    spec: SpecArg,
    /// Checker command template for --engine smv; `{model}` and
    /// `{bound}` are substituted.
    #[arg(long, value_name = "CMD")]
    checker: Option<String>,
    /// Wall-clock budget in seconds.
    #[arg(long, value_name = "SECS")]
    timeout: Option<f64>,
    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,
}

#[derive(Args)]
struct VerifyArgs {
    /// Netlist in the .real subset.
    netlist: PathBuf,
    /// Problem file with the goal permutation.
    problem: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    /// `table1` (embedded reference cases) or `random` (seeded goals).
    #[arg(long)]
    suite: Suite,
    #[arg(long, value_enum, default_value = "iddfs")]
    engine: EngineArg,
    #[arg(long, default_value_t = revsynth::synth::DEFAULT_MAX_BOUND)]
    max_bound: usize,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Line count for the random suite.
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Gates composed into each random goal (found gc may be smaller).
    #[arg(long, default_value_t = 4)]
    k: usize,
    /// Number of random cases.
    #[arg(long, default_value_t = 5)]
    cases: usize,
    /// Base seed for the random suite; derived from the clock when
    /// absent, and always printed.
    #[arg(long)]
    seed: Option<u64>,
    /// Per-case budget in seconds.
    #[arg(long, value_name = "SECS", default_value_t = 60.0)]
    timeout: f64,
    /// Lift the desk-scale limits (k <= 6, n <= 8) on the random suite.
    #[arg(long)]
    long_run: bool,
    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Table1,
    Random,
}

#[derive(Args)]
struct GatesArgs {
    /// Line count (1..=8 for a full listing).
    n: usize,
    #[arg(long, value_enum, default_value = "table")]
    format: FormatArg,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let _ = err.print();
            return match err.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match cli.command {
        Command::Synth(args) => cmd_synth(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Gates(args) => cmd_gates(args),
    }
    .unwrap_or_else(|(code, message)| {
        eprintln!("error: {message}");
        ExitCode::from(code)
    })
}

type CmdResult = Result<ExitCode, (u8, String)>;

fn usage_err(message: impl Into<String>) -> (u8, String) {
    (EXIT_USAGE, message.into())
}

fn load_problem(path: &PathBuf) -> Result<ProblemFile, (u8, String)> {
    let text =
        std::fs::read_to_string(path).map_err(|e| usage_err(format!("{}: {e}", path.display())))?;
    parse_problem(&text).map_err(|e| usage_err(format!("{}: {e}", path.display())))
}

fn cmd_synth(args: SynthArgs) -> CmdResult {
    let problem = load_problem(&args.problem)?;
    let goal = problem.goal.clone();
    let name = problem
        .name
        .clone()
        .or_else(|| {
            args.problem
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
        })
        .unwrap_or_else(|| "problem".into());

    if let Some(path) = &args.emit_smv {
        let model =
            emit_model(goal.n(), &goal, args.spec.into()).map_err(|e| usage_err(e.to_string()))?;
        std::fs::write(path, model.text())
            .map_err(|e| usage_err(format!("{}: {e}", path.display())))?;
    }

    let engine: Engine = args.engine.into();
    let req = SynthesisRequest::new(goal.clone())
        .engine(engine)
        .max_bound(args.max_bound)
        .threads(args.threads);

    let result = match engine {
        Engine::Smv => {
            let Some(template) = &args.checker else {
                return Err(usage_err(
                    "--engine smv needs --checker (a command template; \
                     `{model}` and `{bound}` are substituted)",
                ));
            };
            let mut config = CheckerConfig::new(template.clone());
            if let Some(secs) = args.timeout {
                config = config.with_timeout(Duration::from_secs_f64(secs));
            }
            synthesize_with_checker(&req, &config).map_err(|e| usage_err(e.to_string()))?
        }
        _ => match args.timeout {
            Some(secs) => {
                let deadline = Instant::now() + Duration::from_secs_f64(secs);
                match synthesize_with_deadline(&req, deadline)
                    .map_err(|e| usage_err(e.to_string()))?
                {
                    Some(result) => result,
                    None => {
                        eprintln!("search abandoned after {secs}s");
                        return Ok(ExitCode::from(EXIT_BOUND_EXHAUSTED));
                    }
                }
            }
            None => synthesize(&req).map_err(|e| usage_err(e.to_string()))?,
        },
    };

    let report = match &result.circuit {
        Some(circuit) => ResultReport::from_circuit(&name, circuit, result.elapsed_secs, engine),
        None => ResultReport {
            name,
            n: goal.n(),
            gc: None,
            qc: None,
            time_secs: result.elapsed_secs,
            engine,
            gates: Vec::new(),
            note: Some(format!("bound exhausted at {}", result.bound_reached)),
        },
    };
    emit(write_report(&[report], args.format.into()));
    if args.format == FormatArg::Table {
        if let Some(circuit) = &result.circuit {
            for gate in circuit.gates() {
                emit(format!("  {gate}\n"));
            }
        }
    }

    if result.status == SynthStatus::BoundExhausted {
        return Ok(ExitCode::from(EXIT_BOUND_EXHAUSTED));
    }
    if let Some(path) = &args.out_real {
        let circuit = result.circuit.as_ref().expect("solved implies a circuit");
        std::fs::write(path, write_real(circuit))
            .map_err(|e| usage_err(format!("{}: {e}", path.display())))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let text = std::fs::read_to_string(&args.netlist)
        .map_err(|e| usage_err(format!("{}: {e}", args.netlist.display())))?;
    let circuit =
        read_real(&text).map_err(|e| usage_err(format!("{}: {e}", args.netlist.display())))?;
    let problem = load_problem(&args.problem)?;
    let goal = problem.goal;
    if circuit.n() != goal.n() {
        return Err(usage_err(format!(
            "netlist has {} lines, problem has {}",
            circuit.n(),
            goal.n()
        )));
    }
    match first_mismatch(&circuit, &goal).map_err(|e| usage_err(e.to_string()))? {
        None => {
            emit("ok: netlist realizes the goal permutation\n");
            Ok(ExitCode::SUCCESS)
        }
        Some(word) => {
            let realized = circuit.to_permutation();
            emit(format!(
                "mismatch at word {word}: netlist gives {}, goal wants {}\n",
                realized.image(word),
                goal.image(word)
            ));
            Ok(ExitCode::from(EXIT_MISMATCH))
        }
    }
}

fn cmd_bench(args: BenchArgs) -> CmdResult {
    let engine: Engine = args.engine.into();
    if engine == Engine::Smv {
        return Err(usage_err(
            "bench drives the native engines; run the smv engine through `synth`",
        ));
    }
    let base =
        SynthesisRequest::new(revsynth::perm::Permutation::identity(1).expect("valid placeholder"))
            .engine(engine)
            .max_bound(args.max_bound)
            .threads(args.threads);
    let budget = Duration::from_secs_f64(args.timeout);

    let reports: Vec<(CaseStatus, ResultReport)> = match args.suite {
        Suite::Table1 => bench::run_table1(&base, budget)
            .into_iter()
            .map(|(outcome, report)| (outcome.status, report))
            .collect(),
        Suite::Random => {
            if !args.long_run && (args.k > 6 || args.n > 8) {
                return Err(usage_err(
                    "k > 6 or n > 8 can run for hours; pass --long-run to confirm",
                ));
            }
            if args.k > 10 {
                return Err(usage_err("the random protocol caps k at 10"));
            }
            let base_seed = args.seed.unwrap_or_else(|| {
                std::time::SystemTime::now()
                    .duration_since(std::time::UNIX_EPOCH)
                    .map(|d| d.as_nanos() as u64)
                    .unwrap_or(0x5eed)
            });
            eprintln!("random suite base seed: {base_seed} (rerun with --seed {base_seed})");
            let mut seeds = SplitMix64::new(base_seed);
            (0..args.cases)
                .map(|_| {
                    let seed = seeds.next_u64();
                    let (outcome, report) =
                        bench::run_random_case(args.n, args.k, seed, &base, budget);
                    (outcome.status, report)
                })
                .collect()
        }
    };

    let all: Vec<ResultReport> = reports.iter().map(|(_, r)| r.clone()).collect();
    emit(write_report(&all, args.format.into()));
    let all_pass = reports
        .iter()
        .all(|(status, _)| *status == CaseStatus::Pass);
    if all_pass {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_gates(args: GatesArgs) -> CmdResult {
    if args.n == 0 || args.n > 8 {
        return Err(usage_err("full gate listings cover 1..=8 lines"));
    }
    let gates = enumerate_gates(args.n).map_err(|e| usage_err(e.to_string()))?;
    match args.format {
        FormatArg::Table => {
            let width = code_width(args.n).max("code".len());
            emit(format!("{:<width$}  target  controls      qc\n", "code"));
            for gate in &gates {
                let code = encode(gate);
                let controls: Vec<String> = gate.control_lines().map(|l| l.to_string()).collect();
                let controls = if controls.is_empty() {
                    "-".to_string()
                } else {
                    controls.join(",")
                };
                emit(format!(
                    "{:<width$}  {:>6}  {:<12}  {:>4}\n",
                    code.bit_string(),
                    gate.target(),
                    controls,
                    gate.quantum_cost()
                ));
            }
        }
        FormatArg::Jsonl => {
            for gate in &gates {
                let code = encode(gate);
                let controls: Vec<usize> = gate.control_lines().collect();
                emit(format!(
                    "{{\"code\":\"{}\",\"target\":{},\"controls\":{:?},\"qc\":{}}}\n",
                    code.bit_string(),
                    gate.target(),
                    controls,
                    gate.quantum_cost()
                ));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
