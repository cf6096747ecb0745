//! Driving an external NuSMV-compatible checker.
//!
//! The checker is invoked through a user-supplied command template;
//! `{model}` and `{bound}` are substituted per call, and the
//! `REVSYNTH_CHECKER` environment variable overrides the executable.
//! Output is classified by the checker's verdict line: `is false`
//! yields a parsed counterexample, `is true` or `no counterexample
//! found` means the bound is clean, anything else is an error carrying
//! the captured output.

use std::io::Read;
use std::process::{Command, Stdio};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use super::emit::SmvModel;
use super::trace::{parse_trace_steps, Trace};
use super::SmvError;

/// Environment variable naming the checker executable, overriding the
/// first token of the command template.
pub const CHECKER_ENV: &str = "REVSYNTH_CHECKER";

/// Default invocation for bounded LTL checking with NuSMV.
pub const DEFAULT_CHECKER_TEMPLATE: &str = "NuSMV -bmc -bmc_length {bound} {model}";

#[derive(Debug, Clone)]
pub struct CheckerConfig {
    /// Command template; `{model}` and `{bound}` are substituted. When
    /// `{model}` is absent the model path is appended.
    pub command: String,
    /// Wall-clock budget per invocation.
    pub timeout: Option<Duration>,
}

impl CheckerConfig {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            timeout: None,
        }
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.timeout = Some(timeout);
        self
    }
}

impl Default for CheckerConfig {
    fn default() -> Self {
        Self::new(DEFAULT_CHECKER_TEMPLATE)
    }
}

/// One bounded check: either a counterexample (a synthesis) or a clean
/// verdict at this bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Falsified(Trace),
    ProvenTrue,
}

fn io_err(context: &str, err: std::io::Error) -> SmvError {
    SmvError::Io(format!("{context}: {err}"))
}

static TEMP_SEQ: AtomicU64 = AtomicU64::new(0);

fn temp_model_path() -> std::path::PathBuf {
    let seq = TEMP_SEQ.fetch_add(1, Ordering::Relaxed);
    std::env::temp_dir().join(format!("revsynth-{}-{seq}.smv", std::process::id()))
}

fn build_argv(template: &str, model_path: &str, bound: usize) -> Result<Vec<String>, SmvError> {
    let mut argv: Vec<String> = template
        .split_whitespace()
        .map(|tok| {
            tok.replace("{model}", model_path)
                .replace("{bound}", &bound.to_string())
        })
        .collect();
    if argv.is_empty() {
        return Err(SmvError::Io("empty checker command".into()));
    }
    if !template.contains("{model}") {
        argv.push(model_path.to_string());
    }
    if let Ok(exe) = std::env::var(CHECKER_ENV) {
        if !exe.is_empty() {
            argv[0] = exe;
        }
    }
    Ok(argv)
}

/// Writes the model to a temporary file and runs the checker at the
/// given bound.
pub fn run_external(
    model: &SmvModel,
    config: &CheckerConfig,
    bound: usize,
) -> Result<CheckOutcome, SmvError> {
    let path = temp_model_path();
    std::fs::write(&path, model.text()).map_err(|e| io_err("writing model", e))?;
    let result = run_on_file(&path.to_string_lossy(), model.n(), config, bound);
    let _ = std::fs::remove_file(&path);
    result
}

fn run_on_file(
    model_path: &str,
    n: usize,
    config: &CheckerConfig,
    bound: usize,
) -> Result<CheckOutcome, SmvError> {
    let argv = build_argv(&config.command, model_path, bound)?;
    let rendered = argv.join(" ");
    let mut child = Command::new(&argv[0])
        .args(&argv[1..])
        .stdin(Stdio::null())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| SmvError::Spawn {
            command: rendered.clone(),
            message: e.to_string(),
        })?;

    let mut stdout_pipe = child.stdout.take().expect("stdout was piped");
    let mut stderr_pipe = child.stderr.take().expect("stderr was piped");
    let stdout_reader = std::thread::spawn(move || {
        let mut buf = String::new();
        let _ = stdout_pipe.read_to_string(&mut buf);
        buf
    });
    let stderr_reader = std::thread::spawn(move || {
        let mut buf = String::new();
        let _ = stderr_pipe.read_to_string(&mut buf);
        buf
    });

    let started = Instant::now();
    let status = loop {
        match child
            .try_wait()
            .map_err(|e| io_err("waiting for checker", e))?
        {
            Some(status) => break status,
            None => {
                if let Some(limit) = config.timeout {
                    if started.elapsed() >= limit {
                        let _ = child.kill();
                        let _ = child.wait();
                        return Err(SmvError::Timeout {
                            secs: limit.as_secs_f64(),
                        });
                    }
                }
                std::thread::sleep(Duration::from_millis(5));
            }
        }
    };
    let stdout = stdout_reader.join().unwrap_or_default();
    let stderr = stderr_reader.join().unwrap_or_default();

    if stdout.contains("is false") {
        let trace = parse_trace_steps(&stdout, n)?;
        return Ok(CheckOutcome::Falsified(trace));
    }
    if stdout.contains("is true") || stdout.contains("no counterexample found") {
        return Ok(CheckOutcome::ProvenTrue);
    }
    let tail = |s: &str| {
        let trimmed = s.trim();
        let lines: Vec<&str> = trimmed.lines().rev().take(8).collect();
        lines.into_iter().rev().collect::<Vec<_>>().join("\n")
    };
    Err(SmvError::NoVerdict {
        status: status.code().map_or("signal".into(), |c| c.to_string()),
        detail: format!("stdout: {}\nstderr: {}", tail(&stdout), tail(&stderr)),
    })
}
