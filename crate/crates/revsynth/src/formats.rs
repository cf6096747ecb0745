//! Text formats: problem files, `.real` netlists, and result reports.
//!
//! The problem format is a minimal key=value text because the synthesis
//! input is just a permutation:
//!
//! ```text
//! # optional comment
//! name=peres
//! n=3
//! perm=0,3,2,5,4,7,6,1
//! ```
//!
//! Circuits are written as a `.real`-style netlist subset: a `.numvars`
//! header, declared variable names, and one `t{k}` line per gate with
//! controls ascending and the target last. Reports render either as an
//! aligned table or as JSON lines; given identical inputs both are
//! byte-identical across runs.

use serde::Serialize;
use thiserror::Error;

use crate::gate::{Circuit, MctGate};
use crate::perm::{ModelError, Permutation};
use crate::synth::Engine;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing required key `{0}`")]
    MissingKey(&'static str),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

/// A named synthesis problem: the goal permutation on `n` lines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemFile {
    pub name: Option<String>,
    pub goal: Permutation,
}

/// Parses the key=value problem format. Comments (`#`) and blank lines
/// are ignored; `n=` must precede `perm=` so the entry count can be
/// checked; `name=` is optional.
pub fn parse_problem(text: &str) -> Result<ProblemFile, FormatError> {
    let mut name: Option<String> = None;
    let mut n: Option<usize> = None;
    let mut goal: Option<Permutation> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(parse_err(
                lineno,
                format!("expected key=value, got `{line}`"),
            ));
        };
        match (key.trim(), value.trim()) {
            ("name", v) => name = Some(v.to_string()),
            ("n", v) => {
                let parsed: usize = v
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("invalid line count `{v}`")))?;
                n = Some(parsed);
            }
            ("perm", v) => {
                let Some(n) = n else {
                    return Err(parse_err(lineno, "`perm` given before `n`"));
                };
                let mut map = Vec::new();
                for entry in v.split(',') {
                    let entry = entry.trim();
                    let value: u16 = entry
                        .parse()
                        .map_err(|_| parse_err(lineno, format!("invalid entry `{entry}`")))?;
                    map.push(value);
                }
                goal = Some(Permutation::from_map(n, map)?);
            }
            (key, _) => {
                return Err(parse_err(lineno, format!("unknown key `{key}`")));
            }
        }
    }
    if n.is_none() {
        return Err(FormatError::MissingKey("n"));
    }
    let Some(goal) = goal else {
        return Err(FormatError::MissingKey("perm"));
    };
    Ok(ProblemFile { name, goal })
}

/// Inverse of [`parse_problem`] on valid problems.
pub fn render_problem(problem: &ProblemFile) -> String {
    let mut out = String::new();
    if let Some(name) = &problem.name {
        out.push_str(&format!("name={name}\n"));
    }
    out.push_str(&format!("n={}\n", problem.goal.n()));
    let entries: Vec<String> = problem.goal.map().iter().map(u16::to_string).collect();
    out.push_str(&format!("perm={}\n", entries.join(",")));
    out
}

/// Writes a circuit as a `.real`-style netlist.
pub fn write_real(circuit: &Circuit) -> String {
    let n = circuit.n();
    let mut out = String::new();
    out.push_str(&format!(".numvars {n}\n"));
    let vars: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    out.push_str(&format!(".variables {}\n", vars.join(" ")));
    out.push_str(".begin\n");
    for gate in circuit.gates() {
        out.push_str(&gate.to_string());
        out.push('\n');
    }
    out.push_str(".end\n");
    out
}

/// Reads the netlist subset emitted by [`write_real`]. Comment (`#`)
/// and blank lines are tolerated anywhere.
pub fn read_real(text: &str) -> Result<Circuit, FormatError> {
    let mut n: Option<usize> = None;
    let mut vars: Vec<String> = Vec::new();
    let mut gates: Vec<MctGate> = Vec::new();
    let mut in_body = false;
    let mut ended = false;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if ended {
            return Err(parse_err(lineno, "content after .end"));
        }
        if let Some(rest) = line.strip_prefix(".numvars") {
            let value = rest.trim();
            n = Some(
                value
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("invalid .numvars `{value}`")))?,
            );
            continue;
        }
        if let Some(rest) = line.strip_prefix(".variables") {
            vars = rest.split_whitespace().map(str::to_string).collect();
            continue;
        }
        if line == ".begin" {
            let Some(n) = n else {
                return Err(parse_err(lineno, ".begin before .numvars"));
            };
            if vars.len() != n {
                return Err(parse_err(
                    lineno,
                    format!("{} variables declared, .numvars says {n}", vars.len()),
                ));
            }
            in_body = true;
            continue;
        }
        if line == ".end" {
            if !in_body {
                return Err(parse_err(lineno, ".end before .begin"));
            }
            ended = true;
            continue;
        }
        if !in_body {
            return Err(parse_err(
                lineno,
                format!("unexpected header line `{line}`"),
            ));
        }
        gates.push(parse_gate_line(line, lineno, n.unwrap(), &vars)?);
    }
    if !ended {
        return Err(parse_err(text.lines().count(), "missing .end"));
    }
    Ok(Circuit::from_gates(n.unwrap(), gates)?)
}

fn parse_gate_line(
    line: &str,
    lineno: usize,
    n: usize,
    vars: &[String],
) -> Result<MctGate, FormatError> {
    let mut tokens = line.split_whitespace();
    let mnemonic = tokens.next().expect("line is non-empty");
    let Some(size) = mnemonic
        .strip_prefix('t')
        .and_then(|s| s.parse::<usize>().ok())
    else {
        return Err(parse_err(
            lineno,
            format!("unknown gate mnemonic `{mnemonic}`"),
        ));
    };
    if size == 0 {
        return Err(parse_err(lineno, "gate size must be at least 1"));
    }
    let operands: Vec<&str> = tokens.collect();
    if operands.len() != size {
        return Err(parse_err(
            lineno,
            format!(
                "`{mnemonic}` expects {size} operands, got {}",
                operands.len()
            ),
        ));
    }
    let mut lines = Vec::with_capacity(size);
    for name in operands {
        let Some(position) = vars.iter().position(|v| v == name) else {
            return Err(parse_err(lineno, format!("undeclared variable `{name}`")));
        };
        lines.push(position);
    }
    let target = *lines.last().expect("size >= 1");
    let controls = &lines[..size - 1];
    if controls.contains(&target) {
        return Err(parse_err(
            lineno,
            format!("target x{target} also listed as a control"),
        ));
    }
    let mut dedup = controls.to_vec();
    dedup.sort_unstable();
    dedup.dedup();
    if dedup.len() != controls.len() {
        return Err(parse_err(lineno, "duplicate control line"));
    }
    MctGate::new(n, target, controls).map_err(FormatError::from)
}

/// One synthesized (or attempted) case, ready for reporting.
#[derive(Debug, Clone, Serialize)]
pub struct ResultReport {
    pub name: String,
    pub n: usize,
    pub gc: Option<usize>,
    pub qc: Option<u64>,
    pub time_secs: f64,
    pub engine: Engine,
    /// Decoded cascade, one `.real`-style line per gate.
    pub gates: Vec<String>,
    /// Harness annotation such as PASS/FAIL/TIMEOUT.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ResultReport {
    pub fn from_circuit(
        name: impl Into<String>,
        circuit: &Circuit,
        time_secs: f64,
        engine: Engine,
    ) -> Self {
        Self {
            name: name.into(),
            n: circuit.n(),
            gc: Some(circuit.gate_count()),
            qc: Some(circuit.quantum_cost()),
            time_secs,
            engine,
            gates: circuit.gates().iter().map(MctGate::to_string).collect(),
            note: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    JsonLines,
}

/// Renders reports with a stable column order (name, n, GC, QC, time).
pub fn write_report(results: &[ResultReport], format: ReportFormat) -> String {
    match format {
        ReportFormat::Table => {
            let mut out = String::new();
            let name_width = results
                .iter()
                .map(|r| r.name.len())
                .chain(std::iter::once("name".len()))
                .max()
                .unwrap();
            out.push_str(&format!(
                "{:<name_width$}  {:>2}  {:>4}  {:>6}  {:>10}  {:<6}  note\n",
                "name", "n", "GC", "QC", "time(s)", "engine"
            ));
            for r in results {
                let gc = r.gc.map_or("-".to_string(), |v| v.to_string());
                let qc = r.qc.map_or("-".to_string(), |v| v.to_string());
                out.push_str(&format!(
                    "{:<name_width$}  {:>2}  {:>4}  {:>6}  {:>10.3}  {:<6}  {}\n",
                    r.name,
                    r.n,
                    gc,
                    qc,
                    r.time_secs,
                    r.engine.to_string(),
                    r.note.as_deref().unwrap_or("")
                ));
            }
            out
        }
        ReportFormat::JsonLines => {
            let mut out = String::new();
            for r in results {
                out.push_str(&serde_json::to_string(r).expect("reports serialize"));
                out.push('\n');
            }
            out
        }
    }
}
