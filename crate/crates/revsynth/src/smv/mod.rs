//! SMV backend: the synthesis problem as a model-checking instance.
//!
//! [`emit_model`] writes the gate-selection/transition system for a
//! goal permutation in the SMV input language with a single negated
//! reachability specification, so that a counterexample trace from a
//! symbolic checker *is* an optimal gate cascade once decoded.
//! [`parse_trace`] performs that decoding, [`run_external`] drives a
//! NuSMV-compatible binary, and [`synthesize_with_checker`] wraps the
//! whole loop: check at bound 0, 1, 2, ... and return the first
//! counterexample, which is minimal by construction.

mod emit;
mod expr;
mod run;
mod trace;

use std::time::Instant;

use thiserror::Error;

pub use emit::{emit_model, SmvModel};
pub use expr::Expr;
pub use run::{run_external, CheckOutcome, CheckerConfig, CHECKER_ENV, DEFAULT_CHECKER_TEMPLATE};
pub use trace::{parse_trace, render_trace, Trace};

use crate::encoding::CodeError;
use crate::perm::ModelError;
use crate::synth::{verify, SynthStatus, SynthesisRequest, SynthesisResult};

/// Emission cap: the model carries `n * 2^n` state bits, which is
/// already ~2000 at eight lines.
pub const MAX_SMV_LINES: usize = 8;

/// Which temporal logic the single specification line uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecLogic {
    /// `LTLSPEC !(F goal)` — required for bounded checking.
    Ltl,
    /// `CTLSPEC !(EF goal)`.
    Ctl,
}

#[derive(Debug, Clone, Error)]
pub enum SmvError {
    #[error("line count {0} outside supported range 1..={MAX_SMV_LINES}")]
    LineCountOutOfRange(usize),
    #[error("trace step {step}: {message}")]
    Trace { step: usize, message: String },
    #[error("counterexample of {gc} gates does not realize the goal")]
    UnsoundTrace { gc: usize },
    #[error("failed to launch checker `{command}`: {message}")]
    Spawn { command: String, message: String },
    #[error("checker timed out after {secs:.1}s")]
    Timeout { secs: f64 },
    #[error("checker gave no verdict (exit {status})\n{detail}")]
    NoVerdict { status: String, detail: String },
    #[error("unknown variable `{0}` in expression evaluation")]
    UnknownVariable(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Optimal synthesis through the external checker: emits the LTL model
/// once, then checks bounds `0..=max_bound` in turn and decodes the
/// first counterexample. `nodes_explored` counts checker invocations.
pub fn synthesize_with_checker(
    req: &SynthesisRequest,
    config: &CheckerConfig,
) -> Result<SynthesisResult, SmvError> {
    let started = Instant::now();
    let goal = &req.goal;
    let model = emit_model(goal.n(), goal, SpecLogic::Ltl)?;
    let mut calls = 0u64;
    for bound in 0..=req.max_bound {
        calls += 1;
        match run_external(&model, config, bound)? {
            CheckOutcome::ProvenTrue => continue,
            CheckOutcome::Falsified(trace) => {
                let circuit = trace.to_circuit(goal.n())?;
                if !verify(&circuit, goal).map_err(SmvError::Model)? {
                    return Err(SmvError::UnsoundTrace {
                        gc: circuit.gate_count(),
                    });
                }
                let gc = circuit.gate_count();
                return Ok(SynthesisResult {
                    status: SynthStatus::Solved,
                    circuit: Some(circuit),
                    elapsed_secs: started.elapsed().as_secs_f64(),
                    nodes_explored: calls,
                    bound_reached: gc,
                });
            }
        }
    }
    Ok(SynthesisResult {
        status: SynthStatus::BoundExhausted,
        circuit: None,
        elapsed_secs: started.elapsed().as_secs_f64(),
        nodes_explored: calls,
        bound_reached: req.max_bound,
    })
}
