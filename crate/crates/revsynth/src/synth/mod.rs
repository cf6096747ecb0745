//! Gate-count-optimal synthesis by iteratively deepened bounded
//! reachability.
//!
//! The search walks paths of the gate-application transition system:
//! states are permutations, the initial state is the identity, and each
//! step applies one MCT gate. For bound 0, 1, 2, ... it looks for a
//! path of exactly that length ending in the goal; the first bound that
//! yields one gives a minimum-gate-count circuit. Among equal-length
//! solutions the lexicographically smallest gate-code sequence is
//! returned, so results are reproducible across engines and thread
//! counts.
//!
//! [`bfs_oracle`] answers the same question with a breadth-first sweep
//! over the reachable permutation group. It shares nothing with the
//! deepening search but the gate enumeration and the tie-break rule,
//! which makes it an effective cross-check at small line counts.

mod bfs;
mod iddfs;

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::gate::Circuit;
use crate::perm::{ModelError, Permutation};

/// Default bound ceiling; comfortably above any known minimal gate
/// count at the line counts this crate targets.
pub const DEFAULT_MAX_BOUND: usize = 32;

/// Default cap on distinct states the BFS oracle may retain.
pub const DEFAULT_STATE_BUDGET: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Iddfs,
    Bfs,
    Smv,
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Engine::Iddfs => write!(f, "iddfs"),
            Engine::Bfs => write!(f, "bfs"),
            Engine::Smv => write!(f, "smv"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("the smv engine needs an external checker; use smv::synthesize_with_checker")]
    CheckerRequired,
    #[error("state budget exhausted after {visited} states ({frontier} in the frontier)")]
    StateBudgetExceeded { visited: usize, frontier: usize },
    #[error("thread budget must be positive")]
    InvalidThreadBudget,
}

/// A synthesis problem plus search configuration.
#[derive(Debug, Clone)]
pub struct SynthesisRequest {
    pub goal: Permutation,
    pub max_bound: usize,
    pub engine: Engine,
    pub thread_budget: usize,
}

impl SynthesisRequest {
    pub fn new(goal: Permutation) -> Self {
        Self {
            goal,
            max_bound: DEFAULT_MAX_BOUND,
            engine: Engine::Iddfs,
            thread_budget: 1,
        }
    }

    pub fn max_bound(mut self, bound: usize) -> Self {
        self.max_bound = bound;
        self
    }

    pub fn engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    pub fn threads(mut self, budget: usize) -> Self {
        self.thread_budget = budget;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SynthStatus {
    Solved,
    BoundExhausted,
}

/// Outcome of a synthesis run.
///
/// When solved, the circuit realizes the goal with a provably minimal
/// gate count (no shorter sequence exists, by the iteration order), and
/// it is the lexicographically smallest such gate-code sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisResult {
    pub status: SynthStatus,
    pub circuit: Option<Circuit>,
    pub elapsed_secs: f64,
    pub nodes_explored: u64,
    pub bound_reached: usize,
}

impl SynthesisResult {
    pub fn solved(&self) -> bool {
        self.status == SynthStatus::Solved
    }

    /// Gate count of the solution, if any.
    pub fn gate_count(&self) -> Option<usize> {
        self.circuit.as_ref().map(Circuit::gate_count)
    }

    /// Quantum cost of the solution, if any.
    pub fn quantum_cost(&self) -> Option<u64> {
        self.circuit.as_ref().map(Circuit::quantum_cost)
    }
}

/// Runs one of the native engines on the request.
///
/// Bound exhaustion is reported as a status, not an error: with the
/// full MCT library every permutation is realizable, so "no synthesis
/// possible" cannot occur and a `BoundExhausted` result only means the
/// ceiling was too low.
pub fn synthesize(req: &SynthesisRequest) -> Result<SynthesisResult, SynthError> {
    if req.thread_budget == 0 {
        return Err(SynthError::InvalidThreadBudget);
    }
    match req.engine {
        Engine::Iddfs => {
            let res = iddfs::run(&req.goal, req.max_bound, req.thread_budget, None)
                .expect("search without a deadline always completes");
            Ok(res)
        }
        Engine::Bfs => bfs::run(&req.goal, req.max_bound, DEFAULT_STATE_BUDGET),
        Engine::Smv => Err(SynthError::CheckerRequired),
    }
}

/// Like [`synthesize`] but abandons the search at `deadline`, returning
/// `None`. Used by the benchmark harness for per-case time budgets.
pub fn synthesize_with_deadline(
    req: &SynthesisRequest,
    deadline: Instant,
) -> Result<Option<SynthesisResult>, SynthError> {
    if req.thread_budget == 0 {
        return Err(SynthError::InvalidThreadBudget);
    }
    match req.engine {
        Engine::Iddfs => Ok(iddfs::run(
            &req.goal,
            req.max_bound,
            req.thread_budget,
            Some(deadline),
        )),
        Engine::Bfs => bfs::run(&req.goal, req.max_bound, DEFAULT_STATE_BUDGET).map(Some),
        Engine::Smv => Err(SynthError::CheckerRequired),
    }
}

/// Breadth-first sweep from the identity, minimal depth first, ties
/// broken exactly as in [`synthesize`]. Frontier size grows with the
/// reachable permutation count, so this is only practical for small
/// line counts (n <= 4); the budget turns runaway sweeps into an error
/// carrying frontier statistics.
pub fn bfs_oracle(goal: &Permutation, max_depth: usize) -> Result<SynthesisResult, SynthError> {
    bfs::run(goal, max_depth, DEFAULT_STATE_BUDGET)
}

/// [`bfs_oracle`] with an explicit cap on retained states.
pub fn bfs_oracle_with_budget(
    goal: &Permutation,
    max_depth: usize,
    state_budget: usize,
) -> Result<SynthesisResult, SynthError> {
    bfs::run(goal, max_depth, state_budget)
}

/// True iff the cascade realizes the goal permutation.
pub fn verify(circuit: &Circuit, goal: &Permutation) -> Result<bool, ModelError> {
    if circuit.n() != goal.n() {
        return Err(ModelError::DimensionMismatch {
            left: circuit.n(),
            right: goal.n(),
        });
    }
    Ok(&circuit.to_permutation() == goal)
}

/// First input word on which the cascade disagrees with the goal, if
/// any. Handy for diagnostics.
pub fn first_mismatch(circuit: &Circuit, goal: &Permutation) -> Result<Option<u16>, ModelError> {
    if circuit.n() != goal.n() {
        return Err(ModelError::DimensionMismatch {
            left: circuit.n(),
            right: goal.n(),
        });
    }
    let realized = circuit.to_permutation();
    Ok((0..goal.word_count() as u16).find(|&w| realized.image(w) != goal.image(w)))
}
