//! Benchmark fixtures and the suite runner.
//!
//! The fifteen three-line reference cases ship embedded, with their
//! published gate counts and the quantum costs of the reference
//! circuits, so the suite needs no external data. The random suite
//! follows the protocol used for larger line counts: compose `k`
//! uniformly drawn gates onto the identity and require the engine to
//! solve the result with at most `k` gates (random products can
//! compress, so equality is not guaranteed).

use std::time::{Duration, Instant};

use crate::encoding::enumerate_gates;
use crate::formats::ResultReport;
use crate::perm::Permutation;
use crate::synth::{
    synthesize, synthesize_with_deadline, verify, SynthesisRequest, SynthesisResult,
};

/// One reference case: a goal with its published gate count and the
/// reference circuit's quantum cost.
#[derive(Debug, Clone)]
pub struct BenchmarkFixture {
    pub name: &'static str,
    pub n: usize,
    pub map: &'static [u16],
    pub expected_gc: usize,
    pub expected_qc: u64,
}

impl BenchmarkFixture {
    pub fn goal(&self) -> Permutation {
        Permutation::from_map(self.n, self.map.to_vec())
            .expect("embedded fixtures are valid permutations")
    }
}

/// The fifteen three-input reference permutations with published
/// optimal gate counts.
#[rustfmt::skip]
pub const TABLE1: &[BenchmarkFixture] = &[
    BenchmarkFixture { name: "peres", n: 3, map: &[0, 3, 2, 5, 4, 7, 6, 1], expected_gc: 2, expected_qc: 6 },
    BenchmarkFixture { name: "fredkin", n: 3, map: &[0, 1, 2, 5, 4, 3, 6, 7], expected_gc: 3, expected_qc: 7 },
    BenchmarkFixture { name: "ham3", n: 3, map: &[0, 7, 4, 3, 2, 5, 1, 6], expected_gc: 5, expected_qc: 9 },
    BenchmarkFixture { name: "nthprime3", n: 3, map: &[0, 2, 3, 5, 7, 1, 4, 6], expected_gc: 4, expected_qc: 8 },
    BenchmarkFixture { name: "ex1", n: 3, map: &[4, 5, 6, 1, 0, 7, 2, 3], expected_gc: 4, expected_qc: 16 },
    BenchmarkFixture { name: "perm-1032", n: 3, map: &[1, 0, 3, 2, 5, 7, 4, 6], expected_gc: 4, expected_qc: 8 },
    BenchmarkFixture { name: "rotate-right", n: 3, map: &[7, 0, 1, 2, 3, 4, 5, 6], expected_gc: 3, expected_qc: 7 },
    BenchmarkFixture { name: "miller", n: 3, map: &[0, 1, 2, 4, 3, 5, 6, 7], expected_gc: 5, expected_qc: 9 },
    BenchmarkFixture { name: "rotate-left", n: 3, map: &[1, 2, 3, 4, 5, 6, 7, 0], expected_gc: 3, expected_qc: 7 },
    BenchmarkFixture { name: "perm-3625", n: 3, map: &[3, 6, 2, 5, 7, 1, 0, 4], expected_gc: 7, expected_qc: 19 },
    BenchmarkFixture { name: "perm-1275", n: 3, map: &[1, 2, 7, 5, 6, 3, 0, 4], expected_gc: 6, expected_qc: 14 },
    BenchmarkFixture { name: "perm-7524", n: 3, map: &[7, 5, 2, 4, 6, 1, 0, 3], expected_gc: 7, expected_qc: 19 },
    BenchmarkFixture { name: "reversal", n: 3, map: &[7, 6, 5, 4, 3, 2, 1, 0], expected_gc: 3, expected_qc: 3 },
    BenchmarkFixture { name: "perm-4302", n: 3, map: &[4, 3, 0, 2, 7, 5, 6, 1], expected_gc: 6, expected_qc: 10 },
    BenchmarkFixture { name: "3_17", n: 3, map: &[7, 1, 4, 3, 0, 2, 6, 5], expected_gc: 6, expected_qc: 14 },
];

/// SplitMix64: tiny, seed-stable, and good enough for drawing gates.
/// Keeping the generator in-crate pins benchmark reproducibility to the
/// seed alone, independent of any external crate's stream changes.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..bound` by rejection.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - (u64::MAX % bound);
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }
}

/// Composes `k` seeded random gates onto the identity. The result is
/// realizable with at most `k` gates by construction.
pub fn random_goal(n: usize, k: usize, rng: &mut SplitMix64) -> Permutation {
    let gates = enumerate_gates(n).expect("line count validated by caller");
    let mut map: Vec<u16> = (0..1u32 << n).map(|w| w as u16).collect();
    for _ in 0..k {
        let g = &gates[rng.below(gates.len() as u64) as usize];
        let cmask = g.control_word_mask();
        let tmask = g.target_word_mask();
        for v in map.iter_mut() {
            if *v & cmask == cmask {
                *v ^= tmask;
            }
        }
    }
    Permutation::from_map(n, map).expect("gate application preserves bijectivity")
}

/// Outcome of one benchmark case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseStatus {
    Pass,
    Fail,
    Timeout,
}

impl std::fmt::Display for CaseStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CaseStatus::Pass => write!(f, "PASS"),
            CaseStatus::Fail => write!(f, "FAIL"),
            CaseStatus::Timeout => write!(f, "TIMEOUT"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub status: CaseStatus,
    pub result: Option<SynthesisResult>,
    pub detail: String,
}

/// Runs one fixture under a time budget and checks the published gate
/// count; the quantum cost is reported and compared, but a differing QC
/// alone does not fail the case when the engine found another
/// equally-short circuit.
pub fn run_fixture(
    fixture: &BenchmarkFixture,
    base: &SynthesisRequest,
    budget: Duration,
) -> CaseOutcome {
    let goal = fixture.goal();
    let req = SynthesisRequest {
        goal: goal.clone(),
        ..base.clone()
    };
    let deadline = Instant::now() + budget;
    match synthesize_with_deadline(&req, deadline) {
        Err(e) => CaseOutcome {
            status: CaseStatus::Fail,
            result: None,
            detail: e.to_string(),
        },
        Ok(None) => CaseOutcome {
            status: CaseStatus::Timeout,
            result: None,
            detail: format!("budget {:?} exceeded", budget),
        },
        Ok(Some(result)) => {
            let gc = result.gate_count();
            let qc = result.quantum_cost();
            let sound = result
                .circuit
                .as_ref()
                .is_some_and(|c| verify(c, &goal).unwrap_or(false));
            let status = if gc == Some(fixture.expected_gc) && sound {
                CaseStatus::Pass
            } else {
                CaseStatus::Fail
            };
            let qc_note = match qc {
                Some(qc) if qc == fixture.expected_qc => "qc=ref".to_string(),
                Some(qc) => format!("qc={qc} (ref {})", fixture.expected_qc),
                None => "no circuit".to_string(),
            };
            CaseOutcome {
                status,
                result: Some(result),
                detail: format!("gc ref {} - {}", fixture.expected_gc, qc_note),
            }
        }
    }
}

/// Runs the whole embedded reference suite sequentially, returning one
/// report per case.
pub fn run_table1(base: &SynthesisRequest, budget: Duration) -> Vec<(CaseOutcome, ResultReport)> {
    TABLE1
        .iter()
        .map(|fixture| {
            let outcome = run_fixture(fixture, base, budget);
            let report = report_for(fixture.name, fixture.n, base, &outcome);
            (outcome, report)
        })
        .collect()
}

/// One random-suite case: seeded goal from `k` gates, solved and
/// verified, passing when `gc <= k`.
pub fn run_random_case(
    n: usize,
    k: usize,
    seed: u64,
    base: &SynthesisRequest,
    budget: Duration,
) -> (CaseOutcome, ResultReport) {
    let mut rng = SplitMix64::new(seed);
    let goal = random_goal(n, k, &mut rng);
    let req = SynthesisRequest {
        goal: goal.clone(),
        ..base.clone()
    };
    let deadline = Instant::now() + budget;
    let outcome = match synthesize_with_deadline(&req, deadline) {
        Err(e) => CaseOutcome {
            status: CaseStatus::Fail,
            result: None,
            detail: e.to_string(),
        },
        Ok(None) => CaseOutcome {
            status: CaseStatus::Timeout,
            result: None,
            detail: format!("budget {:?} exceeded", budget),
        },
        Ok(Some(result)) => {
            let sound = result
                .circuit
                .as_ref()
                .is_some_and(|c| verify(c, &goal).unwrap_or(false));
            let within = result.gate_count().is_some_and(|gc| gc <= k);
            let status = if sound && within {
                CaseStatus::Pass
            } else {
                CaseStatus::Fail
            };
            CaseOutcome {
                status,
                result: Some(result),
                detail: format!("k={k} seed={seed}"),
            }
        }
    };
    let name = format!("random-n{n}-k{k}-s{seed}");
    let report = report_for(&name, n, base, &outcome);
    (outcome, report)
}

fn report_for(
    name: &str,
    n: usize,
    base: &SynthesisRequest,
    outcome: &CaseOutcome,
) -> ResultReport {
    let mut report = match (
        &outcome.result,
        outcome.result.as_ref().and_then(|r| r.circuit.as_ref()),
    ) {
        (Some(result), Some(circuit)) => {
            let mut r = ResultReport::from_circuit(name, circuit, result.elapsed_secs, base.engine);
            r.n = n;
            r
        }
        _ => ResultReport {
            name: name.to_string(),
            n,
            gc: None,
            qc: None,
            time_secs: outcome.result.as_ref().map_or(0.0, |r| r.elapsed_secs),
            engine: base.engine,
            gates: Vec::new(),
            note: None,
        },
    };
    report.note = Some(format!("{} {}", outcome.status, outcome.detail));
    report
}

/// Convenience used by tests: solve a fixture with default settings.
pub fn solve_fixture(fixture: &BenchmarkFixture) -> SynthesisResult {
    synthesize(&SynthesisRequest::new(fixture.goal())).expect("native engine cannot fail")
}
