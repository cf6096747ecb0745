//! The iterative-deepening engine.
//!
//! Per bound, a depth-first search enumerates gate sequences of exactly
//! that length in ascending gate-code order, mutating one permutation
//! in place and undoing on backtrack (every MCT gate is an involution).
//! The first solution found is therefore the lexicographically smallest
//! one, which is the crate-wide tie-break.
//!
//! Three sound prunes keep the tree narrow, none of which can cut the
//! lexicographically smallest minimal solution:
//!
//! * consecutive identical gates cancel, so a minimal sequence never
//!   contains them;
//! * adjacent commuting gates in descending code order can be swapped
//!   into an equal-length, lex-smaller realization, so the lex-min
//!   solution never contains such a pair;
//! * a gate only rewrites the bit of its target line, so the number of
//!   output lines whose column still disagrees with the goal is a lower
//!   bound on the gates remaining. When that bound is tight, each
//!   remaining gate must repair one broken column outright, and the
//!   repairing gate for a column is unique and can be computed directly
//!   instead of enumerated; with one gate of slack, gates targeting
//!   already-correct columns cannot help either.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use crate::encoding::enumerate_gates;
use crate::gate::Circuit;
use crate::perm::Permutation;

use super::{SynthStatus, SynthesisResult};

/// How often (in visited nodes) a worker polls the deadline.
const DEADLINE_POLL_MASK: u64 = 0x1fff;

/// Serial work below which extra threads are pure overhead.
const PARALLEL_BOUND_THRESHOLD: usize = 4;

#[derive(Clone, Copy)]
struct GateSpec {
    cmask: u16,
    tmask: u16,
}

enum Step {
    Found,
    Exhausted,
    Aborted,
}

/// Per-subtree outcome: candidate slot, nodes visited, solution path.
type SlotResult = (usize, u64, Option<Vec<u32>>);

struct Searcher<'a> {
    n: usize,
    size: usize,
    goal: &'a [u16],
    /// Indexed by gate code; the code space of valid gates is
    /// contiguous from 0, so index and code coincide.
    gates: Vec<GateSpec>,
    deadline: Option<Instant>,
}

impl<'a> Searcher<'a> {
    fn new(goal: &'a Permutation, deadline: Option<Instant>) -> Self {
        let n = goal.n();
        let gates = enumerate_gates(n)
            .expect("goal line count was validated on construction")
            .iter()
            .map(|g| GateSpec {
                cmask: g.control_word_mask(),
                tmask: g.target_word_mask(),
            })
            .collect();
        Self {
            n,
            size: goal.word_count(),
            goal: goal.map(),
            gates,
            deadline,
        }
    }

    #[inline]
    fn apply(&self, cur: &mut [u16], gate: u32) {
        let spec = self.gates[gate as usize];
        for v in cur.iter_mut() {
            if *v & spec.cmask == spec.cmask {
                *v ^= spec.tmask;
            }
        }
    }

    /// Gates commute when they share a target line or neither controls
    /// the other's target.
    #[inline]
    fn commutes(&self, a: u32, b: u32) -> bool {
        let a = self.gates[a as usize];
        let b = self.gates[b as usize];
        a.tmask == b.tmask || (a.cmask & b.tmask == 0 && b.cmask & a.tmask == 0)
    }

    /// Bitmask (word-bit positions) of lines whose output column
    /// disagrees with the goal.
    #[inline]
    fn column_diff(&self, cur: &[u16]) -> u16 {
        let mut diff = 0u16;
        for (w, &v) in cur.iter().enumerate() {
            diff |= v ^ self.goal[w];
        }
        diff
    }

    /// The unique gate on target line `t` whose application makes
    /// column `t` agree with the goal, if one exists. The words it must
    /// flip are exactly the mismatched ones, and a gate flips precisely
    /// the values that cover its control set; so the candidate control
    /// set is the AND of the mismatched values, accepted only when its
    /// cover has the right cardinality and avoids the target line.
    fn column_fix_gate(&self, cur: &[u16], t: usize) -> Option<u32> {
        let tmask = 1u16 << (self.n - 1 - t);
        let mut common = u16::MAX;
        let mut mismatched = 0usize;
        for (w, &v) in cur.iter().enumerate() {
            if (v ^ self.goal[w]) & tmask != 0 {
                common &= v;
                mismatched += 1;
            }
        }
        let cmask = common & (self.size as u16).wrapping_sub(1);
        if cmask & tmask != 0 {
            return None;
        }
        if mismatched != self.size >> cmask.count_ones() {
            return None;
        }
        Some(self.code_for(t, cmask))
    }

    /// Gate code (= index) for a target line and word-level control mask.
    fn code_for(&self, target: usize, cmask: u16) -> u32 {
        let mut bits = (target as u32) << (self.n - 1);
        for line in 0..self.n {
            if cmask >> (self.n - 1 - line) & 1 == 1 {
                let j = if line < target { line } else { line - 1 };
                bits |= 1 << (self.n - 2 - j);
            }
        }
        bits
    }

    fn dfs(
        &self,
        cur: &mut [u16],
        remaining: usize,
        prev: u32,
        nodes: &mut u64,
        path: &mut Vec<u32>,
    ) -> Step {
        let diff = self.column_diff(cur);
        let broken = diff.count_ones() as usize;
        if remaining == 0 {
            return if broken == 0 {
                Step::Found
            } else {
                Step::Exhausted
            };
        }
        // broken == 0 with gates to spare would mean a shorter solution,
        // which earlier bounds already ruled out.
        if broken > remaining || broken == 0 {
            return Step::Exhausted;
        }
        if let Some(deadline) = self.deadline {
            if *nodes & DEADLINE_POLL_MASK == 0 && Instant::now() >= deadline {
                return Step::Aborted;
            }
        }
        if broken == remaining {
            // Tight bound: each remaining gate must repair one column.
            for t in 0..self.n {
                if diff >> (self.n - 1 - t) & 1 == 0 {
                    continue;
                }
                let Some(gate) = self.column_fix_gate(cur, t) else {
                    continue;
                };
                if gate == prev || (gate < prev && self.commutes(gate, prev)) {
                    continue;
                }
                *nodes += 1;
                self.apply(cur, gate);
                path.push(gate);
                match self.dfs(cur, remaining - 1, gate, nodes, path) {
                    Step::Found => return Step::Found,
                    Step::Aborted => return Step::Aborted,
                    Step::Exhausted => {}
                }
                path.pop();
                self.apply(cur, gate);
            }
        } else {
            let tight_slack = remaining - broken == 1;
            let block = 1u32 << (self.n - 1);
            for t in 0..self.n {
                if tight_slack && diff >> (self.n - 1 - t) & 1 == 0 {
                    // One gate of slack: touching a correct column would
                    // break it with no budget left to repair it.
                    continue;
                }
                let base = (t as u32) << (self.n - 1);
                for gate in base..base + block {
                    if gate == prev || (gate < prev && self.commutes(gate, prev)) {
                        continue;
                    }
                    *nodes += 1;
                    self.apply(cur, gate);
                    path.push(gate);
                    match self.dfs(cur, remaining - 1, gate, nodes, path) {
                        Step::Found => return Step::Found,
                        Step::Aborted => return Step::Aborted,
                        Step::Exhausted => {}
                    }
                    path.pop();
                    self.apply(cur, gate);
                }
            }
        }
        Step::Exhausted
    }

    /// Root candidates in ascending code order, mirroring what `dfs`
    /// would try from the initial state.
    fn root_candidates(&self, bound: usize) -> Vec<u32> {
        let cur: Vec<u16> = (0..self.size as u16).collect();
        let diff = self.column_diff(&cur);
        let broken = diff.count_ones() as usize;
        if broken == 0 || broken > bound {
            return Vec::new();
        }
        if broken == bound {
            (0..self.n)
                .filter(|&t| diff >> (self.n - 1 - t) & 1 == 1)
                .filter_map(|t| self.column_fix_gate(&cur, t))
                .collect()
        } else {
            (0..self.gates.len() as u32).collect()
        }
    }

    /// Explores the subtree rooted at one first gate. Returns the
    /// node count and the full path if the subtree contains a solution.
    fn explore_subtree(&self, bound: usize, first: u32) -> (u64, Option<Vec<u32>>, bool) {
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                return (0, None, true);
            }
        }
        let mut cur: Vec<u16> = (0..self.size as u16).collect();
        let mut nodes = 1u64;
        self.apply(&mut cur, first);
        let mut path = vec![first];
        match self.dfs(&mut cur, bound - 1, first, &mut nodes, &mut path) {
            Step::Found => (nodes, Some(path), false),
            Step::Exhausted => (nodes, None, false),
            Step::Aborted => (nodes, None, true),
        }
    }

    /// Searches for a sequence of exactly `bound` gates. The returned
    /// node count is the same in serial and parallel runs: subtrees of
    /// first gates beyond the winning one are excluded, which is
    /// precisely the set a serial left-to-right scan never enters.
    fn search_bound(&self, bound: usize, threads: usize) -> (Step, u64, Option<Vec<u32>>) {
        if bound == 0 {
            let cur: Vec<u16> = (0..self.size as u16).collect();
            return if self.column_diff(&cur) == 0 {
                (Step::Found, 0, Some(Vec::new()))
            } else {
                (Step::Exhausted, 0, None)
            };
        }
        let candidates = self.root_candidates(bound);
        if candidates.is_empty() {
            return (Step::Exhausted, 0, None);
        }
        let threads = threads.min(candidates.len());
        if threads <= 1 || bound <= PARALLEL_BOUND_THRESHOLD {
            let mut total = 0u64;
            for &first in &candidates {
                let (nodes, found, aborted) = self.explore_subtree(bound, first);
                total += nodes;
                if aborted {
                    return (Step::Aborted, total, None);
                }
                if let Some(path) = found {
                    return (Step::Found, total, Some(path));
                }
            }
            return (Step::Exhausted, total, None);
        }

        // Parallel: workers claim first-gate subtrees in order; once a
        // solution is known at slot `s`, slots beyond `s` are skipped.
        let next = AtomicUsize::new(0);
        let best = AtomicUsize::new(usize::MAX);
        let results: Mutex<Vec<SlotResult>> = Mutex::new(Vec::new());
        let aborted = std::sync::atomic::AtomicBool::new(false);
        std::thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(|| loop {
                    let slot = next.fetch_add(1, Ordering::Relaxed);
                    if slot >= candidates.len() || aborted.load(Ordering::Relaxed) {
                        break;
                    }
                    if slot > best.load(Ordering::Relaxed) {
                        continue;
                    }
                    let (nodes, found, abort) = self.explore_subtree(bound, candidates[slot]);
                    if abort {
                        aborted.store(true, Ordering::Relaxed);
                        break;
                    }
                    if found.is_some() {
                        best.fetch_min(slot, Ordering::Relaxed);
                    }
                    results.lock().unwrap().push((slot, nodes, found));
                });
            }
        });
        if aborted.load(Ordering::Relaxed) {
            return (Step::Aborted, 0, None);
        }
        let mut results = results.into_inner().unwrap();
        results.sort_by_key(|(slot, _, _)| *slot);
        let winner = results.iter().position(|(_, _, found)| found.is_some());
        match winner {
            Some(pos) => {
                let total: u64 = results[..=pos].iter().map(|(_, nodes, _)| nodes).sum();
                let path = results.swap_remove(pos).2;
                (Step::Found, total, path)
            }
            None => {
                let total: u64 = results.iter().map(|(_, nodes, _)| nodes).sum();
                (Step::Exhausted, total, None)
            }
        }
    }
}

/// Runs the full deepening loop. `None` means the deadline struck.
pub(super) fn run(
    goal: &Permutation,
    max_bound: usize,
    threads: usize,
    deadline: Option<Instant>,
) -> Option<SynthesisResult> {
    let started = Instant::now();
    let searcher = Searcher::new(goal, deadline);
    let all_gates = enumerate_gates(goal.n()).expect("validated line count");
    let mut total_nodes = 0u64;
    for bound in 0..=max_bound {
        let (step, nodes, path) = searcher.search_bound(bound, threads);
        total_nodes += nodes;
        match step {
            Step::Aborted => return None,
            Step::Found => {
                let path = path.expect("found implies a path");
                let gates = path.iter().map(|&code| all_gates[code as usize]).collect();
                let circuit = Circuit::from_gates(goal.n(), gates)
                    .expect("search gates share the goal's line count");
                return Some(SynthesisResult {
                    status: SynthStatus::Solved,
                    circuit: Some(circuit),
                    elapsed_secs: started.elapsed().as_secs_f64(),
                    nodes_explored: total_nodes,
                    bound_reached: bound,
                });
            }
            Step::Exhausted => {}
        }
    }
    Some(SynthesisResult {
        status: SynthStatus::BoundExhausted,
        circuit: None,
        elapsed_secs: started.elapsed().as_secs_f64(),
        nodes_explored: total_nodes,
        bound_reached: max_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::encode;
    use crate::gate::MctGate;

    fn perm(n: usize, map: &[u16]) -> Permutation {
        Permutation::from_map(n, map.to_vec()).unwrap()
    }

    #[test]
    fn lexicographically_smallest_solution_wins() {
        // Peres: the two-gate solutions start with either code 3 or a
        // larger code; lex order demands [3, 5].
        let res = run(&perm(3, &[0, 3, 2, 5, 4, 7, 6, 1]), 8, 1, None).unwrap();
        let codes: Vec<u32> = res
            .circuit
            .unwrap()
            .gates()
            .iter()
            .map(|g| encode(g).bits())
            .collect();
        assert_eq!(codes, vec![3, 5]);
    }

    #[test]
    fn fredkin_reuses_a_gate_nonconsecutively() {
        let res = run(&perm(3, &[0, 1, 2, 5, 4, 3, 6, 7]), 8, 1, None).unwrap();
        let codes: Vec<u32> = res
            .circuit
            .unwrap()
            .gates()
            .iter()
            .map(|g| encode(g).bits())
            .collect();
        assert_eq!(codes, vec![2, 7, 2]);
    }

    #[test]
    fn worked_example_recovers_the_four_stage_cascade() {
        let goal = perm(4, &[0, 1, 2, 11, 4, 5, 15, 6, 8, 13, 10, 14, 9, 12, 3, 7]);
        let res = run(&goal, 8, 1, None).unwrap();
        let circuit = res.circuit.unwrap();
        assert_eq!(circuit.gate_count(), 4);
        assert_eq!(
            circuit.gates(),
            &[
                MctGate::new(4, 3, &[0, 1]).unwrap(),
                MctGate::new(4, 1, &[0, 3]).unwrap(),
                MctGate::new(4, 3, &[1, 2]).unwrap(),
                MctGate::new(4, 0, &[2, 3]).unwrap(),
            ]
        );
    }

    #[test]
    fn parallel_run_matches_serial_bit_for_bit() {
        for map in [
            [0u16, 7, 4, 3, 2, 5, 1, 6],
            [7, 1, 4, 3, 0, 2, 6, 5],
            [3, 6, 2, 5, 7, 1, 0, 4],
        ] {
            let goal = perm(3, &map);
            let serial = run(&goal, 12, 1, None).unwrap();
            let parallel = run(&goal, 12, 4, None).unwrap();
            assert_eq!(serial.circuit, parallel.circuit);
            assert_eq!(serial.nodes_explored, parallel.nodes_explored);
            assert_eq!(serial.bound_reached, parallel.bound_reached);
        }
    }

    #[test]
    fn one_line_goals() {
        let id = Permutation::identity(1).unwrap();
        assert_eq!(run(&id, 4, 1, None).unwrap().gate_count(), Some(0));
        let flip = perm(1, &[1, 0]);
        let res = run(&flip, 4, 1, None).unwrap();
        assert_eq!(res.gate_count(), Some(1));
    }

    #[test]
    fn deadline_in_the_past_aborts() {
        let goal = perm(3, &[3, 6, 2, 5, 7, 1, 0, 4]);
        let past = Instant::now() - std::time::Duration::from_secs(1);
        assert!(run(&goal, 12, 1, Some(past)).is_none());
    }
}
