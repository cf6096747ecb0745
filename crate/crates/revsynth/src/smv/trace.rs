//! Counterexample trace handling.
//!
//! A falsifying trace is a sequence of states; the gate bits of each
//! state drive the transition into the next, so a trace with `m + 1`
//! state frames decodes to `m` gates and the final frame contributes
//! none. Checkers print only the variables that changed, so assignments
//! carry forward frame to frame.

use crate::encoding::{code_width, GateCode};
use crate::gate::Circuit;

use super::emit::SmvModel;
use super::SmvError;

/// Decoded gate-bit valuations of a counterexample, one per transition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub steps: Vec<GateCode>,
}

impl Trace {
    /// The trace as a circuit, in application order.
    pub fn to_circuit(&self, n: usize) -> Result<Circuit, SmvError> {
        let gates = self.steps.iter().map(GateCode::decode).collect();
        Circuit::from_gates(n, gates).map_err(SmvError::Model)
    }
}

fn trace_err(step: usize, message: impl Into<String>) -> SmvError {
    SmvError::Trace {
        step,
        message: message.into(),
    }
}

/// Parses a checker's textual counterexample into a circuit for an
/// `n`-line model. Keyed on the gate-bit names the emitter chooses
/// (`g0..g{k-1}`); all other assignments and commentary are ignored.
pub fn parse_trace(raw: &str, n: usize) -> Result<Circuit, SmvError> {
    parse_trace_steps(raw, n)?.to_circuit(n)
}

pub(super) fn parse_trace_steps(raw: &str, n: usize) -> Result<Trace, SmvError> {
    let k = code_width(n);
    let gate_vars: Vec<String> = (0..k).map(|i| format!("g{i}")).collect();

    // One valuation per frame, with carry-forward for unprinted bits.
    let mut frames: Vec<Vec<Option<bool>>> = Vec::new();
    let mut current: Vec<Option<bool>> = vec![None; k];
    let mut in_frame = false;
    for line in raw.lines() {
        let line = line.trim();
        if line.starts_with("-> State:") {
            if in_frame {
                frames.push(current.clone());
            }
            in_frame = true;
            continue;
        }
        if !in_frame || line.is_empty() || line.starts_with("--") {
            continue;
        }
        if let Some((name, value)) = line.split_once('=') {
            let name = name.trim();
            if let Some(idx) = gate_vars.iter().position(|g| g == name) {
                let value = match value.trim() {
                    "TRUE" | "1" => true,
                    "FALSE" | "0" => false,
                    other => {
                        return Err(trace_err(
                            frames.len(),
                            format!("unparsable value `{other}` for {name}"),
                        ));
                    }
                };
                current[idx] = Some(value);
            }
        }
    }
    if in_frame {
        frames.push(current);
    }

    // The last frame has no outgoing transition.
    let steps = frames.len().saturating_sub(1);
    let mut codes = Vec::with_capacity(steps);
    for (step, frame) in frames.iter().take(steps).enumerate() {
        let mut bits = 0u32;
        for (idx, value) in frame.iter().enumerate() {
            let Some(v) = value else {
                return Err(trace_err(step, format!("gate bit g{idx} never assigned")));
            };
            if *v {
                bits |= 1 << (k - 1 - idx);
            }
        }
        let code = GateCode::new(n, bits)
            .map_err(|e| trace_err(step, format!("invalid gate code: {e}")))?;
        codes.push(code);
    }
    Ok(Trace { steps: codes })
}

/// Renders the counterexample a checker would print for a known
/// circuit, delta-encoded like real output: frame 0 lists every
/// variable, later frames only the changed ones. Exercises the parser
/// without an external tool and doubles as documentation of the trace
/// layout.
pub fn render_trace(circuit: &Circuit) -> String {
    let n = circuit.n();
    let k = code_width(n);
    let words = 1u16 << n;
    let mut out = String::new();
    out.push_str("-- specification !(F goal_reached)  is false\n");
    out.push_str("-- as demonstrated by the following execution sequence\n");
    out.push_str("Trace Description: BMC Counterexample\n");
    out.push_str("Trace Type: Counterexample\n");

    let fmt = |b: bool| if b { "TRUE" } else { "FALSE" };
    let mut prev_bits: Option<Vec<bool>> = None;
    let mut prev_state: Option<Vec<u16>> = None;
    let mut state: Vec<u16> = (0..words).collect();
    for (frame, gate) in circuit
        .gates()
        .iter()
        .map(Some)
        .chain(std::iter::once(None))
        .enumerate()
    {
        out.push_str(&format!("  -> State: 1.{} <-\n", frame + 1));
        let bits: Vec<bool> = match gate {
            Some(g) => {
                let code = crate::encoding::encode(g);
                (0..k)
                    .map(|i| code.bits() >> (k - 1 - i) & 1 == 1)
                    .collect()
            }
            // Final frame: gate bits are free; keeping them unchanged
            // means nothing is printed for them, like real output.
            None => prev_bits.clone().unwrap_or_else(|| vec![false; k]),
        };
        for (i, &bit) in bits.iter().enumerate() {
            if prev_bits.as_ref().is_none_or(|prev| prev[i] != bit) {
                out.push_str(&format!("    g{i} = {}\n", fmt(bit)));
            }
        }
        for (w, &v) in state.iter().enumerate() {
            for line in 0..n {
                let bit = v >> (n - 1 - line) & 1 == 1;
                let changed = prev_state
                    .as_ref()
                    .is_none_or(|prev| (prev[w] >> (n - 1 - line) & 1 == 1) != bit);
                if changed {
                    out.push_str(&format!(
                        "    {} = {}\n",
                        SmvModel::state_var(w as u16, line),
                        fmt(bit)
                    ));
                }
            }
        }
        prev_bits = Some(bits);
        prev_state = Some(state.clone());
        if let Some(g) = gate {
            let cmask = g.control_word_mask();
            let tmask = g.target_word_mask();
            for v in state.iter_mut() {
                if *v & cmask == cmask {
                    *v ^= tmask;
                }
            }
        }
    }
    out
}
