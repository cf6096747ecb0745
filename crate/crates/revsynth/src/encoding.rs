//! Fixed-width integer encoding of MCT gates.
//!
//! A gate on `n` lines is packed into `ceil(log2 n) + n - 1` bits:
//!
//! ```text
//!   msb                                  lsb
//!   [ target line index ][ control flags  ]
//!     ceil(log2 n) bits     n - 1 bits
//! ```
//!
//! Control flag `j` (for `j = 0..n-2`) refers to line `j` when
//! `j < target` and to line `j + 1` otherwise — the target line is
//! skipped — and flag 0 occupies the most significant control bit. For
//! a 4-line gate with target 0 and controls on lines 2 and 3 this
//! yields the code `00011`.
//!
//! Ascending code order is the canonical gate order used for
//! tie-breaking throughout the crate.

use thiserror::Error;

use crate::gate::MctGate;
use crate::perm::MAX_LINES;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("line count {0} outside supported range 1..={MAX_LINES}")]
    LineCountOutOfRange(usize),
    #[error("code 0b{bits:b} does not fit in {width} bits")]
    WidthOverflow { bits: u32, width: usize },
    #[error("target field {target} is not a valid line index for {n} lines")]
    InvalidTarget { target: usize, n: usize },
}

/// Number of bits used for the target-line field.
pub fn target_field_width(n: usize) -> usize {
    // ceil(log2 n): bits needed to write n - 1.
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

/// Total code width, `ceil(log2 n) + n - 1`.
pub fn code_width(n: usize) -> usize {
    target_field_width(n) + n - 1
}

/// The packed-integer form of an MCT gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GateCode {
    n: usize,
    bits: u32,
}

impl GateCode {
    /// Validates that `bits` fits the code width for `n` lines and
    /// names a real target line. Codes with a target field `>= n` exist
    /// only when `n` is not a power of two and are rejected.
    pub fn new(n: usize, bits: u32) -> Result<Self, CodeError> {
        if n == 0 || n > MAX_LINES {
            return Err(CodeError::LineCountOutOfRange(n));
        }
        let width = code_width(n);
        if width < 32 && bits >> width != 0 {
            return Err(CodeError::WidthOverflow { bits, width });
        }
        let target = (bits >> (n - 1)) as usize;
        if target >= n {
            return Err(CodeError::InvalidTarget { target, n });
        }
        Ok(Self { n, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn width(&self) -> usize {
        code_width(self.n)
    }

    /// Zero-padded binary rendering, msb first. The one-line gate has a
    /// zero-width code rendered as the empty string.
    pub fn bit_string(&self) -> String {
        let w = self.width();
        (0..w)
            .map(|i| {
                if self.bits >> (w - 1 - i) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    pub fn target(&self) -> usize {
        (self.bits >> (self.n - 1)) as usize
    }

    /// Unpacks the code back into a gate.
    pub fn decode(&self) -> MctGate {
        let n = self.n;
        let target = self.target();
        let mut controls = Vec::new();
        for j in 0..n - 1 {
            if self.bits >> (n - 2 - j) & 1 == 1 {
                controls.push(if j < target { j } else { j + 1 });
            }
        }
        MctGate::new(n, target, &controls).expect("validated codes decode to valid gates")
    }

    /// Word transition computed directly from the code fields, bit by
    /// bit: the target bit is XOR'd with the conjunction over all
    /// control positions of (flag absent OR the flagged line is 1), and
    /// every other bit passes through. This is an independent route to
    /// the same function as [`MctGate::apply`]; tests cross-check the
    /// two exhaustively.
    pub fn apply(&self, word: u16) -> u16 {
        let n = self.n;
        let tg = self.target();
        let mut out = 0u16;
        for k in 0..n {
            let ik = word >> (n - 1 - k) & 1;
            let next = if k != tg {
                ik
            } else {
                let mut conj = 1u16;
                for j in 0..n - 1 {
                    let flag = self.bits >> (n - 2 - j) & 1;
                    let line = if j < tg { j } else { j + 1 };
                    let il = word >> (n - 1 - line) & 1;
                    if flag == 1 {
                        conj &= il;
                    }
                }
                ik ^ conj
            };
            out |= next << (n - 1 - k);
        }
        out
    }
}

/// Packs a gate into its code.
pub fn encode(gate: &MctGate) -> GateCode {
    let n = gate.n();
    let mut bits = (gate.target() as u32) << (n - 1);
    for line in gate.control_lines() {
        let j = if line < gate.target() { line } else { line - 1 };
        bits |= 1 << (n - 2 - j);
    }
    GateCode { n, bits }
}

/// Every valid gate on `n` lines exactly once, in ascending code
/// order. There are `n * 2^(n-1)` of them.
pub fn enumerate_gates(n: usize) -> Result<Vec<MctGate>, CodeError> {
    if n == 0 || n > MAX_LINES {
        return Err(CodeError::LineCountOutOfRange(n));
    }
    let width = code_width(n);
    let mut gates = Vec::with_capacity(n << (n - 1));
    for bits in 0..1u64 << width {
        if let Ok(code) = GateCode::new(n, bits as u32) {
            gates.push(code.decode());
        }
    }
    Ok(gates)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn widths() {
        assert_eq!(code_width(1), 0);
        assert_eq!(code_width(2), 2);
        assert_eq!(code_width(3), 4);
        assert_eq!(code_width(4), 5);
        assert_eq!(code_width(8), 10);
        assert_eq!(code_width(16), 19);
    }

    #[test]
    fn four_line_example_encodes_to_00011() {
        let g = MctGate::new(4, 0, &[2, 3]).unwrap();
        let code = encode(&g);
        assert_eq!(code.bits(), 0b00011);
        assert_eq!(code.bit_string(), "00011");
        assert_eq!(code.decode(), g);
    }

    #[test]
    fn all_zero_code_is_not_on_line_0() {
        let g = MctGate::new(4, 0, &[]).unwrap();
        assert_eq!(encode(&g).bits(), 0);
        let code = GateCode::new(4, 0).unwrap();
        assert_eq!(code.decode(), g);
    }

    #[test]
    fn decode_rejects_target_field_beyond_line_count() {
        // n=3 uses a 2-bit target field; value 3 names no line.
        let err = GateCode::new(3, 0b11 << 2).unwrap_err();
        assert_eq!(err, CodeError::InvalidTarget { target: 3, n: 3 });
    }

    #[test]
    fn two_line_code_10_is_not_on_line_1() {
        let code = GateCode::new(2, 0b10).unwrap();
        let g = code.decode();
        assert_eq!(g.target(), 1);
        assert_eq!(g.control_count(), 0);
    }

    #[test]
    fn roundtrip_all_gates_small_n() {
        for n in 1..=5 {
            for g in enumerate_gates(n).unwrap() {
                assert_eq!(encode(&g).decode(), g);
            }
        }
    }

    #[test]
    fn enumeration_counts_match_formula() {
        assert_eq!(enumerate_gates(1).unwrap().len(), 1);
        assert_eq!(enumerate_gates(3).unwrap().len(), 12);
        assert_eq!(enumerate_gates(4).unwrap().len(), 32);
    }

    #[test]
    fn enumeration_is_sorted_by_code() {
        let codes: Vec<u32> = enumerate_gates(5)
            .unwrap()
            .iter()
            .map(|g| encode(g).bits())
            .collect();
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn one_line_universe_is_the_lone_not() {
        let gates = enumerate_gates(1).unwrap();
        assert_eq!(gates, vec![MctGate::new(1, 0, &[]).unwrap()]);
        let code = encode(&gates[0]);
        assert_eq!(code.width(), 0);
        assert_eq!(code.bit_string(), "");
    }

    #[test]
    fn code_apply_matches_known_transitions() {
        // 3-line Toffoli sends word 6 (110) to 7 (111).
        let tof = encode(&MctGate::new(3, 2, &[0, 1]).unwrap());
        assert_eq!(tof.apply(6), 7);
        assert_eq!(tof.apply(7), 6);
        // Words with an unset control bit are fixed points.
        assert_eq!(tof.apply(4), 4);
        // The 4-line example gate sends 0011 to 1011 (3 -> 11).
        let fig = GateCode::new(4, 0b00011).unwrap();
        assert_eq!(fig.apply(3), 11);
    }

    #[test]
    fn code_apply_agrees_with_gate_apply_exhaustively() {
        for n in 1..=4 {
            for g in enumerate_gates(n).unwrap() {
                let code = encode(&g);
                for w in 0..1u16 << n {
                    assert_eq!(code.apply(w), g.apply(w), "n={n} gate={g} word={w}");
                }
            }
        }
    }
}
