//! Permutation representation of reversible functions.
//!
//! An `n`-line reversible function is a bijection on the words
//! `0..2^n`, stored densely as the output word for every input word in
//! index order. The identity permutation is both the synthesis start
//! state and the neutral element of composition.

use serde::Serialize;
use thiserror::Error;

/// Maximum supported line count. Permutations are stored densely
/// (`2^n` entries), so 16 lines (65536 entries) is the practical cap.
pub const MAX_LINES: usize = 16;

/// Errors raised by permutation and circuit construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("line count {0} outside supported range 1..={MAX_LINES}")]
    LineCountOutOfRange(usize),
    #[error("permutation has {actual} entries, expected {expected}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("value {value} appears more than once (entry {index})")]
    DuplicateValue { value: u16, index: usize },
    #[error("value {value} at entry {index} is out of range 0..{bound}")]
    ValueOutOfRange {
        value: u16,
        index: usize,
        bound: usize,
    },
    #[error("dimension mismatch: {left} lines vs {right} lines")]
    DimensionMismatch { left: usize, right: usize },
    #[error("target line {target} is also a control line")]
    TargetAmongControls { target: usize },
    #[error("line index {line} out of range for {n} lines")]
    LineOutOfRange { line: usize, n: usize },
}

fn check_lines(n: usize) -> Result<(), ModelError> {
    if n == 0 || n > MAX_LINES {
        return Err(ModelError::LineCountOutOfRange(n));
    }
    Ok(())
}

/// A bijection on the `2^n` input words of an `n`-line circuit.
///
/// `map[i]` is the output word produced for input word `i`. Words use
/// the convention that line 0 (the topmost circuit line) is the most
/// significant bit of the word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Permutation {
    n: usize,
    map: Vec<u16>,
}

impl Permutation {
    /// The identity permutation `map[i] = i` on `n` lines.
    pub fn identity(n: usize) -> Result<Self, ModelError> {
        check_lines(n)?;
        let map = (0..1u32 << n).map(|w| w as u16).collect();
        Ok(Self { n, map })
    }

    /// Builds a permutation from its output sequence, validating that it
    /// is a bijection on `0..2^n`.
    pub fn from_map(n: usize, map: Vec<u16>) -> Result<Self, ModelError> {
        check_lines(n)?;
        let size = 1usize << n;
        if map.len() != size {
            return Err(ModelError::LengthMismatch {
                expected: size,
                actual: map.len(),
            });
        }
        let mut seen = vec![false; size];
        for (index, &value) in map.iter().enumerate() {
            if (value as usize) >= size {
                return Err(ModelError::ValueOutOfRange {
                    value,
                    index,
                    bound: size,
                });
            }
            if seen[value as usize] {
                return Err(ModelError::DuplicateValue { value, index });
            }
            seen[value as usize] = true;
        }
        Ok(Self { n, map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of words, `2^n`.
    pub fn word_count(&self) -> usize {
        1 << self.n
    }

    pub fn map(&self) -> &[u16] {
        &self.map
    }

    /// Output word for input word `w`.
    pub fn image(&self, w: u16) -> u16 {
        self.map[w as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// Composition in cascade order: the stage realizing `self` is
    /// applied first, then the stage realizing `next`. A fixture test
    /// pins this orientation down with a worked 4-line decomposition
    /// that must compose, in listed order, to its target permutation.
    pub fn compose(&self, next: &Permutation) -> Result<Permutation, ModelError> {
        if self.n != next.n {
            return Err(ModelError::DimensionMismatch {
                left: self.n,
                right: next.n,
            });
        }
        let map = self.map.iter().map(|&v| next.map[v as usize]).collect();
        Ok(Permutation { n: self.n, map })
    }

    /// Inverse bijection.
    pub fn inverse(&self) -> Permutation {
        let mut map = vec![0u16; self.map.len()];
        for (w, &v) in self.map.iter().enumerate() {
            map[v as usize] = w as u16;
        }
        Permutation { n: self.n, map }
    }
}

impl std::fmt::Display for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_maps_each_word_to_itself() {
        assert_eq!(Permutation::identity(2).unwrap().map(), &[0, 1, 2, 3]);
        assert_eq!(
            Permutation::identity(3).unwrap().map(),
            &[0, 1, 2, 3, 4, 5, 6, 7]
        );
        assert_eq!(Permutation::identity(1).unwrap().map(), &[0, 1]);
    }

    #[test]
    fn line_count_range_is_enforced() {
        assert!(matches!(
            Permutation::identity(0),
            Err(ModelError::LineCountOutOfRange(0))
        ));
        assert!(matches!(
            Permutation::identity(17),
            Err(ModelError::LineCountOutOfRange(17))
        ));
        assert!(Permutation::identity(16).is_ok());
    }

    #[test]
    fn rejects_duplicates_and_bad_lengths() {
        let err = Permutation::from_map(2, vec![0, 1, 2, 2]).unwrap_err();
        assert_eq!(err, ModelError::DuplicateValue { value: 2, index: 3 });

        let err = Permutation::from_map(3, vec![0, 1, 2]).unwrap_err();
        assert_eq!(
            err,
            ModelError::LengthMismatch {
                expected: 8,
                actual: 3
            }
        );

        let err = Permutation::from_map(2, vec![0, 1, 2, 9]).unwrap_err();
        assert_eq!(
            err,
            ModelError::ValueOutOfRange {
                value: 9,
                index: 3,
                bound: 4
            }
        );
    }

    #[test]
    fn compose_identity_is_neutral() {
        let q = Permutation::from_map(2, vec![0, 1, 3, 2]).unwrap();
        let id = Permutation::identity(2).unwrap();
        assert_eq!(id.compose(&q).unwrap(), q);
        assert_eq!(q.compose(&id).unwrap(), q);
    }

    #[test]
    fn compose_dimension_mismatch() {
        let p = Permutation::identity(2).unwrap();
        let q = Permutation::identity(3).unwrap();
        assert_eq!(
            p.compose(&q).unwrap_err(),
            ModelError::DimensionMismatch { left: 2, right: 3 }
        );
    }

    #[test]
    fn worked_four_stage_composition() {
        // 4-line decomposition: composing the listed stages in cascade
        // order must reproduce the combined permutation.
        let p1 = Permutation::from_map(
            4,
            vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 12, 15, 14],
        )
        .unwrap();
        let p2 = Permutation::from_map(
            4,
            vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 13, 10, 15, 12, 9, 14, 11],
        )
        .unwrap();
        let p3 = Permutation::from_map(
            4,
            vec![0, 1, 2, 3, 4, 5, 7, 6, 8, 9, 10, 11, 12, 13, 15, 14],
        )
        .unwrap();
        let p4 = Permutation::from_map(
            4,
            vec![0, 1, 2, 11, 4, 5, 6, 15, 8, 9, 10, 3, 12, 13, 14, 7],
        )
        .unwrap();
        let p = p1
            .compose(&p2)
            .unwrap()
            .compose(&p3)
            .unwrap()
            .compose(&p4)
            .unwrap();
        assert_eq!(
            p.map(),
            &[0, 1, 2, 11, 4, 5, 15, 6, 8, 13, 10, 14, 9, 12, 3, 7]
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let p = Permutation::from_map(3, vec![7, 1, 4, 3, 0, 2, 6, 5]).unwrap();
        let id = p.compose(&p.inverse()).unwrap();
        assert!(id.is_identity());
    }
}
