//! Provably gate-count-optimal synthesis of reversible circuits.
//!
//! A reversible function on `n` lines is a bijection on the words
//! `0..2^n`, given as an output permutation. This crate finds a
//! shortest cascade of Multiple-Control Toffoli (MCT) gates realizing
//! it, by bounded reachability over the gate-application transition
//! system: start from the identity, apply one gate per step, and search
//! for the goal on paths of length 0, 1, 2, ... The first hit is
//! optimal in gate count.
//!
//! Two native engines answer that reachability question — an
//! iterative-deepening search and a breadth-first oracle used to
//! cross-check it — and an SMV backend emits the same transition system
//! as a model for an external symbolic model checker, whose
//! counterexample traces decode back into circuits.
//!
//! ```
//! use revsynth::perm::Permutation;
//! use revsynth::synth::{synthesize, SynthesisRequest};
//!
//! let goal = Permutation::from_map(3, vec![0, 3, 2, 5, 4, 7, 6, 1])?;
//! let result = synthesize(&SynthesisRequest::new(goal))?;
//! assert_eq!(result.gate_count(), Some(2));
//! assert_eq!(result.quantum_cost(), Some(6));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! The accompanying guide under `book/` walks through the permutation
//! algebra, the gate encoding, the search, and the SMV backend; its
//! code snippets are compiled and run as part of this crate's doc
//! tests.

pub mod bench;
pub mod encoding;
pub mod formats;
pub mod gate;
pub mod perm;
pub mod smv;
pub mod synth;

pub use gate::{Circuit, MctGate};
pub use perm::Permutation;

/// Doc-test every code snippet in the guide so the book cannot drift
/// from the library.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(permutations, "../../../book/src/permutations.md");
    chapter!(gate_encoding, "../../../book/src/gate-encoding.md");
    chapter!(synthesis, "../../../book/src/synthesis.md");
    chapter!(smv_backend, "../../../book/src/smv-backend.md");
    chapter!(formats_cli, "../../../book/src/formats-and-cli.md");
    chapter!(benchmarks, "../../../book/src/benchmarks.md");
}
