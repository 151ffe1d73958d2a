//! Hypergraphs of mutually orthogonal atoms (MMP diagrams) and the machinery
//! built on top of them: isomorph-free exhaustive generation, 0-1 and
//! probabilistic state analysis, orthomodular-lattice pasting, and exact
//! realization of diagrams as rational vector sets (Kochen-Specker sets).
//!
//! An MMP diagram is a list of blocks, each block a set of pairwise
//! orthogonal atoms (vertices), subject to three conditions:
//!
//! 1. every vertex belongs to at least one block;
//! 2. if there are at least two vertices, every block has at least two;
//! 3. every block that intersects another block has at least three.
//!
//! Diagrams are written one per line in a compact text format, e.g.
//! `abc,cde,efa,egb,dgf.` — blocks of single-character vertex labels joined
//! by commas, terminated by a period. See [`diagram`] for the format and
//! [`generate`] for the canonical-augmentation search that enumerates
//! diagrams exactly once per isomorphism class.
//!
//! All numeric verdicts (state feasibility, vector orthogonality, lattice
//! laws) are computed in exact rational arithmetic or by exhaustive finite
//! search; no verdict depends on floating point.

pub mod canon;
pub mod diagram;
pub mod generate;
pub mod known;
pub mod lattice;
mod linalg;
pub mod simplex;
pub mod states;
pub mod terms;
pub mod vectors;

/// Exact rational scalar used throughout for states, feasibility and vectors.
pub type Rational = num_rational::BigRational;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use diagram::{MmpDiagram, ParseError, ValidationReport};
pub use generate::{generate_all, scan, GenerationParams};
pub use lattice::{
    admits_quantum_states_on_lattice, build_lattice, check_minimal_length, check_orthomodular,
    check_superposition, holds_in, OmlLattice,
};
pub use states::{
    admits_01_state, admits_quantum_states, admits_state, classify_state_space,
    enumerate_01_states, StateClassification, ZeroOneState,
};
pub use terms::{parse_statement, LatticeStatement};
pub use vectors::{
    parse_vectors, realize, serialize_vectors, verify_realization, RealizationReport,
    RealizeOptions, VectorSet,
};
