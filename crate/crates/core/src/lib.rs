//! Symbolic toolkit for complex orthogonal designs (CODs) and balanced
//! complex orthogonal designs (BCODs).
//!
//! A design is a p×n grid over `{0, ±z_j, ±z_j*}`. This crate checks the
//! orthogonality axiom `G^H G = I_n (|z_1|^2 + ... + |z_k|^2)` exactly,
//! checks the balanced-design conditions, applies equivalence operations,
//! reduces between B_j forms, analyses zero patterns, builds delay `2^m`
//! balanced designs and searches exhaustively for minimum-delay designs at
//! small sizes.
//!
//! Row and column positions are 0-based throughout the API. Variable
//! indices are the 1-based labels used in the text format.

pub mod atomic;
pub mod bcod;
pub mod cli;
pub mod design;
pub mod entry;
pub mod equivalence;
mod error;
pub mod fixtures;
pub mod generate;
pub mod gram;
pub mod patterns;

pub use atomic::{adjacency_graph, atomic_components, is_atomic, Component, VarGraph};
pub use bcod::{classify_2x2, is_bcod, row_class, BcodCondition, BcodReport, BcodViolation, RowClass, TwoByTwoClass};
pub use design::{parse_design, serialize_design, Design, Occurrence};
pub use entry::{Entry, Sign, VarRef};
pub use equivalence::{
    apply_op, apply_ops, find_bj_rows, format_ops, is_column_restricted, is_standard_form, parse_ops,
    standardize, to_bj_form, BjReport, EquivOp,
};
pub use error::{Error, Result};
pub use generate::{base_bcod, construct_bcod, search_min_delay, SearchConfig, MAX_HALF_WIDTH};
pub use gram::{gram, is_cod, CodReport, CodViolation, CodWarning, GramEntry, GramMatrix, QuadTerm};
pub use patterns::{
    bcod_delay_lower_bound, census, delta, find_complement, induce_step, left_pattern, max_rate_delay_bound, nu, verify_delay_bound,
    zero_pattern, BitPattern, Census, DelayBoundReport, LeftPattern, ZeroPattern,
};
