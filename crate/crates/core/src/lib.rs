//! Exact computations with the genus-2 Goeritz groups of the lens spaces
//! `L(p, 1)`: the action on first homology, membership in its image, word
//! synthesis for image matrices, and obstructions to carrying one homology
//! class to another.

pub mod cli;
pub mod error;
pub mod harness;
pub mod int;
pub mod matrix;
pub mod lattice;
pub mod linalg;
pub mod obstruction;
pub mod star;
pub mod words;

pub use error::{Error, Result};
pub use int::{epsilon, Regime, Sign};
pub use matrix::{IntMatrix, RepMatrix2, RepMatrix4};
pub use star::{generator_matrix, interval_classify, mobius_apply, q_project, star, ExtendedRational, Interval, StarMap};
pub use words::{
    cyclic_reduce, freely_homotopic, invert, is_trivial_in_quotient, ll_prefix, multiply, normal_form,
    parse_word, FreeWord, Generator, GroupWord, Letter, LlPrefix, NormalForm,
};
pub use lattice::{
    a_block, assemble, compose_sp, d_block, decompose_sp, determinant_condition, enumerate_image, in_a_p, in_b_p,
    kappa, synthesize_word, SpElement,
};
pub use obstruction::{
    check_homology_obstruction, derived_invariants, find_goeritz_matrix, match_vector_families, obstruct,
    search_goeritz_matrix, HomologyVector, ObstructionReport, Verdict,
};
