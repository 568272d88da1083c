//! Exact computational machinery for symbol systems and the projective
//! varieties they parametrize: sparse rational polynomial arithmetic, a
//! Buchberger-based ideal engine, prolongation and validation of graded
//! polynomial systems, quadric generator construction, and the
//! complete-intersection decision with certificates.

pub mod cli;
pub mod document;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod symbol;
pub mod variety;

pub use error::{Error, Result};
pub use groebner::{
    algebraic_relations, buchberger, elimination_ideal, ideal_member, is_regular_sequence,
    krull_dimension, radical_member, s_polynomial, GroebnerBasis, Ideal,
};
pub use linalg::{kernel_solve, rref_basis, PolySpaceBasis};
pub use poly::{Monomial, MonomialOrder, Polynomial, Rational, Ring};
pub use symbol::{
    essential_variables, prolongation, BaseLocusReport, SymbolSystem, ValidationReport,
};
pub use variety::{
    build_generators, decide_ci, decide_ci_with, euler_decompose, lines_through_general_point, phi,
    sample_check, sample_points, translation_action, witness_rank3_case1, CIReason, CIVerdict,
    DecideOptions, ProjectivePoint, Rank2Data, SampleReport, VarietyModel,
};
