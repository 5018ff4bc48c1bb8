//! Exact symbolic computation in the quantized coordinate ring `O_q(M_n)` of
//! n×n matrices.
//!
//! The crate is organized bottom-up:
//!
//! * [`laurent`] — sparse exact arithmetic in ℤ[q, q⁻¹], including the
//!   recurring scalars q̂ = q − q⁻¹, signed powers (−q)^λ, and (−q)-integers.
//! * [`indexset`] — index-set combinatorics: inversion counts, the
//!   elementwise partial order, ξ_q products, ♮-complements, and the
//!   enumeration families driving the relation generators.
//! * [`algebra`] — the noncommutative algebra itself: generators X_ij,
//!   straightening to the lexicographic PBW normal form, grading, equality.
//! * [`minor`] — quantum minors [I|J] as algebra elements, Laplace expansion
//!   checks, the transpose maps, and the formal minor coproduct.
//! * [`rform`] — the coquasitriangular bilinear form **r**: base table,
//!   brute-force axiomatic oracle, and the closed product formula.
//! * [`relations`] — the complete family of minor commutation identities as
//!   verifiable data, plus quasicommutation detection and sweep verification.
//! * [`poisson`] — the standard Poisson bracket on the commutative limit,
//!   with three closed formulas and the semiclassical commutator oracle.
//! * [`parse`] — the text grammar shared by the CLI and the round-trip tests.
//!
//! Everything is exact: coefficients are unbounded integers, and every
//! identity is checked by reduction to canonical normal form, never
//! numerically.

pub mod algebra;
pub mod error;
pub mod indexset;
pub mod laurent;
pub mod minor;
pub mod parse;
pub mod poisson;
pub mod relations;
pub mod rform;

pub use algebra::{AlgebraElement, Generator, Monomial};
pub use error::{Error, Result};
pub use indexset::IndexSet;
pub use laurent::LaurentPoly;
pub use minor::{minor_element, quantum_minor, MinorDescriptor};
pub use parse::{parse_expression, parse_index_set, parse_set_pair};
pub use poisson::{
    bracket, bracket_generators, bracket_minors, classical_minor, semiclassical_bracket,
    CommutativePoly, PoissonVariant, VarMonomial,
};
pub use relations::{
    gen_generator_minor_relation, gen_pair_relation, quasicommutation_exponent, sweep_verify,
    verify_relation, RelationIdentity, RelationInputs, RelationKind, SweepConfig, SweepReport,
};
