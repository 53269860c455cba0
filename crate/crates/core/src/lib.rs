//! Exact-arithmetic computer algebra for Hochschild cohomology rings,
//! Eilenberg–Moore E2/E∞ pages of loop-space fibrations, and mechanized
//! extension-problem solving that emits loop homology ring presentations.
//!
//! Everything is computed over exact scalars (arbitrary-precision rationals
//! or prime-field residues); there is no floating point in the crate.
//! Values are immutable after construction and every operation is a pure
//! function, so concurrent invocation is safe and results are always
//! identical to sequential evaluation.

pub mod algebra;
pub mod bar;
pub mod complex;
pub mod emss;
pub mod error;
pub mod extension;
pub mod hochschild;
pub mod json;
pub mod koszul;
pub mod matrix;
pub mod periodic;
pub mod pipeline;
pub mod scalar;
pub mod series;

pub use algebra::{
    AlgebraKind, AlgebraMorphism, AlgebraPresentation, Element, GeneratorSpec, ModuleSpec,
    Monomial, Relation,
};
pub use bar::{bar_complex_truncated, BarCochain, BarModel};
pub use complex::{cohomology, BasisLabel, CohomologyResult, Direction, FreeComplex};
pub use emss::{
    assume_collapse, build_e2, collapse_by_sparsity, einfinity, CollapseCertificate, CollapseKind,
    E2Page, EInfinityPage, SparsityOutcome,
};
pub use error::{Error, Result};
pub use extension::{
    assemble_loop_homology, enumerate_lift_candidates, extension_checks_for, zero_column_lift,
    CommutativityPolicy, LiftObstructionReport, LoopHomologyResult, RelationCandidate, Verdict,
    ZeroColumnLift,
};
pub use hochschild::{
    cup_product, hh_exterior_single, hh_induced_map, hh_kunneth, hh_module_coefficients,
    hh_polynomial, hh_ring, hh_self, HHCertificate, HHPresentation, InducedDirection,
};
pub use koszul::{koszul_hochschild_complex, koszul_tor_complex};
pub use periodic::{
    exterior_hochschild_complex, periodic_hochschild_complex, truncated_hochschild_complex,
};
pub use pipeline::{
    default_q_window, loop_homology, relative_loop_homology, LoopOutcome, PipelineConfig,
};
pub use scalar::{scalar_arith, FieldSpec, Scalar, ScalarOp};
pub use series::{series_product, Bidegree, DimensionSeries, Window};
