//! Fusion rings and anyon models: coherence and modularity checks, fusion-tree
//! bases, braid-group representations, braid-closure invariants and
//! brute-force braid compilation.
//!
//! The Fibonacci model ships as a builtin:
//!
//! ```
//! use anyon_core::{builtin, check_pentagon, s_matrix, Label};
//!
//! let fib = builtin("fibonacci").unwrap();
//! assert!(check_pentagon(&fib, 1e-9).unwrap().passed);
//! let phi = (1.0 + 5f64.sqrt()) / 2.0;
//! assert!((fib.qdim(Label(1)) - phi).abs() < 1e-12);
//! let s = s_matrix(&fib).s;
//! assert!((s[(1, 1)].re + 1.0 / (2.0 + phi).sqrt()).abs() < 1e-12);
//! ```

pub mod braid;
pub mod builtin;
pub mod error;
pub mod fusion_ring;
pub mod fusion_space;
pub mod linalg;
pub mod model;
pub mod model_file;

pub use braid::{
    closure_invariant, compile_unitary, evaluate, parse_braid, BraidRepresentation, BraidWord, Compilation,
    KnotInvariantResult, SearchOptions, SectorSpec,
};
pub use builtin::{builtin, fibonacci, golden_ratio, trivial, BUILTIN_NAMES};
pub use error::{Error, Result};
pub use fusion_ring::{fp_dimensions, fuse, power_decompose, validate_ring, FusionRing, Label, ValidationReport};
pub use fusion_space::{braid_generator, braid_generator_inverse, enumerate_basis, f_matrix, FusionBasis};
pub use linalg::{phase_distance, ComplexMatrix, C64};
pub use model::{
    check_hexagon, check_modularity, check_pentagon, check_ribbon, check_triangle, check_unitarity, quantum_trace,
    s_matrix, AnyonModel, ModularityReport, ResidualReport, SMatrix, DEFAULT_TOLERANCE,
};
pub use model_file::{load_model, parse_model, save_model, ModelFile};
