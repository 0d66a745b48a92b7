//! Multiqubit entanglement measures with convex-roof minimization,
//! purification and closed-form cross-checks for the GHZ/W, deformed Smolin
//! and `|1…1⟩`/`W_N` families.

pub mod catalog;
pub mod error;
pub mod formulas;
pub mod io;
pub mod measures;
pub mod roof;
pub mod state;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use measures::{
    concurrence, e_ms, negativity, one_tangle, single_property, three_tangle_pure, MeasureValue,
    PureMeasure,
};
pub use roof::{
    ensemble_from_isometry, measure_env_povm, roof_minimize, DecompositionIsometry, Ensemble,
    PovmElement, RoofConfig, RoofOutcome,
};
pub use state::{
    partial_trace, partial_transpose, purify, tensor_product, trace_norm, DensityMatrix,
    QuantumState, QubitSubset, Spectrum, StateVector, C64,
};
