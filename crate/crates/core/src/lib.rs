//! Bipartite and multipartite quantum correlations of few-qubit states.
//!
//! The crate computes entanglement of formation, quantum discord and
//! geometric discord on small density matrices, sums them over every ordered
//! bipartition of a three-qubit system (MMQC), and evolves states through
//! independent amplitude- and phase-damping channels.
//!
//! Everything numerical is generic over [`Real`] (`f32` or `f64`); the
//! `*F64` and `*F32` aliases below fix the scalar.
//!
//! ```
//! use qcorr_core::{mmqc_pure, CorrelationKind, PureStateF64};
//!
//! let report = mmqc_pure(&PureStateF64::ghz(3), CorrelationKind::Eof).unwrap();
//! assert!((report.total - 6.0).abs() < 1e-9);
//! ```

pub mod bicorr;
pub mod channels;
pub mod check;
pub mod error;
pub mod experiment;
pub mod linalg;
pub mod mmqc;
pub mod optimize;
pub mod qstate;
pub mod random;
pub mod scalar;

pub use bicorr::{
    classical_correlation, concurrence, eof_from_concurrence, eof_pure_cut, eof_two_qubit, gqd_closed_form,
    gqd_variational, mutual_information, quantum_discord, CorrelationKind, CorrelationValue,
};
pub use channels::{
    amplitude_damping, evolve, identity_channel, phase_damping, sweep, ChannelKind, KrausChannel, SweepGrid,
};
pub use error::{Error, Result};
pub use experiment::{
    build_initial, run_experiment, ExperimentConfig, FlatTable, GridSpec, Initial, InitialSpec, OutputFormat,
    TrajectoryRow, TrajectoryTable,
};
pub use linalg::CMatrix;
pub use mmqc::{
    enumerate_terms, mmqc, mmqc_gqd, mmqc_pure, mmqc_rank2, pairwise_sum_identity_check, BipartitionTerm,
    GqdTerms, Method, MmqcOptions, MmqcReport, TermResult,
};
pub use optimize::{MeasurementBasis, OptimizerOptions, OptimizerReport};
pub use qstate::{
    bloch_decompose, conditional_entropy, parse_state, partial_trace, purify, tensor, von_neumann_entropy,
    BlochForm, DensityMatrix, PureState,
};
pub use scalar::Real;

pub type DensityMatrixF64 = DensityMatrix<f64>;
pub type DensityMatrixF32 = DensityMatrix<f32>;
pub type PureStateF64 = PureState<f64>;
pub type PureStateF32 = PureState<f32>;
pub type CMatrixF64 = CMatrix<f64>;
pub type CMatrixF32 = CMatrix<f32>;
pub type MmqcReportF64 = MmqcReport<f64>;
pub type MmqcReportF32 = MmqcReport<f32>;
pub type TrajectoryTableF64 = TrajectoryTable<f64>;
pub type TrajectoryTableF32 = TrajectoryTable<f32>;
