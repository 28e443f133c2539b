//! Secure distributed matrix multiplication codes over prime fields.
//!
//! Classical polynomial codes (GASP and its optimized, discretely optimized
//! and cyclic variants), codes designed for entangled servers, and an exact
//! simulation of both download models: the classical one via Vandermonde
//! inversion, the entangled one via the N-sum box transfer matrix.

pub mod degree_tables;
pub mod error;
pub mod feasibility;
pub mod gf;
pub mod grs;
pub mod nsumbox;
pub mod protocol;
pub mod sweep;

pub use degree_tables::{
    build_cat, build_dog, build_gasp_r, build_gasp_rs, build_low_privacy, build_quantum_family,
    check_decodable, gap_progression, gasp_server_formula, optimal_gasp, outer_sum, parse_record,
    to_record, Decodability, DegreeTable, ExponentPlan, Family, QuantumSpec, Side,
};
pub use error::{Error, Result};
pub use feasibility::{
    check_feasible, check_feasible_low_privacy, lcc, min_feasible_t, t_hat_estimate,
    FeasibilityReport,
};
pub use gf::{mat_inverse, mat_rank, mat_solve, vandermonde, FMatrix, FieldContext, FieldOp};
pub use grs::{dual_multipliers, grs_generator, shifted_dual_multipliers, sso_check, EvalFrame};
pub use nsumbox::{apply_box, build_transfer, TransferMatrix};
pub use protocol::{
    decode_classical, decode_quantum, encode_shares, privacy_audit, rate_report, sample_frame,
    server_compute, simulate, MatrixDims, Mode, PrivacyReport, ProtocolConfig, RateReport, Share,
    SimulationOutcome, Transcript,
};
