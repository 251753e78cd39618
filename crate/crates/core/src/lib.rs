//! Error-correction breakdown bounds for a distance-3 code coupled to a
//! correlated bosonic bath.
//!
//! * [`pauli`]: Pauli strings, stabilizer codes, syndromes.
//! * [`analysis`]: third-order logical terms and the effective coupling.
//! * [`bath`]: mode sums, decoherence, regimes and step bounds.
//!
//! Numerical code is generic over [`Scalar`] (`f32` or `f64`); the `*F64`
//! aliases below are what the command-line tool uses.

pub mod analysis;
pub mod bath;
pub mod error;
pub mod fit;
pub mod pauli;
pub mod scalar;
pub mod sum;

pub use analysis::{a_matrix, enumerate_eta, lambda_star, AMatrix, EffectiveCoupling, EtaEntry, EtaTable};
pub use bath::{
    build_mode_grid, d_sat, gamma, gamma_asymptotic, gamma_series, hs_distance, mmax_multi, mmax_single,
    trace_distance_single, trace_distance_upper, zeta_and_regime, Axis, BathChannel, BathGeometry, BoundInput,
    HsEvaluator, MmaxMode, ModeGrid, QubitLayout, Regime, RegimeReport, StepBound, SumKind,
};
pub use error::{Error, Result};
pub use fit::{fit_loglog_slope, LogLogFit};
pub use pauli::{five_qubit_code, ErrorClass, Pauli, PauliString, Phase, StabilizerCode};
pub use scalar::Scalar;

pub type AMatrixF64 = AMatrix<f64>;
pub type BathChannelF64 = BathChannel<f64>;
pub type BathGeometryF64 = BathGeometry<f64>;
pub type BoundInputF64 = BoundInput<f64>;
pub type EffectiveCouplingF64 = EffectiveCoupling<f64>;
pub type ModeGridF64 = ModeGrid<f64>;
pub type QubitLayoutF64 = QubitLayout<f64>;
pub type RegimeReportF64 = RegimeReport<f64>;
pub type StepBoundF64 = StepBound<f64>;
