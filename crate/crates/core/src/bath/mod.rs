//! Bosonic environment: lattice mode sums, decoherence and distance
//! functions, regime classification and computation-time bounds.

mod bounds;
mod channel;
mod decoherence;
mod grid;
mod layout;
mod regime;

pub use bounds::{
    calibrate_gamma_prefactor, calibrate_mmax_single, gamma_asymptotic, mmax_multi, mmax_single,
    w_sum_asymptotic, BoundInput, MmaxMode, StepBound,
};
pub use channel::{Axis, BathChannel, BathGeometry};
pub use decoherence::{
    d_sat, gamma, gamma_series, hs_distance, trace_distance_single, trace_distance_upper, w_double_sum,
    w_pair, HsEvaluator, PairSpectrum, Saturation,
};
pub use grid::{build_mode_grid, Mode, ModeGrid, Shell, DEFAULT_MODE_BUDGET};
pub use layout::{Position, QubitLayout};
pub use regime::{classify_zeta, zeta_and_regime, Regime, RegimeReport, SumKind, ZETA_TOLERANCE};
