use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} qubits vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("cannot parse Pauli string {input:?}: {reason}")]
    PauliParse { input: String, reason: String },

    #[error("invalid stabilizer code: {0}")]
    InvalidCode(String),

    #[error("brute force over {n} qubits is not supported (limit {limit})")]
    BruteForceLimit { n: usize, limit: usize },

    #[error("η enumeration is implemented at third order only; code has distance {distance}")]
    UnsupportedOrder { distance: usize },

    #[error(
        "mode budget exceeded for L = {length}, omega_c = {omega_c}: \
         about {modes} modes > budget {budget}"
    )]
    ModeBudget {
        length: f64,
        omega_c: f64,
        modes: u64,
        budget: u64,
    },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error(
        "criterion unreachable: D_crit = {d_crit} is not below |<σ+>| = {sigma_plus}, \
         the trace distance can never exceed it"
    )]
    CriterionUnreachable { d_crit: f64, sigma_plus: f64 },

    #[error("D_crit = {d_crit} does not exceed the saturation distance D_sat = {d_sat}")]
    BelowSaturation { d_crit: f64, d_sat: f64 },

    #[error("amplitude has imaginary residual {residual:e}, expected a real mode sum")]
    NonReal { residual: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("no threshold crossing found up to M = {cap}")]
    SearchExhausted { cap: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
