//! Third-order uncorrectable-error terms of a distance-3 code and the
//! effective logical coupling they produce.

mod coupling;
mod eta;

pub use coupling::{a_matrix, lambda_star, AMatrix, EffectiveCoupling, IMAGINARY_TOLERANCE};
pub use eta::{enumerate_eta, EtaEntry, EtaTable};
