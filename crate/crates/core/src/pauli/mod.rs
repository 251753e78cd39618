//! Exact Pauli-group algebra in symplectic form, stabilizer codes, syndromes
//! and logical-error classification.

mod code;
mod string;

pub use code::{
    classify, five_qubit_code, gf2_rank, minimum_logical_weight, syndrome, trivial_code,
    verify_distance, ErrorClass, StabilizerCode, Syndrome, BRUTE_FORCE_MAX_QUBITS,
};
pub use string::{combinations, paulis_of_weight, Pauli, PauliString, Phase};
