//! Hypergrams `(V, H, G)`, their Pauli assignments, sign functions and
//! contextuality degrees, over bit-packed GF(2) linear algebra.

pub mod assign;
pub mod cli;
pub mod degree;
pub mod geometry;
pub mod gf2;
pub mod hypergram;
pub mod io;
pub mod pauli;

pub use assign::{
    basis, classical_assignment_commutative, classical_sign_function, pauli_assignment_checked,
    pauli_assignment_from_anticommutations, sign_function, transfer_classical, unsatisfied_set, verify_assignment,
    AssignError, ClassicalAssignment, PauliAssignment, SignVector,
};
pub use degree::{
    degree_bruteforce, degree_exact, degree_heuristic, is_contextual, noncontextual_bound, DegreeError, DegreeResult,
    HeuristicParams, Method,
};
pub use gf2::{BitMatrix, BitVector};
pub use hypergram::{Hypergram, RawHypergram, ValidationReport, ViolationCode};
pub use pauli::{Pauli, PauliError, PauliObservable, PhasedPauli, Sign};
