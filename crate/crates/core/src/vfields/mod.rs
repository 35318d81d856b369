//! Vector fields, differential forms and polyvectors; Hamiltonian fields of
//! Poisson, Jacobi and top-polyvector structures; truncated solvers.

mod field;
mod forms;
mod hamiltonian;
mod solve;
mod structure;

pub use field::VectorField;
pub use forms::{DifferentialForm, Indices, Polyvector};
pub use hamiltonian::{curve_field, hamiltonian_family_top, hamiltonian_from_bracket, jacobi_hamiltonian};
pub use solve::{derivations_up_to_degree, exceptional_ideal, incompressibility_truncated, Incompressibility};
pub use structure::{BracketMatrix, JacobiStructure};
