//! Dense complex linear algebra used by the operator-theoretic checks.

pub mod assignment;
pub mod eigen;
pub mod hermitian;
pub mod matrix;

pub use assignment::{min_cost_assignment, multiset_distance};
pub use eigen::{charpoly, eigenvalues, eigenvector, hessenberg};
pub use hermitian::{hermitian_eigenvalues, top_eigenpair, top_singular, SingularTriple};
pub use matrix::{inner, solve, vec_norm, ComplexMatrix};
