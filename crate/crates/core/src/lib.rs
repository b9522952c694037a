//! Vector-valued nonsymmetric Jack and Macdonald polynomials on irreducible
//! modules of the symmetric group and Hecke algebra, with prediction and
//! verification of singular parameter values.

pub mod construct;
pub mod fields;
pub mod jack;
pub mod linalg;
pub mod macdonald;
pub mod polyspace;
pub mod singular;
pub mod specht;
pub mod suites;
pub mod tableaux;
