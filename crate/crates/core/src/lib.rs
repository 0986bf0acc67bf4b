pub mod constructions;
pub mod field;
pub mod lattice;
pub mod linalg;
pub mod projective;
