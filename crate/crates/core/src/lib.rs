pub mod catalog;
pub mod coupling;
pub mod error;
pub mod gauge;
pub mod io;
pub mod linalg;
pub mod linearize;
pub mod poisson_laws;
pub mod ratfield;
pub mod scenario;
pub mod tensor_calc;
