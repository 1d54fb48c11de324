pub mod complex_json;
pub mod error;
pub mod quadrature;
pub mod symbols;
pub mod spectra;
pub mod spaces;
pub mod operators;
pub mod composition;
