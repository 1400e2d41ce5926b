//! Critical-exponent calculus, hypergeometric kernels, an exact 1D solver
//! and a blow-up simulator for wave equations with time-dependent
//! propagation speed.

pub mod blowup;
pub mod exponents;
pub mod kernels;
pub mod quad;
pub mod solver1d;
pub mod specfun;
