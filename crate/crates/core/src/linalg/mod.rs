//! Numeric and exact eigen-oracles.
//!
//! [`sym_eigenvalues`] is the floating-point route (cyclic Jacobi);
//! [`charpoly_exact`] followed by [`poly_roots_real`] is the exact route.
//! The two share no code, so agreement between them is a meaningful check.

mod exact;
mod sym;

pub use exact::{
    charpoly_exact, poly_roots_real, RationalMatrix, RationalPoly, MAX_BISECTIONS, MAX_EXACT_DIM,
};
pub use sym::{
    sym_eigen, sym_eigenvalues, EigenDecomposition, EigenGroup, Spectrum, SymMatrix, CLUSTER_TOL,
    JACOBI_MAX_SWEEPS, JACOBI_REL_TOL, MAX_EIGEN_DIM,
};

pub(crate) use exact::rat_to_f64;

/// Evaluates `pl` at `x` in floating point.
pub fn poly_eval(pl: &RationalPoly, x: f64) -> f64 {
    pl.eval(x)
}
