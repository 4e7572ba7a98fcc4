//! Exact Fourier coefficients with explicit singular-index handling, and
//! eigenfunction-expansion solvers for the heat, parabolic, wave and Laplace
//! equations on bounded domains.
//!
//! ```
//! use fourier_pde::{fourier_coeff, parse_expr, Expr, FourierKind, Source};
//!
//! let f = parse_expr("cos(x)^2").unwrap();
//! let c = fourier_coeff(&Source::Expr(f), "x", &Expr::pi(), FourierKind::Cosine).unwrap();
//! assert_eq!(c.singular[0].n, 2);
//! ```

pub mod bessel;
pub mod error;
pub mod expr;
pub mod fourier;
pub mod pde;
pub mod piecewise;
pub mod quadrature;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use expr::{
    classify_term, differentiate, eval_complex, eval_numeric, integrate_definite, parse_expr,
    parse_node, trig_canonicalize, Atom, Bindings, Expr, Node, OpaqueFn, OpaqueImpls, PatternClass,
    PatternTag,
};
pub use fourier::{
    expand_coeffs, fourier_coeff, fourier_series, FourierCoeffs, FourierKind, SingularRecord,
    Source,
};
pub use pde::{
    boundary_lift, eigenpairs, reduce_parabolic, solve_heat_mixed, solve_laplace,
    solve_parabolic_mixed, solve_wave_dirichlet, solve_wave_disk, solve_wave_disk_with,
    BoundaryRecord, EigenSystem, Equation, IbvpSpec, LaplaceBc, LaplaceSpec, NumericModalSolution,
    RadialRule,
};
pub use piecewise::{Branch, Parity, PiecewiseExpr};
pub use scalar::Scalar;
pub use series::{SeriesSolution, Truncation};
