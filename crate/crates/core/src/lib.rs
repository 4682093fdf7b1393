//! Convex solutions of Abel functional equations `F(f(x)) = F(x) + 1` for
//! rational maps tangent to the identity.
//!
//! The crate derives the power-logarithmic expansion of the orbit
//! `x_{n+1} = f(x_n)` exactly, solves the truncated expansion against a
//! high-precision iterate to obtain the Abel constant `C(x0) = F(x0)`, and
//! carries the exact-arithmetic sequence machinery (orbits, sum=product
//! sequences, integer recurrences) used to study the maps `A, B, I, J`.

pub mod analysis;
pub mod constants;
pub mod error;
pub mod logseries;
pub mod maps;
pub mod numeric;
pub mod orbits;
pub mod poly;
pub mod reference;

pub use analysis::{
    find_inflection, find_minimum, grid_csv, scan_shape, verify_identity, AbelFunction, GridSample,
    RawMap, ScalarFunction,
};
pub use constants::{
    estimate_constant, estimate_constant_additive, iterate_real, select_parameters, solve_for_x,
    ConstantEstimate, ConstantSolver, SolveParams,
};
pub use error::{Error, Result};
pub use logseries::{
    additive_wseries, derive_expansion, eval_expansion, reciprocal, residual, Expansion, WSeries,
};
pub use maps::{builtin_map, parse_map_expr, parse_polynomial, CanonicalForm, DomainSup, MapSpec};
pub use orbits::{
    check_patterns, orbit_exact, reparametrize, t_sequence, u_sequence, v_sequence, Pair,
    PatternReport, RationalOrbit, Reparam,
};
pub use poly::{BivarPolyQ, PolyQ};
pub use rug::{Float, Integer, Rational};
