//! Exact-arithmetic toolkit for Stanley-Reisner ideals of bipyramids over
//! an n-gon: build the complex, extract the ideal and its minimal primes,
//! decide symbolic-power membership by prime weights, compute the initial
//! degree `alpha(I^(m))` by exact integer programming, and compute the
//! Waldschmidt constant `gamma(I) = lim alpha(I^(m)) / m` as the optimum of
//! the fractional covering LP over the minimal primes.
//!
//! Everything is exact: set arithmetic over vertex indices, integer
//! exponents, and arbitrary-precision rationals in the optimization layer.
//! All comparisons against closed forms are equalities, never tolerances.
//!
//! Vertex labeling for the bipyramid `B_n`: `0` is the upper apex, `1..=n`
//! the base cycle, `n + 1` the lower apex.

pub mod alpha;
pub mod error;
pub mod ideal;
pub mod lp;
pub mod simplicial;
pub mod waldschmidt;

pub use alpha::{
    alpha_bruteforce, alpha_symbolic, alpha_table, closed_form_alpha, AlphaResult, AlphaTableCell,
    TableOptions,
};
pub use error::Error;
pub use ideal::{
    bipyramid_generators, bipyramid_ideal, reduce_base, rotate_base, symmetrize_apexes, weight,
    Monomial, SquarefreeMonomialIdeal,
};
pub use lp::{ratio, solve_lp, LinearProgram, LpSolution, Rational, Simplex};
pub use simplicial::{
    build_bipyramid, enumerate_base_paths, BipyramidSpec, SimplicialComplex, VertexSet,
};
pub use waldschmidt::{
    covering_lp, gamma_closed_form, gamma_lp, gamma_lp_with_point, gamma_report,
    gamma_report_bipyramid, GammaReport, ReportOptions, SequenceEntry,
};
