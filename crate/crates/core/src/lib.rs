//! Construction of smooth circle-valued functions `h = e^{ig}` on `[0, 1]`
//! that annihilate prescribed integral functionals, with certified
//! `W^{1,1}`-norm bounds.
//!
//! The library represents the phase `g` as a finite tree of smooth monotone
//! blends ([`PhaseTree`]), builds an odd family of such functions over a
//! sphere ([`EquivariantMap`]), and locates a sphere point whose function
//! annihilates the target functionals with a combinatorial-plus-local zero
//! search ([`zerofind`]). Four solve modes are exposed through [`solver`]:
//!
//! * `complex` — n complex integrands, bound `1 + 2πn`;
//! * `generic` — any odd L¹-continuous functional into ℝ^m, bound `1 + πm`;
//! * `hobby-rice` — ±1-valued output with at most n sign changes;
//! * `improved` — real integrands, bound `1 + π(2n−1) + ε`.
//!
//! All evaluation types are immutable after construction and safe to share
//! across threads.

pub mod construct;
pub mod funcspace;
mod gauss;
pub mod phase;
pub mod quadrature;
pub mod smoothstep;
pub mod solver;
pub mod sphere;
pub mod zerofind;

pub use num_complex::Complex64;

pub use construct::{ConstructionConfig, EquivariantMap, Mode};
pub use funcspace::{FnKind, PiecewiseFn, Problem};
pub use phase::{PhaseTree, TransitionWindow, TreeKind};
pub use quadrature::{FunctionalSpec, OddTerm, QuadConfig, SpecMode};
pub use smoothstep::SmoothStep;
pub use solver::{SolveConfig, SolveMode, SolveReport};
pub use sphere::{BallPoint, SpherePoint, SymmetricTriangulation};
pub use zerofind::{OddMap, ZeroFindConfig, ZeroResult};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    // ---- problem and spec documents ----
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("unsupported schema version {0}")]
    Schema(u64),
    #[error("problem has no functions")]
    EmptyProblem,
    #[error("breakpoints must start at 0 and end at 1 (got {first}..{last})")]
    BadBreakpointRange { first: f64, last: f64 },
    #[error("breakpoints not strictly increasing at index {0}")]
    NonMonotoneBreakpoints(usize),
    #[error("value count {got} does not match breakpoints ({expected} expected)")]
    ValueCount { got: usize, expected: usize },
    #[error("non-finite number in input")]
    NonFinite,
    #[error("real_valued flag set but function {0} has a nonzero imaginary part")]
    NotRealValued(usize),
    #[error("intervals overlap or extend outside [0,1]")]
    BadIntervals,
    #[error("odd-term exponent must be an odd positive integer (got {0})")]
    BadExponent(u32),
    #[error("functional spec has no components")]
    EmptySpec,

    // ---- phase trees ----
    #[error("blend order violation: lo exceeds hi by {excess:.3e} at x = {x}")]
    OrderViolation { x: f64, excess: f64 },
    #[error("operation requires a {expected}-kind phase tree")]
    WrongKind { expected: &'static str },
    #[error("blend parameter out of range: {0}")]
    BadBlendParam(&'static str),
    #[error("mixed smooth and integer subtrees in one node")]
    MixedKind,

    // ---- sphere geometry ----
    #[error("point has no coordinate above the positivity threshold")]
    DegeneratePoint,
    #[error("point norm {0} is not within 1e-12 of 1")]
    NotUnit(f64),
    #[error("ball point norm {0} exceeds 1")]
    OutsideBall(f64),
    #[error("triangulation budget exceeded: {simplices} simplices at level {level}")]
    TriangulationBudget { simplices: usize, level: u32 },
    #[error("dimension or level out of range: {0}")]
    BadDimension(String),

    // ---- quadrature ----
    #[error("adaptive quadrature hit max depth (worst panel estimate {err:.3e})")]
    Accuracy { best: Vec<f64>, err: f64 },
    #[error("quadrature config invalid: {0}")]
    BadQuadConfig(&'static str),
    #[error("lipschitz check requires a purely linear spec")]
    NotLinearSpec,

    // ---- zero finding / solver ----
    #[error("map is not odd: |F(-x)+F(x)| = {0:.3e} at a sampled point")]
    OddnessViolation(f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("solve mode requires a real-valued problem")]
    NotRealProblem,
    #[error("epsilon must lie in (0, 1]")]
    BadEpsilon,
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
