//! Numerics for generalized-normed (G-normed) spaces.
//!
//! A G-norm measures vector *triples* instead of single vectors while
//! retaining the distance-flavoured axioms of an ordinary norm. This crate
//! provides:
//!
//! * concrete G-norm instances (sum of p-norms, grid-function max-of-sums,
//!   and a deliberately broken candidate for negative testing) — [`spaces`];
//! * the derived G-metric, the induced ordinary metric `d_G`, and sequence
//!   convergence / Cauchy diagnostics — [`space`], [`sequence`];
//! * anchored-ball geometry: membership, interior witness radii, scaling,
//!   convexity and closure probes, rejection sampling — [`topology`];
//! * three fixed-point solvers (contraction iteration, expansive maps via
//!   their inverse, and common fixed points of commuting pairs) with
//!   a-priori error-bound tracking — [`solvers`];
//! * a property-based verification engine for all axioms and propositions,
//!   with deterministic seeded sampling and counterexample shrinking —
//!   [`verify`].
//!
//! All operations are pure functions of their inputs; sampling always takes
//! an explicit seed, so every report is reproducible bit-for-bit.

pub mod error;
pub mod gmetric;
pub mod linalg;
pub mod sequence;
pub mod space;
pub mod spaces;
pub mod solvers;
pub mod topology;
pub mod vector;
pub mod verify;

mod sampling;

pub use error::{Error, Result};
pub use gmetric::GMetric;
pub use linalg::Matrix;
pub use sequence::{cauchy_residual, convergence_residual, CauchyMode, SequenceWindow};
pub use space::{tolerance, GNormSpace, PExponent, SpaceKind, TOL_BASE};
pub use spaces::{
    grid_nodes, make_grid_space, make_max_candidate, make_rho_oracle, make_sum_space, SpaceSpec,
};
pub use solvers::{
    contraction_estimate, expansive_solve, fixed_point_residual, jungck_solve, picard_solve,
    ContractionInfo, IterationTrace, Mapping, SolveConfig, SolveReport,
};
pub use topology::{
    ball_contains, ball_sample, closure_probe, convex_combination_probe, membership_value,
    scaling_check, witness_radius, Ball, BallSample, ClosureVerdict, SeparationCertificate,
};
pub use vector::Vector;
pub use verify::{
    axiom_violation, boundedness_estimate, check_continuity, check_derived_gmetric,
    check_dg_metric, check_gmetric_axioms, check_gnorm_axioms, check_reverse_inequality,
    commutativity_residual, counterexample_search, counterexample_search_gmetric,
    gmetric_axiom_violation, shrink_counterexample, AxiomId, AxiomReport, Counterexample,
};
