//! Constructors for the built-in G-normed spaces and reference objects.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gmetric::GMetric;
use crate::space::{GNormSpace, PExponent, SpaceKind};

/// Builds the sum-of-p-norms space on R^dim:
/// `||x,y,z|| = ||x||_p + ||y||_p + ||z||_p`.
///
/// `p = 2` is the classical sum-Euclidean instance; any `p >= 1` (including
/// `f64::INFINITY`) keeps all five axioms.
pub fn make_sum_space(dim: usize, p: f64) -> Result<GNormSpace> {
    let p = PExponent::new(p)?;
    GNormSpace::from_parts(SpaceKind::SumPNorm { p }, dim)
}

/// Builds the grid-function space: vectors hold samples at `grid_size`
/// uniform nodes over `[0,1]` and
/// `||f,g,h|| = max_i (|f(t_i)| + |g(t_i)| + |h(t_i)|)`.
///
/// The max over grid nodes is a lower bound of the true supremum over
/// `[0,1]`.
pub fn make_grid_space(grid_size: usize) -> Result<GNormSpace> {
    if grid_size < 2 {
        return Err(Error::invalid("grid_size", "must be >= 2"));
    }
    GNormSpace::from_parts(SpaceKind::GridMaxSum, grid_size)
}

/// Uniform grid nodes `t_i = i / (grid_size - 1)` used by the grid space.
pub fn grid_nodes(grid_size: usize) -> Vec<f64> {
    (0..grid_size)
        .map(|i| i as f64 / (grid_size - 1) as f64)
        .collect()
}

/// The independent G-metric reference on the real line:
/// `rho(x,y,z) = max(|x-y|, |y-z|, |z-x|)`.
pub fn make_rho_oracle() -> GMetric {
    GMetric::rho_oracle()
}

/// A known-invalid candidate, `(x,y,z) -> max(||x||, ||y||, ||z||)`.
///
/// Satisfies N1-N4 but violates the merge inequality N5 (take x = y != 0,
/// z = 0: the left side is ||x|| while the right is 2||x||). Shipped so the
/// counterexample search has a genuine violator to find.
pub fn make_max_candidate(dim: usize) -> Result<GNormSpace> {
    GNormSpace::from_parts(SpaceKind::MaxCandidate, dim)
}

/// Serializable description of a built-in space; the CLI's JSON configs
/// deserialize into this.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpaceSpec {
    /// `{"kind": "sum_pnorm", "dim": 2, "p": 2.0}` (`"p": "inf"` for the max norm)
    SumPnorm {
        dim: usize,
        #[serde(with = "p_serde")]
        p: f64,
    },
    /// `{"kind": "grid_maxsum", "grid_size": 101}`
    GridMaxsum { grid_size: usize },
    /// `{"kind": "max_candidate", "dim": 1}`
    MaxCandidate { dim: usize },
}

impl SpaceSpec {
    pub fn build(&self) -> Result<GNormSpace> {
        match *self {
            SpaceSpec::SumPnorm { dim, p } => make_sum_space(dim, p),
            SpaceSpec::GridMaxsum { grid_size } => make_grid_space(grid_size),
            SpaceSpec::MaxCandidate { dim } => make_max_candidate(dim),
        }
    }
}

/// JSON has no infinity literal, so `p` round-trips as either a number or
/// the string `"inf"`.
mod p_serde {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(p: &f64, ser: S) -> Result<S::Ok, S::Error> {
        if p.is_infinite() {
            ser.serialize_str("inf")
        } else {
            ser.serialize_f64(*p)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<f64, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Text(String),
        }
        match Raw::deserialize(de)? {
            Raw::Number(p) => Ok(p),
            Raw::Text(s) if s == "inf" => Ok(f64::INFINITY),
            Raw::Text(s) => Err(D::Error::custom(format!(
                "p must be a number or \"inf\", got \"{s}\""
            ))),
        }
    }
}
