//! JSON run configuration: which space, which command, which mappings, and
//! where the report goes.

use serde::{Deserialize, Serialize};

use gnorm::{Error, Mapping, Matrix, Result, SolveConfig, SpaceSpec, Vector};

/// Top-level config document.
///
/// `command` must match the CLI subcommand; sections irrelevant to a
/// command may be omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub space: SpaceSpec,
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mapping: Option<MappingSpec>,
    /// Second mapping of a common-fixed-point run (the one inverted).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mapping_s: Option<MappingSpec>,
    /// Relative contraction factor for `jungck`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sampling: Option<SamplingSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ball: Option<BallSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    CheckAxioms,
    CheckGmetric,
    Solve,
    EstimateK,
    BallSample,
    Jungck,
    Expansive,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::CheckAxioms => "check-axioms",
            Command::CheckGmetric => "check-gmetric",
            Command::Solve => "solve",
            Command::EstimateK => "estimate-k",
            Command::BallSample => "ball-sample",
            Command::Jungck => "jungck",
            Command::Expansive => "expansive",
        }
    }
}

/// A mapping, spelled either as an explicit affine pair or as one of the
/// named test recipes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MappingSpec {
    /// `x -> matrix * x + offset`; `matrix` is row-major.
    Affine {
        matrix: Vec<Vec<f64>>,
        offset: Vec<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        q: Option<f64>,
    },
    /// A built-in recipe instantiated at the space's dimension.
    Named { name: String },
}

impl MappingSpec {
    /// Builds the mapping for a space of dimension `dim`.
    pub fn build(&self, dim: usize) -> Result<Mapping> {
        match self {
            MappingSpec::Affine { matrix, offset, k, q } => {
                let matrix = Matrix::from_rows(matrix)?;
                if matrix.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: matrix.dim(),
                    });
                }
                let mut map = Mapping::affine(matrix, Vector::new(offset.clone())?)?;
                if let Some(k) = k {
                    map = map.with_contraction_constant(*k);
                }
                if let Some(q) = q {
                    map = map.with_expansion_constant(*q);
                }
                Ok(map)
            }
            MappingSpec::Named { name } => named_mapping(name, dim),
        }
    }
}

/// Built-in mapping recipes, instantiated at the space dimension.
fn named_mapping(name: &str, dim: usize) -> Result<Mapping> {
    let ones = Vector::new(vec![1.0; dim])?;
    match name {
        "identity" => Mapping::affine(Matrix::identity(dim), Vector::zeros(dim)),
        // x/2 + 1: the classic contraction with fixed point 2 in each
        // coordinate.
        "halving_shift" => Ok(Mapping::affine(Matrix::scaled_identity(dim, 0.5), ones)?
            .with_contraction_constant(0.5)),
        // 2x - 2: the inverse of halving_shift; commutes with it.
        "doubling_shift" => Ok(Mapping::affine(
            Matrix::scaled_identity(dim, 2.0),
            ones.scale(-2.0),
        )?),
        "tripling" => Ok(Mapping::affine(
            Matrix::scaled_identity(dim, 3.0),
            Vector::zeros(dim),
        )?
        .with_expansion_constant(3.0)),
        // 3x - 4: expansive with fixed point 2.
        "tripling_shift" => Ok(Mapping::affine(
            Matrix::scaled_identity(dim, 3.0),
            ones.scale(-4.0),
        )?
        .with_expansion_constant(3.0)),
        // Rotation by 90 degrees combined with scaling by 3; dim 2 only.
        "rotation_scale" => {
            if dim != 2 {
                return Err(Error::InvalidParameter {
                    name: "mapping",
                    reason: format!("rotation_scale needs a 2-dimensional space, got {dim}"),
                });
            }
            Ok(Mapping::affine(
                Matrix::from_rows(&[vec![0.0, -3.0], vec![3.0, 0.0]])?,
                Vector::zeros(2),
            )?
            .with_expansion_constant(3.0))
        }
        other => Err(Error::InvalidParameter {
            name: "mapping",
            reason: format!(
                "unknown named mapping \"{other}\" (known: identity, halving_shift, \
                 doubling_shift, tripling, tripling_shift, rotation_scale)"
            ),
        }),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSpec {
    pub tol: f64,
    pub max_iter: usize,
    pub x0: Vec<f64>,
}

impl SolverSpec {
    pub fn build(&self) -> Result<SolveConfig> {
        SolveConfig::new(self.tol, self.max_iter, Vector::new(self.x0.clone())?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplingSpec {
    #[serde(default = "default_n_samples")]
    pub n_samples: usize,
    #[serde(default)]
    pub seed: u64,
}

impl Default for SamplingSpec {
    fn default() -> Self {
        SamplingSpec {
            n_samples: default_n_samples(),
            seed: 0,
        }
    }
}

fn default_n_samples() -> usize {
    10_000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BallSpec {
    pub center: Vec<f64>,
    pub anchor: Vec<f64>,
    pub radius: f64,
    #[serde(default)]
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<std::path::PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}
