//! JSON input documents, one per subcommand. Unknown fields are rejected.

use coxring_core::toric::Fan;
use coxring_core::MultiDegree;
use serde::Deserialize;

/// A coordinate written as a JSON integer or an exact rational string
/// such as `"-3/7"`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Int(i64),
    Text(String),
}

impl Coord {
    pub fn as_text(&self) -> String {
        match self {
            Coord::Int(v) => v.to_string(),
            Coord::Text(s) => s.clone(),
        }
    }
}

/// Either explicit points or `general: m` pseudo-random points drawn from
/// the `--seed`.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointsInput {
    pub r: usize,
    #[serde(default)]
    pub points: Option<Vec<Vec<Coord>>>,
    #[serde(default)]
    pub general: Option<usize>,
    #[serde(default)]
    pub forms: Option<Vec<String>>,
    #[serde(default)]
    pub multidegree: Option<MultiDegree>,
    #[serde(default)]
    pub divisor: Option<MultiDegree>,
    #[serde(default)]
    pub n_max: Option<u32>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FanInput {
    Bundled { bundled: String },
    Explicit(Fan),
}

impl FanInput {
    pub fn resolve(self) -> coxring_core::Result<Fan> {
        match self {
            FanInput::Bundled { bundled } => Fan::bundled(&bundled),
            FanInput::Explicit(f) => Ok(f),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricDimInput {
    pub fan: FanInput,
    pub divisors: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientInput {
    pub generators: Vec<String>,
    #[serde(default)]
    pub relations: Vec<Vec<i64>>,
    pub quotient_by: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderInput {
    Grevlex,
    Lex,
    Weighted(Vec<u32>),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GbInput {
    #[serde(default)]
    pub vars: Option<Vec<String>>,
    #[serde(default)]
    pub nvars: Option<usize>,
    #[serde(default)]
    pub order: Option<OrderInput>,
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectInput {
    #[serde(default)]
    pub vars: Option<Vec<String>>,
    #[serde(default)]
    pub nvars: Option<usize>,
    pub ideals: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveInput {
    pub weights: [u32; 3],
    #[serde(default)]
    pub n: Option<u32>,
    #[serde(default)]
    pub n_max: Option<u32>,
}
