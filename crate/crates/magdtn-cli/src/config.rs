//! JSON run configuration (schema v1). Unknown keys are rejected.

use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: String,
    #[serde(default)]
    pub domain: Option<DomainConfig>,
    #[serde(default)]
    pub field: Option<FieldConfig>,
    #[serde(default)]
    pub b: Option<BSpec>,
    #[serde(default)]
    pub discretization: Option<Discretization>,
    #[serde(default)]
    pub output: Option<String>,
    #[serde(default)]
    pub tolerances: Option<Tolerances>,
    #[serde(default)]
    pub workers: Option<usize>,
    /// Input CSV for `compare`.
    #[serde(default)]
    pub input: Option<String>,
    /// Expansion selector for `compare`.
    #[serde(default)]
    pub expansion: Option<ExpansionConfig>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainConfig {
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "lowercase")]
pub enum FieldConfig {
    Constant,
    Radial { beta_poly: Vec<f64> },
    /// Accepted by the schema; only constructible through the library API.
    Custom,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum BSpec {
    List(Vec<f64>),
    Range { from: f64, to: f64, count: usize, #[serde(default)] geometric: bool },
}

impl BSpec {
    pub fn values(&self) -> Vec<f64> {
        match self {
            BSpec::List(v) => v.clone(),
            BSpec::Range { from, to, count, geometric } => {
                let n = (*count).max(2);
                (0..n)
                    .map(|i| {
                        let t = i as f64 / (n - 1) as f64;
                        if *geometric {
                            from * (to / from).powf(t)
                        } else {
                            from + (to - from) * t
                        }
                    })
                    .collect()
            }
        }
    }
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Discretization {
    #[serde(default)]
    pub h: Option<f64>,
    #[serde(default)]
    pub l: Option<f64>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub count: Option<usize>,
    #[serde(default)]
    pub mode_window: Option<i64>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Slack factor for comparison verdicts (default 1.5).
    #[serde(default)]
    pub compare_slack: Option<f64>,
    /// Expected remainder exponent override for `compare`.
    #[serde(default)]
    pub remainder_exponent: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "snake_case")]
pub enum ExpansionConfig {
    TwoTerm2d { kappa_max: f64 },
    LeadingVariable2d { min_boundary_field: f64 },
    WeakField { coefficient: f64 },
    SplittingGap { k2: f64 },
}
