use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::failure::Failure;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub f: Option<String>,
    pub phi: Option<String>,
    pub x0: Option<f64>,
    pub steps: Option<usize>,
    pub x_domain: Option<[f64; 2]>,
    pub y_domain: Option<[f64; 2]>,
    #[serde(default)]
    pub analysis: AnalysisOptions,
    #[serde(default)]
    pub render: RenderOptions,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisOptions {
    pub min_run: Option<usize>,
    pub retrace_threshold: Option<f64>,
    pub max_period: Option<usize>,
    pub burn_in: Option<usize>,
    pub grid: Option<usize>,
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenderOptions {
    pub width: Option<u32>,
    pub height: Option<u32>,
    pub margin: Option<u32>,
    pub curve_samples: Option<usize>,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Scenario, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::io(format!("cannot read scenario {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Failure::parse(format!("scenario {}: {e}", path.display())))
    }
}
