//! Replay manifests for experiments.

use serde::{Deserialize, Serialize};

/// Everything needed to rerun an experiment bit for bit. Trial `t` draws its
/// error vector from the seed `split_seed(master_seed, t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentManifest {
    pub tool_version: String,
    pub experiment: String,
    pub graph_id: String,
    /// Hex digest of the graph file, when the graph came from one.
    pub graph_sha256: Option<String>,
    pub master_seed: u64,
    pub seed_rule: String,
    pub rng: String,
    pub parameters: serde_json::Value,
}

impl ExperimentManifest {
    pub fn new(experiment: &str, graph_id: &str, master_seed: u64, parameters: serde_json::Value) -> Self {
        ExperimentManifest {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            experiment: experiment.to_string(),
            graph_id: graph_id.to_string(),
            graph_sha256: None,
            master_seed,
            seed_rule: "trial t uses the first u64 of stream t+1 of the master seed".to_string(),
            rng: "ChaCha8".to_string(),
            parameters,
        }
    }
}
