//! Run configuration: a TOML file with one table per concern, overridden by
//! command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use syndromelab_core::amend::PriorChoice;
use syndromelab_core::dynlab::DecoderKind;
use syndromelab_core::lowweight::FilterSpec;
use syndromelab_core::RelayConfig;

use crate::error::{LabError, LabResult};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub run: RunSection,
    pub scope: ScopeSection,
    pub filter: FilterSection,
    pub relay: RelaySection,
    pub dynamics: DynamicsSection,
    pub amend: AmendSection,
    pub trace: TraceSection,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunSection {
    pub model: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
}

/// Checks whose pairs are examined: the listed check groups, or every row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScopeSection {
    pub groups: Vec<usize>,
    pub all_rows: bool,
}

impl Default for ScopeSection {
    fn default() -> Self {
        Self {
            groups: vec![0],
            all_rows: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FilterSection {
    pub pair_nc: Vec<usize>,
    pub total_nc: Vec<usize>,
}

impl Default for FilterSection {
    fn default() -> Self {
        let f = FilterSpec::default();
        Self {
            pair_nc: f.pair_nc,
            total_nc: f.total_nc,
        }
    }
}

impl FilterSection {
    pub fn spec(&self) -> FilterSpec {
        FilterSpec {
            pair_nc: self.pair_nc.clone(),
            total_nc: self.total_nc.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RelaySection {
    pub max_legs: usize,
    pub iters_per_leg: usize,
    pub warmup_iters: usize,
    pub gamma_min: f64,
    pub gamma_max: f64,
    pub min_sum_scale: f64,
    pub stop_on_first_valid: bool,
    pub iteration_cap: usize,
}

impl Default for RelaySection {
    fn default() -> Self {
        let r = RelayConfig::default();
        Self {
            max_legs: r.max_legs,
            iters_per_leg: r.iters_per_leg,
            warmup_iters: r.warmup_iters,
            gamma_min: r.gamma_min,
            gamma_max: r.gamma_max,
            min_sum_scale: r.min_sum_scale,
            stop_on_first_valid: r.stop_on_first_valid,
            iteration_cap: r.global_iteration_cap,
        }
    }
}

impl RelaySection {
    pub fn relay_config(&self) -> LabResult<RelayConfig> {
        let cfg = RelayConfig {
            max_legs: self.max_legs,
            iters_per_leg: self.iters_per_leg,
            warmup_iters: self.warmup_iters,
            gamma_min: self.gamma_min,
            gamma_max: self.gamma_max,
            min_sum_scale: self.min_sum_scale,
            stop_on_first_valid: self.stop_on_first_valid,
            global_iteration_cap: self.iteration_cap,
            seed: 0,
            record_trace: false,
        };
        cfg.validate()
            .map_err(|e| LabError::usage(format!("[relay]: {e}")))?;
        Ok(cfg)
    }
}

/// Which weight-four errors an experiment decodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Population {
    /// Every constructed error.
    All,
    /// Errors passing the `[filter]` table.
    Filtered,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DynamicsSection {
    pub trials: usize,
    pub bin_width: usize,
    pub population: Population,
    pub decoder: String,
    /// Combos CSV to read instead of enumerating.
    pub combos: Option<PathBuf>,
    /// Number of leading combos whose weight-five extensions are decoded.
    pub weight5_combos: usize,
    pub weight5_limit: usize,
}

impl Default for DynamicsSection {
    fn default() -> Self {
        Self {
            trials: 50,
            bin_width: 100,
            population: Population::Filtered,
            decoder: "relay".into(),
            combos: None,
            weight5_combos: 0,
            weight5_limit: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AmendSection {
    pub fractions: Vec<f64>,
    pub decoders: Vec<String>,
    /// Constant prior for added columns; the product of source priors
    /// when absent.
    pub prior: Option<f64>,
    pub selection_seed: u64,
    pub trials: usize,
    pub population: Population,
    pub combos: Option<PathBuf>,
    /// Add the distinct column pairs of each error's decompositions instead
    /// of the errors themselves.
    pub column_pairs: bool,
}

impl Default for AmendSection {
    fn default() -> Self {
        Self {
            fractions: vec![0.0, 0.25, 0.5, 0.75, 1.0],
            decoders: vec!["relay".into(), "bp_osd".into()],
            prior: None,
            selection_seed: 0,
            trials: 50,
            population: Population::Filtered,
            combos: None,
            column_pairs: false,
        }
    }
}

impl AmendSection {
    pub fn prior_choice(&self) -> PriorChoice {
        match self.prior {
            Some(p) => PriorChoice::Constant(p),
            None => PriorChoice::ProductOfSources,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TraceSection {
    pub faults: Vec<usize>,
    pub top_k: usize,
}

impl Default for TraceSection {
    fn default() -> Self {
        Self {
            faults: Vec::new(),
            top_k: 121,
        }
    }
}

pub fn parse_decoder(name: &str) -> LabResult<DecoderKind> {
    match name {
        "relay" => Ok(DecoderKind::Relay),
        "bp_osd" | "bp-osd" => Ok(DecoderKind::BpOsd),
        other => Err(LabError::usage(format!(
            "unknown decoder {other:?}; expected relay or bp_osd"
        ))),
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> LabResult<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| LabError::usage(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| LabError::usage(format!("{}: {e}", path.display())))
    }

    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn model_path(&self) -> LabResult<&Path> {
        self.run
            .model
            .as_deref()
            .ok_or_else(|| LabError::usage("no model given (--model or [run] model)"))
    }

    pub fn out_dir(&self) -> PathBuf {
        self.run.out.clone().unwrap_or_else(|| PathBuf::from("."))
    }

    pub fn seed(&self) -> LabResult<u64> {
        self.run
            .seed
            .ok_or_else(|| LabError::usage("no seed given (--seed or [run] seed)"))
    }

    /// Hash of everything that can change outputs: the configuration with
    /// paths and thread count stripped, plus the contents of `inputs`.
    pub fn hash(&self, command: &str, inputs: &[String]) -> String {
        let mut c = self.clone();
        c.run.model = None;
        c.run.out = None;
        c.run.threads = None;
        c.dynamics.combos = None;
        c.amend.combos = None;
        let mut text = format!("command = {command:?}\n");
        text.push_str(&toml::to_string(&c).unwrap_or_default());
        for i in inputs {
            text.push_str("\ninput = ");
            text.push_str(i);
        }
        crate::io::sha256_hex(text.as_bytes())[..16].to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_gives_defaults() {
        assert_eq!(RunConfig::from_toml("").unwrap(), RunConfig::default());
    }

    #[test]
    fn sections_parse() {
        let c = RunConfig::from_toml(
            "[run]\nseed = 4\n[filter]\ntotal_nc = [6, 7, 8]\n[amend]\nprior = 0.01\n[dynamics]\npopulation = \"all\"\n",
        )
        .unwrap();
        assert_eq!(c.run.seed, Some(4));
        assert_eq!(c.filter.spec(), FilterSpec::relaxed_total());
        assert_eq!(c.amend.prior_choice(), PriorChoice::Constant(0.01));
        assert_eq!(c.dynamics.population, Population::All);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(RunConfig::from_toml("[relay]\nlegs = 3\n").is_err());
    }

    #[test]
    fn hash_ignores_paths_and_threads() {
        let a = RunConfig::default();
        let mut b = a.clone();
        b.run.threads = Some(8);
        b.run.out = Some("elsewhere".into());
        assert_eq!(a.hash("pairs", &[]), b.hash("pairs", &[]));
        b.run.seed = Some(1);
        assert_ne!(a.hash("pairs", &[]), b.hash("pairs", &[]));
        assert_ne!(a.hash("pairs", &[]), a.hash("enumerate", &[]));
    }
}
