//! Run configuration shared by the command-line subcommands.
//!
//! Defaults are overridden by a TOML file (given with `--config` or the
//! `PRIVARG_CONFIG` environment variable), which command-line flags override
//! in turn.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::agent::{personalize, PrivacyBehavior, UserProfile, UserType};
use crate::dataset::{toml_error, GenParams};
use crate::dispute::AgentSpec;
use crate::error::{Error, Result};
use crate::experiment::ScaleConfig;

pub const CONFIG_ENV: &str = "PRIVARG_CONFIG";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalePreset {
    #[default]
    Desk,
    Full,
    Custom,
}

impl std::str::FromStr for ScalePreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "desk" => Ok(ScalePreset::Desk),
            "full" => Ok(ScalePreset::Full),
            "custom" => Ok(ScalePreset::Custom),
            _ => Err(Error::invalid(format!(
                "unknown scale `{s}` (desk, full or custom)"
            ))),
        }
    }
}

/// Scale section: a preset plus the fields a custom scale uses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScaleSection {
    pub preset: ScalePreset,
    pub cases: Option<usize>,
    pub grid_stride: usize,
    pub include_self_play: bool,
}

impl Default for ScaleSection {
    fn default() -> Self {
        ScaleSection {
            preset: ScalePreset::Desk,
            cases: None,
            grid_stride: 1,
            include_self_play: true,
        }
    }
}

impl ScaleSection {
    /// Concrete scale for `experiment`. Presets fix the case count and grid
    /// stride; the self-play flag always applies.
    pub fn resolve(&self, experiment: u64) -> ScaleConfig {
        let base = match self.preset {
            ScalePreset::Desk => ScaleConfig::desk(experiment),
            ScalePreset::Full => ScaleConfig::full(),
            ScalePreset::Custom => ScaleConfig {
                cases: self.cases,
                grid_stride: self.grid_stride,
                include_self_play: true,
            },
        };
        ScaleConfig {
            include_self_play: self.include_self_play,
            ..base
        }
    }
}

/// A named agent that teams can refer to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentDecl {
    pub name: String,
    /// `scope:division:theta`, e.g. `shortest:all_args:50`.
    pub behavior: Option<String>,
    /// A user type whose personalized behavior the agent adopts.
    pub user_type: Option<UserType>,
    pub kb_index: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputSection {
    pub dataset: PathBuf,
    pub results_dir: PathBuf,
}

impl Default for OutputSection {
    fn default() -> Self {
        OutputSection {
            dataset: PathBuf::from("dataset.toml"),
            results_dir: PathBuf::from("results"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub master_seed: u64,
    /// Worker threads; 0 uses the available parallelism.
    pub workers: usize,
    /// Generator settings. Its seed defaults to the master seed.
    pub generator: GeneratorSection,
    pub scale: ScaleSection,
    pub output: OutputSection,
    pub agents: Vec<AgentDecl>,
}

/// Generator parameters with an optional seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GeneratorSection {
    pub dispute_amount: usize,
    pub dispute_size: usize,
    pub max_argument_size: usize,
    pub max_branches: usize,
    pub seed: Option<u64>,
    pub ordinary_ratio: f64,
    pub defeasible_ratio: f64,
}

impl Default for GeneratorSection {
    fn default() -> Self {
        let d = GenParams::default();
        GeneratorSection {
            dispute_amount: d.dispute_amount,
            dispute_size: d.dispute_size,
            max_argument_size: d.max_argument_size,
            max_branches: d.max_branches,
            seed: None,
            ordinary_ratio: d.ordinary_ratio,
            defeasible_ratio: d.defeasible_ratio,
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| toml_error(text, e))?;
        for a in &cfg.agents {
            cfg.agent_behavior(a)?;
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("cannot read config {}: {e}", path.display())))?;
        RunConfig::parse(&text)
    }

    /// The explicit path if given, else `PRIVARG_CONFIG`, else defaults.
    pub fn resolve(explicit: Option<&Path>) -> Result<Self> {
        match explicit {
            Some(p) => RunConfig::load(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => RunConfig::load(Path::new(&p)),
                _ => Ok(RunConfig::default()),
            },
        }
    }

    pub fn gen_params(&self) -> GenParams {
        let g = &self.generator;
        GenParams {
            dispute_amount: g.dispute_amount,
            dispute_size: g.dispute_size,
            max_argument_size: g.max_argument_size,
            max_branches: g.max_branches,
            seed: g.seed.unwrap_or(self.master_seed),
            ordinary_ratio: g.ordinary_ratio,
            defeasible_ratio: g.defeasible_ratio,
        }
    }

    pub fn scale_for(&self, experiment: u64) -> ScaleConfig {
        self.scale.resolve(experiment)
    }

    fn agent_behavior(&self, a: &AgentDecl) -> Result<PrivacyBehavior> {
        match (&a.behavior, a.user_type) {
            (Some(b), None) => b
                .parse()
                .map_err(|e: Error| Error::invalid(format!("agent `{}`: {e}", a.name))),
            (None, Some(t)) => Ok(personalize(&UserProfile::of_type(t))),
            _ => Err(Error::invalid(format!(
                "agent `{}` needs exactly one of `behavior` or `user_type`",
                a.name
            ))),
        }
    }

    /// Resolves an agent reference: a declared name, `indifferent`, a user
    /// type name, or a literal `scope:division:theta` behavior.
    pub fn agent(&self, name: &str) -> Result<AgentSpec> {
        if let Some(a) = self.agents.iter().find(|a| a.name == name) {
            let mut spec = AgentSpec::new(name, self.agent_behavior(a)?);
            spec.kb_index = a.kb_index;
            return Ok(spec);
        }
        let behavior = if name == "indifferent" {
            PrivacyBehavior::INDIFFERENT
        } else if let Ok(t) = name.parse::<UserType>() {
            personalize(&UserProfile::of_type(t))
        } else {
            name.parse().map_err(|_| {
                Error::invalid(format!(
                    "unknown agent `{name}`: not declared, not a user type, not scope:division:theta"
                ))
            })?
        };
        Ok(AgentSpec::new(name, behavior))
    }
}
