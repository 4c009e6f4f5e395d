//! Experiment descriptions and their TOML form.
//!
//! ```toml
//! model = "zwindow:100:50"
//! set = "multiples(2)"
//! seed = 0
//! out = "json"
//!
//! [operation]
//! op = "density"
//! n = 10
//! ```

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use sumcore::{rational, ModelDesc, Rational, SetSpec};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(with = "text")]
    pub model: ModelDesc,
    #[serde(with = "text")]
    pub set: SetSpec,
    #[serde(default, with = "seed")]
    pub seed: u64,
    #[serde(default)]
    pub out: OutFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    pub operation: Operation,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OutFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Exact,
    Heuristic,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ScorerName {
    #[default]
    PoolSize,
    DensityWeighted,
    /// Seeded by the experiment seed.
    Random,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    #[default]
    Intervals,
    Aps,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum SetEncoding {
    #[default]
    Rle,
    Plain,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Operation {
    Gen {
        #[serde(default)]
        encoding: SetEncoding,
    },
    Density {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        schedule: Option<Vec<usize>>,
        #[serde(default)]
        lower: bool,
    },
    FindPoint {
        #[serde(with = "rational::serde_pq")]
        alpha: Rational,
        horizon: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        start: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        end: Option<usize>,
    },
    Ladder {
        k_max: usize,
    },
    Witness {
        k: usize,
        #[serde(default)]
        mode: Mode,
    },
    Triangular {
        m: usize,
        #[serde(default)]
        mode: Mode,
        #[serde(default)]
        scorer: ScorerName,
    },
    Upgrade {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        witness: Option<PathBuf>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        m: Option<usize>,
    },
    Defwitness {
        #[serde(default)]
        family: FamilyName,
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        step_max: Option<usize>,
    },
    Growth {
        k_max: usize,
        #[serde(default)]
        mode: Mode,
    },
    Syndetic {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        core: Option<(usize, usize)>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shifts: Option<(i64, i64)>,
        #[serde(default = "default_t_max")]
        t_max: usize,
        #[serde(default)]
        mode: Mode,
    },
}

pub const DEFAULT_T_MAX: usize = 64;

fn default_t_max() -> usize {
    DEFAULT_T_MAX
}

impl Operation {
    /// Report `kind`, equal to the subcommand name.
    pub fn kind(&self) -> &'static str {
        match self {
            Operation::Gen { .. } => "gen",
            Operation::Density { .. } => "density",
            Operation::FindPoint { .. } => "find-point",
            Operation::Ladder { .. } => "ladder",
            Operation::Witness { .. } => "witness",
            Operation::Triangular { .. } => "triangular",
            Operation::Upgrade { .. } => "upgrade",
            Operation::Defwitness { .. } => "defwitness",
            Operation::Growth { .. } => "growth",
            Operation::Syndetic { .. } => "syndetic",
        }
    }

    fn tabular(&self) -> bool {
        matches!(self, Operation::Growth { .. } | Operation::Density { schedule: Some(_), .. })
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| CliError::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| CliError::Config(e.to_string()))
    }

    /// Checks that do not need the model or the set.
    pub fn validate(&self) -> Result<()> {
        if self.out == OutFormat::Csv && !self.operation.tabular() {
            return Err(CliError::CsvUnsupported);
        }
        if self.budget.is_some_and(|b| b > i64::MAX as u64) {
            return Err(CliError::Config("budget exceeds 2^63 - 1".into()));
        }
        match &self.operation {
            Operation::Density { n, schedule, .. } if n.is_some() == schedule.is_some() => {
                return Err(CliError::Config("density needs exactly one of n or schedule".into()));
            }
            Operation::Upgrade { witness, m } if witness.is_some() == m.is_some() => {
                return Err(CliError::Config("upgrade needs exactly one of witness or m".into()));
            }
            _ => {}
        }
        Ok(())
    }
}

/// Display/FromStr as a TOML or JSON string.
mod text {
    use super::*;

    pub fn serialize<T: fmt::Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: fmt::Display,
        D: Deserializer<'de>,
    {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

/// TOML integers are signed 64-bit; larger seeds travel as strings.
mod seed {
    use super::*;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(u64),
        Text(String),
    }

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(*v) {
            Ok(_) => s.serialize_u64(*v),
            Err(_) => s.collect_str(v),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(v),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config() {
        let cfg = ExperimentConfig::from_toml(
            "model = \"zwindow:100:50\"\nset = \"multiples(2)\"\n[operation]\nop = \"density\"\nn = 10\n",
        )
        .unwrap();
        assert_eq!(cfg.seed, 0);
        assert_eq!(cfg.operation, Operation::Density { n: Some(10), schedule: None, lower: false });
    }

    #[test]
    fn big_seed_round_trips() {
        let cfg = ExperimentConfig {
            model: "cyclic:6".parse().unwrap(),
            set: "pow2".parse().unwrap(),
            seed: u64::MAX,
            out: OutFormat::Json,
            budget: None,
            operation: Operation::Ladder { k_max: 3 },
        };
        let text = cfg.to_toml().unwrap();
        assert_eq!(ExperimentConfig::from_toml(&text).unwrap(), cfg);
    }

    #[test]
    fn csv_only_for_tables() {
        let text = "model = \"zwindow:100:50\"\nset = \"pow2\"\nout = \"csv\"\n[operation]\nop = \"witness\"\nk = 2\n";
        assert!(matches!(ExperimentConfig::from_toml(text), Err(CliError::CsvUnsupported)));
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = "model = \"zwindow:100:50\"\nset = \"pow2\"\ncolour = 1\n[operation]\nop = \"ladder\"\nk_max = 2\n";
        assert!(ExperimentConfig::from_toml(text).is_err());
    }
}
