use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::population::{AlgorithmConfig, Objective};
use crate::trace::RunResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    De,
    CluDe,
}

impl Algorithm {
    pub const ALL: [Algorithm; 2] = [Algorithm::De, Algorithm::CluDe];

    pub fn id(self) -> &'static str {
        match self {
            Algorithm::De => "de",
            Algorithm::CluDe => "clu_de",
        }
    }

    /// Stable numeric code, used when deriving per-run seeds.
    pub fn code(self) -> u64 {
        match self {
            Algorithm::De => 0,
            Algorithm::CluDe => 1,
        }
    }

    pub fn run<O: Objective + ?Sized>(self, f: &O, config: &AlgorithmConfig) -> Result<RunResult> {
        match self {
            Algorithm::De => crate::de::run_de(f, config),
            Algorithm::CluDe => crate::clu_de::run_clu_de(f, config),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "de" => Ok(Algorithm::De),
            "clu_de" | "clu-de" | "clude" => Ok(Algorithm::CluDe),
            other => Err(Error::Config(format!("unknown algorithm `{other}`"))),
        }
    }
}
