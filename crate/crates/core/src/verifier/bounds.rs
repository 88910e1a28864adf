use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{NanoError, Result};

/// Largest size for which every instance is enumerated.
pub const MAX_EXHAUSTIVE_SIZE: usize = 4;
/// Largest universe the verifier will build catalogs for (nano-derived mode).
pub const MAX_VERIFIER_SIZE: usize = 5;
/// Largest universe for which every topology is enumerated (explicit mode).
pub const MAX_EXPLICIT_SIZE: usize = 4;

/// Which spaces the verifier draws instances from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceMode {
    /// Every (partition, subset) pair.
    Nano,
    /// Every topology.
    Explicit,
    /// Nano-derived spaces followed by all topologies.
    Both,
}

impl SpaceMode {
    pub fn includes_nano(self) -> bool {
        matches!(self, SpaceMode::Nano | SpaceMode::Both)
    }

    pub fn includes_explicit(self) -> bool {
        matches!(self, SpaceMode::Explicit | SpaceMode::Both)
    }
}

impl fmt::Display for SpaceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpaceMode::Nano => "nano",
            SpaceMode::Explicit => "explicit",
            SpaceMode::Both => "both",
        })
    }
}

impl FromStr for SpaceMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "nano" => Ok(SpaceMode::Nano),
            "explicit" => Ok(SpaceMode::Explicit),
            "both" => Ok(SpaceMode::Both),
            other => Err(format!(
                "unknown space mode `{other}` (expected nano, explicit or both)"
            )),
        }
    }
}

/// Which instances a verification run covers.
///
/// Instances whose universes all have at most `exhaustive_size` points are
/// enumerated completely. Up to `max_size`, a further `samples` instances are
/// drawn from a generator seeded with `seed`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InstanceBounds {
    pub max_size: usize,
    pub exhaustive_size: usize,
    pub samples: usize,
    pub seed: u64,
    pub mode: SpaceMode,
}

impl InstanceBounds {
    pub const DEFAULT_SAMPLES: usize = 100_000;
    pub const DEFAULT_SEED: u64 = 0x5eed;

    /// Exhaustive up to `min(max_size, 4)`, default sampling beyond.
    pub fn new(max_size: usize, mode: SpaceMode) -> Self {
        InstanceBounds {
            max_size,
            exhaustive_size: max_size.min(MAX_EXHAUSTIVE_SIZE),
            samples: Self::DEFAULT_SAMPLES,
            seed: Self::DEFAULT_SEED,
            mode,
        }
    }

    pub fn with_exhaustive_size(mut self, size: usize) -> Self {
        self.exhaustive_size = size;
        self
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let limit = if self.mode.includes_explicit() {
            MAX_EXPLICIT_SIZE
        } else {
            MAX_VERIFIER_SIZE
        };
        if self.max_size == 0 || self.max_size > limit {
            return Err(NanoError::InvalidBounds(format!(
                "max size {} outside 1..={limit} for {} mode",
                self.max_size, self.mode
            )));
        }
        if self.exhaustive_size > MAX_EXHAUSTIVE_SIZE {
            return Err(NanoError::InvalidBounds(format!(
                "exhaustive size {} exceeds {MAX_EXHAUSTIVE_SIZE}",
                self.exhaustive_size
            )));
        }
        if self.exhaustive_size > self.max_size {
            return Err(NanoError::InvalidBounds(format!(
                "exhaustive size {} exceeds max size {}",
                self.exhaustive_size, self.max_size
            )));
        }
        Ok(())
    }
}
