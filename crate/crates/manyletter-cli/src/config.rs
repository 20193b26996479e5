//! TOML experiment configuration shared by all subcommands.
//!
//! Complex amplitudes are written as two-element arrays `[re, im]`.
//! Example:
//!
//! ```toml
//! probs = [0.9, 0.1]
//! n = 10
//! delta = 0.3
//! lambdas = [0.0, 1.0]
//! code_dim = 2
//! # Optional non-orthogonal letters over an orthonormal reference basis:
//! # letters = [[[1.0, 0.0], [0.0, 0.0]], [[0.7071, 0.0], [0.7071, 0.0]]]
//! ```

use anyhow::{bail, Context, Result};
use num_complex::Complex64;
use serde::Deserialize;
use std::path::Path;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    /// Letter probabilities (or the message-matrix spectrum).
    pub probs: Option<Vec<f64>>,
    /// Draw a random distribution of this size from the run seed
    /// instead of specifying `probs`.
    pub random_probs: Option<usize>,
    /// Optional letter states as `[re, im]` coordinate pairs over an
    /// orthonormal reference basis; defaults to the computational basis.
    pub letters: Option<Vec<Vec<[f64; 2]>>>,
    /// Block length / tensor power.
    pub n: Option<usize>,
    /// Typicality tolerance.
    pub delta: Option<f64>,
    /// Length distribution of a grand-canonical source.
    pub lambdas: Option<Vec<f64>>,
    /// Code alphabet dimension (default 2).
    pub code_dim: Option<usize>,
    /// Source alphabet dimension when no probabilities are needed.
    pub source_dim: Option<usize>,
    /// Symbol names for classical reports.
    pub symbols: Option<Vec<String>>,
    /// Codeword lengths for a Kraft audit.
    pub lengths: Option<Vec<f64>>,
    /// Binary codewords (strings of 0/1) for a Kraft/prefix audit.
    pub codewords: Option<Vec<String>>,
    /// Channel kind for `audit-channel`:
    /// translate | schumacher | schumacher-grand | symbol | general.
    pub channel: Option<String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("cannot parse config {}", path.display()))
    }

    pub fn probs(&self, seed: u64) -> Result<Vec<f64>> {
        if let Some(p) = &self.probs {
            return Ok(p.clone());
        }
        if let Some(k) = self.random_probs {
            if k < 2 {
                bail!("random_probs must be at least 2");
            }
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.01..1.0)).collect();
            let total: f64 = raw.iter().sum();
            return Ok(raw.into_iter().map(|w| w / total).collect());
        }
        bail!("config needs `probs` (or `random_probs`)")
    }

    pub fn letters_complex(&self) -> Option<Vec<Vec<Complex64>>> {
        self.letters.as_ref().map(|ls| {
            ls.iter()
                .map(|l| l.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
                .collect()
        })
    }

    pub fn n(&self) -> Result<usize> {
        self.n.context("config needs `n`")
    }

    pub fn delta(&self) -> Result<f64> {
        self.delta.context("config needs `delta`")
    }

    pub fn lambdas(&self) -> Result<Vec<f64>> {
        self.lambdas.clone().context("config needs `lambdas`")
    }

    pub fn code_dim(&self) -> usize {
        self.code_dim.unwrap_or(2)
    }
}
