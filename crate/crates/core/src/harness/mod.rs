//! Experiment harness: corpus, relation matrix, configurable runs and
//! program descriptions.

use serde::{Deserialize, Serialize};

pub mod config;
pub mod corpus;
pub mod describe;
pub mod matrix;

/// Resource bounds shared by every driver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Bounds {
    pub horizon: u64,
    /// Decision checks cover `[0, m)` plus the finite part of the language.
    pub m: u64,
    pub budget: u64,
    pub seed: u64,
    /// Clamp on the step bound `t` inside the Psd transformations.
    pub t_cap: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { horizon: 24, m: 16, budget: 1_000_000, seed: 0, t_cap: crate::transforms::DEFAULT_T_CAP }
    }
}
