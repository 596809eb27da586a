//! The registry of verification checks, one submodule per suite.
//!
//! Each submodule exposes its metrics as plain functions so that tests can call
//! them with their own parameters, plus a `register` function that binds them
//! to a [`SuiteConfig`].

pub mod core;
pub mod deform;
pub mod projectors;
pub mod quantize;
pub mod symbols;
pub mod toeplitz;

use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::config::{Suite, SuiteConfig};
use super::report::Comparison;
use crate::error::Result;

pub type CheckRng = ChaCha8Rng;
type Runner = Box<dyn Fn(&mut CheckRng) -> Result<f64> + Send + Sync>;

pub struct CheckDef {
    pub id: &'static str,
    pub anchor: &'static str,
    pub params: Value,
    pub tol: f64,
    pub comparison: Comparison,
    pub run: Runner,
}

impl CheckDef {
    pub fn at_most(
        id: &'static str,
        anchor: &'static str,
        params: Value,
        tol: f64,
        run: impl Fn(&mut CheckRng) -> Result<f64> + Send + Sync + 'static,
    ) -> Self {
        Self {
            id,
            anchor,
            params,
            tol,
            comparison: Comparison::AtMost,
            run: Box::new(run),
        }
    }

    pub fn at_least(
        id: &'static str,
        anchor: &'static str,
        params: Value,
        tol: f64,
        run: impl Fn(&mut CheckRng) -> Result<f64> + Send + Sync + 'static,
    ) -> Self {
        Self {
            comparison: Comparison::AtLeast,
            ..Self::at_most(id, anchor, params, tol, run)
        }
    }
}

pub fn register(suite: Suite, cfg: &SuiteConfig) -> Vec<CheckDef> {
    match suite {
        Suite::Core => core::register(cfg),
        Suite::Symbols => symbols::register(cfg),
        Suite::Quantize => quantize::register(cfg),
        Suite::Projectors => projectors::register(cfg),
        Suite::Deform => deform::register(cfg),
        Suite::Toeplitz => toeplitz::register(cfg),
        Suite::All => Suite::CONCRETE.iter().flat_map(|&s| register(s, cfg)).collect(),
    }
}

/// Largest value produced over an iterator of fallible metrics.
pub(crate) fn max_of<I: IntoIterator<Item = Result<f64>>>(it: I) -> Result<f64> {
    it.into_iter().try_fold(0.0_f64, |m, x| Ok(m.max(x?)))
}
