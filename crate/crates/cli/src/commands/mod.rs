//! One module per subcommand. Each `run` writes its artifacts under the
//! output directory and returns the computed data.

pub mod commutator;
pub mod compare;
pub mod ellipse_ode;
pub mod field;
pub mod pv;
pub mod simulate;
pub mod vasin;

use std::path::PathBuf;

use crate::config::KernelName;
use crate::error::CliError;

/// Flags shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Options {
    pub out: PathBuf,
    pub assert: bool,
}

pub(crate) fn kernel_label(k: KernelName) -> &'static str {
    match k {
        KernelName::Cauchy => "cauchy",
        KernelName::Euler => "euler",
        KernelName::Aggregation => "aggregation",
        KernelName::LinearMap => "linear-map",
    }
}

/// Largest `|x_i - x_0|`, divided by `|x_0|` when `relative`.
pub(crate) fn drift(values: impl IntoIterator<Item = f64>, relative: bool) -> f64 {
    let mut it = values.into_iter();
    let Some(x0) = it.next() else { return 0.0 };
    let scale = if relative { x0.abs() } else { 1.0 };
    it.map(|x| (x - x0).abs() / scale).fold(0.0, f64::max)
}

/// Collects failed checks into one assertion error.
#[derive(Debug, Default)]
pub(crate) struct Checks(Vec<String>);

impl Checks {
    pub fn bound(&mut self, what: &str, value: f64, limit: Option<f64>) {
        if let Some(limit) = limit {
            self.at_most(what, value, limit);
        }
    }

    pub fn at_most(&mut self, what: &str, value: f64, limit: f64) {
        if !(value <= limit) {
            self.0.push(format!("{what} = {value:e} exceeds {limit:e}"));
        }
    }

    pub fn at_least(&mut self, what: &str, value: f64, limit: f64) {
        if !(value >= limit) {
            self.0.push(format!("{what} = {value:e} is below {limit:e}"));
        }
    }

    pub fn holds(&mut self, what: &str, ok: bool) {
        if !ok {
            self.0.push(what.to_string());
        }
    }

    pub fn finish(self, enabled: bool) -> Result<(), CliError> {
        if enabled && !self.0.is_empty() {
            return Err(CliError::Assertion(self.0.join("; ")));
        }
        Ok(())
    }
}
