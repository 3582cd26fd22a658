use patchflow_core::analysis::{vasin_profile, ProbeSet, VasinProfile};
use patchflow_core::field::SECOND_GRAD_RESOLUTION;
use patchflow_core::geometry::make_bump_contour;

use super::{Checks, Options};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::Table;

pub const HEADER: [&str; 3] = ["d", "m", "product"];

#[derive(Debug)]
pub struct VasinReport {
    pub profile: VasinProfile,
    pub n_markers: usize,
}

/// Smallest power of two `N` with `N d_min >= 10`.
pub fn auto_markers(d_min: f64) -> usize {
    ((SECOND_GRAD_RESOLUTION / d_min).ceil() as usize).next_power_of_two()
}

/// Second-derivative profile `m(d)` at the apex of the `|s|^(1 + gamma)`
/// bump, written to `vasin.csv`.
///
/// `--assert` checks the log-log slope against `min_slope` and the product
/// spread against `max_product_ratio`.
pub fn run(cfg: &RunConfig, opts: &Options) -> Result<VasinReport, CliError> {
    let n = if cfg.vasin_markers > 0 { cfg.vasin_markers } else { auto_markers(cfg.d_min) };
    let c = make_bump_contour(cfg.gamma, cfg.bump_amplitude, n)?;
    let d = cfg.distances();
    let profile = vasin_profile(&c, &cfg.kernel_spec(), cfg.gamma, &d, &ProbeSet::Uniform(cfg.vasin_probes))?;
    let mut t = Table::create(&opts.out.join("vasin.csv"), &HEADER)?;
    for ((d, m), p) in profile.distances.iter().zip(&profile.m).zip(profile.products()) {
        t.numbers(&[*d, *m, p])?;
    }
    t.finish()?;

    let mut checks = Checks::default();
    checks.at_least("log-log slope", profile.slope(), cfg.min_slope);
    checks.at_most("product ratio", profile.product_ratio(), cfg.max_product_ratio);
    checks.finish(opts.assert)?;
    Ok(VasinReport { profile, n_markers: n })
}
