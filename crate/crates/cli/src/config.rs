//! Run configuration: a flat TOML file. Unknown keys are rejected; every key
//! has a default, so an empty file is a valid configuration.

use serde::Deserialize;
use std::path::{Path, PathBuf};

use patchflow_core::analysis::{SolidKernel, TestField};
use patchflow_core::geometry::{load_contour, make_ellipse_contour};
use patchflow_core::{Contour, Ellipse, Integrator, KernelSpec, SimConfig};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum KernelName {
    #[default]
    Cauchy,
    Euler,
    Aggregation,
    LinearMap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum IntegratorName {
    #[default]
    Rk4,
    Heun,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum PvSetting {
    #[default]
    Boundary,
    Solid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum SolidKernelName {
    #[default]
    BeurlingReal,
    BeurlingImag,
    KernelDerivative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldName {
    Linear,
    Quadratic,
    Trig,
}

impl FieldName {
    pub fn field(self) -> TestField {
        match self {
            FieldName::Linear => TestField::Linear { a: 0.7, b: -1.3, c: 0.2 },
            FieldName::Quadratic => TestField::Quadratic,
            FieldName::Trig => TestField::Trig,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    // kernel
    pub kernel: KernelName,
    #[serde(rename = "L")]
    pub l: Option<[[f64; 2]; 2]>,
    pub scale: f64,

    // initial shape: an ellipse unless `contour_file` is given
    pub a0: f64,
    pub b0: f64,
    pub theta0: f64,
    pub contour_file: Option<PathBuf>,
    /// Extra cases `[a, b, theta]` for `field` probes and `commutator`.
    pub ellipses: Vec<[f64; 3]>,
    /// Extra contour cases for `commutator`.
    pub contour_files: Vec<PathBuf>,

    // time stepping
    pub dt: f64,
    pub t_end: f64,
    pub integrator: IntegratorName,
    pub n_markers: usize,
    pub resample_every: usize,
    pub resample_trigger: f64,
    pub diagnostics_every: usize,
    /// Write contour CSV and SVG frames every `frame_every` steps.
    pub emit_frames: bool,
    pub frame_every: usize,
    pub out_dir: PathBuf,
    /// `--assert` bounds for `simulate` (relative area drift, absolute invariant drifts).
    pub max_area_drift: Option<f64>,
    pub max_sum_ab_drift: Option<f64>,
    pub max_skew_drift: Option<f64>,

    // ellipse ODE and comparison
    pub ode_dt: f64,
    pub ode_every: usize,
    pub oracle_dt: f64,
    pub compare_tolerance: f64,
    /// `compare`: extra runs at these time steps (at `n_markers`) and marker
    /// counts (at `dt`), reported in `convergence.csv`.
    pub refine_dt: Vec<f64>,
    pub refine_markers: Vec<usize>,
    /// `--assert` bounds on successive error ratios of the refinement runs.
    pub min_dt_ratio: f64,
    pub min_markers_ratio: f64,
    /// `ellipse-ode --assert`: bound on the terminal angle error against the
    /// limit angle (`theta_inf` forward, `pi/2 - theta_inf` backward).
    pub limit_tolerance: Option<f64>,

    // field grid and interior probes
    pub grid_x: [f64; 2],
    pub grid_y: [f64; 2],
    pub grid_n: [usize; 2],
    pub probe_count: usize,

    // Vasin profile
    pub gamma: f64,
    pub bump_amplitude: f64,
    pub d_min: f64,
    pub d_max: f64,
    pub n_distances: usize,
    /// Markers on the bump contour (0 = smallest power of two with N d_min >= 10).
    pub vasin_markers: usize,
    pub vasin_probes: usize,
    pub min_slope: f64,
    pub max_product_ratio: f64,

    // principal values
    pub pv_settings: Vec<PvSetting>,
    pub pv_marker: usize,
    pub pv_eps_min: f64,
    /// Kernel component `i` of `k_i` (1 or 2).
    pub pv_component: usize,
    /// Normal component `j` of `n_j` (1 or 2; 0 = plain arclength).
    pub pv_normal: usize,
    pub pv_solid_kernel: SolidKernelName,
    /// `(i, l)` of `d_l k_i` when `pv_solid_kernel = "kernel-derivative"` (1-based).
    pub pv_derivative: [usize; 2],
    /// `--assert`: this many trailing differences must decrease.
    pub pv_monotone: usize,

    // commutator
    pub kernels: Vec<KernelName>,
    pub test_fields: Vec<FieldName>,
    pub points: Vec<usize>,
    /// Coordinate `i` of the pair `(i, j)` (1 or 2).
    pub coordinate: usize,
    /// Tolerance is `commutator_factor` times the combined error estimate,
    /// and never below `commutator_floor`.
    pub commutator_factor: f64,
    pub commutator_floor: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let sim = SimConfig::default();
        Self {
            kernel: KernelName::Cauchy,
            l: None,
            scale: 1.0,
            a0: 2.0,
            b0: 1.0,
            theta0: 0.0,
            contour_file: None,
            ellipses: Vec::new(),
            contour_files: Vec::new(),
            dt: sim.dt,
            t_end: sim.t_end,
            integrator: IntegratorName::Rk4,
            n_markers: sim.n_markers,
            resample_every: sim.resample_every,
            resample_trigger: sim.resample_trigger,
            diagnostics_every: sim.diagnostics_every,
            emit_frames: false,
            frame_every: 10,
            out_dir: PathBuf::from("out"),
            max_area_drift: None,
            max_sum_ab_drift: None,
            max_skew_drift: None,
            ode_dt: 1e-4,
            ode_every: 1,
            oracle_dt: 1e-6,
            compare_tolerance: 1e-3,
            refine_dt: Vec::new(),
            refine_markers: Vec::new(),
            min_dt_ratio: 8.0,
            min_markers_ratio: 10.0,
            limit_tolerance: None,
            grid_x: [-3.0, 3.0],
            grid_y: [-3.0, 3.0],
            grid_n: [61, 61],
            probe_count: 0,
            gamma: 0.5,
            bump_amplitude: 0.1,
            d_min: 1e-3,
            d_max: 1e-1,
            n_distances: 10,
            vasin_markers: 0,
            vasin_probes: 1,
            min_slope: -0.6,
            max_product_ratio: 20.0,
            pv_settings: vec![PvSetting::Boundary],
            pv_marker: 0,
            pv_eps_min: 0.03,
            pv_component: 2,
            pv_normal: 2,
            pv_solid_kernel: SolidKernelName::BeurlingReal,
            pv_derivative: [1, 1],
            pv_monotone: 4,
            kernels: Vec::new(),
            test_fields: Vec::new(),
            points: Vec::new(),
            coordinate: 1,
            commutator_factor: 3.0,
            commutator_floor: 1e-14,
        }
    }
}

fn component(name: &str, v: usize) -> Result<usize, CliError> {
    match v {
        1 | 2 => Ok(v - 1),
        _ => Err(CliError::Config(format!("`{name}` must be 1 or 2, got {v}"))),
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.check()?;
        Ok(cfg)
    }

    /// Loads a config; relative paths inside it resolve against its directory.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg =
            Self::from_toml(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        if let Some(p) = cfg.contour_file.as_mut() {
            fix(p);
        }
        cfg.contour_files.iter_mut().for_each(fix);
        Ok(cfg)
    }

    pub fn check(&self) -> Result<(), CliError> {
        if matches!(self.kernel, KernelName::LinearMap) != self.l.is_some() {
            return Err(CliError::Config("`L` must be given exactly when kernel = \"linear-map\"".into()));
        }
        if self.kernels.contains(&KernelName::LinearMap) && self.l.is_none() {
            return Err(CliError::Config("`kernels` lists linear-map but `L` is missing".into()));
        }
        let positive = [
            ("dt", self.dt),
            ("ode_dt", self.ode_dt),
            ("oracle_dt", self.oracle_dt),
            ("scale", self.scale),
            ("d_min", self.d_min),
            ("d_max", self.d_max),
            ("pv_eps_min", self.pv_eps_min),
            ("compare_tolerance", self.compare_tolerance),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(CliError::Config(format!("`{name}` must be positive, got {v}")));
            }
        }
        if self.contour_file.is_none() && !(self.a0 > 0.0 && self.b0 > 0.0) {
            return Err(CliError::Config(format!(
                "`a0` and `b0` must be positive, got {} and {}",
                self.a0, self.b0
            )));
        }
        if self.n_markers < Contour::MIN_MARKERS {
            return Err(CliError::Config(format!(
                "`n_markers` must be at least {}, got {}",
                Contour::MIN_MARKERS,
                self.n_markers
            )));
        }
        if self.refine_dt.iter().any(|d| !(*d > 0.0)) {
            return Err(CliError::Config("`refine_dt` entries must be positive".into()));
        }
        component("pv_component", self.pv_component)?;
        if self.pv_normal != 0 {
            component("pv_normal", self.pv_normal)?;
        }
        component("coordinate", self.coordinate)?;
        component("pv_derivative[0]", self.pv_derivative[0])?;
        component("pv_derivative[1]", self.pv_derivative[1])?;
        if self.frame_every == 0 && self.emit_frames {
            return Err(CliError::Config("`frame_every` must be at least 1".into()));
        }
        if self.vasin_probes == 0 {
            return Err(CliError::Config("`vasin_probes` must be at least 1".into()));
        }
        if self.grid_n[0] < 1 || self.grid_n[1] < 1 {
            return Err(CliError::Config("`grid_n` entries must be at least 1".into()));
        }
        Ok(())
    }

    pub fn kernel_spec(&self) -> KernelSpec {
        self.kernel_spec_for(self.kernel)
    }

    pub fn kernel_spec_for(&self, name: KernelName) -> KernelSpec {
        let base = match name {
            KernelName::Cauchy => KernelSpec::cauchy(),
            KernelName::Euler => KernelSpec::euler(),
            KernelName::Aggregation => KernelSpec::aggregation(),
            KernelName::LinearMap => KernelSpec::linear_map(self.l.unwrap_or([[0.0; 2]; 2])),
        };
        base.with_scale(self.scale)
    }

    pub fn sim_config(&self) -> SimConfig {
        SimConfig {
            dt: self.dt,
            t_end: self.t_end,
            integrator: match self.integrator {
                IntegratorName::Rk4 => Integrator::Rk4,
                IntegratorName::Heun => Integrator::Heun,
            },
            n_markers: self.n_markers,
            resample_every: self.resample_every,
            resample_trigger: self.resample_trigger,
            diagnostics_every: self.diagnostics_every,
        }
    }

    pub fn initial_ellipse(&self) -> Ellipse {
        Ellipse::new(self.a0, self.b0, self.theta0)
    }

    /// Initial contour: the CSV file if given, otherwise the ellipse with `n_markers` markers.
    pub fn initial_contour(&self) -> Result<Contour, CliError> {
        match &self.contour_file {
            Some(p) => Ok(Case::from_file(p)?.contour),
            None => Ok(make_ellipse_contour(self.a0, self.b0, self.theta0, self.n_markers)?),
        }
    }

    /// `ellipses` and `contour_files`, or the initial shape when both are empty.
    pub fn cases(&self) -> Result<Vec<Case>, CliError> {
        let mut out = Vec::new();
        if self.ellipses.is_empty() && self.contour_files.is_empty() {
            out.push(match &self.contour_file {
                Some(p) => Case::from_file(p)?,
                None => Case::ellipse(self.initial_ellipse(), self.n_markers)?,
            });
        }
        for e in &self.ellipses {
            out.push(Case::ellipse(Ellipse::new(e[0], e[1], e[2]), self.n_markers)?);
        }
        for p in &self.contour_files {
            out.push(Case::from_file(p)?);
        }
        Ok(out)
    }

    /// The ellipse cases for `compare`: `ellipses`, or the initial ellipse.
    pub fn ellipse_cases(&self) -> Result<Vec<Ellipse>, CliError> {
        if self.contour_file.is_some() || !self.contour_files.is_empty() {
            return Err(CliError::Config("`compare` needs ellipse initial shapes, not contour files".into()));
        }
        if self.ellipses.is_empty() {
            return Ok(vec![self.initial_ellipse()]);
        }
        Ok(self.ellipses.iter().map(|e| Ellipse::new(e[0], e[1], e[2])).collect())
    }

    pub fn solid_kernel(&self) -> SolidKernel {
        match self.pv_solid_kernel {
            SolidKernelName::BeurlingReal => SolidKernel::BeurlingReal,
            SolidKernelName::BeurlingImag => SolidKernel::BeurlingImag,
            SolidKernelName::KernelDerivative => SolidKernel::KernelDerivative {
                kernel: self.kernel_spec(),
                i: self.pv_derivative[0] - 1,
                l: self.pv_derivative[1] - 1,
            },
        }
    }

    /// `n_distances` log-spaced distances from `d_min` to `d_max`.
    pub fn distances(&self) -> Vec<f64> {
        let n = self.n_distances.max(1);
        if n == 1 {
            return vec![self.d_min];
        }
        let (a, b) = (self.d_min.ln(), self.d_max.ln());
        (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp()).collect()
    }
}

/// A labelled contour, remembering the ellipse it was built from.
#[derive(Debug, Clone)]
pub struct Case {
    pub label: String,
    pub contour: Contour,
    pub ellipse: Option<Ellipse>,
}

impl Case {
    pub fn ellipse(e: Ellipse, n: usize) -> Result<Self, CliError> {
        Ok(Self {
            label: format!("ellipse({},{},{})", e.a, e.b, e.theta),
            contour: make_ellipse_contour(e.a, e.b, e.theta, n)?,
            ellipse: Some(e),
        })
    }

    pub fn from_file(p: &Path) -> Result<Self, CliError> {
        let contour =
            load_contour(p).map_err(|e| CliError::Config(format!("contour file {}: {e}", p.display())))?;
        let label =
            p.file_stem().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned());
        Ok(Self { label, contour, ellipse: None })
    }
}
