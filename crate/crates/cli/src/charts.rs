//! Named chart registry.

use clap::Args;
use pslab::br::{br_chart, BrSpec, BrVariant};
use pslab::desitter::{rw_chart, steady_state_chart, ScaleHistory};
use pslab::horizon::{br_minus_chart, dyonic_solution, jt_solution, near_horizon_chart, rn_extremal_chart};
use pslab::quadric::{beltrami2_metric, beltrami_metric, hyperbolic_chart, minding_chart, QuadricSpec};
use pslab::Chart;

use crate::config::Config;
use crate::error::{CliError, CliResult};

pub const CHART_NAMES: &[&str] = &[
    "beltrami",
    "beltrami2",
    "sphere",
    "quadric:<signs>",
    "minding",
    "rw",
    "steady-state",
    "br1",
    "br2",
    "rn-extremal",
    "near-horizon",
    "br-minus",
    "jt",
    "dyonic",
];

/// Physical parameters shared by chart-based commands.
#[derive(Args, Clone, Debug, Default)]
pub struct ChartArgs {
    /// Chart name
    #[arg(long)]
    pub chart: Option<String>,
    /// Radius of the quadric or disk
    #[arg(long = "R")]
    pub r: Option<f64>,
    /// Mass parameter
    #[arg(long = "M")]
    pub m: Option<f64>,
    /// Hubble constant
    #[arg(long = "H")]
    pub h: Option<f64>,
    /// Power-law exponent of the scale factor
    #[arg(long = "p")]
    pub p: Option<f64>,
    /// Spatial curvature sign of the Robertson-Walker chart
    #[arg(long = "k", allow_hyphen_values = true)]
    pub k: Option<f64>,
    #[arg(long = "R-plus")]
    pub r_plus: Option<f64>,
    #[arg(long = "R-minus")]
    pub r_minus: Option<f64>,
    /// Cosmological constant
    #[arg(long = "Lambda", allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// JT coupling a²
    #[arg(long = "a2")]
    pub a2: Option<f64>,
    #[arg(long = "phi0", allow_hyphen_values = true)]
    pub phi0: Option<f64>,
}

/// Parameters after merging flags, config and defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartParams {
    pub name: String,
    pub r: f64,
    pub m: f64,
    pub h: f64,
    pub p: f64,
    pub k: f64,
    pub r_plus: f64,
    pub r_minus: f64,
    pub lambda: Option<f64>,
    pub a2: f64,
    pub phi0: f64,
}

impl ChartArgs {
    pub fn resolve(&self, cfg: &Config) -> CliResult<ChartParams> {
        let name = cfg
            .pick_string(self.chart.clone(), "chart")?
            .ok_or_else(|| CliError::usage("--chart is required"))?;
        Ok(ChartParams {
            name,
            r: cfg.pick_f64(self.r, "R")?.unwrap_or(1.0),
            m: cfg.pick_f64(self.m, "M")?.unwrap_or(1.0),
            h: cfg.pick_f64(self.h, "H")?.unwrap_or(1.0),
            p: cfg.pick_f64(self.p, "p")?.unwrap_or(1.0),
            k: cfg.pick_f64(self.k, "k")?.unwrap_or(0.0),
            r_plus: cfg.pick_f64(self.r_plus, "R-plus")?.unwrap_or(1.0),
            r_minus: cfg.pick_f64(self.r_minus, "R-minus")?.unwrap_or(1.0),
            lambda: cfg.pick_f64(self.lambda, "Lambda")?,
            a2: cfg.pick_f64(self.a2, "a2")?.unwrap_or(1.0),
            phi0: cfg.pick_f64(self.phi0, "phi0")?.unwrap_or(0.0),
        })
    }
}

fn br_spec(variant: BrVariant, p: &ChartParams) -> CliResult<BrSpec> {
    Ok(match p.lambda {
        Some(l) => BrSpec::new(variant, p.r_plus, p.r_minus, l)?,
        None => BrSpec::from_radii(variant, p.r_plus, p.r_minus)?,
    })
}

impl ChartParams {
    pub fn build(&self) -> CliResult<Chart> {
        if let Some(signs) = self.name.strip_prefix("quadric:") {
            return Ok(hyperbolic_chart(&QuadricSpec::parse(signs, self.r)?)?);
        }
        let k = self.k as i8;
        if f64::from(k) != self.k || k.abs() > 1 {
            return Err(CliError::usage("--k must be -1, 0 or 1"));
        }
        Ok(match self.name.as_str() {
            "beltrami" => positive(self.r, "R").map(beltrami_metric)?,
            "beltrami2" => positive(self.r, "R").map(beltrami2_metric)?,
            "sphere" => hyperbolic_chart(&QuadricSpec::new([1, 1, 1, 1], self.r)?)?,
            "minding" => positive(self.r, "R").map(minding_chart)?,
            "rw" => rw_chart(&ScaleHistory::power(self.p, k)?),
            "steady-state" => steady_state_chart(self.h)?,
            "br1" => br_chart(&br_spec(BrVariant::Br1, self)?),
            "br2" => br_chart(&br_spec(BrVariant::Br2, self)?),
            "rn-extremal" => rn_extremal_chart(self.m)?,
            "near-horizon" => near_horizon_chart(self.m)?,
            "br-minus" => br_minus_chart(self.m)?,
            "jt" => jt_solution(self.lambda.unwrap_or(1.0), self.a2, self.phi0)?.chart(),
            "dyonic" => dyonic_solution(self.r_plus, self.r_minus, self.phi0)?.chart(),
            other => {
                return Err(CliError::usage(format!(
                    "unknown chart `{other}`; known charts: {}",
                    CHART_NAMES.join(", ")
                )))
            }
        })
    }

    /// Radius of the boundary circle for disk charts.
    pub fn disk_radius(&self) -> Option<f64> {
        matches!(self.name.as_str(), "beltrami" | "beltrami2").then_some(self.r)
    }
}

fn positive(x: f64, name: &str) -> CliResult<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(CliError::usage(format!("--{name} must be positive, got {x}")))
    }
}
