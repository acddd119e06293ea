use clap::Args;
use pslab::desitter::{comoving_distance, redshift, ScaleHistory};

use super::OutArgs;
use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::output::{csv_table, emit, g17, Format, Json};

#[derive(Args, Debug)]
pub struct RedshiftArgs {
    /// steady-state (R = e^{Ht}) or power (R = t^p)
    #[arg(long)]
    pub model: Option<String>,
    /// Hubble constant of the steady-state model
    #[arg(long = "H")]
    pub h: Option<f64>,
    /// Exponent of the power-law model
    #[arg(long = "p")]
    pub p: Option<f64>,
    /// Emission time
    #[arg(long, allow_hyphen_values = true)]
    pub t0: Option<f64>,
    /// Observation time
    #[arg(long, allow_hyphen_values = true)]
    pub t1: Option<f64>,
    #[command(flatten)]
    pub out: OutArgs,
}

pub fn run(args: &RedshiftArgs, cfg: &Config) -> CliResult<()> {
    let format = args.out.format(cfg, Format::Json, &[Format::Json, Format::Csv])?;
    let model = cfg.pick_string(args.model.clone(), "model")?.unwrap_or_else(|| "steady-state".into());
    let hist = match model.as_str() {
        "steady-state" => ScaleHistory::exponential(cfg.pick_f64(args.h, "H")?.unwrap_or(1.0), 0)?,
        "power" => ScaleHistory::power(cfg.pick_f64(args.p, "p")?.unwrap_or(1.0), 0)?,
        other => {
            return Err(CliError::usage(format!(
                "unknown model `{other}`; expected steady-state or power"
            )))
        }
    };
    let need = |v: Option<f64>, k: &str| v.ok_or_else(|| CliError::usage(format!("--{k} is required")));
    let t0 = need(cfg.pick_f64(args.t0, "t0")?, "t0")?;
    let t1 = need(cfg.pick_f64(args.t1, "t1")?, "t1")?;
    let ratio = redshift(&hist, t0, t1)?;
    let comoving = comoving_distance(&hist, t0, t1)?;
    let text = match format {
        Format::Json => Json::obj(vec![("ratio", Json::Num(ratio)), ("comoving", Json::Num(comoving))]).render(),
        _ => csv_table(&["ratio", "comoving"], &[vec![g17(ratio), g17(comoving)]])?,
    };
    emit(args.out.path(cfg)?.as_ref(), &text)
}
