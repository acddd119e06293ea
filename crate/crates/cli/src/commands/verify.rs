use clap::Args;
use pslab::verify::{check_names, reports_to_json, run_all, Overrides};

use super::OutArgs;
use crate::config::{env_tolerance, Config};
use crate::error::{CliError, CliResult};
use crate::output::{csv_table, emit, g17, Format};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Glob over check names, e.g. `br2-*`
    #[arg(long)]
    pub filter: Option<String>,
    /// Tolerance applied to every selected check
    #[arg(long)]
    pub tol: Option<f64>,
    /// R₊ for the Einstein-Maxwell check
    #[arg(long = "R-plus")]
    pub r_plus: Option<f64>,
    /// R₋ for the Einstein-Maxwell check
    #[arg(long = "R-minus")]
    pub r_minus: Option<f64>,
    /// Λ for the Einstein-Maxwell check
    #[arg(long = "Lambda", allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// Print the registered check names and exit
    #[arg(long)]
    pub list: bool,
    #[command(flatten)]
    pub out: OutArgs,
}

pub fn run(args: &VerifyArgs, cfg: &Config) -> CliResult<()> {
    if args.list {
        let mut s = check_names().join("\n");
        s.push('\n');
        return emit(args.out.path(cfg)?.as_ref(), &s);
    }
    let format = args.out.format(cfg, Format::Csv, &[Format::Csv, Format::Json])?;
    let filter = cfg.pick_string(args.filter.clone(), "filter")?.unwrap_or_default();
    let tolerance = match cfg.pick_f64(args.tol, "tol")? {
        Some(t) => Some(t),
        None => env_tolerance()?,
    };
    if let Some(t) = tolerance {
        if !(t.is_finite() && t > 0.0) {
            return Err(CliError::usage(format!("tolerance must be positive, got {t}")));
        }
    }
    let overrides = Overrides {
        tolerance,
        r_plus: cfg.pick_f64(args.r_plus, "R-plus")?,
        r_minus: cfg.pick_f64(args.r_minus, "R-minus")?,
        lambda: cfg.pick_f64(args.lambda, "Lambda")?,
    };
    let reports = run_all(&filter, &overrides);
    if reports.is_empty() {
        return Err(CliError::usage(format!("no checks match `{filter}`")));
    }
    let text = match format {
        Format::Json => reports_to_json(&reports),
        _ => {
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.name.clone(),
                        g17(r.residual),
                        g17(r.tolerance),
                        r.passed.to_string(),
                        r.grid_spec.clone(),
                        r.error.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            csv_table(&["name", "residual", "tolerance", "passed", "grid_spec", "error"], &rows)?
        }
    };
    emit(args.out.path(cfg)?.as_ref(), &text)?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
    eprintln!("{}/{} checks passed", reports.len() - failed.len(), reports.len());
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.join(", ")))
    }
}
