use clap::Args;
use pslab::geodesic::geodesic_integrate;

use super::OutArgs;
use crate::charts::ChartArgs;
use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::grid::parse_list;
use crate::output::{csv_table, emit, g17, json_rows, Format, Json};
use crate::svg::Canvas;

#[derive(Args, Debug)]
pub struct GeodesicArgs {
    #[command(flatten)]
    pub chart: ChartArgs,
    /// Starting coordinates
    #[arg(long, allow_hyphen_values = true)]
    pub start: Option<String>,
    /// Initial velocity components
    #[arg(long, allow_hyphen_values = true)]
    pub dir: Option<String>,
    /// Final affine parameter
    #[arg(long = "lambda-max")]
    pub lambda_max: Option<f64>,
    /// Number of integration steps (at least 2)
    #[arg(long)]
    pub steps: Option<usize>,
    #[command(flatten)]
    pub out: OutArgs,
}

fn list(cfg: &Config, flag: &Option<String>, key: &str) -> CliResult<Vec<f64>> {
    let s = cfg
        .pick_string(flag.clone(), key)?
        .ok_or_else(|| CliError::usage(format!("--{key} is required")))?;
    parse_list(&s, &format!("--{key}"))
}

pub fn run(args: &GeodesicArgs, cfg: &Config) -> CliResult<()> {
    let params = args.chart.resolve(cfg)?;
    let format = args.out.format(cfg, Format::Csv, &[Format::Csv, Format::Json, Format::Svg])?;
    let start = list(cfg, &args.start, "start")?;
    let dir = list(cfg, &args.dir, "dir")?;
    let lambda_max = cfg.pick_f64(args.lambda_max, "lambda-max")?.unwrap_or(1.0);
    let steps = match args.steps {
        Some(s) => s,
        None => cfg.usize("steps")?.unwrap_or(200),
    };
    let chart = params.build()?;
    if start.len() != chart.dim() {
        return Err(CliError::usage(format!(
            "chart `{}` has dimension {}, --start has {} coordinates",
            params.name,
            chart.dim(),
            start.len()
        )));
    }
    if format == Format::Svg && chart.dim() != 2 {
        return Err(CliError::usage("svg output needs a two-dimensional chart"));
    }
    let traj = geodesic_integrate(&chart, &start, &dir, lambda_max, steps)?;
    if traj.hit_boundary {
        eprintln!("note: integration stopped at the chart boundary");
    }
    let norms = traj.norms(&chart);
    let dim = chart.dim();
    let text = match format {
        Format::Csv => {
            let mut header = vec!["lambda".to_string()];
            header.extend((0..dim).map(|i| format!("x{i}")));
            header.push("norm".into());
            let rows: Vec<Vec<String>> = traj
                .samples
                .iter()
                .zip(&norms)
                .map(|(s, n)| {
                    let mut r = vec![g17(s.lambda)];
                    r.extend(s.x.iter().map(|x| g17(*x)));
                    r.push(g17(*n));
                    r
                })
                .collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv_table(&header, &rows)?
        }
        Format::Json => {
            let rows: Vec<Json> = traj
                .samples
                .iter()
                .zip(&norms)
                .map(|(s, n)| {
                    let mut f = vec![("lambda".to_string(), Json::Num(s.lambda))];
                    f.extend(s.x.iter().enumerate().map(|(i, x)| (format!("x{i}"), Json::Num(*x))));
                    f.push(("norm".into(), Json::Num(*n)));
                    Json::Obj(f)
                })
                .collect();
            json_rows(&rows)
        }
        Format::Svg => {
            let pts: Vec<[f64; 2]> = traj.samples.iter().map(|s| [s.x[0], s.x[1]]).collect();
            let mut canvas = match params.disk_radius() {
                Some(r) => Canvas::new([-r, -r], [r, r]),
                None => Canvas::fitting(&pts),
            };
            if let Some(r) = params.disk_radius() {
                canvas.circle([0.0, 0.0], r, r#"fill="none" stroke="black" stroke-width="2""#);
            }
            canvas.polyline(&pts, r#"stroke="crimson" stroke-width="2""#);
            canvas.finish()
        }
    };
    emit(args.out.path(cfg)?.as_ref(), &text)
}
