use clap::Args;
use pslab::curvature::curvature;
use pslab::tensor::TensorValue;
use pslab::C64;

use super::OutArgs;
use crate::charts::ChartArgs;
use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::grid::parse_list;
use crate::output::{complex_cell, csv_table, emit, Format, Json};

#[derive(Args, Debug)]
pub struct CurvatureArgs {
    #[command(flatten)]
    pub chart: ChartArgs,
    /// Comma-separated coordinates
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    #[command(flatten)]
    pub out: OutArgs,
}

fn nest(c: &[C64], dim: usize, rank: usize) -> Json {
    if rank == 0 {
        return Json::complex(c[0]);
    }
    let block = dim.pow(rank as u32 - 1);
    Json::Arr(c.chunks(block).map(|b| nest(b, dim, rank - 1)).collect())
}

fn tensor_json(t: &TensorValue) -> Json {
    nest(t.components(), t.dim(), t.rank())
}

fn tensor_rows(label: &str, t: &TensorValue, rows: &mut Vec<Vec<String>>) {
    for (idx, z) in t.indices().zip(t.components()) {
        let key: Vec<String> = idx.iter().map(usize::to_string).collect();
        rows.push(vec![label.into(), key.join(" "), complex_cell(*z)]);
    }
}

pub fn run(args: &CurvatureArgs, cfg: &Config) -> CliResult<()> {
    let params = args.chart.resolve(cfg)?;
    let format = args.out.format(cfg, Format::Json, &[Format::Json, Format::Csv])?;
    let point = cfg
        .pick_string(args.point.clone(), "point")?
        .ok_or_else(|| CliError::usage("--point is required"))?;
    let point = parse_list(&point, "--point")?;
    let chart = params.build()?;
    if point.len() != chart.dim() {
        return Err(CliError::usage(format!(
            "chart `{}` has dimension {}, point has {} coordinates",
            params.name,
            chart.dim(),
            point.len()
        )));
    }
    let curv = curvature(&chart, &point)?;
    let gamma = pslab::curvature::christoffel(&chart, &point)?;
    let ricci = curv.ricci_tensor();
    let k = (chart.dim() == 2).then_some(curv.gaussian());
    let text = match format {
        Format::Json => {
            let mut fields = vec![
                ("chart", Json::Str(params.name.clone())),
                ("point", Json::nums(&point)),
                ("gamma", tensor_json(&gamma)),
                ("riemann", tensor_json(&curv.riemann)),
                ("ricci", tensor_json(&ricci)),
                ("scalar", Json::complex(curv.scalar)),
            ];
            if let Some(k) = k {
                fields.push(("K", Json::complex(k)));
            }
            Json::obj(fields).render()
        }
        _ => {
            let mut rows = Vec::new();
            tensor_rows("gamma", &gamma, &mut rows);
            tensor_rows("riemann", &curv.riemann, &mut rows);
            tensor_rows("ricci", &ricci, &mut rows);
            rows.push(vec!["scalar".into(), String::new(), complex_cell(curv.scalar)]);
            if let Some(k) = k {
                rows.push(vec!["K".into(), String::new(), complex_cell(k)]);
            }
            csv_table(&["quantity", "index", "value"], &rows)?
        }
    };
    emit(args.out.path(cfg)?.as_ref(), &text)
}
