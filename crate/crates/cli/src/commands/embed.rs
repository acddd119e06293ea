use clap::Args;
use pslab::desitter::{ds2_embed, ds2_residual};
use pslab::horizon::{EmbeddingKind, HorizonEmbedding};
use pslab::quadric::{embed_point, QuadricSpec};

use super::OutArgs;
use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::grid::{parse_grid, points2};
use crate::output::{csv_table, emit, g17, json_rows, Format, Json};

#[derive(Args, Debug)]
pub struct EmbedArgs {
    /// ds2, br0, br+, br- or quadric
    #[arg(long = "case")]
    pub case: Option<String>,
    /// Two axes, e.g. `t=0:1:11,x=-1:1:21`
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Mass parameter of the horizon embeddings
    #[arg(long = "M")]
    pub m: Option<f64>,
    /// Quadric radius
    #[arg(long = "R")]
    pub r: Option<f64>,
    /// Quadric sign pattern, e.g. `-+--`
    #[arg(long, allow_hyphen_values = true)]
    pub signs: Option<String>,
    #[command(flatten)]
    pub out: OutArgs,
}

enum Case {
    Ds2,
    Horizon(HorizonEmbedding),
    Quadric(QuadricSpec),
}

/// Ambient point and residual, or a domain message.
type RowResult = Result<([f64; 3], f64), String>;

impl Case {
    fn eval(&self, a: f64, b: f64) -> RowResult {
        match self {
            Case::Ds2 => {
                let p = ds2_embed(a, b);
                Ok((p, ds2_residual(p)))
            }
            Case::Horizon(e) => {
                let p = e.embed(b, a).map_err(|x| x.to_string())?;
                let res = e.quadric_residual(b, a).map_err(|x| x.to_string())?;
                Ok((p, res))
            }
            Case::Quadric(q) => {
                let p = embed_point(q, &[a, b]).map_err(|x| x.to_string())?;
                Ok((p, q.residual(p)))
            }
        }
    }
}

pub fn run(args: &EmbedArgs, cfg: &Config) -> CliResult<()> {
    let format = args.out.format(cfg, Format::Csv, &[Format::Csv, Format::Json])?;
    let case_name = cfg
        .pick_string(args.case.clone(), "case")?
        .ok_or_else(|| CliError::usage("--case is required"))?;
    let grid = cfg
        .pick_string(args.grid.clone(), "grid")?
        .ok_or_else(|| CliError::usage("--grid is required"))?;
    let axes = parse_grid(&grid, 2)?;
    let case = match case_name.as_str() {
        "ds2" => Case::Ds2,
        "quadric" => {
            let signs = cfg.pick_string(args.signs.clone(), "signs")?.unwrap_or_else(|| "++++".into());
            let r = cfg.pick_f64(args.r, "R")?.unwrap_or(1.0);
            Case::Quadric(QuadricSpec::parse(&signs, r)?)
        }
        other => {
            let kind: EmbeddingKind = other.parse().map_err(|_| {
                CliError::usage(format!("unknown case `{other}`; expected ds2, br0, br+, br- or quadric"))
            })?;
            let m = cfg.pick_f64(args.m, "M")?.unwrap_or(1.0);
            Case::Horizon(HorizonEmbedding::new(kind, m)?)
        }
    };
    let points = points2(&axes);
    let results: Vec<RowResult> = points.iter().map(|p| case.eval(p[0], p[1])).collect();
    for (p, r) in points.iter().zip(&results) {
        if let Err(msg) = r {
            eprintln!("domain_error at ({}, {}): {msg}", g17(p[0]), g17(p[1]));
        }
    }
    let (n0, n1) = (axes[0].name.as_str(), axes[1].name.as_str());
    let text = match format {
        Format::Json => {
            let rows: Vec<Json> = points
                .iter()
                .zip(&results)
                .map(|(p, r)| {
                    let (amb, res, status) = match r {
                        Ok((x, res)) => (Json::nums(x), Json::Num(*res), "ok"),
                        Err(_) => (Json::Null, Json::Null, "domain_error"),
                    };
                    Json::obj(vec![
                        (n0, Json::Num(p[0])),
                        (n1, Json::Num(p[1])),
                        ("ambient", amb),
                        ("residual", res),
                        ("status", Json::Str(status.into())),
                    ])
                })
                .collect();
            json_rows(&rows)
        }
        _ => {
            let rows: Vec<Vec<String>> = points
                .iter()
                .zip(&results)
                .map(|(p, r)| {
                    let mut row = vec![g17(p[0]), g17(p[1])];
                    match r {
                        Ok((x, res)) => {
                            row.extend(x.iter().map(|v| g17(*v)));
                            row.push(g17(*res));
                            row.push("ok".into());
                        }
                        Err(_) => {
                            row.extend(std::iter::repeat_n(String::new(), 4));
                            row.push("domain_error".into());
                        }
                    }
                    row
                })
                .collect();
            csv_table(&[n0, n1, "X0", "X1", "X2", "residual", "status"], &rows)?
        }
    };
    emit(args.out.path(cfg)?.as_ref(), &text)
}
