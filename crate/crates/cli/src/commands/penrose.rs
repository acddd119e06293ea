use std::f64::consts::{FRAC_PI_2, PI};

use clap::Args;
use pslab::horizon::{conformal_factor, region_classify, PenroseRegion};

use super::OutArgs;
use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::grid::{parse_grid, points2};
use crate::output::{csv_table, emit, g17, json_rows, Format, Json};
use crate::svg::Canvas;

#[derive(Args, Debug)]
pub struct PenroseArgs {
    /// Mass parameter
    #[arg(long = "M")]
    pub m: Option<f64>,
    /// Null-coordinate axes, e.g. `u=0:3:31,v=0:3:31`
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    #[command(flatten)]
    pub out: OutArgs,
}

type Row = Result<(PenroseRegion, f64), String>;

fn row(u: f64, v: f64, m: f64) -> Row {
    let region = region_classify(u, v, m).map_err(|e| e.to_string())?;
    let c = conformal_factor(u, v).map_err(|e| e.to_string())?;
    Ok((region, c))
}

fn fill(region: PenroseRegion) -> &'static str {
    match region {
        PenroseRegion::I => "#bcd7f0",
        PenroseRegion::II => "#f5e6a8",
        PenroseRegion::III => "#f2c4c4",
        PenroseRegion::Boundary => "#999999",
    }
}

/// Segment of `T = c + s·X` inside `|X| ≤ π/2`, `0 ≤ T ≤ 2π`.
fn clipped(c: f64, s: f64) -> Option<[[f64; 2]; 2]> {
    let (mut lo, mut hi) = (-FRAC_PI_2, FRAC_PI_2);
    let (a, b) = ((0.0 - c) * s, (2.0 * PI - c) * s);
    lo = lo.max(a.min(b));
    hi = hi.min(a.max(b));
    (hi > lo).then(|| [[lo, c + s * lo], [hi, c + s * hi]])
}

/// Diagram in `X = (u − v)/2` across and `T = (u + v)/2` up.
fn diagram(m: f64, points: &[[f64; 2]]) -> String {
    let mut canvas = Canvas::new([-FRAC_PI_2, 0.0], [FRAC_PI_2, 2.0 * PI]);
    let (nx, nt) = (48, 192);
    let (dx, dt) = (PI / nx as f64, 2.0 * PI / nt as f64);
    for i in 0..nx {
        let x = -FRAC_PI_2 + dx * i as f64;
        let xc = x + 0.5 * dx;
        let regions: Vec<Option<PenroseRegion>> = (0..nt)
            .map(|j| {
                let tc = dt * (j as f64 + 0.5);
                region_classify(tc + xc, tc - xc, m).ok()
            })
            .collect();
        let mut j = 0;
        while j < nt {
            let start = j;
            while j < nt && regions[j] == regions[start] {
                j += 1;
            }
            if let Some(region) = regions[start] {
                let (t0, t1) = (dt * start as f64, dt * j as f64);
                let cell = [[x, t0], [x + dx, t0], [x + dx, t1], [x, t1]];
                canvas.polygon(&cell, &format!(r#"fill="{}" stroke="none""#, fill(region)));
            }
        }
    }
    for k in -1..=3 {
        let c = k as f64 * PI;
        for s in [-1.0, 1.0] {
            if let Some(seg) = clipped(c, s) {
                canvas.polyline(&seg, r#"stroke="black" stroke-width="4""#);
            }
        }
    }
    for x in [-FRAC_PI_2, FRAC_PI_2] {
        canvas.polyline(&[[x, 0.0], [x, 2.0 * PI]], r#"stroke="black" stroke-width="1""#);
    }
    for p in points {
        let (x, t) = (0.5 * (p[0] - p[1]), 0.5 * (p[0] + p[1]));
        if x.abs() < FRAC_PI_2 && (0.0..=2.0 * PI).contains(&t) {
            canvas.circle([x, t], 0.015, r#"fill="black""#);
        }
    }
    canvas.finish()
}

pub fn run(args: &PenroseArgs, cfg: &Config) -> CliResult<()> {
    let format = args.out.format(cfg, Format::Csv, &[Format::Csv, Format::Json, Format::Svg])?;
    let m = cfg.pick_f64(args.m, "M")?.unwrap_or(1.0);
    if !(m.is_finite() && m > 0.0) {
        return Err(CliError::usage(format!("--M must be positive, got {m}")));
    }
    let grid = cfg.pick_string(args.grid.clone(), "grid")?;
    let points = match &grid {
        Some(g) => points2(&parse_grid(g, 2)?),
        None if format == Format::Svg => Vec::new(),
        None => return Err(CliError::usage("--grid is required")),
    };
    let rows: Vec<Row> = points.iter().map(|p| row(p[0], p[1], m)).collect();
    let text = match format {
        Format::Svg => diagram(m, &points),
        Format::Json => {
            let items: Vec<Json> = points
                .iter()
                .zip(&rows)
                .map(|(p, r)| {
                    let (region, c) = match r {
                        Ok((reg, c)) => (reg.to_string(), Json::Num(*c)),
                        Err(_) => ("domain_error".into(), Json::Null),
                    };
                    Json::obj(vec![
                        ("u", Json::Num(p[0])),
                        ("v", Json::Num(p[1])),
                        ("region", Json::Str(region)),
                        ("C", c),
                    ])
                })
                .collect();
            json_rows(&items)
        }
        Format::Csv => {
            let table: Vec<Vec<String>> = points
                .iter()
                .zip(&rows)
                .map(|(p, r)| match r {
                    Ok((reg, c)) => vec![g17(p[0]), g17(p[1]), reg.to_string(), g17(*c)],
                    Err(_) => vec![g17(p[0]), g17(p[1]), "domain_error".into(), String::new()],
                })
                .collect();
            csv_table(&["u", "v", "region", "C"], &table)?
        }
    };
    emit(args.out.path(cfg)?.as_ref(), &text)
}
