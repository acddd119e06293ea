//! `name=start:end:count` axis lists, e.g. `t=0:1:11,x=-1:1:21`.

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

fn parse_axis(spec: &str) -> CliResult<Axis> {
    let bad = || CliError::usage(format!("bad grid axis `{spec}`, expected name=start:end:count"));
    let (name, range) = spec.split_once('=').ok_or_else(bad)?;
    let parts: Vec<&str> = range.split(':').collect();
    if name.trim().is_empty() || parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let end: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if count == 0 || !start.is_finite() || !end.is_finite() {
        return Err(bad());
    }
    let values = if count == 1 {
        vec![start]
    } else {
        let step = (end - start) / (count - 1) as f64;
        (0..count).map(|i| if i + 1 == count { end } else { start + step * i as f64 }).collect()
    };
    Ok(Axis {
        name: name.trim().to_string(),
        values,
    })
}

/// Parses exactly `dims` comma-separated axes.
pub fn parse_grid(spec: &str, dims: usize) -> CliResult<Vec<Axis>> {
    let axes: Vec<Axis> = spec.split(',').map(parse_axis).collect::<CliResult<_>>()?;
    if axes.len() != dims {
        return Err(CliError::usage(format!("grid needs {dims} axes, got {}", axes.len())));
    }
    Ok(axes)
}

/// Cartesian product of two axes, first axis outermost.
pub fn points2(axes: &[Axis]) -> Vec<[f64; 2]> {
    let mut out = Vec::with_capacity(axes[0].values.len() * axes[1].values.len());
    for &a in &axes[0].values {
        for &b in &axes[1].values {
            out.push([a, b]);
        }
    }
    out
}

/// Comma-separated list of numbers.
pub fn parse_list(s: &str, what: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| CliError::usage(format!("bad number `{x}` in {what}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_axes() {
        let g = parse_grid("t=0:1:11,x=-1:1:21", 2).unwrap();
        assert_eq!(g[0].name, "t");
        assert_eq!(g[0].values.len(), 11);
        assert_eq!(g[0].values[10], 1.0);
        assert!((g[0].values[3] - 0.3).abs() < 1e-15);
        assert_eq!(g[1].values[0], -1.0);
        assert_eq!(points2(&g).len(), 231);
    }

    #[test]
    fn single_point_axis() {
        let g = parse_grid("tbar=0:0:1,xbar=0:0:1", 2).unwrap();
        assert_eq!(points2(&g), vec![[0.0, 0.0]]);
    }

    #[test]
    fn rejects_malformed() {
        for s in ["t=0:1", "t=0:1:0", "=0:1:2,x=0:1:2", "t=a:1:2,x=0:1:2", "t=0:1:2"] {
            assert_eq!(parse_grid(s, 2).unwrap_err().exit_code(), 2, "{s}");
        }
        assert!(parse_list("0.3,x", "point").is_err());
        assert_eq!(parse_list("0.3, 0.4", "point").unwrap(), vec![0.3, 0.4]);
    }
}
