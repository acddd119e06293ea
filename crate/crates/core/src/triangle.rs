//! Geodesic triangles on two-dimensional definite charts: interior angles,
//! area, and the angular excess.

use crate::chart::{eigen_signs, Chart};
use crate::error::{GeomError, Result};
use crate::geodesic::{shoot, Trajectory};
use crate::quadrature::{adaptive_simpson, gauss_kronrod};

/// Steps used for each shot side.
pub const SIDE_STEPS: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Triangle {
    pub vertices: [[f64; 2]; 3],
}

impl Triangle {
    pub fn new(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> Result<Triangle> {
        let v = [a, b, c];
        for i in 0..3 {
            let (p, q) = (v[i], v[(i + 1) % 3]);
            if p == q {
                return Err(GeomError::InvalidParameter("triangle vertices must be distinct".into()));
            }
        }
        Ok(Triangle { vertices: v })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Excess {
    /// Interior angles at the three vertices, in order.
    pub angles: [f64; 3],
    pub excess: f64,
    pub area: f64,
}

/// `+1` for positive definite, `−1` for negative definite metrics.
fn definite_sign(chart: &Chart, point: &[f64]) -> Result<f64> {
    let signs = eigen_signs(&chart.metric_at(point)?);
    if signs.iter().all(|&s| s > 0) {
        Ok(1.0)
    } else if signs.iter().all(|&s| s < 0) {
        Ok(-1.0)
    } else {
        Err(GeomError::IndefiniteMetric(format!(
            "chart `{}` is indefinite at {point:?}",
            chart.name()
        )))
    }
}

fn inner(chart: &Chart, x: &[f64], a: &[f64], b: &[f64]) -> f64 {
    let g = chart.metric_unchecked(x);
    let mut s = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            s += g[(i, j)].re * a[i] * b[j];
        }
    }
    s
}

fn angle_between(chart: &Chart, x: &[f64], a: &[f64], b: &[f64], sign: f64) -> f64 {
    let ab = sign * inner(chart, x, a, b);
    let aa = sign * inner(chart, x, a, a);
    let bb = sign * inner(chart, x, b, b);
    (ab / (aa * bb).sqrt()).clamp(-1.0, 1.0).acos()
}

/// Cubic Hermite interpolation of a trajectory; returns position and
/// derivative at affine parameter `lambda`.
fn hermite(tr: &Trajectory, lambda: f64) -> ([f64; 2], [f64; 2]) {
    let n = tr.samples.len() - 1;
    let h = tr.samples[1].lambda - tr.samples[0].lambda;
    let k = ((lambda / h).floor() as usize).min(n - 1);
    let (s0, s1) = (&tr.samples[k], &tr.samples[k + 1]);
    let t = (lambda - s0.lambda) / h;
    let (t2, t3) = (t * t, t * t * t);
    let w = [2.0 * t3 - 3.0 * t2 + 1.0, t3 - 2.0 * t2 + t, -2.0 * t3 + 3.0 * t2, t3 - t2];
    let dw = [6.0 * t2 - 6.0 * t, 3.0 * t2 - 4.0 * t + 1.0, -6.0 * t2 + 6.0 * t, 3.0 * t2 - 2.0 * t];
    let mut p = [0.0; 2];
    let mut d = [0.0; 2];
    for i in 0..2 {
        p[i] = w[0] * s0.x[i] + w[1] * h * s0.v[i] + w[2] * s1.x[i] + w[3] * h * s1.v[i];
        d[i] = (dw[0] * s0.x[i] + dw[1] * h * s0.v[i] + dw[2] * s1.x[i] + dw[3] * h * s1.v[i]) / h;
    }
    (p, d)
}

/// Area of the region bounded by the sides, as a fan of coordinate rays from
/// the vertex centroid. Requires the region to be star-shaped about it.
fn fan_area(chart: &Chart, sides: &[Trajectory], centre: [f64; 2], tol: f64) -> Result<f64> {
    let density = |x: &[f64]| chart.metric_unchecked(x).determinant().norm().sqrt();
    let mut total = 0.0;
    for side in sides {
        let outer = |lambda: f64| {
            let (b, db) = hermite(side, lambda);
            let r = [b[0] - centre[0], b[1] - centre[1]];
            let cross = r[0] * db[1] - r[1] * db[0];
            if cross == 0.0 {
                return 0.0;
            }
            let radial = |s: f64| s * density(&[centre[0] + s * r[0], centre[1] + s * r[1]]);
            cross * gauss_kronrod(&radial, 0.0, 1.0, 1e-13, 1e-12).unwrap_or(f64::NAN)
        };
        total += adaptive_simpson(&outer, 0.0, 1.0, tol)?;
    }
    Ok(total.abs())
}

pub fn excess_angle(chart: &Chart, tri: &Triangle) -> Result<Excess> {
    if chart.dim() != 2 {
        return Err(GeomError::Dimension {
            expected: 2,
            found: chart.dim(),
        });
    }
    let v = tri.vertices;
    let mut sign = 0.0;
    for p in &v {
        let s = definite_sign(chart, p)?;
        if sign != 0.0 && s != sign {
            return Err(GeomError::IndefiniteMetric("metric changes sign across the triangle".into()));
        }
        sign = s;
    }
    let sides = (0..3)
        .map(|i| shoot(chart, &v[i], &v[(i + 1) % 3], SIDE_STEPS))
        .collect::<Result<Vec<_>>>()?;
    let mut angles = [0.0; 3];
    for i in 0..3 {
        let out = &sides[i].samples[0].v;
        let back: Vec<f64> = sides[(i + 2) % 3].last().v.iter().map(|c| -c).collect();
        angles[i] = angle_between(chart, &v[i], out, &back, sign);
    }
    let centre = [
        (v[0][0] + v[1][0] + v[2][0]) / 3.0,
        (v[0][1] + v[1][1] + v[2][1]) / 3.0,
    ];
    let area = fan_area(chart, &sides, centre, 1e-10)?;
    if !area.is_finite() {
        return Err(GeomError::Numerical("triangle area quadrature failed".into()));
    }
    Ok(Excess {
        angles,
        excess: angles.iter().sum::<f64>() - std::f64::consts::PI,
        area,
    })
}
