//! Fixed-step RK4 integration of the geodesic equation.

use crate::chart::Chart;
use crate::curvature::LocalGeometry;
use crate::error::{GeomError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Sample {
    pub lambda: f64,
    pub x: Vec<f64>,
    pub v: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub samples: Vec<Sample>,
    /// Set when integration stopped early because a stage left the chart.
    pub hit_boundary: bool,
}

impl Trajectory {
    pub fn last(&self) -> &Sample {
        self.samples.last().expect("trajectory has at least the start sample")
    }

    /// Largest coordinate distance of a two-dimensional trajectory from the
    /// straight line through its first and last samples.
    pub fn collinearity_residual(&self) -> f64 {
        let a = &self.samples[0].x;
        let b = &self.last().x;
        let d = [b[0] - a[0], b[1] - a[1]];
        let len = d[0].hypot(d[1]);
        if len == 0.0 {
            return 0.0;
        }
        self.samples
            .iter()
            .map(|s| ((s.x[0] - a[0]) * d[1] - (s.x[1] - a[1]) * d[0]).abs() / len)
            .fold(0.0, f64::max)
    }

    /// `g(ẋ, ẋ)` at every sample.
    pub fn norms(&self, chart: &Chart) -> Vec<f64> {
        self.samples
            .iter()
            .map(|s| velocity_norm(chart, &s.x, &s.v))
            .collect()
    }
}

pub fn velocity_norm(chart: &Chart, x: &[f64], v: &[f64]) -> f64 {
    let g = chart.metric_unchecked(x);
    let n = x.len();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            s += g[(i, j)].re * v[i] * v[j];
        }
    }
    s
}

/// `a^k = −Γ^k_ij v^i v^j`; `None` when `x` is outside the chart or the
/// metric degenerates.
fn acceleration(chart: &Chart, x: &[f64], v: &[f64]) -> Option<Vec<f64>> {
    let geo = LocalGeometry::at(chart, x).ok()?;
    let n = x.len();
    let mut a = vec![0.0; n];
    for (k, ak) in a.iter_mut().enumerate() {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                s += geo.gamma(k, i, j).re * v[i] * v[j];
            }
        }
        *ak = -s;
    }
    Some(a)
}

fn axpy(x: &[f64], k: f64, d: &[f64]) -> Vec<f64> {
    x.iter().zip(d).map(|(a, b)| a + k * b).collect()
}

pub fn geodesic_integrate(
    chart: &Chart,
    start: &[f64],
    velocity: &[f64],
    lambda_max: f64,
    steps: usize,
) -> Result<Trajectory> {
    chart.check_domain(start)?;
    if velocity.len() != chart.dim() {
        return Err(GeomError::Shape(format!(
            "velocity has {} components, chart dimension is {}",
            velocity.len(),
            chart.dim()
        )));
    }
    if steps < 2 {
        return Err(GeomError::InvalidParameter(format!("steps must be >= 2, got {steps}")));
    }
    if !(lambda_max > 0.0) {
        return Err(GeomError::InvalidParameter("lambda_max must be positive".into()));
    }
    let h = lambda_max / steps as f64;
    let mut x = start.to_vec();
    let mut v = velocity.to_vec();
    let mut samples = vec![Sample {
        lambda: 0.0,
        x: x.clone(),
        v: v.clone(),
    }];
    for step in 1..=steps {
        let stage = || -> Option<(Vec<f64>, Vec<f64>)> {
            let a1 = acceleration(chart, &x, &v)?;
            let (x2, v2) = (axpy(&x, h / 2.0, &v), axpy(&v, h / 2.0, &a1));
            let a2 = acceleration(chart, &x2, &v2)?;
            let (x3, v3) = (axpy(&x, h / 2.0, &v2), axpy(&v, h / 2.0, &a2));
            let a3 = acceleration(chart, &x3, &v3)?;
            let (x4, v4) = (axpy(&x, h, &v3), axpy(&v, h, &a3));
            let a4 = acceleration(chart, &x4, &v4)?;
            let n = x.len();
            let mut xn = vec![0.0; n];
            let mut vn = vec![0.0; n];
            for i in 0..n {
                xn[i] = x[i] + h / 6.0 * (v[i] + 2.0 * v2[i] + 2.0 * v3[i] + v4[i]);
                vn[i] = v[i] + h / 6.0 * (a1[i] + 2.0 * a2[i] + 2.0 * a3[i] + a4[i]);
            }
            chart.contains(&xn).then_some((xn, vn))
        };
        match stage() {
            Some((xn, vn)) => {
                x = xn;
                v = vn;
                samples.push(Sample {
                    lambda: step as f64 * h,
                    x: x.clone(),
                    v: v.clone(),
                });
            }
            None => {
                return Ok(Trajectory {
                    samples,
                    hit_boundary: true,
                })
            }
        }
    }
    Ok(Trajectory {
        samples,
        hit_boundary: false,
    })
}

/// Finds the initial velocity of the geodesic reaching `target` at affine
/// parameter 1, by Newton iteration on the shooting map.
pub fn shoot(chart: &Chart, from: &[f64], target: &[f64], steps: usize) -> Result<Trajectory> {
    chart.check_domain(target)?;
    let n = from.len();
    let endpoint = |v: &[f64]| -> Result<Vec<f64>> {
        let tr = geodesic_integrate(chart, from, v, 1.0, steps)?;
        if tr.hit_boundary {
            return Err(GeomError::Numerical("shooting trajectory left the chart".into()));
        }
        Ok(tr.last().x.clone())
    };
    let mut v: Vec<f64> = target.iter().zip(from).map(|(b, a)| b - a).collect();
    let scale = v.iter().map(|c| c.abs()).fold(0.0, f64::max).max(1e-300);
    for _ in 0..50 {
        let end = endpoint(&v)?;
        let miss: Vec<f64> = end.iter().zip(target).map(|(e, t)| e - t).collect();
        let err = miss.iter().map(|c| c.abs()).fold(0.0, f64::max);
        if err < 1e-13 * scale.max(1.0) {
            return geodesic_integrate(chart, from, &v, 1.0, steps);
        }
        let eps = 1e-7 * scale;
        let mut jac = nalgebra::DMatrix::<f64>::zeros(n, n);
        for j in 0..n {
            let mut vp = v.clone();
            vp[j] += eps;
            let mut vm = v.clone();
            vm[j] -= eps;
            let (ep, em) = (endpoint(&vp)?, endpoint(&vm)?);
            for i in 0..n {
                jac[(i, j)] = (ep[i] - em[i]) / (2.0 * eps);
            }
        }
        let rhs = nalgebra::DVector::from_vec(miss);
        let delta = jac
            .lu()
            .solve(&rhs)
            .ok_or_else(|| GeomError::Numerical("singular shooting Jacobian".into()))?;
        for i in 0..n {
            v[i] -= delta[i];
        }
    }
    Err(GeomError::Numerical("geodesic shooting did not converge".into()))
}

/// Geodesic length between two points, `√|g(v₀, v₀)|` for the shot geodesic
/// over unit affine parameter.
pub fn geodesic_distance(chart: &Chart, a: &[f64], b: &[f64], steps: usize) -> Result<f64> {
    let tr = shoot(chart, a, b, steps)?;
    let s = &tr.samples[0];
    Ok(velocity_norm(chart, &s.x, &s.v).abs().sqrt())
}
