//! Robertson–Walker cosmologies, the steady-state chart of de Sitter space
//! and its two-dimensional reduction.

use std::fmt;
use std::sync::Arc;

use crate::chart::{Chart, DOMAIN_MARGIN};
use crate::curvature::LocalGeometry;
use crate::error::{GeomError, Result};
use crate::jet::Jet;
use crate::quadrature::gauss_kronrod;
use crate::quadric::QuadricSpec;

type ScaleFn = dyn Fn(Jet) -> Jet + Send + Sync;

/// Scale factor `R(t)` on an open interval of cosmic time, with spatial
/// curvature index `k`.
#[derive(Clone)]
pub struct ScaleHistory {
    scale: Arc<ScaleFn>,
    hubble: Option<Arc<dyn Fn(f64) -> f64 + Send + Sync>>,
    pub k: i8,
    pub interval: (f64, f64),
}

impl fmt::Debug for ScaleHistory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScaleHistory")
            .field("k", &self.k)
            .field("interval", &self.interval)
            .finish()
    }
}

impl ScaleHistory {
    pub fn new<F>(scale: F, k: i8, interval: (f64, f64)) -> Result<ScaleHistory>
    where
        F: Fn(Jet) -> Jet + Send + Sync + 'static,
    {
        if ![-1, 0, 1].contains(&k) {
            return Err(GeomError::InvalidParameter(format!("k must be -1, 0 or 1, got {k}")));
        }
        if !(interval.0 < interval.1) {
            return Err(GeomError::InvalidParameter("empty time interval".into()));
        }
        Ok(ScaleHistory {
            scale: Arc::new(scale),
            hubble: None,
            k,
            interval,
        })
    }

    /// `R(t) = e^{Ht}` on the whole line.
    pub fn exponential(h: f64, k: i8) -> Result<ScaleHistory> {
        ScaleHistory::new(move |t| (t * h).exp(), k, (f64::NEG_INFINITY, f64::INFINITY))
    }

    /// `R(t) = t^p` for `t > 0`.
    pub fn power(p: f64, k: i8) -> Result<ScaleHistory> {
        ScaleHistory::new(move |t| t.powf(p), k, (0.0, f64::INFINITY))
    }

    /// Attaches a closed-form Hubble rate to be compared against the one
    /// derived from `R`.
    pub fn with_hubble<H>(mut self, h: H) -> ScaleHistory
    where
        H: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.hubble = Some(Arc::new(h));
        self
    }

    pub fn contains(&self, t: f64) -> bool {
        t > self.interval.0 && t < self.interval.1
    }

    fn check(&self, t: f64) -> Result<()> {
        if !self.contains(t) {
            return Err(GeomError::domain("scale-history", &[t], "time outside the history interval"));
        }
        let r = self.scale_factor_unchecked(t);
        if !(r > 0.0) {
            return Err(GeomError::domain("scale-history", &[t], "scale factor is not positive"));
        }
        Ok(())
    }

    fn scale_factor_unchecked(&self, t: f64) -> f64 {
        (self.scale)(Jet::constant(t)).re()
    }

    pub fn scale_factor(&self, t: f64) -> Result<f64> {
        self.check(t)?;
        Ok(self.scale_factor_unchecked(t))
    }

    /// `H = d ln R / dt`.
    pub fn hubble(&self, t: f64) -> Result<f64> {
        self.check(t)?;
        let r = (self.scale)(Jet::variable(t, 0));
        Ok(r.grad[0].re / r.value.re)
    }

    /// Largest disagreement between the derived and the supplied Hubble rate
    /// over `times`; zero when none was supplied.
    pub fn hubble_mismatch(&self, times: &[f64]) -> Result<f64> {
        let Some(h) = &self.hubble else {
            return Ok(0.0);
        };
        let mut worst: f64 = 0.0;
        for &t in times {
            worst = worst.max((self.hubble(t)? - h(t)).abs());
        }
        Ok(worst)
    }

    fn jet(&self, t: Jet) -> Jet {
        (self.scale)(t)
    }
}

/// `ds² = dt² − R²(t)(dx̄² + dȳ² + dz̄²)/[1 + k(x̄² + ȳ² + z̄²)/4]²`.
pub fn rw_chart(hist: &ScaleHistory) -> Chart {
    let h = hist.clone();
    let hd = hist.clone();
    let k = hist.k as f64;
    Chart::diagonal(
        format!("rw(k={})", hist.k),
        vec![1, -1, -1, -1],
        move |x: &[Jet]| {
            let r = h.jet(x[0]);
            let den = (x[1] * x[1] + x[2] * x[2] + x[3] * x[3]) * (k / 4.0) + 1.0;
            let s = -(r * r / (den * den));
            vec![Jet::constant(1.0), s, s, s]
        },
        move |p| {
            hd.check(p[0]).map_err(|e| e.to_string())?;
            let den = 1.0 + k * (p[1] * p[1] + p[2] * p[2] + p[3] * p[3]) / 4.0;
            if den.abs() > DOMAIN_MARGIN {
                Ok(())
            } else {
                Err("conformal denominator vanishes".into())
            }
        },
    )
}

fn check_times(hist: &ScaleHistory, t0: f64, t1: f64) -> Result<()> {
    hist.check(t0)?;
    hist.check(t1)?;
    if t1 < t0 {
        return Err(GeomError::domain("scale-history", &[t0, t1], "t0 must not exceed t1"));
    }
    Ok(())
}

/// `r̄ = ∫ dt / R(t)` from `t0` to `t1`, the coordinate reach of a radial
/// null geodesic.
pub fn comoving_distance(hist: &ScaleHistory, t0: f64, t1: f64) -> Result<f64> {
    check_times(hist, t0, t1)?;
    if t0 == t1 {
        return Ok(0.0);
    }
    gauss_kronrod(&|t| 1.0 / hist.scale_factor_unchecked(t), t0, t1, 1e-10, 1e-13)
}

/// Frequency ratio `ν₀/ν₁ = R(t₁)/R(t₀)`.
pub fn redshift(hist: &ScaleHistory, t0: f64, t1: f64) -> Result<f64> {
    check_times(hist, t0, t1)?;
    Ok(hist.scale_factor_unchecked(t1) / hist.scale_factor_unchecked(t0))
}

/// The same ratio as `exp ∫ H dt`.
pub fn redshift_from_hubble(hist: &ScaleHistory, t0: f64, t1: f64) -> Result<f64> {
    check_times(hist, t0, t1)?;
    if t0 == t1 {
        return Ok(1.0);
    }
    let h = |t: f64| {
        let r = hist.jet(Jet::variable(t, 0));
        r.grad[0].re / r.value.re
    };
    Ok(gauss_kronrod(&h, t0, t1, 1e-12, 1e-13)?.exp())
}

/// `ds² = dt² − e^{2Ht}(dx̄² + dȳ² + dz̄²)` in cosmic time `t`; the
/// dimensionless time is `t̄ = Ht`.
pub fn steady_state_chart(h: f64) -> Result<Chart> {
    if !(h > 0.0) {
        return Err(GeomError::InvalidParameter(format!("H must be positive, got {h}")));
    }
    Ok(Chart::diagonal(
        "steady-state",
        vec![1, -1, -1, -1],
        move |x: &[Jet]| {
            let s = -(x[0] * (2.0 * h)).exp();
            vec![Jet::constant(1.0), s, s, s]
        },
        |_| Ok(()),
    ))
}

/// The section `ȳ = z̄ = 0` of [`steady_state_chart`].
pub fn steady_state_chart_2d(h: f64) -> Result<Chart> {
    if !(h > 0.0) {
        return Err(GeomError::InvalidParameter(format!("H must be positive, got {h}")));
    }
    Ok(Chart::diagonal(
        "steady-state-2d",
        vec![1, -1],
        move |x: &[Jet]| vec![Jet::constant(1.0), -(x[0] * (2.0 * h)).exp()],
        |_| Ok(()),
    ))
}

/// `η + ζ = e^t̄`, `ξ = x̄ e^t̄`, `η − ζ = x̄² e^t̄ − e^{−t̄}`, over jets.
pub fn ds2_embed_jets(x: &[Jet]) -> Vec<Jet> {
    let (t, xb) = (x[0], x[1]);
    let e = t.exp();
    let plus = e;
    let minus = xb * xb * e - (-t).exp();
    vec![xb * e, (plus + minus) * 0.5, (plus - minus) * 0.5]
}

pub fn ds2_embed(t_bar: f64, x_bar: f64) -> [f64; 3] {
    let e = ds2_embed_jets(&[Jet::constant(t_bar), Jet::constant(x_bar)]);
    [e[0].re(), e[1].re(), e[2].re()]
}

/// `η² − ξ² − ζ² + 1`.
pub fn ds2_residual(p: [f64; 3]) -> f64 {
    p[1] * p[1] - p[0] * p[0] - p[2] * p[2] + 1.0
}

/// Ambient signs `(ξ, η, ζ)` of `dσ² = dη² − dξ² − dζ²`.
pub const DS2_AMBIENT: [f64; 3] = [-1.0, 1.0, -1.0];

/// The reduced de Sitter quadric `η² − ξ² − ζ² = −1` as a fundamental quadric.
pub fn ds2_quadric() -> QuadricSpec {
    QuadricSpec::new([-1, 1, -1, -1], 1.0).expect("admissible")
}

/// The cyclic-time variant, with the roles of `η` and `ζ` exchanged.
pub fn ads2_quadric() -> QuadricSpec {
    QuadricSpec::new([-1, -1, 1, -1], 1.0).expect("admissible")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LambdaFit {
    pub c: f64,
    pub residual: f64,
}

/// Least-squares fit of `R_μν = c g_μν` over sample points.
pub fn verify_einstein_lambda(chart: &Chart, grid: &[Vec<f64>]) -> Result<LambdaFit> {
    let mut pairs = Vec::new();
    for p in grid {
        let geo = LocalGeometry::at(chart, p)?;
        let ric = geo.curvature().ricci;
        pairs.push((ric, geo.g));
    }
    let (mut num, mut den) = (0.0, 0.0);
    for (r, g) in &pairs {
        for (a, b) in r.iter().zip(g.iter()) {
            num += a.re * b.re;
            den += b.re * b.re;
        }
    }
    let c = if den > 0.0 { num / den } else { 0.0 };
    let mut residual: f64 = 0.0;
    for (r, g) in &pairs {
        for (a, b) in r.iter().zip(g.iter()) {
            residual = residual.max((a - b * c).norm());
        }
    }
    Ok(LambdaFit { c, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{flat_pullback, minkowski};
    use crate::curvature::{curvature, scalar_curvature};
    use crate::tensor::max_abs;

    #[test]
    fn flat_rw_is_minkowski() {
        let hist = ScaleHistory::new(|_| Jet::constant(1.0), 0, (-10.0, 10.0)).unwrap();
        let c = curvature(&rw_chart(&hist), &[0.3, 0.1, -0.2, 0.5]).unwrap();
        assert!(c.riemann.max_abs() < 1e-14);
    }

    #[test]
    fn exponential_rw_matches_steady_state() {
        let hist = ScaleHistory::exponential(0.7, 0).unwrap();
        let rw = rw_chart(&hist);
        let ss = steady_state_chart(0.7).unwrap();
        for p in [[0.0, 0.0, 0.0, 0.0], [1.2, -0.3, 2.0, 0.4]] {
            assert!(max_abs(&(rw.metric_at(&p).unwrap() - ss.metric_at(&p).unwrap())) < 1e-15);
        }
    }

    #[test]
    fn closed_rw_slice_is_positively_curved() {
        let hist = ScaleHistory::new(|t| t * 0.0 + 2.0, 1, (-1.0, 1.0)).unwrap();
        let rw = rw_chart(&hist);
        // spatial metric is −g restricted to the slice
        let slice = Chart::new(
            "slice",
            vec![1, 1, 1],
            move |x: &[Jet]| {
                let full = rw.metric_jets(&[Jet::constant(0.0), x[0], x[1], x[2]]);
                (0..9).map(|i| -full[(i / 3 + 1) * 4 + i % 3 + 1]).collect()
            },
            |_| Ok(()),
        );
        let s = scalar_curvature(&slice, &[0.2, 0.1, -0.3]).unwrap().re;
        // three-sphere of radius 2: 𝓡 = 6/4
        assert!((s - 1.5).abs() < 1e-10);
    }

    #[test]
    fn redshift_examples() {
        let h = ScaleHistory::exponential(0.4, 0).unwrap();
        assert_eq!(redshift(&h, 1.0, 1.0).unwrap(), 1.0);
        assert!((redshift(&h, 0.0, 2.5).unwrap() - 1f64.exp()).abs() < 1e-12);
        assert!((redshift_from_hubble(&h, 0.0, 2.5).unwrap() - 1f64.exp()).abs() < 1e-12);
        let lin = ScaleHistory::power(1.0, 0).unwrap();
        assert!((redshift(&lin, 1.0, 2.0).unwrap() - 2.0).abs() < 1e-15);
        assert!((comoving_distance(&lin, 1.0, 2.0).unwrap() - 2f64.ln()).abs() < 1e-10);
        assert!(redshift(&lin, -1.0, 2.0).unwrap_err().is_domain());
        assert!(redshift(&lin, 2.0, 1.0).unwrap_err().is_domain());
    }

    #[test]
    fn hubble_rate_from_scale() {
        let h = ScaleHistory::power(0.5, 0).unwrap().with_hubble(|t| 0.5 / t);
        assert!(h.hubble_mismatch(&[0.5, 1.0, 7.0]).unwrap() < 1e-12);
    }

    #[test]
    fn steady_state_values() {
        let ss = steady_state_chart(1.0).unwrap();
        let g0 = ss.metric_at(&[0.0, 0.3, 0.0, 0.0]).unwrap();
        assert_eq!(g0[(1, 1)].re, -1.0);
        let g1 = ss.metric_at(&[1.0, 0.3, 0.0, 0.0]).unwrap();
        assert!((g1[(1, 1)].re / g0[(1, 1)].re - 1f64.exp().powi(2)).abs() < 1e-13);
        let s = scalar_curvature(&steady_state_chart_2d(1.0).unwrap(), &[0.4, 1.0]).unwrap().re;
        assert!((s.abs() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn ds2_embedding() {
        assert_eq!(ds2_embed(0.0, 0.0), [0.0, 0.0, 1.0]);
        let ss = steady_state_chart_2d(1.0).unwrap();
        for (t, x) in [(0.3, 0.5), (-1.0, 2.0), (2.0, -0.7)] {
            let p = ds2_embed(t, x);
            assert!(ds2_residual(p).abs() < 1e-10);
            let pull = flat_pullback(&DS2_AMBIENT, &ds2_embed_jets, &[t, x]);
            assert!(max_abs(&(pull - ss.metric_at(&[t, x]).unwrap())) < 1e-8);
        }
        for t in [-1.0, 0.0, 0.8] {
            let p = ds2_embed(t, 0.5);
            assert!((p[0] / (p[2] + p[1]) - 0.5).abs() < 1e-14);
        }
        assert!(ds2_quadric().residual(ds2_embed(0.7, -0.2)).abs() < 1e-10);
    }

    #[test]
    fn einstein_lambda_fits() {
        let fit = verify_einstein_lambda(&minkowski(), &[vec![0.0; 4], vec![1.0, 2.0, 3.0, 4.0]]).unwrap();
        assert_eq!(fit.c, 0.0);
        assert!(fit.residual < 1e-10);
        let grid: Vec<Vec<f64>> = (0..5).map(|i| vec![0.3 * i as f64 - 0.6, 0.1 * i as f64]).collect();
        let fit = verify_einstein_lambda(&steady_state_chart_2d(1.0).unwrap(), &grid).unwrap();
        assert!(fit.residual < 1e-8);
        assert!((fit.c + 1.0).abs() < 1e-9);
        let grid4: Vec<Vec<f64>> = grid.iter().map(|p| vec![p[0], p[1], 0.2, -0.1]).collect();
        let fit = verify_einstein_lambda(&steady_state_chart(1.0).unwrap(), &grid4).unwrap();
        assert!(fit.residual < 1e-7);
        assert!((fit.c + 3.0).abs() < 1e-9);
    }
}
