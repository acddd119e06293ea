//! Levi-Civita connection and curvature from metric jets.
//!
//! Conventions, shared by the whole crate:
//!
//! * `Γ^k_ij = ½ g^{kl}(∂_i g_jl + ∂_j g_il − ∂_l g_ij)`
//! * `R^ρ_σμν = ∂_μ Γ^ρ_νσ − ∂_ν Γ^ρ_μσ + Γ^ρ_μλ Γ^λ_νσ − Γ^ρ_νλ Γ^λ_μσ`
//! * `R_ρσμν = g_ρα R^α_σμν`, `R_σν = R^ρ_σρν`, `𝓡 = g^{σν} R_σν`
//!
//! With these signs a surface of constant Gaussian curvature `K` satisfies
//! `R_ijkl = K (g_ik g_jl − g_il g_jk)` and `R_ij = K g_ij`, and `K = 𝓡/2`
//! in two dimensions. Spacetime charts use signature (+−−−).

use crate::chart::Chart;
use crate::error::{GeomError, Result};
use crate::jet::{Jet, C64};
use crate::tensor::{CMatrix, TensorValue, Variance};

/// Metrics with |det g| below this are rejected as singular.
pub const SINGULAR_DET: f64 = 1e-12;

const Z: C64 = C64 { re: 0.0, im: 0.0 };

/// Metric, inverse, connection and curvature at one point.
#[derive(Clone, Debug)]
pub struct LocalGeometry {
    pub point: Vec<f64>,
    pub dim: usize,
    pub g: CMatrix,
    pub g_inv: CMatrix,
    /// `dg[k][i][j] = ∂_k g_ij`
    dg: Vec<C64>,
    /// `ddg[k][l][i][j] = ∂_k ∂_l g_ij`
    ddg: Vec<C64>,
    /// `gamma[k][i][j] = Γ^k_ij`
    gamma: Vec<C64>,
}

impl LocalGeometry {
    pub fn at(chart: &Chart, point: &[f64]) -> Result<LocalGeometry> {
        chart.check_domain(point)?;
        let n = chart.dim();
        let x = Jet::seed(point);
        let gj = chart.metric_jets(&x);
        let g = CMatrix::from_fn(n, n, |i, j| gj[i * n + j].value);
        let det = g.determinant();
        if !(det.norm() >= SINGULAR_DET) {
            return Err(GeomError::SingularMetric {
                point: point.to_vec(),
                det: det.norm(),
            });
        }
        let g_inv = g.clone().try_inverse().ok_or(GeomError::SingularMetric {
            point: point.to_vec(),
            det: det.norm(),
        })?;
        let mut dg = vec![Z; n * n * n];
        let mut ddg = vec![Z; n * n * n * n];
        for i in 0..n {
            for j in 0..n {
                let e = &gj[i * n + j];
                for k in 0..n {
                    dg[(k * n + i) * n + j] = e.grad[k];
                    for l in 0..n {
                        ddg[((k * n + l) * n + i) * n + j] = e.hess[k][l];
                    }
                }
            }
        }
        let mut geo = LocalGeometry {
            point: point.to_vec(),
            dim: n,
            g,
            g_inv,
            dg,
            ddg,
            gamma: Vec::new(),
        };
        geo.gamma = geo.compute_gamma();
        Ok(geo)
    }

    #[inline]
    pub fn dg(&self, k: usize, i: usize, j: usize) -> C64 {
        let n = self.dim;
        self.dg[(k * n + i) * n + j]
    }

    #[inline]
    fn ddg(&self, k: usize, l: usize, i: usize, j: usize) -> C64 {
        let n = self.dim;
        self.ddg[((k * n + l) * n + i) * n + j]
    }

    /// `Γ^k_ij`
    #[inline]
    pub fn gamma(&self, k: usize, i: usize, j: usize) -> C64 {
        let n = self.dim;
        self.gamma[(k * n + i) * n + j]
    }

    fn compute_gamma(&self) -> Vec<C64> {
        let n = self.dim;
        let mut out = vec![Z; n * n * n];
        for k in 0..n {
            for i in 0..n {
                for j in i..n {
                    let mut s = Z;
                    for l in 0..n {
                        s += self.g_inv[(k, l)]
                            * (self.dg(i, j, l) + self.dg(j, i, l) - self.dg(l, i, j));
                    }
                    s *= 0.5;
                    out[(k * n + i) * n + j] = s;
                    out[(k * n + j) * n + i] = s;
                }
            }
        }
        out
    }

    /// `∂_m Γ^k_ij`, built from `∂g^{-1} = −g^{-1} ∂g g^{-1}` and `∂∂g`.
    fn dgamma(&self) -> Vec<C64> {
        let n = self.dim;
        // dginv[m][k][l]
        let mut dginv = vec![Z; n * n * n];
        for m in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut s = Z;
                    for a in 0..n {
                        for b in 0..n {
                            s += self.g_inv[(k, a)] * self.dg(m, a, b) * self.g_inv[(b, l)];
                        }
                    }
                    dginv[(m * n + k) * n + l] = -s;
                }
            }
        }
        let mut out = vec![Z; n * n * n * n];
        for m in 0..n {
            for k in 0..n {
                for i in 0..n {
                    for j in i..n {
                        let mut s = Z;
                        for l in 0..n {
                            let first = self.dg(i, j, l) + self.dg(j, i, l) - self.dg(l, i, j);
                            let second = self.ddg(m, i, j, l) + self.ddg(m, j, i, l)
                                - self.ddg(m, l, i, j);
                            s += dginv[(m * n + k) * n + l] * first + self.g_inv[(k, l)] * second;
                        }
                        s *= 0.5;
                        out[((m * n + k) * n + i) * n + j] = s;
                        out[((m * n + k) * n + j) * n + i] = s;
                    }
                }
            }
        }
        out
    }

    /// Mixed Riemann tensor `R^ρ_σμν` as a flat array.
    fn riemann_mixed(&self) -> Vec<C64> {
        let n = self.dim;
        let dgam = self.dgamma();
        let dgamma = |m: usize, k: usize, i: usize, j: usize| dgam[((m * n + k) * n + i) * n + j];
        let mut out = vec![Z; n * n * n * n];
        for r in 0..n {
            for s in 0..n {
                for mu in 0..n {
                    for nu in (mu + 1)..n {
                        let mut v = dgamma(mu, r, nu, s) - dgamma(nu, r, mu, s);
                        for l in 0..n {
                            v += self.gamma(r, mu, l) * self.gamma(l, nu, s)
                                - self.gamma(r, nu, l) * self.gamma(l, mu, s);
                        }
                        out[((r * n + s) * n + mu) * n + nu] = v;
                        out[((r * n + s) * n + nu) * n + mu] = -v;
                    }
                }
            }
        }
        out
    }

    pub fn christoffel(&self) -> TensorValue {
        TensorValue::new(
            self.dim,
            vec![Variance::Upper, Variance::Lower, Variance::Lower],
            self.point.clone(),
            self.gamma.clone(),
        )
        .expect("christoffel shape")
    }

    pub fn curvature(&self) -> Curvature {
        let n = self.dim;
        let mixed = self.riemann_mixed();
        let mut lower = vec![Z; n * n * n * n];
        for r in 0..n {
            for s in 0..n {
                for mu in 0..n {
                    for nu in 0..n {
                        let mut v = Z;
                        for a in 0..n {
                            v += self.g[(r, a)] * mixed[((a * n + s) * n + mu) * n + nu];
                        }
                        lower[((r * n + s) * n + mu) * n + nu] = v;
                    }
                }
            }
        }
        let mut ricci = CMatrix::zeros(n, n);
        for s in 0..n {
            for nu in 0..n {
                let mut v = Z;
                for r in 0..n {
                    v += mixed[((r * n + s) * n + r) * n + nu];
                }
                ricci[(s, nu)] = v;
            }
        }
        let scalar = (&self.g_inv * &ricci).trace();
        Curvature {
            point: self.point.clone(),
            dim: n,
            riemann: TensorValue::new(n, vec![Variance::Lower; 4], self.point.clone(), lower)
                .expect("riemann shape"),
            ricci,
            scalar,
        }
    }
}

/// Curvature at a point.
#[derive(Clone, Debug)]
pub struct Curvature {
    pub point: Vec<f64>,
    pub dim: usize,
    /// All-lower `R_ijkl`.
    pub riemann: TensorValue,
    pub ricci: CMatrix,
    pub scalar: C64,
}

impl Curvature {
    /// `K = 𝓡/2`.
    pub fn gaussian(&self) -> C64 {
        self.scalar * 0.5
    }

    pub fn ricci_tensor(&self) -> TensorValue {
        TensorValue::from_matrix(&self.ricci, [Variance::Lower; 2], self.point.clone())
    }
}

pub fn christoffel(chart: &Chart, point: &[f64]) -> Result<TensorValue> {
    Ok(LocalGeometry::at(chart, point)?.christoffel())
}

pub fn curvature(chart: &Chart, point: &[f64]) -> Result<Curvature> {
    Ok(LocalGeometry::at(chart, point)?.curvature())
}

pub fn riemann(chart: &Chart, point: &[f64]) -> Result<TensorValue> {
    Ok(curvature(chart, point)?.riemann)
}

pub fn ricci(chart: &Chart, point: &[f64]) -> Result<TensorValue> {
    Ok(curvature(chart, point)?.ricci_tensor())
}

pub fn scalar_curvature(chart: &Chart, point: &[f64]) -> Result<C64> {
    Ok(curvature(chart, point)?.scalar)
}

pub fn gaussian_curvature(chart: &Chart, point: &[f64]) -> Result<C64> {
    Ok(curvature(chart, point)?.gaussian())
}

/// ‖R_ijkl − K(g_ik g_jl − g_il g_jk)‖∞ at a point.
pub fn constant_curvature_defect(chart: &Chart, point: &[f64], k: f64) -> Result<f64> {
    let geo = LocalGeometry::at(chart, point)?;
    let curv = geo.curvature();
    let g = &geo.g;
    let mut worst = 0.0f64;
    for idx in curv.riemann.indices() {
        let (i, j, a, b) = (idx[0], idx[1], idx[2], idx[3]);
        let model = (g[(i, a)] * g[(j, b)] - g[(i, b)] * g[(j, a)]) * k;
        worst = worst.max((curv.riemann.get(&idx) - model).norm());
    }
    Ok(worst)
}

/// Central-difference Christoffel symbols with one Richardson extrapolation.
/// Independent of the jet path apart from sharing the metric closure's
/// values; used as a cross-check.
pub fn christoffel_finite_difference(chart: &Chart, point: &[f64], h: f64) -> Result<TensorValue> {
    chart.check_domain(point)?;
    let n = chart.dim();
    let dmetric = |k: usize, step: f64| -> CMatrix {
        let mut p = point.to_vec();
        p[k] += step;
        let plus = chart.metric_unchecked(&p);
        p[k] -= 2.0 * step;
        let minus = chart.metric_unchecked(&p);
        (plus - minus) / C64::new(2.0 * step, 0.0)
    };
    let dg: Vec<CMatrix> = (0..n)
        .map(|k| {
            let coarse = dmetric(k, h);
            let fine = dmetric(k, h / 2.0);
            (fine * C64::new(4.0, 0.0) - coarse) / C64::new(3.0, 0.0)
        })
        .collect();
    let g = chart.metric_unchecked(point);
    let g_inv = g.try_inverse().ok_or(GeomError::SingularMetric {
        point: point.to_vec(),
        det: 0.0,
    })?;
    let mut out = TensorValue::zeros(
        n,
        vec![Variance::Upper, Variance::Lower, Variance::Lower],
        point.to_vec(),
    );
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut s = Z;
                for l in 0..n {
                    s += g_inv[(k, l)] * (dg[i][(j, l)] + dg[j][(i, l)] - dg[l][(i, j)]);
                }
                out.set(&[k, i, j], s * 0.5);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{euclidean, minkowski};

    fn sphere(r: f64) -> Chart {
        Chart::diagonal(
            "sphere",
            vec![1, 1],
            move |x: &[Jet]| vec![Jet::constant(r * r), x[0].sin().powi(2) * (r * r)],
            |p| {
                if p[0] > 1e-9 && p[0] < std::f64::consts::PI - 1e-9 {
                    Ok(())
                } else {
                    Err("pole".into())
                }
            },
        )
    }

    #[test]
    fn flat_space_has_no_connection_or_curvature() {
        let g = christoffel(&euclidean(2), &[0.3, -2.0]).unwrap();
        assert_eq!(g.max_abs(), 0.0);
        assert_eq!(scalar_curvature(&euclidean(2), &[1.0, 1.0]).unwrap().norm(), 0.0);
        assert_eq!(riemann(&minkowski(), &[0.0; 4]).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn sphere_christoffel_closed_form() {
        let theta = std::f64::consts::FRAC_PI_3;
        let g = christoffel(&sphere(1.0), &[theta, 0.2]).unwrap();
        // Γ^θ_φφ = −sinθ cosθ, Γ^φ_θφ = cotθ
        assert!((g.get(&[0, 1, 1]).re + 3f64.sqrt() / 4.0).abs() < 1e-14);
        assert!((g.get(&[1, 0, 1]).re - 1.0 / theta.tan()).abs() < 1e-14);
        assert_eq!(g.get(&[1, 0, 1]), g.get(&[1, 1, 0]));
    }

    #[test]
    fn sphere_scalar_curvature() {
        for th in [0.3, 1.0, 2.5] {
            let s = scalar_curvature(&sphere(2.0), &[th, 0.0]).unwrap();
            assert!((s.re - 0.5).abs() < 1e-12, "{s}");
            assert!(constant_curvature_defect(&sphere(2.0), &[th, 0.0], 0.25).unwrap() < 1e-12);
        }
    }

    #[test]
    fn scaling_metric_scales_curvature_inversely() {
        let base = sphere(1.0);
        for alpha in [2.0, -3.0, 0.5] {
            let s0 = scalar_curvature(&base, &[0.8, 0.0]).unwrap();
            let s1 = scalar_curvature(&base.scaled(alpha), &[0.8, 0.0]).unwrap();
            assert!(((s1 - s0 / alpha) / s0).norm() < 1e-12);
        }
    }

    #[test]
    fn singular_metric_is_rejected() {
        let ch = Chart::diagonal("degenerate", vec![1, 1], |x: &[Jet]| vec![Jet::constant(1.0), x[0]], |_| Ok(()));
        let err = christoffel(&ch, &[0.0, 0.0]).unwrap_err();
        assert!(matches!(err, GeomError::SingularMetric { .. }));
    }

    #[test]
    fn finite_differences_agree_with_jets() {
        let ch = sphere(1.5);
        let p = [0.9, 0.4];
        let ad = christoffel(&ch, &p).unwrap();
        let fd = christoffel_finite_difference(&ch, &p, 1e-5).unwrap();
        assert!(ad.max_abs_diff(&fd) < 1e-6);
    }
}
