//! Extremal Reissner–Nordström, its near-horizon limit, the three embeddings
//! of the `AdS₂` factor on `ξ² − η² + ζ² = M²`, the Penrose map, and the
//! dyonic and Jackiw–Teitelboim dilaton solutions.
//!
//! Four-dimensional charts use `(t, r, θ, φ)`; two-dimensional blocks use
//! `(t, r)`.

use std::f64::consts::PI;
use std::fmt;

use crate::chart::{flat_pullback, Chart, DOMAIN_MARGIN};
use crate::error::{GeomError, Result};
use crate::jet::Jet;
use crate::tensor::max_abs;

/// Ambient signs of `dσ² = dξ² − dη² + dζ²`.
pub const HORIZON_AMBIENT: [f64; 3] = [1.0, -1.0, 1.0];

fn check_mass(m: f64) -> Result<()> {
    if m > 0.0 && m.is_finite() {
        Ok(())
    } else {
        Err(GeomError::InvalidParameter(format!("M must be positive, got {m}")))
    }
}

fn polar_ok(theta: f64) -> std::result::Result<(), String> {
    if theta > DOMAIN_MARGIN && theta < PI - DOMAIN_MARGIN {
        Ok(())
    } else {
        Err("θ must lie in (0, π)".into())
    }
}

/// `(1 − M/r′)² dt² − (1 − M/r′)⁻² dr′² − r′² dΩ²`.
pub fn rn_extremal_chart(m: f64) -> Result<Chart> {
    check_mass(m)?;
    Ok(Chart::diagonal(
        format!("rn-extremal(M={m})"),
        vec![1, -1, -1, -1],
        move |x: &[Jet]| {
            let f = 1.0 - m / x[1];
            let f2 = f * f;
            let r2 = x[1] * x[1];
            let s = x[2].sin();
            vec![f2, -f2.recip(), -r2, -(r2 * s * s)]
        },
        move |p| {
            if p[1] - m <= DOMAIN_MARGIN {
                return Err("requires r′ > M".into());
            }
            polar_ok(p[2])
        },
    ))
}

/// `M²(r²/M⁴ dt² − dr²/r² − dΩ²)`.
pub fn near_horizon_chart(m: f64) -> Result<Chart> {
    check_mass(m)?;
    let m2 = m * m;
    Ok(Chart::diagonal(
        format!("near-horizon(M={m})"),
        vec![1, -1, -1, -1],
        move |x: &[Jet]| {
            let r2 = x[1] * x[1];
            let s = x[2].sin();
            vec![r2 / m2, -(r2.recip() * m2), Jet::constant(-m2), -(s * s * m2)]
        },
        move |p| {
            if p[1] <= DOMAIN_MARGIN {
                return Err("requires r > 0".into());
            }
            polar_ok(p[2])
        },
    ))
}

/// Largest relative difference between the extremal metric at `r′ = M + r`
/// and the near-horizon metric at `r`, over the diagonal components.
pub fn near_horizon_relative_error(m: f64, r: f64, theta: f64) -> Result<f64> {
    let far = rn_extremal_chart(m)?.metric_at(&[0.0, m + r, theta, 0.0])?;
    let near = near_horizon_chart(m)?.metric_at(&[0.0, r, theta, 0.0])?;
    let mut worst: f64 = 0.0;
    for i in 0..4 {
        worst = worst.max(((far[(i, i)] - near[(i, i)]) / near[(i, i)]).norm());
    }
    Ok(worst)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmbeddingKind {
    Br0,
    BrPlus,
    BrMinus,
}

impl fmt::Display for EmbeddingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EmbeddingKind::Br0 => "br0",
            EmbeddingKind::BrPlus => "br+",
            EmbeddingKind::BrMinus => "br-",
        })
    }
}

impl std::str::FromStr for EmbeddingKind {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<EmbeddingKind> {
        match s.to_ascii_lowercase().as_str() {
            "br0" => Ok(EmbeddingKind::Br0),
            "br+" | "brplus" => Ok(EmbeddingKind::BrPlus),
            "br-" | "brminus" => Ok(EmbeddingKind::BrMinus),
            _ => Err(GeomError::InvalidParameter(format!("unknown embedding `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HorizonEmbedding {
    pub kind: EmbeddingKind,
    pub m: f64,
}

impl HorizonEmbedding {
    pub fn new(kind: EmbeddingKind, m: f64) -> Result<HorizonEmbedding> {
        check_mass(m)?;
        Ok(HorizonEmbedding { kind, m })
    }

    pub fn check_domain(&self, r: f64, t: f64) -> Result<()> {
        let m = self.m;
        let name = format!("{}", self.kind);
        match self.kind {
            EmbeddingKind::Br0 => {
                if r <= 0.0 {
                    return Err(GeomError::domain(&name, &[r, t], "requires r > 0"));
                }
                if r * r * t * t - m.powi(4) <= DOMAIN_MARGIN * m.powi(4) {
                    return Err(GeomError::domain(&name, &[r, t], "requires r²t² > M⁴"));
                }
            }
            EmbeddingKind::BrPlus => {}
            EmbeddingKind::BrMinus => {
                if r * r - m * m <= DOMAIN_MARGIN * m * m {
                    return Err(GeomError::domain(&name, &[r, t], "requires r² > M²"));
                }
            }
        }
        if r.is_finite() && t.is_finite() {
            Ok(())
        } else {
            Err(GeomError::domain(&name, &[r, t], "coordinates must be finite"))
        }
    }

    /// `(ξ, η, ζ)` over jets in the coordinates `x = (t, r)`.
    pub fn embed_jets(&self, x: &[Jet]) -> Vec<Jet> {
        let m = self.m;
        let (t, r) = (x[0], x[1]);
        match self.kind {
            EmbeddingKind::Br0 => {
                let w = r * t / m;
                let rho = (w * w - m * m).sqrt();
                let l = ((t * t) / (m * m) - (r * r).recip() * (m * m)).ln() * 0.5;
                vec![rho * l.sinh(), rho * l.cosh(), -w]
            }
            EmbeddingKind::BrPlus => {
                let a = (r * r + m * m).sqrt();
                let phase = t / m;
                vec![a * phase.sin(), r, a * phase.cos()]
            }
            EmbeddingKind::BrMinus => {
                let a = (r * r - m * m).sqrt();
                let phase = t / m;
                vec![a * phase.sinh(), a * phase.cosh(), r]
            }
        }
    }

    pub fn embed(&self, r: f64, t: f64) -> Result<[f64; 3]> {
        self.check_domain(r, t)?;
        let p = self.embed_jets(&[Jet::constant(t), Jet::constant(r)]);
        Ok([p[0].re(), p[1].re(), p[2].re()])
    }

    /// The `(t, r)` block this embedding induces.
    pub fn block_chart(&self) -> Chart {
        let m = self.m;
        let me = *self;
        let m2 = m * m;
        let diag = move |x: &[Jet]| {
            let r2 = x[1] * x[1];
            match me.kind {
                EmbeddingKind::Br0 => vec![r2 / m2, -(r2.recip() * m2)],
                EmbeddingKind::BrPlus => {
                    let f = r2 / m2 + 1.0;
                    vec![f, -f.recip()]
                }
                EmbeddingKind::BrMinus => {
                    let f = r2 / m2 - 1.0;
                    vec![f, -f.recip()]
                }
            }
        };
        Chart::diagonal(
            format!("{}-block(M={m})", self.kind),
            vec![1, -1],
            diag,
            move |p| me.check_domain(p[1], p[0]).map_err(|e| e.to_string()),
        )
    }

    /// `ξ² − η² + ζ² − M²` at a point.
    pub fn quadric_residual(&self, r: f64, t: f64) -> Result<f64> {
        let [a, b, c] = self.embed(r, t)?;
        Ok(a * a - b * b + c * c - self.m * self.m)
    }

    /// `‖ι*dσ² − block‖∞` at a point.
    pub fn pullback_residual(&self, r: f64, t: f64) -> Result<f64> {
        self.check_domain(r, t)?;
        let me = *self;
        let pulled = flat_pullback(&HORIZON_AMBIENT, &move |x: &[Jet]| me.embed_jets(x), &[t, r]);
        let block = self.block_chart().metric_at(&[t, r])?;
        Ok(max_abs(&(pulled - block)))
    }
}

/// `(−1 + r²/M²) dt² − (−1 + r²/M²)⁻¹ dr² − M² dΩ²`.
pub fn br_minus_chart(m: f64) -> Result<Chart> {
    check_mass(m)?;
    let m2 = m * m;
    Ok(Chart::diagonal(
        format!("br-(M={m})"),
        vec![1, -1, -1, -1],
        move |x: &[Jet]| {
            let f = x[1] * x[1] / m2 - 1.0;
            let s = x[2].sin();
            vec![f, -f.recip(), Jet::constant(-m2), -(s * s * m2)]
        },
        move |p| {
            if p[1] - m <= DOMAIN_MARGIN * m {
                return Err("requires r > M".into());
            }
            polar_ok(p[2])
        },
    ))
}

/// `C(u, v) = −(1 + tan²((u − v)/2))`; the `BR⁺` block equals `−M² C du dv`.
pub fn conformal_factor(u: f64, v: f64) -> Result<f64> {
    let s = 0.5 * (u - v);
    check_pole(s, u, v)?;
    Ok(-(1.0 + s.tan().powi(2)))
}

fn check_pole(s: f64, u: f64, v: f64) -> Result<()> {
    if (s.cos()).abs() <= DOMAIN_MARGIN {
        return Err(GeomError::domain("penrose", &[u, v], "(u − v)/2 is a pole of tan"));
    }
    Ok(())
}

/// Null coordinates of a `BR⁺` point. Time is identified modulo `2πM` and
/// reduced so that `v ∈ [0, 2π)`.
pub fn penrose_map(x: f64, t: f64, m: f64) -> Result<(f64, f64)> {
    check_mass(m)?;
    if !(x.is_finite() && t.is_finite()) {
        return Err(GeomError::domain("penrose", &[x, t], "coordinates must be finite"));
    }
    let s = (x / m).atan();
    let v = (t / m - s).rem_euclid(2.0 * PI);
    Ok((v + 2.0 * s, v))
}

/// `x = M tan((u − v)/2)`, `t = M(u + v)/2`.
pub fn penrose_inverse(u: f64, v: f64, m: f64) -> Result<(f64, f64)> {
    check_mass(m)?;
    let s = 0.5 * (u - v);
    check_pole(s, u, v)?;
    Ok((m * s.tan(), m * 0.5 * (u + v)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PenroseRegion {
    I,
    II,
    III,
    Boundary,
}

impl fmt::Display for PenroseRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PenroseRegion::I => "I",
            PenroseRegion::II => "II",
            PenroseRegion::III => "III",
            PenroseRegion::Boundary => "boundary",
        })
    }
}

/// Tolerance, relative to `M`, for points on the null lines `|ζ| = M`.
pub const REGION_TOL: f64 = 1e-12;

/// Region of a point of the Penrose diagram, decided by `ζ` on the quadric:
/// `I` for `ζ > M` (the image of `BR⁻`), `II` for `|ζ| < M`, `III` for
/// `ζ < −M`, and the boundary on the null lines `|ζ| = M`.
pub fn region_classify(u: f64, v: f64, m: f64) -> Result<PenroseRegion> {
    let (x, t) = penrose_inverse(u, v, m)?;
    let zeta = HorizonEmbedding::new(EmbeddingKind::BrPlus, m)?.embed(x, t)?[2];
    let d = zeta.abs() - m;
    Ok(if d.abs() <= REGION_TOL * m.max(zeta.abs()) {
        PenroseRegion::Boundary
    } else if d < 0.0 {
        PenroseRegion::II
    } else if zeta > 0.0 {
        PenroseRegion::I
    } else {
        PenroseRegion::III
    })
}

/// `BR⁺` coordinates `(x, t)` of a point on the quadric, with `t/M ∈ (−π, π]`.
pub fn br_plus_coords(p: [f64; 3], m: f64) -> (f64, f64) {
    (p[1], m * p[0].atan2(p[2]))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DilatonFamily {
    Dyonic { r_plus: f64, r_minus: f64 },
    Jt { lambda: f64, a2: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DilatonSolution {
    pub family: DilatonFamily,
    pub phi0: f64,
}

pub fn dyonic_solution(r_plus: f64, r_minus: f64, phi0: f64) -> Result<DilatonSolution> {
    if !(r_plus > 0.0 && r_minus > 0.0 && r_plus.is_finite()) {
        return Err(GeomError::InvalidParameter("R₊ and R₋ must be positive".into()));
    }
    Ok(DilatonSolution {
        family: DilatonFamily::Dyonic { r_plus, r_minus },
        phi0,
    })
}

pub fn jt_solution(lambda: f64, a2: f64, phi0: f64) -> Result<DilatonSolution> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(GeomError::InvalidParameter(format!("Λ must be positive, got {lambda}")));
    }
    if !a2.is_finite() {
        return Err(GeomError::InvalidParameter("a² must be finite".into()));
    }
    Ok(DilatonSolution {
        family: DilatonFamily::Jt { lambda, a2 },
        phi0,
    })
}

fn levi_civita(idx: [usize; 4]) -> f64 {
    let mut sign = 1.0;
    let mut v = idx;
    for i in 0..4 {
        for j in i + 1..4 {
            if v[i] == v[j] {
                return 0.0;
            }
            if v[i] > v[j] {
                sign = -sign;
            }
        }
    }
    v.sort_unstable();
    sign
}

impl DilatonSolution {
    /// `q = √(R₊R₋)`; zero for the two-dimensional family.
    pub fn charge(&self) -> f64 {
        match self.family {
            DilatonFamily::Dyonic { r_plus, r_minus } => (r_plus * r_minus).sqrt(),
            DilatonFamily::Jt { .. } => 0.0,
        }
    }

    /// `M = (R₊ + 3R₋/2)/2`; zero for the two-dimensional family.
    pub fn mass(&self) -> f64 {
        match self.family {
            DilatonFamily::Dyonic { r_plus, r_minus } => 0.5 * (r_plus + 1.5 * r_minus),
            DilatonFamily::Jt { .. } => 0.0,
        }
    }

    /// `(t, r, θ, φ)` for the dyonic family, `(t, r)` for JT.
    pub fn chart(&self) -> Chart {
        match self.family {
            DilatonFamily::Dyonic { r_plus, r_minus } => Chart::diagonal(
                format!("dyonic(R+={r_plus},R-={r_minus})"),
                vec![1, -1, -1, -1],
                move |x: &[Jet]| {
                    let a = 1.0 - r_plus / x[1];
                    let b = 1.0 - r_minus / x[1];
                    let r2 = x[1] * x[1];
                    let s = x[2].sin();
                    vec![a, -(a * b).recip(), -r2, -(r2 * s * s)]
                },
                move |p| {
                    if p[1] - r_plus <= DOMAIN_MARGIN * r_plus || p[1] <= r_minus {
                        return Err("requires r > R₊".into());
                    }
                    polar_ok(p[2])
                },
            ),
            DilatonFamily::Jt { lambda, a2 } => Chart::diagonal(
                format!("jt(Λ={lambda},a²={a2})"),
                vec![1, -1],
                move |x: &[Jet]| {
                    let f = x[1] * x[1] * lambda - a2;
                    vec![f, -f.recip()]
                },
                move |p| {
                    if p[1] <= 0.0 || lambda * p[1] * p[1] - a2 <= DOMAIN_MARGIN {
                        Err("requires r > 0 and Λr² > a²".into())
                    } else {
                        Ok(())
                    }
                },
            ),
        }
    }

    /// `φ` at a point of [`DilatonSolution::chart`].
    pub fn dilaton(&self, point: &[f64]) -> Result<f64> {
        self.chart().check_domain(point)?;
        let r = point[1];
        Ok(self.phi0
            + match self.family {
                DilatonFamily::Dyonic { r_plus, .. } => -0.25 * (1.0 - r_plus / r).ln(),
                DilatonFamily::Jt { lambda, .. } => -0.5 * (lambda.sqrt() * r).ln(),
            })
    }

    /// `F_μν = (2q/√3 r²) ε_μνρσ u^ρ v^σ` with `u`, `v` the unit vectors along
    /// `∂_θ`, `∂_φ`. `None` for the two-dimensional family.
    pub fn field(&self, point: &[f64]) -> Result<Option<nalgebra::Matrix4<f64>>> {
        let chart = self.chart();
        let g = chart.metric_at(point)?;
        if chart.dim() != 4 {
            return Ok(None);
        }
        let vol = g.determinant().norm().sqrt();
        let mut u = [0.0; 4];
        let mut v = [0.0; 4];
        u[2] = 1.0 / (-g[(2, 2)].re).sqrt();
        v[3] = 1.0 / (-g[(3, 3)].re).sqrt();
        let r = point[1];
        let k = 2.0 * self.charge() / (3f64.sqrt() * r * r);
        let mut f = nalgebra::Matrix4::zeros();
        for mu in 0..4 {
            for nu in 0..4 {
                let mut s = 0.0;
                for rho in 0..4 {
                    for sigma in 0..4 {
                        s += levi_civita([mu, nu, rho, sigma]) * u[rho] * v[sigma];
                    }
                }
                f[(mu, nu)] = k * vol * s;
            }
        }
        Ok(Some(f))
    }
}

/// `q²(4 sinh²η dt² − 4 dη² − dΩ²)` in `(t, η, θ, φ)`.
pub fn dyonic_extremal_chart(q: f64) -> Result<Chart> {
    if !(q > 0.0 && q.is_finite()) {
        return Err(GeomError::InvalidParameter(format!("q must be positive, got {q}")));
    }
    let q2 = q * q;
    Ok(Chart::diagonal(
        format!("dyonic-extremal(q={q})"),
        vec![1, -1, -1, -1],
        move |x: &[Jet]| {
            let sh = x[1].sinh();
            let s = x[2].sin();
            vec![sh * sh * (4.0 * q2), Jet::constant(-4.0 * q2), Jet::constant(-q2), -(s * s * q2)]
        },
        move |p| {
            if p[1] <= DOMAIN_MARGIN {
                return Err("requires η > 0".into());
            }
            polar_ok(p[2])
        },
    ))
}

/// `η = arsinh √((r − R₊)/(R₊ − R₋))`.
pub fn extremal_variable(r: f64, r_plus: f64, r_minus: f64) -> Result<f64> {
    if r_plus <= r_minus {
        return Err(GeomError::InvalidParameter("requires R₊ > R₋".into()));
    }
    if r <= r_plus {
        return Err(GeomError::domain("dyonic", &[r], "requires r > R₊"));
    }
    Ok(((r - r_plus) / (r_plus - r_minus)).sqrt().asinh())
}
