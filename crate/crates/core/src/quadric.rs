//! Fundamental quadrics `ε_ξ ξ² + ε_η η² + ε_ζ ζ² = ε R²` in a flat
//! three-dimensional space of signature `(ε_ξ, ε_η, ε_ζ)`, with their
//! intrinsic charts and the Beltrami-type models.

use std::fmt;

use nalgebra::Matrix3;

use crate::chart::{Chart, DOMAIN_MARGIN};
use crate::error::{GeomError, Result};
use crate::jet::Jet;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadricSpec {
    pub eps_xi: i8,
    pub eps_eta: i8,
    pub eps_zeta: i8,
    pub eps: i8,
    pub radius: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Topology {
    Sphere,
    OneSheet,
    TwoSheet,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadricClass {
    pub topology: Topology,
    /// Signs of the intrinsic metric in chart order, `(θ, φ)` or `(χ, φ)`.
    pub induced_signature: [i8; 2],
    pub curvature: f64,
}

fn sign_char(s: i8) -> char {
    if s > 0 {
        '+'
    } else {
        '-'
    }
}

impl fmt::Display for QuadricSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}{}{},{})",
            sign_char(self.eps_xi),
            sign_char(self.eps_eta),
            sign_char(self.eps_zeta),
            sign_char(self.eps)
        )
    }
}

impl QuadricSpec {
    pub fn new(signs: [i8; 4], radius: f64) -> Result<QuadricSpec> {
        if signs.iter().any(|s| s.abs() != 1) {
            return Err(GeomError::InvalidParameter(format!("quadric signs must be ±1, got {signs:?}")));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(GeomError::InvalidParameter(format!("radius must be positive, got {radius}")));
        }
        let q = QuadricSpec {
            eps_xi: signs[0],
            eps_eta: signs[1],
            eps_zeta: signs[2],
            eps: signs[3],
            radius,
        };
        q.check_admissible()?;
        Ok(q)
    }

    /// Parses sign patterns such as `--+,+`, `(--+,+)` or `--++`.
    pub fn parse(pattern: &str, radius: f64) -> Result<QuadricSpec> {
        let signs: Vec<i8> = pattern
            .chars()
            .filter_map(|c| match c {
                '+' | 'p' => Some(1),
                '-' | 'm' | '−' => Some(-1),
                _ => None,
            })
            .collect();
        let signs: [i8; 4] = signs
            .try_into()
            .map_err(|_| GeomError::InvalidParameter(format!("bad quadric sign pattern `{pattern}`")))?;
        QuadricSpec::new(signs, radius)
    }

    fn check_admissible(&self) -> Result<()> {
        let s = [self.eps_xi, self.eps_eta, self.eps_zeta];
        if s.iter().all(|&x| x == -self.eps) {
            return Err(GeomError::ForbiddenQuadric(format!("{self} has no real points")));
        }
        Ok(())
    }

    /// The six canonical quadrics with the distinguished axis on `ζ`.
    pub fn fundamental(radius: f64) -> Vec<QuadricSpec> {
        [
            [1, 1, 1, 1],
            [-1, -1, -1, -1],
            [1, 1, -1, 1],
            [1, 1, -1, -1],
            [-1, -1, 1, 1],
            [-1, -1, 1, -1],
        ]
        .into_iter()
        .map(|s| QuadricSpec::new(s, radius).expect("canonical patterns are admissible"))
        .collect()
    }

    /// Every admissible sign pattern (fourteen of them).
    pub fn all_admissible(radius: f64) -> Vec<QuadricSpec> {
        let mut out = Vec::new();
        for bits in 0..16u8 {
            let s = |k: u8| if bits >> k & 1 == 1 { -1 } else { 1 };
            if let Ok(q) = QuadricSpec::new([s(3), s(2), s(1), s(0)], radius) {
                out.push(q);
            }
        }
        out
    }

    pub fn ambient_signs(&self) -> [f64; 3] {
        [self.eps_xi as f64, self.eps_eta as f64, self.eps_zeta as f64]
    }

    pub fn curvature(&self) -> f64 {
        self.eps as f64 / (self.radius * self.radius)
    }

    /// `ε_ξ ξ² + ε_η η² + ε_ζ ζ² − ε R²`.
    pub fn residual(&self, p: [f64; 3]) -> f64 {
        let s = self.ambient_signs();
        s[0] * p[0] * p[0] + s[1] * p[1] * p[1] + s[2] * p[2] * p[2] - self.eps as f64 * self.radius * self.radius
    }

    fn layout(&self) -> Layout {
        let s = [self.eps_xi, self.eps_eta, self.eps_zeta];
        if s[0] == s[1] && s[1] == s[2] {
            return Layout {
                topology: Topology::Sphere,
                odd: 2,
                pair: [0, 1],
            };
        }
        let odd = (0..3)
            .find(|&i| s.iter().filter(|&&x| x == s[i]).count() == 1)
            .expect("mixed signs have a unique odd axis");
        let pair: Vec<usize> = (0..3).filter(|&i| i != odd).collect();
        let topology = if self.eps == s[odd] {
            Topology::TwoSheet
        } else {
            Topology::OneSheet
        };
        Layout {
            topology,
            odd,
            pair: [pair[0], pair[1]],
        }
    }
}

struct Layout {
    topology: Topology,
    odd: usize,
    pair: [usize; 2],
}

pub fn classify(q: &QuadricSpec) -> Result<QuadricClass> {
    q.check_admissible()?;
    let e = q.eps;
    let induced_signature = match q.layout().topology {
        Topology::Sphere => [e, e],
        Topology::TwoSheet => [-e, -e],
        Topology::OneSheet => [-e, e],
    };
    Ok(QuadricClass {
        topology: q.layout().topology,
        induced_signature,
        curvature: q.curvature(),
    })
}

/// Intrinsic chart: `(θ, φ)` for spheres, `(χ, φ)` otherwise.
pub fn hyperbolic_chart(q: &QuadricSpec) -> Result<Chart> {
    let class = classify(q)?;
    let k = q.eps as f64 * q.radius * q.radius;
    let name = format!("quadric{q}");
    let sig = class.induced_signature.to_vec();
    let chart = match class.topology {
        Topology::Sphere => Chart::diagonal(
            name,
            sig,
            move |x: &[Jet]| vec![Jet::constant(k), x[0].sin().powi(2) * k],
            |p| {
                if p[0] > DOMAIN_MARGIN && p[0] < std::f64::consts::PI - DOMAIN_MARGIN {
                    Ok(())
                } else {
                    Err("θ must lie strictly between the poles".into())
                }
            },
        ),
        Topology::TwoSheet => Chart::diagonal(
            name,
            sig,
            move |x: &[Jet]| vec![Jet::constant(-k), x[0].sinh().powi(2) * -k],
            |p| {
                if p[0].abs() > DOMAIN_MARGIN {
                    Ok(())
                } else {
                    Err("χ = 0 is the pole of the polar chart".into())
                }
            },
        ),
        Topology::OneSheet => Chart::diagonal(
            name,
            sig,
            move |x: &[Jet]| vec![Jet::constant(-k), x[0].cosh().powi(2) * k],
            |_| Ok(()),
        ),
    };
    Ok(chart)
}

/// Embedding of the intrinsic chart coordinates, over jets.
pub fn embed_jets(q: &QuadricSpec, x: &[Jet]) -> Vec<Jet> {
    let r = q.radius;
    let l = q.layout();
    let mut out = vec![Jet::constant(0.0); 3];
    let (radial, axial) = match l.topology {
        Topology::Sphere => (x[0].sin() * r, x[0].cos() * r),
        Topology::TwoSheet => (x[0].sinh() * r, x[0].cosh() * r),
        Topology::OneSheet => (x[0].cosh() * r, x[0].sinh() * r),
    };
    out[l.odd] = axial;
    out[l.pair[0]] = radial * x[1].cos();
    out[l.pair[1]] = radial * x[1].sin();
    out
}

pub fn embed_point(q: &QuadricSpec, coords: &[f64]) -> Result<[f64; 3]> {
    hyperbolic_chart(q)?.check_domain(coords)?;
    let x: Vec<Jet> = coords.iter().map(|&c| Jet::constant(c)).collect();
    let e = embed_jets(q, &x);
    Ok([e[0].re(), e[1].re(), e[2].re()])
}

/// Inverse of [`embed_point`]. Two-sheet points must lie on the sheet where
/// the distinguished coordinate is positive.
pub fn chart_coords(q: &QuadricSpec, p: [f64; 3]) -> Result<[f64; 2]> {
    let l = q.layout();
    let r = q.radius;
    let name = format!("quadric{q}");
    if q.residual(p).abs() > 1e-8 {
        return Err(GeomError::domain(&name, &p, "point is not on the quadric"));
    }
    let (a, b, c) = (p[l.pair[0]], p[l.pair[1]], p[l.odd]);
    let phi = b.atan2(a);
    let first = match l.topology {
        Topology::Sphere => (c / r).clamp(-1.0, 1.0).acos(),
        Topology::TwoSheet => {
            if c <= 0.0 {
                return Err(GeomError::domain(&name, &p, "point is on the lower sheet"));
            }
            (c / r).max(1.0).acosh()
        }
        Topology::OneSheet => (c / r).asinh(),
    };
    Ok([first, phi])
}

pub fn antipodal(p: [f64; 3]) -> [f64; 3] {
    [-p[0], -p[1], -p[2]]
}

/// Beltrami's disk model on `u² + v² < R²`.
pub fn beltrami_metric(radius: f64) -> Chart {
    let r2 = radius * radius;
    Chart::new(
        "beltrami",
        vec![1, 1],
        move |x: &[Jet]| {
            let (u, v) = (x[0], x[1]);
            let d = (-(u * u) - v * v + r2).powi(2).recip() * r2;
            vec![(-(v * v) + r2) * d, u * v * d, u * v * d, (-(u * u) + r2) * d]
        },
        move |p| {
            if r2 - p[0] * p[0] - p[1] * p[1] > DOMAIN_MARGIN {
                Ok(())
            } else {
                Err("outside the open disk".into())
            }
        },
    )
}

/// The Beltrami-type model of the single-sheet hyperboloid, on
/// `v² − u² < R²`.
pub fn beltrami2_metric(radius: f64) -> Chart {
    let r2 = radius * radius;
    Chart::new(
        "beltrami2",
        vec![-1, 1],
        move |x: &[Jet]| {
            let (u, v) = (x[0], x[1]);
            let d = (u * u - v * v + r2).powi(2).recip() * r2;
            vec![(v * v - r2) * d, -(u * v * d), -(u * v * d), (u * u + r2) * d]
        },
        move |p| {
            if r2 + p[0] * p[0] - p[1] * p[1] > DOMAIN_MARGIN {
                Ok(())
            } else {
                Err("outside the region v² − u² < R²".into())
            }
        },
    )
}

pub fn stereographic_to_beltrami(chi: f64, phi: f64, radius: f64) -> (f64, f64) {
    let t = radius * chi.tanh();
    (t * phi.cos(), t * phi.sin())
}

/// Central projection of the upper sheet of `ζ² − ξ² − η² = R²` onto the
/// tangent plane `ζ = R`.
pub fn hyperboloid_to_beltrami(p: [f64; 3], radius: f64) -> (f64, f64) {
    (radius * p[0] / p[2], radius * p[1] / p[2])
}

pub fn beltrami_to_hyperboloid(u: f64, v: f64, radius: f64) -> [f64; 3] {
    let s = radius / (radius * radius - u * u - v * v).sqrt();
    [s * u, s * v, s * radius]
}

/// `ds² = (ε_ξ du² + ε_η dv²) / (1 + ε(ε_ξ u² + ε_η v²)/4R²)²`.
pub fn conformally_flat_chart(q: &QuadricSpec) -> Result<Chart> {
    q.check_admissible()?;
    let (ex, ey) = (q.eps_xi as f64, q.eps_eta as f64);
    let c = q.eps as f64 / (4.0 * q.radius * q.radius);
    let den = move |u: f64, v: f64| 1.0 + c * (ex * u * u + ey * v * v);
    Ok(Chart::diagonal(
        format!("conformal{q}"),
        vec![q.eps_xi, q.eps_eta],
        move |x: &[Jet]| {
            let w = ((x[0] * x[0] * ex + x[1] * x[1] * ey) * c + 1.0).powi(-2);
            vec![w * ex, w * ey]
        },
        move |p| {
            if den(p[0], p[1]).abs() >= 1e-9 {
                Ok(())
            } else {
                Err("conformal factor is singular".into())
            }
        },
    ))
}

/// Checks `LᵀGL = G` and maps a point of the quadric.
pub fn ambient_isometry_apply(q: &QuadricSpec, l: &Matrix3<f64>, p: [f64; 3]) -> Result<[f64; 3]> {
    let s = q.ambient_signs();
    let g = Matrix3::from_diagonal(&nalgebra::Vector3::new(s[0], s[1], s[2]));
    let defect = (l.transpose() * g * l - g).amax();
    if defect > 1e-10 {
        return Err(GeomError::NotIsometry(defect));
    }
    if q.residual(p).abs() > 1e-8 {
        return Err(GeomError::domain(&format!("quadric{q}"), &p, "point is not on the quadric"));
    }
    let y = l * nalgebra::Vector3::new(p[0], p[1], p[2]);
    Ok([y[0], y[1], y[2]])
}

/// Rotation by `angle` in the `(i, j)` coordinate plane.
pub fn rotation(i: usize, j: usize, angle: f64) -> Matrix3<f64> {
    let mut m = Matrix3::identity();
    let (s, c) = angle.sin_cos();
    m[(i, i)] = c;
    m[(j, j)] = c;
    m[(i, j)] = -s;
    m[(j, i)] = s;
    m
}

/// Hyperbolic rotation in the `(i, j)` plane, an isometry when the two axes
/// have opposite signs.
pub fn boost(i: usize, j: usize, rapidity: f64) -> Matrix3<f64> {
    let mut m = Matrix3::identity();
    let (s, c) = (rapidity.sinh(), rapidity.cosh());
    m[(i, i)] = c;
    m[(j, j)] = c;
    m[(i, j)] = s;
    m[(j, i)] = s;
    m
}

/// Tractrix profile `(ξ, ζ) = (R/cosh χ, R(χ − tanh χ))`.
pub fn tractrix_point(chi: f64, radius: f64) -> (f64, f64) {
    (radius / chi.cosh(), radius * (chi - chi.tanh()))
}

/// Surface of revolution of the tractrix about the `ζ` axis.
pub fn minding_chart(radius: f64) -> Chart {
    let r2 = radius * radius;
    Chart::diagonal(
        "minding",
        vec![1, 1],
        move |x: &[Jet]| vec![x[0].tanh().powi(2) * r2, x[0].cosh().powi(-2) * r2],
        |p| {
            if p[0].abs() >= 1e-6 {
                Ok(())
            } else {
                Err("cusp of the tractrix".into())
            }
        },
    )
}

/// Minding surface embedded in Euclidean space, over jets.
pub fn minding_embed_jets(radius: f64, x: &[Jet]) -> Vec<Jet> {
    let rho = x[0].cosh().recip() * radius;
    vec![rho * x[1].cos(), rho * x[1].sin(), (x[0] - x[0].tanh()) * radius]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::flat_pullback;
    use crate::curvature::{constant_curvature_defect, gaussian_curvature};
    use crate::tensor::max_abs;

    #[test]
    fn classification_examples() {
        let c = classify(&QuadricSpec::new([-1, -1, 1, 1], 1.0).unwrap()).unwrap();
        assert_eq!(c.topology, Topology::TwoSheet);
        assert_eq!(c.induced_signature, [-1, -1]);
        assert_eq!(c.curvature, 1.0);
        let c = classify(&QuadricSpec::new([1, 1, 1, 1], 1.0).unwrap()).unwrap();
        assert_eq!((c.topology, c.induced_signature), (Topology::Sphere, [1, 1]));
        assert!(matches!(QuadricSpec::new([1, 1, 1, -1], 1.0), Err(GeomError::ForbiddenQuadric(_))));
        assert!(matches!(QuadricSpec::new([-1, -1, -1, 1], 1.0), Err(GeomError::ForbiddenQuadric(_))));
        assert_eq!(QuadricSpec::all_admissible(1.0).len(), 14);
    }

    #[test]
    fn parse_patterns() {
        let q = QuadricSpec::parse("(--+,+)", 2.0).unwrap();
        assert_eq!([q.eps_xi, q.eps_eta, q.eps_zeta, q.eps], [-1, -1, 1, 1]);
        assert_eq!(q.to_string(), "(--+,+)");
        assert!(QuadricSpec::parse("-+", 1.0).is_err());
    }

    #[test]
    fn one_sheet_metric_at_throat() {
        let q = QuadricSpec::new([-1, 1, -1, -1], 1.0).unwrap();
        let g = hyperbolic_chart(&q).unwrap().metric_at(&[0.0, 0.3]).unwrap();
        assert_eq!(g[(0, 0)].re, 1.0);
        assert_eq!(g[(1, 1)].re, -1.0);
        let p = embed_point(&q, &[0.0, 0.0]).unwrap();
        assert!(q.residual(p).abs() < 1e-10);
    }

    #[test]
    fn two_sheet_pole_excluded_and_upper_sheet() {
        let q = QuadricSpec::new([-1, -1, 1, 1], 1.0).unwrap();
        assert!(hyperbolic_chart(&q).unwrap().metric_at(&[0.0, 0.0]).is_err());
        for chi in [0.1, 1.0, 5.0] {
            assert!(embed_point(&q, &[chi, 2.0]).unwrap()[2] > 0.0);
        }
    }

    #[test]
    fn sphere_equator_point() {
        let q = QuadricSpec::new([1, 1, 1, 1], 1.0).unwrap();
        let p = embed_point(&q, &[std::f64::consts::FRAC_PI_2, 0.0]).unwrap();
        assert!((p[0] - 1.0).abs() < 1e-15 && p[1].abs() < 1e-15 && p[2].abs() < 1e-15);
    }

    #[test]
    fn all_charts_have_constant_curvature_and_pull_back() {
        for r in [0.5, 1.0, 2.0] {
            for q in QuadricSpec::all_admissible(r) {
                let ch = hyperbolic_chart(&q).unwrap();
                for pt in [[0.4, 0.2], [1.1, -2.0], [2.5, 3.0]] {
                    let k = gaussian_curvature(&ch, &pt).unwrap();
                    assert!((k.re - q.curvature()).abs() < 1e-8, "{q} {pt:?}");
                    assert!(constant_curvature_defect(&ch, &pt, q.curvature()).unwrap() < 1e-8);
                    let pull = flat_pullback(&q.ambient_signs(), &|x| embed_jets(&q, x), &pt);
                    let g = ch.metric_at(&pt).unwrap();
                    assert!(max_abs(&(pull - g)) < 1e-8);
                    let p = embed_point(&q, &pt).unwrap();
                    assert!(q.residual(p).abs() < 1e-10);
                    let back = chart_coords(&q, p).unwrap();
                    assert!((back[0] - pt[0]).abs() < 1e-9 && (back[1] - pt[1]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn beltrami_values() {
        let b = beltrami_metric(1.0);
        let g = b.metric_at(&[0.5, 0.0]).unwrap();
        assert!((g[(0, 0)].re - 16.0 / 9.0).abs() < 1e-15);
        assert!((g[(1, 1)].re - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(g[(0, 1)].re, 0.0);
        assert!((gaussian_curvature(&b, &[0.2, -0.3]).unwrap().re + 1.0).abs() < 1e-10);
        assert!(b.metric_at(&[1.01, 0.0]).unwrap_err().is_domain());
        let b2 = beltrami2_metric(1.0);
        let g = b2.metric_at(&[0.0, 0.0]).unwrap();
        assert_eq!((g[(0, 0)].re, g[(1, 1)].re, g[(0, 1)].re), (-1.0, 1.0, 0.0));
        assert!((gaussian_curvature(&b2, &[0.3, 0.5]).unwrap().re + 1.0).abs() < 1e-10);
    }

    #[test]
    fn stereographic_map_pulls_back_hyperbolic_metric() {
        let (u, v) = stereographic_to_beltrami(0.5f64.atanh(), 0.0, 1.0);
        assert!((u - 0.5).abs() < 1e-15 && v == 0.0);
        let (u, v) = stereographic_to_beltrami(15.0, 1.0, 1.0);
        assert!(u * u + v * v < 1.0);
        // tanh 20 rounds to 1 in double precision
        let (u, v) = stereographic_to_beltrami(20.0, 1.0, 1.0);
        assert!((u * u + v * v - 20f64.tanh().powi(2)).abs() < 1e-15);
        let q = QuadricSpec::new([-1, -1, 1, 1], 1.5).unwrap();
        let hyp = hyperbolic_chart(&q).unwrap();
        let b = beltrami_metric(1.5);
        for pt in [[0.3, 0.1], [1.2, 2.2]] {
            let map = |x: &[Jet]| {
                let t = x[0].tanh() * 1.5;
                vec![t * x[1].cos(), t * x[1].sin()]
            };
            let image = map(&Jet::seed(&pt));
            let target = b.metric_at(&[image[0].re(), image[1].re()]).unwrap();
            let pull = crate::tensor::CMatrix::from_fn(2, 2, |i, j| {
                let mut s = crate::jet::C64::new(0.0, 0.0);
                for a in 0..2 {
                    for c in 0..2 {
                        s += target[(a, c)] * image[a].grad[i] * image[c].grad[j];
                    }
                }
                s
            });
            assert!(max_abs(&(pull + hyp.metric_at(&pt).unwrap())) < 1e-8);
        }
    }

    #[test]
    fn conformal_charts_have_constant_curvature() {
        for q in QuadricSpec::all_admissible(1.3) {
            let ch = conformally_flat_chart(&q).unwrap();
            for pt in [[0.1, 0.2], [0.7, -0.4]] {
                let k = gaussian_curvature(&ch, &pt).unwrap().re;
                assert!((k - q.curvature()).abs() < 1e-8, "{q}");
            }
        }
        let sphere = conformally_flat_chart(&QuadricSpec::new([1, 1, 1, 1], 1.0).unwrap()).unwrap();
        let g = sphere.metric_at(&[0.0, 0.0]).unwrap();
        assert_eq!((g[(0, 0)].re, g[(1, 1)].re), (1.0, 1.0));
        let disk = conformally_flat_chart(&QuadricSpec::new([1, 1, -1, -1], 1.0).unwrap()).unwrap();
        assert!(disk.metric_at(&[2.0, 0.0]).unwrap_err().is_domain());
    }

    #[test]
    fn isometries() {
        let q = QuadricSpec::new([1, 1, -1, -1], 1.0).unwrap();
        let p = beltrami_to_hyperboloid(0.3, -0.2, 1.0);
        assert_eq!(ambient_isometry_apply(&q, &Matrix3::identity(), p).unwrap(), p);
        let bad = rotation(0, 2, 0.3);
        assert!(matches!(ambient_isometry_apply(&q, &bad, p), Err(GeomError::NotIsometry(_))));
        assert!(ambient_isometry_apply(&q, &Matrix3::identity(), [0.0, 0.0, 0.5]).unwrap_err().is_domain());
        let img = ambient_isometry_apply(&q, &boost(0, 2, 0.7), p).unwrap();
        assert!(q.residual(img).abs() < 1e-8);
        let (u, v) = hyperboloid_to_beltrami(img, 1.0);
        assert!(u * u + v * v < 1.0);
    }

    #[test]
    fn tractrix_and_minding() {
        assert_eq!(tractrix_point(0.0, 1.0), (1.0, 0.0));
        let mut last = f64::INFINITY;
        for k in 0..50 {
            let (xi, _) = tractrix_point(k as f64 * 0.5, 1.0);
            assert!(xi < last || k == 0);
            last = xi;
        }
        let m = minding_chart(1.0);
        assert!((gaussian_curvature(&m, &[1.0, 0.3]).unwrap().re + 1.0).abs() < 1e-8);
        assert!(m.metric_at(&[1e-7, 0.0]).unwrap_err().is_domain());
        let pull = flat_pullback(&[1.0; 3], &|x| minding_embed_jets(1.0, x), &[0.8, 0.4]);
        assert!(max_abs(&(pull - m.metric_at(&[0.8, 0.4]).unwrap())) < 1e-12);
    }
}
