//! Special-relativistic kinematics on the mass shell, in units with `c = 1`.
//!
//! Velocities are combined through their celerities `χ = artanh v`, so the
//! only loss of precision near the light cone is the final `tanh`.

use crate::error::{GeomError, Result};
use crate::quadric::QuadricSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sheet {
    Particle,
    Antiparticle,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourMomentum {
    pub e: f64,
    pub p: [f64; 3],
}

pub fn mass_shell_energy(p: [f64; 3], m: f64, sheet: Sheet) -> f64 {
    let e = (m * m + p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    match sheet {
        Sheet::Particle => e,
        Sheet::Antiparticle => -e,
    }
}

impl FourMomentum {
    pub fn on_shell(p: [f64; 3], m: f64, sheet: Sheet) -> FourMomentum {
        FourMomentum {
            e: mass_shell_energy(p, m, sheet),
            p,
        }
    }

    /// `E² − |p|²`.
    pub fn invariant_mass_squared(&self) -> f64 {
        self.e * self.e - self.p.iter().map(|x| x * x).sum::<f64>()
    }

    /// `|E² − |p|² − m²|`.
    pub fn shell_residual(&self, m: f64) -> f64 {
        (self.invariant_mass_squared() - m * m).abs()
    }

    pub fn sheet(&self) -> Sheet {
        if self.e < 0.0 {
            Sheet::Antiparticle
        } else {
            Sheet::Particle
        }
    }

    /// Hyperbolic rotation by celerity `chi` in the `(E, p_axis)` plane.
    pub fn boost(&self, chi: f64, axis: usize) -> FourMomentum {
        let (s, c) = (chi.sinh(), chi.cosh());
        let mut p = self.p;
        p[axis] = s * self.e + c * self.p[axis];
        FourMomentum {
            e: c * self.e + s * self.p[axis],
            p,
        }
    }

    /// `(p_x, p_y, E)`, a point of the two-sheet quadric of [`mass_shell_quadric`]
    /// when `p_z = 0`.
    pub fn quadric_point(&self) -> [f64; 3] {
        [self.p[0], self.p[1], self.e]
    }
}

/// The mass shell `E² − p_x² − p_y² = m²` as a fundamental quadric.
pub fn mass_shell_quadric(m: f64) -> Result<QuadricSpec> {
    QuadricSpec::new([-1, -1, 1, 1], m)
}

fn check_speed(v: f64) -> Result<()> {
    if v.is_nan() || v.abs() >= 1.0 {
        return Err(GeomError::SpeedLimit(v));
    }
    Ok(())
}

pub fn celerity(v: f64) -> Result<f64> {
    check_speed(v)?;
    Ok(v.atanh())
}

pub fn speed(chi: f64) -> f64 {
    chi.tanh()
}

/// Lorentz factor `cosh χ = (1 − v²)^(−1/2)`.
pub fn lorentz_factor(v: f64) -> Result<f64> {
    Ok(celerity(v)?.cosh())
}

/// Celerity of the composition: `cosh χ = cosh χ₁ cosh χ₂ + sinh χ₁ sinh χ₂ cos α`.
pub fn add_celerities(chi1: f64, chi2: f64, alpha: f64) -> f64 {
    // cosh χ − 1 written as a sum of non-negative terms
    let s = (0.5 * (chi1 + chi2)).sinh();
    let d = (0.5 * (chi1 - chi2)).sinh();
    let ca = alpha.cos();
    let half = s * s * (1.0 + ca) + d * d * (1.0 - ca);
    2.0 * (0.5 * half).sqrt().asinh()
}

/// Speed of the composition of `v1` with `v2` at angle `alpha`.
pub fn add_velocities(v1: f64, v2: f64, alpha: f64) -> Result<f64> {
    Ok(speed(add_celerities(celerity(v1)?, celerity(v2)?, alpha)))
}

/// Signed collinear composition, `tanh(χ₁ + χ₂)`.
pub fn add_parallel(v1: f64, v2: f64) -> Result<f64> {
    Ok(speed(celerity(v1)? + celerity(v2)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shell_energies() {
        assert_eq!(mass_shell_energy([0.0; 3], 1.0, Sheet::Particle), 1.0);
        assert_eq!(mass_shell_energy([1.0, 0.0, 0.0], 0.0, Sheet::Particle), 1.0);
        assert_eq!(mass_shell_energy([3.0, 4.0, 0.0], 0.0, Sheet::Particle), 5.0);
        let anti = FourMomentum::on_shell([0.3, 0.0, 0.1], 2.0, Sheet::Antiparticle);
        assert_eq!(anti.sheet(), Sheet::Antiparticle);
        assert!(anti.shell_residual(2.0) < 1e-14);
    }

    #[test]
    fn celerity_values() {
        assert_eq!(celerity(0.0).unwrap(), 0.0);
        assert!((celerity(0.8).unwrap() - 3f64.ln()).abs() < 1e-15);
        assert!((lorentz_factor(0.8).unwrap() - 5.0 / 3.0).abs() < 1e-15);
        assert!(matches!(celerity(1.0), Err(GeomError::SpeedLimit(_))));
        assert!(matches!(add_velocities(0.3, -1.2, 0.0), Err(GeomError::SpeedLimit(_))));
    }

    #[test]
    fn velocity_addition_examples() {
        assert!((add_velocities(0.5, 0.5, 0.0).unwrap() - 0.8).abs() < 1e-15);
        assert!((add_velocities(0.9, 0.9, 0.0).unwrap() - 180.0 / 181.0).abs() < 1e-15);
        for alpha in [0.0, 1.0, 2.5] {
            assert!((add_velocities(0.37, 0.0, alpha).unwrap() - 0.37).abs() < 1e-15);
        }
        // perpendicular: γ = γ₁γ₂
        let v = add_velocities(0.6, 0.8, std::f64::consts::FRAC_PI_2).unwrap();
        assert!((lorentz_factor(v).unwrap() - 1.25 * 5.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn boost_examples() {
        let rest = FourMomentum::on_shell([0.0; 3], 1.0, Sheet::Particle);
        assert_eq!(rest.boost(0.0, 0), rest);
        let moved = rest.boost(3f64.ln(), 0);
        assert!((moved.e - 5.0 / 3.0).abs() < 1e-15);
        assert!((moved.p[0] - 4.0 / 3.0).abs() < 1e-15);
        assert!(moved.shell_residual(1.0) < 1e-15);
        let two = rest.boost(0.4, 1).boost(0.7, 1);
        let one = rest.boost(1.1, 1);
        assert!((two.e - one.e).abs() < 1e-14 && (two.p[1] - one.p[1]).abs() < 1e-14);
    }

    #[test]
    fn mass_shell_is_two_sheet_quadric() {
        let q = mass_shell_quadric(1.5).unwrap();
        let p = FourMomentum::on_shell([0.7, -2.0, 0.0], 1.5, Sheet::Particle);
        assert!(q.residual(p.quadric_point()).abs() < 1e-13);
        assert_eq!(
            crate::quadric::classify(&q).unwrap().topology,
            crate::quadric::Topology::TwoSheet
        );
    }
}
