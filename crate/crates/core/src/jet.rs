//! Second-order forward-mode jets.
//!
//! A [`Jet`] carries a complex value together with its gradient and Hessian
//! with respect to up to [`MAX_DIM`] independent coordinates. Arithmetic and
//! the elementary functions propagate all three orders exactly, so metric
//! component functions written over `Jet` yield `g`, `∂g` and `∂∂g` in a
//! single evaluation.

use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

/// Largest number of independent variables a jet tracks.
pub const MAX_DIM: usize = 4;

pub type C64 = Complex64;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
const ONE: C64 = C64 { re: 1.0, im: 0.0 };

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    pub value: C64,
    pub grad: [C64; MAX_DIM],
    pub hess: [[C64; MAX_DIM]; MAX_DIM],
}

impl Default for Jet {
    fn default() -> Self {
        Jet::constant(0.0)
    }
}

impl Jet {
    pub fn constant(x: impl Into<C64>) -> Jet {
        Jet {
            value: x.into(),
            grad: [ZERO; MAX_DIM],
            hess: [[ZERO; MAX_DIM]; MAX_DIM],
        }
    }

    /// The independent variable with index `i`, evaluated at `x`.
    pub fn variable(x: f64, i: usize) -> Jet {
        assert!(i < MAX_DIM, "jet variable index {i} out of range");
        let mut j = Jet::constant(x);
        j.grad[i] = ONE;
        j
    }

    /// Seeds one jet per coordinate of `point`.
    pub fn seed(point: &[f64]) -> Vec<Jet> {
        point
            .iter()
            .enumerate()
            .map(|(i, &x)| Jet::variable(x, i))
            .collect()
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn conj(self) -> Jet {
        let mut out = self;
        out.value = out.value.conj();
        for i in 0..MAX_DIM {
            out.grad[i] = out.grad[i].conj();
            for j in 0..MAX_DIM {
                out.hess[i][j] = out.hess[i][j].conj();
            }
        }
        out
    }

    /// Applies a scalar function given its value and first two derivatives
    /// at `self.value`.
    pub fn chain(self, f0: C64, f1: C64, f2: C64) -> Jet {
        let mut out = Jet::constant(f0);
        for i in 0..MAX_DIM {
            out.grad[i] = f1 * self.grad[i];
            for j in 0..MAX_DIM {
                out.hess[i][j] = f1 * self.hess[i][j] + f2 * self.grad[i] * self.grad[j];
            }
        }
        out
    }

    pub fn recip(self) -> Jet {
        let r = ONE / self.value;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }

    pub fn sqrt(self) -> Jet {
        let s = self.value.sqrt();
        let d1 = 0.5 / s;
        self.chain(s, d1, -0.5 * d1 / self.value)
    }

    pub fn powi(self, n: i32) -> Jet {
        match n {
            0 => Jet::constant(1.0),
            1 => self,
            2 => self * self,
            _ => {
                let nf = n as f64;
                let x = self.value;
                self.chain(x.powi(n), nf * x.powi(n - 1), nf * (nf - 1.0) * x.powi(n - 2))
            }
        }
    }

    pub fn powf(self, p: f64) -> Jet {
        let x = self.value;
        self.chain(x.powf(p), p * x.powf(p - 1.0), p * (p - 1.0) * x.powf(p - 2.0))
    }

    pub fn exp(self) -> Jet {
        let e = self.value.exp();
        self.chain(e, e, e)
    }

    pub fn ln(self) -> Jet {
        let r = ONE / self.value;
        self.chain(self.value.ln(), r, -r * r)
    }

    pub fn sin(self) -> Jet {
        let (s, c) = (self.value.sin(), self.value.cos());
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Jet {
        let (s, c) = (self.value.sin(), self.value.cos());
        self.chain(c, -s, -c)
    }

    pub fn tan(self) -> Jet {
        let t = self.value.tan();
        let sec2 = ONE + t * t;
        self.chain(t, sec2, 2.0 * sec2 * t)
    }

    pub fn sinh(self) -> Jet {
        let (s, c) = (self.value.sinh(), self.value.cosh());
        self.chain(s, c, s)
    }

    pub fn cosh(self) -> Jet {
        let (s, c) = (self.value.sinh(), self.value.cosh());
        self.chain(c, s, c)
    }

    pub fn tanh(self) -> Jet {
        let t = self.value.tanh();
        let sech2 = ONE - t * t;
        self.chain(t, sech2, -2.0 * t * sech2)
    }
}

impl From<f64> for Jet {
    fn from(x: f64) -> Jet {
        Jet::constant(x)
    }
}

impl From<C64> for Jet {
    fn from(x: C64) -> Jet {
        Jet::constant(x)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, rhs: Jet) -> Jet {
        self += rhs;
        self
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, rhs: Jet) {
        self.value += rhs.value;
        for i in 0..MAX_DIM {
            self.grad[i] += rhs.grad[i];
            for j in 0..MAX_DIM {
                self.hess[i][j] += rhs.hess[i][j];
            }
        }
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: Jet) -> Jet {
        self -= rhs;
        self
    }
}

impl SubAssign for Jet {
    fn sub_assign(&mut self, rhs: Jet) {
        self.value -= rhs.value;
        for i in 0..MAX_DIM {
            self.grad[i] -= rhs.grad[i];
            for j in 0..MAX_DIM {
                self.hess[i][j] -= rhs.hess[i][j];
            }
        }
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self * -1.0
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let (a, b) = (self, rhs);
        let mut out = Jet::constant(a.value * b.value);
        for i in 0..MAX_DIM {
            out.grad[i] = a.value * b.grad[i] + b.value * a.grad[i];
            for j in 0..MAX_DIM {
                out.hess[i][j] = a.value * b.hess[i][j]
                    + b.value * a.hess[i][j]
                    + a.grad[i] * b.grad[j]
                    + b.grad[i] * a.grad[j];
            }
        }
        out
    }
}

impl MulAssign for Jet {
    fn mul_assign(&mut self, rhs: Jet) {
        *self = *self * rhs;
    }
}

impl Div for Jet {
    type Output = Jet;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Jet) -> Jet {
        self * rhs.recip()
    }
}

macro_rules! scalar_ops {
    ($t:ty) => {
        impl Mul<$t> for Jet {
            type Output = Jet;
            fn mul(mut self, k: $t) -> Jet {
                self.value *= k;
                for i in 0..MAX_DIM {
                    self.grad[i] *= k;
                    for j in 0..MAX_DIM {
                        self.hess[i][j] *= k;
                    }
                }
                self
            }
        }
        impl Mul<Jet> for $t {
            type Output = Jet;
            fn mul(self, j: Jet) -> Jet {
                j * self
            }
        }
        impl Div<$t> for Jet {
            type Output = Jet;
            fn div(self, k: $t) -> Jet {
                self * (ONE / C64::from(k))
            }
        }
        impl Div<Jet> for $t {
            type Output = Jet;
            fn div(self, j: Jet) -> Jet {
                j.recip() * self
            }
        }
        impl Add<$t> for Jet {
            type Output = Jet;
            fn add(mut self, k: $t) -> Jet {
                self.value += k;
                self
            }
        }
        impl Add<Jet> for $t {
            type Output = Jet;
            fn add(self, j: Jet) -> Jet {
                j + self
            }
        }
        impl Sub<$t> for Jet {
            type Output = Jet;
            fn sub(mut self, k: $t) -> Jet {
                self.value -= k;
                self
            }
        }
        impl Sub<Jet> for $t {
            type Output = Jet;
            fn sub(self, j: Jet) -> Jet {
                -j + self
            }
        }
    };
}

scalar_ops!(f64);
scalar_ops!(C64);

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: f64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn product_rule_second_order() {
        // f(x, y) = x^2 y at (2, 3)
        let x = Jet::variable(2.0, 0);
        let y = Jet::variable(3.0, 1);
        let f = x * x * y;
        assert!(close(f.value, 12.0));
        assert!(close(f.grad[0], 12.0));
        assert!(close(f.grad[1], 4.0));
        assert!(close(f.hess[0][0], 6.0));
        assert!(close(f.hess[0][1], 4.0));
        assert!(close(f.hess[1][0], 4.0));
        assert!(close(f.hess[1][1], 0.0));
    }

    #[test]
    fn quotient_and_sqrt() {
        let x = Jet::variable(0.5, 0);
        let f = (1.0 - x * x).sqrt().recip();
        // f = (1 - x^2)^(-1/2)
        let s = 0.75f64;
        assert!(close(f.value, s.powf(-0.5)));
        assert!(close(f.grad[0], 0.5 * s.powf(-1.5)));
        // f'' = (1 + 2x^2) (1 - x^2)^(-5/2)
        assert!(close(f.hess[0][0], 1.5 * s.powf(-2.5)));
    }

    #[test]
    fn transcendental_derivatives() {
        let x = Jet::variable(0.7, 0);
        for (f, d1, d2) in [
            (x.sin(), 0.7f64.cos(), -0.7f64.sin()),
            (x.cosh(), 0.7f64.sinh(), 0.7f64.cosh()),
            (x.exp(), 0.7f64.exp(), 0.7f64.exp()),
            (x.ln(), 1.0 / 0.7, -1.0 / 0.49),
        ] {
            assert!(close(f.grad[0], d1));
            assert!(close(f.hess[0][0], d2));
        }
        let t = x.tan();
        let sec2 = 1.0 / 0.7f64.cos().powi(2);
        assert!(close(t.grad[0], sec2));
        assert!(close(t.hess[0][0], 2.0 * sec2 * 0.7f64.tan()));
        let th = x.tanh();
        let sech2 = 1.0 - 0.7f64.tanh().powi(2);
        assert!(close(th.hess[0][0], -2.0 * 0.7f64.tanh() * sech2));
    }

    #[test]
    fn conj_flips_imaginary_parts() {
        let x = Jet::variable(1.0, 0) * C64::new(0.0, 2.0);
        let c = x.conj();
        assert_eq!(c.grad[0], C64::new(0.0, -2.0));
    }
}
