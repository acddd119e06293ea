//! Bertotti–Robinson spacetimes: null tetrads, the self-dual basis
//! `Z¹, Z², Z³`, the electromagnetic field and the Rainich and Kähler
//! structures.
//!
//! Coordinates are `(t, x, y, z)`. Two-forms follow the conventions of
//! [`crate::forms`]; with them `Z³ = 2(θ¹∧θ² − θ⁰∧θ³)` has unit tetrad
//! components and `{Z³, Z̄³} = −(θ⁰⊗θ³ + θ³⊗θ⁰ + θ¹⊗θ² + θ²⊗θ¹)`.

use std::fmt;
use std::sync::Arc;

use crate::chart::{Chart, DOMAIN_MARGIN};
use crate::curvature::LocalGeometry;
use crate::error::{GeomError, Result};
use crate::forms::{hodge_dual_matrix, wedge, wedge_jets};
use crate::jet::{Jet, C64};
use crate::tensor::{max_abs, CMatrix};

const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BrVariant {
    /// `S² × AdS₂`, cyclic time.
    Br1,
    /// `dS₂ × H₂`.
    Br2,
}

impl fmt::Display for BrVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BrVariant::Br1 => "br1",
            BrVariant::Br2 => "br2",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BrSpec {
    pub variant: BrVariant,
    pub r_plus: f64,
    pub r_minus: f64,
    pub lambda: f64,
    pub rho: f64,
    /// Constant duality phase of the field.
    pub alpha: f64,
}

impl BrSpec {
    /// Validated constructor: `Λ` must equal `(K₊ + K₋)/2` and the energy
    /// density must be positive.
    pub fn new(variant: BrVariant, r_plus: f64, r_minus: f64, lambda: f64) -> Result<BrSpec> {
        let spec = BrSpec::unchecked(variant, r_plus, r_minus, lambda)?;
        let expected = 0.5 * (spec.k_plus() + spec.k_minus());
        if (lambda - expected).abs() > 1e-12 * expected.abs().max(1.0) {
            return Err(GeomError::InvalidParameter(format!(
                "Λ = {lambda} is inconsistent with the radii, which require Λ = {expected}"
            )));
        }
        if !(spec.k_minus() > lambda && spec.k_plus() < lambda) {
            return Err(GeomError::InvalidParameter("energy density must be positive".into()));
        }
        Ok(spec)
    }

    /// `Λ = (K₊ + K₋)/2` derived from the radii.
    pub fn from_radii(variant: BrVariant, r_plus: f64, r_minus: f64) -> Result<BrSpec> {
        let lambda = 0.5 * (r_minus.powi(-2) - r_plus.powi(-2));
        BrSpec::new(variant, r_plus, r_minus, lambda)
    }

    /// No consistency checks beyond positive radii; `ρ = (K₋ − K₊)/2`.
    /// Used for negative controls.
    pub fn unchecked(variant: BrVariant, r_plus: f64, r_minus: f64, lambda: f64) -> Result<BrSpec> {
        for r in [r_plus, r_minus] {
            if !(r > 0.0) || !r.is_finite() {
                return Err(GeomError::InvalidParameter(format!("radii must be positive, got {r}")));
            }
        }
        let rho = 0.5 * (r_minus.powi(-2) + r_plus.powi(-2));
        Ok(BrSpec {
            variant,
            r_plus,
            r_minus,
            lambda,
            rho,
            alpha: 0.0,
        })
    }

    pub fn with_phase(mut self, alpha: f64) -> BrSpec {
        self.alpha = alpha;
        self
    }

    pub fn k_plus(&self) -> f64 {
        -self.r_plus.powi(-2)
    }

    pub fn k_minus(&self) -> f64 {
        self.r_minus.powi(-2)
    }

    /// Coordinate bound that keeps the square-root factors real.
    fn bounded_coordinate(&self) -> (usize, f64) {
        match self.variant {
            BrVariant::Br1 => (3, self.r_plus),
            BrVariant::Br2 => (1, self.r_plus),
        }
    }

    /// `n⁴` points spread over the chart, inside the coordinate bounds.
    pub fn grid(&self, n: usize) -> Vec<Vec<f64>> {
        let (axis, bound) = self.bounded_coordinate();
        let coord = |k: usize, i: usize| {
            let s = if n == 1 { 0.0 } else { -1.0 + 2.0 * i as f64 / (n - 1) as f64 };
            if k == axis {
                0.8 * bound * s
            } else {
                s
            }
        };
        let mut out = Vec::with_capacity(n.pow(4));
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        out.push(vec![coord(0, a), coord(1, b), coord(2, c), coord(3, d)]);
                    }
                }
            }
        }
        out
    }
}

type TetradFn = dyn Fn(&[Jet]) -> [[Jet; 4]; 4] + Send + Sync;

/// Four null one-forms `θ⁰..θ³` over a four-dimensional chart; row `i`
/// holds the coordinate components of `θ^i`.
#[derive(Clone)]
pub struct NullTetradField {
    name: String,
    theta: Arc<TetradFn>,
    domain: Arc<dyn Fn(&[f64]) -> std::result::Result<(), String> + Send + Sync>,
}

impl fmt::Debug for NullTetradField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NullTetradField").field("name", &self.name).finish()
    }
}

impl NullTetradField {
    pub fn new<T, D>(name: impl Into<String>, theta: T, domain: D) -> NullTetradField
    where
        T: Fn(&[Jet]) -> [[Jet; 4]; 4] + Send + Sync + 'static,
        D: Fn(&[f64]) -> std::result::Result<(), String> + Send + Sync + 'static,
    {
        NullTetradField {
            name: name.into(),
            theta: Arc::new(theta),
            domain: Arc::new(domain),
        }
    }

    pub fn theta_jets(&self, x: &[Jet]) -> [[Jet; 4]; 4] {
        (self.theta)(x)
    }

    pub fn check_domain(&self, point: &[f64]) -> Result<()> {
        if point.len() != 4 {
            return Err(GeomError::domain(&self.name, point, "expected 4 coordinates"));
        }
        (self.domain)(point).map_err(|r| GeomError::domain(&self.name, point, r))
    }

    /// Tetrad components at a point, `θ^i_μ`.
    pub fn theta_at(&self, point: &[f64]) -> Result<[[C64; 4]; 4]> {
        self.check_domain(point)?;
        let x: Vec<Jet> = point.iter().map(|&v| Jet::constant(v)).collect();
        let th = self.theta_jets(&x);
        Ok(th.map(|row| row.map(|j| j.value)))
    }

    /// `g = θ⁰⊗θ³ + θ³⊗θ⁰ − θ¹⊗θ² − θ²⊗θ¹`, row-major over jets.
    pub fn metric_jets(&self, x: &[Jet]) -> Vec<Jet> {
        let th = self.theta_jets(x);
        let mut g = Vec::with_capacity(16);
        for mu in 0..4 {
            for nu in 0..4 {
                g.push(
                    th[0][mu] * th[3][nu] + th[3][mu] * th[0][nu]
                        - th[1][mu] * th[2][nu]
                        - th[2][mu] * th[1][nu],
                );
            }
        }
        g
    }

    pub fn metric_from_tetrad(&self, point: &[f64]) -> Result<CMatrix> {
        self.check_domain(point)?;
        let x: Vec<Jet> = point.iter().map(|&v| Jet::constant(v)).collect();
        let g = self.metric_jets(&x);
        Ok(CMatrix::from_fn(4, 4, |i, j| g[i * 4 + j].value))
    }

    /// Chart whose metric is reconstructed from the tetrad.
    pub fn chart(&self) -> Chart {
        let me = self.clone();
        let dom = self.domain.clone();
        Chart::new(
            self.name.clone(),
            vec![1, -1, -1, -1],
            move |x: &[Jet]| me.metric_jets(x),
            move |p| dom(p),
        )
    }

    /// `Z¹ = 2√2 θ⁰∧θ¹`, `Z² = 2√2 θ²∧θ³`, `Z³ = 2(θ¹∧θ² − θ⁰∧θ³)` over jets.
    pub fn self_dual_jets(&self, x: &[Jet]) -> [Vec<Jet>; 3] {
        let th = self.theta_jets(x);
        let k = 2.0 * 2f64.sqrt();
        let z1 = wedge_jets(&th[0], &th[1]).into_iter().map(|w| w * k).collect();
        let z2 = wedge_jets(&th[2], &th[3]).into_iter().map(|w| w * k).collect();
        let a = wedge_jets(&th[1], &th[2]);
        let b = wedge_jets(&th[0], &th[3]);
        let z3 = a.iter().zip(&b).map(|(p, q)| (*p - *q) * 2.0).collect();
        [z1, z2, z3]
    }

    pub fn self_dual_basis(&self, point: &[f64]) -> Result<SelfDualBasis> {
        let th = self.theta_at(point)?;
        let k = 2.0 * 2f64.sqrt();
        let z1 = wedge(&th[0], &th[1]) * C64::new(k, 0.0);
        let z2 = wedge(&th[2], &th[3]) * C64::new(k, 0.0);
        let z3 = (wedge(&th[1], &th[2]) - wedge(&th[0], &th[3])) * C64::new(2.0, 0.0);
        Ok(SelfDualBasis { z: [z1, z2, z3] })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelfDualBasis {
    pub z: [CMatrix; 3],
}

impl SelfDualBasis {
    /// `Z₁ = Z², Z₂ = Z¹, Z₃ = −Z³`.
    pub fn covariant(&self) -> [CMatrix; 3] {
        [self.z[1].clone(), self.z[0].clone(), -self.z[2].clone()]
    }
}

fn conj(m: &CMatrix) -> CMatrix {
    m.map(|c| c.conj())
}

fn inverse(g: &CMatrix) -> Result<CMatrix> {
    g.clone()
        .try_inverse()
        .ok_or_else(|| GeomError::Shape("metric is not invertible".into()))
}

fn check_two_form(f: &CMatrix) -> Result<()> {
    if f.nrows() != f.ncols() {
        return Err(GeomError::Shape("two-form must be square".into()));
    }
    if crate::forms::antisymmetry_defect(f) > 1e-10 * max_abs(f).max(1.0) {
        return Err(GeomError::Shape("two-form is not antisymmetric".into()));
    }
    Ok(())
}

/// `(F, G) = ¼ F_ij G^ij`.
pub fn bilinear_scalar(f: &CMatrix, g_form: &CMatrix, g: &CMatrix) -> Result<C64> {
    check_two_form(f)?;
    check_two_form(g_form)?;
    let gi = inverse(g)?;
    let up = &gi * g_form * gi.transpose();
    Ok(f.iter().zip(up.iter()).map(|(a, b)| a * b).sum::<C64>() * 0.25)
}

/// `{F, G} = −½(F_ij G^j_k + ∗F_ij ∗G^j_k)`.
pub fn bilinear_tensor(f: &CMatrix, g_form: &CMatrix, g: &CMatrix) -> Result<CMatrix> {
    check_two_form(f)?;
    check_two_form(g_form)?;
    let gi = inverse(g)?;
    let sf = hodge_dual_matrix(g, f)?;
    let sg = hodge_dual_matrix(g, g_form)?;
    Ok((f * &gi * g_form + sf * &gi * sg) * C64::new(-0.5, 0.0))
}

fn tetrad_for(spec: &BrSpec) -> NullTetradField {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    // f² multiplies dt² in the (t, x) block, h² multiplies dy² in the (y, z) block
    let (cf, ch) = match spec.variant {
        BrVariant::Br1 => (spec.r_minus.powi(-2), -spec.r_plus.powi(-2)),
        BrVariant::Br2 => (-spec.r_plus.powi(-2), spec.r_minus.powi(-2)),
    };
    let (axis, bound) = spec.bounded_coordinate();
    let zero = Jet::constant(0.0);
    NullTetradField::new(
        format!("{}", spec.variant),
        move |x: &[Jet]| {
            let f = (x[1] * x[1] * cf + 1.0).sqrt();
            let h = (x[3] * x[3] * ch + 1.0).sqrt();
            let (fi, hi) = (f.recip(), h.recip());
            [
                [f * s, fi * s, zero, zero],
                [zero, zero, h * (I * s), hi * s],
                [zero, zero, h * (-I * s), hi * s],
                [f * s, -(fi * s), zero, zero],
            ]
        },
        move |p| {
            if bound * bound - p[axis] * p[axis] > DOMAIN_MARGIN {
                Ok(())
            } else {
                Err("square-root factor of the tetrad degenerates".into())
            }
        },
    )
}

pub fn br_tetrad(spec: &BrSpec) -> NullTetradField {
    tetrad_for(spec)
}

pub fn br_chart(spec: &BrSpec) -> Chart {
    tetrad_for(spec).chart()
}

/// The self-dual field `F̃ = (√2/2) e^{iα} √ρ Z³` and the stress tensor
/// `τ = ρ{Z³, Z̄³}` at a point.
#[derive(Clone, Debug, PartialEq)]
pub struct EmField {
    pub f_tilde: CMatrix,
    pub tau: CMatrix,
}

fn field_factor(spec: &BrSpec) -> C64 {
    C64::from_polar(std::f64::consts::FRAC_1_SQRT_2 * spec.rho.max(0.0).sqrt(), spec.alpha)
}

pub fn em_field(spec: &BrSpec, point: &[f64]) -> Result<EmField> {
    let tet = tetrad_for(spec);
    let z3 = tet.self_dual_basis(point)?.z[2].clone();
    let g = tet.metric_from_tetrad(point)?;
    let tau = bilinear_tensor(&z3, &conj(&z3), &g)? * C64::new(spec.rho, 0.0);
    Ok(EmField {
        f_tilde: z3 * field_factor(spec),
        tau,
    })
}

/// `F̃` over jets, for exterior and covariant derivatives.
pub fn f_tilde_jets(spec: &BrSpec) -> impl Fn(&[Jet]) -> Vec<Jet> {
    let tet = tetrad_for(spec);
    let k = field_factor(spec);
    move |x: &[Jet]| {
        let [_, _, z3] = tet.self_dual_jets(x);
        z3.into_iter().map(|c| c * k).collect()
    }
}

/// `Ω = iZ³` over jets.
pub fn omega_jets(spec: &BrSpec) -> impl Fn(&[Jet]) -> Vec<Jet> {
    let tet = tetrad_for(spec);
    move |x: &[Jet]| {
        let [_, _, z3] = tet.self_dual_jets(x);
        z3.into_iter().map(|c| c * I).collect()
    }
}

/// `max ‖R_μν − τ_μν − Λ g_μν‖∞` over the grid.
pub fn verify_einstein_maxwell(spec: &BrSpec, grid: &[Vec<f64>]) -> Result<f64> {
    let chart = br_chart(spec);
    let mut worst: f64 = 0.0;
    for p in grid {
        let geo = LocalGeometry::at(&chart, p)?;
        let ricci = geo.curvature().ricci;
        let em = em_field(spec, p)?;
        let res = ricci - em.tau - &geo.g * C64::new(spec.lambda, 0.0);
        worst = worst.max(max_abs(&res));
    }
    Ok(worst)
}

/// `‖R_μν − K₊ g₊ − K₋ g₋‖∞` at a point, with the factors split along the
/// `(t, x)` and `(y, z)` coordinate planes.
pub fn decomposable_ricci_residual(spec: &BrSpec, point: &[f64]) -> Result<f64> {
    let chart = br_chart(spec);
    let geo = LocalGeometry::at(&chart, point)?;
    let ricci = geo.curvature().ricci;
    let (k_tx, k_yz) = match spec.variant {
        BrVariant::Br1 => (spec.k_minus(), spec.k_plus()),
        BrVariant::Br2 => (spec.k_plus(), spec.k_minus()),
    };
    let expected = CMatrix::from_fn(4, 4, |i, j| {
        if i < 2 && j < 2 {
            geo.g[(i, j)] * k_tx
        } else if i >= 2 && j >= 2 {
            geo.g[(i, j)] * k_yz
        } else {
            C64::new(0.0, 0.0)
        }
    });
    Ok(max_abs(&(ricci - expected)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RainichReport {
    pub passes: bool,
    /// `AĀ`, the common magnitude of the paired eigenvalues.
    pub a_abar: f64,
    pub trace: f64,
    /// Largest violation among the trace, the imaginary parts and the
    /// eigenvalue pairing.
    pub defect: f64,
}

/// Tolerance used when pairing the eigenvalues of `R^μ_ν`.
pub const RAINICH_TOL: f64 = 1e-9;

/// Algebraic Rainich condition: `R^μ_ν` is traceless with eigenvalues
/// `(−AĀ, −AĀ, AĀ, AĀ)`.
pub fn rainich_algebraic_check(chart: &Chart, point: &[f64]) -> Result<RainichReport> {
    if chart.dim() != 4 {
        return Err(GeomError::Dimension {
            expected: 4,
            found: chart.dim(),
        });
    }
    let geo = LocalGeometry::at(chart, point)?;
    let ricci = geo.curvature().ricci;
    let mixed = (&geo.g_inv * &ricci).map(|c| c.re);
    let trace = mixed.trace();
    let mut eig: Vec<(f64, f64)> = mixed
        .complex_eigenvalues()
        .iter()
        .map(|c| (c.re, c.im))
        .collect();
    eig.sort_by(|a, b| a.0.total_cmp(&b.0));
    let scale = eig.iter().map(|e| e.0.abs()).fold(1.0, f64::max);
    let tol = RAINICH_TOL * scale;
    let a_abar = 0.25 * (eig[2].0 + eig[3].0 - eig[0].0 - eig[1].0);
    let defect = [
        trace.abs(),
        eig.iter().map(|e| e.1.abs()).fold(0.0, f64::max),
        (eig[0].0 - eig[1].0).abs(),
        (eig[2].0 - eig[3].0).abs(),
        (eig[0].0 + eig[3].0).abs(),
        (-a_abar).max(0.0),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let passes = defect <= tol;
    Ok(RainichReport {
        passes,
        a_abar,
        trace,
        defect,
    })
}

/// Almost Hermitian structure `J = g⁻¹Ω` with `Ω = iZ³`, and the product
/// structure `P = J J̄`, all as matrices `J^μ_ν`, `Ω_μν`, `P^μ_ν`.
#[derive(Clone, Debug, PartialEq)]
pub struct KahlerStructures {
    pub j: CMatrix,
    pub omega: CMatrix,
    pub p: CMatrix,
}

pub fn kahler_structures(tet: &NullTetradField, point: &[f64]) -> Result<KahlerStructures> {
    let z3 = tet.self_dual_basis(point)?.z[2].clone();
    let g = tet.metric_from_tetrad(point)?;
    let omega = z3 * I;
    let j = inverse(&g)? * &omega;
    let p = &j * conj(&j);
    Ok(KahlerStructures { j, omega, p })
}

/// The almost Hermitian structure of a two-dimensional Lorentzian metric,
/// `J = g⁻¹Ω` with `Ω = i √|det g| ε`.
pub fn hermitian_structure_2d(g: &CMatrix) -> Result<CMatrix> {
    if g.nrows() != 2 {
        return Err(GeomError::Dimension {
            expected: 2,
            found: g.nrows(),
        });
    }
    let vol = g.determinant().norm().sqrt();
    let omega = CMatrix::from_row_slice(2, 2, &[C64::new(0.0, 0.0), I * vol, -I * vol, C64::new(0.0, 0.0)]);
    Ok(inverse(g)? * omega)
}
