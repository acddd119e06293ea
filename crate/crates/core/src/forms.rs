//! Exterior calculus on charts.
//!
//! A k-form is stored as its antisymmetric component array `ω_{i1..ik}`, and
//! the wedge of one-forms is the alternation `(a∧b)_ij = ½(a_i b_j − a_j b_i)`.
//! With this normalization the two-form written `F = F_ij θ^i∧θ^j` has
//! components `F_ij`, the Hodge dual is `∗F_μν = √(−det g) ε_μνρσ F^ρσ / 2`
//! with `ε_0123 = +1` in chart order, and `(dω)` is the alternation of `∂ω`.

use crate::chart::Chart;
use crate::curvature::LocalGeometry;
use crate::error::{GeomError, Result};
use crate::jet::{Jet, C64};
use crate::tensor::{multi_indices, permutation_sign, CMatrix, TensorValue, Variance};

/// A form or tensor field evaluated on coordinate jets, returning its
/// components in storage order.
pub type FieldFn<'a> = &'a dyn Fn(&[Jet]) -> Vec<Jet>;

const Z: C64 = C64 { re: 0.0, im: 0.0 };

/// `(a∧b)_ij = ½(a_i b_j − a_j b_i)` for one-forms given on jets.
pub fn wedge_jets(a: &[Jet], b: &[Jet]) -> Vec<Jet> {
    let n = a.len();
    let mut out = vec![Jet::constant(0.0); n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = (a[i] * b[j] - a[j] * b[i]) * 0.5;
            out[i * n + j] = v;
            out[j * n + i] = -v;
        }
    }
    out
}

pub fn wedge(a: &[C64], b: &[C64]) -> CMatrix {
    let n = a.len();
    CMatrix::from_fn(n, n, |i, j| (a[i] * b[j] - a[j] * b[i]) * 0.5)
}

/// Largest |F + Fᵀ|.
pub fn antisymmetry_defect(f: &CMatrix) -> f64 {
    (f + f.transpose()).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Raises both indices of a two-form.
pub fn raise_both(g_inv: &CMatrix, f: &CMatrix) -> CMatrix {
    g_inv * f * g_inv.transpose()
}

/// Hodge dual of a two-form given the metric matrix at the same point.
pub fn hodge_dual_matrix(g: &CMatrix, f: &CMatrix) -> Result<CMatrix> {
    if g.nrows() != 4 {
        return Err(GeomError::Dimension {
            expected: 4,
            found: g.nrows(),
        });
    }
    if f.nrows() != 4 || f.ncols() != 4 {
        return Err(GeomError::Shape("two-form must be 4x4".into()));
    }
    let defect = antisymmetry_defect(f);
    if defect > 1e-12 {
        return Err(GeomError::Shape(format!(
            "two-form is not antisymmetric (|F + Fᵀ| = {defect:e})"
        )));
    }
    let g_inv = g
        .clone()
        .try_inverse()
        .ok_or_else(|| GeomError::Shape("metric is not invertible".into()))?;
    let vol = (-g.determinant()).sqrt();
    let up = raise_both(&g_inv, f);
    let mut out = CMatrix::zeros(4, 4);
    for mu in 0..4 {
        for nu in 0..4 {
            if mu == nu {
                continue;
            }
            let mut s = Z;
            for rho in 0..4 {
                for sigma in 0..4 {
                    let e = permutation_sign(&[mu, nu, rho, sigma]);
                    if e != 0 {
                        s += up[(rho, sigma)] * e as f64;
                    }
                }
            }
            out[(mu, nu)] = vol * s * 0.5;
        }
    }
    Ok(out)
}

pub fn hodge_dual(chart: &Chart, f: &TensorValue, point: &[f64]) -> Result<TensorValue> {
    if chart.dim() != 4 {
        return Err(GeomError::Dimension {
            expected: 4,
            found: chart.dim(),
        });
    }
    if f.rank() != 2 || f.variances() != [Variance::Lower, Variance::Lower] {
        return Err(GeomError::Shape("hodge dual expects a rank-2 covariant tensor".into()));
    }
    let g = chart.metric_at(point)?;
    let dual = hodge_dual_matrix(&g, &f.to_matrix()?)?;
    Ok(TensorValue::from_matrix(&dual, [Variance::Lower; 2], point.to_vec()))
}

fn check_form_len(len: usize, dim: usize, k: usize) -> Result<()> {
    let expected = dim.pow(k as u32);
    if len != expected {
        return Err(GeomError::Shape(format!(
            "{k}-form in dimension {dim} needs {expected} components, got {len}"
        )));
    }
    Ok(())
}

/// Flat offset of a multi-index.
fn offset(idx: &[usize], dim: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * dim + i)
}

fn without(idx: &[usize], j: usize) -> Vec<usize> {
    idx.iter()
        .enumerate()
        .filter(|&(m, _)| m != j)
        .map(|(_, &v)| v)
        .collect()
}

/// `(dω)_{i0..ik} = 1/(k+1) Σ_j (−1)^j ∂_{ij} ω_{i0..îj..ik}`.
pub fn exterior_derivative(form: FieldFn<'_>, k: usize, point: &[f64]) -> Result<TensorValue> {
    let dim = point.len();
    if k >= dim {
        return Err(GeomError::Shape(format!("cannot differentiate a {k}-form in dimension {dim}")));
    }
    let w = form(&Jet::seed(point));
    check_form_len(w.len(), dim, k)?;
    let mut out = TensorValue::zeros(dim, vec![Variance::Lower; k + 1], point.to_vec());
    for idx in multi_indices(dim, k + 1) {
        let mut s = Z;
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            s += w[offset(&without(&idx, j), dim)].grad[idx[j]] * sign;
        }
        out.set(&idx, s / (k + 1) as f64);
    }
    Ok(out)
}

/// `d(dω)` at a point, computed from the Hessians of `ω`. Vanishes for any
/// smooth form; used to check the exterior-derivative machinery.
pub fn second_exterior_derivative(form: FieldFn<'_>, k: usize, point: &[f64]) -> Result<TensorValue> {
    let dim = point.len();
    if k + 1 >= dim {
        return Err(GeomError::Shape(format!("d∘d of a {k}-form vanishes identically in dimension {dim}")));
    }
    let w = form(&Jet::seed(point));
    check_form_len(w.len(), dim, k)?;
    // ∂_c (dω)_I for |I| = k+1
    let d_dw = |c: usize, idx: &[usize]| -> C64 {
        let mut s = Z;
        for j in 0..=k {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            s += w[offset(&without(idx, j), dim)].hess[c][idx[j]] * sign;
        }
        s / (k + 1) as f64
    };
    let mut out = TensorValue::zeros(dim, vec![Variance::Lower; k + 2], point.to_vec());
    for idx in multi_indices(dim, k + 2) {
        let mut s = Z;
        for m in 0..k + 2 {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            s += d_dw(idx[m], &without(&idx, m)) * sign;
        }
        out.set(&idx, s / (k + 2) as f64);
    }
    Ok(out)
}

/// Covariant derivative of a tensor field; the derivative index is appended
/// as the last (lower) index.
pub fn covariant_derivative(
    chart: &Chart,
    field: FieldFn<'_>,
    variances: &[Variance],
    point: &[f64],
) -> Result<TensorValue> {
    let geo = LocalGeometry::at(chart, point)?;
    let dim = chart.dim();
    let rank = variances.len();
    let t = field(&Jet::seed(point));
    check_form_len(t.len(), dim, rank)?;
    let mut out_var = variances.to_vec();
    out_var.push(Variance::Lower);
    let mut out = TensorValue::zeros(dim, out_var, point.to_vec());
    for idx in multi_indices(dim, rank) {
        for m in 0..dim {
            let mut s = t[offset(&idx, dim)].grad[m];
            for (slot, var) in variances.iter().enumerate() {
                let mut moved = idx.clone();
                for c in 0..dim {
                    moved[slot] = c;
                    let comp = t[offset(&moved, dim)].value;
                    match var {
                        Variance::Upper => s += geo.gamma(idx[slot], m, c) * comp,
                        Variance::Lower => s -= geo.gamma(c, m, idx[slot]) * comp,
                    }
                }
            }
            let mut full = idx.clone();
            full.push(m);
            out.set(&full, s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::{euclidean, minkowski};

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn d_of_x_dy_is_dx_wedge_dy() {
        let omega = |x: &[Jet]| vec![Jet::constant(0.0), x[0]];
        let d = exterior_derivative(&omega, 1, &[0.3, -0.7]).unwrap();
        let dx = [c(1.0), c(0.0)];
        let dy = [c(0.0), c(1.0)];
        let expected = wedge(&dx, &dy);
        assert_eq!(d.to_matrix().unwrap(), expected);
        // coefficient of dx∧dy in dω = Σ (dω)_ij dx^i∧dx^j is +1
        assert_eq!(d.get(&[0, 1]) - d.get(&[1, 0]), c(1.0));
    }

    #[test]
    fn d_of_function_is_gradient() {
        let f = |x: &[Jet]| vec![x[0] * x[1] * x[1]];
        let d = exterior_derivative(&f, 0, &[2.0, 3.0]).unwrap();
        assert_eq!(d.get(&[0]), c(9.0));
        assert_eq!(d.get(&[1]), c(12.0));
    }

    #[test]
    fn dd_vanishes_on_polynomial_one_form() {
        let w = |x: &[Jet]| {
            vec![
                x[1] * x[2] * x[0],
                x[0].powi(3) * x[2],
                x[1] * x[1] + x[0] * x[2] * 5.0,
            ]
        };
        let dd = second_exterior_derivative(&w, 1, &[0.4, -1.1, 2.0]).unwrap();
        assert!(dd.max_abs() < 1e-12);
        let d = exterior_derivative(&w, 1, &[0.4, -1.1, 2.0]).unwrap();
        assert!(d.max_abs() > 0.1);
    }

    #[test]
    fn hodge_on_minkowski_by_brute_force() {
        // F = dt∧dx pattern: F_01 = 1, F_10 = −1
        let mut f = CMatrix::zeros(4, 4);
        f[(0, 1)] = c(1.0);
        f[(1, 0)] = c(-1.0);
        let g = minkowski().metric_at(&[0.0; 4]).unwrap();
        let dual = hodge_dual_matrix(&g, &f).unwrap();
        // Brute force: *F_μν = ½ Σ ε_μνρσ η^ρρ η^σσ F_ρσ
        let eta = [1.0, -1.0, -1.0, -1.0];
        for mu in 0..4 {
            for nu in 0..4 {
                let mut s = 0.0;
                for r in 0..4 {
                    for q in 0..4 {
                        s += 0.5 * permutation_sign(&[mu, nu, r, q]) as f64 * eta[r] * eta[q] * f[(r, q)].re;
                    }
                }
                assert!((dual[(mu, nu)] - c(s)).norm() < 1e-15);
            }
        }
        assert_eq!(dual[(2, 3)], c(-1.0));
    }

    #[test]
    fn hodge_is_anti_idempotent() {
        let g = minkowski().metric_at(&[0.0; 4]).unwrap();
        let mut f = CMatrix::zeros(4, 4);
        let vals = [(0, 1, 0.3), (0, 2, -1.2), (0, 3, 0.7), (1, 2, 2.0), (1, 3, -0.1), (2, 3, 0.9)];
        for (i, j, v) in vals {
            f[(i, j)] = C64::new(v, 0.5 * v);
            f[(j, i)] = -f[(i, j)];
        }
        let dd = hodge_dual_matrix(&g, &hodge_dual_matrix(&g, &f).unwrap()).unwrap();
        assert!(crate::tensor::max_abs(&(dd + f)) < 1e-12);
    }

    #[test]
    fn hodge_rejects_bad_inputs() {
        let g = euclidean(2).metric_at(&[0.0, 0.0]).unwrap();
        assert!(matches!(
            hodge_dual_matrix(&g, &CMatrix::zeros(2, 2)),
            Err(GeomError::Dimension { .. })
        ));
        let g4 = minkowski().metric_at(&[0.0; 4]).unwrap();
        let mut f = CMatrix::zeros(4, 4);
        f[(0, 1)] = c(1.0);
        assert!(matches!(hodge_dual_matrix(&g4, &f), Err(GeomError::Shape(_))));
    }

    #[test]
    fn scalar_covariant_derivative_is_partial() {
        let f = |x: &[Jet]| vec![x[0].sin() * x[1]];
        let ch = crate::chart::Chart::diagonal("polar", vec![1, 1], |x: &[Jet]| vec![Jet::constant(1.0), x[0] * x[0]], |p| {
            if p[0] > 0.0 { Ok(()) } else { Err("r <= 0".into()) }
        });
        let d = covariant_derivative(&ch, &f, &[], &[1.2, 0.5]).unwrap();
        assert!((d.get(&[0]) - c(1.2f64.cos() * 0.5)).norm() < 1e-15);
        assert!((d.get(&[1]) - c(1.2f64.sin())).norm() < 1e-15);
    }

    #[test]
    fn metric_is_covariantly_constant() {
        let ch = crate::chart::Chart::diagonal("polar", vec![1, 1], |x: &[Jet]| vec![Jet::constant(1.0), x[0] * x[0]], |p| {
            if p[0] > 0.0 { Ok(()) } else { Err("r <= 0".into()) }
        });
        let chc = ch.clone();
        let g = move |x: &[Jet]| chc.metric_jets(x);
        let d = covariant_derivative(&ch, &g, &[Variance::Lower; 2], &[1.7, 0.2]).unwrap();
        assert!(d.max_abs() < 1e-12);
    }
}
