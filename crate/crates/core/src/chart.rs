//! Coordinate charts carrying a metric written over jets.

use std::fmt;
use std::sync::Arc;

use crate::error::{GeomError, Result};
use crate::jet::Jet;
use crate::tensor::{CMatrix, TensorValue, Variance};

/// Open-set margin used to keep points away from coordinate degeneracies.
pub const DOMAIN_MARGIN: f64 = 1e-9;

/// Metric components as a row-major `dim × dim` list. Only the upper
/// triangle is read; the lower triangle is mirrored from it.
pub type MetricFn = dyn Fn(&[Jet]) -> Vec<Jet> + Send + Sync;

/// Returns `Err(reason)` when a point lies outside the chart.
pub type DomainFn = dyn Fn(&[f64]) -> std::result::Result<(), String> + Send + Sync;

#[derive(Clone)]
pub struct Chart {
    name: String,
    dim: usize,
    signature: Vec<i8>,
    metric: Arc<MetricFn>,
    domain: Arc<DomainFn>,
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Chart")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("signature", &self.signature)
            .finish()
    }
}

impl Chart {
    pub fn new<M, D>(name: impl Into<String>, signature: Vec<i8>, metric: M, domain: D) -> Chart
    where
        M: Fn(&[Jet]) -> Vec<Jet> + Send + Sync + 'static,
        D: Fn(&[f64]) -> std::result::Result<(), String> + Send + Sync + 'static,
    {
        Chart {
            name: name.into(),
            dim: signature.len(),
            signature,
            metric: Arc::new(metric),
            domain: Arc::new(domain),
        }
    }

    /// A chart whose metric is diagonal; `diag` returns the `dim` diagonal
    /// entries.
    pub fn diagonal<M, D>(name: impl Into<String>, signature: Vec<i8>, diag: M, domain: D) -> Chart
    where
        M: Fn(&[Jet]) -> Vec<Jet> + Send + Sync + 'static,
        D: Fn(&[f64]) -> std::result::Result<(), String> + Send + Sync + 'static,
    {
        let dim = signature.len();
        Chart::new(
            name,
            signature,
            move |x: &[Jet]| {
                let d = diag(x);
                let mut g = vec![Jet::constant(0.0); dim * dim];
                for (i, v) in d.into_iter().enumerate() {
                    g[i * dim + i] = v;
                }
                g
            },
            domain,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn signature(&self) -> &[i8] {
        &self.signature
    }

    pub fn check_domain(&self, point: &[f64]) -> Result<()> {
        if point.len() != self.dim {
            return Err(GeomError::domain(
                &self.name,
                point,
                format!("expected {} coordinates", self.dim),
            ));
        }
        if point.iter().any(|x| !x.is_finite()) {
            return Err(GeomError::domain(&self.name, point, "non-finite coordinate"));
        }
        (self.domain)(point).map_err(|reason| GeomError::domain(&self.name, point, reason))
    }

    pub fn contains(&self, point: &[f64]) -> bool {
        self.check_domain(point).is_ok()
    }

    /// Metric components on jets, exactly symmetric.
    pub fn metric_jets(&self, x: &[Jet]) -> Vec<Jet> {
        let n = self.dim;
        let mut g = (self.metric)(x);
        assert_eq!(g.len(), n * n, "metric of `{}` has wrong size", self.name);
        for i in 0..n {
            for j in (i + 1)..n {
                g[j * n + i] = g[i * n + j];
            }
        }
        g
    }

    /// Metric matrix at a point without the domain check.
    pub fn metric_unchecked(&self, point: &[f64]) -> CMatrix {
        let x: Vec<Jet> = point.iter().map(|&v| Jet::constant(v)).collect();
        let g = self.metric_jets(&x);
        CMatrix::from_iterator(self.dim, self.dim, g.iter().map(|j| j.value)).transpose()
    }

    pub fn metric_at(&self, point: &[f64]) -> Result<CMatrix> {
        self.check_domain(point)?;
        Ok(self.metric_unchecked(point))
    }

    /// The same chart with metric multiplied by `alpha`.
    pub fn scaled(&self, alpha: f64) -> Chart {
        let inner = self.metric.clone();
        let signature = if alpha < 0.0 {
            self.signature.iter().map(|s| -s).collect()
        } else {
            self.signature.clone()
        };
        Chart {
            name: format!("{}*{alpha}", self.name),
            dim: self.dim,
            signature,
            metric: Arc::new(move |x: &[Jet]| inner(x).into_iter().map(|g| g * alpha).collect()),
            domain: self.domain.clone(),
        }
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Chart {
        self.name = name.into();
        self
    }
}

pub fn eval_metric(chart: &Chart, point: &[f64]) -> Result<TensorValue> {
    let g = chart.metric_at(point)?;
    Ok(TensorValue::from_matrix(
        &g,
        [Variance::Lower, Variance::Lower],
        point.to_vec(),
    ))
}

/// Signs of the eigenvalues of a real symmetric metric, ascending order
/// of the corresponding coordinate is not implied.
pub fn eigen_signs(g: &CMatrix) -> Vec<i8> {
    let real = g.map(|c| c.re);
    let eig = real.symmetric_eigenvalues();
    let mut signs: Vec<i8> = eig.iter().map(|&e| if e > 0.0 { 1 } else { -1 }).collect();
    signs.sort();
    signs
}

/// Checks `chart.signature()` against the eigenvalue signs at `point`
/// (as multisets).
pub fn signature_matches(chart: &Chart, point: &[f64]) -> Result<bool> {
    let g = chart.metric_at(point)?;
    let mut declared = chart.signature().to_vec();
    declared.sort();
    Ok(eigen_signs(&g) == declared)
}

/// Pullback of the flat metric `Σ signs[a] dX_a²` through a map written over
/// jets, evaluated at `point`.
pub fn flat_pullback(signs: &[f64], map: &dyn Fn(&[Jet]) -> Vec<Jet>, point: &[f64]) -> CMatrix {
    let x = Jet::seed(point);
    let image = map(&x);
    let n = point.len();
    CMatrix::from_fn(n, n, |i, j| {
        image
            .iter()
            .zip(signs)
            .map(|(f, &s)| f.grad[i] * f.grad[j] * s)
            .sum()
    })
}


/// Euclidean plane with identity metric, mostly a test fixture.
pub fn euclidean(dim: usize) -> Chart {
    Chart::diagonal(
        format!("euclidean{dim}"),
        vec![1; dim],
        move |_| vec![Jet::constant(1.0); dim],
        |_| Ok(()),
    )
}

/// Minkowski space with signature (+−−−).
pub fn minkowski() -> Chart {
    Chart::diagonal(
        "minkowski",
        vec![1, -1, -1, -1],
        |_| {
            vec![
                Jet::constant(1.0),
                Jet::constant(-1.0),
                Jet::constant(-1.0),
                Jet::constant(-1.0),
            ]
        },
        |_| Ok(()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::C64;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn euclidean_metric_is_identity() {
        let g = eval_metric(&euclidean(2), &[3.0, -1.0]).unwrap();
        assert_eq!(g.get(&[0, 0]), c(1.0));
        assert_eq!(g.get(&[0, 1]), c(0.0));
        assert_eq!(g.get(&[1, 1]), c(1.0));
    }

    #[test]
    fn lower_triangle_is_mirrored() {
        let ch = Chart::new(
            "skew",
            vec![1, 1],
            |x: &[Jet]| vec![Jet::constant(2.0), x[0], Jet::constant(99.0), Jet::constant(2.0)],
            |_| Ok(()),
        );
        let g = ch.metric_at(&[0.5, 0.0]).unwrap();
        assert_eq!(g[(1, 0)], g[(0, 1)]);
        assert_eq!(g[(1, 0)], c(0.5));
    }

    #[test]
    fn minkowski_signature() {
        assert!(signature_matches(&minkowski(), &[0.0; 4]).unwrap());
    }

    #[test]
    fn wrong_arity_is_domain_error() {
        let err = euclidean(2).metric_at(&[1.0]).unwrap_err();
        assert!(err.is_domain());
    }
}
