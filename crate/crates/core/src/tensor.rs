//! Dense complex tensors evaluated at a point.

use nalgebra::DMatrix;

use crate::error::{GeomError, Result};
use crate::jet::C64;

pub type CMatrix = DMatrix<C64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Upper,
    Lower,
}

/// Components of a tensor at one point of a chart.
///
/// Components are stored row-major with the first index slowest; every index
/// runs over `0..dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorValue {
    dim: usize,
    components: Vec<C64>,
    variances: Vec<Variance>,
    point: Vec<f64>,
}

impl TensorValue {
    pub fn new(
        dim: usize,
        variances: Vec<Variance>,
        point: Vec<f64>,
        components: Vec<C64>,
    ) -> Result<Self> {
        let expected = dim.pow(variances.len() as u32);
        if components.len() != expected {
            return Err(GeomError::Shape(format!(
                "rank {} tensor in dimension {dim} needs {expected} components, got {}",
                variances.len(),
                components.len()
            )));
        }
        Ok(TensorValue {
            dim,
            components,
            variances,
            point,
        })
    }

    pub fn zeros(dim: usize, variances: Vec<Variance>, point: Vec<f64>) -> Self {
        let n = dim.pow(variances.len() as u32);
        TensorValue {
            dim,
            components: vec![C64::new(0.0, 0.0); n],
            variances,
            point,
        }
    }

    pub fn scalar(value: C64, point: Vec<f64>, dim: usize) -> Self {
        TensorValue {
            dim,
            components: vec![value],
            variances: Vec::new(),
            point,
        }
    }

    pub fn from_matrix(m: &CMatrix, variances: [Variance; 2], point: Vec<f64>) -> Self {
        let dim = m.nrows();
        let mut components = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                components.push(m[(i, j)]);
            }
        }
        TensorValue {
            dim,
            components,
            variances: variances.to_vec(),
            point,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.variances.len()
    }

    pub fn variances(&self) -> &[Variance] {
        &self.variances
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }

    pub fn components(&self) -> &[C64] {
        &self.components
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> C64 {
        self.components[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: C64) {
        let o = self.offset(idx);
        self.components[o] = value;
    }

    /// Scalar value of a rank-0 tensor.
    pub fn value(&self) -> C64 {
        self.components[0]
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.rank() != 2 {
            return Err(GeomError::Shape(format!(
                "expected rank 2, found rank {}",
                self.rank()
            )));
        }
        Ok(CMatrix::from_row_slice(self.dim, self.dim, &self.components))
    }

    pub fn max_abs(&self) -> f64 {
        self.components.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_imag(&self) -> f64 {
        self.components.iter().map(|c| c.im.abs()).fold(0.0, f64::max)
    }

    /// ‖self − other‖∞ over components.
    pub fn max_abs_diff(&self, other: &TensorValue) -> f64 {
        assert_eq!(self.components.len(), other.components.len());
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn map(&self, f: impl Fn(C64) -> C64) -> TensorValue {
        let mut out = self.clone();
        out.components.iter_mut().for_each(|c| *c = f(*c));
        out
    }

    /// Iterates every multi-index of the tensor in storage order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        multi_indices(self.dim, self.rank())
    }
}

/// All multi-indices of length `rank` over `0..dim`, first index slowest.
pub fn multi_indices(dim: usize, rank: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = dim.pow(rank as u32);
    (0..total).map(move |mut n| {
        let mut idx = vec![0; rank];
        for slot in idx.iter_mut().rev() {
            *slot = n % dim;
            n /= dim;
        }
        idx
    })
}

/// Sign of the permutation `p` of `0..p.len()`, or 0 if it has repeats.
pub fn permutation_sign(p: &[usize]) -> i32 {
    let n = p.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if p[i] == p[j] {
                return 0;
            }
        }
    }
    let mut inversions = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Largest |a_ij| over a complex matrix.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_is_checked() {
        let err = TensorValue::new(2, vec![Variance::Lower; 2], vec![0.0, 0.0], vec![C64::new(0.0, 0.0); 3]);
        assert!(matches!(err, Err(GeomError::Shape(_))));
    }

    #[test]
    fn indexing_is_row_major() {
        let mut t = TensorValue::zeros(3, vec![Variance::Upper, Variance::Lower, Variance::Lower], vec![]);
        t.set(&[1, 2, 0], C64::new(5.0, 0.0));
        assert_eq!(t.components()[9 + 6], C64::new(5.0, 0.0));
        assert_eq!(t.indices().count(), 27);
    }

    #[test]
    fn levi_civita_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2, 3]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2, 3]), -1);
        assert_eq!(permutation_sign(&[2, 3, 0, 1]), 1);
        assert_eq!(permutation_sign(&[0, 0, 2, 3]), 0);
    }
}
