use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("point {point:?} is outside the domain of `{chart}`: {reason}")]
    Domain {
        chart: String,
        point: Vec<f64>,
        reason: String,
    },
    #[error("metric is singular at {point:?} (|det g| = {det:e})")]
    SingularMetric { point: Vec<f64>, det: f64 },
    #[error("operation requires dimension {expected}, chart has dimension {found}")]
    Dimension { expected: usize, found: usize },
    #[error("tensor shape error: {0}")]
    Shape(String),
    #[error("sign pattern ({0}) is a forbidden quadric")]
    ForbiddenQuadric(String),
    #[error("matrix does not preserve the ambient metric (max |LᵀGL - G| = {0:e})")]
    NotIsometry(f64),
    #[error("angles are undefined on the indefinite chart `{0}`")]
    IndefiniteMetric(String),
    #[error("speed {0} is not below the speed of light")]
    SpeedLimit(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no verification check named `{0}`")]
    UnknownCheck(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl GeomError {
    pub fn domain(chart: &str, point: &[f64], reason: impl Into<String>) -> Self {
        GeomError::Domain {
            chart: chart.to_string(),
            point: point.to_vec(),
            reason: reason.into(),
        }
    }

    pub fn is_domain(&self) -> bool {
        matches!(self, GeomError::Domain { .. })
    }
}

pub type Result<T> = std::result::Result<T, GeomError>;
