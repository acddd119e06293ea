//! Numerical differential geometry for quadrics, de Sitter and
//! Bertotti–Robinson spacetimes.

pub mod br;
pub mod chart;
pub mod curvature;
pub mod desitter;
pub mod error;
pub mod forms;
pub mod geodesic;
pub mod horizon;
pub mod jet;
pub mod kinematics;
pub mod quadrature;
pub mod quadric;
pub mod tensor;
pub mod triangle;
pub mod verify;

pub use chart::Chart;
pub use error::{GeomError, Result};
pub use jet::{Jet, C64};
pub use tensor::{CMatrix, TensorValue, Variance};
