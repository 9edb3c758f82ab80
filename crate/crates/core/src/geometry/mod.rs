//! Grids, derivatives and the conformal connection and Ricci machinery.

pub mod background;
pub mod grid;
pub mod tensor;

pub use background::{BackgroundGeometry, ExprJet};
pub use grid::{analytic_derivative, fd_derivative, fd_gradient, fd_hessian, Grid, GridField, GridSpec, Linear};
pub use tensor::{
    christoffel, christoffel_derivative, conformal_ricci_point, connection_difference, lambda_derivative, lambda_from,
    riemann, textbook_ricci, BackgroundPoint, Christoffel, DChristoffel, MetricJet, RicciInputs, Riemann, ScalarJet,
    VectorJet,
};
