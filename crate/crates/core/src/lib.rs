//! Complex matrix-variate gamma, beta and generalized type-2 Dirichlet
//! distributions: densities, exact samplers, tuple transformations,
//! finite-difference Jacobians and Monte Carlo verification.

pub mod coords;
pub mod density;
pub mod error;
pub mod hermitian;
pub mod jacobian;
pub mod montecarlo;
pub mod sampler;
pub mod special;
pub mod transform;
pub mod tuple;

pub use error::{Error, Result};
pub use hermitian::{CMatrix, HermitianMatrix, HpdMatrix, LowerTriangularFactor};
pub use sampler::{MatrixSampler, RngStream};
pub use special::GenDirichletParams;
pub use transform::{TransformKind, TransformResult};
pub use tuple::HpdTuple;
