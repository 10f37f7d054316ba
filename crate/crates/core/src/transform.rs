//! Tuple transformations of the generalized type-2 Dirichlet and their
//! log-Jacobians.
//!
//! With `S_j = I + X_j + ... + X_k` (and `S_{k+1} = I`):
//!
//! | kind | component `j`                         | distribution claimed          |
//! |------|---------------------------------------|-------------------------------|
//! | `Y`  | `S_j^{-1/2} X_j S_j^{-1/2}`           | `B1(alpha_j, tail_j)`         |
//! | `Z`  | `S_j^{-1/2} S_{j+1} S_j^{-1/2}`       | `B1(tail_j, alpha_j)`         |
//! | `U`  | `X_j^{-1/2} S_{j+1} X_j^{-1/2}`       | `B2(tail_j, alpha_j)`         |
//! | `V`  | `S_{j+1}^{-1/2} X_j S_{j+1}^{-1/2}`   | `B2(alpha_j, tail_j)`         |
//!
//! Every map is block triangular in `(X_1, ..., X_k)`, so its Jacobian is the
//! product of the diagonal-block determinants. For `V` each block is a
//! congruence by a matrix that does not depend on `X_j`, so the formula is
//! exact. The `Y`/`Z` and `U` formulas rest on identifying the volume element
//! of `A^{1/2} X A^{1/2}` with that of `X^{1/2} A X^{1/2}`; the numerical
//! oracle in [`crate::jacobian`] measures how far that holds pointwise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{HermitianMatrix, HpdMatrix};
use crate::tuple::HpdTuple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TransformKind {
    Y,
    Z,
    U,
    V,
}

impl TransformKind {
    pub const ALL: [TransformKind; 4] = [Self::Y, Self::Z, Self::U, Self::V];

    pub fn apply(self, xs: &HpdTuple) -> Result<TransformResult> {
        match self {
            Self::Y => to_type1_y(xs),
            Self::Z => to_type1_z(xs),
            Self::U => to_type2_u(xs),
            Self::V => to_type2_v(xs),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransformResult {
    pub output: HpdTuple,
    /// `log |det|` of the differential on stacked real coordinates.
    pub log_abs_jacobian: f64,
}

/// `log|J| = -2p log|S_1| - p sum_{j>=2} log|S_j|`, shared by `Y` and `Z`.
fn type1_log_jacobian(p: usize, sums: &[HpdMatrix]) -> f64 {
    let p = p as f64;
    let k = sums.len() - 1;
    -2.0 * p * sums[0].log_abs_det() - p * sums[1..k].iter().map(HpdMatrix::log_abs_det).sum::<f64>()
}

pub fn to_type1_y(xs: &HpdTuple) -> Result<TransformResult> {
    let sums = xs.partial_sums()?;
    let output = xs
        .mats()
        .iter()
        .zip(&sums)
        .map(|(x, s)| x.congruence(s.inv_sqrt()?.matrix()))
        .collect::<Result<Vec<_>>>()?;
    Ok(TransformResult {
        output: HpdTuple::new(output)?,
        log_abs_jacobian: type1_log_jacobian(xs.p(), &sums),
    })
}

pub fn to_type1_z(xs: &HpdTuple) -> Result<TransformResult> {
    let sums = xs.partial_sums()?;
    let output = sums
        .windows(2)
        .map(|w| w[1].congruence(w[0].inv_sqrt()?.matrix()))
        .collect::<Result<Vec<_>>>()?;
    Ok(TransformResult {
        output: HpdTuple::new(output)?,
        log_abs_jacobian: type1_log_jacobian(xs.p(), &sums),
    })
}

pub fn to_type2_u(xs: &HpdTuple) -> Result<TransformResult> {
    let sums = xs.partial_sums()?;
    let p = xs.p() as f64;
    let output = xs
        .mats()
        .iter()
        .zip(&sums[1..])
        .map(|(x, next)| next.congruence(x.inv_sqrt()?.matrix()))
        .collect::<Result<Vec<_>>>()?;
    let k = xs.k();
    let log_abs_jacobian = -2.0 * p * xs.mats().iter().map(HpdMatrix::log_abs_det).sum::<f64>()
        + p * sums[1..k].iter().map(HpdMatrix::log_abs_det).sum::<f64>();
    Ok(TransformResult {
        output: HpdTuple::new(output)?,
        log_abs_jacobian,
    })
}

pub fn to_type2_v(xs: &HpdTuple) -> Result<TransformResult> {
    let sums = xs.partial_sums()?;
    let k = xs.k();
    let mut output = Vec::with_capacity(k);
    for (j, x) in xs.mats().iter().enumerate() {
        if j + 1 == k {
            output.push(x.clone());
        } else {
            output.push(x.congruence(sums[j + 1].inv_sqrt()?.matrix())?);
        }
    }
    let p = xs.p() as f64;
    let log_abs_jacobian = -p * sums[1..k].iter().map(HpdMatrix::log_abs_det).sum::<f64>();
    Ok(TransformResult {
        output: HpdTuple::new(output)?,
        log_abs_jacobian,
    })
}

/// Inverse of [`to_type2_v`]: `X_k = V_k`, then right to left
/// `X_j = S_{j+1}^{1/2} V_j S_{j+1}^{1/2}`.
pub fn from_type2_v(vs: &HpdTuple) -> Result<HpdTuple> {
    let k = vs.k();
    let mut xs: Vec<HpdMatrix> = Vec::with_capacity(k);
    let last = vs.get(k - 1).clone();
    let mut acc: HermitianMatrix = last.as_hermitian().shift(1.0);
    xs.push(last);
    for v in vs.mats()[..k - 1].iter().rev() {
        let root = HpdMatrix::new(acc.clone())?.sqrt()?;
        let x = v.congruence(root.matrix())?;
        acc = &acc + x.as_hermitian();
        xs.push(x);
    }
    xs.reverse();
    HpdTuple::new(xs)
}

/// `(A^{1/2} X A^{1/2}, X^{1/2} A X^{1/2})`: two matrices with equal spectra.
pub fn lemma21_pair(a: &HpdMatrix, x: &HpdMatrix) -> Result<(HpdMatrix, HpdMatrix)> {
    check_same_dim(a, x)?;
    let first = x.congruence(a.sqrt()?.matrix())?;
    let second = a.congruence(x.sqrt()?.matrix())?;
    Ok((first, second))
}

/// `Y_1 -> Y_2`: recover `X = A^{-1/2} Y_1 A^{-1/2}` and return `X^{1/2} A X^{1/2}`.
pub fn lemma22_map(a: &HpdMatrix, y1: &HpdMatrix) -> Result<HpdMatrix> {
    check_same_dim(a, y1)?;
    let x = y1.congruence(a.inv_sqrt()?.matrix())?;
    a.congruence(x.sqrt()?.matrix())
}

fn check_same_dim(a: &HpdMatrix, b: &HpdMatrix) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            actual: b.dim(),
        });
    }
    Ok(())
}
