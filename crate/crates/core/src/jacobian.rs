//! Central-difference Jacobian determinants of matrix transformations.
//!
//! This is the independent oracle for every analytic Jacobian in the crate.
//! Maps are evaluated on the real coordinates of [`crate::coords`]; the
//! difference matrix is factored by partial-pivot LU and its condition
//! number is estimated from the singular values.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};
use serde::Serialize;

use crate::coords::{coords_to_lower, lower_to_coords, unvectorize, vectorize, RealCoordinates};
use crate::error::{Error, Result};
use crate::hermitian::{CMatrix, HermitianMatrix, HpdMatrix, LowerTriangularFactor};
use crate::transform::{lemma22_map, TransformKind};
use crate::tuple::HpdTuple;

pub const DEFAULT_STEP: f64 = 1e-5;
pub const MIN_STEP: f64 = 1e-7;
pub const MAX_STEP: f64 = 1e-3;
/// Difference matrices with a larger condition estimate are rejected.
pub const MAX_CONDITION: f64 = 1e12;

/// One analytic-versus-numeric comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JacobianCheck {
    pub label: String,
    pub analytic: f64,
    pub numeric: f64,
    /// `|analytic - numeric| / max(1, |analytic|)`
    pub relative_error: f64,
    pub step: f64,
    pub seed: u64,
}

impl JacobianCheck {
    pub fn new(label: impl Into<String>, analytic: f64, numeric: f64, step: f64) -> Self {
        Self {
            label: label.into(),
            analytic,
            numeric,
            relative_error: (analytic - numeric).abs() / analytic.abs().max(1.0),
            step,
            seed: 0,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn passes(&self, tolerance: f64) -> bool {
        self.relative_error < tolerance
    }
}

/// `log |det J|` of `f: R^n -> R^n` at `x`, by central differences with
/// per-coordinate step `(1 + |x_c|) * base_step`.
pub fn numeric_log_jacobian_coords<F>(f: F, x: &[f64], base_step: f64) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    if !(MIN_STEP..=MAX_STEP).contains(&base_step) {
        return Err(Error::Domain(format!(
            "finite-difference step must lie in [{MIN_STEP:e}, {MAX_STEP:e}], got {base_step:e}"
        )));
    }
    let n = x.len();
    let mut jac = DMatrix::<f64>::zeros(n, n);
    let mut probe = x.to_vec();
    for c in 0..n {
        let step = (1.0 + x[c].abs()) * base_step;
        probe[c] = x[c] + step;
        let plus = f(&probe)?;
        probe[c] = x[c] - step;
        let minus = f(&probe)?;
        probe[c] = x[c];
        if plus.len() != n || minus.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: plus.len(),
            });
        }
        for r in 0..n {
            jac[(r, c)] = (plus[r] - minus[r]) / (2.0 * step);
        }
    }
    log_abs_det_checked(jac)
}

fn log_abs_det_checked(jac: DMatrix<f64>) -> Result<f64> {
    let sv = jac.singular_values();
    let max = sv.max();
    let min = sv.min();
    let condition = if min > 0.0 { max / min } else { f64::INFINITY };
    if !(condition <= MAX_CONDITION) {
        return Err(Error::SingularJacobian { condition });
    }
    let lu = jac.lu();
    let u = lu.u();
    Ok((0..u.nrows()).map(|i| u[(i, i)].abs().ln()).sum())
}

/// `log |det J|` of a map on tuples of hermitian matrices, each input and
/// output flattened with [`vectorize`] and stacked in order.
pub fn numeric_log_jacobian<F>(map: F, at: &[HermitianMatrix], step: f64) -> Result<f64>
where
    F: Fn(&[HermitianMatrix]) -> Result<Vec<HermitianMatrix>>,
{
    let p = at.first().ok_or_else(|| Error::Domain("empty input tuple".into()))?.dim();
    let x: Vec<f64> = at.iter().flat_map(|m| vectorize(m).into_vec()).collect();
    let block = p * p;
    numeric_log_jacobian_coords(
        |v| {
            let inputs = v
                .chunks(block)
                .map(|c| RealCoordinates::new(p, c.to_vec()).map(|rc| unvectorize(&rc)))
                .collect::<Result<Vec<_>>>()?;
            Ok(map(&inputs)?.iter().flat_map(|m| vectorize(m).into_vec()).collect())
        },
        &x,
        step,
    )
}

/// A transform as a map on raw hermitian tuples (inputs are re-certified HPD).
pub fn tuple_map(kind: TransformKind) -> impl Fn(&[HermitianMatrix]) -> Result<Vec<HermitianMatrix>> {
    move |hs| {
        let xs = HpdTuple::from_hermitian(hs.to_vec())?;
        Ok(kind.apply(&xs)?.output.hermitian())
    }
}

fn log_abs_det_complex(a: &CMatrix) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            actual: a.ncols(),
        });
    }
    let det: Complex64 = a.clone().lu().determinant();
    let norm = det.norm();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::Domain("congruence matrix must be invertible".into()));
    }
    Ok(norm.ln())
}

/// Congruence `X -> A X A*`: `log|J| = 2p log|det A|`.
pub fn check_eq_1_1(a: &CMatrix, x: &HpdMatrix) -> Result<JacobianCheck> {
    let p = x.dim();
    if a.nrows() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            actual: a.nrows(),
        });
    }
    let analytic = 2.0 * p as f64 * log_abs_det_complex(a)?;
    let numeric = numeric_log_jacobian(
        |hs| Ok(vec![hs[0].congruence(a)]),
        std::slice::from_ref(x.as_hermitian()),
        DEFAULT_STEP,
    )?;
    Ok(JacobianCheck::new("eq1.1", analytic, numeric, DEFAULT_STEP))
}

/// Inversion `X -> X^{-1}`: `log|J| = -2p log|det X|`.
pub fn check_eq_1_2(x: &HpdMatrix) -> Result<JacobianCheck> {
    let analytic = -2.0 * x.dim() as f64 * x.log_abs_det();
    let numeric = numeric_log_jacobian(
        |hs| Ok(vec![HpdMatrix::new(hs[0].clone())?.inverse()?.into_hermitian()]),
        std::slice::from_ref(x.as_hermitian()),
        DEFAULT_STEP,
    )?;
    Ok(JacobianCheck::new("eq1.2", analytic, numeric, DEFAULT_STEP))
}

/// `T -> T T*` on the `p^2` real coordinates of `T`:
/// `log|J| = p log 2 + sum_j (2(p - j) + 1) log t_jj`, one-based `j`.
pub fn check_eq_1_3(t: &LowerTriangularFactor) -> Result<JacobianCheck> {
    let p = t.dim();
    let analytic = p as f64 * std::f64::consts::LN_2
        + t.diagonal()
            .iter()
            .enumerate()
            .map(|(j, d)| (2 * (p - j - 1) + 1) as f64 * d.ln())
            .sum::<f64>();
    let numeric = numeric_log_jacobian_coords(
        |v| {
            let lower = coords_to_lower(p, v);
            Ok(lower_to_coords(&(&lower * lower.adjoint())))
        },
        &lower_to_coords(t.matrix()),
        DEFAULT_STEP,
    )?;
    Ok(JacobianCheck::new("eq1.3", analytic, numeric, DEFAULT_STEP))
}

pub fn transform_label(kind: TransformKind) -> &'static str {
    match kind {
        TransformKind::Y => "eq2.5",
        TransformKind::Z => "eq2.7-jac",
        TransformKind::U => "eq2.9",
        TransformKind::V => "thm2.5-jac",
    }
}

/// Analytic tuple Jacobian of `kind` against the numeric oracle.
pub fn check_tuple_jacobians(kind: TransformKind, xs: &HpdTuple) -> Result<JacobianCheck> {
    let (p, k) = (xs.p() as f64, xs.k() as f64);
    if p * k.sqrt() > 8.0 {
        return Err(Error::Domain(format!(
            "numeric tuple Jacobian limited to p*sqrt(k) <= 8, got p = {p}, k = {k}"
        )));
    }
    let analytic = kind.apply(xs)?.log_abs_jacobian;
    let numeric = numeric_log_jacobian(tuple_map(kind), &xs.hermitian(), DEFAULT_STEP)?;
    Ok(JacobianCheck::new(transform_label(kind), analytic, numeric, DEFAULT_STEP))
}

/// The `Y_1 -> Y_2` map built from `A`, whose volume element is claimed to
/// be preserved (analytic `log|J| = 0`).
pub fn check_lemma_2_2(a: &HpdMatrix, y1: &HpdMatrix) -> Result<JacobianCheck> {
    let numeric = numeric_log_jacobian(
        |hs| Ok(vec![lemma22_map(a, &HpdMatrix::new(hs[0].clone())?)?.into_hermitian()]),
        std::slice::from_ref(y1.as_hermitian()),
        DEFAULT_STEP,
    )?;
    Ok(JacobianCheck::new("lemma2.2", 0.0, numeric, DEFAULT_STEP))
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// `p x p` matrix of independent standard complex gaussians (`E|g|^2 = 1`).
pub fn random_complex<R: Rng + ?Sized>(p: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(p, p, |_, _| complex_gaussian(rng))
}

/// Test instance `G G* + delta I`.
pub fn random_hpd<R: Rng + ?Sized>(p: usize, delta: f64, rng: &mut R) -> Result<HpdMatrix> {
    let g = random_complex(p, rng);
    HpdMatrix::new(HermitianMatrix::hermitize(&(&g * g.adjoint())).shift(delta))
}

/// Unitary factor of the QR decomposition of a complex gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(p: usize, rng: &mut R) -> CMatrix {
    random_complex(p, rng).qr().q()
}

/// Lower factor with diagonal in `[0.5, 2)` and gaussian strict lower part.
pub fn random_factor<R: Rng + ?Sized>(p: usize, rng: &mut R) -> Result<LowerTriangularFactor> {
    let diag = Uniform::new(0.5, 2.0).map_err(|e| Error::Domain(e.to_string()))?;
    let mut t = CMatrix::zeros(p, p);
    for j in 0..p {
        t[(j, j)] = Complex64::new(diag.sample(rng), 0.0);
        for i in (j + 1)..p {
            t[(i, j)] = complex_gaussian(rng);
        }
    }
    LowerTriangularFactor::new(t)
}

/// Smallest gap between consecutive sorted eigenvalues (infinite for p = 1).
pub fn min_eigen_gap(x: &HpdMatrix) -> f64 {
    x.eigenvalues_sorted()
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
}

/// A pair `(A, Y_1 = A^{1/2} X A^{1/2})` whose `Y_1` eigenvalues are
/// separated by at least `min_gap`.
pub fn random_lemma22_instance<R: Rng + ?Sized>(
    p: usize,
    min_gap: f64,
    rng: &mut R,
) -> Result<(HpdMatrix, HpdMatrix)> {
    loop {
        let a = random_hpd(p, 0.1, rng)?;
        let x = random_hpd(p, 0.1, rng)?;
        let y1 = x.congruence(a.sqrt()?.matrix())?;
        if min_eigen_gap(&y1) >= min_gap {
            return Ok((a, y1));
        }
    }
}
