//! Log-densities of the complex matrix-variate gamma, type-1 beta, type-2
//! beta and generalized type-2 Dirichlet distributions (identity scale).

use crate::error::{Error, Result};
use crate::hermitian::{HermitianMatrix, HpdMatrix};
use crate::special::{log_ck, log_multibeta_c, log_multigamma_c, GenDirichletParams};
use crate::tuple::HpdTuple;

/// `(a - p) log|det X| - tr X - log Gamma_p(a)`.
pub fn logpdf_matrix_gamma(x: &HpdMatrix, a: f64) -> Result<f64> {
    let p = x.dim() as f64;
    Ok((a - p) * x.log_abs_det() - x.trace() - log_multigamma_c(x.dim(), a)?)
}

/// Type-1 beta: support is `0 < X < I`; `I - X` is certified by Cholesky.
pub fn logpdf_type1_beta(x: &HpdMatrix, a: f64, b: f64) -> Result<f64> {
    let log_norm = log_multibeta_c(x.dim(), a, b)?;
    let complement = one_minus(x)?;
    let p = x.dim() as f64;
    Ok((a - p) * x.log_abs_det() + (b - p) * complement.log_abs_det() - log_norm)
}

/// Type-2 beta on the whole HPD cone.
pub fn logpdf_type2_beta(x: &HpdMatrix, a: f64, b: f64) -> Result<f64> {
    let log_norm = log_multibeta_c(x.dim(), a, b)?;
    let p = x.dim() as f64;
    Ok((a - p) * x.log_abs_det() - (a + b) * x.shift(1.0)?.log_abs_det() - log_norm)
}

/// Generalized type-2 Dirichlet:
///
/// `log c_k + sum_j (alpha_j - p) log|X_j| + sum_{j<k} beta_j log|S_{j+1}|
///  - (sum alpha + sum beta) log|S_1|`
///
/// with `S_j = I + X_j + ... + X_k`.
pub fn logpdf_gen_dirichlet(xs: &HpdTuple, params: &GenDirichletParams) -> Result<f64> {
    if xs.k() != params.k() {
        return Err(Error::DimensionMismatch {
            expected: params.k(),
            actual: xs.k(),
        });
    }
    if xs.p() != params.p() {
        return Err(Error::DimensionMismatch {
            expected: params.p(),
            actual: xs.p(),
        });
    }
    let sums = xs.partial_sums()?;
    log_gen_dirichlet_with_sums(xs, &sums, params)
}

pub(crate) fn log_gen_dirichlet_with_sums(
    xs: &HpdTuple,
    sums: &[HpdMatrix],
    params: &GenDirichletParams,
) -> Result<f64> {
    let p = params.p() as f64;
    let alpha = params.alpha();
    let beta = params.beta();
    let k = params.k();
    let mut acc = log_ck(params)?;
    for (x, a) in xs.mats().iter().zip(alpha) {
        acc += (a - p) * x.log_abs_det();
    }
    for j in 0..k - 1 {
        acc += beta[j] * sums[j + 1].log_abs_det();
    }
    acc -= params.total() * sums[0].log_abs_det();
    Ok(acc)
}

fn one_minus(x: &HpdMatrix) -> Result<HpdMatrix> {
    let diff = &HermitianMatrix::identity(x.dim()) - x.as_hermitian();
    HpdMatrix::new(diff).map_err(|_| Error::Support("I - X is not positive definite".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::HermitianMatrix;
    use cmvdir_testkit as tk;
    use std::f64::consts::{LN_2, PI};

    fn scalar(x: f64) -> HpdMatrix {
        HpdMatrix::new(HermitianMatrix::from_diagonal(&[x])).unwrap()
    }

    fn diag(d: &[f64]) -> HpdMatrix {
        HpdMatrix::new(HermitianMatrix::from_diagonal(d)).unwrap()
    }

    #[test]
    fn gamma_examples() {
        for x in [0.1, 1.0, 3.7] {
            assert!((logpdf_matrix_gamma(&scalar(x), 1.0).unwrap() + x).abs() < 1e-14);
        }
        let v = logpdf_matrix_gamma(&HpdMatrix::identity(2), 2.0).unwrap();
        assert!((v - (-2.0 - PI.ln())).abs() < 1e-14);
        for x in [0.5, 1.0, 2.0] {
            let want = tk::gamma_logpdf(x, 3.0);
            assert!((logpdf_matrix_gamma(&scalar(x), 3.0).unwrap() - want).abs() < 1e-12);
        }
        assert!(logpdf_matrix_gamma(&HpdMatrix::identity(2), 1.0).is_err());
    }

    #[test]
    fn type1_examples() {
        assert!(logpdf_type1_beta(&scalar(0.3), 1.0, 1.0).unwrap().abs() < 1e-15);
        assert!((logpdf_type1_beta(&scalar(0.5), 2.0, 3.0).unwrap() - 1.5f64.ln()).abs() < 1e-14);
        let half = diag(&[0.5, 0.5]);
        let want = -log_multibeta_c(2, 3.0, 3.0).unwrap() - 4.0 * LN_2;
        assert!((logpdf_type1_beta(&half, 3.0, 3.0).unwrap() - want).abs() < 1e-13);
        for x in [0.05, 0.4, 0.93] {
            let want = tk::beta_logpdf(x, 2.5, 1.5);
            assert!((logpdf_type1_beta(&scalar(x), 2.5, 1.5).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn type1_support() {
        assert!(matches!(
            logpdf_type1_beta(&diag(&[0.5, 1.2]), 3.0, 3.0),
            Err(Error::Support(_))
        ));
        assert!(matches!(logpdf_type1_beta(&scalar(1.0), 2.0, 2.0), Err(Error::Support(_))));
    }

    #[test]
    fn type2_examples() {
        let v = logpdf_type2_beta(&scalar(1.0), 1.0, 1.0).unwrap();
        assert!((v - 0.25f64.ln()).abs() < 1e-15);
        let q = tk::integrate_half_line(|x| logpdf_type2_beta(&scalar(x), 2.0, 3.0).unwrap().exp(), 1e-12);
        assert!((q.value - 1.0).abs() < 1e-8);
        let want = -14.0 * LN_2 - log_multibeta_c(2, 3.0, 4.0).unwrap();
        assert!((logpdf_type2_beta(&HpdMatrix::identity(2), 3.0, 4.0).unwrap() - want).abs() < 1e-13);
        for x in [0.2, 1.0, 9.0] {
            let want = tk::beta_prime_logpdf(x, 2.0, 3.5);
            assert!((logpdf_type2_beta(&scalar(x), 2.0, 3.5).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn gen_dirichlet_single_component_is_type2() {
        let params = GenDirichletParams::new(2, vec![3.0, 2.5], vec![1.5]).unwrap();
        let x = HpdMatrix::from_matrix(&(HermitianMatrix::from_diagonal(&[0.7, 2.0]).into_matrix())).unwrap();
        let xs = HpdTuple::new(vec![x.clone()]).unwrap();
        let a = logpdf_gen_dirichlet(&xs, &params).unwrap();
        let b = logpdf_type2_beta(&x, 3.0, 4.0).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn gen_dirichlet_scalar_substitution() {
        let params = GenDirichletParams::new(1, vec![2.0, 2.0, 2.0], vec![1.0, 1.0]).unwrap();
        let xs = HpdTuple::new(vec![scalar(1.0), scalar(1.0)]).unwrap();
        let got = logpdf_gen_dirichlet(&xs, &params).unwrap();
        let want = log_ck(&params).unwrap() + LN_2 - 8.0 * 3f64.ln();
        assert!((got - want).abs() < 1e-13);
        let independent = tk::scalar_gen_dirichlet_k2_pdf(1.0, 1.0, [2.0, 2.0, 2.0], [1.0, 1.0]);
        assert!((got.exp() - independent).abs() < 1e-13);
    }

    #[test]
    fn gen_dirichlet_dimension_checks() {
        let params = GenDirichletParams::new(2, vec![3.0, 3.0, 3.0], vec![1.0, 1.0]).unwrap();
        let one = HpdTuple::new(vec![HpdMatrix::identity(2)]).unwrap();
        assert!(matches!(logpdf_gen_dirichlet(&one, &params), Err(Error::DimensionMismatch { .. })));
        let wrong_p = HpdTuple::new(vec![HpdMatrix::identity(3), HpdMatrix::identity(3)]).unwrap();
        assert!(matches!(logpdf_gen_dirichlet(&wrong_p, &params), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn scalar_normalization_by_quadrature() {
        let one = GenDirichletParams::new(1, vec![1.5, 2.0], vec![0.5]).unwrap();
        let q = tk::integrate_half_line(
            |x| logpdf_gen_dirichlet(&HpdTuple::new(vec![scalar(x)]).unwrap(), &one).unwrap().exp(),
            1e-12,
        );
        assert!((q.value - 1.0).abs() < 1e-6);

        let two = GenDirichletParams::new(1, vec![2.0, 2.0, 4.0], vec![1.0, 1.0]).unwrap();
        let q = tk::integrate_quadrant(
            |x1, x2| {
                let xs = HpdTuple::new(vec![scalar(x1), scalar(x2)]).unwrap();
                logpdf_gen_dirichlet(&xs, &two).unwrap().exp()
            },
            1e-9,
        );
        assert!((q.value - 1.0).abs() < 1e-6, "{}", q.value);
    }

    #[test]
    fn gamma_integrand_scaling_scalar() {
        // int x^{a-1} e^{-x/c} dx = c^a Gamma(a)
        for (a, c) in [(2.5, 0.5), (4.0, 3.0)] {
            let q = tk::integrate_half_line(
                |x| (logpdf_matrix_gamma(&scalar(x), a).unwrap() + x - x / c).exp(),
                1e-13,
            );
            assert!((q.value - c.powf(a)).abs() < 1e-9 * c.powf(a));
        }
    }
}
