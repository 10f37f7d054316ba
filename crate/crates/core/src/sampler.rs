//! Exact samplers.
//!
//! The matrix gamma draw is the triangular construction: with `X = T T*`,
//! the density `|det X|^{a-p} e^{-tr X}` times the Jacobian
//! `2^p prod_j t_jj^{2(p-j)+1}` factorizes over the entries of `T`, giving
//! `t_jj^2 ~ Gamma(a - j + 1)` (one-based `j`) and independent off-diagonal
//! entries with real and imaginary parts `N(0, 1/2)`.
//!
//! Betas are built from independent matrix gammas, and the generalized
//! type-2 Dirichlet by inverting the `V` transform on independent type-2 betas.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hermitian::{CMatrix, HpdMatrix, LowerTriangularFactor};
use crate::special::{log_moment_type1, log_moment_type2, log_multigamma_c, GenDirichletParams};
use crate::transform::from_type2_v;
use crate::tuple::HpdTuple;

/// A reproducible random stream: ChaCha8 keyed by `seed`, on stream `stream`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream: u64,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }

    /// A child stream for worker/batch `index`. Children of distinct
    /// parents on the same seed do not collide while `index < 2^20`.
    pub fn fork(&self, index: u64) -> Self {
        Self {
            seed: self.seed,
            stream: self.stream.wrapping_shl(20).wrapping_add(index),
        }
    }
}

fn check_shape(p: usize, a: f64, what: &str) -> Result<()> {
    if p == 0 {
        return Err(Error::Domain("dimension p must be positive".into()));
    }
    let bound = p as f64 - 1.0;
    if !(a > bound) || !a.is_finite() {
        return Err(Error::Domain(format!("{what} must exceed p-1 = {bound}, got {a}")));
    }
    Ok(())
}

/// Complex matrix-variate gamma with shape `a > p - 1` and identity scale.
pub fn sample_matrix_gamma<R: Rng + ?Sized>(p: usize, a: f64, rng: &mut R) -> Result<HpdMatrix> {
    check_shape(p, a, "gamma shape")?;
    let mut t = CMatrix::zeros(p, p);
    for j in 0..p {
        let g = Gamma::new(a - j as f64, 1.0).map_err(|e| Error::Domain(e.to_string()))?;
        let d: f64 = g.sample(rng);
        t[(j, j)] = Complex64::new(d.sqrt(), 0.0);
        for i in (j + 1)..p {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            t[(i, j)] = Complex64::new(re * FRAC_1_SQRT_2, im * FRAC_1_SQRT_2);
        }
    }
    Ok(HpdMatrix::from_factor(LowerTriangularFactor::new(t)?))
}

/// Type-1 beta `(A + B)^{-1/2} A (A + B)^{-1/2}`.
pub fn sample_type1_beta<R: Rng + ?Sized>(p: usize, a: f64, b: f64, rng: &mut R) -> Result<HpdMatrix> {
    check_shape(p, a, "a")?;
    check_shape(p, b, "b")?;
    let ga = sample_matrix_gamma(p, a, rng)?;
    let gb = sample_matrix_gamma(p, b, rng)?;
    let total = HpdMatrix::new(ga.as_hermitian() + gb.as_hermitian())?;
    ga.congruence(total.inv_sqrt()?.matrix())
}

/// Type-2 beta `B^{-1/2} A B^{-1/2}`.
pub fn sample_type2_beta<R: Rng + ?Sized>(p: usize, a: f64, b: f64, rng: &mut R) -> Result<HpdMatrix> {
    check_shape(p, a, "a")?;
    check_shape(p, b, "b")?;
    let ga = sample_matrix_gamma(p, a, rng)?;
    let gb = sample_matrix_gamma(p, b, rng)?;
    ga.congruence(gb.inv_sqrt()?.matrix())
}

/// Independent `V_j ~ B2(alpha_j, tail_j)`, `j = 1..k`, drawn in order.
pub fn sample_type2_components<R: Rng + ?Sized>(params: &GenDirichletParams, rng: &mut R) -> Result<HpdTuple> {
    let p = params.p();
    let vs = (0..params.k())
        .map(|j| sample_type2_beta(p, params.alpha()[j], params.tail(j), rng))
        .collect::<Result<Vec<_>>>()?;
    HpdTuple::new(vs)
}

/// Generalized type-2 Dirichlet draw: independent type-2 betas pushed
/// through the inverse of the `V` transform.
pub fn sample_gen_dirichlet<R: Rng + ?Sized>(params: &GenDirichletParams, rng: &mut R) -> Result<HpdTuple> {
    from_type2_v(&sample_type2_components(params, rng)?)
}

/// One of the single-matrix families, as a value that can be sampled and
/// knows its own determinant moments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum MatrixSampler {
    Gamma { p: usize, a: f64 },
    Type1Beta { p: usize, a: f64, b: f64 },
    Type2Beta { p: usize, a: f64, b: f64 },
}

impl MatrixSampler {
    pub fn gamma(p: usize, a: f64) -> Result<Self> {
        check_shape(p, a, "gamma shape")?;
        Ok(Self::Gamma { p, a })
    }

    pub fn type1_beta(p: usize, a: f64, b: f64) -> Result<Self> {
        check_shape(p, a, "a")?;
        check_shape(p, b, "b")?;
        Ok(Self::Type1Beta { p, a, b })
    }

    pub fn type2_beta(p: usize, a: f64, b: f64) -> Result<Self> {
        check_shape(p, a, "a")?;
        check_shape(p, b, "b")?;
        Ok(Self::Type2Beta { p, a, b })
    }

    pub fn p(&self) -> usize {
        match *self {
            Self::Gamma { p, .. } | Self::Type1Beta { p, .. } | Self::Type2Beta { p, .. } => p,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Result<HpdMatrix> {
        match *self {
            Self::Gamma { p, a } => sample_matrix_gamma(p, a, rng),
            Self::Type1Beta { p, a, b } => sample_type1_beta(p, a, b, rng),
            Self::Type2Beta { p, a, b } => sample_type2_beta(p, a, b, rng),
        }
    }

    /// Closed-form `log E|det X|^h`.
    pub fn log_det_moment(&self, h: f64) -> Result<f64> {
        match *self {
            Self::Gamma { p, a } => Ok(log_multigamma_c(p, a + h)? - log_multigamma_c(p, a)?),
            Self::Type1Beta { p, a, b } => log_moment_type1(p, a, b, h),
            Self::Type2Beta { p, a, b } => log_moment_type2(p, a, b, h),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Self::Gamma { p, a } => format!("gamma(p={p},a={a})"),
            Self::Type1Beta { p, a, b } => format!("type1-beta(p={p},a={a},b={b})"),
            Self::Type2Beta { p, a, b } => format!("type2-beta(p={p},a={a},b={b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::HermitianMatrix;

    fn mean_and_se(xs: &[f64]) -> (f64, f64) {
        let n = xs.len() as f64;
        let m = xs.iter().sum::<f64>() / n;
        let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
        (m, (v / n).sqrt())
    }

    #[test]
    fn same_stream_same_draws() {
        let s = RngStream::new(9, 3);
        let a = sample_matrix_gamma(3, 4.5, &mut s.rng()).unwrap();
        let b = sample_matrix_gamma(3, 4.5, &mut s.rng()).unwrap();
        assert_eq!(a, b);
        let c = sample_matrix_gamma(3, 4.5, &mut RngStream::new(9, 4).rng()).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn fork_is_distinct() {
        let s = RngStream::new(1, 2);
        assert_ne!(s.fork(0), s.fork(1));
        assert_ne!(s.fork(0), RngStream::new(1, 3).fork(0));
    }

    #[test]
    fn domain_errors() {
        let mut rng = RngStream::new(0, 0).rng();
        assert!(sample_matrix_gamma(2, 1.0, &mut rng).is_err());
        assert!(sample_type1_beta(2, 3.0, 0.5, &mut rng).is_err());
        assert!(sample_type2_beta(3, 1.9, 4.0, &mut rng).is_err());
        assert!(MatrixSampler::gamma(0, 1.0).is_err());
    }

    #[test]
    fn scalar_gamma_mean() {
        let mut rng = RngStream::new(21, 0).rng();
        let xs: Vec<f64> = (0..100_000)
            .map(|_| sample_matrix_gamma(1, 3.0, &mut rng).unwrap().trace())
            .collect();
        let (m, se) = mean_and_se(&xs);
        assert!((m - 3.0).abs() < 3.0 * se, "{m} +- {se}");
    }

    #[test]
    fn matrix_gamma_trace_and_det() {
        let mut rng = RngStream::new(22, 0).rng();
        let draws: Vec<HpdMatrix> = (0..100_000)
            .map(|_| sample_matrix_gamma(2, 3.0, &mut rng).unwrap())
            .collect();
        let traces: Vec<f64> = draws.iter().map(|x| x.trace()).collect();
        let (m, se) = mean_and_se(&traces);
        assert!((m - 6.0).abs() < 3.0 * se, "trace {m} +- {se}");
        let dets: Vec<f64> = draws.iter().map(|x| x.log_abs_det().exp()).collect();
        let (m, se) = mean_and_se(&dets);
        assert!((m - 6.0).abs() < 3.0 * se, "det {m} +- {se}");
    }

    #[test]
    fn small_shape_stays_positive() {
        // minimal diagonal shape a - p + 1 = 0.3 < 1
        let mut rng = RngStream::new(23, 0).rng();
        for _ in 0..2000 {
            let x = sample_matrix_gamma(2, 1.3, &mut rng).unwrap();
            assert!(x.log_abs_det().is_finite());
        }
    }

    #[test]
    fn type1_support_holds() {
        let mut rng = RngStream::new(24, 0).rng();
        for _ in 0..100_000 {
            let y = sample_type1_beta(2, 3.0, 4.0, &mut rng).unwrap();
            let complement = &HermitianMatrix::identity(2) - y.as_hermitian();
            assert!(HpdMatrix::new(complement).is_ok());
        }
    }

    #[test]
    fn gen_dirichlet_single_component_is_v() {
        let params = GenDirichletParams::new(2, vec![3.0, 2.5], vec![1.0]).unwrap();
        let s = RngStream::new(5, 5);
        let xs = sample_gen_dirichlet(&params, &mut s.rng()).unwrap();
        let v = sample_type2_beta(2, 3.0, 3.5, &mut s.rng()).unwrap();
        assert_eq!(xs.get(0), &v);
    }

    #[test]
    fn gen_dirichlet_reproducible() {
        let params = GenDirichletParams::new(2, vec![3.0, 3.0, 3.0], vec![1.0, 1.0]).unwrap();
        let s = RngStream::new(77, 1);
        let a = sample_gen_dirichlet(&params, &mut s.rng()).unwrap();
        let b = sample_gen_dirichlet(&params, &mut s.rng()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn closed_form_moments() {
        let g = MatrixSampler::gamma(2, 3.0).unwrap();
        assert!((g.log_det_moment(1.0).unwrap() - 6f64.ln()).abs() < 1e-13);
        let t1 = MatrixSampler::type1_beta(1, 2.0, 2.0).unwrap();
        assert!((t1.log_det_moment(1.0).unwrap() - 0.5f64.ln()).abs() < 1e-14);
    }
}
