//! Log-scale complex matrix-variate gamma and beta functions, the
//! generalized type-2 Dirichlet normalizing constant, and closed-form
//! determinant moments.
//!
//! Everything is returned in log space; the constants overflow `f64` long
//! before `p` or `k` get interesting.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

// Lanczos approximation, g = 671/128 and 14 terms (Numerical Recipes, 3rd ed.).
const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_092;
const LANCZOS_COEF: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const SQRT_TWO_PI: f64 = 2.506_628_274_631_000_5;

/// `log Gamma(x)` for `x > 0`; NaN otherwise.
pub fn ln_gamma(x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NAN;
    }
    let tmp = x + LANCZOS_G;
    let tmp = (x + 0.5) * tmp.ln() - tmp;
    let mut ser = LANCZOS_C0;
    let mut y = x;
    for c in LANCZOS_COEF {
        y += 1.0;
        ser += c / y;
    }
    tmp + (SQRT_TWO_PI * ser / x).ln()
}

/// `log` of the complex matrix-variate gamma
/// `pi^{p(p-1)/2} Gamma(a) Gamma(a-1) ... Gamma(a-p+1)`, defined for `a > p - 1`.
pub fn log_multigamma_c(p: usize, a: f64) -> Result<f64> {
    check_p(p)?;
    let bound = p as f64 - 1.0;
    if !(a > bound) || !a.is_finite() {
        return Err(Error::Domain(format!(
            "complex multivariate gamma needs a > p - 1 = {bound}, got {a}"
        )));
    }
    let pf = p as f64;
    let head = 0.5 * pf * (pf - 1.0) * PI.ln();
    Ok(head + (0..p).map(|j| ln_gamma(a - j as f64)).sum::<f64>())
}

/// `log B_p(a, b) = log Gamma_p(a) + log Gamma_p(b) - log Gamma_p(a + b)`.
pub fn log_multibeta_c(p: usize, a: f64, b: f64) -> Result<f64> {
    Ok(log_multigamma_c(p, a)? + log_multigamma_c(p, b)? - log_multigamma_c(p, a + b)?)
}

/// `log E|det Y|^h` for a complex matrix-variate type-1 beta `Y ~ B1(a, b)`.
pub fn log_moment_type1(p: usize, a: f64, b: f64, h: f64) -> Result<f64> {
    let base = log_multibeta_c(p, a, b)?;
    if h == 0.0 {
        return Ok(0.0);
    }
    Ok(log_multibeta_c(p, a + h, b)? - base)
}

/// `log E|det U|^h` for a complex matrix-variate type-2 beta `U ~ B2(a, b)`.
pub fn log_moment_type2(p: usize, a: f64, b: f64, h: f64) -> Result<f64> {
    let base = log_multibeta_c(p, a, b)?;
    if h == 0.0 {
        return Ok(0.0);
    }
    Ok(log_multibeta_c(p, a + h, b - h)? - base)
}

/// Parameters of the generalized type-2 Dirichlet on `k` HPD `p x p` matrices.
///
/// `alpha` has `k + 1` entries, `beta` has `k`. Indices in the API are
/// zero-based; error messages use the one-based names `alpha[1]`, ...
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenDirichletParams {
    p: usize,
    alpha: Vec<f64>,
    beta: Vec<f64>,
}

impl GenDirichletParams {
    pub fn new(p: usize, alpha: Vec<f64>, beta: Vec<f64>) -> Result<Self> {
        check_p(p)?;
        let k = beta.len();
        if k == 0 {
            return Err(Error::Domain("k must be at least 1 (beta is empty)".into()));
        }
        if alpha.len() != k + 1 {
            return Err(Error::Domain(format!(
                "alpha must have k + 1 = {} entries, got {}",
                k + 1,
                alpha.len()
            )));
        }
        if let Some(bad) = alpha.iter().chain(&beta).find(|x| !x.is_finite()) {
            return Err(Error::Domain(format!("parameters must be finite, got {bad}")));
        }
        let params = Self { p, alpha, beta };
        let bound = p as f64 - 1.0;
        for j in 0..k {
            if !(params.alpha[j] > bound) {
                return Err(Error::Domain(format!(
                    "alpha[{}] must exceed p-1 = {bound}, got {}",
                    j + 1,
                    params.alpha[j]
                )));
            }
            let tail = params.tail(j);
            if !(tail > bound) {
                return Err(Error::Domain(format!(
                    "tail[{}] = alpha[{}..={}] + beta[{}..={}] must exceed p-1 = {bound}, got {tail}",
                    j + 1,
                    j + 2,
                    k + 1,
                    j + 1,
                    k
                )));
            }
        }
        Ok(params)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn k(&self) -> usize {
        self.beta.len()
    }

    pub fn alpha(&self) -> &[f64] {
        &self.alpha
    }

    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    /// `alpha_{j+1} + ... + alpha_{k+1} + beta_j + ... + beta_k` (one-based
    /// names), the second beta parameter of the `j`-th component.
    pub fn tail(&self, j: usize) -> f64 {
        self.alpha[j + 1..].iter().sum::<f64>() + self.beta[j..].iter().sum::<f64>()
    }

    pub fn tails(&self) -> Vec<f64> {
        (0..self.k()).map(|j| self.tail(j)).collect()
    }

    /// `alpha_1 + ... + alpha_{k+1} + beta_1 + ... + beta_k`.
    pub fn total(&self) -> f64 {
        self.alpha.iter().sum::<f64>() + self.beta.iter().sum::<f64>()
    }

    /// `alpha_j += h`, `alpha_{k+1} -= h`, re-validated.
    pub fn with_moment_shift(&self, j: usize, h: f64) -> Result<Self> {
        let k = self.k();
        if j >= k {
            return Err(Error::Domain(format!("component index {j} out of range 0..{k}")));
        }
        let mut alpha = self.alpha.clone();
        alpha[j] += h;
        alpha[k] -= h;
        Self::new(self.p, alpha, self.beta.clone())
    }
}

/// `log c_k`, from the product of type-2 beta constants over the components.
pub fn log_ck(params: &GenDirichletParams) -> Result<f64> {
    let p = params.p();
    let mut acc = 0.0;
    for j in 0..params.k() {
        let a = params.alpha[j];
        let t = params.tail(j);
        acc += log_multigamma_c(p, a)? + log_multigamma_c(p, t)? - log_multigamma_c(p, a + t)?;
    }
    Ok(-acc)
}

/// `log E|det X_j|^h` under the generalized type-2 Dirichlet.
pub fn log_moment_gen_dirichlet(params: &GenDirichletParams, j: usize, h: f64) -> Result<f64> {
    let shifted = params.with_moment_shift(j, h)?;
    if h == 0.0 {
        return Ok(0.0);
    }
    Ok(log_ck(params)? - log_ck(&shifted)?)
}

fn check_p(p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::Domain("dimension p must be positive".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use cmvdir_testkit as tk;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn ln_gamma_against_libm() {
        let mut x = 0.5;
        while x < 200.0 {
            let want = libm::lgamma(x);
            assert!(close(ln_gamma(x), want, 1e-13), "x = {x}: {} vs {want}", ln_gamma(x));
            x += 0.173;
        }
        assert!(ln_gamma(0.0).is_nan());
        assert!(ln_gamma(-1.5).is_nan());
    }

    #[test]
    fn ln_gamma_against_statrs() {
        for x in [0.7, 1.0, 1.5, 2.0, 3.25, 17.0, 150.5] {
            assert!(close(ln_gamma(x), statrs::function::gamma::ln_gamma(x), 1e-13));
        }
        assert!(ln_gamma(1.0).abs() < 1e-14);
        assert!(ln_gamma(2.0).abs() < 1e-14);
    }

    #[test]
    fn multigamma_scalar_reduction() {
        assert!(close(log_multigamma_c(1, 5.0).unwrap(), 24f64.ln(), 1e-14));
        for a in [1.5, 2.0, 5.0, 10.0] {
            assert!((log_multigamma_c(1, a).unwrap() - libm::lgamma(a)).abs() < 1e-13);
        }
    }

    #[test]
    fn multigamma_p2_substitution() {
        let want = PI.ln() + libm::lgamma(2.5) + libm::lgamma(1.5);
        assert!(close(log_multigamma_c(2, 2.5).unwrap(), want, 1e-14));
        // Gamma_2(3) = pi * Gamma(3) * Gamma(2) = 2 pi
        assert!(close(log_multigamma_c(2, 3.0).unwrap(), (2.0 * PI).ln(), 1e-14));
    }

    #[test]
    fn multigamma_recurrence() {
        for p in 2..=6 {
            for a in [p as f64 - 0.5, p as f64 + 0.3, 12.0] {
                let lhs = log_multigamma_c(p, a).unwrap() - log_multigamma_c(p - 1, a).unwrap();
                let rhs = (p as f64 - 1.0) * PI.ln() + ln_gamma(a - p as f64 + 1.0);
                assert!((lhs - rhs).abs() < 1e-12, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn multigamma_domain() {
        assert!(matches!(log_multigamma_c(2, 1.0), Err(Error::Domain(_))));
        assert!(matches!(log_multigamma_c(3, 1.5), Err(Error::Domain(_))));
        assert!(log_multigamma_c(3, 2.0001).is_ok());
        assert!(log_multigamma_c(0, 2.0).is_err());
    }

    #[test]
    fn multibeta_scalar() {
        assert!(close(log_multibeta_c(1, 2.0, 3.0).unwrap(), (1.0f64 / 12.0).ln(), 1e-14));
        assert!(log_multibeta_c(1, 1.0, 1.0).unwrap().abs() < 1e-15);
        assert!(log_multibeta_c(2, 3.0, 0.5).is_err());
    }

    #[test]
    fn multibeta_decreases_in_a() {
        for p in 1..=3 {
            let mut prev = f64::INFINITY;
            for step in 0..40 {
                let a = p as f64 - 0.9 + 0.25 * step as f64;
                let v = log_multibeta_c(p, a, p as f64 + 0.5).unwrap();
                assert!(v < prev);
                prev = v;
            }
        }
    }

    #[test]
    fn type1_moments() {
        assert_eq!(log_moment_type1(2, 3.0, 4.0, 0.0).unwrap(), 0.0);
        assert!(close(log_moment_type1(1, 2.0, 2.0, 1.0).unwrap(), 0.5f64.ln(), 1e-14));
        // p = 2: E|det Y| = prod_j (a - j)/(a + b - j) = (3/7)(2/6)
        let want = (3.0f64 / 7.0 * 2.0 / 6.0).ln();
        assert!(close(log_moment_type1(2, 3.0, 4.0, 1.0).unwrap(), want, 1e-13));
    }

    #[test]
    fn type2_moments() {
        assert_eq!(log_moment_type2(2, 3.0, 5.0, 0.0).unwrap(), 0.0);
        assert!(log_moment_type2(1, 2.0, 3.0, 1.0).unwrap().abs() < 1e-14);
        // p = 2: E|det U| = prod_j (a - j)/(b - 1 - j) = (3/4)(2/3)
        let want = (3.0f64 / 4.0 * 2.0 / 3.0).ln();
        assert!(close(log_moment_type2(2, 3.0, 5.0, 1.0).unwrap(), want, 1e-13));
        // b - h must stay above p - 1
        assert!(log_moment_type2(2, 3.0, 2.5, 1.6).is_err());
    }

    #[test]
    fn params_validation_messages() {
        let e = GenDirichletParams::new(2, vec![0.5, 3.0, 3.0], vec![1.0, 1.0]).unwrap_err();
        assert!(e.to_string().contains("alpha[1] must exceed p-1"), "{e}");
        let e = GenDirichletParams::new(2, vec![3.0, 3.0, 0.2], vec![1.0, 0.1]).unwrap_err();
        assert!(e.to_string().contains("tail[2]"), "{e}");
        assert!(GenDirichletParams::new(2, vec![3.0, 3.0], vec![1.0, 1.0]).is_err());
        assert!(GenDirichletParams::new(2, vec![3.0], vec![]).is_err());
        // alpha_{k+1} itself is unconstrained beyond the tail sums
        assert!(GenDirichletParams::new(2, vec![3.0, 3.0, 0.5], vec![1.0, 1.0]).is_ok());
    }

    #[test]
    fn tails() {
        let params = GenDirichletParams::new(1, vec![2.0, 2.0, 4.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(params.tails(), vec![8.0, 5.0]);
        assert_eq!(params.total(), 10.0);
    }

    #[test]
    fn ck_scalar_by_quadrature() {
        let params = GenDirichletParams::new(1, vec![2.0, 3.0], vec![1.0]).unwrap();
        let ck = log_ck(&params).unwrap().exp();
        assert!((ck - 20.0).abs() < 1e-12);
        let q = tk::integrate_half_line(|x| x * (1.0 + x).powi(-6), 1e-14);
        assert!((1.0 / q.value - ck).abs() < 1e-9);
    }

    #[test]
    fn ck_single_component_is_type2_beta() {
        for (p, a, b) in [(1, vec![2.0, 3.0], 1.0), (3, vec![2.5, 4.0], -0.5), (2, vec![1.5, 0.7], 1.1)] {
            let params = GenDirichletParams::new(p, a.clone(), vec![b]).unwrap();
            let want = -log_multibeta_c(p, a[0], a[1] + b).unwrap();
            assert!((log_ck(&params).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn ck_without_beta_matches_classical_dirichlet() {
        for (p, alpha) in [
            (1, vec![2.0, 0.5, 1.5]),
            (2, vec![3.0, 3.0, 3.0]),
            (3, vec![2.5, 4.0, 3.5, 2.2]),
        ] {
            let k = alpha.len() - 1;
            let params = GenDirichletParams::new(p, alpha.clone(), vec![0.0; k]).unwrap();
            let want = tk::ln_classical_type2_dirichlet_constant(p, &alpha);
            assert!((log_ck(&params).unwrap() - want).abs() < 1e-12 * want.abs().max(1.0));
        }
    }

    #[test]
    fn ck_term_by_term() {
        let params = GenDirichletParams::new(2, vec![3.0, 2.5, 1.5, 4.0], vec![0.5, 1.0, 0.25]).unwrap();
        let a = params.alpha();
        let b = params.beta();
        let terms = [
            (a[0], a[1] + a[2] + a[3] + b[0] + b[1] + b[2]),
            (a[1], a[2] + a[3] + b[1] + b[2]),
            (a[2], a[3] + b[2]),
        ];
        let want: f64 = terms
            .iter()
            .map(|&(x, t)| tk::ln_complex_multigamma(2, x) + tk::ln_complex_multigamma(2, t) - tk::ln_complex_multigamma(2, x + t))
            .sum();
        assert!((log_ck(&params).unwrap() + want).abs() < 1e-12);
    }

    #[test]
    fn gen_dirichlet_moment_reductions() {
        let params = GenDirichletParams::new(2, vec![3.0, 3.0, 3.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(log_moment_gen_dirichlet(&params, 0, 0.0).unwrap(), 0.0);
        let one = GenDirichletParams::new(2, vec![3.5, 4.0], vec![1.5]).unwrap();
        let got = log_moment_gen_dirichlet(&one, 0, 1.0).unwrap();
        let want = log_moment_type2(2, 3.5, 5.5, 1.0).unwrap();
        assert!((got - want).abs() < 1e-12);
        assert!(log_moment_gen_dirichlet(&params, 0, 3.0).is_err());
    }

    #[test]
    fn gen_dirichlet_moment_scalar_quadrature() {
        let params = GenDirichletParams::new(1, vec![2.0, 2.0, 4.0], vec![1.0, 1.0]).unwrap();
        let want = log_moment_gen_dirichlet(&params, 0, 1.0).unwrap().exp();
        let q = tk::integrate_quadrant(
            |x1, x2| x1 * tk::scalar_gen_dirichlet_k2_pdf(x1, x2, [2.0, 2.0, 4.0], [1.0, 1.0]),
            1e-10,
        );
        assert!((q.value - want).abs() < 1e-6, "{} vs {want}", q.value);
    }
}
