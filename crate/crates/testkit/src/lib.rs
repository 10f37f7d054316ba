//! Independent numerical oracles for the cmvdir test suites.
//!
//! Nothing here depends on `cmvdir`: scalar special functions come from
//! `libm`, integrals from a small adaptive Gauss-Kronrod rule. Tests compare
//! the library against these values, so they must stay free of any shared
//! code path with the implementation under test.

use std::f64::consts::PI;

// Gauss-Kronrod 7/15 nodes and weights (QUADPACK qk15).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_DEPTH: u32 = 40;

/// Result of a quadrature: value and accumulated error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Quad {
    pub value: f64,
    pub error: f64,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> Quad {
    let (value, error) = gk15(f, a, b);
    if error <= tol.max(1e-15 * value.abs()) || depth >= MAX_DEPTH {
        return Quad { value, error };
    }
    let m = 0.5 * (a + b);
    let left = adapt(f, a, m, 0.5 * tol, depth + 1);
    let right = adapt(f, m, b, 0.5 * tol, depth + 1);
    Quad {
        value: left.value + right.value,
        error: left.error + right.error,
    }
}

/// Adaptive Gauss-Kronrod on a finite interval to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Quad {
    adapt(&f, a, b, tol, 0)
}

/// `int_0^inf f(x) dx` through `x = t / (1 - t)`.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, tol: f64) -> Quad {
    integrate(
        |t| {
            let s = 1.0 - t;
            f(t / s) / (s * s)
        },
        0.0,
        1.0,
        tol,
    )
}

/// `int int_{(0, inf)^2} f(x, y) dx dy` by nested 1-D quadrature.
pub fn integrate_quadrant<F: Fn(f64, f64) -> f64>(f: F, tol: f64) -> Quad {
    let inner_tol = 1e-3 * tol;
    integrate_half_line(|x| integrate_half_line(|y| f(x, y), inner_tol).value, tol)
}

pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// `(p(p-1)/2) log(pi) + sum_{j<p} log Gamma(a - j)`, straight from the definition.
pub fn ln_complex_multigamma(p: usize, a: f64) -> f64 {
    let pf = p as f64;
    0.5 * pf * (pf - 1.0) * PI.ln() + (0..p).map(|j| ln_gamma(a - j as f64)).sum::<f64>()
}

/// Normalizing constant (log) of the classical complex matrix-variate
/// type-2 Dirichlet with parameters `a_1..a_{k+1}`:
/// `Gamma_p(sum a) / prod Gamma_p(a_i)`.
pub fn ln_classical_type2_dirichlet_constant(p: usize, a: &[f64]) -> f64 {
    let total: f64 = a.iter().sum();
    ln_complex_multigamma(p, total) - a.iter().map(|&x| ln_complex_multigamma(p, x)).sum::<f64>()
}

pub fn gamma_logpdf(x: f64, shape: f64) -> f64 {
    (shape - 1.0) * x.ln() - x - ln_gamma(shape)
}

pub fn ln_beta(a: f64, b: f64) -> f64 {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

pub fn beta_logpdf(x: f64, a: f64, b: f64) -> f64 {
    (a - 1.0) * x.ln() + (b - 1.0) * (1.0 - x).ln() - ln_beta(a, b)
}

pub fn beta_prime_logpdf(x: f64, a: f64, b: f64) -> f64 {
    (a - 1.0) * x.ln() - (a + b) * (1.0 + x).ln() - ln_beta(a, b)
}

/// Scalar (p = 1) generalized type-2 Dirichlet density for `k = 2`,
/// written out term by term:
/// `c x1^(a1-1) x2^(a2-1) (1 + x2)^b1 (1 + x1 + x2)^-(a1+a2+a3+b1+b2)`.
pub fn scalar_gen_dirichlet_k2_pdf(x1: f64, x2: f64, alpha: [f64; 3], beta: [f64; 2]) -> f64 {
    let [a1, a2, a3] = alpha;
    let [b1, b2] = beta;
    let total = a1 + a2 + a3 + b1 + b2;
    // c^{-1} = B(a1, a2 + a3 + b1 + b2) * B(a2, a3 + b2)
    let ln_c = -(ln_beta(a1, a2 + a3 + b1 + b2) + ln_beta(a2, a3 + b2));
    (ln_c + (a1 - 1.0) * x1.ln() + (a2 - 1.0) * x2.ln() + b1 * (1.0 + x2).ln()
        - total * (1.0 + x1 + x2).ln())
    .exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let q = integrate(|x| x * x * x - 2.0 * x, 0.0, 2.0, 1e-12);
        assert!((q.value - 0.0).abs() < 1e-13);
    }

    #[test]
    fn exponential_half_line() {
        let q = integrate_half_line(|x| (-x).exp(), 1e-12);
        assert!((q.value - 1.0).abs() < 1e-11);
    }

    #[test]
    fn gamma_density_normalizes() {
        let q = integrate_half_line(|x| gamma_logpdf(x, 3.5).exp(), 1e-12);
        assert!((q.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn quadrant_product() {
        let q = integrate_quadrant(|x, y| (-x - 2.0 * y).exp(), 1e-10);
        assert!((q.value - 0.5).abs() < 1e-9);
    }
}
