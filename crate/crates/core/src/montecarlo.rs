//! Monte Carlo verification: determinant moments with batch-means standard
//! errors, log-determinant correlation gates, the per-sample
//! change-of-variables identity, and the importance-sampled gamma integral.
//!
//! Every sampling routine splits `n` draws into [`BATCHES`] contiguous
//! batches; batch `b` draws from `stream.fork(b)`. Batches run in parallel,
//! and the output order (and so every report) does not depend on the number
//! of worker threads.

use std::ops::Range;

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{Beta, ContinuousCDF, Gamma};

use crate::density::{logpdf_gen_dirichlet, logpdf_type2_beta};
use crate::error::{Error, Result};
use crate::hermitian::HermitianMatrix;
use crate::jacobian::{
    check_eq_1_1, check_eq_1_2, check_eq_1_3, check_lemma_2_2, check_tuple_jacobians, numeric_log_jacobian,
    random_complex, random_factor, random_hpd, random_lemma22_instance, tuple_map, JacobianCheck, DEFAULT_STEP,
};
use crate::sampler::{sample_gen_dirichlet, MatrixSampler, RngStream};
use crate::special::{log_moment_gen_dirichlet, log_multigamma_c, GenDirichletParams};
use crate::transform::{lemma21_pair, to_type1_y, TransformKind};
use crate::tuple::HpdTuple;

pub const BATCHES: usize = 100;
pub const MIN_SAMPLES: usize = 1000;
/// Width of every Monte Carlo gate, in standard errors.
pub const SE_GATE: f64 = 3.0;
/// Largest tolerated share of change-of-variables samples with a singular
/// difference Jacobian.
pub const MAX_SKIPPED_SHARE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub status: Status,
    pub observed: f64,
    pub target: f64,
    pub tolerance: String,
    pub seed: u64,
    pub n: usize,
}

impl VerificationReport {
    pub fn new(
        check_id: impl Into<String>,
        pass: bool,
        observed: f64,
        target: f64,
        tolerance: impl Into<String>,
        seed: u64,
        n: usize,
    ) -> Self {
        Self {
            check_id: check_id.into(),
            status: if pass { Status::Pass } else { Status::Fail },
            observed,
            target,
            tolerance: tolerance.into(),
            seed,
            n,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn all_pass(reports: &[VerificationReport]) -> bool {
    reports.iter().all(VerificationReport::passed)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n: usize,
}

impl MomentEstimate {
    /// `|value - target| <= SE_GATE * std_error`.
    pub fn within(&self, target: f64) -> bool {
        (self.value - target).abs() <= SE_GATE * self.std_error
    }
}

fn batch_ranges(n: usize, batches: usize) -> Vec<Range<usize>> {
    (0..batches).map(|b| b * n / batches..(b + 1) * n / batches).collect()
}

/// `n` draws of `f`, batch `b` on `stream.fork(b)`, in batch order.
pub fn draw<T, F>(n: usize, stream: RngStream, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> Result<T> + Sync,
{
    let nested = batch_ranges(n, BATCHES)
        .into_par_iter()
        .enumerate()
        .map(|(b, r)| {
            let mut rng = stream.fork(b as u64).rng();
            r.map(|_| f(&mut rng)).collect::<Result<Vec<T>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(nested.into_iter().flatten().collect())
}

/// Mean of `exp(log_values)` with a batch-means standard error. The sum is
/// taken relative to the largest term, so large log-moments do not overflow.
pub fn moment_from_logs(log_values: &[f64]) -> MomentEstimate {
    let n = log_values.len();
    let shift = log_values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if n == 0 || !shift.is_finite() {
        return MomentEstimate {
            value: f64::NAN,
            std_error: f64::NAN,
            n,
        };
    }
    let scaled: Vec<f64> = log_values.iter().map(|l| (l - shift).exp()).collect();
    let est = batch_mean(&scaled);
    let factor = shift.exp();
    MomentEstimate {
        value: est.value * factor,
        std_error: est.std_error * factor,
        n,
    }
}

/// Sample mean with a standard error from `min(BATCHES, n)` batch means.
pub fn batch_mean(values: &[f64]) -> MomentEstimate {
    let n = values.len();
    let m = BATCHES.min(n);
    if m < 2 {
        return MomentEstimate {
            value: values.first().copied().unwrap_or(f64::NAN),
            std_error: f64::NAN,
            n,
        };
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    let means: Vec<f64> = batch_ranges(n, m)
        .into_iter()
        .map(|r| values[r.clone()].iter().sum::<f64>() / r.len() as f64)
        .collect();
    let var = means.iter().map(|b| (b - mean).powi(2)).sum::<f64>() / (m - 1) as f64;
    MomentEstimate {
        value: mean,
        std_error: (var / m as f64).sqrt(),
        n,
    }
}

/// Pearson correlation.
pub fn correlation(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx).powi(2);
        syy += (y - my).powi(2);
    }
    sxy / (sxx * syy).sqrt()
}

/// Kolmogorov-Smirnov distance of a sample from a continuous CDF.
pub fn ks_distance(sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

fn check_n(n: usize) -> Result<()> {
    if n < MIN_SAMPLES {
        return Err(Error::Domain(format!("need at least {MIN_SAMPLES} samples, got {n}")));
    }
    Ok(())
}

fn moment_report(id: String, est: MomentEstimate, log_target: f64, seed: u64) -> VerificationReport {
    let target = log_target.exp();
    VerificationReport::new(
        id,
        est.within(target),
        est.value,
        target,
        format!("{SE_GATE} SE (se = {:.3e})", est.std_error),
        seed,
        est.n,
    )
}

fn correlation_report(id: String, xs: &[f64], ys: &[f64], seed: u64) -> VerificationReport {
    let r = correlation(xs, ys);
    let se = 1.0 / (xs.len() as f64).sqrt();
    VerificationReport::new(
        id,
        r.abs() <= SE_GATE * se,
        r,
        0.0,
        format!("{SE_GATE} SE (se = {se:.3e})"),
        seed,
        xs.len(),
    )
}

/// `E|det X|^h` for `X` drawn from `sampler`.
pub fn estimate_det_moment(sampler: &MatrixSampler, h: f64, n: usize, stream: RngStream) -> Result<MomentEstimate> {
    check_n(n)?;
    if h == 0.0 {
        return Ok(MomentEstimate {
            value: 1.0,
            std_error: 0.0,
            n,
        });
    }
    let logs = draw(n, stream, |rng| Ok(h * sampler.sample(rng)?.log_abs_det()))?;
    Ok(moment_from_logs(&logs))
}

pub fn check_sampler_moment(sampler: &MatrixSampler, h: f64, n: usize, stream: RngStream) -> Result<VerificationReport> {
    let est = estimate_det_moment(sampler, h, n, stream)?;
    let id = format!("moment:{}:h={h}", sampler.label());
    Ok(moment_report(id, est, sampler.log_det_moment(h)?, stream.seed))
}

/// p = 1 samplers against scalar gamma, beta and beta-prime CDFs.
pub fn check_scalar_ks(n: usize, stream: RngStream) -> Result<Vec<VerificationReport>> {
    check_n(n)?;
    fn stat(e: impl std::fmt::Display) -> Error {
        Error::Domain(e.to_string())
    }
    let gamma = Gamma::new(3.0, 1.0).map_err(stat)?;
    let beta1 = Beta::new(2.5, 1.5).map_err(stat)?;
    let beta2 = Beta::new(2.0, 3.5).map_err(stat)?;
    let cases: [(MatrixSampler, Box<dyn Fn(f64) -> f64>); 3] = [
        (MatrixSampler::gamma(1, 3.0)?, Box::new(move |x| gamma.cdf(x))),
        (MatrixSampler::type1_beta(1, 2.5, 1.5)?, Box::new(move |x| beta1.cdf(x))),
        // beta prime through x / (1 + x)
        (MatrixSampler::type2_beta(1, 2.0, 3.5)?, Box::new(move |x| beta2.cdf(x / (1.0 + x)))),
    ];
    cases
        .iter()
        .enumerate()
        .map(|(i, (sampler, cdf))| {
            let sub = stream.fork(i as u64);
            let xs = draw(n, sub, |rng| Ok(sampler.sample(rng)?.trace()))?;
            let d = ks_distance(&xs, cdf);
            Ok(VerificationReport::new(
                format!("ks:{}", sampler.label()),
                d < 0.01,
                d,
                0.0,
                "D < 0.01",
                stream.seed,
                n,
            ))
        })
        .collect()
}

/// `log Gamma_1(a) = log Gamma(a)` against an independent implementation.
pub fn check_multigamma_scalar(shapes: &[f64]) -> Result<VerificationReport> {
    let mut worst: f64 = 0.0;
    for &a in shapes {
        let got = log_multigamma_c(1, a)?;
        worst = worst.max((got - statrs::function::gamma::ln_gamma(a)).abs());
    }
    Ok(VerificationReport::new(
        "eq1.4:p=1",
        worst < 1e-13,
        worst,
        0.0,
        "abs < 1e-13",
        0,
        shapes.len(),
    ))
}

/// Importance-sampled `int |det X|^{a-p} e^{-tr X} dX` with proposal
/// `gamma(a0)`: `E[|det X|^{a - a0}] * Gamma_p(a0)`, gated at 3 SE against
/// `Gamma_p(a)`.
pub fn mc_gamma_integral(p: usize, a: f64, a0: f64, n: usize, stream: RngStream) -> Result<VerificationReport> {
    let sampler = MatrixSampler::gamma(p, a0)?;
    let target_log = log_multigamma_c(p, a)?;
    let est = estimate_det_moment(&sampler, a - a0, n, stream)?;
    let scale = log_multigamma_c(p, a0)?.exp();
    let scaled = MomentEstimate {
        value: est.value * scale,
        std_error: est.std_error * scale,
        n,
    };
    Ok(moment_report(
        format!("eq1.5:gamma-integral(p={p},a={a},a0={a0})"),
        scaled,
        target_log,
        stream.seed,
    ))
}

/// Per-sample identity `log f_X = sum_j log f_{V_j} + log|J|` for the `V`
/// transform, with the Jacobian from finite differences. Samples whose
/// difference Jacobian is singular are skipped and counted.
pub fn check_change_of_variables(
    params: &GenDirichletParams,
    n: usize,
    stream: RngStream,
    tolerance: f64,
) -> Result<VerificationReport> {
    let (p, k) = (params.p(), params.k());
    if p as f64 * (k as f64).sqrt() > 8.0 {
        return Err(Error::Domain(format!(
            "change of variables limited to p*sqrt(k) <= 8, got p = {p}, k = {k}"
        )));
    }
    let deltas = change_of_variables_deltas(params, n, stream)?;
    let skipped = deltas.iter().filter(|d| d.is_none()).count();
    let worst = deltas.iter().flatten().map(|d| d.abs()).fold(0.0, f64::max);
    let pass = worst < tolerance && (skipped as f64) < MAX_SKIPPED_SHARE * n as f64;
    Ok(VerificationReport::new(
        format!("eq2.1:change-of-variables(p={p},k={k})"),
        pass,
        worst,
        0.0,
        format!("max |delta| < {tolerance:e}; skipped {skipped}/{n}"),
        stream.seed,
        n,
    ))
}

/// The per-sample discrepancies `delta`, `None` where the Jacobian was singular.
pub fn change_of_variables_deltas(
    params: &GenDirichletParams,
    n: usize,
    stream: RngStream,
) -> Result<Vec<Option<f64>>> {
    let tails = params.tails();
    draw(n, stream, |rng| {
        let xs = sample_gen_dirichlet(params, rng)?;
        let lhs = logpdf_gen_dirichlet(&xs, params)?;
        let vs = TransformKind::V.apply(&xs)?.output;
        let mut rhs = 0.0;
        for (j, v) in vs.mats().iter().enumerate() {
            rhs += logpdf_type2_beta(v, params.alpha()[j], tails[j])?;
        }
        match numeric_log_jacobian(tuple_map(TransformKind::V), &xs.hermitian(), DEFAULT_STEP) {
            Ok(jac) => Ok(Some(lhs - rhs - jac)),
            Err(Error::SingularJacobian { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    })
}

/// Orders `h` for moment gates on a type-2 beta `B2(a, b)`: those of
/// `{1, 2}` whose variance shift keeps `b - 2h > p - 1 + 0.1`, else those
/// of `{-1, -2}` keeping `a + 2h > p - 1 + 0.1`.
pub fn type2_moment_orders(p: usize, a: f64, b: f64) -> Vec<f64> {
    let floor = p as f64 - 1.0 + 0.1;
    let up: Vec<f64> = [1.0, 2.0].into_iter().filter(|h| b - 2.0 * h > floor).collect();
    if !up.is_empty() {
        return up;
    }
    [-1.0, -2.0].into_iter().filter(|h| a + 2.0 * h > floor).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BetaKind {
    One,
    Two,
}

struct Observation {
    log_dets: Vec<f64>,
    max_eig: f64,
    identity_error: f64,
}

struct TheoremSpec {
    id: &'static str,
    kind: TransformKind,
    family: BetaKind,
    swapped: bool,
}

fn run_theorem(spec: TheoremSpec, params: &GenDirichletParams, n: usize, stream: RngStream) -> Result<Vec<VerificationReport>> {
    check_n(n)?;
    let (p, k) = (params.p(), params.k());
    let name = match spec.kind {
        TransformKind::Y => "Y",
        TransformKind::Z => "Z",
        TransformKind::U => "U",
        TransformKind::V => "V",
    };
    let obs = draw(n, stream, |rng| {
        let xs = sample_gen_dirichlet(params, rng)?;
        let out = spec.kind.apply(&xs)?.output;
        let max_eig = out
            .mats()
            .iter()
            .map(|m| *m.eigenvalues_sorted().last().unwrap_or(&f64::NAN))
            .fold(f64::NEG_INFINITY, f64::max);
        let identity_error = if spec.kind == TransformKind::Z {
            let ys = to_type1_y(&xs)?.output;
            ys.mats()
                .iter()
                .zip(out.mats())
                .map(|(y, z)| {
                    (&(y.as_hermitian() + z.as_hermitian()) - &HermitianMatrix::identity(p)).frobenius_norm()
                })
                .fold(0.0, f64::max)
        } else {
            0.0
        };
        Ok(Observation {
            log_dets: out.mats().iter().map(|m| m.log_abs_det()).collect(),
            max_eig,
            identity_error,
        })
    })?;

    let tails = params.tails();
    let columns: Vec<Vec<f64>> = (0..k).map(|j| obs.iter().map(|o| o.log_dets[j]).collect()).collect();
    let mut reports = Vec::new();
    for j in 0..k {
        let (a, b) = if spec.swapped {
            (tails[j], params.alpha()[j])
        } else {
            (params.alpha()[j], tails[j])
        };
        let (sampler, orders) = match spec.family {
            BetaKind::One => (MatrixSampler::type1_beta(p, a, b)?, vec![1.0, 2.0]),
            BetaKind::Two => (MatrixSampler::type2_beta(p, a, b)?, type2_moment_orders(p, a, b)),
        };
        for h in orders {
            let logs: Vec<f64> = columns[j].iter().map(|l| h * l).collect();
            reports.push(moment_report(
                format!("{}:moment:{name}{}:h={h}", spec.id, j + 1),
                moment_from_logs(&logs),
                sampler.log_det_moment(h)?,
                stream.seed,
            ));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            reports.push(correlation_report(
                format!("{}:corr:{name}{}-{name}{}", spec.id, i + 1, j + 1),
                &columns[i],
                &columns[j],
                stream.seed,
            ));
        }
    }
    if spec.family == BetaKind::One {
        let worst = obs.iter().map(|o| o.max_eig).fold(f64::NEG_INFINITY, f64::max);
        reports.push(VerificationReport::new(
            format!("{}:support", spec.id),
            worst < 1.0,
            worst,
            1.0,
            "largest eigenvalue < 1",
            stream.seed,
            n,
        ));
    }
    if spec.kind == TransformKind::Z {
        let worst = obs.iter().map(|o| o.identity_error).fold(0.0, f64::max);
        reports.push(VerificationReport::new(
            "eq2.4:Z=I-Y",
            worst < 1e-12,
            worst,
            0.0,
            "frobenius < 1e-12",
            stream.seed,
            n,
        ));
    }
    Ok(reports)
}

/// `Y_j ~ B1(alpha_j, tail_j)`, pairwise uncorrelated log-determinants,
/// eigenvalues in `(0, 1)`.
pub fn check_theorem_2_1(params: &GenDirichletParams, n: usize, stream: RngStream) -> Result<Vec<VerificationReport>> {
    let spec = TheoremSpec {
        id: "thm2.1",
        kind: TransformKind::Y,
        family: BetaKind::One,
        swapped: false,
    };
    run_theorem(spec, params, n, stream)
}

/// `Z_j ~ B1(tail_j, alpha_j)` plus the identity `Z_j = I - Y_j`.
pub fn check_theorem_2_3(params: &GenDirichletParams, n: usize, stream: RngStream) -> Result<Vec<VerificationReport>> {
    let spec = TheoremSpec {
        id: "thm2.3",
        kind: TransformKind::Z,
        family: BetaKind::One,
        swapped: true,
    };
    run_theorem(spec, params, n, stream)
}

/// `U_j ~ B2(tail_j, alpha_j)`.
pub fn check_theorem_2_4(params: &GenDirichletParams, n: usize, stream: RngStream) -> Result<Vec<VerificationReport>> {
    let spec = TheoremSpec {
        id: "thm2.4",
        kind: TransformKind::U,
        family: BetaKind::Two,
        swapped: true,
    };
    run_theorem(spec, params, n, stream)
}

/// `V_j ~ B2(alpha_j, tail_j)`.
pub fn check_theorem_2_5(params: &GenDirichletParams, n: usize, stream: RngStream) -> Result<Vec<VerificationReport>> {
    let spec = TheoremSpec {
        id: "thm2.5",
        kind: TransformKind::V,
        family: BetaKind::Two,
        swapped: false,
    };
    run_theorem(spec, params, n, stream)
}

/// Empirical `E|det X_j|^h` against the `c_k` ratio. `j` is zero-based.
pub fn check_gen_dirichlet_moment(
    params: &GenDirichletParams,
    j: usize,
    h: f64,
    n: usize,
    stream: RngStream,
) -> Result<VerificationReport> {
    check_n(n)?;
    let target = log_moment_gen_dirichlet(params, j, h)?;
    let logs = draw(n, stream, |rng| Ok(h * sample_gen_dirichlet(params, rng)?.get(j).log_abs_det()))?;
    Ok(moment_report(
        format!("eq2.2:moment:X{}:h={h}", j + 1),
        moment_from_logs(&logs),
        target,
        stream.seed,
    ))
}

fn jacobian_report(label: &str, checks: &[JacobianCheck], tolerance: f64, seed: u64) -> VerificationReport {
    let worst = checks.iter().map(|c| c.relative_error).fold(0.0, f64::max);
    VerificationReport::new(
        label,
        worst < tolerance,
        worst,
        0.0,
        format!("max relative error < {tolerance:e}"),
        seed,
        checks.len(),
    )
}

/// Congruence, inversion and triangular-factor Jacobians on random instances.
pub fn single_matrix_jacobian_reports(p: usize, instances: usize, stream: RngStream) -> Result<Vec<VerificationReport>> {
    let seed = stream.seed;
    let mut rng = stream.fork(0).rng();
    let eq11 = (0..instances)
        .map(|_| check_eq_1_1(&random_complex(p, &mut rng), &random_hpd(p, 0.1, &mut rng)?))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = stream.fork(1).rng();
    let eq12 = (0..instances)
        .map(|_| check_eq_1_2(&random_hpd(p, 0.1, &mut rng)?))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = stream.fork(2).rng();
    let eq13 = (0..instances)
        .map(|_| check_eq_1_3(&random_factor(p, &mut rng)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(vec![
        jacobian_report(&format!("eq1.1:p={p}"), &eq11, 1e-6, seed),
        jacobian_report(&format!("eq1.2:p={p}"), &eq12, 1e-5, seed),
        jacobian_report(&format!("eq1.3:p={p}"), &eq13, 1e-5, seed),
    ])
}

/// Analytic tuple Jacobians of `Y`, `U` and `V` on random tuples.
pub fn tuple_jacobian_reports(p: usize, k: usize, instances: usize, stream: RngStream) -> Result<Vec<VerificationReport>> {
    let cases = [
        (TransformKind::Y, "eq2.5"),
        (TransformKind::U, "eq2.9"),
        (TransformKind::V, "thm2.5-jac"),
    ];
    cases
        .iter()
        .enumerate()
        .map(|(i, (kind, label))| {
            let mut rng = stream.fork(10 + i as u64).rng();
            let checks = (0..instances)
                .map(|_| {
                    let xs = HpdTuple::new((0..k).map(|_| random_hpd(p, 0.1, &mut rng)).collect::<Result<_>>()?)?;
                    check_tuple_jacobians(*kind, &xs)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(jacobian_report(&format!("{label}:p={p},k={k}"), &checks, 1e-5, stream.seed))
        })
        .collect()
}

/// `|log|J||` of the `Y_1 -> Y_2` map on instances with separated spectra.
pub fn lemma22_report(p: usize, instances: usize, stream: RngStream) -> Result<VerificationReport> {
    let mut rng = stream.fork(20).rng();
    let mut worst: f64 = 0.0;
    for _ in 0..instances {
        let (a, y1) = random_lemma22_instance(p, 1e-3, &mut rng)?;
        worst = worst.max(check_lemma_2_2(&a, &y1)?.numeric.abs());
    }
    Ok(VerificationReport::new(
        format!("lemma2.2:p={p}"),
        worst < 1e-5,
        worst,
        0.0,
        "max |log J| < 1e-5",
        stream.seed,
        instances,
    ))
}

/// Sorted spectra of `A^{1/2} X A^{1/2}` and `X^{1/2} A X^{1/2}`.
pub fn lemma21_report(p: usize, instances: usize, stream: RngStream) -> Result<VerificationReport> {
    let mut rng = stream.fork(21).rng();
    let mut worst: f64 = 0.0;
    for _ in 0..instances {
        let a = random_hpd(p, 0.1, &mut rng)?;
        let x = random_hpd(p, 0.1, &mut rng)?;
        let (first, second) = lemma21_pair(&a, &x)?;
        for (l, m) in first.eigenvalues_sorted().iter().zip(second.eigenvalues_sorted()) {
            worst = worst.max((l - m).abs() / l.abs().max(m.abs()));
        }
    }
    Ok(VerificationReport::new(
        format!("lemma2.1:p={p}"),
        worst < 1e-10,
        worst,
        0.0,
        "max relative gap < 1e-10",
        stream.seed,
        instances,
    ))
}
