use cmvdir::montecarlo::{
    check_change_of_variables, check_gen_dirichlet_moment, check_multigamma_scalar, check_sampler_moment,
    check_scalar_ks, check_theorem_2_1, check_theorem_2_3, check_theorem_2_4, check_theorem_2_5, lemma21_report,
    lemma22_report, mc_gamma_integral, single_matrix_jacobian_reports, tuple_jacobian_reports, VerificationReport,
};
use cmvdir::special::log_moment_gen_dirichlet;
use cmvdir::{GenDirichletParams, MatrixSampler, Result, RngStream};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Jacobians,
    GammaIntegral,
    Normalizer,
    Theorems,
    Samplers,
    All,
}

pub struct SuiteConfig {
    pub params: GenDirichletParams,
    pub n: usize,
    pub n_cov: usize,
    pub instances: usize,
    pub seed: u64,
    pub a: f64,
    pub a0: f64,
}

impl SuiteConfig {
    // Each check draws from its own stream id so suites can be run alone or
    // together with identical results.
    fn stream(&self, id: u64) -> RngStream {
        RngStream::new(self.seed, id)
    }
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    match suite {
        Suite::Jacobians => jacobians(cfg),
        Suite::GammaIntegral => gamma_integral(cfg),
        Suite::Normalizer => normalizer(cfg),
        Suite::Theorems => theorems(cfg),
        Suite::Samplers => samplers(cfg),
        Suite::All => {
            let mut out = Vec::new();
            for s in [
                Suite::Jacobians,
                Suite::GammaIntegral,
                Suite::Normalizer,
                Suite::Theorems,
                Suite::Samplers,
            ] {
                out.extend(run(s, cfg)?);
            }
            Ok(out)
        }
    }
}

fn jacobians(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let (p, k) = (cfg.params.p(), cfg.params.k());
    let mut out = single_matrix_jacobian_reports(p, cfg.instances, cfg.stream(1))?;
    out.extend(tuple_jacobian_reports(p, k, cfg.instances, cfg.stream(2))?);
    out.push(lemma21_report(p, cfg.instances, cfg.stream(3))?);
    out.push(lemma22_report(p, cfg.instances, cfg.stream(4))?);
    Ok(out)
}

fn gamma_integral(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let shapes: Vec<f64> = (1..=100).map(|i| 0.1 * i as f64).collect();
    Ok(vec![
        check_multigamma_scalar(&shapes)?,
        mc_gamma_integral(cfg.params.p(), cfg.a, cfg.a0, cfg.n, cfg.stream(10))?,
    ])
}

fn normalizer(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let params = &cfg.params;
    let tolerance = if params.p() == 1 { 1e-6 } else { 1e-4 };
    let mut out = vec![check_change_of_variables(params, cfg.n_cov, cfg.stream(20), tolerance)?];
    for j in 0..params.k() {
        // h = 1 needs alpha_{k+1} - 1 to keep every tail in domain
        let Some(h) = [1.0, -1.0].into_iter().find(|&h| log_moment_gen_dirichlet(params, j, h).is_ok()) else {
            eprintln!("note: no admissible moment order for X{}", j + 1);
            continue;
        };
        out.push(check_gen_dirichlet_moment(params, j, h, cfg.n, cfg.stream(21 + j as u64))?);
    }
    Ok(out)
}

fn theorems(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let params = &cfg.params;
    let mut out = check_theorem_2_1(params, cfg.n, cfg.stream(30))?;
    out.extend(check_theorem_2_3(params, cfg.n, cfg.stream(31))?);
    out.extend(check_theorem_2_4(params, cfg.n, cfg.stream(32))?);
    out.extend(check_theorem_2_5(params, cfg.n, cfg.stream(33))?);
    Ok(out)
}

fn samplers(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let p = cfg.params.p();
    let q = p as f64;
    let families = [
        MatrixSampler::gamma(p, q + 1.0)?,
        MatrixSampler::gamma(p, q + 2.0)?,
        MatrixSampler::type1_beta(p, q + 1.0, q + 2.0)?,
        MatrixSampler::type2_beta(p, q + 1.0, q + 3.0)?,
    ];
    let mut out = Vec::new();
    for (i, s) in families.iter().enumerate() {
        for (m, h) in [1.0, 2.0].into_iter().enumerate() {
            out.push(check_sampler_moment(s, h, cfg.n, cfg.stream(40 + 2 * i as u64 + m as u64))?);
        }
    }
    out.extend(check_scalar_ks(cfg.n, cfg.stream(50))?);
    Ok(out)
}
