//! Monte Carlo estimate of the number of Location Area crossings between
//! consecutive calls, used as an independent check on the closed forms.
//!
//! One long timeline is simulated: crossings form a renewal process with
//! i.i.d. residence times, calls a Poisson process. The generator is
//! Xoshiro256++ (period 2^256 − 1) seeded through `seed_from_u64`, so a seed
//! fixes the output bit for bit.

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::crossing::{
    crossing_distribution, CallModel, CrossingDistribution, ResidenceKind, ResidenceModel,
};
use crate::error::{Error, Result};
use crate::special::chi_square_sf;

pub const MIN_CALLS: usize = 10_000;
pub const DEFAULT_WARMUP: usize = 100;
/// Largest expected number of simulated crossings a run may need.
pub const MAX_CROSSINGS: f64 = 2e9;
/// Minimum expected count for a bin to enter the chi-square statistic.
pub const MIN_EXPECTED: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    pub model: ResidenceModel,
    pub call: CallModel,
    pub n_calls: usize,
    pub warmup_calls: usize,
    pub seed: u64,
    pub n_max: usize,
}

impl McConfig {
    pub fn new(model: ResidenceModel, call: CallModel, n_calls: usize, seed: u64) -> Self {
        Self {
            model,
            call,
            n_calls,
            warmup_calls: DEFAULT_WARMUP,
            seed,
            n_max: crate::crossing::DEFAULT_N_MAX,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_calls < MIN_CALLS {
            return Err(Error::invalid(
                "n_calls",
                format!("must be at least {MIN_CALLS}, got {}", self.n_calls),
            ));
        }
        if self.n_max < 1 {
            return Err(Error::invalid("n_max", "must be at least 1"));
        }
        let x = self.model.load(&self.call)?;
        let crossings = (self.n_calls + self.warmup_calls) as f64 / x;
        if crossings > MAX_CROSSINGS {
            return Err(Error::invalid(
                "cmr",
                format!("run would simulate about {crossings:.3e} crossings; raise the CMR or lower the call count"),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McEstimate {
    pub model: ResidenceModel,
    pub call: CallModel,
    /// Observed intervals per `N = 0..=n_max`.
    pub counts: Vec<u64>,
    pub tail_count: u64,
    pub freq: Vec<f64>,
    /// `√(p̂(1 − p̂)/n)` per bin.
    pub stderr: Vec<f64>,
    pub tail_freq: f64,
    pub n_calls_used: usize,
}

impl McEstimate {
    pub fn n_max(&self) -> usize {
        self.freq.len() - 1
    }

    pub fn max_stderr(&self) -> f64 {
        self.stderr.iter().cloned().fold(0.0, f64::max)
    }
}

struct Sampler {
    kind: ResidenceKind,
    t_r: f64,
    call_rate: f64,
    rng: Xoshiro256PlusPlus,
}

impl Sampler {
    fn unit(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    fn exponential(&mut self, mean: f64) -> f64 {
        // U ∈ [0, 1) so 1 − U never hits zero
        -mean * (1.0 - self.unit()).ln()
    }

    fn residence(&mut self) -> f64 {
        match self.kind {
            ResidenceKind::Exponential => self.exponential(self.t_r),
            ResidenceKind::Constant => self.t_r,
            ResidenceKind::Uniform => 2.0 * self.t_r * self.unit(),
        }
    }

    /// Time to the first crossing seen from an arbitrary instant of a
    /// stationary timeline (the equilibrium residual life).
    fn residual(&mut self) -> f64 {
        match self.kind {
            ResidenceKind::Exponential => self.exponential(self.t_r),
            ResidenceKind::Constant => self.t_r * self.unit(),
            ResidenceKind::Uniform => 2.0 * self.t_r * (1.0 - (1.0 - self.unit()).sqrt()),
        }
    }

    fn inter_call(&mut self) -> f64 {
        self.exponential(1.0 / self.call_rate)
    }
}

pub fn simulate_crossings(cfg: &McConfig) -> Result<McEstimate> {
    cfg.validate()?;
    let mut s = Sampler {
        kind: cfg.model.kind(),
        t_r: cfg.model.mean_residence(),
        call_rate: cfg.call.rate(),
        rng: Xoshiro256PlusPlus::seed_from_u64(cfg.seed),
    };
    let mut counts = vec![0u64; cfg.n_max + 1];
    let mut tail_count = 0u64;
    let mut next_crossing = s.residual();
    let mut now = 0.0;
    for i in 0..cfg.warmup_calls + cfg.n_calls {
        let next_call = now + s.inter_call();
        let mut n = 0usize;
        while next_crossing <= next_call {
            n += 1;
            next_crossing += s.residence();
        }
        now = next_call;
        if i < cfg.warmup_calls {
            continue;
        }
        match counts.get_mut(n) {
            Some(c) => *c += 1,
            None => tail_count += 1,
        }
    }
    let total = cfg.n_calls as f64;
    let freq: Vec<f64> = counts.iter().map(|&c| c as f64 / total).collect();
    let stderr = freq
        .iter()
        .map(|&p| (p * (1.0 - p) / total).sqrt())
        .collect();
    Ok(McEstimate {
        model: cfg.model,
        call: cfg.call,
        counts,
        tail_count,
        freq,
        stderr,
        tail_freq: tail_count as f64 / total,
        n_calls_used: cfg.n_calls,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    /// Expected probability per bin.
    pub expected: Vec<f64>,
    /// `(freq − expected)/stderr`; `None` where the stderr is zero.
    pub z: Vec<Option<f64>>,
    pub chi_square: f64,
    pub dof: usize,
    pub p_value: f64,
}

impl Comparison {
    /// Largest `|z|` over bins `0..=n`.
    pub fn max_abs_z(&self, n: usize) -> f64 {
        self.z
            .iter()
            .take(n + 1)
            .flatten()
            .fold(0.0, |m, z| m.max(z.abs()))
    }
}

/// Compares an estimate with the closed form for its own model and call rate.
pub fn compare_estimates(
    est: &McEstimate,
    model: &ResidenceModel,
    call: &CallModel,
) -> Result<Comparison> {
    if est.model != *model || est.call != *call {
        return Err(Error::Mismatch(format!(
            "estimate is for {:?} at λ_p = {}, not {:?} at λ_p = {}",
            est.model,
            est.call.rate(),
            model,
            call.rate()
        )));
    }
    let expected = crossing_distribution(model, call, est.n_max())?;
    compare_against(est, &expected)
}

/// Per-bin z-scores and a Pearson chi-square against any expected distribution.
///
/// Bins with an expected count below [`MIN_EXPECTED`] are pooled with the
/// tail into one remainder bin, which is kept if its own expected count
/// reaches the threshold.
pub fn compare_against(est: &McEstimate, expected: &CrossingDistribution) -> Result<Comparison> {
    if expected.probs.len() != est.freq.len() {
        return Err(Error::Mismatch(format!(
            "expected {} bins, estimate has {}",
            expected.probs.len(),
            est.freq.len()
        )));
    }
    let z = est
        .freq
        .iter()
        .zip(&est.stderr)
        .zip(&expected.probs)
        .map(|((&f, &se), &p)| (se > 0.0).then(|| (f - p) / se))
        .collect();

    let n = est.n_calls_used as f64;
    let mut chi_square = 0.0;
    let mut bins = 0usize;
    let (mut rest_obs, mut rest_exp) = (est.tail_count as f64, expected.tail_mass * n);
    for (&count, &p) in est.counts.iter().zip(&expected.probs) {
        let e = p * n;
        if e >= MIN_EXPECTED {
            chi_square += (count as f64 - e).powi(2) / e;
            bins += 1;
        } else {
            rest_obs += count as f64;
            rest_exp += e;
        }
    }
    if rest_exp >= MIN_EXPECTED {
        chi_square += (rest_obs - rest_exp).powi(2) / rest_exp;
        bins += 1;
    }
    if bins < 2 {
        return Err(Error::NumericalFailure(
            "fewer than two bins reach the expected-count threshold".into(),
        ));
    }
    let dof = bins - 1;
    Ok(Comparison {
        expected: expected.probs.clone(),
        z,
        chi_square,
        dof,
        p_value: chi_square_sf(chi_square, dof),
    })
}

/// Uniform-residence probabilities with `e^{−2/x}` in the `N ≥ 1` terms and
/// `e^{−2x}` in `P(0)`, as the formula is sometimes printed. Not normalized;
/// kept only so the simulator can discriminate against it.
pub fn uniform_reciprocal_exponent(x: f64, n_max: usize) -> Result<CrossingDistribution> {
    let model = ResidenceModel::new(ResidenceKind::Uniform, x)?;
    let call = CallModel::new(1.0)?;
    let x = model.load(&call)?;
    let correct = crossing_distribution(&model, &call, n_max)?;
    let f = -(-2.0 / x).exp_m1() / (2.0 * x);
    let mut probs = Vec::with_capacity(n_max + 1);
    probs.push(correct.probs[0]);
    let lead = (1.0 - f).powi(2) / x;
    let mut geo = 1.0;
    for _ in 1..=n_max {
        probs.push(lead * geo);
        geo *= f;
    }
    Ok(CrossingDistribution {
        probs,
        tail_mass: (1.0 - f) * geo / x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossing::Cmr;

    fn config(kind: ResidenceKind, cmr: f64, n_calls: usize, seed: u64) -> McConfig {
        let (model, call) = Cmr::new(cmr).unwrap().realize(kind).unwrap();
        McConfig::new(model, call, n_calls, seed)
    }

    #[test]
    fn same_seed_same_estimate() {
        for kind in ResidenceKind::ALL {
            let cfg = config(kind, 0.7, 20_000, 7);
            assert_eq!(
                simulate_crossings(&cfg).unwrap(),
                simulate_crossings(&cfg).unwrap()
            );
        }
        let a = simulate_crossings(&config(ResidenceKind::Exponential, 1.0, 20_000, 1)).unwrap();
        let b = simulate_crossings(&config(ResidenceKind::Exponential, 1.0, 20_000, 2)).unwrap();
        assert_ne!(a.counts, b.counts);
    }

    #[test]
    fn frequencies_normalize() {
        let est = simulate_crossings(&config(ResidenceKind::Uniform, 0.05, 20_000, 3)).unwrap();
        let total: f64 = est.freq.iter().sum::<f64>() + est.tail_freq;
        assert!((total - 1.0).abs() < 1e-12);
        assert!(est.freq.iter().all(|&p| (0.0..=1.0).contains(&p)));
        assert!(est.tail_count > 0);
    }

    #[test]
    fn constant_residence_at_high_cmr_rarely_crosses() {
        let est = simulate_crossings(&config(ResidenceKind::Constant, 50.0, 100_000, 11)).unwrap();
        assert!(est.freq[0] >= 0.97, "{}", est.freq[0]);
    }

    #[test]
    fn exponential_matches_closed_form() {
        let cfg = config(ResidenceKind::Exponential, 1.0, 200_000, 2024);
        let est = simulate_crossings(&cfg).unwrap();
        let cmp = compare_estimates(&est, &cfg.model, &cfg.call).unwrap();
        assert!(cmp.max_abs_z(10) <= 4.0, "{:?}", cmp.z);
        assert!(cmp.p_value > 1e-4, "{}", cmp.p_value);
    }

    #[test]
    fn stderr_shrinks_like_root_n() {
        let a = simulate_crossings(&config(ResidenceKind::Exponential, 1.0, 100_000, 5)).unwrap();
        let b = simulate_crossings(&config(ResidenceKind::Exponential, 1.0, 200_000, 5)).unwrap();
        let shrink = a.max_stderr() / b.max_stderr();
        assert!((1.35..=1.45).contains(&shrink), "{shrink}");
    }

    #[test]
    fn reciprocal_exponent_is_rejected() {
        let cfg = config(ResidenceKind::Uniform, 0.7, 200_000, 99);
        let est = simulate_crossings(&cfg).unwrap();
        let good = compare_estimates(&est, &cfg.model, &cfg.call).unwrap();
        assert!(good.max_abs_z(10) <= 4.0);
        let bad = uniform_reciprocal_exponent(0.7, cfg.n_max).unwrap();
        let bad = compare_against(&est, &bad).unwrap();
        assert!(bad.p_value < 1e-6, "{}", bad.p_value);
    }

    #[test]
    fn perfect_frequencies_give_zero_z() {
        let cfg = config(ResidenceKind::Exponential, 1.0, 20_000, 1);
        let mut est = simulate_crossings(&cfg).unwrap();
        let exact = crossing_distribution(&cfg.model, &cfg.call, cfg.n_max).unwrap();
        est.freq = exact.probs.clone();
        let cmp = compare_against(&est, &exact).unwrap();
        assert!(cmp.z.iter().flatten().all(|&z| z == 0.0));
    }

    #[test]
    fn invalid_configs() {
        assert!(simulate_crossings(&config(ResidenceKind::Exponential, 1.0, 9_999, 1)).is_err());
        let mut cfg = config(ResidenceKind::Exponential, 1.0, 10_000, 1);
        cfg.n_max = 0;
        assert!(simulate_crossings(&cfg).is_err());
        // would need ~10^10 crossings
        assert!(simulate_crossings(&config(ResidenceKind::Constant, 1e-6, 10_000, 1)).is_err());
        let est = simulate_crossings(&config(ResidenceKind::Exponential, 1.0, 10_000, 1)).unwrap();
        let (other, call) = Cmr::new(2.0)
            .unwrap()
            .realize(ResidenceKind::Exponential)
            .unwrap();
        assert!(matches!(
            compare_estimates(&est, &other, &call),
            Err(Error::Mismatch(_))
        ));
    }
}
