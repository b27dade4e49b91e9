use levy_ssm::filter::{filter_step_with_proposal, ChainState};
use levy_ssm::ssm::{langevin_expm, langevin_ft};
use levy_ssm::*;
use nalgebra::{DMatrix, DVector, Matrix2, Vector2};
use proptest::prelude::*;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

fn model(sigma_eps: f64, mu_w: f64, gamma: f64) -> LinearSsm {
    let gig = GigParams::new(-0.8, 1.0, gamma).unwrap();
    LinearSsm::langevin(-0.5, sigma_eps, GhParams::new(gig, mu_w, 1.0, 0.0).unwrap()).unwrap()
}

/// Proposes one of two fixed jump configurations with equal probability.
struct TwoPoint {
    a: Vec<(f64, f64)>,
    b: Vec<(f64, f64)>,
}

impl JumpProposal for TwoPoint {
    fn propose<R: Rng + ?Sized>(&self, iv: Interval, rng: &mut R) -> Result<JumpSequence> {
        let pts = if rng.random::<bool>() { &self.a } else { &self.b };
        let recs = pts.iter().map(|&(time, z)| JumpRecord { time, z, w: None }).collect();
        JumpSequence::new(iv, recs)
    }
}

#[test]
fn two_point_chain_targets_posterior() {
    let ssm = model(0.5, 0.0, 0.5);
    let prior = GaussianState::diffuse(2, 0.2, 0.0);
    let iv = Interval::new(0.0, 1.0).unwrap();
    let prop = TwoPoint { a: vec![], b: vec![(0.5, 1.5)] };
    let y = 1.0;
    let seq_a = JumpSequence::new(iv, vec![]).unwrap();
    let seq_b = JumpSequence::new(iv, vec![JumpRecord { time: 0.5, z: 1.5, w: None }]).unwrap();
    let la = ChainState::evaluate(&prior, &ssm, seq_a, y).unwrap().log_lik;
    let lb = ChainState::evaluate(&prior, &ssm, seq_b, y).unwrap().log_lik;
    let p_a = 1.0 / (1.0 + (lb - la).exp());
    assert!(p_a > 0.1 && p_a < 0.9, "uninformative setup: {p_a}");

    let mut rng = stream_rng(21, 0);
    let mut cur = ChainState::evaluate(&prior, &ssm, prop.propose(iv, &mut rng).unwrap(), y).unwrap();
    let steps = 100_000;
    let mut in_a = 0usize;
    for _ in 0..steps {
        cur = mh_step(&prior, &ssm, y, cur, &prop, &mut rng).unwrap().state;
        in_a += cur.jumps.is_empty() as usize;
    }
    let freq = in_a as f64 / steps as f64;
    assert!((freq - p_a).abs() < 0.01, "frequency {freq} vs posterior {p_a}");
}

/// Always proposes the same equally weighted jumps.
struct Fixed(Vec<f64>, f64);

impl JumpProposal for Fixed {
    fn propose<R: Rng + ?Sized>(&self, iv: Interval, _rng: &mut R) -> Result<JumpSequence> {
        let recs =
            self.0.iter().map(|&frac| JumpRecord { time: iv.start + frac * iv.len(), z: self.1, w: None }).collect();
        JumpSequence::new(iv, recs)
    }
}

#[test]
fn constant_process_noise_reduces_to_classical_kalman() {
    let theta = -0.5;
    let sigma_eps = 0.2;
    let ssm = model(sigma_eps, 0.0, 0.5);
    let prop = Fixed(vec![0.1, 0.35, 0.6, 0.9], 0.05);
    let cfg = FilterConfig { n_iter: 7, ..FilterConfig::default() };
    let obs = [(0.5, 0.3), (1.0, 0.1), (1.6, -0.4), (2.0, 0.0), (2.5, 0.8)];

    // Classical Kalman filter with explicit 2x2 algebra.
    let mut m = Vector2::new(0.0, 0.0);
    let mut p = Matrix2::identity() * 100.0;
    let mut state = GaussianState::diffuse(2, 100.0, 0.0);
    let mut rng = stream_rng(0, 0);
    let mut s = 0.0;
    for &(t, y) in &obs {
        let dt: f64 = t - s;
        let f = langevin_expm(theta, dt).unwrap();
        let f = Matrix2::new(f[(0, 0)], f[(0, 1)], f[(1, 0)], f[(1, 1)]);
        let mut q = Matrix2::zeros();
        for &frac in &prop.0 {
            let v = langevin_ft(theta, t, s + frac * dt).unwrap();
            let v = Vector2::new(v[0], v[1]);
            q += v * v.transpose() * prop.1;
        }
        m = f * m;
        p = f * p * f.transpose() + q;
        let innov_var = p[(0, 0)] + sigma_eps * sigma_eps;
        let k = Vector2::new(p[(0, 0)], p[(1, 0)]) / innov_var;
        m += k * (y - m[0]);
        p -= k * Vector2::new(p[(0, 0)], p[(0, 1)]).transpose();

        let r = filter_step_with_proposal(&state, &ssm, y, t, &cfg, &prop, &mut rng).unwrap();
        assert!((r.collapsed.mu[0] - m[0]).abs() < 1e-8 && (r.collapsed.mu[1] - m[1]).abs() < 1e-8);
        for i in 0..2 {
            for j in 0..2 {
                assert!((r.collapsed.cov[(i, j)] - p[(i, j)]).abs() < 1e-8);
            }
        }
        assert_eq!(r.acceptance_rate, 1.0);
        state = r.collapsed;
        s = t;
    }
}

#[test]
fn collapse_matches_mixture_samples() {
    let mut rng = stream_rng(22, 0);
    let chain: Vec<GaussianState> = (0..5)
        .map(|_| {
            let mu = DVector::from_fn(2, |_, _| rng.random_range(-2.0..2.0));
            let a = DMatrix::from_fn(2, 2, |_, _| rng.random_range(-1.0..1.0));
            GaussianState::new(mu, &a * a.transpose() + DMatrix::identity(2, 2) * 0.1, 0.0).unwrap()
        })
        .collect();
    let c = collapse(&chain).unwrap();
    let roots: Vec<DMatrix<f64>> = chain.iter().map(|g| g.cov.clone().cholesky().unwrap().l()).collect();
    let n = 1_000_000;
    let mut sum = DVector::<f64>::zeros(2);
    let mut sq = DMatrix::<f64>::zeros(2, 2);
    for _ in 0..n {
        let j = rng.random_range(0..chain.len());
        let z = DVector::from_fn(2, |_, _| StandardNormal.sample(&mut rng));
        let x = &chain[j].mu + &roots[j] * z;
        sum += &x;
        sq += &x * x.transpose();
    }
    let mean = sum / n as f64;
    let cov = sq / n as f64 - &mean * mean.transpose();
    for i in 0..2 {
        assert!((mean[i] - c.mu[i]).abs() < 0.01 * c.cov[(i, i)].sqrt());
    }
    assert!((cov - &c.cov).norm() / c.cov.norm() < 0.01);
}

#[test]
fn marginal_likelihood_estimate_stabilises_with_chain_length() {
    let ssm = model(0.1, 0.0, 0.5);
    let times: Vec<f64> = (1..=20).map(|i| 0.5 * i as f64).collect();
    let path = simulate_path(
        &ssm,
        &DVector::zeros(2),
        &times,
        TruncationBudget::new(500.0).unwrap(),
        z1_upper_bound(-0.8).unwrap(),
        &mut stream_rng(23, 0),
    )
    .unwrap();
    let obs: Vec<(f64, f64)> = times.iter().copied().zip(path.observations.iter().copied()).collect();
    let spread = |n_iter: usize| {
        let totals: Vec<f64> = (0..5)
            .map(|seed| {
                let cfg = FilterConfig {
                    n_iter,
                    seed,
                    budget: TruncationBudget::new(500.0).unwrap(),
                    ..FilterConfig::default()
                };
                run_filter(&ssm, &obs, &cfg).unwrap().iter().map(|r| r.log_marginal).sum()
            })
            .collect();
        let m = totals.iter().sum::<f64>() / 5.0;
        (totals.iter().map(|x| (x - m).powi(2)).sum::<f64>() / 4.0).sqrt()
    };
    let (sd10, sd200) = (spread(10), spread(200));
    assert!(sd200 < sd10, "across-seed sd: n_iter=10 {sd10}, n_iter=200 {sd200}");
}

#[test]
fn burn_in_drops_leading_states() {
    let ssm = model(0.1, 0.0, 0.5);
    let prior = GaussianState::diffuse(2, 1.0, 0.0);
    let base = FilterConfig {
        n_iter: 20,
        budget: TruncationBudget::new(200.0).unwrap(),
        store_chain: true,
        ..FilterConfig::default()
    };
    let all = filter_step(&prior, &ssm, 0.3, 0.5, &base, &mut stream_rng(24, 0)).unwrap();
    let cfg = FilterConfig { burn_in: 19, ..base.clone() };
    let last = filter_step(&prior, &ssm, 0.3, 0.5, &cfg, &mut stream_rng(24, 0)).unwrap();
    assert_eq!(all.chain_jumps, last.chain_jumps);
    let final_jumps = all.chain_jumps.unwrap().pop().unwrap();
    let cs = ChainState::evaluate(&prior, &ssm, final_jumps, 0.3).unwrap();
    assert_eq!(last.collapsed, cs.posterior);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn correction_contracts_covariance(
        seed in any::<u64>(),
        sigma_eps in 1e-3f64..10.0,
        y in -5.0f64..5.0,
        len in 0.01f64..5.0,
    ) {
        let ssm = model(sigma_eps, 0.3, 0.5);
        let mut rng = stream_rng(seed, 0);
        let a = DMatrix::from_fn(2, 2, |_, _| rng.random_range(-1.0..1.0));
        let prior = GaussianState::new(DVector::from_fn(2, |_, _| rng.random_range(-1.0..1.0)), &a * a.transpose(), 0.0).unwrap();
        let seq = sample_gig(&ssm.gh().gig, 0.4, Interval::new(0.0, len).unwrap(), TruncationBudget::new(100.0).unwrap(), &mut rng).unwrap();
        let pred = kalman_predict(&prior, &ssm, &seq, len).unwrap();
        let (post, ll) = kalman_correct(&pred, &ssm, y).unwrap();
        prop_assert!(ll.is_finite());
        let diff = &pred.cov - &post.cov;
        let min = ((&diff + diff.transpose()) * 0.5).symmetric_eigenvalues().min();
        prop_assert!(min >= -1e-10 * pred.cov.amax().max(1.0), "{}", min);
        prop_assert_eq!(post.cov.clone(), post.cov.transpose());
    }

    #[test]
    fn filter_outputs_are_well_formed(seed in any::<u64>(), n_iter in 1usize..12) {
        let ssm = model(0.2, 0.1, 0.5);
        let obs = [(0.3, 0.1), (0.9, -0.2), (1.0, 0.05), (2.2, 0.4)];
        let cfg = FilterConfig { n_iter, seed, budget: TruncationBudget::new(100.0).unwrap(), ..FilterConfig::default() };
        for r in run_filter(&ssm, &obs, &cfg).unwrap() {
            prop_assert!((0.0..=1.0).contains(&r.acceptance_rate));
            prop_assert!(r.log_marginal.is_finite());
            prop_assert!(r.collapsed.min_eigenvalue() >= -1e-10);
        }
    }
}
