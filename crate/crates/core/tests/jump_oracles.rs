//! Shot-noise samplers against Lévy-measure integrals and reference laws.

use std::f64::consts::PI;

use levy_ssm::jumps::*;
use levy_ssm::numerics::hankel1_abs_sq;
use levy_ssm::quad::{integrate_to_inf, Tolerance};
use levy_ssm::stats::{ks_p_value, ks_statistic, mean_and_se, normal_cdf};
use levy_ssm::stream_rng;
use proptest::prelude::*;

const TOL: Tolerance = Tolerance { abs: 1e-12, rel: 1e-10 };

fn unit() -> Interval {
    Interval::new(0.0, 1.0).unwrap()
}

/// Mean over runs of `Σ x 1{x > ε}`, with its standard error.
fn truncated_sum_stats(runs: usize, mut draw: impl FnMut(u64) -> Vec<f64>, eps: f64) -> (f64, f64) {
    let sums: Vec<f64> = (0..runs).map(|i| draw(i as u64).into_iter().filter(|&x| x > eps).sum()).collect();
    mean_and_se(&sums)
}

#[test]
fn tempered_stable_truncated_first_moment() {
    let (c, alpha, beta, eps) = (1.0, 0.5, 1.0, 0.01);
    // Every candidate above ε has Γ < C ε^{-α} / α = 20.
    let budget = TruncationBudget::new(60.0).unwrap();
    let (mean, se) = truncated_sum_stats(
        10_000,
        |i| sample_tempered_stable(c, alpha, beta, budget, &mut stream_rng(11, i)).unwrap(),
        eps,
    );
    let exact = integrate_to_inf(|x| c * x.powf(-alpha) * (-beta * x).exp(), eps, TOL);
    assert!((mean - exact).abs() < 3.0 * se, "mean {mean} se {se} exact {exact}");
}

#[test]
fn gamma_process_truncated_first_moment() {
    let (c, beta, eps) = (1.0, 2.0, 0.01);
    let budget = TruncationBudget::new(30.0).unwrap();
    let (mean, se) =
        truncated_sum_stats(10_000, |i| sample_gamma_process(c, beta, budget, &mut stream_rng(12, i)).unwrap(), eps);
    let exact = integrate_to_inf(|x| c * (-beta * x).exp(), eps, TOL);
    assert!((mean - exact).abs() < 3.0 * se, "mean {mean} se {se} exact {exact}");
}

#[test]
fn gamma_process_acceptance_is_bounded() {
    let mut log = AcceptanceLog::new();
    for i in 0..200 {
        sample_gamma_process_logged(1.5, 0.3, TruncationBudget::new(100.0).unwrap(), &mut stream_rng(13, i), &mut log)
            .unwrap();
    }
    let s = log.stage(Stage::Gamma);
    assert!(s.min_prob > 0.0 && s.max_prob <= 1.0);
}

/// GIG Lévy density by quadrature over the Hankel representation.
fn q_gig(x: f64, nu: f64, delta: f64, gamma: f64) -> f64 {
    let inner = integrate_to_inf(
        |z| {
            if z <= 0.0 {
                return 0.0;
            }
            (-z * z * x / (2.0 * delta * delta)).exp() / (z * hankel1_abs_sq(nu, z).unwrap())
        },
        0.0,
        TOL,
    );
    2.0 * (-x * gamma * gamma / 2.0).exp() / (PI * PI * x) * inner
}

#[test]
fn gig_jump_count_matches_levy_measure() {
    let params = GigParams::new(-0.8, 1.0, 2.0).unwrap();
    let eps = 0.1;
    let expected = integrate_to_inf(|x| q_gig(x, 0.8, 1.0, 2.0), eps, Tolerance { abs: 1e-9, rel: 1e-8 });
    let z1 = z1_upper_bound(-0.8).unwrap();
    let budget = TruncationBudget::default();
    let counts: Vec<f64> = (0..10_000)
        .map(|i| {
            let seq = sample_gig(&params, z1, unit(), budget, &mut stream_rng(14, i)).unwrap();
            seq.iter().filter(|r| r.z > eps).count() as f64
        })
        .collect();
    let (mean, se) = mean_and_se(&counts);
    assert!((mean - expected).abs() < 3.0 * se, "mean {mean} se {se} expected {expected}");

    // Poisson dispersion: Var(s²) ≈ (μ + 2μ²)/n.
    let n = counts.len() as f64;
    let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let se_var = ((mean + 2.0 * mean * mean) / n).sqrt();
    assert!((var - mean).abs() < 3.0 * se_var, "var {var} mean {mean} se {se_var}");
}

#[test]
fn gig_acceptance_probabilities_stay_bounded() {
    let params = GigParams::new(-0.8, 1.0, 2.0).unwrap();
    let z1 = z1_upper_bound(-0.8).unwrap();
    let mut log = AcceptanceLog::new();
    let mut i = 0;
    while log.stage(Stage::N1Truncation).evaluated < 100_000 {
        sample_gig_logged(&params, z1, unit(), TruncationBudget::default(), &mut stream_rng(15, i), &mut log).unwrap();
        i += 1;
    }
    for s in Stage::ALL {
        let st = log.stage(s);
        assert!(st.evaluated > 0, "{}", s.name());
        assert!(st.min_prob >= 0.0 && st.max_prob <= 1.0 + 1e-9, "{}: {:?}", s.name(), st);
    }
}

#[test]
fn n1_and_n2_both_contribute_and_merge_sorted() {
    let params = GigParams::new(-1.5, 2.0, 1.0).unwrap();
    let z1 = z1_upper_bound(-1.5).unwrap();
    let b = TruncationBudget::new(500.0).unwrap();
    let iv = Interval::new(2.0, 5.0).unwrap();
    let n1 = sample_gig_n1(&params, z1, iv, b, &mut stream_rng(16, 0)).unwrap();
    let n2 = sample_gig_n2(&params, z1, iv, b, &mut stream_rng(16, 0)).unwrap();
    assert!(!n1.is_empty() && !n2.is_empty());
    let all = sample_gig(&params, z1, iv, b, &mut stream_rng(16, 1)).unwrap();
    assert!(all.records().windows(2).all(|w| w[0].time <= w[1].time));
    assert!(all.iter().all(|r| iv.contains(r.time) && r.z > 0.0));
}

#[test]
fn gh_residuals_are_standard_normal() {
    let gh = GhParams::new(GigParams::new(-0.8, 1.0, 2.0).unwrap(), 0.0, 1.0, 0.0).unwrap();
    let z1 = z1_upper_bound(-0.8).unwrap();
    let budget = TruncationBudget::new(200.0).unwrap();
    let mut resid = Vec::new();
    let mut i = 0;
    while resid.len() < 10_000 {
        let seq = sample_gig(&gh.gig, z1, unit(), budget, &mut stream_rng(17, i)).unwrap();
        let seq = attach_gh_jumps(seq, &gh, &mut stream_rng(18, i));
        resid.extend(seq.iter().map(|r| r.w.unwrap() / r.z.sqrt()));
        i += 1;
    }
    resid.truncate(10_000);
    let d = ks_statistic(&resid, normal_cdf);
    assert!(ks_p_value(d, resid.len()) > 0.01, "D = {d}");
}

#[test]
fn gh_jumps_preserve_z() {
    let gh = GhParams::new(GigParams::new(-0.8, 1.0, 2.0).unwrap(), 0.7, 1e-12, 0.0).unwrap();
    let z1 = z1_upper_bound(-0.8).unwrap();
    let seq = sample_gig(&gh.gig, z1, unit(), TruncationBudget::new(100.0).unwrap(), &mut stream_rng(19, 0)).unwrap();
    let zs: Vec<f64> = seq.iter().map(|r| r.z).collect();
    let seq = attach_gh_jumps(seq, &gh, &mut stream_rng(19, 1));
    for (r, z) in seq.iter().zip(zs) {
        assert_eq!(r.z, z);
        assert!((r.w.unwrap() - 0.7 * z).abs() < 1e-10 * z.sqrt().max(z));
    }
}

#[test]
fn shot_noise_path_single_jump() {
    let seq = JumpSequence::new(unit(), vec![JumpRecord { time: 0.5, z: 1.0, w: Some(2.0) }]).unwrap();
    assert_eq!(shot_noise_path(&seq, 0.49), 0.0);
    assert_eq!(shot_noise_path(&seq, 0.5), 2.0);
    assert_eq!(shot_noise_path(&JumpSequence::empty(unit()), 0.7), 0.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn samplers_are_seed_deterministic(
        seed in any::<u64>(),
        lambda in -3.0f64..-0.55,
        delta in 0.2f64..3.0,
        gamma in 0.05f64..4.0,
    ) {
        let p = GigParams::new(lambda, delta, gamma).unwrap();
        let z1 = z1_upper_bound(lambda).unwrap();
        let b = TruncationBudget::new(100.0).unwrap();
        let a = sample_gig(&p, z1, unit(), b, &mut stream_rng(seed, 3)).unwrap();
        let c = sample_gig(&p, z1, unit(), b, &mut stream_rng(seed, 3)).unwrap();
        prop_assert_eq!(a, c);
    }

    #[test]
    fn acceptance_probabilities_never_exceed_one(
        seed in any::<u64>(),
        lambda in -6.0f64..-0.52,
        delta in 0.05f64..5.0,
        gamma in 0.001f64..6.0,
        z1_frac in 0.05f64..1.0,
    ) {
        let p = GigParams::new(lambda, delta, gamma).unwrap();
        let z1 = z1_upper_bound(lambda).unwrap() * z1_frac;
        let mut log = AcceptanceLog::new();
        let r = sample_gig_logged(&p, z1, unit(), TruncationBudget::new(300.0).unwrap(), &mut stream_rng(seed, 0), &mut log);
        prop_assert!(r.is_ok(), "{:?}", r.err());
        for s in Stage::ALL {
            let st = log.stage(s);
            if st.evaluated > 0 {
                prop_assert!(st.min_prob >= 0.0 && st.max_prob <= 1.0 + 1e-9);
            }
        }
    }
}
