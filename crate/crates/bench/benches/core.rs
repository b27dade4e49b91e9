use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use levy_ssm::{
    cond_moments, filter_step, sample_gig, stream_rng, z1_upper_bound, FilterConfig, GaussianState, GigParams,
    Interval, TruncationBudget,
};
use levy_ssm_bench::{jump_sequence, langevin_model};

fn bench_sample_gig(c: &mut Criterion) {
    let mut g = c.benchmark_group("sample_gig");
    for &(l, d, gam) in &[(-0.8, 1.0, 0.01), (-0.8, 1.0, 2.0), (-1.5, 2.0, 1.0)] {
        let p = GigParams::new(l, d, gam).unwrap();
        let z1 = z1_upper_bound(l).unwrap();
        let iv = Interval::new(0.0, 1.0).unwrap();
        for gmax in [500.0, 2000.0] {
            let b = TruncationBudget::new(gmax).unwrap();
            let id = BenchmarkId::new(format!("lambda={l},delta={d},gamma={gam}"), gmax);
            let mut rng = stream_rng(1, 0);
            g.bench_function(id, |bch| bch.iter(|| sample_gig(&p, z1, iv, b, &mut rng).unwrap()));
        }
    }
    g.finish();
}

fn bench_cond_moments(c: &mut Criterion) {
    let ssm = langevin_model().unwrap();
    let mut g = c.benchmark_group("cond_moments");
    for gmax in [200.0, 2000.0] {
        let seq = jump_sequence(&ssm, 0.5, gmax, 2).unwrap();
        g.bench_function(BenchmarkId::new("jumps", seq.len()), |b| {
            b.iter(|| cond_moments(&ssm, black_box(&seq), 0.0, 0.5).unwrap())
        });
    }
    g.finish();
}

fn bench_filter_step(c: &mut Criterion) {
    let ssm = langevin_model().unwrap();
    let prior = GaussianState::diffuse(2, 1.0, 0.0);
    let mut g = c.benchmark_group("filter_step");
    g.sample_size(20);
    for n_iter in [10, 100] {
        let cfg = FilterConfig { n_iter, ..FilterConfig::default() };
        let mut rng = stream_rng(3, 0);
        g.bench_function(BenchmarkId::new("n_iter", n_iter), |b| {
            b.iter(|| filter_step(&prior, &ssm, black_box(0.2), 0.5, &cfg, &mut rng).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_sample_gig, bench_cond_moments, bench_filter_step);
criterion_main!(benches);
