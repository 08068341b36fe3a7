use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rieszlab_core::{BallRule, SphereRule};

fn sphere_integrate(c: &mut Criterion) {
    let mut group = c.benchmark_group("sphere_integrate");
    for (dim, level) in [(2usize, 10u32), (3, 6), (4, 4)] {
        let rule = SphereRule::product(dim, level).unwrap();
        group.bench_with_input(
            BenchmarkId::from_parameter(format!("s{}_l{level}", dim - 1)),
            &rule,
            |b, rule| {
                b.iter(|| {
                    rule.integrate(|zeta| Ok(black_box(zeta[0] * zeta[0] + 0.5)))
                        .unwrap()
                })
            },
        );
    }
    group.finish();
}

fn ball_integrate(c: &mut Criterion) {
    let mut group = c.benchmark_group("ball_integrate");
    for dim in [2usize, 3] {
        let sphere = SphereRule::product(dim, 5).unwrap();
        let rule = BallRule::new(1.0, sphere).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(dim), &rule, |b, rule| {
            b.iter(|| {
                rule.integrate(|x| {
                    let r2: f64 = x.iter().map(|t| t * t).sum();
                    Ok(black_box(1.0 - r2))
                })
                .unwrap()
            })
        });
    }
    group.finish();
}

fn rule_construction(c: &mut Criterion) {
    c.bench_function("sphere_rule_s2_l6", |b| {
        b.iter(|| SphereRule::product(black_box(3), black_box(6)).unwrap())
    });
}

criterion_group!(benches, sphere_integrate, ball_integrate, rule_construction);
criterion_main!(benches);
