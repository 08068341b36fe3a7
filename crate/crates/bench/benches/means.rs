use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_complex::Complex64;
use rieszlab_core::hardy::{integral_mean, radial_means};
use rieszlab_core::maps::MapSpec;
use rieszlab_core::SphereRule;

fn disk_map() -> MapSpec {
    MapSpec::disk_analytic(vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.25, -0.5),
        Complex64::new(0.0, 0.1),
    ])
    .unwrap()
}

fn single_mean(c: &mut Criterion) {
    let map = disk_map();
    let mut group = c.benchmark_group("integral_mean_disk");
    for level in [8u32, 10, 12] {
        let rule = SphereRule::product(2, level).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(level), &rule, |b, rule| {
            b.iter(|| integral_mean(&map, 1.5, 0.9, rule).unwrap())
        });
    }
    group.finish();
}

fn radial_sweep(c: &mut Criterion) {
    let map = disk_map();
    let rule = SphereRule::product(2, 10).unwrap();
    let radii: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    c.bench_function("radial_means_disk_l10", |b| {
        b.iter(|| radial_means(&map, 2.0, &radii, &rule).unwrap())
    });
}

fn sharpness_mean(c: &mut Criterion) {
    let map = MapSpec::sharpness(2.0).unwrap();
    let rule = SphereRule::product(2, 13).unwrap();
    c.bench_function("sharpness_mean_r999_l13", |b| {
        b.iter(|| integral_mean(&map, 1.0, 0.999, &rule).unwrap())
    });
}

criterion_group!(benches, single_mean, radial_sweep, sharpness_mean);
criterion_main!(benches);
