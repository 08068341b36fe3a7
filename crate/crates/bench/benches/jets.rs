use criterion::{black_box, criterion_group, criterion_main, Criterion};
use num_complex::Complex64;
use rieszlab_core::calculus::{local_dilatation, second_beltrami};
use rieszlab_core::maps::{fd_jet, MapSpec, SchemeRequest};

fn analytic_vs_fd_jet(c: &mut Criterion) {
    let map = MapSpec::disk_analytic(vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.25, -0.5),
        Complex64::new(0.0, 0.1),
    ])
    .unwrap();
    let x = [0.3, -0.4];
    c.bench_function("jet_analytic_disk", |b| {
        b.iter(|| map.jet(black_box(&x), SchemeRequest::Analytic).unwrap())
    });
    c.bench_function("jet_fd_disk", |b| {
        b.iter(|| fd_jet(&map, black_box(&x[..])).unwrap())
    });
}

fn dilatation_pipeline(c: &mut Criterion) {
    let map = MapSpec::shear(0.5).unwrap();
    let x = [0.5, 0.1, -0.2, 0.3];
    let jet = map.jet(&x, SchemeRequest::Analytic).unwrap();
    c.bench_function("local_dilatation_shear", |b| {
        b.iter(|| local_dilatation(black_box(&jet)).unwrap())
    });
    c.bench_function("second_beltrami_shear", |b| {
        b.iter(|| second_beltrami(black_box(&jet)).unwrap())
    });
}

criterion_group!(benches, analytic_vs_fd_jet, dilatation_pipeline);
criterion_main!(benches);
