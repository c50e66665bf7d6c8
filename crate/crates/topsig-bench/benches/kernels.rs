use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ndarray::{Array1, Array2};
use std::hint::black_box;

use topsig::delaunay::random_delaunay_complex;
use topsig::flow::{denoise_flow, FlowOperator};
use topsig::hodge::{harmonic_basis, hodge_decompose};
use topsig::rng::CounterRng;
use topsig::signal::Signal;
use topsig::spectral::sym_eig;
use topsig::tensor::{adjacency_tensor, hg_shift, sym_cp_decompose, UniformNormalization};
use topsig::testing::{random_complex, random_hypergraph};

fn random_symmetric(n: usize, seed: u64) -> Array2<f64> {
    let mut rng = CounterRng::new(seed);
    let mut m = Array2::<f64>::zeros((n, n));
    for i in 0..n {
        for j in i..n {
            let x = rng.uniform_in(-1.0, 1.0);
            m[[i, j]] = x;
            m[[j, i]] = x;
        }
    }
    m
}

fn bench_eigensolver(c: &mut Criterion) {
    let mut group = c.benchmark_group("jacobi_eigen");
    for n in [25usize, 50, 100] {
        let m = random_symmetric(n, 7);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| {
            b.iter(|| sym_eig(black_box(&m.view())).unwrap())
        });
    }
    group.finish();
}

fn bench_hodge_decomposition(c: &mut Criterion) {
    let mut rng = CounterRng::new(11);
    let complex = random_complex(&mut rng, 18, 0.5, 0.6);
    let edges = complex.num_simplices(1);
    let flow = Signal::edge(Array1::from(
        (0..edges).map(|_| rng.uniform_in(-2.0, 2.0)).collect::<Vec<_>>(),
    ));
    c.bench_function("hodge_decompose_18_nodes", |b| {
        b.iter(|| hodge_decompose(black_box(&complex), black_box(&flow)).unwrap())
    });
}

fn bench_flow_denoise(c: &mut Criterion) {
    let mut rng = CounterRng::new(13);
    let complex = random_complex(&mut rng, 20, 0.4, 0.5);
    let edges = complex.num_simplices(1);
    let flow = Signal::edge(Array1::from(
        (0..edges).map(|_| rng.uniform_in(-2.0, 2.0)).collect::<Vec<_>>(),
    ));
    c.bench_function("denoise_flow_hodge_20_nodes", |b| {
        b.iter(|| denoise_flow(black_box(&complex), black_box(&flow), 1.0, FlowOperator::Hodge).unwrap())
    });
}

fn bench_delaunay_and_harmonics(c: &mut Criterion) {
    c.bench_function("delaunay_200_points", |b| {
        b.iter(|| random_delaunay_complex(200, &[[0.4, 0.6]], black_box(3)).unwrap())
    });
    let (complex, _) = random_delaunay_complex(120, &[[0.4, 0.6], [0.7, 0.3]], 3).unwrap();
    c.bench_function("harmonic_basis_120_points", |b| {
        b.iter(|| harmonic_basis(black_box(&complex)).unwrap())
    });
}

fn bench_tensor_ops(c: &mut Criterion) {
    let mut rng = CounterRng::new(17);
    let h = random_hypergraph(&mut rng, 20, 24, 3, 3);
    let tensor = adjacency_tensor(&h, UniformNormalization::Cooper).unwrap();
    let y = Array1::from((0..20).map(|_| rng.uniform_in(-1.0, 1.0)).collect::<Vec<_>>());
    c.bench_function("hg_shift_order3_20_vertices", |b| {
        b.iter(|| hg_shift(black_box(&tensor), black_box(&y)).unwrap())
    });
    let small = random_hypergraph(&mut rng, 8, 10, 3, 3);
    let small_tensor = adjacency_tensor(&small, UniformNormalization::Cooper).unwrap();
    c.bench_function("sym_cp_rank4_dim8", |b| {
        b.iter(|| sym_cp_decompose(black_box(&small_tensor), 4, 5).unwrap())
    });
}

criterion_group!(
    benches,
    bench_eigensolver,
    bench_hodge_decomposition,
    bench_flow_denoise,
    bench_delaunay_and_harmonics,
    bench_tensor_ops
);
criterion_main!(benches);
