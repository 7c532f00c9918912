use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use pureres::builders::{koszul_presentation, KoszulSpec};
use pureres::cohomology::{cohomology_table, default_twist_window};
use pureres::homext::hom_dim;
use pureres::kronecker::{rep_hom_ext, KroneckerRep};
use pureres::{Field, Matrix, PolyRing, PrimeField};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_matrix(f: PrimeField, rows: usize, cols: usize, seed: u64) -> Matrix<PrimeField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..rows * cols).map(|_| f.random(&mut rng)).collect();
    Matrix::new(f, rows, cols, data).unwrap()
}

fn rank(c: &mut Criterion) {
    let f = PrimeField::default_prime();
    let mut g = c.benchmark_group("rank");
    g.sample_size(10);
    for size in [200, 500, 1000] {
        let m = random_matrix(f, size, size, 1);
        g.bench_with_input(BenchmarkId::from_parameter(size), &m, |b, m| {
            b.iter(|| m.rank())
        });
    }
    g.finish();
}

fn kernel(c: &mut Criterion) {
    let f = PrimeField::default_prime();
    let m = random_matrix(f, 400, 600, 2);
    c.bench_function("kernel_basis 400x600", |b| b.iter(|| m.kernel_basis()));
}

fn koszul_syzygy(c: &mut Criterion) {
    let ring = PolyRing::new(3, PrimeField::default_prime()).unwrap();
    let spec = KoszulSpec::random(&ring, 1, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
    let res = koszul_presentation(&spec).unwrap();
    let f1 = &res.syzygies[0];
    let mut g = c.benchmark_group("koszul n=3 d=1");
    g.sample_size(10);
    g.bench_function("cohomology table F_1", |b| {
        b.iter(|| cohomology_table(f1, default_twist_window(f1, 2)))
    });
    g.bench_function("dim Hom(F_1, F_1)", |b| b.iter(|| hom_dim(f1, f1).unwrap()));
    g.finish();
}

fn kronecker(c: &mut Criterion) {
    let f = PrimeField::default_prime();
    let r = KroneckerRep::random(&f, 5, 6, 6, &mut ChaCha8Rng::seed_from_u64(4));
    c.bench_function("rep_hom_ext w=5 (6,6)", |b| {
        b.iter(|| rep_hom_ext(&r, &r, &f).unwrap())
    });
}

criterion_group!(benches, rank, kernel, koszul_syzygy, kronecker);
criterion_main!(benches);
