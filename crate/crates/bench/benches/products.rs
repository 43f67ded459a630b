use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};

use qmzv::enumerate::enumerate_admissible;
use qmzv::okounkov::IiLattice;
use qmzv::relations::{dim_lower_bound, gen_all, gen_dbsf};
use qmzv::series::eval_zword;
use qmzv::shuffle::Shuffler;
use qmzv::stuffle::Stuffler;
use qmzv::{TypeTag, ZWord};

fn word(ty: TypeTag, s: &str) -> ZWord {
    let w: ZWord = s.parse().unwrap();
    w.check_admissible(ty).unwrap();
    w
}

fn products(c: &mut Criterion) {
    let (u, v) = (
        word(TypeTag::G, "z(2,3) z(1,1)"),
        word(TypeTag::G, "z(1,2) z(0,1)"),
    );
    c.bench_function("stuffle G depth 2 x depth 2", |b| {
        b.iter(|| {
            Stuffler::new(TypeTag::G)
                .stuffle(black_box(&u), black_box(&v))
                .unwrap()
        })
    });
    let (pu, pv) = (u.to_py(TypeTag::G).unwrap(), v.to_py(TypeTag::G).unwrap());
    c.bench_function("shuffle G depth 2 x depth 2, cold cache", |b| {
        b.iter_batched(
            Shuffler::new,
            |mut sh| sh.shuffle_comb(&pu, &pv),
            BatchSize::SmallInput,
        )
    });
}

fn series(c: &mut Criterion) {
    let w = word(TypeTag::II, "z'3 z'2 z'1");
    c.bench_function("eval type II depth 3, N=100", |b| {
        b.iter(|| eval_zword(black_box(&w), TypeTag::II, 100))
    });
    let words = enumerate_admissible(TypeTag::II, 4);
    c.bench_function("series rank type II w=4, N=100", |b| {
        b.iter(|| dim_lower_bound(black_box(&words), TypeTag::II, 100).unwrap())
    });
}

fn relations(c: &mut Criterion) {
    let mut group = c.benchmark_group("relations");
    group.sample_size(10);
    group.bench_function("DBSF type Ĩ w=4", |b| {
        b.iter(|| gen_dbsf(TypeTag::ITilde, 4).unwrap().rank())
    });
    group.bench_function("all relations type G w=3", |b| {
        b.iter(|| gen_all(TypeTag::G, 3).unwrap().rank())
    });
    group.bench_function("type II lattice w=5", |b| {
        b.iter(|| IiLattice::new(5).unwrap())
    });
    group.finish();
}

criterion_group!(benches, products, series, relations);
criterion_main!(benches);
