use criterion::{black_box, criterion_group, criterion_main, Criterion};
use fencekit_core::hilbert::{component_dim, section_dim_heads, section_dim_tails};
use fencekit_core::lr::{lr_coefficient, multi_lr};
use fencekit_core::oracle;
use fencekit_core::schur::{kostka, schur_polynomial};
use fencekit_core::{
    ComponentLabel, Composition, DimensionVector, FenceQuiver, Limits, Linearization, ParabolicData, Partition,
};

fn p(parts: &[u32]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

fn littlewood_richardson(c: &mut Criterion) {
    let (f, d, e) = (p(&[5, 4, 3, 2, 1]), p(&[3, 2, 1]), p(&[3, 2, 1]));
    c.bench_function("lr_coefficient 54321/321,321 (memoized)", |b| {
        b.iter(|| lr_coefficient(black_box(&f), black_box(&d), black_box(&e)))
    });
    let ds = vec![p(&[2, 1]); 4];
    let g = p(&[4, 3, 2, 2, 1]);
    c.bench_function("multi_lr four factors", |b| b.iter(|| multi_lr(black_box(&g), black_box(&ds), 5)));
}

fn tableaux(c: &mut Criterion) {
    let limits = Limits::default();
    let shape = p(&[4, 2, 1]);
    c.bench_function("schur_polynomial 421 in 4 variables", |b| {
        b.iter(|| schur_polynomial(black_box(&shape), 4, &limits).unwrap())
    });
    c.bench_function("kostka 421 / 2221", |b| b.iter(|| kostka(black_box(&shape), &[2, 2, 2, 1])));
}

fn invariants(c: &mut Criterion) {
    let limits = Limits::default();
    let q = FenceQuiver::star(3);
    let d = DimensionVector::new(&q, vec![2, 1, 1, 1]).unwrap();
    let comps: Vec<Composition> = d.as_slice().iter().map(|&k| Composition::trivial(k)).collect();
    let label = ComponentLabel::new(vec![p(&[2, 2]), p(&[2]), p(&[1]), p(&[1])]);
    c.bench_function("master sum star 2;1,1,1", |b| {
        b.iter(|| component_dim(&q, &d, &comps, black_box(&label), &limits).unwrap())
    });
    c.bench_function("invariant oracle star 2;1,1,1", |b| {
        b.iter(|| oracle::component_dim(&q, &d, &comps, black_box(&label), 4, &limits).unwrap())
    });
    let lin = Linearization::new(&q, &[3], &[2, 2, 2]).unwrap();
    let data = ParabolicData::from_linearization(&q, &d, &lin);
    c.bench_function("sections heads vs tails, level 2", |b| {
        b.iter(|| {
            let h = section_dim_heads(&q, &d, &data, 2, &limits).unwrap();
            let t = section_dim_tails(&q, &d, &data, 2, &limits).unwrap();
            (h, t)
        })
    });
}

criterion_group!(benches, littlewood_richardson, tableaux, invariants);
criterion_main!(benches);
