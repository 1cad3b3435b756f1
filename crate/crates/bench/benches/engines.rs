use criterion::{criterion_group, criterion_main, Criterion};
use nilhecke_bench::standard;
use nilhecke_core::classifier::classify;
use nilhecke_core::coxsys::{compile, Cutoff, StandardFamily};
use nilhecke_core::groupmodel::wj0_basis;
use nilhecke_core::wordengine::{enumerate_basis, Budget};

fn word_engine(c: &mut Criterion) {
    let f4 = compile(&standard(StandardFamily::F(4), Cutoff::Finite(4)));
    c.bench_function("words F4 k=4", |b| b.iter(|| enumerate_basis(&f4, &Budget::default()).dimension()));
    let b3 = compile(&standard(StandardFamily::B(3), Cutoff::Infinite));
    c.bench_function("words B3 k=inf", |b| b.iter(|| enumerate_basis(&b3, &Budget::default()).dimension()));
}

fn group_model(c: &mut Criterion) {
    for (name, fam) in [("H3", StandardFamily::H(3)), ("H4", StandardFamily::H(4))] {
        let p = standard(fam, Cutoff::Finite(4));
        c.bench_function(&format!("group {name} k=4"), |b| {
            b.iter(|| wj0_basis(&p.matrix, &p.j0(), &Budget::default()).count())
        });
    }
}

fn classifier(c: &mut Criterion) {
    let systems = [
        standard(StandardFamily::A(6), Cutoff::Finite(3)),
        standard(StandardFamily::E(6), Cutoff::Finite(3)),
        standard(StandardFamily::D(6), Cutoff::Finite(3)),
        standard(StandardFamily::H(4), Cutoff::Finite(4)),
        standard(StandardFamily::E(8), Cutoff::Infinite),
        standard(StandardFamily::I2(9), Cutoff::Finite(5)),
    ];
    c.bench_function("classify standard families", |b| {
        b.iter(|| systems.iter().map(|p| classify(p).expect("classifiable").verdict).collect::<Vec<_>>())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = word_engine, group_model, classifier
}
criterion_main!(benches);
