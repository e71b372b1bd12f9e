use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use qcalc_bench::{generic_words, root_words};
use qcalc_core::fsusy::{fs_d_power, fs_normal_order, fs_normal_order_by_rewriting};
use qcalc_core::gencalc::{normal_order, normal_order_by_rewriting};
use qcalc_core::rewrite::Strategy;
use qcalc_core::CyclotomicField;

fn generic(c: &mut Criterion) {
    let words = generic_words(100, 8);
    c.bench_function("generic/closed_form", |b| {
        b.iter(|| {
            words
                .iter()
                .map(|w| normal_order(black_box(w)).len())
                .sum::<usize>()
        })
    });
    c.bench_function("generic/rewriting", |b| {
        b.iter(|| {
            words
                .iter()
                .map(|w| normal_order_by_rewriting(black_box(w), Strategy::Leftmost).len())
                .sum::<usize>()
        })
    });
}

fn root(c: &mut Criterion) {
    let field = CyclotomicField::new(3).unwrap();
    let words = root_words(&field, 100, 8);
    c.bench_function("root3/closed_form", |b| {
        b.iter(|| {
            words
                .iter()
                .map(|w| fs_normal_order(&field, black_box(w)).len())
                .sum::<usize>()
        })
    });
    c.bench_function("root3/rewriting", |b| {
        b.iter(|| {
            words
                .iter()
                .map(|w| {
                    fs_normal_order_by_rewriting(&field, black_box(w), Strategy::Leftmost).len()
                })
                .sum::<usize>()
        })
    });
    for n in [3u32, 5, 7] {
        let field = CyclotomicField::new(n).unwrap();
        c.bench_function(&format!("root{n}/D_power_n"), |b| {
            b.iter(|| fs_d_power(&field, black_box(n)).unwrap())
        });
    }
}

criterion_group!(benches, generic, root);
criterion_main!(benches);
