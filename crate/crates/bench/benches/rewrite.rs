use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use monvar::lattice::{builtin_catalog, check_implications};
use monvar::variety::BuiltinVariety;
use monvar::{class_closure_verify, derive, match_pattern, parse_word, Presentation, SearchBounds};

fn word(s: &str) -> monvar::Word {
    parse_word(s).unwrap()
}

fn matching(c: &mut Criterion) {
    let (p, t) = (word("xyxy"), word("x^2yxyx^2y^2"));
    c.bench_function("match_pattern xyxy", |b| b.iter(|| match_pattern(black_box(&p), black_box(&t))));
}

fn derivation(c: &mut Criterion) {
    let power = Presentation::from_strs(&["x = x^3"]);
    let (u, v) = (word("x^9yx^3"), word("x^7yx^5"));
    let bounds = SearchBounds::default_for(&power, &[&u, &v]);
    c.bench_function("derive x=x^3", |b| b.iter(|| derive(&power, &u, &v, &bounds).unwrap()));

    let lrb = BuiltinVariety::LRB.reference_presentation().unwrap();
    let (u, v) = (word("xyxy"), word("xy^2x"));
    let bounds = SearchBounds::new(10, 8, 1_000_000).unwrap();
    c.bench_function("derive LRB length 4", |b| b.iter(|| derive(&lrb, &u, &v, &bounds).unwrap()));
}

fn classes(c: &mut Criterion) {
    let sigma = Presentation::from_strs(&["x^9yx^3 = x^6yx^7", "x^7yx^5 = x^4yx^9"]);
    let class = [word("x^9yx^3"), word("x^6yx^7")].into_iter().collect();
    let seed = word("x^9yx^3");
    c.bench_function("class_closure_verify", |b| b.iter(|| class_closure_verify(&class, &seed, &sigma).unwrap()));
}

fn lattices(c: &mut Criterion) {
    let catalog = builtin_catalog();
    c.bench_function("implications over catalog", |b| {
        b.iter(|| catalog.iter().map(|e| check_implications(&e.lattice).len()).sum::<usize>())
    });
}

criterion_group!(benches, matching, derivation, classes, lattices);
criterion_main!(benches);
