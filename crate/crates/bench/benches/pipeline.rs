use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use rulecnl::{formulate, parse_rule, to_xml, KeywordTable, Lexer, Session};
use rulecnl_bench::{generated, COMPOUND, ORDERS_VOCAB, ORDER_RULES};

fn tokenize(c: &mut Criterion) {
    let session = Session::new(ORDERS_VOCAB);
    let lexer = Lexer::new(&session.vocab, &KeywordTable::english());
    c.bench_function("tokenize/compound", |b| b.iter(|| lexer.tokenize(black_box(COMPOUND))));
    c.bench_function("lexer/build", |b| {
        b.iter(|| Lexer::new(black_box(&session.vocab), &session.keywords))
    });
}

fn parse_and_bind(c: &mut Criterion) {
    let session = Session::new(ORDERS_VOCAB);
    let lexer = Lexer::new(&session.vocab, &KeywordTable::english());
    let tokens = lexer.tokenize(COMPOUND);
    c.bench_function("parse/compound", |b| b.iter(|| parse_rule(black_box(&tokens))));
    c.bench_function("bind/compound", |b| b.iter(|| session.check_rule(black_box(COMPOUND))));
    let bound = session.check_rule(COMPOUND).expect("compound rule binds");
    c.bench_function("formulate+xml/compound", |b| {
        b.iter(|| to_xml(&formulate(black_box(&bound), &session.vocab)))
    });
}

fn compile(c: &mut Criterion) {
    let mut group = c.benchmark_group("compile");
    group.throughput(Throughput::Elements(3));
    group.bench_function("examples", |b| {
        b.iter(|| rulecnl::compile(black_box(ORDERS_VOCAB), black_box(ORDER_RULES)))
    });
    for rules in [10, 100] {
        let (vocab, text) = generated(1, rules);
        group.throughput(Throughput::Elements(rules as u64));
        group.bench_with_input(BenchmarkId::new("generated", rules), &text, |b, text| {
            b.iter(|| rulecnl::compile(&vocab, black_box(text)))
        });
    }
    group.finish();
}

fn complete(c: &mut Criterion) {
    let session = Session::new(ORDERS_VOCAB);
    let mut group = c.benchmark_group("complete");
    for (name, prefix) in [
        ("empty", ""),
        ("after-modality", "It is obligatory that "),
        ("after-subject", "It is obligatory that each customer "),
        ("mid-compound", &COMPOUND[..COMPOUND.find(" holds").unwrap_or(0) + 1]),
    ] {
        group.bench_function(name, |b| b.iter(|| session.complete(black_box(prefix), prefix.len())));
    }
    group.finish();
}

criterion_group!(benches, tokenize, parse_and_bind, compile, complete);
criterion_main!(benches);
