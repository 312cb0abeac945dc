use criterion::{criterion_group, criterion_main, Criterion};

use koszul_core::parallel::Parallelism;
use koszul_core::scenarios::{default_suite, run_suite, SuiteOptions};

fn suite(c: &mut Criterion) {
    let requests = default_suite().expect("default suite builds");
    let mut group = c.benchmark_group("default_suite");
    group.sample_size(10);
    for (label, parallelism) in [("sequential", Parallelism::Sequential), ("parallel", Parallelism::Parallel { workers: 0 })] {
        let opts = SuiteOptions { parallelism, ..SuiteOptions::default() };
        group.bench_function(label, |b| b.iter(|| run_suite(requests.clone(), &opts).expect("suite runs")));
    }
    group.finish();
}

criterion_group!(benches, suite);
criterion_main!(benches);
