use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use plethys::exec::Strategy;
use plethys::graph::{char_of_census_with, enumerate_decorated_with, Budget, Family};
use plethys::group::{
    closure, ind_trivial_char_with, ind_trivial_char_wreath_with, Perm, SignedPerm,
};
use plethys::series::ModuleSpec;

const STRATEGIES: [(&str, Strategy); 2] = [
    ("sequential", Strategy::Sequential),
    ("parallel", Strategy::Parallel),
];

fn burnside(c: &mut Criterion) {
    let n = 7;
    let sym = closure(
        n,
        &[Perm::rotation(n), Perm::from_cycles(n, &[&[1, 2]]).unwrap()],
        10_000,
    )
    .unwrap();
    let hyper = closure(
        5,
        &[
            SignedPerm::uniform(false, Perm::rotation(5)),
            SignedPerm::uniform(false, Perm::from_cycles(5, &[&[1, 2]]).unwrap()),
            SignedPerm::new(
                &[-1, 1, 1, 1, 1],
                Perm::from_images((0..5).collect()).unwrap(),
            )
            .unwrap(),
        ],
        10_000,
    )
    .unwrap();
    let mut group = c.benchmark_group("burnside");
    for (name, strategy) in STRATEGIES {
        group.bench_with_input(BenchmarkId::new("S7", name), &strategy, |b, &s| {
            b.iter(|| ind_trivial_char_with(black_box(&sym), n, s).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("S2wrS5", name), &strategy, |b, &s| {
            b.iter(|| ind_trivial_char_wreath_with(black_box(&hyper), 5, s).unwrap())
        });
    }
    group.finish();
}

fn census(c: &mut Criterion) {
    let spec = ModuleSpec::standard();
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for (family, n) in [(Family::Necklace, 5), (Family::Genus1Stable, 4)] {
        let budget = Budget::sufficient_for(&spec, family, n);
        for (name, strategy) in STRATEGIES {
            group.bench_with_input(
                BenchmarkId::new(format!("{family}-{n}"), name),
                &strategy,
                |b, &s| {
                    b.iter(|| {
                        let census =
                            enumerate_decorated_with(&spec, family, n, &budget, s).unwrap();
                        char_of_census_with(&census, n, s).unwrap()
                    })
                },
            );
        }
    }
    group.finish();
}

criterion_group!(benches, burnside, census);
criterion_main!(benches);
