use std::time::Duration;

use binform::census::{census_by_discriminant, enumerate_forms_with, CensusFlags, CensusOptions};
use binform::cross_ratio::cross_ratio_profile_with;
use binform::equivalence::EquivalenceOptions;
use binform::sunit::{sunit_solutions_with, SUnitGroupSpec};
use binform::unit_resultant::resultant_unit_search_with;
use binform::{BinaryForm, Exec};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn census(c: &mut Criterion) {
    let mut g = c.benchmark_group("census_r3_h2_irreducible");
    g.sample_size(10).measurement_time(Duration::from_secs(10));
    let flags = CensusFlags {
        irreducible: true,
        ..CensusFlags::default()
    };
    for (name, exec) in MODES {
        let opts = CensusOptions {
            equivalence: EquivalenceOptions {
                exec,
                ..EquivalenceOptions::default()
            },
            cache: None,
        };
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| census_by_discriminant(3, black_box(2), flags, &opts).unwrap())
        });
    }
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_r4_h2_irreducible");
    g.sample_size(10);
    let flags = CensusFlags {
        irreducible: true,
        ..CensusFlags::default()
    };
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| enumerate_forms_with(4, black_box(2), flags, exec).unwrap())
        });
    }
    g.finish();
}

fn profile(c: &mut Criterion) {
    let mut g = c.benchmark_group("cross_ratio_profile_deg7");
    g.sample_size(10);
    let f = BinaryForm::from_i64(&[1, 0, -3, 1, 2, -1, 0, 5]).unwrap();
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| cross_ratio_profile_with(black_box(&f), 256, 20, exec).unwrap())
        });
    }
    g.finish();
}

fn sunit(c: &mut Criterion) {
    let mut g = c.benchmark_group("sunit_2_3_5_e8");
    g.sample_size(10);
    let group = SUnitGroupSpec::new(vec![2, 3, 5], 8).unwrap();
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| sunit_solutions_with(black_box(&group), exec))
        });
    }
    g.finish();
}

fn unit_resultant(c: &mut Criterion) {
    let mut g = c.benchmark_group("unit_resultant_deg2_h6");
    g.sample_size(10);
    let f0 = BinaryForm::from_i64(&[1, 0, 0, -2]).unwrap();
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| resultant_unit_search_with(black_box(&f0), 2, 6, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, census, enumeration, profile, sunit, unit_resultant);
criterion_main!(benches);
