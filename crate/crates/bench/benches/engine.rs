use criterion::{black_box, criterion_group, criterion_main, Criterion};
use polyweight_bench::{side, HEPTAGON, HEXAGON, PENTAGON};
use polyweight_core::battery::example_battery;
use polyweight_core::ehrhart::{weight_multiplicity, MultiplicityQuery};
use polyweight_core::polytope::{h_to_v, lattice_points};
use polyweight_core::weights::{gt_slice, polygon_hrep};

fn vertex_enumeration(c: &mut Criterion) {
    for (name, r) in [("pentagon", PENTAGON), ("heptagon", HEPTAGON)] {
        let p = polygon_hrep(&side(1, r)).unwrap();
        c.bench_function(&format!("h_to_v {name}"), |b| b.iter(|| h_to_v(black_box(&p)).unwrap()));
    }
}

fn lattice_count(c: &mut Criterion) {
    let slice = gt_slice(&side(1, HEXAGON)).unwrap();
    c.bench_function("lattice points hexagon slice t=3", |b| {
        b.iter(|| lattice_points(black_box(&slice.entry_chart), 3).unwrap().len())
    });
    let wide = gt_slice(&side(2, &[2, 2, 2, 2, 2, 2])).unwrap();
    c.bench_function("lattice points m=2 slice t=2", |b| {
        b.iter(|| lattice_points(black_box(&wide.entry_chart), 2).unwrap().len())
    });
}

fn multiplicity(c: &mut Criterion) {
    let q = MultiplicityQuery::from_side_data(&side(1, HEXAGON), 3).unwrap();
    c.bench_function("weight multiplicity hexagon t=3", |b| b.iter(|| weight_multiplicity(black_box(&q))));
    let q = MultiplicityQuery::from_side_data(&side(2, &[2, 2, 2, 2, 2, 2]), 2).unwrap();
    c.bench_function("weight multiplicity m=2 t=2", |b| b.iter(|| weight_multiplicity(black_box(&q))));
}

fn battery(c: &mut Criterion) {
    let mut group = c.benchmark_group("battery");
    group.sample_size(10);
    group.bench_function("example battery", |b| b.iter(example_battery));
    group.finish();
}

criterion_group!(benches, vertex_enumeration, lattice_count, multiplicity, battery);
criterion_main!(benches);
