use std::sync::Arc;
use std::time::Duration;

use criterion::{criterion_group, criterion_main, Criterion};
use spheract_core::character::{
    character_table, min_faithful_real_degree, product_character_table, real_irrep_units,
};
use spheract_core::group::{construct_group, GroupOptions, GroupSpec};
use spheract_core::linalg::sparse_smith_normal_form;
use spheract_core::simplicial::{boundary_matrix, join, SimplicialComplex};

fn table(s: &str) -> spheract_core::character::CharacterTable {
    let g = construct_group(&s.parse::<GroupSpec>().unwrap(), &GroupOptions::default()).unwrap();
    character_table(&g).unwrap()
}

fn join_boundary(c: &mut Criterion) {
    let k = join(&SimplicialComplex::poincare_sphere(), &SimplicialComplex::polygon(3).unwrap());
    let top = k.faces().len() - 1;
    let d = boundary_matrix(&k, top);
    c.bench_function("sparse_snf_m3_join_triangle_top", |b| b.iter(|| sparse_smith_normal_form(&d)));
}

fn dixon_a7(c: &mut Criterion) {
    let g = construct_group(&GroupSpec::Alternating(7), &GroupOptions::default()).unwrap();
    c.bench_function("character_table_alt7", |b| b.iter(|| character_table(&g).unwrap()));
}

fn mindegree_product(c: &mut Criterion) {
    let q = Arc::new(table("milnor(3,5,1)"));
    let a = Arc::new(table("alt(7)"));
    let t = product_character_table(q, a).unwrap();
    let units = real_irrep_units(&t).unwrap();
    c.bench_function("min_degree_milnor_x_alt7", |b| {
        b.iter(|| min_faithful_real_degree(&t.spec, &units, &t.classes).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10).measurement_time(Duration::from_secs(5));
    targets = join_boundary, dixon_a7, mindegree_product
}
criterion_main!(benches);
