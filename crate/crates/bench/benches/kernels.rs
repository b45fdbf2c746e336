use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ses_core::census::classes_bruteforce;
use ses_core::constructions::{quotient_pencil, LocalAlgebra, SubspaceBasis};
use ses_core::moebius::{count_orbits, Family, Group};
use ses_core::pencils::{
    centroid, count_totally_isotropic, is_ses_direct, is_ses_pfaffian, pfaffian, PencilFile,
};
use ses_core::{AltPencil, Field, Limits, UniPoly};

const SAME_PFAFF_1: &str = include_str!("../../../fixtures/same_pfaff_1.json");

/// The genus-2 quotient of the Heisenberg pencil over `F_5[x]/((x^2+2)^2)`.
fn genus_two() -> AltPencil {
    let f = Field::prime(5).unwrap();
    let a = LocalAlgebra::new(&f, &UniPoly::from_ints(&f, &[2, 0, 1]), 2).unwrap();
    let s = SubspaceBasis::new(
        &f,
        4,
        &[a.element(&UniPoly::one()), a.element(&UniPoly::x())],
    )
    .unwrap();
    quotient_pencil(&a, &s).unwrap()
}

fn pencils(c: &mut Criterion) {
    let limits = Limits::default();
    let h = genus_two();
    c.bench_function("is_ses_direct F5 dimV8", |b| {
        b.iter(|| is_ses_direct(black_box(&h), &limits).unwrap())
    });
    c.bench_function("is_ses_pfaffian F5 dimV8", |b| {
        b.iter(|| is_ses_pfaffian(black_box(&h), &limits).unwrap())
    });
    c.bench_function("pfaffian F5 dimV8", |b| {
        b.iter(|| pfaffian(black_box(&h)).unwrap())
    });
    c.bench_function("centroid F5 dimV8", |b| {
        b.iter(|| centroid(black_box(&h), &limits).unwrap())
    });
    let same = PencilFile::from_json(SAME_PFAFF_1)
        .unwrap()
        .to_pencil()
        .unwrap();
    c.bench_function("isotropic 3-subspaces F3 dimV6", |b| {
        b.iter(|| count_totally_isotropic(black_box(&same), 3, &limits).unwrap())
    });
}

fn orbits(c: &mut Criterion) {
    let limits = Limits::default();
    let f = Field::prime(7).unwrap();
    c.bench_function("count_orbits F7 quartics", |b| {
        b.iter(|| count_orbits(black_box(&f), 4, Family::Irreducible, Group::GL, &limits).unwrap())
    });
    let g = UniPoly::from_ints(&f, &[3, 1, 4, 1, 5, 2, 6, 1]);
    c.bench_function("factor F7 degree 7", |b| {
        b.iter(|| black_box(&g).factor(&f).unwrap())
    });
}

fn census(c: &mut Criterion) {
    let limits = Limits::default();
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    group.bench_function("classes p=5 order p^12", |b| {
        b.iter(|| classes_bruteforce(black_box(5), 12, &limits).unwrap())
    });
    group.finish();
}

criterion_group!(benches, pencils, orbits, census);
criterion_main!(benches);
