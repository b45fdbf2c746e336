//! The two worked examples on Pfaffians, rebuilt from their structure
//! constants and from the shipped fixtures.

use ses_core::constructions::{
    is_complement_of_socle, quotient_pencil, LocalAlgebra, SubspaceBasis,
};
use ses_core::moebius::{multiset_equivalent, orbit_of, Group};
use ses_core::pencils::{
    centroid, count_totally_isotropic, genus, is_ses_direct, is_ses_pfaffian, pfaffian, PencilFile,
};
use ses_core::{AltPencil, Field, FormIdeal, HomForm, Limits, Mat, Scalar, UniPoly};

const GENUS_G: &str = include_str!("../../../fixtures/genus_g.json");
const GENUS_H: &str = include_str!("../../../fixtures/genus_h.json");
const SAME_PFAFF_1: &str = include_str!("../../../fixtures/same_pfaff_1.json");
const SAME_PFAFF_2: &str = include_str!("../../../fixtures/same_pfaff_2.json");

fn load(text: &str) -> AltPencil {
    let file = PencilFile::from_json(text).unwrap();
    assert_eq!(file.to_json(), text, "fixture is not in canonical layout");
    file.to_pencil().unwrap()
}

fn binary(f: &Field, c: &[i64]) -> HomForm {
    HomForm::binary(f, &c.iter().map(|&x| f.from_i64(x)).collect::<Vec<_>>())
}

/// `[[0, B], [-B^T, 0]]` for each coordinate matrix of `B`.
fn doubled(f: &Field, blocks: &[Mat]) -> AltPencil {
    let k = blocks[0].rows();
    let mats = blocks
        .iter()
        .map(|b| {
            let mut m = Mat::zeros(2 * k, 2 * k);
            m.set_block(0, k, b);
            m.set_block(k, 0, &b.transpose().neg(f));
            m
        })
        .collect();
    AltPencil::new(f, 2 * k, mats).unwrap()
}

#[test]
fn genus_example_g_fixture() {
    let f = Field::prime(5).unwrap();
    let limits = Limits::default();
    let g = load(GENUS_G);
    // (X^2 + 2Y^2)^2. The sentence that prints "(X^2 + 2Y)^2" for G cannot be
    // right: that form is not homogeneous.
    let expected = binary(&f, &[1, 0, 2]).pow(&f, 2);
    assert_eq!(pfaffian(&g).unwrap(), expected);
    assert_eq!(centroid(&g, &limits).unwrap().field_order, Some(25));
    assert_eq!(genus(&g, &limits).unwrap(), 1);
    assert!(is_ses_direct(&g, &limits).unwrap());
    assert!(is_ses_pfaffian(&g, &limits).unwrap());
}

#[test]
fn genus_example_h_fixture_is_the_quotient() {
    let f = Field::prime(5).unwrap();
    let limits = Limits::default();
    let a = LocalAlgebra::new(&f, &UniPoly::from_ints(&f, &[2, 0, 1]), 2).unwrap();
    let s = SubspaceBasis::new(
        &f,
        4,
        &[a.element(&UniPoly::one()), a.element(&UniPoly::x())],
    )
    .unwrap();
    assert!(is_complement_of_socle(&a, &s));
    let h = quotient_pencil(&a, &s).unwrap();
    assert_eq!(PencilFile::from_pencil(&h).to_json(), GENUS_H);
    let h = load(GENUS_H);
    assert_eq!(pfaffian(&h).unwrap(), binary(&f, &[1, 0, 2]).pow(&f, 2));
    assert_eq!(centroid(&h, &limits).unwrap().field_order, Some(5));
    assert_eq!(genus(&h, &limits).unwrap(), 2);
    assert!(is_ses_direct(&h, &limits).unwrap());
    assert!(is_ses_pfaffian(&h, &limits).unwrap());
}

#[test]
fn genus_example_printed_structure_constants() {
    // The printed matrix C over A/S, with V basis {1, x, x^2+2, x^3+2x} and
    // W basis {x^3+2x, 3x^2+1}: entry 2(3x^2+1) is (0, 2), x^3+2x is (1, 0),
    // and 3x^2+1 is (0, 1).
    let f = Field::prime(5).unwrap();
    let limits = Limits::default();
    let cx = Mat::from_ints(
        &f,
        &[[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
    );
    let cy = Mat::from_ints(
        &f,
        &[[0, 0, 2, 0], [0, 2, 0, 1], [2, 0, 1, 0], [0, 1, 0, 0]],
    );
    let printed = doubled(&f, &[cx, cy]);
    let pf = pfaffian(&printed).unwrap();
    assert_eq!(pf, binary(&f, &[1, 0, 2]).pow(&f, 2));
    assert_eq!(centroid(&printed, &limits).unwrap().field_order, Some(5));
    // Same ideal orbit as the quotient built from the algebra.
    let quotient = pfaffian(&load(GENUS_H)).unwrap();
    let orbit = orbit_of(
        &f,
        &FormIdeal::from_form(&f, &pf).unwrap(),
        Group::GL,
        &limits,
    )
    .unwrap();
    assert!(orbit.contains(&FormIdeal::from_form(&f, &quotient).unwrap()));
}

#[test]
fn genus_example_pfaffian_multisets_differ() {
    let f = Field::prime(5).unwrap();
    let q = FormIdeal::new(&f, vec![Scalar(1), Scalar(0), Scalar(2)]).unwrap();
    let q2 = FormIdeal::from_form(&f, &q.to_form(&f).pow(&f, 2)).unwrap();
    let limits = Limits::default();
    assert_eq!(
        multiset_equivalent(
            &f,
            &[q.clone(), q.clone()],
            std::slice::from_ref(&q2),
            Group::GL,
            &limits
        )
        .unwrap(),
        None
    );
    // Same-shape multisets of conjugate quadratics are equivalent.
    let other = FormIdeal::new(&f, vec![Scalar(1), Scalar(1), Scalar(1)]).unwrap();
    assert!(
        multiset_equivalent(&f, std::slice::from_ref(&q), &[other], Group::GL, &limits)
            .unwrap()
            .is_some()
    );
}

#[test]
fn same_pfaffian_pencils() {
    let f = Field::prime(3).unwrap();
    let limits = Limits::default();
    let first = load(SAME_PFAFF_1);
    let second = load(SAME_PFAFF_2);
    // x^3 + x^2y + xy^2 + 2xz^2 + 2y^3 + 2y^2z + z^3
    let expected = HomForm::from_terms(
        &f,
        3,
        3,
        [
            (vec![3, 0, 0], 1),
            (vec![2, 1, 0], 1),
            (vec![1, 2, 0], 1),
            (vec![1, 0, 2], 2),
            (vec![0, 3, 0], 2),
            (vec![0, 2, 1], 2),
            (vec![0, 0, 3], 1),
        ]
        .map(|(e, c)| (e, Scalar(c))),
    )
    .unwrap();
    assert_eq!(pfaffian(&first).unwrap(), expected);
    assert_eq!(pfaffian(&second).unwrap(), expected);
    let first_count = count_totally_isotropic(&first, 3, &limits).unwrap();
    let second_count = count_totally_isotropic(&second, 3, &limits).unwrap();
    assert!(first_count >= 2);
    assert_eq!(first_count, 28);
    assert_eq!(second_count, 1);
}
