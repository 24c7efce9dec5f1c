mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use tilegraph::stepped::{approximate_subtile, face_intersection_dim, walk_count, ProjectedCell, SteppedError};
use tilegraph::substitution::Substitution;
use tilegraph::{Face, PisotSystem, Projector};

use common::*;

fn face(x: &[i64], i: u32) -> Face {
    Face::new(tilegraph::exactmath::IntVector::from_i64(x), i)
}

fn area(cell: &ProjectedCell<f64>) -> f64 {
    let (a, b) = (&cell.edges[0], &cell.edges[1]);
    (a[0] * b[1] - a[1] * b[0]).abs()
}

#[test]
fn non_pisot_inputs_are_rejected() {
    for images in [&["1"][..], &["12", "12"], &["2", "1"], &["2", "3", "1"]] {
        let sigma = Substitution::from_strs(images).unwrap();
        assert!(matches!(PisotSystem::new(&sigma), Err(SteppedError::NotPisot(_))), "{images:?}");
    }
}

#[test]
fn membership_of_small_faces() {
    let s = sigma1();
    for i in 1..=3 {
        assert!(s.in_h(&face(&[0, 0, 0], i)));
    }
    assert!(!s.in_h(&face(&[1, 0, 0], 1)));
    assert!(s.in_h(&face(&[0, 1, 0], 1)));
    assert!(s.in_dfrak(&triple(1, &[0, 1, 0], 1)));
}

#[test]
fn dual_of_powers() {
    for s in [sigma1(), sigma2()] {
        for n in 1..=3 {
            let power = PisotSystem::new(&s.substitution().power(n)).unwrap();
            for f in s.stepped_patch(1) {
                let iterated = s.iterate_dual(&BTreeSet::from([f.clone()]), n).unwrap();
                let direct: BTreeSet<Face> = power.dual_image(&f).unwrap().into_iter().collect();
                assert_eq!(iterated, direct, "{f} at n = {n}");
            }
        }
    }
}

#[test]
fn iteration_of_order_zero_is_the_identity() {
    let s = sigma1();
    let seed: BTreeSet<Face> = s.letters().map(|i| Face::origin(3, i)).collect();
    assert_eq!(s.iterate_dual(&seed, 0).unwrap(), seed);
}

#[test]
fn sigma1_patch_sizes() {
    let s = sigma1();
    let counts: Vec<usize> = s
        .letters()
        .map(|i| s.iterate_dual(&BTreeSet::from([Face::origin(3, i)]), 4).unwrap().len())
        .collect();
    assert_eq!(counts, [276, 76, 21]);
    for (i, c) in s.letters().zip(&counts) {
        assert_eq!(walk_count(&s, i, 4), Some(*c));
    }
    let seed: BTreeSet<Face> = s.letters().map(|i| Face::origin(3, i)).collect();
    assert_eq!(s.iterate_dual(&seed, 4).unwrap().len(), 373);
}

#[test]
fn patches_keep_their_area() {
    for s in [sigma1(), sigma2()] {
        let p = Projector::new(&s, 64);
        for i in s.letters() {
            let base = area(&p.face_cell(&Face::origin(3, i), 0));
            for n in 1..=6 {
                let patch = approximate_subtile(&s, &p, i, n, 1 << 16).unwrap();
                let total: f64 = patch.cells.iter().map(area).sum();
                assert!((total - base).abs() < 1e-9 * base, "letter {i}, level {n}: {total} vs {base}");
            }
        }
    }
}

#[test]
fn cells_shrink_geometrically() {
    let s = sigma1();
    let p = Projector::new(&s, 64);
    let diameter = |n| {
        let patch = approximate_subtile(&s, &p, 1, n, 1 << 16).unwrap();
        patch.cells.iter().map(|c| c.diameter()).fold(0.0, f64::max)
    };
    let d0 = diameter(0);
    // the contraction has spectral radius β^(-1/2) ≈ 0.525
    for n in 1..=7 {
        assert!(diameter(n) <= 3.0 * d0 * 0.6f64.powi(n as i32), "level {n}");
    }
    assert!(diameter(7) < 0.05 * d0);
}

#[test]
fn caps_are_enforced() {
    let s = sigma1();
    let p = Projector::new(&s, 64);
    assert!(matches!(approximate_subtile(&s, &p, 1, 6, 1000), Err(SteppedError::PatchTooLarge { cells: 3631, cap: 1000 })));
}

proptest! {
    #[test]
    fn intersection_dimension_is_symmetric_and_translation_invariant(
        x in prop::collection::vec(-2i64..=2, 3),
        y in prop::collection::vec(-2i64..=2, 3),
        t in prop::collection::vec(-5i64..=5, 3),
        i in 1u32..=3,
        j in 1u32..=3,
    ) {
        let (f, g) = (face(&x, i), face(&y, j));
        prop_assert_eq!(face_intersection_dim(&f, &g), face_intersection_dim(&g, &f));
        let shift = |v: &[i64]| -> Vec<i64> { v.iter().zip(&t).map(|(a, b)| a + b).collect() };
        prop_assert_eq!(face_intersection_dim(&f, &g), face_intersection_dim(&face(&shift(&x), i), &face(&shift(&y), j)));
        let diff: Vec<i64> = y.iter().zip(&x).map(|(a, b)| a - b).collect();
        prop_assert_eq!(face_intersection_dim(&f, &g), face_intersection_dim(&face(&[0, 0, 0], i), &face(&diff, j)));
    }

    #[test]
    fn projection_is_linear(x in prop::collection::vec(-50i64..=50, 3), y in prop::collection::vec(-50i64..=50, 3)) {
        let s = sigma2();
        let p = Projector::new(&s, 64);
        let v = |c: &[i64]| tilegraph::exactmath::IntVector::<tilegraph::BigInt>::from_i64(c);
        let sum: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        let lhs = p.project_lattice(&v(&sum));
        let (a, b) = (p.project_lattice(&v(&x)), p.project_lattice(&v(&y)));
        for k in 0..2 {
            prop_assert!((lhs[k] - a[k] - b[k]).abs() < 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn dual_substitution_tiles_the_stepped_surface(seed in 0u64..10_000) {
        let s = random_pisot(seed, 1).pop().unwrap();
        let mut seen = BTreeSet::new();
        for f in s.stepped_patch(1) {
            for g in s.dual_image(&f).unwrap() {
                prop_assert!(s.in_h(&g));
                prop_assert!(seen.insert(g));
            }
        }
        for i in s.letters() {
            let faces = s.iterate_dual(&BTreeSet::from([Face::origin(3, i)]), 3).unwrap();
            prop_assert_eq!(Some(faces.len()), walk_count(&s, i, 3));
        }
    }
}
