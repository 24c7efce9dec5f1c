mod common;

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use tilegraph::exactmath::IntVector;
use tilegraph::selfaffine::{
    algorithm1, approximate_tile, cdeg, contact_set, minkowski_sum, naive_bound, naive_neighbors, TileError,
};
use tilegraph::{BigInt, TileSystem};

use common::*;

type V = IntVector<BigInt>;

fn v(c: &[i64]) -> V {
    IntVector::from_i64(c)
}

fn without_zero(s: &BTreeSet<V>) -> BTreeSet<V> {
    s.iter().filter(|m| !m.is_zero()).cloned().collect()
}

#[test]
fn invalid_systems_are_rejected() {
    let err = TileSystem::from_i64(&[vec![2, -1], vec![1, 2]], &[vec![0, 0], vec![5, 0], vec![1, 0], vec![2, 0], vec![3, 0]]);
    assert!(matches!(err, Err(TileError::CongruentDigits(0, 1))));
    let err = TileSystem::from_i64(&[vec![1, 1], vec![0, 1]], &[vec![0, 0]]);
    assert!(matches!(err, Err(TileError::NotExpanding)));
    let err = TileSystem::from_i64(&[vec![2, 0], vec![0, 2]], &[vec![0, 0], vec![1, 0]]);
    assert!(matches!(err, Err(TileError::DigitCount { .. })));
}

#[test]
fn knuth_contact_set_is_stable_and_spans() {
    let t = knuth_tile();
    let run = contact_set(&t, None).unwrap();
    let r = run.graph.nodes();
    assert!(r.contains(&v(&[0, 0])));
    let unimodular = r.iter().any(|a| {
        r.iter().any(|b| {
            let (a, b) = (a.coords(), b.coords());
            let det = &a[0] * &b[1] - &a[1] * &b[0];
            det == BigInt::one() || det == -BigInt::one()
        })
    });
    assert!(unimodular);
    // one more round adds nothing
    let again = contact_set(&t, Some(&[v(&[1, 0]), v(&[0, 1])])).unwrap();
    assert_eq!(again.unreduced, run.unreduced);
}

#[test]
fn twindragon_neighbors() {
    let t = twindragon();
    let run = algorithm1(&t).unwrap();
    assert_eq!(run.graph.node_count(), 6);
    let contact = without_zero(run.contact.nodes());
    assert!(contact.is_subset(run.graph.nodes()));
    assert_eq!(run.graph, naive_neighbors(&t, 1 << 20).unwrap());
}

#[test]
fn square_has_eight_neighbors() {
    let t = square();
    let run = algorithm1(&t).unwrap();
    let expected: BTreeSet<V> =
        (-1..=1).flat_map(|x| (-1..=1).map(move |y| v(&[x, y]))).filter(|m| !m.is_zero()).collect();
    assert_eq!(run.graph.nodes(), &expected);
    assert_eq!(naive_neighbors(&t, 1 << 20).unwrap().nodes(), &expected);
    let contact = contact_set(&t, None).unwrap().graph;
    assert!(without_zero(contact.nodes()).is_subset(&expected));
}

#[test]
fn knuth_neighbors_match_the_oracle() {
    let t = knuth_tile();
    assert_eq!(algorithm1(&t).unwrap().graph, naive_neighbors(&t, 1 << 22).unwrap());
}

#[test]
fn minkowski_sums() {
    let r = contact_set(&knuth_tile(), None).unwrap().graph.nodes().clone();
    let zero = BTreeSet::from([v(&[0, 0])]);
    assert_eq!(minkowski_sum(&zero, &r), r);
    let rr = minkowski_sum(&r, &r);
    assert!(rr.iter().all(|m| rr.contains(&-m)));
    assert!(rr.len() <= r.len() * r.len());
}

#[test]
fn contact_degrees() {
    let t = twindragon();
    let r = contact_set(&t, None).unwrap().graph.nodes().clone();
    assert_eq!(cdeg(&v(&[0, 0]), &r, 10).unwrap(), 0);
    for m in without_zero(&r) {
        assert_eq!(cdeg(&m, &r, 10).unwrap(), 1);
    }
    let sums = minkowski_sum(&r, &r);
    for m in sums.iter().filter(|m| !r.contains(m)) {
        assert_eq!(cdeg(m, &r, 10).unwrap(), 2);
    }
}

#[test]
fn knuth_level_three_has_unit_area() {
    let patch = approximate_tile(&knuth_tile(), 3, 1000).unwrap();
    assert_eq!(patch.len(), 125);
    let total = patch.cells().fold(BigRational::zero(), |acc, c| acc + c.volume());
    assert!(total.is_one());
    assert_eq!(patch.cell_volume(), BigRational::new(1.into(), 125.into()));
}

#[test]
fn neighbors_do_not_depend_on_the_basis() {
    let t = knuth_tile();
    let standard = algorithm1(&t).unwrap().graph;
    let basis = [v(&[1, 1]), v(&[2, 1])];
    let contact = contact_set(&t, Some(&basis)).unwrap().graph;
    let other = tilegraph::selfaffine::algorithm1_with_cap(&t, &contact, 64).unwrap().graph;
    assert_eq!(standard, other);
    assert!(contact_set(&t, Some(&[v(&[2, 0]), v(&[0, 1])])).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fuzzed_systems(seed in 0u64..10_000) {
        let t = fuzzed_tiles(seed, 1).pop().unwrap();
        let run = algorithm1(&t).unwrap();
        let s = run.graph.nodes();

        prop_assert_eq!(&run.graph, &naive_neighbors(&t, 1 << 22).unwrap());
        prop_assert!(without_zero(run.contact.nodes()).is_subset(s));
        prop_assert!(s.iter().all(|m| s.contains(&-m)));
        prop_assert!(run.sizes.windows(2).all(|w| w[0] <= w[1]));

        let radius = 4 * u64::try_from(naive_bound(&t)).unwrap() + 4;
        let degrees: Vec<u64> = s.iter().map(|m| cdeg(m, run.contact.nodes(), radius).unwrap()).collect();
        prop_assert!(degrees.iter().all(|&q| q >= 1 && q < run.iterations as u64));

        for level in 0..=3 {
            let patch = approximate_tile(&t, level, 1 << 12).unwrap();
            let total = patch.cells().fold(BigRational::zero(), |acc, c| acc + c.volume());
            prop_assert!(total.is_one());
        }
    }
}
