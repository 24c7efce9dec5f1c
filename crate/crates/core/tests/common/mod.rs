#![allow(dead_code)]

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tilegraph::exactmath::{IntMatrix, IntVector, IntegerSolver};
use tilegraph::substitution::Substitution;
use tilegraph::{BigInt, PisotSystem, SignedTriple, TileSystem};

pub fn system(images: &[&str]) -> PisotSystem {
    PisotSystem::new(&Substitution::from_strs(images).unwrap()).unwrap()
}

pub fn sigma1() -> PisotSystem {
    static S: OnceLock<PisotSystem> = OnceLock::new();
    S.get_or_init(|| system(&["1112", "113", "1"])).clone()
}

pub fn sigma2() -> PisotSystem {
    static S: OnceLock<PisotSystem> = OnceLock::new();
    S.get_or_init(|| system(&["112", "1113", "1"])).clone()
}

/// 1 -> 1^a 2, 2 -> 1^b 3, 3 -> 1.
pub fn family_substitution(a: usize, b: usize) -> Substitution {
    let one = |k: usize| "1".repeat(k);
    Substitution::from_strs(&[&format!("{}2", one(a)), &format!("{}3", one(b)), "1"]).unwrap()
}

/// Every (a, b) with a + b <= 6 whose substitution is a Pisot unit.
pub fn family() -> Vec<((usize, usize), PisotSystem)> {
    let mut out = Vec::new();
    for a in 0..=6 {
        for b in 0..=6 - a {
            if let Ok(s) = PisotSystem::new(&family_substitution(a, b)) {
                out.push(((a, b), s));
            }
        }
    }
    out
}

/// Random Pisot unit substitutions on three letters with images of length 1..=4.
pub fn random_pisot(seed: u64, count: usize) -> Vec<PisotSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let images: Vec<String> = (0..3)
            .map(|_| {
                let len = rng.random_range(1..=4);
                (0..len).map(|_| char::from(b'1' + rng.random_range(0..3u8))).collect()
            })
            .collect();
        let refs: Vec<&str> = images.iter().map(String::as_str).collect();
        let Ok(sigma) = Substitution::from_strs(&refs) else { continue };
        if let Ok(s) = PisotSystem::new(&sigma) {
            out.push(s);
        }
    }
    out
}

pub fn triple(i: u32, x: &[i64], j: u32) -> SignedTriple {
    SignedTriple::from_i64(i, x, j)
}

pub fn tile(rows: &[[i64; 2]], digits: &[[i64; 2]]) -> TileSystem {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    let digits: Vec<Vec<i64>> = digits.iter().map(|d| d.to_vec()).collect();
    TileSystem::from_i64(&rows, &digits).unwrap()
}

pub fn knuth_tile() -> TileSystem {
    tile(&[[2, -1], [1, 2]], &[[0, 0], [1, 0], [2, 0], [3, 0], [4, 0]])
}

pub fn twindragon() -> TileSystem {
    tile(&[[1, 1], [-1, 1]], &[[0, 0], [1, 0]])
}

pub fn square() -> TileSystem {
    tile(&[[2, 0], [0, 2]], &[[0, 0], [1, 0], [0, 1], [1, 1]])
}

/// Expanding 2x2 systems with 2 <= |det M| <= 6. Digits are a greedy residue
/// system from the box [0, |det|)^2, each moved by M k with k in {-1, 0, 1}^2.
pub fn fuzzed_tiles(seed: u64, count: usize) -> Vec<TileSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let rows: Vec<Vec<i64>> = (0..2).map(|_| (0..2).map(|_| rng.random_range(-3..=3)).collect()).collect();
        let det = (rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]).abs();
        if !(2..=6).contains(&det) {
            continue;
        }
        let m = IntMatrix::<BigInt>::from_i64_rows(&rows).unwrap();
        let solver = IntegerSolver::new(&m).unwrap();
        let mut digits: Vec<IntVector<BigInt>> = Vec::new();
        'fill: for x in 0..det {
            for y in 0..det {
                let d = IntVector::from_i64(&[x, y]);
                if digits.iter().all(|e| solver.solve(&(&d - e)).is_none()) {
                    digits.push(d);
                    if digits.len() == det as usize {
                        break 'fill;
                    }
                }
            }
        }
        let digits = digits
            .into_iter()
            .map(|d| {
                let k = IntVector::from_i64(&[rng.random_range(-1..=1), rng.random_range(-1..=1)]);
                &d + &m.mul_vec(&k)
            })
            .collect();
        if let Ok(t) = TileSystem::new(m, digits) {
            out.push(t);
        }
    }
    out
}
