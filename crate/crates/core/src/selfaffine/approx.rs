use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::{TileError, TileSystem};
use crate::exactmath::{IntVector, LatticeScalar, RatMatrix};

/// base + Σ t_k·edges[k], t ∈ [0,1]^d, with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parallelotope {
    pub base: Vec<BigRational>,
    pub edges: Vec<Vec<BigRational>>,
}

impl Parallelotope {
    pub fn volume(&self) -> BigRational {
        // rows instead of columns: |det| is transpose-invariant
        RatMatrix::from_rows(self.edges.clone()).det().abs()
    }

    /// Vertices in the order 0, e_0, e_0+e_1, e_1 for d = 2 (a closed polygon),
    /// all 2^d corners otherwise.
    pub fn vertices(&self) -> Vec<Vec<BigRational>> {
        let d = self.edges.len();
        let corners: Vec<usize> = if d == 2 { vec![0, 1, 3, 2] } else { (0..1 << d).collect() };
        corners
            .into_iter()
            .map(|mask| {
                let mut p = self.base.clone();
                for (k, e) in self.edges.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        for (c, x) in p.iter_mut().zip(e) {
                            *c += x;
                        }
                    }
                }
                p
            })
            .collect()
    }

    pub fn vertices_f64(&self) -> Vec<Vec<f64>> {
        self.vertices()
            .into_iter()
            .map(|p| p.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect())
            .collect()
    }
}

/// 𝒯_n = M⁻ⁿ(𝒯_0 + 𝒟 + M𝒟 + ⋯ + M^{n−1}𝒟) as |𝒟|ⁿ cells M⁻ⁿ([0,1]^d + s).
#[derive(Clone, Debug)]
pub struct TilePatch<Z: LatticeScalar> {
    level: u32,
    inverse_power: RatMatrix,
    offsets: Vec<IntVector<Z>>,
}

impl<Z: LatticeScalar> TilePatch<Z> {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    /// The integer digit sums s ∈ 𝒟 + M𝒟 + ⋯ + M^{n−1}𝒟.
    pub fn offsets(&self) -> &[IntVector<Z>] {
        &self.offsets
    }

    pub fn cell(&self, k: usize) -> Parallelotope {
        let dim = self.inverse_power.dim();
        Parallelotope {
            base: self.inverse_power.mul_vec(&self.offsets[k].to_rational()),
            edges: (0..dim).map(|c| self.inverse_power.column(c)).collect(),
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = Parallelotope> + '_ {
        (0..self.len()).map(|k| self.cell(k))
    }

    /// Every cell has volume |det M|⁻ⁿ.
    pub fn cell_volume(&self) -> BigRational {
        self.inverse_power.det().abs()
    }
}

pub fn approximate_tile<Z: LatticeScalar>(
    t: &TileSystem<Z>,
    level: u32,
    max_cells: usize,
) -> Result<TilePatch<Z>, TileError> {
    let base = t.digits().len();
    let cells = (0..level).try_fold(1usize, |acc, _| acc.checked_mul(base));
    match cells {
        Some(c) if c <= max_cells => {}
        _ => {
            let exact = num_bigint::BigInt::from(base).pow(level);
            return Err(TileError::PatchTooLarge { cells: exact.to_string(), cap: max_cells });
        }
    }
    let mut offsets = vec![IntVector::zeros(t.dim())];
    let mut scale = crate::exactmath::IntMatrix::identity(t.dim());
    for _ in 0..level {
        let shifted: Vec<IntVector<Z>> = t.digits().iter().map(|d| scale.mul_vec(d)).collect();
        offsets = offsets.iter().flat_map(|s| shifted.iter().map(move |d| s + d)).collect();
        scale = scale.mul(t.matrix());
    }
    let inv = t.solver().inverse();
    let mut inverse_power = RatMatrix::identity(t.dim());
    for _ in 0..level {
        inverse_power = inverse_power.mul(&inv);
    }
    Ok(TilePatch { level, inverse_power, offsets })
}
