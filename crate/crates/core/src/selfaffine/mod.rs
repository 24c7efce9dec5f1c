//! Self-affine tiles 𝒯 = ⋃ M⁻¹(𝒯 + d) with a standard digit set: the graphs
//! Γ_A, contact sets, Algorithm 1 and tile approximations.

mod approx;
mod neighbors;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::exactmath::{IntMatrix, IntVector, IntegerSolver, LatticeScalar, MathError, RatPoly};
use crate::graph::LabeledGraph;

pub use approx::{approximate_tile, Parallelotope, TilePatch};
pub use neighbors::{
    algorithm1, algorithm1_with_cap, cdeg, contact_set, gamma_edges, minkowski_sum, naive_bound, naive_neighbors, r_corona,
    ContactRun, NeighborRun, DEFAULT_ITERATION_CAP,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TileError {
    #[error("digit {index} has dimension {found}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("matrix is not expanding")]
    NotExpanding,
    #[error("expected |det M| = {expected} digits, found {found}")]
    DigitCount { expected: String, found: usize },
    #[error("digits {0} and {1} are congruent modulo M")]
    CongruentDigits(usize, usize),
    #[error("basis is not a lattice basis (|det| = {0})")]
    NotALatticeBasis(String),
    #[error("no fixpoint after {0} iterations")]
    IterationLimitExceeded(usize),
    #[error("no decomposition found within radius {0}")]
    SearchLimitExceeded(u64),
    #[error("{cells} cells exceed the cap of {cap}")]
    PatchTooLarge { cells: String, cap: usize },
    #[error("candidate box of radius {radius} holds more than {cap} points")]
    CandidateBoxTooLarge { radius: String, cap: usize },
    #[error(transparent)]
    Math(#[from] MathError),
}

/// Label `d|d′` of an edge of Γ_A.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DigitPair<Z> {
    pub d: IntVector<Z>,
    pub dp: IntVector<Z>,
}

/// Γ_A: nodes in ℤ^d, edge m → m′ labelled d|d′ iff m′ = Mm + d′ − d.
pub type LatticeGraph<Z> = LabeledGraph<IntVector<Z>, DigitPair<Z>>;

/// Expanding integer matrix with a complete residue system of digits.
#[derive(Clone, Debug)]
pub struct TileSystem<Z: LatticeScalar> {
    matrix: IntMatrix<Z>,
    digits: Vec<IntVector<Z>>,
    solver: IntegerSolver<Z>,
}

impl<Z: LatticeScalar> TileSystem<Z> {
    pub fn new(matrix: IntMatrix<Z>, digits: Vec<IntVector<Z>>) -> Result<Self, TileError> {
        let dim = matrix.dim();
        for (index, d) in digits.iter().enumerate() {
            if d.dim() != dim {
                return Err(TileError::DimensionMismatch { index, expected: dim, found: d.dim() });
            }
        }
        let charpoly = RatPoly::from_bigints(&matrix.charpoly());
        if charpoly.roots_outside_unit_disk() != Some(true) {
            return Err(TileError::NotExpanding);
        }
        let solver = IntegerSolver::new(&matrix)?;
        let det = solver.det().abs();
        if det.to_big() != digits.len().into() {
            return Err(TileError::DigitCount { expected: det.to_string(), found: digits.len() });
        }
        for i in 0..digits.len() {
            for j in i + 1..digits.len() {
                if solver.solve(&(&digits[i] - &digits[j])).is_some() {
                    return Err(TileError::CongruentDigits(i, j));
                }
            }
        }
        Ok(TileSystem { matrix, digits, solver })
    }

    pub fn from_i64(rows: &[Vec<i64>], digits: &[Vec<i64>]) -> Result<Self, TileError> {
        let matrix = IntMatrix::from_i64_rows(rows)?;
        Self::new(matrix, digits.iter().map(|d| IntVector::from_i64(d)).collect())
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &IntMatrix<Z> {
        &self.matrix
    }

    pub fn digits(&self) -> &[IntVector<Z>] {
        &self.digits
    }

    pub fn solver(&self) -> &IntegerSolver<Z> {
        &self.solver
    }

    /// All pairs (d, d′) with their difference d′ − d.
    pub(crate) fn digit_differences(&self) -> Vec<(DigitPair<Z>, IntVector<Z>)> {
        let mut out = Vec::with_capacity(self.digits.len() * self.digits.len());
        for d in &self.digits {
            for dp in &self.digits {
                out.push((DigitPair { d: d.clone(), dp: dp.clone() }, dp - d));
            }
        }
        out
    }

    /// The distinct differences d′ − d.
    pub(crate) fn difference_set(&self) -> BTreeSet<IntVector<Z>> {
        self.digit_differences().into_iter().map(|(_, e)| e).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn validation() {
        let fig = |digits: &[Vec<i64>]| TileSystem::<BigInt>::from_i64(&[vec![2, -1], vec![1, 2]], digits);
        let good: Vec<Vec<i64>> = (0..5).map(|k| vec![k, 0]).collect();
        assert!(fig(&good).is_ok());
        assert!(matches!(fig(&good[..4]), Err(TileError::DigitCount { .. })));
        let mut congruent = good.clone();
        congruent[4] = vec![5, 0];
        assert_eq!(fig(&congruent).unwrap_err(), TileError::CongruentDigits(0, 4));
        let not_expanding = TileSystem::<BigInt>::from_i64(&[vec![1, 1], vec![0, 2]], &[vec![0, 0], vec![0, 1]]);
        assert_eq!(not_expanding.unwrap_err(), TileError::NotExpanding);
        let shear = TileSystem::<i64>::from_i64(&[vec![2, 1], vec![0, 2]], &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert!(shear.is_ok());
    }
}
