use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{RauzyGraphError, SignedTriple};
use crate::exactmath::{IntVector, LatticeScalar};
use crate::stepped::{PisotSystem, Projector};

/// Relative slack applied to every floating-point bound below. The inputs are
/// eigenvectors accurate to ~1e-15 and a few hundred multiply-adds, so 1e-6
/// over-approximates the accumulated error by many orders of magnitude.
const SLACK: f64 = 1e-6;

/// Region holding every node of Ĝ_B.
///
/// Along an infinite walk x = 𝐡π(x′) − π(𝐥(q₁) − 𝐥(p₁)), so
/// ‖π(x)‖ ≤ 2·max‖π𝐥(p)‖·Σ_{k≥0}‖𝐡ᵏ‖. The series is bounded with Frobenius
/// norms of powers of the matrix of 𝐡 in an orthonormal basis of v^⊥. The
/// slab |⟨x,v⟩| < max v_i then bounds x itself.
#[derive(Clone, Debug)]
pub struct BoundaryBox {
    pub projector: Projector<f64>,
    /// Upper bound for ‖π(x)‖₂.
    pub pi_radius: f64,
    /// max_i ⟨e_i, v⟩.
    pub slab: f64,
    /// Upper bound for ‖x‖∞.
    pub radius: i64,
}

impl BoundaryBox {
    pub fn new<Z: LatticeScalar>(sys: &PisotSystem<Z>) -> Self {
        let projector = Projector::<f64>::new(sys, 96);
        let h = projector.contraction_matrix().to_vec();
        let series = series_bound(&h);
        let longest = sys
            .edges()
            .map(|(_, l)| norm(&projector.project_lattice(l)))
            .fold(0.0, f64::max);
        let pi_radius = 2.0 * longest * series * (1.0 + SLACK) + SLACK;
        let slab = projector.v().iter().copied().fold(0.0, f64::max);
        let uv: f64 = projector.u().iter().zip(projector.v()).map(|(a, b)| a * b).sum();
        let along = slab / uv * norm(projector.u());
        let radius = ((pi_radius + along) * (1.0 + SLACK)).ceil() as i64;
        BoundaryBox { projector, pi_radius, slab, radius }
    }

    /// Every [i, x, j] ∈ ±(𝒜×H_σ), x ≠ 0 or i ≠ j, with ‖π(x)‖ ≤ `pi_radius`.
    pub fn candidates<Z: LatticeScalar>(
        &self,
        sys: &PisotSystem<Z>,
        cap: usize,
    ) -> Result<BTreeSet<SignedTriple<Z>>, RauzyGraphError> {
        let d = sys.dim();
        let r = self.radius;
        let too_large = RauzyGraphError::CandidateBoxTooLarge { radius: r, cap };
        let side = usize::try_from(2 * r + 1).map_err(|_| too_large.clone())?;
        let column = (2.0 * self.slab).ceil() as usize + 3;
        let count = (1..d).try_fold(column, |acc, _| acc.checked_mul(side)).ok_or(too_large.clone())?;
        if count > cap {
            return Err(too_large);
        }
        let mut heads: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 1..d {
            heads = heads.into_iter().flat_map(|p| (-r..=r).map(move |c| [p.as_slice(), &[c]].concat())).collect();
        }
        let v = self.projector.v();
        let limit = self.pi_radius * (1.0 + SLACK);
        let found: Vec<SignedTriple<Z>> = heads
            .par_iter()
            .flat_map_iter(|head| {
                // v_d = 1, so the last coordinate is pinned by the slab
                let s: f64 = head.iter().zip(v).map(|(&a, b)| a as f64 * b).sum();
                let lo = (-self.slab - s).floor() as i64 - 1;
                let hi = (self.slab - s).ceil() as i64 + 1;
                let mut out = Vec::new();
                for last in lo..=hi {
                    let coords = [head.as_slice(), &[last]].concat();
                    let x = IntVector::<Z>::from_i64(&coords);
                    if norm(&self.projector.project_lattice(&x)) > limit {
                        continue;
                    }
                    for i in sys.letters() {
                        for j in sys.letters() {
                            let t = SignedTriple::new(i, x.clone(), j);
                            if sys.in_signed_h(&t) {
                                out.push(t);
                            }
                        }
                    }
                }
                out
            })
            .collect();
        Ok(found.into_iter().collect())
    }
}

/// ‖x‖∞ bound of the boundary region.
pub fn boundary_radius<Z: LatticeScalar>(sys: &PisotSystem<Z>) -> i64 {
    BoundaryBox::new(sys).radius
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|a| a * a).sum::<f64>().sqrt()
}

fn frobenius(a: &[Vec<f64>]) -> f64 {
    a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..n).map(|c| row.iter().zip(b).map(|(x, r)| x * r[c]).sum()).collect()).collect()
}

/// Σ_{k≥0}‖Hᵏ‖ ≤ (Σ_{k<K}‖Hᵏ‖_F) / (1 − ‖Hᴷ‖_F) for the first K with ‖Hᴷ‖_F ≤ 1/2.
fn series_bound(h: &[Vec<f64>]) -> f64 {
    let n = h.len();
    let mut power: Vec<Vec<f64>> = (0..n).map(|r| (0..n).map(|c| if r == c { 1.0 } else { 0.0 }).collect()).collect();
    // ‖H⁰‖ = 1 in the operator norm
    let mut partial = 1.0;
    loop {
        power = mat_mul(&power, h);
        let f = frobenius(&power);
        if f <= 0.5 {
            return partial / (1.0 - f);
        }
        partial += f;
    }
}
