use std::collections::{BTreeSet, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::{LatticeGraph, TileError, TileSystem};
use crate::exactmath::{IntMatrix, IntVector, LatticeScalar};
use crate::graph::{Edge, LabeledGraph};

pub const DEFAULT_ITERATION_CAP: usize = 64;

/// Γ_A for a finite node set A, with every edge of Γ_{ℤ^d} between nodes of A.
pub fn gamma_edges<Z: LatticeScalar>(nodes: &BTreeSet<IntVector<Z>>, t: &TileSystem<Z>) -> LatticeGraph<Z> {
    let diffs = t.digit_differences();
    let sources: Vec<&IntVector<Z>> = nodes.iter().collect();
    let edges: Vec<_> = sources
        .par_iter()
        .flat_map_iter(|&m| {
            let image = t.matrix().mul_vec(m);
            diffs
                .iter()
                .filter_map(|(label, e)| {
                    let dst = &image + e;
                    nodes.contains(&dst).then(|| Edge { src: m.clone(), label: label.clone(), dst })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    LabeledGraph::new(nodes.clone(), edges)
}

#[derive(Clone, Debug)]
pub struct ContactRun<Z: LatticeScalar> {
    /// Γ_R.
    pub graph: LatticeGraph<Z>,
    /// R′, the stable set of the R_k iteration before reduction.
    pub unreduced: BTreeSet<IntVector<Z>>,
    /// Smallest k with R_k = R_{k+1}.
    pub stages: usize,
}

/// Contact graph Γ_R = Red(Γ_{R′}) from R_0 = {0, ±b_1, …, ±b_d}; the standard
/// basis when `basis` is `None`.
pub fn contact_set<Z: LatticeScalar>(
    t: &TileSystem<Z>,
    basis: Option<&[IntVector<Z>]>,
) -> Result<ContactRun<Z>, TileError> {
    let dim = t.dim();
    let basis: Vec<IntVector<Z>> = match basis {
        Some(b) => b.to_vec(),
        None => (0..dim).map(|k| IntVector::unit(dim, k)).collect(),
    };
    let bm = IntMatrix::from_columns(&basis)?;
    let det = bm.det();
    if !det.abs().is_one() {
        return Err(TileError::NotALatticeBasis(det.abs().to_string()));
    }
    let mut reached: BTreeSet<IntVector<Z>> = BTreeSet::new();
    reached.insert(IntVector::zeros(dim));
    for b in &basis {
        reached.insert(b.clone());
        reached.insert(-b);
    }
    let diffs = t.difference_set();
    let mut frontier: Vec<IntVector<Z>> = reached.iter().cloned().collect();
    let mut stages = 0;
    while !frontier.is_empty() {
        // y with M·y + d = y′ + d′, i.e. y = M⁻¹(y′ + d′ − d)
        let found: BTreeSet<IntVector<Z>> = frontier
            .iter()
            .flat_map(|y| diffs.iter().filter_map(move |e| t.solver().solve(&(y + e))))
            .collect();
        frontier = found.into_iter().filter(|y| reached.insert(y.clone())).collect();
        if !frontier.is_empty() {
            stages += 1;
        }
    }
    let graph = gamma_edges(&reached, t).red();
    Ok(ContactRun { graph, unreduced: reached, stages })
}

pub fn minkowski_sum<Z: LatticeScalar>(
    a: &BTreeSet<IntVector<Z>>,
    b: &BTreeSet<IntVector<Z>>,
) -> BTreeSet<IntVector<Z>> {
    a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect()
}

/// The R-corona Γ_{A+R} of Γ_A.
pub fn r_corona<Z: LatticeScalar>(
    g: &LatticeGraph<Z>,
    r: &BTreeSet<IntVector<Z>>,
    t: &TileSystem<Z>,
) -> LatticeGraph<Z> {
    gamma_edges(&minkowski_sum(g.nodes(), r), t)
}

#[derive(Clone, Debug)]
pub struct NeighborRun<Z: LatticeScalar> {
    /// Γ_S.
    pub graph: LatticeGraph<Z>,
    pub contact: LatticeGraph<Z>,
    /// The q at which Γ_{R_q} = Γ_{R_{q−1}}.
    pub iterations: usize,
    /// |R_1|, |R_2|, …, |R_q|.
    pub sizes: Vec<usize>,
}

pub fn algorithm1<Z: LatticeScalar>(t: &TileSystem<Z>) -> Result<NeighborRun<Z>, TileError> {
    let contact = contact_set(t, None)?.graph;
    algorithm1_with_cap(t, &contact, DEFAULT_ITERATION_CAP)
}

/// Γ_{R_1} = Γ_R, Γ_{R_q} = Red(Γ_{R_{q−1}+R}) until stable, then 0 is removed.
pub fn algorithm1_with_cap<Z: LatticeScalar>(
    t: &TileSystem<Z>,
    contact: &LatticeGraph<Z>,
    cap: usize,
) -> Result<NeighborRun<Z>, TileError> {
    let r = contact.nodes();
    let mut current = contact.clone();
    let mut sizes = vec![current.node_count()];
    let mut q = 1;
    loop {
        q += 1;
        if q > cap {
            return Err(TileError::IterationLimitExceeded(cap));
        }
        let next = r_corona(&current, r, t).red();
        sizes.push(next.node_count());
        if next == current {
            break;
        }
        current = next;
    }
    let zero = IntVector::zeros(t.dim());
    Ok(NeighborRun { graph: current.without(&zero), contact: contact.clone(), iterations: q, sizes })
}

/// Radius B such that every neighbor m satisfies ‖m‖∞ ≤ B.
///
/// A neighbor is a difference of two points of 𝒯, hence Σ_{k≥1} M⁻ᵏ(d_k − d′_k),
/// so ‖m‖∞ ≤ δ·Σ‖M⁻ᵏ‖∞ with δ = max‖d − d′‖∞. With K the first power having
/// ‖M⁻ᴷ‖∞ < 1, submultiplicativity gives Σ_{k≥1} ≤ (Σ_{k=1}^{K}‖M⁻ᵏ‖∞)/(1 − ‖M⁻ᴷ‖∞).
pub fn naive_bound<Z: LatticeScalar>(t: &TileSystem<Z>) -> BigInt {
    let inv = t.solver().inverse();
    let mut power = inv.clone();
    let mut partial = BigRational::zero();
    let tail = loop {
        let n = power.norm_inf();
        partial += &n;
        if n < BigRational::one() {
            break n;
        }
        power = power.mul(&inv);
    };
    let series = partial / (BigRational::one() - tail);
    let spread = t.difference_set().iter().map(|e| e.max_abs().to_big()).max().unwrap_or_default();
    (series * BigRational::from_integer(spread)).floor().to_integer()
}

/// Independent oracle for Γ_S: Γ on the whole candidate box, trimmed to the
/// nodes from which a cycle is reachable, with 0 removed.
pub fn naive_neighbors<Z: LatticeScalar>(t: &TileSystem<Z>, max_points: usize) -> Result<LatticeGraph<Z>, TileError> {
    let radius = naive_bound(t);
    let too_large = || TileError::CandidateBoxTooLarge { radius: radius.to_string(), cap: max_points };
    let side = radius.to_usize().ok_or_else(too_large)? * 2 + 1;
    let count = (0..t.dim()).try_fold(1usize, |acc, _| acc.checked_mul(side)).ok_or_else(too_large)?;
    if count > max_points {
        return Err(too_large());
    }
    let r = radius.to_i64().ok_or_else(too_large)?;
    let mut boxed: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..t.dim() {
        boxed = boxed.into_iter().flat_map(|p| (-r..=r).map(move |c| [p.as_slice(), &[c]].concat())).collect();
    }
    let nodes: BTreeSet<IntVector<Z>> = boxed.iter().map(|p| IntVector::from_i64(p)).collect();
    let g = gamma_edges(&nodes, t).trim_to_cycles();
    Ok(g.without(&IntVector::zeros(t.dim())))
}

/// Contact degree: the least q with m a sum of q elements of R, by breadth-first
/// search from 0 inside the box ‖·‖∞ ≤ `radius`.
pub fn cdeg<Z: LatticeScalar>(m: &IntVector<Z>, r: &BTreeSet<IntVector<Z>>, radius: u64) -> Result<u64, TileError> {
    let zero = IntVector::zeros(m.dim());
    if m == &zero {
        return Ok(0);
    }
    let limit = Z::from_u64(radius).ok_or(TileError::SearchLimitExceeded(radius))?;
    let mut seen: HashSet<IntVector<Z>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([(zero, 0u64)]);
    while let Some((x, depth)) = queue.pop_front() {
        for step in r {
            let y = &x + step;
            if &y == m {
                return Ok(depth + 1);
            }
            if y.max_abs() <= limit && seen.insert(y.clone()) {
                queue.push_back((y, depth + 1));
            }
        }
    }
    Err(TileError::SearchLimitExceeded(radius))
}
