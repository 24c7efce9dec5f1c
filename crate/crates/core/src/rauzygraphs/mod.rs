//! Graphs on signed triples [i, x, j] describing intersections
//! ℛ(i) ∩ (ℛ(j) + π(x)): the simple ambient graph, the boundary graph (by
//! exhaustive search) and the contact graph (by backward closure), plus the
//! conversion to and from the 𝔇-normalized form.

mod bounds;

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;
use thiserror::Error;

use crate::exactmath::{IntVector, LatticeScalar, Sign};
use crate::graph::{Edge, LabeledGraph};
use crate::stepped::{PisotSystem, SteppedError};

pub use crate::stepped::SignedTriple;
pub use bounds::{boundary_radius, BoundaryBox};

pub const DEFAULT_CLOSURE_CAP: usize = 1 << 20;
pub const DEFAULT_CANDIDATE_CAP: usize = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RauzyGraphError {
    #[error("backward closure exceeded {0} nodes")]
    ClosureLimitExceeded(usize),
    #[error("candidate region holds more than {cap} points (radius {radius})")]
    CandidateBoxTooLarge { radius: i64, cap: usize },
    #[error("neither {0} nor its negation lies in 𝔇")]
    MalformedTriple(String),
    #[error(transparent)]
    Stepped(#[from] SteppedError),
}

/// 𝐥(p₁)|𝐥(q₁) on an edge of the simple ambient graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrefixPair<Z> {
    pub p: IntVector<Z>,
    pub q: IntVector<Z>,
}

impl<Z: LatticeScalar> PrefixPair<Z> {
    pub fn swapped(&self) -> Self {
        PrefixPair { p: self.q.clone(), q: self.p.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeType {
    /// M x′ = x + 𝐥(q₁) − 𝐥(p₁).
    One,
    /// −M x′ = x + 𝐥(q₁) − 𝐥(p₁).
    Two,
}

impl EdgeType {
    pub fn as_u8(self) -> u8 {
        match self {
            EdgeType::One => 1,
            EdgeType::Two => 2,
        }
    }
}

/// Edge label of the 𝔇-normalized ambient graph. `pair` keeps 𝐥(p₁)|𝐥(q₁) as
/// used in the congruence; `swapped` records whether the displayed label η is
/// the reversed pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypedLabel<Z> {
    pub kind: EdgeType,
    pub pair: PrefixPair<Z>,
    pub swapped: bool,
}

impl<Z: LatticeScalar> TypedLabel<Z> {
    /// η: 𝐥(p₁)|𝐥(q₁) if ⟨𝐥(p₁),v⟩ ≤ ⟨𝐥(q₁)+x,v⟩, else 𝐥(q₁)|𝐥(p₁).
    pub fn eta(&self) -> PrefixPair<Z> {
        if self.swapped {
            self.pair.swapped()
        } else {
            self.pair.clone()
        }
    }
}

pub type SimpleGraph<Z> = LabeledGraph<SignedTriple<Z>, PrefixPair<Z>>;
pub type NormalizedGraph<Z> = LabeledGraph<SignedTriple<Z>, TypedLabel<Z>>;

/// All edges of the simple ambient graph leaving `t`.
pub fn simple_successors<Z: LatticeScalar>(
    sys: &PisotSystem<Z>,
    t: &SignedTriple<Z>,
) -> Vec<Edge<SignedTriple<Z>, PrefixPair<Z>>> {
    let mut out = Vec::new();
    for (e1, lp) in sys.edges_from(t.i) {
        for (e2, lq) in sys.edges_from(t.j) {
            let rhs = &(&t.x + lq) - lp;
            let Some(x) = sys.solver().solve(&rhs) else { continue };
            let dst = SignedTriple::new(e1.to, x, e2.to);
            if sys.in_signed_h(&dst) {
                out.push(Edge { src: t.clone(), label: PrefixPair { p: lp.clone(), q: lq.clone() }, dst });
            }
        }
    }
    out
}

/// All edges of the simple ambient graph entering `t`.
pub fn simple_predecessors<Z: LatticeScalar>(
    sys: &PisotSystem<Z>,
    t: &SignedTriple<Z>,
) -> Vec<Edge<SignedTriple<Z>, PrefixPair<Z>>> {
    let mx = sys.incidence().mul_vec(&t.x);
    let mut out = Vec::new();
    for (e1, lp) in sys.edges().filter(|(e, _)| e.to == t.i) {
        for (e2, lq) in sys.edges().filter(|(e, _)| e.to == t.j) {
            let x = &(&mx - lq) + lp;
            let src = SignedTriple::new(e1.from, x, e2.from);
            if sys.in_signed_h(&src) {
                out.push(Edge { src, label: PrefixPair { p: lp.clone(), q: lq.clone() }, dst: t.clone() });
            }
        }
    }
    out
}

/// M x′ = x + 𝐥(q₁) − 𝐥(p₁) with σ(i′) = p₁ i s₁ and σ(j′) = q₁ j t₁.
pub fn check_simple_edge<Z: LatticeScalar>(sys: &PisotSystem<Z>, e: &Edge<SignedTriple<Z>, PrefixPair<Z>>) -> bool {
    let has = |from, to, l: &IntVector<Z>| sys.edges().any(|(pe, lp)| pe.from == from && pe.to == to && lp == l);
    has(e.src.i, e.dst.i, &e.label.p)
        && has(e.src.j, e.dst.j, &e.label.q)
        && sys.incidence().mul_vec(&e.dst.x) == &(&e.src.x + &e.label.q) - &e.label.p
}

/// Simple ambient graph induced on `nodes`.
pub fn induced_simple<Z: LatticeScalar>(sys: &PisotSystem<Z>, nodes: BTreeSet<SignedTriple<Z>>) -> SimpleGraph<Z> {
    let list: Vec<&SignedTriple<Z>> = nodes.iter().collect();
    let edges: Vec<_> = list
        .par_iter()
        .flat_map_iter(|t| simple_successors(sys, t).into_iter().filter(|e| nodes.contains(&e.dst)))
        .collect();
    LabeledGraph::new(nodes, edges)
}

/// ±𝔇_cont.
pub fn signed_dcont<Z: LatticeScalar>(sys: &PisotSystem<Z>) -> BTreeSet<SignedTriple<Z>> {
    sys.build_dcont().into_iter().flat_map(|t| [t.negate(), t]).collect()
}

#[derive(Clone, Debug)]
pub struct ContactGraphRun<Z: LatticeScalar> {
    /// Ĝ_C.
    pub graph: SimpleGraph<Z>,
    /// Ĝ_P: every node has a walk into ±𝔇_cont.
    pub pre_contact: SimpleGraph<Z>,
    pub seeds: BTreeSet<SignedTriple<Z>>,
    /// Number of backward layers added before the closure stabilised.
    pub layers: usize,
}

pub fn contact_graph<Z: LatticeScalar>(sys: &PisotSystem<Z>) -> Result<ContactGraphRun<Z>, RauzyGraphError> {
    contact_graph_with_cap(sys, DEFAULT_CLOSURE_CAP)
}

/// Starting from ±𝔇_cont, adds every node with an edge into the current set
/// until nothing changes, then applies Red.
pub fn contact_graph_with_cap<Z: LatticeScalar>(
    sys: &PisotSystem<Z>,
    cap: usize,
) -> Result<ContactGraphRun<Z>, RauzyGraphError> {
    let seeds = signed_dcont(sys);
    let mut reached = seeds.clone();
    let mut frontier: VecDeque<SignedTriple<Z>> = seeds.iter().cloned().collect();
    let mut layers = 0;
    while !frontier.is_empty() {
        let layer: Vec<SignedTriple<Z>> = frontier.drain(..).collect();
        let found: Vec<SignedTriple<Z>> =
            layer.par_iter().flat_map_iter(|t| simple_predecessors(sys, t).into_iter().map(|e| e.src)).collect();
        for t in found {
            if reached.insert(t.clone()) {
                frontier.push_back(t);
            }
        }
        if reached.len() > cap {
            return Err(RauzyGraphError::ClosureLimitExceeded(cap));
        }
        if !frontier.is_empty() {
            layers += 1;
        }
    }
    let pre_contact = induced_simple(sys, reached);
    let graph = pre_contact.red();
    Ok(ContactGraphRun { graph, pre_contact, seeds, layers })
}

/// Oracle for Ĝ_B: the simple ambient graph on every candidate allowed by the
/// loop bound, reduced to the nodes that reach a cycle.
pub fn naive_boundary_graph<Z: LatticeScalar>(
    sys: &PisotSystem<Z>,
    max_candidates: usize,
) -> Result<SimpleGraph<Z>, RauzyGraphError> {
    let region = BoundaryBox::new(sys);
    let nodes = region.candidates(sys, max_candidates)?;
    Ok(induced_simple(sys, nodes).trim_to_cycles())
}

/// Canonical representative in 𝔇 of ±t.
pub fn normalize<Z: LatticeScalar>(sys: &PisotSystem<Z>, t: &SignedTriple<Z>) -> Result<SignedTriple<Z>, RauzyGraphError> {
    if sys.in_dfrak(t) {
        return Ok(t.clone());
    }
    let n = t.negate();
    if sys.in_dfrak(&n) {
        return Ok(n);
    }
    Err(RauzyGraphError::MalformedTriple(format!("{t:?}")))
}

/// Keeps the nodes lying in 𝔇; an edge to a node outside 𝔇 becomes a type 2
/// edge to its negation.
pub fn from_simple<Z: LatticeScalar>(
    sys: &PisotSystem<Z>,
    g: &SimpleGraph<Z>,
) -> Result<NormalizedGraph<Z>, RauzyGraphError> {
    let mut nodes = BTreeSet::new();
    for t in g.nodes() {
        nodes.insert(normalize(sys, t)?);
    }
    let mut edges = Vec::new();
    for e in g.edges().iter().filter(|e| sys.in_dfrak(&e.src)) {
        let (kind, dst) = if sys.in_dfrak(&e.dst) { (EdgeType::One, e.dst.clone()) } else { (EdgeType::Two, e.dst.negate()) };
        let lhs = &e.label.p - &e.src.x;
        let diff = &lhs - &e.label.q;
        // ⟨𝐥(p₁),v⟩ ≤ ⟨𝐥(q₁)+x,v⟩ ⟺ ⟨𝐥(p₁) − 𝐥(q₁) − x, v⟩ ≤ 0
        let swapped = sys.sign_dot(&diff) == Sign::Positive;
        edges.push(Edge { src: e.src.clone(), label: TypedLabel { kind, pair: e.label.clone(), swapped }, dst });
    }
    Ok(LabeledGraph::new(nodes, edges))
}

/// Each node t gives t and −t; a type 1 edge t → t′ gives t → t′ and
/// −t → −t′, a type 2 edge gives t → −t′ and −t → t′.
pub fn to_simple<Z: LatticeScalar>(g: &NormalizedGraph<Z>) -> SimpleGraph<Z> {
    let nodes: BTreeSet<_> = g.nodes().iter().flat_map(|t| [t.clone(), t.negate()]).collect();
    let edges = g.edges().iter().flat_map(|e| {
        let dst = match e.label.kind {
            EdgeType::One => e.dst.clone(),
            EdgeType::Two => e.dst.negate(),
        };
        [
            Edge { src: e.src.clone(), label: e.label.pair.clone(), dst: dst.clone() },
            Edge { src: e.src.negate(), label: e.label.pair.swapped(), dst: dst.negate() },
        ]
    });
    LabeledGraph::new(nodes, edges)
}

/// Number of nodes when [i, 0, j] and [j, 0, i] are counted once.
pub fn merged_node_count<Z: LatticeScalar>(g: &SimpleGraph<Z>) -> usize {
    g.nodes().iter().filter(|t| !t.x.is_zero() || t.i < t.j).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::Substitution;
    use num_bigint::BigInt;

    fn system(images: &[&str]) -> PisotSystem<BigInt> {
        PisotSystem::new(&Substitution::from_strs(images).unwrap()).unwrap()
    }

    #[test]
    fn sigma1_contact_graph() {
        let s = system(&["1112", "113", "1"]);
        let run = contact_graph(&s).unwrap();
        assert_eq!(run.graph.node_count(), 28);
        assert_eq!(merged_node_count(&run.graph), 26);
        let normalized = from_simple(&s, &run.graph).unwrap();
        assert_eq!(normalized.node_count(), 14);
        assert_eq!(to_simple(&normalized), run.graph);
        assert!(run.graph.edges().iter().all(|e| check_simple_edge(&s, e)));
        let boundary = naive_boundary_graph(&s, DEFAULT_CANDIDATE_CAP).unwrap();
        assert_eq!(boundary, run.graph);
    }

    #[test]
    fn sigma2_boundary_contains_contact() {
        let s = system(&["112", "1113", "1"]);
        let run = contact_graph(&s).unwrap();
        assert_eq!(from_simple(&s, &run.graph).unwrap().node_count(), 15);
        let boundary = naive_boundary_graph(&s, DEFAULT_CANDIDATE_CAP).unwrap();
        assert_eq!(boundary.node_count(), 50);
        assert!(run.graph.nodes().is_subset(boundary.nodes()));
    }

    #[test]
    fn predecessors_mirror_successors() {
        let s = system(&["1112", "113", "1"]);
        for t in signed_dcont(&s) {
            for e in simple_successors(&s, &t) {
                assert!(simple_predecessors(&s, &e.dst).contains(&e));
                let mirror = Edge { src: e.src.negate(), label: e.label.swapped(), dst: e.dst.negate() };
                assert!(simple_successors(&s, &mirror.src).contains(&mirror));
            }
        }
    }
}
