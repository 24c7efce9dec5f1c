//! ±C-connections between faces, the C-corona of a simple graph and the
//! fixpoint iteration A[p] = Red(C-Corona(A[p−1])) that grows the contact graph
//! into the boundary graph.

use std::collections::{BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use thiserror::Error;

use crate::exactmath::LatticeScalar;
use crate::rauzygraphs::{contact_graph, induced_simple, RauzyGraphError, SignedTriple, SimpleGraph};
use crate::stepped::{Face, PisotSystem};
use crate::substitution::Letter;

pub const DEFAULT_ITERATION_CAP: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoronaError {
    #[error("no fixpoint after {0} iterations")]
    IterationLimitExceeded(usize),
    #[error("no chain of connections found within {0} steps")]
    SearchLimitExceeded(u64),
    #[error(transparent)]
    Graph(#[from] RauzyGraphError),
}

/// ±C ∪ {[i, 0, i]}, indexed by the first letter.
#[derive(Clone, Debug)]
pub struct ConnectionSet<Z: LatticeScalar> {
    all: BTreeSet<SignedTriple<Z>>,
    by_first: HashMap<Letter, Vec<SignedTriple<Z>>>,
}

impl<Z: LatticeScalar> ConnectionSet<Z> {
    /// `contact` is the node set of Ĝ_C, already closed under negation.
    pub fn new(contact: &BTreeSet<SignedTriple<Z>>, dim: usize) -> Self {
        let mut all: BTreeSet<SignedTriple<Z>> = contact.iter().flat_map(|t| [t.clone(), t.negate()]).collect();
        for k in 1..=dim as Letter {
            all.insert(SignedTriple::new(k, crate::exactmath::IntVector::zeros(dim), k));
        }
        let mut by_first: HashMap<Letter, Vec<SignedTriple<Z>>> = HashMap::new();
        for t in &all {
            by_first.entry(t.i).or_default().push(t.clone());
        }
        ConnectionSet { all, by_first }
    }

    pub fn contains(&self, t: &SignedTriple<Z>) -> bool {
        self.all.contains(t)
    }

    pub fn len(&self) -> usize {
        self.all.len()
    }

    pub fn is_empty(&self) -> bool {
        self.all.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SignedTriple<Z>> {
        self.all.iter()
    }

    pub fn starting_at(&self, letter: Letter) -> &[SignedTriple<Z>] {
        self.by_first.get(&letter).map_or(&[], Vec::as_slice)
    }
}

/// f ~¹ g: [i_f, x_g − x_f, i_g] ∈ ±C ∪ {[i, 0, i]}.
pub fn c_connected_one<Z: LatticeScalar>(f: &Face<Z>, g: &Face<Z>, c: &ConnectionSet<Z>) -> bool {
    c.contains(&SignedTriple::new(f.i, &g.x - &f.x, g.i))
}

/// Least q with [0, i] ~^q [m, j], by breadth-first search over faces of H_σ.
pub fn cdeg_rauzy<Z: LatticeScalar>(
    sys: &PisotSystem<Z>,
    t: &SignedTriple<Z>,
    c: &ConnectionSet<Z>,
    limit: u64,
) -> Result<u64, CoronaError> {
    let start = Face::origin(sys.dim(), t.i);
    let goal = Face::new(t.x.clone(), t.j);
    if start == goal {
        return Ok(0);
    }
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([(start, 0u64)]);
    while let Some((f, depth)) = queue.pop_front() {
        if depth >= limit {
            continue;
        }
        for step in c.starting_at(f.i) {
            let g = Face::new(&f.x + &step.x, step.j);
            if g == goal {
                return Ok(depth + 1);
            }
            if sys.in_h(&g) && seen.insert(g.clone()) {
                queue.push_back((g, depth + 1));
            }
        }
    }
    Err(CoronaError::SearchLimitExceeded(limit))
}

/// Nodes [i₁, y + δ, i₂] for [i₁, y, j] in G and [j, δ, i₂] ∈ ±C ∪ {[j, 0, j]},
/// with all simple ambient edges between them.
pub fn c_corona<Z: LatticeScalar>(sys: &PisotSystem<Z>, g: &SimpleGraph<Z>, c: &ConnectionSet<Z>) -> SimpleGraph<Z> {
    let sources: Vec<&SignedTriple<Z>> = g.nodes().iter().collect();
    let nodes: BTreeSet<SignedTriple<Z>> = sources
        .par_iter()
        .flat_map_iter(|t| {
            c.starting_at(t.j)
                .iter()
                .map(|step| SignedTriple::new(t.i, &t.x + &step.x, step.j))
                .filter(|n| sys.in_signed_h(n))
                .collect::<Vec<_>>()
        })
        .collect();
    induced_simple(sys, nodes)
}

#[derive(Clone, Debug)]
pub struct CoronaRun<Z: LatticeScalar> {
    /// Ĝ_B.
    pub graph: SimpleGraph<Z>,
    pub contact: SimpleGraph<Z>,
    /// The p at which A[p] = A[p−1].
    pub iterations: usize,
    /// |A[1]|, |A[2]|, …, |A[p]|.
    pub nodes_per_iteration: Vec<usize>,
}

impl<Z: LatticeScalar> CoronaRun<Z> {
    pub fn report_json(&self) -> serde_json::Value {
        serde_json::json!({
            "iterations": self.iterations,
            "nodes_per_iteration": self.nodes_per_iteration,
            "fixpoint": true,
        })
    }
}

pub fn algorithm2<Z: LatticeScalar>(sys: &PisotSystem<Z>) -> Result<CoronaRun<Z>, CoronaError> {
    let contact = contact_graph(sys)?.graph;
    algorithm2_from(sys, &contact, DEFAULT_ITERATION_CAP)
}

/// A[1] = Ĝ_C, A[p] = Red(C-Corona(A[p−1])) until two consecutive graphs agree.
pub fn algorithm2_from<Z: LatticeScalar>(
    sys: &PisotSystem<Z>,
    contact: &SimpleGraph<Z>,
    cap: usize,
) -> Result<CoronaRun<Z>, CoronaError> {
    let c = ConnectionSet::new(contact.nodes(), sys.dim());
    let mut current = contact.clone();
    let mut sizes = vec![current.node_count()];
    let mut p = 1;
    loop {
        p += 1;
        if p > cap {
            return Err(CoronaError::IterationLimitExceeded(cap));
        }
        let next = c_corona(sys, &current, &c).red();
        sizes.push(next.node_count());
        if next == current {
            break;
        }
        current = next;
    }
    Ok(CoronaRun { graph: current, contact: contact.clone(), iterations: p, nodes_per_iteration: sizes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rauzygraphs::{from_simple, naive_boundary_graph, DEFAULT_CANDIDATE_CAP};
    use crate::substitution::Substitution;
    use num_bigint::BigInt;

    fn system(images: &[&str]) -> PisotSystem<BigInt> {
        PisotSystem::new(&Substitution::from_strs(images).unwrap()).unwrap()
    }

    #[test]
    fn sigma1_fixpoint_is_immediate() {
        let s = system(&["1112", "113", "1"]);
        let run = algorithm2(&s).unwrap();
        assert_eq!(run.iterations, 2);
        assert_eq!(run.graph, run.contact);
        assert_eq!(run.graph, naive_boundary_graph(&s, DEFAULT_CANDIDATE_CAP).unwrap());
    }

    #[test]
    fn sigma2_grows_to_the_oracle() {
        let s = system(&["112", "1113", "1"]);
        let run = algorithm2(&s).unwrap();
        assert_eq!(run.iterations, 3);
        assert_eq!(from_simple(&s, &run.graph).unwrap().node_count(), 25);
        assert_eq!(run.graph, naive_boundary_graph(&s, DEFAULT_CANDIDATE_CAP).unwrap());
    }

    #[test]
    fn connections_and_degrees() {
        let s = system(&["1112", "113", "1"]);
        let run = algorithm2(&s).unwrap();
        let c = ConnectionSet::new(run.contact.nodes(), 3);
        let f = Face::origin(3, 1);
        let g = Face::new(crate::exactmath::IntVector::from_i64(&[0, 1, 0]), 1);
        assert!(c_connected_one(&f, &f, &c));
        assert!(c_connected_one(&f, &g, &c));
        assert!(!c_connected_one(&f, &Face::new(crate::exactmath::IntVector::from_i64(&[9, 9, 9]), 1), &c));
        for t in run.contact.nodes() {
            let norm = if s.in_h(&Face::new(t.x.clone(), t.j)) { t.clone() } else { t.negate() };
            assert_eq!(cdeg_rauzy(&s, &norm, &c, 4).unwrap(), 1);
        }
    }
}
