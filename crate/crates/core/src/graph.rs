//! Finite labelled digraphs with a canonical (sorted) node and edge order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Debug;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge<N, L> {
    pub src: N,
    pub label: L,
    pub dst: N,
}

/// Node set plus labelled edge set. Edges are kept sorted by (src, label, dst),
/// which is the canonical output order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph<N: Ord, L: Ord> {
    nodes: BTreeSet<N>,
    edges: BTreeSet<Edge<N, L>>,
}

impl<N: Ord + Clone + Debug, L: Ord + Clone + Debug> Default for LabeledGraph<N, L> {
    fn default() -> Self {
        LabeledGraph { nodes: BTreeSet::new(), edges: BTreeSet::new() }
    }
}

impl<N: Ord + Clone + Debug, L: Ord + Clone + Debug> LabeledGraph<N, L> {
    /// Panics if an edge endpoint is not a node.
    pub fn new(nodes: BTreeSet<N>, edges: impl IntoIterator<Item = Edge<N, L>>) -> Self {
        let edges: BTreeSet<_> = edges.into_iter().collect();
        for e in &edges {
            assert!(nodes.contains(&e.src) && nodes.contains(&e.dst), "dangling edge {e:?}");
        }
        LabeledGraph { nodes, edges }
    }

    pub fn nodes(&self) -> &BTreeSet<N> {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<Edge<N, L>> {
        &self.edges
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, node: &N) -> bool {
        self.nodes.contains(node)
    }

    pub fn out_edges<'a>(&'a self, node: &'a N) -> impl Iterator<Item = &'a Edge<N, L>> + 'a {
        self.edges.iter().skip_while(move |e| &e.src < node).take_while(move |e| &e.src == node)
    }

    /// Subgraph induced on the nodes satisfying `keep`.
    pub fn induced(&self, keep: impl Fn(&N) -> bool) -> Self {
        let nodes: BTreeSet<N> = self.nodes.iter().filter(|n| keep(n)).cloned().collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| nodes.contains(&e.src) && nodes.contains(&e.dst))
            .cloned()
            .collect();
        LabeledGraph { nodes, edges }
    }

    pub fn without(&self, node: &N) -> Self {
        self.induced(|n| n != node)
    }

    /// Largest subgraph in which every node has an outgoing edge.
    pub fn red(&self) -> Self {
        let kept = red_nodes(&self.nodes, self.edges.iter().map(|e| (&e.src, &e.dst)));
        self.induced(|n| kept.contains(n))
    }

    /// Subgraph induced on the nodes from which some cycle can be reached.
    /// For a finite graph this is the same node set as [`red`](Self::red).
    pub fn trim_to_cycles(&self) -> Self {
        let kept = reaches_cycle(&self.nodes, self.edges.iter().map(|e| (&e.src, &e.dst)));
        self.induced(|n| kept.contains(n))
    }

    pub fn is_subgraph_of(&self, other: &Self) -> bool {
        self.nodes.is_subset(&other.nodes) && self.edges.is_subset(&other.edges)
    }

    pub fn map<M: Ord + Clone + Debug, K: Ord + Clone + Debug>(
        &self,
        node: impl Fn(&N) -> M,
        label: impl Fn(&L) -> K,
    ) -> LabeledGraph<M, K> {
        LabeledGraph {
            nodes: self.nodes.iter().map(&node).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge { src: node(&e.src), label: label(&e.label), dst: node(&e.dst) })
                .collect(),
        }
    }
}

/// Iteratively deletes nodes of out-degree zero.
pub fn red_nodes<'a, N: Ord + Clone + 'a>(
    nodes: &BTreeSet<N>,
    edges: impl Iterator<Item = (&'a N, &'a N)>,
) -> BTreeSet<N> {
    let mut out_degree: BTreeMap<&N, usize> = nodes.iter().map(|n| (n, 0)).collect();
    let mut preds: BTreeMap<&N, Vec<&N>> = BTreeMap::new();
    for (s, d) in edges {
        *out_degree.get_mut(s).expect("edge source is a node") += 1;
        preds.entry(d).or_default().push(s);
    }
    let mut queue: VecDeque<&N> = out_degree.iter().filter(|(_, &k)| k == 0).map(|(n, _)| *n).collect();
    let mut removed: BTreeSet<&N> = queue.iter().copied().collect();
    while let Some(n) = queue.pop_front() {
        for p in preds.get(n).into_iter().flatten() {
            let k = out_degree.get_mut(p).expect("predecessor is a node");
            *k -= 1;
            if *k == 0 && removed.insert(p) {
                queue.push_back(p);
            }
        }
    }
    nodes.iter().filter(|n| !removed.contains(n)).cloned().collect()
}

/// Nodes with a path to a nontrivial strongly connected component or a
/// self-loop, via SCC condensation and reverse reachability.
pub fn reaches_cycle<'a, N: Ord + Clone + 'a>(
    nodes: &BTreeSet<N>,
    edges: impl Iterator<Item = (&'a N, &'a N)>,
) -> BTreeSet<N> {
    let mut g: DiGraph<(), ()> = DiGraph::with_capacity(nodes.len(), 0);
    let index: BTreeMap<&N, NodeIndex> = nodes.iter().map(|n| (n, g.add_node(()))).collect();
    let mut self_loop = vec![false; nodes.len()];
    for (s, d) in edges {
        let (a, b) = (index[s], index[d]);
        if a == b {
            self_loop[a.index()] = true;
        }
        g.update_edge(a, b, ());
    }
    let mut good = vec![false; nodes.len()];
    let mut stack = Vec::new();
    for scc in tarjan_scc(&g) {
        if scc.len() > 1 || self_loop[scc[0].index()] {
            for n in scc {
                good[n.index()] = true;
                stack.push(n);
            }
        }
    }
    while let Some(n) = stack.pop() {
        for p in g.neighbors_directed(n, petgraph::Direction::Incoming) {
            if !good[p.index()] {
                good[p.index()] = true;
                stack.push(p);
            }
        }
    }
    index.into_iter().filter(|(_, i)| good[i.index()]).map(|(n, _)| n.clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type G = LabeledGraph<u8, ()>;

    fn graph(nodes: &[u8], edges: &[(u8, u8)]) -> G {
        G::new(nodes.iter().copied().collect(), edges.iter().map(|&(src, dst)| Edge { src, label: (), dst }))
    }

    #[test]
    fn red_examples() {
        assert!(graph(&[0], &[]).red().is_empty());
        let looped = graph(&[0], &[(0, 0)]);
        assert_eq!(looped.red(), looped);
        let chain = graph(&[0, 1, 2], &[(0, 1), (1, 2), (2, 2)]);
        assert_eq!(chain.red(), chain);
        assert!(graph(&[0, 1, 2], &[(0, 1), (1, 2)]).red().is_empty());
    }

    fn arbitrary_graph() -> impl Strategy<Value = G> {
        prop::collection::vec((0u8..12, 0u8..12), 0..30).prop_map(|edges| {
            let mut nodes: Vec<u8> = (0..12).collect();
            nodes.retain(|n| *n < 12);
            graph(&nodes, &edges)
        })
    }

    proptest! {
        #[test]
        fn red_is_idempotent_and_shrinks(g in arbitrary_graph()) {
            let r = g.red();
            prop_assert_eq!(r.red(), r.clone());
            prop_assert!(r.is_subgraph_of(&g));
            for n in r.nodes() {
                prop_assert!(r.out_edges(n).next().is_some());
            }
        }

        #[test]
        fn red_agrees_with_cycle_trimming(g in arbitrary_graph()) {
            prop_assert_eq!(g.red(), g.trim_to_cycles());
        }
    }
}
