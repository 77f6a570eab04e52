//! Simple undirected graphs on `0..n` stored as dense bitset adjacency rows.
//!
//! Rows are `ceil(n / 64)` words wide. The combinatorial kernels (canonical
//! labelling, enumeration) are meant for `n <= 64`; dense graphs themselves
//! are accepted up to [`DENSE_LIMIT`] vertices so that constructions of a few
//! hundred vertices can still be handed to the fan detector. Larger
//! multipartite constructions live in [`PartitionedGraph`].

mod bitset;
mod canon;
mod graph6;
mod partitioned;

pub use bitset::{iter_bits, BitIter, BitSet};
pub use canon::{canonical_form, canonical_labeling, CanonicalLabeling};
pub use partitioned::PartitionedGraph;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest vertex count accepted by the dense representation.
pub const DENSE_LIMIT: usize = 4096;

/// Vertex count handled by the exhaustive kernels (canonical forms,
/// enumeration).
pub const KERNEL_LIMIT: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n > DENSE_LIMIT {
            return Err(Error::TooLarge {
                n,
                limit: DENSE_LIMIT,
                what: "dense graphs",
            });
        }
        let words = bitset::words_for(n);
        Ok(Graph {
            n,
            words,
            bits: vec![0; n * words],
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v);
            }
        }
        Ok(g)
    }

    pub fn path(n: usize) -> Result<Self> {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "a cycle needs at least 3 vertices, got {n}"
            )));
        }
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// Builds a graph from an edge list. Self-loops are rejected; repeated
    /// edges collapse.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric predicate evaluated on pairs `u < v`.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    #[inline]
    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    /// Number of vertices.
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adjacency row of `v` as raw words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    pub fn neighbors(&self, v: usize) -> BitIter<'_> {
        iter_bits(self.row(v))
    }

    pub fn neighbor_set(&self, v: usize) -> BitSet {
        BitSet::from_words(self.row(v))
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Subgraph induced by `vertices`, relabelled `0..len` in the given order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph> {
        if let Some(&bad) = vertices.iter().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n: self.n });
        }
        let mut g = Graph::empty(vertices.len())?;
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if u != v && self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Same as [`Graph::induced_subgraph`] for a bitset of vertices.
    pub fn induced_by_set(&self, set: &BitSet) -> Graph {
        let vertices: Vec<usize> = set.iter().collect();
        self.induced_subgraph(&vertices)
            .expect("vertex set drawn from this graph")
    }

    /// Graph with vertex `v` deleted; later vertices shift down by one.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep).expect("indices in range")
    }

    /// Relabels so that old vertex `order[i]` becomes vertex `i`.
    pub fn permuted(&self, order: &[usize]) -> Graph {
        assert_eq!(order.len(), self.n, "permutation length");
        self.induced_subgraph(order).expect("permutation in range")
    }

    /// Adds one vertex joined to the given existing vertices.
    pub fn with_vertex(&self, neighbors: impl IntoIterator<Item = usize>) -> Result<Graph> {
        let mut g = Graph::empty(self.n + 1)?;
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        for u in neighbors {
            if u >= self.n {
                return Err(Error::VertexOutOfRange { vertex: u, n: self.n });
            }
            g.set_edge(u, self.n);
        }
        Ok(g)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let shift = self.n;
        let mut g = Graph::empty(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.set_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.set_edge(u + shift, v + shift);
        }
        Ok(g)
    }

    /// The join: disjoint union plus every pair between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        for u in 0..self.n {
            for v in 0..other.n {
                g.set_edge(u, self.n + v);
            }
        }
        Ok(g)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("same size");
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v);
                }
            }
        }
        g
    }

    /// Connected components, each sorted ascending, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = vec![start];
            while let Some(u) = stack.pop() {
                for w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Vertices with at least one neighbour, ascending.
    pub fn non_isolated(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.degree(v) > 0).collect()
    }

    /// Symmetry and irreflexivity of the stored relation.
    pub fn is_well_formed(&self) -> bool {
        (0..self.n).all(|u| !self.has_edge(u, u) && self.neighbors(u).all(|v| v < self.n && self.has_edge(v, u)))
    }

    pub fn to_graph6(&self) -> String {
        graph6::encode(self)
    }

    pub fn from_graph6(text: &str) -> Result<Graph> {
        graph6::decode(text)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

/// A partition of `0..n` into ordered, pairwise disjoint parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPartition {
    parts: Vec<Vec<usize>>,
}

impl VertexPartition {
    /// Validates that `parts` are disjoint and cover `0..n`. Parts are kept
    /// in the given order; vertices within a part are sorted.
    pub fn new(n: usize, mut parts: Vec<Vec<usize>>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        let mut seen = vec![false; n];
        for part in &mut parts {
            part.sort_unstable();
            for &v in part.iter() {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
        }
        Ok(VertexPartition { parts })
    }

    /// Consecutive blocks `[0, s0)`, `[s0, s0 + s1)`, ...
    pub fn from_sizes(sizes: &[usize]) -> Result<Self> {
        let mut start = 0;
        let parts = sizes
            .iter()
            .map(|&s| {
                let part: Vec<usize> = (start..start + s).collect();
                start += s;
                part
            })
            .collect();
        VertexPartition::new(start, parts)
    }

    /// Builds a partition from a part index per vertex.
    pub fn from_assignment(assignment: &[usize], parts: usize) -> Result<Self> {
        let mut out = vec![Vec::new(); parts];
        for (v, &p) in assignment.iter().enumerate() {
            if p >= parts {
                return Err(Error::InvalidPartition(format!(
                    "vertex {v} assigned to part {p} of {parts}"
                )));
            }
            out[p].push(v);
        }
        VertexPartition::new(assignment.len(), out)
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn n(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.parts.iter().map(Vec::len).collect()
    }

    /// Part index of every vertex.
    pub fn assignment(&self) -> Vec<usize> {
        let mut a = vec![0; self.n()];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                a[v] = i;
            }
        }
        a
    }

    /// Number of edges of `g` joining different parts.
    pub fn crossing_edges(&self, g: &Graph) -> usize {
        let a = self.assignment();
        g.edges().filter(|&(u, v)| a[u] != a[v]).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
        Graph::from_fn(n, |_, _| rng.gen_bool(p)).unwrap()
    }

    #[test]
    fn join_examples() {
        let star = Graph::complete(1).unwrap().join(&Graph::empty(3).unwrap()).unwrap();
        assert_eq!(star.degrees(), vec![3, 1, 1, 1]);
        assert_eq!(star.edge_count(), 3);
        let k3 = Graph::complete(2).unwrap().join(&Graph::complete(1).unwrap()).unwrap();
        assert_eq!(k3, Graph::complete(3).unwrap());
    }

    #[test]
    fn join_edge_count_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let (a, b) = (rng.gen_range(0..12), rng.gen_range(0..12));
            let g = random_graph(&mut rng, a, 0.4);
            let h = random_graph(&mut rng, b, 0.6);
            let j = g.join(&h).unwrap();
            assert_eq!(j.n(), g.n() + h.n());
            assert_eq!(j.edge_count(), g.edge_count() + h.edge_count() + g.n() * h.n());
            assert!(j.is_well_formed());
        }
    }

    #[test]
    fn join_beyond_dense_limit_fails() {
        let a = Graph::empty(DENSE_LIMIT).unwrap();
        let b = Graph::empty(1).unwrap();
        assert!(matches!(a.join(&b), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn induced_subgraph_examples() {
        let k5 = Graph::complete(5).unwrap();
        assert_eq!(k5.induced_subgraph(&[4, 0, 2]).unwrap(), Graph::complete(3).unwrap());
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(c5.induced_subgraph(&[2, 3]).unwrap(), Graph::complete(2).unwrap());
        assert!(matches!(
            c5.induced_subgraph(&[1, 5]),
            Err(Error::VertexOutOfRange { vertex: 5, n: 5 })
        ));
    }

    #[test]
    fn induced_subgraph_is_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let n = rng.gen_range(1..20);
            let g = random_graph(&mut rng, n, 0.5);
            let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
            let h = g.induced_subgraph(&s).unwrap();
            assert!(h.edge_count() <= g.edge_count());
        }
    }

    #[test]
    fn degree_sum_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let n = rng.gen_range(0..90);
            let g = random_graph(&mut rng, n, 0.3);
            assert!(g.is_well_formed());
            assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        }
    }

    #[test]
    fn self_loops_are_rejected() {
        assert!(Graph::from_edges(3, [(1, 1)]).is_err());
        assert!(Graph::from_edges(3, [(1, 3)]).is_err());
    }

    #[test]
    fn components_of_two_triangles() {
        let g = Graph::complete(3)
            .unwrap()
            .disjoint_union(&Graph::complete(3).unwrap())
            .unwrap();
        assert_eq!(g.components(), vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert!(!g.is_connected());
    }

    #[test]
    fn partition_validation() {
        assert!(VertexPartition::new(3, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(VertexPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0, 1]]).is_err());
        let p = VertexPartition::from_sizes(&[2, 3]).unwrap();
        assert_eq!(p.assignment(), vec![0, 0, 1, 1, 1]);
    }
}
