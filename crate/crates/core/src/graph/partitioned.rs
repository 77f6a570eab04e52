use super::{Graph, VertexPartition};
use crate::error::{Error, Result};
use crate::spectral::compensated_sum;

/// A complete multipartite graph on consecutive vertex blocks plus a set of
/// extra edges inside parts.
///
/// Adjacency is answered from the block structure, so a graph with thousands
/// of vertices costs `O(n + extra edges)` memory and one adjacency
/// matrix-vector product costs the same.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedGraph {
    sizes: Vec<usize>,
    offsets: Vec<usize>,
    part_of: Vec<u32>,
    internal: Vec<(usize, usize)>,
    internal_adj: Vec<Vec<usize>>,
}

impl PartitionedGraph {
    /// `sizes` are the part sizes in vertex order; `internal` edges must join
    /// two vertices of the same part.
    pub fn new(sizes: Vec<usize>, internal: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut part_of = Vec::new();
        for (i, &s) in sizes.iter().enumerate() {
            offsets.push(part_of.len());
            part_of.extend(std::iter::repeat_n(i as u32, s));
        }
        let n = part_of.len();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (u, v) in internal {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v || part_of[u] != part_of[v] {
                return Err(Error::InvalidPartition(format!(
                    "extra edge ({u}, {v}) does not lie inside one part"
                )));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        edges.dedup();
        let mut internal_adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            internal_adj[u].push(v);
            internal_adj[v].push(u);
        }
        Ok(PartitionedGraph {
            sizes,
            offsets,
            part_of,
            internal: edges,
            internal_adj,
        })
    }

    pub fn n(&self) -> usize {
        self.part_of.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn offset(&self, part: usize) -> usize {
        self.offsets[part]
    }

    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v] as usize
    }

    /// Extra edges inside parts, `(u, v)` with `u < v`, sorted.
    pub fn internal_edges(&self) -> &[(usize, usize)] {
        &self.internal
    }

    pub fn internal_neighbors(&self, v: usize) -> &[usize] {
        &self.internal_adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v {
            return false;
        }
        self.part_of[u] != self.part_of[v] || self.internal_adj[u].contains(&v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.n() - self.sizes[self.part_of(v)] + self.internal_adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        let n = self.n();
        let within: usize = self.sizes.iter().map(|s| s * s).sum();
        (n * n - within) / 2 + self.internal.len()
    }

    /// Connected whenever at least two parts are non-empty.
    pub fn is_connected(&self) -> bool {
        self.sizes.iter().filter(|&&s| s > 0).count() >= 2 || self.n() <= 1
    }

    pub fn partition(&self) -> VertexPartition {
        VertexPartition::from_sizes(&self.sizes).expect("consecutive blocks cover 0..n")
    }

    /// Dense copy, limited to [`super::DENSE_LIMIT`] vertices.
    pub fn to_graph(&self) -> Result<Graph> {
        let mut g = Graph::empty(self.n())?;
        for u in 0..self.n() {
            for v in u + 1..self.n() {
                if self.part_of[u] != self.part_of[v] {
                    g.set_edge(u, v);
                }
            }
        }
        for &(u, v) in &self.internal {
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// `y = A x`.
    pub fn adjacency_apply(&self, x: &[f64], y: &mut [f64]) {
        let part_sums: Vec<f64> = (0..self.sizes.len())
            .map(|p| compensated_sum(x[self.offsets[p]..self.offsets[p] + self.sizes[p]].iter().copied()))
            .collect();
        let total = compensated_sum(part_sums.iter().copied());
        for (v, out) in y.iter_mut().enumerate() {
            let own = part_sums[self.part_of[v] as usize];
            let extra: f64 = self.internal_adj[v].iter().map(|&u| x[u]).sum();
            *out = (total - own) + extra;
        }
    }
}
