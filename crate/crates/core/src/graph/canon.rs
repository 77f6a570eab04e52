//! Canonical labelling by equitable partition refinement and an
//! individualization search tree with automorphism pruning.
//!
//! The canonical form is the leaf whose relabelled adjacency rows are
//! lexicographically largest. Automorphisms are collected whenever two leaves
//! produce the same relabelled graph; at each tree node, children lying in a
//! common orbit of the automorphisms that fix the node's path are explored
//! only once.

use super::{Graph, KERNEL_LIMIT};
use crate::error::{Error, Result};
use std::collections::VecDeque;

/// A canonical relabelling of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalLabeling {
    /// `order[i]` is the input vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    /// The relabelled graph; identical for all isomorphic inputs.
    pub graph: Graph,
}

impl CanonicalLabeling {
    /// The input vertex placed at the last canonical position.
    pub fn last_vertex(&self) -> Option<usize> {
        self.order.last().copied()
    }
}

pub fn canonical_form(g: &Graph) -> Result<Graph> {
    canonical_labeling(g).map(|c| c.graph)
}

pub fn canonical_labeling(g: &Graph) -> Result<CanonicalLabeling> {
    let n = g.n();
    if n > KERNEL_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: KERNEL_LIMIT,
            what: "canonical labelling",
        });
    }
    if n == 0 {
        return Ok(CanonicalLabeling {
            order: Vec::new(),
            graph: g.clone(),
        });
    }
    let rows: Vec<u64> = (0..n).map(|v| g.row(v)[0]).collect();
    let mut search = Search {
        n,
        rows: &rows,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let mut root = Partition::unit(n);
    root.refine(&rows, vec![0]);
    search.descend(root, &mut Vec::new());
    let lab = search.best.expect("search reaches at least one leaf").lab;
    let order: Vec<usize> = lab.iter().map(|&v| v as usize).collect();
    Ok(CanonicalLabeling {
        graph: g.permuted(&order),
        order,
    })
}

/// Ordered partition of `0..n`: `lab` lists vertices cell by cell and
/// `end[s]` is the exclusive end of the cell starting at position `s`.
#[derive(Clone)]
struct Partition {
    lab: Vec<u8>,
    end: Vec<u8>,
    cells: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut end = vec![0; n];
        end[0] = n as u8;
        Partition {
            lab: (0..n as u8).collect(),
            end,
            cells: 1,
        }
    }

    fn n(&self) -> usize {
        self.lab.len()
    }

    fn mask(&self, start: usize) -> u64 {
        self.lab[start..self.end[start] as usize]
            .iter()
            .fold(0, |m, &v| m | 1 << v)
    }

    fn first_nontrivial(&self) -> Option<usize> {
        let mut s = 0;
        while s < self.n() {
            let e = self.end[s] as usize;
            if e - s > 1 {
                return Some(s);
            }
            s = e;
        }
        None
    }

    /// Splits cells until every cell has a constant number of neighbours in
    /// every other cell. `queue` holds the starts of the initial splitters.
    fn refine(&mut self, rows: &[u64], queue: Vec<usize>) {
        let n = self.n();
        let mut pending = vec![false; n];
        let mut queue: VecDeque<usize> = queue.into();
        for &s in &queue {
            pending[s] = true;
        }
        let mut keyed: Vec<(u32, u8)> = Vec::with_capacity(n);
        while let Some(w) = queue.pop_front() {
            pending[w] = false;
            let splitter = self.mask(w);
            let mut s = 0;
            while s < n {
                let e = self.end[s] as usize;
                if e - s > 1 {
                    keyed.clear();
                    keyed.extend(
                        self.lab[s..e]
                            .iter()
                            .map(|&v| ((rows[v as usize] & splitter).count_ones(), v)),
                    );
                    if keyed.iter().any(|k| k.0 != keyed[0].0) {
                        keyed.sort_unstable();
                        for (slot, &(_, v)) in self.lab[s..e].iter_mut().zip(&keyed) {
                            *slot = v;
                        }
                        let mut starts = vec![s];
                        for i in 1..keyed.len() {
                            if keyed[i].0 != keyed[i - 1].0 {
                                starts.push(s + i);
                            }
                        }
                        for (i, &start) in starts.iter().enumerate() {
                            let stop = starts.get(i + 1).copied().unwrap_or(e);
                            self.end[start] = stop as u8;
                        }
                        self.cells += starts.len() - 1;
                        if pending[s] {
                            for &start in &starts[1..] {
                                pending[start] = true;
                                queue.push_back(start);
                            }
                        } else {
                            let size = |i: usize| starts.get(i + 1).copied().unwrap_or(e) - starts[i];
                            let largest = (0..starts.len())
                                .max_by_key(|&i| (size(i), std::cmp::Reverse(i)))
                                .expect("at least two pieces");
                            for (i, &start) in starts.iter().enumerate() {
                                if i != largest {
                                    pending[start] = true;
                                    queue.push_back(start);
                                }
                            }
                        }
                    }
                }
                s = e;
            }
            if self.cells == n {
                break;
            }
        }
    }

    fn individualize(&mut self, start: usize, v: u8, rows: &[u64]) {
        let e = self.end[start] as usize;
        let pos = start + self.lab[start..e].iter().position(|&x| x == v).expect("v in cell");
        self.lab[start..=pos].rotate_right(1);
        self.end[start] = start as u8 + 1;
        self.end[start + 1] = e as u8;
        self.cells += 1;
        self.refine(rows, vec![start]);
    }
}

struct Search<'a> {
    n: usize,
    rows: &'a [u64],
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<u8>>,
}

struct Leaf {
    cert: Vec<u64>,
    lab: Vec<u8>,
    path: Vec<u8>,
}

/// Depth of the first position where two individualization paths differ.
fn divergence(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Search<'_> {
    /// Explores the subtree below `p`. Returns `Some(depth)` when a leaf in
    /// it turned out to be equivalent to the first or best leaf, in which
    /// case every node deeper than `depth` abandons its remaining children.
    fn descend(&mut self, p: Partition, path: &mut Vec<u8>) -> Option<usize> {
        let Some(start) = p.first_nontrivial() else {
            return self.leaf(&p, path);
        };
        let depth = path.len();
        let e = p.end[start] as usize;
        let mut candidates = p.lab[start..e].to_vec();
        candidates.sort_unstable();
        let mut explored: Vec<u8> = Vec::new();
        let mut orbit_cache: Option<(usize, Vec<u8>)> = None;
        for v in candidates {
            if !explored.is_empty() {
                let stale = orbit_cache.as_ref().is_none_or(|(count, _)| *count != self.autos.len());
                if stale {
                    orbit_cache = Some((self.autos.len(), self.orbits_fixing(path)));
                }
                let orbits = &orbit_cache.as_ref().expect("just filled").1;
                if explored.iter().any(|&u| orbits[u as usize] == orbits[v as usize]) {
                    continue;
                }
            }
            let mut child = p.clone();
            child.individualize(start, v, self.rows);
            path.push(v);
            let jump = self.descend(child, path);
            path.pop();
            explored.push(v);
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, p: &Partition, path: &[u8]) -> Option<usize> {
        let mut position = vec![0u8; self.n];
        for (i, &v) in p.lab.iter().enumerate() {
            position[v as usize] = i as u8;
        }
        let cert: Vec<u64> = p
            .lab
            .iter()
            .map(|&v| super::iter_bits(&[self.rows[v as usize]]).fold(0u64, |m, u| m | 1 << position[u]))
            .collect();
        let this = Leaf {
            cert,
            lab: p.lab.clone(),
            path: path.to_vec(),
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                cert: this.cert.clone(),
                lab: this.lab.clone(),
                path: this.path.clone(),
            });
            self.first = Some(this);
            return None;
        };
        if first.cert == this.cert {
            let auto = automorphism(&first.lab, &this.lab);
            let level = divergence(&first.path, path);
            self.autos.push(auto);
            return Some(level);
        }
        let best = self.best.as_ref().expect("set with first");
        match this.cert.cmp(&best.cert) {
            std::cmp::Ordering::Greater => {
                self.best = Some(this);
                None
            }
            std::cmp::Ordering::Equal => {
                let auto = automorphism(&best.lab, &this.lab);
                let level = divergence(&best.path, path);
                self.autos.push(auto);
                Some(level)
            }
            std::cmp::Ordering::Less => None,
        }
    }

    /// Orbit representatives under the automorphisms found so far that fix
    /// every vertex of `path`.
    fn orbits_fixing(&self, path: &[u8]) -> Vec<u8> {
        let mut parent: Vec<u8> = (0..self.n as u8).collect();
        fn find(parent: &mut [u8], mut x: u8) -> u8 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        for auto in &self.autos {
            if path.iter().any(|&v| auto[v as usize] != v) {
                continue;
            }
            for (x, &y) in auto.iter().enumerate() {
                let (a, b) = (find(&mut parent, x as u8), find(&mut parent, y));
                if a != b {
                    parent[a.max(b) as usize] = a.min(b);
                }
            }
        }
        (0..self.n as u8).map(|x| find(&mut parent, x)).collect()
    }
}

/// The permutation sending `from[i]` to `to[i]`.
fn automorphism(from: &[u8], to: &[u8]) -> Vec<u8> {
    let mut perm = vec![0u8; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        perm[a as usize] = b;
    }
    perm
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        (0u64..1 << pairs.len()).map(move |mask| {
            Graph::from_edges(
                n,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &e)| e),
            )
            .unwrap()
        })
    }

    /// Isomorphism test by trying every permutation.
    fn isomorphic_brute(a: &Graph, b: &Graph) -> bool {
        fn rec(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let i = map.len();
            if i == a.n() {
                return true;
            }
            for j in 0..b.n() {
                if used[j] || a.degree(i) != b.degree(j) {
                    continue;
                }
                if (0..i).all(|k| a.has_edge(k, i) == b.has_edge(map[k], j)) {
                    used[j] = true;
                    map.push(j);
                    if rec(a, b, map, used) {
                        return true;
                    }
                    map.pop();
                    used[j] = false;
                }
            }
            false
        }
        a.n() == b.n() && a.edge_count() == b.edge_count() && rec(a, b, &mut Vec::new(), &mut vec![false; b.n()])
    }

    #[test]
    fn relabelled_paths_agree() {
        let p1 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let p2 = Graph::from_edges(3, [(1, 0), (0, 2)]).unwrap();
        assert_eq!(canonical_form(&p1).unwrap(), canonical_form(&p2).unwrap());
    }

    #[test]
    fn cycle_and_path_differ() {
        let c5 = Graph::cycle(5).unwrap();
        let p5 = Graph::path(5).unwrap();
        assert_ne!(canonical_form(&c5).unwrap(), canonical_form(&p5).unwrap());
    }

    #[test]
    fn class_counts_match_brute_force_dedup() {
        // The brute-force side groups labelled graphs by explicit
        // permutation search, independent of the refinement code.
        for (n, expected) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)] {
            let mut reps: Vec<Graph> = Vec::new();
            let mut forms = HashSet::new();
            for g in all_graphs(n) {
                forms.insert(canonical_form(&g).unwrap());
                if !reps.iter().any(|r| isomorphic_brute(r, &g)) {
                    reps.push(g);
                }
            }
            assert_eq!(reps.len(), expected, "brute classes n={n}");
            assert_eq!(forms.len(), expected, "canonical classes n={n}");
        }
    }

    #[test]
    fn six_vertex_count() {
        let forms: HashSet<Graph> = all_graphs(6).map(|g| canonical_form(&g).unwrap()).collect();
        assert_eq!(forms.len(), 156);
    }

    #[test]
    fn idempotent_and_isomorphic_to_input() {
        for g in all_graphs(5) {
            let c = canonical_labeling(&g).unwrap();
            assert_eq!(canonical_form(&c.graph).unwrap(), c.graph);
            assert_eq!(g.permuted(&c.order), c.graph);
        }
    }

    #[test]
    fn symmetric_graphs_are_fast_and_stable() {
        for n in [10, 20, 40, 64] {
            let e = Graph::empty(n).unwrap();
            assert_eq!(canonical_form(&e).unwrap(), e);
            let k = Graph::complete(n).unwrap();
            assert_eq!(canonical_form(&k).unwrap(), k);
        }
        let petersen = Graph::from_edges(
            10,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
            ],
        )
        .unwrap();
        let shuffled = petersen.permuted(&[3, 7, 1, 9, 0, 5, 8, 2, 6, 4]);
        assert_eq!(canonical_form(&petersen).unwrap(), canonical_form(&shuffled).unwrap());
    }

    #[test]
    fn rejects_graphs_above_kernel_limit() {
        let g = Graph::empty(65).unwrap();
        assert!(matches!(canonical_form(&g), Err(Error::TooLarge { .. })));
    }
}
