//! Exact detection of `F_{k,r}` and the counting problems behind it.
//!
//! A graph contains `F_{k,r}` exactly when some vertex `v` has `k`
//! vertex-disjoint `(r-1)`-cliques inside its neighbourhood, so detection
//! reduces to bounded clique packing on `G[N(v)]`. The packing solver is an
//! exact branch and bound over bitsets and also computes matching numbers
//! (`s = 2`).

use crate::constructors::FanSpec;
use crate::error::{Error, Result};
use crate::extremal::chvatal_hanson_f;
use crate::graph::{BitSet, Graph, VertexPartition};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// A copy of `F_{k,r}`: `k` disjoint `(r-1)`-sets in the neighbourhood of
/// `center`, each inducing a clique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanWitness {
    pub center: usize,
    pub cliques: Vec<Vec<usize>>,
}

impl FanWitness {
    /// Checks the witness against `g` without reference to how it was found.
    pub fn verify(&self, g: &Graph, spec: FanSpec) -> bool {
        let n = g.n();
        if self.center >= n || self.cliques.len() != spec.k() {
            return false;
        }
        let mut used = vec![false; n];
        used[self.center] = true;
        for clique in &self.cliques {
            if clique.len() != spec.r() - 1 {
                return false;
            }
            for &v in clique {
                if v >= n || std::mem::replace(&mut used[v], true) {
                    return false;
                }
            }
            let mut members = clique.clone();
            members.push(self.center);
            for (i, &a) in members.iter().enumerate() {
                if members[i + 1..].iter().any(|&b| !g.has_edge(a, b)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Finds a copy of `F_{k,r}` in `g`, if any.
///
/// Candidate centres need degree at least `k(r-1)` and are tried in order of
/// decreasing degree (ties by index); the reported witness is the first in
/// that order regardless of thread scheduling.
pub fn contains_fan(g: &Graph, spec: FanSpec) -> Option<FanWitness> {
    let s = spec.r() - 1;
    let need = spec.k() * s;
    let mut centers: Vec<(usize, usize)> = (0..g.n())
        .map(|v| (g.degree(v), v))
        .filter(|&(d, _)| d >= need)
        .collect();
    centers.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    centers.par_iter().find_map_first(|&(_, v)| {
        let nbrs: Vec<usize> = g.neighbors(v).collect();
        let local = g.induced_subgraph(&nbrs).expect("neighbours are in range");
        let packing = clique_packing(&local, s, spec.k());
        (packing.len() >= spec.k()).then(|| FanWitness {
            center: v,
            cliques: packing
                .into_iter()
                .map(|c| c.into_iter().map(|i| nbrs[i]).collect())
                .collect(),
        })
    })
}

pub fn is_fan_free(g: &Graph, spec: FanSpec) -> bool {
    contains_fan(g, spec).is_none()
}

/// Maximum number of vertex-disjoint `s`-cliques, capped at `limit`.
pub fn clique_packing_number(g: &Graph, s: usize, limit: usize) -> usize {
    clique_packing(g, s, limit).len()
}

/// A maximum family of vertex-disjoint `s`-cliques, truncated to `limit`
/// members (the search stops as soon as `limit` is reached). Cliques are
/// sorted vertex lists. `s = 0` yields nothing.
pub fn clique_packing(g: &Graph, s: usize, limit: usize) -> Vec<Vec<usize>> {
    if s == 0 || limit == 0 {
        return Vec::new();
    }
    if s == 1 {
        return (0..g.n()).take(limit).map(|v| vec![v]).collect();
    }
    let mut packer = Packer {
        g,
        s,
        limit,
        current: Vec::new(),
        best: Vec::new(),
    };
    packer.solve(BitSet::full(g.n()));
    packer.best.truncate(limit);
    for c in &mut packer.best {
        c.sort_unstable();
    }
    packer.best
}

/// Size of a maximum matching.
pub fn matching_number(g: &Graph) -> usize {
    clique_packing_number(g, 2, g.n() / 2)
}

struct Packer<'a> {
    g: &'a Graph,
    s: usize,
    limit: usize,
    current: Vec<Vec<usize>>,
    best: Vec<Vec<usize>>,
}

impl Packer<'_> {
    fn done(&self) -> bool {
        self.best.len() >= self.limit
    }

    fn solve(&mut self, mut avail: BitSet) {
        if self.done() {
            return;
        }
        if self.current.len() + avail.len() / self.s <= self.best.len() {
            return;
        }
        let greedy = self.greedy(&avail);
        if self.current.len() + greedy.len() > self.best.len() {
            self.best = self.current.iter().cloned().chain(greedy).collect();
            if self.done() {
                return;
            }
        }
        let room = self.best.len() - self.current.len();
        if self.transversal_bound(&avail, room) <= room {
            return;
        }
        // Lowest vertex lying in some s-clique of the available set.
        let mut pivot = None;
        while let Some(u) = avail.first() {
            let inside = avail.intersect_row(self.g.row(u));
            if find_clique(self.g, &inside, self.s - 1).is_some() {
                pivot = Some((u, inside));
                break;
            }
            avail.remove(u);
        }
        let Some((u, inside)) = pivot else { return };
        for clique in all_cliques(self.g, &inside, self.s - 1) {
            let mut rest = avail.clone();
            rest.remove(u);
            for &w in &clique {
                rest.remove(w);
            }
            let mut member = clique;
            member.push(u);
            self.current.push(member);
            self.solve(rest);
            self.current.pop();
            if self.done() {
                return;
            }
        }
        avail.remove(u);
        self.solve(avail);
    }

    /// Repeatedly removes the lexicographically first clique.
    fn greedy(&self, avail: &BitSet) -> Vec<Vec<usize>> {
        let mut rest = avail.clone();
        let mut out = Vec::new();
        while let Some(c) = find_clique(self.g, &rest, self.s) {
            for &w in &c {
                rest.remove(w);
            }
            out.push(c);
        }
        out
    }

    /// Size of a greedily built vertex set meeting every `s`-clique, which
    /// bounds the packing number from above. Stops once it exceeds `room`.
    fn transversal_bound(&self, avail: &BitSet, room: usize) -> usize {
        let mut rest = avail.clone();
        let mut size = 0;
        while let Some(c) = find_clique(self.g, &rest, self.s) {
            let hit = *c
                .iter()
                .max_by_key(|&&w| (rest.intersection_len(self.g.row(w)), std::cmp::Reverse(w)))
                .expect("clique is non-empty");
            rest.remove(hit);
            size += 1;
            if size > room {
                break;
            }
        }
        size
    }
}

/// Some `t`-clique inside `set`, built from the smallest vertices first.
fn find_clique(g: &Graph, set: &BitSet, t: usize) -> Option<Vec<usize>> {
    if t == 0 {
        return Some(Vec::new());
    }
    if set.len() < t {
        return None;
    }
    for v in set.iter() {
        let mut cand = set.intersect_row(g.row(v));
        cand.retain_above(v);
        if let Some(mut c) = find_clique(g, &cand, t - 1) {
            c.push(v);
            return Some(c);
        }
    }
    None
}

/// Every `t`-clique inside `set`, each listed once.
fn all_cliques(g: &Graph, set: &BitSet, t: usize) -> Vec<Vec<usize>> {
    fn rec(g: &Graph, set: &BitSet, t: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if t == 0 {
            out.push(prefix.clone());
            return;
        }
        for v in set.iter() {
            let mut cand = set.intersect_row(g.row(v));
            cand.retain_above(v);
            if cand.len() + 1 < t {
                continue;
            }
            prefix.push(v);
            rec(g, &cand, t - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(g, set, t, &mut Vec::new(), &mut out);
    out
}

/// Largest `n` for which [`max_cut_partition`] searches exhaustively.
pub const EXACT_CUT_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxCut {
    pub partition: VertexPartition,
    pub cut: usize,
    /// `true` when the cut is a proven maximum, `false` for a local optimum
    /// under single-vertex moves.
    pub exact: bool,
}

/// A maximum `p`-cut: exact for `n <= 16`, otherwise a local optimum where
/// no single vertex can change part and increase the number of crossing
/// edges. When `n >= p` every part is non-empty.
pub fn max_cut_partition(g: &Graph, p: usize) -> Result<MaxCut> {
    if p < 2 {
        return Err(Error::InvalidParameter(format!(
            "a cut needs at least 2 parts, got {p}"
        )));
    }
    let n = g.n();
    let (assignment, exact) = if n <= EXACT_CUT_LIMIT {
        (exact_cut(g, p), true)
    } else {
        (local_cut(g, p), false)
    };
    let partition = VertexPartition::from_assignment(&assignment, p)?;
    let cut = partition.crossing_edges(g);
    Ok(MaxCut { partition, cut, exact })
}

fn exact_cut(g: &Graph, p: usize) -> Vec<usize> {
    let n = g.n();
    if n <= p {
        return (0..n).collect();
    }
    // Edges among the first i vertices.
    let prefix: Vec<usize> = (0..=n).map(|i| g.edges().filter(|&(_, v)| v < i).count()).collect();
    let total = prefix[n];

    struct State<'a> {
        g: &'a Graph,
        p: usize,
        prefix: &'a [usize],
        total: usize,
        assign: Vec<usize>,
        best_cut: Option<usize>,
        best: Vec<usize>,
    }

    fn rec(st: &mut State, i: usize, used: usize, cut: usize) {
        let n = st.g.n();
        if i == n {
            if used == st.p && st.best_cut.is_none_or(|b| cut > b) {
                st.best_cut = Some(cut);
                st.best = st.assign.clone();
            }
            return;
        }
        if let Some(b) = st.best_cut {
            if cut + (st.total - st.prefix[i]) <= b {
                return;
            }
        }
        let must_open = n - i == st.p - used;
        let first = if must_open { used } else { 0 };
        for part in first..(used + 1).min(st.p) {
            let gain = st.g.neighbors(i).filter(|&j| j < i && st.assign[j] != part).count();
            st.assign.push(part);
            rec(st, i + 1, used.max(part + 1), cut + gain);
            st.assign.pop();
        }
    }

    let mut st = State {
        g,
        p,
        prefix: &prefix,
        total,
        assign: Vec::with_capacity(n),
        best_cut: None,
        best: Vec::new(),
    };
    rec(&mut st, 0, 0, 0);
    st.best
}

#[allow(clippy::needless_range_loop)]
fn local_cut(g: &Graph, p: usize) -> Vec<usize> {
    let n = g.n();
    let mut parts: Vec<BitSet> = vec![BitSet::new(n); p];
    let mut assign = vec![0; n];
    for v in 0..n {
        let part = if v < p {
            v
        } else {
            (0..p)
                .min_by_key(|&i| (parts[i].intersection_len(g.row(v)), i))
                .expect("p >= 2")
        };
        assign[v] = part;
        parts[part].insert(v);
    }
    'improve: loop {
        for v in 0..n {
            let own = assign[v];
            let here = parts[own].intersection_len(g.row(v));
            for target in 0..p {
                if target != own && parts[target].intersection_len(g.row(v)) < here {
                    parts[own].remove(v);
                    parts[target].insert(v);
                    assign[v] = target;
                    continue 'improve;
                }
            }
        }
        break;
    }
    assign
}

/// Outcome of checking the partition inequality
/// `Σ e(G[V_i]) - (Σ_{i<j} |V_i||V_j| - e_cr) <= f(k-1, k-1)`
/// and its two hypotheses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionInequality {
    /// For every part `i`: `Σ_{j≠i} β(G[V_j]) <= k-1` and `Δ(G[V_i]) <= k-1`.
    pub hyp1: bool,
    /// For every `v ∈ V_i`: `d_{G[V_i]}(v) + Σ_{j≠i} β(G[N(v) ∩ V_j]) <= k-1`.
    pub hyp2: bool,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    /// Whether `g` is `F_{k,r}`-free with `r = parts + 1`.
    pub fan_free: bool,
}

pub fn check_partition_inequality(g: &Graph, parts: &VertexPartition, k: usize) -> Result<PartitionInequality> {
    if parts.n() != g.n() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} vertices but the graph has {}",
            parts.n(),
            g.n()
        )));
    }
    let spec = FanSpec::new(k, parts.len() + 1)?;
    let budget = k - 1;
    let inner: Vec<Graph> = parts
        .parts()
        .iter()
        .map(|part| g.induced_subgraph(part))
        .collect::<Result<_>>()?;
    let betas: Vec<usize> = inner.iter().map(matching_number).collect();
    let beta_total: usize = betas.iter().sum();
    let hyp1 = inner
        .iter()
        .zip(&betas)
        .all(|(h, &b)| beta_total - b <= budget && h.max_degree() <= budget);

    let hyp2 = parts.parts().iter().enumerate().all(|(i, part)| {
        part.iter().enumerate().all(|(pos, &v)| {
            let mut load = inner[i].degree(pos);
            for (j, other) in parts.parts().iter().enumerate() {
                if j == i || load > budget {
                    continue;
                }
                let nbrs: Vec<usize> = other.iter().copied().filter(|&u| g.has_edge(v, u)).collect();
                load += matching_number(&g.induced_subgraph(&nbrs).expect("in range"));
            }
            load <= budget
        })
    });

    let internal: i64 = inner.iter().map(|h| h.edge_count() as i64).sum();
    let sizes = parts.sizes();
    let mut possible = 0i64;
    for i in 0..sizes.len() {
        for j in i + 1..sizes.len() {
            possible += (sizes[i] * sizes[j]) as i64;
        }
    }
    let missing = possible - parts.crossing_edges(g) as i64;
    let lhs = internal - missing;
    let rhs = chvatal_hanson_f(budget as u64, budget as u64) as i64;
    Ok(PartitionInequality {
        hyp1,
        hyp2,
        lhs,
        rhs,
        holds: lhs <= rhs,
        fan_free: is_fan_free(g, spec),
    })
}
