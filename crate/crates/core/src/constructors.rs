//! Named graph families: Turán and complete multipartite graphs, the fan
//! `F_{k,r}`, the bounded-degree bounded-matching graph `G0`, the extremal
//! family `G_{n,k,r}` and split graphs.

use crate::error::{Error, Result};
use crate::extremal::turan_part_sizes;
use crate::graph::{Graph, PartitionedGraph, VertexPartition};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// The forbidden graph `F_{k,r}`: `k` copies of `K_r` sharing one vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FanSpec {
    k: usize,
    r: usize,
}

impl FanSpec {
    pub fn new(k: usize, r: usize) -> Result<Self> {
        if k < 1 || r < 2 {
            return Err(Error::InvalidParameter(format!(
                "fan needs k >= 1 and r >= 2, got k = {k}, r = {r}"
            )));
        }
        Ok(FanSpec { k, r })
    }

    pub fn k(self) -> usize {
        self.k
    }

    pub fn r(self) -> usize {
        self.r
    }

    /// `(r - 1) k + 1`.
    pub fn order(self) -> usize {
        (self.r - 1) * self.k + 1
    }
}

impl fmt::Display for FanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{{{},{}}}", self.k, self.r)
    }
}

/// Part sizes of a complete multipartite graph, kept in descending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionSizes(Vec<usize>);

impl PartitionSizes {
    pub fn new(mut sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidPartition("parts must be non-empty".into()));
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(PartitionSizes(sizes))
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn parts(&self) -> usize {
        self.0.len()
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn largest(&self) -> usize {
        self.0[0]
    }

    /// The block-structured graph with no extra edges.
    pub fn structured(&self) -> PartitionedGraph {
        PartitionedGraph::new(self.0.clone(), []).expect("positive sizes")
    }
}

impl FromStr for PartitionSizes {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PartitionSizes::new(parse_list(s)?)
    }
}

fn parse_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("not a non-negative integer: {t:?}")))
        })
        .collect()
}

/// `K_{n_1, ..., n_p}` with its parts as consecutive vertex blocks.
pub fn complete_multipartite(sizes: &PartitionSizes) -> Result<(Graph, VertexPartition)> {
    let g = sizes.structured();
    Ok((g.to_graph()?, g.partition()))
}

/// The Turán graph `T_p(n)`.
pub fn turan_graph(n: usize, p: usize) -> Result<Graph> {
    turan_structured(n, p)?.to_graph()
}

/// `T_p(n)` in block form; empty parts (when `n < p`) are dropped.
pub fn turan_structured(n: usize, p: usize) -> Result<PartitionedGraph> {
    let sizes: Vec<usize> = turan_part_sizes(n, p)?.into_iter().filter(|&s| s > 0).collect();
    if sizes.is_empty() {
        return PartitionedGraph::new(vec![0], []);
    }
    PartitionedGraph::new(sizes, [])
}

/// `F_{k,r}`: vertex 0 is the centre; clique `i` uses vertices
/// `1 + i(r-1) .. 1 + (i+1)(r-1)`.
pub fn fan_graph(spec: FanSpec) -> Result<Graph> {
    let s = spec.r() - 1;
    let mut g = Graph::empty(spec.order())?;
    for i in 0..spec.k() {
        let block: Vec<usize> = (1 + i * s..1 + (i + 1) * s).collect();
        for (a, &u) in block.iter().enumerate() {
            g.set_edge(0, u);
            for &v in &block[a + 1..] {
                g.set_edge(u, v);
            }
        }
    }
    Ok(g)
}

/// A graph with maximum degree `k - 1`, matching number at most `k - 1` and
/// `f(k-1, k-1)` edges.
///
/// Odd `k`: two disjoint copies of `K_k`. Even `k`: on `Z_{2k-1}`, the
/// circulant with offsets `±1, ..., ±(k-2)/2` plus the matching
/// `{i, i + k - 1}` for `0 <= i <= k - 2`; vertex `2k - 2` has degree `k - 2`.
pub fn chvatal_hanson_extremal(k: usize) -> Result<Graph> {
    if k < 1 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    if k % 2 == 1 {
        let kk = Graph::complete(k)?;
        return kk.disjoint_union(&kk);
    }
    let m = 2 * k - 1;
    let mut g = Graph::empty(m)?;
    for i in 0..m {
        for off in 1..=(k - 2) / 2 {
            g.set_edge(i, (i + off) % m);
        }
    }
    for i in 0..k - 1 {
        g.set_edge(i, i + k - 1);
    }
    Ok(g)
}

/// Places the non-isolated vertices of `g0` on the first vertices of part
/// `host` of the complete multipartite graph with the given part sizes.
pub fn embed_in_part(sizes: &[usize], host: usize, g0: &Graph) -> Result<PartitionedGraph> {
    if host >= sizes.len() {
        return Err(Error::InvalidParameter(format!(
            "part {host} requested but there are {} parts",
            sizes.len()
        )));
    }
    let used = g0.non_isolated();
    if used.len() > sizes[host] {
        return Err(Error::PartTooSmall {
            part: host,
            size: sizes[host],
            needed: used.len(),
        });
    }
    let offset: usize = sizes[..host].iter().sum();
    let mut slot = vec![usize::MAX; g0.n()];
    for (i, &v) in used.iter().enumerate() {
        slot[v] = offset + i;
    }
    PartitionedGraph::new(sizes.to_vec(), g0.edges().map(|(u, v)| (slot[u], slot[v])))
}

/// `G_{n,k,r}`: the Turán graph `T_{r-1}(n)` with
/// [`chvatal_hanson_extremal`]`(k)` embedded in one part (the largest by
/// default; parts are ordered largest first).
pub fn extremal_fan_graph(n: usize, spec: FanSpec, part: Option<usize>) -> Result<PartitionedGraph> {
    if spec.r() < 3 {
        return Err(Error::InvalidParameter("the extremal construction needs r >= 3".into()));
    }
    let p = spec.r() - 1;
    if n < p {
        return Err(Error::InvalidParameter(format!(
            "n = {n} is smaller than the number of parts {p}"
        )));
    }
    let sizes = turan_part_sizes(n, p)?;
    embed_in_part(&sizes, part.unwrap_or(0), &chvatal_hanson_extremal(spec.k())?)
}

/// `S_{n,k}`: `K_k` joined to an independent set of `n - k` vertices.
pub fn split_graph(n: usize, k: usize) -> Result<Graph> {
    if k > n {
        return Err(Error::InvalidParameter(format!(
            "split graph needs k <= n, got k = {k}, n = {n}"
        )));
    }
    Graph::complete(k)?.join(&Graph::empty(n - k)?)
}

/// A constructor expression: `turan:n,p`, `multipartite:a,b,c`, `fan:k,r`,
/// `extremal:n,k,r[,part]`, `split:n,k` or `ch:k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructSpec {
    Turan {
        n: usize,
        p: usize,
    },
    Multipartite(PartitionSizes),
    Fan(FanSpec),
    Extremal {
        n: usize,
        spec: FanSpec,
        part: Option<usize>,
    },
    Split {
        n: usize,
        k: usize,
    },
    ChvatalHanson {
        k: usize,
    },
}

impl FromStr for ConstructSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidParameter(format!("expected name:args, got {s:?}")))?;
        let args = parse_list(args)?;
        let arity = |expected: &[usize]| -> Result<()> {
            if expected.contains(&args.len()) {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} takes {expected:?} arguments, got {}",
                    args.len()
                )))
            }
        };
        Ok(match name.trim() {
            "turan" => {
                arity(&[2])?;
                ConstructSpec::Turan { n: args[0], p: args[1] }
            }
            "multipartite" => ConstructSpec::Multipartite(PartitionSizes::new(args)?),
            "fan" => {
                arity(&[2])?;
                ConstructSpec::Fan(FanSpec::new(args[0], args[1])?)
            }
            "extremal" => {
                arity(&[3, 4])?;
                ConstructSpec::Extremal {
                    n: args[0],
                    spec: FanSpec::new(args[1], args[2])?,
                    part: args.get(3).copied(),
                }
            }
            "split" => {
                arity(&[2])?;
                ConstructSpec::Split { n: args[0], k: args[1] }
            }
            "ch" => {
                arity(&[1])?;
                ConstructSpec::ChvatalHanson { k: args[0] }
            }
            other => return Err(Error::InvalidParameter(format!("unknown constructor {other:?}"))),
        })
    }
}

/// Output of a [`ConstructSpec`]: block-structured families stay in
/// [`PartitionedGraph`] form so they can be large.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constructed {
    Dense(Graph),
    Partitioned(PartitionedGraph),
}

impl ConstructSpec {
    pub fn build(&self) -> Result<Constructed> {
        Ok(match self {
            ConstructSpec::Turan { n, p } => Constructed::Partitioned(turan_structured(*n, *p)?),
            ConstructSpec::Multipartite(sizes) => Constructed::Partitioned(sizes.structured()),
            ConstructSpec::Fan(spec) => Constructed::Dense(fan_graph(*spec)?),
            ConstructSpec::Extremal { n, spec, part } => {
                Constructed::Partitioned(extremal_fan_graph(*n, *spec, *part)?)
            }
            ConstructSpec::Split { n, k } => Constructed::Dense(split_graph(*n, *k)?),
            ConstructSpec::ChvatalHanson { k } => Constructed::Dense(chvatal_hanson_extremal(*k)?),
        })
    }
}

impl Constructed {
    pub fn n(&self) -> usize {
        match self {
            Constructed::Dense(g) => g.n(),
            Constructed::Partitioned(g) => g.n(),
        }
    }

    pub fn edge_count(&self) -> usize {
        match self {
            Constructed::Dense(g) => g.edge_count(),
            Constructed::Partitioned(g) => g.edge_count(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        match self {
            Constructed::Dense(g) => Ok(g.clone()),
            Constructed::Partitioned(g) => g.to_graph(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{chvatal_hanson_f, turan_number_t};

    #[test]
    fn multipartite_examples() {
        let (c4, _) = complete_multipartite(&PartitionSizes::new(vec![2, 2]).unwrap()).unwrap();
        assert_eq!(c4.degrees(), vec![2; 4]);
        assert_eq!(c4.edge_count(), 4);
        let (k3, _) = complete_multipartite(&PartitionSizes::new(vec![1, 1, 1]).unwrap()).unwrap();
        assert_eq!(k3, Graph::complete(3).unwrap());
        let (g, parts) = complete_multipartite(&PartitionSizes::new(vec![2, 3, 2]).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 16);
        assert_eq!(parts.sizes(), vec![3, 2, 2]);
        assert!(PartitionSizes::new(vec![]).is_err());
        assert!(PartitionSizes::new(vec![2, 0]).is_err());
    }

    #[test]
    fn turan_examples() {
        let g = turan_graph(5, 2).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.degrees(), vec![2, 2, 2, 3, 3]);
        assert_eq!(turan_graph(9, 3).unwrap().edge_count(), 27);
        for n in 0..=8 {
            assert_eq!(turan_graph(n, n.max(1)).unwrap(), Graph::complete(n).unwrap());
        }
        for n in 0..30 {
            for p in 1..6 {
                assert_eq!(
                    turan_graph(n, p).unwrap().edge_count() as u64,
                    turan_number_t(n, p).unwrap()
                );
            }
        }
        assert!(turan_graph(4, 0).is_err());
    }

    #[test]
    fn fan_examples() {
        for r in 2..7 {
            assert_eq!(
                fan_graph(FanSpec::new(1, r).unwrap()).unwrap(),
                Graph::complete(r).unwrap()
            );
        }
        let bowtie = fan_graph(FanSpec::new(2, 3).unwrap()).unwrap();
        assert_eq!((bowtie.n(), bowtie.edge_count()), (5, 6));
        let f = fan_graph(FanSpec::new(3, 4).unwrap()).unwrap();
        assert_eq!((f.n(), f.edge_count()), (10, 18));
        assert!(FanSpec::new(0, 3).is_err());
        assert!(FanSpec::new(2, 1).is_err());
    }

    #[test]
    fn chvatal_hanson_examples() {
        let g = chvatal_hanson_extremal(3).unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 6));
        let g = chvatal_hanson_extremal(2).unwrap();
        assert_eq!((g.n(), g.edge_count()), (3, 1));
        let g = chvatal_hanson_extremal(4).unwrap();
        let mut d = g.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!((g.n(), g.edge_count()), (7, 10));
        assert_eq!(d, vec![3, 3, 3, 3, 3, 3, 2]);
    }

    #[test]
    fn chvatal_hanson_parameters() {
        for k in 1..=12usize {
            let g = chvatal_hanson_extremal(k).unwrap();
            assert_eq!(g.max_degree(), k - 1, "k={k}");
            assert_eq!(g.edge_count() as u64, chvatal_hanson_f(k as u64 - 1, k as u64 - 1));
        }
    }

    #[test]
    fn extremal_examples() {
        let g = extremal_fan_graph(200, FanSpec::new(2, 3).unwrap(), None).unwrap();
        assert_eq!(g.edge_count(), 10001);
        for r in 3..6 {
            let spec = FanSpec::new(1, r).unwrap();
            for n in [r, 10, 17] {
                let g = extremal_fan_graph(n, spec, None).unwrap().to_graph().unwrap();
                assert_eq!(g, turan_graph(n, r - 1).unwrap());
            }
        }
        assert!(matches!(
            extremal_fan_graph(6, FanSpec::new(3, 3).unwrap(), None),
            Err(Error::PartTooSmall { .. })
        ));
        assert!(extremal_fan_graph(20, FanSpec::new(2, 2).unwrap(), None).is_err());
    }

    #[test]
    fn extremal_edge_count_matches_formula() {
        use crate::extremal::fan_extremal_number;
        for n in 1..=60 {
            for k in 1..=4 {
                for r in 3..=5 {
                    let spec = FanSpec::new(k, r).unwrap();
                    if let Ok(g) = extremal_fan_graph(n, spec, None) {
                        assert_eq!(g.edge_count() as u64, fan_extremal_number(n, spec).unwrap().value);
                        let sizes = g.sizes();
                        assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
                    }
                }
            }
        }
    }

    #[test]
    fn split_examples() {
        let g = split_graph(4, 1).unwrap();
        assert_eq!(g.degrees(), vec![3, 1, 1, 1]);
        for n in 0..=6 {
            assert_eq!(split_graph(n, n).unwrap(), Graph::complete(n).unwrap());
        }
        assert_eq!(split_graph(10, 2).unwrap().edge_count(), 17);
        assert!(split_graph(3, 4).is_err());
    }

    #[test]
    fn construct_spec_parsing() {
        let c: ConstructSpec = "multipartite:3,3,3".parse().unwrap();
        assert_eq!(c.build().unwrap().edge_count(), 27);
        let c: ConstructSpec = "extremal:20,2,3,1".parse().unwrap();
        assert_eq!(c.build().unwrap().edge_count(), 101);
        assert!("fan:2".parse::<ConstructSpec>().is_err());
        assert!("bogus:1".parse::<ConstructSpec>().is_err());
        assert!("turan".parse::<ConstructSpec>().is_err());
    }
}
