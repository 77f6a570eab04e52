//! Structured search over the Turán-host family: a complete `(r-1)`-partite
//! graph with nearly balanced parts and one small graph `G0` of bounded
//! degree and matching number placed inside a single part.

use super::enumerate::enumerate_filtered;
use super::search::{brute_force_extremal, in_pool, BestValue, ExtremalReport, Mode, SearchOptions, LAMBDA_TIE};
use crate::constructors::{embed_in_part, FanSpec};
use crate::error::{Error, Result};
use crate::extremal::fan_extremal_number;
use crate::graph::Graph;
use crate::patterns::{is_fan_free, matching_number};
use crate::spectral::spectral_radius_partitioned;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Default spread allowed between the largest and smallest part.
pub const DEFAULT_MAX_IMBALANCE: usize = 2;

/// All graphs on `2k` vertices (isolated vertices allowed, so every smaller
/// order is covered) with maximum degree and matching number at most `k-1`.
pub fn g0_candidates(k: usize) -> Result<Vec<Graph>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let bound = k - 1;
    let keep = move |g: &Graph| g.max_degree() <= bound && matching_number(g) <= bound;
    enumerate_filtered(2 * k, 2 * k, &keep)
}

/// Part-size vectors of `n` into `p` positive parts, largest first, whose
/// largest and smallest parts differ by at most `max_imbalance`.
pub fn balanced_part_vectors(n: usize, p: usize, max_imbalance: usize) -> Vec<Vec<usize>> {
    fn extend(rest: usize, slots: usize, cap: usize, floor: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for a in (floor..=cap.min(rest)).rev() {
            if a * slots < rest {
                break;
            }
            if rest - a < floor * (slots - 1) {
                continue;
            }
            prefix.push(a);
            extend(rest - a, slots - 1, a, floor, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if p == 0 || n < p {
        return out;
    }
    let top = n.div_ceil(p) + max_imbalance;
    for largest in (n.div_ceil(p)..=top.min(n)).rev() {
        let floor = largest.saturating_sub(max_imbalance).max(1);
        let mut prefix = vec![largest];
        extend(n - largest, p - 1, largest, floor, &mut prefix, &mut out);
    }
    out
}

/// One maximizer of the family search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyWinner {
    pub part_sizes: Vec<usize>,
    pub host: usize,
    /// The embedded small graph, canonical graph6 on `2k` vertices.
    pub g0: String,
    pub edges: u64,
    pub lambda: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyReport {
    #[serde(flatten)]
    pub report: ExtremalReport,
    pub max_imbalance: usize,
    /// Maximizers in the same order as `report.witnesses`.
    pub winners: Vec<FamilyWinner>,
}

struct Scored {
    lambda: f64,
    edges: u64,
    graph6: String,
    winner: FamilyWinner,
}

/// Maximizes `λ` over every balanced part-size vector, every `G0`
/// candidate and every host part (one per distinct part size). Each
/// candidate graph is checked for `F_{k,r}` before it is scored.
pub fn family_search(n: usize, spec: FanSpec, max_imbalance: usize, opts: &SearchOptions) -> Result<FamilyReport> {
    if spec.r() < 3 {
        return Err(Error::InvalidParameter("the family search needs r >= 3".into()));
    }
    let p = spec.r() - 1;
    let vectors = balanced_part_vectors(n, p, max_imbalance);
    if vectors.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "n = {n} cannot be split into {p} nonempty parts"
        )));
    }
    let candidates = g0_candidates(spec.k())?;
    let mut jobs = Vec::new();
    for sizes in &vectors {
        for host in 0..p {
            if host > 0 && sizes[host] == sizes[host - 1] {
                continue;
            }
            for g0 in &candidates {
                if g0.non_isolated().len() <= sizes[host] {
                    jobs.push((sizes, host, g0));
                }
            }
        }
    }
    if jobs.is_empty() {
        return Err(Error::PartTooSmall {
            part: 0,
            size: vectors[0][0],
            needed: 1,
        });
    }

    let scored: Vec<Option<Scored>> = in_pool(opts.jobs, || {
        jobs.par_iter()
            .map(|&(sizes, host, g0)| -> Result<Option<Scored>> {
                let g = embed_in_part(sizes, host, g0)?;
                let dense = g.to_graph()?;
                if !is_fan_free(&dense, spec) {
                    return Ok(None);
                }
                let lambda = spectral_radius_partitioned(&g, &opts.spectral)?.lambda;
                let edges = g.edge_count() as u64;
                Ok(Some(Scored {
                    lambda,
                    edges,
                    graph6: dense.to_graph6(),
                    winner: FamilyWinner {
                        part_sizes: sizes.clone(),
                        host,
                        g0: g0.to_graph6(),
                        edges,
                        lambda,
                    },
                }))
            })
            .collect::<Result<_>>()
    })??;

    let examined = scored.len() as u64;
    let mut free: Vec<Scored> = scored.into_iter().flatten().collect();
    let free_count = free.len() as u64;
    let best = free.iter().map(|s| s.lambda).fold(f64::NEG_INFINITY, f64::max);
    free.retain(|s| s.lambda >= best - LAMBDA_TIE);
    free.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    free.dedup_by(|a, b| a.graph6 == b.graph6);

    let witnesses = free.iter().map(|s| s.graph6.clone()).collect();
    let mut report = ExtremalReport::assemble(
        n,
        spec,
        Mode::Lambda,
        BestValue::Lambda(best),
        witnesses,
        examined,
        free_count,
    )?;
    if let Ok(f) = fan_extremal_number(n, spec) {
        report.matches_formula = free.iter().all(|s| s.edges == f.value);
    }
    Ok(FamilyReport {
        report,
        max_imbalance,
        winners: free.into_iter().map(|s| s.winner).collect(),
    })
}

/// Family search read against the closed-form edge count, with an
/// exhaustive cross-check when `n` is small enough to enumerate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremCheck {
    #[serde(flatten)]
    pub family: FamilyReport,
    pub family_winner_edges: u64,
    pub formula_edges: u64,
    /// Every spectral maximizer of the family has exactly `formula_edges`
    /// edges.
    pub agrees: bool,
    /// Same question for the unrestricted spectral maximizers; present only
    /// when `n` is within the enumeration cap.
    pub brute_force_agrees: Option<bool>,
}

pub fn verify_main_theorem(n: usize, spec: FanSpec, opts: &SearchOptions) -> Result<TheoremCheck> {
    let family = family_search(n, spec, DEFAULT_MAX_IMBALANCE, opts)?;
    let formula_edges = fan_extremal_number(n, spec)?.value;
    let family_winner_edges = family.winners.first().map_or(0, |w| w.edges);
    let agrees = !family.winners.is_empty() && family.winners.iter().all(|w| w.edges == formula_edges);
    let brute_force_agrees = if n <= opts.max_n {
        Some(brute_force_extremal(n, spec, Mode::Lambda, opts)?.matches_formula)
    } else {
        None
    };
    Ok(TheoremCheck {
        family,
        family_winner_edges,
        formula_edges,
        agrees,
        brute_force_agrees,
    })
}
