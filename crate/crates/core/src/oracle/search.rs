//! Exhaustive extremal searches over all graphs of a given order.
//!
//! Parents (the fan-free classes one order below the target) are processed
//! in fixed-size chunks. Each chunk is scored in parallel and the per-parent
//! tallies are folded in parent order, so the report does not depend on the
//! number of worker threads. Between chunks the running tally can be written
//! to a JSON sidecar and a later run can resume from it.

use super::enumerate::{check_cap, children, Levels, DEFAULT_MAX_N};
use crate::constructors::FanSpec;
use crate::error::{Error, Result};
use crate::extremal::{chvatal_hanson_f, fan_extremal_number};
use crate::graph::Graph;
use crate::patterns::{is_fan_free, matching_number};
use crate::spectral::{spectral_radius, SpectralOptions};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

/// Two spectral radii closer than this count as equal.
pub const LAMBDA_TIE: f64 = 1e-8;

const PARENT_CHUNK: usize = 64;

/// What an exhaustive search maximizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Edges,
    Lambda,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edges" => Ok(Mode::Edges),
            "lambda" => Ok(Mode::Lambda),
            other => Err(Error::InvalidParameter(format!(
                "mode must be edges or lambda, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Edges => "edges",
            Mode::Lambda => "lambda",
        })
    }
}

/// An edge count or a spectral radius.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BestValue {
    Edges(u64),
    Lambda(f64),
}

impl BestValue {
    pub fn as_f64(self) -> f64 {
        match self {
            BestValue::Edges(e) => e as f64,
            BestValue::Lambda(l) => l,
        }
    }
}

/// Outcome of an exhaustive or structured extremal search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub mode: Mode,
    pub best_value: BestValue,
    /// `ex(n, F_{k,r})` from the closed form; absent for `r < 3`.
    pub formula_value: Option<u64>,
    pub applicable: bool,
    /// Edge mode: the maximum equals the formula. Spectral mode: every
    /// maximizer has exactly the formula's number of edges.
    pub matches_formula: bool,
    /// graph6 strings of all maximizers, sorted.
    pub witnesses: Vec<String>,
    pub graphs_examined: u64,
    pub free_count: u64,
}

impl ExtremalReport {
    pub(crate) fn assemble(
        n: usize,
        spec: FanSpec,
        mode: Mode,
        best_value: BestValue,
        witnesses: Vec<String>,
        graphs_examined: u64,
        free_count: u64,
    ) -> Result<Self> {
        let formula = fan_extremal_number(n, spec).ok();
        let matches_formula = match (formula, mode, best_value) {
            (None, ..) => false,
            (Some(f), Mode::Edges, BestValue::Edges(e)) => e == f.value,
            (Some(f), _, _) => {
                let mut all = !witnesses.is_empty();
                for w in &witnesses {
                    all &= Graph::from_graph6(w)?.edge_count() as u64 == f.value;
                }
                all
            }
        };
        Ok(ExtremalReport {
            n,
            k: spec.k(),
            r: spec.r(),
            mode,
            best_value,
            formula_value: formula.map(|f| f.value),
            applicable: formula.is_some_and(|f| f.applicable),
            matches_formula,
            witnesses,
            graphs_examined,
            free_count,
        })
    }
}

/// Knobs shared by the exhaustive searches.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchOptions {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Largest order that may be enumerated.
    pub max_n: usize,
    pub spectral: SpectralOptions,
    /// Sidecar file for the running state.
    pub checkpoint: Option<PathBuf>,
    /// Continue from the sidecar instead of starting over.
    pub resume: bool,
    /// Graphs examined between sidecar writes.
    pub checkpoint_every: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            jobs: None,
            max_n: DEFAULT_MAX_N,
            spectral: SpectralOptions::default(),
            checkpoint: None,
            resume: false,
            checkpoint_every: 1_000_000,
        }
    }
}

impl SearchOptions {
    pub fn with_jobs(jobs: usize) -> Self {
        SearchOptions {
            jobs: Some(jobs),
            ..Default::default()
        }
    }
}

/// Runs `f` on a dedicated pool of `jobs` threads, or inline.
pub(crate) fn in_pool<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(0) => Err(Error::InvalidParameter("jobs must be at least 1".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}"))),
    }
}

/// Running maximum with every candidate within the tie tolerance.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
struct Tally {
    examined: u64,
    free: u64,
    best: Option<f64>,
    witnesses: Vec<(f64, String)>,
}

impl Tally {
    fn offer(&mut self, score: f64, graph6: String, tie: f64) {
        let best = match self.best {
            Some(b) if b >= score => b,
            _ => {
                self.best = Some(score);
                self.witnesses.retain(|w| w.0 >= score - tie);
                score
            }
        };
        if score >= best - tie {
            self.witnesses.push((score, graph6));
        }
    }

    fn absorb(&mut self, other: Tally, tie: f64) {
        self.examined += other.examined;
        self.free += other.free;
        for (score, g6) in other.witnesses {
            self.offer(score, g6, tie);
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Checkpoint {
    n: usize,
    k: usize,
    r: usize,
    mode: Mode,
    parents: usize,
    next_parent: usize,
    tally: Tally,
}

impl Checkpoint {
    fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))
    }

    fn store(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string(self).map_err(|e| Error::Checkpoint(e.to_string()))?;
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, text)
            .and_then(|_| std::fs::rename(&tmp, path))
            .map_err(|e| Error::Checkpoint(format!("{}: {e}", path.display())))
    }
}

fn score(g: &Graph, mode: Mode, opts: &SpectralOptions) -> Result<f64> {
    Ok(match mode {
        Mode::Edges => g.edge_count() as f64,
        Mode::Lambda => spectral_radius(g, opts)?.lambda,
    })
}

fn tally_children(parent: &Graph, spec: FanSpec, mode: Mode, opts: &SpectralOptions, tie: f64) -> Result<Tally> {
    let mut t = Tally::default();
    for g in children(parent)? {
        t.examined += 1;
        if is_fan_free(&g, spec) {
            t.free += 1;
            t.offer(score(&g, mode, opts)?, g.to_graph6(), tie);
        }
    }
    Ok(t)
}

/// Exact maximum of `e(G)` or `λ(G)` over all `F_{k,r}`-free graphs on `n`
/// vertices, with every maximizer (spectral ties within [`LAMBDA_TIE`]).
///
/// `graphs_examined` counts the classes on `n` vertices generated from
/// fan-free parents; every class it skips contains the fan already on
/// `n - 1` vertices.
pub fn brute_force_extremal(n: usize, spec: FanSpec, mode: Mode, opts: &SearchOptions) -> Result<ExtremalReport> {
    check_cap(n, opts.max_n)?;
    opts.spectral.validate()?;
    let tie = if mode == Mode::Lambda { LAMBDA_TIE } else { 0.0 };
    let tally = in_pool(opts.jobs, || -> Result<Tally> {
        if n == 0 {
            let mut t = Tally::default();
            let g = Graph::empty(0)?;
            t.examined = 1;
            t.free = 1;
            t.offer(0.0, g.to_graph6(), tie);
            return Ok(t);
        }
        let keep = |g: &Graph| is_fan_free(g, spec);
        let mut levels = Levels::new(opts.max_n, &keep)?;
        levels.advance_to(n - 1)?;
        let parents = levels.current();
        let (mut tally, mut next) = match (&opts.checkpoint, opts.resume) {
            (Some(path), true) if path.exists() => {
                let c = Checkpoint::load(path)?;
                if (c.n, c.k, c.r, c.mode, c.parents) != (n, spec.k(), spec.r(), mode, parents.len())
                    || c.next_parent > c.parents
                {
                    return Err(Error::Checkpoint(format!(
                        "{} was written for a different search",
                        path.display()
                    )));
                }
                (c.tally, c.next_parent)
            }
            _ => (Tally::default(), 0),
        };
        let mut since_write = 0u64;
        while next < parents.len() {
            let end = (next + PARENT_CHUNK).min(parents.len());
            let parts: Vec<Tally> = parents[next..end]
                .par_iter()
                .map(|p| tally_children(p, spec, mode, &opts.spectral, tie))
                .collect::<Result<_>>()?;
            for t in parts {
                since_write += t.examined;
                tally.absorb(t, tie);
            }
            next = end;
            if let Some(path) = &opts.checkpoint {
                if since_write >= opts.checkpoint_every || next == parents.len() {
                    since_write = 0;
                    Checkpoint {
                        n,
                        k: spec.k(),
                        r: spec.r(),
                        mode,
                        parents: parents.len(),
                        next_parent: next,
                        tally: tally.clone(),
                    }
                    .store(path)?;
                }
            }
        }
        Ok(tally)
    })??;

    let best = tally.best.expect("the edgeless graph is always fan-free");
    let best_value = match mode {
        Mode::Edges => BestValue::Edges(best as u64),
        Mode::Lambda => BestValue::Lambda(best),
    };
    let mut witnesses: Vec<String> = tally.witnesses.into_iter().map(|w| w.1).collect();
    witnesses.sort_unstable();
    witnesses.dedup();
    for w in &witnesses {
        assert!(
            is_fan_free(&Graph::from_graph6(w)?, spec),
            "collected witness {w} contains {spec}"
        );
    }
    ExtremalReport::assemble(n, spec, mode, best_value, witnesses, tally.examined, tally.free)
}

/// Exhaustive value of `f(β, Δ)` over graphs on at most `n_max` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingDegreeReport {
    pub beta: usize,
    pub delta: usize,
    pub n_max: usize,
    pub best_value: u64,
    pub formula_value: u64,
    pub matches_formula: bool,
    /// Maximizers without isolated vertices, as sorted graph6 strings.
    pub witnesses: Vec<String>,
    /// Classes with `β <= beta` and `Δ <= delta`, over all orders.
    pub graphs_examined: u64,
}

/// Largest edge count among graphs on at most `n_max` vertices with
/// matching number at most `beta` and maximum degree at most `delta`.
pub fn brute_force_f(beta: usize, delta: usize, n_max: usize, opts: &SearchOptions) -> Result<MatchingDegreeReport> {
    check_cap(n_max, opts.max_n)?;
    let keep = |g: &Graph| g.max_degree() <= delta && matching_number(g) <= beta;
    let (examined, mut found) = in_pool(opts.jobs, || -> Result<(u64, Vec<(u64, String)>)> {
        let mut levels = Levels::new(opts.max_n, &keep)?;
        let mut examined = 0u64;
        let mut found = Vec::new();
        loop {
            examined += levels.current().len() as u64;
            found.extend(
                levels
                    .current()
                    .iter()
                    .filter(|g| g.non_isolated().len() == g.n())
                    .map(|g| (g.edge_count() as u64, g.to_graph6())),
            );
            if levels.order() == n_max {
                break;
            }
            levels.advance()?;
        }
        Ok((examined, found))
    })??;
    let best_value = found.iter().map(|w| w.0).max().unwrap_or(0);
    found.retain(|w| w.0 == best_value);
    let mut witnesses: Vec<String> = found.into_iter().map(|w| w.1).collect();
    witnesses.sort_unstable();
    let formula_value = chvatal_hanson_f(beta as u64, delta as u64);
    Ok(MatchingDegreeReport {
        beta,
        delta,
        n_max,
        best_value,
        formula_value,
        matches_formula: best_value == formula_value,
        witnesses,
        graphs_examined: examined,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::turan_graph;
    use crate::graph::canonical_form;

    fn spec(k: usize, r: usize) -> FanSpec {
        FanSpec::new(k, r).unwrap()
    }

    fn contains_class(report: &ExtremalReport, g: &Graph) -> bool {
        let c = canonical_form(g).unwrap().to_graph6();
        report.witnesses.contains(&c)
    }

    #[test]
    fn triangle_free_on_five_vertices() {
        let opts = SearchOptions::default();
        let edges = brute_force_extremal(5, spec(1, 3), Mode::Edges, &opts).unwrap();
        assert_eq!(edges.best_value, BestValue::Edges(6));
        assert!(contains_class(&edges, &turan_graph(5, 2).unwrap()));
        assert!(edges.matches_formula);

        let lambda = brute_force_extremal(5, spec(1, 3), Mode::Lambda, &opts).unwrap();
        let BestValue::Lambda(l) = lambda.best_value else {
            panic!("spectral search returned {:?}", lambda.best_value)
        };
        assert!((l - 6f64.sqrt()).abs() < 1e-8);
        assert_eq!(
            lambda.witnesses,
            vec![canonical_form(&turan_graph(5, 2).unwrap()).unwrap().to_graph6()]
        );
    }

    #[test]
    fn friendship_free_on_five_vertices() {
        let r = brute_force_extremal(5, spec(2, 3), Mode::Edges, &SearchOptions::default()).unwrap();
        // K_5 minus two edges always leaves a vertex whose neighbourhood
        // holds two disjoint edges, so 7 is the most possible.
        assert_eq!(r.best_value, BestValue::Edges(7));
        assert_eq!(r.formula_value, Some(7));
        assert!(!r.applicable);
        assert_eq!(r.graphs_examined, 34);
    }

    #[test]
    fn witnesses_are_free_and_attain_the_maximum() {
        let s = spec(2, 3);
        let r = brute_force_extremal(6, s, Mode::Lambda, &SearchOptions::default()).unwrap();
        let best = r.best_value.as_f64();
        for w in &r.witnesses {
            let g = Graph::from_graph6(w).unwrap();
            assert_eq!(g.n(), 6);
            assert!(is_fan_free(&g, s));
            let l = spectral_radius(&g, &SpectralOptions::default()).unwrap().lambda;
            assert!((l - best).abs() <= LAMBDA_TIE);
        }
    }

    #[test]
    fn report_is_independent_of_thread_count() {
        let one = brute_force_extremal(6, spec(2, 3), Mode::Lambda, &SearchOptions::with_jobs(1)).unwrap();
        let four = brute_force_extremal(6, spec(2, 3), Mode::Lambda, &SearchOptions::with_jobs(4)).unwrap();
        assert_eq!(
            serde_json::to_string(&one).unwrap(),
            serde_json::to_string(&four).unwrap()
        );
    }

    #[test]
    fn resume_reproduces_a_fresh_run() {
        let dir = std::env::temp_dir().join(format!("fanspec-ckpt-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("state.json");
        let fresh = brute_force_extremal(7, spec(1, 3), Mode::Edges, &SearchOptions::default()).unwrap();

        let mut opts = SearchOptions {
            checkpoint: Some(path.clone()),
            checkpoint_every: 1,
            ..Default::default()
        };
        let first = brute_force_extremal(7, spec(1, 3), Mode::Edges, &opts).unwrap();
        assert_eq!(first, fresh);

        // Rewind the sidecar to its start and resume from there.
        let mut c = Checkpoint::load(&path).unwrap();
        c.next_parent = 0;
        c.tally = Tally::default();
        c.store(&path).unwrap();
        opts.resume = true;
        assert_eq!(brute_force_extremal(7, spec(1, 3), Mode::Edges, &opts).unwrap(), fresh);

        let bad = Checkpoint {
            n: 6,
            ..Checkpoint::load(&path).unwrap()
        };
        bad.store(&path).unwrap();
        assert!(matches!(
            brute_force_extremal(7, spec(1, 3), Mode::Edges, &opts),
            Err(Error::Checkpoint(_))
        ));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn tally_keeps_near_ties_only() {
        let mut t = Tally::default();
        t.offer(1.0, "a".into(), 0.1);
        t.offer(1.05, "b".into(), 0.1);
        t.offer(1.2, "c".into(), 0.1);
        t.offer(1.15, "d".into(), 0.1);
        t.offer(0.5, "e".into(), 0.1);
        let names: Vec<&str> = t.witnesses.iter().map(|w| w.1.as_str()).collect();
        assert_eq!(names, ["c", "d"]);
    }

    #[test]
    fn matching_degree_examples() {
        let opts = SearchOptions::default();
        assert_eq!(brute_force_f(1, 1, 4, &opts).unwrap().best_value, 1);
        let r = brute_force_f(2, 2, 6, &opts).unwrap();
        assert_eq!(r.best_value, 6);
        assert!(r.matches_formula);
        assert!(r.witnesses.contains(
            &canonical_form(&crate::constructors::chvatal_hanson_extremal(3).unwrap())
                .unwrap()
                .to_graph6()
        ));
        assert_eq!(brute_force_f(0, 3, 5, &opts).unwrap().best_value, 0);
    }

    #[test]
    fn mode_parsing() {
        assert_eq!("edges".parse::<Mode>().unwrap(), Mode::Edges);
        assert_eq!("lambda".parse::<Mode>().unwrap(), Mode::Lambda);
        assert!("vertices".parse::<Mode>().is_err());
        assert_eq!(serde_json::to_string(&Mode::Lambda).unwrap(), "\"lambda\"");
    }
}
