//! Largest eigenvalues of adjacency and signless Laplacian matrices, the
//! complete multipartite eigenvalue equation and characteristic polynomial.
//!
//! Eigenpairs come from power iteration. For the adjacency matrix the
//! iteration runs on `A + σI` with `σ = max(1, Δ/2)`, which is primitive on
//! a connected graph and so does not oscillate between `λ` and `-λ` on
//! bipartite graphs. Iteration
//! stops when the infinity norm of `Ax - λx` (with `max x = 1`) falls below
//! the tolerance; `λ` is the Rayleigh quotient of the current iterate.

use crate::constructors::{Constructed, FanSpec, PartitionSizes};
use crate::error::{Error, Result};
use crate::graph::{Graph, PartitionedGraph};
use serde::{Deserialize, Serialize};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITERS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralOptions {
    pub tol: f64,
    pub max_iters: usize,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            tol: DEFAULT_TOL,
            max_iters: DEFAULT_MAX_ITERS,
        }
    }
}

impl SpectralOptions {
    pub fn with_tol(tol: f64) -> Self {
        SpectralOptions {
            tol,
            ..Default::default()
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}

/// Largest eigenvalue with a nonnegative eigenvector scaled to maximum
/// entry 1.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub lambda: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
    pub iterations: usize,
}

impl SpectrumResult {
    /// Index of the first maximum entry (the vertex `z` with `x_z = 1`).
    pub fn argmax(&self) -> Option<usize> {
        self.vector.iter().position(|&x| x == 1.0)
    }

    pub fn min_entry(&self) -> f64 {
        self.vector.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

enum Matrix {
    Adjacency,
    SignlessLaplacian,
}

/// Neumaier-compensated sum.
pub(crate) fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut carry) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// Shift for adjacency iteration. Any positive shift makes `A + σI`
/// primitive on a connected graph; `σ >= Δ/2` also keeps every eigenvalue
/// on the negative side below a third of the dominant one, so the error does
/// not flip sign slowly from step to step.
fn adjacency_shift(max_degree: usize) -> f64 {
    (max_degree as f64 / 2.0).max(1.0)
}

fn power_iteration(
    n: usize,
    apply: impl Fn(&[f64], &mut [f64]),
    shift: f64,
    opts: &SpectralOptions,
) -> Result<SpectrumResult> {
    let mut x = vec![1.0; n];
    let mut y = vec![0.0; n];
    let mut lambda = 0.0;
    let mut residual = f64::INFINITY;
    for iteration in 0..=opts.max_iters {
        apply(&x, &mut y);
        let xy = compensated_sum(x.iter().zip(&y).map(|(a, b)| a * b));
        let xx = compensated_sum(x.iter().map(|a| a * a));
        lambda = xy / xx;
        residual = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (b - lambda * a).abs())
            .fold(0.0, f64::max);
        if residual <= opts.tol {
            return Ok(SpectrumResult {
                lambda,
                vector: x,
                residual,
                iterations: iteration,
            });
        }
        if iteration == opts.max_iters {
            break;
        }
        for (a, b) in x.iter_mut().zip(&y) {
            *a = b + shift * *a;
        }
        // Dividing by the largest entry pins it to exactly 1.
        let top = x.iter().copied().fold(0.0, f64::max);
        for a in &mut x {
            *a /= top;
        }
    }
    Err(Error::NoConvergence {
        lambda,
        residual,
        iterations: opts.max_iters,
    })
}

fn dense_apply(g: &Graph, matrix: &Matrix, x: &[f64], y: &mut [f64]) {
    for (v, out) in y.iter_mut().enumerate() {
        let s: f64 = g.neighbors(v).map(|u| x[u]).sum();
        *out = match matrix {
            Matrix::Adjacency => s,
            Matrix::SignlessLaplacian => s + g.degree(v) as f64 * x[v],
        };
    }
}

fn dense_largest(g: &Graph, matrix: Matrix, opts: &SpectralOptions) -> Result<SpectrumResult> {
    opts.validate()?;
    let n = g.n();
    let mut best: Option<(Vec<usize>, SpectrumResult)> = None;
    for comp in g.components() {
        let res = if comp.len() == 1 {
            SpectrumResult {
                lambda: 0.0,
                vector: vec![1.0],
                residual: 0.0,
                iterations: 0,
            }
        } else {
            let h = g.induced_subgraph(&comp)?;
            let shift = match matrix {
                Matrix::Adjacency => adjacency_shift(h.max_degree()),
                Matrix::SignlessLaplacian => 0.0,
            };
            power_iteration(h.n(), |x, y| dense_apply(&h, &matrix, x, y), shift, opts)?
        };
        if best.as_ref().is_none_or(|(_, b)| res.lambda > b.lambda) {
            best = Some((comp, res));
        }
    }
    let Some((comp, res)) = best else {
        return Ok(SpectrumResult {
            lambda: 0.0,
            vector: Vec::new(),
            residual: 0.0,
            iterations: 0,
        });
    };
    let mut vector = vec![0.0; n];
    for (i, &v) in comp.iter().enumerate() {
        vector[v] = res.vector[i];
    }
    Ok(SpectrumResult { vector, ..res })
}

/// Adjacency spectral radius `λ(G)` and a Perron vector. For a disconnected
/// graph the vector lives on the first component attaining the maximum.
pub fn spectral_radius(g: &Graph, opts: &SpectralOptions) -> Result<SpectrumResult> {
    dense_largest(g, Matrix::Adjacency, opts)
}

/// [`spectral_radius`] for a block-structured graph, using the `O(n)`
/// matrix-vector product.
pub fn spectral_radius_partitioned(g: &PartitionedGraph, opts: &SpectralOptions) -> Result<SpectrumResult> {
    opts.validate()?;
    if !g.is_connected() {
        return spectral_radius(&g.to_graph()?, opts);
    }
    power_iteration(
        g.n(),
        |x, y| g.adjacency_apply(x, y),
        adjacency_shift(g.max_degree()),
        opts,
    )
}

/// Largest eigenvalue of `Q(G) = D(G) + A(G)`.
pub fn signless_laplacian_radius(g: &Graph, opts: &SpectralOptions) -> Result<SpectrumResult> {
    dense_largest(g, Matrix::SignlessLaplacian, opts)
}

/// `2 Σ_{uv ∈ E} x_u x_v / Σ x_v²`.
pub fn rayleigh_quotient(g: &Graph, x: &[f64]) -> Result<f64> {
    if x.len() != g.n() {
        return Err(Error::InvalidParameter(format!(
            "vector has length {} but the graph has {} vertices",
            x.len(),
            g.n()
        )));
    }
    let norm: f64 = x.iter().map(|a| a * a).sum();
    if norm == 0.0 {
        return Err(Error::InvalidParameter("zero vector".into()));
    }
    let form: f64 = g.edges().map(|(u, v)| x[u] * x[v]).sum();
    Ok(2.0 * form / norm)
}

/// Root of `Σ n_i / (λ + n_i) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultipartiteRoot {
    pub lambda: f64,
    /// `|Σ n_i / (λ + n_i) - 1|` at the returned `λ`.
    pub residual: f64,
    /// Set for a single part: the graph has no edges and `λ = 0`.
    pub edgeless: bool,
}

/// `Σ n_i / (λ + n_i)`.
pub fn multipartite_secular(sizes: &[usize], lambda: f64) -> f64 {
    sizes.iter().map(|&s| s as f64 / (lambda + s as f64)).sum()
}

/// The spectral radius of `K_{n_1, ..., n_p}` as the unique root of
/// `Σ n_i / (λ + n_i) = 1` in `[n - max n_i - 1, n]`, by Newton steps
/// safeguarded with bisection.
pub fn multipartite_spectral_radius(sizes: &PartitionSizes, tol: f64) -> Result<MultipartiteRoot> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let s = sizes.as_slice();
    if s.len() == 1 {
        return Ok(MultipartiteRoot {
            lambda: 0.0,
            residual: 0.0,
            edgeless: true,
        });
    }
    let n = sizes.n() as f64;
    let (mut lo, mut hi) = (n - sizes.largest() as f64 - 1.0, n);
    let derivative = |l: f64| -> f64 { -s.iter().map(|&m| m as f64 / (l + m as f64).powi(2)).sum::<f64>() };
    let mut lambda = 0.5 * (lo + hi);
    for _ in 0..200 {
        let g = multipartite_secular(s, lambda) - 1.0;
        if g == 0.0 {
            break;
        }
        if g > 0.0 {
            lo = lambda;
        } else {
            hi = lambda;
        }
        let newton = lambda - g / derivative(lambda);
        let next = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if next == lambda || hi - lo <= f64::EPSILON * hi {
            break;
        }
        lambda = next;
    }
    let residual = (multipartite_secular(s, lambda) - 1.0).abs();
    if residual > tol {
        return Err(Error::NoConvergence {
            lambda,
            residual,
            iterations: 200,
        });
    }
    Ok(MultipartiteRoot {
        lambda,
        residual,
        edgeless: false,
    })
}

/// `φ(K_{n_1..n_p}, x) = x^{n-p} [Π (x + n_j) - Σ_i n_i Π_{j≠i} (x + n_j)]`,
/// the polynomial form of the characteristic polynomial (no poles at
/// `x = -n_j`).
pub fn multipartite_charpoly_eval(sizes: &PartitionSizes, x: f64) -> f64 {
    let s = sizes.as_slice();
    let n = sizes.n();
    let full: f64 = s.iter().map(|&m| x + m as f64).product();
    let partial: f64 = (0..s.len())
        .map(|i| {
            s[i] as f64
                * s.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &m)| x + m as f64)
                    .product::<f64>()
        })
        .sum();
    x.powi((n - s.len()) as i32) * (full - partial)
}

/// Exact integer evaluation of [`multipartite_charpoly_eval`].
pub fn multipartite_charpoly_exact(sizes: &PartitionSizes, x: i64) -> Result<i128> {
    let overflow = || Error::InvalidParameter("characteristic polynomial value overflows i128".into());
    let s = sizes.as_slice();
    let x = x as i128;
    let product = |skip: Option<usize>| -> Result<i128> {
        s.iter()
            .enumerate()
            .filter(|&(j, _)| Some(j) != skip)
            .try_fold(1i128, |acc, (_, &m)| {
                acc.checked_mul(x + m as i128).ok_or_else(overflow)
            })
    };
    let mut bracket = product(None)?;
    for (i, &m) in s.iter().enumerate() {
        let term = (m as i128).checked_mul(product(Some(i))?).ok_or_else(overflow)?;
        bracket = bracket.checked_sub(term).ok_or_else(overflow)?;
    }
    let power = x.checked_pow((sizes.n() - s.len()) as u32).ok_or_else(overflow)?;
    power.checked_mul(bracket).ok_or_else(overflow)
}

/// Lower bound `(1 - 1/(r-1)) n - (r-1)/(4n)` on the maximum spectral radius
/// of an `F_{k,r}`-free graph on `n` vertices.
pub fn maximizer_lower_bound(n: usize, r: usize) -> f64 {
    let (n, p) = (n as f64, (r - 1) as f64);
    (1.0 - 1.0 / p) * n - p / (4.0 * n)
}

/// `1 - 20 k² r² / n`.
pub fn perron_entry_bound(n: usize, spec: FanSpec) -> f64 {
    let (k, r) = (spec.k() as f64, spec.r() as f64);
    1.0 - 20.0 * k * k * r * r / n as f64
}

/// Anything whose adjacency spectral radius can be computed.
pub trait SpectralInput {
    fn order(&self) -> usize;
    fn connected(&self) -> bool;
    fn adjacency_radius(&self, opts: &SpectralOptions) -> Result<SpectrumResult>;
}

impl SpectralInput for Graph {
    fn order(&self) -> usize {
        self.n()
    }
    fn connected(&self) -> bool {
        self.is_connected()
    }
    fn adjacency_radius(&self, opts: &SpectralOptions) -> Result<SpectrumResult> {
        spectral_radius(self, opts)
    }
}

impl SpectralInput for PartitionedGraph {
    fn order(&self) -> usize {
        self.n()
    }
    fn connected(&self) -> bool {
        self.is_connected() || self.to_graph().map(|g| g.is_connected()).unwrap_or(false)
    }
    fn adjacency_radius(&self, opts: &SpectralOptions) -> Result<SpectrumResult> {
        spectral_radius_partitioned(self, opts)
    }
}

impl SpectralInput for Constructed {
    fn order(&self) -> usize {
        self.n()
    }
    fn connected(&self) -> bool {
        match self {
            Constructed::Dense(g) => g.connected(),
            Constructed::Partitioned(g) => g.connected(),
        }
    }
    fn adjacency_radius(&self, opts: &SpectralOptions) -> Result<SpectrumResult> {
        match self {
            Constructed::Dense(g) => g.adjacency_radius(opts),
            Constructed::Partitioned(g) => g.adjacency_radius(opts),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerronBoundCheck {
    pub min_entry: f64,
    pub bound: f64,
    pub holds: bool,
}

/// Compares the smallest Perron entry (maximum entry normalized to 1) with
/// `1 - 20 k² r² / n`.
pub fn perron_entry_bound_check<G: SpectralInput>(
    g: &G,
    spec: FanSpec,
    opts: &SpectralOptions,
) -> Result<PerronBoundCheck> {
    if !g.connected() {
        return Err(Error::Disconnected);
    }
    let res = g.adjacency_radius(opts)?;
    let min_entry = res.min_entry();
    let bound = perron_entry_bound(g.order(), spec);
    Ok(PerronBoundCheck {
        min_entry,
        bound,
        holds: min_entry >= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{complete_multipartite, extremal_fan_graph, split_graph};

    fn opts() -> SpectralOptions {
        SpectralOptions::default()
    }

    fn petersen() -> Graph {
        Graph::from_edges(
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
        .unwrap()
    }

    #[test]
    fn spectral_radius_examples() {
        let c4 = Graph::cycle(4).unwrap();
        let r = spectral_radius(&c4, &opts()).unwrap();
        assert!((r.lambda - 2.0).abs() < 1e-9);
        assert!(r.residual <= 1e-10);

        let star = split_graph(4, 1).unwrap();
        let r = spectral_radius(&star, &opts()).unwrap();
        assert!((r.lambda - 3f64.sqrt()).abs() < 1e-9);
        assert_eq!(r.argmax(), Some(0));

        let r = spectral_radius(&petersen(), &opts()).unwrap();
        assert!((r.lambda - 3.0).abs() < 1e-9);
        assert!(r.vector.iter().all(|&x| (x - 1.0).abs() < 1e-9));
    }

    #[test]
    fn disconnected_uses_first_best_component() {
        let g = Graph::complete(2)
            .unwrap()
            .disjoint_union(&Graph::complete(4).unwrap())
            .unwrap()
            .disjoint_union(&Graph::complete(4).unwrap())
            .unwrap();
        let r = spectral_radius(&g, &opts()).unwrap();
        assert!((r.lambda - 3.0).abs() < 1e-9);
        assert_eq!(&r.vector[..2], &[0.0, 0.0]);
        assert!(r.vector[2..6].iter().all(|&x| (x - 1.0).abs() < 1e-9));
        assert!(r.vector[6..].iter().all(|&x| x == 0.0));

        let e = Graph::empty(3).unwrap();
        let r = spectral_radius(&e, &opts()).unwrap();
        assert_eq!((r.lambda, r.vector.clone()), (0.0, vec![1.0, 0.0, 0.0]));
        let r = spectral_radius(&Graph::empty(0).unwrap(), &opts()).unwrap();
        assert!(r.vector.is_empty());
    }

    #[test]
    fn budget_exhaustion_reports_progress() {
        let o = SpectralOptions {
            tol: 1e-14,
            max_iters: 2,
        };
        match spectral_radius(&Graph::path(7).unwrap(), &o) {
            Err(Error::NoConvergence {
                iterations, residual, ..
            }) => {
                assert_eq!(iterations, 2);
                assert!(residual > 1e-14);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(spectral_radius(&Graph::path(3).unwrap(), &SpectralOptions::with_tol(0.0)).is_err());
    }

    #[test]
    fn rayleigh_examples() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(rayleigh_quotient(&k2, &[1.0, 1.0]).unwrap(), 1.0);
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(rayleigh_quotient(&c4, &[1.0, 0.0, 0.0, 0.0]).unwrap(), 0.0);
        assert!(rayleigh_quotient(&c4, &[0.0; 4]).is_err());
        let g = petersen();
        let r = spectral_radius(&g, &opts()).unwrap();
        assert!((rayleigh_quotient(&g, &r.vector).unwrap() - r.lambda).abs() < 1e-10);
    }

    #[test]
    fn multipartite_root_examples() {
        let root = |v: Vec<usize>| multipartite_spectral_radius(&PartitionSizes::new(v).unwrap(), 1e-12).unwrap();
        assert!((root(vec![2, 2]).lambda - 2.0).abs() < 1e-12);
        assert!((root(vec![4, 2]).lambda - 8f64.sqrt()).abs() < 1e-12);
        assert!((root(vec![3, 3, 3]).lambda - 6.0).abs() < 1e-12);
        let single = root(vec![5]);
        assert!(single.edgeless);
        assert_eq!(single.lambda, 0.0);
    }

    #[test]
    fn multipartite_root_matches_power_iteration() {
        for sizes in [vec![5, 3, 1], vec![7, 7, 2, 1], vec![1, 1], vec![10, 1]] {
            let ps = PartitionSizes::new(sizes).unwrap();
            let root = multipartite_spectral_radius(&ps, 1e-12).unwrap();
            let (g, _) = complete_multipartite(&ps).unwrap();
            let power = spectral_radius(&g, &opts()).unwrap();
            assert!((root.lambda - power.lambda).abs() < 1e-8);
        }
    }

    #[test]
    fn charpoly_examples() {
        let s22 = PartitionSizes::new(vec![2, 2]).unwrap();
        assert_eq!(multipartite_charpoly_eval(&s22, 2.0), 0.0);
        assert_eq!(multipartite_charpoly_eval(&s22, 3.0), 45.0);
        assert_eq!(multipartite_charpoly_exact(&s22, 3).unwrap(), 45);
        let s11 = PartitionSizes::new(vec![1, 1]).unwrap();
        assert_eq!(multipartite_charpoly_eval(&s11, 1.0), 0.0);
        assert_eq!(multipartite_charpoly_exact(&s11, -1).unwrap(), 0);
    }

    #[test]
    fn signless_laplacian_examples() {
        for n in 2..=6 {
            let q = signless_laplacian_radius(&Graph::complete(n).unwrap(), &opts()).unwrap();
            assert!((q.lambda - (2 * n - 2) as f64).abs() < 1e-9);
        }
        for n in 3..=6 {
            let q = signless_laplacian_radius(&Graph::cycle(n).unwrap(), &opts()).unwrap();
            assert!((q.lambda - 4.0).abs() < 1e-9);
        }
        let q = signless_laplacian_radius(&split_graph(4, 1).unwrap(), &opts()).unwrap();
        assert!((q.lambda - 4.0).abs() < 1e-9);
    }

    #[test]
    fn partitioned_matches_dense() {
        let spec = FanSpec::new(2, 4).unwrap();
        let g = extremal_fan_graph(40, spec, Some(2)).unwrap();
        let a = spectral_radius_partitioned(&g, &opts()).unwrap();
        let b = spectral_radius(&g.to_graph().unwrap(), &opts()).unwrap();
        assert!((a.lambda - b.lambda).abs() < 1e-9);
        for (x, y) in a.vector.iter().zip(&b.vector) {
            assert!((x - y).abs() < 1e-8);
        }
    }

    #[test]
    fn perron_bound_examples() {
        let spec = FanSpec::new(2, 3).unwrap();
        let k6 = Graph::complete(6).unwrap();
        let c = perron_entry_bound_check(&k6, spec, &opts()).unwrap();
        assert!((c.min_entry - 1.0).abs() < 1e-12);
        assert!(c.holds);

        let star = split_graph(4, 1).unwrap();
        let c = perron_entry_bound_check(&star, FanSpec::new(1, 2).unwrap(), &opts()).unwrap();
        assert_eq!(c.bound, -19.0);
        assert!(c.holds);

        let two = Graph::complete(2)
            .unwrap()
            .disjoint_union(&Graph::complete(2).unwrap())
            .unwrap();
        assert_eq!(perron_entry_bound_check(&two, spec, &opts()), Err(Error::Disconnected));
    }
}
