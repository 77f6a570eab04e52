//! Browser bindings. Each export takes plain numbers or strings and returns
//! a JSON document for `www/main.js` to draw.

use fanspec_core::constructors::extremal_fan_graph;
use fanspec_core::extremal::fan_extremal_number;
use fanspec_core::spectral::{
    maximizer_lower_bound, multipartite_charpoly_eval, multipartite_spectral_radius, perron_entry_bound,
    spectral_radius_partitioned, SpectralOptions,
};
use fanspec_core::{FanSpec, PartitionSizes};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Vertex budget for anything computed in the page.
pub const MAX_VERTICES: usize = 4000;
const SAMPLES: usize = 240;

fn fail(e: impl ToString) -> String {
    e.to_string()
}

fn check_size(n: usize) -> Result<(), String> {
    if n > MAX_VERTICES {
        return Err(format!("{n} vertices is more than the page allows ({MAX_VERTICES})"));
    }
    Ok(())
}

#[derive(Serialize)]
struct Explorer {
    sizes: Vec<usize>,
    n: usize,
    edges: usize,
    lambda: f64,
    /// `(x, sign(φ(x)) · log10(1 + |φ(x)|))` over an interval containing
    /// every eigenvalue.
    curve: Vec<(f64, f64)>,
}

/// Spectral radius and a compressed characteristic-polynomial curve for the
/// complete multipartite graph with comma-separated part sizes.
#[wasm_bindgen]
pub fn multipartite_explorer(sizes: &str) -> Result<String, String> {
    let sizes: PartitionSizes = sizes.parse().map_err(fail)?;
    check_size(sizes.n())?;
    let root = multipartite_spectral_radius(&sizes, 1e-12).map_err(fail)?;
    let n = sizes.n();
    let square: usize = sizes.as_slice().iter().map(|s| s * s).sum();
    let (lo, hi) = (-(sizes.largest() as f64) - 0.5, root.lambda + 1.0);
    let curve = (0..=SAMPLES)
        .map(|i| {
            let x = lo + (hi - lo) * i as f64 / SAMPLES as f64;
            let y = multipartite_charpoly_eval(&sizes, x);
            (x, y.signum() * (1.0 + y.abs()).log10())
        })
        .collect();
    let out = Explorer {
        sizes: sizes.as_slice().to_vec(),
        n,
        edges: (n * n - square) / 2,
        lambda: root.lambda,
        curve,
    };
    serde_json::to_string(&out).map_err(fail)
}

#[derive(Serialize)]
struct SweepRow {
    n: usize,
    edges: usize,
    formula: u64,
    lambda: f64,
    lower_bound: f64,
}

/// λ of the extremal construction for `n = from, from + step, ..., to`
/// beside the lower bound `(1 - 1/(r-1)) n - (r-1)/(4n)`.
#[wasm_bindgen]
pub fn extremal_sweep(k: usize, r: usize, from: usize, to: usize, step: usize) -> Result<String, String> {
    let spec = FanSpec::new(k, r).map_err(fail)?;
    if step == 0 || from > to {
        return Err("need step > 0 and from <= to".into());
    }
    check_size(to)?;
    if (to - from) / step >= 400 {
        return Err("at most 400 points per sweep".into());
    }
    let opts = SpectralOptions::default();
    let mut rows = Vec::new();
    for n in (from..=to).step_by(step) {
        let g = extremal_fan_graph(n, spec, None).map_err(fail)?;
        let res = spectral_radius_partitioned(&g, &opts).map_err(fail)?;
        rows.push(SweepRow {
            n,
            edges: g.edge_count(),
            formula: fan_extremal_number(n, spec).map_err(fail)?.value,
            lambda: res.lambda,
            lower_bound: maximizer_lower_bound(n, r),
        });
    }
    serde_json::to_string(&rows).map_err(fail)
}

#[derive(Serialize)]
struct Profile {
    n: usize,
    lambda: f64,
    bound: f64,
    min_entry: f64,
    /// Part index of each vertex.
    part: Vec<usize>,
    /// Whether the vertex lies in the embedded small graph.
    embedded: Vec<bool>,
    vector: Vec<f64>,
}

/// Perron vector of the extremal construction on `n` vertices, with the
/// part of each vertex and the entry bound `1 - 20k²r²/n`.
#[wasm_bindgen]
pub fn perron_profile(n: usize, k: usize, r: usize) -> Result<String, String> {
    let spec = FanSpec::new(k, r).map_err(fail)?;
    check_size(n)?;
    let g = extremal_fan_graph(n, spec, None).map_err(fail)?;
    let res = spectral_radius_partitioned(&g, &SpectralOptions::default()).map_err(fail)?;
    let out = Profile {
        n,
        lambda: res.lambda,
        bound: perron_entry_bound(n, spec),
        min_entry: res.min_entry(),
        part: (0..n).map(|v| g.part_of(v)).collect(),
        embedded: (0..n).map(|v| !g.internal_neighbors(v).is_empty()).collect(),
        vector: res.vector,
    };
    serde_json::to_string(&out).map_err(fail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: Result<String, String>) -> Value {
        serde_json::from_str(&s.unwrap()).unwrap()
    }

    #[test]
    fn explorer_reports_k333() {
        let v = parse(multipartite_explorer("3,3,3"));
        assert!((v["lambda"].as_f64().unwrap() - 6.0).abs() < 1e-9);
        assert_eq!(v["edges"], 27);
        assert_eq!(v["curve"].as_array().unwrap().len(), SAMPLES + 1);
    }

    #[test]
    fn explorer_rejects_bad_sizes() {
        assert!(multipartite_explorer("3,x").is_err());
        assert!(multipartite_explorer("5000").is_err());
    }

    #[test]
    fn sweep_stays_above_the_lower_bound() {
        let v = parse(extremal_sweep(2, 3, 20, 80, 20));
        let rows = v.as_array().unwrap();
        assert_eq!(rows.len(), 4);
        for row in rows {
            assert!(row["lambda"].as_f64().unwrap() >= row["lower_bound"].as_f64().unwrap());
        }
        assert!(extremal_sweep(2, 3, 20, 10, 1).is_err());
        assert!(extremal_sweep(2, 3, 10, 20, 0).is_err());
    }

    #[test]
    fn profile_marks_the_embedded_graph() {
        let v = parse(perron_profile(60, 2, 3));
        assert_eq!(v["vector"].as_array().unwrap().len(), 60);
        let embedded = v["embedded"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|b| b.as_bool().unwrap())
            .count();
        assert!(embedded > 0 && embedded <= 4);
        assert!(v["min_entry"].as_f64().unwrap() > 0.0);
    }
}
