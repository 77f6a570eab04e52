use fanspec_core::constructors::{fan_graph, turan_graph};
use fanspec_core::extremal::turan_number_t;
use fanspec_core::graph::{canonical_form, Graph};
use fanspec_core::oracle::{brute_force_extremal, enumerate_graphs, BestValue, Mode, SearchOptions};
use fanspec_core::patterns::{contains_fan, matching_number};
use fanspec_core::FanSpec;
use std::collections::HashSet;

fn all_classes(max_n: usize) -> Vec<Graph> {
    (0..=max_n).flat_map(|n| enumerate_graphs(n).unwrap()).collect()
}

#[test]
fn six_vertex_classes_match_labelled_dedup() {
    let pairs: Vec<(usize, usize)> = (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).collect();
    let mut classes = HashSet::new();
    for mask in 0u32..1 << pairs.len() {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        classes.insert(canonical_form(&Graph::from_edges(6, edges).unwrap()).unwrap());
    }
    let generated: HashSet<Graph> = enumerate_graphs(6).unwrap().into_iter().collect();
    assert_eq!(classes.len(), 156);
    assert_eq!(generated, classes);
}

#[test]
fn larger_class_counts() {
    assert_eq!(enumerate_graphs(7).unwrap().len(), 1044);
    assert_eq!(enumerate_graphs(8).unwrap().len(), 12346);
}

#[test]
fn graph6_round_trips_on_every_class_up_to_seven() {
    for g in all_classes(7) {
        assert_eq!(Graph::from_graph6(&g.to_graph6()).unwrap(), g);
    }
}

fn brute_matching(g: &Graph) -> usize {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut best = 0;
    for mask in 0u32..1 << edges.len() {
        let chosen: Vec<_> = edges.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).collect();
        let mut used = 0u32;
        let disjoint = chosen.iter().all(|(_, &(u, v))| {
            let bits = 1 << u | 1 << v;
            let ok = used & bits == 0;
            used |= bits;
            ok
        });
        if disjoint {
            best = best.max(chosen.len());
        }
    }
    best
}

#[test]
fn matching_number_matches_edge_subset_search() {
    for g in all_classes(6) {
        assert_eq!(matching_number(&g), brute_matching(&g), "{g}");
    }
}

#[test]
fn stars_are_found_exactly_at_high_degree() {
    for k in 1..=5 {
        let spec = FanSpec::new(k, 2).unwrap();
        for g in all_classes(6) {
            assert_eq!(contains_fan(&g, spec).is_some(), g.max_degree() >= k, "{g} k={k}");
        }
    }
}

/// Maximal cliques by Bron–Kerbosch without pivoting.
fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    fn go(g: &Graph, r: Vec<usize>, mut p: Vec<usize>, mut x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() && x.is_empty() {
            out.push(r);
            return;
        }
        while let Some(v) = p.pop() {
            let mut r2 = r.clone();
            r2.push(v);
            let p2 = p.iter().copied().filter(|&u| g.has_edge(u, v)).collect();
            let x2 = x.iter().copied().filter(|&u| g.has_edge(u, v)).collect();
            go(g, r2, p2, x2, out);
            x.push(v);
        }
    }
    let mut out = Vec::new();
    go(g, Vec::new(), (0..g.n()).collect(), Vec::new(), &mut out);
    out
}

#[test]
fn fans_are_k_cliques_through_the_centre() {
    for k in 1..=5 {
        for r in 3..=5 {
            let g = fan_graph(FanSpec::new(k, r).unwrap()).unwrap();
            let cliques = maximal_cliques(&g);
            assert_eq!(cliques.len(), k, "k={k} r={r}");
            assert!(cliques.iter().all(|c| c.len() == r && c.contains(&0)));
        }
    }
}

#[test]
fn clique_free_maxima_are_turan_numbers() {
    let opts = SearchOptions::default();
    for p in [2, 3] {
        let spec = FanSpec::new(1, p + 1).unwrap();
        for n in 1..=7 {
            let r = brute_force_extremal(n, spec, Mode::Edges, &opts).unwrap();
            let t = turan_number_t(n, p).unwrap();
            assert_eq!(r.best_value, BestValue::Edges(t), "n={n} p={p}");
            assert!(r.matches_formula);
            let code = canonical_form(&turan_graph(n, p).unwrap()).unwrap().to_graph6();
            assert!(r.witnesses.contains(&code), "n={n} p={p}");
        }
    }
}

#[test]
fn every_witness_is_fan_free_and_extremal() {
    let opts = SearchOptions::default();
    for (k, r) in [(2, 3), (1, 4), (3, 3), (2, 4)] {
        let spec = FanSpec::new(k, r).unwrap();
        for n in 5..=7 {
            let report = brute_force_extremal(n, spec, Mode::Edges, &opts).unwrap();
            assert!(!report.witnesses.is_empty());
            assert!(report.free_count <= report.graphs_examined);
            for w in &report.witnesses {
                let g = Graph::from_graph6(w).unwrap();
                assert_eq!(g.n(), n);
                assert!(contains_fan(&g, spec).is_none(), "{w}");
                assert_eq!(BestValue::Edges(g.edge_count() as u64), report.best_value);
            }
        }
    }
}
