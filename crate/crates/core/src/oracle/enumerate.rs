//! Isomorph-free generation by canonical augmentation.
//!
//! Each graph on `n` vertices is produced from exactly one parent: the
//! class of `G - d`, where `d` is the vertex in the last canonical position
//! of `G`. A child `P + v` built from a canonical parent `P` is kept when
//! `v` is itself that last vertex, or when deleting the last vertex gives
//! back `P`. Children of one parent that coincide are merged by canonical
//! form.

use crate::error::{Error, Result};
use crate::graph::{canonical_form, canonical_labeling, Graph};
use rayon::prelude::*;
use std::collections::HashSet;

/// Default ceiling on the order of exhaustive enumeration.
pub const DEFAULT_MAX_N: usize = 10;

/// Environment variable the command line reads to raise the ceiling.
pub const MAX_N_ENV: &str = "FANSPEC_MAX_N";

/// A predicate closed under vertex deletion. Classes failing it are dropped
/// and never extended.
pub type Keep<'a> = &'a (dyn Fn(&Graph) -> bool + Sync);

fn always(_: &Graph) -> bool {
    true
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::EnumerationCap { n, cap });
    }
    if n > crate::graph::KERNEL_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: crate::graph::KERNEL_LIMIT,
            what: "enumeration",
        });
    }
    Ok(())
}

/// One canonical representative of every isomorphism class of graphs on
/// `n` vertices, for `n` up to [`DEFAULT_MAX_N`].
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>> {
    enumerate_filtered(n, DEFAULT_MAX_N, &always)
}

/// Canonical representatives of the classes on `n` vertices satisfying the
/// hereditary predicate `keep`.
pub fn enumerate_filtered(n: usize, cap: usize, keep: Keep<'_>) -> Result<Vec<Graph>> {
    let mut levels = Levels::new(cap, keep)?;
    levels.advance_to(n)?;
    Ok(levels.into_current())
}

/// Every accepted child class of the canonical graph `parent`, in
/// generation order.
pub fn children(parent: &Graph) -> Result<Vec<Graph>> {
    augment(parent)
}

/// Level-by-level generation holding the kept classes of the current order.
pub(crate) struct Levels<'a> {
    cap: usize,
    keep: Keep<'a>,
    order: usize,
    current: Vec<Graph>,
}

impl<'a> Levels<'a> {
    /// Starts at the single graph on zero vertices.
    pub(crate) fn new(cap: usize, keep: Keep<'a>) -> Result<Self> {
        let root = Graph::empty(0)?;
        let current = if keep(&root) { vec![root] } else { Vec::new() };
        Ok(Levels {
            cap,
            keep,
            order: 0,
            current,
        })
    }

    pub(crate) fn order(&self) -> usize {
        self.order
    }

    pub(crate) fn current(&self) -> &[Graph] {
        &self.current
    }

    pub(crate) fn into_current(self) -> Vec<Graph> {
        self.current
    }

    /// Replaces the current level by the kept classes one order higher.
    pub(crate) fn advance(&mut self) -> Result<()> {
        check_cap(self.order + 1, self.cap)?;
        let keep = self.keep;
        let next: Vec<Vec<Graph>> = self
            .current
            .par_iter()
            .map(|p| augment(p).map(|kids| kids.into_iter().filter(|g| keep(g)).collect()))
            .collect::<Result<_>>()?;
        self.current = next.into_iter().flatten().collect();
        self.order += 1;
        Ok(())
    }

    pub(crate) fn advance_to(&mut self, n: usize) -> Result<()> {
        check_cap(n, self.cap)?;
        while self.order < n {
            self.advance()?;
        }
        Ok(())
    }
}

fn augment(parent: &Graph) -> Result<Vec<Graph>> {
    let m = parent.n();
    if m >= 63 {
        return Err(Error::TooLarge {
            n: m + 1,
            limit: crate::graph::KERNEL_LIMIT,
            what: "enumeration",
        });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << m {
        let child = parent.with_vertex((0..m).filter(|&i| mask >> i & 1 == 1))?;
        let lab = canonical_labeling(&child)?;
        let last = lab.last_vertex().expect("child is non-empty");
        let accepted = last == m || canonical_form(&child.remove_vertex(last))? == *parent;
        if accepted && seen.insert(lab.graph.clone()) {
            out.push(lab.graph);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::matching_number;

    #[test]
    fn counts_of_small_orders() {
        let expected = [1, 1, 2, 4, 11, 34, 156, 1044];
        for (n, &count) in expected.iter().enumerate() {
            assert_eq!(enumerate_graphs(n).unwrap().len(), count, "n = {n}");
        }
    }

    #[test]
    fn representatives_are_canonical_and_distinct() {
        let all = enumerate_graphs(6).unwrap();
        let set: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        for g in &all {
            assert_eq!(&canonical_form(g).unwrap(), g);
        }
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            enumerate_filtered(5, 4, &always),
            Err(Error::EnumerationCap { n: 5, cap: 4 })
        );
        assert!(matches!(enumerate_graphs(11), Err(Error::EnumerationCap { .. })));
    }

    #[test]
    fn filtered_enumeration_matches_post_filter() {
        let keep = |g: &Graph| g.max_degree() <= 2 && matching_number(g) <= 2;
        for n in 0..=7 {
            let direct: Vec<Graph> = enumerate_graphs(n).unwrap().into_iter().filter(|g| keep(g)).collect();
            let pruned = enumerate_filtered(n, DEFAULT_MAX_N, &keep).unwrap();
            let a: HashSet<_> = direct.into_iter().collect();
            let b: HashSet<_> = pruned.iter().cloned().collect();
            assert_eq!(b.len(), pruned.len());
            assert_eq!(a, b, "n = {n}");
        }
    }

    #[test]
    fn children_of_the_single_vertex() {
        let k1 = Graph::empty(1).unwrap();
        let kids = children(&k1).unwrap();
        assert_eq!(kids.len(), 2);
    }
}
