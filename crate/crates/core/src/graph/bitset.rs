//! Fixed-width vertex sets backed by `u64` words.

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
}

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet {
            words: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = BitSet::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_words(words: &[u64]) -> Self {
        BitSet { words: words.to_vec() }
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    #[inline]
    pub fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    #[inline]
    pub fn contains(&self, v: usize) -> bool {
        self.words[v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// `self ∩ other`, where `other` is a raw adjacency row of the same width.
    pub fn intersect_row(&self, row: &[u64]) -> BitSet {
        BitSet {
            words: self.words.iter().zip(row).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn intersection_len(&self, row: &[u64]) -> usize {
        self.words
            .iter()
            .zip(row)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// Keeps only elements strictly greater than `v`.
    pub fn retain_above(&mut self, v: usize) {
        let w = v / 64;
        for word in &mut self.words[..w] {
            *word = 0;
        }
        if w < self.words.len() {
            let bit = v % 64;
            self.words[w] &= if bit == 63 { 0 } else { !0u64 << (bit + 1) };
        }
    }

    pub fn iter(&self) -> BitIter<'_> {
        iter_bits(&self.words)
    }
}

/// Iterator over the set bits of a word slice, ascending.
pub struct BitIter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

pub fn iter_bits(words: &[u64]) -> BitIter<'_> {
    BitIter {
        words,
        index: 0,
        current: words.first().copied().unwrap_or(0),
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let t = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + t);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iteration_and_retain() {
        let mut s = BitSet::new(130);
        for v in [0, 5, 63, 64, 100, 129] {
            s.insert(v);
        }
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 5, 63, 64, 100, 129]);
        assert_eq!(s.len(), 6);
        s.retain_above(63);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![64, 100, 129]);
        s.retain_above(129);
        assert!(s.is_empty());
        assert_eq!(s.first(), None);
    }
}
