//! Fixed-width membership sets over element ids.

use std::cmp::Ordering;
use std::fmt;

type Block = u64;
const BITS: usize = Block::BITS as usize;

/// A subset of `0..universe`, stored as packed 64-bit blocks.
///
/// Ordering is lexicographic on the sorted element lists, which is the order
/// used for every deterministic tie-break in the crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    universe: u32,
    blocks: Box<[Block]>,
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet {
            universe: universe as u32,
            blocks: vec![0; universe.div_ceil(BITS)].into_boxed_slice(),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self::empty(universe);
        for x in 0..universe {
            set.insert(x as u32);
        }
        set
    }

    pub fn from_elements(universe: usize, elements: impl IntoIterator<Item = u32>) -> Self {
        let mut set = Self::empty(universe);
        for x in elements {
            set.insert(x);
        }
        set
    }

    #[inline]
    pub fn universe(&self) -> usize {
        self.universe as usize
    }

    #[inline]
    pub fn insert(&mut self, x: u32) -> bool {
        let (b, i) = (x as usize / BITS, x as usize % BITS);
        let was = self.blocks[b] & (1 << i) != 0;
        self.blocks[b] |= 1 << i;
        !was
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        let (b, i) = (x as usize / BITS, x as usize % BITS);
        self.blocks[b] & (1 << i) != 0
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.blocks
            .iter()
            .zip(other.blocks.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            universe: self.universe,
            blocks: self
                .blocks
                .iter()
                .zip(other.blocks.iter())
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        for (a, b) in self.blocks.iter_mut().zip(other.blocks.iter()) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        for (a, b) in self.blocks.iter_mut().zip(other.blocks.iter()) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            blocks: &self.blocks,
            block: 0,
            current: self.blocks.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

pub struct Iter<'a> {
    blocks: &'a [Block],
    block: usize,
    current: Block,
}

impl Iterator for Iter<'_> {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some((self.block * BITS + bit) as u32);
            }
            self.block += 1;
            if self.block >= self.blocks.len() {
                return None;
            }
            self.current = self.blocks[self.block];
        }
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let mut a = ElementSet::empty(130);
        assert!(a.insert(0));
        assert!(a.insert(129));
        assert!(!a.insert(129));
        assert_eq!(a.len(), 2);
        assert_eq!(a.to_vec(), vec![0, 129]);
        let b = ElementSet::from_elements(130, [0, 5, 64]);
        assert_eq!(a.intersection(&b).to_vec(), vec![0]);
        assert!(ElementSet::from_elements(130, [0]).is_subset(&a));
        assert!(!b.is_subset(&a));
        assert_eq!(ElementSet::full(70).len(), 70);
    }

    #[test]
    fn lexicographic_order() {
        let a = ElementSet::from_elements(10, [0, 2, 4]);
        let b = ElementSet::from_elements(10, [0, 6]);
        let c = ElementSet::from_elements(10, [0, 2]);
        assert!(a < b);
        assert!(c < a);
    }

    proptest! {
        #[test]
        fn order_matches_sorted_vectors(
            xs in proptest::collection::btree_set(0u32..200, 0..20),
            ys in proptest::collection::btree_set(0u32..200, 0..20),
        ) {
            let a = ElementSet::from_elements(200, xs.iter().copied());
            let b = ElementSet::from_elements(200, ys.iter().copied());
            let va: Vec<u32> = xs.into_iter().collect();
            let vb: Vec<u32> = ys.into_iter().collect();
            prop_assert_eq!(a.cmp(&b), va.cmp(&vb));
            prop_assert_eq!(a.to_vec(), va);
        }
    }
}
