//! Fixed-width bit sets used as search-state keys.

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub(crate) fn new(len: usize) -> BitSet {
        BitSet { words: vec![0; len.div_ceil(64).max(1)] }
    }

    pub(crate) fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    pub(crate) fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1u64 << (i % 64)) != 0
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + t)
            })
        })
    }
}

/// Operations the searches need from a state key.
pub(crate) trait Bits: Clone + Eq + std::hash::Hash {
    fn with_len(len: usize) -> Self;
    fn set(&mut self, i: usize);
    fn has(&self, i: usize) -> bool;
    fn union(&self, other: &Self) -> Self;
    fn first_common(&self, other: &Self) -> Option<usize>;
}

impl Bits for u128 {
    fn with_len(len: usize) -> u128 {
        assert!(len <= 128);
        0
    }

    fn set(&mut self, i: usize) {
        *self |= 1 << i;
    }

    fn has(&self, i: usize) -> bool {
        self >> i & 1 == 1
    }

    fn union(&self, other: &u128) -> u128 {
        self | other
    }

    fn first_common(&self, other: &u128) -> Option<usize> {
        let c = self & other;
        (c != 0).then(|| c.trailing_zeros() as usize)
    }
}

impl Bits for BitSet {
    fn with_len(len: usize) -> BitSet {
        BitSet::new(len)
    }

    fn set(&mut self, i: usize) {
        self.insert(i);
    }

    fn has(&self, i: usize) -> bool {
        self.contains(i)
    }

    fn union(&self, other: &BitSet) -> BitSet {
        BitSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect() }
    }

    fn first_common(&self, other: &BitSet) -> Option<usize> {
        self.words.iter().zip(&other.words).enumerate().find_map(|(i, (a, b))| {
            let c = a & b;
            (c != 0).then(|| i * 64 + c.trailing_zeros() as usize)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut a = BitSet::new(130);
        assert!(a.insert(3));
        assert!(!a.insert(3));
        a.insert(129);
        assert!(a.contains(129) && !a.contains(128));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![3, 129]);
        let mut b = BitSet::new(130);
        b.insert(129);
        assert_eq!(Bits::first_common(&a, &b), Some(129));
    }
}
