//! Small sets of positive integers as bitmasks, used for rank subsets of
//! posets and descent sets of permutations. Bit i-1 encodes membership of i.

use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SmallSet {
    mask: u32,
}

impl SmallSet {
    pub const MAX_ELEMENT: u32 = 32;

    pub fn empty() -> SmallSet {
        SmallSet { mask: 0 }
    }

    pub fn singleton(i: u32) -> SmallSet {
        SmallSet::empty().with(i)
    }

    /// The interval [lo, hi]; empty when lo > hi.
    pub fn interval(lo: u32, hi: u32) -> SmallSet {
        let mut s = SmallSet::empty();
        if hi < lo {
            return s;
        }
        assert!(lo >= 1, "elements must be positive");
        for i in lo..=hi {
            s = s.with(i);
        }
        s
    }

    pub fn from_mask(mask: u32) -> SmallSet {
        SmallSet { mask }
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn with(self, i: u32) -> SmallSet {
        assert!(
            (1..=Self::MAX_ELEMENT).contains(&i),
            "element out of range: {i}"
        );
        SmallSet {
            mask: self.mask | (1 << (i - 1)),
        }
    }

    pub fn without(self, i: u32) -> SmallSet {
        assert!((1..=Self::MAX_ELEMENT).contains(&i));
        SmallSet {
            mask: self.mask & !(1 << (i - 1)),
        }
    }

    pub fn contains(&self, i: u32) -> bool {
        (1..=Self::MAX_ELEMENT).contains(&i) && self.mask & (1 << (i - 1)) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_subset_of(&self, other: &SmallSet) -> bool {
        self.mask & !other.mask == 0
    }

    pub fn union(&self, other: &SmallSet) -> SmallSet {
        SmallSet {
            mask: self.mask | other.mask,
        }
    }

    pub fn minus(&self, other: &SmallSet) -> SmallSet {
        SmallSet {
            mask: self.mask & !other.mask,
        }
    }

    pub fn min_elem(&self) -> Option<u32> {
        if self.mask == 0 {
            None
        } else {
            Some(self.mask.trailing_zeros() + 1)
        }
    }

    pub fn max_elem(&self) -> Option<u32> {
        if self.mask == 0 {
            None
        } else {
            Some(32 - self.mask.leading_zeros())
        }
    }

    /// No two consecutive elements.
    pub fn is_isolated(&self) -> bool {
        self.mask & (self.mask << 1) == 0
    }

    /// Drops the element 1 (if present) and shifts everything down by one,
    /// the set transform of the descent recursion.
    pub fn shift_down(&self) -> SmallSet {
        SmallSet {
            mask: self.mask >> 1,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (1..=Self::MAX_ELEMENT).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn from_elements<I: IntoIterator<Item = u32>>(iter: I) -> SmallSet {
        let mut s = SmallSet::empty();
        for i in iter {
            s = s.with(i);
        }
        s
    }

    /// All subsets of this set, in (size, lexicographic-on-sorted-elements)
    /// order.
    pub fn subsets(&self) -> Vec<SmallSet> {
        let elems = self.to_vec();
        let mut out = Vec::with_capacity(1 << elems.len());
        for pick in 0u32..(1 << elems.len()) {
            let mut s = SmallSet::empty();
            for (j, &e) in elems.iter().enumerate() {
                if pick & (1 << j) != 0 {
                    s = s.with(e);
                }
            }
            out.push(s);
        }
        sort_canonical(&mut out);
        out
    }
}

/// Deterministic order used everywhere sets are listed: by size, then
/// lexicographically on the sorted element list.
pub fn sort_canonical(sets: &mut [SmallSet]) {
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.to_vec().cmp(&b.to_vec())));
}

/// All isolated subsets of the interval [lo, hi] (no two consecutive
/// elements), in canonical order. The empty range yields just the empty set.
pub fn isolated_subsets(lo: u32, hi: u32) -> Vec<SmallSet> {
    assert!(lo >= 1, "elements must be positive");
    let mut out = Vec::new();
    if hi < lo {
        out.push(SmallSet::empty());
        return out;
    }
    let width = hi - lo + 1;
    for pick in 0u32..(1 << width) {
        if pick & (pick << 1) != 0 {
            continue;
        }
        let mut s = SmallSet::empty();
        for j in 0..width {
            if pick & (1 << j) != 0 {
                s = s.with(lo + j);
            }
        }
        out.push(s);
    }
    sort_canonical(&mut out);
    out
}

impl fmt::Display for SmallSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for i in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for SmallSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let s = SmallSet::from_elements([1, 3]);
        assert!(s.contains(1) && s.contains(3) && !s.contains(2));
        assert_eq!(s.len(), 2);
        assert_eq!(s.min_elem(), Some(1));
        assert_eq!(s.max_elem(), Some(3));
        assert!(s.is_isolated());
        assert!(!SmallSet::from_elements([1, 2]).is_isolated());
        assert_eq!(s.shift_down(), SmallSet::from_elements([2]));
        assert_eq!(SmallSet::interval(2, 4), SmallSet::from_elements([2, 3, 4]));
        assert!(SmallSet::interval(3, 2).is_empty());
        assert_eq!(s.to_string(), "{1,3}");
    }

    #[test]
    fn isolated_subsets_examples() {
        // [2,2] -> {}, {2}.
        let sets = isolated_subsets(2, 2);
        assert_eq!(sets, vec![SmallSet::empty(), SmallSet::singleton(2)]);
        // [1,2] -> {}, {1}, {2}.
        let sets = isolated_subsets(1, 2);
        assert_eq!(
            sets,
            vec![
                SmallSet::empty(),
                SmallSet::singleton(1),
                SmallSet::singleton(2)
            ]
        );
        // [1,4] has F_6 = 8 isolated subsets.
        assert_eq!(isolated_subsets(1, 4).len(), 8);
        // Brute-force cross-check against filtering all subsets.
        let all = SmallSet::interval(1, 4).subsets();
        let filtered: Vec<_> = all.into_iter().filter(|s| s.is_isolated()).collect();
        assert_eq!(isolated_subsets(1, 4), filtered);
        // Empty range keeps the empty subset only.
        assert_eq!(isolated_subsets(3, 1), vec![SmallSet::empty()]);
    }
}
