use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A subset of `{0, .., 31}` as a bitmask. Indices are 0-based internally
/// and 1-based in JSON and display.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(pub u32);

pub const MAX_INDEX: usize = 32;

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_INDEX, "index {i} out of range");
        IndexSet(1 << i)
    }

    /// `{0, .., k-1}`.
    pub fn all(k: usize) -> Self {
        assert!(k <= MAX_INDEX);
        if k == MAX_INDEX {
            IndexSet(u32::MAX)
        } else {
            IndexSet((1u32 << k) - 1)
        }
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        indices.into_iter().fold(IndexSet(0), |s, i| s.with(i))
    }

    /// From 1-based indices.
    pub fn from_one_based(indices: impl IntoIterator<Item = usize>) -> Option<Self> {
        let mut s = IndexSet(0);
        for i in indices {
            if i == 0 || i > MAX_INDEX {
                return None;
            }
            s = s.with(i - 1);
        }
        Some(s)
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        i < MAX_INDEX && self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn with(self, i: usize) -> Self {
        IndexSet(self.0 | 1 << i)
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn union(self, o: IndexSet) -> Self {
        IndexSet(self.0 | o.0)
    }

    #[inline]
    pub fn intersection(self, o: IndexSet) -> Self {
        IndexSet(self.0 & o.0)
    }

    #[inline]
    pub fn difference(self, o: IndexSet) -> Self {
        IndexSet(self.0 & !o.0)
    }

    #[inline]
    pub fn is_subset(self, o: IndexSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub fn one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// All subsets of `{0, .., k-1}` in increasing bitmask order.
    pub fn subsets(k: usize) -> impl Iterator<Item = IndexSet> {
        assert!(k < MAX_INDEX, "too many indices to enumerate subsets");
        (0u32..1 << k).map(IndexSet)
    }

    /// Number of pairs `(i, j)` with `i ∈ self`, `j ∈ other`, `i > j`.
    pub fn inversions_with(self, other: IndexSet) -> usize {
        self.iter().map(|i| other.iter().filter(|&j| j < i).count()).sum()
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        IndexSet::from_one_based(v).ok_or_else(|| serde::de::Error::custom("index out of range 1..=32"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let s = IndexSet::from_indices([0, 2]);
        assert_eq!(s.len(), 2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(s.to_string(), "{1,3}");
        assert_eq!(serde_json::to_string(&s).unwrap(), "[1,3]");
        assert_eq!(serde_json::from_str::<IndexSet>("[3,1]").unwrap(), s);
        assert!(serde_json::from_str::<IndexSet>("[0]").is_err());
        assert_eq!(IndexSet::subsets(3).count(), 8);
        assert!(IndexSet::singleton(2).is_subset(s));
        assert_eq!(IndexSet::from_indices([1, 2]).inversions_with(IndexSet::from_indices([0, 1])), 3);
    }
}
