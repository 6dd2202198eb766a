use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest number of goods a [`GoodSet`] can hold.
pub const MAX_GOODS: usize = 64;

/// A set of goods stored as a bitmask over `0..64`.
///
/// Goods are 0-based inside the crate. Text formats (JSON, CLI, `Display`)
/// use 1-based labels, converted with [`GoodSet::from_labels`] and
/// [`GoodSet::labels`].
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoodSet(u64);

impl GoodSet {
    pub const EMPTY: GoodSet = GoodSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        GoodSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// All goods `0..m`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_GOODS);
        if m == MAX_GOODS {
            GoodSet(u64::MAX)
        } else {
            GoodSet((1u64 << m) - 1)
        }
    }

    pub fn singleton(good: usize) -> Self {
        assert!(good < MAX_GOODS);
        GoodSet(1 << good)
    }

    /// Builds a set from 0-based indices, rejecting duplicates and indices `>= m`.
    pub fn from_indices(indices: impl IntoIterator<Item = usize>, m: usize) -> Result<Self> {
        let mut set = GoodSet::EMPTY;
        for good in indices {
            if good >= m || good >= MAX_GOODS {
                return Err(Error::GoodOutOfRange { good, m });
            }
            if set.contains(good) {
                return Err(Error::DuplicateGood { good });
            }
            set.insert(good);
        }
        Ok(set)
    }

    /// Builds a set from 1-based labels. Panics on label 0 or a label above 64;
    /// meant for fixtures and tests.
    pub fn from_labels(labels: impl IntoIterator<Item = usize>) -> Self {
        let mut set = GoodSet::EMPTY;
        for label in labels {
            assert!(label >= 1 && label <= MAX_GOODS, "good label {label}");
            set.insert(label - 1);
        }
        set
    }

    pub fn contains(self, good: usize) -> bool {
        good < MAX_GOODS && self.0 >> good & 1 == 1
    }

    pub fn insert(&mut self, good: usize) {
        self.0 |= 1 << good;
    }

    pub fn remove(&mut self, good: usize) {
        self.0 &= !(1 << good);
    }

    pub fn with(self, good: usize) -> Self {
        GoodSet(self.0 | 1 << good)
    }

    pub fn without(self, good: usize) -> Self {
        GoodSet(self.0 & !(1 << good))
    }

    pub fn union(self, other: GoodSet) -> Self {
        GoodSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GoodSet) -> Self {
        GoodSet(self.0 & other.0)
    }

    pub fn difference(self, other: GoodSet) -> Self {
        GoodSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: GoodSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: GoodSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest good in the set.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// 0-based indices in ascending order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// 1-based labels in ascending order.
    pub fn labels(self) -> Vec<usize> {
        self.iter().map(|g| g + 1).collect()
    }

    /// Every subset of `self`, including the empty set and `self`.
    pub fn subsets(self) -> Subsets {
        Subsets {
            universe: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for GoodSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GoodSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, label) in self.labels().into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{label}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<usize> for GoodSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut set = GoodSet::EMPTY;
        for good in iter {
            set.insert(good);
        }
        set
    }
}

impl IntoIterator for GoodSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let good = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(good)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Submask enumeration in increasing numeric order.
pub struct Subsets {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = GoodSet;

    fn next(&mut self) -> Option<GoodSet> {
        let current = self.next?;
        self.next = if current == self.universe {
            None
        } else {
            Some((current.wrapping_sub(self.universe)) & self.universe)
        };
        Some(GoodSet(current))
    }
}

impl Serialize for GoodSet {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        self.labels().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GoodSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let labels = Vec::<usize>::deserialize(deserializer)?;
        let mut set = GoodSet::EMPTY;
        for label in labels {
            if label == 0 || label > MAX_GOODS {
                return Err(D::Error::custom(format!("good label {label} out of range")));
            }
            if set.contains(label - 1) {
                return Err(D::Error::custom(format!("duplicate good {label}")));
            }
            set.insert(label - 1);
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerates_every_submask_once() {
        let universe = GoodSet::from_labels([1, 3, 4]);
        let all: Vec<_> = universe.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|s| s.is_subset(universe)));
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 8);
    }

    #[test]
    fn empty_universe_has_one_subset() {
        assert_eq!(GoodSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn from_indices_rejects_duplicates_and_range() {
        assert_eq!(
            GoodSet::from_indices([0, 2, 0], 3),
            Err(Error::DuplicateGood { good: 0 })
        );
        assert_eq!(
            GoodSet::from_indices([3], 3),
            Err(Error::GoodOutOfRange { good: 3, m: 3 })
        );
    }

    #[test]
    fn display_uses_one_based_labels() {
        assert_eq!(GoodSet::from_indices([0, 4], 5).unwrap().to_string(), "{1,5}");
        assert_eq!(GoodSet::EMPTY.to_string(), "{}");
    }

    #[test]
    fn json_rejects_duplicate_labels() {
        assert!(serde_json::from_str::<GoodSet>("[1,2,2]").is_err());
        assert!(serde_json::from_str::<GoodSet>("[0]").is_err());
        let set: GoodSet = serde_json::from_str("[2,6]").unwrap();
        assert_eq!(set, GoodSet::from_labels([2, 6]));
    }

    #[test]
    fn full_64() {
        assert_eq!(GoodSet::full(64).len(), 64);
        assert_eq!(GoodSet::full(0), GoodSet::EMPTY);
    }
}
