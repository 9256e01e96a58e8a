//! Ground sets, word-sized subset masks, and total orders on elements.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor};

use crate::error::{Error, Result};

/// Hard cap on ground-set size: subsets are single machine words.
pub const MAX_GROUND: usize = 64;

/// An ordered list of distinct element labels. The position of a label is
/// its canonical index and the default total order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundSet {
    names: Vec<String>,
}

impl GroundSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_GROUND {
            return Err(Error::GroundTooLarge(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if names[..i].contains(n) {
                return Err(Error::DuplicateLabel(n.clone()));
            }
        }
        Ok(GroundSet { names })
    }

    /// Ground set labelled `a`, `b`, ... (then `x10`, `x11`, ... past `z`).
    pub fn alpha(n: usize) -> Self {
        let names: Vec<String> = (0..n)
            .map(|i| {
                if i < 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("x{i}")
                }
            })
            .collect();
        GroundSet::new(names).expect("alpha labels are distinct")
    }

    pub fn empty() -> Self {
        GroundSet { names: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    pub fn index_of_err(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn full_mask(&self) -> SubsetMask {
        SubsetMask::full(self.len())
    }

    pub fn check_mask(&self, m: SubsetMask) -> Result<()> {
        if m.is_subset_of(self.full_mask()) {
            Ok(())
        } else {
            Err(Error::InvalidMask)
        }
    }

    /// Parse a mask from element labels.
    pub fn mask_of<'a, I: IntoIterator<Item = &'a str>>(&self, labels: I) -> Result<SubsetMask> {
        let mut m = SubsetMask::empty();
        for l in labels {
            m = m.with(self.index_of_err(l)?);
        }
        Ok(m)
    }

    /// Labels of a mask, in declaration order.
    pub fn labels_of(&self, m: SubsetMask) -> Vec<&str> {
        m.iter().map(|i| self.name(i)).collect()
    }

    /// Compact label string for a mask: `abc`, or `∅` when empty.
    /// Multi-character labels are joined with spaces.
    pub fn set_string(&self, m: SubsetMask) -> String {
        if m.is_empty() {
            return "∅".to_string();
        }
        let labels = self.labels_of(m);
        if labels.iter().all(|l| l.chars().count() == 1) {
            labels.concat()
        } else {
            labels.join(" ")
        }
    }

    /// Sub-ground keeping exactly the elements of `keep`, preserving order.
    pub fn sub_ground(&self, keep: SubsetMask) -> GroundSet {
        GroundSet {
            names: keep.iter().map(|i| self.names[i].clone()).collect(),
        }
    }

    /// All subsets of the ground set. Caller is responsible for caps.
    pub fn subsets(&self) -> impl Iterator<Item = SubsetMask> {
        debug_assert!(self.len() < 32, "subset enumeration at desk scale only");
        (0u64..(1u64 << self.len())).map(SubsetMask)
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroundSet({})", self.names.join(" "))
    }
}

/// A subset of a ground set, one bit per element index.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask(pub u64);

impl SubsetMask {
    pub const fn empty() -> Self {
        SubsetMask(0)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        if n == 64 {
            SubsetMask(u64::MAX)
        } else {
            SubsetMask((1u64 << n) - 1)
        }
    }

    pub const fn singleton(i: usize) -> Self {
        SubsetMask(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(idx: I) -> Self {
        let mut m = 0u64;
        for i in idx {
            m |= 1 << i;
        }
        SubsetMask(m)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub const fn with(self, i: usize) -> Self {
        SubsetMask(self.0 | 1 << i)
    }

    pub const fn without(self, i: usize) -> Self {
        SubsetMask(self.0 & !(1 << i))
    }

    pub const fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub const fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn complement_in(self, n: usize) -> Self {
        SubsetMask(!self.0 & SubsetMask::full(n).0)
    }

    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }

    /// Remove element `i` from the index space, shifting higher bits down.
    pub fn squeeze_out(self, i: usize) -> Self {
        let low = self.0 & ((1u64 << i) - 1);
        let high = (self.0 >> 1) & !((1u64 << i) - 1);
        SubsetMask(low | high)
    }

    /// Inverse of `squeeze_out`: make room for element `i` (bit left clear).
    pub fn unsqueeze(self, i: usize) -> Self {
        let low = self.0 & ((1u64 << i) - 1);
        let high = (self.0 & !((1u64 << i) - 1)) << 1;
        SubsetMask(low | high)
    }
}

impl BitOr for SubsetMask {
    type Output = SubsetMask;
    fn bitor(self, rhs: Self) -> Self {
        SubsetMask(self.0 | rhs.0)
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;
    fn bitand(self, rhs: Self) -> Self {
        SubsetMask(self.0 & rhs.0)
    }
}

impl BitXor for SubsetMask {
    type Output = SubsetMask;
    fn bitxor(self, rhs: Self) -> Self {
        SubsetMask(self.0 ^ rhs.0)
    }
}

impl fmt::Debug for SubsetMask {
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

pub struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

/// A total order on the elements of a ground set. `rank[i]` is the position
/// of element `i`; lower rank means earlier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalOrder {
    rank: Vec<usize>,
}

impl TotalOrder {
    /// Declaration order of the ground set.
    pub fn declaration(n: usize) -> Self {
        TotalOrder {
            rank: (0..n).collect(),
        }
    }

    pub fn from_ranks(rank: Vec<usize>) -> Result<Self> {
        let n = rank.len();
        let mut seen = vec![false; n];
        for &r in &rank {
            if r >= n || seen[r] {
                return Err(Error::BadOrder);
            }
            seen[r] = true;
        }
        Ok(TotalOrder { rank })
    }

    /// Order given as a sequence of labels from lowest to highest.
    pub fn from_labels<'a, I: IntoIterator<Item = &'a str>>(
        ground: &GroundSet,
        labels: I,
    ) -> Result<Self> {
        let mut rank = vec![usize::MAX; ground.len()];
        for (pos, l) in labels.into_iter().enumerate() {
            let i = ground.index_of_err(l)?;
            if pos >= ground.len() || rank[i] != usize::MAX {
                return Err(Error::BadOrder);
            }
            rank[i] = pos;
        }
        if rank.iter().any(|&r| r == usize::MAX) {
            return Err(Error::BadOrder);
        }
        Ok(TotalOrder { rank })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    pub fn before(&self, a: usize, b: usize) -> bool {
        self.rank[a] < self.rank[b]
    }

    /// Elements from lowest to highest.
    pub fn sorted_elements(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.rank.len()).collect();
        idx.sort_by_key(|&i| self.rank[i]);
        idx
    }

    /// Highest-ordered element of a nonempty mask.
    pub fn highest_in(&self, m: SubsetMask) -> Option<usize> {
        m.iter().max_by_key(|&i| self.rank[i])
    }

    /// All n! total orders on `n` elements (desk scale).
    pub fn all(n: usize) -> Vec<TotalOrder> {
        use itertools::Itertools;
        if n == 0 {
            return vec![TotalOrder { rank: vec![] }];
        }
        (0..n)
            .permutations(n)
            .map(|rank| TotalOrder { rank })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ground_rejects_duplicates_and_empties() {
        assert!(matches!(
            GroundSet::new(["a", "a"]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(GroundSet::new(["a", ""]), Err(Error::EmptyLabel)));
        let labels: Vec<String> = (0..65).map(|i| format!("e{i}")).collect();
        assert!(matches!(
            GroundSet::new(labels),
            Err(Error::GroundTooLarge(65))
        ));
    }

    #[test]
    fn mask_ops() {
        let m = SubsetMask::from_indices([0, 2, 3]);
        assert_eq!(m.len(), 3);
        assert!(m.contains(2));
        assert!(!m.contains(1));
        assert_eq!(m.squeeze_out(2), SubsetMask::from_indices([0, 2]));
        assert_eq!(m.squeeze_out(1), SubsetMask::from_indices([0, 1, 2]));
        assert_eq!(
            SubsetMask::from_indices([0, 1, 2]).unsqueeze(1),
            SubsetMask::from_indices([0, 2, 3])
        );
        assert_eq!(m.complement_in(4), SubsetMask::singleton(1));
    }

    #[test]
    fn set_string_formats() {
        let g = GroundSet::alpha(3);
        assert_eq!(g.set_string(SubsetMask::empty()), "∅");
        assert_eq!(g.set_string(SubsetMask::from_indices([0, 2])), "ac");
    }

    #[test]
    fn order_from_labels() {
        let g = GroundSet::alpha(3);
        let o = TotalOrder::from_labels(&g, ["c", "a", "b"]).unwrap();
        assert!(o.before(2, 0));
        assert!(o.before(0, 1));
        assert_eq!(o.sorted_elements(), vec![2, 0, 1]);
        assert!(TotalOrder::from_labels(&g, ["a", "b"]).is_err());
        assert!(TotalOrder::from_labels(&g, ["a", "b", "b"]).is_err());
    }

    #[test]
    fn all_orders_count() {
        assert_eq!(TotalOrder::all(3).len(), 6);
        assert_eq!(TotalOrder::all(0).len(), 1);
    }
}
