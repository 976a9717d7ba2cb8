//! Party labels and subsets of a party universe.
//!
//! A [`PartySet`] is a bitmask over the index positions of an ordered party
//! list; bit `i` stands for the `i`-th declared party. Its [`Ord`] impl is the
//! canonical basis order used everywhere for output: by cardinality first,
//! then lexicographically on the sorted index sequence (`A, B, C, AB, AC, BC,
//! ABC`).

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

/// Hard cap on the number of parties (and of arrangement faces).
pub const MAX_PARTIES: usize = 64;

/// Label reserved for the outer/purifier region.
pub const OUTER_LABEL: &str = "O";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabelError {
    #[error("invalid label {0:?}: labels are a letter optionally followed by digits (A, B, A12)")]
    Malformed(String),
    #[error("label \"O\" is reserved for the outer region")]
    Reserved,
    #[error("duplicate label {0:?}")]
    Duplicate(String),
    #[error("too many parties: {0} (at most {MAX_PARTIES})")]
    TooMany(usize),
}

/// Check the label shape `[A-Za-z][0-9]*`.
pub fn check_label_shape(label: &str) -> Result<(), LabelError> {
    let mut chars = label.chars();
    let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_digit());
    if ok {
        Ok(())
    } else {
        Err(LabelError::Malformed(label.to_string()))
    }
}

/// Check a party label: well-formed and not the outer region.
pub fn check_party_label(label: &str) -> Result<(), LabelError> {
    check_label_shape(label)?;
    if label == OUTER_LABEL {
        return Err(LabelError::Reserved);
    }
    Ok(())
}

/// Validate a full party list: every label legal, no duplicates, size cap.
pub fn check_party_list<S: AsRef<str>>(labels: &[S]) -> Result<(), LabelError> {
    if labels.len() > MAX_PARTIES {
        return Err(LabelError::TooMany(labels.len()));
    }
    for (i, l) in labels.iter().enumerate() {
        let l = l.as_ref();
        check_party_label(l)?;
        if labels[..i].iter().any(|m| m.as_ref() == l) {
            return Err(LabelError::Duplicate(l.to_string()));
        }
    }
    Ok(())
}

/// Default labels for `n` parties: single letters `A..Z` skipping the
/// reserved `O` while they last, `A1..An` beyond that.
pub fn default_labels(n: usize) -> Vec<String> {
    let letters: Vec<char> = ('A'..='Z').filter(|&c| c != 'O').collect();
    if n <= letters.len() {
        letters[..n].iter().map(|c| c.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("A{i}")).collect()
    }
}

/// Natural order on labels: alphabetic prefix, then numeric suffix.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    fn split(s: &str) -> (&str, Option<u64>) {
        let cut = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (head, tail) = s.split_at(cut);
        (head, tail.parse().ok())
    }
    let (ha, na) = split(a);
    let (hb, nb) = split(b);
    ha.cmp(hb).then(na.cmp(&nb)).then(a.cmp(b))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct PartySet(u64);

impl PartySet {
    pub const EMPTY: PartySet = PartySet(0);

    pub fn from_bits(bits: u64) -> Self {
        PartySet(bits)
    }

    pub fn singleton(index: usize) -> Self {
        assert!(index < MAX_PARTIES, "party index {index} out of range");
        PartySet(1 << index)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(PartySet::EMPTY, |acc, i| acc.union(PartySet::singleton(i)))
    }

    /// The first `n` parties.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_PARTIES);
        if n == MAX_PARTIES {
            PartySet(u64::MAX)
        } else {
            PartySet((1u64 << n) - 1)
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_PARTIES && self.0 >> index & 1 == 1
    }

    pub fn union(self, other: PartySet) -> Self {
        PartySet(self.0 | other.0)
    }

    pub fn intersection(self, other: PartySet) -> Self {
        PartySet(self.0 & other.0)
    }

    pub fn difference(self, other: PartySet) -> Self {
        PartySet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: PartySet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: PartySet) -> bool {
        self.0 & other.0 == 0
    }

    /// Member indices in increasing order.
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

    /// Image under an index map (`perm[i]` is the new index of party `i`).
    pub fn map_indices(self, perm: &[usize]) -> Self {
        PartySet::from_indices(self.iter().map(|i| perm[i]))
    }

    /// Visit every `k`-element subset of `self`.
    pub fn for_each_subset_of_size(self, k: usize, mut f: impl FnMut(PartySet)) {
        let members: Vec<usize> = self.iter().collect();
        if k > members.len() {
            return;
        }
        if k == 0 {
            f(PartySet::EMPTY);
            return;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            f(PartySet::from_indices(idx.iter().map(|&j| members[j])));
            // advance to the next combination in lexicographic order
            let mut pos = k;
            while pos > 0 && idx[pos - 1] == members.len() - k + pos - 1 {
                pos -= 1;
            }
            if pos == 0 {
                return;
            }
            idx[pos - 1] += 1;
            for j in pos..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    /// Every nonempty subset of `self`.
    pub fn nonempty_subsets(self) -> impl Iterator<Item = PartySet> {
        let full = self.0;
        let mut sub = full;
        let mut done = full == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = sub;
            sub = (sub.wrapping_sub(1)) & full;
            if sub == 0 {
                done = true;
            }
            Some(PartySet(out))
        })
    }

    /// Render against a label list: juxtaposed when every label is a single
    /// character, comma separated otherwise.
    pub fn render<S: AsRef<str>>(self, labels: &[S]) -> String {
        let juxtapose = labels.iter().all(|l| l.as_ref().len() == 1);
        let names: Vec<&str> = self.iter().map(|i| labels[i].as_ref()).collect();
        if juxtapose {
            names.concat()
        } else {
            names.join(",")
        }
    }

    pub fn labels<S: AsRef<str>>(self, labels: &[S]) -> Vec<String> {
        self.iter().map(|i| labels[i].as_ref().to_string()).collect()
    }
}

impl Ord for PartySet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                // self holds the lowest differing index, so its sorted index
                // sequence is lexicographically smaller
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for PartySet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for PartySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_size_then_lex() {
        let labels = default_labels(3);
        let mut sets: Vec<PartySet> = PartySet::full(3).nonempty_subsets().collect();
        sets.sort();
        let rendered: Vec<String> = sets.iter().map(|s| s.render(&labels)).collect();
        assert_eq!(rendered, ["A", "B", "C", "AB", "AC", "BC", "ABC"]);
    }

    #[test]
    fn default_labels_skip_outer() {
        let l = default_labels(16);
        assert_eq!(l[13], "N");
        assert_eq!(l[14], "P");
        assert!(!l.iter().any(|s| s == "O"));
        assert_eq!(default_labels(25).last().unwrap(), "Z");
        assert_eq!(default_labels(26)[0], "A1");
        assert_eq!(default_labels(26)[25], "A26");
    }

    #[test]
    fn label_rules() {
        assert!(check_party_label("A12").is_ok());
        assert_eq!(check_party_label("O"), Err(LabelError::Reserved));
        assert!(check_party_label("1A").is_err());
        assert!(check_party_label("AB").is_err());
        assert!(matches!(check_party_list(&["A", "B", "A"]), Err(LabelError::Duplicate(_))));
    }

    #[test]
    fn k_subsets_are_complete() {
        let s = PartySet::from_indices([0, 2, 3, 5, 7]);
        let mut seen = Vec::new();
        s.for_each_subset_of_size(3, |t| seen.push(t));
        assert_eq!(seen.len(), 10);
        assert!(seen.iter().all(|t| t.len() == 3 && t.is_subset_of(s)));
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 10);
        let mut none = 0;
        s.for_each_subset_of_size(6, |_| none += 1);
        assert_eq!(none, 0);
    }

    #[test]
    fn natural_sort_of_indexed_labels() {
        let mut v = vec!["A10", "A2", "B", "A1"];
        v.sort_by(|a, b| natural_cmp(a, b));
        assert_eq!(v, ["A1", "A2", "A10", "B"]);
    }
}
