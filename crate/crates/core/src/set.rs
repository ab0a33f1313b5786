//! Ground sets and bit-vector element sets.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Hard cap on the number of elements of a ground set.
pub const MAX_ELEMENTS: usize = 64;

/// Index of an element in its ground set.
pub type Element = usize;

/// Ordered list of distinct element labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
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
        if names.len() > MAX_ELEMENTS {
            return Err(Error::TooManyElements(names.len()));
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == ',') {
                return Err(Error::InvalidLabel(name.clone()));
            }
            if seen.insert(name.as_str(), i).is_some() {
                return Err(Error::DuplicateLabel(name.clone()));
            }
        }
        Ok(GroundSet { names })
    }

    /// Ground set whose labels are the first `n` lowercase letters.
    pub fn letters(n: usize) -> Result<Self> {
        if n > 26 {
            return Err(Error::TooManyElements(n));
        }
        GroundSet::new((0..n).map(|i| ((b'a' + i as u8) as char).to_string()))
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

    pub fn name(&self, x: Element) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<Element> {
        self.names.iter().position(|n| n == name)
    }

    pub fn full(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    pub fn contains_set(&self, set: ElementSet) -> bool {
        set.is_subset(self.full())
    }

    /// Parses a set written with the labels of this ground set, either
    /// whitespace separated or, when every label is a single character,
    /// concatenated (`abc`). `∅`, `{}` and the empty string denote ∅.
    pub fn parse_set(&self, text: &str) -> Result<ElementSet> {
        let text = text.trim();
        if text.is_empty() || text == "∅" || text == "{}" {
            return Ok(ElementSet::EMPTY);
        }
        let tokens: Vec<&str> = if text.split_whitespace().count() == 1 && self.single_char_labels()
        {
            text.char_indices()
                .map(|(i, c)| &text[i..i + c.len_utf8()])
                .collect()
        } else {
            text.split_whitespace().collect()
        };
        let mut set = ElementSet::EMPTY;
        for tok in tokens {
            let x = self
                .index_of(tok)
                .ok_or_else(|| Error::UnknownLabel(tok.to_string()))?;
            set.insert(x);
        }
        Ok(set)
    }

    pub fn single_char_labels(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Renders a set in the style `abc`, or space separated when some label
    /// is longer than one character. The empty set renders as `∅`.
    pub fn render(&self, set: ElementSet) -> String {
        if set.is_empty() {
            return "∅".to_string();
        }
        let sep = if self.single_char_labels() { "" } else { " " };
        set.iter()
            .map(|x| self.names[x].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Appends fresh labels; fails on collision.
    pub fn extended<I, S>(&self, extra: I) -> Result<GroundSet>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names = self.names.clone();
        for e in extra {
            let e = e.into();
            if names.contains(&e) {
                return Err(Error::LabelCollision(e));
            }
            names.push(e);
        }
        GroundSet::new(names)
    }
}

/// A subset of a ground set, stored as a bit vector over element indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn full(n: usize) -> ElementSet {
        if n >= 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> ElementSet {
        ElementSet(bits)
    }

    pub fn singleton(x: Element) -> ElementSet {
        ElementSet(1 << x)
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

    pub fn contains(self, x: Element) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn insert(&mut self, x: Element) {
        self.0 |= 1 << x;
    }

    pub fn remove(&mut self, x: Element) {
        self.0 &= !(1 << x);
    }

    pub fn with(self, x: Element) -> ElementSet {
        ElementSet(self.0 | 1 << x)
    }

    pub fn without(self, x: Element) -> ElementSet {
        ElementSet(self.0 & !(1 << x))
    }

    pub fn union(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: ElementSet) -> ElementSet {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: ElementSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(self, other: ElementSet) -> bool {
        self.0 & other.0 == 0
    }

    /// Largest element, if any.
    pub fn max(self) -> Option<Element> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn min(self) -> Option<Element> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `self`, in increasing order of their bit patterns.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Canonical order: cardinality first, then lexicographic comparison of
    /// the sorted element lists.
    pub fn canonical_cmp(&self, other: &ElementSet) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl FromIterator<Element> for ElementSet {
    fn from_iter<T: IntoIterator<Item = Element>>(iter: T) -> Self {
        let mut s = ElementSet::EMPTY;
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(x)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some((cur | !self.mask).wrapping_add(1) & self.mask)
        };
        Some(ElementSet(cur))
    }
}

/// Sorts a family in canonical order and removes duplicates.
pub fn canonicalize_family(family: &mut Vec<ElementSet>) {
    family.sort();
    family.dedup();
}

/// Inclusion-minimal members of a family.
pub fn minimal_members(family: &[ElementSet]) -> Vec<ElementSet> {
    let mut out: Vec<ElementSet> = family
        .iter()
        .copied()
        .filter(|a| !family.iter().any(|b| b.is_proper_subset(*a)))
        .collect();
    canonicalize_family(&mut out);
    out
}

/// Inclusion-maximal members of a family.
pub fn maximal_members(family: &[ElementSet]) -> Vec<ElementSet> {
    let mut out: Vec<ElementSet> = family
        .iter()
        .copied()
        .filter(|a| !family.iter().any(|b| a.is_proper_subset(*b)))
        .collect();
    canonicalize_family(&mut out);
    out
}

pub fn is_antichain(family: &[ElementSet]) -> bool {
    family
        .iter()
        .all(|a| family.iter().all(|b| !a.is_proper_subset(*b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_cardinality_then_lexicographic() {
        let g = GroundSet::letters(4).unwrap();
        let mut fam: Vec<ElementSet> = ["bc", "a", "ab", "", "abcd", "ac", "d"]
            .iter()
            .map(|s| g.parse_set(s).unwrap())
            .collect();
        canonicalize_family(&mut fam);
        let rendered: Vec<String> = fam.iter().map(|s| g.render(*s)).collect();
        assert_eq!(rendered, ["∅", "a", "d", "ab", "ac", "bc", "abcd"]);
    }

    #[test]
    fn subsets_enumerates_every_subset_once() {
        let s = ElementSet::from_bits(0b10110);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        let mut bits: Vec<u64> = subs.iter().map(|t| t.bits()).collect();
        bits.dedup();
        assert_eq!(bits.len(), 8);
        assert_eq!(ElementSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn parse_and_render() {
        let g = GroundSet::letters(3).unwrap();
        assert_eq!(g.render(g.parse_set("ca").unwrap()), "ac");
        assert_eq!(g.render(g.parse_set("b c").unwrap()), "bc");
        assert_eq!(g.parse_set("∅").unwrap(), ElementSet::EMPTY);
        assert!(matches!(g.parse_set("az"), Err(Error::UnknownLabel(_))));

        let long = GroundSet::new(["x1", "x2", "y"]).unwrap();
        let s = long.parse_set("x2 y").unwrap();
        assert_eq!(long.render(s), "x2 y");
    }

    #[test]
    fn ground_set_rejects_bad_labels() {
        assert!(matches!(
            GroundSet::new(["a", "a"]),
            Err(Error::DuplicateLabel(_))
        ));
        assert!(matches!(
            GroundSet::new(["a b"]),
            Err(Error::InvalidLabel(_))
        ));
        assert!(matches!(
            GroundSet::new((0..65).map(|i| format!("e{i}"))),
            Err(Error::TooManyElements(65))
        ));
    }
}
