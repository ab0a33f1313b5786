//! Standard closure spaces given by their family of closed sets.
//!
//! A [`ClosureSpace`] is immutable once built. Every closure computation
//! (`cl`, `cl^b`, meets, joins, intervals) reads the closed-set family, which
//! is kept in canonical order: by cardinality, then lexicographically on the
//! element order. Since cardinality order is a linear extension of inclusion,
//! the first closed superset of `X` met in that order is `cl(X)`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::set::{canonicalize_family, Element, ElementSet, GroundSet};

/// Hard cap on the number of closed sets of a space.
pub const MAX_CLOSED_SETS: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct ClosureSpace {
    ground: GroundSet,
    closed: Vec<ElementSet>,
    index: HashMap<ElementSet, usize>,
    lower_covers: Vec<Vec<usize>>,
    upper_covers: Vec<Vec<usize>>,
    element_closure: Vec<ElementSet>,
}

impl PartialEq for ClosureSpace {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.closed == other.closed
    }
}

impl Eq for ClosureSpace {}

impl ClosureSpace {
    /// Builds a space from a family that must already contain the ground set
    /// and be closed under intersection. Non-standard families are rejected.
    pub fn from_closed_sets(
        ground: GroundSet,
        family: impl IntoIterator<Item = ElementSet>,
    ) -> Result<Self> {
        let mut closed: Vec<ElementSet> = family.into_iter().collect();
        let full = ground.full();
        if let Some(bad) = closed.iter().find(|c| !c.is_subset(full)) {
            let _ = bad;
            return Err(Error::GroundMismatch);
        }
        canonicalize_family(&mut closed);
        if closed.len() > MAX_CLOSED_SETS {
            return Err(Error::TooManyClosedSets(closed.len()));
        }
        if closed.last() != Some(&full) {
            return Err(Error::MissingTop);
        }
        let index: HashMap<ElementSet, usize> =
            closed.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        for (i, a) in closed.iter().enumerate() {
            for b in &closed[i + 1..] {
                if !index.contains_key(&a.intersection(*b)) {
                    return Err(Error::NotIntersectionClosed {
                        first: ground.render(*a),
                        second: ground.render(*b),
                    });
                }
            }
        }
        let mut space = ClosureSpace {
            ground,
            closed,
            index,
            lower_covers: Vec::new(),
            upper_covers: Vec::new(),
            element_closure: Vec::new(),
        };
        space.element_closure = (0..space.ground.len())
            .map(|x| space.cl(ElementSet::singleton(x)))
            .collect();
        for x in 0..space.ground.len() {
            if !space.is_closed(space.element_closure[x].without(x)) {
                return Err(Error::NotStandard {
                    element: space.ground.name(x).to_string(),
                });
            }
        }
        space.compute_covers();
        Ok(space)
    }

    /// Like [`from_closed_sets`](Self::from_closed_sets), but first adds the
    /// ground set and every missing intersection. Returns the sets that were
    /// added.
    pub fn from_closed_sets_repaired(
        ground: GroundSet,
        family: impl IntoIterator<Item = ElementSet>,
    ) -> Result<(Self, Vec<ElementSet>)> {
        let mut fam: Vec<ElementSet> = family.into_iter().collect();
        canonicalize_family(&mut fam);
        let original = fam.clone();
        fam.push(ground.full());
        loop {
            canonicalize_family(&mut fam);
            let present: std::collections::HashSet<ElementSet> = fam.iter().copied().collect();
            let mut missing = Vec::new();
            for (i, a) in fam.iter().enumerate() {
                for b in &fam[i + 1..] {
                    let m = a.intersection(*b);
                    if !present.contains(&m) {
                        missing.push(m);
                    }
                }
            }
            if missing.is_empty() {
                break;
            }
            fam.extend(missing);
        }
        let added: Vec<ElementSet> = fam
            .iter()
            .copied()
            .filter(|c| original.binary_search(c).is_err())
            .collect();
        Ok((ClosureSpace::from_closed_sets(ground, fam)?, added))
    }

    /// Closed sets of an arbitrary closure operator on `ground`, enumerated
    /// with NextClosure. The operator must be extensive, monotone and
    /// idempotent.
    pub fn from_closure_operator<F>(ground: GroundSet, op: F) -> Result<Self>
    where
        F: Fn(ElementSet) -> ElementSet,
    {
        let family = lectic_closed_sets(ground.len(), &op, MAX_CLOSED_SETS)?;
        ClosureSpace::from_closed_sets(ground, family)
    }

    /// The powerset of an `n`-letter ground set.
    pub fn powerset(n: usize) -> Result<Self> {
        if n >= 20 {
            return Err(Error::TooManyClosedSets(1 << n.min(63)));
        }
        let ground = GroundSet::letters(n)?;
        let full = ground.full();
        ClosureSpace::from_closed_sets(ground, full.subsets())
    }

    fn compute_covers(&mut self) {
        let m = self.closed.len();
        let mut lower = vec![Vec::new(); m];
        for (j, slot) in lower.iter_mut().enumerate() {
            let cj = self.closed[j];
            let mut preds: Vec<usize> = Vec::new();
            for i in (0..j).rev() {
                let ci = self.closed[i];
                if ci.is_proper_subset(cj) && !preds.iter().any(|&p| ci.is_subset(self.closed[p])) {
                    preds.push(i);
                }
            }
            preds.sort_unstable();
            *slot = preds;
        }
        let mut upper = vec![Vec::new(); m];
        for (j, preds) in lower.iter().enumerate() {
            for &i in preds {
                upper[i].push(j);
            }
        }
        self.lower_covers = lower;
        self.upper_covers = upper;
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn full(&self) -> ElementSet {
        self.ground.full()
    }

    /// Closed sets in canonical order.
    pub fn closed_sets(&self) -> &[ElementSet] {
        &self.closed
    }

    pub fn len(&self) -> usize {
        self.closed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closed.is_empty()
    }

    pub fn closed_set(&self, i: usize) -> ElementSet {
        self.closed[i]
    }

    pub fn index_of(&self, set: ElementSet) -> Option<usize> {
        self.index.get(&set).copied()
    }

    pub fn is_closed(&self, set: ElementSet) -> bool {
        self.index.contains_key(&set)
    }

    pub fn top_index(&self) -> usize {
        self.closed.len() - 1
    }

    pub fn render(&self, set: ElementSet) -> String {
        self.ground.render(set)
    }

    fn check(&self, x: ElementSet) -> Result<()> {
        if self.ground.contains_set(x) {
            Ok(())
        } else {
            Err(Error::GroundMismatch)
        }
    }

    fn check_closed(&self, c: ElementSet) -> Result<usize> {
        self.check(c)?;
        self.index_of(c)
            .ok_or_else(|| Error::NotClosed(self.render(c)))
    }

    /// `cl(X)`, with the ground set checked.
    pub fn closure(&self, x: ElementSet) -> Result<ElementSet> {
        self.check(x)?;
        Ok(self.cl(x))
    }

    /// `cl(X)` without validation; `x` must be a subset of the ground set.
    pub fn cl(&self, x: ElementSet) -> ElementSet {
        self.closed[self.closure_index(x)]
    }

    /// Index of `cl(X)` in [`closed_sets`](Self::closed_sets).
    pub fn closure_index(&self, x: ElementSet) -> usize {
        debug_assert!(self.ground.contains_set(x));
        if let Some(&i) = self.index.get(&x) {
            return i;
        }
        let k = x.len();
        let start = self.closed.partition_point(|c| c.len() < k);
        (start..self.closed.len())
            .find(|&i| x.is_subset(self.closed[i]))
            .unwrap_or(self.closed.len() - 1)
    }

    /// `cl^b(X)`, the union of the singleton closures, with the ground set
    /// checked.
    pub fn binary_closure(&self, x: ElementSet) -> Result<ElementSet> {
        self.check(x)?;
        Ok(self.clb(x))
    }

    pub fn clb(&self, x: ElementSet) -> ElementSet {
        x.iter().fold(ElementSet::EMPTY, |acc, y| {
            acc.union(self.element_closure[y])
        })
    }

    /// `cl(x)` for a single element.
    pub fn element_closure(&self, x: Element) -> ElementSet {
        self.element_closure[x]
    }

    /// Elements whose closure contains `x` (including `x` itself).
    pub fn elements_above(&self, x: Element) -> ElementSet {
        (0..self.n())
            .filter(|&y| self.element_closure[y].contains(x))
            .collect()
    }

    pub fn meet(&self, c1: ElementSet, c2: ElementSet) -> Result<ElementSet> {
        self.check_closed(c1)?;
        self.check_closed(c2)?;
        Ok(c1.intersection(c2))
    }

    pub fn join(&self, c1: ElementSet, c2: ElementSet) -> Result<ElementSet> {
        self.check_closed(c1)?;
        self.check_closed(c2)?;
        Ok(self.cl(c1.union(c2)))
    }

    /// Closed sets `C` with `low ⊆ C ⊆ high`, in canonical order.
    pub fn interval(&self, low: ElementSet, high: ElementSet) -> Result<Vec<ElementSet>> {
        self.check_closed(low)?;
        self.check_closed(high)?;
        if !low.is_subset(high) {
            return Err(Error::NotComparable {
                low: self.render(low),
                high: self.render(high),
            });
        }
        Ok(self
            .closed
            .iter()
            .copied()
            .filter(|c| low.is_subset(*c) && c.is_subset(high))
            .collect())
    }

    /// Indices of the predecessors (lower covers) of closed set `i`.
    pub fn predecessors(&self, i: usize) -> &[usize] {
        &self.lower_covers[i]
    }

    /// Indices of the successors (upper covers) of closed set `i`.
    pub fn successors(&self, i: usize) -> &[usize] {
        &self.upper_covers[i]
    }

    /// Covering pairs `(predecessor, successor)` as closed-set indices,
    /// sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .lower_covers
            .iter()
            .enumerate()
            .flat_map(|(j, preds)| preds.iter().map(move |&i| (i, j)))
            .collect();
        out.sort_unstable();
        out
    }

    /// `C_*`: the intersection of the predecessors of closed set `i`
    /// (∅ for the bottom).
    pub fn pred_intersection(&self, i: usize) -> ElementSet {
        let preds = &self.lower_covers[i];
        if preds.is_empty() {
            return ElementSet::EMPTY;
        }
        preds
            .iter()
            .fold(self.closed[i], |acc, &p| acc.intersection(self.closed[p]))
    }

    /// Length of the longest chain of the closure lattice.
    pub fn height(&self) -> usize {
        let mut depth = vec![0usize; self.closed.len()];
        for j in 0..self.closed.len() {
            depth[j] = self.lower_covers[j]
                .iter()
                .map(|&i| depth[i] + 1)
                .max()
                .unwrap_or(0);
        }
        depth[self.closed.len() - 1]
    }

    /// Renames elements; labels absent from `aliases` are kept.
    pub fn relabel(&self, aliases: &HashMap<String, String>) -> Result<ClosureSpace> {
        let names: Vec<String> = self
            .ground
            .names()
            .iter()
            .map(|n| aliases.get(n).cloned().unwrap_or_else(|| n.clone()))
            .collect();
        ClosureSpace::from_closed_sets(GroundSet::new(names)?, self.closed.iter().copied())
    }
}

/// All fixpoints of `op` over an `n`-element ground set, in lectic order.
pub fn lectic_closed_sets<F>(n: usize, op: &F, limit: usize) -> Result<Vec<ElementSet>>
where
    F: Fn(ElementSet) -> ElementSet,
{
    let mut out = vec![op(ElementSet::EMPTY)];
    while let Some(next) = next_closure(*out.last().unwrap(), n, op) {
        out.push(next);
        if out.len() > limit {
            return Err(Error::TooManyClosedSets(out.len()));
        }
    }
    Ok(out)
}

/// Lectically next closed set after `current`.
pub fn next_closure<F>(current: ElementSet, n: usize, op: &F) -> Option<ElementSet>
where
    F: Fn(ElementSet) -> ElementSet,
{
    let mut a = current;
    for i in (0..n).rev() {
        if a.contains(i) {
            a.remove(i);
        } else {
            let b = op(a.with(i));
            let below_i = ElementSet::full(i);
            if b.difference(a).intersection(below_i).is_empty() {
                return Some(b);
            }
        }
    }
    None
}
