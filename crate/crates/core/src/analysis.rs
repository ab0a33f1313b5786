//! Irreducibles, arrow relations, the D and D* relations, prime elements and
//! lattice-class predicates.

use crate::error::{Error, Result};
use crate::set::{Element, ElementSet};
use crate::space::ClosureSpace;

/// Join and meet tables over closed-set indices.
#[derive(Clone, Debug)]
pub struct Tables {
    m: usize,
    join: Vec<u32>,
    meet: Vec<u32>,
}

impl Tables {
    pub fn new(space: &ClosureSpace) -> Tables {
        let m = space.len();
        let mut join = vec![0u32; m * m];
        let mut meet = vec![0u32; m * m];
        for i in 0..m {
            let ci = space.closed_set(i);
            for j in i..m {
                let cj = space.closed_set(j);
                let jn = space.closure_index(ci.union(cj)) as u32;
                let mt = space
                    .index_of(ci.intersection(cj))
                    .expect("closed sets are intersection-closed") as u32;
                join[i * m + j] = jn;
                join[j * m + i] = jn;
                meet[i * m + j] = mt;
                meet[j * m + i] = mt;
            }
        }
        Tables { m, join, meet }
    }

    #[inline]
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.m + j] as usize
    }

    #[inline]
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.m + j] as usize
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.meet(i, j) == i
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinIrreducible {
    pub element: Element,
    /// Index of `cl(x)`.
    pub closed: usize,
    /// Index of the unique predecessor `x_* = cl(x) \ {x}`.
    pub predecessor: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetIrreducible {
    pub closed: usize,
    /// Index of the unique successor `M^*`.
    pub successor: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleCatalog {
    /// One entry per element, in element order.
    pub join_irreducibles: Vec<JoinIrreducible>,
    /// In canonical closed-set order.
    pub meet_irreducibles: Vec<MeetIrreducible>,
    pub atoms: Vec<usize>,
    pub coatoms: Vec<usize>,
}

impl IrreducibleCatalog {
    pub fn is_meet_irreducible(&self, closed: usize) -> bool {
        self.meet_irreducibles
            .binary_search_by_key(&closed, |m| m.closed)
            .is_ok()
    }
}

pub fn irreducibles(space: &ClosureSpace) -> IrreducibleCatalog {
    let join_irreducibles = (0..space.n())
        .map(|x| {
            let c = space.element_closure(x);
            JoinIrreducible {
                element: x,
                closed: space.index_of(c).expect("closure is closed"),
                predecessor: space.index_of(c.without(x)).expect("space is standard"),
            }
        })
        .collect();
    let top = space.top_index();
    let meet_irreducibles = (0..space.len())
        .filter(|&i| space.successors(i).len() == 1)
        .map(|i| MeetIrreducible {
            closed: i,
            successor: space.successors(i)[0],
        })
        .collect();
    let atoms = space.successors(0).to_vec();
    let coatoms = if space.len() > 1 {
        space.predecessors(top).to_vec()
    } else {
        Vec::new()
    };
    IrreducibleCatalog {
        join_irreducibles,
        meet_irreducibles,
        atoms,
        coatoms,
    }
}

/// Arrow relations between elements (standing for `cl(x)`) and
/// meet-irreducible closed sets (by index).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArrowTable {
    pub up: Vec<(Element, usize)>,
    pub down: Vec<(Element, usize)>,
    pub double: Vec<(Element, usize)>,
}

impl ArrowTable {
    pub fn is_up(&self, x: Element, m: usize) -> bool {
        self.up.binary_search(&(x, m)).is_ok()
    }

    pub fn is_down(&self, x: Element, m: usize) -> bool {
        self.down.binary_search(&(x, m)).is_ok()
    }

    pub fn is_double(&self, x: Element, m: usize) -> bool {
        self.double.binary_search(&(x, m)).is_ok()
    }
}

pub fn arrows(space: &ClosureSpace) -> ArrowTable {
    arrows_with(space, &irreducibles(space))
}

pub fn arrows_with(space: &ClosureSpace, irr: &IrreducibleCatalog) -> ArrowTable {
    let mut table = ArrowTable::default();
    for x in 0..space.n() {
        let lower = space.element_closure(x).without(x);
        for mi in &irr.meet_irreducibles {
            let m = space.closed_set(mi.closed);
            if m.contains(x) {
                continue;
            }
            let up = space.closed_set(mi.successor).contains(x);
            let down = lower.is_subset(m);
            if up {
                table.up.push((x, mi.closed));
            }
            if down {
                table.down.push((x, mi.closed));
            }
            if up && down {
                table.double.push((x, mi.closed));
            }
        }
    }
    table
}

/// `x` is prime in `↓C`: whenever `x ∈ cl(Z)` for some `Z ⊆ C`, already
/// `x ∈ cl(z)` for some `z ∈ Z`.
pub fn is_prime_in_ideal(space: &ClosureSpace, c: ElementSet, x: Element) -> Result<bool> {
    check_member(space, c, x)?;
    Ok(prime_in(space, c, x))
}

pub(crate) fn prime_in(space: &ClosureSpace, c: ElementSet, x: Element) -> bool {
    let rest = c.difference(space.elements_above(x));
    !space.cl(rest).contains(x)
}

/// `x` is not prime in `↓C` but is prime in `↓C'` for every predecessor `C'`
/// of `C` containing `x`.
pub fn is_almost_prime(space: &ClosureSpace, c: ElementSet, x: Element) -> Result<bool> {
    check_member(space, c, x)?;
    Ok(almost_prime_in(space, space.index_of(c).unwrap(), x))
}

pub(crate) fn almost_prime_in(space: &ClosureSpace, ci: usize, x: Element) -> bool {
    let c = space.closed_set(ci);
    if prime_in(space, c, x) {
        return false;
    }
    space.predecessors(ci).iter().all(|&p| {
        let cp = space.closed_set(p);
        !cp.contains(x) || prime_in(space, cp, x)
    })
}

/// Elements almost prime in `↓C`.
pub fn almost_primes(space: &ClosureSpace, c: ElementSet) -> Result<ElementSet> {
    let ci = space
        .index_of(c)
        .ok_or_else(|| Error::NotClosed(space.render(c)))?;
    Ok(c.iter()
        .filter(|&x| almost_prime_in(space, ci, x))
        .collect())
}

/// Globally prime elements (prime in `↓U`).
pub fn primes(space: &ClosureSpace) -> ElementSet {
    let full = space.full();
    full.iter().filter(|&x| prime_in(space, full, x)).collect()
}

fn check_member(space: &ClosureSpace, c: ElementSet, x: Element) -> Result<()> {
    if !space.ground().contains_set(c) || x >= space.n() {
        return Err(Error::GroundMismatch);
    }
    if !space.is_closed(c) {
        return Err(Error::NotClosed(space.render(c)));
    }
    if !c.contains(x) {
        return Err(Error::ElementNotInSet {
            element: space.ground().name(x).to_string(),
            set: space.render(c),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DRelation {
    /// `(x, a)` with `x D a`.
    pub edges: Vec<(Element, Element)>,
    /// `(M1, M2)` closed-set indices with `M1 D* M2`.
    pub dual_edges: Vec<(usize, usize)>,
}

/// D and D* from the arrow relations, cross-checked against D-generators.
pub fn d_relation(space: &ClosureSpace) -> Result<DRelation> {
    let rel = d_relation_from_arrows(&arrows(space));
    let mut from_gens: Vec<(Element, Element)> = Vec::new();
    for x in 0..space.n() {
        let mut targets = ElementSet::EMPTY;
        for a in crate::generators::d_generators(space, x) {
            targets = targets.union(a);
        }
        from_gens.extend(targets.iter().map(|a| (x, a)));
    }
    if from_gens != rel.edges {
        return Err(Error::Invariant(format!(
            "D-relation from arrows {:?} differs from D-generators {:?}",
            rel.edges, from_gens
        )));
    }
    Ok(rel)
}

pub fn d_relation_from_arrows(arrows: &ArrowTable) -> DRelation {
    let mut edges = Vec::new();
    for &(x, m) in &arrows.up {
        for &(a, m2) in &arrows.down {
            if m2 == m && a != x {
                edges.push((x, a));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let mut dual_edges = Vec::new();
    for &(x, m1) in &arrows.down {
        for &(x2, m2) in &arrows.up {
            if x2 == x && m1 != m2 {
                dual_edges.push((m1, m2));
            }
        }
    }
    dual_edges.sort_unstable();
    dual_edges.dedup();
    DRelation { edges, dual_edges }
}

/// True when the directed graph has no cycle. Nodes are arbitrary indices.
fn acyclic(edges: &[(usize, usize)]) -> bool {
    let n = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
    let mut adj = vec![Vec::new(); n];
    let mut indeg = vec![0usize; n];
    for &(a, b) in edges {
        adj[a].push(b);
        indeg[b] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &w in &adj[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    seen == n
}

pub fn is_lower_bounded(space: &ClosureSpace) -> bool {
    acyclic(&d_relation_from_arrows(&arrows(space)).edges)
}

pub fn is_upper_bounded(space: &ClosureSpace) -> bool {
    acyclic(&d_relation_from_arrows(&arrows(space)).dual_edges)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassFlags {
    pub distributive: bool,
    pub join_semidistributive: bool,
    pub meet_semidistributive: bool,
    pub semidistributive: bool,
    pub modular: bool,
    pub upper_semimodular: bool,
    pub lower_semimodular: bool,
    pub atomistic: bool,
    pub geometric: bool,
    pub meet_distributive: bool,
    pub join_distributive: bool,
    pub lower_bounded: bool,
    pub upper_bounded: bool,
}

impl ClassFlags {
    pub const NAMES: [&'static str; 13] = [
        "distributive",
        "join_semidistributive",
        "meet_semidistributive",
        "semidistributive",
        "modular",
        "upper_semimodular",
        "lower_semimodular",
        "atomistic",
        "geometric",
        "meet_distributive",
        "join_distributive",
        "lower_bounded",
        "upper_bounded",
    ];

    pub fn get(&self, name: &str) -> Option<bool> {
        Some(match name {
            "distributive" => self.distributive,
            "join_semidistributive" | "sdj" => self.join_semidistributive,
            "meet_semidistributive" | "sdm" => self.meet_semidistributive,
            "semidistributive" | "sd" => self.semidistributive,
            "modular" => self.modular,
            "upper_semimodular" | "usm" => self.upper_semimodular,
            "lower_semimodular" | "lsm" => self.lower_semimodular,
            "atomistic" => self.atomistic,
            "geometric" => self.geometric,
            "meet_distributive" | "convex_geometry" => self.meet_distributive,
            "join_distributive" => self.join_distributive,
            "lower_bounded" => self.lower_bounded,
            "upper_bounded" => self.upper_bounded,
            _ => return None,
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, bool)> + '_ {
        Self::NAMES.iter().map(move |n| (*n, self.get(n).unwrap()))
    }
}

fn join_semidistributive(t: &Tables) -> bool {
    let m = t.len();
    for a in 0..m {
        for b in 0..m {
            let ab = t.join(a, b);
            for c in b + 1..m {
                if t.join(a, c) == ab && t.join(a, t.meet(b, c)) != ab {
                    return false;
                }
            }
        }
    }
    true
}

fn meet_semidistributive(t: &Tables) -> bool {
    let m = t.len();
    for a in 0..m {
        for b in 0..m {
            let ab = t.meet(a, b);
            for c in b + 1..m {
                if t.meet(a, c) == ab && t.meet(a, t.join(b, c)) != ab {
                    return false;
                }
            }
        }
    }
    true
}

fn distributive(t: &Tables) -> bool {
    let m = t.len();
    for a in 0..m {
        for b in 0..m {
            for c in b + 1..m {
                if t.meet(a, t.join(b, c)) != t.join(t.meet(a, b), t.meet(a, c)) {
                    return false;
                }
            }
        }
    }
    true
}

fn modular(t: &Tables) -> bool {
    let m = t.len();
    for a in 0..m {
        for c in a + 1..m {
            if !t.leq(a, c) {
                continue;
            }
            for b in 0..m {
                if t.join(a, t.meet(b, c)) != t.meet(t.join(a, b), c) {
                    return false;
                }
            }
        }
    }
    true
}

/// If `a` and `b` both cover `c`, then `a ∨ b` covers both.
fn upper_semimodular(space: &ClosureSpace, t: &Tables) -> bool {
    for c in 0..space.len() {
        let ups = space.successors(c);
        for (k, &a) in ups.iter().enumerate() {
            for &b in &ups[k + 1..] {
                let j = t.join(a, b);
                let jp = space.predecessors(j);
                if !jp.contains(&a) || !jp.contains(&b) {
                    return false;
                }
            }
        }
    }
    true
}

/// If `c` covers both `a` and `b`, then both cover `a ∧ b`.
fn lower_semimodular(space: &ClosureSpace, t: &Tables) -> bool {
    for c in 0..space.len() {
        let downs = space.predecessors(c);
        for (k, &a) in downs.iter().enumerate() {
            for &b in &downs[k + 1..] {
                let mt = t.meet(a, b);
                let ms = space.successors(mt);
                if !ms.contains(&a) || !ms.contains(&b) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn classify(space: &ClosureSpace) -> Result<ClassFlags> {
    let t = Tables::new(space);
    classify_with(space, &t)
}

pub fn classify_with(space: &ClosureSpace, t: &Tables) -> Result<ClassFlags> {
    let irr = irreducibles(space);
    let arr = arrows_with(space, &irr);
    let drel = d_relation_from_arrows(&arr);

    let sdj = join_semidistributive(t);
    let sdm = meet_semidistributive(t);
    let usm = upper_semimodular(space, t);
    let lsm = lower_semimodular(space, t);
    let atomistic = (0..space.n()).all(|x| space.element_closure(x).len() == 1);
    let flags = ClassFlags {
        distributive: distributive(t),
        join_semidistributive: sdj,
        meet_semidistributive: sdm,
        semidistributive: sdj && sdm,
        modular: modular(t),
        upper_semimodular: usm,
        lower_semimodular: lsm,
        atomistic,
        geometric: atomistic && usm,
        meet_distributive: lsm && sdj,
        join_distributive: usm && sdm,
        lower_bounded: acyclic(&drel.edges),
        upper_bounded: acyclic(&drel.dual_edges),
    };

    // Arrow characterizations of SDj and SDm.
    let sdj_arrows = irr
        .meet_irreducibles
        .iter()
        .all(|mi| arr.double.iter().filter(|&&(_, m)| m == mi.closed).count() == 1);
    let sdm_arrows =
        (0..space.n()).all(|x| arr.double.iter().filter(|&&(y, _)| y == x).count() == 1);
    let checks = [
        (
            sdj == sdj_arrows,
            "join-semidistributivity disagrees with arrows",
        ),
        (
            sdm == sdm_arrows,
            "meet-semidistributivity disagrees with arrows",
        ),
        (
            flags.modular == (usm && lsm),
            "modularity differs from both semimodular laws",
        ),
        (
            !flags.distributive || (flags.modular && flags.semidistributive),
            "distributive lattice is not modular and semidistributive",
        ),
        (
            !flags.lower_bounded || sdj,
            "lower bounded but not join-semidistributive",
        ),
        (
            !flags.upper_bounded || sdm,
            "upper bounded but not meet-semidistributive",
        ),
    ];
    for (ok, what) in checks {
        if !ok {
            return Err(Error::Invariant(what.to_string()));
        }
    }
    Ok(flags)
}

/// The unique `cl^b`-minimal spanning set of a closed set in a
/// join-semidistributive space: for each predecessor `C'` of `C`, the unique
/// `x ∈ C \ C'` with `x_* ⊆ C'`.
pub fn canonical_spanning_set(space: &ClosureSpace, c: ElementSet) -> Result<ElementSet> {
    if !join_semidistributive(&Tables::new(space)) {
        return Err(Error::NotJoinSemidistributive);
    }
    canonical_spanning_set_unchecked(space, c)
}

/// As [`canonical_spanning_set`], for callers that already know the space is
/// join-semidistributive.
pub fn canonical_spanning_set_unchecked(space: &ClosureSpace, c: ElementSet) -> Result<ElementSet> {
    let ci = space
        .index_of(c)
        .ok_or_else(|| Error::NotClosed(space.render(c)))?;
    let mut out = ElementSet::EMPTY;
    for &p in space.predecessors(ci) {
        let cp = space.closed_set(p);
        let labels: Vec<Element> = c
            .difference(cp)
            .iter()
            .filter(|&x| space.element_closure(x).without(x).is_subset(cp))
            .collect();
        match labels.as_slice() {
            [x] => out.insert(*x),
            _ => {
                return Err(Error::Invariant(format!(
                    "cover {} ≺ {} has {} minimal labels",
                    space.render(cp),
                    space.render(c),
                    labels.len()
                )))
            }
        }
    }
    Ok(out)
}

/// Exchange property: `x ∈ cl(C ∪ y) \ C` implies `y ∈ cl(C ∪ x)`.
pub fn has_exchange_property(space: &ClosureSpace) -> bool {
    space.closed_sets().iter().all(|&c| {
        let outside = space.full().difference(c);
        outside.iter().all(|y| {
            let cy = space.cl(c.with(y));
            cy.difference(c)
                .iter()
                .all(|x| x == y || space.cl(c.with(x)).contains(y))
        })
    })
}

/// Anti-exchange: for closed `C` and distinct `x, y ∉ C`, `y ∈ cl(C ∪ x)`
/// implies `x ∉ cl(C ∪ y)`.
pub fn has_anti_exchange_property(space: &ClosureSpace) -> bool {
    space.closed_sets().iter().all(|&c| {
        let outside = space.full().difference(c);
        outside.iter().all(|x| {
            let cx = space.cl(c.with(x));
            cx.difference(c)
                .iter()
                .all(|y| y == x || !space.cl(c.with(y)).contains(x))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set::GroundSet;

    fn m3() -> ClosureSpace {
        let g = GroundSet::letters(3).unwrap();
        let fam: Vec<ElementSet> = ["", "a", "b", "c", "abc"]
            .iter()
            .map(|s| g.parse_set(s).unwrap())
            .collect();
        ClosureSpace::from_closed_sets(g, fam).unwrap()
    }

    #[test]
    fn diamond_irreducibles_and_arrows() {
        let s = m3();
        let irr = irreducibles(&s);
        assert_eq!(irr.atoms, vec![1, 2, 3]);
        assert_eq!(irr.coatoms, vec![1, 2, 3]);
        let mis: Vec<usize> = irr.meet_irreducibles.iter().map(|m| m.closed).collect();
        assert_eq!(mis, vec![1, 2, 3]);
        let arr = arrows(&s);
        // a ↕ {b} and a ↕ {c}; nothing between a and {a}
        assert_eq!(arr.double.iter().filter(|p| p.0 == 0).count(), 2);
        assert!(arr.is_double(0, 2) && arr.is_double(0, 3) && !arr.is_up(0, 1));
    }

    #[test]
    fn diamond_is_modular_not_distributive() {
        let f = classify(&m3()).unwrap();
        assert!(f.modular && !f.distributive && !f.semidistributive);
        assert!(f.atomistic && f.geometric);
    }

    #[test]
    fn powersets_are_distributive() {
        for n in 0..=4 {
            let s = ClosureSpace::powerset(n).unwrap();
            let f = classify(&s).unwrap();
            assert!(
                f.distributive && f.lower_bounded && f.upper_bounded,
                "n={n}"
            );
            assert_eq!(primes(&s), s.full());
            assert!(d_relation(&s).unwrap().edges.is_empty());
        }
    }

    #[test]
    fn prime_requires_membership() {
        let s = m3();
        let a = s.ground().parse_set("a").unwrap();
        assert!(matches!(
            is_prime_in_ideal(&s, a, 1),
            Err(Error::ElementNotInSet { .. })
        ));
        assert!(is_prime_in_ideal(&s, a, 0).unwrap());
        assert!(is_almost_prime(&s, s.full(), 0).unwrap());
    }

    #[test]
    fn acyclicity() {
        assert!(acyclic(&[(0, 1), (1, 2)]));
        assert!(!acyclic(&[(0, 1), (1, 0)]));
        assert!(acyclic(&[]));
    }
}
