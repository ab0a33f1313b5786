//! Implications, forward chaining, quasi-/pseudo-closed and essential sets,
//! and the binary, canonical, canonical-direct, D- and E-bases.

use std::collections::BTreeMap;
use std::fmt;

use crate::analysis::{irreducibles, IrreducibleCatalog};
use crate::error::{Error, Result};
use crate::generators::{catalog, GeneratorCatalog};
use crate::set::{canonicalize_family, minimal_members, ElementSet, GroundSet};
use crate::space::{next_closure, ClosureSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Implication {
    pub premise: ElementSet,
    pub conclusion: ElementSet,
}

impl Implication {
    pub fn new(premise: ElementSet, conclusion: ElementSet) -> Implication {
        Implication {
            premise,
            conclusion: conclusion.difference(premise),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.conclusion.is_empty()
    }

    pub fn is_binary(&self) -> bool {
        self.premise.len() == 1
    }

    pub fn render(&self, ground: &GroundSet) -> String {
        format!(
            "{} -> {}",
            ground.render(self.premise),
            ground.render(self.conclusion)
        )
    }
}

impl PartialOrd for Implication {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Implication {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.premise
            .cmp(&other.premise)
            .then_with(|| self.conclusion.cmp(&other.conclusion))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    /// Every conclusion is a singleton.
    Unit,
    /// Premises are pairwise distinct.
    Aggregated,
}

/// An ordered, duplicate-free list of non-trivial implications.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicationalBase {
    ground: GroundSet,
    implications: Vec<Implication>,
    form: Form,
}

impl ImplicationalBase {
    /// Normalizes `implications` into the requested form.
    pub fn new(
        ground: GroundSet,
        implications: impl IntoIterator<Item = Implication>,
        form: Form,
    ) -> Self {
        let raw: Vec<Implication> = implications
            .into_iter()
            .map(|i| Implication::new(i.premise, i.conclusion))
            .filter(|i| !i.is_trivial())
            .collect();
        let implications = match form {
            Form::Unit => {
                let mut out: Vec<Implication> = raw
                    .iter()
                    .flat_map(|i| {
                        i.conclusion
                            .iter()
                            .map(move |x| Implication::new(i.premise, ElementSet::singleton(x)))
                    })
                    .collect();
                out.sort();
                out.dedup();
                out
            }
            Form::Aggregated => {
                let mut merged: BTreeMap<ElementSet, ElementSet> = BTreeMap::new();
                for i in raw {
                    let e = merged.entry(i.premise).or_default();
                    *e = e.union(i.conclusion);
                }
                merged
                    .into_iter()
                    .map(|(p, c)| Implication::new(p, c))
                    .collect()
            }
        };
        ImplicationalBase {
            ground,
            implications,
            form,
        }
    }

    pub fn empty(ground: GroundSet) -> Self {
        ImplicationalBase::new(ground, [], Form::Unit)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn implications(&self) -> &[Implication] {
        &self.implications
    }

    pub fn form(&self) -> Form {
        self.form
    }

    pub fn len(&self) -> usize {
        self.implications.len()
    }

    pub fn is_empty(&self) -> bool {
        self.implications.is_empty()
    }

    pub fn unit(&self) -> Self {
        ImplicationalBase::new(
            self.ground.clone(),
            self.implications.iter().copied(),
            Form::Unit,
        )
    }

    /// Merges implications with equal premises.
    pub fn aggregate(&self) -> Self {
        ImplicationalBase::new(
            self.ground.clone(),
            self.implications.iter().copied(),
            Form::Aggregated,
        )
    }

    /// Implications with a singleton premise.
    pub fn binary(&self) -> Self {
        self.filtered(|i| i.is_binary())
    }

    /// Implications whose premise is not a singleton.
    pub fn non_binary(&self) -> Self {
        self.filtered(|i| !i.is_binary())
    }

    fn filtered(&self, keep: impl Fn(&Implication) -> bool) -> Self {
        ImplicationalBase {
            ground: self.ground.clone(),
            implications: self.implications.iter().copied().filter(keep).collect(),
            form: self.form,
        }
    }

    /// Union of two bases over the same ground set, in the form of `self`.
    pub fn union(&self, other: &ImplicationalBase) -> Self {
        ImplicationalBase::new(
            self.ground.clone(),
            self.implications.iter().chain(&other.implications).copied(),
            self.form,
        )
    }

    /// Least superset of `x` closed under every implication.
    pub fn closure(&self, x: ElementSet) -> ElementSet {
        let mut y = x;
        loop {
            let mut changed = false;
            for i in &self.implications {
                if i.premise.is_subset(y) && !i.conclusion.is_subset(y) {
                    y = y.union(i.conclusion);
                    changed = true;
                }
            }
            if !changed {
                return y;
            }
        }
    }

    /// A single pass over the implications in stored order.
    pub fn one_pass_closure(&self, x: ElementSet) -> ElementSet {
        self.implications.iter().fold(x, |y, i| {
            if i.premise.is_subset(y) {
                y.union(i.conclusion)
            } else {
                y
            }
        })
    }

    pub fn render_lines(&self) -> Vec<String> {
        self.implications
            .iter()
            .map(|i| i.render(&self.ground))
            .collect()
    }

    /// Parses lines of the form `ac -> b` (or space-separated labels).
    pub fn parse(ground: GroundSet, lines: &[&str], form: Form) -> Result<Self> {
        let mut imps = Vec::new();
        for (k, line) in lines.iter().enumerate() {
            let (p, c) = line.split_once("->").ok_or_else(|| Error::Parse {
                line: k + 1,
                column: 1,
                message: "expected `premise -> conclusion`".into(),
            })?;
            imps.push(Implication::new(ground.parse_set(p)?, ground.parse_set(c)?));
        }
        Ok(ImplicationalBase::new(ground, imps, form))
    }
}

impl fmt::Display for ImplicationalBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.render_lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Same implications after aggregation.
pub fn aggregate(ib: &ImplicationalBase) -> ImplicationalBase {
    ib.aggregate()
}

/// `A -> X` holds iff `X ⊆ cl(A)`.
pub fn holds(space: &ClosureSpace, imp: &Implication) -> bool {
    imp.conclusion.is_subset(space.cl(imp.premise))
}

/// Forward-chaining closure of `x` under `ib`.
pub fn ib_closure(ib: &ImplicationalBase, x: ElementSet) -> ElementSet {
    ib.closure(x)
}

/// `Q` is quasi-closed iff `Q ∩ M` is closed for every meet-irreducible `M`
/// not including `Q`.
pub fn is_quasi_closed(space: &ClosureSpace, q: ElementSet) -> bool {
    is_quasi_closed_with(space, &irreducibles(space), q)
}

fn is_quasi_closed_with(space: &ClosureSpace, irr: &IrreducibleCatalog, q: ElementSet) -> bool {
    irr.meet_irreducibles.iter().all(|mi| {
        let m = space.closed_set(mi.closed);
        q.is_subset(m) || space.is_closed(q.intersection(m))
    })
}

/// Every quasi-closed set, by a sweep over all subsets of the ground set.
pub fn quasi_closed_sets(space: &ClosureSpace) -> Result<Vec<ElementSet>> {
    if space.n() > 20 {
        return Err(Error::Precondition(format!(
            "quasi-closed sweep needs at most 20 elements, got {}",
            space.n()
        )));
    }
    let irr = irreducibles(space);
    let mut out: Vec<ElementSet> = space
        .full()
        .subsets()
        .filter(|&q| is_quasi_closed_with(space, &irr, q))
        .collect();
    canonicalize_family(&mut out);
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialSet {
    pub closed: ElementSet,
    pub join_irreducible: bool,
    /// Pseudo-closed sets spanning this essential set.
    pub pseudo_closed: Vec<ElementSet>,
    /// Intersection of the predecessors, `C_*`.
    pub lower: ElementSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialSets {
    /// Canonical order.
    pub pseudo_closed: Vec<ElementSet>,
    /// Canonical order of the essential sets.
    pub essential: Vec<EssentialSet>,
}

impl SpecialSets {
    pub fn essential_sets(&self) -> Vec<ElementSet> {
        self.essential.iter().map(|e| e.closed).collect()
    }

    pub fn non_ji_essential(&self) -> Vec<ElementSet> {
        self.essential
            .iter()
            .filter(|e| !e.join_irreducible)
            .map(|e| e.closed)
            .collect()
    }
}

/// Pseudo-closed sets through NextClosure with the saturation operator: a
/// set is pseudo-closed iff it is not closed but contains `cl(P)` for every
/// pseudo-closed `P` strictly inside it.
pub fn pseudo_closed_lectic(space: &ClosureSpace) -> Vec<ElementSet> {
    let n = space.n();
    let mut pseudo: Vec<(ElementSet, ElementSet)> = Vec::new();
    let mut a = saturate(&pseudo, ElementSet::EMPTY);
    loop {
        let c = space.cl(a);
        if c != a {
            pseudo.push((a, c));
        }
        let op = |x: ElementSet| saturate(&pseudo, x);
        match next_closure(a, n, &op) {
            Some(next) => a = next,
            None => break,
        }
    }
    let mut out: Vec<ElementSet> = pseudo.into_iter().map(|(p, _)| p).collect();
    canonicalize_family(&mut out);
    out
}

fn saturate(pseudo: &[(ElementSet, ElementSet)], x: ElementSet) -> ElementSet {
    let mut y = x;
    loop {
        let mut z = y;
        for &(p, c) in pseudo {
            if p.is_proper_subset(z) {
                z = z.union(c);
            }
        }
        if z == y {
            return y;
        }
        y = z;
    }
}

/// Upper bound on the number of `cl^b`-closed sets visited by the
/// definitional route of [`special_sets`].
pub const DEFINITIONAL_ROUTE_LIMIT: usize = 1 << 18;

/// Pseudo-closed sets straight from the definition: non-closed quasi-closed
/// sets minimal among the spanning sets of their closure. Candidates are the
/// singletons `{x}` with `cl(x) ≠ {x}` and the `cl^b`-closed sets, which
/// contain every quasi-closed set spanning a non-ji closed set. Returns
/// `None` once more than `limit` candidates would be visited.
pub fn pseudo_closed_by_definition(space: &ClosureSpace, limit: usize) -> Option<Vec<ElementSet>> {
    let irr = irreducibles(space);
    let mut order: Vec<usize> = (0..space.n()).collect();
    order.sort_by_key(|&x| space.element_closure(x).len());
    let mut downsets = Vec::new();
    if !down_sets(space, &order, 0, ElementSet::EMPTY, &mut downsets, limit) {
        return None;
    }
    let mut by_closure: BTreeMap<ElementSet, Vec<ElementSet>> = BTreeMap::new();
    for d in downsets {
        let c = space.cl(d);
        if c != d && is_quasi_closed_with(space, &irr, d) {
            by_closure.entry(c).or_default().push(d);
        }
    }
    let mut out: Vec<ElementSet> = (0..space.n())
        .filter(|&x| space.element_closure(x).len() > 1)
        .map(ElementSet::singleton)
        .collect();
    for (c, family) in by_closure {
        // spanning a join-irreducible closed set forces the singleton
        if irr
            .join_irreducibles
            .iter()
            .any(|j| space.closed_set(j.closed) == c)
        {
            continue;
        }
        out.extend(minimal_members(&family));
    }
    canonicalize_family(&mut out);
    Some(out)
}

fn down_sets(
    space: &ClosureSpace,
    order: &[usize],
    k: usize,
    current: ElementSet,
    out: &mut Vec<ElementSet>,
    limit: usize,
) -> bool {
    if k == order.len() {
        out.push(current);
        return out.len() <= limit;
    }
    let x = order[k];
    if !down_sets(space, order, k + 1, current, out, limit) {
        return false;
    }
    if space.element_closure(x).without(x).is_subset(current) {
        return down_sets(space, order, k + 1, current.with(x), out, limit);
    }
    true
}

/// Pseudo-closed and essential sets. The lectic enumeration is checked
/// against the definition whenever the latter stays within
/// [`DEFINITIONAL_ROUTE_LIMIT`] candidates.
pub fn special_sets(space: &ClosureSpace) -> Result<SpecialSets> {
    let pseudo = pseudo_closed_lectic(space);
    if let Some(by_def) = pseudo_closed_by_definition(space, DEFINITIONAL_ROUTE_LIMIT) {
        if by_def != pseudo {
            let render = |f: &[ElementSet]| {
                f.iter()
                    .map(|a| space.render(*a))
                    .collect::<Vec<_>>()
                    .join(", ")
            };
            return Err(Error::Invariant(format!(
                "pseudo-closed sets: lectic [{}], definition [{}]",
                render(&pseudo),
                render(&by_def)
            )));
        }
    }
    Ok(special_sets_from(space, pseudo))
}

fn special_sets_from(space: &ClosureSpace, pseudo: Vec<ElementSet>) -> SpecialSets {
    let mut by_closure: BTreeMap<ElementSet, Vec<ElementSet>> = BTreeMap::new();
    for &p in &pseudo {
        by_closure.entry(space.cl(p)).or_default().push(p);
    }
    let essential = by_closure
        .into_iter()
        .map(|(c, ps)| {
            let ci = space.index_of(c).expect("closure is closed");
            EssentialSet {
                closed: c,
                join_irreducible: space.predecessors(ci).len() == 1,
                pseudo_closed: ps,
                lower: space.pred_intersection(ci),
            }
        })
        .collect();
    SpecialSets {
        pseudo_closed: pseudo,
        essential,
    }
}

/// `{a -> x : x ∈ cl(a), x ≠ a}`, unit form.
pub fn binary_part(space: &ClosureSpace) -> ImplicationalBase {
    let imps = (0..space.n())
        .map(|a| Implication::new(ElementSet::singleton(a), space.element_closure(a)));
    ImplicationalBase::new(space.ground().clone(), imps, Form::Unit)
}

/// `{P -> cl(P) \ P : P pseudo-closed}`, aggregated form.
pub fn canonical_base(space: &ClosureSpace) -> Result<ImplicationalBase> {
    Ok(canonical_base_from(space, &special_sets(space)?))
}

pub fn canonical_base_from(space: &ClosureSpace, special: &SpecialSets) -> ImplicationalBase {
    let imps = special
        .pseudo_closed
        .iter()
        .map(|&p| Implication::new(p, space.cl(p)));
    ImplicationalBase::new(space.ground().clone(), imps, Form::Aggregated)
}

/// `{A -> x : A ∈ gen(x)}`, unit form.
pub fn canonical_direct_base(space: &ClosureSpace) -> Result<ImplicationalBase> {
    Ok(canonical_direct_base_from(space, &catalog(space)?))
}

pub fn canonical_direct_base_from(
    space: &ClosureSpace,
    cat: &GeneratorCatalog,
) -> ImplicationalBase {
    from_families(space, cat.elements.iter().map(|g| &g.gen))
}

/// Binary part plus `{A -> x : A ∈ gen_D(x)}`, unit form.
pub fn d_base(space: &ClosureSpace) -> Result<ImplicationalBase> {
    Ok(d_base_from(space, &catalog(space)?))
}

pub fn d_base_from(space: &ClosureSpace, cat: &GeneratorCatalog) -> ImplicationalBase {
    binary_part(space).union(&from_families(space, cat.elements.iter().map(|g| &g.gen_d)))
}

/// Binary part plus `{A -> x : A ∈ gen_E(x)}`, unit form. Not necessarily
/// valid.
pub fn e_base(space: &ClosureSpace) -> Result<ImplicationalBase> {
    Ok(e_base_from(space, &catalog(space)?))
}

pub fn e_base_from(space: &ClosureSpace, cat: &GeneratorCatalog) -> ImplicationalBase {
    binary_part(space).union(&from_families(space, cat.elements.iter().map(|g| &g.gen_e)))
}

/// E-base from E-generator families indexed by element.
pub fn e_base_from_generators(
    space: &ClosureSpace,
    gen_e: &[Vec<ElementSet>],
) -> ImplicationalBase {
    binary_part(space).union(&from_families(space, gen_e.iter()))
}

fn from_families<'a>(
    space: &ClosureSpace,
    families: impl Iterator<Item = &'a Vec<ElementSet>>,
) -> ImplicationalBase {
    let imps: Vec<Implication> = families
        .enumerate()
        .flat_map(|(x, fam)| {
            fam.iter()
                .map(move |&a| Implication::new(a, ElementSet::singleton(x)))
        })
        .collect();
    ImplicationalBase::new(space.ground().clone(), imps, Form::Unit)
}

/// First pseudo-closed set whose closure under `ib` differs from its closure
/// in the space, or the premise of an implication that does not hold.
pub(crate) fn validity_witness(
    space: &ClosureSpace,
    ib: &ImplicationalBase,
    pseudo: &[ElementSet],
) -> Option<ElementSet> {
    if let Some(i) = ib.implications().iter().find(|i| !holds(space, i)) {
        return Some(i.premise);
    }
    pseudo
        .iter()
        .copied()
        .find(|&p| ib.closure(p) != space.cl(p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseBundle {
    pub binary: ImplicationalBase,
    pub canonical: ImplicationalBase,
    pub canonical_direct: ImplicationalBase,
    pub d_base: ImplicationalBase,
    pub e_base: ImplicationalBase,
}

/// All five bases from one generator catalog. The canonical,
/// canonical-direct and D-bases are checked valid, and the non-binary parts
/// are checked nested: E inside D inside canonical-direct.
pub fn all_bases(space: &ClosureSpace) -> Result<BaseBundle> {
    let special = special_sets(space)?;
    let cat = catalog(space)?;
    all_bases_from(space, &special, &cat)
}

pub fn all_bases_from(
    space: &ClosureSpace,
    special: &SpecialSets,
    cat: &GeneratorCatalog,
) -> Result<BaseBundle> {
    let bundle = BaseBundle {
        binary: binary_part(space),
        canonical: canonical_base_from(space, special),
        canonical_direct: canonical_direct_base_from(space, cat),
        d_base: d_base_from(space, cat),
        e_base: e_base_from(space, cat),
    };
    for (name, ib) in [
        ("canonical", &bundle.canonical),
        ("canonical-direct", &bundle.canonical_direct),
        ("D", &bundle.d_base),
    ] {
        if let Some(w) = validity_witness(space, ib, &special.pseudo_closed) {
            return Err(Error::Invariant(format!(
                "{name} base is not valid, witness {}",
                space.render(w)
            )));
        }
    }
    let contained = |small: &ImplicationalBase, large: &ImplicationalBase| {
        let large = large.non_binary();
        small
            .non_binary()
            .implications()
            .iter()
            .all(|i| large.implications().binary_search(i).is_ok())
    };
    if !contained(&bundle.e_base, &bundle.d_base)
        || !contained(&bundle.d_base, &bundle.canonical_direct)
    {
        return Err(Error::Invariant("bases are not nested".into()));
    }
    Ok(bundle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ib(g: &GroundSet, lines: &[&str], form: Form) -> ImplicationalBase {
        ImplicationalBase::parse(g.clone(), lines, form).unwrap()
    }

    #[test]
    fn aggregation_merges_equal_premises() {
        let g = GroundSet::letters(4).unwrap();
        let b = ib(&g, &["ad -> b", "ad -> c"], Form::Unit);
        assert_eq!(b.len(), 2);
        assert_eq!(b.aggregate().render_lines(), ["ad -> bc"]);
        assert_eq!(b.aggregate().unit(), b);
        assert!(ImplicationalBase::empty(g).aggregate().is_empty());
    }

    #[test]
    fn normalization_strips_trivial_parts() {
        let g = GroundSet::letters(3).unwrap();
        let b = ib(&g, &["ab -> abc", "a -> a"], Form::Aggregated);
        assert_eq!(b.render_lines(), ["ab -> c"]);
    }

    #[test]
    fn forward_chaining() {
        let g = GroundSet::letters(4).unwrap();
        let b = ib(&g, &["c -> d", "a -> b", "ab -> c"], Form::Unit);
        let a = g.parse_set("a").unwrap();
        assert_eq!(b.closure(a), g.full());
        // stored order is a->b, c->d, ab->c: one pass misses d
        assert_eq!(g.render(b.one_pass_closure(a)), "abc");
    }

    #[test]
    fn powerset_has_no_pseudo_closed_sets() {
        let s = ClosureSpace::powerset(3).unwrap();
        let sp = special_sets(&s).unwrap();
        assert!(sp.pseudo_closed.is_empty());
        assert!(canonical_base(&s).unwrap().is_empty());
        assert_eq!(quasi_closed_sets(&s).unwrap().len(), 8);
    }

    #[test]
    fn diamond_pseudo_closed_sets() {
        let g = GroundSet::letters(3).unwrap();
        let fam: Vec<ElementSet> = ["", "a", "b", "c", "abc"]
            .iter()
            .map(|s| g.parse_set(s).unwrap())
            .collect();
        let s = ClosureSpace::from_closed_sets(g.clone(), fam).unwrap();
        let sp = special_sets(&s).unwrap();
        let rendered: Vec<String> = sp.pseudo_closed.iter().map(|p| g.render(*p)).collect();
        assert_eq!(rendered, ["ab", "ac", "bc"]);
        assert_eq!(sp.essential.len(), 1);
        assert!(!sp.essential[0].join_irreducible);
        let bundle = all_bases(&s).unwrap();
        assert_eq!(bundle.e_base.aggregate(), bundle.canonical);
    }
}
