//! Minimal generators, `cl^b`-minimal spanning sets, D-generators and
//! E-generators.
//!
//! Families of generators are reported through one representative per
//! `cl^b`-class: the set of maximal elements of `cl^b(A)` in the binary
//! order, which is the unique inclusion-minimal member of the class. Use
//! [`clb_class`] to expand a representative.

use rayon::prelude::*;

use crate::analysis::almost_prime_in;
use crate::error::{Error, Result};
use crate::set::{canonicalize_family, minimal_members, Element, ElementSet};
use crate::space::ClosureSpace;

/// Depth-first search over sets `A ⊆ pool` built in increasing element order
/// where each new element lies outside the closure of the previous ones.
/// `visit` returns `true` to stop extending the current set.
fn grow<F>(space: &ClosureSpace, pool: &[Element], start: usize, a: ElementSet, visit: &mut F)
where
    F: FnMut(ElementSet, &[Element]) -> bool,
{
    for k in start..pool.len() {
        let y = pool[k];
        if space.cl(a).contains(y) {
            continue;
        }
        let b = a.with(y);
        if !visit(b, &pool[k + 1..]) {
            grow(space, pool, k + 1, b, visit);
        }
    }
}

/// Inclusion-minimal sets `Y` with `x ∉ Y` and `x ∈ cl(Y)`, canonical order.
pub fn minimal_generators(space: &ClosureSpace, x: Element) -> Vec<ElementSet> {
    let pool: Vec<Element> = (0..space.n()).filter(|&y| y != x).collect();
    let mut out = Vec::new();
    grow(space, &pool, 0, ElementSet::EMPTY, &mut |a, rest| {
        if space.cl(a).contains(x) {
            if a.iter().all(|y| !space.cl(a.without(y)).contains(x)) {
                out.push(a);
            }
            return true;
        }
        let reach: ElementSet = rest.iter().copied().collect();
        !space.cl(a.union(reach)).contains(x)
    });
    canonicalize_family(&mut out);
    out
}

/// Largest `cl^b`-closed subset of `cl^b(A)` avoiding `y`.
fn drop_from_clb(space: &ClosureSpace, clb: ElementSet, y: Element) -> ElementSet {
    clb.difference(space.elements_above(y))
}

/// Whether the spanning set `a` of `cl(a)` admits no proper `cl^b`-refinement
/// spanning the same closed set.
pub fn is_clb_minimal_spanning(space: &ClosureSpace, a: ElementSet) -> bool {
    let c = space.cl(a);
    let clb = space.clb(a);
    a.iter()
        .all(|y| space.cl(drop_from_clb(space, clb, y)) != c)
}

/// Maximal elements of `X` in the binary order (`y ≤ z` iff `y ∈ cl(z)`).
pub fn binary_maximal(space: &ClosureSpace, x: ElementSet) -> ElementSet {
    x.iter()
        .filter(|&y| {
            !x.iter()
                .any(|z| z != y && space.element_closure(z).contains(y))
        })
        .collect()
}

/// Representatives of the `cl^b`-minimal spanning sets of a closed set.
pub fn clb_minimal_spanning_sets(space: &ClosureSpace, c: ElementSet) -> Result<Vec<ElementSet>> {
    if !space.ground().contains_set(c) {
        return Err(Error::GroundMismatch);
    }
    if !space.is_closed(c) {
        return Err(Error::NotClosed(space.render(c)));
    }
    Ok(clb_minimal_spanning_unchecked(space, c))
}

pub(crate) fn clb_minimal_spanning_unchecked(
    space: &ClosureSpace,
    c: ElementSet,
) -> Vec<ElementSet> {
    if space.cl(ElementSet::EMPTY) == c {
        return vec![ElementSet::EMPTY];
    }
    let pool: Vec<Element> = c.iter().collect();
    let mut out = Vec::new();
    grow(space, &pool, 0, ElementSet::EMPTY, &mut |a, rest| {
        let ca = space.cl(a);
        if ca == c {
            if binary_maximal(space, a) == a && is_clb_minimal_spanning(space, a) {
                out.push(a);
            }
            return true;
        }
        let reach: ElementSet = rest.iter().copied().collect();
        space.cl(a.union(reach)) != c
    });
    canonicalize_family(&mut out);
    out
}

/// Every set with the same `cl^b`-closure as `a`, canonical order.
pub fn clb_class(space: &ClosureSpace, a: ElementSet) -> Vec<ElementSet> {
    let clb = space.clb(a);
    let core = binary_maximal(space, clb);
    let mut out: Vec<ElementSet> = clb
        .difference(core)
        .subsets()
        .map(|extra| core.union(extra))
        .collect();
    canonicalize_family(&mut out);
    out
}

/// D-generators of `x`: `cl^b`-minimal sets generating `x` with
/// `x ∉ cl^b(A)`.
pub fn d_generators(space: &ClosureSpace, x: Element) -> Vec<ElementSet> {
    d_generators_from(space, x, &minimal_generators(space, x))
}

fn d_generators_from(space: &ClosureSpace, x: Element, gen: &[ElementSet]) -> Vec<ElementSet> {
    gen.iter()
        .copied()
        .filter(|&a| {
            let clb = space.clb(a);
            !clb.contains(x)
                && a.iter()
                    .all(|y| !space.cl(drop_from_clb(space, clb, y)).contains(x))
        })
        .collect()
}

/// D-generators of `x` whose closure is inclusion-minimal.
pub fn e_generators_by_definition(space: &ClosureSpace, x: Element) -> Vec<ElementSet> {
    e_generators_from(space, &d_generators(space, x))
}

fn e_generators_from(space: &ClosureSpace, gen_d: &[ElementSet]) -> Vec<ElementSet> {
    let closures: Vec<ElementSet> = gen_d.iter().map(|&a| space.cl(a)).collect();
    let minimal = minimal_members(&closures);
    gen_d
        .iter()
        .zip(&closures)
        .filter(|(_, c)| minimal.contains(c))
        .map(|(a, _)| *a)
        .collect()
}

/// `cl^b`-minimal spanning sets `A` of closed sets `C` in which `x` is almost
/// prime, with `x ∉ cl^b(A)`.
pub fn e_generators_by_characterization(space: &ClosureSpace, x: Element) -> Vec<ElementSet> {
    let mut out = Vec::new();
    for ci in 0..space.len() {
        let c = space.closed_set(ci);
        if !c.contains(x) || !almost_prime_in(space, ci, x) {
            continue;
        }
        out.extend(
            clb_minimal_spanning_unchecked(space, c)
                .into_iter()
                .filter(|&a| !space.clb(a).contains(x)),
        );
    }
    canonicalize_family(&mut out);
    out
}

/// E-generators of `x`, computed both from the definition and from the
/// almost-prime characterization. The two must agree.
pub fn e_generators(space: &ClosureSpace, x: Element) -> Result<Vec<ElementSet>> {
    let by_def = e_generators_by_definition(space, x);
    check_e_paths(space, x, by_def)
}

fn check_e_paths(
    space: &ClosureSpace,
    x: Element,
    by_def: Vec<ElementSet>,
) -> Result<Vec<ElementSet>> {
    let by_char = e_generators_by_characterization(space, x);
    if by_def != by_char {
        let render = |f: &[ElementSet]| {
            f.iter()
                .map(|a| space.render(*a))
                .collect::<Vec<_>>()
                .join(", ")
        };
        return Err(Error::Invariant(format!(
            "E-generators of {}: definition gives [{}], characterization gives [{}]",
            space.ground().name(x),
            render(&by_def),
            render(&by_char)
        )));
    }
    Ok(by_def)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ElementGenerators {
    pub gen: Vec<ElementSet>,
    pub gen_d: Vec<ElementSet>,
    pub gen_e: Vec<ElementSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCatalog {
    /// Indexed by element.
    pub elements: Vec<ElementGenerators>,
    /// `cl^b`-minimal spanning sets, indexed like the closed sets.
    pub spanning: Vec<Vec<ElementSet>>,
}

impl GeneratorCatalog {
    pub fn gen(&self, x: Element) -> &[ElementSet] {
        &self.elements[x].gen
    }

    pub fn gen_d(&self, x: Element) -> &[ElementSet] {
        &self.elements[x].gen_d
    }

    pub fn gen_e(&self, x: Element) -> &[ElementSet] {
        &self.elements[x].gen_e
    }
}

/// Per-element generator families; elements are processed in parallel.
pub fn catalog(space: &ClosureSpace) -> Result<GeneratorCatalog> {
    let elements = (0..space.n())
        .into_par_iter()
        .map(|x| element_generators(space, x))
        .collect::<Result<Vec<_>>>()?;
    let spanning = (0..space.len())
        .into_par_iter()
        .map(|i| clb_minimal_spanning_unchecked(space, space.closed_set(i)))
        .collect();
    Ok(GeneratorCatalog { elements, spanning })
}

/// All three generator families of one element.
pub fn element_generators(space: &ClosureSpace, x: Element) -> Result<ElementGenerators> {
    let gen = minimal_generators(space, x);
    let gen_d = d_generators_from(space, x, &gen);
    let gen_e = check_e_paths(space, x, e_generators_from(space, &gen_d))?;
    Ok(ElementGenerators { gen, gen_d, gen_e })
}

/// The E-generator families of every element, without the rest of the
/// catalog.
pub fn all_e_generators(space: &ClosureSpace) -> Result<Vec<Vec<ElementSet>>> {
    (0..space.n())
        .map(|x| element_generators(space, x).map(|g| g.gen_e))
        .collect()
}
