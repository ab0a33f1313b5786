//! Matroids given by circuits and the geometric closure spaces they induce.

use crate::analysis::classify;
use crate::bases::{aggregate, special_sets};
use crate::error::{Error, Result};
use crate::generators::minimal_generators;
use crate::set::{
    canonicalize_family, is_antichain, minimal_members, Element, ElementSet, GroundSet,
};
use crate::space::ClosureSpace;
use crate::validity::faulty_sets;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitSystem {
    ground: GroundSet,
    circuits: Vec<ElementSet>,
}

impl CircuitSystem {
    /// Checks that the circuits are non-empty, pairwise incomparable and
    /// satisfy weak elimination.
    pub fn new(ground: GroundSet, circuits: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        let mut circuits: Vec<ElementSet> = circuits.into_iter().collect();
        canonicalize_family(&mut circuits);
        for &c in &circuits {
            if !ground.contains_set(c) {
                return Err(Error::GroundMismatch);
            }
            if c.is_empty() {
                return Err(Error::CircuitAxiom("empty circuit".into()));
            }
        }
        for (i, &c1) in circuits.iter().enumerate() {
            for &c2 in &circuits[i + 1..] {
                if c1.is_subset(c2) || c2.is_subset(c1) {
                    return Err(Error::CircuitAxiom(format!(
                        "circuits {} and {} are comparable",
                        ground.render(c1),
                        ground.render(c2)
                    )));
                }
                for x in c1.intersection(c2).iter() {
                    let rest = c1.union(c2).without(x);
                    if !circuits.iter().any(|k| k.is_subset(rest)) {
                        return Err(Error::CircuitAxiom(format!(
                            "elimination of {} from {} and {} leaves no circuit",
                            ground.name(x),
                            ground.render(c1),
                            ground.render(c2)
                        )));
                    }
                }
            }
        }
        Ok(CircuitSystem { ground, circuits })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Canonical order.
    pub fn circuits(&self) -> &[ElementSet] {
        &self.circuits
    }

    /// Least superset of `x` closed under `K \ {e} ⊆ X ⇒ e ∈ X`.
    pub fn closure(&self, x: ElementSet) -> ElementSet {
        let mut cur = x;
        loop {
            let next = self.circuits.iter().fold(cur, |acc, &k| {
                let missing = k.difference(cur);
                if missing.len() == 1 {
                    acc.union(missing)
                } else {
                    acc
                }
            });
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }
}

/// Closure space of the matroid. Fails when the lattice of flats is not
/// geometric, e.g. with loops or parallel elements.
pub fn space_from_circuits(cs: &CircuitSystem) -> Result<ClosureSpace> {
    let space =
        ClosureSpace::from_closure_operator(cs.ground.clone(), |x| cs.closure(x)).map_err(|e| {
            match e {
                Error::NotStandard { .. } => Error::NotGeometric,
                other => other,
            }
        })?;
    if space.cl(ElementSet::EMPTY) != ElementSet::EMPTY || !classify(&space)?.geometric {
        return Err(Error::NotGeometric);
    }
    Ok(space)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidView {
    /// Canonical order.
    pub bases: Vec<ElementSet>,
    pub rank: usize,
    /// Canonical order.
    pub circuits: Vec<ElementSet>,
    pub space: ClosureSpace,
}

/// Bases of the matroid of a geometric space: independent sets spanning
/// the ground set.
pub fn bases(space: &ClosureSpace) -> Vec<ElementSet> {
    fn extend(space: &ClosureSpace, start: Element, a: ElementSet, out: &mut Vec<ElementSet>) {
        let ca = space.cl(a);
        if ca == space.full() {
            out.push(a);
            return;
        }
        for y in start..space.n() {
            if !ca.contains(y) {
                extend(space, y + 1, a.with(y), out);
            }
        }
    }
    let mut out = Vec::new();
    extend(space, 0, ElementSet::EMPTY, &mut out);
    canonicalize_family(&mut out);
    out
}

/// Circuits `A ∪ {x}` for `A ∈ gen(x)`.
pub fn circuits(space: &ClosureSpace) -> Vec<ElementSet> {
    let all: Vec<ElementSet> = (0..space.n())
        .flat_map(|x| {
            minimal_generators(space, x)
                .into_iter()
                .map(move |a| a.with(x))
        })
        .collect();
    let mut out = minimal_members(&all);
    canonicalize_family(&mut out);
    out
}

pub fn matroid_view(space: &ClosureSpace) -> Result<MatroidView> {
    if !classify(space)?.geometric {
        return Err(Error::NotGeometric);
    }
    let bases = bases(space);
    let rank = bases.first().map_or(0, |b| b.len());
    if bases.iter().any(|b| b.len() != rank) {
        return Err(Error::Invariant("bases of different sizes".into()));
    }
    for &b1 in &bases {
        for &b2 in &bases {
            for x in b1.difference(b2).iter() {
                let ok = b2.difference(b1).iter().any(|y| {
                    bases
                        .binary_search_by(|b| b.cmp(&b1.without(x).with(y)))
                        .is_ok()
                });
                if !ok {
                    return Err(Error::Invariant(format!(
                        "base exchange fails for {} and {}",
                        space.render(b1),
                        space.render(b2)
                    )));
                }
            }
        }
    }
    Ok(MatroidView {
        bases,
        rank,
        circuits: circuits(space),
        space: space.clone(),
    })
}

/// Consequences of a circuit system declared binary.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinaryCheck {
    pub essential_incomparable: bool,
    /// Essential sets are exactly the circuits that are closed.
    pub essential_are_closed_circuits: bool,
    /// Aggregated E-base equals the canonical base.
    pub e_equals_canonical: bool,
}

impl BinaryCheck {
    pub fn holds(&self) -> bool {
        self.essential_incomparable && self.essential_are_closed_circuits && self.e_equals_canonical
    }
}

pub fn binary_matroid_check(cs: &CircuitSystem) -> Result<BinaryCheck> {
    let space = space_from_circuits(cs)?;
    let essential = special_sets(&space)?.essential_sets();
    let mut closed_circuits: Vec<ElementSet> = cs
        .circuits
        .iter()
        .copied()
        .filter(|&k| space.is_closed(k))
        .collect();
    canonicalize_family(&mut closed_circuits);
    let report = faulty_sets(&space)?;
    Ok(BinaryCheck {
        essential_incomparable: is_antichain(&essential),
        essential_are_closed_circuits: essential == closed_circuits,
        e_equals_canonical: aggregate(&report.e_base) == report.canonical,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(n: usize, circuits: &[&str]) -> Result<CircuitSystem> {
        let g = GroundSet::letters(n).unwrap();
        let cs: Vec<ElementSet> = circuits.iter().map(|s| g.parse_set(s).unwrap()).collect();
        CircuitSystem::new(g, cs)
    }

    #[test]
    fn triangle_is_m3() {
        let cs = system(3, &["abc"]).unwrap();
        let space = space_from_circuits(&cs).unwrap();
        assert_eq!(space.len(), 5);
        let view = matroid_view(&space).unwrap();
        assert_eq!(view.rank, 2);
        assert_eq!(view.bases.len(), 3);
        assert_eq!(view.circuits, cs.circuits());
        assert!(binary_matroid_check(&cs).unwrap().holds());
    }

    #[test]
    fn no_circuits_is_free() {
        let cs = system(3, &[]).unwrap();
        assert_eq!(
            space_from_circuits(&cs).unwrap(),
            ClosureSpace::powerset(3).unwrap()
        );
    }

    #[test]
    fn axioms_are_checked() {
        assert!(matches!(
            system(3, &["ab", "abc"]),
            Err(Error::CircuitAxiom(_))
        ));
        assert!(matches!(
            system(4, &["abc", "abd"]),
            Err(Error::CircuitAxiom(_))
        ));
        assert!(system(4, &["abc", "abd", "acd", "bcd"]).is_ok());
    }

    #[test]
    fn parallel_elements_are_not_geometric() {
        let cs = system(3, &["ab"]).unwrap();
        assert_eq!(space_from_circuits(&cs), Err(Error::NotGeometric));
    }
}
