//! Validity of implicational bases, faulty sets of the E-base, and the
//! class-specific validity criteria.

use std::fmt;

use crate::analysis::{almost_primes, classify, ClassFlags};
use crate::bases::{
    canonical_base_from, e_base_from_generators, special_sets, validity_witness, EssentialSet,
    ImplicationalBase, SpecialSets,
};
use crate::error::{Error, Result};
use crate::generators::all_e_generators;
use crate::set::{is_antichain, Element, ElementSet};
use crate::space::ClosureSpace;

/// Outcome of a criterion that only speaks about one lattice class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriState {
    Holds,
    Fails,
    NotApplicable,
}

impl TriState {
    fn from_bool(b: bool) -> TriState {
        if b {
            TriState::Holds
        } else {
            TriState::Fails
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TriState::Holds => "holds",
            TriState::Fails => "fails",
            TriState::NotApplicable => "not-applicable",
        }
    }
}

impl fmt::Display for TriState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Validity {
    pub valid: bool,
    /// A set whose closure under the base differs from its closure in the
    /// space.
    pub witness: Option<ElementSet>,
}

/// Exhaustive comparison with the space is done up to this many elements.
pub const EXHAUSTIVE_LIMIT: usize = 12;

/// Whether `ib` describes `space`: every implication holds and every
/// pseudo-closed set is mapped to its closure. Cross-checked against all
/// subsets when the ground set is small.
pub fn is_valid_ib(space: &ClosureSpace, ib: &ImplicationalBase) -> Result<Validity> {
    let special = special_sets(space)?;
    is_valid_ib_with(space, ib, &special)
}

pub fn is_valid_ib_with(
    space: &ClosureSpace,
    ib: &ImplicationalBase,
    special: &SpecialSets,
) -> Result<Validity> {
    if ib.ground() != space.ground() {
        return Err(Error::GroundMismatch);
    }
    let witness = validity_witness(space, ib, &special.pseudo_closed);
    if space.n() <= EXHAUSTIVE_LIMIT {
        let exhaustive = space.full().subsets().all(|x| ib.closure(x) == space.cl(x));
        if exhaustive != witness.is_none() {
            return Err(Error::Invariant(format!(
                "pseudo-closed validity test ({}) disagrees with exhaustive test ({})",
                witness.is_none(),
                exhaustive
            )));
        }
    }
    Ok(Validity {
        valid: witness.is_none(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaultyPseudoClosed {
    pub pseudo_closed: ElementSet,
    pub closure: ElementSet,
    /// Closure under the E-base.
    pub reached: ElementSet,
    /// `closure \ reached`.
    pub gap: ElementSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Criteria {
    /// Semidistributive lattices have valid E-base.
    pub sd_predicts_valid: TriState,
    pub modular: TriState,
    pub geometric: TriState,
    /// Pairwise incomparable non-ji essential sets give a valid E-base.
    pub incomparable: TriState,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub verdict: bool,
    pub essential: Vec<EssentialSet>,
    pub faulty_essential: Vec<ElementSet>,
    pub faulty_pseudo_closed: Vec<FaultyPseudoClosed>,
    pub criteria: Criteria,
    pub flags: ClassFlags,
    pub e_base: ImplicationalBase,
    pub canonical: ImplicationalBase,
}

/// Full E-base report. Every criterion that applies is checked against the
/// verdict; a disagreement is reported as an invariant violation.
pub fn faulty_sets(space: &ClosureSpace) -> Result<ValidityReport> {
    let special = special_sets(space)?;
    let flags = classify(space)?;
    let gen_e = all_e_generators(space)?;
    let e_base = e_base_from_generators(space, &gen_e);
    let canonical = canonical_base_from(space, &special);

    let mut faulty_pseudo_closed = Vec::new();
    for &p in &special.pseudo_closed {
        let closure = space.cl(p);
        let reached = e_base.closure(p);
        if reached != closure {
            faulty_pseudo_closed.push(FaultyPseudoClosed {
                pseudo_closed: p,
                closure,
                reached,
                gap: closure.difference(reached),
            });
        }
    }
    let mut faulty_essential: Vec<ElementSet> =
        faulty_pseudo_closed.iter().map(|f| f.closure).collect();
    crate::set::canonicalize_family(&mut faulty_essential);
    let verdict = faulty_essential.is_empty();

    if let Some(e) = special
        .essential
        .iter()
        .find(|e| e.join_irreducible && faulty_essential.contains(&e.closed))
    {
        return Err(Error::Invariant(format!(
            "join-irreducible essential set {} is faulty",
            space.render(e.closed)
        )));
    }
    let checked = is_valid_ib_with(space, &e_base, &special)?;
    if checked.valid != verdict {
        return Err(Error::Invariant(
            "faulty-set verdict differs from validity test".into(),
        ));
    }

    let criteria = Criteria {
        sd_predicts_valid: if flags.semidistributive {
            TriState::Holds
        } else {
            TriState::NotApplicable
        },
        modular: modular_criterion_with(space, &flags, &special),
        geometric: geometric_criterion_with(&flags, &special),
        incomparable: if is_antichain(&special.non_ji_essential()) {
            TriState::Holds
        } else {
            TriState::NotApplicable
        },
    };
    let predictions = [
        (
            "semidistributive",
            criteria.sd_predicts_valid,
            TriState::Holds,
        ),
        (
            "incomparable-essential",
            criteria.incomparable,
            TriState::Holds,
        ),
        ("modular", criteria.modular, TriState::from_bool(verdict)),
        (
            "geometric",
            criteria.geometric,
            TriState::from_bool(verdict),
        ),
    ];
    for (name, got, expected) in predictions {
        if got == TriState::Holds && !verdict || got != TriState::NotApplicable && got != expected {
            return Err(Error::Invariant(format!(
                "{name} criterion {got} but the E-base is {}",
                if verdict { "valid" } else { "invalid" }
            )));
        }
    }

    Ok(ValidityReport {
        verdict,
        essential: special.essential,
        faulty_essential,
        faulty_pseudo_closed,
        criteria,
        flags,
        e_base,
        canonical,
    })
}

/// Inclusion-minimal faulty essential sets.
pub fn minimal_faulty(space: &ClosureSpace) -> Result<Vec<ElementSet>> {
    Ok(crate::set::minimal_members(
        &faulty_sets(space)?.faulty_essential,
    ))
}

/// On modular spaces: every predecessor `C'` of every non-ji essential `C`
/// satisfies `|C' \ C_*| = 1`.
pub fn modular_criterion(space: &ClosureSpace) -> Result<TriState> {
    Ok(modular_criterion_with(
        space,
        &classify(space)?,
        &special_sets(space)?,
    ))
}

fn modular_criterion_with(
    space: &ClosureSpace,
    flags: &ClassFlags,
    special: &SpecialSets,
) -> TriState {
    if !flags.modular {
        return TriState::NotApplicable;
    }
    TriState::from_bool(
        special
            .essential
            .iter()
            .filter(|e| !e.join_irreducible)
            .all(|e| {
                let ci = space.index_of(e.closed).unwrap();
                space
                    .predecessors(ci)
                    .iter()
                    .all(|&p| space.closed_set(p).difference(e.lower).len() == 1)
            }),
    )
}

/// On geometric spaces: the essential sets form an antichain.
pub fn geometric_criterion(space: &ClosureSpace) -> Result<TriState> {
    Ok(geometric_criterion_with(
        &classify(space)?,
        &special_sets(space)?,
    ))
}

fn geometric_criterion_with(flags: &ClassFlags, special: &SpecialSets) -> TriState {
    if !flags.geometric {
        return TriState::NotApplicable;
    }
    TriState::from_bool(is_antichain(&special.essential_sets()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidWitness {
    /// Almost prime elements of `↓U`.
    pub almost_primes: ElementSet,
    /// A base with as many almost prime elements as possible; absent when
    /// there are no almost prime elements.
    pub base: Option<ElementSet>,
    /// The spanning set that the E-base fails to close up to `U`.
    pub y: ElementSet,
    pub reached: ElementSet,
    pub missing: Element,
}

/// Invalidity witness for a geometric space whose ground set is essential
/// and whose other essential sets (there must be some) are pairwise
/// incomparable.
pub fn matroid_almost_prime_witness(space: &ClosureSpace) -> Result<MatroidWitness> {
    let flags = classify(space)?;
    if !flags.geometric {
        return Err(Error::Precondition("lattice is not geometric".into()));
    }
    let special = special_sets(space)?;
    let full = space.full();
    let others: Vec<ElementSet> = special
        .essential_sets()
        .into_iter()
        .filter(|&c| c != full)
        .collect();
    if others.len() == special.essential.len() {
        return Err(Error::Precondition(
            "the ground set is not essential".into(),
        ));
    }
    if others.is_empty() || !is_antichain(&others) {
        return Err(Error::Precondition(
            "the essential sets below the ground set must exist and be pairwise incomparable"
                .into(),
        ));
    }
    let gen_e = all_e_generators(space)?;
    let e_base = e_base_from_generators(space, &gen_e);
    let a = almost_primes(space, full)?;

    let (base, y) = if a.is_empty() {
        let y = special
            .essential
            .iter()
            .find(|e| e.closed == full)
            .and_then(|e| {
                e.pseudo_closed
                    .iter()
                    .copied()
                    .find(|&p| e_base.closure(p) != full)
            })
            .ok_or_else(|| {
                Error::Invariant("no faulty pseudo-closed set spans the ground set".into())
            })?;
        (None, y)
    } else {
        let bases = crate::matroid::bases(space);
        let rank = bases.first().map_or(0, |b| b.len());
        let best = *bases
            .iter()
            .max_by_key(|b| (b.intersection(a).len(), std::cmp::Reverse(**b)))
            .ok_or_else(|| Error::Invariant("matroid without bases".into()))?;
        if best.intersection(a).len() != rank.min(a.len()) {
            return Err(Error::Invariant(format!(
                "no base meets the almost prime elements {} in {} elements",
                space.render(a),
                rank.min(a.len())
            )));
        }
        let y = if a.is_subset(best) { best } else { a };
        (Some(best), y)
    };
    let reached = e_base.closure(y);
    let missing = full.difference(reached).min().ok_or_else(|| {
        Error::Invariant(format!(
            "E-base closes {} to the ground set",
            space.render(y)
        ))
    })?;
    if space.cl(y) != full {
        return Err(Error::Invariant(format!(
            "{} does not span the ground set",
            space.render(y)
        )));
    }
    Ok(MatroidWitness {
        almost_primes: a,
        base,
        y,
        reached,
        missing,
    })
}

/// `E(Q)` predicted for a quasi-closed `Q` spanning the non-ji essential
/// set `C` of a modular space: `Q` plus the elements `x` with
/// `C_i \ C_* = {x}` for a predecessor `C_i`.
pub fn modular_e_closure_prediction(
    space: &ClosureSpace,
    essential: &EssentialSet,
    q: ElementSet,
) -> ElementSet {
    let ci = space.index_of(essential.closed).unwrap();
    space.predecessors(ci).iter().fold(q, |acc, &p| {
        let diff = space.closed_set(p).difference(essential.lower);
        if diff.len() == 1 {
            acc.union(diff)
        } else {
            acc
        }
    })
}

/// `[C_*, C]` has height 2 and at least three atoms.
pub fn is_diamond_interval(space: &ClosureSpace, essential: &EssentialSet) -> bool {
    let ci = space.index_of(essential.closed).unwrap();
    let preds = space.predecessors(ci);
    preds.len() >= 3
        && preds.iter().all(|&p| {
            let pi = space.closed_set(p);
            space.index_of(pi).is_some_and(|k| {
                space
                    .predecessors(k)
                    .iter()
                    .any(|&q| space.closed_set(q) == essential.lower)
            })
        })
}
