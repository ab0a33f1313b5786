//! Lifting closed sets: every cover `C_i ≺ C_j` with `C_j` lifted is
//! subdivided by a new closed set `F_i ∪ {y_ij}`. Iterating on the minimal
//! faulty essential sets yields a space with valid E-base in which the
//! original lattice sits as a sublattice.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{almost_primes, irreducibles};
use crate::bases::special_sets;
use crate::error::{Error, Result};
use crate::generators::clb_minimal_spanning_sets;
use crate::set::{is_antichain, Element, ElementSet};
use crate::space::ClosureSpace;
use crate::validity::{faulty_sets, is_valid_ib, minimal_faulty};

/// Which of the three families a closed set of the target belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `C ∪ f(C)` for a lifted `C`.
    Lifted,
    /// `C ∪ f(C)` for a closed set that was not lifted.
    Unlifted,
    /// `F_i ∪ {y_ij}`.
    Inserted,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Lifted => "lifted",
            Family::Unlifted => "unlifted",
            Family::Inserted => "inserted",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewElement {
    /// Index of `C_i` in the source.
    pub lower: usize,
    /// Index of `C_j` in the source.
    pub upper: usize,
    pub element: Element,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftPlan {
    pub source: ClosureSpace,
    pub lifted: Vec<ElementSet>,
    pub new_elements: Vec<NewElement>,
    pub labels: Vec<String>,
}

impl LiftPlan {
    /// `round` is appended to the labels when present.
    pub fn new(
        source: &ClosureSpace,
        lifted: &[ElementSet],
        round: Option<usize>,
    ) -> Result<LiftPlan> {
        let mut lifted = lifted.to_vec();
        crate::set::canonicalize_family(&mut lifted);
        let mut pairs = Vec::new();
        for &c in &lifted {
            if c.is_empty() {
                return Err(Error::LiftEmptySet);
            }
            if !source.ground().contains_set(c) {
                return Err(Error::GroundMismatch);
            }
            let j = source
                .index_of(c)
                .ok_or_else(|| Error::NotClosed(source.render(c)))?;
            if source.closed_set(j) == source.cl(ElementSet::EMPTY) {
                return Err(Error::LiftEmptySet);
            }
            pairs.extend(source.predecessors(j).iter().map(|&i| (i, j)));
        }
        let labels: Vec<String> = pairs
            .iter()
            .map(|(i, j)| match round {
                Some(r) => format!("y_{i}_{j}_r{r}"),
                None => format!("y_{i}_{j}"),
            })
            .collect();
        let n = source.n();
        let new_elements = pairs
            .iter()
            .enumerate()
            .map(|(k, &(lower, upper))| NewElement {
                lower,
                upper,
                element: n + k,
            })
            .collect();
        // fail early on collisions
        source.ground().extended(labels.iter().cloned())?;
        Ok(LiftPlan {
            source: source.clone(),
            lifted,
            new_elements,
            labels,
        })
    }

    /// `f(Z)`: the new elements `y_ij` with `C_j ⊆ Z`.
    pub fn f(&self, z: ElementSet) -> ElementSet {
        self.new_elements
            .iter()
            .filter(|y| self.source.closed_set(y.upper).is_subset(z))
            .map(|y| y.element)
            .collect()
    }

    /// `C ↦ C ∪ f(C)`.
    pub fn embed(&self, c: ElementSet) -> ElementSet {
        c.union(self.f(c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    /// Closed sets lifted, in that round's source.
    pub lifted: Vec<ElementSet>,
    pub ground_before: usize,
    pub ground_after: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftOutcome {
    pub source: ClosureSpace,
    pub target: ClosureSpace,
    /// Indexed like the closed sets of the target.
    pub families: Vec<Family>,
    /// Image of each closed set of the source, indexed like the source.
    pub embedding: Vec<ElementSet>,
    pub rounds: Vec<Round>,
    /// The last round's plan, absent when nothing was lifted.
    pub plan: Option<LiftPlan>,
}

impl LiftOutcome {
    fn identity(space: &ClosureSpace) -> LiftOutcome {
        LiftOutcome {
            source: space.clone(),
            target: space.clone(),
            families: vec![Family::Unlifted; space.len()],
            embedding: space.closed_sets().to_vec(),
            rounds: Vec::new(),
            plan: None,
        }
    }

    pub fn embedding_map(&self) -> HashMap<ElementSet, ElementSet> {
        self.source
            .closed_sets()
            .iter()
            .copied()
            .zip(self.embedding.iter().copied())
            .collect()
    }
}

/// Subsets of a large source on which the closure formula is checked.
pub const PSI_SAMPLES: usize = 1000;

fn invariant(msg: String) -> Error {
    Error::Invariant(msg)
}

/// One lifting round of the closed sets in `lifted`.
pub fn lift(space: &ClosureSpace, lifted: &[ElementSet]) -> Result<LiftOutcome> {
    lift_round(space, lifted, None)
}

fn lift_round(
    space: &ClosureSpace,
    lifted: &[ElementSet],
    round: Option<usize>,
) -> Result<LiftOutcome> {
    let plan = LiftPlan::new(space, lifted, round)?;
    let ground = space.ground().extended(plan.labels.iter().cloned())?;
    let mut family = Vec::with_capacity(space.len() + plan.new_elements.len());
    let mut tags = HashMap::new();
    for &c in space.closed_sets() {
        let fc = plan.embed(c);
        family.push(fc);
        let tag = if plan.lifted.contains(&c) {
            Family::Lifted
        } else {
            Family::Unlifted
        };
        tags.insert(fc, tag);
    }
    for y in &plan.new_elements {
        let f = plan.embed(space.closed_set(y.lower)).with(y.element);
        family.push(f);
        tags.insert(f, Family::Inserted);
    }
    let target = ClosureSpace::from_closed_sets(ground, family).map_err(|e| {
        invariant(format!(
            "lifted family is not a standard closure system: {e}"
        ))
    })?;
    let families = target.closed_sets().iter().map(|c| tags[c]).collect();
    let embedding: Vec<ElementSet> = space.closed_sets().iter().map(|&c| plan.embed(c)).collect();
    let outcome = LiftOutcome {
        source: space.clone(),
        target,
        families,
        embedding,
        rounds: vec![Round {
            lifted: plan.lifted.clone(),
            ground_before: space.n(),
            ground_after: space.n() + plan.new_elements.len(),
        }],
        plan: Some(plan),
    };
    check_structure(&outcome)?;
    check_lifted_sets(&outcome)?;
    Ok(outcome)
}

/// Closure formula, covers of the three families and the sublattice
/// embedding.
fn check_structure(out: &LiftOutcome) -> Result<()> {
    let plan = out
        .plan
        .as_ref()
        .expect("checked outcomes come from a plan");
    let (src, tgt) = (&out.source, &out.target);
    let subsets: Vec<ElementSet> = if src.n() < 10 {
        src.full().subsets().collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(src.n() as u64);
        (0..PSI_SAMPLES)
            .map(|_| ElementSet::from_bits(rng.gen::<u64>()).intersection(src.full()))
            .collect()
    };
    for z in subsets {
        let c = src.cl(z);
        if tgt.cl(z) != c.union(plan.f(c)) {
            return Err(invariant(format!("ψ({}) is not cl ∪ f(cl)", src.render(z))));
        }
    }
    let f_index = |c: ElementSet| tgt.index_of(plan.embed(c)).unwrap();
    for y in &plan.new_elements {
        let fij = plan.embed(src.closed_set(y.lower)).with(y.element);
        if tgt.cl(ElementSet::singleton(y.element)) != fij {
            return Err(invariant(format!(
                "closure of {} is not F_ij",
                tgt.ground().name(y.element)
            )));
        }
        let k = tgt.index_of(fij).unwrap();
        if tgt.predecessors(k) != [f_index(src.closed_set(y.lower))]
            || tgt.successors(k) != [f_index(src.closed_set(y.upper))]
        {
            return Err(invariant(format!(
                "{} does not subdivide a cover",
                tgt.render(fij)
            )));
        }
    }
    for (j, &c) in src.closed_sets().iter().enumerate() {
        let k = f_index(c);
        let mut expected: Vec<usize> = if plan.lifted.contains(&c) {
            plan.new_elements
                .iter()
                .filter(|y| y.upper == j)
                .map(|y| {
                    tgt.index_of(plan.embed(src.closed_set(y.lower)).with(y.element))
                        .unwrap()
                })
                .collect()
        } else {
            src.predecessors(j)
                .iter()
                .map(|&i| f_index(src.closed_set(i)))
                .collect()
        };
        expected.sort_unstable();
        if tgt.predecessors(k) != expected.as_slice() {
            return Err(invariant(format!(
                "predecessors of {} are not as constructed",
                tgt.render(plan.embed(c))
            )));
        }
    }
    if !verify_embedding(src, tgt, &out.embedding_map())? {
        return Err(invariant("C ↦ C ∪ f(C) is not a lattice embedding".into()));
    }
    Ok(())
}

/// New elements are almost prime below non-ji lifted sets and avoid their
/// minimal spanning sets; lifted sets are essential and not faulty; a new
/// faulty set strictly contains a lifted set.
fn check_lifted_sets(out: &LiftOutcome) -> Result<()> {
    let plan = out
        .plan
        .as_ref()
        .expect("checked outcomes come from a plan");
    let tgt = &out.target;
    let irr = irreducibles(tgt);
    let special = special_sets(tgt)?;
    let essential = special.essential_sets();
    let report = faulty_sets(tgt)?;
    let lifted: Vec<ElementSet> = plan.lifted.iter().map(|&c| plan.embed(c)).collect();
    for &fj in &lifted {
        let k = tgt.index_of(fj).unwrap();
        if !essential.contains(&fj) || report.faulty_essential.contains(&fj) {
            return Err(invariant(format!(
                "lifted set {} is not essential and sound",
                tgt.render(fj)
            )));
        }
        if irr.join_irreducibles.iter().any(|j| j.closed == k) {
            continue;
        }
        let ap = almost_primes(tgt, fj)?;
        let spanning = clb_minimal_spanning_sets(tgt, fj)?;
        for y in plan
            .new_elements
            .iter()
            .filter(|y| plan.embed(out.source.closed_set(y.upper)) == fj)
        {
            if !ap.contains(y.element) || spanning.iter().any(|a| a.contains(y.element)) {
                return Err(invariant(format!(
                    "{} is not almost prime in {} or spans it",
                    tgt.ground().name(y.element),
                    tgt.render(fj)
                )));
            }
        }
    }
    // a faulty set above no lifted set has the same ideal as in the source
    let before = faulty_sets(&out.source)?.faulty_essential;
    for (k, &c) in tgt.closed_sets().iter().enumerate() {
        if !report.faulty_essential.contains(&c) {
            continue;
        }
        let above_lift = lifted.iter().any(|l| l.is_proper_subset(c));
        if out.families[k] != Family::Unlifted || !above_lift && !before.contains(&c) {
            return Err(invariant(format!(
                "faulty set {} does not strictly contain a lifted set",
                tgt.render(c)
            )));
        }
    }
    Ok(())
}

/// Lifts every non-empty closed set at once. The result has valid E-base.
pub fn lift_all(space: &ClosureSpace) -> Result<LiftOutcome> {
    let all: Vec<ElementSet> = space
        .closed_sets()
        .iter()
        .copied()
        .filter(|c| !c.is_empty())
        .collect();
    let out = lift(space, &all)?;
    if !is_valid_ib(&out.target, &faulty_sets(&out.target)?.e_base)?.valid {
        return Err(invariant(
            "lifting every closed set left an invalid E-base".into(),
        ));
    }
    Ok(out)
}

/// Repeatedly lifts the inclusion-minimal faulty essential sets. Fails if
/// more rounds than the height of the source lattice are needed.
pub fn lift_until_valid(space: &ClosureSpace) -> Result<LiftOutcome> {
    let bound = space.height();
    let mut current = LiftOutcome::identity(space);
    let mut previous: Vec<ElementSet> = Vec::new();
    loop {
        let faulty = minimal_faulty(&current.target)?;
        if faulty.is_empty() {
            break;
        }
        if current.rounds.len() == bound {
            return Err(invariant(format!(
                "E-base still invalid after {bound} lifting rounds"
            )));
        }
        if !is_antichain(&faulty) {
            return Err(invariant("minimal faulty sets are comparable".into()));
        }
        if let Some(c) = faulty
            .iter()
            .find(|c| !previous.is_empty() && !previous.iter().any(|p| p.is_proper_subset(**c)))
        {
            return Err(invariant(format!(
                "{} is faulty but above no previously lifted set",
                current.target.render(*c)
            )));
        }
        let round = current.rounds.len() + 1;
        let step = lift_round(&current.target, &faulty, Some(round))?;
        let plan = step.plan.expect("lift_round records its plan");
        previous = faulty.iter().map(|&c| plan.embed(c)).collect();
        current = LiftOutcome {
            source: current.source,
            target: step.target,
            families: step.families,
            embedding: current.embedding.iter().map(|&c| plan.embed(c)).collect(),
            rounds: current.rounds.into_iter().chain(step.rounds).collect(),
            plan: Some(plan),
        };
    }
    if !verify_embedding(&current.source, &current.target, &current.embedding_map())? {
        return Err(invariant("composed map is not a lattice embedding".into()));
    }
    Ok(current)
}

/// Whether `map` is an injective lattice homomorphism of closed sets that
/// reflects the order.
pub fn verify_embedding(
    source: &ClosureSpace,
    target: &ClosureSpace,
    map: &HashMap<ElementSet, ElementSet>,
) -> Result<bool> {
    let mut image = Vec::with_capacity(source.len());
    for &c in source.closed_sets() {
        let m = *map
            .get(&c)
            .ok_or_else(|| Error::MapNotTotal(source.render(c)))?;
        if !target.ground().contains_set(m) || !target.is_closed(m) {
            return Ok(false);
        }
        image.push(m);
    }
    let mut seen = image.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != image.len() {
        return Ok(false);
    }
    let cs = source.closed_sets();
    for i in 0..cs.len() {
        for j in 0..cs.len() {
            if cs[i].is_subset(cs[j]) != image[i].is_subset(image[j]) {
                return Ok(false);
            }
            let meet = map[&cs[i].intersection(cs[j])];
            let join = map[&source.cl(cs[i].union(cs[j]))];
            if meet != image[i].intersection(image[j])
                || join != target.cl(image[i].union(image[j]))
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
