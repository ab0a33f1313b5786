//! Enumeration of small standard closure spaces and the property sweep run
//! over them.
//!
//! A standard space is a Moore family inside the down-sets of the poset
//! `x ≤ y iff x ∈ cl(y)` that contains every `↓x` and `↓x \ {x}`. Posets are
//! taken up to isomorphism, and families inside a poset up to its
//! automorphisms. Random samples may repeat spaces.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::ClassFlags;
use crate::bases::aggregate;
use crate::error::{Error, Result};
use crate::matroid::{space_from_circuits, CircuitSystem};
use crate::set::{canonicalize_family, is_antichain, ElementSet, GroundSet};
use crate::space::ClosureSpace;
use crate::validity::{faulty_sets, TriState};

/// A poset on `0..n` given by the principal ideals `↓x`.
pub type Poset = Vec<ElementSet>;

fn permute(set: ElementSet, perm: &[usize]) -> ElementSet {
    set.iter().map(|x| perm[x]).collect()
}

fn canonical_poset(ideals: &[ElementSet], perms: &[Vec<usize>]) -> Vec<u64> {
    perms
        .iter()
        .map(|p| {
            let mut img = vec![0u64; ideals.len()];
            for (x, &i) in ideals.iter().enumerate() {
                img[p[x]] = permute(i, p).bits();
            }
            img
        })
        .min()
        .unwrap()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Posets on `n` elements up to isomorphism, naturally labelled (`x < y`
/// implies `x` precedes `y`).
pub fn posets_up_to_iso(n: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = std::collections::BTreeMap::new();
    for mask in 0u64..(1 << pairs.len()) {
        let mut ideals: Poset = (0..n).map(ElementSet::singleton).collect();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                ideals[j].insert(i);
            }
        }
        // transitive: ↓y ⊆ ↓x whenever y ∈ ↓x
        let transitive = (0..n).all(|x| ideals[x].iter().all(|y| ideals[y].is_subset(ideals[x])));
        if transitive {
            seen.entry(canonical_poset(&ideals, &perms))
                .or_insert(ideals);
        }
    }
    seen.into_values().collect()
}

/// Down-sets of a poset, canonical order.
pub fn down_sets(poset: &Poset) -> Vec<ElementSet> {
    let full = ElementSet::full(poset.len());
    let mut out: Vec<ElementSet> = full
        .subsets()
        .filter(|d| d.iter().all(|x| poset[x].is_subset(*d)))
        .collect();
    canonicalize_family(&mut out);
    out
}

/// The sets every standard family on `poset` must contain.
pub fn required_sets(poset: &Poset) -> Vec<ElementSet> {
    let n = poset.len();
    let mut req = vec![ElementSet::EMPTY, ElementSet::full(n)];
    for (x, &i) in poset.iter().enumerate() {
        req.push(i);
        req.push(i.without(x));
    }
    close_under_intersection(&mut req);
    req
}

fn close_under_intersection(family: &mut Vec<ElementSet>) {
    loop {
        canonicalize_family(family);
        let len = family.len();
        let mut extra = Vec::new();
        for (i, &a) in family.iter().enumerate() {
            for &b in &family[i + 1..] {
                let c = a.intersection(b);
                if family.binary_search(&c).is_err() {
                    extra.push(c);
                }
            }
        }
        family.extend(extra);
        canonicalize_family(family);
        if family.len() == len {
            return;
        }
    }
}

/// Calls `visit` on every standard closed-set family on `poset`. Sets are
/// decided from largest to smallest, so whether a set is forced by an
/// intersection is already known when it is reached.
pub fn for_each_standard_family<F: FnMut(&[ElementSet])>(poset: &Poset, visit: &mut F) {
    let required = required_sets(poset);
    let mut candidates = down_sets(poset);
    candidates.reverse();
    let mut family = Vec::new();
    let mut forced = std::collections::HashSet::new();
    forced.extend(required.iter().copied());
    decide(&candidates, 0, &mut family, &mut forced, visit);
}

fn decide<F: FnMut(&[ElementSet])>(
    candidates: &[ElementSet],
    k: usize,
    family: &mut Vec<ElementSet>,
    forced: &mut std::collections::HashSet<ElementSet>,
    visit: &mut F,
) {
    if k == candidates.len() {
        visit(family);
        return;
    }
    let x = candidates[k];
    if !forced.contains(&x) {
        decide(candidates, k + 1, family, forced, visit);
    }
    let added: Vec<ElementSet> = family
        .iter()
        .map(|y| y.intersection(x))
        .filter(|c| forced.insert(*c))
        .collect();
    family.push(x);
    decide(candidates, k + 1, family, forced, visit);
    family.pop();
    for c in added {
        forced.remove(&c);
    }
}

/// Permutations mapping the poset onto itself.
pub fn automorphisms(poset: &Poset) -> Vec<Vec<usize>> {
    permutations(poset.len())
        .into_iter()
        .filter(|p| (0..poset.len()).all(|x| permute(poset[x], p) == poset[p[x]]))
        .collect()
}

fn family_key(fam: &[ElementSet], perm: &[usize]) -> Vec<u64> {
    let mut key: Vec<u64> = fam.iter().map(|&c| permute(c, perm).bits()).collect();
    key.sort_unstable();
    key
}

/// Like [`for_each_standard_family`], keeping one family per orbit of the
/// automorphism group of the poset.
pub fn for_each_standard_family_up_to_iso<F: FnMut(&[ElementSet])>(poset: &Poset, visit: &mut F) {
    let auts = automorphisms(poset);
    let identity: Vec<usize> = (0..poset.len()).collect();
    for_each_standard_family(poset, &mut |fam| {
        let key = family_key(fam, &identity);
        if auts.iter().all(|p| family_key(fam, p) >= key) {
            visit(fam);
        }
    });
}

/// Every standard space on `n` elements up to isomorphism.
pub fn standard_spaces(n: usize) -> Result<Vec<ClosureSpace>> {
    let ground = GroundSet::letters(n)?;
    let mut out = Vec::new();
    for poset in posets_up_to_iso(n) {
        let mut err = None;
        for_each_standard_family_up_to_iso(&poset, &mut |fam| {
            if err.is_none() {
                match ClosureSpace::from_closed_sets(ground.clone(), fam.iter().copied()) {
                    Ok(s) => out.push(s),
                    Err(e) => err = Some(e),
                }
            }
        });
        if let Some(e) = err {
            return Err(Error::Invariant(format!(
                "census produced an invalid family: {e}"
            )));
        }
    }
    Ok(out)
}

/// Number of standard spaces on `n` elements up to isomorphism, without
/// building them.
pub fn count_standard_spaces(n: usize) -> usize {
    posets_up_to_iso(n)
        .par_iter()
        .map(|p| {
            let mut c = 0;
            for_each_standard_family_up_to_iso(p, &mut |_| c += 1);
            c
        })
        .sum()
}

/// Random standard spaces on `n` elements: a random poset, then the
/// intersection closure of the required sets and a random selection of
/// down-sets.
pub fn sample_standard_spaces(n: usize, count: usize, seed: u64) -> Result<Vec<ClosureSpace>> {
    let ground = GroundSet::letters(n)?;
    let posets = posets_up_to_iso(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let poset = posets.choose(&mut rng).unwrap();
        let mut fam = required_sets(poset);
        let density: f64 = rng.gen_range(0.05..0.6);
        fam.extend(
            down_sets(poset)
                .into_iter()
                .filter(|_| rng.gen_bool(density)),
        );
        close_under_intersection(&mut fam);
        out.push(
            ClosureSpace::from_closed_sets(ground.clone(), fam)
                .map_err(|e| Error::Invariant(format!("sampled family is not standard: {e}")))?,
        );
    }
    Ok(out)
}

/// Families of lines (sets of at least three points meeting pairwise in at
/// most one point) on `n` points.
pub fn linear_spaces(n: usize) -> Vec<Vec<ElementSet>> {
    let full = ElementSet::full(n);
    let lines: Vec<ElementSet> = full.subsets().filter(|s| s.len() >= 3).collect();
    let mut out = Vec::new();
    fn rec(
        lines: &[ElementSet],
        k: usize,
        cur: &mut Vec<ElementSet>,
        out: &mut Vec<Vec<ElementSet>>,
    ) {
        if k == lines.len() {
            out.push(cur.clone());
            return;
        }
        rec(lines, k + 1, cur, out);
        let l = lines[k];
        if cur.iter().all(|m| m.intersection(l).len() <= 1) {
            cur.push(l);
            rec(lines, k + 1, cur, out);
            cur.pop();
        }
    }
    rec(&lines, 0, &mut Vec::new(), &mut out);
    out
}

/// Circuits of the simple matroid of rank at most 3 whose non-trivial lines
/// are `lines`: collinear triples, and quadruples with no three collinear.
/// A single line through every point gives rank 2.
pub fn rank3_circuits(n: usize, lines: &[ElementSet]) -> Vec<ElementSet> {
    let full = ElementSet::full(n);
    let collinear = |s: ElementSet| lines.iter().any(|l| s.is_subset(*l));
    let rank2 = lines.len() == 1 && lines[0] == full;
    full.subsets()
        .filter(|s| match s.len() {
            3 => collinear(*s),
            4 => !rank2 && s.iter().all(|x| !collinear(s.without(x))),
            _ => false,
        })
        .collect()
}

/// Geometric spaces of rank at most 3 on `n` points, one per line family.
pub fn geometric_spaces(n: usize) -> Result<Vec<ClosureSpace>> {
    let ground = GroundSet::letters(n)?;
    linear_spaces(n)
        .par_iter()
        .map(|lines| {
            space_from_circuits(&CircuitSystem::new(
                ground.clone(),
                rank3_circuits(n, lines),
            )?)
        })
        .collect()
}

/// Per-space outcome of the sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceCheck {
    pub flags: ClassFlags,
    pub valid: bool,
    pub e_size: usize,
    pub dg_size: usize,
    pub modular: TriState,
    pub geometric: TriState,
    pub essential_antichain: bool,
    pub e_equals_dg: bool,
}

/// Validity report plus the quantities compared by the census. E-generators
/// are computed along both routes inside the report.
pub fn check_space(space: &ClosureSpace) -> Result<SpaceCheck> {
    let report = faulty_sets(space)?;
    let e = aggregate(&report.e_base);
    let essential: Vec<ElementSet> = report.essential.iter().map(|e| e.closed).collect();
    Ok(SpaceCheck {
        flags: report.flags,
        valid: report.verdict,
        e_size: e.len(),
        dg_size: report.canonical.len(),
        modular: report.criteria.modular,
        geometric: report.criteria.geometric,
        essential_antichain: is_antichain(&essential),
        e_equals_dg: e == report.canonical,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusSummary {
    pub spaces: usize,
    pub semidistributive: usize,
    pub modular: usize,
    pub geometric: usize,
    pub valid: usize,
    /// Spaces contradicting a class theorem, as closed-set listings.
    pub counterexamples: Vec<String>,
}

impl CensusSummary {
    fn merge(mut self, other: CensusSummary) -> CensusSummary {
        self.spaces += other.spaces;
        self.semidistributive += other.semidistributive;
        self.modular += other.modular;
        self.geometric += other.geometric;
        self.valid += other.valid;
        self.counterexamples.extend(other.counterexamples);
        self
    }
}

fn describe(space: &ClosureSpace, what: &str) -> String {
    let sets: Vec<String> = space
        .closed_sets()
        .iter()
        .map(|&c| space.render(c))
        .collect();
    format!("{what}: {{{}}}", sets.join(", "))
}

/// Checks the semidistributive, modular and geometric theorems on one
/// space. Invariant violations inside the library count as
/// counterexamples too.
pub fn sweep_one(space: &ClosureSpace) -> CensusSummary {
    let mut s = CensusSummary {
        spaces: 1,
        ..Default::default()
    };
    let c = match check_space(space) {
        Ok(c) => c,
        Err(e) => {
            s.counterexamples.push(describe(space, &e.to_string()));
            return s;
        }
    };
    s.valid += c.valid as usize;
    if c.flags.semidistributive {
        s.semidistributive += 1;
        if !c.valid || c.e_size != c.dg_size {
            s.counterexamples.push(describe(space, "semidistributive"));
        }
    }
    if c.flags.modular {
        s.modular += 1;
        if (c.modular == TriState::Holds) != c.valid {
            s.counterexamples.push(describe(space, "modular"));
        }
    }
    if c.flags.geometric {
        s.geometric += 1;
        let atomistic_ok = !c.valid || c.e_equals_dg;
        if c.essential_antichain != c.valid || !atomistic_ok {
            s.counterexamples.push(describe(space, "geometric"));
        }
    }
    s
}

/// Parallel sweep; only spaces whose flag `class` is set are checked when a
/// class is given.
pub fn sweep(spaces: &[ClosureSpace], class: Option<&str>) -> Result<CensusSummary> {
    if let Some(name) = class {
        if ClassFlags::default().get(name).is_none() {
            return Err(Error::Precondition(format!(
                "unknown lattice class `{name}`"
            )));
        }
    }
    Ok(spaces
        .par_iter()
        .filter(|s| match class {
            None => true,
            Some(name) => crate::analysis::classify(s)
                .ok()
                .and_then(|f| f.get(name))
                .unwrap_or(true),
        })
        .map(sweep_one)
        .reduce(CensusSummary::default, CensusSummary::merge))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| posets_up_to_iso(n).len()).collect();
        assert_eq!(counts, [1, 2, 5, 16, 63]);
    }

    #[test]
    fn families_are_standard_and_distinct() {
        for poset in posets_up_to_iso(3) {
            let mut fams = Vec::new();
            for_each_standard_family(&poset, &mut |f| {
                let mut f = f.to_vec();
                canonicalize_family(&mut f);
                fams.push(f);
            });
            let before = fams.len();
            fams.sort();
            fams.dedup();
            assert_eq!(fams.len(), before);
            let g = GroundSet::letters(3).unwrap();
            for f in fams {
                ClosureSpace::from_closed_sets(g.clone(), f).unwrap();
            }
        }
    }

    #[test]
    fn brute_force_family_count() {
        // standard Moore families on 3 labelled elements, counted directly
        let n = 3;
        let g = GroundSet::letters(n).unwrap();
        let all: Vec<ElementSet> = ElementSet::full(n).subsets().collect();
        let mut labelled = 0;
        for mask in 0u32..(1 << all.len()) {
            let fam: Vec<ElementSet> = (0..all.len())
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| all[k])
                .collect();
            if ClosureSpace::from_closed_sets(g.clone(), fam).is_ok() {
                labelled += 1;
            }
        }
        // each poset class contributes its families once per labelling
        let perms = permutations(n);
        let mut via_posets = 0;
        for p in posets_up_to_iso(n) {
            let labellings: std::collections::HashSet<Vec<u64>> = perms
                .iter()
                .map(|q| {
                    let mut img = vec![0u64; n];
                    for (x, &i) in p.iter().enumerate() {
                        img[q[x]] = permute(i, q).bits();
                    }
                    img
                })
                .collect();
            let mut c = 0;
            for_each_standard_family(&p, &mut |_| c += 1);
            via_posets += c * labellings.len();
        }
        assert_eq!(via_posets, labelled);
    }

    #[test]
    fn iso_classes_match_brute_force() {
        for n in 3..=4 {
            let g = GroundSet::letters(n).unwrap();
            let all: Vec<ElementSet> = ElementSet::full(n).subsets().collect();
            let perms = permutations(n);
            let mut classes = std::collections::HashSet::new();
            for mask in 0u32..(1 << all.len()) {
                let fam: Vec<ElementSet> = (0..all.len())
                    .filter(|k| mask >> k & 1 == 1)
                    .map(|k| all[k])
                    .collect();
                if ClosureSpace::from_closed_sets(g.clone(), fam.clone()).is_ok() {
                    classes.insert(perms.iter().map(|p| family_key(&fam, p)).min().unwrap());
                }
            }
            assert_eq!(count_standard_spaces(n), classes.len(), "n = {n}");
        }
    }

    #[test]
    fn fano_plane_is_a_linear_space() {
        let g = GroundSet::letters(7).unwrap();
        let fano: Vec<ElementSet> = ["abc", "ade", "afg", "bdf", "beg", "cdg", "cef"]
            .iter()
            .map(|s| g.parse_set(s).unwrap())
            .collect();
        let circuits = rank3_circuits(7, &fano);
        let space = space_from_circuits(&CircuitSystem::new(g, circuits).unwrap()).unwrap();
        assert_eq!(space.len(), 1 + 7 + 7 + 1);
    }
}
