use ebase_core::analysis::classify;
use ebase_core::bases::{e_base, is_quasi_closed, special_sets};
use ebase_core::census::standard_spaces;
use ebase_core::fixtures::{by_name, NAMES};
use ebase_core::validity::{
    faulty_sets, geometric_criterion, is_diamond_interval, is_valid_ib,
    matroid_almost_prime_witness, minimal_faulty, modular_criterion, modular_e_closure_prediction,
    TriState,
};
use ebase_core::{ClosureSpace, Error};

fn space(name: &str) -> ClosureSpace {
    by_name(name).unwrap().unwrap()
}

#[test]
fn matroid_witness_with_almost_primes() {
    let s = space("geof5");
    let w = matroid_almost_prime_witness(&s).unwrap();
    assert_eq!(s.render(w.almost_primes), "de");
    let base = w.base.unwrap();
    assert_eq!(base.intersection(w.almost_primes).len(), 2);
    assert_eq!(w.y, base);
    assert_eq!(s.cl(w.y), s.full());
    assert!(!w.reached.contains(w.missing));
    assert_eq!(e_base(&s).unwrap().closure(w.y), w.reached);
}

#[test]
fn matroid_witness_without_almost_primes() {
    let s = space("geof6");
    let w = matroid_almost_prime_witness(&s).unwrap();
    assert!(w.almost_primes.is_empty());
    assert!(w.base.is_none());
    assert_ne!(w.reached, s.full());
    assert!(special_sets(&s).unwrap().pseudo_closed.contains(&w.y));
}

#[test]
fn matroid_witness_preconditions() {
    assert!(matches!(
        matroid_almost_prime_witness(&space("m3")),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        matroid_almost_prime_witness(&space("leaf")),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn modular_fixtures() {
    for name in ["modp", "modf", "m3"] {
        let s = space(name);
        assert!(classify(&s).unwrap().modular, "{name}");
        let valid = faulty_sets(&s).unwrap().verdict;
        assert_eq!(
            modular_criterion(&s).unwrap(),
            if valid {
                TriState::Holds
            } else {
                TriState::Fails
            },
            "{name}"
        );
    }
    assert_eq!(
        modular_criterion(&space("leaf")).unwrap(),
        TriState::NotApplicable
    );
    assert_eq!(
        geometric_criterion(&space("geof5")).unwrap(),
        TriState::Fails
    );
    assert_eq!(geometric_criterion(&space("m3")).unwrap(), TriState::Holds);
}

// E-closure of quasi-closed spanning sets and the diamond shape of
// [C_*, C], on the modular fixtures and every modular space with at most 4
// elements.
#[test]
fn modular_e_closure_and_diamonds() {
    let mut checked = 0;
    let spaces = (1..=4)
        .flat_map(|n| standard_spaces(n).unwrap())
        .chain(["modp", "modf", "m3"].map(space));
    for s in spaces {
        if !classify(&s).unwrap().modular {
            continue;
        }
        let e = e_base(&s).unwrap();
        for ess in special_sets(&s)
            .unwrap()
            .essential
            .iter()
            .filter(|e| !e.join_irreducible)
        {
            assert!(is_diamond_interval(&s, ess), "{}", s.render(ess.closed));
            for q in ess.closed.subsets() {
                if s.cl(q) == ess.closed && is_quasi_closed(&s, q) {
                    assert_eq!(
                        e.closure(q),
                        modular_e_closure_prediction(&s, ess, q),
                        "{}",
                        s.render(q)
                    );
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn minimal_faulty_sets_of_the_fixtures() {
    let expected = [("leaf", vec!["abcd"]), ("carpet", vec![]), ("usm", vec![])];
    for (name, sets) in expected {
        let s = space(name);
        let got: Vec<String> = minimal_faulty(&s)
            .unwrap()
            .iter()
            .map(|&c| s.render(c))
            .collect();
        assert_eq!(got, sets, "{name}");
    }
}

#[test]
fn every_fixture_report_is_consistent() {
    for name in NAMES {
        let s = space(name);
        let r = faulty_sets(&s).unwrap();
        assert_eq!(
            is_valid_ib(&s, &r.e_base).unwrap().valid,
            r.verdict,
            "{name}"
        );
        assert!(is_valid_ib(&s, &r.canonical).unwrap().valid, "{name}");
        for f in &r.faulty_pseudo_closed {
            assert!(!f.gap.is_empty());
            assert_eq!(f.gap.union(f.reached), f.closure);
        }
    }
}
