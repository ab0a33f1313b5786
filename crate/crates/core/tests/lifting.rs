use ebase_core::analysis::classify;
use ebase_core::bases::{aggregate, e_base};
use ebase_core::fixtures::{by_name, GRID_LIFT, NAMES};
use ebase_core::lifting::{lift, lift_all, lift_until_valid, verify_embedding, Family};
use ebase_core::validity::faulty_sets;
use ebase_core::{ClosureSpace, ElementSet, Error};

fn space(name: &str) -> ClosureSpace {
    by_name(name).unwrap().unwrap()
}

fn lines(s: &ClosureSpace) -> Vec<String> {
    aggregate(&e_base(s).unwrap()).render_lines()
}

#[test]
fn leaf_lift_repairs_the_e_base() {
    let s = space("leaf");
    let top = s.ground().parse_set("abcd").unwrap();
    let out = lift(&s, &[top]).unwrap();
    let t = &out.target;
    assert_eq!(t.n(), 6);
    assert!(faulty_sets(t).unwrap().verdict);
    let x = t.ground().name(4).to_string();
    let y = t.ground().name(5).to_string();
    let mut expected = vec![
        format!("{x} -> a b c"),
        format!("{y} -> b c d"),
        "a c -> b".to_string(),
        "b d -> c".to_string(),
        format!("a d -> {x} {y}"),
    ];
    expected.sort();
    let mut got = lines(t);
    got.sort();
    assert_eq!(got, expected);
    assert!(verify_embedding(&s, t, &out.embedding_map()).unwrap());
    assert_eq!(
        out.families
            .iter()
            .filter(|&&f| f == Family::Inserted)
            .count(),
        2
    );
}

#[test]
fn m3_lifts() {
    let s = space("m3");
    let out = lift(&s, &[s.full()]).unwrap();
    assert_eq!(out.target.len(), 8);
    let all = lift_all(&s).unwrap();
    assert_eq!(all.target.n(), 9);
    assert!(faulty_sets(&all.target).unwrap().verdict);
    assert!(lift_until_valid(&s).unwrap().rounds.is_empty());
}

#[test]
fn lift_all_of_small_spaces() {
    for name in ["pow2", "leaf", "carpet"] {
        let s = space(name);
        let out = lift_all(&s).unwrap();
        assert!(faulty_sets(&out.target).unwrap().verdict, "{name}");
        assert!(
            verify_embedding(&s, &out.target, &out.embedding_map()).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn twin_needs_two_rounds() {
    let s = space("twin");
    assert!(!faulty_sets(&s).unwrap().verdict);
    let out = lift_until_valid(&s).unwrap();
    assert_eq!(out.rounds.len(), 2);
    assert!(faulty_sets(&out.target).unwrap().verdict);
}

#[test]
fn grid_lift_breaks_the_lattice_laws() {
    let s = space("grid");
    let before = classify(&s).unwrap();
    assert!(before.distributive);
    let sets: Vec<_> = GRID_LIFT
        .iter()
        .map(|c| s.ground().parse_set(c).unwrap())
        .collect();
    let after = classify(&lift(&s, &sets).unwrap().target).unwrap();
    for law in [
        "join_semidistributive",
        "meet_semidistributive",
        "upper_semimodular",
        "lower_semimodular",
    ] {
        assert_eq!(after.get(law), Some(false), "{law}");
    }
}

#[test]
fn every_fixture_lifts_to_a_valid_e_base() {
    for name in NAMES {
        let s = space(name);
        let out = lift_until_valid(&s).unwrap();
        assert!(out.rounds.len() <= s.height(), "{name}");
        assert!(faulty_sets(&out.target).unwrap().verdict, "{name}");
        assert!(
            verify_embedding(&s, &out.target, &out.embedding_map()).unwrap(),
            "{name}"
        );
        assert_eq!(
            out.rounds.is_empty(),
            faulty_sets(&s).unwrap().verdict,
            "{name}"
        );
    }
}

#[test]
fn lifting_rejects_bad_input() {
    let s = space("leaf");
    assert_eq!(
        lift(&s, &[ElementSet::EMPTY]).unwrap_err(),
        Error::LiftEmptySet
    );
    assert!(lift(&s, &[]).unwrap().rounds[0].lifted.is_empty());
    let open = s.ground().parse_set("ad").unwrap();
    assert!(matches!(lift(&s, &[open]), Err(Error::NotClosed(_))));
}
