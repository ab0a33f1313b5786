use ebase_core::bases::special_sets;
use ebase_core::fixtures::by_name;
use ebase_core::generators::minimal_generators;
use ebase_core::matroid::{
    binary_matroid_check, circuits, matroid_view, space_from_circuits, CircuitSystem,
};
use ebase_core::{ClosureSpace, Error, GroundSet};

fn space(name: &str) -> ClosureSpace {
    by_name(name).unwrap().unwrap()
}

#[test]
fn circuits_round_trip_on_geometric_fixtures() {
    for name in ["geof5", "geof6", "m3", "pow3"] {
        let s = space(name);
        let view = matroid_view(&s).unwrap();
        let cs = CircuitSystem::new(s.ground().clone(), view.circuits.clone()).unwrap();
        assert_eq!(space_from_circuits(&cs).unwrap(), s, "{name}");
        assert_eq!(view.rank, s.height(), "{name}");
    }
}

#[test]
fn minimal_generators_are_circuits_minus_an_element() {
    for name in ["geof5", "geof6"] {
        let s = space(name);
        let cs = circuits(&s);
        for x in 0..s.n() {
            let mut expected: Vec<_> = cs
                .iter()
                .filter(|k| k.contains(x))
                .map(|k| k.without(x))
                .collect();
            expected.sort_by(|a, b| a.canonical_cmp(b));
            assert_eq!(
                minimal_generators(&s, x),
                expected,
                "{name} {}",
                s.ground().name(x)
            );
        }
    }
}

#[test]
fn ranks_of_the_geometric_fixtures() {
    assert_eq!(matroid_view(&space("geof5")).unwrap().rank, 3);
    assert_eq!(matroid_view(&space("geof6")).unwrap().rank, 3);
}

#[test]
fn non_geometric_spaces_are_rejected() {
    assert_eq!(
        matroid_view(&space("leaf")).unwrap_err(),
        Error::NotGeometric
    );
}

#[test]
fn binary_matroids_have_closed_circuits_as_essential_sets() {
    let g = GroundSet::letters(7).unwrap();
    let lines = ["abd", "bce", "cdf", "deg", "aef", "bfg", "acg"];
    let mut cs: Vec<_> = lines.iter().map(|l| g.parse_set(l).unwrap()).collect();
    let complements: Vec<_> = cs.iter().map(|&l| g.full().difference(l)).collect();
    cs.extend(complements);
    let fano = CircuitSystem::new(g, cs).unwrap();
    let check = binary_matroid_check(&fano).unwrap();
    assert!(check.holds(), "{check:?}");
    let s = space_from_circuits(&fano).unwrap();
    assert_eq!(special_sets(&s).unwrap().essential.len(), 7);

    // U(2,4) is not binary; its essential set is the whole ground set.
    let g = GroundSet::letters(4).unwrap();
    let u24: Vec<_> = ["abc", "abd", "acd", "bcd"]
        .iter()
        .map(|l| g.parse_set(l).unwrap())
        .collect();
    let check = binary_matroid_check(&CircuitSystem::new(g, u24).unwrap()).unwrap();
    assert!(!check.essential_are_closed_circuits);
}
