use ebase_core::fixtures::{by_name, source, NAMES};
use ebase_core::io::{
    export_dot, parse_document, parse_space, render_closed_sets, DotStyle, Format, LabelMode,
};
use ebase_core::validity::faulty_sets;
use ebase_core::Error;

#[test]
fn rendered_closed_sets_parse_back() {
    for name in NAMES {
        let s = by_name(name).unwrap().unwrap();
        let text = render_closed_sets(&s);
        assert_eq!(parse_document(&text).unwrap().format, Format::ClosedSets);
        assert_eq!(parse_space(&text).unwrap(), s, "{name}");
    }
}

#[test]
fn fixtures_use_the_expected_formats() {
    assert_eq!(
        parse_document(source("leaf").unwrap()).unwrap().format,
        Format::Implications
    );
    assert_eq!(
        parse_document(source("grid").unwrap()).unwrap().format,
        Format::ClosedSets
    );
}

#[test]
fn dot_for_leaf() {
    let s = by_name("leaf").unwrap().unwrap();
    let report = faulty_sets(&s).unwrap();
    let dot = export_dot(&s, Some(&report), &DotStyle::default());
    assert!(dot.starts_with("digraph lattice {"));
    assert!(dot.trim_end().ends_with('}'));
    assert_eq!(dot.matches("->").count(), s.covers().len());
    assert_eq!(dot.matches("shape=square").count(), report.essential.len());
    assert!(dot.contains(r#"[label="abc", shape=square, fillcolor="yellow"]"#));
    assert!(dot.contains(r#"[label="bcd", shape=square, fillcolor="yellow"]"#));
    assert!(dot.contains(r#"[label="abcd", shape=square, fillcolor="white", color="purple""#));
    assert_eq!(dot.matches("purple").count(), 1);
    assert_eq!(export_dot(&s, Some(&report), &DotStyle::default()), dot);
}

#[test]
fn dot_squares_for_glue() {
    let s = by_name("glue").unwrap().unwrap();
    let report = faulty_sets(&s).unwrap();
    let dot = export_dot(&s, Some(&report), &DotStyle::default());
    let squares: Vec<&str> = dot
        .lines()
        .filter(|l| l.contains("shape=square"))
        .map(|l| l.split('"').nth(1).unwrap())
        .collect();
    assert_eq!(squares, ["cd", "ce", "abc", "abcde"]);
}

#[test]
fn circuit_documents() {
    let s = parse_space("ground: a b c\ncircuit: a b c\n").unwrap();
    assert_eq!(s, by_name("m3").unwrap().unwrap());
    let doc = parse_document("ground: a b c\nbinary-matroid: yes\ncircuit: abc\n").unwrap();
    assert!(doc.binary_matroid);
    assert_eq!(doc.format, Format::Circuits);
    assert!(parse_document("ground: a b\nbinary-matroid: yes\nset: a\n").is_err());
}

#[test]
fn dot_for_glue_with_element_labels() {
    let s = by_name("glue").unwrap().unwrap();
    let style = DotStyle {
        label_mode: LabelMode::ElementOnly,
        ..DotStyle::default()
    };
    let dot = export_dot(&s, None, &style);
    assert_eq!(dot.matches("->").count(), s.covers().len());
    assert!(!dot.contains("shape=square"));
}

#[test]
fn parse_errors_have_positions() {
    match parse_space("ground: a b\nimp: a -> z\n") {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        parse_space("imp: a -> b\n"),
        Err(Error::Parse { .. })
    ));
}
