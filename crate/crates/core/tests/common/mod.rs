//! Worked examples shared by the fixture regression and acceptance targets.

#![allow(dead_code)]

use ebase_core::bases::{Form, ImplicationalBase};
use ebase_core::fixtures;
use ebase_core::{ClosureSpace, ElementSet};

pub fn space(name: &str) -> ClosureSpace {
    fixtures::by_name(name).unwrap().unwrap()
}

pub fn ib(space: &ClosureSpace, lines: &str) -> ImplicationalBase {
    let lines: Vec<&str> = lines.split(',').map(str::trim).collect();
    ImplicationalBase::parse(space.ground().clone(), &lines, Form::Aggregated).unwrap()
}

pub fn sets(space: &ClosureSpace, list: &str) -> Vec<ElementSet> {
    let mut v: Vec<ElementSet> = list
        .split_whitespace()
        .map(|s| space.ground().parse_set(s).unwrap())
        .collect();
    ebase_core::set::canonicalize_family(&mut v);
    v
}

pub const E_BASES: [(&str, &str); 11] = [
    ("leaf", "ac -> b, bd -> c"),
    ("carpet", "g -> acf, f -> ac, e -> ac, d -> b, c -> a, bc -> f, ad -> c, ef -> g, bg -> d"),
    ("glue", "d -> c, e -> c, ac -> b, bc -> a, ae -> d, be -> d"),
    ("relax", "d -> c, f -> ce, e -> c, ac -> bd, bc -> ad, ae -> f, be -> f, de -> f"),
    ("sdmf", "e -> ac, f -> ad, c -> a, d -> a, de -> f, cf -> e, ab -> cd"),
    (
        "jdis",
        "c -> ab, b -> a, g -> def, f -> de, e -> d, h -> ad, bd -> e, ae -> b, bh -> c, he -> c, cd -> h, cf -> g, hf -> g",
    ),
    ("modp", "d -> c, e -> c, ab -> c, ac -> b, bc -> a, ad -> e, bd -> e, ae -> d, be -> d"),
    (
        "modf",
        "d -> ab, e -> ab, f -> ac, g -> ac, h -> bc, i -> bc, cd -> e, ce -> d, de -> c, bf -> g, bg -> f, fg -> b, ah -> i, ai -> h, hi -> a",
    ),
    ("geof6", "ab -> c, ac -> b, bc -> a, de -> f, df -> e, ef -> d"),
    ("geof5", "ab -> c, ac -> b, bc -> a, abd -> e, abe -> d, acd -> e, ace -> d, bcd -> e, bce -> d"),
    (
        "usm",
        "f -> a, d -> c, e -> c, ab -> c, ac -> b, bc -> a, ad -> ef, ae -> df, bd -> ef, be -> df, bf -> de, cf -> de, de -> f",
    ),
];

/// Aggregated canonical bases.
pub const DG_BASES: [(&str, &str); 10] = [
        ("leaf", "ac -> b, bd -> c, ad -> bc"),
        ("glue", "d -> c, e -> c, ac -> b, bc -> a, cde -> ab, abce -> d"),
        ("relax", "d -> c, f -> ce, e -> c, ac -> bd, bc -> ad, cde -> abf"),
        ("modp", "d -> c, e -> c, ab -> c, ac -> b, bc -> a, abcd -> e, abce -> d, cde -> ab"),
        (
            "jdis",
            "c -> ab, b -> a, g -> def, f -> de, e -> d, h -> ad, abd -> e, ade -> b, abcde -> h, abdeh -> c, abdefg -> ch, abcdefh -> g",
        ),
        ("geof5", "ab -> c, ac -> b, bc -> a, abcd -> e, abce -> d, ade -> bc, bde -> ac, cde -> ab"),
        ("usm", "f -> a, d -> c, e -> c, ab -> c, ac -> b, bc -> a, abcf -> de, abcd -> ef, abce -> df, cde -> abf"),
        ("sdmf", "e -> ac, f -> ad, c -> a, d -> a, acde -> f, acdf -> e, ab -> cdef"),
        (
            "modf",
            "d -> ab, e -> ab, f -> ac, g -> ac, h -> bc, i -> bc, abcd -> e, abce -> d, abde -> c, abcf -> g, abcg -> f, acfg -> b, abch -> i, abci -> h, bchi -> a, abcdefg -> hi, abcdehi -> fg, abcfghi -> de",
        ),
        (
            "geof6",
            "ab -> c, ac -> b, bc -> a, de -> f, df -> e, ef -> d, abcd -> ef, abce -> df, abcf -> de, adef -> bc, bdef -> ac, cdef -> ab",
        ),
];

/// Faulty essential sets and faulty pseudo-closed sets.
pub const VERDICTS: [(&str, &str, &str); 11] = [
    ("leaf", "abcd", "ad"),
    ("carpet", "", ""),
    ("glue", "abcde", "cde"),
    ("relax", "abcdef", "cde"),
    ("sdmf", "abcdef", "ab"),
    ("jdis", "abcdefgh", "abdefg"),
    ("modp", "abcde", "cde"),
    ("modf", "abcdefghi", "abcdefg abcdehi abcfghi"),
    ("geof6", "abcdef", "abcd abce abcf adef bdef cdef"),
    ("geof5", "abcde", "ade bde cde"),
    ("usm", "", ""),
];
