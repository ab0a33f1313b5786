//! Named example spaces.

use crate::error::Result;
use crate::io::parse_space;
use crate::set::GroundSet;
use crate::space::ClosureSpace;

pub const LEAF: &str = include_str!("../fixtures/leaf.imp");
pub const CARPET: &str = include_str!("../fixtures/carpet.imp");
pub const GLUE: &str = include_str!("../fixtures/glue.imp");
pub const RELAX: &str = include_str!("../fixtures/relax.imp");
pub const SDMF: &str = include_str!("../fixtures/sdmf.imp");
pub const JDIS: &str = include_str!("../fixtures/jdis.imp");
pub const MODP: &str = include_str!("../fixtures/modp.imp");
pub const MODF: &str = include_str!("../fixtures/modf.imp");
pub const GEOF6: &str = include_str!("../fixtures/geof6.imp");
pub const GEOF5: &str = include_str!("../fixtures/geof5.imp");
pub const USM: &str = include_str!("../fixtures/usm.imp");
pub const TWIN: &str = include_str!("../fixtures/twin.sets");
pub const GRID: &str = include_str!("../fixtures/grid.sets");

pub const NAMES: [&str; 13] = [
    "leaf", "carpet", "glue", "relax", "sdmf", "jdis", "modp", "modf", "geof6", "geof5", "usm",
    "twin", "grid",
];

/// Closed sets of `grid` whose lifting breaks both semimodular and both
/// semidistributive laws.
pub const GRID_LIFT: [&str; 2] = ["abc", "acd"];

pub fn source(name: &str) -> Option<&'static str> {
    Some(match name.to_ascii_lowercase().as_str() {
        "leaf" => LEAF,
        "carpet" => CARPET,
        "glue" => GLUE,
        "relax" => RELAX,
        "sdmf" => SDMF,
        "jdis" => JDIS,
        "modp" => MODP,
        "modf" => MODF,
        "geof6" => GEOF6,
        "geof5" => GEOF5,
        "usm" => USM,
        "twin" => TWIN,
        "grid" => GRID,
        _ => return None,
    })
}

/// A named fixture, `m3`, or `powN`.
pub fn by_name(name: &str) -> Option<Result<ClosureSpace>> {
    let lower = name.to_ascii_lowercase();
    if lower == "m3" {
        return Some(m3());
    }
    if let Some(n) = lower.strip_prefix("pow").and_then(|n| n.parse().ok()) {
        return Some(ClosureSpace::powerset(n));
    }
    source(&lower).map(parse_space)
}

/// The diamond with three atoms on `{a, b, c}`.
pub fn m3() -> Result<ClosureSpace> {
    let g = GroundSet::letters(3)?;
    let fam = ["", "a", "b", "c", "abc"].map(|s| g.parse_set(s).unwrap());
    ClosureSpace::from_closed_sets(g, fam)
}
