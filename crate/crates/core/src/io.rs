//! Line-oriented input format, text rendering and DOT export.
//!
//! ```text
//! # comment
//! ground: a b c d
//! set: a b          # closed-sets format, one closed set per line
//! imp: a c -> b     # implications format
//! circuit: a b c    # circuits format
//! binary-matroid: yes
//! ```
//!
//! A document uses exactly one of `set:`, `imp:` and `circuit:`. Sets may be
//! written with space-separated labels or, when every label is a single
//! character, concatenated (`abc`). `∅` or an empty payload is the empty
//! set.

use std::fmt::Write as _;

use crate::analysis::irreducibles;
use crate::bases::{Implication, ImplicationalBase};
use crate::error::{Error, Result};
use crate::matroid::{space_from_circuits, CircuitSystem};
use crate::set::{ElementSet, GroundSet};
use crate::space::ClosureSpace;
use crate::validity::ValidityReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    ClosedSets,
    Implications,
    Circuits,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputDocument {
    pub format: Format,
    pub ground: GroundSet,
    pub sets: Vec<ElementSet>,
    pub implications: Vec<Implication>,
    pub circuits: Vec<ElementSet>,
    pub binary_matroid: bool,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses a set payload, reporting unknown labels at their column.
fn parse_payload(ground: &GroundSet, text: &str, line: usize, offset: usize) -> Result<ElementSet> {
    ground.parse_set(text).map_err(|e| match e {
        Error::UnknownLabel(label) => {
            let col = text.find(label.as_str()).map_or(offset, |p| offset + p);
            parse_err(line, col + 1, format!("unknown element label `{label}`"))
        }
        other => other,
    })
}

pub fn parse_document(text: &str) -> Result<InputDocument> {
    let mut ground: Option<GroundSet> = None;
    let mut format: Option<Format> = None;
    let mut doc_sets = Vec::new();
    let mut imps = Vec::new();
    let mut circuits = Vec::new();
    let mut binary_matroid = false;

    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let (key, payload) = line
            .split_once(':')
            .ok_or_else(|| parse_err(line_no, 1, "expected `key: value`"))?;
        let key = key.trim();
        let offset = key.len()
            + 1
            + (payload.len() - payload.trim_start().len())
            + (raw.len() - raw.trim_start().len());
        let payload = payload.trim();
        let line_format = match key {
            "ground" => {
                if ground.is_some() {
                    return Err(parse_err(line_no, 1, "duplicate `ground:` line"));
                }
                let labels: Vec<&str> = payload.split_whitespace().collect();
                ground = Some(
                    GroundSet::new(labels)
                        .map_err(|e| parse_err(line_no, offset + 1, e.to_string()))?,
                );
                continue;
            }
            "binary-matroid" => {
                binary_matroid = match payload {
                    "yes" | "true" => true,
                    "no" | "false" => false,
                    _ => return Err(parse_err(line_no, offset + 1, "expected yes or no")),
                };
                continue;
            }
            "set" => Format::ClosedSets,
            "imp" => Format::Implications,
            "circuit" => Format::Circuits,
            other => return Err(parse_err(line_no, 1, format!("unknown key `{other}`"))),
        };
        let g = ground
            .as_ref()
            .ok_or_else(|| parse_err(line_no, 1, "`ground:` must come first"))?;
        match format {
            None => format = Some(line_format),
            Some(f) if f != line_format => {
                return Err(parse_err(line_no, 1, "a document uses a single format"))
            }
            _ => {}
        }
        match line_format {
            Format::ClosedSets => doc_sets.push(parse_payload(g, payload, line_no, offset)?),
            Format::Circuits => circuits.push(parse_payload(g, payload, line_no, offset)?),
            Format::Implications => {
                let (p, c) = payload.split_once("->").ok_or_else(|| {
                    parse_err(line_no, offset + 1, "expected `premise -> conclusion`")
                })?;
                let c_off = offset + p.len() + 2;
                imps.push(Implication::new(
                    parse_payload(g, p, line_no, offset)?,
                    parse_payload(g, c, line_no, c_off)?,
                ));
            }
        }
    }
    let ground = ground.ok_or_else(|| parse_err(1, 1, "missing `ground:` line"))?;
    let format = format.unwrap_or(Format::Implications);
    if binary_matroid && format != Format::Circuits {
        return Err(parse_err(
            1,
            1,
            "`binary-matroid` requires the circuits format",
        ));
    }
    Ok(InputDocument {
        format,
        ground,
        sets: doc_sets,
        implications: imps,
        circuits,
        binary_matroid,
    })
}

impl InputDocument {
    pub fn to_space(&self) -> Result<ClosureSpace> {
        match self.format {
            Format::ClosedSets => {
                ClosureSpace::from_closed_sets(self.ground.clone(), self.sets.iter().copied())
            }
            Format::Implications => {
                let ib = ImplicationalBase::new(
                    self.ground.clone(),
                    self.implications.iter().copied(),
                    crate::bases::Form::Aggregated,
                );
                ClosureSpace::from_closure_operator(self.ground.clone(), |x| ib.closure(x))
            }
            Format::Circuits => space_from_circuits(&self.circuit_system()?),
        }
    }

    /// Closed-sets documents only: adds the ground set and missing
    /// intersections before building the space.
    pub fn to_space_repaired(&self) -> Result<(ClosureSpace, Vec<ElementSet>)> {
        match self.format {
            Format::ClosedSets => ClosureSpace::from_closed_sets_repaired(
                self.ground.clone(),
                self.sets.iter().copied(),
            ),
            _ => Ok((self.to_space()?, Vec::new())),
        }
    }

    pub fn circuit_system(&self) -> Result<CircuitSystem> {
        CircuitSystem::new(self.ground.clone(), self.circuits.iter().copied())
    }
}

pub fn parse_space(text: &str) -> Result<ClosureSpace> {
    parse_document(text)?.to_space()
}

fn labels(ground: &GroundSet, set: ElementSet) -> String {
    if set.is_empty() {
        "∅".to_string()
    } else {
        set.iter()
            .map(|x| ground.name(x))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The space in the closed-sets format.
pub fn render_closed_sets(space: &ClosureSpace) -> String {
    let g = space.ground();
    let mut out = format!("ground: {}\n", g.names().join(" "));
    for &c in space.closed_sets() {
        let _ = writeln!(out, "set: {}", labels(g, c));
    }
    out
}

/// An implicational base in the implications format.
pub fn render_implications(ib: &ImplicationalBase) -> String {
    let g = ib.ground();
    let mut out = format!("ground: {}\n", g.names().join(" "));
    for i in ib.implications() {
        let _ = writeln!(
            out,
            "imp: {} -> {}",
            labels(g, i.premise),
            labels(g, i.conclusion)
        );
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LabelMode {
    /// Every node shows its closed set.
    #[default]
    FullSet,
    /// Join-irreducible nodes show their element; other nodes are blank.
    ElementOnly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DotStyle {
    pub essential_shape: &'static str,
    pub other_shape: &'static str,
    pub non_faulty_fill: &'static str,
    pub faulty_outline: &'static str,
    pub ji_fill: &'static str,
    pub label_mode: LabelMode,
}

impl Default for DotStyle {
    fn default() -> Self {
        DotStyle {
            essential_shape: "square",
            other_shape: "circle",
            non_faulty_fill: "yellow",
            faulty_outline: "purple",
            ji_fill: "gray85",
            label_mode: LabelMode::FullSet,
        }
    }
}

/// Hasse diagram of the closure lattice, bottom to top. With a report,
/// essential sets are squares, non-faulty non-ji essentials are filled and
/// faulty ones outlined.
pub fn export_dot(
    space: &ClosureSpace,
    report: Option<&ValidityReport>,
    style: &DotStyle,
) -> String {
    let irr = irreducibles(space);
    let ji_of = |i: usize| {
        irr.join_irreducibles
            .iter()
            .find(|j| j.closed == i)
            .map(|j| j.element)
    };
    let mut out = String::from(
        "digraph lattice {\n  rankdir=BT;\n  node [shape=circle, style=filled, fillcolor=white];\n",
    );
    for (i, &c) in space.closed_sets().iter().enumerate() {
        let label = match style.label_mode {
            LabelMode::FullSet => space.render(c),
            LabelMode::ElementOnly => ji_of(i)
                .map(|x| space.ground().name(x).to_string())
                .unwrap_or_default(),
        };
        let mut attrs = vec![format!("label=\"{label}\"")];
        let essential = report.and_then(|r| r.essential.iter().find(|e| e.closed == c));
        let faulty = report.is_some_and(|r| r.faulty_essential.contains(&c));
        attrs.push(format!(
            "shape={}",
            if essential.is_some() {
                style.essential_shape
            } else {
                style.other_shape
            }
        ));
        let fill = if essential.is_some_and(|e| !e.join_irreducible) && !faulty {
            style.non_faulty_fill
        } else if ji_of(i).is_some() {
            style.ji_fill
        } else {
            "white"
        };
        attrs.push(format!("fillcolor=\"{fill}\""));
        if faulty {
            attrs.push(format!("color=\"{}\", penwidth=3", style.faulty_outline));
        }
        let _ = writeln!(out, "  n{i} [{}];", attrs.join(", "));
    }
    for (lo, hi) in space.covers() {
        let _ = writeln!(out, "  n{lo} -> n{hi} [arrowhead=none];");
    }
    out.push_str("}\n");
    out
}
