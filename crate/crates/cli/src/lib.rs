//! The `ebase` command: analysis, bases, validity reports, lifting, DOT
//! export and the census sweep over closure spaces read from files.
//!
//! Exit codes: 0 success (and a valid E-base for `validate`), 1 usage or
//! input error, 2 invalid E-base, 3 internal invariant violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ebase_core::analysis::{classify, irreducibles};
use ebase_core::bases::{all_bases, special_sets, ImplicationalBase};
use ebase_core::census::{
    geometric_spaces, sample_standard_spaces, standard_spaces, sweep, CensusSummary,
};
use ebase_core::io::{export_dot, parse_document, render_closed_sets, DotStyle, Format, LabelMode};
use ebase_core::lifting::{lift, lift_all, lift_until_valid, LiftOutcome};
use ebase_core::matroid::binary_matroid_check;
use ebase_core::validity::{faulty_sets, ValidityReport};
use ebase_core::{ClosureSpace, ElementSet, Error};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "ebase",
    version,
    about = "Implicational bases of finite closure spaces"
)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lattice classes and sizes.
    Analyze(Input),
    /// Print one implicational base.
    Bases {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Which::E)]
        which: Which,
        /// Merge implications with equal premises.
        #[arg(long)]
        aggregate: bool,
    },
    /// E-base validity report; exits with 2 when the E-base is not valid.
    Validate(Input),
    /// Lift closed sets until the E-base is valid (default), all at once, or
    /// a given list.
    Lift {
        #[command(flatten)]
        input: Input,
        #[arg(long, conflicts_with_all = ["until_valid", "sets"])]
        all: bool,
        #[arg(long)]
        until_valid: bool,
        /// Comma-separated closed sets, e.g. `abc,bcd`.
        #[arg(long, value_delimiter = ',', conflicts_with = "until_valid")]
        sets: Option<Vec<String>>,
        /// Also print the closed sets of the result.
        #[arg(long)]
        closed_sets: bool,
    },
    /// Hasse diagram in Graphviz format.
    Dot {
        #[command(flatten)]
        input: Input,
        /// Mark essential and faulty sets.
        #[arg(long)]
        report: bool,
        /// Label join-irreducible nodes by their element only.
        #[arg(long)]
        element_labels: bool,
    },
    /// Check the class theorems over enumerated small spaces.
    Census {
        /// Largest ground set. Up to 5 every space is enumerated, above that
        /// spaces are sampled.
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Only sweep spaces in this lattice class.
        #[arg(long)]
        class: Option<String>,
        /// Sweep geometric spaces of rank at most 3 instead.
        #[arg(long)]
        geometric: bool,
        /// Random spaces per ground-set size above 5.
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// Input document (`-` for standard input).
    file: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Dg,
    Cd,
    D,
    E,
    Binary,
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::Dg => "dg",
            Which::Cd => "cd",
            Which::D => "d",
            Which::E => "e",
            Which::Binary => "binary",
        }
    }
}

/// Failure of a subcommand, carrying the exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_invariant() {
                EXIT_INVARIANT
            } else {
                EXIT_USAGE
            },
            message: e.to_string(),
        }
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{shown}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{shown}");
                    EXIT_USAGE
                }
            };
        }
    };
    let json = cli.json;
    match run(cli, out) {
        Ok(code) => code,
        Err(f) => {
            if json {
                let _ = writeln!(
                    out,
                    "{}",
                    json!({"command": "error", "exit_code": f.code, "message": f.message})
                );
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn run(cli: Cli, out: &mut dyn Write) -> Outcome {
    let json = cli.json;
    match cli.command {
        Command::Analyze(input) => analyze(&load(&input)?, json, out),
        Command::Bases {
            input,
            which,
            aggregate,
        } => bases(&load(&input)?, which, aggregate, json, out),
        Command::Validate(input) => validate(&input, json, out),
        Command::Lift {
            input,
            all,
            until_valid: _,
            sets,
            closed_sets,
        } => {
            let space = load(&input)?;
            let outcome = if all {
                lift_all(&space)?
            } else if let Some(sets) = sets {
                let parsed = sets
                    .iter()
                    .map(|s| space.ground().parse_set(s))
                    .collect::<ebase_core::Result<Vec<_>>>()?;
                lift(&space, &parsed)?
            } else {
                lift_until_valid(&space)?
            };
            lift_report(&outcome, closed_sets, json, out)
        }
        Command::Dot {
            input,
            report,
            element_labels,
        } => {
            let space = load(&input)?;
            let report = if report {
                Some(faulty_sets(&space)?)
            } else {
                None
            };
            let style = DotStyle {
                label_mode: if element_labels {
                    LabelMode::ElementOnly
                } else {
                    LabelMode::FullSet
                },
                ..DotStyle::default()
            };
            let dot = export_dot(&space, report.as_ref(), &style);
            if json {
                emit(out, json!({"command": "dot", "dot": dot}))?;
            } else {
                write!(out, "{dot}").map_err(io_failure)?;
            }
            Ok(EXIT_OK)
        }
        Command::Census {
            max_n,
            class,
            geometric,
            samples,
            seed,
        } => census(max_n, class.as_deref(), geometric, samples, seed, json, out),
    }
}

fn io_failure(e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: e.to_string(),
    }
}

fn emit(out: &mut dyn Write, value: Value) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
    writeln!(out, "{text}").map_err(io_failure)
}

fn read_input(input: &Input) -> std::result::Result<String, Failure> {
    let read = if input.file.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(&input.file)
    };
    read.map_err(|e| Failure {
        code: EXIT_USAGE,
        message: format!("{}: {e}", input.file.display()),
    })
}

fn load(input: &Input) -> std::result::Result<ClosureSpace, Failure> {
    let text = read_input(input)?;
    parse_document(&text)
        .and_then(|d| d.to_space())
        .map_err(|e| with_file(input, e))
}

fn with_file(input: &Input, e: Error) -> Failure {
    let mut f = Failure::from(e);
    f.message = format!("{}: {}", input.file.display(), f.message);
    f
}

fn set_list(space: &ClosureSpace, sets: &[ElementSet]) -> Vec<String> {
    sets.iter().map(|&c| space.render(c)).collect()
}

fn analyze(space: &ClosureSpace, json: bool, out: &mut dyn Write) -> Outcome {
    let flags = classify(space)?;
    let irr = irreducibles(space);
    let special = special_sets(space)?;
    let counts = [
        ("elements", space.n()),
        ("closed_sets", space.len()),
        ("join_irreducibles", irr.join_irreducibles.len()),
        ("meet_irreducibles", irr.meet_irreducibles.len()),
        ("pseudo_closed", special.pseudo_closed.len()),
        ("essential", special.essential.len()),
        ("height", space.height()),
    ];
    if json {
        let classes: serde_json::Map<String, Value> = flags
            .iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect();
        let counts: serde_json::Map<String, Value> = counts
            .iter()
            .map(|(k, v)| (k.to_string(), json!(v)))
            .collect();
        emit(
            out,
            json!({"command": "analyze", "counts": counts, "classes": classes}),
        )?;
    } else {
        let w = |out: &mut dyn Write, s: String| writeln!(out, "{s}").map_err(io_failure);
        for (k, v) in counts {
            w(out, format!("{k}: {v}"))?;
        }
        for (k, v) in flags.iter() {
            w(out, format!("{k}: {}", if v { "yes" } else { "no" }))?;
        }
    }
    Ok(EXIT_OK)
}

fn bases(
    space: &ClosureSpace,
    which: Which,
    aggregate: bool,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    let bundle = all_bases(space)?;
    let ib = match which {
        Which::Dg => bundle.canonical,
        Which::Cd => bundle.canonical_direct,
        Which::D => bundle.d_base,
        Which::E => bundle.e_base,
        Which::Binary => bundle.binary,
    };
    let ib = if aggregate { ib.aggregate() } else { ib.unit() };
    if json {
        emit(
            out,
            json!({
                "command": "bases",
                "which": which.name(),
                "aggregated": aggregate,
                "implications": implications_json(&ib),
            }),
        )?;
    } else {
        write!(out, "{ib}").map_err(io_failure)?;
    }
    Ok(EXIT_OK)
}

fn implications_json(ib: &ImplicationalBase) -> Value {
    let g = ib.ground();
    Value::Array(
        ib.implications()
            .iter()
            .map(|i| json!({"premise": g.render(i.premise), "conclusion": g.render(i.conclusion)}))
            .collect(),
    )
}

fn validate(input: &Input, json: bool, out: &mut dyn Write) -> Outcome {
    let text = read_input(input)?;
    let doc = parse_document(&text).map_err(|e| with_file(input, e))?;
    let space = doc.to_space().map_err(|e| with_file(input, e))?;
    let report = faulty_sets(&space)?;
    let binary = if doc.format == Format::Circuits && doc.binary_matroid {
        Some(binary_matroid_check(&doc.circuit_system()?)?)
    } else {
        None
    };
    if let Some(b) = binary {
        if !b.holds() {
            return Err(Failure {
                code: EXIT_INVARIANT,
                message: "circuits declared binary but essential sets are not the closed circuits"
                    .into(),
            });
        }
    }
    if json {
        emit(out, validity_json(&space, &report, binary.is_some()))?;
    } else {
        write_validity(&space, &report, out).map_err(io_failure)?;
        if binary.is_some() {
            writeln!(
                out,
                "binary matroid: essential sets are the closed circuits"
            )
            .map_err(io_failure)?;
        }
    }
    Ok(if report.verdict {
        EXIT_OK
    } else {
        EXIT_INVALID
    })
}

fn validity_json(space: &ClosureSpace, r: &ValidityReport, binary_checked: bool) -> Value {
    let essential: Vec<Value> = r
        .essential
        .iter()
        .map(|e| {
            json!({
                "closed": space.render(e.closed),
                "join_irreducible": e.join_irreducible,
                "pseudo_closed": set_list(space, &e.pseudo_closed),
                "faulty": r.faulty_essential.contains(&e.closed),
            })
        })
        .collect();
    let faulty_pseudo: Vec<Value> = r
        .faulty_pseudo_closed
        .iter()
        .map(|f| {
            json!({
                "pseudo_closed": space.render(f.pseudo_closed),
                "closure": space.render(f.closure),
                "reached": space.render(f.reached),
                "gap": space.render(f.gap),
            })
        })
        .collect();
    json!({
        "command": "validate",
        "valid": r.verdict,
        "essential": essential,
        "faulty_essential": set_list(space, &r.faulty_essential),
        "faulty_pseudo_closed": faulty_pseudo,
        "criteria": {
            "semidistributive": r.criteria.sd_predicts_valid.as_str(),
            "modular": r.criteria.modular.as_str(),
            "geometric": r.criteria.geometric.as_str(),
            "incomparable_essential": r.criteria.incomparable.as_str(),
        },
        "binary_matroid_checked": binary_checked,
    })
}

fn write_validity(
    space: &ClosureSpace,
    r: &ValidityReport,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    writeln!(
        out,
        "E-base: {}",
        if r.verdict { "valid" } else { "not valid" }
    )?;
    let essential: Vec<String> = r.essential.iter().map(|e| space.render(e.closed)).collect();
    writeln!(out, "essential: {}", essential.join(", "))?;
    if !r.verdict {
        writeln!(
            out,
            "faulty essential: {}",
            set_list(space, &r.faulty_essential).join(", ")
        )?;
        for f in &r.faulty_pseudo_closed {
            writeln!(
                out,
                "faulty pseudo-closed: {} (closure {}, reached {}, missing {})",
                space.render(f.pseudo_closed),
                space.render(f.closure),
                space.render(f.reached),
                space.render(f.gap)
            )?;
        }
    }
    writeln!(
        out,
        "semidistributive criterion: {}",
        r.criteria.sd_predicts_valid
    )?;
    writeln!(out, "modular criterion: {}", r.criteria.modular)?;
    writeln!(out, "geometric criterion: {}", r.criteria.geometric)?;
    writeln!(
        out,
        "incomparable essential criterion: {}",
        r.criteria.incomparable
    )
}

fn lift_report(
    outcome: &LiftOutcome,
    closed_sets: bool,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    let target = &outcome.target;
    let report = faulty_sets(target)?;
    let e = report.e_base.aggregate();
    if json {
        let rounds: Vec<Value> = outcome
            .rounds
            .iter()
            .map(|r| json!({"lifted": r.lifted.len(), "ground_before": r.ground_before, "ground_after": r.ground_after}))
            .collect();
        let mut value = json!({
            "command": "lift",
            "rounds": rounds,
            "ground": target.ground().names(),
            "closed_sets": target.len(),
            "valid": report.verdict,
            "embedding_verified": true,
            "e_base": implications_json(&e),
        });
        if closed_sets {
            value["sets"] = json!(set_list(target, target.closed_sets()));
        }
        emit(out, value)?;
    } else {
        let mut text = format!("rounds: {}\n", outcome.rounds.len());
        for (k, r) in outcome.rounds.iter().enumerate() {
            text += &format!(
                "round {}: {} lifted, ground {} -> {}\n",
                k + 1,
                r.lifted.len(),
                r.ground_before,
                r.ground_after
            );
        }
        text += &format!("ground: {}\n", target.ground().names().join(" "));
        text += &format!(
            "E-base: {}\nembedding: verified\n",
            if report.verdict { "valid" } else { "not valid" }
        );
        text += &e.to_string();
        if closed_sets {
            text += &render_closed_sets(target);
        }
        write!(out, "{text}").map_err(io_failure)?;
    }
    Ok(EXIT_OK)
}

fn census(
    max_n: usize,
    class: Option<&str>,
    geometric: bool,
    samples: usize,
    seed: u64,
    json: bool,
    out: &mut dyn Write,
) -> Outcome {
    let class = class.map(|c| c.replace('-', "_"));
    let mut spaces = Vec::new();
    for n in 1..=max_n {
        if geometric {
            if n > 7 {
                return Err(
                    Error::Precondition("the geometric census stops at 7 points".into()).into(),
                );
            }
            spaces.extend(geometric_spaces(n)?);
        } else if n <= 5 {
            spaces.extend(standard_spaces(n)?);
        } else {
            spaces.extend(sample_standard_spaces(
                n,
                samples,
                seed.wrapping_add(n as u64),
            )?);
        }
    }
    let summary: CensusSummary = sweep(&spaces, class.as_deref())?;
    if json {
        emit(
            out,
            json!({
                "command": "census",
                "max_n": max_n,
                "class": class,
                "spaces": summary.spaces,
                "semidistributive": summary.semidistributive,
                "modular": summary.modular,
                "geometric": summary.geometric,
                "valid": summary.valid,
                "counterexamples": summary.counterexamples,
            }),
        )?;
    } else {
        let mut text = format!(
            "spaces: {}\nsemidistributive: {}\nmodular: {}\ngeometric: {}\nvalid E-base: {}\ncounterexamples: {}\n",
            summary.spaces,
            summary.semidistributive,
            summary.modular,
            summary.geometric,
            summary.valid,
            summary.counterexamples.len()
        );
        for c in &summary.counterexamples {
            text += &format!("  {c}\n");
        }
        write!(out, "{text}").map_err(io_failure)?;
    }
    Ok(if summary.counterexamples.is_empty() {
        EXIT_OK
    } else {
        EXIT_INVARIANT
    })
}
