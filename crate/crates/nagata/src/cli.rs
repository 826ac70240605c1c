//! Command line front end.
//!
//! Exit codes: 0 when every report passes, 1 when any axiom fails, 2 on
//! unreadable input or usage errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use nagata_core::algebra::BrouwerianAlgebra;
use nagata_core::enumerate::{
    boolean_pointed_brouwerian, check_bound, commutative_residuated_chains, distributive_lattices, lattices, posets,
    SINGLE_SORTED_BOUND,
};
use nagata_core::fractions::fractions_algebra;
use nagata_core::nagata::{
    check_bilattice_sesquilattice, check_triangle_identities, check_unit_map, check_unit_surjectivity,
    nagata_structure, unit_map, LatticeVariant,
};
use nagata_core::report::CheckReport;
use nagata_core::twist::{check_twist_round_trip, restricted_twist_product, twist_product, untwist};
use nagata_core::Error as CoreError;
use serde_json::json;

use crate::check::check;
use crate::format::{load, load_unchecked, save, to_line, to_text, FormatError, Structure};
use crate::random::{random_structure, RandomKind};
use crate::suite::run_all;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "nagata",
    version,
    about = "Finite checker for Nagata products, twist products and bimonoids of fractions"
)]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a structure file at a level (default: the strongest its components allow).
    Check {
        file: PathBuf,
        #[arg(long)]
        level: Option<String>,
    },
    /// Build a product or fractions algebra from a structure file.
    Construct {
        #[arg(value_enum)]
        construction: Construction,
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Recover the twistable pair of a twist product.
    Untwist {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Verify a theorem on a concrete structure.
    Verify {
        #[arg(value_enum)]
        property: Property,
        file: PathBuf,
    },
    /// List every structure of a kind up to a size.
    Enumerate {
        #[arg(value_enum)]
        kind: EnumKind,
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        up_to_iso: bool,
    },
    /// Generate a random structure that passes its kind's base check.
    Random {
        #[arg(value_enum)]
        kind: RandomKind,
        #[arg(long)]
        size: usize,
        /// Module size, for bimodules.
        #[arg(long, default_value_t = 2)]
        module_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a battery.
    Suite {
        #[arg(value_enum)]
        battery: Battery,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    Nagata,
    RestrictedNagata,
    Twist,
    RestrictedTwist,
    Fractions,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Property {
    Adjunction,
    Equivalence,
    Roundtrip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnumKind {
    Poset,
    Lattice,
    DistributiveLattice,
    Brouwerian,
    ResiduatedChain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Battery {
    Corpus,
}

/// A failure that stops a command before any report is produced.
#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    fn wrong_kind(path: &Path, s: &Structure, wanted: &str) -> Self {
        CliError::Input(format!("{}: expected a {wanted}, found a {}", path.display(), s.kind()))
    }
}

struct Reporter<'a> {
    out: &'a mut dyn Write,
    format: Format,
    failed: bool,
}

impl Reporter<'_> {
    fn report(&mut self, subject: Option<&str>, r: &CheckReport) {
        self.failed |= !r.passed;
        let line = match self.format {
            Format::Text => match subject {
                Some(s) => format!("{s}: {r}"),
                None => r.to_string(),
            },
            Format::Json => {
                let witness: serde_json::Map<String, serde_json::Value> =
                    r.witness.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                let mut v = json!({
                    "passed": r.passed,
                    "axiom": r.axiom,
                    "witness": if r.passed { serde_json::Value::Null } else { witness.into() },
                    "detail": r.detail,
                });
                if let Some(s) = subject {
                    v["subject"] = json!(s);
                }
                v.to_string()
            }
        };
        let _ = writeln!(self.out, "{line}");
    }

    fn text(&mut self, line: &str) {
        let _ = writeln!(self.out, "{line}");
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let mut rep = Reporter {
        out,
        format: cli.format,
        failed: false,
    };
    match execute(cli.command, &mut rep) {
        Ok(()) if rep.failed => EXIT_FAIL,
        Ok(()) => EXIT_PASS,
        Err(CliError::Format(FormatError::Validation(r))) => {
            rep.report(None, &r);
            EXIT_FAIL
        }
        Err(CliError::Core(CoreError::AxiomFailure(r))) => {
            rep.report(None, &r);
            EXIT_FAIL
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn emit(rep: &mut Reporter<'_>, s: &Structure, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => save(path, s)?,
        None => match rep.format {
            Format::Text => {
                let text = to_text(s);
                rep.text(text.trim_end());
            }
            Format::Json => rep.text(&to_line(s)),
        },
    }
    Ok(())
}

fn as_brouwerian(path: &Path, s: Structure) -> Result<BrouwerianAlgebra, CliError> {
    match s {
        Structure::Brouwerian(b) => Ok(b),
        Structure::ResiduatedLattice { algebra, point } => {
            let b = BrouwerianAlgebra::from_lattice(algebra.base.poset.clone(), point)?;
            if b.lattice.mul != algebra.base.mul {
                return Err(CliError::Input(format!(
                    "{}: the multiplication is not the meet, so this is not a Brouwerian algebra",
                    path.display()
                )));
            }
            Ok(b)
        }
        other => Err(CliError::wrong_kind(path, &other, "brouwerian algebra")),
    }
}

fn execute(cmd: Command, rep: &mut Reporter<'_>) -> Result<(), CliError> {
    match cmd {
        Command::Check { file, level } => {
            let s = load_unchecked(&file)?;
            let reports = check(&s, level.as_deref()).map_err(|e| CliError::Input(e.to_string()))?;
            for r in &reports {
                rep.report(None, r);
            }
        }
        Command::Construct {
            construction,
            file,
            output,
        } => {
            let s = load(&file)?;
            let built = match (construction, s) {
                (Construction::Nagata | Construction::RestrictedNagata, Structure::Bimodule(m)) => {
                    let restricted = construction == Construction::RestrictedNagata;
                    Structure::Nagata {
                        structure: nagata_structure(&m, restricted)?,
                        restricted,
                    }
                }
                (Construction::Twist, Structure::TwistablePair(t)) => Structure::Nagata {
                    structure: twist_product(&t)?,
                    restricted: false,
                },
                (Construction::RestrictedTwist, Structure::TwistablePair(t)) => Structure::Nagata {
                    structure: restricted_twist_product(&t)?,
                    restricted: true,
                },
                (Construction::Fractions, s) => {
                    let b = as_brouwerian(&file, s)?;
                    Structure::Bimonoid(fractions_algebra(&b)?.bimonoid)
                }
                (Construction::Nagata | Construction::RestrictedNagata, other) => {
                    return Err(CliError::wrong_kind(&file, &other, "bimodule"))
                }
                (_, other) => return Err(CliError::wrong_kind(&file, &other, "twistable pair")),
            };
            emit(rep, &built, output.as_deref())?;
        }
        Command::Untwist { file, output } => match load(&file)? {
            Structure::Nagata { structure, .. } => {
                let u = untwist(&structure)?;
                emit(rep, &Structure::TwistablePair(u.pair), output.as_deref())?;
            }
            other => return Err(CliError::wrong_kind(&file, &other, "nagata structure")),
        },
        Command::Verify { property, file } => {
            let s = load(&file)?;
            match (property, s) {
                (Property::Adjunction, Structure::Bimodule(m)) => {
                    let restricted = m.point.is_some();
                    let n = nagata_structure(&m, restricted)?;
                    let u = unit_map(&n, restricted)?;
                    rep.report(None, &check_unit_map(&n, &u));
                    rep.report(None, &check_triangle_identities(&m, restricted)?);
                }
                (Property::Equivalence, Structure::Nagata { structure, restricted }) => {
                    rep.report(
                        None,
                        &check_bilattice_sesquilattice(&structure, LatticeVariant::Sesquilattice)?,
                    );
                    rep.report(None, &check_unit_surjectivity(&structure, restricted));
                }
                (Property::Roundtrip, Structure::TwistablePair(t)) => {
                    rep.report(None, &check_twist_round_trip(&t)?);
                }
                (Property::Adjunction, other) => return Err(CliError::wrong_kind(&file, &other, "bimodule")),
                (Property::Equivalence, other) => return Err(CliError::wrong_kind(&file, &other, "nagata structure")),
                (Property::Roundtrip, other) => return Err(CliError::wrong_kind(&file, &other, "twistable pair")),
            }
        }
        Command::Enumerate {
            kind,
            max_size,
            up_to_iso,
        } => enumerate(rep, kind, max_size, up_to_iso)?,
        Command::Random {
            kind,
            size,
            module_size,
            seed,
            output,
        } => {
            let s = random_structure(kind, size, module_size, seed).map_err(|e| CliError::Input(e.to_string()))?;
            emit(rep, &s, output.as_deref())?;
        }
        Command::Suite {
            battery: Battery::Corpus,
        } => {
            for c in run_all() {
                for o in &c.outcomes {
                    rep.report(Some(&format!("{}/{}", c.number, o.subject)), &o.report);
                }
                let summary = if c.passed() {
                    CheckReport::pass(
                        &format!("criterion.{}", c.number),
                        format!("{} ({} checks)", c.title, c.outcomes.len()),
                    )
                } else {
                    CheckReport::fail(
                        &format!("criterion.{}", c.number),
                        &[("failures", c.failures().count())],
                        c.title,
                    )
                };
                rep.report(None, &summary);
            }
        }
    }
    Ok(())
}

/// The enumeration bound, overridable through `NAGATA_MAX_SIZE`.
pub fn enumeration_bound() -> Result<usize, String> {
    match std::env::var("NAGATA_MAX_SIZE") {
        Ok(v) => v
            .parse()
            .map_err(|_| format!("NAGATA_MAX_SIZE must be a number, found `{v}`")),
        Err(_) => Ok(SINGLE_SORTED_BOUND),
    }
}

fn enumerate(rep: &mut Reporter<'_>, kind: EnumKind, max_size: usize, up_to_iso: bool) -> Result<(), CliError> {
    check_bound(max_size, enumeration_bound().map_err(CliError::Input)?)?;
    for n in 1..=max_size {
        let found: Vec<Structure> = match kind {
            EnumKind::Poset => posets(n, up_to_iso).into_iter().map(Structure::Poset).collect(),
            EnumKind::Lattice => lattices(n, up_to_iso).into_iter().map(Structure::Poset).collect(),
            EnumKind::DistributiveLattice => distributive_lattices(n, up_to_iso)
                .into_iter()
                .map(Structure::Poset)
                .collect(),
            EnumKind::Brouwerian => boolean_pointed_brouwerian(n, up_to_iso)
                .into_iter()
                .map(Structure::Brouwerian)
                .collect(),
            EnumKind::ResiduatedChain => commutative_residuated_chains(n)
                .into_iter()
                .map(|algebra| Structure::ResiduatedLattice { algebra, point: None })
                .collect(),
        };
        match rep.format {
            Format::Text => rep.text(&format!("size {n}: {}", found.len())),
            Format::Json => {
                for s in &found {
                    rep.text(&to_line(s));
                }
            }
        }
    }
    Ok(())
}
