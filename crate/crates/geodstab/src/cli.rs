//! Argument grammar and dispatch for the `geodstab` binary.
//!
//! Exit codes: 0 on success, 1 on a usage error, 2 when the inputs parse
//! but the data is rejected (invalid weights, catalog errors, a failing
//! validation run, an unknown catalog name).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use geodstab_core::branching::{decompose, ReductiveWeight};
use geodstab_core::lagrangian::{index_lower_bound, lagrangian_verdict, Comparison, LagrangianInputs, RicciSign};
use geodstab_core::reps::{casimir, dimension, enumerate_dominant, weight_system};
use geodstab_core::rootsys::{parse_type, RootDatum, Weight};
use geodstab_core::stability::analyze;
use geodstab_core::Q;

use crate::catalog::{validate, Catalog, WeightRecord};
use crate::output::{Component, EntrySummary, ModuleCasimir, Output, WeightMultiplicity};
use crate::rational::{parse_q, Rational};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "geodstab", version, about = "Stability of totally geodesic submanifolds via Casimir comparison")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Text)]
    pub output: OutputMode,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    Text,
    Structured,
}

#[derive(Debug, Args)]
pub struct TypeAndLabels {
    /// Algebra type such as G2, B3, E8.
    pub algebra: String,
    /// Dynkin labels in Bourbaki order.
    #[arg(required = true, allow_negative_numbers = true)]
    pub labels: Vec<i64>,
}

#[derive(Debug, Args)]
pub struct CatalogArg {
    /// Catalog file; the bundled catalog is used when absent.
    #[arg(long, env = "GEODSTAB_CATALOG")]
    pub catalog: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Casimir eigenvalue of an irreducible module.
    Casimir {
        #[command(flatten)]
        module: TypeAndLabels,
        /// Multiplier of the invariant form, as an integer or p/q.
        #[arg(long, default_value = "1")]
        scale: String,
    },
    /// Dimension of an irreducible module.
    Dim {
        #[command(flatten)]
        module: TypeAndLabels,
    },
    /// All weights of an irreducible module with multiplicities.
    Weights {
        #[command(flatten)]
        module: TypeAndLabels,
    },
    /// Dominant weights with Casimir eigenvalue at most a bound.
    Enumerate {
        algebra: String,
        #[arg(long)]
        max_casimir: String,
        #[arg(long, default_value = "1")]
        scale: String,
    },
    /// Decomposes a module of an embedding's source into target modules.
    Branch {
        #[command(flatten)]
        catalog: CatalogArg,
        #[arg(long)]
        embedding: String,
        /// Source coordinates: labels of each simple factor, then charges (p/q allowed).
        #[arg(required = true, allow_hyphen_values = true)]
        coords: Vec<String>,
    },
    /// Full stability report of a catalog entry.
    Stability {
        #[command(flatten)]
        catalog: CatalogArg,
        #[arg(long)]
        entry: String,
    },
    /// Index, nullity and Killing nullity of a catalog entry.
    Index {
        #[command(flatten)]
        catalog: CatalogArg,
        #[arg(long)]
        entry: String,
    },
    /// Curvature rules for minimal totally real submanifolds.
    Lagrangian {
        /// Sign of the Ricci curvature of the submanifold.
        #[arg(long, value_enum)]
        ricci: RicciArg,
        /// First Betti number of the submanifold.
        #[arg(long)]
        betti1: u64,
        /// The submanifold carries a nonzero Killing field.
        #[arg(long)]
        killing: bool,
        /// Restricted ambient curvature term against the Ricci tensor R^N.
        #[arg(long, value_enum, default_value_t = CompareArg::Unknown)]
        compare: CompareArg,
        /// Stability of the identity map as a harmonic map.
        #[arg(long)]
        identity_stable: Option<bool>,
    },
    /// Catalog inspection.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    /// Names of embeddings, entries and groupings.
    List {
        #[command(flatten)]
        catalog: CatalogArg,
    },
    /// Checks every machine-checked entry and grouping; exits 2 on failure.
    Validate {
        #[command(flatten)]
        catalog: CatalogArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RicciArg {
    Pos,
    Nonpos,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CompareArg {
    #[value(name = "le-rn")]
    LeRn,
    #[value(name = "le-2rn")]
    Le2Rn,
    #[value(name = "gt-2rn")]
    Gt2Rn,
    Unknown,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Data(String),
}

fn data<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Data(e.to_string())
}

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

/// Parses `args` (including the program name), runs the command and writes
/// the result to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let mode = cli.output;
    match execute(cli.command) {
        Ok((output, code)) => {
            let text = match mode {
                OutputMode::Text => output.to_text(),
                OutputMode::Structured => output.to_json() + "\n",
            };
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_DATA;
            }
            code
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Data(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_DATA
        }
    }
}

fn datum(name: &str) -> Result<RootDatum, Failure> {
    let (family, rank) = parse_type(name).map_err(usage)?;
    RootDatum::new(family, rank).map_err(usage)
}

fn rational(s: &str) -> Result<Q, Failure> {
    parse_q(s).map_err(usage)
}

fn load_catalog(arg: &CatalogArg) -> Result<Catalog, Failure> {
    match &arg.catalog {
        Some(path) => Catalog::load(path).map_err(data),
        None => Ok(Catalog::bundled()),
    }
}

fn execute(command: Command) -> Result<(Output, i32), Failure> {
    let ok = |o| Ok((o, EXIT_OK));
    match command {
        Command::Casimir { module, scale } => {
            let d = datum(&module.algebra)?;
            let s = rational(&scale)?;
            let c = casimir(&d, &Weight(module.labels.clone()), s).map_err(data)?;
            ok(Output::Casimir {
                algebra: d.name(),
                labels: module.labels,
                scale: Rational(s),
                casimir: Rational(c.0),
            })
        }
        Command::Dim { module } => {
            let d = datum(&module.algebra)?;
            let n = dimension(&d, &Weight(module.labels.clone())).map_err(data)?;
            ok(Output::Dim {
                algebra: d.name(),
                labels: module.labels,
                dimension: n,
            })
        }
        Command::Weights { module } => {
            let d = datum(&module.algebra)?;
            let ws = weight_system(&d, &Weight(module.labels.clone())).map_err(data)?;
            let mut weights: Vec<WeightMultiplicity> = ws
                .entries
                .iter()
                .map(|(w, m)| WeightMultiplicity {
                    labels: w.0.clone(),
                    multiplicity: *m,
                })
                .collect();
            let h = d.rho_pairing().to_vec();
            let height = |l: &[i64]| -> Q { l.iter().zip(&h).map(|(a, b)| Q::from(*a as i128) * b).sum() };
            weights.sort_by(|a, b| height(&b.labels).cmp(&height(&a.labels)).then(b.labels.cmp(&a.labels)));
            ok(Output::Weights {
                algebra: d.name(),
                highest: module.labels,
                dimension: ws.total_multiplicity(),
                weights,
            })
        }
        Command::Enumerate {
            algebra,
            max_casimir,
            scale,
        } => {
            let d = datum(&algebra)?;
            let bound = rational(&max_casimir)?;
            let s = rational(&scale)?;
            if s <= Q::from(0) {
                return Err(Failure::Usage("--scale must be positive".into()));
            }
            let modules = enumerate_dominant(&d, bound, s)
                .into_iter()
                .map(|(w, c)| {
                    let n = dimension(&d, &w).map_err(data)?;
                    Ok(ModuleCasimir {
                        labels: w.0,
                        casimir: Rational(c.0),
                        dimension: n,
                    })
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            ok(Output::Enumerate {
                algebra: d.name(),
                max_casimir: Rational(bound),
                scale: Rational(s),
                modules,
            })
        }
        Command::Branch {
            catalog,
            embedding,
            coords,
        } => {
            let cat = load_catalog(&catalog)?;
            let e = cat
                .embedding(&embedding)
                .ok_or_else(|| Failure::Data(format!("no embedding named `{embedding}`")))?;
            let qs = coords.iter().map(|c| rational(c)).collect::<Result<Vec<_>, _>>()?;
            let lambda: ReductiveWeight = e.source.from_coords(&qs).ok_or_else(|| {
                Failure::Data(format!(
                    "`{embedding}` takes {} coordinates with integral labels on {}",
                    e.source.total_rank(),
                    e.source.name()
                ))
            })?;
            let dim = e.source.dimension_of(&lambda).map_err(data)?;
            let components = decompose(e, &lambda)
                .map_err(data)?
                .into_iter()
                .map(|(w, m)| {
                    let n = e.target.dimension_of(&w).map_err(data)?;
                    Ok(Component {
                        module: WeightRecord::from(&w),
                        multiplicity: m,
                        dimension: n,
                    })
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            ok(Output::Branch {
                embedding,
                module: WeightRecord::from(&lambda),
                dimension: dim,
                components,
            })
        }
        Command::Stability { catalog, entry } => {
            let cat = load_catalog(&catalog)?;
            let report = analyze(entry_spec(&cat, &entry)?).map_err(data)?;
            ok(Output::stability(&entry, &report))
        }
        Command::Index { catalog, entry } => {
            let cat = load_catalog(&catalog)?;
            let report = analyze(entry_spec(&cat, &entry)?).map_err(data)?;
            ok(Output::Index {
                entry,
                index: report.index,
                nullity: report.nullity,
                killing_nullity: report.killing_nullity,
            })
        }
        Command::Lagrangian {
            ricci,
            betti1,
            killing,
            compare,
            identity_stable,
        } => {
            let inputs = LagrangianInputs {
                ricci: match ricci {
                    RicciArg::Pos => RicciSign::Positive,
                    RicciArg::Nonpos => RicciSign::Nonpositive,
                    RicciArg::Unknown => RicciSign::Unknown,
                },
                betti1,
                has_killing_field: killing,
                comparison: match compare {
                    CompareArg::LeRn => Comparison::LeRn,
                    CompareArg::Le2Rn => Comparison::Le2Rn,
                    CompareArg::Gt2Rn => Comparison::Gt2Rn,
                    CompareArg::Unknown => Comparison::Unknown,
                },
                identity_map_stable: identity_stable,
            };
            let report = lagrangian_verdict(&inputs).map_err(data)?;
            ok(Output::Lagrangian {
                verdict: report.verdict.as_str().to_string(),
                rules: report.fired.iter().map(|r| r.to_string()).collect(),
                index_lower_bound: index_lower_bound(betti1),
            })
        }
        Command::Catalog { action } => match action {
            CatalogAction::List { catalog } => {
                let cat = load_catalog(&catalog)?;
                ok(Output::CatalogList {
                    entries: cat
                        .entries()
                        .iter()
                        .map(|e| EntrySummary {
                            name: e.name.clone(),
                            expected_verdict: geodstab_core::Verdict::from(e.expected_verdict).to_string(),
                            machine_checked: e.machine_checked,
                            kn_embedding: e.kn_embedding.clone(),
                            description: e.description.clone(),
                        })
                        .collect(),
                })
            }
            CatalogAction::Validate { catalog } => {
                let cat = load_catalog(&catalog)?;
                let report = validate(&cat);
                let passed = report.all_passed();
                Ok((
                    Output::CatalogValidate {
                        passed,
                        checks: report.checks,
                        unchecked: report.unchecked,
                    },
                    if passed { EXIT_OK } else { EXIT_DATA },
                ))
            }
        },
    }
}

fn entry_spec<'a>(cat: &'a Catalog, name: &str) -> Result<&'a geodstab_core::SubmanifoldSpec, Failure> {
    if let Some(spec) = cat.spec(name) {
        return Ok(spec);
    }
    match cat.entry(name) {
        Some(_) => Err(Failure::Data(format!(
            "entry `{name}` is a verdict-only record with no normal data to analyze"
        ))),
        None => Err(Failure::Data(format!("no entry named `{name}`"))),
    }
}
