mod exit;
mod family_spec;
mod render;
mod survey;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gdl_core::catalog::{self, Catalog};
use gdl_core::search::{certify_nonexistence, search_with, SearchOptions};
use gdl_core::{plan_and_construct, verify_gdl, GdlError, Labeling, MagnitudeProfile, SearchBudget};
use serde::Serialize;

use family_spec::FamilySpec;

#[derive(Parser)]
#[command(name = "gdl", version, about = "Graceful difference labelings of disjoint unions of directed circuits")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit a human-readable rendering instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    /// Wall-clock limit per search, in seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    budget_seconds: Option<f64>,
    /// Node limit per search.
    #[arg(long, global = true, value_name = "NODES")]
    budget_nodes: Option<u64>,
    /// Return the lexicographically smallest labeling the search reaches.
    #[arg(long, global = true)]
    canonical: bool,
    /// Base-case catalog file; regenerated there if missing or invalid.
    #[arg(long, global = true, env = catalog::CATALOG_ENV, value_name = "PATH")]
    catalog_path: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a gdl for a family, e.g. `3,3,4` or `2*C3+C4`.
    Construct {
        family: FamilySpec,
        /// Search when no construction covers the family.
        #[arg(long)]
        search: bool,
    },
    /// Check a labeling given as JSON (`{"circuits": [..], "labels": [..]}`
    /// or a certificate). Reads stdin when FILE is `-` or absent.
    Verify { file: Option<PathBuf> },
    /// Backtracking search for a gdl.
    Search {
        family: FamilySpec,
        /// Exhaust the space with no budget (refused above 12 vertices
        /// unless --allow-large).
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, requires = "exhaustive")]
        allow_large: bool,
        /// Forbid magnitudes above this value.
        #[arg(long, value_name = "M")]
        max_magnitude: Option<u64>,
        /// Arcs allowed at the maximum magnitude.
        #[arg(long, value_name = "COUNT", requires = "max_magnitude", default_value_t = 1)]
        max_count: usize,
        /// Disable the rotation and equal-length symmetry reductions.
        #[arg(long)]
        no_symmetry: bool,
    },
    /// Manage the base-case catalog.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Classify every family up to a vertex count.
    Survey {
        #[arg(long, value_name = "N")]
        max_vertices: usize,
        /// Also write the JSON report here.
        #[arg(long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Regenerate the catalog by canonical search and write it.
    Generate {
        /// Defaults to --catalog-path.
        output: Option<PathBuf>,
    },
    /// Load and re-verify a catalog file (or the bundled one).
    Check,
    /// Print the active catalog.
    Show,
}

struct Failure(String);

impl From<GdlError> for Failure {
    fn from(e: GdlError) -> Self {
        Failure(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure(format!("invalid JSON: {e}"))
    }
}

impl Common {
    fn budget(&self) -> SearchBudget {
        let defaults = SearchBudget::default();
        let mut b = SearchBudget::new(
            self.budget_nodes.or(defaults.max_nodes),
            self.budget_seconds.or(defaults.max_seconds),
        );
        b.canonical = self.canonical;
        b
    }

    fn emit<T: Serialize>(&self, value: &T, text: impl FnOnce() -> String) -> Result<(), Failure> {
        if self.text {
            print!("{}", text());
        } else {
            println!("{}", serde_json::to_string_pretty(value)?);
        }
        Ok(())
    }

    fn install_catalog(&self) -> Result<(), Failure> {
        if let Some(path) = &self.catalog_path {
            catalog::install(Catalog::load_or_generate(path)?)?;
        }
        Ok(())
    }
}

fn read_input(file: Option<&Path>) -> Result<String, Failure> {
    let mut s = String::new();
    match file {
        Some(p) if p != Path::new("-") => {
            s = std::fs::read_to_string(p).map_err(|e| Failure(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut s)?;
        }
    }
    Ok(s)
}

/// Accepts a bare labeling or any document with a `labeling` field.
fn parse_labeling(s: &str) -> Result<Labeling, Failure> {
    let mut v: serde_json::Value = serde_json::from_str(s)?;
    if let Some(inner) = v.get_mut("labeling") {
        v = inner.take();
    }
    Ok(serde_json::from_value(v)?)
}

fn run(cli: Cli) -> Result<i32, Failure> {
    let common = &cli.common;
    match cli.command {
        Command::Construct { family, search } => {
            common.install_catalog()?;
            let budget = common.budget();
            let cert = plan_and_construct(&family.family, search.then_some(&budget))?;
            common.emit(&cert, || render::certificate(&cert))?;
            Ok(exit::for_certificate(&cert))
        }
        Command::Verify { file } => {
            let labeling = parse_labeling(&read_input(file.as_deref())?)?;
            let report = verify_gdl(&labeling);
            common.emit(&report, || render::report(&labeling, &report))?;
            Ok(if report.is_gdl { exit::OK } else { exit::NO_GDL })
        }
        Command::Search {
            family,
            exhaustive,
            allow_large,
            max_magnitude,
            max_count,
            no_symmetry,
        } => {
            let profile = max_magnitude.map(|m| MagnitudeProfile {
                max_magnitude: m,
                max_count_at_max: max_count,
            });
            let cert = if exhaustive && profile.is_none() && !no_symmetry && !common.canonical {
                certify_nonexistence(&family.family, allow_large)?
            } else {
                let budget = if exhaustive {
                    let b = SearchBudget::unlimited().with_canonical(common.canonical);
                    if !allow_large {
                        b.check_for(&family.family)?;
                    }
                    b
                } else {
                    common.budget()
                };
                let opts = SearchOptions::new(budget)
                    .profile(profile)
                    .symmetry_breaking(!no_symmetry);
                search_with(&family.family, &opts)
            };
            common.emit(&cert, || render::certificate(&cert))?;
            Ok(exit::for_certificate(&cert))
        }
        Command::Catalog { action } => match action {
            CatalogAction::Generate { output } => {
                let path = output
                    .or_else(|| common.catalog_path.clone())
                    .ok_or_else(|| Failure("no output path: pass one or set --catalog-path".into()))?;
                let entries = catalog::generate_catalog(&path)?;
                common.emit(&entries, || {
                    format!("wrote {} entries to {}\n", entries.len(), path.display())
                })?;
                Ok(exit::OK)
            }
            CatalogAction::Check => {
                let c = match &common.catalog_path {
                    Some(p) => Catalog::load(p)?,
                    None => Catalog::from_json(catalog::BUNDLED)?,
                };
                common.emit(&c.entries(), || {
                    format!("{} entries verified\n", c.entries().len())
                })?;
                Ok(exit::OK)
            }
            CatalogAction::Show => {
                common.install_catalog()?;
                let c = catalog::active();
                common.emit(&c.entries(), || {
                    c.entries()
                        .iter()
                        .map(|e| format!("{} {:?} {:?}\n", e.family, e.profile, e.labels))
                        .collect()
                })?;
                Ok(exit::OK)
            }
        },
        Command::Survey {
            max_vertices,
            output,
        } => {
            if max_vertices < 2 {
                return Err(Failure("--max-vertices must be at least 2".into()));
            }
            common.install_catalog()?;
            let report = survey::run_survey(max_vertices, &common.budget())?;
            if let Some(path) = &output {
                std::fs::write(path, serde_json::to_string_pretty(&report)? + "\n")?;
            }
            common.emit(&report, || render::survey(&report))?;
            if report.summary.conjecture_falsified {
                eprintln!(
                    "warning: families without a gdl beyond the known exceptions: {:?}",
                    report.summary.counterexamples
                );
                return Ok(exit::NO_GDL);
            }
            Ok(exit::OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE as u8 } else { 0 });
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            exit::USAGE
        }
    };
    ExitCode::from(code as u8)
}
