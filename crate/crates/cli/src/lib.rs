//! Front end for `skh`: input handling, the fixture corpus, and the
//! verification suites behind `skh verify`.

pub mod manifest;
pub mod report;

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use skh_core::diagram::{parse_pd, BraidWord, SingularDiagram};
use skh_core::homology::{khovanov_homology, les_check, BettiTable};
use skh_core::polynomial::{euler_characteristic, jones_state_sum, vassiliev_derivative};
use thiserror::Error;

pub use manifest::{parse_manifest, Entry, Manifest, ManifestError, Move};
pub use report::{Check, InputEcho, Report, Witness};

/// Default cap on crossings, counting double points.
pub const DEFAULT_MAX_CROSSINGS: usize = 16;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{context}: {source}")]
    Core {
        context: String,
        source: skh_core::Error,
    },
    #[error(transparent)]
    Manifest(#[from] ManifestError),
}

impl CliError {
    fn core(context: impl Into<String>) -> impl FnOnce(skh_core::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Core { context, source }
    }

    /// 2 for a broken internal invariant, 1 for anything the user can fix.
    pub fn exit_code(&self) -> i32 {
        use skh_core::Error as E;
        match self {
            CliError::Core { source, .. } => match source {
                E::Syntax { .. } | E::Validation(_) | E::Domain(_) | E::TooLarge(_) => 1,
                E::FaceCommutation { .. }
                | E::ComplexInvalid(_)
                | E::NotAChainMap(_)
                | E::InconsistentBasis(..)
                | E::Shape(_) => 2,
            },
            CliError::Input(_) | CliError::Manifest(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Reads `arg` as a file if one exists at that path, otherwise as inline PD.
pub fn load_diagram(arg: &str) -> CliResult<(String, SingularDiagram)> {
    let path = Path::new(arg);
    let (name, text) = if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{arg}: {e}")))?;
        let name = path.file_stem().map_or(arg.to_string(), |s| s.to_string_lossy().into_owned());
        (name, text)
    } else {
        ("inline".to_string(), arg.to_string())
    };
    let d = parse_pd(&text).map_err(CliError::core(format!("parsing {name}")))?;
    Ok((name, d))
}

pub fn guard(name: &str, d: &SingularDiagram, max_crossings: usize) -> CliResult<()> {
    if d.crossing_count() > max_crossings {
        return Err(CliError::Input(format!(
            "{name}: {} crossings exceed --max-crossings {max_crossings}",
            d.crossing_count()
        )));
    }
    Ok(())
}

/// The Jones-side value: `Ṽ(D)` for ordinary diagrams, `Ṽ^{(r)}(D)` otherwise.
fn jones_side(name: &str, d: &SingularDiagram) -> CliResult<(&'static str, skh_core::LaurentPoly)> {
    if d.is_singular() {
        Ok(("vassiliev derivative", vassiliev_derivative(d).map_err(CliError::core(name))?))
    } else {
        Ok(("jones (state sum)", jones_state_sum(d).map_err(CliError::core(name))?))
    }
}

pub fn cmd_compute(arg: &str, max_crossings: usize) -> CliResult<Report> {
    let (name, d) = load_diagram(arg)?;
    guard(&name, &d, max_crossings)?;
    let mut report = Report::new("compute");
    report.inputs.push(InputEcho::new(&name, &d));
    let table = khovanov_homology(&d).map_err(CliError::core(&name))?;
    let chi = euler_characteristic(&table);
    report.polynomial("euler characteristic", &chi);
    if d.is_singular() {
        let (label, v) = jones_side(&name, &d)?;
        report.polynomial(label, &v);
        report.check(Check::equal("euler characteristic = vassiliev derivative", &chi, &v));
    }
    report.set_table(table);
    Ok(report)
}

pub fn cmd_jones(arg: &str, both: bool, max_crossings: usize) -> CliResult<Report> {
    let (name, d) = load_diagram(arg)?;
    guard(&name, &d, max_crossings)?;
    let mut report = Report::new(if both { "jones --both" } else { "jones" });
    report.inputs.push(InputEcho::new(&name, &d));
    let (label, v) = jones_side(&name, &d)?;
    report.polynomial(label, &v);
    if both {
        let chi = euler_characteristic(&khovanov_homology(&d).map_err(CliError::core(&name))?);
        report.polynomial("euler characteristic", &chi);
        report.check(Check::equal(format!("euler characteristic = {label}"), &chi, &v));
    }
    Ok(report)
}

pub fn cmd_braid(word: &str) -> CliResult<String> {
    let w = BraidWord::parse(word).map_err(CliError::core("parsing braid word"))?;
    let d = w.closure().map_err(CliError::core("closing braid"))?;
    Ok(format!("# braid {w}\n{}\n", d.to_pd()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Invariance,
    Les,
    Fi,
    Conventions,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Invariance => "invariance",
            Suite::Les => "les",
            Suite::Fi => "fi",
            Suite::Conventions => "conventions",
            Suite::All => "all",
        }
    }
}

/// Fixture diagrams in manifest order.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub dir: PathBuf,
    pub manifest: Manifest,
    pub diagrams: Vec<(Entry, SingularDiagram)>,
}

/// The corpus shipped with the crate.
pub fn default_fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn load_corpus(dir: &Path) -> CliResult<Corpus> {
    let mpath = dir.join("manifest.txt");
    let text = fs::read_to_string(&mpath).map_err(|e| CliError::Input(format!("{}: {e}", mpath.display())))?;
    let manifest = parse_manifest(&text)?;
    let diagrams = manifest
        .entries
        .iter()
        .map(|e| {
            let path = dir.join(&e.file);
            let text = fs::read_to_string(&path).map_err(|err| CliError::Input(format!("{}: {err}", path.display())))?;
            let d = parse_pd(&text).map_err(CliError::core(format!("parsing {}", e.file)))?;
            Ok((e.clone(), d))
        })
        .collect::<CliResult<_>>()?;
    Ok(Corpus {
        dir: dir.to_path_buf(),
        manifest,
        diagrams,
    })
}

impl Corpus {
    pub fn diagram(&self, name: &str) -> Option<&SingularDiagram> {
        self.diagrams.iter().find(|(e, _)| e.name == name).map(|(_, d)| d)
    }
}

pub fn cmd_verify(suite: Suite, corpus: &Corpus, max_crossings: usize) -> CliResult<Report> {
    let mut report = Report::new(format!("verify {}", suite.name()));
    for (e, d) in &corpus.diagrams {
        guard(&e.name, d, max_crossings)?;
    }
    let tables: Vec<BettiTable> = corpus
        .diagrams
        .par_iter()
        .map(|(e, d)| khovanov_homology(d).map_err(CliError::core(&e.name)))
        .collect::<CliResult<_>>()?;
    let table_of = |name: &str| corpus.diagrams.iter().position(|(e, _)| e.name == name).map(|k| &tables[k]);

    let run = |s: Suite| suite == s || suite == Suite::All;
    let mut checks = Vec::new();
    if run(Suite::Conventions) {
        checks.extend(conventions(corpus, &tables)?);
    }
    if run(Suite::Invariance) {
        let mut covered = std::collections::BTreeSet::new();
        for (a, b, m) in corpus.manifest.pairs() {
            covered.insert(m);
            let (ta, tb) = (table_of(&a.name).unwrap(), table_of(&b.name).unwrap());
            checks.push(Check::tables(format!("invariance {m}: {} ~ {}", a.name, b.name), ta, tb));
        }
        let missing: Vec<String> = Move::ALL.iter().filter(|m| !covered.contains(m)).map(|m| m.to_string()).collect();
        checks.push(Check::equal("invariance: every move has a pair", missing.join(","), ""));
    }
    if run(Suite::Les) {
        checks.extend(les(corpus)?);
    }
    if run(Suite::Fi) {
        checks.extend(fi(corpus, &tables)?);
    }
    for c in checks {
        report.check(c);
    }
    Ok(report)
}

fn conventions(corpus: &Corpus, tables: &[BettiTable]) -> CliResult<Vec<Check>> {
    corpus
        .diagrams
        .par_iter()
        .zip(tables)
        .map(|((e, d), t)| {
            let (label, v) = jones_side(&e.name, d)?;
            Ok(Check::equal(format!("conventions {}: euler = {label}", e.name), euler_characteristic(t), v))
        })
        .collect()
}

fn les(corpus: &Corpus) -> CliResult<Vec<Check>> {
    let jobs: Vec<(&Entry, &SingularDiagram, usize)> = corpus
        .diagrams
        .iter()
        .flat_map(|(e, d)| d.double_points().into_iter().map(move |b| (e, d, b)))
        .collect();
    jobs.into_par_iter()
        .map(|(e, d, b)| {
            let name = format!("les {} at crossing {b}", e.name);
            let rep = les_check(d, b).map_err(CliError::core(&name))?;
            Ok(if let Some(row) = rep.first_failure() {
                Check::fail(
                    name,
                    Witness {
                        bidegree: Some(row.bidegree),
                        left: format!("dim Kh = {}", row.kh),
                        right: format!("coker + ker = {} + {}", row.coker, row.ker_next),
                    },
                )
            } else {
                Check::equal(format!("{name} (euler)"), &rep.euler.0, &rep.euler.1)
            })
        })
        .collect()
}

fn fi(corpus: &Corpus, tables: &[BettiTable]) -> CliResult<Vec<Check>> {
    let mut checks = Vec::new();
    for ((e, d), t) in corpus.diagrams.iter().zip(tables) {
        if !d.has_fi_double_point() {
            continue;
        }
        checks.push(Check::tables(format!("fi {}: Kh vanishes", e.name), t, &BettiTable::new()));
        for b in d.double_points().into_iter().filter(|&b| d.is_fi_double_point(b)) {
            let name = format!("fi {}: genus-one map at crossing {b} is a quasi-isomorphism", e.name);
            let rep = les_check(d, b).map_err(CliError::core(&name))?;
            let iso = rep.induced.is_isomorphism();
            checks.push(if iso {
                Check::pass(name)
            } else {
                let bd = rep.induced.source.first_difference(&rep.induced.target).map(|x| x.0);
                Check::fail(
                    name,
                    Witness {
                        bidegree: bd,
                        left: format!("total rank {}", rep.induced.source.total_rank()),
                        right: format!("total rank {}", rep.induced.target.total_rank()),
                    },
                )
            });
        }
    }
    if checks.is_empty() {
        checks.push(Check::equal("fi: corpus has an FI fixture", "none", "some"));
    }
    Ok(checks)
}
