//! The `jordan` command line.
//!
//! Exit codes: 0 success, 1 a failed expectation (`iso --expect`, a failed
//! `catalog verify`), 2 bad input, 3 a resource limit.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::algebra::Algebra;
use crate::catalog::{catalog, catalog_cases, catalog_verify, CatalogCase};
use crate::classify::{brute_force_classes, classify_dim, ClassificationResult};
use crate::cohomology::{Cohomology, FormSpace};
use crate::error::JordanError;
use crate::extension::{central_extension, CocycleVector};
use crate::field::FieldSpec;
use crate::format::{parse_algebra_file, render_algebra_file};
use crate::groebner::{buchberger, contains_one, parse_system, GbLimits};
use crate::isotest::{decide_with_limits, DecideMode, IsoVerdict};
use crate::orbits::orbit_representatives;

#[derive(Parser, Debug)]
#[command(name = "jordan", about = "Nilpotent Jordan algebras: invariants, extensions, orbits, isomorphism")]
pub struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel verbs.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Jordan identity and nilpotency.
    Check { file: PathBuf },
    /// Centre, powers, lower central series, associativity.
    Invariants { file: PathBuf },
    /// Bases of Z^2, B^2 and a complement H^2.
    Cocycles { file: PathBuf },
    /// Central extension by a tuple of cocycles, written as an algebra file.
    Extend {
        file: PathBuf,
        /// Components separated by `;`, e.g. "S(1,1)+S(2,2); S(2,1)".
        #[arg(long)]
        theta: String,
    },
    /// Aut-orbits on allowable r-dimensional subspaces of H^2.
    Orbits {
        file: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// Decide isomorphism.
    Iso {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Base)]
        mode: Mode,
        /// Exit 0 if the verdict matches, 1 otherwise.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Reduced Groebner basis of a generator file.
    Gb { file: PathBuf },
    /// Classify by central extensions over a prime field.
    Classify {
        #[arg(long)]
        dim: usize,
        /// `F:p`.
        #[arg(long)]
        field: String,
    },
    /// Classify by enumerating every table.
    Oracle {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        field: String,
    },
    /// Stored tables.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    /// Check entries and certify pairs distinct.
    Verify {
        #[arg(long)]
        case: String,
        #[arg(long)]
        dim: usize,
    },
    /// Print entries as algebra files.
    Show {
        #[arg(long)]
        case: String,
        #[arg(long)]
        dim: usize,
    },
    /// Write every entry to DIR/<case>/<id>.alg.
    Export { dir: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Closure,
    Base,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expect {
    Iso,
    Noniso,
}

/// Failure of a verb, mapped to an exit code.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Resource(String),
}

impl From<JordanError> for Failure {
    fn from(e: JordanError) -> Self {
        match e {
            JordanError::ResourceExceeded(_) | JordanError::InstanceTooLarge(_) => Failure::Resource(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<(String, i32), Failure>;

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> std::result::Result<Algebra, Failure> {
    parse_algebra_file(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn prime_field(text: &str) -> std::result::Result<FieldSpec, Failure> {
    let f = FieldSpec::parse(text)?;
    if !f.is_prime_field() {
        return Err(Failure::Input(format!("`{text}`: a prime field F:p is required")));
    }
    Ok(f)
}

fn check(a: &Algebra, json: bool) -> String {
    let (jordan, nilpotent, nilindex) = (a.check_jordan(), a.is_nilpotent(), a.nilindex());
    if json {
        return to_json(&json!({ "jordan": jordan, "nilpotent": nilpotent, "nilindex": nilindex }));
    }
    match nilindex {
        Some(k) => format!("Jordan: {}; nilpotent: yes (nilindex {k})\n", yes(jordan)),
        None => format!("Jordan: {}; nilpotent: no\n", yes(jordan)),
    }
}

fn invariants(a: &Algebra, json: bool) -> String {
    let fp = a.fingerprint();
    if json {
        return to_json(&json!({
            "algebra": a,
            "fingerprint": fp,
            "centre": a.centre(),
            "square": a.square(),
            "has_central_component": a.has_central_component(),
        }));
    }
    let dims: Vec<String> = fp.dims_lcs.iter().map(|d| d.to_string()).collect();
    format!(
        "table: {}\ndim: {}\ndim Z(J): {}\ndim J^2: {}\nlower central series dims: ({})\nnilindex: {}\nassociative: {}\ndim Z(J) meet J^2: {}\ncentral component: {}\n",
        a.table(),
        fp.dim,
        fp.dim_centre,
        fp.dim_square,
        dims.join(","),
        fp.nilindex.map_or("none".to_string(), |k| k.to_string()),
        yes(fp.is_associative),
        fp.dim_centre_meet_square,
        yes(a.has_central_component()),
    )
}

fn space_text(name: &str, s: &FormSpace) -> String {
    let basis: Vec<String> = s.basis().iter().map(|b| b.to_string()).collect();
    format!("{name}: dim {}\n{}", s.dim(), basis.iter().map(|b| format!("  {b}\n")).collect::<String>())
}

fn cocycles(a: &Algebra, json: bool) -> String {
    let coh = Cohomology::new(a);
    if json {
        let basis = |s: &FormSpace| s.basis().iter().map(|b| b.to_string()).collect::<Vec<_>>();
        return to_json(&json!({
            "z2": { "dim": coh.cocycles().dim(), "basis": basis(coh.cocycles()) },
            "b2": { "dim": coh.coboundaries().dim(), "basis": basis(coh.coboundaries()) },
            "h2": { "dim": coh.h2_dim(), "basis": basis(coh.h2()) },
        }));
    }
    space_text("Z2", coh.cocycles()) + &space_text("B2", coh.coboundaries()) + &space_text("H2", coh.h2())
}

fn iso(a: &Algebra, b: &Algebra, mode: Mode, expect: Option<Expect>, json: bool) -> Outcome {
    let limits = GbLimits::from_env()?;
    let mode = match mode {
        Mode::Closure => DecideMode::ClosureOnly,
        Mode::Base => DecideMode::BaseFieldFirst,
    };
    let v = decide_with_limits(a, b, mode, &limits);
    let text = if json { to_json(&v) } else { format!("{v}\n") };
    if let IsoVerdict::ResourceExceeded { reason } = &v {
        return Err(Failure::Resource(reason.clone()));
    }
    let code = match expect {
        None => 0,
        Some(Expect::Iso) => i32::from(!matches!(v, IsoVerdict::Isomorphic { .. } | IsoVerdict::IsomorphicOverClosure)),
        Some(Expect::Noniso) => i32::from(!v.is_non_isomorphic()),
    };
    Ok((text, code))
}

fn gb(text: &str, json: bool) -> Outcome {
    let (_, gens) = parse_system(text)?;
    let limits = GbLimits::from_env()?;
    let basis = buchberger(&gens, &limits)?;
    if json {
        return Ok((to_json(&json!({ "basis": basis, "contains_one": contains_one(&basis) })), 0));
    }
    let mut out = format!("reduced basis ({} polynomials):\n", basis.len());
    for g in &basis {
        out.push_str(&format!("  {g}\n"));
    }
    Ok((out, 0))
}

fn classification_text(r: &ClassificationResult, json: bool, title: &str) -> String {
    if json {
        return to_json(r);
    }
    let mut out = String::new();
    for (i, rep) in r.representatives.iter().enumerate() {
        let comments = [format!("{title} {} of {}", i + 1, r.representatives.len()), format!("{}", rep.provenance)];
        let comments: Vec<&str> = comments.iter().map(String::as_str).collect();
        out.push_str(&render_algebra_file(&rep.algebra, &comments));
        out.push('\n');
    }
    out.push_str(&format!("{:<4} {:<6} {:<6} {:<10} {:<6} table\n", "#", "dim Z", "dim J2", "lcs", "assoc"));
    for (i, rep) in r.representatives.iter().enumerate() {
        let fp = &rep.fingerprint;
        let lcs: Vec<String> = fp.dims_lcs.iter().map(|d| d.to_string()).collect();
        out.push_str(&format!(
            "{:<4} {:<6} {:<6} {:<10} {:<6} {}\n",
            i + 1,
            fp.dim_centre,
            fp.dim_square,
            lcs.join(","),
            yes(fp.is_associative),
            rep.algebra.table()
        ));
    }
    out.push_str(&format!("{} classes of dimension {} over {}\n", r.representatives.len(), r.dim, r.field));
    out
}

/// File name of a catalog id, e.g. `J_4_11.alg`.
pub fn file_name(id: &str) -> String {
    let s: String =
        id.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '+' { c } else { '_' }).collect();
    let mut out = String::new();
    for part in s.split('_').filter(|p| !p.is_empty()) {
        if !out.is_empty() {
            out.push('_');
        }
        out.push_str(part);
    }
    out + ".alg"
}

fn catalog_action(action: &CatalogAction, json: bool) -> Outcome {
    match action {
        CatalogAction::Verify { case, dim } => {
            let case = CatalogCase::parse(case)?;
            if !case.dims().contains(dim) {
                return Err(Failure::Input(format!("no {case} catalog in dimension {dim}")));
            }
            let report = catalog_verify(case, *dim, &GbLimits::from_env()?);
            let text = if json { to_json(&report) } else { format!("{report}\n") };
            Ok((text, i32::from(!report.ok())))
        }
        CatalogAction::Show { case, dim } => {
            let case = CatalogCase::parse(case)?;
            let entries = catalog(case, *dim);
            if json {
                return Ok((to_json(&entries), 0));
            }
            let mut out = String::new();
            for e in &entries {
                out.push_str(&render_algebra_file(&e.algebra, &[&e.id, &e.algebra.table()]));
                out.push('\n');
            }
            Ok((out, 0))
        }
        CatalogAction::Export { dir } => {
            let mut written = Vec::new();
            for (case, dim) in catalog_cases() {
                let sub = dir.join(case.name());
                fs::create_dir_all(&sub).map_err(|e| Failure::Input(format!("{}: {e}", sub.display())))?;
                for e in catalog(case, dim) {
                    let path = sub.join(file_name(&e.id));
                    let text = render_algebra_file(&e.algebra, &[&e.id, &e.algebra.table()]);
                    fs::write(&path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    written.push(path.display().to_string());
                }
            }
            let text = if json { to_json(&written) } else { written.iter().map(|w| format!("{w}\n")).collect() };
            Ok((text, 0))
        }
    }
}

fn dispatch(cli: &Cli) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Check { file } => Ok((check(&load(file)?, json), 0)),
        Command::Invariants { file } => Ok((invariants(&load(file)?, json), 0)),
        Command::Cocycles { file } => Ok((cocycles(&load(file)?, json), 0)),
        Command::Extend { file, theta } => {
            let a = load(file)?;
            let theta = CocycleVector::parse(a.field(), a.dim(), theta)?;
            let ext = central_extension(&a, &theta)?;
            if json {
                return Ok((to_json(&json!({ "algebra": ext, "theta": theta })), 0));
            }
            Ok((render_algebra_file(&ext, &[&format!("extension by theta = {theta}")]), 0))
        }
        Command::Orbits { file, r } => {
            let a = load(file)?;
            let report = orbit_representatives(&a, *r)?;
            if json {
                return Ok((to_json(&report), 0));
            }
            let mut out = format!(
                "H2 dim {}; |Aut| {}; {} subspaces of dim {}; {} allowable; {} orbits\n",
                report.h2_dim,
                report.aut_order,
                report.points,
                report.r,
                report.allowable,
                report.orbits.len()
            );
            for o in &report.orbits {
                out.push_str(&format!("  {}  (orbit size {})\n", o.cocycles, o.size));
            }
            Ok((out, 0))
        }
        Command::Iso { left, right, mode, expect } => iso(&load(left)?, &load(right)?, *mode, *expect, json),
        Command::Gb { file } => gb(&read(file)?, json),
        Command::Classify { dim, field } => {
            let r = classify_dim(*dim, prime_field(field)?)?;
            Ok((classification_text(&r, json, "class"), 0))
        }
        Command::Oracle { dim, field } => {
            let r = brute_force_classes(*dim, prime_field(field)?)?;
            let mut text = classification_text(&r, json, "oracle class");
            if !json {
                text.push_str(&format!(
                    "{} tables enumerated, {} nilpotent Jordan\n",
                    r.stats.tables, r.stats.nilpotent_jordan
                ));
            }
            Ok((text, 0))
        }
        Command::Catalog { action } => catalog_action(action, json),
    }
}

/// Runs the command line `args` (including the program name), writing the
/// report to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Resource(m)) => {
            let _ = writeln!(err, "resource limit: {m}");
            3
        }
    }
}
