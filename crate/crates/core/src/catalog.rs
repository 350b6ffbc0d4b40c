//! Known nilpotent Jordan algebras of dimension at most four, stored as
//! multiplication tables, and their verification.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::{JordanError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::groebner::GbLimits;
use crate::isotest::{decide_with_limits, DecideMode, Distinction, IsoVerdict};
use crate::search::find_isomorphism;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogCase {
    /// Valid over every field (dimensions 1 and 2).
    AnyField,
    /// Algebraically closed, characteristic not 2.
    ClosedCharNot2,
    Char2,
    Real,
}

impl CatalogCase {
    pub fn parse(text: &str) -> Result<Self> {
        match text.trim() {
            "any" => Ok(CatalogCase::AnyField),
            "closed" => Ok(CatalogCase::ClosedCharNot2),
            "char2" => Ok(CatalogCase::Char2),
            "real" => Ok(CatalogCase::Real),
            other => Err(JordanError::Parse { line: 0, message: format!("unknown catalog case `{other}`") }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CatalogCase::AnyField => "any",
            CatalogCase::ClosedCharNot2 => "closed",
            CatalogCase::Char2 => "char2",
            CatalogCase::Real => "real",
        }
    }

    pub fn all() -> [CatalogCase; 4] {
        [CatalogCase::AnyField, CatalogCase::ClosedCharNot2, CatalogCase::Char2, CatalogCase::Real]
    }

    /// Dimensions for which this case has a table.
    pub fn dims(&self) -> &'static [usize] {
        match self {
            CatalogCase::AnyField => &[1, 2],
            CatalogCase::ClosedCharNot2 | CatalogCase::Real => &[3, 4],
            CatalogCase::Char2 => &[3],
        }
    }
}

impl fmt::Display for CatalogCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

struct Row {
    case: CatalogCase,
    dim: usize,
    id: &'static str,
    /// Products; `t` stands for the square-class parameter.
    table: &'static str,
    central: bool,
    associative: bool,
}

const fn row(
    case: CatalogCase,
    dim: usize,
    id: &'static str,
    table: &'static str,
    central: bool,
    associative: bool,
) -> Row {
    Row { case, dim, id, table, central, associative }
}

use CatalogCase::{AnyField as A, Char2 as C2, ClosedCharNot2 as C, Real as R};

const ROWS: &[Row] = &[
    row(A, 1, "J_{1,1}", "", true, true),
    row(A, 2, "J_{2,1}", "", true, true),
    row(A, 2, "J_{2,2}", "a^2 = b", false, true),
    row(C, 3, "J_{3,1}", "", true, true),
    row(C, 3, "J_{3,2}", "a^2 = b", true, true),
    row(C, 3, "J_{3,3}", "a^2 = c; b^2 = c", false, true),
    row(C, 3, "J_{3,4}", "a^2 = b; a*b = c", false, true),
    row(C2, 3, "J_{3,1}", "", true, true),
    row(C2, 3, "J_{3,2}", "a^2 = b", true, true),
    row(C2, 3, "J_{3,3}", "a*b = c", false, true),
    row(C2, 3, "J_{3,4}", "a^2 = c; b^2 = c", false, true),
    row(C2, 3, "J_{3,5}", "a^2 = b; a*b = c", false, true),
    row(R, 3, "J_{3,1}", "", true, true),
    row(R, 3, "J_{3,2}", "a^2 = b", true, true),
    row(R, 3, "J_{3,3}", "a^2 = c; b^2 = t c", false, true),
    row(R, 3, "J_{3,4}", "a^2 = b; a*b = c", false, true),
    row(C, 4, "J_{4,1}", "", true, true),
    row(C, 4, "J_{4,2}", "a^2 = b", true, true),
    row(C, 4, "J_{4,3}", "a^2 = c; b^2 = c", true, true),
    row(C, 4, "J_{4,4}", "a^2 = b; a*b = c", true, true),
    row(C, 4, "J_{4,5}", "a^2 = d; b^2 = d; c^2 = d", false, true),
    row(C, 4, "J_{4,6}", "a^2 = b; b*c = d", false, false),
    row(C, 4, "J_{4,7}", "a^2 = b; a*b = d; c^2 = d", false, true),
    row(C, 4, "J_{4,8}", "a^2 = c; b^2 = c; a*c = d", false, false),
    row(C, 4, "J_{4,9}", "a^2 = c; b^2 = -c; a*c = d; b*c = d", false, false),
    row(C, 4, "J_{4,10}", "a^2 = c; b^2 = -c; a*c = d; b*c = d; a*b = d", false, false),
    row(C, 4, "J_{4,11}", "a^2 = b; a*b = c; a*c = d; b^2 = d", false, true),
    row(C, 4, "J_{4,12}", "a^2 = c; a*b = d", false, true),
    row(C, 4, "J_{4,13}", "a^2 = c; b^2 = c; a*b = d", false, true),
    row(R, 4, "J_{4,1}", "", true, true),
    row(R, 4, "J_{4,2}", "a^2 = b", true, true),
    row(R, 4, "J_{4,3}", "a^2 = c; b^2 = t c", true, true),
    row(R, 4, "J_{4,4}", "a^2 = b; a*b = c", true, true),
    row(R, 4, "J_{4,5}", "a^2 = d; b^2 = d; c^2 = t d", false, true),
    row(R, 4, "J_{4,6}", "a^2 = b; b*c = d", false, false),
    row(R, 4, "J_{4,7}", "a^2 = b; a*b = d; c^2 = d", false, true),
    row(R, 4, "J_{4,8}", "a^2 = c; b^2 = t c; a*c = d", false, false),
    row(R, 4, "J_{4,9}", "a^2 = c; b^2 = -c; a*c = d; b*c = d", false, false),
    row(R, 4, "J_{4,10}", "a^2 = c; b^2 = -c; a*c = d; b*c = d; a*b = d", false, false),
    row(R, 4, "J_{4,11}", "a^2 = b; a*b = c; a*c = d; b^2 = d", false, true),
    row(R, 4, "J_{4,12}", "a^2 = c; a*b = d", false, true),
    row(R, 4, "J_{4,13}", "a^2 = c; b^2 = t c; a*b = d", false, true),
];

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    pub case: CatalogCase,
    /// Square-class parameter of a one-parameter family.
    pub alpha: Option<Scalar>,
    pub algebra: Algebra,
    pub has_central_component: bool,
    pub is_associative: bool,
    /// Identifier shared by all members of a parametric family.
    pub family: String,
}

fn build(r: &Row, field: FieldSpec, alpha: Option<Scalar>) -> Result<CatalogEntry> {
    let table = match &alpha {
        Some(t) => r.table.replace(" t ", &format!(" {t} ")),
        None => r.table.to_string(),
    };
    let id = match &alpha {
        Some(t) if field == FieldSpec::Rationals => {
            let s = t.to_string();
            let s = if s.starts_with('-') { s } else { format!("+{s}") };
            format!("{}^{{{s}}}", r.id)
        }
        Some(t) => format!("{}^{{{t}}}", r.id),
        None => r.id.to_string(),
    };
    Ok(CatalogEntry {
        id,
        case: r.case,
        alpha,
        algebra: Algebra::from_table(field, r.dim, &table)?,
        has_central_component: r.central,
        is_associative: r.associative,
        family: r.id.to_string(),
    })
}

fn rows(case: CatalogCase, dim: usize) -> impl Iterator<Item = &'static Row> {
    ROWS.iter().filter(move |r| r.case == case && r.dim == dim)
}

/// Entries over the rationals; families over the reals are listed for
/// `t = 1` and `t = -1`.
pub fn catalog(case: CatalogCase, dim: usize) -> Vec<CatalogEntry> {
    let q = FieldSpec::Rationals;
    rows(case, dim)
        .flat_map(|r| {
            let alphas: Vec<Option<Scalar>> =
                if r.table.contains(" t ") { vec![Some(q.one()), Some(-q.one())] } else { vec![None] };
            alphas.into_iter().map(move |t| build(r, q, t).expect("catalog tables are well formed"))
        })
        .collect()
}

/// Entries over `field`. Over a prime field each family is instantiated
/// once per square class. Tables with a `-1` coefficient stay as written.
pub fn catalog_over(case: CatalogCase, dim: usize, field: FieldSpec) -> Result<Vec<CatalogEntry>> {
    if field == FieldSpec::Rationals {
        return Ok(catalog(case, dim));
    }
    let mut out = Vec::new();
    for r in rows(case, dim) {
        if r.table.contains(" t ") {
            for t in field.square_class_representatives()? {
                out.push(build(r, field, Some(t))?);
            }
        } else {
            out.push(build(r, field, None)?);
        }
    }
    Ok(out)
}

/// Every `(case, dim)` with a table, in a fixed order.
pub fn catalog_cases() -> Vec<(CatalogCase, usize)> {
    CatalogCase::all().iter().flat_map(|c| c.dims().iter().map(move |&d| (*c, d))).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryCheck {
    pub id: String,
    pub jordan: bool,
    pub nilpotent: bool,
    pub associativity_matches: bool,
    pub central_component_matches: bool,
}

impl EntryCheck {
    pub fn ok(&self) -> bool {
        self.jordan && self.nilpotent && self.associativity_matches && self.central_component_matches
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Prefilter(Distinction),
    /// Reduced Groebner basis `{1}` for the isomorphism system.
    Groebner,
    /// Exhaustive witness search over the stated prime field found nothing.
    Exhaustive {
        field: String,
    },
    /// Same family, different square classes: equal over the closure.
    SquareClassOutOfScope,
    Failed {
        reason: String,
    },
}

impl Certificate {
    pub fn is_failure(&self) -> bool {
        matches!(self, Certificate::Failed { .. })
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certificate::Prefilter(d) => write!(f, "prefilter: {} ({} vs {})", d.invariant, d.left, d.right),
            Certificate::Groebner => f.write_str("groebner: basis {1}"),
            Certificate::Exhaustive { field } => write!(f, "exhaustive search over {field}: no isomorphism"),
            Certificate::SquareClassOutOfScope => {
                f.write_str("closure-merged square classes; distinctness over R out of scope")
            }
            Certificate::Failed { reason } => write!(f, "FAILED: {reason}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCheck {
    pub left: String,
    pub right: String,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub case: CatalogCase,
    pub dim: usize,
    pub entries: Vec<EntryCheck>,
    pub non_associative: Vec<String>,
    pub pairs: Vec<PairCheck>,
}

impl CatalogReport {
    pub fn count(&self, pred: impl Fn(&Certificate) -> bool) -> usize {
        self.pairs.iter().filter(|p| pred(&p.certificate)).count()
    }

    pub fn prefilter_count(&self) -> usize {
        self.count(|c| matches!(c, Certificate::Prefilter(_)))
    }

    pub fn groebner_count(&self) -> usize {
        self.count(|c| matches!(c, Certificate::Groebner))
    }

    pub fn out_of_scope_count(&self) -> usize {
        self.count(|c| matches!(c, Certificate::SquareClassOutOfScope))
    }

    pub fn ok(&self) -> bool {
        self.entries.iter().all(EntryCheck::ok) && self.pairs.iter().all(|p| !p.certificate.is_failure())
    }
}

impl fmt::Display for CatalogReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "catalog {} dim {}: {} entries", self.case, self.dim, self.entries.len())?;
        for e in &self.entries {
            writeln!(
                f,
                "  {}: Jordan {}, nilpotent {}, associativity flag {}, central-component flag {}",
                e.id,
                yes(e.jordan),
                yes(e.nilpotent),
                if e.associativity_matches { "ok" } else { "WRONG" },
                if e.central_component_matches { "ok" } else { "WRONG" },
            )?;
        }
        writeln!(f, "  non-associative: {}", self.non_associative.join(", "))?;
        for p in &self.pairs {
            writeln!(f, "  {} / {}: {}", p.left, p.right, p.certificate)?;
        }
        write!(
            f,
            "  pairs {}: prefilter {}, groebner {}, out of scope {}, failed {}",
            self.pairs.len(),
            self.prefilter_count(),
            self.groebner_count(),
            self.out_of_scope_count(),
            self.count(Certificate::is_failure)
        )
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn certify(x: &CatalogEntry, y: &CatalogEntry, limits: &GbLimits) -> Certificate {
    if x.case == CatalogCase::Char2 {
        let f2 = FieldSpec::Prime(2);
        let (a, b) = match (x.algebra.instantiate(f2), y.algebra.instantiate(f2)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Certificate::Failed { reason: "not defined over F 2".into() },
        };
        if let Some(d) = crate::isotest::prefilter(&a, &b) {
            return Certificate::Prefilter(d);
        }
        return match find_isomorphism(&a, &b) {
            Ok(None) => Certificate::Exhaustive { field: f2.to_string() },
            Ok(Some(_)) => Certificate::Failed { reason: "isomorphic over F 2".into() },
            Err(e) => Certificate::Failed { reason: e.to_string() },
        };
    }
    match decide_with_limits(&x.algebra, &y.algebra, DecideMode::ClosureOnly, limits) {
        IsoVerdict::Distinguished(d) => Certificate::Prefilter(d),
        IsoVerdict::NonIsomorphicOverClosure { .. } => Certificate::Groebner,
        IsoVerdict::IsomorphicOverClosure if x.case == CatalogCase::Real && x.family == y.family => {
            Certificate::SquareClassOutOfScope
        }
        v => Certificate::Failed { reason: v.to_string() },
    }
}

/// Checks every entry and certifies every pair distinct. Characteristic 2
/// tables are checked over F_2, all others over the rationals with
/// distinctness over the closure.
pub fn catalog_verify(case: CatalogCase, dim: usize, limits: &GbLimits) -> CatalogReport {
    let mut entries_list = catalog(case, dim);
    if case == CatalogCase::Char2 {
        for e in &mut entries_list {
            e.algebra = e.algebra.instantiate(FieldSpec::Prime(2)).expect("integral tables");
        }
    }
    let entries = entries_list
        .iter()
        .map(|e| EntryCheck {
            id: e.id.clone(),
            jordan: e.algebra.check_jordan(),
            nilpotent: e.algebra.is_nilpotent(),
            associativity_matches: e.algebra.is_associative() == e.is_associative,
            central_component_matches: e.algebra.has_central_component() == e.has_central_component,
        })
        .collect();
    let non_associative = entries_list.iter().filter(|e| !e.algebra.is_associative()).map(|e| e.id.clone()).collect();
    let pairs_idx: Vec<(usize, usize)> =
        (0..entries_list.len()).flat_map(|i| (i + 1..entries_list.len()).map(move |j| (i, j))).collect();
    let pairs = pairs_idx
        .par_iter()
        .map(|&(i, j)| {
            let (x, y) = (&entries_list[i], &entries_list[j]);
            PairCheck { left: x.id.clone(), right: y.id.clone(), certificate: certify(x, y, limits) }
        })
        .collect();
    CatalogReport { case, dim, entries, non_associative, pairs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(catalog(CatalogCase::AnyField, 1).len(), 1);
        assert_eq!(catalog(CatalogCase::AnyField, 2).len(), 2);
        assert_eq!(catalog(CatalogCase::ClosedCharNot2, 3).len(), 4);
        assert_eq!(catalog(CatalogCase::Char2, 3).len(), 5);
        assert_eq!(catalog(CatalogCase::Real, 3).len(), 5);
        let closed = catalog(CatalogCase::ClosedCharNot2, 4);
        assert_eq!(closed.len(), 13);
        assert_eq!(closed.iter().filter(|e| !e.is_associative).count(), 4);
        let real = catalog(CatalogCase::Real, 4);
        assert_eq!(real.len(), 17);
        assert_eq!(real.iter().filter(|e| !e.is_associative).count(), 5);
        assert!(catalog(CatalogCase::Char2, 3).iter().any(|e| e.algebra.table() == "a*b = c"));
    }

    #[test]
    fn ids_and_tables() {
        let real = catalog(CatalogCase::Real, 3);
        let ids: Vec<&str> = real.iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, ["J_{3,1}", "J_{3,2}", "J_{3,3}^{+1}", "J_{3,3}^{-1}", "J_{3,4}"]);
        assert_eq!(real[3].algebra.table(), "a^2 = c; b^2 = -c");
        let j411 = &catalog(CatalogCase::ClosedCharNot2, 4)[10];
        assert_eq!(j411.id, "J_{4,11}");
        assert_eq!(j411.algebra.nilindex(), Some(5));
    }

    #[test]
    fn instantiation_over_prime_fields() {
        let f5 = FieldSpec::Prime(5);
        let e = catalog_over(CatalogCase::Real, 3, f5).unwrap();
        assert_eq!(e.len(), 5);
        assert_eq!(e[3].algebra.table(), "a^2 = c; b^2 = 2*c");
        assert_eq!(catalog_over(CatalogCase::Real, 4, FieldSpec::Prime(3)).unwrap().len(), 17);
    }

    #[test]
    fn small_verification() {
        let limits = GbLimits::default();
        let r = catalog_verify(CatalogCase::AnyField, 2, &limits);
        assert!(r.ok());
        assert_eq!(r.pairs.len(), 1);
        match &r.pairs[0].certificate {
            Certificate::Prefilter(d) => assert_eq!(d.invariant, crate::isotest::Invariant::CentreDim),
            c => panic!("{c}"),
        }
        let r = catalog_verify(CatalogCase::Real, 3, &limits);
        assert!(r.ok(), "{r}");
        assert_eq!(r.out_of_scope_count(), 1);
        let r = catalog_verify(CatalogCase::Char2, 3, &limits);
        assert!(r.ok(), "{r}");
        assert_eq!(r.pairs.len(), 10);
    }
}
