//! Classification of nilpotent Jordan algebras over prime fields by
//! iterated central extension, plus a brute-force oracle that enumerates
//! every multiplication table.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{pair_count, Algebra, Fingerprint};
use crate::cohomology::Cohomology;
use crate::error::{JordanError, Result};
use crate::extension::{central_extension, centre_of_extension_decomposition, CocycleVector};
use crate::field::FieldSpec;
use crate::isotest::verify_witness;
use crate::linalg::{all_vectors, Matrix};
use crate::orbits::{automorphism_group, orbit_representatives_with};
use crate::search::find_isomorphism;

/// Largest number of multiplication tables the oracle will enumerate.
pub const MAX_TABLES: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    /// The one-dimensional zero algebra.
    Base,
    /// `summand (+) J_{1,1}`.
    DirectSum {
        summand: Algebra,
    },
    Descendant {
        parent: Algebra,
        r: usize,
        cocycles: CocycleVector,
    },
    /// A class of the brute-force enumeration with this many tables.
    Enumerated {
        tables: usize,
    },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Base => f.write_str("zero algebra"),
            Provenance::DirectSum { summand } => write!(f, "direct sum ({}) + J_{{1,1}}", summand.table()),
            Provenance::Descendant { parent, r, cocycles } => {
                write!(f, "step-{r} descendant of ({}) by theta = {cocycles}", parent.table())
            }
            Provenance::Enumerated { tables: 1 } => write!(f, "class of 1 table"),
            Provenance::Enumerated { tables } => write!(f, "class of {tables} tables"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Representative {
    pub algebra: Algebra,
    pub fingerprint: Fingerprint,
    pub provenance: Provenance,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ClassifyStats {
    pub candidates: usize,
    /// Extensions on which the centre decomposition was checked.
    pub centre_checks: usize,
    pub centre_failures: usize,
    /// Oracle only: tables enumerated and those that are nilpotent Jordan.
    pub tables: u64,
    pub nilpotent_jordan: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationResult {
    pub dim: usize,
    pub field: FieldSpec,
    pub representatives: Vec<Representative>,
    pub stats: ClassifyStats,
}

impl ClassificationResult {
    pub fn algebras(&self) -> Vec<&Algebra> {
        self.representatives.iter().map(|r| &r.algebra).collect()
    }
}

/// A descendant together with the data it was built from.
#[derive(Clone, Debug)]
pub struct Descendant {
    pub algebra: Algebra,
    pub cocycles: CocycleVector,
    /// The centre decomposition `Z(J_theta) = (rad theta meet Z(J)) + V` held.
    pub centre_lemma: bool,
}

/// `J_theta` for one representative `theta` of each `Aut(A)`-orbit on the
/// allowable `r`-dimensional subspaces of H^2.
pub fn descendants(a: &Algebra, r: usize) -> Result<Vec<Descendant>> {
    if !a.field().is_prime_field() {
        return Err(JordanError::UnsupportedField(a.field().to_string()));
    }
    let coh = Cohomology::new(a);
    if r == 0 || r > coh.h2_dim() {
        return Ok(Vec::new());
    }
    let aut = automorphism_group(a)?;
    descendants_with(a, &coh, &aut, r)
}

fn descendants_with(a: &Algebra, coh: &Cohomology, aut: &crate::orbits::AutGroup, r: usize) -> Result<Vec<Descendant>> {
    let report = orbit_representatives_with(a, coh, aut, r)?;
    report
        .orbits
        .into_iter()
        .map(|o| {
            let algebra = central_extension(a, &o.cocycles)?;
            let (_, centre_lemma) = centre_of_extension_decomposition(a, &o.cocycles)?;
            Ok(Descendant { algebra, cocycles: o.cocycles, centre_lemma })
        })
        .collect()
}

fn sort_key(r: &Representative) -> (&Fingerprint, &Algebra) {
    (&r.fingerprint, &r.algebra)
}

/// Keeps the first candidate of each isomorphism class, comparing only
/// within equal fingerprints. Over a prime field the witness search is
/// exhaustive, so this is exact.
fn dedupe(mut candidates: Vec<Representative>) -> Result<Vec<Representative>> {
    candidates.sort_by(|x, y| sort_key(x).cmp(&sort_key(y)));
    let mut buckets: BTreeMap<Fingerprint, Vec<Representative>> = BTreeMap::new();
    for c in candidates {
        buckets.entry(c.fingerprint.clone()).or_default().push(c);
    }
    let kept: Vec<Vec<Representative>> = buckets
        .into_values()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|bucket| {
            let mut kept: Vec<Representative> = Vec::new();
            for c in bucket {
                let mut duplicate = false;
                for k in &kept {
                    if find_isomorphism(&c.algebra, &k.algebra)?.is_some() {
                        duplicate = true;
                        break;
                    }
                }
                if !duplicate {
                    kept.push(c);
                }
            }
            Ok(kept)
        })
        .collect::<Result<_>>()?;
    Ok(kept.into_iter().flatten().collect())
}

fn representative(algebra: Algebra, provenance: Provenance) -> Representative {
    Representative { fingerprint: algebra.fingerprint(), algebra, provenance }
}

/// Classifications of dimensions `1..=n`; each is built from the previous.
pub fn classify_up_to(n: usize, field: FieldSpec) -> Result<Vec<ClassificationResult>> {
    if !field.is_prime_field() {
        return Err(JordanError::UnsupportedField(field.to_string()));
    }
    let mut results: Vec<ClassificationResult> = Vec::new();
    for d in 1..=n {
        let mut stats = ClassifyStats::default();
        let mut candidates = Vec::new();
        if d == 1 {
            candidates.push(representative(Algebra::zero(field, 1), Provenance::Base));
        } else {
            let j11 = Algebra::zero(field, 1);
            for rep in &results[d - 2].representatives {
                let sum = rep.algebra.direct_sum(&j11)?;
                candidates.push(representative(sum, Provenance::DirectSum { summand: rep.algebra.clone() }));
            }
            let parents: Vec<(usize, &Algebra)> =
                (1..d).flat_map(|r| results[d - r - 1].representatives.iter().map(move |p| (r, &p.algebra))).collect();
            let found: Vec<Vec<Descendant>> =
                parents.par_iter().map(|&(r, p)| descendants(p, r)).collect::<Result<_>>()?;
            for (&(r, parent), ds) in parents.iter().zip(found) {
                for desc in ds {
                    stats.centre_checks += 1;
                    if !desc.centre_lemma {
                        stats.centre_failures += 1;
                    }
                    candidates.push(representative(
                        desc.algebra,
                        Provenance::Descendant { parent: parent.clone(), r, cocycles: desc.cocycles },
                    ));
                }
            }
        }
        stats.candidates = candidates.len();
        let representatives = dedupe(candidates)?;
        results.push(ClassificationResult { dim: d, field, representatives, stats });
    }
    Ok(results)
}

pub fn classify_dim(n: usize, field: FieldSpec) -> Result<ClassificationResult> {
    if n == 0 {
        return Err(JordanError::InstanceTooLarge("dimension must be positive".into()));
    }
    Ok(classify_up_to(n, field)?.pop().expect("n >= 1"))
}

/// Every invertible `n x n` matrix over a prime field.
pub fn general_linear_group(n: usize, field: FieldSpec) -> Result<Vec<Matrix>> {
    let q = field.order().ok_or_else(|| JordanError::UnsupportedField(field.to_string()))?;
    let total = (q as u128).checked_pow((n * n) as u32).unwrap_or(u128::MAX);
    if total > MAX_TABLES as u128 {
        return Err(JordanError::InstanceTooLarge(format!("{total} matrices of size {n} over {field}")));
    }
    let cols = all_vectors(field, n)?;
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let m = Matrix::from_columns(field, n, &idx.iter().map(|&i| cols[i].clone()).collect::<Vec<_>>());
        if m.is_invertible() {
            out.push(m);
        }
        let mut k = 0;
        while k < n {
            idx[k] += 1;
            if idx[k] < cols.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    Ok(out)
}

/// Enumerates every commutative table of dimension `n` over `field`, keeps
/// the nilpotent Jordan ones and partitions them into `GL_n` orbits.
pub fn brute_force_classes(n: usize, field: FieldSpec) -> Result<ClassificationResult> {
    let q = field.order().ok_or_else(|| JordanError::UnsupportedField(field.to_string()))?;
    let slots = pair_count(n) * n;
    let total = (q as u128).checked_pow(slots as u32).unwrap_or(u128::MAX);
    if n == 0 || total > MAX_TABLES as u128 {
        return Err(JordanError::InstanceTooLarge(format!("{total} tables of dimension {n} over {field}")));
    }
    let total = total as u64;
    let elems = field.enumerate()?;
    let survivors: Vec<Algebra> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut c = code;
            let constants = (0..slots)
                .map(|_| {
                    let x = elems[(c % q) as usize].clone();
                    c /= q;
                    x
                })
                .collect();
            let a = Algebra::from_constants(field, n, constants).expect("sizes agree");
            (a.is_nilpotent() && a.check_jordan()).then_some(a)
        })
        .collect();
    let gl = general_linear_group(n, field)?;
    let index: HashMap<&Algebra, usize> = survivors.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut class_of = vec![usize::MAX; survivors.len()];
    let mut reps = Vec::new();
    for (i, a) in survivors.iter().enumerate() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let images: Vec<Algebra> = gl.par_iter().map(|p| a.change_basis(p)).collect::<Result<_>>()?;
        let mut size = 0;
        for img in images {
            let j = *index.get(&img).ok_or(JordanError::NotRepresentable)?;
            if class_of[j] == usize::MAX {
                class_of[j] = reps.len();
                size += 1;
            }
        }
        reps.push(representative(a.clone(), Provenance::Enumerated { tables: size }));
    }
    reps.sort_by(|x, y| sort_key(x).cmp(&sort_key(y)));
    let stats = ClassifyStats { tables: total, nilpotent_jordan: survivors.len(), ..Default::default() };
    Ok(ClassificationResult { dim: n, field, representatives: reps, stats })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassMatch {
    pub oracle: usize,
    pub pipeline: usize,
    /// Isomorphism from the oracle representative to the pipeline one.
    pub witness: Matrix,
}

/// Pairs each oracle class with the unique isomorphic pipeline
/// representative. Fails unless this is a bijection with verified witnesses.
pub fn match_classes(oracle: &ClassificationResult, pipeline: &ClassificationResult) -> Result<Vec<ClassMatch>> {
    let mut used = vec![false; pipeline.representatives.len()];
    let mut out = Vec::new();
    for (i, o) in oracle.representatives.iter().enumerate() {
        let mut hits = Vec::new();
        for (j, p) in pipeline.representatives.iter().enumerate() {
            if p.fingerprint != o.fingerprint {
                continue;
            }
            if let Some(w) = find_isomorphism(&o.algebra, &p.algebra)? {
                if verify_witness(&o.algebra, &p.algebra, &w) {
                    hits.push((j, w));
                }
            }
        }
        if hits.len() != 1 || used[hits[0].0] {
            return Err(JordanError::NotRepresentable);
        }
        let (j, witness) = hits.pop().expect("one hit");
        used[j] = true;
        out.push(ClassMatch { oracle: i, pipeline: j, witness });
    }
    if used.iter().any(|u| !u) {
        return Err(JordanError::NotRepresentable);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> FieldSpec {
        FieldSpec::Prime(p)
    }

    #[test]
    fn descendant_examples() {
        let j11 = Algebra::zero(f(3), 1);
        let d = descendants(&j11, 1).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].algebra.table(), "a^2 = b");
        assert!(descendants(&j11, 2).unwrap().is_empty());
        let j22 = Algebra::from_table(f(3), 2, "a^2 = b").unwrap();
        let d = descendants(&j22, 1).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].algebra.table(), "a^2 = b; a*b = c");
        assert!(d[0].centre_lemma);
        assert!(descendants(&Algebra::zero(FieldSpec::Rationals, 1), 1).is_err());
    }

    #[test]
    fn small_counts() {
        assert_eq!(classify_dim(1, f(3)).unwrap().representatives.len(), 1);
        assert_eq!(classify_dim(2, f(2)).unwrap().representatives.len(), 2);
        let r = classify_dim(3, f(5)).unwrap();
        assert_eq!(r.representatives.len(), 5);
        assert_eq!(r.stats.centre_failures, 0);
        assert!(r.stats.centre_checks >= 3);
    }

    #[test]
    fn gl_orders() {
        assert_eq!(general_linear_group(2, f(2)).unwrap().len(), 6);
        assert_eq!(general_linear_group(2, f(3)).unwrap().len(), 48);
        assert_eq!(general_linear_group(3, f(2)).unwrap().len(), 168);
    }

    #[test]
    fn oracle_dim_two() {
        for p in [2, 3] {
            let o = brute_force_classes(2, f(p)).unwrap();
            assert_eq!(o.representatives.len(), 2);
            let pipe = classify_dim(2, f(p)).unwrap();
            assert_eq!(match_classes(&o, &pipe).unwrap().len(), 2);
        }
        assert!(matches!(brute_force_classes(3, f(3)), Err(JordanError::InstanceTooLarge(_))));
    }
}
