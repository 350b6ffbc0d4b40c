//! Isomorphism testing: invariant prefilter, witness search and the
//! polynomial system whose solvability over the algebraic closure is
//! decided by a Groebner basis.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{is_isomorphism, Algebra};
use crate::error::{JordanError, Result};
use crate::groebner::{buchberger, contains_one, GbLimits, Monomial, MonomialOrder, Polynomial, Ring};
use crate::linalg::Matrix;
use crate::search::{find_isomorphisms, SearchLimits};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    Field,
    Dimension,
    CentreDim,
    SquareDim,
    LowerCentralSeries,
    Nilindex,
    Associativity,
    CentreMeetSquareDim,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::Field => "field",
            Invariant::Dimension => "dimension",
            Invariant::CentreDim => "dim Z(J)",
            Invariant::SquareDim => "dim J^2",
            Invariant::LowerCentralSeries => "lower central series",
            Invariant::Nilindex => "nilindex",
            Invariant::Associativity => "associativity",
            Invariant::CentreMeetSquareDim => "dim Z(J) meet J^2",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Distinction {
    pub invariant: Invariant,
    pub left: String,
    pub right: String,
}

/// The first invariant on which the algebras differ, if any.
pub fn prefilter(a: &Algebra, b: &Algebra) -> Option<Distinction> {
    let d = |invariant, left: String, right: String| Some(Distinction { invariant, left, right });
    if a.field() != b.field() {
        return d(Invariant::Field, a.field().to_string(), b.field().to_string());
    }
    if a.dim() != b.dim() {
        return d(Invariant::Dimension, a.dim().to_string(), b.dim().to_string());
    }
    let (fa, fb) = (a.fingerprint(), b.fingerprint());
    let opt = |x: Option<usize>| x.map_or("none".to_string(), |v| v.to_string());
    let checks: [(Invariant, String, String); 6] = [
        (Invariant::CentreDim, fa.dim_centre.to_string(), fb.dim_centre.to_string()),
        (Invariant::SquareDim, fa.dim_square.to_string(), fb.dim_square.to_string()),
        (Invariant::LowerCentralSeries, format!("{:?}", fa.dims_lcs), format!("{:?}", fb.dims_lcs)),
        (Invariant::Nilindex, opt(fa.nilindex), opt(fb.nilindex)),
        (Invariant::Associativity, fa.is_associative.to_string(), fb.is_associative.to_string()),
        (Invariant::CentreMeetSquareDim, fa.dim_centre_meet_square.to_string(), fb.dim_centre_meet_square.to_string()),
    ];
    checks.into_iter().find(|(_, l, r)| l != r).map(|(invariant, left, right)| Distinction { invariant, left, right })
}

/// Variable name of the entry `a_{ij}` (1-based).
pub fn iso_variable(n: usize, i: usize, j: usize) -> String {
    if n <= 9 {
        format!("a{i}{j}")
    } else {
        format!("a{i}_{j}")
    }
}

/// Ring of the isomorphism system: `a11, a12, ..., ann, b`.
pub fn iso_ring(a: &Algebra, order: MonomialOrder) -> Arc<Ring> {
    let n = a.dim();
    let mut vars: Vec<String> = (1..=n).flat_map(|i| (1..=n).map(move |j| iso_variable(n, i, j))).collect();
    vars.push("b".into());
    Ring::new(a.field(), vars, order)
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    fn rec(k: usize, perm: &mut Vec<usize>, even: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        if k == perm.len() {
            out.push((perm.clone(), even));
            return;
        }
        for i in k..perm.len() {
            perm.swap(k, i);
            rec(k + 1, perm, if i == k { even } else { !even }, out);
            perm.swap(k, i);
        }
    }
    rec(0, &mut perm, true, &mut out);
    out
}

/// Polynomial conditions on `phi(e_i) = sum_j a_ij f_j` (`f` the basis of
/// `b`) to be an isomorphism `a -> b`:
/// `sum_k c_ij^k a_km - sum_{k,l} g_kl^m a_ik a_jl = 0` for `i >= j` and
/// all `m`, together with `b det(a_ij) - 1 = 0`. Zero polynomials are dropped.
pub fn iso_system(a: &Algebra, b: &Algebra, order: MonomialOrder) -> Result<(Arc<Ring>, Vec<Polynomial>)> {
    if a.field() != b.field() {
        return Err(JordanError::FieldMismatch(a.field().to_string(), b.field().to_string()));
    }
    if a.dim() != b.dim() {
        return Err(JordanError::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    let n = a.dim();
    let ring = iso_ring(a, order);
    let nv = ring.nvars();
    let var = |i: usize, j: usize| i * n + j;
    let mono = |vs: &[usize]| {
        let mut e = vec![0u16; nv];
        for &v in vs {
            e[v] += 1;
        }
        Monomial::from_exponents(e)
    };
    let mut polys = Vec::new();
    for i in 0..n {
        for j in 0..=i {
            for m in 0..n {
                let mut terms = Vec::new();
                for (k, c) in a.basis_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        terms.push((mono(&[var(k, m)]), c.clone()));
                    }
                }
                for k in 0..n {
                    for l in 0..n {
                        let g = &b.basis_product(k, l)[m];
                        if !g.is_zero() {
                            terms.push((mono(&[var(i, k), var(j, l)]), -g.clone()));
                        }
                    }
                }
                let p = Polynomial::from_terms(&ring, terms);
                if !p.is_zero() {
                    polys.push(p);
                }
            }
        }
    }
    let field = a.field();
    let mut det_terms = Vec::new();
    for (perm, even) in permutations(n) {
        let mut vs: Vec<usize> = (0..n).map(|i| var(i, perm[i])).collect();
        vs.push(nv - 1);
        det_terms.push((mono(&vs), if even { field.one() } else { -field.one() }));
    }
    det_terms.push((Monomial::one(nv), -field.one()));
    polys.push(Polynomial::from_terms(&ring, det_terms));
    Ok((ring, polys))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecideMode {
    /// Prefilter and Groebner basis only.
    ClosureOnly,
    /// Look for an isomorphism over the base field as well.
    BaseFieldFirst,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IsoVerdict {
    Isomorphic {
        witness: Matrix,
    },
    /// The reduced Groebner basis of the system is `{1}`.
    NonIsomorphicOverClosure {
        basis: Vec<Polynomial>,
    },
    /// The system has solutions over the closure; no base-field witness known.
    IsomorphicOverClosure,
    Distinguished(Distinction),
    ResourceExceeded {
        reason: String,
    },
}

impl IsoVerdict {
    pub fn kind(&self) -> &'static str {
        match self {
            IsoVerdict::Isomorphic { .. } => "isomorphic",
            IsoVerdict::NonIsomorphicOverClosure { .. } => "non_isomorphic_over_closure",
            IsoVerdict::IsomorphicOverClosure => "isomorphic_over_closure",
            IsoVerdict::Distinguished(_) => "distinguished",
            IsoVerdict::ResourceExceeded { .. } => "resource_exceeded",
        }
    }

    /// Known to be non-isomorphic over the base field.
    pub fn is_non_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::NonIsomorphicOverClosure { .. } | IsoVerdict::Distinguished(_))
    }
}

impl fmt::Display for IsoVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoVerdict::Isomorphic { witness } => write!(f, "isomorphic; witness (columns are images):\n{witness}"),
            IsoVerdict::NonIsomorphicOverClosure { .. } => {
                f.write_str("not isomorphic over the algebraic closure (reduced Groebner basis = {1})")
            }
            IsoVerdict::IsomorphicOverClosure => {
                f.write_str("isomorphic over the algebraic closure; no base-field witness found")
            }
            IsoVerdict::Distinguished(d) => {
                write!(f, "not isomorphic: {} differs ({} vs {})", d.invariant, d.left, d.right)
            }
            IsoVerdict::ResourceExceeded { reason } => write!(f, "undecided: {reason}"),
        }
    }
}

/// Node budgets of the rational witness search before and after the
/// Groebner computation.
const QUICK_RATIONAL_NODES: u64 = 20_000;
const FULL_RATIONAL_NODES: u64 = 150_000;

pub fn decide(a: &Algebra, b: &Algebra, mode: DecideMode) -> IsoVerdict {
    match GbLimits::from_env() {
        Ok(limits) => decide_with_limits(a, b, mode, &limits),
        Err(e) => IsoVerdict::ResourceExceeded { reason: format!("invalid JORDAN_LIMITS: {e}") },
    }
}

fn witness(a: &Algebra, b: &Algebra, max_nodes: u64) -> std::result::Result<Option<Matrix>, String> {
    match find_isomorphisms(a, b, SearchLimits { max_results: Some(1), max_nodes }) {
        Ok(out) => Ok(out.isomorphisms.into_iter().next()),
        Err(e) => Err(e.to_string()),
    }
}

pub fn decide_with_limits(a: &Algebra, b: &Algebra, mode: DecideMode, limits: &GbLimits) -> IsoVerdict {
    if let Some(d) = prefilter(a, b) {
        return IsoVerdict::Distinguished(d);
    }
    let base = mode == DecideMode::BaseFieldFirst;
    if base && a == b {
        return IsoVerdict::Isomorphic { witness: Matrix::identity(a.field(), a.dim()) };
    }
    let prime = a.field().is_prime_field();
    if base {
        let budget = if prime { SearchLimits::first().max_nodes } else { QUICK_RATIONAL_NODES };
        match witness(a, b, budget) {
            Ok(Some(w)) => return IsoVerdict::Isomorphic { witness: w },
            Ok(None) => {}
            Err(reason) => return IsoVerdict::ResourceExceeded { reason },
        }
    }
    let (_, system) = match iso_system(a, b, MonomialOrder::DegRevLex) {
        Ok(s) => s,
        Err(e) => return IsoVerdict::ResourceExceeded { reason: e.to_string() },
    };
    let basis = match buchberger(&system, limits) {
        Ok(g) => g,
        Err(e) => return IsoVerdict::ResourceExceeded { reason: e.to_string() },
    };
    if contains_one(&basis) {
        return IsoVerdict::NonIsomorphicOverClosure { basis };
    }
    if base && !prime {
        if let Ok(Some(w)) = witness(a, b, FULL_RATIONAL_NODES) {
            return IsoVerdict::Isomorphic { witness: w };
        }
    }
    IsoVerdict::IsomorphicOverClosure
}

/// Invertible and preserves every basis product.
pub fn verify_witness(a: &Algebra, b: &Algebra, phi: &Matrix) -> bool {
    is_isomorphism(phi, a, b)
}
