//! Backtracking search for isomorphisms between algebras given by
//! structure constants.
//!
//! The image of each basis vector is confined to the subspace cut out by
//! the lower central series and centre. Images are assigned one basis
//! vector at a time; whenever a product `e_i e_j` has a single unassigned
//! basis vector in its support, that image is solved for instead of
//! enumerated. Over prime fields the search is exhaustive. Over Q the
//! candidates are small-height combinations, so a failed search proves
//! nothing.

use crate::algebra::{pair_count, pair_from_index, Algebra};
use crate::error::{JordanError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{Matrix, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    /// Stop after this many isomorphisms.
    pub max_results: Option<usize>,
    /// Abort with [`JordanError::ResourceExceeded`] after this many
    /// candidate images over a prime field; over Q the search just stops.
    pub max_nodes: u64,
}

impl SearchLimits {
    pub fn first() -> Self {
        SearchLimits { max_results: Some(1), max_nodes: 50_000_000 }
    }

    pub fn all(max_results: usize) -> Self {
        SearchLimits { max_results: Some(max_results), max_nodes: u64::MAX }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub isomorphisms: Vec<Matrix>,
    /// True when every candidate was examined (always true on prime fields
    /// unless a result cap was hit).
    pub exhaustive: bool,
}

#[derive(Clone, Copy, Debug)]
enum Step {
    Branch(usize),
    /// Solve for `k` from the product `e_i e_j`.
    Derive {
        k: usize,
        pair: usize,
    },
}

const RATIONAL_COEFFICIENTS: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)];

/// Subspaces preserved by every isomorphism, matched between the algebras.
fn characteristic_subspaces(a: &Algebra) -> Vec<Subspace> {
    let mut out = a.lower_central_series();
    out.push(a.centre());
    out
}

fn candidates(space: &Subspace) -> Result<Vec<Vec<Scalar>>> {
    let field = space.field();
    match field {
        FieldSpec::Prime(_) => Ok(space.elements()?.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect()),
        FieldSpec::Rationals => {
            let coeffs: Vec<Scalar> = std::iter::once(field.zero())
                .chain(
                    RATIONAL_COEFFICIENTS
                        .iter()
                        .map(|&(n, d)| field.from_i64(n).checked_div(&field.from_i64(d)).expect("nonzero denominator")),
                )
                .collect();
            let basis = space.vectors();
            let mut out = vec![vec![field.zero(); space.ambient_dim()]];
            for b in &basis {
                let mut next = Vec::with_capacity(out.len() * coeffs.len());
                for v in &out {
                    for c in &coeffs {
                        let mut w = v.clone();
                        crate::linalg::axpy(&mut w, c, b);
                        next.push(w);
                    }
                }
                out = next;
            }
            out.retain(|v| v.iter().any(|x| !x.is_zero()));
            // Sparse, small-height vectors first.
            out.sort_by_key(|v| {
                let support = v.iter().filter(|x| !x.is_zero()).count();
                let height: usize = v.iter().map(|x| x.to_string().len()).sum();
                (support, height)
            });
            Ok(out)
        }
    }
}

struct Search<'a> {
    from: &'a Algebra,
    to: &'a Algebra,
    n: usize,
    allowed: Vec<Subspace>,
    cands: Vec<Vec<Vec<Scalar>>>,
    steps: Vec<Step>,
    /// Pairs whose product equation becomes checkable after each step.
    checks: Vec<Vec<usize>>,
    images: Vec<Option<Vec<Scalar>>>,
    echelon: Vec<(usize, Vec<Scalar>)>,
    limits: SearchLimits,
    nodes: u64,
    aborted: bool,
    found: Vec<Matrix>,
}

fn support(a: &Algebra, pair: usize) -> Vec<usize> {
    let (i, j) = pair_from_index(pair);
    a.basis_product(i, j).iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, _)| k).collect()
}

/// Chooses branch variables minimizing the product of candidate counts,
/// deriving everything else from product equations.
fn plan(from: &Algebra, counts: &[u128]) -> Vec<Step> {
    let n = from.dim();
    let supports: Vec<Vec<usize>> = (0..pair_count(n)).map(|p| support(from, p)).collect();
    let close = |mask: u32| -> (u32, Vec<Step>) {
        let mut mask = mask;
        let mut steps = Vec::new();
        loop {
            let mut progress = false;
            for (p, sup) in supports.iter().enumerate() {
                let (i, j) = pair_from_index(p);
                if mask & (1 << i) == 0 || mask & (1 << j) == 0 {
                    continue;
                }
                let missing: Vec<usize> = sup.iter().copied().filter(|&k| mask & (1 << k) == 0).collect();
                if missing.len() == 1 {
                    mask |= 1 << missing[0];
                    steps.push(Step::Derive { k: missing[0], pair: p });
                    progress = true;
                }
            }
            if !progress {
                return (mask, steps);
            }
        }
    };
    let full = (1u32 << n) - 1;
    let mut memo: std::collections::HashMap<u32, (u128, Vec<Step>)> = std::collections::HashMap::new();
    fn best(
        mask: u32,
        full: u32,
        counts: &[u128],
        close: &dyn Fn(u32) -> (u32, Vec<Step>),
        memo: &mut std::collections::HashMap<u32, (u128, Vec<Step>)>,
    ) -> (u128, Vec<Step>) {
        if mask == full {
            return (1, Vec::new());
        }
        if let Some(hit) = memo.get(&mask) {
            return hit.clone();
        }
        let mut result: Option<(u128, Vec<Step>)> = None;
        for i in 0..counts.len() {
            if mask & (1 << i) != 0 {
                continue;
            }
            let (next, derived) = close(mask | (1 << i));
            let (tail_cost, tail) = best(next, full, counts, close, memo);
            let cost = counts[i].saturating_mul(tail_cost);
            if result.as_ref().is_none_or(|(c, _)| cost < *c) {
                let mut steps = vec![Step::Branch(i)];
                steps.extend(derived);
                steps.extend(tail);
                result = Some((cost, steps));
            }
        }
        let result = result.expect("some unassigned index");
        memo.insert(mask, result.clone());
        result
    }
    if n == 0 {
        return Vec::new();
    }
    best(0, full, counts, &close, &mut memo).1
}

impl<'a> Search<'a> {
    fn new(from: &'a Algebra, to: &'a Algebra, limits: SearchLimits) -> Result<Option<Self>> {
        let n = from.dim();
        if n > 16 {
            return Err(JordanError::InstanceTooLarge(format!("dimension {n}")));
        }
        let ca = characteristic_subspaces(from);
        let cb = characteristic_subspaces(to);
        if ca.len() != cb.len() || ca.iter().zip(&cb).any(|(x, y)| x.dim() != y.dim()) {
            return Ok(None);
        }
        let mut allowed = Vec::with_capacity(n);
        for i in 0..n {
            let e = crate::linalg::unit_vec(from.field(), n, i);
            let mut s = Subspace::full(to.field(), n);
            for (x, y) in ca.iter().zip(&cb) {
                if x.contains(&e) {
                    s = s.intersect(y);
                }
            }
            allowed.push(s);
        }
        let counts: Vec<u128> = allowed
            .iter()
            .map(|s| match from.field().order() {
                Some(q) => (q as u128).saturating_pow(s.dim() as u32),
                None => 7u128.saturating_pow(s.dim() as u32),
            })
            .collect();
        let steps = plan(from, &counts);
        let mut assigned = 0u32;
        let mut checks = Vec::with_capacity(steps.len());
        for step in &steps {
            let k = match *step {
                Step::Branch(i) => i,
                Step::Derive { k, .. } => k,
            };
            let before = assigned;
            assigned |= 1 << k;
            let ready = |mask: u32, p: usize| {
                let (i, j) = pair_from_index(p);
                let need = support(from, p).iter().fold((1u32 << i) | (1 << j), |m, &k| m | (1 << k));
                mask & need == need
            };
            checks.push((0..pair_count(n)).filter(|&p| ready(assigned, p) && !ready(before, p)).collect());
        }
        let mut cands = vec![Vec::new(); n];
        for step in &steps {
            if let Step::Branch(i) = *step {
                cands[i] = candidates(&allowed[i])?;
            }
        }
        Ok(Some(Search {
            from,
            to,
            n,
            allowed,
            cands,
            steps,
            checks,
            images: vec![None; n],
            echelon: Vec::new(),
            limits,
            nodes: 0,
            aborted: false,
            found: Vec::new(),
        }))
    }

    fn done(&self) -> bool {
        self.aborted || self.limits.max_results.is_some_and(|m| self.found.len() >= m)
    }

    /// Reduces `v` against the current echelon rows; `None` if dependent.
    fn independent(&self, v: &[Scalar]) -> Option<(usize, Vec<Scalar>)> {
        let mut w = v.to_vec();
        for (p, row) in &self.echelon {
            if !w[*p].is_zero() {
                let c = w[*p].clone();
                for (x, r) in w.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = &*x - &(&c * r);
                    }
                }
            }
        }
        let p = w.iter().position(|x| !x.is_zero())?;
        let inv = w[p].inv().expect("nonzero");
        let w: Vec<Scalar> = w.iter().map(|x| x * &inv).collect();
        Some((p, w))
    }

    fn image_of(&self, comb: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.to.field().zero(); self.n];
        for (k, c) in comb.iter().enumerate() {
            if !c.is_zero() {
                crate::linalg::axpy(&mut out, c, self.images[k].as_ref().expect("assigned"));
            }
        }
        out
    }

    fn constraint_holds(&self, pair: usize) -> bool {
        let (i, j) = pair_from_index(pair);
        let lhs = self.image_of(self.from.basis_product(i, j));
        let rhs = self.to.mul(self.images[i].as_ref().expect("assigned"), self.images[j].as_ref().expect("assigned"));
        lhs == rhs
    }

    fn try_assign(&mut self, depth: usize, k: usize, v: Vec<Scalar>) {
        self.nodes += 1;
        if self.nodes > self.limits.max_nodes {
            self.aborted = true;
            return;
        }
        let Some(row) = self.independent(&v) else { return };
        self.images[k] = Some(v);
        self.echelon.push(row);
        if self.checks[depth].iter().all(|&p| self.constraint_holds(p)) {
            self.descend(depth + 1);
        }
        self.echelon.pop();
        self.images[k] = None;
    }

    fn descend(&mut self, depth: usize) {
        if self.done() {
            return;
        }
        if depth == self.steps.len() {
            let cols: Vec<Vec<Scalar>> = self.images.iter().map(|v| v.clone().expect("assigned")).collect();
            self.found.push(Matrix::from_columns(self.to.field(), self.n, &cols));
            return;
        }
        match self.steps[depth] {
            Step::Branch(i) => {
                for idx in 0..self.cands[i].len() {
                    let v = self.cands[i][idx].clone();
                    self.try_assign(depth, i, v);
                    if self.done() {
                        return;
                    }
                }
            }
            Step::Derive { k, pair } => {
                let (i, j) = pair_from_index(pair);
                let coeffs = self.from.basis_product(i, j);
                let ck = coeffs[k].clone();
                let mut rest = coeffs.to_vec();
                rest[k] = self.from.field().zero();
                let prod =
                    self.to.mul(self.images[i].as_ref().expect("assigned"), self.images[j].as_ref().expect("assigned"));
                let partial = self.image_of(&rest);
                let inv = ck.inv().expect("support coefficient");
                let v: Vec<Scalar> = prod.iter().zip(&partial).map(|(x, y)| &(x - y) * &inv).collect();
                if self.allowed[k].contains(&v) {
                    self.try_assign(depth, k, v);
                }
            }
        }
    }
}

/// Isomorphisms `from -> to` (columns are images of basis vectors).
pub fn find_isomorphisms(from: &Algebra, to: &Algebra, limits: SearchLimits) -> Result<SearchOutcome> {
    if from.field() != to.field() {
        return Err(JordanError::FieldMismatch(from.field().to_string(), to.field().to_string()));
    }
    if from.dim() != to.dim() {
        return Ok(SearchOutcome { isomorphisms: Vec::new(), exhaustive: true });
    }
    let Some(mut s) = Search::new(from, to, limits)? else {
        return Ok(SearchOutcome { isomorphisms: Vec::new(), exhaustive: true });
    };
    s.descend(0);
    if s.aborted && from.field().is_prime_field() {
        return Err(JordanError::ResourceExceeded(format!("isomorphism search exceeded {} nodes", limits.max_nodes)));
    }
    let capped = limits.max_results.is_some_and(|m| s.found.len() >= m);
    let exhaustive = from.field().is_prime_field() && !capped;
    Ok(SearchOutcome { isomorphisms: s.found, exhaustive })
}

/// First isomorphism found, if any.
pub fn find_isomorphism(from: &Algebra, to: &Algebra) -> Result<Option<Matrix>> {
    Ok(find_isomorphisms(from, to, SearchLimits::first())?.isomorphisms.into_iter().next())
}
