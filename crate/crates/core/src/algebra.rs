//! Commutative algebras given by structure constants.
//!
//! Only products `e_i * e_j` with `i >= j` are stored (0-based), in the
//! packed order (0,0), (1,0), (1,1), (2,0), ... which is also the coordinate
//! order used for symmetric bilinear forms. Commutativity therefore holds by
//! construction.

use std::fmt;

use serde::Serialize;

use crate::error::{JordanError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{self, Matrix, Subspace};

/// Packed index of the unordered pair `{i, j}`.
pub fn pair_index(i: usize, j: usize) -> usize {
    let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
    hi * (hi + 1) / 2 + lo
}

/// Inverse of [`pair_index`], returns `(i, j)` with `i >= j`.
pub fn pair_from_index(idx: usize) -> (usize, usize) {
    let mut i = 0;
    while (i + 1) * (i + 2) / 2 <= idx {
        i += 1;
    }
    (i, idx - i * (i + 1) / 2)
}

pub fn pair_count(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Default basis label: `a, b, c, d, e` up to dimension 5, then `e1, e2, ...`.
pub fn label(n: usize, i: usize) -> String {
    if n <= 5 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("e{}", i + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Algebra {
    field: FieldSpec,
    dim: usize,
    constants: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub dim: usize,
    pub dim_centre: usize,
    pub dim_square: usize,
    pub dims_lcs: Vec<usize>,
    /// `None` when the algebra is not nilpotent.
    pub nilindex: Option<usize>,
    pub is_associative: bool,
    pub dim_centre_meet_square: usize,
}

impl Algebra {
    /// The algebra with all products zero.
    pub fn zero(field: FieldSpec, dim: usize) -> Self {
        Algebra { field, dim, constants: vec![field.zero(); pair_count(dim) * dim] }
    }

    /// Builds from packed constants: `constants[pair_index(i, j) * dim + k]`.
    pub fn from_constants(field: FieldSpec, dim: usize, constants: Vec<Scalar>) -> Result<Self> {
        if constants.len() != pair_count(dim) * dim {
            return Err(JordanError::DimensionMismatch { expected: pair_count(dim) * dim, found: constants.len() });
        }
        if let Some(bad) = constants.iter().find(|c| c.field() != field) {
            return Err(JordanError::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        Ok(Algebra { field, dim, constants })
    }

    /// Parses a compact table such as `a*a = b; a*b = c; b*b = -c + 2d`.
    /// Labels are the defaults of [`label`]; `x^2` abbreviates `x*x`.
    pub fn from_table(field: FieldSpec, dim: usize, table: &str) -> Result<Self> {
        let mut alg = Algebra::zero(field, dim);
        let idx = |name: &str| -> Result<usize> {
            (0..dim)
                .find(|&i| label(dim, i) == name.trim())
                .ok_or_else(|| JordanError::Parse { line: 0, message: format!("unknown basis element `{name}`") })
        };
        for entry in table.split([';', ',']).map(str::trim).filter(|s| !s.is_empty()) {
            let (lhs, rhs) = entry
                .split_once('=')
                .ok_or_else(|| JordanError::Parse { line: 0, message: format!("missing `=` in `{entry}`") })?;
            let lhs = lhs.trim();
            let (i, j) = if let Some(x) = lhs.strip_suffix("^2") {
                (idx(x)?, idx(x)?)
            } else {
                let (x, y) = lhs
                    .split_once('*')
                    .ok_or_else(|| JordanError::Parse { line: 0, message: format!("bad product `{lhs}`") })?;
                (idx(x)?, idx(y)?)
            };
            let mut v = vec![field.zero(); dim];
            let rhs = rhs.replace('-', "+-");
            for term in rhs.split('+').map(str::trim).filter(|s| !s.is_empty()) {
                let k = (0..dim)
                    .filter(|&k| term.ends_with(&label(dim, k)))
                    .max_by_key(|&k| label(dim, k).len())
                    .ok_or_else(|| JordanError::Parse { line: 0, message: format!("bad term `{term}`") })?;
                let prefix = term[..term.len() - label(dim, k).len()].trim().trim_end_matches('*').trim();
                let coef = match prefix {
                    "" => field.one(),
                    "-" => -field.one(),
                    c => field.parse_scalar(c)?,
                };
                v[k] = &v[k] + &coef;
            }
            let p = pair_index(i, j);
            for (k, x) in v.into_iter().enumerate() {
                alg.constants[p * dim + k] = &alg.constants[p * dim + k] + &x;
            }
        }
        Ok(alg)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &[Scalar] {
        &self.constants
    }

    /// `e_i * e_j` as a coordinate vector (0-based indices).
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let p = pair_index(i, j);
        &self.constants[p * self.dim..(p + 1) * self.dim]
    }

    pub fn set_product(&mut self, i: usize, j: usize, v: Vec<Scalar>) -> Result<()> {
        if i >= self.dim || j >= self.dim {
            return Err(JordanError::IndexOutOfRange(format!("({}, {}) in dimension {}", i + 1, j + 1, self.dim)));
        }
        if v.len() != self.dim {
            return Err(JordanError::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        let p = pair_index(i, j);
        self.constants[p * self.dim..(p + 1) * self.dim].clone_from_slice(&v);
        Ok(())
    }

    pub fn is_zero_product(&self) -> bool {
        self.constants.iter().all(Scalar::is_zero)
    }

    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        for v in [x, y] {
            if v.len() != self.dim {
                return Err(JordanError::DimensionMismatch { expected: self.dim, found: v.len() });
            }
        }
        Ok(self.mul(x, y))
    }

    pub(crate) fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = xi * yj;
                linalg::axpy(&mut out, &c, self.basis_product(i, j));
            }
        }
        out
    }

    /// Matrix of `y -> e_i * y`.
    pub fn left_mul_basis(&self, i: usize) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.basis_product(i, j).to_vec()).collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of `y -> x * y`.
    pub fn left_mul(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for (i, xi) in x.iter().enumerate() {
            if !xi.is_zero() {
                m = m.add(&self.left_mul_basis(i).scale(xi));
            }
        }
        m
    }

    /// Decides the Jordan identity `x^2 (x y) = x (x^2 y)`.
    ///
    /// Over F_2 and F_3 the identity is checked pointwise on every `x`;
    /// over larger prime fields the linearized identity is checked on basis
    /// quadruples; over Q every coefficient of the identity, expanded as a
    /// polynomial in the coordinates of `x`, must vanish.
    pub fn check_jordan(&self) -> bool {
        match self.field {
            FieldSpec::Prime(p) if p <= 3 => self.jordan_pointwise().expect("prime field"),
            FieldSpec::Prime(_) => self.jordan_linearized(),
            FieldSpec::Rationals => self.jordan_symbolic(),
        }
    }

    /// `[L_{x^2}, L_x] = 0` for every `x` in `F_p^n`.
    pub fn jordan_pointwise(&self) -> Result<bool> {
        for x in linalg::all_vectors(self.field, self.dim)? {
            let lx = self.left_mul(&x);
            let lx2 = self.left_mul(&self.mul(&x, &x));
            if lx2.mul(&lx) != lx.mul(&lx2) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn basis_commutators(&self) -> (Vec<Matrix>, Vec<Matrix>) {
        let n = self.dim;
        let l: Vec<Matrix> = (0..n).map(|i| self.left_mul_basis(i)).collect();
        let lp: Vec<Matrix> = (0..pair_count(n))
            .map(|p| {
                let (i, j) = pair_from_index(p);
                self.left_mul(self.basis_product(i, j))
            })
            .collect();
        (l, lp)
    }

    /// `[L_{yz}, L_x] + [L_{xz}, L_y] + [L_{xy}, L_z] = 0` on basis triples.
    pub fn jordan_linearized(&self) -> bool {
        let n = self.dim;
        let (l, lp) = self.basis_commutators();
        let comm = |a: &Matrix, b: &Matrix| {
            let mut c = a.mul(b);
            c = c.add(&b.mul(a).scale(&-self.field.one()));
            c
        };
        for x in 0..n {
            for y in x..n {
                for z in y..n {
                    let s = comm(&lp[pair_index(y, z)], &l[x])
                        .add(&comm(&lp[pair_index(x, z)], &l[y]))
                        .add(&comm(&lp[pair_index(x, y)], &l[z]));
                    if !s.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Coefficient of every monomial `l_a l_b l_c` in `[L_{x^2}, L_x]`,
    /// with `x = sum l_i e_i`, must vanish.
    pub fn jordan_symbolic(&self) -> bool {
        let n = self.dim;
        let (l, lp) = self.basis_commutators();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let mut orderings = vec![(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)];
                    orderings.sort();
                    orderings.dedup();
                    let mut coeff = Matrix::zeros(self.field, n, n);
                    for (i, j, k) in orderings {
                        let sq = &lp[pair_index(i, j)];
                        coeff = coeff.add(&sq.mul(&l[k])).add(&l[k].mul(sq).scale(&-self.field.one()));
                    }
                    if !coeff.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim;
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..n {
                    let left = self.mul(&ij, &linalg::unit_vec(self.field, n, k));
                    let right = self.mul(&linalg::unit_vec(self.field, n, i), self.basis_product(j, k));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `{x : x * e_j = 0 for all j}`.
    pub fn centre(&self) -> Subspace {
        let n = self.dim;
        let mut m = Matrix::zeros(self.field, n * n, n);
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    m.set(j * n + k, i, c.clone());
                }
            }
        }
        Subspace::span(self.field, n, &m.nullspace())
    }

    /// `U * J` for a subspace `U`.
    pub fn product_with_algebra(&self, u: &Subspace) -> Subspace {
        let n = self.dim;
        let mut vs = Vec::new();
        for v in u.basis().rows() {
            for j in 0..n {
                vs.push(self.mul(v, &linalg::unit_vec(self.field, n, j)));
            }
        }
        Subspace::span(self.field, n, &vs)
    }

    pub fn square(&self) -> Subspace {
        self.product_with_algebra(&Subspace::full(self.field, self.dim))
    }

    /// `c^1 = J`, `c^m = c^(m-1) * J`, up to and including the first zero
    /// term, or up to the point where the series stabilizes.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let mut series = vec![Subspace::full(self.field, self.dim)];
        loop {
            let last = series.last().expect("non-empty");
            if last.is_zero() {
                break;
            }
            let next = self.product_with_algebra(last);
            if &next == last {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Smallest `m` with `c^m = 0`, or `None` when the series stabilizes
    /// at a nonzero subspace.
    pub fn nilindex(&self) -> Option<usize> {
        let series = self.lower_central_series();
        series.last().expect("non-empty").is_zero().then_some(series.len())
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilindex().is_some()
    }

    /// The algebra in the basis given by the columns of `p`: the returned
    /// algebra `B` is isomorphic to `self` via `p : B -> self`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Algebra> {
        if p.nrows() != self.dim || p.ncols() != self.dim {
            return Err(JordanError::DimensionMismatch { expected: self.dim, found: p.nrows().max(p.ncols()) });
        }
        if p.field() != self.field {
            return Err(JordanError::FieldMismatch(self.field.to_string(), p.field().to_string()));
        }
        let inv = p.inverse()?;
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| p.column(j)).collect();
        let mut out = Algebra::zero(self.field, self.dim);
        for i in 0..self.dim {
            for j in 0..=i {
                let prod = self.mul(&cols[i], &cols[j]);
                out.set_product(i, j, inv.mul_vec(&prod))?;
            }
        }
        Ok(out)
    }

    pub fn direct_sum(&self, other: &Algebra) -> Result<Algebra> {
        if self.field != other.field {
            return Err(JordanError::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        let (n, m) = (self.dim, other.dim);
        let mut out = Algebra::zero(self.field, n + m);
        for i in 0..n {
            for j in 0..=i {
                let mut v = self.basis_product(i, j).to_vec();
                v.extend(std::iter::repeat_n(self.field.zero(), m));
                out.set_product(i, j, v)?;
            }
        }
        for i in 0..m {
            for j in 0..=i {
                let mut v = vec![self.field.zero(); n];
                v.extend_from_slice(other.basis_product(i, j));
                out.set_product(n + i, n + j, v)?;
            }
        }
        Ok(out)
    }

    /// Reinterprets rational structure constants in another field.
    pub fn instantiate(&self, field: FieldSpec) -> Result<Algebra> {
        if field == self.field {
            return Ok(self.clone());
        }
        let constants = self
            .constants
            .iter()
            .map(|c| match c.as_rational() {
                Some(q) => field.from_rational(q),
                None => Err(JordanError::FieldMismatch(self.field.to_string(), field.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Algebra::from_constants(field, self.dim, constants)
    }

    pub fn fingerprint(&self) -> Fingerprint {
        let centre = self.centre();
        let series = self.lower_central_series();
        let square = self.square();
        let nilindex = series.last().expect("non-empty").is_zero().then_some(series.len());
        Fingerprint {
            dim: self.dim,
            dim_centre: centre.dim(),
            dim_square: square.dim(),
            dims_lcs: series.iter().map(Subspace::dim).collect(),
            nilindex,
            is_associative: self.is_associative(),
            dim_centre_meet_square: centre.intersect(&square).dim(),
        }
    }

    /// Whether a nonzero central element lies outside `J^2`, i.e. the
    /// algebra splits off a one-dimensional zero-product direct summand.
    pub fn has_central_component(&self) -> bool {
        let centre = self.centre();
        !centre.is_subspace_of(&self.square())
    }

    /// Multiplication table in the `a*b = c` notation; zero products omitted.
    pub fn table(&self) -> String {
        let n = self.dim;
        let mut parts = Vec::new();
        for j in 0..n {
            for i in j..n {
                let v = self.basis_product(i, j);
                if linalg::is_zero_vec(v) {
                    continue;
                }
                let lhs =
                    if i == j { format!("{}^2", label(n, i)) } else { format!("{}*{}", label(n, j), label(n, i)) };
                parts.push(format!("{lhs} = {}", render_vector(v, |k| label(n, k))));
            }
        }
        if parts.is_empty() {
            "all products zero".to_string()
        } else {
            parts.join("; ")
        }
    }
}

impl Serialize for Algebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Algebra", 3)?;
        st.serialize_field("field", &self.field.to_string())?;
        st.serialize_field("dim", &self.dim)?;
        st.serialize_field("table", &self.table())?;
        st.end()
    }
}

/// Whether `phi` (columns = images of basis vectors) is an isomorphism
/// `from -> to`, i.e. invertible with `phi(e_i e_j) = phi(e_i) phi(e_j)`.
pub fn is_isomorphism(phi: &Matrix, from: &Algebra, to: &Algebra) -> bool {
    let n = from.dim;
    if to.dim != n || to.field != from.field || phi.nrows() != n || phi.ncols() != n || phi.field() != from.field {
        return false;
    }
    if !phi.is_invertible() {
        return false;
    }
    let cols: Vec<Vec<Scalar>> = (0..n).map(|j| phi.column(j)).collect();
    for i in 0..n {
        for j in 0..=i {
            if phi.mul_vec(from.basis_product(i, j)) != to.mul(&cols[i], &cols[j]) {
                return false;
            }
        }
    }
    true
}

/// Renders a coordinate vector as a linear combination of named basis elements.
pub fn render_vector(v: &[Scalar], name: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let (neg, mag) = match s.strip_prefix('-') {
            Some(m) => (true, m.to_string()),
            None => (false, s),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            out.push_str(&mag);
            out.push('*');
        }
        out.push_str(&name(k));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} dim {}] {}", self.field, self.dim, self.table())
    }
}
