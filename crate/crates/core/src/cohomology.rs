//! Symmetric bilinear forms, 2-cocycles, coboundaries and the second
//! cohomology space H^2(J, K) with trivial coefficients.
//!
//! Forms are vectorized in the packed pair order of [`crate::algebra::pair_index`].

use std::fmt;

use serde::Serialize;

use crate::algebra::{pair_count, pair_from_index, pair_index, Algebra};
use crate::error::{JordanError, Result};
use crate::field::{FieldSpec, Scalar};
use crate::linalg::{self, Matrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BilinearForm {
    matrix: Matrix,
}

impl BilinearForm {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(JordanError::DimensionMismatch { expected: matrix.nrows(), found: matrix.ncols() });
        }
        if !matrix.is_symmetric() {
            return Err(JordanError::Parse { line: 0, message: "bilinear form is not symmetric".into() });
        }
        Ok(BilinearForm { matrix })
    }

    pub fn zero(field: FieldSpec, n: usize) -> Self {
        BilinearForm { matrix: Matrix::zeros(field, n, n) }
    }

    /// From packed coordinates `(1,1), (2,1), (2,2), (3,1), ...`.
    pub fn from_vector(field: FieldSpec, n: usize, v: &[Scalar]) -> Result<Self> {
        if v.len() != pair_count(n) {
            return Err(JordanError::DimensionMismatch { expected: pair_count(n), found: v.len() });
        }
        let mut m = Matrix::zeros(field, n, n);
        for (p, c) in v.iter().enumerate() {
            let (i, j) = pair_from_index(p);
            m.set(i, j, c.clone());
            m.set(j, i, c.clone());
        }
        Ok(BilinearForm { matrix: m })
    }

    pub fn to_vector(&self) -> Vec<Scalar> {
        (0..pair_count(self.dim()))
            .map(|p| {
                let (i, j) = pair_from_index(p);
                self.matrix.get(i, j).clone()
            })
            .collect()
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        linalg::dot(x, &self.matrix.mul_vec(y), self.field())
    }

    pub fn add(&self, other: &BilinearForm) -> BilinearForm {
        BilinearForm { matrix: self.matrix.add(&other.matrix) }
    }

    pub fn scale(&self, c: &Scalar) -> BilinearForm {
        BilinearForm { matrix: self.matrix.scale(c) }
    }

    /// `{x : theta(x, e_j) = 0 for all j}`.
    pub fn radical(&self) -> Subspace {
        Subspace::span(self.field(), self.dim(), &self.matrix.nullspace())
    }

    /// `(phi theta)(x, y) = theta(phi x, phi y)`, i.e. `phi^T M phi`.
    pub fn pull_back(&self, phi: &Matrix) -> Result<BilinearForm> {
        if phi.nrows() != self.dim() || phi.ncols() != self.dim() {
            return Err(JordanError::DimensionMismatch { expected: self.dim(), found: phi.nrows().max(phi.ncols()) });
        }
        Ok(BilinearForm { matrix: phi.transpose().mul(&self.matrix).mul(phi) })
    }

    /// Parses `S(1,1) + 2*S(2,1) - 1/2 S(3,3)` (1-based, order of the two
    /// indices irrelevant). `0` denotes the zero form.
    pub fn parse(field: FieldSpec, n: usize, text: &str) -> Result<Self> {
        let err = |m: String| JordanError::Parse { line: 0, message: m };
        let mut v = vec![field.zero(); pair_count(n)];
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s == "0" {
            return Ok(BilinearForm::zero(field, n));
        }
        let mut terms = Vec::new();
        let mut depth = 0;
        let mut start = 0;
        for (k, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '+' | '-' if depth == 0 && k > start => {
                    terms.push(&s[start..k]);
                    start = if ch == '+' { k + 1 } else { k };
                }
                '+' if depth == 0 => start = k + 1,
                _ => {}
            }
        }
        terms.push(&s[start..]);
        for term in terms {
            let at = term.find("S(").ok_or_else(|| err(format!("expected S(i,j) in `{term}`")))?;
            let coef = match term[..at].trim_end_matches('*') {
                "" => field.one(),
                "-" => -field.one(),
                c => field.parse_scalar(c)?,
            };
            let inner = term[at + 2..].strip_suffix(')').ok_or_else(|| err(format!("unclosed `{term}`")))?;
            let (i, j) = inner.split_once(',').ok_or_else(|| err(format!("expected S(i,j) in `{term}`")))?;
            let parse_idx = |t: &str| -> Result<usize> {
                let k: usize = t.parse().map_err(|_| err(format!("bad index `{t}`")))?;
                if k == 0 || k > n {
                    return Err(JordanError::IndexOutOfRange(format!("S index {k} in dimension {n}")));
                }
                Ok(k - 1)
            };
            let p = pair_index(parse_idx(i)?, parse_idx(j)?);
            v[p] = &v[p] + &coef;
        }
        BilinearForm::from_vector(field, n, &v)
    }
}

/// Renders in `S(i,j)` notation with `i >= j`, 1-based.
impl fmt::Display for BilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = crate::algebra::render_vector(&self.to_vector(), |p| {
            let (i, j) = pair_from_index(p);
            format!("S({},{})", i + 1, j + 1)
        });
        f.write_str(&s)
    }
}

impl Serialize for BilinearForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The form with value 1 on `(e_i, e_j)` and `(e_j, e_i)`, 1-based.
pub fn dual_form(field: FieldSpec, n: usize, i: usize, j: usize) -> Result<BilinearForm> {
    if i == 0 || j == 0 || i > n || j > n {
        return Err(JordanError::IndexOutOfRange(format!("({i}, {j}) in dimension {n}")));
    }
    let mut v = vec![field.zero(); pair_count(n)];
    v[pair_index(i - 1, j - 1)] = field.one();
    BilinearForm::from_vector(field, n, &v)
}

/// Common radical of several forms.
pub fn joint_radical(field: FieldSpec, n: usize, forms: &[BilinearForm]) -> Subspace {
    let rows: Vec<Vec<Scalar>> = forms.iter().flat_map(|f| f.matrix().to_rows()).collect();
    if rows.is_empty() {
        return Subspace::full(field, n);
    }
    Subspace::span(field, n, &Matrix::from_rows(field, n, rows).nullspace())
}

/// A subspace of symmetric forms on an `n`-dimensional space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FormSpace {
    n: usize,
    space: Subspace,
}

impl FormSpace {
    pub fn from_forms(field: FieldSpec, n: usize, forms: &[BilinearForm]) -> Self {
        let vs: Vec<Vec<Scalar>> = forms.iter().map(BilinearForm::to_vector).collect();
        FormSpace { n, space: Subspace::span(field, pair_count(n), &vs) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn field(&self) -> FieldSpec {
        self.space.field()
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn basis(&self) -> Vec<BilinearForm> {
        self.space
            .vectors()
            .iter()
            .map(|v| BilinearForm::from_vector(self.field(), self.n, v).expect("packed length"))
            .collect()
    }

    pub fn contains(&self, form: &BilinearForm) -> bool {
        form.dim() == self.n && self.space.contains(&form.to_vector())
    }

    pub fn is_subspace_of(&self, other: &FormSpace) -> bool {
        self.space.is_subspace_of(&other.space)
    }
}

/// Coefficient row of `t -> theta_t(u, w)` in packed coordinates, added with sign.
fn add_eval_row(row: &mut [Scalar], u: &[Scalar], w: &[Scalar], negate: bool) {
    for (i, ui) in u.iter().enumerate() {
        if ui.is_zero() {
            continue;
        }
        for (j, wj) in w.iter().enumerate() {
            if wj.is_zero() {
                continue;
            }
            let p = pair_index(i, j);
            let c = ui * wj;
            row[p] = if negate { &row[p] - &c } else { &row[p] + &c };
        }
    }
}

/// Linear conditions on packed form coordinates cutting out Z^2.
fn cocycle_conditions(a: &Algebra) -> Vec<Vec<Scalar>> {
    let field = a.field();
    let n = a.dim();
    let e = |i| linalg::unit_vec(field, n, i);
    let mut rows = Vec::new();
    match field {
        FieldSpec::Prime(p) if p <= 3 => {
            // theta(x^2, x y) = theta(x, x^2 y) for every x and basis y.
            for x in linalg::all_vectors(field, n).expect("small prime field") {
                let x2 = a.mul(&x, &x);
                for j in 0..n {
                    let mut row = vec![field.zero(); pair_count(n)];
                    add_eval_row(&mut row, &x2, &a.mul(&x, &e(j)), false);
                    add_eval_row(&mut row, &x, &a.mul(&x2, &e(j)), true);
                    rows.push(row);
                }
            }
        }
        _ => {
            // theta(x, v(yz)) + theta(y, v(xz)) + theta(z, v(xy))
            //   = theta(xy, zv) + theta(yz, xv) + theta(xz, yv)
            for x in 0..n {
                for y in x..n {
                    for z in y..n {
                        let xy = a.basis_product(x, y);
                        let xz = a.basis_product(x, z);
                        let yz = a.basis_product(y, z);
                        for v in 0..n {
                            let ev = e(v);
                            let mut row = vec![field.zero(); pair_count(n)];
                            add_eval_row(&mut row, &e(x), &a.mul(&ev, yz), false);
                            add_eval_row(&mut row, &e(y), &a.mul(&ev, xz), false);
                            add_eval_row(&mut row, &e(z), &a.mul(&ev, xy), false);
                            add_eval_row(&mut row, xy, a.basis_product(z, v), true);
                            add_eval_row(&mut row, yz, a.basis_product(x, v), true);
                            add_eval_row(&mut row, xz, a.basis_product(y, v), true);
                            rows.push(row);
                        }
                    }
                }
            }
        }
    }
    rows
}

/// Whether a form satisfies the cocycle conditions used for [`cocycle_space`].
pub fn is_cocycle(a: &Algebra, form: &BilinearForm) -> bool {
    let v = form.to_vector();
    form.dim() == a.dim() && cocycle_conditions(a).iter().all(|row| linalg::dot(row, &v, a.field()).is_zero())
}

/// Z^2(J, K). Over F_2 and F_3 the cocycle identity is imposed pointwise;
/// otherwise its linearization on basis quadruples is used.
pub fn cocycle_space(a: &Algebra) -> FormSpace {
    let field = a.field();
    let n = a.dim();
    let rows = cocycle_conditions(a);
    let space = if rows.is_empty() {
        Subspace::full(field, pair_count(n))
    } else {
        Subspace::span(field, pair_count(n), &Matrix::from_rows(field, pair_count(n), rows).nullspace())
    };
    FormSpace { n, space }
}

/// `delta f_k (e_i, e_j)` = k-th coordinate of `e_i e_j`.
pub fn coboundary(a: &Algebra, f: &[Scalar]) -> BilinearForm {
    let v: Vec<Scalar> = (0..pair_count(a.dim()))
        .map(|p| {
            let (i, j) = pair_from_index(p);
            linalg::dot(f, a.basis_product(i, j), a.field())
        })
        .collect();
    BilinearForm::from_vector(a.field(), a.dim(), &v).expect("packed length")
}

/// delta C^1(J, K).
pub fn coboundary_space(a: &Algebra) -> FormSpace {
    let forms: Vec<BilinearForm> =
        (0..a.dim()).map(|k| coboundary(a, &linalg::unit_vec(a.field(), a.dim(), k))).collect();
    FormSpace::from_forms(a.field(), a.dim(), &forms)
}

/// Z^2, delta C^1 and a fixed complement H^2 of delta C^1 in Z^2, with
/// coordinates of cocycles modulo coboundaries.
#[derive(Clone, Debug)]
pub struct Cohomology {
    n: usize,
    field: FieldSpec,
    z2: FormSpace,
    b2: FormSpace,
    h2: FormSpace,
    h2_basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    solve: Matrix,
}

impl Cohomology {
    pub fn new(a: &Algebra) -> Self {
        let field = a.field();
        let n = a.dim();
        let z2 = cocycle_space(a);
        let b2 = coboundary_space(a);
        let mut acc = b2.space.clone();
        let mut h2_basis = Vec::new();
        for row in z2.space.vectors() {
            if !acc.contains(&row) {
                acc = acc.sum(&Subspace::span(field, pair_count(n), std::slice::from_ref(&row)));
                h2_basis.push(row);
            }
        }
        let h2 = FormSpace { n, space: Subspace::span(field, pair_count(n), &h2_basis) };
        let pivots = z2.space.pivots();
        let mut rows: Vec<Vec<Scalar>> = h2_basis.clone();
        rows.extend(b2.space.vectors());
        let square: Vec<Vec<Scalar>> = rows.iter().map(|r| pivots.iter().map(|&p| r[p].clone()).collect()).collect();
        let solve = Matrix::from_rows(field, pivots.len(), square).inverse().expect("basis of Z^2");
        Cohomology { n, field, z2, b2, h2, h2_basis, pivots, solve }
    }

    pub fn cocycles(&self) -> &FormSpace {
        &self.z2
    }

    pub fn coboundaries(&self) -> &FormSpace {
        &self.b2
    }

    pub fn h2(&self) -> &FormSpace {
        &self.h2
    }

    pub fn h2_dim(&self) -> usize {
        self.h2_basis.len()
    }

    /// The chosen H^2 representatives, in coordinate order.
    pub fn h2_basis(&self) -> Vec<BilinearForm> {
        self.h2_basis.iter().map(|v| BilinearForm::from_vector(self.field, self.n, v).expect("packed length")).collect()
    }

    /// Coordinates of the class of a cocycle in the H^2 basis.
    pub fn coordinates(&self, form: &BilinearForm) -> Result<Vec<Scalar>> {
        let v = form.to_vector();
        if form.dim() != self.n || !self.z2.space.contains(&v) {
            return Err(JordanError::NotRepresentable);
        }
        let restricted: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut coeffs = self.solve.vec_mul(&restricted);
        coeffs.truncate(self.h2_basis.len());
        Ok(coeffs)
    }

    /// Form in the span of the H^2 basis with the given coordinates.
    pub fn form_from_coordinates(&self, coords: &[Scalar]) -> Result<BilinearForm> {
        if coords.len() != self.h2_basis.len() {
            return Err(JordanError::DimensionMismatch { expected: self.h2_basis.len(), found: coords.len() });
        }
        let mut v = vec![self.field.zero(); pair_count(self.n)];
        for (c, b) in coords.iter().zip(&self.h2_basis) {
            linalg::axpy(&mut v, c, b);
        }
        BilinearForm::from_vector(self.field, self.n, &v)
    }

    /// The H^2 representative cohomologous to a cocycle.
    pub fn reduce(&self, form: &BilinearForm) -> Result<BilinearForm> {
        self.form_from_coordinates(&self.coordinates(form)?)
    }
}

pub fn h2_space(a: &Algebra) -> FormSpace {
    Cohomology::new(a).h2
}
