//! Central extensions `J_theta = J + V` with `(x + v)(y + w) = xy + theta(x, y)`.

use std::fmt;

use serde::Serialize;

use crate::algebra::{is_isomorphism, Algebra};
use crate::cohomology::{coboundary, is_cocycle, joint_radical, BilinearForm, Cohomology};
use crate::error::{JordanError, Result};
use crate::field::FieldSpec;
use crate::linalg::{self, Matrix, Subspace};

/// `theta = (theta_1, ..., theta_r)` with values in an `r`-dimensional `V`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CocycleVector {
    components: Vec<BilinearForm>,
}

impl CocycleVector {
    pub fn new(components: Vec<BilinearForm>) -> Result<Self> {
        let first =
            components.first().ok_or_else(|| JordanError::Parse { line: 0, message: "empty cocycle vector".into() })?;
        for c in &components {
            if c.dim() != first.dim() {
                return Err(JordanError::DimensionMismatch { expected: first.dim(), found: c.dim() });
            }
            if c.field() != first.field() {
                return Err(JordanError::FieldMismatch(first.field().to_string(), c.field().to_string()));
            }
        }
        Ok(CocycleVector { components })
    }

    /// Semicolon-separated components in `S(i,j)` notation.
    pub fn parse(field: FieldSpec, n: usize, text: &str) -> Result<Self> {
        let comps = text.split(';').map(|t| BilinearForm::parse(field, n, t)).collect::<Result<Vec<_>>>()?;
        CocycleVector::new(comps)
    }

    pub fn components(&self) -> &[BilinearForm] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn dim(&self) -> usize {
        self.components[0].dim()
    }

    pub fn field(&self) -> FieldSpec {
        self.components[0].field()
    }

    pub fn radical(&self) -> Subspace {
        joint_radical(self.field(), self.dim(), &self.components)
    }
}

impl fmt::Display for CocycleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

impl Serialize for CocycleVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&self.components, s)
    }
}

fn check_compatible(a: &Algebra, theta: &CocycleVector) -> Result<()> {
    if theta.dim() != a.dim() {
        return Err(JordanError::DimensionMismatch { expected: a.dim(), found: theta.dim() });
    }
    if theta.field() != a.field() {
        return Err(JordanError::FieldMismatch(a.field().to_string(), theta.field().to_string()));
    }
    Ok(())
}

/// `J_theta`, after checking every component is a 2-cocycle. The new basis
/// vectors come after those of `a`.
pub fn central_extension(a: &Algebra, theta: &CocycleVector) -> Result<Algebra> {
    check_compatible(a, theta)?;
    if let Some(k) = theta.components.iter().position(|c| !is_cocycle(a, c)) {
        return Err(JordanError::NotACocycle(k + 1));
    }
    central_extension_unchecked(a, theta)
}

/// `J_theta` without the cocycle check.
pub fn central_extension_unchecked(a: &Algebra, theta: &CocycleVector) -> Result<Algebra> {
    check_compatible(a, theta)?;
    let (n, r) = (a.dim(), theta.rank());
    let mut out = Algebra::zero(a.field(), n + r);
    for i in 0..n {
        for j in 0..=i {
            let mut v = a.basis_product(i, j).to_vec();
            v.extend(theta.components.iter().map(|c| c.matrix().get(i, j).clone()));
            out.set_product(i, j, v)?;
        }
    }
    Ok(out)
}

/// `(beta in Z^2, J_beta is Jordan)`; the two agree whenever `a` is Jordan.
pub fn extension_is_jordan_iff_cocycle(a: &Algebra, beta: &CocycleVector) -> Result<(bool, bool)> {
    let cocycle = beta.components.iter().all(|c| is_cocycle(a, c));
    let jordan = central_extension_unchecked(a, beta)?.check_jordan();
    Ok((cocycle, jordan))
}

/// Computes `Z(J_theta)` and checks it equals `(theta^perp meet Z(J)) + V`.
pub fn centre_of_extension_decomposition(a: &Algebra, theta: &CocycleVector) -> Result<(Subspace, bool)> {
    let ext = central_extension(a, theta)?;
    let (n, r) = (a.dim(), theta.rank());
    let centre = ext.centre();
    let expected =
        theta.radical().intersect(&a.centre()).embed(n + r, 0).sum(&Subspace::full(a.field(), r).embed(n + r, n));
    let ok = centre == expected;
    Ok((centre, ok))
}

/// The radical of `theta` meets `Z(J)` trivially and the classes of the
/// components in H^2 are linearly independent.
pub fn is_allowable(a: &Algebra, theta: &CocycleVector) -> bool {
    is_allowable_with(a, &Cohomology::new(a), theta)
}

pub fn is_allowable_with(a: &Algebra, coh: &Cohomology, theta: &CocycleVector) -> bool {
    if check_compatible(a, theta).is_err() {
        return false;
    }
    let mut coords = Vec::new();
    for c in &theta.components {
        match coh.coordinates(c) {
            Ok(v) => coords.push(v),
            Err(_) => return false,
        }
    }
    if theta.rank() > coh.h2_dim() {
        return false;
    }
    let independent = Matrix::from_rows(a.field(), coh.h2_dim(), coords).rank() == theta.rank();
    independent && theta.radical().intersect(&a.centre()).is_zero()
}

/// Builds `J_theta` and `J_{theta + delta f}` for `f : J -> V` (an `r x n`
/// matrix) and checks that `x + v -> x + f(x) + v` is an isomorphism.
pub fn cohomologous_extensions_isomorphic(a: &Algebra, theta: &CocycleVector, f: &Matrix) -> Result<bool> {
    let (n, r) = (a.dim(), theta.rank());
    if f.nrows() != r || f.ncols() != n {
        return Err(JordanError::DimensionMismatch { expected: r * n, found: f.nrows() * f.ncols() });
    }
    let shifted: Vec<BilinearForm> =
        theta.components.iter().enumerate().map(|(k, c)| c.add(&coboundary(a, f.row(k)))).collect();
    let from = central_extension(a, theta)?;
    let to = central_extension(a, &CocycleVector::new(shifted)?)?;
    let mut sigma = Matrix::identity(a.field(), n + r);
    for k in 0..r {
        for j in 0..n {
            sigma.set(n + k, j, f.get(k, j).clone());
        }
    }
    Ok(is_isomorphism(&sigma, &from, &to))
}

/// Writes an algebra with nonzero centre as a central extension of its
/// quotient by the centre: returns `(A, theta, P)` with
/// `central_extension(A, theta) == change_basis(J, P)`.
pub fn split_central_extension(j: &Algebra) -> Result<(Algebra, CocycleVector, Matrix)> {
    let field = j.field();
    let n = j.dim();
    let centre = j.centre();
    let r = centre.dim();
    if r == 0 {
        return Err(JordanError::NotRepresentable);
    }
    let mut acc = centre.clone();
    let mut cols = Vec::new();
    for i in 0..n {
        let e = linalg::unit_vec(field, n, i);
        if !acc.contains(&e) {
            acc = acc.sum(&Subspace::span(field, n, std::slice::from_ref(&e)));
            cols.push(e);
        }
    }
    cols.extend(centre.vectors());
    let p = Matrix::from_columns(field, n, &cols);
    let b = j.change_basis(&p)?;
    let m = n - r;
    let mut quotient = Algebra::zero(field, m);
    let mut thetas = vec![vec![field.zero(); crate::algebra::pair_count(m)]; r];
    for i in 0..m {
        for k in 0..=i {
            let prod = b.basis_product(i, k);
            quotient.set_product(i, k, prod[..m].to_vec())?;
            for (t, theta) in thetas.iter_mut().enumerate() {
                theta[crate::algebra::pair_index(i, k)] = prod[m + t].clone();
            }
        }
    }
    let comps = thetas.iter().map(|v| BilinearForm::from_vector(field, m, v)).collect::<Result<Vec<_>>>()?;
    Ok((quotient, CocycleVector::new(comps)?, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn theta(field: FieldSpec, n: usize, t: &str) -> CocycleVector {
        CocycleVector::parse(field, n, t).unwrap()
    }

    #[test]
    fn small_extensions() {
        let j11 = Algebra::zero(q(), 1);
        let j22 = central_extension(&j11, &theta(q(), 1, "S(1,1)")).unwrap();
        assert_eq!(j22, Algebra::from_table(q(), 2, "a^2 = b").unwrap());
        let j21 = Algebra::zero(q(), 2);
        let j33 = central_extension(&j21, &theta(q(), 2, "S(1,1) + S(2,2)")).unwrap();
        assert_eq!(j33, Algebra::from_table(q(), 3, "a^2 = c; b^2 = c").unwrap());
        let j34 = Algebra::from_table(q(), 3, "a^2 = b; a*b = c").unwrap();
        let zero = central_extension(&j34, &theta(q(), 3, "0")).unwrap();
        assert_eq!(zero, j34.direct_sum(&Algebra::zero(q(), 1)).unwrap());
    }

    #[test]
    fn non_cocycles_rejected() {
        let j22 = Algebra::from_table(q(), 2, "a^2 = b").unwrap();
        let bad = theta(q(), 2, "S(2,1); S(2,2)");
        assert_eq!(central_extension(&j22, &bad), Err(JordanError::NotACocycle(2)));
        assert_eq!(extension_is_jordan_iff_cocycle(&j22, &theta(q(), 2, "S(2,2)")).unwrap(), (false, false));
        assert_eq!(extension_is_jordan_iff_cocycle(&j22, &theta(q(), 2, "0")).unwrap(), (true, true));
        assert_eq!(extension_is_jordan_iff_cocycle(&j22, &theta(q(), 2, "S(2,1)")).unwrap(), (true, true));
    }

    #[test]
    fn extension_centres() {
        let j21 = Algebra::zero(q(), 2);
        let (c, ok) = centre_of_extension_decomposition(&j21, &theta(q(), 2, "S(1,1) + S(2,2)")).unwrap();
        assert!(ok);
        assert_eq!(c, Subspace::span(q(), 3, &[linalg::unit_vec(q(), 3, 2)]));
        let (c, ok) = centre_of_extension_decomposition(&j21, &theta(q(), 2, "0")).unwrap();
        assert!(ok);
        assert_eq!(c.dim(), 3);
        let j32 = Algebra::from_table(q(), 3, "a^2 = b").unwrap();
        let (c, ok) = centre_of_extension_decomposition(&j32, &theta(q(), 3, "S(3,2)")).unwrap();
        assert!(ok);
        assert_eq!(c, Subspace::span(q(), 4, &[linalg::unit_vec(q(), 4, 3)]));
    }

    #[test]
    fn allowability() {
        let j21 = Algebra::zero(q(), 2);
        assert!(!is_allowable(&j21, &theta(q(), 2, "S(1,1)")));
        assert!(is_allowable(&j21, &theta(q(), 2, "S(1,1); S(2,1)")));
        assert!(!is_allowable(&j21, &theta(q(), 2, "S(1,1) + S(2,2); 0")));
        assert!(is_allowable(&j21, &theta(q(), 2, "S(1,1) + S(2,2)")));
        let j22 = Algebra::from_table(q(), 2, "a^2 = b").unwrap();
        assert!(!is_allowable(&j22, &theta(q(), 2, "S(1,1)")));
        assert!(is_allowable(&j22, &theta(q(), 2, "S(2,1)")));
    }

    #[test]
    fn cohomologous_cocycles() {
        let j11 = Algebra::zero(q(), 1);
        let t = theta(q(), 1, "S(1,1)");
        assert!(cohomologous_extensions_isomorphic(&j11, &t, &Matrix::zeros(q(), 1, 1)).unwrap());
        assert!(cohomologous_extensions_isomorphic(&j11, &t, &Matrix::identity(q(), 1)).unwrap());
        let f3 = FieldSpec::Prime(3);
        let j22 = Algebra::from_table(f3, 2, "a^2 = b").unwrap();
        let t = theta(f3, 2, "S(2,1)");
        for f in [[1, 2], [2, 0], [0, 1]] {
            let m = Matrix::from_i64(f3, &[&f]);
            assert!(cohomologous_extensions_isomorphic(&j22, &t, &m).unwrap());
        }
    }

    #[test]
    fn splitting_off_the_centre() {
        let j = Algebra::from_table(q(), 4, "a^2 = b; b*c = d").unwrap();
        let (a, t, p) = split_central_extension(&j).unwrap();
        assert_eq!(a.dim(), 3);
        assert_eq!(central_extension(&a, &t).unwrap(), j.change_basis(&p).unwrap());
        let x = Algebra::from_table(q(), 1, "a^2 = a").unwrap();
        assert!(split_central_extension(&x).is_err());
    }
}
