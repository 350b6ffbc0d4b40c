//! Automorphism groups over prime fields, their action on H^2 and orbits
//! of allowable subspaces of H^2.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Algebra;
use crate::cohomology::{joint_radical, BilinearForm, Cohomology};
use crate::error::{JordanError, Result};
use crate::extension::CocycleVector;
use crate::field::{FieldSpec, Scalar};
use crate::linalg::Matrix;
use crate::search::{find_isomorphisms, SearchLimits};

/// Largest automorphism group enumerated by default.
pub const DEFAULT_AUT_CAP: usize = 200_000;
/// Largest Grassmannian enumerated.
pub const MAX_POINTS: usize = 2_000_000;

#[derive(Clone, Debug)]
pub struct AutGroup {
    algebra: Algebra,
    elements: Vec<Matrix>,
}

impl AutGroup {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

pub fn automorphism_group(a: &Algebra) -> Result<AutGroup> {
    automorphism_group_capped(a, DEFAULT_AUT_CAP)
}

pub fn automorphism_group_capped(a: &Algebra, cap: usize) -> Result<AutGroup> {
    if !a.field().is_prime_field() {
        return Err(JordanError::UnsupportedField(a.field().to_string()));
    }
    let limits = SearchLimits { max_results: Some(cap.saturating_add(1)), max_nodes: u64::MAX };
    let out = find_isomorphisms(a, a, limits)?;
    if out.isomorphisms.len() > cap {
        return Err(JordanError::ResourceExceeded(format!("automorphism group larger than {cap}")));
    }
    Ok(AutGroup { algebra: a.clone(), elements: out.isomorphisms })
}

/// Matrix `M` with `act(phi, v) = v M` for coordinate row vectors in the
/// H^2 basis: row `k` holds the coordinates of `phi h_k`.
pub fn action_matrix(coh: &Cohomology, phi: &Matrix) -> Result<Matrix> {
    let rows = coh.h2_basis().iter().map(|h| coh.coordinates(&h.pull_back(phi)?)).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(phi.field(), coh.h2_dim(), rows))
}

/// Class of `phi theta` where `theta` has coordinates `v`; satisfies
/// `act(phi psi, v) = act(psi, act(phi, v))`.
pub fn act_on_h2(coh: &Cohomology, phi: &Matrix, v: &[Scalar]) -> Result<Vec<Scalar>> {
    let theta = coh.form_from_coordinates(v)?;
    coh.coordinates(&theta.pull_back(phi)?)
}

/// Number of `r`-dimensional subspaces of `F_q^h`.
pub fn gaussian_binomial(h: usize, r: usize, q: u64) -> u128 {
    if r > h {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..r {
        num *= q.pow((h - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// All `r`-dimensional subspaces of `F_p^h` as `r x h` matrices in reduced
/// row echelon form, sorted.
pub fn grassmannian_points(h: usize, r: usize, field: FieldSpec) -> Result<Vec<Matrix>> {
    let Some(q) = field.order() else {
        return Err(JordanError::UnsupportedField(field.to_string()));
    };
    if r > h {
        return Ok(Vec::new());
    }
    if gaussian_binomial(h, r, q) > MAX_POINTS as u128 {
        return Err(JordanError::ResourceExceeded(format!("Grassmannian G({r}, {h}) over {field} too large")));
    }
    let elems = field.enumerate()?;
    let mut out = Vec::new();
    let mut pivots = Vec::new();
    fn rec(
        start: usize,
        h: usize,
        r: usize,
        field: FieldSpec,
        elems: &[Scalar],
        pivots: &mut Vec<usize>,
        out: &mut Vec<Matrix>,
    ) {
        if pivots.len() == r {
            let free: Vec<(usize, usize)> = (0..r)
                .flat_map(|i| {
                    let piv = pivots.clone();
                    (piv[i] + 1..h).filter(move |j| !piv.contains(j)).map(move |j| (i, j))
                })
                .collect();
            let total = elems.len().pow(free.len() as u32);
            for code in 0..total {
                let mut m = Matrix::zeros(field, r, h);
                for (i, &p) in pivots.iter().enumerate() {
                    m.set(i, p, field.one());
                }
                let mut c = code;
                for &(i, j) in &free {
                    m.set(i, j, elems[c % elems.len()].clone());
                    c /= elems.len();
                }
                out.push(m);
            }
            return;
        }
        for p in start..h {
            pivots.push(p);
            rec(p + 1, h, r, field, elems, pivots, out);
            pivots.pop();
        }
    }
    rec(0, h, r, field, &elems, &mut pivots, &mut out);
    out.sort();
    Ok(out)
}

fn canonical(m: &Matrix) -> Matrix {
    m.rref().0
}

/// The cocycle vector spanned by a point of `G_r(H^2)`.
pub fn point_cocycles(coh: &Cohomology, point: &Matrix) -> Result<CocycleVector> {
    let forms = point.rows().map(|row| coh.form_from_coordinates(row)).collect::<Result<Vec<BilinearForm>>>()?;
    CocycleVector::new(forms)
}

#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    /// Lexicographically least point of the orbit.
    pub representative: Matrix,
    pub cocycles: CocycleVector,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub r: usize,
    pub h2_dim: usize,
    pub aut_order: usize,
    pub points: usize,
    pub allowable: usize,
    pub orbits: Vec<Orbit>,
}

/// Orbits of `Aut(A)` on the allowable `r`-dimensional subspaces of H^2:
/// those whose joint radical meets the centre trivially.
pub fn orbit_representatives(a: &Algebra, r: usize) -> Result<OrbitReport> {
    let coh = Cohomology::new(a);
    let aut = automorphism_group(a)?;
    orbit_representatives_with(a, &coh, &aut, r)
}

pub fn orbit_representatives_with(a: &Algebra, coh: &Cohomology, aut: &AutGroup, r: usize) -> Result<OrbitReport> {
    let field = a.field();
    let h = coh.h2_dim();
    let empty = |points| OrbitReport { r, h2_dim: h, aut_order: aut.order(), points, allowable: 0, orbits: Vec::new() };
    if r == 0 || r > h {
        return Ok(empty(0));
    }
    let points = grassmannian_points(h, r, field)?;
    let centre = a.centre();
    let allowable: Vec<bool> = points
        .par_iter()
        .map(|p| {
            let theta = point_cocycles(coh, p)?;
            Ok(joint_radical(field, a.dim(), theta.components()).intersect(&centre).is_zero())
        })
        .collect::<Result<Vec<bool>>>()?;
    let n_allowable = allowable.iter().filter(|&&x| x).count();
    if n_allowable == 0 {
        return Ok(empty(points.len()));
    }
    let actions = aut.elements().par_iter().map(|phi| action_matrix(coh, phi)).collect::<Result<Vec<Matrix>>>()?;
    let index: HashMap<&Matrix, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut seen = vec![false; points.len()];
    let mut orbits = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if seen[i] || !allowable[i] {
            continue;
        }
        let images: BTreeSet<Matrix> = actions.par_iter().map(|m| canonical(&p.mul(m))).collect();
        for img in &images {
            let j = *index.get(img).ok_or(JordanError::NotRepresentable)?;
            if !allowable[j] {
                return Err(JordanError::NotRepresentable);
            }
            seen[j] = true;
        }
        orbits.push(Orbit { representative: p.clone(), cocycles: point_cocycles(coh, p)?, size: images.len() });
    }
    Ok(OrbitReport { r, h2_dim: h, aut_order: aut.order(), points: points.len(), allowable: n_allowable, orbits })
}
