#![allow(dead_code)]

use jordan_core::cohomology::{cocycle_space, BilinearForm};
use jordan_core::{Algebra, FieldSpec, Matrix, Scalar};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn scalar(rng: &mut impl Rng, field: FieldSpec) -> Scalar {
    match field.order() {
        Some(p) => field.from_i64(rng.gen_range(0..p as i64)),
        None => field.from_i64(rng.gen_range(-3..=3)),
    }
}

pub fn matrix(rng: &mut impl Rng, field: FieldSpec, r: usize, c: usize) -> Matrix {
    let rows = (0..r).map(|_| (0..c).map(|_| scalar(rng, field)).collect()).collect();
    Matrix::from_rows(field, c, rows)
}

pub fn invertible(rng: &mut impl Rng, field: FieldSpec, n: usize) -> Matrix {
    loop {
        let m = matrix(rng, field, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Products `e_i e_j` supported on `e_k` with `k > max(i, j)`, so the
/// algebra is nilpotent; not necessarily Jordan.
pub fn nilpotent_table(rng: &mut impl Rng, field: FieldSpec, n: usize) -> Algebra {
    let mut a = Algebra::zero(field, n);
    for i in 0..n {
        for j in 0..=i {
            let v =
                (0..n).map(|k| if k > i && rng.gen_bool(0.5) { scalar(rng, field) } else { field.zero() }).collect();
            a.set_product(i, j, v).unwrap();
        }
    }
    a
}

pub fn form(rng: &mut impl Rng, field: FieldSpec, n: usize) -> BilinearForm {
    let v: Vec<Scalar> = (0..n * (n + 1) / 2).map(|_| scalar(rng, field)).collect();
    BilinearForm::from_vector(field, n, &v).unwrap()
}

pub fn cocycle(rng: &mut impl Rng, a: &Algebra) -> BilinearForm {
    let field = a.field();
    let mut out = BilinearForm::zero(field, a.dim());
    for b in cocycle_space(a).basis() {
        out = out.add(&b.scale(&scalar(rng, field)));
    }
    out
}
