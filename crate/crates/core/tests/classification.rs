mod common;

use jordan_core::catalog::{catalog_over, CatalogCase};
use jordan_core::classify::{
    brute_force_classes, classify_up_to, descendants, general_linear_group, match_classes, Provenance,
};
use jordan_core::extension::split_central_extension;
use jordan_core::isotest::{decide, verify_witness, DecideMode, IsoVerdict};
use jordan_core::search::find_isomorphism;
use jordan_core::{Algebra, FieldSpec, JordanError};

fn f(p: u32) -> FieldSpec {
    FieldSpec::Prime(p)
}

fn isomorphic_to_one_of(a: &Algebra, reps: &[&Algebra]) -> usize {
    reps.iter().filter(|r| find_isomorphism(a, r).unwrap().is_some()).count()
}

#[test]
fn catalog_entries_appear_in_classification() {
    for p in [3, 5] {
        let results = classify_up_to(3, f(p)).unwrap();
        let dim3 = results[2].algebras();
        let real = catalog_over(CatalogCase::Real, 3, f(p)).unwrap();
        assert_eq!(real.len(), 5);
        for e in &real {
            assert_eq!(isomorphic_to_one_of(&e.algebra, &dim3), 1, "{} over F {p}", e.id);
        }
        for e in catalog_over(CatalogCase::ClosedCharNot2, 3, f(p)).unwrap() {
            assert_eq!(isomorphic_to_one_of(&e.algebra, &dim3), 1, "{} over F {p}", e.id);
        }
    }
    let results = classify_up_to(4, f(3)).unwrap();
    let dim4 = results[3].algebras();
    for case in [CatalogCase::ClosedCharNot2, CatalogCase::Real] {
        for e in catalog_over(case, 4, f(3)).unwrap() {
            assert_eq!(isomorphic_to_one_of(&e.algebra, &dim4), 1, "{} {}", case, e.id);
        }
    }
}

#[test]
fn char2_catalog_matches_classification() {
    let reps = classify_up_to(3, f(2)).unwrap().pop().unwrap();
    let algebras = reps.algebras();
    let entries = catalog_over(CatalogCase::Char2, 3, f(2)).unwrap();
    assert_eq!(entries.len(), algebras.len());
    for e in &entries {
        assert_eq!(isomorphic_to_one_of(&e.algebra, &algebras), 1, "{}", e.id);
    }
}

#[test]
fn representatives_are_distinct_and_valid() {
    for p in [2, 3] {
        for r in classify_up_to(4, f(p)).unwrap() {
            for (i, x) in r.representatives.iter().enumerate() {
                assert!(x.algebra.check_jordan() && x.algebra.is_nilpotent());
                for y in &r.representatives[i + 1..] {
                    assert!(find_isomorphism(&x.algebra, &y.algebra).unwrap().is_none());
                }
            }
        }
    }
}

#[test]
fn quotients_by_the_centre_are_listed() {
    let results = classify_up_to(4, f(3)).unwrap();
    for r in &results[1..] {
        for rep in &r.representatives {
            if let Provenance::Descendant { parent, r: step, .. } = &rep.provenance {
                let (quotient, theta, _) = split_central_extension(&rep.algebra).unwrap();
                assert_eq!(theta.rank(), *step);
                assert!(find_isomorphism(&quotient, parent).unwrap().is_some());
                let lower = results[quotient.dim() - 1].algebras();
                assert_eq!(isomorphic_to_one_of(&quotient, &lower), 1);
            } else {
                assert!(rep.algebra.has_central_component() || rep.algebra.dim() == 1);
            }
        }
    }
}

#[test]
fn output_does_not_depend_on_threads() {
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| serde_json::to_string(&classify_up_to(4, f(2)).unwrap()).unwrap())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn dimension_four_counts() {
    let counts: Vec<usize> =
        [2, 3].iter().map(|&p| classify_up_to(4, f(p)).unwrap()[3].representatives.len()).collect();
    assert_eq!(counts, [22, 16]);
    let err = classify_up_to(4, f(5)).unwrap_err();
    assert!(matches!(err, JordanError::ResourceExceeded(_)));
}

#[test]
fn descendants_of_zero_algebra_over_f2() {
    let d = descendants(&Algebra::zero(f(2), 2), 1).unwrap();
    let tables: Vec<String> = d.iter().map(|x| x.algebra.table()).collect();
    assert_eq!(tables, ["a*b = c", "a*b = c; b^2 = c"]);
    let diag = Algebra::from_table(f(2), 3, "a^2 = c; b^2 = c").unwrap();
    assert!(find_isomorphism(&d[1].algebra, &diag).unwrap().is_some());
}

#[test]
fn oracle_matches_pipeline_with_witnesses() {
    let o = brute_force_classes(3, f(2)).unwrap();
    let c = classify_up_to(3, f(2)).unwrap().pop().unwrap();
    let sizes: usize = o
        .representatives
        .iter()
        .map(|r| match r.provenance {
            Provenance::Enumerated { tables } => tables,
            _ => 0,
        })
        .sum();
    assert_eq!(sizes, o.stats.nilpotent_jordan);
    let m = match_classes(&o, &c).unwrap();
    assert_eq!(m.len(), 5);
    for x in m {
        assert!(verify_witness(
            &o.representatives[x.oracle].algebra,
            &c.representatives[x.pipeline].algebra,
            &x.witness
        ));
    }
}

/// `decide` agrees with a search over all of GL_3(F_2).
#[test]
fn decide_agrees_with_full_gl_enumeration() {
    let field = f(2);
    let gl = general_linear_group(3, field).unwrap();
    let mut rng = common::rng(2024);
    let mut pool = Vec::new();
    while pool.len() < 40 {
        let a = common::nilpotent_table(&mut rng, field, 3);
        if a.check_jordan() {
            let p = common::invertible(&mut rng, field, 3);
            pool.push(a.change_basis(&p).unwrap());
        }
    }
    let (mut iso, mut non) = (0, 0);
    for (i, a) in pool.iter().enumerate() {
        for b in &pool[i..] {
            let oracle = gl.iter().any(|p| b.change_basis(p).unwrap() == *a);
            match decide(a, b, DecideMode::BaseFieldFirst) {
                IsoVerdict::Isomorphic { witness } => {
                    assert!(oracle);
                    assert!(verify_witness(a, b, &witness));
                    iso += 1;
                }
                IsoVerdict::ResourceExceeded { reason } => panic!("{reason}"),
                _ => {
                    assert!(!oracle, "{} vs {}", a.table(), b.table());
                    non += 1;
                }
            }
        }
    }
    assert!(iso > 40 && non > 0);
}
