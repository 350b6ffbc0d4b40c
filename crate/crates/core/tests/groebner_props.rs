mod common;

use std::sync::Arc;

use jordan_core::groebner::{
    buchberger, contains_one, divide, is_groebner_basis, parse_system, reduce, GbLimits, MonomialOrder, Polynomial,
    Ring,
};
use jordan_core::linalg::all_vectors;
use jordan_core::FieldSpec;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn ring(field: FieldSpec, order: MonomialOrder) -> Arc<Ring> {
    Ring::new(field, vec!["x".into(), "y".into(), "z".into()], order)
}

fn random_poly(rng: &mut impl Rng, r: &Arc<Ring>, max_deg: usize) -> Polynomial {
    let vars = ["x", "y", "z"];
    let mut terms = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let c: i64 = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut t = c.to_string();
        for _ in 0..rng.gen_range(0..=max_deg) {
            t.push('*');
            t.push_str(vars[rng.gen_range(0..3)]);
        }
        terms.push(t);
    }
    Polynomial::parse(r, &terms.join(" + ").replace("+ -", "- ")).unwrap()
}

fn order_strategy() -> impl Strategy<Value = MonomialOrder> {
    prop_oneof![Just(MonomialOrder::Lex), Just(MonomialOrder::DegRevLex)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn division_re_expands(seed: u64, order in order_strategy()) {
        let mut rng = common::rng(seed);
        let r = ring(FieldSpec::Rationals, order);
        let f = random_poly(&mut rng, &r, 3);
        let g: Vec<Polynomial> = (0..rng.gen_range(1..=3)).map(|_| random_poly(&mut rng, &r, 2)).collect();
        let (qs, rem) = divide(&f, &g);
        let mut sum = rem.clone();
        for (q, gi) in qs.iter().zip(&g) {
            sum = sum.add(&q.mul(gi));
        }
        prop_assert_eq!(sum, f.clone());
        prop_assert_eq!(reduce(&f, &g), rem);
    }

    #[test]
    fn reduced_basis_is_unique(seed: u64, order in order_strategy(), p in prop_oneof![Just(0u32), Just(5), Just(7)]) {
        let field = if p == 0 { FieldSpec::Rationals } else { FieldSpec::Prime(p) };
        let mut rng = common::rng(seed);
        let r = ring(field, order);
        let mut gens: Vec<Polynomial> = (0..3).map(|_| random_poly(&mut rng, &r, 2)).collect();
        let g = buchberger(&gens, &GbLimits::default()).unwrap();
        prop_assert!(is_groebner_basis(&g));
        for f in &gens {
            prop_assert!(reduce(f, &g).is_zero());
        }
        gens.shuffle(&mut rng);
        gens.push(gens[0].mul(&gens[1]).add(&gens[2]));
        prop_assert_eq!(buchberger(&gens, &GbLimits::default()).unwrap(), g);
    }

    /// Over F_p a basis {1} leaves no common zero in F_p^3.
    #[test]
    fn unit_ideal_has_no_points(seed: u64, p in prop_oneof![Just(2u32), Just(3)]) {
        let field = FieldSpec::Prime(p);
        let mut rng = common::rng(seed);
        let r = ring(field, MonomialOrder::DegRevLex);
        let gens: Vec<Polynomial> = (0..3).map(|_| random_poly(&mut rng, &r, 2)).collect();
        let g = buchberger(&gens, &GbLimits::default()).unwrap();
        let has_point = all_vectors(field, 3).unwrap().iter().any(|pt| gens.iter().all(|f| f.eval(pt).is_zero()));
        if contains_one(&g) {
            prop_assert!(!has_point);
        }
        if has_point {
            prop_assert!(!contains_one(&g));
        }
    }
}

#[test]
fn generator_file() {
    let text = "# circle and line\nfield Q\nvars x y\norder lex\nx^2 + y^2 - 1\nx - y\n";
    let (r, gens) = parse_system(text).unwrap();
    assert_eq!(r.nvars(), 2);
    let g = buchberger(&gens, &GbLimits::default()).unwrap();
    let shown: Vec<String> = g.iter().map(|p| p.to_string()).collect();
    assert_eq!(shown, ["y^2 - 1/2", "x - y"]);
    assert!(parse_system("x + 1\n").is_err());
}

#[test]
fn inconsistent_system() {
    let r = Ring::new(FieldSpec::Rationals, vec!["x".into()], MonomialOrder::Lex);
    let gens = [Polynomial::parse(&r, "x").unwrap(), Polynomial::parse(&r, "x - 1").unwrap()];
    let g = buchberger(&gens, &GbLimits::default()).unwrap();
    assert!(contains_one(&g));
    assert_eq!(g.len(), 1);
}

#[test]
fn limits_are_enforced() {
    let r = ring(FieldSpec::Rationals, MonomialOrder::DegRevLex);
    let gens: Vec<Polynomial> =
        ["x^2 - y*z + 1", "y^2 - x*z - 2", "z^2 - x*y + 3"].iter().map(|s| Polynomial::parse(&r, s).unwrap()).collect();
    let tight = GbLimits { max_pairs: 1, ..GbLimits::default() };
    assert!(buchberger(&gens, &tight).is_err());
    assert!(buchberger(&gens, &GbLimits::default()).is_ok());
    assert_eq!(GbLimits::default().with_overrides("pairs=5, basis=9").unwrap().max_pairs, 5);
    assert!(GbLimits::default().with_overrides("pairs").is_err());
}
