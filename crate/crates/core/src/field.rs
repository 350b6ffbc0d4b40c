//! Exact scalars over the rationals and prime fields.
//!
//! A [`Scalar`] carries its own field, so arithmetic between scalars of
//! different fields is a programming error and panics. Everything fallible
//! that depends on data (inversion, parsing) returns [`Result`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{JordanError, Result};

/// Largest modulus accepted for prime fields; keeps products inside `u64`.
pub const MAX_MODULUS: u64 = (1 << 31) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FieldSpec {
    Rationals,
    Prime(u32),
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p > MAX_MODULUS {
            return Err(JordanError::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p as u64,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p as u64),
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(Box::new(BigRational::from_integer(n.into()))),
            FieldSpec::Prime(p) => {
                let p = *p as i64;
                Scalar::Modular { value: n.rem_euclid(p) as u32, modulus: p as u32 }
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(Box::new(BigRational::from_integer(n.clone()))),
            FieldSpec::Prime(p) => {
                let m = BigInt::from(*p);
                let r = ((n % &m) + &m) % &m;
                let value: u32 = r.try_into().expect("residue fits in u32");
                Scalar::Modular { value, modulus: *p }
            }
        }
    }

    /// Maps a rational number into this field; fails when the denominator
    /// vanishes modulo p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        num.checked_div(&den)
    }

    /// All elements in ascending residue order.
    pub fn enumerate(&self) -> Result<Vec<Scalar>> {
        match self {
            FieldSpec::Rationals => Err(JordanError::UnsupportedField(self.to_string())),
            FieldSpec::Prime(p) => Ok((0..*p).map(|v| Scalar::Modular { value: v, modulus: *p }).collect()),
        }
    }

    /// One representative per class of `K* / (K*)^2`: `{1}` for p = 2,
    /// otherwise `{1, q}` with `q` the least quadratic non-residue.
    pub fn square_class_representatives(&self) -> Result<Vec<Scalar>> {
        match self {
            FieldSpec::Rationals => Err(JordanError::UnsupportedField("Q has infinitely many square classes".into())),
            FieldSpec::Prime(2) => Ok(vec![self.one()]),
            FieldSpec::Prime(_) => {
                let q =
                    self.enumerate()?.into_iter().find(|x| !x.is_square()).expect("odd prime field has a non-residue");
                Ok(vec![self.one(), q])
            }
        }
    }

    /// Parses `Q`, `F 5`, `F:5` or `F5`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = || JordanError::Parse { line: 0, message: format!("unknown field `{text}`") };
        if t == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let rest = t.strip_prefix('F').ok_or_else(bad)?;
        let rest = rest.trim_start_matches([':', ' ']).trim();
        let p: u64 = rest.parse().map_err(|_| bad())?;
        FieldSpec::prime(p)
    }

    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let t = text.trim();
        let bad = || JordanError::Parse { line: 0, message: format!("bad scalar `{text}`") };
        let q: BigRational = if let Some((n, d)) = t.split_once('/') {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(JordanError::DivisionByZero);
            }
            BigRational::new(n, d)
        } else {
            BigRational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)
        };
        self.from_rational(&q)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F {p}"),
        }
    }
}

/// An exact field element. Rationals are kept in lowest terms with a
/// positive denominator; residues live in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Box<BigRational>),
    Modular { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Modular { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    /// Residue for prime-field elements.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Modular { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Modular { .. } => None,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(JordanError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(Box::new(q.recip())),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value as u64, *modulus as u64 - 2, *modulus as u64) as u32,
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn is_square(&self) -> bool {
        match self {
            Scalar::Rational(q) => {
                if q.is_zero() {
                    return true;
                }
                if q.is_negative() {
                    return false;
                }
                let n = q.numer();
                let d = q.denom();
                let rn = n.sqrt();
                let rd = d.sqrt();
                &(&rn * &rn) == n && &(&rd * &rd) == d
            }
            Scalar::Modular { value, modulus } => {
                if *value == 0 || *modulus == 2 {
                    return true;
                }
                let p = *modulus as u64;
                pow_mod(*value as u64, (p - 1) / 2, p) == 1
            }
        }
    }

    fn same_field(&self, other: &Scalar) {
        if let (Scalar::Modular { modulus: a, .. }, Scalar::Modular { modulus: b, .. }) = (self, other) {
            assert_eq!(a, b, "scalar arithmetic across different prime fields");
        } else if std::mem::discriminant(self) != std::mem::discriminant(other) {
            panic!("scalar arithmetic across Q and a prime field");
        }
    }
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Residue order on prime fields, numeric order on the rationals.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Modular { value: a, modulus: p }, Scalar::Modular { value: b, modulus: q }) => {
                p.cmp(q).then(a.cmp(b))
            }
            (Scalar::Rational(_), Scalar::Modular { .. }) => Ordering::Less,
            (Scalar::Modular { .. }, Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

impl From<FieldSpec> for String {
    fn from(f: FieldSpec) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for FieldSpec {
    type Error = JordanError;

    fn try_from(s: String) -> Result<Self> {
        FieldSpec::parse(&s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(Box::new(&**a + &**b)),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular { value: ((*a as u64 + *b as u64) % *modulus as u64) as u32, modulus: *modulus }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(Box::new(&**a - &**b)),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                let m = *modulus as u64;
                Scalar::Modular { value: ((*a as u64 + m - *b as u64) % m) as u32, modulus: *modulus }
            }
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(Box::new(&**a * &**b)),
            (Scalar::Modular { value: a, modulus }, Scalar::Modular { value: b, .. }) => {
                Scalar::Modular { value: ((*a as u64 * *b as u64) % *modulus as u64) as u32, modulus: *modulus }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(Box::new(-&**a)),
            Scalar::Modular { value, modulus } => {
                Scalar::Modular { value: (*modulus - *value) % *modulus, modulus: *modulus }
            }
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn field_json() {
        let f = FieldSpec::Prime(7);
        assert_eq!(serde_json::to_string(&f).unwrap(), "\"F 7\"");
        assert_eq!(serde_json::from_str::<FieldSpec>("\"Q\"").unwrap(), FieldSpec::Rationals);
        assert!(serde_json::from_str::<FieldSpec>("\"F 4\"").is_err());
    }

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(Box::new(BigRational::new(n.into(), d.into())))
    }

    #[test]
    fn inverses() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(FieldSpec::Rationals.one().inv().unwrap(), FieldSpec::Rationals.one());
        assert_eq!(f5.from_i64(2).inv().unwrap(), f5.from_i64(3));
        assert_eq!(q(3, 4).inv().unwrap(), q(4, 3));
        assert_eq!(f5.zero().inv(), Err(JordanError::DivisionByZero));
        assert_eq!(FieldSpec::Rationals.zero().inv(), Err(JordanError::DivisionByZero));
    }

    #[test]
    fn squares() {
        let f3 = FieldSpec::prime(3).unwrap();
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(FieldSpec::Rationals.zero().is_square());
        assert!(f5.from_i64(-1).is_square());
        assert!(!f3.from_i64(-1).is_square());
        assert!(q(9, 4).is_square());
        assert!(!q(-9, 4).is_square());
        assert!(!q(2, 1).is_square());
        assert!(!q(1, 8).is_square());
    }

    #[test]
    fn square_classes() {
        let reps = |p| {
            FieldSpec::prime(p)
                .unwrap()
                .square_class_representatives()
                .unwrap()
                .iter()
                .map(|s| s.residue().unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(reps(2), vec![1]);
        assert_eq!(reps(3), vec![1, 2]);
        assert_eq!(reps(5), vec![1, 2]);
        assert_eq!(reps(7), vec![1, 3]);
        assert!(FieldSpec::Rationals.square_class_representatives().is_err());
    }

    #[test]
    fn enumeration() {
        let res = |p| FieldSpec::prime(p).unwrap().enumerate().unwrap();
        assert_eq!(res(2).iter().map(|s| s.residue().unwrap()).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(res(3).iter().map(|s| s.residue().unwrap()).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(res(5).len(), 5);
        assert!(FieldSpec::Rationals.enumerate().is_err());
    }

    #[test]
    fn half_the_units_are_squares() {
        for p in [3u64, 5, 7, 11, 13, 101] {
            let f = FieldSpec::prime(p).unwrap();
            let n = f.enumerate().unwrap().iter().filter(|x| !x.is_zero() && x.is_square()).count();
            assert_eq!(n as u64, (p - 1) / 2);
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(FieldSpec::parse("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("F 3").unwrap(), FieldSpec::Prime(3));
        assert_eq!(FieldSpec::parse("F:5").unwrap(), FieldSpec::Prime(5));
        assert_eq!(FieldSpec::parse("F 4"), Err(JordanError::NotPrime(4)));
        let f3 = FieldSpec::Prime(3);
        assert_eq!(f3.parse_scalar("-1").unwrap(), f3.from_i64(2));
        assert_eq!(f3.parse_scalar("1/2").unwrap(), f3.from_i64(2));
        assert_eq!(FieldSpec::Rationals.parse_scalar("7/2").unwrap(), q(7, 2));
        assert_eq!(FieldSpec::Rationals.parse_scalar("-6/4").unwrap().to_string(), "-3/2");
        assert!(f3.parse_scalar("1/3").is_err());
        assert!(FieldSpec::Rationals.parse_scalar("x").is_err());
    }

    fn scalar_strategy(field: FieldSpec) -> BoxedStrategy<Scalar> {
        match field {
            FieldSpec::Rationals => (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d)).boxed(),
            FieldSpec::Prime(p) => (0..p as i64).prop_map(move |v| FieldSpec::Prime(p).from_i64(v)).boxed(),
        }
    }

    #[allow(clippy::eq_op)]
    fn axioms(a: Scalar, b: Scalar, c: Scalar) {
        assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        assert_eq!(&a + &b, &b + &a);
        assert_eq!(&a * &b, &b * &a);
        assert!((&a - &a).is_zero());
        assert_eq!(&a + &(-&a), a.field().zero());
        if !a.is_zero() {
            assert!((&a * &a.inv().unwrap()).is_one());
            assert_eq!(a.inv().unwrap().inv().unwrap(), a);
        }
    }

    proptest! {
        #[test]
        fn rational_axioms(a in scalar_strategy(FieldSpec::Rationals),
                           b in scalar_strategy(FieldSpec::Rationals),
                           c in scalar_strategy(FieldSpec::Rationals)) {
            axioms(a, b, c);
        }

        #[test]
        fn prime_axioms(a in scalar_strategy(FieldSpec::Prime(7919)),
                        b in scalar_strategy(FieldSpec::Prime(7919)),
                        c in scalar_strategy(FieldSpec::Prime(7919))) {
            axioms(a, b, c);
        }

        #[test]
        fn rational_squares_detected(n in -200i64..200, d in 1i64..200) {
            let x = q(n, d);
            prop_assert!((&x * &x).is_square());
        }
    }
}
