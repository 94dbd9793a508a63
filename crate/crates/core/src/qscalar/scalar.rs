use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::poly::QPoly;

/// A reduced quotient of polynomials in `q`: `gcd(num, den) = 1`, `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    /// Reduce `num/den`; `den` must be nonzero.
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: QPoly::one(),
            };
        }
        let g = QPoly::gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lead = den.leading().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    fn from_rat(c: &BigRational) -> Self {
        RatFunc {
            num: QPoly::constant(c.clone()),
            den: QPoly::one(),
        }
    }

    fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RatFunc::new(self.num.add(&other.num), self.den.clone());
        }
        RatFunc::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    fn mul(&self, other: &Self) -> Self {
        RatFunc::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    fn as_constant(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }
}

/// An exact element of the ground field.
///
/// Constants are always `Rat`, in both field modes. `Func` only ever holds a
/// non-constant rational function of `q` and therefore only occurs in symbolic
/// mode; the two variants never represent the same value, so derived equality
/// is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Func(RatFunc),
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(p: i64, r: i64) -> Self {
        Scalar::Rat(BigRational::new(p.into(), r.into()))
    }

    pub fn from_rat(c: BigRational) -> Self {
        Scalar::Rat(c)
    }

    /// Build `num/den` as a scalar in symbolic mode.
    pub fn from_polys(num: QPoly, den: QPoly) -> Self {
        Self::from_func(RatFunc::new(num, den))
    }

    fn from_func(f: RatFunc) -> Self {
        match f.as_constant() {
            Some(c) => Scalar::Rat(c),
            None => Scalar::Func(f),
        }
    }

    fn to_func(&self) -> RatFunc {
        match self {
            Scalar::Rat(c) => RatFunc::from_rat(c),
            Scalar::Func(f) => f.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rat(c) if c.is_one())
    }

    pub fn as_rat(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(c) => Some(c),
            Scalar::Func(_) => None,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rat(c) if c.is_zero() => None,
            Scalar::Rat(c) => Some(Scalar::Rat(c.recip())),
            Scalar::Func(f) => Some(Scalar::from_func(RatFunc::new(
                f.den.clone(),
                f.num.clone(),
            ))),
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self * &i)
    }

    pub fn pow(&self, k: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Terms `(k, c)` of `sum c q^k` if the scalar is a Laurent polynomial in
    /// `q` (denominator a power of `q`), sorted by `k`.
    pub fn as_laurent(&self) -> Option<Vec<(i64, BigRational)>> {
        match self {
            Scalar::Rat(c) if c.is_zero() => Some(Vec::new()),
            Scalar::Rat(c) => Some(vec![(0, c.clone())]),
            Scalar::Func(f) => {
                if !f.den.is_monomial() {
                    return None;
                }
                let shift = f.den.degree().unwrap() as i64;
                Some(
                    f.num
                        .coeffs()
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| (k as i64 - shift, c.clone()))
                        .collect(),
                )
            }
        }
    }

    /// Substitute a concrete rational for `q`; `None` if a denominator vanishes.
    pub fn eval_at(&self, q: &BigRational) -> Option<BigRational> {
        match self {
            Scalar::Rat(c) => Some(c.clone()),
            Scalar::Func(f) => {
                let d = f.den.eval(q);
                if d.is_zero() {
                    None
                } else {
                    Some(f.num.eval(q) / d)
                }
            }
        }
    }

    /// True when `-self` would display more compactly, used for `a - b` output.
    pub fn is_negative_display(&self) -> bool {
        match self {
            Scalar::Rat(c) => c.is_negative(),
            Scalar::Func(f) => f.num.leading().is_some_and(|l| l.is_negative()),
        }
    }
}

fn scalar_add(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
        (Scalar::Rat(x), _) if x.is_zero() => b.clone(),
        (_, Scalar::Rat(y)) if y.is_zero() => a.clone(),
        _ => Scalar::from_func(a.to_func().add(&b.to_func())),
    }
}

fn scalar_mul(a: &Scalar, b: &Scalar) -> Scalar {
    match (a, b) {
        (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
        (Scalar::Rat(x), _) | (_, Scalar::Rat(x)) if x.is_zero() => Scalar::zero(),
        (Scalar::Rat(x), Scalar::Func(f)) | (Scalar::Func(f), Scalar::Rat(x)) => {
            if x.is_one() {
                return Scalar::Func(f.clone());
            }
            Scalar::Func(RatFunc {
                num: f.num.scale(x),
                den: f.den.clone(),
            })
        }
        (Scalar::Func(f), Scalar::Func(g)) => Scalar::from_func(f.mul(g)),
    }
}

fn scalar_neg(a: &Scalar) -> Scalar {
    match a {
        Scalar::Rat(x) => Scalar::Rat(-x),
        Scalar::Func(f) => Scalar::Func(RatFunc {
            num: f.num.neg(),
            den: f.den.clone(),
        }),
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $f:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $f(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $f(&self, &rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                $f(&self, rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                $f(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, scalar_add);
forward_binop!(Mul, mul, scalar_mul);
forward_binop!(Sub, sub, |a: &Scalar, b: &Scalar| scalar_add(a, &scalar_neg(b)));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        scalar_neg(&self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        scalar_neg(self)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = scalar_add(self, rhs);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = scalar_add(self, &scalar_neg(rhs));
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = scalar_mul(self, rhs);
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(c: BigRational) -> Self {
        Scalar::Rat(c)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(c) => write!(f, "{c}"),
            Scalar::Func(r) if r.den.is_one() => write!(f, "{}", r.num),
            Scalar::Func(r) => write!(f, "({})/({})", r.num, r.den),
        }
    }
}

// JSON: constants as {"rat": "p/r"}, genuine rational functions as
// {"num": [...], "den": [...]} with integer coefficients ascending in q.

fn int_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn int_from_json<E: serde::de::Error>(v: &Value) -> Result<BigInt, E> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| E::custom(format!("coefficient {n} is not an integer"))),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|_| E::custom(format!("coefficient {s:?} is not an integer"))),
        _ => Err(E::custom("coefficient must be an integer")),
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (p, r) = match s.split_once('/') {
        Some((p, r)) => (p.trim(), r.trim()),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().ok()?;
    let r: BigInt = r.parse().ok()?;
    if r.is_zero() {
        return None;
    }
    Some(BigRational::new(p, r))
}

impl Scalar {
    pub fn to_json(&self) -> Value {
        match self {
            Scalar::Rat(c) => json!({ "rat": c.to_string() }),
            Scalar::Func(f) => {
                let (n, d) = QPoly::integer_pair(&f.num, &f.den);
                json!({
                    "num": n.iter().map(int_to_json).collect::<Vec<_>>(),
                    "den": d.iter().map(int_to_json).collect::<Vec<_>>(),
                })
            }
        }
    }

    pub fn from_json_value<E: serde::de::Error>(v: &Value) -> Result<Scalar, E> {
        if let Some(r) = v.get("rat") {
            let s = r
                .as_str()
                .ok_or_else(|| E::custom("\"rat\" must be a string \"p/r\""))?;
            return parse_rational(s)
                .map(Scalar::Rat)
                .ok_or_else(|| E::custom(format!("invalid rational {s:?}")));
        }
        let (Some(Value::Array(n)), Some(Value::Array(d))) = (v.get("num"), v.get("den")) else {
            return Err(E::custom(
                "scalar must be {\"rat\": \"p/r\"} or {\"num\": [..], \"den\": [..]}",
            ));
        };
        let to_poly = |a: &Vec<Value>| -> Result<QPoly, E> {
            a.iter()
                .map(|c| int_from_json::<E>(c).map(BigRational::from_integer))
                .collect::<Result<Vec<_>, E>>()
                .map(QPoly::from_coeffs)
        };
        let num = to_poly(n)?;
        let den = to_poly(d)?;
        if den.is_zero() {
            return Err(E::custom("zero denominator"));
        }
        Ok(Scalar::from_polys(num, den))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        Scalar::from_json_value::<D::Error>(&v).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Scalar {
        Scalar::from_polys(QPoly::from_ints(&[0, 1]), QPoly::one())
    }

    #[test]
    fn zero_is_canonical() {
        let a = &q() - &q();
        assert_eq!(a, Scalar::zero());
        assert!(a.is_zero());
        let one_plus_q = &Scalar::one() + &q();
        let back = &one_plus_q - &q();
        assert!(back.is_one());
    }

    #[test]
    fn inverse_of_rational_function() {
        let one_plus_q = &Scalar::one() + &q();
        let inv = one_plus_q.inv().unwrap();
        assert!((&inv * &one_plus_q).is_one());
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn laurent_view() {
        let qinv = q().inv().unwrap();
        let s = &(&qinv * &Scalar::from_int(3)) + &q();
        let l = s.as_laurent().unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l[0].0, -1);
        assert_eq!(l[1].0, 1);
        let non = (&Scalar::one() + &q()).inv().unwrap();
        assert!(non.as_laurent().is_none());
    }

    #[test]
    fn json_round_trip() {
        let s = Scalar::from_polys(
            QPoly::constant(BigRational::new(1.into(), 2.into())),
            QPoly::from_ints(&[1, 1]),
        );
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v, json!({"num": [1], "den": [2, 2]}));
        let back: Scalar = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
        let r = Scalar::from_ratio(-3, 4);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v, json!({"rat": "-3/4"}));
        assert_eq!(serde_json::from_value::<Scalar>(v).unwrap(), r);
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (
            prop::collection::vec(-4i64..=4, 0..4),
            prop::collection::vec(-3i64..=3, 1..3),
            1i64..=5,
        )
            .prop_filter_map("nonzero denominator", |(n, d, c)| {
                let mut d = d;
                d.push(c);
                let den = QPoly::from_ints(&d);
                (!den.is_zero()).then(|| Scalar::from_polys(QPoly::from_ints(&n), den))
            })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert!((&a + &(-&a)).is_zero());
            if let Some(ai) = a.inv() {
                prop_assert!((&a * &ai).is_one());
            }
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }
    }
}
