use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::qscalar::{Field, Scalar};

/// Index shift `sigma[r]_n = sigma_(n+r)`.
pub trait Shift: Sized {
    fn shift(&self, r: i64) -> Self;
}

fn shift_map(map: &BTreeMap<i64, Scalar>, r: i64) -> BTreeMap<i64, Scalar> {
    map.iter().map(|(n, c)| (n - r, c.clone())).collect()
}

fn pairs_json(map: &BTreeMap<i64, Scalar>) -> Value {
    Value::Array(
        map.iter()
            .map(|(n, c)| json!({"n": n, "c": c.to_json()}))
            .collect(),
    )
}

fn pairs_from_json<E: serde::de::Error>(v: &Value, key: &str) -> std::result::Result<Vec<(i64, Scalar)>, E> {
    let arr = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| E::custom(format!("expected {{\"{key}\": [...]}}")))?;
    arr.iter()
        .map(|p| {
            let n = p
                .get("n")
                .and_then(Value::as_i64)
                .ok_or_else(|| E::custom("entry needs integer \"n\""))?;
            let c = Scalar::from_json_value::<E>(p.get("c").ok_or_else(|| E::custom("entry needs \"c\""))?)?;
            Ok((n, c))
        })
        .collect()
}

/// A finitely supported sequence in `k^Z` (zero off the support).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BetaSeq {
    support: BTreeMap<i64, Scalar>,
}

impl BetaSeq {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `e_n`: 1 at `n`, 0 elsewhere.
    pub fn indicator(n: i64) -> Self {
        Self::from_pairs([(n, Scalar::one())])
    }

    /// Build from `(index, value)` pairs; repeated indices are summed.
    pub fn from_pairs<I: IntoIterator<Item = (i64, Scalar)>>(pairs: I) -> Self {
        let mut s = Self::zero();
        for (n, c) in pairs {
            let v = &s.get(n) + &c;
            s.set(n, v);
        }
        s
    }

    pub fn get(&self, n: i64) -> Scalar {
        self.support.get(&n).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, n: i64, c: Scalar) {
        if c.is_zero() {
            self.support.remove(&n);
        } else {
            self.support.insert(n, c);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.support.iter().map(|(n, c)| (*n, c))
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Smallest and largest index of the support.
    pub fn support_range(&self) -> Option<(i64, i64)> {
        Some((*self.support.keys().next()?, *self.support.keys().next_back()?))
    }

    pub fn add(&self, other: &BetaSeq) -> BetaSeq {
        Self::from_pairs(self.support.clone().into_iter().chain(other.support.clone()))
    }

    pub fn neg(&self) -> BetaSeq {
        BetaSeq {
            support: self.support.iter().map(|(n, c)| (*n, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &BetaSeq) -> BetaSeq {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Scalar) -> BetaSeq {
        Self::from_pairs(self.support.iter().map(|(n, v)| (*n, v * c)))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &BetaSeq) -> BetaSeq {
        Self::from_pairs(
            self.support
                .iter()
                .filter_map(|(n, a)| other.support.get(n).map(|b| (*n, a * b))),
        )
    }

    /// Pointwise product `alpha * beta` of a unit sequence into this one.
    pub fn scaled_by(&self, alpha: &AlphaSeq) -> BetaSeq {
        Self::from_pairs(self.support.iter().map(|(n, c)| (*n, c * &alpha.get(*n))))
    }

    /// `beta_(n,t;m) = beta_n beta_(n+t) ... beta_(n+(m-1)t)`, 1 for `m = 0`.
    pub fn run(&self, n: i64, t: i64, m: u32) -> Scalar {
        let mut acc = Scalar::one();
        for i in 0..m as i64 {
            match self.support.get(&(n + i * t)) {
                Some(c) => acc *= c,
                None => return Scalar::zero(),
            }
        }
        acc
    }

    pub fn coerce(&self, f: &Field) -> Result<BetaSeq> {
        let mut out = BetaSeq::zero();
        for (n, c) in &self.support {
            out.set(*n, f.coerce(c)?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({ "support": pairs_json(&self.support) })
    }
}

impl Shift for BetaSeq {
    fn shift(&self, r: i64) -> Self {
        BetaSeq {
            support: shift_map(&self.support, r),
        }
    }
}

impl Serialize for BetaSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BetaSeq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        Ok(BetaSeq::from_pairs(pairs_from_json::<D::Error>(&v, "support")?))
    }
}

impl fmt::Display for BetaSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.support.iter().map(|(n, c)| format!("{n}: {c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A sequence in `(k^x)^Z` equal to 1 outside a finite set.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct AlphaSeq {
    deviation: BTreeMap<i64, Scalar>,
}

impl AlphaSeq {
    pub fn one() -> Self {
        Self::default()
    }

    /// Build from `(index, value)` pairs; rejects zero values.
    pub fn from_pairs<I: IntoIterator<Item = (i64, Scalar)>>(pairs: I) -> Result<Self> {
        let mut a = Self::one();
        for (n, c) in pairs {
            if c.is_zero() {
                return Err(Error::ZeroAlpha(n));
            }
            a.set_unit(n, c);
        }
        Ok(a)
    }

    /// Constant sequence on `[lo, hi]`, 1 elsewhere.
    pub fn constant_on(lo: i64, hi: i64, c: Scalar) -> Result<Self> {
        Self::from_pairs((lo..=hi).map(|n| (n, c.clone())))
    }

    fn set_unit(&mut self, n: i64, c: Scalar) {
        if c.is_one() {
            self.deviation.remove(&n);
        } else {
            self.deviation.insert(n, c);
        }
    }

    pub fn get(&self, n: i64) -> Scalar {
        self.deviation.get(&n).cloned().unwrap_or_else(Scalar::one)
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, &Scalar)> {
        self.deviation.iter().map(|(n, c)| (*n, c))
    }

    pub fn is_one(&self) -> bool {
        self.deviation.is_empty()
    }

    pub fn support_range(&self) -> Option<(i64, i64)> {
        Some((*self.deviation.keys().next()?, *self.deviation.keys().next_back()?))
    }

    pub fn mul(&self, other: &AlphaSeq) -> AlphaSeq {
        let mut out = self.clone();
        for (n, c) in &other.deviation {
            let v = &out.get(*n) * c;
            out.set_unit(*n, v);
        }
        out
    }

    pub fn inverse(&self) -> AlphaSeq {
        AlphaSeq {
            deviation: self
                .deviation
                .iter()
                .map(|(n, c)| (*n, c.inv().expect("alpha values are units")))
                .collect(),
        }
    }

    /// `alpha_n alpha_(n+1) ... alpha_(n+m-1)`, 1 for `m = 0`.
    pub fn run(&self, n: i64, m: u32) -> Scalar {
        let mut acc = Scalar::one();
        for i in 0..m as i64 {
            if let Some(c) = self.deviation.get(&(n + i)) {
                acc *= c;
            }
        }
        acc
    }

    /// `alpha<i> = alpha alpha[1] ... alpha[i-1]`.
    pub fn angle(&self, i: u32) -> AlphaSeq {
        let mut out = AlphaSeq::one();
        for j in 0..i as i64 {
            out = out.mul(&self.shift(j));
        }
        out
    }

    pub fn coerce(&self, f: &Field) -> Result<AlphaSeq> {
        let mut pairs = Vec::new();
        for (n, c) in &self.deviation {
            pairs.push((*n, f.coerce(c)?));
        }
        AlphaSeq::from_pairs(pairs)
    }

    pub fn to_json(&self) -> Value {
        json!({ "deviation": pairs_json(&self.deviation) })
    }
}

impl Shift for AlphaSeq {
    fn shift(&self, r: i64) -> Self {
        AlphaSeq {
            deviation: shift_map(&self.deviation, r),
        }
    }
}

impl Serialize for AlphaSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlphaSeq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        AlphaSeq::from_pairs(pairs_from_json::<D::Error>(&v, "deviation")?)
            .map_err(D::Error::custom)
    }
}

impl fmt::Display for AlphaSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.deviation.iter().map(|(n, c)| format!("{n}: {c}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `beta_(n,t;m)` as a free function.
pub fn beta_run(beta: &BetaSeq, n: i64, t: i64, m: u32) -> Scalar {
    beta.run(n, t, m)
}

/// `alpha<i>` as a free function.
pub fn alpha_angle(alpha: &AlphaSeq, i: u32) -> AlphaSeq {
    alpha.angle(i)
}
