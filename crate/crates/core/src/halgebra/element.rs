use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::qscalar::{Field, Scalar};

/// The basis monomial `x^n y^m`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial {
    pub n: i64,
    pub m: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { n: 0, m: 0 };

    pub const fn new(n: i64, m: u32) -> Self {
        Monomial { n, m }
    }

    /// The grouplike `x^n`.
    pub const fn x(n: i64) -> Self {
        Monomial { n, m: 0 }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = match self.n {
            0 => None,
            1 => Some("x".to_string()),
            n => Some(format!("x^{n}")),
        };
        let y = match self.m {
            0 => None,
            1 => Some("y".to_string()),
            m => Some(format!("y^{m}")),
        };
        match (x, y) {
            (None, None) => write!(f, "1"),
            (Some(x), None) => write!(f, "{x}"),
            (None, Some(y)) => write!(f, "{y}"),
            (Some(x), Some(y)) => write!(f, "{x}*{y}"),
        }
    }
}

/// An element of `H` in normal form: a finitely supported combination of the
/// basis `x^n y^m` with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn monomial(n: i64, m: u32) -> Self {
        Self::term(Scalar::one(), Monomial::new(n, m))
    }

    pub fn term(c: Scalar, mono: Monomial) -> Self {
        let mut e = Element::zero();
        e.add_term(mono, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Scalar)>>(terms: I) -> Self {
        let mut e = Element::zero();
        for (mono, c) in terms {
            e.add_term(mono, c);
        }
        e
    }

    /// Accumulate `c * mono`, dropping the entry if it cancels.
    pub fn add_term(&mut self, mono: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(old) => {
                *old += &c;
                if old.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (mono, d) in &other.terms {
            self.add_term(*mono, c * d);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: Monomial) -> Scalar {
        self.terms.get(&mono).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// The homogeneous part of y-degree exactly `m` (the `H(m)` component).
    pub fn graded_component(&self, m: u32) -> Element {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.m == m)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    /// Highest y-degree present.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.m).max()
    }

    /// If the element is `c * mono` for a single monomial, return it.
    pub fn as_single_term(&self) -> Option<(Monomial, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, v)| (*k, v))
        } else {
            None
        }
    }

    pub fn coerce(&self, field: &Field) -> Result<Element> {
        let mut out = Element::zero();
        for (mono, c) in &self.terms {
            out.add_term(*mono, field.coerce(c)?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "terms": self.terms.iter().map(|(k, c)| json!({"n": k.n, "m": k.m, "c": c.to_json()})).collect::<Vec<_>>()
        })
    }

    pub fn from_json_value<E: serde::de::Error>(v: &Value) -> std::result::Result<Element, E> {
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| E::custom("element must be {\"terms\": [...]}"))?;
        let mut e = Element::zero();
        for t in terms {
            let n = t
                .get("n")
                .and_then(Value::as_i64)
                .ok_or_else(|| E::custom("term needs integer \"n\""))?;
            let m = t
                .get("m")
                .and_then(Value::as_u64)
                .ok_or_else(|| E::custom("term needs non-negative integer \"m\""))?;
            let c = Scalar::from_json_value::<E>(
                t.get("c").ok_or_else(|| E::custom("term needs \"c\""))?,
            )?;
            e.add_term(Monomial::new(n, m as u32), c);
        }
        Ok(e)
    }
}

impl Serialize for Element {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        Element::from_json_value::<D::Error>(&v).map_err(D::Error::custom)
    }
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (mono, c) in &rhs.terms {
            out.add_term(*mono, c.clone());
        }
        out
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        for (mono, c) in &rhs.terms {
            out.add_term(*mono, -c);
        }
        out
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

/// A finitely supported element of `H^{(x)K}` on the basis of `K`-tuples of
/// monomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tensor<const K: usize> {
    terms: BTreeMap<[Monomial; K], Scalar>,
}

/// An element of `H (x) H`.
pub type TensorElement = Tensor<2>;

impl<const K: usize> Default for Tensor<K> {
    fn default() -> Self {
        Tensor {
            terms: BTreeMap::new(),
        }
    }
}

impl<const K: usize> Tensor<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, key: [Monomial; K], c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(old) => {
                *old += &c;
                if old.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Monomial; K], &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &[Monomial; K]) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }
}

impl<const K: usize> Add<&Tensor<K>> for &Tensor<K> {
    type Output = Tensor<K>;
    fn add(self, rhs: &Tensor<K>) -> Tensor<K> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<const K: usize> Sub<&Tensor<K>> for &Tensor<K> {
    type Output = Tensor<K>;
    fn sub(self, rhs: &Tensor<K>) -> Tensor<K> {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl TensorElement {
    /// `a (x) b`
    pub fn pure(a: &Element, b: &Element) -> Self {
        let mut t = Tensor::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                t.add_term([*ma, *mb], ca * cb);
            }
        }
        t
    }

    pub fn to_json(&self) -> Value {
        json!({
            "terms": self.terms.iter().map(|([a, b], c)| json!({
                "n1": a.n, "m1": a.m, "n2": b.n, "m2": b.m, "c": c.to_json()
            })).collect::<Vec<_>>()
        })
    }
}

impl Serialize for TensorElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// Finite truncation frame `n_lo <= n <= n_hi`, `0 <= m <= m_max`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "WindowRepr")]
pub struct Window {
    pub n_lo: i64,
    pub n_hi: i64,
    pub m_max: u32,
}

#[derive(Deserialize)]
struct WindowRepr {
    n_lo: i64,
    n_hi: i64,
    m_max: u32,
}

impl TryFrom<WindowRepr> for Window {
    type Error = Error;
    fn try_from(r: WindowRepr) -> Result<Self> {
        Window::new(r.n_lo, r.n_hi, r.m_max)
    }
}

impl Window {
    pub fn new(n_lo: i64, n_hi: i64, m_max: u32) -> Result<Self> {
        if n_lo > n_hi {
            return Err(Error::InvalidArgument(format!(
                "window needs n_lo <= n_hi, got {n_lo} > {n_hi}"
            )));
        }
        Ok(Window { n_lo, n_hi, m_max })
    }

    /// Parse `"nlo,nhi,mmax"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::InvalidArgument(format!("window must be \"nlo,nhi,mmax\", got {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let n_lo = parts[0].parse().map_err(|_| bad())?;
        let n_hi = parts[1].parse().map_err(|_| bad())?;
        let m_max = parts[2].parse().map_err(|_| bad())?;
        Window::new(n_lo, n_hi, m_max)
    }

    pub fn contains(&self, mono: Monomial) -> bool {
        (self.n_lo..=self.n_hi).contains(&mono.n) && mono.m <= self.m_max
    }

    /// All window monomials in `(n, m)` order.
    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        (self.n_lo..=self.n_hi).flat_map(move |n| (0..=self.m_max).map(move |m| Monomial::new(n, m)))
    }

    /// All window monomials ordered by degree first, then `n`.
    pub fn monomials_by_degree(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..=self.m_max).flat_map(move |m| (self.n_lo..=self.n_hi).map(move |n| Monomial::new(n, m)))
    }

    pub fn with_m_max(&self, m_max: u32) -> Window {
        Window { m_max, ..*self }
    }

    pub fn len(&self) -> usize {
        ((self.n_hi - self.n_lo + 1) as usize) * (self.m_max as usize + 1)
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.n_lo, self.n_hi, self.m_max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_terms_are_dropped() {
        let mut e = Element::monomial(1, 2);
        e.add_term(Monomial::new(1, 2), Scalar::from_int(-1));
        assert!(e.is_zero());
        assert_eq!(e, Element::zero());
    }

    #[test]
    fn graded_component_filters() {
        let e = &Element::monomial(2, 1) + &Element::term(Scalar::from_int(5), Monomial::x(-1));
        assert_eq!(e.graded_component(1), Element::monomial(2, 1));
        assert_eq!(
            e.graded_component(0),
            Element::term(Scalar::from_int(5), Monomial::x(-1))
        );
        assert!(Element::monomial(0, 3).graded_component(2).is_zero());
    }

    #[test]
    fn element_json_is_sorted() {
        let e = &Element::monomial(2, 0) + &Element::monomial(-1, 3);
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(v["terms"][0]["n"], -1);
        assert_eq!(v["terms"][1]["n"], 2);
        let back: Element = serde_json::from_value(v).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn window_parsing_and_order() {
        let w = Window::parse("-1,1,2").unwrap();
        assert_eq!(w.len(), 9);
        assert!(Window::parse("2,1,0").is_err());
        assert!(Window::parse("1,2").is_err());
        let first: Vec<_> = w.monomials_by_degree().take(3).collect();
        assert_eq!(first, vec![Monomial::x(-1), Monomial::x(0), Monomial::x(1)]);
        let bad: std::result::Result<Window, _> =
            serde_json::from_value(json!({"n_lo": 3, "n_hi": 1, "m_max": 0}));
        assert!(bad.is_err());
    }
}
