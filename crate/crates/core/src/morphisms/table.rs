use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Value};

use super::word::Morphism;
use crate::error::{Error, Result};
use crate::halgebra::{Element, Monomial, Window};
use crate::qscalar::{Field, Scalar};

/// Anything that can report the image of a basis monomial, possibly only on
/// part of the basis.
pub trait MonomialMap {
    fn image(&self, f: &Field, mono: Monomial) -> Option<Element>;
}

impl MonomialMap for Morphism {
    fn image(&self, f: &Field, mono: Monomial) -> Option<Element> {
        Some(self.apply_monomial(f, mono))
    }
}

/// A linear map recorded on every basis monomial of a window.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TabulatedMorphism {
    window: Window,
    table: BTreeMap<Monomial, Element>,
}

impl MonomialMap for TabulatedMorphism {
    fn image(&self, _f: &Field, mono: Monomial) -> Option<Element> {
        self.table.get(&mono).cloned()
    }
}

impl TabulatedMorphism {
    pub fn from_fn(window: Window, mut image: impl FnMut(Monomial) -> Element) -> Self {
        TabulatedMorphism {
            window,
            table: window.monomials().map(|m| (m, image(m))).collect(),
        }
    }

    /// Build from an explicit table, which must cover the window exactly.
    pub fn from_table(window: Window, table: BTreeMap<Monomial, Element>) -> Result<Self> {
        if let Some(extra) = table.keys().find(|m| !window.contains(**m)) {
            return Err(Error::InvalidArgument(format!(
                "table entry {extra} lies outside window {window}"
            )));
        }
        if let Some(missing) = window.monomials().find(|m| !table.contains_key(m)) {
            return Err(Error::WindowAdequacy {
                n: missing.n,
                m: missing.m,
            });
        }
        Ok(TabulatedMorphism { window, table })
    }

    pub fn window(&self) -> &Window {
        &self.window
    }

    pub fn get(&self, mono: Monomial) -> Option<&Element> {
        self.table.get(&mono)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Monomial, &Element)> {
        self.table.iter()
    }

    pub fn apply(&self, e: &Element) -> Result<Element> {
        let mut out = Element::zero();
        for (mono, c) in e.terms() {
            let img = self.table.get(mono).ok_or(Error::WindowAdequacy {
                n: mono.n,
                m: mono.m,
            })?;
            out.add_scaled(img, c);
        }
        Ok(out)
    }

    /// `self o other` on `other`'s window.
    pub fn compose(&self, other: &TabulatedMorphism) -> Result<TabulatedMorphism> {
        let mut table = BTreeMap::new();
        for (mono, img) in &other.table {
            table.insert(*mono, self.apply(img)?);
        }
        Ok(TabulatedMorphism {
            window: other.window,
            table,
        })
    }

    pub fn restrict(&self, window: &Window) -> Result<TabulatedMorphism> {
        let mut table = BTreeMap::new();
        for mono in window.monomials() {
            let img = self.table.get(&mono).ok_or(Error::WindowAdequacy {
                n: mono.n,
                m: mono.m,
            })?;
            table.insert(mono, img.clone());
        }
        Ok(TabulatedMorphism {
            window: *window,
            table,
        })
    }

    /// Inverse of a triangular table, `phi(x^n y^m) = c x^(n+r) y^m + (lower
    /// y-degree)` with `c != 0` and one shift `r` throughout, by back
    /// substitution degree by degree. The result lives on the longest run of
    /// target indices where every degree could be computed from entries in
    /// the table.
    pub fn invert(&self) -> Result<TabulatedMorphism> {
        let w = self.window;
        let mut shift: Option<i64> = None;
        let mut parts: BTreeMap<Monomial, (Monomial, Scalar, Element)> = BTreeMap::new();
        for (mono, img) in &self.table {
            let not_tri = |reason: String| Error::NotTriangular {
                n: mono.n,
                m: mono.m,
                reason,
            };
            if img.degree() != Some(mono.m) {
                return Err(not_tri(format!(
                    "image has y-degree {:?}, expected {}",
                    img.degree(),
                    mono.m
                )));
            }
            let top = img.graded_component(mono.m);
            let Some((lead, c)) = top.as_single_term() else {
                return Err(not_tri("top-degree part is not a single monomial".into()));
            };
            let r = lead.n - mono.n;
            match shift {
                None => shift = Some(r),
                Some(r0) if r0 != r => {
                    return Err(not_tri(format!("shift {r} differs from shift {r0} elsewhere")))
                }
                _ => {}
            }
            let inv = c.inv().expect("single term coefficient is nonzero");
            parts.insert(lead, (*mono, inv, img - &top));
        }
        let r = shift.unwrap_or(0);

        let mut psi: BTreeMap<Monomial, Element> = BTreeMap::new();
        let mut missing: Option<Monomial> = None;
        for m in 0..=w.m_max {
            for n in w.n_lo..=w.n_hi {
                let key = Monomial::new(n + r, m);
                let (src, inv, lower) = &parts[&key];
                let mut acc = Element::monomial(src.n, src.m);
                let mut ok = true;
                for (t, c) in lower.terms() {
                    match psi.get(t) {
                        Some(p) => acc.add_scaled(p, &-c),
                        None => {
                            missing.get_or_insert(*t);
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    psi.insert(key, acc.scale(inv));
                }
            }
        }

        let complete = |k: i64| (0..=w.m_max).all(|m| psi.contains_key(&Monomial::new(k, m)));
        let mut best: Option<(i64, i64)> = None;
        let mut start: Option<i64> = None;
        for k in w.n_lo + r..=w.n_hi + r + 1 {
            if k <= w.n_hi + r && complete(k) {
                start.get_or_insert(k);
            } else if let Some(s) = start.take() {
                if best.is_none_or(|(a, b)| k - 1 - s > b - a) {
                    best = Some((s, k - 1));
                }
            }
        }
        let Some((a, b)) = best else {
            let t = missing.unwrap_or(Monomial::new(w.n_lo, w.m_max));
            return Err(Error::WindowAdequacy { n: t.n, m: t.m });
        };
        let window = Window::new(a, b, w.m_max)?;
        let table = window
            .monomials()
            .map(|mono| (mono, psi.remove(&mono).expect("run is complete")))
            .collect();
        Ok(TabulatedMorphism { window, table })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "window": self.window,
            "table": self.table.iter().map(|(k, e)| json!({"n": k.n, "m": k.m, "image": e.to_json()})).collect::<Vec<_>>(),
        })
    }
}

impl Serialize for TabulatedMorphism {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TabulatedMorphism {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        let window: Window = serde_json::from_value(
            v.get("window")
                .cloned()
                .ok_or_else(|| D::Error::custom("missing \"window\""))?,
        )
        .map_err(D::Error::custom)?;
        let entries = v
            .get("table")
            .and_then(Value::as_array)
            .ok_or_else(|| D::Error::custom("missing \"table\" array"))?;
        let mut table = BTreeMap::new();
        for e in entries {
            let n = e.get("n").and_then(Value::as_i64);
            let m = e.get("m").and_then(Value::as_u64);
            let (Some(n), Some(m)) = (n, m) else {
                return Err(D::Error::custom("table entry needs \"n\" and \"m\""));
            };
            let img = Element::from_json_value::<D::Error>(
                e.get("image")
                    .ok_or_else(|| D::Error::custom("table entry needs \"image\""))?,
            )?;
            table.insert(Monomial::new(n, m as u32), img);
        }
        TabulatedMorphism::from_table(window, table).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::{AlphaSeq, BetaSeq};

    fn w() -> Window {
        Window::new(-3, 3, 3).unwrap()
    }

    #[test]
    fn theta_inverts_to_opposite_shift() {
        let f = Field::symbolic();
        let inv = Morphism::theta(2).tabulate(&f, &w()).invert().unwrap();
        assert_eq!(inv.window().n_lo, -1);
        assert_eq!(inv, Morphism::theta(-2).tabulate(&f, inv.window()));
    }

    #[test]
    fn phi_alpha_inverts_pointwise() {
        let f = Field::symbolic();
        let a = AlphaSeq::from_pairs([(0, Scalar::from_int(3)), (1, Scalar::from_ratio(-1, 2))]).unwrap();
        let inv = Morphism::phi_alpha(a.clone()).tabulate(&f, &w()).invert().unwrap();
        assert_eq!(inv, Morphism::phi_alpha(a.inverse()).tabulate(&f, &w()));
    }

    #[test]
    fn phi_beta_inverse_composes_to_identity() {
        let f = Field::symbolic();
        let b = BetaSeq::from_pairs([(0, Scalar::from_int(2)), (1, Scalar::one())]);
        let table = Morphism::phi_beta(1, b.clone()).unwrap().tabulate(&f, &w());
        let inv = table.invert().unwrap();
        let id = table.compose(&inv).unwrap();
        assert_eq!(id, Morphism::identity().tabulate(&f, inv.window()));
        let low = inv.window().with_m_max(1);
        assert_eq!(
            inv.restrict(&low).unwrap(),
            Morphism::phi_beta(1, b.neg()).unwrap().tabulate(&f, &low)
        );
        // agreement with phi_(-beta) stops at degree 2
        let y2 = Monomial::new(0, 2);
        assert_ne!(inv.get(y2), Some(&Morphism::phi_beta(1, b.neg()).unwrap().apply_monomial(&f, y2)));
    }

    #[test]
    fn rejects_non_triangular() {
        let f = Field::symbolic();
        let mut t = Morphism::identity().tabulate(&f, &w());
        t.table.insert(Monomial::new(0, 1), Element::monomial(0, 2));
        assert!(matches!(t.invert(), Err(Error::NotTriangular { n: 0, m: 1, .. })));
    }

    #[test]
    fn json_round_trip() {
        let f = Field::symbolic();
        let t = Morphism::phi_beta(2, BetaSeq::indicator(0)).unwrap().tabulate(&f, &w());
        let back: TabulatedMorphism = serde_json::from_value(t.to_json()).unwrap();
        assert_eq!(back, t);
    }
}
