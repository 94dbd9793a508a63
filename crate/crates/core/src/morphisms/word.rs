use std::fmt;

use serde::{Deserialize, Serialize};

use super::table::TabulatedMorphism;
use crate::error::{Error, Result};
use crate::groupkit::{AlphaSeq, BetaSeq};
use crate::halgebra::{Element, Monomial, Window};
use crate::qscalar::Field;

/// One generator of the coalgebra automorphism group.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Atom {
    /// `theta_r(x^n y^m) = x^(n+r) y^m`
    Theta(i64),
    /// `phi_alpha(x^n y^m) = alpha_n ... alpha_(n+m-1) x^n y^m`
    PhiAlpha(AlphaSeq),
    /// `phi^(s)_beta`, identity below y-degree `s`.
    PhiBeta { s: u32, beta: BetaSeq },
}

impl Atom {
    pub fn image(&self, f: &Field, mono: Monomial) -> Element {
        match self {
            Atom::Theta(r) => Element::monomial(mono.n + r, mono.m),
            Atom::PhiAlpha(alpha) => Element::term(alpha.run(mono.n, mono.m), mono),
            Atom::PhiBeta { s, beta } => phi_beta_image(f, *s, beta, mono),
        }
    }

    pub fn apply(&self, f: &Field, e: &Element) -> Element {
        let mut out = Element::zero();
        for (mono, c) in e.terms() {
            out.add_scaled(&self.image(f, *mono), c);
        }
        out
    }
}

/// For `m >= s`:
/// `x^n y^m + sum_(i=1)^(m/s) binom(m,s)_(q,i) (beta_(n,s;i) x^(n+is)
///   - beta_(n,s;i-1) beta_(n+m-s) x^(n+is-s)) y^(m-is)`.
fn phi_beta_image(f: &Field, s: u32, beta: &BetaSeq, mono: Monomial) -> Element {
    let Monomial { n, m } = mono;
    let mut out = Element::monomial(n, m);
    if m < s {
        return out;
    }
    let tail = beta.get(n + m as i64 - s as i64);
    let st = s as i64;
    for i in 1..=(m / s) {
        let il = i as i64;
        let c = f
            .q_multi_binom(m as i64, st, il)
            .expect("parameters satisfy 1 <= i <= m/s");
        let deg = m - i * s;
        let lead = beta.run(n, st, i);
        if !lead.is_zero() {
            out.add_term(Monomial::new(n + il * st, deg), &c * &lead);
        }
        if !tail.is_zero() {
            let back = &beta.run(n, st, i - 1) * &tail;
            out.add_term(Monomial::new(n + il * st - st, deg), -(&c * &back));
        }
    }
    out
}

/// A composite of generators. The word `[A, B, C]` denotes `A o B o C`:
/// the last atom is applied first.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "MorphismRepr")]
pub struct Morphism {
    word: Vec<Atom>,
}

#[derive(Deserialize)]
struct MorphismRepr {
    word: Vec<Atom>,
}

impl TryFrom<MorphismRepr> for Morphism {
    type Error = Error;
    fn try_from(r: MorphismRepr) -> Result<Self> {
        Morphism::from_atoms(r.word)
    }
}

impl Morphism {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Validates `s >= 1` for every `PhiBeta` atom.
    pub fn from_atoms(word: Vec<Atom>) -> Result<Self> {
        if word
            .iter()
            .any(|a| matches!(a, Atom::PhiBeta { s: 0, .. }))
        {
            return Err(Error::InvalidArgument("phi_beta level s must be >= 1".into()));
        }
        Ok(Morphism { word })
    }

    pub fn theta(r: i64) -> Self {
        Morphism {
            word: vec![Atom::Theta(r)],
        }
    }

    pub fn phi_alpha(alpha: AlphaSeq) -> Self {
        Morphism {
            word: vec![Atom::PhiAlpha(alpha)],
        }
    }

    pub fn phi_beta(s: u32, beta: BetaSeq) -> Result<Self> {
        Self::from_atoms(vec![Atom::PhiBeta { s, beta }])
    }

    pub(crate) fn phi_beta_unchecked(s: u32, beta: BetaSeq) -> Self {
        Morphism {
            word: vec![Atom::PhiBeta { s, beta }],
        }
    }

    pub fn word(&self) -> &[Atom] {
        &self.word
    }

    /// `self o other`
    pub fn compose(&self, other: &Morphism) -> Morphism {
        let mut word = self.word.clone();
        word.extend(other.word.iter().cloned());
        Morphism { word }
    }

    pub fn apply_monomial(&self, f: &Field, mono: Monomial) -> Element {
        let mut iter = self.word.iter().rev();
        let mut e = match iter.next() {
            Some(atom) => atom.image(f, mono),
            None => return Element::monomial(mono.n, mono.m),
        };
        for atom in iter {
            e = atom.apply(f, &e);
        }
        e
    }

    pub fn apply(&self, f: &Field, e: &Element) -> Element {
        let mut out = Element::zero();
        for (mono, c) in e.terms() {
            out.add_scaled(&self.apply_monomial(f, *mono), c);
        }
        out
    }

    /// Exact inverse word when every atom is a `Theta` or `PhiAlpha`;
    /// `None` if the word contains a `PhiBeta`.
    pub fn inverse(&self) -> Option<Morphism> {
        let mut word = Vec::with_capacity(self.word.len());
        for atom in self.word.iter().rev() {
            word.push(match atom {
                Atom::Theta(r) => Atom::Theta(-r),
                Atom::PhiAlpha(a) => Atom::PhiAlpha(a.inverse()),
                Atom::PhiBeta { .. } => return None,
            });
        }
        Some(Morphism { word })
    }

    pub fn tabulate(&self, f: &Field, window: &Window) -> TabulatedMorphism {
        TabulatedMorphism::from_fn(*window, |mono| self.apply_monomial(f, mono))
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Theta(r) => write!(f, "theta_{r}"),
            Atom::PhiAlpha(a) => write!(f, "phi_alpha{a}"),
            Atom::PhiBeta { s, beta } => write!(f, "phi^({s})_beta{beta}"),
        }
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.word.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" o "))
    }
}
