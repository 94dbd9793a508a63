use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::coalgebra::{extract_level, is_coalgebra_map};
use super::table::TabulatedMorphism;
use super::word::Morphism;
use crate::error::{Error, Result};
use crate::groupkit::{AlphaSeq, BetaSeq, BetaTower, SemidirectElt};
use crate::halgebra::{Element, Monomial};
use crate::qscalar::Field;

/// `phi = Phi(tower) phi_alpha theta_r`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub r: i64,
    pub alpha: AlphaSeq,
    pub tower: BetaTower,
}

impl DecompositionResult {
    pub fn reconstruct(&self) -> Morphism {
        self.tower
            .to_morphism()
            .compose(&SemidirectElt::new(self.alpha.clone(), self.r).to_morphism())
    }
}

/// Factor a tabulated coalgebra automorphism as `Phi(g) phi_alpha theta_r`
/// and read off the first `depth` levels of `g`.
///
/// Parameters are recovered only inside the window and taken to be trivial
/// outside it. To make that assumption checkable, every recovered sequence
/// must be trivial at the window's target edges (and, for the tower, on the
/// last `depth` indices, which the top-degree images cannot see in full);
/// a final reconstruction must reproduce the whole table up to degree
/// `depth`.
pub fn decompose(f: &Field, table: &TabulatedMorphism, depth: usize) -> Result<DecompositionResult> {
    let w = *table.window();
    if depth == 0 || depth > w.m_max as usize {
        return Err(Error::InvalidArgument(format!(
            "depth must satisfy 1 <= depth <= m_max = {}, got {depth}",
            w.m_max
        )));
    }
    let report = is_coalgebra_map(f, table, &w);
    if let Some(ce) = report.counterexample {
        return Err(Error::NotCoalgebraMap(format!(
            "fails at x^{} y^{}: {}",
            ce.n, ce.m, ce.reason
        )));
    }
    let image = |n: i64, m: u32| -> &Element { table.get(Monomial::new(n, m)).expect("window monomial") };

    let r = match image(w.n_lo, 0).as_single_term() {
        Some((mono, c)) if mono.m == 0 && c.is_one() => mono.n - w.n_lo,
        _ => {
            return Err(Error::Shape {
                n: w.n_lo,
                m: 0,
                reason: "grouplike is not sent to a grouplike".into(),
            })
        }
    };
    for n in w.n_lo..=w.n_hi {
        if image(n, 0) != &Element::monomial(n + r, 0) {
            return Err(Error::Shape {
                n,
                m: 0,
                reason: format!("expected x^{}", n + r),
            });
        }
    }

    let mut alpha_pairs = Vec::new();
    for n in w.n_lo..=w.n_hi {
        let a = image(n, 1).coeff(Monomial::new(n + r, 1));
        if a.is_zero() {
            return Err(Error::ZeroAlpha(n + r));
        }
        if (n == w.n_lo || n == w.n_hi) && !a.is_one() {
            return Err(Error::WindowAdequacy { n, m: 1 });
        }
        alpha_pairs.push((n + r, a));
    }
    let alpha = AlphaSeq::from_pairs(alpha_pairs)?;

    // images of Phi(g) = phi theta_-r phi_alpha^-1 on target indices
    let (k_lo, k_hi) = (w.n_lo + r, w.n_hi + r);
    let mut stripped: BTreeMap<Monomial, Element> = BTreeMap::new();
    for m in 1..=depth as u32 {
        for k in k_lo..=k_hi {
            let inv = alpha.run(k, m).inv().expect("alpha values are units");
            stripped.insert(Monomial::new(k, m), image(k - r, m).scale(&inv));
        }
    }

    let mut levels: Vec<BetaSeq> = Vec::with_capacity(depth);
    for i in 1..=depth as u32 {
        let lower = BetaTower::levels_morphism(&levels);
        let level = extract_level(
            f,
            |k| stripped.get(&Monomial::new(k, i)).cloned(),
            &lower,
            i,
            k_lo..=k_hi,
        )?;
        if let Some((lo, hi)) = level.support_range() {
            if lo <= k_lo || hi > k_hi - depth as i64 {
                let k = if lo <= k_lo { lo } else { hi };
                return Err(Error::WindowAdequacy { n: k - r, m: i });
            }
        }
        levels.push(level);
    }
    let result = DecompositionResult {
        r,
        alpha,
        tower: BetaTower::new(levels)?,
    };

    let rebuilt = result.reconstruct();
    for mono in w.monomials().filter(|m| m.m as usize <= depth) {
        if &rebuilt.apply_monomial(f, mono) != image(mono.n, mono.m) {
            return Err(Error::Shape {
                n: mono.n,
                m: mono.m,
                reason: "reconstruction does not reproduce the table".into(),
            });
        }
    }
    Ok(result)
}
