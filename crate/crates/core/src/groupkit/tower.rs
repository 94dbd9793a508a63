use serde::{Deserialize, Serialize};

use super::seq::{BetaSeq, Shift};
use crate::error::{Error, Result};
use crate::halgebra::{Monomial, Window};
use crate::morphisms::{decompose, extract_level, Morphism};
use crate::qscalar::Field;

/// A truncated element `(beta^(1), ..., beta^(i))` of `G_inf`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "TowerRepr")]
pub struct BetaTower {
    levels: Vec<BetaSeq>,
}

#[derive(Deserialize)]
struct TowerRepr {
    levels: Vec<BetaSeq>,
}

impl TryFrom<TowerRepr> for BetaTower {
    type Error = Error;
    fn try_from(r: TowerRepr) -> Result<Self> {
        BetaTower::new(r.levels)
    }
}

impl BetaTower {
    pub fn new(levels: Vec<BetaSeq>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidArgument("a tower needs depth >= 1".into()));
        }
        Ok(BetaTower { levels })
    }

    pub(crate) fn from_levels_unchecked(levels: Vec<BetaSeq>) -> Self {
        BetaTower { levels }
    }

    pub fn zero(depth: usize) -> Self {
        BetaTower {
            levels: vec![BetaSeq::zero(); depth.max(1)],
        }
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[BetaSeq] {
        &self.levels
    }

    /// Level `i`, counted from 1.
    pub fn level(&self, i: usize) -> &BetaSeq {
        &self.levels[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(BetaSeq::is_zero)
    }

    /// Extend with zero levels up to `depth`.
    pub fn pad(&self, depth: usize) -> BetaTower {
        let mut levels = self.levels.clone();
        levels.resize(depth.max(levels.len()), BetaSeq::zero());
        BetaTower { levels }
    }

    /// Keep the first `depth` levels.
    pub fn truncate(&self, depth: usize) -> Result<BetaTower> {
        if depth == 0 || depth > self.depth() {
            return Err(Error::InvalidArgument(format!(
                "cannot truncate a depth-{} tower to depth {depth}",
                self.depth()
            )));
        }
        Ok(BetaTower {
            levels: self.levels[..depth].to_vec(),
        })
    }

    /// Smallest and largest index used by any level.
    pub fn support_range(&self) -> Option<(i64, i64)> {
        self.levels
            .iter()
            .filter_map(BetaSeq::support_range)
            .reduce(|(a, b), (c, d)| (a.min(c), b.max(d)))
    }

    /// `Phi(B) = phi^(1)_beta(1) phi^(2)_beta(2) ... phi^(i)_beta(i)`.
    pub fn to_morphism(&self) -> Morphism {
        Self::levels_morphism(&self.levels)
    }

    pub(crate) fn levels_morphism(levels: &[BetaSeq]) -> Morphism {
        levels
            .iter()
            .enumerate()
            .filter(|(_, b)| !b.is_zero())
            .fold(Morphism::identity(), |acc, (k, b)| {
                acc.compose(&Morphism::phi_beta_unchecked(k as u32 + 1, b.clone()))
            })
    }

    /// Group law of `G_i`: `delta^(1) = beta^(1) + gamma^(1)` and for
    /// `j >= 2`, `delta^(j)_n (x^(n+j) - x^n)` is the difference between
    /// `Phi(B) Phi(C)` and `phi^(1)_delta(1) ... phi^(j-1)_delta(j-1)` on
    /// `x^n y^j`.
    pub fn g_mul(&self, f: &Field, other: &BetaTower) -> Result<BetaTower> {
        let depth = self.depth().max(other.depth());
        let (b, c) = (self.pad(depth), other.pad(depth));
        let range = match (b.support_range(), c.support_range()) {
            (None, None) => return Ok(BetaTower::zero(depth)),
            (Some(x), None) | (None, Some(x)) => x,
            (Some((a0, a1)), Some((b0, b1))) => (a0.min(b0), a1.max(b1)),
        };
        let composite = b.to_morphism().compose(&c.to_morphism());
        let mut levels: Vec<BetaSeq> = Vec::with_capacity(depth);
        for j in 1..=depth as u32 {
            let lower = Self::levels_morphism(&levels);
            // x^n y^j only sees parameters at indices n..n+j-1
            let ks = range.0 - j as i64 + 1..=range.1;
            let level = extract_level(
                f,
                |k| Some(composite.apply_monomial(f, Monomial::new(k, j))),
                &lower,
                j,
                ks,
            )?;
            levels.push(level);
        }
        Ok(BetaTower { levels })
    }

    /// The closed forms for `delta^(2)` and `delta^(3)`.
    pub fn g_mul_closed(&self, f: &Field, level: usize, other: &BetaTower) -> Result<BetaSeq> {
        if level != 2 && level != 3 {
            return Err(Error::InvalidArgument(format!(
                "closed forms exist only for levels 2 and 3, got {level}"
            )));
        }
        let (b, c) = (self.pad(level), other.pad(level));
        let (b1, c1) = (b.level(1), c.level(1));
        if level == 2 {
            let cross = b1.mul(&c1.shift(1)).scale(&f.q_int(2));
            return Ok(b.level(2).add(c.level(2)).sub(&cross));
        }
        let (b2, c3, b3) = (b.level(2), c.level(3), b.level(3));
        let mixed = b2
            .mul(&c1.shift(2))
            .sub(&b2.shift(1).mul(c1))
            .scale(&f.q_int(3));
        let cubic = b1
            .add(c1)
            .mul(&b1.shift(1))
            .mul(&c1.shift(2))
            .scale(&f.q_factorial(3));
        Ok(b3.add(c3).sub(&mixed).sub(&cubic))
    }

    /// Inverse in `G_i`, read off from the tabulated inverse of `Phi(B)`.
    pub fn g_inv(&self, f: &Field) -> Result<BetaTower> {
        let depth = self.depth();
        let Some((lo, hi)) = self.support_range() else {
            return Ok(BetaTower::zero(depth));
        };
        let d = depth as i64;
        let window = Window::new(lo - d - 2, hi + 2 * d + 2, depth as u32)?;
        let inverse = self.to_morphism().tabulate(f, &window).invert()?;
        let result = decompose(f, &inverse, depth)?;
        if result.r != 0 || !result.alpha.is_one() {
            return Err(Error::Shape {
                n: 0,
                m: 1,
                reason: "inverse of a tower element left the normal subgroup".into(),
            });
        }
        Ok(result.tower)
    }
}

/// Free-function form of [`BetaTower::g_mul`].
pub fn g_mul(f: &Field, b: &BetaTower, c: &BetaTower) -> Result<BetaTower> {
    b.g_mul(f, c)
}

/// Free-function form of [`BetaTower::g_mul_closed`].
pub fn g_mul_closed(f: &Field, level: usize, b: &BetaTower, c: &BetaTower) -> Result<BetaSeq> {
    b.g_mul_closed(f, level, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::Scalar;

    #[test]
    fn depth_one_adds() {
        let f = Field::symbolic();
        let b = BetaTower::new(vec![BetaSeq::from_pairs([(0, Scalar::from_int(2))])]).unwrap();
        let c = BetaTower::new(vec![BetaSeq::from_pairs([(0, Scalar::from_int(3)), (1, Scalar::one())])]).unwrap();
        let d = b.g_mul(&f, &c).unwrap();
        assert_eq!(d.level(1), &b.level(1).add(c.level(1)));
        assert_eq!(b.g_mul(&f, &BetaTower::zero(1)).unwrap(), b);
    }

    #[test]
    fn depth_two_cross_term() {
        let f = Field::symbolic();
        let b = BetaTower::new(vec![BetaSeq::indicator(0), BetaSeq::zero()]).unwrap();
        let c = BetaTower::new(vec![BetaSeq::indicator(1), BetaSeq::zero()]).unwrap();
        let expected = BetaSeq::from_pairs([(0, -f.q_int(2))]);
        assert_eq!(b.g_mul(&f, &c).unwrap().level(2), &expected);
        assert_eq!(b.g_mul_closed(&f, 2, &c).unwrap(), expected);
        assert!(b.g_mul_closed(&f, 4, &c).is_err());
        let zero = BetaTower::zero(3);
        assert!(zero.g_mul_closed(&f, 3, &zero).unwrap().is_zero());
    }

    #[test]
    fn depth_three_mixed_term_pairs_beta2_with_gamma1_two_steps_ahead() {
        let f = Field::symbolic();
        let level2 = |n| BetaTower::new(vec![BetaSeq::zero(), BetaSeq::indicator(n), BetaSeq::zero()]).unwrap();
        let level1 = |n| BetaTower::new(vec![BetaSeq::indicator(n), BetaSeq::zero(), BetaSeq::zero()]).unwrap();
        let cases = [
            (level2(0), level1(2), BetaSeq::from_pairs([(0, -f.q_int(3))])),
            (level2(1), level1(0), BetaSeq::from_pairs([(0, f.q_int(3))])),
            (level2(0), level1(1), BetaSeq::zero()),
        ];
        for (b, c, expected) in cases {
            assert_eq!(b.g_mul(&f, &c).unwrap().level(3), &expected);
            assert_eq!(b.g_mul_closed(&f, 3, &c).unwrap(), expected);
        }
    }

    #[test]
    fn inverse_cancels() {
        let f = Field::symbolic();
        let b = BetaTower::new(vec![
            BetaSeq::from_pairs([(0, Scalar::from_int(2)), (1, Scalar::from_ratio(-1, 3))]),
            BetaSeq::indicator(1),
            BetaSeq::from_pairs([(-1, Scalar::from_int(5))]),
        ])
        .unwrap();
        let inv = b.g_inv(&f).unwrap();
        assert!(b.g_mul(&f, &inv).unwrap().is_zero());
        assert!(inv.g_mul(&f, &b).unwrap().is_zero());
        assert_eq!(inv.level(1), &b.level(1).neg());
    }
}
