use serde::{Deserialize, Serialize};

use super::seq::{AlphaSeq, Shift};
use super::tower::BetaTower;
use crate::morphisms::Morphism;

/// An element `(alpha, r)` of `(k^x)^Z x| Z` with product
/// `(alpha, r)(beta, t) = (alpha * beta[-r], r + t)`.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct SemidirectElt {
    pub alpha: AlphaSeq,
    pub r: i64,
}

impl SemidirectElt {
    pub fn new(alpha: AlphaSeq, r: i64) -> Self {
        SemidirectElt { alpha, r }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    pub fn mul(&self, other: &SemidirectElt) -> SemidirectElt {
        SemidirectElt {
            alpha: self.alpha.mul(&other.alpha.shift(-self.r)),
            r: self.r + other.r,
        }
    }

    pub fn inverse(&self) -> SemidirectElt {
        SemidirectElt {
            alpha: self.alpha.inverse().shift(self.r),
            r: -self.r,
        }
    }

    /// `phi_alpha theta_r`
    pub fn to_morphism(&self) -> Morphism {
        Morphism::phi_alpha(self.alpha.clone()).compose(&Morphism::theta(self.r))
    }

    /// `(alpha, r) . (beta^(i)) = (alpha^-1<i> beta^(i)[-r])`.
    pub fn act(&self, tower: &BetaTower) -> BetaTower {
        let inv = self.alpha.inverse();
        BetaTower::from_levels_unchecked(
            tower
                .levels()
                .iter()
                .enumerate()
                .map(|(k, b)| b.shift(-self.r).scaled_by(&inv.angle(k as u32 + 1)))
                .collect(),
        )
    }
}

/// Free-function form of [`SemidirectElt::mul`].
pub fn semidirect_mul(a: &SemidirectElt, b: &SemidirectElt) -> SemidirectElt {
    a.mul(b)
}

/// Free-function form of [`SemidirectElt::act`].
pub fn act(a: &SemidirectElt, tower: &BetaTower) -> BetaTower {
    a.act(tower)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::BetaSeq;
    use crate::qscalar::Scalar;

    fn alpha(pairs: &[(i64, i64)]) -> AlphaSeq {
        AlphaSeq::from_pairs(pairs.iter().map(|&(n, c)| (n, Scalar::from_int(c)))).unwrap()
    }

    #[test]
    fn product_slices() {
        let a = SemidirectElt::new(alpha(&[(0, 2)]), 0);
        let b = SemidirectElt::new(alpha(&[(1, 3)]), 0);
        assert_eq!(a.mul(&b).alpha, alpha(&[(0, 2), (1, 3)]));
        let r = SemidirectElt::new(AlphaSeq::one(), 2);
        let t = SemidirectElt::new(AlphaSeq::one(), -5);
        assert_eq!(r.mul(&t), SemidirectElt::new(AlphaSeq::one(), -3));
        let c = SemidirectElt::new(alpha(&[(0, 2)]), 1);
        let d = SemidirectElt::new(alpha(&[(0, 3)]), 4);
        assert_eq!(c.mul(&d), SemidirectElt::new(alpha(&[(0, 2), (1, 3)]), 5));
    }

    #[test]
    fn inverse_law() {
        let a = SemidirectElt::new(alpha(&[(0, 2), (3, -7)]), 3);
        assert_eq!(a.mul(&a.inverse()), SemidirectElt::identity());
        assert_eq!(a.inverse().mul(&a), SemidirectElt::identity());
    }

    #[test]
    fn action_special_cases() {
        let t = BetaTower::new(vec![BetaSeq::indicator(0), BetaSeq::indicator(2)]).unwrap();
        assert_eq!(SemidirectElt::identity().act(&t), t);
        let shifted = SemidirectElt::new(AlphaSeq::one(), 1).act(&t);
        assert_eq!(shifted.level(1), &BetaSeq::indicator(1));
        assert_eq!(shifted.level(2), &BetaSeq::indicator(3));
        let scaled = SemidirectElt::new(alpha(&[(0, 2)]), 0).act(&t);
        assert_eq!(scaled.level(1).get(0), Scalar::from_ratio(1, 2));
        assert_eq!(scaled.level(2), &BetaSeq::indicator(2));
    }
}
