use serde::Serialize;

use super::table::MonomialMap;
use super::word::Morphism;
use crate::error::{Error, Result};
use crate::groupkit::BetaSeq;
use crate::halgebra::{comultiply, comultiply_monomial, counit, Element, Monomial, Tensor, TensorElement, Window};
use crate::qscalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Counterexample {
    pub n: i64,
    pub m: u32,
    pub reason: String,
}

/// Outcome of [`is_coalgebra_map`]. Monomials whose image, or the image of a
/// coproduct leg, is unknown (outside a tabulated window) are skipped.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CoalgebraReport {
    pub checked: usize,
    pub skipped: usize,
    pub counterexample: Option<Counterexample>,
}

impl CoalgebraReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none() && self.checked > 0
    }
}

/// Check `Delta phi = (phi (x) phi) Delta` and `eps phi = eps` on every window
/// monomial, by y-degree first and then by `n`, stopping at the first failure.
pub fn is_coalgebra_map<M: MonomialMap + ?Sized>(f: &Field, map: &M, window: &Window) -> CoalgebraReport {
    let mut report = CoalgebraReport {
        checked: 0,
        skipped: 0,
        counterexample: None,
    };
    for mono in window.monomials_by_degree() {
        match check_monomial(f, map, mono) {
            None => report.skipped += 1,
            Some(Ok(())) => report.checked += 1,
            Some(Err(reason)) => {
                report.checked += 1;
                report.counterexample = Some(Counterexample {
                    n: mono.n,
                    m: mono.m,
                    reason,
                });
                break;
            }
        }
    }
    report
}

fn check_monomial<M: MonomialMap + ?Sized>(
    f: &Field,
    map: &M,
    mono: Monomial,
) -> Option<std::result::Result<(), String>> {
    let img = map.image(f, mono)?;
    let mut rhs: TensorElement = Tensor::zero();
    for ([a, b], c) in comultiply_monomial(f, mono).terms() {
        let (ia, ib) = (map.image(f, *a)?, map.image(f, *b)?);
        for ([u, v], d) in TensorElement::pure(&ia, &ib).terms() {
            rhs.add_term([*u, *v], c * d);
        }
    }
    let eps = counit(&img);
    let expected = if mono.m == 0 { Scalar::one() } else { Scalar::zero() };
    if eps != expected {
        return Some(Err(format!("counit of image is {eps}, expected {expected}")));
    }
    let lhs = comultiply(f, &img);
    if lhs != rhs {
        return Some(Err("coproduct of image differs from (phi (x) phi) of coproduct".into()));
    }
    Some(Ok(()))
}

/// If `diff = c (x^(k+j) - x^k)` return `c`.
fn grouplike_difference(diff: &Element, k: i64, j: u32) -> Option<Scalar> {
    let c = diff.coeff(Monomial::x(k + j as i64));
    let expected = &Element::term(c.clone(), Monomial::x(k + j as i64)) - &Element::term(c.clone(), Monomial::x(k));
    (diff == &expected).then_some(c)
}

/// Read off level `j`: for each `k`, `images(k) - lower(x^k y^j)` must equal
/// `beta_k (x^(k+j) - x^k)`.
pub fn extract_level(
    f: &Field,
    images: impl Fn(i64) -> Option<Element>,
    lower: &Morphism,
    j: u32,
    ks: std::ops::RangeInclusive<i64>,
) -> Result<BetaSeq> {
    let mut level = BetaSeq::zero();
    for k in ks {
        let img = images(k).ok_or(Error::WindowAdequacy { n: k, m: j })?;
        let diff = &img - &lower.apply_monomial(f, Monomial::new(k, j));
        let c = grouplike_difference(&diff, k, j).ok_or_else(|| Error::Shape {
            n: k,
            m: j,
            reason: format!("residual at level {j} is not a multiple of x^(n+{j}) - x^n"),
        })?;
        level.set(k, c);
    }
    Ok(level)
}

/// `f_s(phi)`: for `phi` fixing everything below y-degree `s`,
/// `phi(x^n y^s) = x^n y^s + beta_n (x^(n+s) - x^n)`; returns `beta` on `ns`.
pub fn level_defect<M: MonomialMap + ?Sized>(
    f: &Field,
    map: &M,
    s: u32,
    ns: std::ops::RangeInclusive<i64>,
) -> Result<BetaSeq> {
    extract_level(f, |k| map.image(f, Monomial::new(k, s)), &Morphism::identity(), s, ns)
}

/// Coefficient of `x^n y^m` in `phi(x^n y^m)`, after checking that the image
/// has y-degree at most `m` and no other degree-`m` term.
pub fn leading_coefficient<M: MonomialMap + ?Sized>(f: &Field, map: &M, mono: Monomial) -> Result<Scalar> {
    let img = map.image(f, mono).ok_or(Error::WindowAdequacy {
        n: mono.n,
        m: mono.m,
    })?;
    if img.degree().is_some_and(|d| d > mono.m) {
        return Err(Error::Shape {
            n: mono.n,
            m: mono.m,
            reason: "image leaves the filtration level".into(),
        });
    }
    let top = img.graded_component(mono.m);
    let c = top.coeff(mono);
    if top.len() > usize::from(!c.is_zero()) {
        return Err(Error::Shape {
            n: mono.n,
            m: mono.m,
            reason: "top-degree part has terms other than x^n y^m".into(),
        });
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupkit::AlphaSeq;
    use crate::morphisms::TabulatedMorphism;

    fn w() -> Window {
        Window::new(-3, 3, 4).unwrap()
    }

    #[test]
    fn generators_pass() {
        let f = Field::symbolic();
        let a = AlphaSeq::from_pairs([(0, Scalar::from_int(2)), (2, Scalar::from_ratio(-1, 3))]).unwrap();
        let b = BetaSeq::from_pairs([(0, Scalar::from_int(3)), (1, Scalar::from_ratio(1, 2))]);
        let maps = [
            Morphism::theta(2),
            Morphism::phi_alpha(a),
            Morphism::phi_beta(1, b.clone()).unwrap(),
            Morphism::phi_beta(2, b.clone()).unwrap(),
            Morphism::phi_beta(3, b).unwrap(),
        ];
        for phi in &maps {
            let rep = is_coalgebra_map(&f, phi, &w());
            assert!(rep.passed(), "{phi}: {rep:?}");
            assert_eq!(rep.skipped, 0);
        }
    }

    #[test]
    fn corrupted_map_fails_at_y() {
        let f = Field::symbolic();
        let t = TabulatedMorphism::from_fn(w(), |mono| {
            if mono == Monomial::new(0, 1) {
                Element::monomial(0, 2)
            } else {
                Element::monomial(mono.n, mono.m)
            }
        });
        let rep = is_coalgebra_map(&f, &t, &w());
        let ce = rep.counterexample.unwrap();
        assert_eq!((ce.n, ce.m), (0, 1));
    }

    #[test]
    fn defect_of_phi_beta() {
        let f = Field::symbolic();
        let b = BetaSeq::from_pairs([(0, Scalar::from_int(3)), (-1, Scalar::from_ratio(1, 2))]);
        for s in 1..=3 {
            let phi = Morphism::phi_beta(s, b.clone()).unwrap();
            assert_eq!(level_defect(&f, &phi, s, -3..=3).unwrap(), b);
        }
    }

    #[test]
    fn leading_coefficient_of_phi_alpha() {
        let f = Field::symbolic();
        let a = AlphaSeq::from_pairs([(0, Scalar::from_int(2)), (1, Scalar::from_int(5))]).unwrap();
        let phi = Morphism::phi_alpha(a).compose(&Morphism::phi_beta(1, BetaSeq::indicator(0)).unwrap());
        assert_eq!(
            leading_coefficient(&f, &phi, Monomial::new(0, 2)).unwrap(),
            Scalar::from_int(10)
        );
        assert!(leading_coefficient(&f, &Morphism::theta(1), Monomial::new(0, 1)).is_err());
    }
}
