//! Product, coproduct, counit and antipode of `H`.
//!
//! Monomials are kept in the normal form `x^n y^m`. Pushing `y^b` past `x^c`
//! with `yx = qxy` picks up one factor of `q` per crossing, so
//! `(x^a y^b)(x^c y^d) = q^(bc) x^(a+c) y^(b+d)`; the same holds for negative
//! `c` because `y x^-1 = q^-1 x^-1 y`.

use super::element::{Element, Monomial, Tensor, TensorElement};
use crate::qscalar::{Field, Scalar};

/// Product of two basis monomials as `(q-power, monomial)`.
pub fn monomial_product(a: Monomial, b: Monomial) -> (i64, Monomial) {
    (
        a.m as i64 * b.n,
        Monomial::new(a.n + b.n, a.m + b.m),
    )
}

pub fn multiply(f: &Field, a: &Element, b: &Element) -> Element {
    let mut out = Element::zero();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let (k, mono) = monomial_product(*ma, *mb);
            out.add_term(mono, &(ca * cb) * &f.q_pow(k));
        }
    }
    out
}

/// `Delta(x^n y^m) = sum_i binom(m, i)_q x^n y^i (x) x^(n+i) y^(m-i)`.
pub fn comultiply_monomial(f: &Field, mono: Monomial) -> TensorElement {
    let mut t = Tensor::zero();
    for i in 0..=mono.m {
        t.add_term(
            [
                Monomial::new(mono.n, i),
                Monomial::new(mono.n + i as i64, mono.m - i),
            ],
            f.q_binom(mono.m, i as i64),
        );
    }
    t
}

pub fn comultiply(f: &Field, a: &Element) -> TensorElement {
    let mut out = Tensor::zero();
    for (mono, c) in a.terms() {
        for (key, d) in comultiply_monomial(f, *mono).terms() {
            out.add_term(*key, c * d);
        }
    }
    out
}

pub fn counit(a: &Element) -> Scalar {
    a.terms()
        .filter(|(mono, _)| mono.m == 0)
        .map(|(_, c)| c.clone())
        .sum()
}

/// `S(x^n y^m) = (-1)^m q^(-m(m+1)/2 - mn) x^(-n-m) y^m`.
pub fn antipode_monomial(f: &Field, mono: Monomial) -> Element {
    let m = mono.m as i64;
    let sign = if m % 2 == 0 { Scalar::one() } else { -Scalar::one() };
    let c = &sign * &f.q_pow(-m * (m + 1) / 2 - m * mono.n);
    Element::term(c, Monomial::new(-mono.n - m, mono.m))
}

pub fn antipode(f: &Field, a: &Element) -> Element {
    let mut out = Element::zero();
    for (mono, c) in a.terms() {
        out.add_scaled(&antipode_monomial(f, *mono), c);
    }
    out
}

/// Antipode computed as the anti-multiplicative extension
/// `S(x^n y^m) = S(y)^m S(x)^n` from the generator values.
pub fn antipode_by_extension(f: &Field, a: &Element) -> Element {
    let s_y = Element::term(-f.q_pow(-1), Monomial::new(-1, 1));
    let mut out = Element::zero();
    for (mono, c) in a.terms() {
        let mut img = Element::one();
        for _ in 0..mono.m {
            img = multiply(f, &img, &s_y);
        }
        img = multiply(f, &img, &Element::monomial(-mono.n, 0));
        out.add_scaled(&img, c);
    }
    out
}

/// Componentwise product `(a (x) b)(c (x) d) = ac (x) bd`.
pub fn tensor_multiply(f: &Field, s: &TensorElement, t: &TensorElement) -> TensorElement {
    let mut out = Tensor::zero();
    for ([a, b], cs) in s.terms() {
        for ([c, d], ct) in t.terms() {
            let (k1, ac) = monomial_product(*a, *c);
            let (k2, bd) = monomial_product(*b, *d);
            out.add_term([ac, bd], &(cs * ct) * &f.q_pow(k1 + k2));
        }
    }
    out
}

/// `(Delta (x) id)`
pub fn delta_left(f: &Field, t: &TensorElement) -> Tensor<3> {
    let mut out = Tensor::zero();
    for ([a, b], c) in t.terms() {
        for ([a1, a2], d) in comultiply_monomial(f, *a).terms() {
            out.add_term([*a1, *a2, *b], c * d);
        }
    }
    out
}

/// `(id (x) Delta)`
pub fn delta_right(f: &Field, t: &TensorElement) -> Tensor<3> {
    let mut out = Tensor::zero();
    for ([a, b], c) in t.terms() {
        for ([b1, b2], d) in comultiply_monomial(f, *b).terms() {
            out.add_term([*a, *b1, *b2], c * d);
        }
    }
    out
}

/// `(eps (x) id)` followed by `k (x) H = H`.
pub fn counit_left(t: &TensorElement) -> Element {
    let mut out = Element::zero();
    for ([a, b], c) in t.terms() {
        if a.m == 0 {
            out.add_term(*b, c.clone());
        }
    }
    out
}

/// `(id (x) eps)` followed by `H (x) k = H`.
pub fn counit_right(t: &TensorElement) -> Element {
    let mut out = Element::zero();
    for ([a, b], c) in t.terms() {
        if b.m == 0 {
            out.add_term(*a, c.clone());
        }
    }
    out
}

/// `m(S (x) id)` or `m(id (x) S)` on a tensor.
pub fn antipode_convolution(f: &Field, t: &TensorElement, left: bool) -> Element {
    let mut out = Element::zero();
    for ([a, b], c) in t.terms() {
        let (a, b) = if left {
            (antipode_monomial(f, *a), Element::monomial(b.n, b.m))
        } else {
            (Element::monomial(a.n, a.m), antipode_monomial(f, *b))
        };
        out.add_scaled(&multiply(f, &a, &b), c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qscalar::QPoly;

    /// Independent oracle: expand a word over {x, X = x^-1, y} into normal
    /// form by repeated local rewriting `yx -> q xy`, `yX -> q^-1 Xy`,
    /// `xX, Xx -> 1`, tracking only the power of `q`.
    fn rewrite(word: &str) -> (i64, Monomial) {
        let mut w: Vec<char> = word.chars().collect();
        let mut qp = 0;
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < w.len() {
                match (w[i], w[i + 1]) {
                    ('y', 'x') => {
                        w.swap(i, i + 1);
                        qp += 1;
                        changed = true;
                    }
                    ('y', 'X') => {
                        w.swap(i, i + 1);
                        qp -= 1;
                        changed = true;
                    }
                    ('x', 'X') | ('X', 'x') => {
                        w.drain(i..i + 2);
                        changed = true;
                        continue;
                    }
                    _ => {}
                }
                i += 1;
            }
            if !changed {
                break;
            }
        }
        let n = w.iter().filter(|&&c| c == 'x').count() as i64
            - w.iter().filter(|&&c| c == 'X').count() as i64;
        let m = w.iter().filter(|&&c| c == 'y').count() as u32;
        (qp, Monomial::new(n, m))
    }

    fn word(mono: Monomial) -> String {
        let xs = if mono.n >= 0 { "x" } else { "X" };
        xs.repeat(mono.n.unsigned_abs() as usize) + &"y".repeat(mono.m as usize)
    }

    #[test]
    fn exponent_rule_matches_rewriting() {
        for a in -2..=2 {
            for b in 0..=2 {
                for c in -2..=2 {
                    for d in 0..=2 {
                        let (ma, mb) = (Monomial::new(a, b), Monomial::new(c, d));
                        let oracle = rewrite(&(word(ma) + &word(mb)));
                        assert_eq!(monomial_product(ma, mb), oracle, "{ma} * {mb}");
                    }
                }
            }
        }
    }

    #[test]
    fn product_examples() {
        let f = Field::symbolic();
        assert_eq!(
            multiply(&f, &Element::monomial(1, 0), &Element::monomial(-1, 0)),
            Element::one()
        );
        assert_eq!(
            multiply(&f, &Element::monomial(0, 1), &Element::monomial(1, 0)),
            Element::term(f.q(), Monomial::new(1, 1))
        );
        assert_eq!(
            multiply(&f, &Element::monomial(2, 1), &Element::monomial(-1, 1)),
            Element::term(f.q_pow(-1), Monomial::new(1, 2))
        );
    }

    #[test]
    fn coproduct_of_y_squared_is_multiplicative() {
        let f = Field::symbolic();
        let dy = comultiply_monomial(&f, Monomial::new(0, 1));
        let mut expected = Tensor::zero();
        expected.add_term([Monomial::new(0, 1), Monomial::x(1)], Scalar::one());
        expected.add_term([Monomial::ONE, Monomial::new(0, 1)], Scalar::one());
        assert_eq!(dy, expected);

        let dy2 = comultiply_monomial(&f, Monomial::new(0, 2));
        assert_eq!(tensor_multiply(&f, &dy, &dy), dy2);
        let one_plus_q = Scalar::from_polys(QPoly::from_ints(&[1, 1]), QPoly::one());
        assert_eq!(dy2.coeff(&[Monomial::new(0, 1), Monomial::new(1, 1)]), one_plus_q);
        assert!(dy2.coeff(&[Monomial::ONE, Monomial::new(0, 2)]).is_one());
        assert!(dy2.coeff(&[Monomial::new(0, 2), Monomial::x(2)]).is_one());
        assert_eq!(dy2.len(), 3);
    }

    #[test]
    fn counit_examples() {
        let e = &Element::term(Scalar::from_int(3), Monomial::new(2, 1))
            + &Element::term(Scalar::from_int(5), Monomial::x(-1));
        assert_eq!(counit(&e), Scalar::from_int(5));
        assert!(counit(&Element::monomial(0, 1)).is_zero());
        assert!(counit(&Element::monomial(7, 0)).is_one());
    }

    #[test]
    fn antipode_closed_form_matches_extension() {
        for f in [Field::symbolic(), Field::numeric_int(3).unwrap()] {
            for n in -3..=3 {
                for m in 0..=4 {
                    let e = Element::monomial(n, m);
                    assert_eq!(antipode(&f, &e), antipode_by_extension(&f, &e), "x^{n} y^{m}");
                }
            }
        }
        let f = Field::symbolic();
        assert_eq!(antipode(&f, &Element::monomial(1, 0)), Element::monomial(-1, 0));
        assert_eq!(
            antipode(&f, &Element::monomial(0, 1)),
            Element::term(-f.q_pow(-1), Monomial::new(-1, 1))
        );
    }

    #[test]
    fn antipode_axiom_on_xy() {
        let f = Field::symbolic();
        let d = comultiply_monomial(&f, Monomial::new(1, 1));
        assert!(antipode_convolution(&f, &d, true).is_zero());
        assert!(antipode_convolution(&f, &d, false).is_zero());
        let d = comultiply_monomial(&f, Monomial::x(3));
        assert_eq!(antipode_convolution(&f, &d, true), Element::one());
    }
}
