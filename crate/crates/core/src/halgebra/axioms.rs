//! Per-monomial checks of the Hopf algebra axioms.

use super::element::{Element, Monomial, Window};
use super::ops::*;
use crate::qscalar::Field;

/// `(Delta (x) id) Delta = (id (x) Delta) Delta` on `x^n y^m`.
pub fn coassociative(f: &Field, mono: Monomial) -> bool {
    let d = comultiply_monomial(f, mono);
    delta_left(f, &d) == delta_right(f, &d)
}

/// `(eps (x) id) Delta = id = (id (x) eps) Delta` on `x^n y^m`.
pub fn counital(f: &Field, mono: Monomial) -> bool {
    let d = comultiply_monomial(f, mono);
    let e = Element::monomial(mono.n, mono.m);
    counit_left(&d) == e && counit_right(&d) == e
}

/// `Delta(ab) = Delta(a) Delta(b)` on a pair of monomials.
pub fn multiplicative(f: &Field, a: Monomial, b: Monomial) -> bool {
    let (k, ab) = monomial_product(a, b);
    let lhs = comultiply(f, &Element::term(f.q_pow(k), ab));
    let rhs = tensor_multiply(f, &comultiply_monomial(f, a), &comultiply_monomial(f, b));
    lhs == rhs
}

/// `m(S (x) id) Delta = eps 1 = m(id (x) S) Delta` on `x^n y^m`.
pub fn antipodal(f: &Field, mono: Monomial) -> bool {
    let d = comultiply_monomial(f, mono);
    let expected = if mono.m == 0 {
        Element::one()
    } else {
        Element::zero()
    };
    antipode_convolution(f, &d, true) == expected && antipode_convolution(f, &d, false) == expected
}

/// Every term of `Delta(x^n y^m)` lies in some `H(i) (x) H(m - i)`.
pub fn graded(f: &Field, mono: Monomial) -> bool {
    comultiply_monomial(f, mono)
        .terms()
        .all(|([a, b], _)| a.m + b.m == mono.m)
}

type MonomialCheck = fn(&Field, Monomial) -> bool;

/// Run every axiom over the window; returns a description of each failure.
pub fn hopf_axiom_failures(f: &Field, window: &Window) -> Vec<String> {
    let mut failures = Vec::new();
    for mono in window.monomials() {
        let checks: [(&str, MonomialCheck); 4] = [
            ("coassociativity", coassociative),
            ("counit", counital),
            ("antipode", antipodal),
            ("grading", graded),
        ];
        for (name, check) in checks {
            if !check(f, mono) {
                failures.push(format!("{name} fails at {mono}"));
            }
        }
        for other in window.monomials() {
            if !multiplicative(f, mono, other) {
                failures.push(format!("multiplicativity fails at ({mono}, {other})"));
            }
        }
    }
    failures
}

/// Associativity of the product on every monomial triple in the window.
pub fn associativity_failures(f: &Field, window: &Window) -> Vec<String> {
    let monos: Vec<(Monomial, Element)> = window
        .monomials()
        .map(|m| (m, Element::monomial(m.n, m.m)))
        .collect();
    let mut failures = Vec::new();
    for (a, ea) in &monos {
        for (b, eb) in &monos {
            let ab = multiply(f, ea, eb);
            for (c, ec) in &monos {
                let left = multiply(f, &ab, ec);
                let right = multiply(f, ea, &multiply(f, eb, ec));
                if left != right {
                    failures.push(format!("associativity fails at ({a}, {b}, {c})"));
                }
            }
        }
    }
    failures
}
