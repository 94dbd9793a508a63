use std::collections::BTreeMap;

use super::element::{Element, Monomial, Window};
use super::linalg::kernel;
use super::ops::comultiply_monomial;
use crate::error::{Error, Result};
use crate::qscalar::{Field, Scalar};

/// Basis of the `(x^m, 1)`-primitive elements `h` with
/// `Delta(h) = h (x) x^m + 1 (x) h`, searched in the span of the window
/// monomials.
///
/// Unknowns are ordered by y-degree descending, then `|n|` descending, then
/// `n` descending; the returned basis is the reduced echelon form in that
/// order, so for `m = 1` it is `[y, x - 1]` and otherwise `[x^m - 1]`.
pub fn primitive_space(f: &Field, m: i64, window: &Window) -> Result<Vec<Element>> {
    for (mono, name) in [
        (Monomial::ONE, "1".to_string()),
        (Monomial::x(1), "x".to_string()),
        (Monomial::new(0, 1), "y".to_string()),
        (Monomial::x(m), format!("x^{m}")),
    ] {
        if !window.contains(mono) {
            return Err(Error::InvalidArgument(format!(
                "window {window} must contain {name}"
            )));
        }
    }
    let mut cols: Vec<Monomial> = window.monomials().collect();
    cols.sort_by(|a, b| {
        b.m.cmp(&a.m)
            .then(b.n.abs().cmp(&a.n.abs()))
            .then(b.n.cmp(&a.n))
    });
    let gm = Monomial::x(m);
    let mut eqs: BTreeMap<[Monomial; 2], Vec<(usize, Scalar)>> = BTreeMap::new();
    for (j, &c) in cols.iter().enumerate() {
        let mut t = comultiply_monomial(f, c);
        t.add_term([c, gm], -Scalar::one());
        t.add_term([Monomial::ONE, c], -Scalar::one());
        for (key, v) in t.terms() {
            eqs.entry(*key).or_default().push((j, v.clone()));
        }
    }
    let rows: Vec<Vec<Scalar>> = eqs
        .into_values()
        .map(|entries| {
            let mut row = vec![Scalar::zero(); cols.len()];
            for (j, v) in entries {
                row[j] += &v;
            }
            row
        })
        .collect();
    Ok(kernel(&rows, cols.len())
        .into_iter()
        .map(|v| Element::from_terms(cols.iter().copied().zip(v)))
        .collect())
}
