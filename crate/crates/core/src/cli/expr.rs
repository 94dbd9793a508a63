//! Text syntax for elements of `H`.
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := [coeff] ['*'] ['q' ['^' int]] ['*'] ['x' ['^' int]] ['*'] ['y' ['^' nat]]
//! coeff  := rational | '(' poly ')' ['/' '(' poly ')']
//! poly   := ['+' | '-'] pterm (('+' | '-') pterm)*
//! pterm  := rational ['*' 'q' ['^' nat]] | 'q' ['^' nat]
//! ```
//!
//! Factors must appear in the order coefficient, `q`, `x`, `y`; the grammar
//! only admits normal-form monomials. Whitespace is ignored.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::halgebra::{Element, Monomial, TensorElement};
use crate::qscalar::{Field, FieldMode, QPoly, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Coeff {
    Rational(BigRational),
    /// `(num)/(den)`; `den = 1` is written `(num)`.
    Fraction(QPoly, QPoly),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExprTerm {
    pub coeff: Coeff,
    pub q: i64,
    pub x: i64,
    pub y: u32,
}

/// Parsed form of an element: a plain list of terms, not yet collected.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExprAst {
    pub terms: Vec<ExprTerm>,
}

impl ExprAst {
    pub fn parse(text: &str) -> Result<ExprAst> {
        let mut p = Parser {
            s: text.as_bytes(),
            pos: 0,
        };
        let ast = p.expr()?;
        p.skip_ws();
        if p.pos < p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(ast)
    }

    pub fn to_element(&self, f: &Field) -> Result<Element> {
        let mut out = Element::zero();
        for t in &self.terms {
            let c = match &t.coeff {
                Coeff::Rational(c) => Scalar::Rat(c.clone()),
                Coeff::Fraction(num, den) => match f.mode() {
                    FieldMode::Symbolic => Scalar::from_polys(num.clone(), den.clone()),
                    FieldMode::Numeric(q) => {
                        let d = den.eval(q);
                        if d.is_zero() {
                            return Err(Error::DivisionByZero);
                        }
                        Scalar::Rat(num.eval(q) / d)
                    }
                },
            };
            out.add_term(Monomial::new(t.x, t.y), &c * &f.q_pow(t.q));
        }
        Ok(out)
    }

    /// Canonical syntax tree of an element: terms by `(n, m)`, Laurent
    /// coefficients split into one term per power of `q`.
    pub fn from_element(e: &Element) -> ExprAst {
        let mut terms = Vec::new();
        for (mono, c) in e.terms() {
            for (coeff, q) in coeff_terms(c) {
                terms.push(ExprTerm {
                    coeff,
                    q,
                    x: mono.n,
                    y: mono.m,
                });
            }
        }
        ExprAst { terms }
    }
}

fn coeff_terms(c: &Scalar) -> Vec<(Coeff, i64)> {
    if let Some(laurent) = c.as_laurent() {
        return laurent
            .into_iter()
            .map(|(k, c)| (Coeff::Rational(c), k))
            .collect();
    }
    let Scalar::Func(r) = c else { unreachable!("constants are Laurent") };
    let (n, d) = QPoly::integer_pair(r.num(), r.den());
    let to_poly = |v: Vec<BigInt>| QPoly::from_coeffs(v.into_iter().map(BigRational::from_integer).collect());
    vec![(Coeff::Fraction(to_poly(n), to_poly(d)), 0)]
}

fn power(name: &str, k: i64) -> Option<String> {
    match k {
        0 => None,
        1 => Some(name.to_string()),
        k => Some(format!("{name}^{k}")),
    }
}

/// Writes one signed term; `body` holds the non-coefficient factors.
fn write_term(
    out: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &Coeff,
    mut body: Vec<String>,
) -> fmt::Result {
    let (neg, coeff_text) = match coeff {
        Coeff::Rational(c) => {
            let abs = c.abs();
            let text = (!abs.is_one() || body.is_empty()).then(|| abs.to_string());
            (c.is_negative(), text)
        }
        Coeff::Fraction(n, d) if d.is_one() => (false, Some(format!("({n})"))),
        Coeff::Fraction(n, d) => (false, Some(format!("({n})/({d})"))),
    };
    match (first, neg) {
        (true, true) => write!(out, "-")?,
        (true, false) => {}
        (false, true) => write!(out, " - ")?,
        (false, false) => write!(out, " + ")?,
    }
    if let Some(c) = coeff_text {
        body.insert(0, c);
    }
    write!(out, "{}", body.join("*"))
}

impl fmt::Display for ExprAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            let body = [power("q", t.q), power("x", t.x), power("y", t.y as i64)]
                .into_iter()
                .flatten()
                .collect();
            write_term(f, i == 0, &t.coeff, body)?;
        }
        Ok(())
    }
}

pub fn parse_element(text: &str, f: &Field) -> Result<Element> {
    ExprAst::parse(text)?.to_element(f)
}

pub fn render_element(e: &Element) -> String {
    ExprAst::from_element(e).to_string()
}

struct TensorText<'a>(&'a TensorElement);

impl fmt::Display for TensorText<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for ([a, b], c) in self.0.terms() {
            for (coeff, k) in coeff_terms(c) {
                let mut body: Vec<String> = power("q", k).into_iter().collect();
                body.push(format!("{a} (x) {b}"));
                write_term(f, first, &coeff, body)?;
                first = false;
            }
        }
        Ok(())
    }
}

/// Render with `" (x) "` between the two legs of each term.
pub fn render_tensor(t: &TensorElement) -> String {
    TensorText(t).to_string()
}

pub fn render_scalar(c: &Scalar) -> String {
    let terms = coeff_terms(c)
        .into_iter()
        .map(|(coeff, q)| ExprTerm { coeff, q, x: 0, y: 0 })
        .collect();
    ExprAst { terms }.to_string()
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.s.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn rational(&mut self) -> Result<BigRational> {
        let p = self.digits()?;
        if self.peek() == Some(b'/') && self.s.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit() || c.is_ascii_whitespace()) {
            let save = self.pos;
            self.pos += 1;
            if self.peek() == Some(b'(') {
                self.pos = save;
                return Ok(BigRational::from_integer(p));
            }
            let r = self.digits()?;
            if r.is_zero() {
                return Err(self.err("zero denominator"));
            }
            return Ok(BigRational::new(p, r));
        }
        Ok(BigRational::from_integer(p))
    }

    fn int(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let at = self.pos;
        let d = self.digits()?;
        let v: i64 = d.try_into().map_err(|_| Error::Parse {
            pos: at,
            msg: "exponent out of range".into(),
        })?;
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat(b'^') {
            self.int()
        } else {
            Ok(1)
        }
    }

    fn expr(&mut self) -> Result<ExprAst> {
        let mut terms = Vec::new();
        let mut neg = self.eat(b'-') || {
            self.eat(b'+');
            false
        };
        loop {
            terms.push(self.term(neg)?);
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    neg = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    neg = true;
                }
                _ => break,
            }
        }
        Ok(ExprAst { terms })
    }

    fn term(&mut self, neg: bool) -> Result<ExprTerm> {
        let start = self.pos;
        let mut coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => Some(Coeff::Rational(self.rational()?)),
            Some(b'(') => {
                self.pos += 1;
                let num = self.poly()?;
                self.expect(b')')?;
                let den = if self.eat(b'/') {
                    self.expect(b'(')?;
                    let d = self.poly()?;
                    self.expect(b')')?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    d
                } else {
                    QPoly::one()
                };
                Some(Coeff::Fraction(num, den))
            }
            _ => None,
        };
        let (mut q, mut x, mut y) = (0, 0, 0u32);
        // 0 = expecting q, 1 = expecting x, 2 = expecting y, 3 = done
        let mut stage = 0;
        let mut need_factor = coeff.is_none();
        loop {
            let had_star = self.eat(b'*');
            let here = self.pos;
            match self.peek() {
                Some(b'q') if stage == 0 => {
                    self.pos += 1;
                    q = self.exponent()?;
                    stage = 1;
                }
                Some(b'x') if stage <= 1 => {
                    self.pos += 1;
                    x = self.exponent()?;
                    stage = 2;
                }
                Some(b'y') if stage <= 2 => {
                    self.pos += 1;
                    let e = self.exponent()?;
                    if e < 0 {
                        return Err(Error::Parse {
                            pos: here,
                            msg: "negative y-power".into(),
                        });
                    }
                    y = e as u32;
                    stage = 3;
                }
                Some(c @ (b'q' | b'x' | b'y')) => {
                    return Err(self.err(format!(
                        "'{}' out of order: factors must appear as coefficient, q, x, y",
                        c as char
                    )))
                }
                _ if had_star => return Err(self.err("expected q, x or y after '*'")),
                _ => break,
            }
            need_factor = false;
        }
        if need_factor {
            return Err(Error::Parse {
                pos: start,
                msg: "expected a term".into(),
            });
        }
        let c = coeff.take().unwrap_or(Coeff::Rational(BigRational::one()));
        let coeff = match (c, neg) {
            (c, false) => c,
            (Coeff::Rational(r), true) => Coeff::Rational(-r),
            (Coeff::Fraction(n, d), true) => Coeff::Fraction(n.neg(), d),
        };
        Ok(ExprTerm { coeff, q, x, y })
    }

    fn poly(&mut self) -> Result<QPoly> {
        let mut acc = QPoly::zero();
        let mut neg = self.eat(b'-') || {
            self.eat(b'+');
            false
        };
        loop {
            let c = match self.peek() {
                Some(d) if d.is_ascii_digit() => Some(self.rational()?),
                _ => None,
            };
            let k = if c.is_some() && !self.eat(b'*') {
                0
            } else if self.eat(b'q') {
                let e = self.exponent()?;
                if e < 0 {
                    return Err(self.err("negative q-power inside a polynomial"));
                }
                e as usize
            } else {
                return Err(self.err("expected a polynomial term"));
            };
            let mut c = c.unwrap_or_else(BigRational::one);
            if neg {
                c = -c;
            }
            acc = acc.add(&QPoly::monomial(c, k));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    neg = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    neg = true;
                }
                _ => break,
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym() -> Field {
        Field::symbolic()
    }

    #[test]
    fn basic_parsing() {
        let f = sym();
        assert_eq!(parse_element("x^-2*y^3", &f).unwrap(), Element::monomial(-2, 3));
        let e = parse_element("3/2*q^2*x*y + x^-1", &f).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.coeff(Monomial::new(1, 1)), &Scalar::from_ratio(3, 2) * &f.q_pow(2));
        assert_eq!(parse_element("0", &f).unwrap(), Element::zero());
        assert_eq!(
            parse_element(" - y + 2 ", &f).unwrap(),
            &Element::term(Scalar::from_int(2), Monomial::ONE) - &Element::monomial(0, 1)
        );
    }

    #[test]
    fn errors_carry_positions() {
        let f = sym();
        match parse_element("y^-1", &f) {
            Err(Error::Parse { pos, msg }) => {
                assert_eq!(pos, 0);
                assert!(msg.contains("negative y-power"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_element("y*x", &f), Err(Error::Parse { pos: 2, .. })));
        assert!(parse_element("x +", &f).is_err());
        assert!(parse_element("2*", &f).is_err());
        assert!(parse_element("1/0", &f).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(render_element(&Element::zero()), "0");
        assert_eq!(render_element(&Element::monomial(1, 1)), "x*y");
        let f = sym();
        let e = &Element::term(f.q_int(2), Monomial::new(1, 1)) - &Element::monomial(-1, 0);
        assert_eq!(render_element(&e), "-x^-1 + x*y + q*x*y");
        let g = Element::term(f.q_int(2).inv().unwrap(), Monomial::new(0, 2));
        assert_eq!(render_element(&g), "(1)/(1 + q)*y^2");
    }

    #[test]
    fn tensor_rendering() {
        let f = sym();
        let d = crate::halgebra::comultiply_monomial(&f, Monomial::new(0, 1));
        assert_eq!(render_tensor(&d), "1 (x) y + y (x) x");
    }

    #[test]
    fn round_trip() {
        let f = sym();
        let samples = [
            Element::zero(),
            &Element::term(Scalar::from_ratio(-3, 7), Monomial::new(-2, 4))
                + &Element::term(f.q_pow(-3), Monomial::ONE),
            Element::term(
                Scalar::from_polys(QPoly::from_ints(&[-1, 0, 2]), QPoly::from_ints(&[3, 1, 1])),
                Monomial::new(5, 0),
            ),
        ];
        for e in samples {
            let text = render_element(&e);
            assert_eq!(parse_element(&text, &f).unwrap(), e, "{text}");
            let ast = ExprAst::parse(&text).unwrap();
            assert_eq!(ExprAst::parse(&ast.to_string()).unwrap(), ast);
        }
    }

    #[test]
    fn numeric_substitutes_q() {
        let f = Field::numeric_int(2).unwrap();
        let e = parse_element("q^2*x + (1 + q)/(q)*y", &f).unwrap();
        assert_eq!(e.coeff(Monomial::x(1)), Scalar::from_int(4));
        assert_eq!(e.coeff(Monomial::new(0, 1)), Scalar::from_ratio(3, 2));
    }
}
