//! Independent reference model of H at a fixed rational q.
//!
//! Products are computed by literally rewriting words in the letters `x`,
//! `X = x^-1` and `y` with `yx -> q xy` and `yX -> q^-1 Xy`; the coproduct and
//! antipode are obtained by extending their values on generators. Nothing here
//! calls into the library's algebra code.
#![allow(dead_code)]

use std::collections::BTreeMap;

use hq_core::{Element, Monomial, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Key = (i64, u32);
pub type Poly = BTreeMap<Key, BigRational>;
pub type Poly2 = BTreeMap<(Key, Key), BigRational>;

pub fn rat(p: i64, r: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(r))
}

pub struct Oracle {
    pub q: BigRational,
}

fn insert<K: Ord>(p: &mut BTreeMap<K, BigRational>, k: K, c: BigRational) {
    *p.entry(k).or_insert_with(BigRational::zero) += c;
}

fn clean<K: Ord + Clone>(mut p: BTreeMap<K, BigRational>) -> BTreeMap<K, BigRational> {
    p.retain(|_, v| !v.is_zero());
    p
}

fn word_of(k: Key) -> Vec<u8> {
    let (n, m) = k;
    let x = if n >= 0 { b'x' } else { b'X' };
    let mut w = vec![x; n.unsigned_abs() as usize];
    w.extend(std::iter::repeat_n(b'y', m as usize));
    w
}

impl Oracle {
    pub fn new(p: i64, r: i64) -> Self {
        Oracle { q: rat(p, r) }
    }

    fn qpow(&self, k: i64) -> BigRational {
        if k >= 0 {
            num_traits::pow(self.q.clone(), k as usize)
        } else {
            num_traits::pow(self.q.recip(), (-k) as usize)
        }
    }

    /// Normal form of a word: coefficient and `(n, m)`.
    pub fn normalize(&self, word: &[u8]) -> (BigRational, Key) {
        let mut w = word.to_vec();
        let mut qexp = 0i64;
        loop {
            let mut changed = false;
            let mut i = 0;
            while i + 1 < w.len() {
                match (w[i], w[i + 1]) {
                    (b'y', b'x') => {
                        w.swap(i, i + 1);
                        qexp += 1;
                        changed = true;
                    }
                    (b'y', b'X') => {
                        w.swap(i, i + 1);
                        qexp -= 1;
                        changed = true;
                    }
                    (b'x', b'X') | (b'X', b'x') => {
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
        let n = w.iter().filter(|&&c| c == b'x').count() as i64 - w.iter().filter(|&&c| c == b'X').count() as i64;
        let m = w.iter().filter(|&&c| c == b'y').count() as u32;
        (self.qpow(qexp), (n, m))
    }

    pub fn mul_mono(&self, a: Key, b: Key) -> (BigRational, Key) {
        let mut w = word_of(a);
        w.extend(word_of(b));
        self.normalize(&w)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::new();
        for (ka, ca) in a {
            for (kb, cb) in b {
                let (c, k) = self.mul_mono(*ka, *kb);
                insert(&mut out, k, c * ca * cb);
            }
        }
        clean(out)
    }

    pub fn mul2(&self, a: &Poly2, b: &Poly2) -> Poly2 {
        let mut out = Poly2::new();
        for ((a1, a2), ca) in a {
            for ((b1, b2), cb) in b {
                let (c1, k1) = self.mul_mono(*a1, *b1);
                let (c2, k2) = self.mul_mono(*a2, *b2);
                insert(&mut out, (k1, k2), c1 * c2 * ca * cb);
            }
        }
        clean(out)
    }

    /// `Delta(x^n y^m) = Delta(x)^n Delta(y)^m` with `Delta(y) = 1 (x) y + y (x) x`.
    pub fn delta_mono(&self, k: Key) -> Poly2 {
        let one = BigRational::one();
        let gx = if k.0 >= 0 { (1, 0) } else { (-1, 0) };
        let dx: Poly2 = [((gx, gx), one.clone())].into_iter().collect();
        let dy: Poly2 = [(((0, 0), (0, 1)), one.clone()), (((0, 1), (1, 0)), one.clone())]
            .into_iter()
            .collect();
        let mut acc: Poly2 = [(((0, 0), (0, 0)), one)].into_iter().collect();
        for _ in 0..k.0.unsigned_abs() {
            acc = self.mul2(&acc, &dx);
        }
        for _ in 0..k.1 {
            acc = self.mul2(&acc, &dy);
        }
        acc
    }

    pub fn delta(&self, p: &Poly) -> Poly2 {
        let mut out = Poly2::new();
        for (k, c) in p {
            for (kk, cc) in self.delta_mono(*k) {
                insert(&mut out, kk, cc * c);
            }
        }
        clean(out)
    }

    pub fn counit(&self, p: &Poly) -> BigRational {
        p.iter().filter(|(k, _)| k.1 == 0).map(|(_, c)| c.clone()).sum()
    }

    /// Anti-multiplicative extension of `S(x) = X`, `S(X) = x`, `S(y) = -yX`.
    pub fn antipode_mono(&self, k: Key) -> Poly {
        let mut w = Vec::new();
        for _ in 0..k.1 {
            w.extend_from_slice(b"yX");
        }
        let sx = if k.0 >= 0 { b'X' } else { b'x' };
        w.extend(std::iter::repeat_n(sx, k.0.unsigned_abs() as usize));
        let (c, key) = self.normalize(&w);
        let sign = if k.1.is_multiple_of(2) { c } else { -c };
        [(key, sign)].into_iter().collect()
    }

    /// `sum S(a1) a2` for `a = x^n y^m`.
    pub fn antipode_convolution(&self, k: Key) -> Poly {
        let mut out = Poly::new();
        for ((a1, a2), c) in self.delta_mono(k) {
            let s = self.antipode_mono(a1);
            let prod = self.mul(&s, &[(a2, c)].into_iter().collect());
            for (kk, cc) in prod {
                insert(&mut out, kk, cc);
            }
        }
        clean(out)
    }

    /// Evaluate a library scalar at this q.
    pub fn scalar(&self, s: &Scalar) -> BigRational {
        s.eval_at(&self.q).expect("scalar has no pole at the oracle's q")
    }

    pub fn element(&self, e: &Element) -> Poly {
        clean(e.terms().map(|(m, c)| ((m.n, m.m), self.scalar(c))).collect())
    }

    pub fn tensor(&self, t: &hq_core::TensorElement) -> Poly2 {
        clean(
            t.terms()
                .map(|(k, c)| (((k[0].n, k[0].m), (k[1].n, k[1].m)), self.scalar(c)))
                .collect(),
        )
    }

    /// Check `Delta phi = (phi (x) phi) Delta` on `x^n y^m`, where `phi` gives
    /// oracle images of monomials.
    pub fn is_coalgebra_at(&self, phi: &dyn Fn(Key) -> Poly, k: Key) -> bool {
        let image = phi(k);
        if self.counit(&image) != self.counit(&[(k, BigRational::one())].into_iter().collect()) {
            return false;
        }
        let lhs = self.delta(&image);
        let mut rhs = Poly2::new();
        for ((a, b), c) in self.delta_mono(k) {
            for (ka, ca) in phi(a) {
                for (kb, cb) in phi(b) {
                    insert(&mut rhs, (ka, kb), &ca * &cb * &c);
                }
            }
        }
        lhs == clean(rhs)
    }
}

pub fn mono(k: Key) -> Monomial {
    Monomial::new(k.0, k.1)
}

/// `binom(n, i)_q` as coefficients: the number of i-subsets of `{0..n-1}`
/// with each inversion count.
pub fn q_binom_by_inversions(n: u32, i: u32) -> Vec<i64> {
    let mut coeffs = vec![0i64; (i * (n - i) + 1) as usize];
    for mask in 0u32..(1 << n) {
        if mask.count_ones() != i {
            continue;
        }
        // inversions: pairs (chosen, unchosen) with chosen after unchosen
        let mut inv = 0;
        for a in 0..n {
            for b in 0..a {
                if mask & (1 << a) != 0 && mask & (1 << b) == 0 {
                    inv += 1;
                }
            }
        }
        coeffs[inv] += 1;
    }
    coeffs
}
