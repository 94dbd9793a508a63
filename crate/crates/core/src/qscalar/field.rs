use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::QPoly;
use super::scalar::{parse_rational, Scalar};
use crate::error::{Error, Result};

/// How `q` is realised in the ground field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldMode {
    /// `K = Q(q)`, q an indeterminate.
    Symbolic,
    /// `K = Q` with `q` fixed to the given rational.
    Numeric(BigRational),
}

/// The ground field together with the q-combinatorial quantities over it.
///
/// Gaussian binomials are memoised row by row (the whole Pascal triangle up to
/// the largest `n` requested); the table is behind a lock so one `Field` can be
/// shared across threads.
pub struct Field {
    mode: FieldMode,
    binom: RwLock<Vec<Vec<Scalar>>>,
}

impl Clone for Field {
    fn clone(&self) -> Self {
        Field {
            mode: self.mode.clone(),
            binom: RwLock::new(self.binom.read().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field").field("mode", &self.mode).finish()
    }
}

impl Field {
    pub fn symbolic() -> Self {
        Field {
            mode: FieldMode::Symbolic,
            binom: RwLock::new(Vec::new()),
        }
    }

    /// Numeric mode; rejects `q = 0` and `q = -1`.
    pub fn numeric(q: BigRational) -> Result<Self> {
        if q.is_zero() || q == -BigRational::one() {
            return Err(Error::InvalidQ(q.to_string()));
        }
        Ok(Field {
            mode: FieldMode::Numeric(q),
            binom: RwLock::new(Vec::new()),
        })
    }

    /// Numeric mode from a `"p/r"` literal.
    pub fn numeric_str(q: &str) -> Result<Self> {
        let q = parse_rational(q)
            .ok_or_else(|| Error::InvalidArgument(format!("invalid rational q value {q:?}")))?;
        Self::numeric(q)
    }

    pub fn numeric_int(q: i64) -> Result<Self> {
        Self::numeric(BigRational::from_integer(BigInt::from(q)))
    }

    pub fn mode(&self) -> &FieldMode {
        &self.mode
    }

    pub fn is_symbolic(&self) -> bool {
        self.mode == FieldMode::Symbolic
    }

    pub fn q(&self) -> Scalar {
        self.q_pow(1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(&self, k: i64) -> Scalar {
        match &self.mode {
            FieldMode::Numeric(q) => Scalar::Rat(q.pow(k as i32)),
            FieldMode::Symbolic if k == 0 => Scalar::one(),
            FieldMode::Symbolic if k > 0 => Scalar::from_polys(
                QPoly::monomial(BigRational::one(), k as usize),
                QPoly::one(),
            ),
            FieldMode::Symbolic => Scalar::from_polys(
                QPoly::one(),
                QPoly::monomial(BigRational::one(), k.unsigned_abs() as usize),
            ),
        }
    }

    /// Bring a scalar into this field: in numeric mode rational functions of
    /// `q` are evaluated at the configured value.
    pub fn coerce(&self, s: &Scalar) -> Result<Scalar> {
        match (&self.mode, s) {
            (FieldMode::Numeric(q), Scalar::Func(_)) => s
                .eval_at(q)
                .map(Scalar::Rat)
                .ok_or(Error::DivisionByZero),
            _ => Ok(s.clone()),
        }
    }

    /// `(n)_q = 1 + q + ... + q^(n-1)`, with `(0)_q = 0`.
    pub fn q_int(&self, n: u32) -> Scalar {
        match &self.mode {
            FieldMode::Symbolic => Scalar::from_polys(
                QPoly::from_coeffs(vec![BigRational::one(); n as usize]),
                QPoly::one(),
            ),
            FieldMode::Numeric(q) => {
                let mut acc = BigRational::zero();
                let mut p = BigRational::one();
                for _ in 0..n {
                    acc += &p;
                    p *= q;
                }
                Scalar::Rat(acc)
            }
        }
    }

    /// `(n)!_q = (n)_q (n-1)_q ... (1)_q`, `(0)!_q = 1`.
    pub fn q_factorial(&self, n: u32) -> Scalar {
        (1..=n).map(|k| self.q_int(k)).product()
    }

    /// Gaussian binomial by the Pascal recurrence
    /// `[n, i] = q^i [n-1, i] + [n-1, i-1]`; zero outside `0 <= i <= n`.
    pub fn q_binom(&self, n: u32, i: i64) -> Scalar {
        if i < 0 || i > n as i64 {
            return Scalar::zero();
        }
        let (n, i) = (n as usize, i as usize);
        {
            let table = self.binom.read().unwrap();
            if let Some(row) = table.get(n) {
                return row[i].clone();
            }
        }
        let mut table = self.binom.write().unwrap();
        while table.len() <= n {
            let k = table.len();
            let row: Vec<Scalar> = if k == 0 {
                vec![Scalar::one()]
            } else {
                let prev = &table[k - 1];
                (0..=k)
                    .map(|j| {
                        if j == 0 || j == k {
                            Scalar::one()
                        } else {
                            &(&self.q_pow(j as i64) * &prev[j]) + &prev[j - 1]
                        }
                    })
                    .collect()
            };
            table.push(row);
        }
        table[n][i].clone()
    }

    /// `(n, m)_q = (n)_q (n-1)_q ... (n-m+1)_q` for `0 < m <= n`.
    pub fn q_falling(&self, n: i64, m: i64) -> Result<Scalar> {
        if m <= 0 || m > n {
            return Err(Error::InvalidArgument(format!(
                "q_falling needs 0 < m <= n, got n = {n}, m = {m}"
            )));
        }
        Ok((0..m).map(|i| self.q_int((n - i) as u32)).product())
    }

    /// `binom(m, t)_{q,l} = prod_{i=0}^{l-1} binom(m - i t, t)_q` for
    /// `1 <= t <= m` and `1 <= l <= m / t`.
    pub fn q_multi_binom(&self, m: i64, t: i64, l: i64) -> Result<Scalar> {
        if t < 1 || t > m || l < 1 || l * t > m {
            return Err(Error::InvalidArgument(format!(
                "q_multi_binom needs 1 <= t <= m and 1 <= l <= m/t, got m = {m}, t = {t}, l = {l}"
            )));
        }
        Ok((0..l)
            .map(|i| self.q_binom((m - i * t) as u32, t))
            .product())
    }
}
