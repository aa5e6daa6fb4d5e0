//! Chebyshev polynomials of the first kind, Tomie's generalization, and
//! their coefficients as Mobius values over `lambda:s`.

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::mobius::{mobius_oracle, mobius_value};
use crate::poset::{lambda_s, AugmentedPoset};
use crate::word::Word;

/// Dense integer polynomial, `coeffs[m]` the coefficient of `x^m`, with
/// trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct IntPolynomial {
    coeffs: Vec<i128>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    pub fn monomial(c: i128, m: usize) -> Self {
        let mut v = vec![0; m + 1];
        v[m] = c;
        IntPolynomial::new(v)
    }

    /// Coefficient of `x^m`; 0 past the degree.
    pub fn coeff(&self, m: usize) -> i128 {
        self.coeffs.get(m).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn combine(&self, other: &Self, f: impl Fn(i128, i128) -> i128) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|m| f(self.coeff(m), other.coeff(m))).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    /// Multiplies by `c * x^shift`.
    pub fn scale_shift(&self, c: i128, shift: usize) -> Self {
        let mut v = vec![0; shift];
        v.extend(self.coeffs.iter().map(|&a| a * c));
        IntPolynomial::new(v)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.unsigned_abs();
            let body = match (m, mag) {
                (0, _) => mag.to_string(),
                (1, 1) => "x".to_owned(),
                (1, _) => format!("{mag}x"),
                (_, 1) => format!("x^{m}"),
                _ => format!("{mag}x^{m}"),
            };
            if first {
                write!(f, "{sign}{body}")?;
            } else {
                write!(f, " {sign} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// `C(n, k)`, zero whenever `n < 0`, `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> i128 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// `T_n` by `T_n = 2x T_{n-1} - T_{n-2}`, `T_0 = 1`, `T_1 = x`.
pub fn chebyshev_t(n: usize) -> IntPolynomial {
    let mut prev = IntPolynomial::new(vec![1]);
    if n == 0 {
        return prev;
    }
    let mut cur = IntPolynomial::monomial(1, 1);
    for _ in 1..n {
        let next = cur.scale_shift(2, 1).sub(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

fn integral(r: Ratio<i128>, what: &str) -> i128 {
    assert!(r.is_integer(), "{what}: non-integral term {r}");
    r.to_integer()
}

/// `T_n = (n/2) sum_k (-1)^k / (n-k) C(n-k, k) (2x)^{n-2k}` for `n >= 2`,
/// with exact rational terms.
pub fn chebyshev_t_closed(n: usize) -> IntPolynomial {
    if n < 2 {
        return chebyshev_t(n);
    }
    let n_i = n as i64;
    let mut coeffs = vec![0i128; n + 1];
    for k in 0..=n / 2 {
        let k_i = k as i64;
        let sign: i128 = if k % 2 == 0 { 1 } else { -1 };
        let term = Ratio::new(n as i128, 2)
            * Ratio::new(sign * binomial(n_i - k_i, k_i), (n - k) as i128)
            * Ratio::from_integer(1i128 << (n - 2 * k));
        coeffs[n - 2 * k] = integral(term, "closed form");
    }
    IntPolynomial::new(coeffs)
}

/// Tomie's `T^s_n = sum_k (-1)^k s^{n-2k-1} (C(n-k,k) s - C(n-k-1,k)) x^{n-2k}`.
pub fn tomie_t(s: u32, n: usize) -> Result<IntPolynomial> {
    if s == 0 {
        return Err(Error::domain("s must be at least 1"));
    }
    let (n_i, s_i) = (n as i64, s as i128);
    let mut coeffs = vec![0i128; n + 1];
    for k in 0..=n / 2 {
        let k_i = k as i64;
        let bracket = binomial(n_i - k_i, k_i) * s_i - binomial(n_i - k_i - 1, k_i);
        let exp = n_i - 2 * k_i - 1;
        let power = if exp >= 0 {
            Ratio::from_integer(s_i.pow(exp as u32))
        } else {
            Ratio::new(1, s_i.pow((-exp) as u32))
        };
        let sign: i128 = if k % 2 == 0 { 1 } else { -1 };
        coeffs[n - 2 * k] = integral(
            power * Ratio::from_integer(sign * bracket),
            "generalized form",
        );
    }
    Ok(IntPolynomial::new(coeffs))
}

/// One row of the coefficient check: `mu(1^i, (s+1)^j)` against
/// `<x^{j-i}> T^s_{i+j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChebyshevCheck {
    pub s: u32,
    pub i: usize,
    pub j: usize,
    pub mu: i64,
    pub coeff: i128,
    /// Oracle value, when requested.
    pub oracle: Option<i64>,
    pub equal: bool,
}

/// Compares the Mobius value over `lambda:s` with the polynomial
/// coefficient. For `s = 2` the ordinary `T_n` is used.
pub fn verify_chebyshev(
    s: u32,
    i: usize,
    j: usize,
    with_oracle: bool,
    limits: &Limits,
) -> Result<ChebyshevCheck> {
    if i > j {
        return Err(Error::domain(format!("need i <= j, got i={i}, j={j}")));
    }
    if s == 0 {
        return Err(Error::domain("s must be at least 1"));
    }
    let p0 = AugmentedPoset::new(lambda_s(s as usize))?;
    let one = 0usize;
    let top = s as usize;
    let (u, w) = (Word::repeat(one, i), Word::repeat(top, j));
    let mu = mobius_value(&p0, &u, &w)?;
    let poly = if s == 2 {
        chebyshev_t(i + j)
    } else {
        tomie_t(s, i + j)?
    };
    let coeff = poly.coeff(j - i);
    let oracle = if with_oracle {
        Some(mobius_oracle(&p0, &u, &w, limits)?)
    } else {
        None
    };
    let equal = mu as i128 == coeff && oracle.is_none_or(|o| o == mu);
    Ok(ChebyshevCheck {
        s,
        i,
        j,
        mu,
        coeff,
        oracle,
        equal,
    })
}

/// `(-1)^i 2^{j-i-1} ((i+j)/j) C(j, i)` for `j >= 1`.
pub fn lambda_closed_form(i: usize, j: usize) -> Result<i128> {
    if j == 0 || i > j {
        return Err(Error::domain("closed form needs 1 <= j and i <= j"));
    }
    let sign: i128 = if i % 2 == 0 { 1 } else { -1 };
    let exp = j as i64 - i as i64 - 1;
    let power = if exp >= 0 {
        Ratio::from_integer(1i128 << exp)
    } else {
        Ratio::new(1, 2)
    };
    let value = power
        * Ratio::new((i + j) as i128, j as i128)
        * Ratio::from_integer(sign * binomial(j as i64, i as i64));
    Ok(integral(value, "lambda closed form"))
}

/// `<x^{j-i}> T^s_{i+j} = (-1)^i s^{j-i-1} (C(j,i) s - C(j-1,i))` for `j >= 1`.
pub fn tomie_coefficient(s: u32, i: usize, j: usize) -> Result<i128> {
    if j == 0 || i > j || s == 0 {
        return Err(Error::domain(
            "coefficient form needs 1 <= j, i <= j and s >= 1",
        ));
    }
    let s_i = s as i128;
    let sign: i128 = if i % 2 == 0 { 1 } else { -1 };
    let bracket = binomial(j as i64, i as i64) * s_i - binomial(j as i64 - 1, i as i64);
    let exp = j as i64 - i as i64 - 1;
    let power = if exp >= 0 {
        Ratio::from_integer(s_i.pow(exp as u32))
    } else {
        Ratio::new(1, s_i)
    };
    Ok(integral(
        power * Ratio::from_integer(sign * bracket),
        "coefficient form",
    ))
}
