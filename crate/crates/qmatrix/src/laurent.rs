//! Exact sparse arithmetic in the Laurent polynomial ring ℤ[q, q⁻¹].
//!
//! [`LaurentPoly`] stores a canonical sparse map from exponent to nonzero
//! unbounded-integer coefficient, so structural equality is ring equality.
//! Besides the ring operations it provides the scalars that appear as
//! structure constants everywhere else in the crate: q̂ = q − q⁻¹, the signed
//! powers (−q)^λ, the (−q)-integers
//! [d] = (−q)^{d−1} + (−q)^{d−3} + ⋯ + (−q)^{−(d−1)}, exact division by
//! (q − 1), and evaluation at q = 1.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A Laurent polynomial over ℤ with unbounded coefficients.
///
/// Invariants: no stored coefficient is zero, so two values are equal iff
/// their term maps are identical. The zero polynomial is the empty map.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial 1.
    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// The generator q.
    pub fn q() -> Self {
        Self::monomial(1, 1)
    }

    /// The inverse generator q⁻¹.
    pub fn q_inv() -> Self {
        Self::monomial(-1, 1)
    }

    /// A constant integer polynomial.
    pub fn int(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// The single term `coeff · q^exp` (zero if `coeff` is zero).
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// The power q^exp.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(exp, 1)
    }

    /// q̂ = q − q⁻¹.
    pub fn qhat() -> Self {
        let mut p = Self::zero();
        p.add_term(1, BigInt::one());
        p.add_term(-1, -BigInt::one());
        p
    }

    /// The signed power (−q)^λ = (−1)^λ q^λ.
    pub fn pow_neg_q(lambda: i64) -> Self {
        let sign = if lambda.rem_euclid(2) == 0 { 1 } else { -1 };
        Self::monomial(lambda, sign)
    }

    /// The (−q)-integer [d] = (−q)^{d−1} + (−q)^{d−3} + ⋯ + (−q)^{−(d−1)}.
    ///
    /// Defined for d ≥ 1; [1] = 1, [2] = −q − q⁻¹, [3] = q² + 1 + q⁻².
    pub fn neg_q_integer(d: i64) -> Result<Self> {
        if d < 1 {
            return Err(Error::NegQIntegerUndefined { d });
        }
        let mut p = Self::zero();
        let mut e = d - 1;
        while e >= -(d - 1) {
            p = &p + &Self::pow_neg_q(e);
            e -= 2;
        }
        Ok(p)
    }

    /// Whether this is the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether this is the constant 1.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&0)
                .is_some_and(|c| c.is_one())
    }

    /// Whether the polynomial is a single term, and if so its (exp, coeff).
    pub fn as_single_term(&self) -> Option<(i64, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    /// Iterate terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Add `coeff · q^exp` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, exp: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }

    /// Multiply by an integer scalar.
    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Multiply by q^exp (shift all exponents).
    pub fn shift(&self, exp: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + exp, c.clone())).collect(),
        }
    }

    /// The image under q ↦ q⁻¹ (exponent reflection).
    pub fn reflect(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Evaluate at q = 1, i.e. the sum of all coefficients.
    pub fn eval_q_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exact division by (q − 1).
    ///
    /// Uses synthetic division over the support range; if the remainder is
    /// nonzero the dividend was not a multiple of (q − 1) and a distinct
    /// error is returned (callers treat that as a finding, not a fluke).
    pub fn exact_div_q_minus_one(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let lo = *self.terms.keys().next().expect("nonempty");
        let hi = *self.terms.keys().next_back().expect("nonempty");
        if lo == hi {
            // A single term c·q^e is never divisible by (q − 1) (c ≠ 0).
            return Err(Error::NotDivisible {
                dividend: self.to_string(),
            });
        }
        // p = (q − 1)·s with s supported on [lo, hi−1] means
        // c_f = s_{f−1} − s_f, so s_{hi−1} = c_hi and s_{f−1} = c_f + s_f.
        let coeff = |f: i64| self.terms.get(&f).cloned().unwrap_or_else(BigInt::zero);
        let mut quotient = Self::zero();
        let mut s = coeff(hi);
        quotient.add_term(hi - 1, s.clone());
        let mut f = hi - 1;
        while f > lo {
            s += coeff(f);
            quotient.add_term(f - 1, s.clone());
            f -= 1;
        }
        // Remainder check: c_lo must equal −s_lo.
        if coeff(lo) + s != BigInt::zero() {
            return Err(Error::NotDivisible {
                dividend: self.to_string(),
            });
        }
        Ok(quotient)
    }

    /// Render a single term: the magnitude part without sign.
    fn magnitude_text(exp: i64, abs: &BigInt) -> String {
        let q_part = match exp {
            0 => return abs.to_string(),
            1 => "q".to_string(),
            -1 => "q^-1".to_string(),
            e => format!("q^{e}"),
        };
        if abs.is_one() {
            q_part
        } else {
            format!("{abs}*{q_part}")
        }
    }

    /// Canonical text form: terms in descending exponent order, `q^k` for
    /// |k| > 1, `q`/`q^-1` for exponent ±1, a bare integer for exponent 0;
    /// e.g. `q^2 - 2 + q^-2`. Compact (separator-free) variant used inside
    /// parenthesized coefficients: `q^2-2+q^-2`.
    fn render(&self, spaced: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (exp, coeff)) in self.terms.iter().rev().enumerate() {
            let negative = coeff.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else if spaced {
                out.push_str(if negative { " - " } else { " + " });
            } else {
                out.push(if negative { '-' } else { '+' });
            }
            out.push_str(&Self::magnitude_text(*exp, &coeff.abs()));
        }
        out
    }

    /// Compact rendering without spaces around `+`/`-` (used inside
    /// parenthesized factors, e.g. `(-q-q^-1)`).
    pub fn to_compact_string(&self) -> String {
        self.render(false)
    }

    /// JSON object mapping exponent (as decimal string) to coefficient.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (exp, coeff) in &self.terms {
            let num: serde_json::Number = coeff
                .to_string()
                .parse()
                .expect("integer literal is a valid JSON number");
            map.insert(exp.to_string(), serde_json::Value::Number(num));
        }
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(true))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (exp, coeff) in &rhs.terms {
            out.add_term(*exp, coeff.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (exp, coeff) in &rhs.terms {
            out.add_term(*exp, -coeff.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}
