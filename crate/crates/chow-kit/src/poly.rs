//! Dense univariate polynomials with exact integer coefficients.
//!
//! Coefficients are stored low-to-high with no trailing zeros, so the zero
//! polynomial is the empty list and `degree` of zero is `None` rather than a
//! `-1` sentinel that leaks into arithmetic.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not palindromic: {0}")]
    NotPalindromic(String),
    #[error("gamma contraction needs 2*deg(g) <= d, got deg(g) = {deg}, d = {d}")]
    GammaDegree { deg: usize, d: usize },
    #[error("polynomial is not real-rooted: {0}")]
    NotRealRooted(String),
    #[error("cannot parse polynomial from {0:?}")]
    Parse(String),
}

/// Exact integer-coefficient polynomial in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn x() -> Self {
        IntPoly::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly::from_coeffs(vec![c.into()])
    }

    /// Builds a polynomial from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Monomial c * x^k.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let c = c.into();
        if c.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        IntPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn has_nonneg_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPoly { coeffs }
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        IntPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Gcd of all coefficients (non-negative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().is_negative() {
            g = -g;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    /// (1+x)^k.
    pub fn one_plus_x_pow(k: usize) -> Self {
        // Binomial coefficients by the addition rule; exact in BigInt.
        let mut row = vec![BigInt::one()];
        for _ in 0..k {
            let mut next = vec![BigInt::one()];
            for i in 1..row.len() {
                next.push(&row[i - 1] + &row[i]);
            }
            next.push(BigInt::one());
            row = next;
        }
        IntPoly { coeffs: row }
    }

    /// (1-x)^k.
    pub fn one_minus_x_pow(k: usize) -> Self {
        let mut p = IntPoly::one_plus_x_pow(k);
        for (i, c) in p.coeffs.iter_mut().enumerate() {
            if i % 2 == 1 {
                *c = -std::mem::take(c);
            }
        }
        p
    }

    /// Long division over the rationals; returns (quotient, remainder) low-to-high.
    pub fn div_rem_rat(&self, divisor: &IntPoly) -> (Vec<BigRational>, Vec<BigRational>) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let mut rem: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let dd = divisor.coeffs.len() - 1;
        let dl = BigRational::from_integer(divisor.leading().unwrap().clone());
        if rem.len() <= dd {
            return (Vec::new(), rem);
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        while rem.len() > dd {
            let lead = rem.last().unwrap().clone();
            if lead.is_zero() {
                rem.pop();
                continue;
            }
            let shift = rem.len() - 1 - dd;
            let q = lead / dl.clone();
            for i in 0..dd {
                let t = &q * BigRational::from_integer(divisor.coeffs[i].clone());
                rem[shift + i] -= t;
            }
            quot[shift] = q;
            // The top coefficient cancels exactly.
            rem.pop();
        }
        while rem.last().is_some_and(|c| c.is_zero()) {
            rem.pop();
        }
        (quot, rem)
    }

    /// Exact division: `Some(q)` with `self = q * divisor` when the division
    /// leaves no remainder and the quotient has integer coefficients.
    pub fn divide_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let (quot, rem) = self.div_rem_rat(divisor);
        if !rem.is_empty() {
            return None;
        }
        let mut coeffs = Vec::with_capacity(quot.len());
        for q in quot {
            if !q.is_integer() {
                return None;
            }
            coeffs.push(q.to_integer());
        }
        Some(IntPoly::from_coeffs(coeffs))
    }

    /// Primitive gcd with positive leading coefficient, via the Euclidean
    /// remainder sequence over Q with primitive-part normalization at every
    /// step to keep coefficients small.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let (_, rem) = a.div_rem_rat(&b);
            let r = rat_coeffs_to_primitive(&rem);
            a = b;
            b = r;
        }
        a.primitive_part()
    }

    /// Coefficient symmetry about the degree; zero counts as palindromic.
    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }

    /// Unique expansion of a palindromic polynomial of degree d in the basis
    /// x^i (1+x)^(d-2i); returns the polynomial of gamma coefficients.
    ///
    /// Symmetry is taken about the support center: a polynomial whose lowest
    /// nonzero term is x^lo and highest x^hi expands with d = lo + hi. For
    /// polynomials with a nonzero constant term this is the usual
    /// palindromicity about the degree, and round trips with
    /// `gamma_contract` for every gamma (including those with leading inner
    /// zeros, whose contraction drops below degree d).
    pub fn gamma_expand(&self) -> Result<IntPoly, PolyError> {
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        let hi = self.degree().unwrap();
        let lo = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero polynomial");
        let window = &self.coeffs[lo..=hi];
        let symmetric = (0..window.len() / 2).all(|i| window[i] == window[window.len() - 1 - i]);
        if !symmetric {
            return Err(PolyError::NotPalindromic(self.to_coeff_string()));
        }
        let d = lo + hi;
        let mut rest = self.clone();
        let mut gamma = Vec::with_capacity(d / 2 + 1);
        for i in 0..=d / 2 {
            let gi = rest.coeff(i);
            if !gi.is_zero() {
                rest -= &IntPoly::one_plus_x_pow(d - 2 * i).shift_up(i).scale(&gi);
            }
            gamma.push(gi);
        }
        debug_assert!(rest.is_zero());
        Ok(IntPoly::from_coeffs(gamma))
    }

    /// Inverse of `gamma_expand`: sum of g_i x^i (1+x)^(d-2i).
    pub fn gamma_contract(gamma: &IntPoly, d: usize) -> Result<IntPoly, PolyError> {
        if let Some(deg) = gamma.degree() {
            if 2 * deg > d {
                return Err(PolyError::GammaDegree { deg, d });
            }
        }
        let mut acc = IntPoly::zero();
        for (i, gi) in gamma.coeffs.iter().enumerate() {
            if !gi.is_zero() {
                acc += &IntPoly::one_plus_x_pow(d - 2 * i).shift_up(i).scale(gi);
            }
        }
        Ok(acc)
    }

    /// Low-to-high decimal coefficient list, e.g. "1,7,1" for x^2+7x+1.
    pub fn to_coeff_string(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_coeff_string(s: &str) -> Result<IntPoly, PolyError> {
        let mut coeffs = Vec::new();
        for part in s.split(',') {
            let c: BigInt = part
                .trim()
                .parse()
                .map_err(|_| PolyError::Parse(s.to_string()))?;
            coeffs.push(c);
        }
        Ok(IntPoly::from_coeffs(coeffs))
    }

    /// Human-readable form, high powers first.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let term = if i == 0 {
                mag.to_string()
            } else {
                let var = if i == 1 {
                    "x".to_string()
                } else {
                    format!("x^{i}")
                };
                if mag.is_one() {
                    var
                } else {
                    format!("{mag}{var}")
                }
            };
            if parts.is_empty() {
                if c.is_negative() {
                    parts.push(format!("-{term}"));
                } else {
                    parts.push(term);
                }
            } else if c.is_negative() {
                parts.push(format!("- {term}"));
            } else {
                parts.push(format!("+ {term}"));
            }
        }
        parts.join(" ")
    }
}

/// Clears denominators and strips content, preserving sign.
fn rat_coeffs_to_primitive(coeffs: &[BigRational]) -> IntPoly {
    if coeffs.is_empty() {
        return IntPoly::zero();
    }
    let mut denom_lcm = BigInt::one();
    for c in coeffs {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let p = IntPoly::from_coeffs(ints);
    if p.is_zero() {
        return p;
    }
    let g = p.content();
    IntPoly {
        coeffs: p.coeffs.iter().map(|c| c / &g).collect(),
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self.pretty())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl AddAssign<&IntPoly> for IntPoly {
    fn add_assign(&mut self, rhs: &IntPoly) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&IntPoly> for IntPoly {
    fn sub_assign(&mut self, rhs: &IntPoly) {
        *self = &*self - rhs;
    }
}
