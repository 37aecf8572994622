//! Exact arithmetic in the real quadratic field Q(√3) and its complex
//! extension Q(√3)[i].
//!
//! The closed-form extremal polynomials have coefficients built from
//! q = e^{±iπ/3} = (1 ± i√3)/2, so every quantity we need to certify
//! (critical points, critical values, their squared moduli) lives in
//! Q(√3)[i]. Keeping the arithmetic exact lets equality claims such as
//! |f(1/q)·q|² = 43/1764 be checked as identities rather than to a
//! floating-point tolerance.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Shorthand for a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// An element a + b·√3 of Q(√3), with exact rational components.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QuadExt {
    pub a: BigRational,
    pub b: BigRational,
}

impl QuadExt {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        QuadExt { a, b }
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadExt { a, b: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    /// b·√3 with a = 0.
    pub fn sqrt3_times(b: BigRational) -> Self {
        QuadExt { a: BigRational::zero(), b }
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Multiplicative inverse. Panics on zero (a² − 3b² ≠ 0 for nonzero
    /// elements since √3 is irrational).
    pub fn inv(&self) -> Self {
        let norm = &self.a * &self.a - rat(3, 1) * &self.b * &self.b;
        assert!(!norm.is_zero(), "inverse of zero in Q(sqrt3)");
        QuadExt {
            a: &self.a / &norm,
            b: -&self.b / &norm,
        }
    }

    /// Sign of the real number a + b√3: −1, 0, or +1.
    pub fn sign(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Opposite signs: compare a² against 3b².
        let a2 = &self.a * &self.a;
        let b23 = rat(3, 1) * &self.b * &self.b;
        match a2.cmp(&b23) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.a) + 3f64.sqrt() * rational_to_f64(&self.b)
    }
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Out-of-range ratios only arise from pathological inputs; fall back
        // to a widened quotient.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.clone() - other.clone();
        match diff.sign() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        QuadExt { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        QuadExt { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        // (a + b√3)(c + d√3) = (ac + 3bd) + (ad + bc)√3
        let a = &self.a * &rhs.a + rat(3, 1) * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadExt { a, b }
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: QuadExt) -> QuadExt {
        self * rhs.inv()
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b }
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt3", self.b)
        } else {
            write!(f, "{} + {}*sqrt3", self.a, self.b)
        }
    }
}

/// A complex number with components in Q(√3).
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExtComplex {
    pub re: QuadExt,
    pub im: QuadExt,
}

impl ExtComplex {
    pub fn new(re: QuadExt, im: QuadExt) -> Self {
        ExtComplex { re, im }
    }

    pub fn from_rational(re: BigRational) -> Self {
        ExtComplex { re: QuadExt::from_rational(re), im: QuadExt::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n, 1))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// e^{iπ/3} = 1/2 + i√3/2 (sign = +1) or its conjugate (sign = −1).
    pub fn sixth_root_q(sign: i8) -> Self {
        let half = rat(1, 2);
        let im = QuadExt::sqrt3_times(if sign >= 0 { half.clone() } else { -half.clone() });
        ExtComplex { re: QuadExt::from_rational(half), im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExtComplex { re: self.re.clone(), im: -self.im.clone() }
    }

    /// |z|² = re² + im², an element of Q(√3).
    pub fn abs_sq(&self) -> QuadExt {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    pub fn inv(&self) -> Self {
        let n = self.abs_sq();
        assert!(!n.is_zero(), "inverse of complex zero");
        let c = self.conj();
        ExtComplex { re: c.re / n.clone(), im: c.im / n }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = ExtComplex::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    pub fn to_complex_f64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for ExtComplex {
    type Output = ExtComplex;
    fn add(self, rhs: ExtComplex) -> ExtComplex {
        ExtComplex { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl Sub for ExtComplex {
    type Output = ExtComplex;
    fn sub(self, rhs: ExtComplex) -> ExtComplex {
        ExtComplex { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Mul for ExtComplex {
    type Output = ExtComplex;
    fn mul(self, rhs: ExtComplex) -> ExtComplex {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        ExtComplex { re, im }
    }
}

impl Div for ExtComplex {
    type Output = ExtComplex;
    fn div(self, rhs: ExtComplex) -> ExtComplex {
        self * rhs.inv()
    }
}

impl Neg for ExtComplex {
    type Output = ExtComplex;
    fn neg(self) -> ExtComplex {
        ExtComplex { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for ExtComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

/// A univariate polynomial with coefficients in Q(√3)[i], coefficient of
/// z^k at index k. Trailing zeros are trimmed so the leading coefficient
/// of a nonzero polynomial is nonzero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactPoly {
    coeffs: Vec<ExtComplex>,
}

impl ExactPoly {
    pub fn new(mut coeffs: Vec<ExtComplex>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPoly { coeffs }
    }

    pub fn zero() -> Self {
        ExactPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[ExtComplex] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ExtComplex {
        self.coeffs.get(k).cloned().unwrap_or_else(ExtComplex::zero)
    }

    pub fn eval(&self, z: &ExtComplex) -> ExtComplex {
        let mut acc = ExtComplex::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> ExactPoly {
        if self.coeffs.len() <= 1 {
            return ExactPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * ExtComplex::from_int(k as i64))
            .collect();
        ExactPoly::new(coeffs)
    }

    pub fn add(&self, other: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        ExactPoly::new(coeffs)
    }

    pub fn sub(&self, other: &ExactPoly) -> ExactPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        ExactPoly::new(coeffs)
    }

    pub fn mul(&self, other: &ExactPoly) -> ExactPoly {
        if self.is_zero() || other.is_zero() {
            return ExactPoly::zero();
        }
        let mut coeffs = vec![ExtComplex::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        ExactPoly::new(coeffs)
    }

    pub fn scale(&self, c: &ExtComplex) -> ExactPoly {
        ExactPoly::new(self.coeffs.iter().map(|x| x.clone() * c.clone()).collect())
    }

    /// (c0 + c1·z)^n, the building block for binomial expansions.
    pub fn linear_pow(c0: ExtComplex, c1: ExtComplex, n: u32) -> ExactPoly {
        let lin = ExactPoly::new(vec![c0, c1]);
        let mut acc = ExactPoly::new(vec![ExtComplex::one()]);
        for _ in 0..n {
            acc = acc.mul(&lin);
        }
        acc
    }

    /// Exact class membership: degree n, f(0) = 0, f'(0) = 1.
    pub fn is_in_class(&self, n: usize) -> bool {
        !self.is_zero()
            && self.degree() == n
            && self.coeff(0).is_zero()
            && self.coeff(1) == ExtComplex::one()
    }

    pub fn to_float(&self) -> crate::poly::ComplexPolynomial {
        crate::poly::ComplexPolynomial::new(
            self.coeffs.iter().map(|c| c.to_complex_f64()).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadext_sign_mixed_components() {
        // 2 - √3 > 0, 1 - √3 < 0, √3 - 3/2 > 0
        assert_eq!(QuadExt::new(rat(2, 1), rat(-1, 1)).sign(), 1);
        assert_eq!(QuadExt::new(rat(1, 1), rat(-1, 1)).sign(), -1);
        assert_eq!(QuadExt::new(rat(-3, 2), rat(1, 1)).sign(), 1);
        assert_eq!(QuadExt::zero().sign(), 0);
    }

    #[test]
    fn quadext_field_ops() {
        let x = QuadExt::new(rat(2, 3), rat(-1, 5));
        let y = x.clone() * x.inv();
        assert_eq!(y, QuadExt::one());
        let z = QuadExt::sqrt3_times(rat(1, 1));
        assert_eq!(z.clone() * z, QuadExt::from_int(3));
    }

    #[test]
    fn sixth_root_has_unit_modulus_and_order_six() {
        for sign in [1i8, -1] {
            let q = ExtComplex::sixth_root_q(sign);
            assert_eq!(q.abs_sq(), QuadExt::one());
            assert_eq!(q.pow(6), ExtComplex::one());
            assert!(q.pow(3) == -ExtComplex::one());
        }
    }

    #[test]
    fn one_minus_q_is_conjugate() {
        let q = ExtComplex::sixth_root_q(1);
        assert_eq!(ExtComplex::one() - q.clone(), q.conj());
    }

    #[test]
    fn exact_poly_eval_and_derivative() {
        // p = 1 + 2z + 3z^2, p(2) = 17, p' = 2 + 6z
        let p = ExactPoly::new(vec![
            ExtComplex::from_int(1),
            ExtComplex::from_int(2),
            ExtComplex::from_int(3),
        ]);
        assert_eq!(p.eval(&ExtComplex::from_int(2)), ExtComplex::from_int(17));
        let dp = p.derivative();
        assert_eq!(dp.coeffs(), &[ExtComplex::from_int(2), ExtComplex::from_int(6)]);
    }

    #[test]
    fn linear_pow_matches_binomial() {
        // (1 - z)^3 = 1 - 3z + 3z^2 - z^3
        let p = ExactPoly::linear_pow(ExtComplex::one(), -ExtComplex::one(), 3);
        assert_eq!(
            p.coeffs(),
            &[
                ExtComplex::from_int(1),
                ExtComplex::from_int(-3),
                ExtComplex::from_int(3),
                ExtComplex::from_int(-1)
            ]
        );
    }
}
