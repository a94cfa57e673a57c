//! Dense polynomials over GF(2)/GF(4) and the quotient ring GF(q)[X]/(Xⁿ−1).

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{self, BaseField};

/// Polynomial with coefficients in ascending degree. The coefficient vector
/// never ends in zero, so the zero polynomial has an empty vector and
/// `degree() == None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: BaseField,
    coeffs: Vec<u8>,
}

impl Poly {
    pub fn new(field: BaseField, coeffs: Vec<u8>) -> Result<Self> {
        for &c in &coeffs {
            field.check(c)?;
        }
        Ok(Self::from_raw(field, coeffs))
    }

    /// Builds without range checks; callers guarantee symbols are in `field`.
    pub(crate) fn from_raw(field: BaseField, mut coeffs: Vec<u8>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: BaseField) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: BaseField) -> Self {
        Poly { field, coeffs: vec![1] }
    }

    pub fn monomial(field: BaseField, coeff: u8, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = coeff;
        Self::from_raw(field, coeffs)
    }

    /// Xⁿ − 1 (equal to Xⁿ + 1 in characteristic two).
    pub fn x_n_minus_one(field: BaseField, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[0] = 1;
        coeffs[n] = 1;
        Poly { field, coeffs }
    }

    /// Xⁿ⁻¹ + … + X + 1, the polynomial of the all-one word.
    pub fn all_one(field: BaseField, n: usize) -> Self {
        Poly { field, coeffs: vec![1; n] }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u8> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn leading(&self) -> u8 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, &s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c ^= s;
        }
        Self::from_raw(self.field.join(other.field), coeffs)
    }

    /// Subtraction coincides with addition in characteristic two.
    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(other)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let field = self.field.join(other.field);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(field);
        }
        let mut coeffs = vec![0u8; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] ^= gf::mul(a, b);
            }
        }
        Self::from_raw(field, coeffs)
    }

    pub fn scale(&self, c: u8) -> Poly {
        Self::from_raw(self.field, self.coeffs.iter().map(|&a| gf::mul(a, c)).collect())
    }

    /// Multiplies by Xᵏ.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field, coeffs }
    }

    pub fn divmod(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let field = self.field.join(divisor.field);
        let Some(nd) = self.degree() else {
            return Ok((Poly::zero(field), Poly::zero(field)));
        };
        if nd < dd {
            return Ok((Poly::zero(field), self.clone()));
        }
        let lead_inv = gf::inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u8; nd - dd + 1];
        for i in (dd..=nd).rev() {
            let c = rem[i];
            if c == 0 {
                continue;
            }
            let f = gf::mul(c, lead_inv);
            quot[i - dd] = f;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] ^= gf::mul(f, d);
            }
        }
        rem.truncate(dd);
        Ok((Self::from_raw(field, quot), Self::from_raw(field, rem)))
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// True iff `self` divides `other`.
    pub fn divides(&self, other: &Poly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Exact quotient; fails if the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.divmod(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Precondition("polynomial division is not exact".into()))
        }
    }

    pub fn eval(&self, x: u8) -> u8 {
        self.coeffs.iter().rev().fold(0, |acc, &c| gf::mul(acc, x) ^ c)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(gf::inv(self.leading()).expect("nonzero leading coefficient"))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// c†(X) = X^{deg c}·c(X⁻¹).
    pub fn reciprocal(&self) -> Poly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::from_raw(self.field, coeffs)
    }

    /// c(0) ≠ 0 and c = c†/c(0).
    pub fn is_self_reciprocal(&self) -> bool {
        let c0 = self.coeff(0);
        if c0 == 0 {
            return false;
        }
        self.reciprocal().scale(gf::inv(c0).unwrap()) == *self
    }

    /// Reduction modulo Xⁿ − 1 by folding exponents.
    pub fn mod_xn1(&self, n: usize) -> Poly {
        if self.coeffs.len() <= n {
            return self.clone();
        }
        let mut coeffs = vec![0u8; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i % n] ^= c;
        }
        Self::from_raw(self.field, coeffs)
    }

    /// Σ cᵢ X^{(e − i) mod n}: the ring element X^e·c(X⁻¹) in GF(q)[X]/(Xⁿ−1).
    pub fn x_pow_times_reversed(&self, e: usize, n: usize) -> Poly {
        let mut coeffs = vec![0u8; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let idx = ((e % n) + n * (i / n + 1) - i) % n;
            coeffs[idx] ^= c;
        }
        Self::from_raw(self.field, coeffs)
    }

    /// Same polynomial reinterpreted over a field containing its coefficients.
    pub fn with_field(&self, field: BaseField) -> Result<Poly> {
        Poly::new(field, self.coeffs.clone())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{}{:?}", self.field, self.coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let coef = match c {
                1 => "",
                2 => "w",
                _ => "(w+1)",
            };
            match (i, c) {
                (0, 1) => f.write_str("1")?,
                (0, 2) => f.write_str("w")?,
                (0, _) => f.write_str("w+1")?,
                (1, _) => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

pub fn poly_divmod(a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    a.divmod(b)
}

pub fn reciprocal(c: &Poly) -> Poly {
    c.reciprocal()
}

/// (a·b) mod (Xⁿ − 1) by direct wraparound accumulation.
pub fn quotient_mul(a: &Poly, b: &Poly, n: usize) -> Result<Poly> {
    for p in [a, b] {
        if let Some(d) = p.degree() {
            if d >= n {
                return Err(Error::IndexOutOfRange { index: d, len: n });
            }
        }
    }
    let mut coeffs = vec![0u8; n];
    for (i, &x) in a.coeffs.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.coeffs.iter().enumerate() {
            let k = (i + j) % n;
            coeffs[k] ^= gf::mul(x, y);
        }
    }
    Ok(Poly::from_raw(a.field.join(b.field), coeffs))
}
