//! Extension fields GF(q^m) for q ∈ {2, 4}.
//!
//! Every field is realized as a binary field GF(2^M) with M = m (q = 2) or
//! M = 2m (q = 4), reduced by a primitive binary polynomial from a fixed
//! table. The root γ of that polynomial is the reference generator: discrete
//! logs and tie-breaks are taken with respect to it. GF(4) sits inside
//! GF(2^{2m}) as {0, 1, ω, ω²} with ω = γ^((2^M−1)/3).

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::BaseField;
use crate::poly::Poly;

/// Primitive binary polynomials, indexed by degree (bit i = coefficient of xⁱ).
const BINARY_MODULI: [u64; 33] = [
    0,
    0b11,
    0b111,
    0b1011,
    0b10011,
    0b100101,
    0b1000011,
    0b10000011,
    0x11D,
    0x211,
    0x409,
    0x805,
    0x1053,
    0x201B,
    0x4443,
    0x8003,
    0x1100B,
    0x20009,
    0x40081,
    0x80027,
    0x100009,
    0x200005,
    0x400003,
    0x800021,
    0x1000087,
    0x2000009,
    0x4000047,
    0x8000027,
    0x10000009,
    0x20000005,
    0x40800007,
    0x80000009,
    0x100400007,
];

const TABLE_LIMIT_BITS: u32 = 16;

/// Element of an [`ExtField`], stored as its binary-field bit pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElem(pub u32);

impl ExtElem {
    pub const ZERO: ExtElem = ExtElem(0);
    pub const ONE: ExtElem = ExtElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone)]
pub struct ExtField {
    base: BaseField,
    m: u32,
    bits: u32,
    poly: u64,
    size_minus_one: u64,
    factors: Vec<(u64, u32)>,
    exp: Vec<u32>,
    log: Vec<u32>,
    gamma: ExtElem,
    omega: ExtElem,
    modulus: Poly,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {}", self.base.q(), self.m, self.modulus)
    }
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Multiplicative order of `q` modulo `n` (`n` coprime to `q`, `n ≥ 1`).
pub fn multiplicative_order(q: u64, n: u64) -> Option<u32> {
    if n == 1 {
        return Some(1);
    }
    if gcd(q, n) != 1 {
        return None;
    }
    let mut x = q % n;
    let mut k = 1;
    while x != 1 {
        x = x * q % n;
        k += 1;
    }
    Some(k)
}

pub fn ext_field_build(q: u32, m: u32) -> Result<ExtField> {
    let base = BaseField::from_q(q)?;
    if !(1..=16).contains(&m) {
        return Err(Error::UnsupportedField(format!("extension degree {m} outside 1..=16")));
    }
    Ok(ExtField::build(base, m))
}

impl ExtField {
    fn build(base: BaseField, m: u32) -> Self {
        let bits = m * base.bits();
        let poly = BINARY_MODULI[bits as usize];
        let size_minus_one = (1u64 << bits) - 1;
        let mut field = ExtField {
            base,
            m,
            bits,
            poly,
            size_minus_one,
            factors: factorize(size_minus_one),
            exp: Vec::new(),
            log: Vec::new(),
            gamma: ExtElem::ONE,
            omega: ExtElem::ZERO,
            modulus: Poly::zero(base),
        };
        field.gamma = ExtElem(field.reduce(2));
        if bits <= TABLE_LIMIT_BITS {
            let order = size_minus_one as usize;
            let mut exp = vec![0u32; order];
            let mut log = vec![0u32; order + 1];
            let mut x = ExtElem::ONE;
            for (i, e) in exp.iter_mut().enumerate() {
                *e = x.0;
                log[x.0 as usize] = i as u32;
                x = field.mul_slow(x, field.gamma);
            }
            field.exp = exp;
            field.log = log;
        }
        if bits.is_multiple_of(2) {
            field.omega = field.pow(field.gamma, size_minus_one / 3);
        }
        field.modulus = match base {
            BaseField::Gf2 => Poly::from_raw(base, (0..=bits).map(|i| ((poly >> i) & 1) as u8).collect()),
            BaseField::Gf4 => field.minimal_polynomial(field.gamma).expect("γ is nonzero"),
        };
        field
    }

    pub fn base(&self) -> BaseField {
        self.base
    }

    pub fn q(&self) -> u32 {
        self.base.q()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// q^m.
    pub fn order(&self) -> u64 {
        self.size_minus_one + 1
    }

    /// Factorization of q^m − 1.
    pub fn factorization(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Degree-m irreducible polynomial over GF(q) whose root is γ.
    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// The binary modulus of the underlying GF(2^M).
    pub fn binary_modulus(&self) -> u64 {
        self.poly
    }

    /// The reference primitive element (root of the modulus).
    pub fn gamma(&self) -> ExtElem {
        self.gamma
    }

    fn reduce(&self, mut x: u64) -> u32 {
        let top = self.bits;
        for b in (top..64).rev() {
            if (x >> b) & 1 == 1 {
                x ^= self.poly << (b - top);
            }
        }
        x as u32
    }

    fn mul_slow(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let (mut a, mut b) = (a.0 as u64, b.0 as u64);
        let mut acc = 0u64;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            a <<= 1;
            b >>= 1;
        }
        ExtElem(self.reduce(acc))
    }

    pub fn add(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        ExtElem(a.0 ^ b.0)
    }

    pub fn mul(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        if a.is_zero() || b.is_zero() {
            return ExtElem::ZERO;
        }
        if self.exp.is_empty() {
            return self.mul_slow(a, b);
        }
        let s = self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64;
        ExtElem(self.exp[(s % self.size_minus_one) as usize])
    }

    pub fn pow(&self, a: ExtElem, mut e: u64) -> ExtElem {
        if a.is_zero() {
            return if e == 0 { ExtElem::ONE } else { ExtElem::ZERO };
        }
        if !self.exp.is_empty() {
            let l = self.log[a.0 as usize] as u128 * (e % self.size_minus_one) as u128;
            return ExtElem(self.exp[(l % self.size_minus_one as u128) as usize]);
        }
        let mut base = a;
        let mut acc = ExtElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: ExtElem) -> Result<ExtElem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.size_minus_one - 1))
    }

    /// γ^e.
    pub fn gamma_pow(&self, e: u64) -> ExtElem {
        self.pow(self.gamma, e)
    }

    /// Discrete log with respect to γ.
    pub fn log_gamma(&self, a: ExtElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroElement("discrete log"));
        }
        if !self.log.is_empty() {
            return Ok(self.log[a.0 as usize] as u64);
        }
        let mut x = ExtElem::ONE;
        for e in 0..self.size_minus_one {
            if x == a {
                return Ok(e);
            }
            x = self.mul_slow(x, self.gamma);
        }
        unreachable!("γ generates the multiplicative group")
    }

    /// x ↦ x^q.
    pub fn frobenius(&self, a: ExtElem) -> ExtElem {
        let s = self.mul(a, a);
        match self.base {
            BaseField::Gf2 => s,
            BaseField::Gf4 => self.mul(s, s),
        }
    }

    /// Image of a base-field symbol; ω is available whenever M is even.
    pub fn embed(&self, s: u8) -> Result<ExtElem> {
        match s {
            0 => Ok(ExtElem::ZERO),
            1 => Ok(ExtElem::ONE),
            2 | 3 if self.bits.is_multiple_of(2) => {
                Ok(if s == 2 { self.omega } else { self.mul(self.omega, self.omega) })
            }
            _ => Err(Error::BadSymbol(format!("{s} not embeddable in {self:?}"))),
        }
    }

    /// Inverse of [`embed`](Self::embed) on the base field.
    pub fn project(&self, a: ExtElem) -> Result<u8> {
        for s in self.base.elements() {
            if self.embed(s)? == a {
                return Ok(s);
            }
        }
        Err(Error::BadSymbol(format!("{a:?} is not in {}", self.base)))
    }

    pub fn eval(&self, p: &Poly, x: ExtElem) -> Result<ExtElem> {
        let mut acc = ExtElem::ZERO;
        for &c in p.coeffs().iter().rev() {
            acc = self.add(self.mul(acc, x), self.embed(c)?);
        }
        Ok(acc)
    }

    /// Multiplicative order, from the stored factorization.
    pub fn element_order(&self, a: ExtElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroElement("multiplicative order"));
        }
        let mut order = self.size_minus_one;
        for &(p, _) in &self.factors {
            while order.is_multiple_of(p) && self.pow(a, order / p) == ExtElem::ONE {
                order /= p;
            }
        }
        Ok(order)
    }

    pub fn is_primitive(&self, a: ExtElem) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::ZeroElement("primitivity"));
        }
        let n = self.size_minus_one;
        Ok(self.factors.iter().all(|&(p, _)| self.pow(a, n / p) != ExtElem::ONE))
    }

    /// Conjugates a, a^q, a^{q²}, … until the orbit closes.
    pub fn conjugates(&self, a: ExtElem) -> Vec<ExtElem> {
        let mut orbit = vec![a];
        let mut x = self.frobenius(a);
        while x != a {
            orbit.push(x);
            x = self.frobenius(x);
        }
        orbit
    }

    /// M(α) over the base field: ∏ (X − c) over the conjugates c of α.
    pub fn minimal_polynomial(&self, a: ExtElem) -> Result<Poly> {
        if a.is_zero() {
            return Err(Error::ZeroElement("minimal polynomial"));
        }
        let mut coeffs = vec![ExtElem::ONE];
        for c in self.conjugates(a) {
            let mut next = vec![ExtElem::ZERO; coeffs.len() + 1];
            for (i, &x) in coeffs.iter().enumerate() {
                next[i + 1] = self.add(next[i + 1], x);
                next[i] = self.add(next[i], self.mul(x, c));
            }
            coeffs = next;
        }
        let symbols = coeffs.into_iter().map(|c| self.project(c)).collect::<Result<Vec<u8>>>()?;
        Poly::new(self.base, symbols)
    }

    /// A primitive n-th root of unity, γ^((q^m−1)/n).
    pub fn root_of_unity(&self, n: u64) -> Result<ExtElem> {
        if n == 0 || !self.size_minus_one.is_multiple_of(n) {
            return Err(Error::Precondition(format!("{n} does not divide {}", self.size_minus_one)));
        }
        Ok(self.gamma_pow(self.size_minus_one / n))
    }

    /// Smallest-discrete-log element of order exactly `n` with
    /// g(α) ≠ 0 and g(α⁻¹) ≠ 0.
    pub fn find_order_avoiding(&self, g: &Poly, n: u64) -> Result<ExtElem> {
        let beta = self.root_of_unity(n)?;
        let mut alpha = beta;
        for e in 1..=n {
            if gcd(e, n) == 1 {
                let inv = self.inv(alpha)?;
                if !self.eval(g, alpha)?.is_zero() && !self.eval(g, inv)?.is_zero() {
                    return Ok(alpha);
                }
            }
            alpha = self.mul(alpha, beta);
        }
        Err(Error::SearchExhausted(format!(
            "every element of order {n} in {self:?} is a root of g or of its reciprocal"
        )))
    }

    /// Nonzero elements γ⁰, γ¹, … in discrete-log order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = ExtElem> + '_ {
        let mut x = ExtElem::ONE;
        (0..self.size_minus_one).map(move |_| {
            let cur = x;
            x = self.mul(x, self.gamma);
            cur
        })
    }
}

/// The primitive α with smallest discrete log such that g(α) ≠ 0 and g(α⁻¹) ≠ 0.
pub fn find_primitive_avoiding(g: &Poly, field: &ExtField) -> Result<ExtElem> {
    let alpha = field.find_order_avoiding(g, field.size_minus_one)?;
    debug_assert!(field.is_primitive(alpha)?);
    Ok(alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{OMEGA as W, OMEGA_PLUS_ONE as W1};

    fn binary(bits: u32) -> ExtField {
        let base = if bits.is_multiple_of(2) && bits > 1 { BaseField::Gf4 } else { BaseField::Gf2 };
        let m = if base == BaseField::Gf4 { bits / 2 } else { bits };
        ExtField::build(base, m)
    }

    #[test]
    fn moduli_table_is_primitive() {
        for bits in 1..=32 {
            let f = binary(bits);
            assert!(f.is_primitive(f.gamma()).unwrap(), "degree {bits}");
            let prod: u64 = f.factorization().iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, (1u64 << bits) - 1);
        }
    }

    #[test]
    fn documented_moduli() {
        let f = ext_field_build(2, 3).unwrap();
        assert_eq!(f.order(), 8);
        assert_eq!(f.modulus().coeffs(), &[1, 1, 0, 1]);
        let f = ext_field_build(2, 4).unwrap();
        assert_eq!(f.order(), 16);
        assert_eq!(f.modulus().coeffs(), &[1, 1, 0, 0, 1]);
        assert!(ext_field_build(2, 17).is_err());
        assert!(ext_field_build(3, 2).is_err());
        assert!(ext_field_build(2, 0).is_err());
    }

    #[test]
    fn gf16_over_gf4_modulus_is_irreducible() {
        let f = ext_field_build(4, 2).unwrap();
        assert_eq!(f.order(), 16);
        let md = f.modulus();
        assert_eq!(md.degree(), Some(2));
        assert!(md.is_monic());
        // a quadratic is irreducible iff it has no root in GF(4)
        for x in 0..4u8 {
            assert_ne!(md.eval(x), 0);
        }
        assert_eq!(f.eval(md, f.gamma()).unwrap(), ExtElem::ZERO);
    }

    #[test]
    fn omega_embedding_matches_gf4() {
        for m in 1..=8 {
            let f = ext_field_build(4, m).unwrap();
            for a in 0..4u8 {
                for b in 0..4u8 {
                    let (ea, eb) = (f.embed(a).unwrap(), f.embed(b).unwrap());
                    assert_eq!(f.project(f.mul(ea, eb)).unwrap(), crate::gf::mul(a, b));
                    assert_eq!(f.project(f.add(ea, eb)).unwrap(), a ^ b);
                }
            }
        }
        let f = ext_field_build(2, 3).unwrap();
        assert!(f.embed(W).is_err());
    }

    #[test]
    fn small_minimal_polynomials() {
        let f = ext_field_build(2, 3).unwrap();
        assert_eq!(f.minimal_polynomial(f.gamma()).unwrap().coeffs(), &[1, 1, 0, 1]);
        assert_eq!(f.minimal_polynomial(ExtElem::ONE).unwrap().coeffs(), &[1, 1]);
        assert!(f.minimal_polynomial(ExtElem::ZERO).is_err());
        assert!(f.is_primitive(f.gamma()).unwrap());
        assert!(!f.is_primitive(ExtElem::ONE).unwrap());
        assert!(f.is_primitive(ExtElem::ZERO).is_err());
        let f4 = ext_field_build(4, 1).unwrap();
        assert_eq!(f4.minimal_polynomial(f4.embed(W).unwrap()).unwrap().coeffs(), &[W, 1]);
        assert_eq!(f4.minimal_polynomial(f4.embed(W1).unwrap()).unwrap().coeffs(), &[W1, 1]);
    }

    #[test]
    fn primitive_count_is_totient() {
        for (q, m) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (2, 8), (2, 10), (2, 12), (4, 1), (4, 2), (4, 3), (4, 4), (4, 5), (4, 6)] {
            let f = ext_field_build(q, m).unwrap();
            let count = f.nonzero_elements().filter(|&a| f.is_primitive(a).unwrap()).count() as u64;
            assert_eq!(count, totient(f.order() - 1), "GF({q}^{m})");
        }
        assert_eq!(totient(15), 8);
    }

    fn check_minimal(f: &ExtField, a: ExtElem) {
        let ma = f.minimal_polynomial(a).unwrap();
        assert!(ma.is_monic());
        assert_eq!(f.eval(&ma, a).unwrap(), ExtElem::ZERO);
        assert_eq!(f.m() as usize % ma.degree().unwrap(), 0);
        let mb = f.minimal_polynomial(f.inv(a).unwrap()).unwrap();
        assert!(ma.mul(&mb).is_self_reciprocal());
    }

    #[test]
    fn minimal_polynomial_properties() {
        for (q, m) in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (2, 8), (4, 1), (4, 2), (4, 3), (4, 4)] {
            let f = ext_field_build(q, m).unwrap();
            for a in f.nonzero_elements() {
                check_minimal(&f, a);
            }
        }
        for (q, m) in [(2, 12), (2, 16), (4, 6), (4, 8), (4, 12)] {
            let f = ext_field_build(q, m).unwrap();
            for e in (1..f.order() - 1).step_by(((f.order() / 97) | 1) as usize).take(100) {
                check_minimal(&f, f.gamma_pow(e));
            }
        }
    }

    #[test]
    fn minimal_polynomial_is_irreducible_small() {
        // irreducibility by trial division against every lower-degree monic polynomial
        let f = ext_field_build(4, 2).unwrap();
        for a in f.nonzero_elements() {
            let ma = f.minimal_polynomial(a).unwrap();
            let d = ma.degree().unwrap();
            for dd in 1..d {
                for code in 0..4u32.pow(dd as u32) {
                    let mut c: Vec<u8> = (0..dd).map(|i| ((code >> (2 * i)) & 3) as u8).collect();
                    c.push(1);
                    let cand = Poly::new(BaseField::Gf4, c).unwrap();
                    assert!(!cand.divides(&ma).unwrap());
                }
            }
        }
    }

    #[test]
    fn primitive_avoiding() {
        let f = ext_field_build(2, 4).unwrap();
        let a = find_primitive_avoiding(&Poly::one(BaseField::Gf2), &f).unwrap();
        assert_eq!(a, f.gamma());

        let g = Poly::new(BaseField::Gf4, vec![1, 1, W1, 1, W1, 1, 1]).unwrap();
        let f = ext_field_build(4, 2).unwrap();
        let a = find_primitive_avoiding(&g, &f).unwrap();
        assert!(f.is_primitive(a).unwrap());
        assert!(!f.eval(&g, a).unwrap().is_zero());
        assert!(!f.eval(&g, f.inv(a).unwrap()).unwrap().is_zero());
        // it is the first qualifying primitive element in discrete-log order
        let first = f
            .nonzero_elements()
            .find(|&x| {
                f.is_primitive(x).unwrap()
                    && !f.eval(&g, x).unwrap().is_zero()
                    && !f.eval(&g, f.inv(x).unwrap()).unwrap().is_zero()
            })
            .unwrap();
        assert_eq!(a, first);

        // M(γ) kills γ and γ², and its reciprocal kills γ⁻¹ = γ³⁰ and γ²⁹
        let f = ext_field_build(2, 5).unwrap();
        let a = find_primitive_avoiding(f.modulus(), &f).unwrap();
        assert_eq!(a, f.gamma_pow(3));
        // in GF(8) every primitive element is a root of x³+x+1 or of x³+x²+1
        let f = ext_field_build(2, 3).unwrap();
        assert!(matches!(find_primitive_avoiding(f.modulus(), &f), Err(Error::SearchExhausted(_))));
    }

    #[test]
    fn helpers() {
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize((1 << 32) - 1), vec![(3, 1), (5, 1), (17, 1), (257, 1), (65537, 1)]);
        assert_eq!(multiplicative_order(4, 15), Some(2));
        assert_eq!(multiplicative_order(2, 63), Some(6));
        assert_eq!(multiplicative_order(2, 6), None);
        let f = ext_field_build(2, 6).unwrap();
        assert_eq!(f.log_gamma(f.gamma_pow(37)).unwrap(), 37);
        let big = ext_field_build(4, 10).unwrap();
        let x = big.gamma_pow(123_456);
        assert_eq!(big.log_gamma(x).unwrap(), 123_456);
        assert_eq!(big.mul(x, big.inv(x).unwrap()), ExtElem::ONE);
    }
}
