//! Cyclic codes over GF(2)/GF(4): validation, BCH families, systematic and
//! shortened encoders with a bounded-distance decoder, and Tavares encoding
//! into distinct cyclic equivalence classes.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::{self, ExtElem, ExtField};
use crate::gf::{self, BaseField};
use crate::poly::Poly;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DistanceStatus {
    Exact,
    Sampled,
    Designed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distance {
    pub value: usize,
    pub status: DistanceStatus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicCode {
    field: BaseField,
    n: usize,
    g: Poly,
    h: Poly,
    distance: Option<Distance>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CodeProperties {
    pub contains_all_one: bool,
    pub reversible: bool,
}

pub fn code_from_generator(q: u32, n: usize, g: &Poly) -> Result<CyclicCode> {
    let field = BaseField::from_q(q)?;
    let g = g.with_field(field)?;
    if n == 0 || n.is_multiple_of(2) {
        return Err(Error::InvalidCode(format!("n = {n} must be odd so that gcd(n, {q}) = 1")));
    }
    if !g.is_monic() {
        return Err(Error::InvalidCode(format!("generator {g} is not monic")));
    }
    let (h, r) = Poly::x_n_minus_one(field, n).divmod(&g)?;
    if !r.is_zero() {
        return Err(Error::InvalidCode(format!("generator {g} does not divide x^{n} - 1")));
    }
    if g.degree() == Some(n) {
        return Err(Error::InvalidCode("dimension k = 0".into()));
    }
    Ok(CyclicCode { field, n, g, h, distance: None })
}

impl CyclicCode {
    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n - self.g.degree().unwrap_or(0)
    }

    pub fn generator(&self) -> &Poly {
        &self.g
    }

    /// h = (Xⁿ − 1)/g.
    pub fn check_poly(&self) -> &Poly {
        &self.h
    }

    pub fn distance(&self) -> Option<Distance> {
        self.distance
    }

    pub fn with_distance(mut self, d: Distance) -> Self {
        self.distance = Some(d);
        self
    }

    /// Number of codewords, if it fits in a u64.
    pub fn size(&self) -> Option<u64> {
        (self.q() as u64).checked_pow(self.k() as u32)
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.len() == self.n && w.to_poly().rem(&self.g).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// m(X)·g(X) for deg m < k.
    pub fn encode_poly(&self, m: &Poly) -> Result<Word> {
        if m.degree().is_some_and(|d| d >= self.k()) {
            return Err(Error::Precondition(format!("message degree must be below k = {}", self.k())));
        }
        Word::from_poly(&m.mul(&self.g), self.n)
    }

    /// The codeword whose message has base-q digits `index` (least significant first).
    pub fn codeword(&self, mut index: u64) -> Word {
        let q = self.q() as u64;
        let digits = (0..self.k())
            .map(|_| {
                let d = (index % q) as u8;
                index /= q;
                d
            })
            .collect();
        self.encode_poly(&Poly::from_raw(self.field, digits)).expect("degree below k")
    }

    /// Every codeword in message-index order.
    pub fn codewords(&self) -> Result<Vec<Word>> {
        let size = self
            .size()
            .filter(|&s| s <= 1 << 24)
            .ok_or_else(|| Error::Precondition(format!("{}^{} codewords is too many to enumerate", self.q(), self.k())))?;
        Ok((0..size).map(|i| self.codeword(i)).collect())
    }

    pub fn properties(&self) -> CodeProperties {
        code_properties(self)
    }
}

pub fn code_properties(c: &CyclicCode) -> CodeProperties {
    CodeProperties {
        contains_all_one: c.g.eval(1) != 0,
        reversible: c.g.is_self_reciprocal(),
    }
}

/// A field hosting a primitive n-th root of unity β, with the q-cyclotomic
/// cosets modulo n.
#[derive(Debug, Clone)]
pub struct CyclotomicData {
    field: ExtField,
    beta: ExtElem,
    n: usize,
    cosets: Vec<Vec<usize>>,
}

impl CyclotomicData {
    pub fn new(q: u32, n: usize) -> Result<Self> {
        let m = ext::multiplicative_order(q as u64, n as u64)
            .ok_or_else(|| Error::Precondition(format!("gcd({n}, {q}) != 1")))?;
        let field = ext::ext_field_build(q, m)?;
        let beta = field.root_of_unity(n as u64)?;
        let mut seen = vec![false; n];
        let mut cosets = Vec::new();
        for e in 0..n {
            if seen[e] {
                continue;
            }
            let mut coset = Vec::new();
            let mut x = e;
            while !seen[x] {
                seen[x] = true;
                coset.push(x);
                x = x * q as usize % n;
            }
            cosets.push(coset);
        }
        Ok(CyclotomicData { field, beta, n, cosets })
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn beta(&self) -> ExtElem {
        self.beta
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn coset_of(&self, e: usize) -> &[usize] {
        let e = e % self.n;
        self.cosets.iter().find(|c| c.contains(&e)).expect("cosets partition ⟦n⟧")
    }

    /// M(β^e).
    pub fn minimal_polynomial(&self, e: usize) -> Poly {
        let x = self.field.pow(self.beta, e as u64);
        self.field.minimal_polynomial(x).expect("β^e is nonzero")
    }

    /// lcm of M(β^e) over `exponents`, as the product over distinct cosets.
    pub fn generator_for(&self, exponents: impl IntoIterator<Item = usize>) -> Poly {
        let mut reps: Vec<usize> = exponents.into_iter().map(|e| self.coset_of(e)[0]).collect();
        reps.sort_unstable();
        reps.dedup();
        reps.into_iter()
            .fold(Poly::one(self.field.base()), |acc, r| acc.mul(&self.minimal_polynomial(r)))
    }

    /// Irreducible factors of a divisor of Xⁿ − 1, one per coset of roots.
    pub fn factor(&self, p: &Poly) -> Result<Vec<Poly>> {
        let mut out = Vec::new();
        for c in &self.cosets {
            let x = self.field.pow(self.beta, c[0] as u64);
            if self.field.eval(p, x)?.is_zero() {
                out.push(self.minimal_polynomial(c[0]));
            }
        }
        let prod = out.iter().fold(Poly::one(self.field.base()), |a, f| a.mul(f));
        if prod != p.monic() {
            return Err(Error::Precondition(format!("{p} is not a squarefree divisor of x^{} - 1", self.n)));
        }
        Ok(out)
    }
}

/// Primitive narrow-sense binary BCH code of length 2^m − 1 and designed distance d.
pub fn bch_narrow_sense(m: u32, d: usize) -> Result<CyclicCode> {
    if !(2..=16).contains(&m) {
        return Err(Error::Precondition(format!("m = {m} outside 2..=16")));
    }
    let n = (1usize << m) - 1;
    if !(2..=n).contains(&d) {
        return Err(Error::Precondition(format!("designed distance {d} outside 2..={n}")));
    }
    let cyc = CyclotomicData::new(2, n)?;
    let g = cyc.generator_for(1..d);
    Ok(code_from_generator(2, n, &g)?.with_distance(Distance { value: d, status: DistanceStatus::Designed }))
}

/// Reversible cyclic code of length q^m − 1 containing 1ⁿ, from the symmetric
/// zero set {±1, …, ±(δ−1)}.
pub fn reversible_bch(q: u32, m: u32, delta: usize) -> Result<CyclicCode> {
    BaseField::from_q(q)?;
    if m == 0 || m * BaseField::from_q(q)?.bits() > 32 {
        return Err(Error::Precondition(format!("m = {m} unsupported for q = {q}")));
    }
    let n = (q as usize).pow(m) - 1;
    if !(2..n).contains(&delta) {
        return Err(Error::Precondition(format!("δ = {delta} outside 2..{n}")));
    }
    let cyc = CyclotomicData::new(q, n)?;
    let g = cyc.generator_for((1..delta).flat_map(|e| [e, n - e]));
    Ok(code_from_generator(q, n, &g)?.with_distance(Distance { value: delta, status: DistanceStatus::Designed }))
}

fn padded(p: &Poly, len: usize) -> Vec<u8> {
    let mut v = p.coeffs().to_vec();
    v.resize(len, 0);
    v
}

const SYNDROME_TABLE_LIMIT: u64 = 1 << 22;

/// Systematic encoder for a (possibly shortened) cyclic code with a
/// syndrome-table bounded-distance decoder.
///
/// The message occupies positions 0..k and the parity positions k..n of the
/// full code. Shortening by s fixes message positions k−s..k to zero and
/// deletes them.
#[derive(Debug, Clone)]
pub struct LinearEncoder {
    code: CyclicCode,
    shortened: usize,
    t: usize,
    table: HashMap<Vec<u8>, Vec<(usize, u8)>>,
}

impl LinearEncoder {
    /// Corrects up to ⌊(d−1)/2⌋ errors, with d the code's recorded distance.
    pub fn new(code: CyclicCode, shortened: usize) -> Result<Self> {
        let d = code
            .distance()
            .ok_or_else(|| Error::Precondition("code has no recorded distance".into()))?
            .value;
        Self::with_radius(code, shortened, d.saturating_sub(1) / 2)
    }

    pub fn with_radius(code: CyclicCode, shortened: usize, t: usize) -> Result<Self> {
        if shortened >= code.k() {
            return Err(Error::Precondition(format!(
                "cannot shorten a k = {} code by {shortened}",
                code.k()
            )));
        }
        let mut enc = LinearEncoder { code, shortened, t, table: HashMap::new() };
        enc.build_table()?;
        Ok(enc)
    }

    fn build_table(&mut self) -> Result<()> {
        let positions = self.positions();
        let q = self.code.q() as u64;
        let mut count = 0u64;
        let mut binom = 1u64;
        for w in 1..=self.t as u64 {
            binom = binom * (positions.len() as u64 + 1 - w) / w;
            count = count.saturating_add(binom.saturating_mul((q - 1).pow(w as u32)));
        }
        if count > SYNDROME_TABLE_LIMIT {
            return Err(Error::Precondition(format!("syndrome table of {count} patterns exceeds limit")));
        }
        let r = self.code.n - self.code.k();
        let field = self.code.field;
        let pos_syn: Vec<Vec<u8>> = positions
            .iter()
            .map(|&p| padded(&Poly::monomial(field, 1, p).rem(&self.code.g).expect("g nonzero"), r))
            .collect();
        self.table.insert(vec![0; r], Vec::new());
        let mut stack: Vec<(usize, u8)> = Vec::new();
        self.extend_patterns(&positions, &pos_syn, 0, vec![0; r], &mut stack)
    }

    fn extend_patterns(
        &mut self,
        positions: &[usize],
        pos_syn: &[Vec<u8>],
        start: usize,
        syn: Vec<u8>,
        stack: &mut Vec<(usize, u8)>,
    ) -> Result<()> {
        if stack.len() == self.t {
            return Ok(());
        }
        for i in start..positions.len() {
            for v in 1..self.code.q() as u8 {
                let s: Vec<u8> = syn.iter().zip(&pos_syn[i]).map(|(a, b)| a ^ gf::mul(v, *b)).collect();
                stack.push((positions[i], v));
                if self.table.insert(s.clone(), stack.clone()).is_some() {
                    return Err(Error::Precondition(format!(
                        "radius t = {} exceeds the correction capability",
                        self.t
                    )));
                }
                self.extend_patterns(positions, pos_syn, i + 1, s, stack)?;
                stack.pop();
            }
        }
        Ok(())
    }

    pub fn code(&self) -> &CyclicCode {
        &self.code
    }

    pub fn shortened(&self) -> usize {
        self.shortened
    }

    pub fn radius(&self) -> usize {
        self.t
    }

    /// Length after shortening.
    pub fn n(&self) -> usize {
        self.code.n - self.shortened
    }

    /// Message length after shortening.
    pub fn k(&self) -> usize {
        self.code.k() - self.shortened
    }

    /// Positions of the full code that survive shortening, in order.
    pub fn positions(&self) -> Vec<usize> {
        let (k, n) = (self.code.k(), self.code.n);
        (0..k - self.shortened).chain(k..n).collect()
    }

    fn expand(&self, w: &Word) -> Poly {
        let mut full = vec![0u8; self.code.n];
        for (p, &s) in self.positions().into_iter().zip(w.symbols()) {
            full[p] = s;
        }
        Poly::from_raw(self.code.field, full)
    }

    fn contract(&self, full: &Poly) -> Word {
        let symbols = self.positions().into_iter().map(|p| full.coeff(p)).collect();
        Word::from_raw(self.code.field, symbols)
    }

    pub fn encode(&self, msg: &Word) -> Result<Word> {
        if msg.len() != self.k() {
            return Err(Error::LengthMismatch(msg.len(), self.k()));
        }
        let msg = Word::new(self.code.field, msg.symbols().to_vec())?;
        let (n, k) = (self.code.n, self.code.k());
        let m = msg.to_poly();
        let r = m.shift_up(n - k).rem(&self.code.g)?;
        self.encode_full(&m.add(&r.shift_up(k)))
    }

    fn encode_full(&self, c: &Poly) -> Result<Word> {
        debug_assert!(c.rem(&self.code.g)?.is_zero());
        Ok(self.contract(c))
    }

    /// The n − k parity symbols appended to `msg`.
    pub fn parity(&self, msg: &Word) -> Result<Word> {
        let c = self.encode(msg)?;
        Ok(Word::from_raw(c.field(), c.symbols()[self.k()..].to_vec()))
    }

    /// The unique codeword within distance t of `recv`.
    pub fn correct(&self, recv: &Word) -> Result<Word> {
        if recv.len() != self.n() {
            return Err(Error::LengthMismatch(recv.len(), self.n()));
        }
        let full = self.expand(recv);
        let syn = padded(&full.rem(&self.code.g)?, self.code.n - self.code.k());
        let pattern = self
            .table
            .get(&syn)
            .ok_or_else(|| Error::Decode(format!("no codeword within distance {}", self.t)))?;
        let mut coeffs = padded(&full, self.code.n);
        for &(p, v) in pattern {
            coeffs[p] ^= v;
        }
        Ok(self.contract(&Poly::from_raw(self.code.field, coeffs)))
    }

    pub fn decode(&self, recv: &Word) -> Result<Word> {
        let c = self.correct(recv)?;
        Ok(Word::from_raw(c.field(), c.symbols()[..self.k()].to_vec()))
    }
}

pub fn systematic_encode(e: &LinearEncoder, msg: &Word) -> Result<Word> {
    e.encode(msg)
}

pub fn systematic_decode_bd(e: &LinearEncoder, recv: &Word) -> Result<Word> {
    e.correct(recv)
}

fn x_order_exceeds(hstar: &Poly, n: usize) -> Result<bool> {
    if hstar.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    let x = Poly::monomial(hstar.field(), 1, 1);
    let mut acc = x.rem(hstar)?;
    for _ in 1..n {
        if acc.is_one() {
            return Ok(false);
        }
        acc = acc.mul(&x).rem(hstar)?;
    }
    Ok(true)
}

const SUBSET_LIMIT: usize = 20;

/// Monic divisors h* of h with h* ∤ X^s − 1 for s ∈ [n−1], by ascending degree.
pub fn tavares_hstar_candidates(c: &CyclicCode) -> Result<Vec<Poly>> {
    let cyc = CyclotomicData::new(c.q(), c.n)?;
    let factors = cyc.factor(&c.h)?;
    if factors.len() > SUBSET_LIMIT {
        return Err(Error::Precondition(format!("h has {} irreducible factors", factors.len())));
    }
    let mut out = Vec::new();
    for mask in 1u32..(1 << factors.len()) {
        let d = factors
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold(Poly::one(c.field), |a, (_, f)| a.mul(f));
        if x_order_exceeds(&d, c.n)? {
            out.push(d);
        }
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(out)
}

/// Encoder m ↦ (m·h* + 1)·g whose images lie in distinct cyclic classes.
#[derive(Debug, Clone)]
pub struct TavaresEncoder {
    code: CyclicCode,
    hstar: Poly,
    kstar: usize,
    shifts: HashMap<Vec<u8>, usize>,
}

impl TavaresEncoder {
    pub fn new(code: CyclicCode, hstar: &Poly) -> Result<Self> {
        let hstar = hstar.with_field(code.field)?;
        let dh = hstar.degree().unwrap_or(0);
        if !hstar.is_monic() || dh == 0 || !hstar.divides(&code.h)? {
            return Err(Error::Precondition(format!("h* = {hstar} is not a monic proper divisor of h")));
        }
        if dh >= code.k() {
            return Err(Error::Precondition(format!("k* = k − deg h* = {} − {dh} < 1", code.k())));
        }
        let x = Poly::monomial(code.field, 1, 1);
        let mut shifts = HashMap::new();
        let mut acc = Poly::one(code.field);
        for s in 0..code.n {
            if shifts.insert(padded(&acc, dh), s).is_some() {
                return Err(Error::Precondition(format!("h* = {hstar} divides x^{s} - 1")));
            }
            acc = acc.mul(&x).rem(&hstar)?;
        }
        let kstar = code.k() - dh;
        Ok(TavaresEncoder { code, hstar, kstar, shifts })
    }

    pub fn code(&self) -> &CyclicCode {
        &self.code
    }

    pub fn hstar(&self) -> &Poly {
        &self.hstar
    }

    /// k* = k − deg h*.
    pub fn message_len(&self) -> usize {
        self.kstar
    }

    pub fn encode(&self, m: &Word) -> Result<Word> {
        if m.len() != self.kstar {
            return Err(Error::LengthMismatch(m.len(), self.kstar));
        }
        let m = Word::new(self.code.field, m.symbols().to_vec())?.to_poly();
        let u = m.mul(&self.hstar).add(&Poly::one(self.code.field));
        Word::from_poly(&u.mul(&self.code.g), self.code.n)
    }

    /// Recovers (m, s) with c = σ^s(encode(m)).
    pub fn decode(&self, c: &Word) -> Result<(Word, usize)> {
        let n = self.code.n;
        if c.len() != n {
            return Err(Error::LengthMismatch(c.len(), n));
        }
        let u = c
            .to_poly()
            .with_field(self.code.field)?
            .exact_div(&self.code.g)
            .map_err(|_| Error::Decode("word is not a codeword".into()))?;
        let key = padded(&u.rem(&self.hstar)?, self.hstar.degree().unwrap_or(0));
        let s = *self
            .shifts
            .get(&key)
            .ok_or_else(|| Error::Decode("word is not a shift of an encoded word".into()))?;
        let base = c.rotate_right(n - s).to_poly().exact_div(&self.code.g)?;
        let m = base
            .add(&Poly::one(self.code.field))
            .exact_div(&self.hstar)
            .map_err(|_| Error::Decode("word is not a shift of an encoded word".into()))?;
        Ok((Word::from_poly(&m, self.kstar)?, s))
    }
}

/// All GF(q)-words of length `len`, in base-q index order.
pub fn all_messages(field: BaseField, len: usize) -> Result<Vec<Word>> {
    let q = field.q() as u64;
    let size = q
        .checked_pow(len as u32)
        .filter(|&s| s <= 1 << 24)
        .ok_or_else(|| Error::Precondition(format!("{q}^{len} messages is too many to enumerate")))?;
    Ok((0..size)
        .map(|mut i| {
            let s = (0..len)
                .map(|_| {
                    let d = (i % q) as u8;
                    i /= q;
                    d
                })
                .collect();
            Word::from_raw(field, s)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{OMEGA as W, OMEGA_PLUS_ONE as W1};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p2(c: &[u8]) -> Poly {
        Poly::new(BaseField::Gf2, c.to_vec()).unwrap()
    }

    fn hamming() -> CyclicCode {
        code_from_generator(2, 7, &p2(&[1, 1, 0, 1])).unwrap()
    }

    fn example_code() -> CyclicCode {
        code_from_generator(4, 15, &Poly::new(BaseField::Gf4, vec![1, 1, W1, 1, W1, 1, 1]).unwrap()).unwrap()
    }

    fn min_weight(code: &CyclicCode) -> usize {
        code.codewords().unwrap().iter().map(Word::weight).filter(|&w| w > 0).min().unwrap()
    }

    #[test]
    fn generator_validation() {
        let c = hamming();
        assert_eq!((c.n(), c.k()), (7, 4));
        assert_eq!(c.generator().mul(c.check_poly()), Poly::x_n_minus_one(BaseField::Gf2, 7));
        let e = example_code();
        assert_eq!((e.n(), e.k()), (15, 9));
        assert!(matches!(code_from_generator(2, 7, &p2(&[1, 0, 1])), Err(Error::InvalidCode(_))));
        assert!(code_from_generator(2, 8, &p2(&[1, 1])).is_err());
        assert!(code_from_generator(4, 7, &Poly::new(BaseField::Gf4, vec![W, W]).unwrap()).is_err());
        assert!(code_from_generator(2, 7, &Poly::x_n_minus_one(BaseField::Gf2, 7)).is_err());
    }

    #[test]
    fn properties() {
        assert_eq!(
            hamming().properties(),
            CodeProperties { contains_all_one: true, reversible: false }
        );
        assert_eq!(
            example_code().properties(),
            CodeProperties { contains_all_one: true, reversible: true }
        );
        let even = code_from_generator(2, 7, &p2(&[1, 1])).unwrap();
        assert!(!even.properties().contains_all_one);
    }

    #[test]
    fn bch_small() {
        let c = bch_narrow_sense(3, 3).unwrap();
        assert_eq!(c.generator(), &p2(&[1, 1, 0, 1]));
        assert_eq!(min_weight(&c), 3);
        let c = bch_narrow_sense(4, 5).unwrap();
        assert_eq!((c.n(), c.k(), c.generator().degree()), (15, 7, Some(8)));
        assert_eq!(min_weight(&c), 5);
        let c = bch_narrow_sense(6, 5).unwrap();
        assert_eq!((c.n(), c.k()), (63, 51));
        assert!(c.k() >= 63 - 2 * 6);
        assert!(bch_narrow_sense(3, 8).is_err());
        assert!(bch_narrow_sense(3, 1).is_err());
    }

    #[test]
    fn bch_bound_exhaustive() {
        for m in 3..=5 {
            for d in 2..(1usize << m) {
                let c = bch_narrow_sense(m, d).unwrap();
                if c.k() <= 20 {
                    assert!(min_weight(&c) >= d, "m={m} d={d}");
                }
                let t = (d - 1).div_ceil(2);
                assert!(c.k() + t * m as usize >= c.n());
            }
        }
    }

    #[test]
    fn reversible_family() {
        for (q, m) in [(2, 3), (2, 4), (2, 5), (4, 2)] {
            let n = (q as usize).pow(m) - 1;
            for delta in 2..n {
                let c = reversible_bch(q, m, delta).unwrap();
                assert_eq!(c.properties(), CodeProperties { contains_all_one: true, reversible: true });
                let limit = if q == 2 { 20 } else { 10 };
                if c.k() <= limit {
                    assert!(min_weight(&c) >= delta, "q={q} m={m} δ={delta}");
                }
            }
        }
        let c = reversible_bch(4, 2, 3).unwrap();
        assert_eq!(c.n(), 15);
        assert!(c.k() <= li_dimension(4, 2, 1));
        assert!(min_weight(&c) >= 3);
        assert!(reversible_bch(4, 2, 15).is_err());
    }

    /// Closed-form dimension of the reversible family.
    fn li_dimension(q: usize, m: u32, tau: u32) -> usize {
        let n = q.pow(m) - 1;
        let d = q.pow(tau) - 1;
        if m >= 5 && m % 2 == 1 && tau == m.div_ceil(2) {
            n - (d - q + 1) * m as usize
        } else {
            n - (d - 1) * m as usize
        }
    }

    #[test]
    fn li_dimension_cross_check_binary() {
        for m in 4..=7u32 {
            for tau in 1..=m.div_ceil(2) {
                let delta = (1usize << tau) - 1;
                if delta < 2 {
                    continue;
                }
                let c = reversible_bch(2, m, delta).unwrap();
                assert_eq!(c.k(), li_dimension(2, m, tau), "m={m} τ={tau}");
            }
        }
    }

    #[test]
    fn hamming_single_error_census() {
        let c = hamming().with_distance(Distance { value: 3, status: DistanceStatus::Exact });
        let enc = LinearEncoder::new(c.clone(), 0).unwrap();
        assert_eq!(enc.encode(&Word::zeros(BaseField::Gf2, 4)).unwrap(), Word::zeros(BaseField::Gf2, 7));
        for msg in all_messages(BaseField::Gf2, 4).unwrap() {
            let cw = enc.encode(&msg).unwrap();
            assert!(c.contains(&cw));
            assert_eq!(&cw.symbols()[..4], msg.symbols());
            assert_eq!(enc.decode(&cw).unwrap(), msg);
            for pos in 0..7 {
                let bad = cw.add(&Word::from_poly(&Poly::monomial(BaseField::Gf2, 1, pos), 7).unwrap()).unwrap();
                assert_eq!(enc.decode(&bad).unwrap(), msg);
            }
        }
    }

    #[test]
    fn shortened_bch_two_errors() {
        let enc = LinearEncoder::new(bch_narrow_sense(6, 5).unwrap(), 19).unwrap();
        assert_eq!((enc.n(), enc.k(), enc.radius()), (44, 32, 2));
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let msg = Word::new(BaseField::Gf2, (0..32).map(|_| rng.gen_range(0..2)).collect()).unwrap();
            let cw = enc.encode(&msg).unwrap();
            let mut s = cw.clone().into_symbols();
            let a = rng.gen_range(0..44);
            let mut b = rng.gen_range(0..44);
            while b == a {
                b = rng.gen_range(0..44);
            }
            s[a] ^= 1;
            s[b] ^= 1;
            let bad = Word::new(BaseField::Gf2, s).unwrap();
            assert_eq!(enc.correct(&bad).unwrap(), cw);
            assert_eq!(enc.decode(&bad).unwrap(), msg);
        }
    }

    #[test]
    fn quaternary_decoder_and_failure() {
        let c = example_code().with_distance(Distance { value: 5, status: DistanceStatus::Exact });
        let enc = LinearEncoder::new(c, 0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let msg = Word::new(BaseField::Gf4, (0..9).map(|_| rng.gen_range(0..4)).collect()).unwrap();
            let cw = enc.encode(&msg).unwrap();
            let mut s = cw.into_symbols();
            s[rng.gen_range(0..15)] ^= rng.gen_range(1..4);
            s[rng.gen_range(0..15)] ^= rng.gen_range(1..4);
            assert_eq!(enc.decode(&Word::new(BaseField::Gf4, s).unwrap()).unwrap(), msg);
        }
        // radius above capability is refused
        assert!(LinearEncoder::with_radius(hamming(), 0, 2).is_err());
        let rep = code_from_generator(2, 5, &p2(&[1, 1, 1, 1, 1])).unwrap();
        let enc = LinearEncoder::with_radius(rep, 0, 1).unwrap();
        assert!(matches!(enc.decode(&Word::from_bits("11000").unwrap()), Err(Error::Decode(_))));
    }

    #[test]
    fn hamming_hstar_candidates() {
        let c = hamming();
        let cands = tavares_hstar_candidates(&c).unwrap();
        assert!(cands.contains(&p2(&[1, 0, 1, 1])));
        assert!(!cands.contains(&p2(&[1, 1])));
        for w in cands.windows(2) {
            assert!(w[0].degree() <= w[1].degree());
        }
    }

    #[test]
    fn example_hstar_is_a_candidate() {
        let hstar = Poly::new(BaseField::Gf4, vec![1, W, W, W, 1]).unwrap();
        assert!(tavares_hstar_candidates(&example_code()).unwrap().contains(&hstar));
    }

    #[test]
    fn hamming_tavares() {
        let t = TavaresEncoder::new(hamming(), &p2(&[1, 0, 1, 1])).unwrap();
        assert_eq!(t.message_len(), 1);
        let zero = t.encode(&Word::from_bits("0").unwrap()).unwrap();
        assert_eq!(zero.to_poly(), p2(&[1, 1, 0, 1]));
        let one = t.encode(&Word::from_bits("1").unwrap()).unwrap();
        assert_eq!(one.to_poly(), p2(&[0, 0, 1, 0, 1, 1, 1]));
        assert_eq!((zero.weight(), one.weight()), (3, 4));
        for (m, cw) in [("0", &zero), ("1", &one)] {
            for s in 0..7 {
                let (dm, ds) = t.decode(&cw.rotate_right(s)).unwrap();
                assert_eq!((dm.render().as_str(), ds), (m, s));
            }
        }
        assert!(TavaresEncoder::new(hamming(), &p2(&[1, 1])).is_err());
        assert!(matches!(t.decode(&Word::from_bits("1000000").unwrap()), Err(Error::Decode(_))));
    }

    #[test]
    fn tavares_classes_distinct_exhaustive() {
        let cases = [
            (hamming(), None),
            (bch_narrow_sense(4, 5).unwrap(), None),
            (bch_narrow_sense(4, 3).unwrap(), None),
            (example_code(), Some(Poly::new(BaseField::Gf4, vec![1, W, W, W, 1]).unwrap())),
        ];
        for (code, hs) in cases {
            let hstars = match hs {
                Some(h) => vec![h],
                None => tavares_hstar_candidates(&code).unwrap(),
            };
            for hstar in hstars {
                let Ok(t) = TavaresEncoder::new(code.clone(), &hstar) else { continue };
                let msgs = all_messages(code.field(), t.message_len()).unwrap();
                let mut seen = HashMap::new();
                for (i, m) in msgs.iter().enumerate() {
                    let c = t.encode(m).unwrap();
                    assert!(code.contains(&c));
                    for s in 0..code.n() {
                        if let Some(j) = seen.insert(c.rotate_right(s), i) {
                            assert_eq!(j, i, "two encodings share a cyclic class");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn max_run_below_dimension() {
        let codes = [
            hamming(),
            bch_narrow_sense(4, 5).unwrap(),
            code_from_generator(2, 15, &p2(&[1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1])).unwrap(),
            reversible_bch(2, 4, 3).unwrap(),
            reversible_bch(4, 2, 3).unwrap(),
        ];
        for c in codes {
            if !c.properties().contains_all_one {
                continue;
            }
            for w in c.codewords().unwrap() {
                if w.symbols().iter().any(|&s| s != w.symbols()[0]) {
                    assert!(w.max_run() < c.k(), "{w} in k={}", c.k());
                }
            }
        }
        let e = example_code();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let w = e.codeword(rng.gen_range(0..4u64.pow(9)));
            if w.symbols().iter().any(|&s| s != w.symbols()[0]) {
                assert!(w.max_run() <= 8);
            }
        }
    }

    #[test]
    fn cyclotomic_factorization() {
        let cyc = CyclotomicData::new(2, 15).unwrap();
        assert_eq!(cyc.coset_of(3), &[3, 6, 12, 9]);
        let f = cyc.factor(&Poly::x_n_minus_one(BaseField::Gf2, 15)).unwrap();
        assert_eq!(f.iter().map(|p| p.degree().unwrap()).sum::<usize>(), 15);
        assert!(cyc.factor(&p2(&[1, 0, 1])).is_err());
    }
}
