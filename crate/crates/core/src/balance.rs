//! Knuth balancing, the shift-then-flip balancing of odd-length words, the
//! binary balanced code built from cyclic-class representatives, the coupling
//! map Ψ, and the GC-balanced code built from two binary codes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cyclic::{CyclicCode, LinearEncoder, TavaresEncoder};
use crate::error::{Error, Result};
use crate::gf::BaseField;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BalanceMode {
    Balanced,
    GcBalanced,
    Almost,
}

/// Smallest z such that flipping the first z bits balances `w`.
pub fn knuth_index(w: &Word) -> usize {
    let n = w.len();
    let mut ones = w.weight();
    let ok = |c: usize| c == n / 2 || c == n.div_ceil(2);
    for z in 0..n {
        if ok(ones) {
            return z;
        }
        if w.symbols()[z] == 0 {
            ones += 1;
        } else {
            ones -= 1;
        }
    }
    debug_assert!(ok(ones));
    n
}

/// Smallest i with φ(σⁱ(w)) balanced (GF(2)) or GC-balanced (GF(4)), where φ
/// flips the first (n+1)/2 symbols.
pub fn balancing_shift(w: &Word) -> Result<(usize, Word)> {
    let n = w.len();
    if n.is_multiple_of(2) {
        return Err(Error::Precondition(format!("balancing shift needs odd n, got {n}")));
    }
    for i in 0..n {
        let v = w.rotate_right(i).flip_prefix(n.div_ceil(2))?;
        if v.is_balanced() {
            return Ok((i, v));
        }
    }
    Err(Error::SearchExhausted(format!("no balancing shift for {w}")))
}

/// Ψ(a, b): symbol 2aᵢ + bᵢ, i.e. 00→A, 01→T, 10→C, 11→G.
pub fn couple(a: &Word, b: &Word) -> Result<Word> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    for w in [a, b] {
        if w.field() != BaseField::Gf2 {
            return Err(Error::FieldMismatch(2, w.field().q()));
        }
    }
    let s = a.symbols().iter().zip(b.symbols()).map(|(x, y)| 2 * x + y).collect();
    Word::new(BaseField::Gf4, s)
}

/// Ψ⁻¹.
pub fn decouple(c: &Word) -> (Word, Word) {
    let a = c.symbols().iter().map(|s| s >> 1).collect();
    let b = c.symbols().iter().map(|s| s & 1).collect();
    (Word::new(BaseField::Gf2, a).unwrap(), Word::new(BaseField::Gf2, b).unwrap())
}

fn with_check_bit(v: Word) -> Word {
    let bit = if v.weight() == v.len().div_ceil(2) { 0 } else { 1 };
    v.concat(&Word::constant(BaseField::Gf2, bit, 1))
}

/// Lexicographically least rotation.
pub fn canonical_rotation(w: &Word) -> Word {
    (0..w.len().max(1)).map(|i| w.rotate_right(i)).min().unwrap_or_else(|| w.clone())
}

/// Balanced binary code of length n+1 from a binary cyclic code of odd length n.
#[derive(Debug, Clone)]
pub struct BinBalancedCode {
    tavares: TavaresEncoder,
}

impl BinBalancedCode {
    pub fn new(code: CyclicCode, hstar: &crate::poly::Poly) -> Result<Self> {
        if code.field() != BaseField::Gf2 {
            return Err(Error::Precondition("binary cyclic code required".into()));
        }
        Ok(BinBalancedCode { tavares: TavaresEncoder::new(code, hstar)? })
    }

    pub fn tavares(&self) -> &TavaresEncoder {
        &self.tavares
    }

    pub fn n(&self) -> usize {
        self.tavares.code().n() + 1
    }

    pub fn message_len(&self) -> usize {
        self.tavares.message_len()
    }

    /// Number of encodable messages, 2^{k*}.
    pub fn size(&self) -> u64 {
        1 << self.message_len()
    }

    /// 2ⁿ/n lower bound on the number of cyclic classes of the input code.
    pub fn class_bound(&self) -> f64 {
        let c = self.tavares.code();
        2f64.powi(c.k() as i32) / c.n() as f64
    }

    /// Claimed distance 2⌈d/2⌉ from the input code's recorded distance.
    pub fn claimed_distance(&self) -> Option<usize> {
        self.tavares.code().distance().map(|d| 2 * d.value.div_ceil(2))
    }

    pub fn encode(&self, m: &Word) -> Result<Word> {
        let u = self.tavares.encode(m)?;
        let (_, v) = balancing_shift(&u)?;
        Ok(with_check_bit(v))
    }

    pub fn decode(&self, w: &Word) -> Result<Word> {
        if w.len() != self.n() {
            return Err(Error::LengthMismatch(w.len(), self.n()));
        }
        let n = self.n() - 1;
        let v = w.subword(1, n)?;
        let shifted = v.flip_prefix(n.div_ceil(2))?;
        Ok(self.tavares.decode(&shifted)?.0)
    }

    /// Every encodable codeword, in message order.
    pub fn codewords(&self) -> Result<Vec<Word>> {
        crate::cyclic::all_messages(BaseField::Gf2, self.message_len())?
            .iter()
            .map(|m| self.encode(m))
            .collect()
    }
}

/// Census mode: one balanced word per cyclic class of `code`, keyed by the
/// lexicographically least rotation.
pub fn bin_balanced_census(code: &CyclicCode) -> Result<Vec<Word>> {
    if code.field() != BaseField::Gf2 {
        return Err(Error::Precondition("binary cyclic code required".into()));
    }
    let mut classes = BTreeMap::new();
    for w in code.codewords()? {
        classes.entry(canonical_rotation(&w)).or_insert(());
    }
    classes
        .into_keys()
        .map(|u| balancing_shift(&u).map(|(_, v)| with_check_bit(v)))
        .collect()
}

pub fn construct_bin_balanced(code: CyclicCode, hstar: &crate::poly::Poly) -> Result<BinBalancedCode> {
    BinBalancedCode::new(code, hstar)
}

/// GC-balanced quaternary code from an [n+p, n] systematic code A and a
/// length-n code B carrying (i, j, parity) through its message space.
#[derive(Debug, Clone)]
pub struct GcBalancedCode {
    a: LinearEncoder,
    b: LinearEncoder,
    p: usize,
    multiplicity: u64,
}

impl GcBalancedCode {
    pub fn new(a: LinearEncoder, b: LinearEncoder, multiplicity: u64) -> Result<Self> {
        let n = a.k();
        let p = a.n() - a.k();
        if a.code().field() != BaseField::Gf2 || b.code().field() != BaseField::Gf2 {
            return Err(Error::Precondition("A and B must be binary".into()));
        }
        if b.n() != n {
            return Err(Error::Precondition(format!("B has length {}, expected {n}", b.n())));
        }
        let needed = ((multiplicity as u128) * (n as u128)) << p;
        if multiplicity == 0 || needed > 1u128 << b.k() {
            return Err(Error::Capacity(format!(
                "|B| = 2^{} < 2^{p}·{n}·{multiplicity}",
                b.k()
            )));
        }
        Ok(GcBalancedCode { a, b, p, multiplicity })
    }

    /// The largest multiplicity B supports, ⌊|B|/(2^p·n)⌋.
    pub fn max_multiplicity(a: &LinearEncoder, b: &LinearEncoder) -> u64 {
        let p = a.n() - a.k();
        ((1u128 << b.k()) / ((a.k() as u128) << p)) as u64
    }

    pub fn n(&self) -> usize {
        self.a.k()
    }

    pub fn parity_len(&self) -> usize {
        self.p
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn radius(&self) -> usize {
        self.a.radius().min(self.b.radius())
    }

    fn pack(&self, i: u64, j: usize, parity: &Word) -> Word {
        let p_int = parity.symbols().iter().enumerate().fold(0u64, |acc, (k, &b)| acc | (b as u64) << k);
        let idx = ((i * self.n() as u64 + j as u64) << self.p) | p_int;
        let bits = (0..self.b.k()).map(|k| ((idx >> k) & 1) as u8).collect();
        Word::new(BaseField::Gf2, bits).unwrap()
    }

    fn unpack(&self, msg: &Word) -> Result<(u64, usize, Word)> {
        let idx = msg.symbols().iter().enumerate().fold(0u64, |acc, (k, &b)| acc | (b as u64) << k);
        let parity = (0..self.p).map(|k| ((idx >> k) & 1) as u8).collect();
        let rest = idx >> self.p;
        let (i, j) = (rest / self.n() as u64, (rest % self.n() as u64) as usize);
        if i >= self.multiplicity {
            return Err(Error::Decode(format!("multiplicity index {i} out of range")));
        }
        Ok((i, j, Word::new(BaseField::Gf2, parity)?))
    }

    /// Encodes a message m ∈ GF(2)ⁿ together with an index i ∈ ⟦M⟧.
    pub fn encode(&self, m: &Word, i: u64) -> Result<Word> {
        if m.len() != self.n() {
            return Err(Error::LengthMismatch(m.len(), self.n()));
        }
        if i >= self.multiplicity {
            return Err(Error::IndexOutOfRange { index: i as usize, len: self.multiplicity as usize });
        }
        let j = knuth_index(m);
        let a = m.flip_prefix(j)?;
        let parity = self.a.parity(&a)?;
        let b = self.b.encode(&self.pack(i, j, &parity))?;
        couple(&a, &b)
    }

    pub fn decode(&self, c: &Word) -> Result<(Word, u64)> {
        if c.len() != self.n() {
            return Err(Error::LengthMismatch(c.len(), self.n()));
        }
        let (a_hat, b_hat) = decouple(c);
        let (i, j, parity) = self.unpack(&self.b.decode(&b_hat)?)?;
        let a = self.a.decode(&a_hat.concat(&parity))?;
        Ok((a.flip_prefix(j)?, i))
    }
}

pub fn construct_gc_balanced(a: LinearEncoder, b: LinearEncoder, multiplicity: u64) -> Result<GcBalancedCode> {
    GcBalancedCode::new(a, b, multiplicity)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{bch_narrow_sense, all_messages, code_from_generator};
    use crate::poly::Poly;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn hamming_bal() -> BinBalancedCode {
        let code = code_from_generator(2, 7, &Poly::new(BaseField::Gf2, vec![1, 1, 0, 1]).unwrap()).unwrap();
        BinBalancedCode::new(code, &Poly::new(BaseField::Gf2, vec![1, 0, 1, 1]).unwrap()).unwrap()
    }

    #[test]
    fn knuth_examples() {
        assert_eq!(knuth_index(&Word::zeros(BaseField::Gf2, 8)), 4);
        assert_eq!(knuth_index(&Word::from_bits("00001111").unwrap()), 0);
        assert_eq!(knuth_index(&Word::ones(BaseField::Gf2, 7)), 3);
    }

    #[test]
    fn knuth_exhaustive() {
        for n in 4..=16 {
            for w in all_messages(BaseField::Gf2, n).unwrap() {
                let z = knuth_index(&w);
                assert!(z < n);
                assert!(w.flip_prefix(z).unwrap().is_balanced());
                for y in 0..z {
                    assert!(!w.flip_prefix(y).unwrap().is_balanced());
                }
            }
        }
    }

    #[test]
    fn shift_of_all_ones() {
        let (i, v) = balancing_shift(&Word::ones(BaseField::Gf2, 7)).unwrap();
        assert_eq!(i, 0);
        assert_eq!(v.render(), "0000111");
        assert!(balancing_shift(&Word::ones(BaseField::Gf2, 6)).is_err());
    }

    #[test]
    fn coupling_table() {
        let a = Word::from_bits("01").unwrap();
        assert_eq!(couple(&a, &a).unwrap().render(), "AG");
        let c = couple(&Word::ones(BaseField::Gf2, 5), &Word::zeros(BaseField::Gf2, 5)).unwrap();
        assert_eq!(c.render(), "CCCCC");
        assert!(couple(&a, &Word::ones(BaseField::Gf2, 3)).is_err());
        let (x, y) = decouple(&Word::from_dna("ATCG").unwrap());
        assert_eq!((x.render(), y.render()), ("0011".into(), "0101".into()));
    }

    #[test]
    fn hamming_balanced_code() {
        let b = hamming_bal();
        let words = b.codewords().unwrap();
        assert_eq!(words.len(), 2);
        for (i, w) in words.iter().enumerate() {
            assert_eq!((w.len(), w.weight()), (8, 4));
            for x in &words[i + 1..] {
                assert!(w.distance(x).unwrap() >= 4);
            }
        }
        for m in ["0", "1"] {
            let m = Word::from_bits(m).unwrap();
            assert_eq!(b.decode(&b.encode(&m).unwrap()).unwrap(), m);
        }
        assert!(b.class_bound() > b.size() as f64);
    }

    #[test]
    fn census_mode() {
        let code = bch_narrow_sense(3, 3).unwrap();
        let words = bin_balanced_census(&code).unwrap();
        assert_eq!(words.len(), 4);
        for (i, w) in words.iter().enumerate() {
            assert_eq!(w.weight(), 4);
            for x in &words[i + 1..] {
                assert!(w.distance(x).unwrap() >= 4);
            }
        }
        let code = bch_narrow_sense(4, 5).unwrap();
        let words = bin_balanced_census(&code).unwrap();
        assert!(words.len() as f64 >= 128.0 / 15.0);
        for w in &words {
            assert_eq!(w.weight(), 8);
        }
    }

    fn gc_instance() -> GcBalancedCode {
        let a = LinearEncoder::new(bch_narrow_sense(5, 3).unwrap(), 0).unwrap();
        let b = LinearEncoder::new(bch_narrow_sense(5, 3).unwrap(), 5).unwrap();
        let m = GcBalancedCode::max_multiplicity(&a, &b);
        assert_eq!(m, 2520);
        GcBalancedCode::new(a, b, m).unwrap()
    }

    #[test]
    fn gc_balanced_round_trip() {
        let code = gc_instance();
        assert_eq!((code.n(), code.parity_len()), (26, 5));
        let zero = Word::zeros(BaseField::Gf2, 26);
        let c = code.encode(&zero, 1).unwrap();
        assert!(c.is_balanced());
        assert_eq!(code.decode(&c).unwrap(), (zero, 1));
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let m = Word::new(BaseField::Gf2, (0..26).map(|_| rng.gen_range(0..2)).collect()).unwrap();
            let i = rng.gen_range(0..2520);
            let c = code.encode(&m, i).unwrap();
            assert!(c.is_balanced());
            let mut s = c.into_symbols();
            s[rng.gen_range(0..26)] ^= rng.gen_range(1..4);
            assert_eq!(code.decode(&Word::new(BaseField::Gf4, s).unwrap()).unwrap(), (m, i));
        }
        assert!(code.encode(&Word::zeros(BaseField::Gf2, 26), 2520).is_err());
        let a = LinearEncoder::new(bch_narrow_sense(5, 3).unwrap(), 0).unwrap();
        let b = LinearEncoder::new(bch_narrow_sense(5, 3).unwrap(), 5).unwrap();
        assert!(matches!(GcBalancedCode::new(a, b, 2521), Err(Error::Capacity(_))));
    }

    proptest! {
        #[test]
        fn coupling_weight_and_distance(
            a in prop::collection::vec(0u8..2, 16),
            b in prop::collection::vec(0u8..2, 16),
            a2 in prop::collection::vec(0u8..2, 16),
            b2 in prop::collection::vec(0u8..2, 16),
        ) {
            let w = |s: Vec<u8>| Word::new(BaseField::Gf2, s).unwrap();
            let (a, b, a2, b2) = (w(a), w(b), w(a2), w(b2));
            let c = couple(&a, &b).unwrap();
            let c2 = couple(&a2, &b2).unwrap();
            prop_assert_eq!(c.gc_count(), a.weight());
            let d = c.distance(&c2).unwrap();
            prop_assert!(d >= a.distance(&a2).unwrap().max(b.distance(&b2).unwrap()));
        }

        #[test]
        fn balancing_shift_quaternary(s in prop::collection::vec(0u8..4, 1..40usize)) {
            let n = s.len() | 1;
            let mut s = s;
            s.resize(n, 0);
            let w = Word::new(BaseField::Gf4, s).unwrap();
            let (i, v) = balancing_shift(&w).unwrap();
            prop_assert!(v.is_balanced());
            prop_assert_eq!(v.flip_prefix(n.div_ceil(2)).unwrap(), w.rotate_right(i));
        }
    }
}
