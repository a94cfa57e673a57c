//! GC-balanced DNA computing codes: coset words from an rc2-generating set,
//! rotated and masked by π until GC-balanced.

use serde::{Deserialize, Serialize};

use crate::cyclic::CyclicCode;
use crate::error::{Error, Result};
use crate::gf::{BaseField, OMEGA};
use crate::primer::{RcEncoder, RcFlavor, RcGenSet};
use crate::word::Word;

/// π(w) = w + ω^s 0^{n−2s} ω^s with s ∈ {(n−1)/4, (n+1)/4}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiParams {
    pub n: usize,
    pub s: usize,
    pub mask: Word,
}

impl PiParams {
    pub fn new(n: usize) -> Result<Self> {
        if n.is_multiple_of(2) {
            return Err(Error::Precondition(format!("π needs odd n, got {n}")));
        }
        let s = if (n - 1).is_multiple_of(4) { (n - 1) / 4 } else { (n + 1) / 4 };
        let mut m = vec![OMEGA; s];
        m.extend(std::iter::repeat_n(0, n - 2 * s));
        m.extend(std::iter::repeat_n(OMEGA, s));
        Ok(PiParams { n, s, mask: Word::new(BaseField::Gf4, m)? })
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.len() != self.n {
            return Err(Error::LengthMismatch(w.len(), self.n));
        }
        Word::new(BaseField::Gf4, w.symbols().to_vec())?.add(&self.mask)
    }
}

pub fn pi_map(w: &Word) -> Result<Word> {
    PiParams::new(w.len())?.apply(w)
}

fn gc_balanced(w: &Word) -> bool {
    let (c, n) = (w.gc_count(), w.len());
    c == n / 2 || c == n.div_ceil(2)
}

/// v = π(σ^i(u)) for the smallest GC-balancing i.
#[derive(Debug, Clone)]
pub struct DnaComputingCode {
    enc: RcEncoder,
    pi: PiParams,
}

pub fn construct_dna_computing(code: CyclicCode, set: RcGenSet) -> Result<DnaComputingCode> {
    DnaComputingCode::new(code, set)
}

impl DnaComputingCode {
    pub fn new(code: CyclicCode, set: RcGenSet) -> Result<Self> {
        if code.field() != BaseField::Gf4 {
            return Err(Error::Precondition("DNA computing codes are quaternary".into()));
        }
        let pi = PiParams::new(code.n())?;
        Ok(DnaComputingCode { enc: RcEncoder::new(code, set, RcFlavor::Rc2)?, pi })
    }

    pub fn encoder(&self) -> &RcEncoder {
        &self.enc
    }

    pub fn pi(&self) -> &PiParams {
        &self.pi
    }

    pub fn n(&self) -> usize {
        self.pi.n
    }

    pub fn size(&self) -> u64 {
        self.enc.size()
    }

    fn balance(&self, u: &Word) -> Result<Word> {
        for i in 0..self.n() {
            let v = self.pi.apply(&u.rotate_right(i))?;
            if gc_balanced(&v) {
                return Ok(v);
            }
        }
        Err(Error::SearchExhausted(format!("no shift of {u} is GC-balanced under π")))
    }

    pub fn encode(&self, m: &Word, i: usize) -> Result<Word> {
        self.balance(&self.enc.encode(m, i)?)
    }

    /// Tries every shift of π(v) for membership.
    pub fn decode(&self, v: &Word) -> Result<(Word, usize)> {
        let n = self.n();
        let base = self.pi.apply(v)?;
        for i in 0..n {
            if let Ok((m, p)) = self.enc.decode(&base.rotate_right((n - i) % n)) {
                if self.encode(&m, p)? == *v {
                    return Ok((m, p));
                }
            }
        }
        Err(Error::Decode("no shift of π(v) is an encoded word".into()))
    }

    /// Words with deg m < `t`, ordered by class then message index.
    pub fn sub_codebook(&self, t: usize) -> Result<Vec<Word>> {
        self.enc.sub_codebook(t)?.iter().map(|u| self.balance(u)).collect()
    }

    pub fn codewords(&self) -> Result<Vec<Word>> {
        self.sub_codebook(self.enc.message_len())
    }

    pub fn redundancy(&self) -> f64 {
        self.n() as f64 - (self.size() as f64).log(4.0)
    }

    pub fn redundancy_bound(&self) -> Option<f64> {
        let d = self.enc.code().distance()?.value as f64;
        Some((d + 1.0) * ((self.n() + 1) as f64).log(4.0))
    }
}
