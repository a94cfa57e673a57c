//! Fixed-length words over GF(q) and the word-level transforms used by the
//! constructions: cyclic shifts, reverse, complement, prefix flips, subwords
//! and the weight/distance metrics.
//!
//! Words are indexed from 0. `subword` is the only place the 1-indexed
//! convention `a[i, j]` appears; for `i > j` it returns the segment read
//! backwards.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{self, BaseField, DnaWord};
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    field: BaseField,
    symbols: Vec<u8>,
}

impl Word {
    pub fn new(field: BaseField, symbols: Vec<u8>) -> Result<Self> {
        for &s in &symbols {
            field.check(s)?;
        }
        Ok(Word { field, symbols })
    }

    pub(crate) fn from_raw(field: BaseField, symbols: Vec<u8>) -> Self {
        Word { field, symbols }
    }

    pub fn constant(field: BaseField, symbol: u8, n: usize) -> Self {
        Word { field, symbols: vec![symbol; n] }
    }

    pub fn zeros(field: BaseField, n: usize) -> Self {
        Self::constant(field, 0, n)
    }

    pub fn ones(field: BaseField, n: usize) -> Self {
        Self::constant(field, 1, n)
    }

    /// Word of length `n` holding the coefficients of `p`.
    pub fn from_poly(p: &Poly, n: usize) -> Result<Self> {
        if let Some(d) = p.degree() {
            if d >= n {
                return Err(Error::IndexOutOfRange { index: d, len: n });
            }
        }
        let mut symbols = p.coeffs().to_vec();
        symbols.resize(n, 0);
        Ok(Word { field: p.field(), symbols })
    }

    /// Parses a DNA string into a GF(4) word.
    pub fn from_dna(s: &str) -> Result<Self> {
        Ok(Word { field: BaseField::Gf4, symbols: DnaWord::parse(s)?.to_symbols() })
    }

    /// Parses a 0/1 string into a binary word.
    pub fn from_bits(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::BadSymbol(c.to_string())),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Word { field: BaseField::Gf2, symbols })
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_raw(self.field, self.symbols.clone())
    }

    pub fn to_dna(&self) -> Result<DnaWord> {
        DnaWord::from_symbols(&self.symbols)
    }

    /// DNA letters over GF(4), digits otherwise.
    pub fn render(&self) -> String {
        match self.field {
            BaseField::Gf4 => self.to_dna().expect("GF(4) symbols").to_string(),
            BaseField::Gf2 => self.symbols.iter().map(|s| char::from(b'0' + s)).collect(),
        }
    }

    pub fn field(&self) -> BaseField {
        self.field
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Word { field: self.field.join(other.field), symbols }
    }

    /// σⁱ: cyclic shift to the right by `i` places, any `i` (taken mod n).
    pub fn rotate_right(&self, i: usize) -> Word {
        let mut symbols = self.symbols.clone();
        if !symbols.is_empty() {
            symbols.rotate_right(i % self.len());
        }
        Word { field: self.field, symbols }
    }

    /// σⁱ for `i` in ⟦n⟧.
    pub fn shift(&self, i: usize) -> Result<Word> {
        if i >= self.len().max(1) {
            return Err(Error::IndexOutOfRange { index: i, len: self.len() });
        }
        Ok(self.rotate_right(i))
    }

    pub fn reverse(&self) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Word { field: self.field, symbols }
    }

    /// Adds 1 to every symbol (Watson-Crick pairing over GF(4)).
    pub fn complement(&self) -> Word {
        Word { field: self.field, symbols: self.symbols.iter().map(|s| s ^ 1).collect() }
    }

    pub fn reverse_complement(&self) -> Word {
        self.reverse().complement()
    }

    /// Adds the field's flip constant (1 or ω) to the first `len` symbols.
    pub fn flip_prefix(&self, len: usize) -> Result<Word> {
        if len > self.len() {
            return Err(Error::IndexOutOfRange { index: len, len: self.len() });
        }
        let f = self.field.flip_symbol();
        let mut symbols = self.symbols.clone();
        for s in &mut symbols[..len] {
            *s ^= f;
        }
        Ok(Word { field: self.field, symbols })
    }

    /// Symbol-wise sum with `other`.
    pub fn add(&self, other: &Word) -> Result<Word> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(Word {
            field: self.field.join(other.field),
            symbols: self.symbols.iter().zip(&other.symbols).map(|(a, b)| gf::add(*a, *b)).collect(),
        })
    }

    /// `a[i, j]` with 1-indexed inclusive bounds; reversed when `i > j`.
    pub fn subword(&self, i: usize, j: usize) -> Result<Word> {
        let n = self.len();
        for idx in [i, j] {
            if idx == 0 || idx > n {
                return Err(Error::IndexOutOfRange { index: idx, len: n });
            }
        }
        let symbols = if i <= j {
            self.symbols[i - 1..j].to_vec()
        } else {
            self.symbols[j - 1..i].iter().rev().copied().collect()
        };
        Ok(Word { field: self.field, symbols })
    }

    pub fn weight(&self) -> usize {
        self.symbols.iter().filter(|&&s| s != 0).count()
    }

    /// Weight of the first ⌈n/2⌉ positions (defined for odd n).
    pub fn weight_first_half(&self) -> Option<usize> {
        let n = self.len();
        (n % 2 == 1).then(|| self.symbols[..n.div_ceil(2)].iter().filter(|&&s| s != 0).count())
    }

    /// Weight of the last ⌊n/2⌋ positions (defined for odd n).
    pub fn weight_second_half(&self) -> Option<usize> {
        let n = self.len();
        (n % 2 == 1).then(|| self.symbols[n.div_ceil(2)..].iter().filter(|&&s| s != 0).count())
    }

    /// Number of symbols equal to ω or ω+1, i.e. C or G.
    pub fn gc_count(&self) -> usize {
        self.symbols.iter().filter(|&&s| s >= 2).count()
    }

    pub fn distance(&self, other: &Word) -> Result<usize> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(self.symbols.iter().zip(&other.symbols).filter(|(a, b)| a != b).count())
    }

    /// Binary: ⌊n/2⌋ or ⌈n/2⌉ ones. Quaternary: that many C/G symbols.
    pub fn is_balanced(&self) -> bool {
        let n = self.len();
        let c = match self.field {
            BaseField::Gf2 => self.weight(),
            BaseField::Gf4 => self.gc_count(),
        };
        c == n / 2 || c == n.div_ceil(2)
    }

    /// Longest run of a single symbol (non-cyclic).
    pub fn max_run(&self) -> usize {
        let mut best = 0;
        let mut run = 0;
        let mut prev = None;
        for &s in &self.symbols {
            if Some(s) == prev {
                run += 1;
            } else {
                run = 1;
                prev = Some(s);
            }
            best = best.max(run);
        }
        best
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self.render())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    Shift(usize),
    Reverse,
    Complement,
    ReverseComplement,
    FlipPrefix(usize),
    /// 1-indexed inclusive bounds.
    Subword(usize, usize),
}

pub fn word_transform(w: &Word, kind: Transform) -> Result<Word> {
    match kind {
        Transform::Shift(i) => w.shift(i),
        Transform::Reverse => Ok(w.reverse()),
        Transform::Complement => Ok(w.complement()),
        Transform::ReverseComplement => Ok(w.reverse_complement()),
        Transform::FlipPrefix(len) => w.flip_prefix(len),
        Transform::Subword(i, j) => w.subword(i, j),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Metrics {
    pub distance: usize,
    pub weight: usize,
    pub weight_first_half: Option<usize>,
    pub weight_second_half: Option<usize>,
    pub gc_count: usize,
}

/// Distance between `a` and `b`, plus the weight profile of `a`.
pub fn metrics(a: &Word, b: &Word) -> Result<Metrics> {
    Ok(Metrics {
        distance: a.distance(b)?,
        weight: a.weight(),
        weight_first_half: a.weight_first_half(),
        weight_second_half: a.weight_second_half(),
        gc_count: a.gc_count(),
    })
}
