//! Arithmetic over GF(2) and GF(4) and the identification of GF(4) with the
//! DNA alphabet.
//!
//! Symbols are stored as `u8` codes. GF(4) uses the modulus x²+x+1 with
//! `0 ↔ 0`, `1 ↔ 1`, `2 ↔ ω`, `3 ↔ ω+1`, so addition is bitwise xor of the
//! two-bit codes and GF(2) is the subfield `{0, 1}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Code of the primitive element ω of GF(4).
pub const OMEGA: u8 = 2;
/// Code of ω + 1 = ω².
pub const OMEGA_PLUS_ONE: u8 = 3;

const GF4_MUL: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
const GF4_INV: [u8; 4] = [0, 1, 3, 2];

/// The two alphabets the codes are defined over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseField {
    Gf2,
    Gf4,
}

impl BaseField {
    pub fn from_q(q: u32) -> Result<Self> {
        match q {
            2 => Ok(BaseField::Gf2),
            4 => Ok(BaseField::Gf4),
            _ => Err(Error::UnsupportedField(format!("q = {q}, expected 2 or 4"))),
        }
    }

    pub fn q(self) -> u32 {
        match self {
            BaseField::Gf2 => 2,
            BaseField::Gf4 => 4,
        }
    }

    /// Number of bits of a symbol when the field is viewed over GF(2).
    pub fn bits(self) -> u32 {
        match self {
            BaseField::Gf2 => 1,
            BaseField::Gf4 => 2,
        }
    }

    pub fn contains(self, v: u8) -> bool {
        (v as u32) < self.q()
    }

    pub fn check(self, v: u8) -> Result<u8> {
        if self.contains(v) {
            Ok(v)
        } else {
            Err(Error::BadSymbol(format!("{v} in GF({})", self.q())))
        }
    }

    /// The constant a prefix flip adds: 1 over GF(2), ω over GF(4).
    pub fn flip_symbol(self) -> u8 {
        match self {
            BaseField::Gf2 => 1,
            BaseField::Gf4 => OMEGA,
        }
    }

    /// All field elements in code order.
    pub fn elements(self) -> impl Iterator<Item = u8> {
        0..self.q() as u8
    }

    /// The field containing both (GF(2) is a subfield of GF(4)).
    pub fn join(self, other: BaseField) -> BaseField {
        self.max(other)
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q())
    }
}

#[inline]
pub fn add(a: u8, b: u8) -> u8 {
    a ^ b
}

#[inline]
pub fn mul(a: u8, b: u8) -> u8 {
    GF4_MUL[a as usize][b as usize]
}

pub fn inv(a: u8) -> Result<u8> {
    if a == 0 {
        Err(Error::ZeroInverse)
    } else {
        Ok(GF4_INV[a as usize])
    }
}

pub fn pow(a: u8, e: u64) -> u8 {
    if e == 0 {
        return 1;
    }
    if a == 0 {
        return 0;
    }
    // nonzero elements have order dividing 3
    let mut r = 1;
    for _ in 0..(e % 3) {
        r = mul(r, a);
    }
    r
}

/// A field element tagged with its field, for callers that need mismatch
/// checking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    pub field: BaseField,
    pub value: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Pow(u64),
}

impl FieldElem {
    pub fn new(field: BaseField, value: u8) -> Result<Self> {
        field.check(value)?;
        Ok(FieldElem { field, value })
    }
}

/// Applies `op`. `Inv` and `Pow` only read `a`; `b` is checked for field
/// agreement with the binary operations.
pub fn field_arith(a: FieldElem, b: FieldElem, op: ArithOp) -> Result<FieldElem> {
    let value = match op {
        ArithOp::Add | ArithOp::Mul if a.field != b.field => {
            return Err(Error::FieldMismatch(a.field.q(), b.field.q()))
        }
        ArithOp::Add => add(a.value, b.value),
        ArithOp::Mul => mul(a.value, b.value),
        ArithOp::Inv => inv(a.value)?,
        ArithOp::Pow(e) => pow(a.value, e),
    };
    Ok(FieldElem { field: a.field, value })
}

/// DNA base for a GF(4) symbol.
pub fn symbol_to_base(s: u8) -> Result<char> {
    match s {
        0 => Ok('A'),
        1 => Ok('T'),
        2 => Ok('C'),
        3 => Ok('G'),
        _ => Err(Error::BadSymbol(s.to_string())),
    }
}

pub fn base_to_symbol(c: char) -> Result<u8> {
    match c.to_ascii_uppercase() {
        'A' => Ok(0),
        'T' => Ok(1),
        'C' => Ok(2),
        'G' => Ok(3),
        _ => Err(Error::BadSymbol(c.to_string())),
    }
}

/// A strand over {A, C, G, T}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DnaWord(String);

impl DnaWord {
    pub fn parse(s: &str) -> Result<Self> {
        let bases = s
            .chars()
            .map(|c| base_to_symbol(c).map(|v| symbol_to_base(v).unwrap()))
            .collect::<Result<String>>()?;
        Ok(DnaWord(bases))
    }

    pub fn from_symbols(symbols: &[u8]) -> Result<Self> {
        symbols
            .iter()
            .map(|&s| symbol_to_base(s))
            .collect::<Result<String>>()
            .map(DnaWord)
    }

    pub fn to_symbols(&self) -> Vec<u8> {
        self.0.chars().map(|c| base_to_symbol(c).unwrap()).collect()
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for DnaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}
