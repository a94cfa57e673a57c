//! Run-length-limited encoding by sequence replacement.
//!
//! A message of L−1 bits becomes L bits with no run of ℓ−1 equal symbols.
//! Work happens in the difference domain: x has no run of length ℓ−1 iff its
//! transition sequence avoids 0^{ℓ−2}. The transition sequence is built as
//! `blocks ‖ 1 ‖ data`; each occurrence of 0^{ℓ−2} in `data` is cut out and
//! recorded as a block `0 1 addr` of the same length, with an (ℓ−4)-bit
//! address, pushed to the front.

use crate::error::{Error, Result};
use crate::gf::BaseField;
use crate::word::Word;

/// Largest output length the (ℓ−4)-bit pointer can address.
pub fn rll_capacity(ell: usize) -> usize {
    (1usize << (ell - 4)) + ell - 2
}

fn check(ell: usize, out_len: usize) -> Result<()> {
    if !(5..=40).contains(&ell) {
        return Err(Error::Precondition(format!("ℓ = {ell} outside 5..=40")));
    }
    if out_len == 0 || out_len > rll_capacity(ell) {
        return Err(Error::Capacity(format!(
            "output length {out_len} exceeds 2^(ℓ−4)+ℓ−2 = {} for ℓ = {ell}",
            rll_capacity(ell)
        )));
    }
    Ok(())
}

fn find_zero_run(data: &[u8], z: usize) -> Option<usize> {
    let mut run = 0;
    for (i, &b) in data.iter().enumerate() {
        run = if b == 0 { run + 1 } else { 0 };
        if run == z {
            return Some(i + 1 - z);
        }
    }
    None
}

/// Encodes `msg` (length L−1) into a word of length L without runs of ℓ−1.
pub fn rll_encode(msg: &Word, ell: usize) -> Result<Word> {
    let out_len = msg.len() + 1;
    check(ell, out_len)?;
    let (z, a) = (ell - 2, ell - 4);
    let mut data = msg.symbols().to_vec();
    let mut blocks: Vec<u8> = Vec::new();
    while let Some(p) = find_zero_run(&data, z) {
        data.drain(p..p + z);
        let mut block = vec![0, 1];
        block.extend((0..a).map(|k| ((p >> k) & 1) as u8));
        block.extend_from_slice(&blocks);
        blocks = block;
    }
    let mut y = blocks;
    y.push(1);
    y.extend_from_slice(&data);
    let mut x = Vec::with_capacity(out_len);
    let mut prev = y[0];
    x.push(prev);
    for &d in &y[1..] {
        prev ^= d;
        x.push(prev);
    }
    Word::new(BaseField::Gf2, x)
}

pub fn rll_decode(x: &Word, ell: usize) -> Result<Word> {
    check(ell, x.len())?;
    let z = ell - 2;
    let s = x.symbols();
    let mut y = vec![s[0]];
    y.extend(s.windows(2).map(|w| w[0] ^ w[1]));
    let mut pos = 0;
    let mut addrs = Vec::new();
    while pos < y.len() && y[pos] == 0 {
        if pos + z > y.len() || y[pos + 1] != 1 {
            return Err(Error::Decode("malformed replacement block".into()));
        }
        addrs.push(y[pos + 2..pos + z].iter().enumerate().fold(0usize, |acc, (k, &b)| acc | (b as usize) << k));
        pos += z;
    }
    if pos >= y.len() {
        return Err(Error::Decode("missing marker".into()));
    }
    let mut data = y[pos + 1..].to_vec();
    for p in addrs {
        if p > data.len() {
            return Err(Error::Decode(format!("replacement address {p} out of range")));
        }
        data.splice(p..p, std::iter::repeat_n(0, z));
    }
    Word::new(BaseField::Gf2, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::all_messages;
    use std::collections::HashSet;

    fn exhaustive(ell: usize, out_len: usize) {
        let mut seen = HashSet::new();
        for m in all_messages(BaseField::Gf2, out_len - 1).unwrap() {
            let x = rll_encode(&m, ell).unwrap();
            assert_eq!(x.len(), out_len);
            assert!(x.max_run() < ell - 1, "{m} -> {x}");
            assert_eq!(rll_decode(&x, ell).unwrap(), m);
            assert!(seen.insert(x));
        }
    }

    #[test]
    fn exhaustive_small() {
        exhaustive(8, 5);
        exhaustive(5, 5);
        exhaustive(6, 8);
        exhaustive(7, 12);
        exhaustive(7, 13);
        exhaustive(8, 16);
    }

    #[test]
    fn alternating_passes_through() {
        let m = Word::from_bits("0101010").unwrap();
        let x = rll_encode(&m, 8).unwrap();
        assert_eq!(x.render(), "11001100");
        assert_eq!(x.max_run(), 2);
    }

    #[test]
    fn capacity() {
        assert!(matches!(rll_encode(&Word::zeros(BaseField::Gf2, 11), 5), Err(Error::Capacity(_))));
        assert!(rll_encode(&Word::zeros(BaseField::Gf2, 3), 4).is_err());
        // length 12 with runs below 4: fewer words than 2^11 messages
        let count = all_messages(BaseField::Gf2, 12).unwrap().iter().filter(|w| w.max_run() < 4).count();
        assert_eq!(count, 1854);
    }
}
