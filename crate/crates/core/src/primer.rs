//! Primer codes: APD-constrained blocks and the general construction, almost
//! balanced WMU codes from cyclic codes, and coset codes from rc-generating
//! sets over reversible cyclic codes.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::balance::{balancing_shift, canonical_rotation};
use crate::cyclic::{all_messages, CyclicCode, CyclotomicData, LinearEncoder};
use crate::error::{Error, Result};
use crate::ext;
use crate::gf::{BaseField, OMEGA};
use crate::poly::Poly;
use crate::rll::{rll_decode, rll_encode};
use crate::word::Word;

/// (n, d; κ, f)_q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimerParams {
    pub n: usize,
    pub d: usize,
    pub kappa: usize,
    pub f: usize,
    pub q: u32,
}

impl PrimerParams {
    pub fn new(n: usize, d: usize, kappa: usize, f: usize, q: u32) -> Result<Self> {
        BaseField::from_q(q)?;
        if !(1..=n).contains(&kappa) || !(1..=n).contains(&f) {
            return Err(Error::Precondition(format!("need 1 ≤ κ, f ≤ n; got κ = {kappa}, f = {f}, n = {n}")));
        }
        Ok(PrimerParams { n, d, kappa, f, q })
    }
}

fn bits_to_int(bits: &[u8]) -> u64 {
    bits.iter().enumerate().fold(0, |acc, (k, &b)| acc | (b as u64) << k)
}

fn int_to_bits(v: u64, len: usize) -> Vec<u8> {
    (0..len).map(|k| (v >> k & 1) as u8).collect()
}

/// Binary words of length f = 2^{ℓ−4} that end in 1, contain 01^ℓ0 exactly
/// once and avoid 0^ℓ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ApdBlockCode {
    ell: usize,
}

pub fn build_apd_constrained(ell: usize) -> Result<ApdBlockCode> {
    ApdBlockCode::new(ell)
}

impl ApdBlockCode {
    pub fn new(ell: usize) -> Result<Self> {
        if !(8..=24).contains(&ell) {
            return Err(Error::Precondition(format!("ℓ = {ell} outside 8..=24")));
        }
        Ok(ApdBlockCode { ell })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn len(&self) -> usize {
        1 << (self.ell - 4)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Length of the run-length-limited part, f − ℓ − 3.
    fn body_len(&self) -> usize {
        self.len() - self.ell - 3
    }

    /// Insertion slots, f − ℓ − 2.
    pub fn slots(&self) -> usize {
        self.body_len() + 1
    }

    /// f − ℓ − 4.
    pub fn data_bits(&self) -> usize {
        self.body_len() - 1
    }

    /// (f − ℓ − 2)·2^{f−ℓ−4}.
    pub fn size(&self) -> u64 {
        (self.slots() as u64) << self.data_bits()
    }

    fn marker(&self) -> Vec<u8> {
        let mut m = vec![0];
        m.extend(std::iter::repeat_n(1, self.ell));
        m.push(0);
        m
    }

    pub fn encode(&self, index: u64) -> Result<Word> {
        if index >= self.size() {
            return Err(Error::IndexOutOfRange { index: index as usize, len: self.size() as usize });
        }
        let slot = (index >> self.data_bits()) as usize;
        let data = Word::new(BaseField::Gf2, int_to_bits(index, self.data_bits()))?;
        let body = rll_encode(&data, self.ell)?;
        let s = body.symbols();
        let mut out = s[..slot].to_vec();
        out.extend(self.marker());
        out.extend_from_slice(&s[slot..]);
        out.push(1);
        Word::new(BaseField::Gf2, out)
    }

    pub fn decode(&self, w: &Word) -> Result<u64> {
        if w.len() != self.len() || w.field() != BaseField::Gf2 {
            return Err(Error::LengthMismatch(w.len(), self.len()));
        }
        let s = w.symbols();
        let marker = self.marker();
        let mut hits = s.windows(marker.len()).enumerate().filter(|(_, win)| *win == marker.as_slice());
        let slot = match (hits.next(), hits.next()) {
            (Some((p, _)), None) if p < self.slots() => p,
            _ => return Err(Error::Decode("marker 01^ℓ0 not found exactly once".into())),
        };
        if s[s.len() - 1] != 1 {
            return Err(Error::Decode("block does not end in 1".into()));
        }
        let mut body = s[..slot].to_vec();
        body.extend_from_slice(&s[slot + marker.len()..s.len() - 1]);
        let data = rll_decode(&Word::new(BaseField::Gf2, body)?, self.ell)?;
        Ok(((slot as u64) << self.data_bits()) | bits_to_int(data.symbols()))
    }

    pub fn codewords(&self) -> Result<Vec<Word>> {
        if self.size() > 1 << 24 {
            return Err(Error::Precondition(format!("{} blocks is too many to enumerate", self.size())));
        }
        (0..self.size()).map(|i| self.encode(i)).collect()
    }
}

/// ℓ, f = 2^{ℓ−4}, r blocks and p parity bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApdBlockParams {
    pub ell: usize,
    pub f: usize,
    pub r: usize,
    pub p: usize,
}

impl ApdBlockParams {
    pub fn new(ell: usize, r: usize, p: usize) -> Result<Self> {
        if !(8..=24).contains(&ell) || r == 0 {
            return Err(Error::Precondition(format!("need 8 ≤ ℓ ≤ 24 and r ≥ 1; got ℓ = {ell}, r = {r}")));
        }
        let f = 1 << (ell - 4);
        if ell + 3 > f {
            return Err(Error::Precondition(format!("ℓ + 3 = {} exceeds f = {f}", ell + 3)));
        }
        if p + p / (ell - 1) + 1 > f {
            return Err(Error::Precondition(format!("p + ⌊p/(ℓ−1)⌋ + 1 = {} exceeds f = {f}", p + p / (ell - 1) + 1)));
        }
        Ok(ApdBlockParams { ell, f, r, p })
    }

    /// rf + p + ⌊p/(ℓ−1)⌋ + ℓ + 2.
    pub fn n(&self) -> usize {
        self.r * self.f + self.p + self.p / (self.ell - 1) + self.ell + 2
    }
}

/// Leading ℓ+1 symbols of a general primer codeword.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimerPrefix {
    /// 0^ℓ·1
    #[default]
    ZerosOne,
    /// 0·1^ℓ
    ZeroOnes,
}

impl PrimerPrefix {
    fn bits(self, ell: usize) -> Vec<u8> {
        let mut v = vec![0u8; ell + 1];
        match self {
            PrimerPrefix::ZerosOne => v[ell] = 1,
            PrimerPrefix::ZeroOnes => v[1..].fill(1),
        }
        v
    }
}

/// Codewords prefix·a·p′ with a ∈ A^r and p′ the parity of a with a 1 after
/// every ℓ−1 bits and a final 1.
#[derive(Debug, Clone)]
pub struct PrimerGeneral {
    params: ApdBlockParams,
    blocks: ApdBlockCode,
    b: LinearEncoder,
    prefix: PrimerPrefix,
}

pub fn construct_primer_general(params: ApdBlockParams, b: LinearEncoder) -> Result<PrimerGeneral> {
    PrimerGeneral::new(params, b)
}

impl PrimerGeneral {
    pub fn with_prefix(mut self, prefix: PrimerPrefix) -> Self {
        self.prefix = prefix;
        self
    }

    pub fn prefix(&self) -> PrimerPrefix {
        self.prefix
    }

    pub fn new(params: ApdBlockParams, b: LinearEncoder) -> Result<Self> {
        let params = ApdBlockParams::new(params.ell, params.r, params.p)?;
        if b.code().field() != BaseField::Gf2 {
            return Err(Error::Precondition("B must be binary".into()));
        }
        let (rf, p) = (params.r * params.f, params.p);
        if b.k() != rf || b.n() != rf + p {
            return Err(Error::Precondition(format!(
                "B is [{}, {}] but the parameters need [{}, {rf}]",
                b.n(),
                b.k(),
                rf + p
            )));
        }
        Ok(PrimerGeneral { params, blocks: ApdBlockCode::new(params.ell)?, b, prefix: PrimerPrefix::default() })
    }

    pub fn params(&self) -> ApdBlockParams {
        self.params
    }

    pub fn blocks(&self) -> &ApdBlockCode {
        &self.blocks
    }

    pub fn encoder(&self) -> &LinearEncoder {
        &self.b
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    /// |A|^r, if it fits.
    pub fn size(&self) -> Option<u64> {
        self.blocks.size().checked_pow(self.params.r as u32)
    }

    pub fn encode(&self, indices: &[u64]) -> Result<Word> {
        if indices.len() != self.params.r {
            return Err(Error::LengthMismatch(indices.len(), self.params.r));
        }
        let mut a = Vec::with_capacity(self.params.r * self.params.f);
        for &i in indices {
            a.extend_from_slice(self.blocks.encode(i)?.symbols());
        }
        let a = Word::new(BaseField::Gf2, a)?;
        let parity = self.b.parity(&a)?;
        let ell = self.params.ell;
        let mut out = self.prefix.bits(ell);
        out.extend_from_slice(a.symbols());
        for (t, &bit) in parity.symbols().iter().enumerate() {
            out.push(bit);
            if (t + 1) % (ell - 1) == 0 {
                out.push(1);
            }
        }
        out.push(1);
        Word::new(BaseField::Gf2, out)
    }

    pub fn decode(&self, w: &Word) -> Result<Vec<u64>> {
        if w.len() != self.n() {
            return Err(Error::LengthMismatch(w.len(), self.n()));
        }
        let ell = self.params.ell;
        let rf = self.params.r * self.params.f;
        let s = &w.symbols()[ell + 1..];
        let mut recv = s[..rf].to_vec();
        let tail = &s[rf..s.len() - 1];
        recv.extend(tail.iter().enumerate().filter(|(t, _)| (t + 1) % ell != 0).map(|(_, &b)| b));
        let a = self.b.decode(&Word::new(BaseField::Gf2, recv)?)?;
        a.symbols().chunks(self.params.f).map(|c| self.blocks.decode(&Word::new(BaseField::Gf2, c.to_vec())?)).collect()
    }
}

/// 1^{μ+1}0^{μ−1}1 over GF(2) or ω^{μ+1}0^{μ−1}ω over GF(4), μ = (n−1)/2.
pub fn almost_mask(field: BaseField, n: usize) -> Result<Word> {
    if n.is_multiple_of(2) || n < 3 {
        return Err(Error::Precondition(format!("mask needs odd n ≥ 3, got {n}")));
    }
    let mu = (n - 1) / 2;
    let a = if field == BaseField::Gf2 { 1 } else { OMEGA };
    let mut v = vec![a; mu + 1];
    v.extend(std::iter::repeat_n(0, mu - 1));
    v.push(a);
    Word::new(field, v)
}

/// Almost balanced WMU code: one word per cyclic class of the input.
#[derive(Debug, Clone)]
pub struct AlmostBalancedPrimer {
    code: CyclicCode,
    mask: Word,
    representatives: Vec<Word>,
    words: Vec<Word>,
}

pub fn construct_primer_almost_balanced(code: CyclicCode) -> Result<AlmostBalancedPrimer> {
    AlmostBalancedPrimer::new(code)
}

impl AlmostBalancedPrimer {
    pub fn new(code: CyclicCode) -> Result<Self> {
        let n = code.n();
        if code.k() > (n + 1).div_ceil(4) {
            return Err(Error::Precondition(format!("k = {} exceeds ⌈(n+1)/4⌉ = {}", code.k(), (n + 1).div_ceil(4))));
        }
        if !code.properties().contains_all_one {
            return Err(Error::Precondition("code does not contain the all-one word".into()));
        }
        let mask = almost_mask(code.field(), n)?;
        let mut classes = BTreeMap::new();
        for w in code.codewords()? {
            classes.entry(canonical_rotation(&w)).or_insert(());
        }
        let representatives: Vec<Word> = classes.into_keys().collect();
        let words = representatives
            .iter()
            .map(|u| {
                let (j, _) = balancing_shift(u)?;
                u.rotate_right(j).add(&mask)
            })
            .collect::<Result<_>>()?;
        Ok(AlmostBalancedPrimer { code, mask, representatives, words })
    }

    pub fn code(&self) -> &CyclicCode {
        &self.code
    }

    pub fn representatives(&self) -> &[Word] {
        &self.representatives
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn encode(&self, index: usize) -> Result<Word> {
        self.words
            .get(index)
            .cloned()
            .ok_or(Error::IndexOutOfRange { index, len: self.words.len() })
    }

    /// Index of the class whose word is `v`.
    pub fn decode(&self, v: &Word) -> Result<usize> {
        let u = v.add(&self.mask)?;
        let key = canonical_rotation(&u);
        let idx = self
            .representatives
            .binary_search(&key)
            .map_err(|_| Error::Decode("not a shifted codeword".into()))?;
        if self.words[idx] != *v {
            return Err(Error::Decode("word is not the class's chosen shift".into()));
        }
        Ok(idx)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RcFlavor {
    Rc,
    Rc2,
}

/// {h*, p₁, …, p_P} with its flavor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RcGenSet {
    pub hstar: Poly,
    pub p: Vec<Poly>,
    pub flavor: RcFlavor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RcGenSetJson {
    pub hstar: Vec<u8>,
    pub p: Vec<Vec<u8>>,
    pub flavor: RcFlavor,
}

impl RcGenSet {
    pub fn new(hstar: Poly, p: Vec<Poly>, flavor: RcFlavor) -> Self {
        RcGenSet { hstar, p, flavor }
    }

    pub fn to_json(&self) -> RcGenSetJson {
        RcGenSetJson {
            hstar: self.hstar.coeffs().to_vec(),
            p: self.p.iter().map(|p| p.coeffs().to_vec()).collect(),
            flavor: self.flavor,
        }
    }

    pub fn from_json(j: &RcGenSetJson, field: BaseField) -> Result<Self> {
        Ok(RcGenSet {
            hstar: Poly::new(field, j.hstar.clone())?,
            p: j.p.iter().map(|c| Poly::new(field, c.clone())).collect::<Result<_>>()?,
            flavor: j.flavor,
        })
    }

    /// k* = k − deg h*.
    pub fn kstar(&self, k: usize) -> Option<usize> {
        k.checked_sub(self.hstar.degree()?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RcCondition {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    #[serde(rename = "R5'")]
    R5Prime,
}

/// First failing condition; i, j are 1-based positions in the p list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RcViolation {
    pub condition: RcCondition,
    pub i: Option<usize>,
    pub j: Option<usize>,
    pub s: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RcReport {
    pub flavor: RcFlavor,
    pub ok: bool,
    pub violation: Option<RcViolation>,
    pub checks: u64,
}

fn key(p: &Poly, len: usize) -> Vec<u8> {
    let mut v = p.coeffs().to_vec();
    v.resize(len, 0);
    v
}

fn check_host(code: &CyclicCode) -> Result<()> {
    let props = code.properties();
    if !props.reversible {
        return Err(Error::Precondition(format!("generator {} is not self-reciprocal", code.generator())));
    }
    if !props.contains_all_one {
        return Err(Error::Precondition("code does not contain the all-one word".into()));
    }
    Ok(())
}

/// Scans `lhs[i][s] − rhs[j]` for a zero remainder.
fn pair_scan(
    cond: RcCondition,
    lhs: &[Vec<Vec<u8>>],
    s_offset: usize,
    rhs: &[Vec<u8>],
    checks: &mut u64,
) -> Option<RcViolation> {
    let mut by_res: HashMap<&[u8], usize> = HashMap::new();
    for (j, r) in rhs.iter().enumerate().rev() {
        by_res.insert(r.as_slice(), j);
    }
    for (i, row) in lhs.iter().enumerate() {
        for (t, res) in row.iter().enumerate() {
            *checks += rhs.len() as u64;
            if let Some(&j) = by_res.get(res.as_slice()) {
                return Some(RcViolation { condition: cond, i: Some(i + 1), j: Some(j + 1), s: Some(t + s_offset) });
            }
        }
    }
    None
}

/// Checks (R1)–(R7), or (R1)–(R4), (R5′), (R7) for the rc2 flavor, in that order.
/// (R4) also rejects pᵢ ≡ pⱼ mod h* for i ≠ j at s = 0.
pub fn validate_rc_generating(code: &CyclicCode, set: &RcGenSet) -> Result<RcReport> {
    check_host(code)?;
    let field = code.field();
    let hstar = set.hstar.with_field(field)?;
    let p: Vec<Poly> = set.p.iter().map(|p| p.with_field(field)).collect::<Result<_>>()?;
    let (n, k) = (code.n(), code.k());
    let mut checks = 0u64;
    let report = |v: Option<RcViolation>, checks: u64| RcReport { flavor: set.flavor, ok: v.is_none(), violation: v, checks };
    let bare = |c| Some(RcViolation { condition: c, i: None, j: None, s: None });

    checks += 1;
    if hstar.is_zero() || !hstar.divides(code.check_poly())? {
        return Ok(report(bare(RcCondition::R1), checks));
    }
    checks += 1;
    if hstar.eval(1) == 0 {
        return Ok(report(bare(RcCondition::R2), checks));
    }
    checks += 1;
    if !hstar.is_self_reciprocal() {
        return Ok(report(bare(RcCondition::R3), checks));
    }
    let dh = hstar.degree().unwrap_or(0);
    let res = |q: &Poly| -> Result<Vec<u8>> { Ok(key(&q.rem(&hstar)?, dh)) };
    let x = Poly::monomial(field, 1, 1);
    let p_res: Vec<Vec<u8>> = p.iter().map(&res).collect::<Result<_>>()?;
    let shifted = |s_range: std::ops::Range<usize>| -> Result<Vec<Vec<Vec<u8>>>> {
        p.iter()
            .map(|pi| {
                let mut acc = pi.mul(&Poly::monomial(field, 1, s_range.start)).rem(&hstar)?;
                let mut row = Vec::with_capacity(s_range.len());
                for _ in s_range.clone() {
                    row.push(key(&acc, dh));
                    acc = acc.mul(&x).rem(&hstar)?;
                }
                Ok(row)
            })
            .collect()
    };

    let mut first: HashMap<&[u8], usize> = HashMap::new();
    for (j, r) in p_res.iter().enumerate() {
        checks += 1;
        if let Some(&i) = first.get(r.as_slice()) {
            return Ok(report(Some(RcViolation { condition: RcCondition::R4, i: Some(i + 1), j: Some(j + 1), s: Some(0) }), checks));
        }
        first.insert(r.as_slice(), j);
    }
    if let Some(v) = pair_scan(RcCondition::R4, &shifted(1..n)?, 1, &p_res, &mut checks) {
        return Ok(report(Some(v), checks));
    }
    let rev_k1: Vec<Vec<u8>> = p.iter().map(|pj| res(&pj.x_pow_times_reversed(k - 1, n))).collect::<Result<_>>()?;
    match set.flavor {
        RcFlavor::Rc => {
            let top = n.saturating_sub(k) + 1;
            if let Some(v) = pair_scan(RcCondition::R5, &shifted(0..top)?, 0, &rev_k1, &mut checks) {
                return Ok(report(Some(v), checks));
            }
            let rows: Vec<Vec<Vec<u8>>> = p
                .iter()
                .map(|pi| (0..top).map(|s| res(&pi.x_pow_times_reversed(s + k - 1, n))).collect())
                .collect::<Result<_>>()?;
            if let Some(v) = pair_scan(RcCondition::R6, &rows, 0, &p_res, &mut checks) {
                return Ok(report(Some(v), checks));
            }
        }
        RcFlavor::Rc2 => {
            if let Some(v) = pair_scan(RcCondition::R5Prime, &shifted(0..n)?, 0, &rev_k1, &mut checks) {
                return Ok(report(Some(v), checks));
            }
        }
    }
    for (i, pi) in p.iter().enumerate() {
        checks += 1;
        if pi.degree().is_some_and(|d| d >= dh) {
            return Ok(report(Some(RcViolation { condition: RcCondition::R7, i: Some(i + 1), j: None, s: None }), checks));
        }
    }
    Ok(report(None, checks))
}

/// {M(α)M(α⁻¹), 1} (rc) or {M(α)M(α⁻¹), M(α)} (rc2) for the first α of order n
/// with g(α) ≠ 0 ≠ g(α⁻¹) whose set validates.
pub fn search_rc_generating(code: &CyclicCode, flavor: RcFlavor) -> Result<RcGenSet> {
    check_host(code)?;
    let (n, k) = (code.n(), code.k());
    if flavor == RcFlavor::Rc && n - k >= k.saturating_sub(1) {
        return Err(Error::Precondition(format!("rc search needs n − k < k − 1; got n = {n}, k = {k}")));
    }
    let cyc = CyclotomicData::new(code.q(), n)?;
    let g = code.generator();
    for e in 1..n {
        if ext::gcd(e as u64, n as u64) != 1 {
            continue;
        }
        let ma = cyc.minimal_polynomial(e);
        let mb = cyc.minimal_polynomial(n - e);
        if ma.divides(g)? || mb.divides(g)? {
            continue;
        }
        let hstar = if ma == mb { ma.clone() } else { ma.mul(&mb) };
        let p = match flavor {
            RcFlavor::Rc => Poly::one(code.field()),
            RcFlavor::Rc2 => ma,
        };
        let set = RcGenSet::new(hstar, vec![p], flavor);
        if validate_rc_generating(code, &set)?.ok {
            return Ok(set);
        }
    }
    Err(Error::SearchExhausted(format!("no element of order {n} yields a valid {flavor:?} set")))
}

/// (m·h* + pᵢ)·g for deg m < k*, i ∈ [P].
#[derive(Debug, Clone)]
pub struct RcEncoder {
    code: CyclicCode,
    set: RcGenSet,
    kstar: usize,
    index: HashMap<Vec<u8>, usize>,
}

impl RcEncoder {
    /// Builds the encoder after validating `set` against `code` as `flavor`.
    pub fn new(code: CyclicCode, set: RcGenSet, flavor: RcFlavor) -> Result<Self> {
        let mut probe = set.clone();
        probe.flavor = flavor;
        let rep = validate_rc_generating(&code, &probe)?;
        if let Some(v) = rep.violation {
            return Err(Error::Precondition(format!("set is not {flavor:?}-generating: {v:?}")));
        }
        let field = code.field();
        let hstar = set.hstar.with_field(field)?;
        let dh = hstar.degree().unwrap_or(0);
        let kstar = code.k() - dh;
        let p: Vec<Poly> = set.p.iter().map(|p| p.with_field(field)).collect::<Result<_>>()?;
        let index = p.iter().enumerate().map(|(i, pi)| (key(pi, dh), i)).collect();
        Ok(RcEncoder { code, set: RcGenSet { hstar, p, flavor: set.flavor }, kstar, index })
    }

    pub fn code(&self) -> &CyclicCode {
        &self.code
    }

    pub fn set(&self) -> &RcGenSet {
        &self.set
    }

    pub fn message_len(&self) -> usize {
        self.kstar
    }

    pub fn classes(&self) -> usize {
        self.set.p.len()
    }

    /// q^{k*}·P.
    pub fn size(&self) -> u64 {
        (self.code.q() as u64).pow(self.kstar as u32) * self.classes() as u64
    }

    pub fn encode(&self, m: &Word, i: usize) -> Result<Word> {
        if m.len() != self.kstar {
            return Err(Error::LengthMismatch(m.len(), self.kstar));
        }
        let pi = self.set.p.get(i).ok_or(Error::IndexOutOfRange { index: i, len: self.classes() })?;
        let m = Word::new(self.code.field(), m.symbols().to_vec())?.to_poly();
        let u = m.mul(&self.set.hstar).add(pi);
        Word::from_poly(&u.mul(self.code.generator()), self.code.n())
    }

    /// Exact inverse of `encode`.
    pub fn decode(&self, c: &Word) -> Result<(Word, usize)> {
        if c.len() != self.code.n() {
            return Err(Error::LengthMismatch(c.len(), self.code.n()));
        }
        let not_member = || Error::Decode("word is not in the codebook".into());
        let u = c.to_poly().with_field(self.code.field())?.exact_div(self.code.generator()).map_err(|_| not_member())?;
        let dh = self.set.hstar.degree().unwrap_or(0);
        let i = *self.index.get(&key(&u.rem(&self.set.hstar)?, dh)).ok_or_else(not_member)?;
        let m = u.sub(&self.set.p[i]).exact_div(&self.set.hstar)?;
        Ok((Word::from_poly(&m, self.kstar)?, i))
    }

    /// Words with deg m < `t`, ordered by class then message index.
    pub fn sub_codebook(&self, t: usize) -> Result<Vec<Word>> {
        let t = t.min(self.kstar);
        let msgs = all_messages(self.code.field(), t)?;
        let mut out = Vec::with_capacity(msgs.len() * self.classes());
        for i in 0..self.classes() {
            for m in &msgs {
                let mut s = m.symbols().to_vec();
                s.resize(self.kstar, 0);
                out.push(self.encode(&Word::new(self.code.field(), s)?, i)?);
            }
        }
        Ok(out)
    }

    pub fn codewords(&self) -> Result<Vec<Word>> {
        self.sub_codebook(self.kstar)
    }
}

/// Coset primer code from an rc-flavored set.
#[derive(Debug, Clone)]
pub struct PrimerRc {
    enc: RcEncoder,
}

pub fn construct_primer_rc(code: CyclicCode, set: RcGenSet) -> Result<PrimerRc> {
    Ok(PrimerRc { enc: RcEncoder::new(code, set, RcFlavor::Rc)? })
}

impl PrimerRc {
    pub fn encoder(&self) -> &RcEncoder {
        &self.enc
    }

    pub fn size(&self) -> u64 {
        self.enc.size()
    }

    pub fn encode(&self, m: &Word, i: usize) -> Result<Word> {
        self.enc.encode(m, i)
    }

    pub fn decode(&self, c: &Word) -> Result<(Word, usize)> {
        self.enc.decode(c)
    }

    /// n − log_q |C|.
    pub fn redundancy(&self) -> f64 {
        let c = self.enc.code();
        c.n() as f64 - (self.size() as f64).ln() / (c.q() as f64).ln()
    }

    /// (d+1)·log_q(n+1) for the code's recorded distance.
    pub fn redundancy_bound(&self) -> Option<f64> {
        let c = self.enc.code();
        let d = c.distance()?.value as f64;
        Some((d + 1.0) * ((c.n() + 1) as f64).ln() / (c.q() as f64).ln())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{bch_narrow_sense, code_from_generator, Distance, DistanceStatus};
    use crate::gf::OMEGA_PLUS_ONE as W1;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    const W: u8 = OMEGA;

    fn p4(c: &[u8]) -> Poly {
        Poly::new(BaseField::Gf4, c.to_vec()).unwrap()
    }

    fn example_code() -> CyclicCode {
        code_from_generator(4, 15, &p4(&[1, 1, W1, 1, W1, 1, 1]))
            .unwrap()
            .with_distance(Distance { value: 5, status: DistanceStatus::Exact })
    }

    fn example_set() -> RcGenSet {
        let p = [
            vec![W],
            vec![W1],
            vec![1],
            vec![W, W],
            vec![W1, W1],
            vec![1, 1],
            vec![W1, W, W],
            vec![1, 0, W1, W],
            vec![0, 1, W1, W],
            vec![W1, 1, W1, W],
            vec![1, 1, W1, W],
            vec![0, 0, 1, W],
            vec![1, 1, 1, W],
            vec![W, W, W, W1],
            vec![W1, W1, W, W1],
            vec![1, W, 1, W1],
            vec![W1, W1, W, 1],
        ];
        RcGenSet::new(p4(&[1, W, W, W, 1]), p.iter().map(|c| p4(c)).collect(), RcFlavor::Rc)
    }

    fn has_marker(s: &[u8], ell: usize) -> usize {
        let mut m = vec![0];
        m.extend(vec![1; ell]);
        m.push(0);
        s.windows(ell + 2).filter(|w| *w == m.as_slice()).count()
    }

    #[test]
    fn apd_blocks_l8() {
        let a = build_apd_constrained(8).unwrap();
        assert_eq!((a.len(), a.slots(), a.data_bits(), a.size()), (16, 6, 4, 96));
        let words = a.codewords().unwrap();
        let distinct: HashSet<_> = words.iter().collect();
        assert_eq!(distinct.len(), 96);
        for (i, w) in words.iter().enumerate() {
            let s = w.symbols();
            assert_eq!(s[15], 1);
            assert_eq!(has_marker(s, 8), 1, "{w}");
            assert!(!s.windows(8).any(|x| x.iter().all(|&b| b == 0)));
            let slot = i >> 4;
            assert_eq!(&s[slot..slot + 10], &[0, 1, 1, 1, 1, 1, 1, 1, 1, 0]);
            assert_eq!(a.decode(w).unwrap(), i as u64);
        }
        assert!(build_apd_constrained(7).is_err());
    }

    #[test]
    fn apd_params() {
        let p = ApdBlockParams::new(8, 2, 12).unwrap();
        assert_eq!((p.f, p.n()), (16, 55));
        assert!(ApdBlockParams::new(8, 2, 14).is_err());
    }

    fn desk_general() -> PrimerGeneral {
        let b = LinearEncoder::new(bch_narrow_sense(6, 5).unwrap(), 19).unwrap();
        construct_primer_general(ApdBlockParams::new(8, 2, 12).unwrap(), b).unwrap()
    }

    #[test]
    fn general_round_trip_with_errors() {
        let c = desk_general();
        assert_eq!((c.n(), c.size()), (55, Some(96 * 96)));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let idx = [rng.gen_range(0..96), rng.gen_range(0..96)];
            let w = c.encode(&idx).unwrap();
            assert_eq!(w.len(), 55);
            assert_eq!(&w.symbols()[..9], &[0, 0, 0, 0, 0, 0, 0, 0, 1]);
            assert_eq!(w.symbols()[54], 1);
            assert_eq!(w.symbols()[9 + 32 + 7], 1);
            assert_eq!(c.decode(&w).unwrap(), idx);
            let mut s = w.symbols().to_vec();
            let pos = 9 + rng.gen_range(0..32);
            s[pos] ^= 1;
            assert_eq!(c.decode(&Word::new(BaseField::Gf2, s).unwrap()).unwrap(), idx);
        }
        let written = desk_general().with_prefix(PrimerPrefix::ZeroOnes);
        let w = written.encode(&[5, 7]).unwrap();
        assert_eq!(&w.symbols()[..9], &[0, 1, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(written.decode(&w).unwrap(), vec![5, 7]);
    }

    fn desk_almost() -> AlmostBalancedPrimer {
        let g = Poly::new(BaseField::Gf2, vec![1, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1]).unwrap();
        construct_primer_almost_balanced(code_from_generator(2, 15, &g).unwrap()).unwrap()
    }

    #[test]
    fn almost_balanced_desk() {
        let c = desk_almost();
        assert_eq!(c.code().k(), 3);
        assert_eq!(c.words().len(), 4);
        for (i, v) in c.words().iter().enumerate() {
            assert!((6..=9).contains(&v.weight()), "{v}");
            assert_eq!(c.decode(v).unwrap(), i);
        }
        let mask = almost_mask(BaseField::Gf2, 15).unwrap();
        assert_eq!(mask.render(), "111111110000001");
    }

    #[test]
    fn almost_preconditions() {
        let g = Poly::new(BaseField::Gf2, vec![1, 1, 0, 1]).unwrap();
        assert!(construct_primer_almost_balanced(code_from_generator(2, 7, &g).unwrap()).is_err());
    }

    #[test]
    fn example_set_validates() {
        let code = example_code();
        let rep = validate_rc_generating(&code, &example_set()).unwrap();
        assert!(rep.ok, "{rep:?}");
    }

    #[test]
    fn constant_p_breaks_r5_prime() {
        // X^{k−1}·c − X^{k−1}·c vanishes for any constant c
        let code = example_code();
        let mut rc2 = example_set();
        rc2.flavor = RcFlavor::Rc2;
        let v = validate_rc_generating(&code, &rc2).unwrap().violation.unwrap();
        assert_eq!((v.condition, v.i, v.j, v.s), (RcCondition::R5Prime, Some(1), Some(1), Some(8)));
    }

    #[test]
    fn duplicate_caught_at_r4() {
        let code = example_code();
        let mut set = example_set();
        set.p.push(set.p[0].clone());
        let v = validate_rc_generating(&code, &set).unwrap().violation.unwrap();
        assert_eq!(v.condition, RcCondition::R4);
        assert_eq!((v.i, v.j, v.s), (Some(1), Some(18), Some(0)));
        let x = Poly::monomial(BaseField::Gf4, 1, 3);
        let mut set = example_set();
        set.p.push(x.mul(&set.p[2]));
        let v = validate_rc_generating(&code, &set).unwrap().violation.unwrap();
        assert_eq!(v.condition, RcCondition::R4);
        let (i, j, s) = (v.i.unwrap(), v.j.unwrap(), v.s.unwrap());
        assert!((1..15).contains(&s));
        let xs = Poly::monomial(BaseField::Gf4, 1, s);
        assert!(set.hstar.divides(&xs.mul(&set.p[i - 1]).sub(&set.p[j - 1])).unwrap());
    }

    #[test]
    fn r2_violation() {
        let code = example_code();
        let set = RcGenSet::new(p4(&[1, 1]), vec![p4(&[1])], RcFlavor::Rc);
        let rep = validate_rc_generating(&code, &set).unwrap();
        assert!(!rep.ok);
        let v = rep.violation.unwrap();
        assert!(matches!(v.condition, RcCondition::R1 | RcCondition::R2));
        let h = code.check_poly().clone();
        let set = RcGenSet::new(p4(&[1, 1]).mul(&p4(&[1, W, 1])), vec![p4(&[1])], RcFlavor::Rc);
        if set.hstar.divides(&h).unwrap() {
            assert_eq!(validate_rc_generating(&code, &set).unwrap().violation.unwrap().condition, RcCondition::R2);
        }
    }

    #[test]
    fn binary_r2() {
        let g = Poly::new(BaseField::Gf2, vec![1, 1, 0, 1]).unwrap().mul(&Poly::new(BaseField::Gf2, vec![1, 0, 1, 1]).unwrap());
        let code = code_from_generator(2, 7, &g).unwrap();
        assert!(code.properties().reversible);
        let set = RcGenSet::new(Poly::new(BaseField::Gf2, vec![1, 1]).unwrap(), vec![Poly::one(BaseField::Gf2)], RcFlavor::Rc);
        assert_eq!(validate_rc_generating(&code, &set).unwrap().violation.unwrap().condition, RcCondition::R2);
    }

    #[test]
    fn json_round_trip() {
        let set = example_set();
        let s = serde_json::to_string(&set.to_json()).unwrap();
        assert!(s.starts_with("{\"hstar\":[1,2,2,2,1],\"p\":[[2],[3]"));
        assert!(s.ends_with("\"flavor\":\"rc\"}"));
        let back: RcGenSetJson = serde_json::from_str(&s).unwrap();
        assert_eq!(RcGenSet::from_json(&back, BaseField::Gf4).unwrap(), set);
    }

    #[test]
    fn search_both_flavors() {
        let code = example_code();
        let rc = search_rc_generating(&code, RcFlavor::Rc).unwrap();
        assert!(rc.hstar.degree().unwrap() <= 4);
        assert!(rc.p[0].is_one());
        assert!(validate_rc_generating(&code, &rc).unwrap().ok);
        let rc2 = search_rc_generating(&code, RcFlavor::Rc2).unwrap();
        assert!(validate_rc_generating(&code, &rc2).unwrap().ok);
        assert!(rc2.p[0].divides(&rc2.hstar).unwrap());
        let g = Poly::new(BaseField::Gf2, vec![1, 1, 1]).unwrap();
        let low = code_from_generator(2, 3, &g).unwrap();
        assert!(matches!(search_rc_generating(&low, RcFlavor::Rc), Err(Error::Precondition(_))));
    }

    #[test]
    fn example_primer_code() {
        let c = construct_primer_rc(example_code(), example_set()).unwrap();
        assert_eq!(c.encoder().message_len(), 5);
        assert_eq!(c.size(), 17 * 1024);
        assert!(c.size() >= 1 << 14);
        assert!(c.redundancy() <= c.redundancy_bound().unwrap());
        assert_eq!(c.redundancy_bound().unwrap(), 12.0);
        let sub = c.encoder().sub_codebook(2).unwrap();
        assert_eq!(sub.len(), 272);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let m = Word::new(BaseField::Gf4, (0..5).map(|_| rng.gen_range(0..4)).collect()).unwrap();
            let i = rng.gen_range(0..17);
            let w = c.encode(&m, i).unwrap();
            assert!(c.encoder().code().contains(&w));
            assert_eq!(c.decode(&w).unwrap(), (m, i));
        }
        assert!(c.decode(&Word::zeros(BaseField::Gf4, 15)).is_err());
    }
}
