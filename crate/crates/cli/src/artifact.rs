//! Versioned JSON artifacts and the construction specs they carry.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use primer_codes::balance::{construct_bin_balanced, construct_gc_balanced, BalanceMode, BinBalancedCode, GcBalancedCode};
use primer_codes::codebook::{write_atomic, CodebookMeta, SCHEMA_VERSION};
use primer_codes::cyclic::{bch_narrow_sense, code_from_generator, CyclicCode, Distance, DistanceStatus, LinearEncoder};
use primer_codes::dnacomp::{construct_dna_computing, DnaComputingCode};
use primer_codes::primer::{
    construct_primer_almost_balanced, construct_primer_general, construct_primer_rc, AlmostBalancedPrimer, ApdBlockParams,
    PrimerGeneral, PrimerPrefix, PrimerRc, RcGenSet, RcGenSetJson,
};
use primer_codes::{BaseField, Poly, Word};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub subcommand: String,
    pub params: serde_json::Value,
    pub inputs: Vec<String>,
    pub output: Option<String>,
    pub seed: u64,
    pub budget: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Artifact<T> {
    pub schema_version: u32,
    pub config: RunConfig,
    #[serde(flatten)]
    pub body: T,
}

pub fn write_json<T: Serialize>(config: &RunConfig, body: T, out: Option<&Path>) -> Result<()> {
    let art = Artifact { schema_version: SCHEMA_VERSION, config: config.clone(), body };
    let text = serde_json::to_string_pretty(&art)? + "\n";
    match out {
        Some(p) => write_atomic(p, text.as_bytes()).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// A cyclic code by generator, coefficients low degree first.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeSpec {
    pub q: u32,
    pub n: usize,
    pub generator: Vec<u8>,
    pub distance: Option<Distance>,
}

impl CodeSpec {
    pub fn from_code(c: &CyclicCode) -> Self {
        CodeSpec { q: c.q(), n: c.n(), generator: c.generator().coeffs().to_vec(), distance: c.distance() }
    }

    pub fn build(&self) -> Result<CyclicCode> {
        let field = BaseField::from_q(self.q)?;
        let code = code_from_generator(self.q, self.n, &Poly::new(field, self.generator.clone())?)?;
        Ok(match self.distance {
            Some(d) => code.with_distance(d),
            None => code,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeDescriptor {
    pub code: CodeSpec,
    pub k: usize,
    pub check_polynomial: Vec<u8>,
    pub reversible: bool,
    pub contains_all_one: bool,
}

impl CodeDescriptor {
    pub fn new(c: &CyclicCode) -> Self {
        let p = c.properties();
        CodeDescriptor {
            code: CodeSpec::from_code(c),
            k: c.k(),
            check_polynomial: c.check_poly().coeffs().to_vec(),
            reversible: p.reversible,
            contains_all_one: p.contains_all_one,
        }
    }
}

#[derive(Deserialize)]
struct HasCode {
    code: CodeSpec,
}

pub fn read_code(path: &Path) -> Result<CyclicCode> {
    read_json::<HasCode>(path)?.code.build()
}

/// Accepts the bare {"hstar", "p", "flavor"} form with or without artifact fields.
pub fn read_rc(path: &Path) -> Result<RcGenSetJson> {
    read_json(path)
}

/// Binary narrow-sense BCH code of length 2^m − 1, shortened by `shorten`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BchSpec {
    pub m: u32,
    pub d: usize,
    pub shorten: usize,
}

impl BchSpec {
    pub fn encoder(&self) -> Result<LinearEncoder> {
        Ok(LinearEncoder::new(bch_narrow_sense(self.m, self.d)?, self.shorten)?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ConstructionSpec {
    BinBalanced { code: CodeSpec, hstar: Vec<u8> },
    GcBalanced { a: BchSpec, b: BchSpec, multiplicity: u64 },
    PrimerGeneral { ell: usize, r: usize, b: BchSpec, prefix: PrimerPrefix },
    PrimerAlmost { code: CodeSpec },
    PrimerRc { code: CodeSpec, rc: RcGenSetJson },
    DnaComputing { code: CodeSpec, rc: RcGenSetJson },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructionArtifact {
    pub construction: ConstructionSpec,
    pub meta: CodebookMeta,
    /// Present when the codebook was enumerated.
    pub words: Option<Vec<String>>,
}

pub enum Built {
    Bin(BinBalancedCode),
    Gc(GcBalancedCode),
    General(PrimerGeneral),
    Almost(AlmostBalancedPrimer),
    Rc(PrimerRc),
    Dna(DnaComputingCode),
}

impl ConstructionSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ConstructionSpec::BinBalanced { .. } => "bin-balanced",
            ConstructionSpec::GcBalanced { .. } => "gc-balanced",
            ConstructionSpec::PrimerGeneral { .. } => "primer-general",
            ConstructionSpec::PrimerAlmost { .. } => "primer-almost",
            ConstructionSpec::PrimerRc { .. } => "primer-rc",
            ConstructionSpec::DnaComputing { .. } => "dna-computing",
        }
    }

    pub fn build(&self) -> Result<Built> {
        Ok(match self {
            ConstructionSpec::BinBalanced { code, hstar } => {
                let hstar = Poly::new(BaseField::Gf2, hstar.clone())?;
                Built::Bin(construct_bin_balanced(code.build()?, &hstar)?)
            }
            ConstructionSpec::GcBalanced { a, b, multiplicity } => {
                Built::Gc(construct_gc_balanced(a.encoder()?, b.encoder()?, *multiplicity)?)
            }
            ConstructionSpec::PrimerGeneral { ell, r, b, prefix } => {
                let enc = b.encoder()?;
                let p = enc.n() - enc.k();
                let params = ApdBlockParams::new(*ell, *r, p)?;
                Built::General(construct_primer_general(params, enc)?.with_prefix(*prefix))
            }
            ConstructionSpec::PrimerAlmost { code } => Built::Almost(construct_primer_almost_balanced(code.build()?)?),
            ConstructionSpec::PrimerRc { code, rc } => {
                let code = code.build()?;
                let set = RcGenSet::from_json(rc, code.field())?;
                Built::Rc(construct_primer_rc(code, set)?)
            }
            ConstructionSpec::DnaComputing { code, rc } => {
                let code = code.build()?;
                let set = RcGenSet::from_json(rc, code.field())?;
                Built::Dna(construct_dna_computing(code, set)?)
            }
        })
    }
}

fn claimed(code: &CyclicCode) -> (Option<usize>, Option<DistanceStatus>) {
    code.distance().map_or((None, None), |d| (Some(d.value), Some(d.status)))
}

fn meta(construction: &str, q: u32, n: usize, size: u64) -> CodebookMeta {
    CodebookMeta {
        construction: construction.into(),
        q,
        n,
        size: size as usize,
        claimed_distance: None,
        distance_status: None,
        balance: None,
        kappa: None,
        f: None,
        dna_computing: false,
    }
}

impl Built {
    pub fn meta(&self, name: &str) -> CodebookMeta {
        match self {
            Built::Bin(c) => {
                let mut m = meta(name, 2, c.n(), c.size());
                m.claimed_distance = c.claimed_distance();
                m.distance_status = c.tavares().code().distance().map(|d| d.status);
                m.balance = Some(BalanceMode::Balanced);
                m
            }
            Built::Gc(c) => {
                let mut m = meta(name, 4, c.n(), (c.multiplicity() as u128 * (1u128 << c.n())).min(usize::MAX as u128) as u64);
                m.claimed_distance = Some(2 * c.radius() + 1);
                m.distance_status = Some(DistanceStatus::Designed);
                m.balance = Some(BalanceMode::GcBalanced);
                m
            }
            Built::General(c) => {
                let mut m = meta(name, 2, c.n(), c.size().unwrap_or(u64::MAX));
                (m.claimed_distance, m.distance_status) = claimed(c.encoder().code());
                m.kappa = Some(1);
                m.f = Some(2 * c.params().f);
                m
            }
            Built::Almost(c) => {
                let mut m = meta(name, c.code().q(), c.code().n(), c.words().len() as u64);
                (m.claimed_distance, m.distance_status) = claimed(c.code());
                m.balance = Some(BalanceMode::Almost);
                m.kappa = Some(c.code().k() + 1);
                m.f = Some(c.code().n());
                m
            }
            Built::Rc(c) => {
                let code = c.encoder().code();
                let mut m = meta(name, code.q(), code.n(), c.size());
                (m.claimed_distance, m.distance_status) = claimed(code);
                m.kappa = Some(code.k());
                m.f = Some(code.k());
                m
            }
            Built::Dna(c) => {
                let code = c.encoder().code();
                let mut m = meta(name, 4, code.n(), c.size());
                (m.claimed_distance, m.distance_status) = claimed(code);
                m.balance = Some(BalanceMode::GcBalanced);
                m.dna_computing = true;
                m
            }
        }
    }

    /// Words with message degree below `sub` where that applies.
    pub fn words(&self, sub: Option<usize>) -> Result<Vec<Word>> {
        Ok(match self {
            Built::Bin(c) => c.codewords()?,
            Built::Gc(_) => bail!("gc-balanced codebooks are too large to enumerate; use encode"),
            Built::General(c) => {
                let a = c.blocks().size();
                let total = c.size().filter(|&s| s <= 1 << 20).ok_or_else(|| anyhow!("codebook too large to enumerate"))?;
                let r = c.params().r as u32;
                (0..total)
                    .map(|mut x| {
                        let mut idx = vec![0; r as usize];
                        for slot in idx.iter_mut().rev() {
                            *slot = x % a;
                            x /= a;
                        }
                        c.encode(&idx)
                    })
                    .collect::<std::result::Result<_, _>>()?
            }
            Built::Almost(c) => c.words().to_vec(),
            Built::Rc(c) => match sub {
                Some(t) => c.encoder().sub_codebook(t)?,
                None => c.encoder().codewords()?,
            },
            Built::Dna(c) => match sub {
                Some(t) => c.sub_codebook(t)?,
                None => c.codewords()?,
            },
        })
    }

    pub fn message_field(&self) -> BaseField {
        match self {
            Built::Rc(c) => c.encoder().code().field(),
            Built::Dna(_) => BaseField::Gf4,
            _ => BaseField::Gf2,
        }
    }

    pub fn encode(&self, message: Option<&str>, index: Option<u64>) -> Result<Word> {
        let msg = || -> Result<Word> {
            parse_message(self.message_field(), message.ok_or_else(|| anyhow!("--message is required"))?)
        };
        let idx = || index.ok_or_else(|| anyhow!("--index is required"));
        Ok(match self {
            Built::Bin(c) => c.encode(&msg()?)?,
            Built::Gc(c) => c.encode(&msg()?, idx()?)?,
            Built::General(c) => {
                let m = message.ok_or_else(|| anyhow!("--message is required (comma-separated block indices)"))?;
                let idx: Vec<u64> = m.split(',').map(|s| s.trim().parse()).collect::<std::result::Result<_, _>>()?;
                c.encode(&idx)?
            }
            Built::Almost(c) => c.encode(idx()? as usize)?,
            Built::Rc(c) => c.encode(&msg()?, idx()? as usize)?,
            Built::Dna(c) => c.encode(&msg()?, idx()? as usize)?,
        })
    }

    /// (message, index) as text.
    pub fn decode(&self, w: &Word) -> Result<(Option<String>, Option<u64>)> {
        Ok(match self {
            Built::Bin(c) => (Some(digits(&c.decode(w)?)), None),
            Built::Gc(c) => {
                let (m, i) = c.decode(w)?;
                (Some(digits(&m)), Some(i))
            }
            Built::General(c) => {
                let idx = c.decode(w)?;
                (Some(idx.iter().map(u64::to_string).collect::<Vec<_>>().join(",")), None)
            }
            Built::Almost(c) => (None, Some(c.decode(w)? as u64)),
            Built::Rc(c) => {
                let (m, i) = c.decode(w)?;
                (Some(digits(&m)), Some(i as u64))
            }
            Built::Dna(c) => {
                let (m, i) = c.decode(w)?;
                (Some(digits(&m)), Some(i as u64))
            }
        })
    }
}

/// Symbols as base-q digits.
pub fn digits(w: &Word) -> String {
    w.symbols().iter().map(|&s| char::from(b'0' + s)).collect()
}

/// Bits for GF(2); 0–3 digits or DNA letters for GF(4).
pub fn parse_message(field: BaseField, s: &str) -> Result<Word> {
    let s = s.trim();
    if field == BaseField::Gf2 {
        return Ok(Word::from_bits(s)?);
    }
    if s.chars().all(|c| ('0'..='3').contains(&c)) {
        return Ok(Word::new(BaseField::Gf4, s.bytes().map(|b| b - b'0').collect())?);
    }
    Ok(Word::from_dna(&s.to_ascii_uppercase())?)
}

/// Coefficients low degree first, as digits with optional separators.
pub fn parse_coeffs(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .filter(|c| !matches!(c, ',' | ' ' | '_'))
        .map(|c| c.to_digit(4).map(|d| d as u8).ok_or_else(|| anyhow!("bad coefficient digit {c:?}")))
        .collect()
}

pub fn exact_distance(code: CyclicCode, budget: u64) -> CyclicCode {
    let opts = primer_codes::oracle::OracleOptions { budget, ..Default::default() };
    match primer_codes::oracle::min_distance_linear(code.q(), code.n(), code.generator().coeffs(), &opts) {
        Some(r) => code.with_distance(Distance { value: r.d, status: DistanceStatus::Exact }),
        None => code,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn messages_and_coefficients() {
        assert_eq!(parse_message(BaseField::Gf4, "ACGT").unwrap(), parse_message(BaseField::Gf4, "0231").unwrap());
        assert_eq!(digits(&parse_message(BaseField::Gf2, "0110").unwrap()), "0110");
        assert!(parse_message(BaseField::Gf2, "012").is_err());
        assert_eq!(parse_coeffs("1,1,3 1_3").unwrap(), vec![1, 1, 3, 1, 3]);
        assert!(parse_coeffs("14").is_err());
    }

    #[test]
    fn spec_round_trips_through_json() {
        let spec = ConstructionSpec::PrimerGeneral {
            ell: 8,
            r: 2,
            b: BchSpec { m: 6, d: 5, shorten: 19 },
            prefix: PrimerPrefix::ZerosOne,
        };
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains(r#""kind":"primer-general""#));
        let back: ConstructionSpec = serde_json::from_str(&text).unwrap();
        let built = back.build().unwrap();
        let w = built.encode(Some("3,41"), None).unwrap();
        assert_eq!(built.decode(&w).unwrap().0.as_deref(), Some("3,41"));
        assert_eq!(built.meta(back.name()).size, 9216);
    }
}
