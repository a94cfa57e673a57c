//! Codebooks with metadata, text export formats and atomic file writes.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::balance::BalanceMode;
use crate::cyclic::DistanceStatus;
use crate::error::{Error, Result};
use crate::gf::BaseField;
use crate::word::Word;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodebookMeta {
    pub construction: String,
    pub q: u32,
    pub n: usize,
    pub size: usize,
    pub claimed_distance: Option<usize>,
    pub distance_status: Option<DistanceStatus>,
    pub balance: Option<BalanceMode>,
    pub kappa: Option<usize>,
    pub f: Option<usize>,
    #[serde(default)]
    pub dna_computing: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    pub meta: CodebookMeta,
    pub words: Vec<Word>,
}

impl Codebook {
    pub fn new(construction: &str, field: BaseField, n: usize, words: Vec<Word>) -> Self {
        let meta = CodebookMeta {
            construction: construction.to_string(),
            q: field.q(),
            n,
            size: words.len(),
            claimed_distance: None,
            distance_status: None,
            balance: None,
            kappa: None,
            f: None,
            dna_computing: false,
        };
        Codebook { meta, words }
    }

    pub fn raw(&self) -> Vec<Vec<u8>> {
        self.words.iter().map(|w| w.symbols().to_vec()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Lines,
    Csv,
    Fasta,
}

pub fn export(words: &[Word], format: ExportFormat) -> String {
    let mut out = String::new();
    match format {
        ExportFormat::Lines => {
            for w in words {
                out.push_str(&w.render());
                out.push('\n');
            }
        }
        ExportFormat::Csv => {
            out.push_str("index,word,gc_count\n");
            for (i, w) in words.iter().enumerate() {
                out.push_str(&format!("{i},{},{}\n", w.render(), w.gc_count()));
            }
        }
        ExportFormat::Fasta => {
            for (i, w) in words.iter().enumerate() {
                out.push_str(&format!(">primer_{i}\n{}\n", w.render()));
            }
        }
    }
    out
}

/// One word per token: DNA letters for GF(4), 0/1 for GF(2). Accepts the
/// three export formats.
pub fn parse_words(text: &str) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.is_empty() || line.starts_with('>') || line.starts_with("index,") {
            continue;
        }
        let token = line.split(',').nth(if line.contains(',') { 1 } else { 0 }).unwrap_or("").trim();
        out.push(parse_word(token)?);
    }
    Ok(out)
}

/// Bits, DNA letters, or `q4:`-prefixed 0–3 digits.
pub fn parse_word(token: &str) -> Result<Word> {
    if let Some(d) = token.strip_prefix("q4:") {
        let s = d
            .chars()
            .map(|c| c.to_digit(4).map(|v| v as u8).ok_or_else(|| Error::BadSymbol(c.to_string())))
            .collect::<Result<_>>()?;
        return Word::new(BaseField::Gf4, s);
    }
    if token.chars().all(|c| c == '0' || c == '1') {
        Word::from_bits(token)
    } else {
        Word::from_dna(&token.to_ascii_uppercase())
    }
}

/// Writes through a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = Path::new(&tmp);
    {
        let mut f = fs::File::create(tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(tmp, path)
}
