mod artifact;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use primer_codes::balance::GcBalancedCode;
use primer_codes::codebook::{export, parse_word, parse_words, write_atomic, ExportFormat};
use primer_codes::cyclic::{bch_narrow_sense, code_from_generator, reversible_bch, tavares_hstar_candidates, CyclicCode};
use primer_codes::oracle::{self, BalanceKind, OracleOptions, VerificationReport, DEFAULT_BUDGET};
use primer_codes::primer::{
    construct_primer_rc, search_rc_generating, validate_rc_generating, PrimerPrefix, RcFlavor, RcGenSet, RcGenSetJson,
};
use primer_codes::{BaseField, Poly, Word, OMEGA as W, OMEGA_PLUS_ONE as W1};
use serde::Serialize;

use artifact::{
    exact_distance, parse_coeffs, read_code, read_json, read_rc, write_json, BchSpec, CodeDescriptor, CodeSpec,
    ConstructionArtifact, ConstructionSpec, RunConfig,
};

/// Primer and DNA codebook constructions with exhaustive verification.
#[derive(Debug, Parser, Serialize)]
#[command(name = "primer-codes", version)]
struct Cli {
    /// Seed for sampled verification.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest exhaustive workload before sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Build a cyclic code descriptor.
    Code {
        #[command(subcommand)]
        which: CodeCmd,
    },
    /// Build a codebook from a construction.
    Construct(ConstructArgs),
    /// Validate or search rc-generating sets.
    Rcgen {
        #[command(subcommand)]
        which: RcgenCmd,
    },
    /// Encode a message with a construction artifact.
    Encode(EncodeArgs),
    /// Decode a word with a construction artifact.
    Decode(DecodeArgs),
    /// Check a property of a word list; exits 0 iff it holds.
    Verify(VerifyArgs),
    /// Write a codebook as lines, CSV or FASTA.
    Export(ExportArgs),
    /// Worked examples.
    Demo {
        #[command(subcommand)]
        which: DemoCmd,
    },
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum CodeCmd {
    /// Binary narrow-sense BCH code of length 2^m − 1.
    Bch {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reversible BCH code of length q^m + 1.
    ReversibleBch {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cyclic code from a generator, digits low degree first (e.g. 1131311).
    FromGenerator {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        g: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum ConstructKind {
    BinBalanced,
    GcBalanced,
    PrimerGeneral,
    PrimerAlmost,
    PrimerRc,
    DnaComputing,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum PrefixArg {
    ZerosOne,
    ZeroOnes,
}

#[derive(Debug, Args, Serialize)]
struct ConstructArgs {
    kind: ConstructKind,
    /// Code descriptor from `code build`.
    #[arg(long)]
    code: Option<PathBuf>,
    /// rc-generating set JSON; searched when omitted.
    #[arg(long)]
    rc: Option<PathBuf>,
    /// h* digits for bin-balanced; the first candidate when omitted.
    #[arg(long)]
    hstar: Option<String>,
    /// Keep only words whose message has degree below this.
    #[arg(long)]
    sub_degree: Option<usize>,
    /// Largest codebook written out in full.
    #[arg(long, default_value_t = 1 << 20)]
    max_words: u64,
    #[arg(long, default_value_t = 5)]
    a_m: u32,
    #[arg(long, default_value_t = 3)]
    a_d: usize,
    #[arg(long, default_value_t = 0)]
    a_shorten: usize,
    #[arg(long, default_value_t = 5)]
    b_m: u32,
    #[arg(long, default_value_t = 3)]
    b_d: usize,
    #[arg(long)]
    b_shorten: Option<usize>,
    #[arg(long)]
    multiplicity: Option<u64>,
    #[arg(long, default_value_t = 8)]
    ell: usize,
    #[arg(long, default_value_t = 2)]
    r: usize,
    #[arg(long, value_enum, default_value_t = PrefixArg::ZerosOne)]
    prefix: PrefixArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum RcgenCmd {
    Validate {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        rc: PathBuf,
        /// Overrides the flavor recorded in the set.
        #[arg(long, value_enum)]
        flavor: Option<FlavorArg>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Search {
        #[arg(long)]
        code: PathBuf,
        #[arg(long, value_enum, default_value_t = FlavorArg::Rc)]
        flavor: FlavorArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum FlavorArg {
    Rc,
    Rc2,
}

impl From<FlavorArg> for RcFlavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Rc => RcFlavor::Rc,
            FlavorArg::Rc2 => RcFlavor::Rc2,
        }
    }
}

#[derive(Debug, Args, Serialize)]
struct EncodeArgs {
    /// Construction artifact from `construct`.
    #[arg(long)]
    construction: PathBuf,
    /// Bits, 0–3 digits, DNA letters, or comma-separated block indices.
    #[arg(long)]
    message: Option<String>,
    #[arg(long)]
    index: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
struct DecodeArgs {
    #[arg(long)]
    construction: PathBuf,
    #[arg(long)]
    word: String,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Property {
    Distance,
    Wmu,
    Apd,
    Balance,
    Revdist,
    Runs,
    Census,
    Shifts,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum BalanceArg {
    Balanced,
    Gc,
    Almost,
}

#[derive(Debug, Args, Serialize)]
struct VerifyArgs {
    property: Property,
    /// Word list (lines, CSV, FASTA) or a construction artifact.
    #[arg(long)]
    words: PathBuf,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    kappa: Option<usize>,
    #[arg(long)]
    f: Option<usize>,
    #[arg(long, value_enum, default_value_t = BalanceArg::Gc)]
    mode: BalanceArg,
    /// Longest run allowed by `runs`.
    #[arg(long)]
    max_run: Option<usize>,
    /// Sample instead of enumerating.
    #[arg(long)]
    sampled: bool,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum FormatArg {
    Lines,
    Csv,
    Fasta,
}

#[derive(Debug, Args, Serialize)]
struct ExportArgs {
    /// Construction artifact or word list.
    #[arg(long)]
    codebook: PathBuf,
    #[arg(long, value_enum, default_value_t = FormatArg::Lines)]
    format: FormatArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum DemoCmd {
    /// The [15,9] code over GF(4) with g = 1+x+ω̄x²+x³+ω̄x⁴+x⁵+x⁶.
    Example1 {
        /// Directory for the code, rc set and codebook artifacts.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn resolve(p: &Path) -> Result<String> {
    Ok(std::fs::canonicalize(p).with_context(|| format!("input {} not found", p.display()))?.display().to_string())
}

fn config(cli: &Cli, name: &str, inputs: &[&PathBuf], out: Option<&PathBuf>) -> Result<RunConfig> {
    let params = serde_json::to_value(&cli.command)?;
    let params = match params {
        serde_json::Value::Object(mut m) if m.len() == 1 => m.remove(&m.keys().next().unwrap().clone()).unwrap(),
        v => v,
    };
    Ok(RunConfig {
        subcommand: name.into(),
        params,
        inputs: inputs.iter().map(|p| resolve(p)).collect::<Result<_>>()?,
        output: out.map(|p| p.display().to_string()),
        seed: cli.seed,
        budget: cli.budget,
    })
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Code { which } => code_cmd(cli, which),
        Command::Construct(a) => construct(cli, a),
        Command::Rcgen { which } => rcgen(cli, which),
        Command::Encode(a) => {
            config(cli, "encode", &[&a.construction], None)?;
            let art: ConstructionArtifact = read_json(&a.construction)?;
            let w = art.construction.build()?.encode(a.message.as_deref(), a.index)?;
            println!("{}", w.render());
            Ok(true)
        }
        Command::Decode(a) => {
            config(cli, "decode", &[&a.construction], None)?;
            let art: ConstructionArtifact = read_json(&a.construction)?;
            let built = art.construction.build()?;
            let (m, i) = built.decode(&parse_word(a.word.trim())?)?;
            println!("{}", serde_json::json!({ "message": m, "index": i }));
            Ok(true)
        }
        Command::Verify(a) => verify(cli, a),
        Command::Export(a) => {
            config(cli, "export", &[&a.codebook], a.out.as_ref())?;
            let words = load_words(&a.codebook)?;
            let fmt = match a.format {
                FormatArg::Lines => ExportFormat::Lines,
                FormatArg::Csv => ExportFormat::Csv,
                FormatArg::Fasta => ExportFormat::Fasta,
            };
            let text = export(&words, fmt);
            match &a.out {
                Some(p) => write_atomic(p, text.as_bytes())?,
                None => print!("{text}"),
            }
            Ok(true)
        }
        Command::Demo { which: DemoCmd::Example1 { out_dir } } => demo_example1(cli, out_dir.as_deref()),
    }
}

fn code_cmd(cli: &Cli, which: &CodeCmd) -> Result<bool> {
    let (code, out): (CyclicCode, _) = match which {
        CodeCmd::Bch { m, d, out } => (bch_narrow_sense(*m, *d)?, out),
        CodeCmd::ReversibleBch { q, m, delta, out } => (reversible_bch(*q, *m, *delta)?, out),
        CodeCmd::FromGenerator { q, n, g, out } => {
            let field = BaseField::from_q(*q)?;
            (code_from_generator(*q, *n, &Poly::new(field, parse_coeffs(g)?)?)?, out)
        }
    };
    let code = exact_distance(code, cli.budget);
    let cfg = config(cli, "code build", &[], out.as_ref())?;
    write_json(&cfg, CodeDescriptor::new(&code), out.as_deref())?;
    Ok(true)
}

fn need_code(a: &ConstructArgs) -> Result<CyclicCode> {
    read_code(a.code.as_ref().ok_or_else(|| anyhow!("--code is required for this construction"))?)
}

fn rc_set(a: &ConstructArgs, code: &CyclicCode, flavor: RcFlavor) -> Result<RcGenSetJson> {
    match &a.rc {
        Some(p) => read_rc(p),
        None => Ok(search_rc_generating(code, flavor)?.to_json()),
    }
}

fn construct(cli: &Cli, a: &ConstructArgs) -> Result<bool> {
    let inputs: Vec<&PathBuf> = a.code.iter().chain(a.rc.iter()).collect();
    let cfg = config(cli, "construct", &inputs, a.out.as_ref())?;
    let spec = match a.kind {
        ConstructKind::BinBalanced => {
            let code = need_code(a)?;
            let hstar = match &a.hstar {
                Some(h) => parse_coeffs(h)?,
                None => tavares_hstar_candidates(&code)?
                    .into_iter()
                    .next()
                    .ok_or_else(|| anyhow!("no h* candidate for this code"))?
                    .into_coeffs(),
            };
            ConstructionSpec::BinBalanced { code: CodeSpec::from_code(&code), hstar }
        }
        ConstructKind::GcBalanced => {
            let sa = BchSpec { m: a.a_m, d: a.a_d, shorten: a.a_shorten };
            let ea = sa.encoder()?;
            let b_len = (1usize << a.b_m) - 1;
            let sb = BchSpec { m: a.b_m, d: a.b_d, shorten: a.b_shorten.unwrap_or(b_len.saturating_sub(ea.k())) };
            let multiplicity = match a.multiplicity {
                Some(m) => m,
                None => GcBalancedCode::max_multiplicity(&ea, &sb.encoder()?),
            };
            ConstructionSpec::GcBalanced { a: sa, b: sb, multiplicity }
        }
        ConstructKind::PrimerGeneral => {
            let b = BchSpec { m: a.b_m.max(6), d: a.b_d.max(5), shorten: a.b_shorten.unwrap_or(19) };
            let prefix = match a.prefix {
                PrefixArg::ZerosOne => PrimerPrefix::ZerosOne,
                PrefixArg::ZeroOnes => PrimerPrefix::ZeroOnes,
            };
            ConstructionSpec::PrimerGeneral { ell: a.ell, r: a.r, b, prefix }
        }
        ConstructKind::PrimerAlmost => ConstructionSpec::PrimerAlmost { code: CodeSpec::from_code(&need_code(a)?) },
        ConstructKind::PrimerRc => {
            let code = need_code(a)?;
            let rc = rc_set(a, &code, RcFlavor::Rc)?;
            ConstructionSpec::PrimerRc { code: CodeSpec::from_code(&code), rc }
        }
        ConstructKind::DnaComputing => {
            let code = need_code(a)?;
            let rc = rc_set(a, &code, RcFlavor::Rc2)?;
            ConstructionSpec::DnaComputing { code: CodeSpec::from_code(&code), rc }
        }
    };
    let built = spec.build()?;
    let mut meta = built.meta(spec.name());
    let words = if a.sub_degree.is_some() || (meta.size as u64) <= a.max_words {
        let w = built.words(a.sub_degree)?;
        meta.size = w.len();
        Some(w.iter().map(Word::render).collect())
    } else {
        None
    };
    write_json(&cfg, ConstructionArtifact { construction: spec, meta, words }, a.out.as_deref())?;
    Ok(true)
}

fn rcgen(cli: &Cli, which: &RcgenCmd) -> Result<bool> {
    match which {
        RcgenCmd::Validate { code, rc, flavor, out } => {
            let cfg = config(cli, "rcgen validate", &[code, rc], out.as_ref())?;
            let code = read_code(code)?;
            let mut set = RcGenSet::from_json(&read_rc(rc)?, code.field())?;
            if let Some(f) = flavor {
                set.flavor = (*f).into();
            }
            let report = validate_rc_generating(&code, &set)?;
            let ok = report.ok;
            write_json(&cfg, serde_json::json!({ "report": report }), out.as_deref())?;
            Ok(ok)
        }
        RcgenCmd::Search { code, flavor, out } => {
            let cfg = config(cli, "rcgen search", &[code], out.as_ref())?;
            let code = read_code(code)?;
            let set = search_rc_generating(&code, (*flavor).into())?;
            write_json(&cfg, set.to_json(), out.as_deref())?;
            Ok(true)
        }
    }
}

/// A construction artifact's words, or a plain word list.
fn load_words(path: &Path) -> Result<Vec<Word>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.trim_start().starts_with('{') {
        let art: ConstructionArtifact = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        let words = art.words.ok_or_else(|| anyhow!("{} holds no enumerated words", path.display()))?;
        return words.iter().map(|w| Ok(parse_word(w)?)).collect();
    }
    Ok(parse_words(&text)?)
}

fn exhaustive(property: String, witness: Option<oracle::Witness>, work: usize, value: usize) -> VerificationReport {
    let verdict = if witness.is_some() { oracle::Verdict::Fail } else { oracle::Verdict::Pass };
    VerificationReport { property, verdict, witness, work: work as u64, mode: oracle::Mode::Exhaustive, value: Some(value as u64) }
}

#[derive(Serialize)]
struct VerifyBody {
    words: usize,
    pass: bool,
    reports: Vec<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    census: Option<oracle::Census>,
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Result<bool> {
    let cfg = config(cli, "verify", &[&a.words], a.out.as_ref())?;
    let words = load_words(&a.words)?;
    if words.is_empty() {
        bail!("no words in {}", a.words.display());
    }
    let q = words[0].field().q();
    let raw: Vec<Vec<u8>> = words.iter().map(|w| w.symbols().to_vec()).collect();
    let opts = OracleOptions { budget: cli.budget, seed: cli.seed, trials: a.trials, force_sampled: a.sampled };
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| anyhow!("--{flag} is required"));
    let mut census = None;
    let reports = match a.property {
        Property::Distance => vec![oracle::verify_distance(&raw, need(a.d, "d")?, &opts)],
        Property::Wmu => vec![oracle::verify_wmu(&raw, need(a.kappa, "kappa")?, &opts)],
        Property::Apd => vec![oracle::verify_apd(&raw, need(a.f, "f")?, &opts)],
        Property::Balance => {
            let kind = match a.mode {
                BalanceArg::Balanced => BalanceKind::Balanced,
                BalanceArg::Gc => BalanceKind::Gc,
                BalanceArg::Almost => BalanceKind::Almost,
            };
            vec![oracle::verify_balance(&raw, q, kind)]
        }
        Property::Revdist => vec![oracle::verify_reverse_distances(&raw, need(a.d, "d")?, &opts)],
        Property::Runs => {
            let run = oracle::max_run(&raw);
            let limit = need(a.max_run, "max-run")?;
            let witness = (run > limit).then(|| oracle::Witness { a: 0, b: 0, detail: format!("a run of length {run}") });
            vec![exhaustive(format!("max-run<={limit}"), witness, raw.len(), run)]
        }
        Property::Census => {
            let c = oracle::cyclic_class_census(&raw);
            let witness =
                (!c.closed).then(|| oracle::Witness { a: 0, b: 0, detail: "a rotation leaves the list".into() });
            let r = exhaustive("cyclic-closure".into(), witness, raw.len(), c.classes);
            census = Some(c);
            vec![r]
        }
        Property::Shifts => oracle::verify_shift_conditions(&raw).to_vec(),
    };
    let pass = oracle::all_pass(&reports);
    write_json(&cfg, VerifyBody { words: words.len(), pass, reports, census }, a.out.as_deref())?;
    Ok(pass)
}

#[derive(Serialize)]
struct DemoBody {
    n: usize,
    k: usize,
    distance: usize,
    distance_exact: bool,
    reversible: bool,
    contains_all_one: bool,
    rc: RcGenSetJson,
    rc_ok: bool,
    kstar: usize,
    size: u64,
    at_least_2_pow_14: bool,
    redundancy: f64,
    redundancy_bound: f64,
}

fn demo_example1(cli: &Cli, out_dir: Option<&Path>) -> Result<bool> {
    let g = Poly::new(BaseField::Gf4, vec![1, 1, W1, 1, W1, 1, 1])?;
    let code = exact_distance(code_from_generator(4, 15, &g)?, cli.budget);
    let d = code.distance().ok_or_else(|| anyhow!("distance unavailable"))?;
    let props = code.properties();
    let rc = RcGenSetJson { hstar: vec![1, W, W, W, 1], p: EXAMPLE_P.iter().map(|c| c.to_vec()).collect(), flavor: RcFlavor::Rc };
    let set = RcGenSet::from_json(&rc, BaseField::Gf4)?;
    let report = validate_rc_generating(&code, &set)?;
    let kstar = set.kstar(code.k()).ok_or_else(|| anyhow!("deg h* exceeds k"))?;
    let primer = construct_primer_rc(code.clone(), set)?;
    let size = primer.size();
    let red = primer.redundancy();
    let bound = primer.redundancy_bound().unwrap_or(f64::NAN);

    println!("code        [{}, {}] over GF(4), d = {} ({:?})", code.n(), code.k(), d.value, d.status);
    println!("reversible  {}", props.reversible);
    println!("all-one     {}", props.contains_all_one);
    println!("rc set      P = {}, deg h* = 4, k* = {kstar}, valid = {}", rc.p.len(), report.ok);
    println!("size        {size} = {}·4^{kstar}", rc.p.len());
    println!("≥ 2^14: {}", size >= 1 << 14);
    println!();
    println!("{:<28} {:>10}", "quantity", "value");
    println!("{:<28} {:>10.4}", "n − log4 |C|", red);
    println!("{:<28} {:>10.4}", "(d+1)·log4(n+1)", bound);
    println!("{:<28} {:>10}", "within bound", red <= bound);

    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        let cfg = config(cli, "demo example1", &[], Some(&dir.to_path_buf()))?;
        write_json(&cfg, CodeDescriptor::new(&code), Some(&dir.join("code.json")))?;
        write_json(&cfg, rc.clone(), Some(&dir.join("rc.json")))?;
        let spec = ConstructionSpec::PrimerRc { code: CodeSpec::from_code(&code), rc: rc.clone() };
        let built = spec.build()?;
        let mut meta = built.meta(spec.name());
        let words: Vec<String> = built.words(None)?.iter().map(Word::render).collect();
        meta.size = words.len();
        write_json(&cfg, ConstructionArtifact { construction: spec, meta, words: Some(words) }, Some(&dir.join("codebook.json")))?;
        let body = DemoBody {
            n: code.n(),
            k: code.k(),
            distance: d.value,
            distance_exact: d.status == primer_codes::cyclic::DistanceStatus::Exact,
            reversible: props.reversible,
            contains_all_one: props.contains_all_one,
            rc,
            rc_ok: report.ok,
            kstar,
            size,
            at_least_2_pow_14: size >= 1 << 14,
            redundancy: red,
            redundancy_bound: bound,
        };
        write_json(&cfg, body, Some(&dir.join("summary.json")))?;
    }
    Ok(report.ok && size >= 1 << 14)
}

const EXAMPLE_P: [&[u8]; 17] = [
    &[W],
    &[W1],
    &[1],
    &[W, W],
    &[W1, W1],
    &[1, 1],
    &[W1, W, W],
    &[1, 0, W1, W],
    &[0, 1, W1, W],
    &[W1, 1, W1, W],
    &[1, 1, W1, W],
    &[0, 0, 1, W],
    &[1, 1, 1, W],
    &[W, W, W, W1],
    &[W1, W1, W, W1],
    &[1, W, 1, W1],
    &[W1, W1, W, 1],
];
