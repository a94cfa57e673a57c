//! Brute-force verification over raw symbol vectors.
//!
//! Nothing here calls into the constructions. Symbols are 0..q with the
//! complement of s being s ^ 1 for both alphabets (0↔1 in binary,
//! A↔T and C↔G in DNA). Checks whose work exceeds the budget fall back to
//! seeded sampling and say so.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    SampledPass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled { seed: u64, trials: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub a: usize,
    pub b: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub property: String,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub work: u64,
    pub mode: Mode,
    /// Extremal value observed, where the property has one.
    pub value: Option<u64>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict != Verdict::Fail
    }

    pub fn is_exhaustive(&self) -> bool {
        self.mode == Mode::Exhaustive
    }

    fn new(property: impl Into<String>, witness: Option<Witness>, work: u64, mode: Mode, value: Option<u64>) -> Self {
        let verdict = match (&witness, mode) {
            (Some(_), _) => Verdict::Fail,
            (None, Mode::Exhaustive) => Verdict::Pass,
            (None, Mode::Sampled { .. }) => Verdict::SampledPass,
        };
        VerificationReport { property: property.into(), verdict, witness, work, mode, value }
    }
}

/// Conjunction of verdicts.
pub fn all_pass(reports: &[VerificationReport]) -> bool {
    reports.iter().all(VerificationReport::passed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOptions {
    pub budget: u64,
    pub seed: u64,
    pub trials: u64,
    /// Sample even when exhaustive work fits the budget.
    pub force_sampled: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { budget: DEFAULT_BUDGET, seed: 0, trials: 10_000, force_sampled: false }
    }
}

impl OracleOptions {
    pub fn sampled(seed: u64, trials: u64) -> Self {
        OracleOptions { seed, trials, force_sampled: true, ..Default::default() }
    }

    fn exhaustive(&self, work: u64) -> bool {
        !self.force_sampled && work <= self.budget
    }

    fn mode(&self) -> Mode {
        Mode::Sampled { seed: self.seed, trials: self.trials }
    }

    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count() + a.len().abs_diff(b.len())
}

fn comp(a: &[u8]) -> Vec<u8> {
    a.iter().map(|&s| s ^ 1).collect()
}

fn rev(a: &[u8]) -> Vec<u8> {
    a.iter().rev().copied().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceResult {
    /// Minimum distance; `n + 1` when fewer than two words exist.
    pub d: usize,
    pub mode: Mode,
    pub single_word: bool,
    pub witness: Option<(usize, usize)>,
    pub work: u64,
}

/// Minimum pairwise distance; sampled results are upper bounds.
pub fn min_distance(words: &[Vec<u8>], opts: &OracleOptions) -> DistanceResult {
    let n = words.iter().map(Vec::len).max().unwrap_or(0);
    let count = words.len() as u64;
    if count < 2 {
        return DistanceResult { d: n + 1, mode: Mode::Exhaustive, single_word: true, witness: None, work: 0 };
    }
    let pairs = count * (count - 1) / 2;
    if opts.exhaustive(pairs) {
        let best = (0..words.len())
            .into_par_iter()
            .filter_map(|i| {
                (i + 1..words.len()).map(|j| (hamming(&words[i], &words[j]), i, j)).min()
            })
            .min()
            .expect("at least one pair");
        return DistanceResult { d: best.0, mode: Mode::Exhaustive, single_word: false, witness: Some((best.1, best.2)), work: pairs };
    }
    let mut rng = opts.rng();
    let mut best = (usize::MAX, 0, 0);
    for _ in 0..opts.trials {
        let i = rng.gen_range(0..words.len());
        let mut j = rng.gen_range(0..words.len() - 1);
        if j >= i {
            j += 1;
        }
        best = best.min((hamming(&words[i], &words[j]), i.min(j), i.max(j)));
    }
    DistanceResult { d: best.0, mode: opts.mode(), single_word: false, witness: Some((best.1, best.2)), work: opts.trials }
}

const GF4_MUL: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];

fn mul_sym(q: u32, a: u8, b: u8) -> u8 {
    if q == 2 {
        a & b
    } else {
        GF4_MUL[a as usize][b as usize]
    }
}

/// Minimum nonzero weight of {m·g mod Xⁿ−1 : deg m < n − deg g}, exhaustive
/// over all messages. `None` when qᵏ exceeds the budget.
pub fn min_distance_linear(q: u32, n: usize, g: &[u8], opts: &OracleOptions) -> Option<DistanceResult> {
    let deg = g.iter().rposition(|&c| c != 0)?;
    let k = n.checked_sub(deg)?;
    let total = (q as u64).checked_pow(k as u32)?;
    if total > opts.budget || k == 0 {
        return None;
    }
    let best = (1..total)
        .into_par_iter()
        .map(|idx| {
            let mut x = idx;
            let mut c = vec![0u8; n];
            for i in 0..k {
                let m = (x % q as u64) as u8;
                x /= q as u64;
                if m == 0 {
                    continue;
                }
                for (j, &gj) in g[..=deg].iter().enumerate() {
                    c[(i + j) % n] ^= mul_sym(q, m, gj);
                }
            }
            (c.iter().filter(|&&s| s != 0).count(), idx)
        })
        .min()?;
    Some(DistanceResult { d: best.0, mode: Mode::Exhaustive, single_word: false, witness: Some((0, best.1 as usize)), work: total })
}

/// Pass iff every pairwise distance is at least `d`.
pub fn verify_distance(words: &[Vec<u8>], d: usize, opts: &OracleOptions) -> VerificationReport {
    let r = min_distance(words, opts);
    let witness = (r.d < d).then(|| {
        let (a, b) = r.witness.unwrap_or((0, 0));
        Witness { a, b, detail: format!("distance {} < {d}", r.d) }
    });
    VerificationReport::new(format!("min-distance>={d}"), witness, r.work, r.mode, Some(r.d as u64))
}

/// κ-WMU: for all ordered pairs (a, b), including a = b, and κ ≤ ℓ < n,
/// a[1, ℓ] ≠ b[n−ℓ+1, n].
pub fn verify_wmu(words: &[Vec<u8>], kappa: usize, opts: &OracleOptions) -> VerificationReport {
    let property = format!("{kappa}-wmu");
    let n = words.iter().map(Vec::len).max().unwrap_or(0);
    let kappa = kappa.max(1);
    let lengths = n.saturating_sub(kappa) as u64;
    let work = 2 * words.len() as u64 * lengths;
    if opts.exhaustive(work) {
        for l in kappa..n {
            let mut prefixes: HashMap<&[u8], usize> = HashMap::new();
            for (i, w) in words.iter().enumerate() {
                if w.len() > l {
                    prefixes.entry(&w[..l]).or_insert(i);
                }
            }
            for (j, w) in words.iter().enumerate() {
                if w.len() > l {
                    if let Some(&i) = prefixes.get(&w[w.len() - l..]) {
                        let detail = format!("prefix of length {l} of word {i} is a suffix of word {j}");
                        return VerificationReport::new(property, Some(Witness { a: i, b: j, detail }), work, Mode::Exhaustive, None);
                    }
                }
            }
        }
        return VerificationReport::new(property, None, work, Mode::Exhaustive, None);
    }
    let mut rng = opts.rng();
    if words.is_empty() {
        return VerificationReport::new(property, None, 0, opts.mode(), None);
    }
    for _ in 0..opts.trials {
        let (i, j) = (rng.gen_range(0..words.len()), rng.gen_range(0..words.len()));
        let (a, b) = (&words[i], &words[j]);
        for l in kappa..a.len().min(b.len()) {
            if a[..l] == b[b.len() - l..] {
                let detail = format!("prefix of length {l} of word {i} is a suffix of word {j}");
                return VerificationReport::new(property, Some(Witness { a: i, b: j, detail }), opts.trials, opts.mode(), None);
            }
        }
    }
    VerificationReport::new(property, None, opts.trials, opts.mode(), None)
}

/// f-APD: the complement of no length-f window of any a equals a window of
/// any b read forwards or backwards (all ordered pairs, a = b included).
pub fn verify_apd(words: &[Vec<u8>], f: usize, opts: &OracleOptions) -> VerificationReport {
    let property = format!("{f}-apd");
    let windows: u64 = words.iter().map(|w| (w.len() + 1).saturating_sub(f) as u64).sum();
    let work = 3 * windows;
    if f == 0 {
        return VerificationReport::new(property, None, 0, Mode::Exhaustive, None);
    }
    if opts.exhaustive(work) {
        let mut seen: HashMap<Vec<u8>, (usize, usize, bool)> = HashMap::new();
        for (j, w) in words.iter().enumerate() {
            for (p, win) in w.windows(f).enumerate() {
                seen.entry(win.to_vec()).or_insert((j, p, false));
                seen.entry(rev(win)).or_insert((j, p, true));
            }
        }
        for (i, w) in words.iter().enumerate() {
            for (p, win) in w.windows(f).enumerate() {
                if let Some(&(j, pj, reversed)) = seen.get(&comp(win)) {
                    let how = if reversed { "reversed " } else { "" };
                    let detail = format!("complement of window {p} of word {i} equals {how}window {pj} of word {j}");
                    return VerificationReport::new(property, Some(Witness { a: i, b: j, detail }), work, Mode::Exhaustive, None);
                }
            }
        }
        return VerificationReport::new(property, None, work, Mode::Exhaustive, None);
    }
    let mut rng = opts.rng();
    if words.is_empty() {
        return VerificationReport::new(property, None, 0, opts.mode(), None);
    }
    for _ in 0..opts.trials {
        let (i, j) = (rng.gen_range(0..words.len()), rng.gen_range(0..words.len()));
        let bw: HashSet<Vec<u8>> = words[j].windows(f).flat_map(|w| [w.to_vec(), rev(w)]).collect();
        for (p, win) in words[i].windows(f).enumerate() {
            if bw.contains(&comp(win)) {
                let detail = format!("complement of window {p} of word {i} occurs in word {j}");
                return VerificationReport::new(property, Some(Witness { a: i, b: j, detail }), opts.trials, opts.mode(), None);
            }
        }
    }
    VerificationReport::new(property, None, opts.trials, opts.mode(), None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BalanceKind {
    /// Binary weight in {⌊n/2⌋, ⌈n/2⌉}.
    Balanced,
    /// Count of C/G (symbols 2, 3) in {⌊n/2⌋, ⌈n/2⌉}.
    Gc,
    /// Weight (q = 2) or GC count (q = 4) within one of the balanced values.
    Almost,
}

pub fn verify_balance(words: &[Vec<u8>], q: u32, kind: BalanceKind) -> VerificationReport {
    let count = |w: &[u8], gc: bool| w.iter().filter(|&&s| if gc { s >= 2 } else { s == 1 }).count();
    for (i, w) in words.iter().enumerate() {
        let n = w.len();
        let (c, lo, hi) = match kind {
            BalanceKind::Balanced => (count(w, false), n / 2, n.div_ceil(2)),
            BalanceKind::Gc => (count(w, true), n / 2, n.div_ceil(2)),
            BalanceKind::Almost => (count(w, q == 4), (n / 2).saturating_sub(1), n.div_ceil(2) + 1),
        };
        if c < lo || c > hi {
            let detail = format!("count {c} outside {lo}..={hi}");
            return VerificationReport::new(format!("balance-{kind:?}").to_lowercase(), Some(Witness { a: i, b: i, detail }), i as u64 + 1, Mode::Exhaustive, None);
        }
    }
    VerificationReport::new(format!("balance-{kind:?}").to_lowercase(), None, words.len() as u64, Mode::Exhaustive, None)
}

/// d(a, bʳ) ≥ d and d(a, b^rc) ≥ d over all ordered pairs, a = b included.
pub fn verify_reverse_distances(words: &[Vec<u8>], d: usize, opts: &OracleOptions) -> VerificationReport {
    let property = format!("reverse-distances>={d}");
    let n = words.len();
    let r: Vec<Vec<u8>> = words.iter().map(|w| rev(w)).collect();
    let rc: Vec<Vec<u8>> = r.iter().map(|w| comp(w)).collect();
    let pair = |i: usize, j: usize| {
        let (x, y) = (hamming(&words[i], &r[j]), hamming(&words[i], &rc[j]));
        (x.min(y), i, j, if x <= y { "reverse" } else { "reverse-complement" })
    };
    let work = (n as u64) * (n as u64);
    let (best, mode, work) = if opts.exhaustive(work) {
        let best = (0..n).into_par_iter().filter_map(|i| (0..n).map(|j| pair(i, j)).min()).min();
        (best, Mode::Exhaustive, work)
    } else {
        let mut rng = opts.rng();
        let best = (0..opts.trials).map(|_| pair(rng.gen_range(0..n), rng.gen_range(0..n))).min();
        (best, opts.mode(), opts.trials)
    };
    let Some((v, i, j, which)) = best else {
        return VerificationReport::new(property, None, 0, Mode::Exhaustive, None);
    };
    let witness = (v < d).then(|| Witness { a: i, b: j, detail: format!("distance {v} to the {which} of word {j}") });
    VerificationReport::new(property, witness, work, mode, Some(v as u64))
}

/// Longest run of equal symbols over the non-constant words.
pub fn max_run(words: &[Vec<u8>]) -> usize {
    words
        .iter()
        .filter(|w| w.windows(2).any(|p| p[0] != p[1]))
        .map(|w| {
            let (mut best, mut cur) = (0, 0);
            for (k, s) in w.iter().enumerate() {
                cur = if k > 0 && w[k - 1] == *s { cur + 1 } else { 1 };
                best = best.max(cur);
            }
            best
        })
        .max()
        .unwrap_or(0)
}

fn min_rotation(w: &[u8]) -> Vec<u8> {
    let n = w.len();
    (0..n.max(1))
        .map(|i| w[i % n.max(1)..].iter().chain(&w[..i % n.max(1)]).copied().collect::<Vec<u8>>())
        .min()
        .unwrap_or_default()
}

fn orbit_size(w: &[u8]) -> usize {
    let n = w.len();
    (1..=n).find(|&p| n.is_multiple_of(p) && (0..n).all(|i| w[i] == w[(i + p) % n])).unwrap_or(n)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub classes: usize,
    /// Orbit sizes, ascending.
    pub orbit_sizes: Vec<usize>,
    /// Words seen per class equal the orbit size for every class.
    pub closed: bool,
}

/// Cyclic classes keyed by lexicographically least rotation.
pub fn cyclic_class_census(words: &[Vec<u8>]) -> Census {
    let mut buckets: BTreeMap<Vec<u8>, usize> = BTreeMap::new();
    for w in words {
        *buckets.entry(min_rotation(w)).or_default() += 1;
    }
    let mut closed = true;
    let mut orbit_sizes: Vec<usize> = buckets
        .iter()
        .map(|(k, &seen)| {
            let o = orbit_size(k);
            closed &= seen == o;
            o
        })
        .collect();
    orbit_sizes.sort_unstable();
    Census { classes: buckets.len(), orbit_sizes, closed }
}

/// Shift conditions over all pairs u, v (not necessarily distinct): no
/// nontrivial rotation of u equals v, and no rotation of u equals vʳ or v^rc.
pub fn verify_shift_conditions(words: &[Vec<u8>]) -> Vec<VerificationReport> {
    let work = words.len() as u64;
    let mut keys: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut s1 = None;
    for (i, w) in words.iter().enumerate() {
        if orbit_size(w) != w.len() {
            s1.get_or_insert(Witness { a: i, b: i, detail: format!("word {i} is fixed by a nontrivial rotation") });
        }
        if let Some(&j) = keys.get(&min_rotation(w)) {
            s1.get_or_insert(Witness { a: j, b: i, detail: format!("word {i} is a rotation of word {j}") });
        }
        keys.entry(min_rotation(w)).or_insert(i);
    }
    let scan = |f: &dyn Fn(&[u8]) -> Vec<u8>, name: &str| {
        words.iter().enumerate().find_map(|(j, v)| {
            keys.get(&min_rotation(&f(v)))
                .map(|&i| Witness { a: i, b: j, detail: format!("a rotation of word {i} is the {name} of word {j}") })
        })
    };
    let s2 = scan(&|v| rev(v), "reverse");
    let s3 = scan(&|v| comp(&rev(v)), "reverse-complement");
    vec![
        VerificationReport::new("shift-distinct", s1, work, Mode::Exhaustive, None),
        VerificationReport::new("shift-reverse", s2, work, Mode::Exhaustive, None),
        VerificationReport::new("shift-reverse-complement", s3, work, Mode::Exhaustive, None),
    ]
}
