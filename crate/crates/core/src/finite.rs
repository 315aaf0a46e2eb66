//! Classification of SD maps on 𝔽_p.
//!
//! Any SD map is multiplicative and injective, so on the cyclic group 𝔽_p^×
//! it is a power map `x ↦ x^k` with `gcd(k, p−1) = 1`; oddness forces `k`
//! odd. The structured search only tries those. Within budget it is
//! cross-checked against two assumption-free oracles: all `p^p` maps, and
//! all permutations fixing `0`, `1` and `−1`.

use std::collections::BTreeMap;
use std::time::Instant;

use itertools::Itertools;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fields::{all_pairs, PrimeField, PrimeFieldElement};
use crate::sd::{check_sd, SdCandidate};

pub const ALL_MAPS_MAX_P: u64 = 7;
pub const CONSTRAINED_MAX_P: u64 = 13;
pub const DEFAULT_MAX_PRIME: u64 = 10007;
/// Table arithmetic multiplies residues in `u64`.
const HARD_MAX_PRIME: u64 = 1 << 31;
/// Above this size post-hoc re-verification samples pairs instead of
/// enumerating all `p(p−1)` of them.
pub const EXHAUSTIVE_RECHECK_MAX_P: u64 = 1009;
const RECHECK_SAMPLE: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Provenance {
    AllMapsOracle,
    ConstrainedOracle,
    PowerMap { k: u64 },
}

/// A self-map of 𝔽_p given by its value table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMap {
    pub p: u64,
    pub table: Vec<u64>,
    pub provenance: Provenance,
}

impl FpMap {
    pub fn power(p: u64, k: u64) -> Self {
        let t = Tables::new(p);
        FpMap {
            p,
            table: t.power_table(k),
            provenance: Provenance::PowerMap { k },
        }
    }

    pub fn k(&self) -> Option<u64> {
        match self.provenance {
            Provenance::PowerMap { k } => Some(k),
            _ => None,
        }
    }
}

impl Serialize for FpMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FpMap", 3)?;
        match self.provenance {
            Provenance::PowerMap { k } => {
                st.serialize_field("k", &k)?;
                st.serialize_field("provenance", "power_map")?;
            }
            Provenance::AllMapsOracle => st.serialize_field("provenance", "all_maps_oracle")?,
            Provenance::ConstrainedOracle => st.serialize_field("provenance", "constrained_oracle")?,
        }
        st.serialize_field("table", &self.table)?;
        st.end()
    }
}

impl SdCandidate<PrimeField> for FpMap {
    fn apply(&self, field: &PrimeField, x: &PrimeFieldElement) -> PrimeFieldElement {
        field.elem(self.table[x.value as usize] as i64)
    }
    fn name(&self) -> String {
        match self.k() {
            Some(k) => format!("x^{k} on F_{}", self.p),
            None => format!("table {:?} on F_{}", self.table, self.p),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    PowerMapSearch,
    ConstrainedOracle,
    AllMapsOracle,
}

/// The strongest oracle `classify` may run. `Auto` runs every affordable one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OracleTier {
    #[default]
    Auto,
    AllMaps,
    Constrained,
    None,
}

impl std::str::FromStr for OracleTier {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(OracleTier::Auto),
            "all-maps" => Ok(OracleTier::AllMaps),
            "constrained" => Ok(OracleTier::Constrained),
            "none" => Ok(OracleTier::None),
            _ => Err(Error::Parse(format!("unknown oracle tier {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    pub max_oracle_tier: OracleTier,
    pub max_prime: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            max_oracle_tier: OracleTier::Auto,
            max_prime: DEFAULT_MAX_PRIME,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ClassificationStats {
    pub candidates_examined: u64,
    pub pairs_checked: u64,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationResult {
    pub p: u64,
    /// Sorted by table.
    pub maps: Vec<FpMap>,
    /// Strongest method whose result was used.
    pub method: Method,
    /// Every method run; all agreed.
    pub methods_run: Vec<Method>,
    pub notes: Vec<String>,
    #[serde(skip)]
    pub stats: ClassificationStats,
}

impl ClassificationResult {
    pub fn tables(&self) -> Vec<Vec<u64>> {
        self.maps.iter().map(|m| m.table.clone()).collect()
    }

    pub fn contains_table(&self, table: &[u64]) -> bool {
        self.maps.iter().any(|m| m.table == table)
    }
}

/// Precomputed inverses and `(x+y)/(x−y)` so a map check is table lookups.
struct Tables {
    p: u64,
    inv: Vec<u64>,
}

/// First pair that breaks the equation; `rhs = None` means `f(x) = f(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub x: u64,
    pub y: u64,
    pub lhs: u64,
    pub rhs: Option<u64>,
}

impl Tables {
    fn new(p: u64) -> Self {
        let mut inv = vec![0u64; p as usize];
        for x in 1..p {
            inv[x as usize] = PrimeFieldElement { value: x, p }.pow(p - 2).value;
        }
        Tables { p, inv }
    }

    fn power_table(&self, k: u64) -> Vec<u64> {
        (0..self.p).map(|x| PrimeFieldElement { value: x, p: self.p }.pow(k).value).collect()
    }

    #[inline]
    fn check_pair(&self, t: &[u64], x: u64, y: u64) -> Option<Witness> {
        let p = self.p;
        let (fx, fy) = (t[x as usize], t[y as usize]);
        let arg = (x + y) % p * self.inv[((x + p - y) % p) as usize] % p;
        let lhs = t[arg as usize];
        if fx == fy {
            return Some(Witness { x, y, lhs, rhs: None });
        }
        let rhs = (fx + fy) % p * self.inv[((fx + p - fy) % p) as usize] % p;
        (lhs != rhs).then_some(Witness { x, y, lhs, rhs: Some(rhs) })
    }

    /// Pair order: `x` ascending, `y < x`, `(x, y)` before `(y, x)`.
    fn first_violation(&self, t: &[u64]) -> (Option<Witness>, u64) {
        let mut checked = 0;
        for x in 0..self.p {
            for y in 0..x {
                for (a, b) in [(x, y), (y, x)] {
                    checked += 1;
                    if let Some(w) = self.check_pair(t, a, b) {
                        return (Some(w), checked);
                    }
                }
            }
        }
        (None, checked)
    }
}

fn prime_field(p: u64) -> Result<PrimeField> {
    PrimeField::new(p)
}

#[derive(Debug, Default)]
struct Tally {
    candidates: u64,
    pairs: u64,
    found: Vec<Vec<u64>>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.candidates += other.candidates;
        self.pairs += other.pairs;
        self.found.extend(other.found);
        self
    }
}

fn oracle_result(p: u64, method: Method, provenance: Provenance, tally: Tally, start: Instant) -> ClassificationResult {
    let mut found = tally.found;
    found.sort();
    found.dedup();
    ClassificationResult {
        p,
        maps: found
            .into_iter()
            .map(|table| FpMap { p, table, provenance })
            .collect(),
        method,
        methods_run: vec![method],
        notes: Vec::new(),
        stats: ClassificationStats {
            candidates_examined: tally.candidates,
            pairs_checked: tally.pairs,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    }
}

/// Every one of the `p^p` maps, kept iff injective and satisfying the
/// equation on all ordered pairs.
pub fn oracle_all_maps(p: u64) -> Result<ClassificationResult> {
    prime_field(p)?;
    if p > ALL_MAPS_MAX_P {
        return Err(Error::BudgetExceeded(format!(
            "all-maps oracle needs p <= {ALL_MAPS_MAX_P}, got {p}"
        )));
    }
    let start = Instant::now();
    let tables = Tables::new(p);
    let n = p as usize;
    let tally = (0..p)
        .into_par_iter()
        .map(|first| {
            let mut tally = Tally::default();
            let mut t = vec![0u64; n];
            t[0] = first;
            loop {
                tally.candidates += 1;
                let (w, checked) = tables.first_violation(&t);
                tally.pairs += checked;
                if w.is_none() {
                    tally.found.push(t.clone());
                }
                // odometer over positions 1..n
                let mut i = 1;
                while i < n {
                    t[i] += 1;
                    if t[i] < p {
                        break;
                    }
                    t[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
            tally
        })
        .reduce(Tally::default, Tally::merge);
    Ok(oracle_result(p, Method::AllMapsOracle, Provenance::AllMapsOracle, tally, start))
}

/// Permutations of 𝔽_p fixing `0`, `1` and `p − 1`: `(p−3)!` candidates.
pub fn oracle_constrained(p: u64) -> Result<ClassificationResult> {
    prime_field(p)?;
    if p > CONSTRAINED_MAX_P {
        return Err(Error::BudgetExceeded(format!(
            "constrained oracle needs p <= {CONSTRAINED_MAX_P}, got {p}"
        )));
    }
    let start = Instant::now();
    let tables = Tables::new(p);
    let free: Vec<u64> = (2..p - 1).collect();
    let base = {
        let mut t = vec![0u64; p as usize];
        t[1] = 1;
        t[(p - 1) as usize] = p - 1;
        t
    };
    let run = |prefix: Option<u64>| {
        let mut tally = Tally::default();
        let rest: Vec<u64> = free.iter().copied().filter(|v| Some(*v) != prefix).collect();
        let offset = 2 + usize::from(prefix.is_some());
        let mut t = base.clone();
        if let Some(v) = prefix {
            t[2] = v;
        }
        for perm in rest.iter().copied().permutations(rest.len()) {
            for (i, v) in perm.into_iter().enumerate() {
                t[offset + i] = v;
            }
            tally.candidates += 1;
            let (w, checked) = tables.first_violation(&t);
            tally.pairs += checked;
            if w.is_none() {
                tally.found.push(t.clone());
            }
        }
        tally
    };
    let tally = if free.is_empty() {
        run(None)
    } else {
        free.par_iter().map(|&v| run(Some(v))).reduce(Tally::default, Tally::merge)
    };
    Ok(oracle_result(p, Method::ConstrainedOracle, Provenance::ConstrainedOracle, tally, start))
}

/// `k ∈ [1, p−1)` with `gcd(k, p−1) = 1` and `k` odd.
pub fn power_map_candidates(p: u64) -> Result<Vec<u64>> {
    prime_field(p)?;
    Ok((1..p - 1).filter(|k| k % 2 == 1 && k.gcd(&(p - 1)) == 1).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerMapVerdict {
    Pass,
    Fail(Witness),
}

/// Checks all `p(p−1)` ordered pairs for `x ↦ x^k`.
pub fn is_sd_power_map(p: u64, k: u64) -> Result<PowerMapVerdict> {
    prime_field(p)?;
    Ok(power_map_verdict(&Tables::new(p), k).0)
}

fn power_map_verdict(tables: &Tables, k: u64) -> (PowerMapVerdict, u64) {
    let t = tables.power_table(k);
    match tables.first_violation(&t) {
        (Some(w), n) => (PowerMapVerdict::Fail(w), n),
        (None, n) => (PowerMapVerdict::Pass, n),
    }
}

fn power_map_search(p: u64) -> Result<ClassificationResult> {
    let start = Instant::now();
    let candidates = power_map_candidates(p)?;
    let tables = Tables::new(p);
    let verdicts: Vec<(u64, PowerMapVerdict, u64)> = candidates
        .par_iter()
        .map(|&k| {
            let (v, n) = power_map_verdict(&tables, k);
            (k, v, n)
        })
        .collect();
    let mut maps: Vec<FpMap> = verdicts
        .iter()
        .filter(|(_, v, _)| *v == PowerMapVerdict::Pass)
        .map(|&(k, _, _)| FpMap {
            p,
            table: tables.power_table(k),
            provenance: Provenance::PowerMap { k },
        })
        .collect();
    maps.sort_by(|a, b| a.table.cmp(&b.table));
    maps.dedup_by(|a, b| a.table == b.table);
    Ok(ClassificationResult {
        p,
        maps,
        method: Method::PowerMapSearch,
        methods_run: vec![Method::PowerMapSearch],
        notes: Vec::new(),
        stats: ClassificationStats {
            candidates_examined: candidates.len() as u64,
            pairs_checked: verdicts.iter().map(|v| v.2).sum(),
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        },
    })
}

/// Power-map search, cross-checked against every oracle the tier and
/// budget allow, then re-verified map by map.
pub fn classify(p: u64, opts: &ClassifyOptions) -> Result<ClassificationResult> {
    let field = prime_field(p)?;
    if p > opts.max_prime.min(HARD_MAX_PRIME) {
        return Err(Error::BudgetExceeded(format!("p = {p} exceeds max prime {}", opts.max_prime)));
    }
    let start = Instant::now();
    let mut result = power_map_search(p)?;
    let (allow_all, allow_constrained) = match opts.max_oracle_tier {
        OracleTier::Auto | OracleTier::AllMaps => (true, true),
        OracleTier::Constrained => (false, true),
        OracleTier::None => (false, false),
    };
    let mut oracles = Vec::new();
    if allow_constrained && p <= CONSTRAINED_MAX_P {
        oracles.push(oracle_constrained(p)?);
    }
    if allow_all && p <= ALL_MAPS_MAX_P {
        oracles.push(oracle_all_maps(p)?);
    }
    for oracle in oracles {
        if oracle.tables() != result.tables() {
            return Err(Error::InternalInconsistency(format!(
                "F_{p}: {:?} found {:?}, power-map search found {:?}",
                oracle.method,
                oracle.tables(),
                result.tables()
            )));
        }
        result.method = result.method.max(oracle.method);
        result.methods_run.push(oracle.method);
        result.stats.candidates_examined += oracle.stats.candidates_examined;
        result.stats.pairs_checked += oracle.stats.pairs_checked;
    }
    if result.methods_run.len() == 1 {
        result.notes.push("no oracle within budget; power-map restriction trusted".into());
    }
    for map in &result.maps {
        result.stats.pairs_checked += reverify(&field, map)?;
    }
    if !result.contains_table(&(0..p).collect::<Vec<_>>()) {
        return Err(Error::InternalInconsistency(format!("F_{p}: identity missing from result")));
    }
    result.stats.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(result)
}

/// Independent post-hoc check of one map through the generic checker plus
/// bijectivity, fixed points and multiplicativity on 𝔽_p^×.
fn reverify(field: &PrimeField, map: &FpMap) -> Result<u64> {
    let p = map.p;
    let fail = |what: String| Error::InternalInconsistency(format!("F_{p}, {}: {what}", map.name()));
    let pairs = if p <= EXHAUSTIVE_RECHECK_MAX_P {
        all_pairs(field)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        (0..RECHECK_SAMPLE)
            .map(|_| {
                let x = rng.gen_range(0..p);
                let y = (x + rng.gen_range(1..p)) % p;
                (field.elem(x as i64), field.elem(y as i64))
            })
            .collect()
    };
    let report = check_sd(field, map, &pairs)?;
    if !report.passed() {
        return Err(fail(format!("equation re-check failed: {:?}", report.violations.first())));
    }
    let mut seen = vec![false; p as usize];
    for &v in &map.table {
        if v >= p || std::mem::replace(&mut seen[v as usize], true) {
            return Err(fail("not a bijection".into()));
        }
    }
    for x in [0, 1, p - 1] {
        if map.table[x as usize] != x {
            return Err(fail(format!("does not fix {x}")));
        }
    }
    let t = &map.table;
    let bad = (1..p).into_par_iter().find_any(|&x| {
        (1..p).any(|y| t[(x * y % p) as usize] != t[x as usize] * t[y as usize] % p)
    });
    if let Some(x) = bad {
        return Err(fail(format!("not multiplicative at x = {x}")));
    }
    Ok(report.checked_pairs)
}

/// Independent classifications in input order; errors stay per entry.
pub fn classify_range(primes: &[u64], opts: &ClassifyOptions) -> Vec<Result<ClassificationResult>> {
    primes.par_iter().map(|&p| classify(p, opts)).collect()
}

/// Groups results by surviving exponents, e.g. to see which `k` recur.
pub fn surviving_exponents(results: &[ClassificationResult]) -> BTreeMap<u64, Vec<u64>> {
    results
        .iter()
        .map(|r| (r.p, r.maps.iter().filter_map(FpMap::k).collect()))
        .collect()
}
