//! Named, parameterized verification suites over bounded truncations of the
//! construction, plus the report and export formats the CLI exposes.
//!
//! Every check is deterministic given its parameters and seed. Randomized
//! suites draw from a seeded splitmix generator, so reports are
//! byte-reproducible; the canonical JSON rendering leaves `runtime_ms`
//! null for that reason. Checks run in parallel, capped by the
//! `CONTRAFIX_THREADS` environment variable, and reports are aggregated in
//! check-id order.

use crate::metric::{ExactDistance, Lambda};
use crate::setfamily::{bounded_members, Family, SetDescriptor, SetKind};
use crate::words::{words_up_to, Letter, Word};
use crate::Error;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};
use std::sync::Mutex;
use std::time::Instant;

/// All check identifiers, in canonical report order.
pub const CHECK_IDS: [&str; 15] = [
    "a1",
    "a2",
    "a3",
    "a4",
    "a5",
    "a6",
    "ultrametric",
    "contraction",
    "containprop",
    "splitprop",
    "typeprop",
    "order",
    "pairscan",
    "diam4",
    "cauchy",
];

/// Depth and length bounds for the suites. `Default` equals the documented
/// default depths; [`CheckParams::shallow`] is a fast smoke-test variant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckParams {
    pub seed: u64,
    pub sigma_len: usize,
    pub structure_word_len: usize,
    pub max_rank: u64,
    pub chain_depth: usize,
    pub contraction_word_len: usize,
    pub a6_word_len: usize,
    pub a6_rank_window: (u64, u64),
    pub a6_len_bound: usize,
    pub ultrametric_triples: u64,
    pub ultrametric_word_len: usize,
    pub diam4_sets: u64,
    pub diam4_set_size: usize,
    pub diam4_word_len: usize,
    pub diam4_lambdas: Vec<(u64, u64)>,
}

impl Default for CheckParams {
    fn default() -> CheckParams {
        CheckParams {
            seed: 0,
            sigma_len: 4,
            structure_word_len: 14,
            max_rank: 300,
            chain_depth: 8,
            contraction_word_len: 7,
            a6_word_len: 3,
            a6_rank_window: (1000, 2000),
            a6_len_bound: 48,
            ultrametric_triples: 100_000,
            ultrametric_word_len: 10,
            diam4_sets: 1000,
            diam4_set_size: 8,
            diam4_word_len: 10,
            diam4_lambdas: vec![(1, 2), (9, 10)],
        }
    }
}

impl CheckParams {
    /// Reduced depths for quick runs.
    pub fn shallow() -> CheckParams {
        CheckParams {
            seed: 0,
            sigma_len: 3,
            structure_word_len: 10,
            max_rank: 60,
            chain_depth: 5,
            contraction_word_len: 4,
            a6_word_len: 1,
            a6_rank_window: (300, 600),
            a6_len_bound: 36,
            ultrametric_triples: 2_000,
            ultrametric_word_len: 8,
            diam4_sets: 100,
            diam4_set_size: 5,
            diam4_word_len: 8,
            diam4_lambdas: vec![(1, 2), (9, 10)],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub params: CheckParams,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<String>,
    pub runtime_ms: Option<u128>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

struct Outcome {
    verdict: Verdict,
    counterexample: Option<String>,
    details: Option<String>,
}

impl Outcome {
    fn pass(details: String) -> Outcome {
        Outcome {
            verdict: Verdict::Pass,
            counterexample: None,
            details: Some(details),
        }
    }

    fn fail(counterexample: String) -> Outcome {
        Outcome {
            verdict: Verdict::Fail,
            counterexample: Some(counterexample),
            details: None,
        }
    }
}

/// Splitmix generator: deterministic across platforms, one stream per
/// check.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn word(&mut self, max_len: usize) -> Word {
        let len = self.below(max_len as u64 + 1) as usize;
        let mut letters = Vec::with_capacity(len);
        let mut bits = self.next_u64();
        for i in 0..len {
            if i % 64 == 0 && i > 0 {
                bits = self.next_u64();
            }
            letters.push(if bits & 1 == 0 { Letter::A } else { Letter::B });
            bits >>= 1;
        }
        Word::from_letters(letters)
    }
}

/// Run one check by id.
pub fn run_check(family: &Family, id: &str, params: &CheckParams) -> Result<CheckReport, Error> {
    let start = Instant::now();
    let outcome = dispatch(family, id, params)?;
    Ok(CheckReport {
        check_id: id.to_string(),
        params: params.clone(),
        verdict: outcome.verdict,
        counterexample: outcome.counterexample,
        details: outcome.details,
        runtime_ms: Some(start.elapsed().as_millis()),
    })
}

/// Run several checks, in parallel up to `CONTRAFIX_THREADS`, reporting in
/// the given order.
pub fn run_checks(
    family: &Family,
    ids: &[&str],
    params: &CheckParams,
) -> Result<Vec<CheckReport>, Error> {
    let threads = std::env::var("CONTRAFIX_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .min(ids.len().max(1));
    let slots: Mutex<Vec<Option<Result<CheckReport, Error>>>> =
        Mutex::new((0..ids.len()).map(|_| None).collect());
    let cursor = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..threads {
            scope.spawn(|| loop {
                let i = cursor.fetch_add(1, AtomicOrdering::SeqCst);
                if i >= ids.len() {
                    break;
                }
                let report = run_check(family, ids[i], params);
                slots.lock().expect("result slots poisoned")[i] = Some(report);
            });
        }
    });
    slots
        .into_inner()
        .expect("result slots poisoned")
        .into_iter()
        .map(|slot| slot.expect("every check ran"))
        .collect()
}

/// Canonical JSON for a report set: stable field order, `runtime_ms`
/// nulled so identical parameters and seed give identical bytes.
pub fn reports_to_canonical_json(reports: &[CheckReport]) -> String {
    let canonical: Vec<CheckReport> = reports
        .iter()
        .map(|r| CheckReport {
            runtime_ms: None,
            ..r.clone()
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&canonical).expect("reports serialize");
    out.push('\n');
    out
}

fn dispatch(family: &Family, id: &str, p: &CheckParams) -> Result<Outcome, Error> {
    match id {
        "a1" => check_a1(family, p),
        "a2" => check_a2(family, p),
        "a3" => check_a3(family, p),
        "a4" => check_a4(family, p),
        "a5" => check_a5(family, p),
        "a6" => check_a6(family, p),
        "ultrametric" => check_ultrametric(family, p),
        "contraction" => check_contraction(family, p),
        "containprop" => check_containprop(family, p),
        "splitprop" => check_splitprop(family, p),
        "typeprop" => check_typeprop(family, p),
        "order" => check_order(family, p),
        "pairscan" => check_pairscan(family, p),
        "diam4" => check_diam4(family, p),
        "cauchy" => check_cauchy(family, p),
        other => Err(Error::UnknownCheck(other.to_string())),
    }
}

fn universe(family: &Family, max_sigma_len: usize) -> Result<Vec<SetDescriptor>, Error> {
    let mut out = Vec::new();
    for len in 0..=max_sigma_len {
        out.extend(family.enumerate_sigma_len(len)?);
    }
    Ok(out)
}

// A1: the enumeration starts at the whole space and intersections along it
// always nest backwards.
fn check_a1(family: &Family, p: &CheckParams) -> Result<Outcome, Error> {
    if family.nth_set(0)? != SetDescriptor::root_of_all() {
        return Ok(Outcome::fail("S_0 is not W:_".to_string()));
    }
    let sets: Vec<SetDescriptor> = (0..=p.max_rank)
        .map(|n| family.nth_set(n))
        .collect::<Result<_, _>>()?;
    let n = sets.len();
    let mut meets = vec![false; n * n];
    for word in words_up_to(p.structure_word_len) {
        let holders: Vec<usize> = (0..n).filter(|&i| family.member(&sets[i], &word)).collect();
        for (a, &i) in holders.iter().enumerate() {
            for &j in &holders[a + 1..] {
                meets[i * n + j] = true;
            }
        }
    }
    let mut pairs = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            if !meets[i * n + j] {
                continue;
            }
            pairs += 1;
            if !family.subset_by_rules(&sets[j], &sets[i]) {
                return Ok(Outcome::fail(format!(
                    "S_{i} = {} meets S_{j} = {} without S_{j} ⊂ S_{i}",
                    sets[i], sets[j]
                )));
            }
        }
    }
    Ok(Outcome::pass(format!(
        "{pairs} intersecting pairs among S_0..S_{} all nest backwards",
        p.max_rank
    )))
}

// A2: finite membership lists, agreeing with the layer filter.
fn check_a2(family: &Family, p: &CheckParams) -> Result<Outcome, Error> {
    let horizon = p.structure_word_len.min(10);
    let mut max_count = 0;
    for word in words_up_to(horizon) {
        let listed = family.sets_containing(&word);
        let mut expected = Vec::new();
        for len in 0..=word.len() {
            for set in family.enumerate_sigma_len(len)? {
                if family.member(&set, &word) {
                    expected.push(set);
                }
            }
        }
        if listed != expected {
            return Ok(Outcome::fail(format!(
                "containing-set list for {word} disagrees with the layer filter"
            )));
        }
        max_count = max_count.max(listed.len());
    }
    Ok(Outcome::pass(format!(
        "membership lists complete up to length {horizon}; largest has {max_count} sets"
    )))
}

// A3: splitting everything of rank ≤ N leaves deep sets plus a finite
// remainder that together cover the bounded space exactly once.
fn check_a3(family: &Family, p: &CheckParams) -> Result<Outcome, Error> {
    for cap in [0, p.max_rank / 4, p.max_rank] {
        let (leaves, witness) = family.cover_with_leaves(cap, p.structure_word_len)?;
        if let Some(&bad) = witness.indices.iter().find(|&&i| i <= cap) {
            return Ok(Outcome::fail(format!("leaf S_{bad} at or below N = {cap}")));
        }
        for word in words_up_to(p.structure_word_len) {
            let hits = leaves.iter().filter(|s| family.member(s, &word)).count()
                + witness.leftover.contains(&word) as usize;
            if hits != 1 {
                return Ok(Outcome::fail(format!(
                    "word {word} covered {hits} times at N = {cap}"
                )));
            }
        }
    }
    Ok(Outcome::pass(format!(
        "covers exact at N ∈ {{0, {}, {}}} over words ≤ {}",
        p.max_rank / 4,
        p.max_rank,
        p.structure_word_len
    )))
}

// A4: along every descent chain, pushforwards never lose order and grow
// overall, for both letters; pushed sets contain the letter images.
fn check_a4(family: &Family, p: &CheckParams) -> Result<Outcome, Error> {
    let mut chains = vec![vec![SetDescriptor::root_of_all()]];
    for _ in 1..p.chain_depth {
        let mut next = Vec::new();
        for chain in &chains {
            let split = family.children(chain.last().expect("nonempty chain"));
            for child in [split.left, split.right] {
                let mut extended = chain.clone();
                extended.push(child);
                next.push(extended);
            }
        }
        chains = next;
    }
    let sample_words = words_up_to(10);
    let mut checked_nodes = HashSet::new();
    for chain in &chains {
        for c in Letter::ALL {
            let pushes: Vec<SetDescriptor> =
                chain.iter().map(|s| family.push_set(c, s).0).collect();
            for pair in pushes.windows(2) {
                if family.compare(&pair[0], &pair[1]) == Ordering::Greater {
                    return Ok(Outcome::fail(format!(
                        "pushforward order drops under {c} along {} → {}",
                        pair[0], pair[1]
                    )));
                }
            }
            let (first, last) = (pushes.first().unwrap(), pushes.last().unwrap());
            if family.compare(first, last) != Ordering::Less {
                return Ok(Outcome::fail(format!(
                    "pushforwards under {c} fail to grow along chain ending at {}",
                    chain.last().unwrap()
                )));
            }
            for (set, target) in chain.iter().zip(&pushes) {
                if !checked_nodes.insert((set.clone(), c)) {
                    continue;
                }
                if family.sigma_len(set) > 8 {
                    continue;
                }
                for x in sample_words.iter().filter(|x| family.member(set, x)) {
                    if !family.member(target, &x.prepended(c)) {
                        return Ok(Outcome::fail(format!(
                            "{c}·{x} escapes push of {set} into {target}"
                        )));
                    }
                }
            }
        }
    }
    Ok(Outcome::pass(format!(
        "{} chains of depth {} push monotonically for both letters",
        chains.len(),
        p.chain_depth
    )))
}

// A5: every early set has a letter whose image lands strictly later.
fn check_a5(family: &Family, p: &CheckParams) -> Result<Outcome, Error> {
    let members_cap = 12;
    for rank in 0..=p.max_rank {
        let set = family.nth_set(rank)?;
        let (c, target) = family.contract_witness(&set)?;
        let target_rank = family.rank(&target)?;
        if target_rank <= rank {
            return Ok(Outcome::fail(format!(
                "witness for S_{rank} lands at S_{target_rank}"
            )));
        }
        for x in bounded_members(family, &set, members_cap) {
            if !family.member(&target, &x.prepended(c)) {
                return Ok(Outcome::fail(format!(
                    "{c}·{x} escapes the contraction witness of S_{rank}"
                )));
            }
        }
    }
    Ok(Outcome::pass(format!(
        "contraction witnesses strictly increase rank for S_0..S_{}",
        p.max_rank
    )))
}

// A6: pair-scan hit counts are stable across the rank window for every
// short word.
fn check_a6(family: &Family, p: &CheckParams) -> Result<Outcome, Error> {
    let (lo, hi) = p.a6_rank_window;
    let mut counts = Vec::new();
    for word in words_up_to(p.a6_word_len) {
        if word.is_empty() {
            continue;
        }
        let early = family.pair_scan(&word, lo, p.a6_len_bound)?;
        let late = family.pair_scan(&word, hi, p.a6_len_bound)?;
        if early.hits.len() != late.hits.len() {
            let extra: Vec<String> = late
                .hits
                .iter()
                .filter(|h| h.rank > lo)
                .map(|h| format!("S_{} = {} (witness {})", h.rank, h.descriptor, h.witness))
                .collect();
            return Ok(Outcome::fail(format!(
                "hit count for word {word} grows from {} (rank ≤ {lo}) to {} (rank ≤ {hi}); late hits: {}",
                early.hits.len(),
                late.hits.len(),
                extra.join(", ")
            )));
        }
        counts.push(format!("{word}:{}", late.hits.len()));
    }
    Ok(Outcome::pass(format!(
        "hit counts stable over ranks ({lo}, {hi}]: {}",
        counts.join(" ")
    )))
}

// Strong triangle inequality on seeded random triples, plus symmetry and
// identity.
fn check_ultrametric(family: &Family, p: &CheckParams) -> Result<Outcome, Error> {
    let mut rng = SplitMix64::new(p.seed ^ 0x756c_7472_615f_0000u64);
    for i in 0..p.ultrametric_triples {
        let x = rng.word(p.ultrametric_word_len);
        let y = rng.word(p.ultrametric_word_len);
        let z = rng.word(p.ultrametric_word_len);
        let xy = family.distance(&x, &y)?;
        let yx = family.distance(&y, &x)?;
        if xy != yx {
            return Ok(Outcome::fail(format!("d({x},{y}) ≠ d({y},{x})")));
        }
        if (xy == ExactDistance::Zero) != (x == y) {
            return Ok(Outcome::fail(format!("degeneracy at ({x},{y})")));
        }
        let yz = family.distance(&y, &z)?;
        let xz = family.distance(&x, &z)?;
        if xz.exponent_or_max() < xy.exponent_or_max().min(yz.exponent_or_max()) {
            return Ok(Outcome::fail(format!(
                "triple ({x}, {y}, {z}) violates the strong triangle inequality (iteration {i})"
            )));
        }
    }
    Ok(Outcome::pass(format!(
        "{} seeded triples within length {} satisfy the ultrametric inequality",
        p.ultrametric_triples, p.ultrametric_word_len
    )))
}

// Every pair of distinct words admits a letter contracting it by a full
// exponent level.
fn check_contraction(family: &Family, p: &CheckParams) -> Result<Outcome, Error> {
    let words = words_up_to(p.contraction_word_len);
    let mut pairs = 0u64;
    for x in &words {
        for y in &words {
            if x == y {
                continue;
            }
            pairs += 1;
            if let Err(err) = family.contraction_check(x, y) {
                return Ok(Outcome::fail(err.to_string()));
            }
        }
    }
    Ok(Outcome::pass(format!(
        "{pairs} ordered pairs of distinct words ≤ length {} contract",
        p.contraction_word_len
    )))
}

// Intersection dichotomy, agreement of the two subset routes, and growing
// symmetric differences for nested pairs.
fn check_containprop(family: &Family, p: &CheckParams) -> Result<Outcome, Error> {
    let sets = universe(family, p.sigma_len)?;
    let words = words_up_to(p.structure_word_len);
    let bitmaps: Vec<Vec<bool>> = sets
        .iter()
        .map(|s| words.iter().map(|x| family.member(s, x)).collect())
        .collect();
    for (i, u) in sets.iter().enumerate() {
        for (j, v) in sets.iter().enumerate() {
            if family.is_subset(u, v) != family.subset_by_rules(u, v) {
                return Ok(Outcome::fail(format!(
                    "ancestry and case rules disagree on {u} ⊆ {v}"
                )));
            }
            if j <= i {
                continue;
            }
            let meets = bitmaps[i].iter().zip(&bitmaps[j]).any(|(a, b)| *a && *b);
            if !meets {
                continue;
            }
            if !(family.subset_by_rules(u, v) || family.subset_by_rules(v, u)) {
                return Ok(Outcome::fail(format!("{u} and {v} intersect unnested")));
            }
            let diff = |cap: usize| {
                words
                    .iter()
                    .zip(bitmaps[i].iter().zip(&bitmaps[j]))
                    .filter(|(x, (a, b))| x.len() <= cap && a != b)
                    .count()
            };
            if diff(p.structure_word_len) == 0
                || diff(p.structure_word_len) <= diff(p.structure_word_len.saturating_sub(2))
            {
                return Ok(Outcome::fail(format!(
                    "symmetric difference of {u}, {v} fails to grow"
                )));
            }
        }
    }
    Ok(Outcome::pass(format!(
        "{} sets: dichotomy, route agreement and growing differences hold",
        sets.len()
    )))
}

// Splits partition their parent exactly on bounded words, and any proper
// subset falls in exactly one child.
fn check_splitprop(family: &Family, p: &CheckParams) -> Result<Outcome, Error> {
    let parents = universe(family, p.sigma_len.saturating_sub(1).max(1))?;
    let wider = universe(family, p.sigma_len + 1)?;
    for set in universe(family, p.sigma_len)? {
        let split = family.children(&set);
        for word in bounded_members(family, &set, p.structure_word_len) {
            let hits = family.member(&split.left, &word) as u8
                + family.member(&split.right, &word) as u8
                + split.lost.contains(&word) as u8;
            if hits != 1 {
                return Ok(Outcome::fail(format!(
                    "{word} covered {hits} times in the split of {set}"
                )));
            }
        }
    }
    for u in &parents {
        let split = family.children(u);
        for v in &wider {
            if v == u || !family.subset_by_rules(v, u) {
                continue;
            }
            let in_left = family.subset_by_rules(v, &split.left);
            let in_right = family.subset_by_rules(v, &split.right);
            if in_left == in_right {
                return Ok(Outcome::fail(format!(
                    "{v} ⊂ {u} sits in {} children",
                    in_left as u8 + in_right as u8
                )));
            }
        }
    }
    Ok(Outcome::pass(format!(
        "splits exact to σ-length {} over words ≤ {}",
        p.sigma_len, p.structure_word_len
    )))
}

// Nested pairs with equal shortest words only pair types (A,A), (B,B) or
// (B over W).
fn check_typeprop(family: &Family, p: &CheckParams) -> Result<Outcome, Error> {
    let sets = universe(family, p.sigma_len + 1)?;
    let mut nested = 0u64;
    for u in &sets {
        for v in &sets {
            if u == v || family.sigma_len(u) != family.sigma_len(v) || !family.subset_by_rules(v, u)
            {
                continue;
            }
            nested += 1;
            let ok = matches!(
                (u.kind(), v.kind()),
                (SetKind::A, SetKind::A) | (SetKind::B, SetKind::B) | (SetKind::B, SetKind::W)
            );
            if !ok || family.sigma(u) != family.sigma(v) {
                return Ok(Outcome::fail(format!(
                    "nested equal-σ pair {u} ⊃ {v} has type pair ({}, {})",
                    u.kind(),
                    v.kind()
                )));
            }
        }
    }
    Ok(Outcome::pass(format!(
        "{nested} nested equal-σ pairs stay within the three allowed type pairs"
    )))
}

// Trichotomy, transitivity, rank/nth inversion and unique minima.
fn check_order(family: &Family, p: &CheckParams) -> Result<Outcome, Error> {
    let sets = universe(family, p.sigma_len + 1)?;
    for u in &sets {
        for v in &sets {
            let uv = family.compare(u, v);
            if uv != family.compare(v, u).reverse() {
                return Ok(Outcome::fail(format!("antisymmetry fails at {u}, {v}")));
            }
            if (uv == Ordering::Equal) != (u == v) {
                return Ok(Outcome::fail(format!("equality confusion at {u}, {v}")));
            }
        }
    }
    for u in &sets {
        for v in &sets {
            if family.compare(u, v) != Ordering::Less {
                continue;
            }
            for t in &sets {
                if family.compare(v, t) == Ordering::Less && family.compare(u, t) != Ordering::Less
                {
                    return Ok(Outcome::fail(format!(
                        "transitivity fails at {u} < {v} < {t}"
                    )));
                }
            }
        }
    }
    for n in 0..=p.max_rank {
        if family.rank(&family.nth_set(n)?)? != n {
            return Ok(Outcome::fail(format!("rank(nth_set({n})) ≠ {n}")));
        }
    }
    for chunk in sets.chunks(9) {
        let min = chunk.iter().min_by(|a, b| family.compare(a, b)).unwrap();
        if chunk
            .iter()
            .any(|s| s != min && family.compare(min, s) != Ordering::Less)
        {
            return Ok(Outcome::fail("chunk minimum not unique".to_string()));
        }
    }
    Ok(Outcome::pass(format!(
        "order total and transitive on {} sets; rank inverts nth_set to {}",
        sets.len(),
        p.max_rank
    )))
}

// The worked pair-scan anchors: expected hits appear, impossible ones do
// not, and a longer scan for a periodic word changes nothing.
fn check_pairscan(family: &Family, p: &CheckParams) -> Result<Outcome, Error> {
    let a: Word = "a".parse().expect("literal");
    let b: Word = "b".parse().expect("literal");
    let ab: Word = "ab".parse().expect("literal");
    let report = family.pair_scan(&a, 50, 30)?;
    let ranks: Vec<u64> = report.hits.iter().map(|h| h.rank).collect();
    if !ranks.contains(&1) || !ranks.contains(&3) {
        return Ok(Outcome::fail(format!(
            "scan for `a` misses an expected hit; got ranks {ranks:?}"
        )));
    }
    let report = family.pair_scan(&b, 50, 30)?;
    if report.hits.iter().any(|h| h.rank == 1) {
        return Ok(Outcome::fail(
            "scan for `b` claims a hit at W:a".to_string(),
        ));
    }
    // the worked example's own window: the ab-hits stop well before rank 1000
    let (lo, hi) = (1000, 2000);
    let early = family.pair_scan(&ab, lo, p.a6_len_bound)?;
    let late = family.pair_scan(&ab, hi, p.a6_len_bound)?;
    if early.hits != late.hits {
        return Ok(Outcome::fail(format!(
            "scan for `ab` unstable: {} vs {} hits",
            early.hits.len(),
            late.hits.len()
        )));
    }
    Ok(Outcome::pass(format!(
        "anchors hold; `ab` scan stable at {} hits",
        late.hits.len()
    )))
}

// The outline observation: one letter image of any bounded set has
// diameter at most 4λ times the original, in exact rationals.
fn check_diam4(family: &Family, p: &CheckParams) -> Result<Outcome, Error> {
    let lambdas: Vec<Lambda> = p
        .diam4_lambdas
        .iter()
        .map(|&(num, den)| Lambda::new(num, den))
        .collect::<Result<_, _>>()?;
    let mut rng = SplitMix64::new(p.seed ^ 0x6469_616d_345f_0000u64);
    for i in 0..p.diam4_sets {
        let size = 1 + rng.below(p.diam4_set_size as u64) as usize;
        let sample: Vec<Word> = (0..size).map(|_| rng.word(p.diam4_word_len)).collect();
        let diameter = |words: &[Word]| -> Result<ExactDistance, Error> {
            let mut diam = ExactDistance::Zero;
            for x in words {
                for y in words {
                    diam = diam.max(family.distance(x, y)?);
                }
            }
            Ok(diam)
        };
        let source = diameter(&sample)?;
        let image_a: Vec<Word> = sample.iter().map(|x| x.prepended(Letter::A)).collect();
        let image_b: Vec<Word> = sample.iter().map(|x| x.prepended(Letter::B)).collect();
        let best = diameter(&image_a)?.min(diameter(&image_b)?);
        for lambda in &lambdas {
            if !lambda.four_lambda_dominates(&best, &source) {
                return Ok(Outcome::fail(format!(
                    "sample {i} of size {size} violates the 4λ bound at λ = {lambda}"
                )));
            }
        }
    }
    Ok(Outcome::pass(format!(
        "{} seeded sets within the 4λ bound for λ ∈ {:?}",
        p.diam4_sets, p.diam4_lambdas
    )))
}

// No orbit is proper Cauchy, and the analytic tail lists agree with the
// empirical absorption filter.
fn check_cauchy(family: &Family, p: &CheckParams) -> Result<Outcome, Error> {
    for word in words_up_to(p.a6_word_len + 1) {
        if word.is_empty() {
            continue;
        }
        if family.cauchy_certificate(&word)? {
            return Ok(Outcome::fail(format!("orbit of {word} claims Cauchy")));
        }
    }
    let sets = universe(family, 8)?;
    for word in words_up_to(p.a6_word_len) {
        if word.is_empty() {
            continue;
        }
        let tail = family.orbit_tail_sets(&word)?;
        for set in &sets {
            let absorbed = (8..=24).all(|n| family.member(set, &word.repeated(n)));
            if tail.contains(set) != absorbed {
                return Ok(Outcome::fail(format!(
                    "tail list and absorption filter disagree at {set} for {word}"
                )));
            }
        }
    }
    let a: Word = "a".parse().expect("literal");
    let tail = family.orbit_tail_sets(&a)?;
    let expected: Vec<SetDescriptor> = ["W:_", "W:a", "A:a:1:0"]
        .iter()
        .map(|s| s.parse().expect("literal"))
        .collect();
    if tail != expected {
        return Ok(Outcome::fail(format!("tail of `a` is {tail:?}")));
    }
    Ok(Outcome::pass(format!(
        "no orbit of length ≤ {} is Cauchy; tails match the filter",
        p.a6_word_len + 1
    )))
}

/// Output format of the family-tree export.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeFormat {
    Dot,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeNode {
    pub rank: u64,
    pub descriptor: SetDescriptor,
    pub kind: String,
    pub sigma: Word,
    pub sigma_len: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub parent: u64,
    pub child: u64,
    pub lost: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TreeExport {
    pub max_sigma_len: usize,
    pub nodes: Vec<TreeNode>,
    pub edges: Vec<TreeEdge>,
}

/// The family tree restricted to σ-lengths within the bound. Edge labels
/// carry the words shed by the split.
pub fn export_tree(
    family: &Family,
    max_sigma_len: usize,
    format: TreeFormat,
) -> Result<String, Error> {
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for len in 0..=max_sigma_len {
        for set in family.enumerate_sigma_len(len)? {
            let rank = family.rank(&set)?;
            nodes.push(TreeNode {
                rank,
                kind: set.kind().to_string(),
                sigma: family.sigma(&set),
                sigma_len: len,
                descriptor: set.clone(),
            });
            let split = family.children(&set);
            for child in [&split.left, &split.right] {
                if family.sigma_len(child) <= max_sigma_len {
                    edges.push(TreeEdge {
                        parent: rank,
                        child: family.rank(child)?,
                        lost: split.lost.clone(),
                    });
                }
            }
        }
    }
    nodes.sort_by_key(|n| n.rank);
    edges.sort_by_key(|e| (e.parent, e.child));
    let export = TreeExport {
        max_sigma_len,
        nodes,
        edges,
    };
    Ok(match format {
        TreeFormat::Json => {
            let mut s = serde_json::to_string_pretty(&export).expect("tree serializes");
            s.push('\n');
            s
        }
        TreeFormat::Dot => {
            let mut out = String::from("digraph family {\n  rankdir=TB;\n  node [shape=box];\n");
            for node in &export.nodes {
                out.push_str(&format!(
                    "  n{} [label=\"S_{}: {}\"];\n",
                    node.rank, node.rank, node.descriptor
                ));
            }
            for edge in &export.edges {
                if edge.lost.is_empty() {
                    out.push_str(&format!("  n{} -> n{};\n", edge.parent, edge.child));
                } else {
                    let lost: Vec<String> = edge.lost.iter().map(|w| w.to_string()).collect();
                    out.push_str(&format!(
                        "  n{} -> n{} [label=\"lost: {}\"];\n",
                        edge.parent,
                        edge.child,
                        lost.join(" ")
                    ));
                }
            }
            out.push_str("}\n");
            out
        }
    })
}
