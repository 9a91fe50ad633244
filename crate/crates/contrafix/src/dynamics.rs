//! The prepend maps `f`, `g`, word-induced compositions, orbit diagnostics
//! and the pair scan certifying that no composition can trace a fixed
//! point.
//!
//! A composition `F = f_{c_1} ∘ … ∘ f_{c_n}` acts as `x ↦ wx` for the word
//! `w = c_1…c_n`. A fixed point of `F` in the completion would force
//! infinitely many sets `S_i` to contain some `u_i` together with `w·u_i`;
//! [`Family::pair_scan`] searches for such pairs exactly, and
//! [`Family::orbit_tail_sets`] lists the sets that eventually absorb the
//! orbit `w, w², w³, …` — always finitely many.

use crate::setfamily::{Family, SetDescriptor};
use crate::words::{
    available_extension, first_diff_of_powers, is_available, is_minimal, periodic_prefix,
    primitive_root, Letter, Word,
};
use crate::Error;
use serde::{Deserialize, Serialize};

/// `f(u) = au`.
pub fn f(x: &Word) -> Word {
    x.prepended(Letter::A)
}

/// `g(u) = bu`.
pub fn g(x: &Word) -> Word {
    x.prepended(Letter::B)
}

/// The composition named by `w`: `x ↦ wx`.
pub fn word_map(w: &Word, x: &Word) -> Word {
    w.concat(x)
}

/// One `(rank, witness)` pair found by the scan: the witness and its
/// `w`-image both belong to `S_rank`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairHit {
    pub rank: u64,
    pub descriptor: SetDescriptor,
    pub witness: Word,
}

/// Exhaustive report of the pairs `u, wu ∈ S_n` for `n ≤ checked_max_rank`.
///
/// For W- and A-type sets the search is analytic, so absence is certified
/// outright; for B-type sets absence is certified within `len_bound`
/// (field `b_certification`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairScanReport {
    pub word: Word,
    pub checked_max_rank: u64,
    pub len_bound: usize,
    pub b_certification: String,
    pub hits: Vec<PairHit>,
}

/// A finite strictly descending chain of sets rooted at `W:_`,
/// approximating a point of the completion to the resolution of its
/// deepest entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainPoint {
    chain: Vec<SetDescriptor>,
}

impl ChainPoint {
    /// Validates root anchoring and strict descent.
    pub fn new(family: &Family, chain: Vec<SetDescriptor>) -> Result<ChainPoint, Error> {
        let bad = || Error::Parse {
            input: chain
                .iter()
                .map(|s| s.to_string())
                .collect::<Vec<_>>()
                .join(" ⊃ "),
            what: "a strictly descending chain rooted at W:_",
        };
        if chain.first() != Some(&SetDescriptor::root_of_all()) {
            return Err(bad());
        }
        for pair in chain.windows(2) {
            if pair[0] == pair[1] || !family.subset_by_rules(&pair[1], &pair[0]) {
                return Err(bad());
            }
        }
        Ok(ChainPoint { chain })
    }

    pub fn chain(&self) -> &[SetDescriptor] {
        &self.chain
    }

    pub fn depth(&self) -> usize {
        self.chain.len()
    }

    pub fn deepest(&self) -> &SetDescriptor {
        self.chain.last().expect("chains are nonempty")
    }
}

impl Family {
    /// A letter whose prepend contracts the pair by at least one exponent
    /// level. Failure of both letters would certify a construction bug.
    pub fn contraction_check(&self, x: &Word, y: &Word) -> Result<Letter, Error> {
        if x == y {
            return Ok(Letter::A);
        }
        let base = self
            .distance(x, y)?
            .exponent()
            .expect("distinct words have a diameter distance");
        let common = self.min_common_set(x, y)?;
        let (witness, _) = self.contract_witness(&common)?;
        for c in [witness, witness.other()] {
            let image = self.distance(&x.prepended(c), &y.prepended(c))?;
            if image.exponent_or_max() > base {
                return Ok(c);
            }
        }
        Err(Error::ContractionViolated(x.clone(), y.clone()))
    }

    /// Scan `S_0 … S_max_rank` for witnesses `u` with `u, wu ∈ S_n`.
    ///
    /// `len_bound` must cover the sufficiency bound
    /// `l(σ(S_n)) + 2·l(w)·(l(w)+1)` of the deepest scanned set, so that a
    /// miss within the bound certifies absence for W- and A-type sets.
    pub fn pair_scan(
        &self,
        w: &Word,
        max_rank: u64,
        len_bound: usize,
    ) -> Result<PairScanReport, Error> {
        if w.is_empty() {
            return Err(Error::EmptyWordPower);
        }
        let deepest = self.sigma_len(&self.nth_set(max_rank)?);
        let required = deepest + 2 * w.len() * (w.len() + 1);
        if len_bound < required {
            return Err(Error::LenBoundTooSmall {
                given: len_bound,
                required,
            });
        }
        let root = primitive_root(w).expect("nonempty");
        let mut hits = Vec::new();
        for rank in 0..=max_rank {
            let set = self.nth_set(rank)?;
            let witness = match &set {
                SetDescriptor::W(v) => {
                    // a witness exists iff v is a prefix of w^∞; then u = v works
                    (v.is_empty() || periodic_prefix(w, v.len()).expect("nonempty") == *v)
                        .then(|| v.clone())
                }
                SetDescriptor::A {
                    root: t, period, ..
                } => {
                    // u and wu share the A-set iff w is a power of t and the
                    // step divides l(w); σ itself is then a witness
                    (*t == root && (w.len() as u64).is_multiple_of(*period))
                        .then(|| self.sigma(&set))
                }
                SetDescriptor::B { root: t, index } => self.b_pair_witness(t, *index, w, len_bound),
            };
            if let Some(u) = witness {
                assert!(
                    self.member(&set, &u) && self.member(&set, &w.concat(&u)),
                    "scan produced a bogus witness at S_{rank}"
                );
                hits.push(PairHit {
                    rank,
                    descriptor: set,
                    witness: u,
                });
            }
        }
        Ok(PairScanReport {
            word: w.clone(),
            checked_max_rank: max_rank,
            len_bound,
            b_certification: "bounded".to_string(),
            hits,
        })
    }

    /// Bounded witness search inside one B-set: choose deviation offsets
    /// `i` (for `u`) and `j` (for `wu`) from `I_k` and merge the letter
    /// constraints the two component stems impose on `u`.
    fn b_pair_witness(&self, t: &Word, k: u64, w: &Word, len_bound: usize) -> Option<Word> {
        let d2 = t.len() * t.len();
        let prog = self.progressions().get(k);
        let i_cap = (len_bound.saturating_sub(d2)) as u64;
        let j_cap = (len_bound + w.len()).saturating_sub(d2) as u64;
        for i in prog.elements_upto(i_cap) {
            let ti = available_extension(t, i as usize).expect("minimal root");
            'next_j: for j in prog.elements_upto(j_cap) {
                let tj = available_extension(t, j as usize).expect("minimal root");
                // w must agree with the front of t_j
                for y in 0..w.len().min(tj.len()) {
                    if w.letter(y) != tj.letter(y) {
                        continue 'next_j;
                    }
                }
                let ulen = ti.len().max(tj.len().saturating_sub(w.len()));
                if ulen > len_bound {
                    continue;
                }
                let mut letters = Vec::with_capacity(ulen);
                for x in 0..ulen {
                    let from_ti = (x < ti.len()).then(|| ti.letter(x));
                    let from_tj = (w.len() + x < tj.len()).then(|| tj.letter(w.len() + x));
                    let letter = match (from_ti, from_tj) {
                        (Some(a), Some(b)) if a != b => continue 'next_j,
                        (Some(a), _) => a,
                        (None, Some(b)) => b,
                        (None, None) => unreachable!("position above both stems"),
                    };
                    letters.push(letter);
                }
                return Some(Word::from_letters(letters));
            }
        }
        None
    }

    /// Exactly the sets containing `wⁿ` for every sufficiently large `n`:
    /// the available prefixes of `w^∞`, the A-sets over the primitive root
    /// whose step divides `l(w)`, and the B-sets over short minimal stems
    /// whose power deviates from `w^∞` late enough.
    pub fn orbit_tail_sets(&self, w: &Word) -> Result<Vec<SetDescriptor>, Error> {
        if w.is_empty() {
            return Err(Error::EmptyWordPower);
        }
        let root = primitive_root(w).expect("nonempty");
        let mut out = Vec::new();
        for len in 0..=root.len() * root.len() {
            let v = periodic_prefix(w, len).expect("nonempty");
            if is_available(&v) {
                out.push(SetDescriptor::W(v));
            }
        }
        let mut p = 1u64;
        while p <= w.len() as u64 {
            if (w.len() as u64).is_multiple_of(p) {
                out.push(SetDescriptor::A {
                    root: root.clone(),
                    period: p,
                    residue: 0,
                });
            }
            p *= 2;
        }
        // B-sets require t^∞ to agree with w^∞ past l(t)²; for non-powers
        // of the root this pins l(t)·(l(t)−1) < l(root)
        let mut d = 1;
        while d * (d.max(1) - 1) < root.len() {
            let t = periodic_prefix(w, d).expect("nonempty");
            if is_minimal(&t) {
                if let Some(j) = first_diff_of_powers(&t, w) {
                    if j > d * d {
                        let offset = (j - d * d) as u64;
                        let cap = (1u64 << (offset + 1)) - 2;
                        for k in 1..=cap {
                            if self.progressions().contains(k, offset) {
                                out.push(SetDescriptor::B {
                                    root: t.clone(),
                                    index: k,
                                });
                            }
                        }
                    }
                }
            }
            d += 1;
        }
        out.sort_by(|x, y| self.compare(x, y));
        Ok(out)
    }

    /// `false`: the orbit of `w` is not proper Cauchy, because only
    /// finitely many sets absorb its tail. The tail list is materialized to
    /// certify the finiteness at this depth.
    pub fn cauchy_certificate(&self, w: &Word) -> Result<bool, Error> {
        let _tail = self.orbit_tail_sets(w)?;
        Ok(false)
    }

    /// Push a chain point forward: push every entry, re-anchor at the root,
    /// sort and deduplicate. Pushforwards of nested sets nest, so the
    /// result is again a chain.
    pub fn push_point(&self, c: Letter, point: &ChainPoint) -> ChainPoint {
        let mut pushed = vec![SetDescriptor::root_of_all()];
        for set in point.chain() {
            let (target, _) = self.push_set(c, set);
            pushed.push(target);
        }
        pushed.sort_by(|x, y| self.compare(x, y));
        pushed.dedup();
        let point = ChainPoint { chain: pushed };
        debug_assert!(ChainPoint::new(self, point.chain.clone()).is_ok());
        point
    }
}
