//! The exact induced ultrametric and the witness constructions behind the
//! covering, pushforward and contraction axioms.
//!
//! `d(x, y) = λ^rank(U)` where `U` is the smallest diametrisable set
//! containing both words; distances are stored as integer exponents and λ
//! enters only when rendering output or evaluating the `4λD` observation in
//! exact rational arithmetic.

use crate::setfamily::{Family, SetDescriptor};
use crate::words::{
    first_diff_prepend_power, is_available, periodic_prefix, rotate_for_char, Letter, Word,
};
use crate::Error;
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// An exact distance: zero, or `λ^k` recorded by its exponent. Ordered as a
/// distance, so a larger exponent is a smaller value and `Zero` is least.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum ExactDistance {
    Zero,
    Diam(u64),
}

impl ExactDistance {
    pub fn exponent(&self) -> Option<u64> {
        match self {
            ExactDistance::Zero => None,
            ExactDistance::Diam(k) => Some(*k),
        }
    }

    /// Exponent with `Zero` mapped to the top, for min/compare arithmetic in
    /// the strong triangle inequality.
    pub fn exponent_or_max(&self) -> u64 {
        self.exponent().unwrap_or(u64::MAX)
    }
}

impl Ord for ExactDistance {
    fn cmp(&self, other: &ExactDistance) -> Ordering {
        other.exponent_or_max().cmp(&self.exponent_or_max())
    }
}

impl PartialOrd for ExactDistance {
    fn partial_cmp(&self, other: &ExactDistance) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExactDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactDistance::Zero => write!(f, "0"),
            ExactDistance::Diam(k) => write!(f, "λ^{k}"),
        }
    }
}

/// The contraction factor as an exact rational in `(0, 1)`. Only display
/// and the `4λD` evaluation ever consult the numeric value.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Lambda {
    num: u64,
    den: u64,
}

impl Lambda {
    pub fn new(num: u64, den: u64) -> Result<Lambda, Error> {
        if num == 0 || num >= den {
            return Err(Error::BadLambda { num, den });
        }
        Ok(Lambda { num, den })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// `λ^k` as an exact reduced pair of big integers.
    pub fn pow(&self, k: u64) -> (BigUint, BigUint) {
        let k = u32::try_from(k).expect("exponent fits u32 at desk scale");
        let g = gcd(self.num, self.den);
        (
            BigUint::from(self.num / g).pow(k),
            BigUint::from(self.den / g).pow(k),
        )
    }

    /// Does `λ^image ≤ 4·λ^(source+1)` hold exactly? `None` exponents mean
    /// distance zero. The comparison reduces to `(q/p)^k ≤ 4` for the
    /// exponent gap `k`, evaluated in big integers.
    pub fn four_lambda_dominates(&self, image: &ExactDistance, source: &ExactDistance) -> bool {
        let Some(source_exp) = source.exponent() else {
            // source diameter zero: image must be zero too
            return image.exponent().is_none();
        };
        let Some(image_exp) = image.exponent() else {
            return true;
        };
        if image_exp > source_exp {
            return true;
        }
        let gap = source_exp + 1 - image_exp;
        let gap = u32::try_from(gap).expect("gap fits u32");
        BigUint::from(self.den).pow(gap) <= BigUint::from(4u8) * BigUint::from(self.num).pow(gap)
    }

    /// Decimal rendering of `λ^k` with at most `digits` fractional digits;
    /// exact when it terminates, marked with a trailing `…` otherwise.
    pub fn decimal(&self, k: u64, digits: usize) -> String {
        let (num, den) = self.pow(k);
        let ten = BigUint::from(10u8);
        let int = &num / &den;
        let mut rem = &num % &den;
        let mut out = format!("{int}.");
        let mut produced = 0;
        while produced < digits {
            rem *= &ten;
            let digit = &rem / &den;
            rem %= &den;
            out.push_str(&digit.to_string());
            produced += 1;
            if rem == BigUint::ZERO {
                break;
            }
        }
        if rem != BigUint::ZERO {
            out.push('…');
        }
        // keep at least one fractional digit, trim the rest of the zeros
        while out.ends_with('0') && !out.ends_with(".0") {
            out.pop();
        }
        out
    }
}

impl FromStr for Lambda {
    type Err = Error;

    fn from_str(s: &str) -> Result<Lambda, Error> {
        let parse_err = || Error::Parse {
            input: s.to_string(),
            what: "a rational λ of the form p/q",
        };
        let (p, q) = s.split_once('/').ok_or_else(parse_err)?;
        let num = p.trim().parse().map_err(|_| parse_err())?;
        let den = q.trim().parse().map_err(|_| parse_err())?;
        Lambda::new(num, den)
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Result of repeatedly splitting every set of rank ≤ N: the leaf ranks and
/// the finitely many words shed along the way (restricted to the word
/// bound).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverWitness {
    pub indices: Vec<u64>,
    pub leftover: Vec<Word>,
}

impl Family {
    /// The ⊂-minimal diametrisable set containing both words, found by
    /// descending the family tree while a child keeps both.
    pub fn min_common_set(&self, x: &Word, y: &Word) -> Result<SetDescriptor, Error> {
        if x == y {
            return Err(Error::IdenticalWords);
        }
        let mut cur = SetDescriptor::root_of_all();
        loop {
            let split = self.children(&cur);
            if self.member(&split.left, x) && self.member(&split.left, y) {
                cur = split.left;
            } else if self.member(&split.right, x) && self.member(&split.right, y) {
                cur = split.right;
            } else {
                return Ok(cur);
            }
        }
    }

    /// Intersection route to the same set, used as a cross-check: the
    /// containing chains of the two words meet in a chain whose last
    /// element is the minimal common set.
    pub fn min_common_set_by_intersection(
        &self,
        x: &Word,
        y: &Word,
    ) -> Result<SetDescriptor, Error> {
        if x == y {
            return Err(Error::IdenticalWords);
        }
        let xs = self.sets_containing(x);
        let common: Vec<&SetDescriptor> = xs.iter().filter(|s| self.member(s, y)).collect();
        Ok((*common.last().expect("the root contains every word")).clone())
    }

    /// `d(x, y)` as an exact λ-power.
    pub fn distance(&self, x: &Word, y: &Word) -> Result<ExactDistance, Error> {
        if x == y {
            return Ok(ExactDistance::Zero);
        }
        let set = self.min_common_set(x, y)?;
        Ok(ExactDistance::Diam(self.rank(&set)?))
    }

    /// `diam(S_k) = λ^k`.
    pub fn diam_of(&self, set: &SetDescriptor) -> Result<ExactDistance, Error> {
        Ok(ExactDistance::Diam(self.rank(set)?))
    }

    /// Split everything of rank ≤ `max_rank`, collecting shed words; the
    /// surviving leaves all have rank > `max_rank` and, together with the
    /// leftover, cover every word of length ≤ `word_bound`.
    pub fn cover(&self, max_rank: u64, word_bound: usize) -> Result<CoverWitness, Error> {
        Ok(self.cover_with_leaves(max_rank, word_bound)?.1)
    }

    /// As [`Family::cover`], also returning the leaf descriptors in rank
    /// order (their ranks can exceed the enumeration depth that
    /// [`Family::nth_set`] supports).
    pub fn cover_with_leaves(
        &self,
        max_rank: u64,
        word_bound: usize,
    ) -> Result<(Vec<SetDescriptor>, CoverWitness), Error> {
        let mut leaves = Vec::new();
        let mut leftover = Vec::new();
        let mut work = vec![SetDescriptor::root_of_all()];
        while let Some(set) = work.pop() {
            if self.rank(&set)? > max_rank {
                leaves.push(set);
                continue;
            }
            let split = self.children(&set);
            leftover.extend(split.lost);
            work.push(split.left);
            work.push(split.right);
        }
        let mut ranked = leaves
            .into_iter()
            .map(|s| Ok((self.rank(&s)?, s)))
            .collect::<Result<Vec<(u64, SetDescriptor)>, Error>>()?;
        ranked.sort_by_key(|(rank, _)| *rank);
        let indices = ranked.iter().map(|(rank, _)| *rank).collect();
        let leaves = ranked.into_iter().map(|(_, s)| s).collect();
        leftover.retain(|w| w.len() <= word_bound);
        leftover.sort();
        Ok((leaves, CoverWitness { indices, leftover }))
    }

    /// A letter `c` and a strictly later set `V` with `c·U ⊆ V`, following
    /// the shapes that always work: prepend to σ for W- and A-sets, prepend
    /// to the σ-stem for B-sets. At least one letter keeps the target
    /// available.
    pub fn contract_witness(&self, set: &SetDescriptor) -> Result<(Letter, SetDescriptor), Error> {
        let stem = match set {
            SetDescriptor::W(_) | SetDescriptor::A { .. } => self.sigma(set),
            SetDescriptor::B { .. } => {
                let s = self.sigma(set);
                s.prefix(s.len() - 1)
            }
        };
        for c in Letter::ALL {
            let candidate = stem.prepended(c);
            if is_available(&candidate) {
                let target = SetDescriptor::W(candidate);
                debug_assert_eq!(self.compare(set, &target), Ordering::Less);
                return Ok((c, target));
            }
        }
        unreachable!("one one-letter extension is always available")
    }

    /// The tightest diametrisable superset of `{c·x : x ∈ U}`, found by
    /// descending the tree with an exact image-containment test. The flag
    /// reports whether any image points had to be dropped; the descent
    /// always achieves full containment, so it is `false`.
    pub fn push_set(&self, c: Letter, set: &SetDescriptor) -> (SetDescriptor, bool) {
        let mut cur = SetDescriptor::root_of_all();
        loop {
            let split = self.children(&cur);
            if self.image_inside(c, set, &split.left) {
                cur = split.left;
            } else if self.image_inside(c, set, &split.right) {
                cur = split.right;
            } else {
                return (cur, false);
            }
        }
    }

    /// Exact decision of `{c·x : x ∈ set} ⊆ target`.
    fn image_inside(&self, c: Letter, set: &SetDescriptor, target: &SetDescriptor) -> bool {
        match set {
            // c·W(w) is literally the set of extensions of cw
            SetDescriptor::W(w) => {
                let cw = w.prepended(c);
                match target {
                    SetDescriptor::W(v) => v.is_prefix_of(&cw),
                    SetDescriptor::A { .. } => false,
                    SetDescriptor::B { .. } => self.member(target, &cw),
                }
            }
            SetDescriptor::A {
                root,
                period,
                residue,
            } => {
                let (rotation, last) = rotate_for_char(root).expect("minimal root is nonempty");
                let shortest_len = self.sigma_len(set) + 1;
                match target {
                    SetDescriptor::W(v) => {
                        v.len() <= shortest_len && v.is_prefix_of(&self.sigma(set).prepended(c))
                    }
                    SetDescriptor::A {
                        root: t,
                        period: tp,
                        residue: tr,
                    } => {
                        c == last && *t == rotation && period % tp == 0 && (residue + 1) % tp == *tr
                    }
                    SetDescriptor::B { root: t, index } => {
                        if c == last && *t == rotation {
                            return false; // image never deviates from t^∞
                        }
                        match first_diff_prepend_power(c, root, t) {
                            None => false,
                            Some(j) => {
                                j > t.len() * t.len()
                                    && j <= shortest_len
                                    && self
                                        .progressions()
                                        .contains(*index, (j - t.len() * t.len()) as u64)
                            }
                        }
                    }
                }
            }
            SetDescriptor::B { root, index } => {
                let (rotation, last) = rotate_for_char(root).expect("minimal root is nonempty");
                let min_offset = self.progressions().min(*index);
                // the image's common stem: c then the σ-stem of the B-set
                let stem_len = root.len() * root.len() + min_offset as usize;
                match target {
                    SetDescriptor::W(v) => {
                        if v.len() > stem_len {
                            return false;
                        }
                        let stem = periodic_prefix(root, stem_len - 1)
                            .expect("nonempty root")
                            .prepended(c);
                        v.is_prefix_of(&stem)
                    }
                    SetDescriptor::A { .. } => false,
                    SetDescriptor::B { root: t, index: tk } => {
                        if c == last && *t == rotation {
                            // shifted deviations: I_k + 1 must embed
                            let p = self.progressions().get(*index);
                            let shifted = crate::progressions::Progression {
                                first: p.first + 1,
                                step: p.step,
                            };
                            return shifted.is_subset_of(&self.progressions().get(*tk));
                        }
                        match first_diff_prepend_power(c, root, t) {
                            None => false,
                            Some(j) => {
                                j > t.len() * t.len()
                                    && j <= stem_len
                                    && self
                                        .progressions()
                                        .contains(*tk, (j - t.len() * t.len()) as u64)
                            }
                        }
                    }
                }
            }
        }
    }
}
