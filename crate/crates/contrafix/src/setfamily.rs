//! Symbolic descriptors for the three kinds of diametrisable sets and the
//! binary tree they span.
//!
//! * `W:w` — all extensions of an available word `w` (including `w`).
//! * `A:w:p:r` — prefixes `u` of `w^∞` (minimal `w`) with
//!   `l(u) ∈ {r + ip : i ≥ 1}` and `l(u) > l(w)²`; `p` is a power of two,
//!   `0 ≤ r < p`.
//! * `B:w:k` — the union over `i ∈ I_k` of the `W` sets of the available
//!   extensions `w_i` (deviation of `w^∞` at offset `i`, see
//!   [`crate::words::available_extension`]).
//!
//! Two descriptors denote the same set exactly when they are structurally
//! equal, so equality is derived. Every descriptor splits into two child
//! sets losing at most one word, which generates the family tree rooted at
//! `W:_`; subset order coincides with tree ancestry.
//!
//! [`Family`] owns the progression table and the rank layers; all queries
//! go through it. Caches are write-once: racing writers compute identical
//! values.

use crate::ordering::MAX_SIGMA_LEN;
use crate::progressions::{Progressions, SplitKind};
use crate::words::{
    self, available_extension, first_deviation, first_diff_of_powers, is_available, is_minimal,
    minimal_words, periodic_prefix, words_of_length, Letter, Word,
};
use crate::Error;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

/// The three set shapes; the derived order `A < B < W` is the type
/// precedence used by the family order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum SetKind {
    A,
    B,
    W,
}

impl fmt::Display for SetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetKind::A => write!(f, "A"),
            SetKind::B => write!(f, "B"),
            SetKind::W => write!(f, "W"),
        }
    }
}

/// A diametrisable set, symbolically.
///
/// Construct through [`SetDescriptor::w`], [`SetDescriptor::a`] and
/// [`SetDescriptor::b`], which enforce the shape invariants; `FromStr`
/// parses the textual form `W:word`, `A:word:p:r`, `B:word:k` with `_`
/// for the empty word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SetDescriptor {
    W(Word),
    A {
        root: Word,
        period: u64,
        residue: u64,
    },
    B {
        root: Word,
        index: u64,
    },
}

impl SetDescriptor {
    pub fn root_of_all() -> SetDescriptor {
        SetDescriptor::W(Word::empty())
    }

    pub fn w(word: Word) -> Result<SetDescriptor, Error> {
        if !is_available(&word) {
            return Err(Error::NotAvailable(word));
        }
        Ok(SetDescriptor::W(word))
    }

    pub fn a(root: Word, period: u64, residue: u64) -> Result<SetDescriptor, Error> {
        if !is_minimal(&root) {
            return Err(Error::NotMinimal(root));
        }
        if !period.is_power_of_two() || residue >= period {
            return Err(Error::BadProgressionShape { period, residue });
        }
        Ok(SetDescriptor::A {
            root,
            period,
            residue,
        })
    }

    pub fn b(root: Word, index: u64) -> Result<SetDescriptor, Error> {
        if !is_minimal(&root) {
            return Err(Error::NotMinimal(root));
        }
        if index == 0 {
            return Err(Error::BadSetIndex);
        }
        Ok(SetDescriptor::B { root, index })
    }

    pub fn kind(&self) -> SetKind {
        match self {
            SetDescriptor::W(_) => SetKind::W,
            SetDescriptor::A { .. } => SetKind::A,
            SetDescriptor::B { .. } => SetKind::B,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        match self {
            SetDescriptor::W(w) => SetDescriptor::w(w.clone()).map(|_| ()),
            SetDescriptor::A {
                root,
                period,
                residue,
            } => SetDescriptor::a(root.clone(), *period, *residue).map(|_| ()),
            SetDescriptor::B { root, index } => SetDescriptor::b(root.clone(), *index).map(|_| ()),
        }
    }
}

impl fmt::Display for SetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetDescriptor::W(w) => write!(f, "W:{w}"),
            SetDescriptor::A {
                root,
                period,
                residue,
            } => write!(f, "A:{root}:{period}:{residue}"),
            SetDescriptor::B { root, index } => write!(f, "B:{root}:{index}"),
        }
    }
}

impl fmt::Debug for SetDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for SetDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<SetDescriptor, Error> {
        let parse_err = || Error::Parse {
            input: s.to_string(),
            what: "a set descriptor (W:<word>, A:<word>:<p>:<r> or B:<word>:<k>)",
        };
        let mut parts = s.split(':');
        let tag = parts.next().ok_or_else(parse_err)?;
        let word: Word = parts.next().ok_or_else(parse_err)?.parse()?;
        let rest: Vec<&str> = parts.collect();
        match (tag, rest.as_slice()) {
            ("W", []) => SetDescriptor::w(word),
            ("A", [p, r]) => {
                let period = p.parse().map_err(|_| parse_err())?;
                let residue = r.parse().map_err(|_| parse_err())?;
                SetDescriptor::a(word, period, residue)
            }
            ("B", [k]) => {
                let index = k.parse().map_err(|_| parse_err())?;
                SetDescriptor::b(word, index)
            }
            _ => Err(parse_err()),
        }
    }
}

impl Serialize for SetDescriptor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SetDescriptor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<SetDescriptor, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// The two child sets of a split plus the finitely many words falling in
/// neither; the three parts partition the parent exactly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SplitResult {
    pub left: SetDescriptor,
    pub right: SetDescriptor,
    pub lost: Vec<Word>,
}

pub(crate) struct Layer {
    pub start: u64,
    pub sorted: Vec<SetDescriptor>,
    pub index: HashMap<SetDescriptor, u64>,
}

/// Shared context: the progression table plus the rank layers, both filled
/// on demand under a write-once discipline.
pub struct Family {
    progressions: Progressions,
    pub(crate) layers: RwLock<Vec<Arc<Layer>>>,
}

impl Default for Family {
    fn default() -> Family {
        Family::new()
    }
}

impl Family {
    pub fn new() -> Family {
        Family {
            progressions: Progressions::new(),
            layers: RwLock::new(Vec::new()),
        }
    }

    pub fn progressions(&self) -> &Progressions {
        &self.progressions
    }

    /// Does the word belong to the denoted set?
    pub fn member(&self, set: &SetDescriptor, u: &Word) -> bool {
        debug_assert!(set.validate().is_ok(), "malformed descriptor {set}");
        match set {
            SetDescriptor::W(w) => w.is_prefix_of(u),
            SetDescriptor::A {
                root,
                period,
                residue,
            } => {
                let len = u.len() as u64;
                first_deviation(u, root).is_none()
                    && u.len() > root.len() * root.len()
                    && len % period == *residue
                    && len >= residue + period
            }
            SetDescriptor::B { root, index } => match first_deviation(u, root) {
                Some(j) if j > root.len() * root.len() => {
                    let offset = (j - root.len() * root.len()) as u64;
                    self.progressions.contains(*index, offset)
                }
                _ => false,
            },
        }
    }

    /// Length of the unique shortest member.
    pub fn sigma_len(&self, set: &SetDescriptor) -> usize {
        match set {
            SetDescriptor::W(w) => w.len(),
            SetDescriptor::A {
                root,
                period,
                residue,
            } => a_sigma_len(root.len(), *period, *residue),
            SetDescriptor::B { root, index } => {
                root.len() * root.len() + self.progressions.min(*index) as usize
            }
        }
    }

    /// The unique shortest member of the set.
    pub fn sigma(&self, set: &SetDescriptor) -> Word {
        match set {
            SetDescriptor::W(w) => w.clone(),
            SetDescriptor::A { root, .. } => {
                periodic_prefix(root, self.sigma_len(set)).expect("minimal root is nonempty")
            }
            SetDescriptor::B { root, index } => {
                available_extension(root, self.progressions.min(*index) as usize)
                    .expect("validated B-set")
            }
        }
    }

    /// The unique two-child split. W-sets with both one-letter extensions
    /// available split into those extensions and lose the stem; otherwise
    /// the stem is the perfect power `t^{l(t)}` and the split degenerates to
    /// `A:t:1:0` and `B:t:1`. A-sets halve their progression, losing at
    /// most the single member of length `r + p`. B-sets follow the split of
    /// `I_k` and lose nothing.
    pub fn children(&self, set: &SetDescriptor) -> SplitResult {
        let (first, second, lost) = match set {
            SetDescriptor::W(w) => {
                let wa = w.appended(Letter::A);
                let wb = w.appended(Letter::B);
                if is_available(&wa) && is_available(&wb) {
                    (SetDescriptor::W(wa), SetDescriptor::W(wb), vec![w.clone()])
                } else {
                    let side = isqrt(w.len());
                    debug_assert_eq!(side * side, w.len(), "degenerate stem must be square");
                    let t = w.prefix(side);
                    debug_assert!(is_minimal(&t));
                    debug_assert_eq!(t.repeated(side), *w);
                    (
                        SetDescriptor::a(t.clone(), 1, 0).expect("valid degenerate A child"),
                        SetDescriptor::b(t, 1).expect("valid degenerate B child"),
                        vec![w.clone()],
                    )
                }
            }
            SetDescriptor::A {
                root,
                period,
                residue,
            } => {
                let left = SetDescriptor::A {
                    root: root.clone(),
                    period: period * 2,
                    residue: *residue,
                };
                let right = SetDescriptor::A {
                    root: root.clone(),
                    period: period * 2,
                    residue: residue + period,
                };
                let dropped = (residue + period) as usize;
                let lost = if dropped > root.len() * root.len() {
                    vec![periodic_prefix(root, dropped).expect("nonempty root")]
                } else {
                    Vec::new()
                };
                (left, right, lost)
            }
            SetDescriptor::B { root, index } => match self.progressions.split(*index) {
                SplitKind::TwoB { left, right } => (
                    SetDescriptor::B {
                        root: root.clone(),
                        index: left,
                    },
                    SetDescriptor::B {
                        root: root.clone(),
                        index: right,
                    },
                    Vec::new(),
                ),
                SplitKind::DropMin { child, lost } => (
                    SetDescriptor::B {
                        root: root.clone(),
                        index: child,
                    },
                    SetDescriptor::W(
                        available_extension(root, lost as usize).expect("validated B-set"),
                    ),
                    Vec::new(),
                ),
            },
        };
        if self.compare(&first, &second) == std::cmp::Ordering::Less {
            SplitResult {
                left: first,
                right: second,
                lost,
            }
        } else {
            SplitResult {
                left: second,
                right: first,
                lost,
            }
        }
    }

    /// Subset order via tree ancestry: walk down from `outer` following the
    /// child containing `σ(inner)` until `inner` is reached or the word
    /// falls out.
    pub fn is_subset(&self, inner: &SetDescriptor, outer: &SetDescriptor) -> bool {
        let target = self.sigma(inner);
        let mut cur = outer.clone();
        loop {
            if cur == *inner {
                return true;
            }
            if !self.member(&cur, &target) {
                return false;
            }
            let split = self.children(&cur);
            if self.member(&split.left, &target) {
                cur = split.left;
            } else if self.member(&split.right, &target) {
                cur = split.right;
            } else {
                return false;
            }
        }
    }

    /// Closed-form subset decision, case by case on the two shapes. Kept
    /// independent of [`Family::is_subset`]; the two must agree everywhere.
    pub fn subset_by_rules(&self, inner: &SetDescriptor, outer: &SetDescriptor) -> bool {
        use SetDescriptor::{A, B, W};
        if inner == outer {
            return true;
        }
        match (inner, outer) {
            (W(u), W(v)) => v.is_prefix_of(u),
            (W(_), A { .. }) => false,
            (W(u), B { .. }) => self.member(outer, u),
            (A { .. }, W(v)) => v.is_prefix_of(&self.sigma(inner)),
            (
                A {
                    root: wi,
                    period: pi,
                    residue: ri,
                },
                A {
                    root: wo,
                    period: po,
                    residue: ro,
                },
            ) => wi == wo && pi % po == 0 && ri % po == *ro,
            (
                A { root: wi, .. },
                B {
                    root: wo,
                    index: ko,
                },
            ) => {
                if wi == wo {
                    return false;
                }
                match first_diff_of_powers(wi, wo) {
                    None => false,
                    Some(j) => {
                        j > wo.len() * wo.len()
                            && self.sigma_len(inner) >= j
                            && self
                                .progressions
                                .contains(*ko, (j - wo.len() * wo.len()) as u64)
                    }
                }
            }
            (B { .. }, W(v)) => {
                let stem_len = self.sigma_len(inner) - 1;
                v.len() <= stem_len && v.is_prefix_of(&self.sigma(inner))
            }
            (B { .. }, A { .. }) => false,
            (
                B {
                    root: wi,
                    index: ki,
                },
                B {
                    root: wo,
                    index: ko,
                },
            ) => {
                if wi == wo {
                    return self
                        .progressions
                        .get(*ki)
                        .is_subset_of(&self.progressions.get(*ko));
                }
                match first_diff_of_powers(wi, wo) {
                    None => false,
                    Some(j) => {
                        j > wo.len() * wo.len()
                            && j < self.sigma_len(inner)
                            && self
                                .progressions
                                .contains(*ko, (j - wo.len() * wo.len()) as u64)
                    }
                }
            }
        }
    }

    /// Distinct diametrisable sets intersect exactly when one contains the
    /// other.
    pub fn intersects(&self, u: &SetDescriptor, v: &SetDescriptor) -> bool {
        u == v || self.subset_by_rules(u, v) || self.subset_by_rules(v, u)
    }

    /// All diametrisable sets containing the word, ordered by the family
    /// order. The list is finite: W-roots are prefixes, A/B-roots have
    /// squared length below `l(u)`, and B-indices are capped by the
    /// deviation offset.
    pub fn sets_containing(&self, u: &Word) -> Vec<SetDescriptor> {
        let mut out = Vec::new();
        for len in 0..=u.len() {
            let v = u.prefix(len);
            if is_available(&v) {
                out.push(SetDescriptor::W(v));
            }
        }
        let mut d = 1;
        while d * d < u.len() {
            let t = u.prefix(d);
            if is_minimal(&t) {
                match first_deviation(u, &t) {
                    None => {
                        // u is a prefix of t^∞: one A-set per period
                        let mut p = 1u64;
                        while p <= u.len() as u64 {
                            let r = u.len() as u64 % p;
                            out.push(SetDescriptor::A {
                                root: t.clone(),
                                period: p,
                                residue: r,
                            });
                            p *= 2;
                        }
                    }
                    Some(j) if j > d * d => {
                        let offset = (j - d * d) as u64;
                        // min I_k exceeds offset from level offset+1 onward
                        let cap = (1u64 << (offset + 1)) - 2;
                        for k in 1..=cap {
                            if self.progressions.contains(k, offset) {
                                out.push(SetDescriptor::B {
                                    root: t.clone(),
                                    index: k,
                                });
                            }
                        }
                    }
                    Some(_) => {}
                }
            }
            d += 1;
        }
        debug_assert!(out.iter().all(|s| self.member(s, u)));
        out.sort_by(|x, y| self.compare(x, y));
        out
    }

    /// Every descriptor whose shortest member has exactly the given length,
    /// in family order.
    pub fn enumerate_sigma_len(&self, len: usize) -> Result<Vec<SetDescriptor>, Error> {
        if len > MAX_SIGMA_LEN {
            return Err(Error::DepthExceeded {
                needed: len,
                cap: MAX_SIGMA_LEN,
            });
        }
        let mut out = Vec::new();
        for w in words_of_length(len) {
            if is_available(&w) {
                out.push(SetDescriptor::W(w));
            }
        }
        let mut d = 1;
        while d * d < len {
            let roots = minimal_words(d);
            // A-type: the residue is forced by len mod p
            let mut p = 1u64;
            while p <= len as u64 {
                let r = len as u64 % p;
                if a_sigma_len(d, p, r) == len {
                    for root in &roots {
                        out.push(SetDescriptor::A {
                            root: root.clone(),
                            period: p,
                            residue: r,
                        });
                    }
                }
                p *= 2;
            }
            // B-type: indices whose progression minimum fills the gap
            let n = (len - d * d) as u64;
            let cap = (1u64 << (n + 1)) - 2;
            for k in 1..=cap {
                if self.progressions.min(k) == n {
                    for root in &roots {
                        out.push(SetDescriptor::B {
                            root: root.clone(),
                            index: k,
                        });
                    }
                }
            }
            d += 1;
        }
        out.sort_by(|x, y| self.compare(x, y));
        Ok(out)
    }
}

/// Shortest admissible length of an A-set: the least `ℓ ≡ r (mod p)` with
/// `ℓ ≥ r + p` and `ℓ > root_len²`.
pub(crate) fn a_sigma_len(root_len: usize, period: u64, residue: u64) -> usize {
    let base = (residue + period).max(root_len as u64 * root_len as u64 + 1);
    let delta = (residue + period - base % period) % period;
    (base + delta) as usize
}

pub(crate) fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Brute-force membership listing used by tests and the harness: all
/// members of the set with length at most `max_len`.
pub fn bounded_members(family: &Family, set: &SetDescriptor, max_len: usize) -> Vec<Word> {
    words::words_up_to(max_len)
        .into_iter()
        .filter(|u| family.member(set, u))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::words_up_to;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn d(s: &str) -> SetDescriptor {
        s.parse().unwrap()
    }

    #[test]
    fn descriptor_validation() {
        assert!(SetDescriptor::w(w("ab")).is_ok());
        assert!(matches!(
            SetDescriptor::w(w("ababa")),
            Err(Error::NotAvailable(_))
        ));
        assert!(matches!(
            SetDescriptor::a(w("aa"), 1, 0),
            Err(Error::NotMinimal(_))
        ));
        assert!(matches!(
            SetDescriptor::a(w("a"), 3, 0),
            Err(Error::BadProgressionShape { .. })
        ));
        assert!(matches!(
            SetDescriptor::a(w("a"), 2, 2),
            Err(Error::BadProgressionShape { .. })
        ));
        assert!(matches!(
            SetDescriptor::b(w("a"), 0),
            Err(Error::BadSetIndex)
        ));
    }

    #[test]
    fn descriptor_text_round_trip() {
        for s in ["W:_", "W:ab", "A:a:1:0", "A:ba:4:3", "B:a:7", "B:ba:13"] {
            assert_eq!(d(s).to_string(), s);
        }
        assert!("A:a:1".parse::<SetDescriptor>().is_err());
        assert!("X:a".parse::<SetDescriptor>().is_err());
    }

    #[test]
    fn member_anchors() {
        let fam = Family::new();
        assert!(fam.member(&d("B:a:7"), &w("aaaab")));
        assert!(fam.member(&d("A:a:1:0"), &w("aa")));
        assert!(!fam.member(&d("W:ab"), &w("ba")));
    }

    #[test]
    fn a_membership_matches_direct_enumeration() {
        let fam = Family::new();
        let set = d("A:a:1:0");
        let got = bounded_members(&fam, &set, 6);
        // prefixes of a^∞ of any length from 2 on
        let expect: Vec<Word> = (2..=6)
            .map(|n| periodic_prefix(&w("a"), n).unwrap())
            .collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn sigma_anchors() {
        let fam = Family::new();
        assert_eq!(fam.sigma(&d("B:a:7")), w("aaaab"));
        assert_eq!(fam.sigma(&d("B:ba:13")), w("babababababaa"));
        assert_eq!(fam.sigma(&d("A:a:1:0")), w("aa"));
        assert_eq!(fam.sigma(&d("W:_")), Word::empty());
    }

    #[test]
    fn sigma_is_shortest_member() {
        let fam = Family::new();
        for len in 0..=6 {
            for set in fam.enumerate_sigma_len(len).unwrap() {
                let s = fam.sigma(&set);
                assert!(fam.member(&set, &s), "σ not a member of {set}");
                assert_eq!(s.len(), len);
                for m in bounded_members(&fam, &set, 12) {
                    assert!(m.len() >= s.len(), "{m} shorter than σ in {set}");
                    if m.len() == s.len() {
                        assert_eq!(m, s, "σ not unique in {set}");
                    }
                }
            }
        }
    }

    #[test]
    fn children_anchors() {
        let fam = Family::new();
        let root_split = fam.children(&d("W:_"));
        assert_eq!(root_split.left, d("W:a"));
        assert_eq!(root_split.right, d("W:b"));
        assert_eq!(root_split.lost, vec![Word::empty()]);

        let wa = fam.children(&d("W:a"));
        assert_eq!(wa.left, d("A:a:1:0"));
        assert_eq!(wa.right, d("B:a:1"));
        assert_eq!(wa.lost, vec![w("a")]);

        let a10 = fam.children(&d("A:a:1:0"));
        assert_eq!(a10.left, d("A:a:2:0"));
        assert_eq!(a10.right, d("A:a:2:1"));

        let wab = fam.children(&d("W:ab"));
        assert_eq!(wab.left, d("W:aba"));
        assert_eq!(wab.right, d("W:abb"));
        assert_eq!(wab.lost, vec![w("ab")]);
    }

    #[test]
    fn a_split_lost_words() {
        let fam = Family::new();
        // children of A:a:1:0 would drop the member of length r+p = 1, but
        // length 1 is not above l(root)² = 1, so nothing is lost.
        let split = fam.children(&d("A:a:1:0"));
        assert_eq!(split.lost, Vec::<Word>::new());
        // children of A:a:2:0 drop the member of length 2 = aa.
        let split = fam.children(&d("A:a:2:0"));
        assert_eq!(split.lost, vec![w("aa")]);
    }

    #[test]
    fn split_partitions_bounded_members() {
        let fam = Family::new();
        for len in 0..=5 {
            for set in fam.enumerate_sigma_len(len).unwrap() {
                let split = fam.children(&set);
                for word in bounded_members(&fam, &set, 14) {
                    let in_left = fam.member(&split.left, &word);
                    let in_right = fam.member(&split.right, &word);
                    let in_lost = split.lost.contains(&word);
                    let count = in_left as u8 + in_right as u8 + in_lost as u8;
                    assert_eq!(count, 1, "{word} covered {count} times in split of {set}");
                }
                // children and lost words stay inside the parent
                for word in bounded_members(&fam, &split.left, 14) {
                    assert!(fam.member(&set, &word));
                }
                for word in bounded_members(&fam, &split.right, 14) {
                    assert!(fam.member(&set, &word));
                }
                for word in &split.lost {
                    assert!(fam.member(&set, word));
                }
            }
        }
    }

    #[test]
    fn b1_identity_as_remarked() {
        // B:w:1 = W:w^{l(w)} minus (A:w:1:0 and the stem itself)
        let fam = Family::new();
        for root in ["a", "b", "ab", "ba"] {
            let root = w(root);
            let b1 = SetDescriptor::b(root.clone(), 1).unwrap();
            let stem = root.repeated(root.len());
            let w_stem = SetDescriptor::W(stem.clone());
            let a10 = SetDescriptor::a(root.clone(), 1, 0).unwrap();
            for word in words_up_to(14) {
                let lhs = fam.member(&b1, &word);
                let rhs = fam.member(&w_stem, &word) && !fam.member(&a10, &word) && word != stem;
                assert_eq!(lhs, rhs, "B1 identity fails at root {root}, word {word}");
            }
        }
    }

    #[test]
    fn subset_anchors() {
        let fam = Family::new();
        assert!(fam.is_subset(&d("A:a:2:0"), &d("A:a:1:0")));
        assert!(fam.is_subset(&d("B:a:7"), &d("B:a:5")));
        assert!(fam.is_subset(&d("W:ab"), &d("B:a:1")));
        assert!(!fam.is_subset(&d("A:a:1:0"), &d("A:a:2:0")));
        assert!(!fam.is_subset(&d("W:a"), &d("W:b")));
    }

    #[test]
    fn subset_rules_agree_with_ancestry() {
        let fam = Family::new();
        let mut universe = Vec::new();
        for len in 0..=4 {
            universe.extend(fam.enumerate_sigma_len(len).unwrap());
        }
        for u in &universe {
            for v in &universe {
                assert_eq!(
                    fam.is_subset(u, v),
                    fam.subset_by_rules(u, v),
                    "subset disagreement for {u} ⊆ {v}"
                );
            }
        }
    }

    #[test]
    fn subset_matches_bounded_membership() {
        let fam = Family::new();
        let mut universe = Vec::new();
        for len in 0..=4 {
            universe.extend(fam.enumerate_sigma_len(len).unwrap());
        }
        let words = words_up_to(12);
        for u in &universe {
            let members_u: Vec<&Word> = words.iter().filter(|x| fam.member(u, x)).collect();
            for v in &universe {
                if fam.subset_by_rules(u, v) {
                    assert!(
                        members_u.iter().all(|x| fam.member(v, x)),
                        "claimed {u} ⊆ {v} but a bounded member escapes"
                    );
                }
            }
        }
    }

    #[test]
    fn containment_dichotomy_and_infinite_difference() {
        let fam = Family::new();
        let mut universe = Vec::new();
        for len in 0..=4 {
            universe.extend(fam.enumerate_sigma_len(len).unwrap());
        }
        let words = words_up_to(14);
        let bitmaps: Vec<Vec<bool>> = universe
            .iter()
            .map(|s| words.iter().map(|x| fam.member(s, x)).collect())
            .collect();
        for (i, u) in universe.iter().enumerate() {
            for (j, v) in universe.iter().enumerate().skip(i + 1) {
                let meet = bitmaps[i].iter().zip(&bitmaps[j]).any(|(a, b)| *a && *b);
                if meet {
                    assert!(
                        fam.subset_by_rules(u, v) || fam.subset_by_rules(v, u),
                        "{u} and {v} intersect without nesting"
                    );
                    // the symmetric difference is nonempty and keeps growing
                    let diff_at = |cap: usize| {
                        words
                            .iter()
                            .zip(bitmaps[i].iter().zip(&bitmaps[j]))
                            .filter(|(x, (a, b))| x.len() <= cap && a != b)
                            .count()
                    };
                    assert!(diff_at(14) > 0, "{u} and {v} denote the same bounded set");
                    assert!(
                        diff_at(14) > diff_at(12),
                        "symmetric difference of {u}, {v} stopped growing"
                    );
                }
            }
        }
    }

    #[test]
    fn sets_containing_anchors() {
        let fam = Family::new();
        assert_eq!(fam.sets_containing(&w("a")), vec![d("W:_"), d("W:a")]);
        assert_eq!(fam.sets_containing(&w("b")), vec![d("W:_"), d("W:b")]);
        let sets = fam.sets_containing(&w("aaaab"));
        for needed in ["W:_", "W:a", "B:a:1", "B:a:3", "B:a:7", "W:aaaab"] {
            assert!(sets.contains(&d(needed)), "missing {needed}");
        }
        // offset of aaaab from a^∞ is 4, so exactly the I_k with 4 ∈ I_k appear
        let b_indices: Vec<u64> = sets
            .iter()
            .filter_map(|s| match s {
                SetDescriptor::B { root, index } if *root == w("a") => Some(*index),
                _ => None,
            })
            .collect();
        assert_eq!(b_indices, vec![1, 2, 3, 5, 7]);
    }

    #[test]
    fn sets_containing_matches_layer_filter() {
        let fam = Family::new();
        for word in words_up_to(10) {
            let listed = fam.sets_containing(&word);
            let mut expected = Vec::new();
            for len in 0..=word.len() {
                for set in fam.enumerate_sigma_len(len).unwrap() {
                    if fam.member(&set, &word) {
                        expected.push(set);
                    }
                }
            }
            assert_eq!(listed, expected, "sets_containing mismatch at {word}");
        }
    }

    #[test]
    fn enumerate_small_layers() {
        let fam = Family::new();
        assert_eq!(fam.enumerate_sigma_len(0).unwrap(), vec![d("W:_")]);
        assert_eq!(
            fam.enumerate_sigma_len(1).unwrap(),
            vec![d("W:a"), d("W:b")]
        );
        let layer2 = fam.enumerate_sigma_len(2).unwrap();
        let expected = [
            "A:a:1:0", "A:a:2:0", "A:b:1:0", "A:b:2:0", "B:a:1", "B:b:1", "W:ab", "W:ba",
        ];
        assert_eq!(layer2, expected.iter().map(|s| d(s)).collect::<Vec<_>>());
    }

    #[test]
    fn every_small_set_is_reached_from_the_root() {
        // tree totality: descending from W:_ visits the whole σ-length ≤ 4 universe
        let fam = Family::new();
        let mut reached = vec![SetDescriptor::root_of_all()];
        let mut frontier = vec![SetDescriptor::root_of_all()];
        while let Some(set) = frontier.pop() {
            if fam.sigma_len(&set) > 4 {
                continue;
            }
            let split = fam.children(&set);
            for child in [split.left, split.right] {
                reached.push(child.clone());
                frontier.push(child);
            }
        }
        for len in 0..=4 {
            for set in fam.enumerate_sigma_len(len).unwrap() {
                assert!(reached.contains(&set), "{set} unreachable from the root");
            }
        }
    }

    #[test]
    fn structcor_unique_child_contains_subset() {
        let fam = Family::new();
        let mut parents = Vec::new();
        for len in 0..=4 {
            parents.extend(fam.enumerate_sigma_len(len).unwrap());
        }
        let mut subsets = parents.clone();
        for len in 5..=5 {
            subsets.extend(fam.enumerate_sigma_len(len).unwrap());
        }
        for u in &parents {
            let split = fam.children(u);
            for v in &subsets {
                if v != u && fam.subset_by_rules(v, u) {
                    let in_left = fam.subset_by_rules(v, &split.left);
                    let in_right = fam.subset_by_rules(v, &split.right);
                    assert!(
                        in_left ^ in_right,
                        "{v} ⊂ {u} must live in exactly one child"
                    );
                }
            }
        }
    }
}
