//! Finite words over the two-letter alphabet `{a, b}` and the combinatorial
//! predicates every set descriptor rests on.
//!
//! A nonempty word `w` is *forbidden* when it is a prefix of some power
//! `u^∞` with `l(w) > l(u)²`, and *available* otherwise; deciding this
//! reduces to the minimal period: `w` is a prefix of `u^∞` exactly when
//! `l(u)` is a period of `w`, so `w` is forbidden iff `p(w)² < l(w)`.
//! A nonempty word is *minimal* when it is not a proper power.
//!
//! Positions in infinite powers are 1-indexed throughout, matching the
//! arithmetic of deviation offsets used by the B-type sets.

use crate::Error;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// One of the two alphabet letters; `a` sorts before `b`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub const ALL: [Letter; 2] = [Letter::A, Letter::B];

    pub fn other(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }

    pub fn from_char(c: char) -> Result<Letter, Error> {
        match c {
            'a' => Ok(Letter::A),
            'b' => Ok(Letter::B),
            _ => Err(Error::Parse {
                input: c.to_string(),
                what: "a letter (a or b)",
            }),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite word over `{a, b}`, possibly empty.
///
/// The empty word renders as the underscore token `_` wherever words are
/// printed or parsed. Derived ordering is lexicographic with `a < b` and a
/// proper prefix sorting before its extensions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn single(l: Letter) -> Word {
        Word { letters: vec![l] }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// Letter at 0-based position `i`.
    pub fn letter(&self, i: usize) -> Letter {
        self.letters[i]
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn prefix(&self, len: usize) -> Word {
        assert!(len <= self.len());
        Word {
            letters: self.letters[..len].to_vec(),
        }
    }

    pub fn appended(&self, l: Letter) -> Word {
        let mut letters = self.letters.clone();
        letters.push(l);
        Word { letters }
    }

    pub fn prepended(&self, l: Letter) -> Word {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(l);
        letters.extend_from_slice(&self.letters);
        Word { letters }
    }

    pub fn concat(&self, v: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + v.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&v.letters);
        Word { letters }
    }

    pub fn repeated(&self, n: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len() * n);
        for _ in 0..n {
            letters.extend_from_slice(&self.letters);
        }
        Word { letters }
    }

    pub fn is_prefix_of(&self, v: &Word) -> bool {
        self.len() <= v.len() && self.letters == v.letters[..self.len()]
    }

    /// Letter of `self^∞` at the 1-indexed position `pos`.
    pub fn infinite_letter(&self, pos: usize) -> Letter {
        assert!(!self.is_empty(), "the empty word has no infinite power");
        assert!(pos >= 1);
        self.letters[(pos - 1) % self.len()]
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "_");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word, Error> {
        if s == "_" {
            return Ok(Word::empty());
        }
        if s.is_empty() {
            return Err(Error::Parse {
                input: s.to_string(),
                what: "a word (use `_` for the empty word)",
            });
        }
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            letters.push(Letter::from_char(c).map_err(|_| Error::Parse {
                input: s.to_string(),
                what: "a word over {a, b}",
            })?);
        }
        Ok(Word { letters })
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Word, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// `uv`: `u` followed by `v`.
pub fn concat(u: &Word, v: &Word) -> Word {
    u.concat(v)
}

/// Is `u` an initial segment of `v`?
pub fn is_prefix(u: &Word, v: &Word) -> bool {
    u.is_prefix_of(v)
}

/// The prefix of `w^∞` of length `len`.
pub fn periodic_prefix(w: &Word, len: usize) -> Result<Word, Error> {
    if w.is_empty() {
        return Err(Error::EmptyWordPower);
    }
    let mut letters = Vec::with_capacity(len);
    for pos in 1..=len {
        letters.push(w.infinite_letter(pos));
    }
    Ok(Word::from_letters(letters))
}

/// Smallest `p ≥ 1` with `w[i] = w[i+p]` for all valid `i`, via the border
/// array: the period is `l(w)` minus the longest proper border.
pub fn minimal_period(w: &Word) -> Result<usize, Error> {
    if w.is_empty() {
        return Err(Error::EmptyWordPeriod);
    }
    let ls = w.letters();
    let n = ls.len();
    let mut border = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && ls[i] != ls[k] {
            k = border[k - 1];
        }
        if ls[i] == ls[k] {
            k += 1;
        }
        border[i] = k;
    }
    Ok(n - border[n - 1])
}

/// A word is available unless some `u` has `w ≤ u^∞` with `l(w) > l(u)²`;
/// the empty word counts as available.
pub fn is_available(w: &Word) -> bool {
    if w.is_empty() {
        return true;
    }
    let p = minimal_period(w).expect("nonempty");
    w.len() <= p * p
}

/// A nonempty word not of the form `u^k` with `k ≥ 2`.
pub fn is_minimal(w: &Word) -> bool {
    if w.is_empty() {
        return false;
    }
    let p = minimal_period(w).expect("nonempty");
    !(p < w.len() && w.len().is_multiple_of(p))
}

/// The shortest word sharing `w`'s infinite power.
pub fn primitive_root(w: &Word) -> Result<Word, Error> {
    let p = minimal_period(w)?;
    if w.len().is_multiple_of(p) {
        Ok(w.prefix(p))
    } else {
        Ok(w.clone())
    }
}

/// The unique available word `w_n` of length `l(w)² + n` formed by the
/// length-`l(w)²+n−1` prefix of `w^∞` followed by the letter that breaks
/// the period.
pub fn available_extension(w: &Word, n: usize) -> Result<Word, Error> {
    if !is_minimal(w) {
        return Err(Error::NotMinimal(w.clone()));
    }
    if n == 0 {
        return Err(Error::ExtensionIndex);
    }
    let base = w.len() * w.len() + n - 1;
    let stem = periodic_prefix(w, base)?;
    let deviant = w.infinite_letter(base + 1).other();
    Ok(stem.appended(deviant))
}

/// Cyclic shift: returns `(u, s)` with `s` the last letter of `w` and
/// `sw = us`. Rotation preserves minimality.
pub fn rotate_for_char(w: &Word) -> Result<(Word, Letter), Error> {
    let Some(s) = w.last() else {
        return Err(Error::EmptyWordRotation);
    };
    let u = w.prefix(w.len() - 1).prepended(s);
    Ok((u, s))
}

/// Smallest 1-indexed position where `u` differs from `w^∞`, or `None`
/// when `u` is a prefix of `w^∞`.
pub fn first_deviation(u: &Word, w: &Word) -> Option<usize> {
    assert!(!w.is_empty(), "deviation from the empty power is undefined");
    (1..=u.len()).find(|&pos| u.letter(pos - 1) != w.infinite_letter(pos))
}

/// First 1-indexed position where `w^∞` and `t^∞` differ, or `None` when
/// the powers are equal. Two powers agreeing past `2·l(w)·l(t)` are equal,
/// so the scan is bounded.
pub fn first_diff_of_powers(w: &Word, t: &Word) -> Option<usize> {
    assert!(!w.is_empty() && !t.is_empty());
    let bound = 2 * w.len() * t.len() + w.len() + t.len() + 2;
    (1..=bound).find(|&pos| w.infinite_letter(pos) != t.infinite_letter(pos))
}

/// First 1-indexed position where `c·w^∞` and `t^∞` differ, or `None` when
/// equal (which forces `c` to be the last letter of `w` and `t` its
/// rotation).
pub fn first_diff_prepend_power(c: Letter, w: &Word, t: &Word) -> Option<usize> {
    assert!(!w.is_empty() && !t.is_empty());
    let bound = 2 * w.len() * t.len() + w.len() + t.len() + 3;
    (1..=bound).find(|&pos| {
        let cw = if pos == 1 {
            c
        } else {
            w.infinite_letter(pos - 1)
        };
        cw != t.infinite_letter(pos)
    })
}

/// All `2^len` words of the given length, in lexicographic order.
pub fn words_of_length(len: usize) -> Vec<Word> {
    assert!(len < usize::BITS as usize - 1);
    let mut out = Vec::with_capacity(1 << len);
    let mut current = vec![Letter::A; len];
    loop {
        out.push(Word::from_letters(current.clone()));
        // increment as a base-2 counter, a = 0, b = 1
        let mut i = len;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] == Letter::A {
                current[i] = Letter::B;
                break;
            }
            current[i] = Letter::A;
        }
    }
}

/// All words of length at most `len`, shortest first then lexicographic.
pub fn words_up_to(len: usize) -> Vec<Word> {
    (0..=len).flat_map(words_of_length).collect()
}

/// The minimal words of the given length.
pub fn minimal_words(len: usize) -> Vec<Word> {
    words_of_length(len)
        .into_iter()
        .filter(is_minimal)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Proptest regexes produce `""` for the empty word rather than `_`.
    fn pw(s: &str) -> Word {
        if s.is_empty() {
            Word::empty()
        } else {
            s.parse().unwrap()
        }
    }

    /// Quantifier form of the forbidden definition, scanning every candidate
    /// root up to the word length.
    fn naive_is_available(word: &Word) -> bool {
        if word.is_empty() {
            return true;
        }
        for ulen in 1..=word.len() {
            if word.len() <= ulen * ulen {
                continue;
            }
            let u = word.prefix(ulen);
            if periodic_prefix(&u, word.len()).unwrap() == *word {
                return false;
            }
        }
        true
    }

    fn naive_minimal_period(word: &Word) -> usize {
        (1..=word.len())
            .find(|&p| (0..word.len() - p).all(|i| word.letter(i) == word.letter(i + p)))
            .unwrap()
    }

    fn naive_is_minimal(word: &Word) -> bool {
        if word.is_empty() {
            return false;
        }
        for ulen in 1..word.len() {
            if word.len().is_multiple_of(ulen)
                && word.prefix(ulen).repeated(word.len() / ulen) == *word
            {
                return false;
            }
        }
        true
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat(&w("ab"), &w("a")), w("aba"));
        assert_eq!(concat(&w("_"), &w("b")), w("b"));
        assert_eq!(concat(&w("a"), &w("b")), w("ab"));
    }

    #[test]
    fn prefix_examples() {
        assert!(is_prefix(&w("ab"), &w("abab")));
        assert!(!is_prefix(&w("ba"), &w("abab")));
        for word in words_up_to(6) {
            assert!(is_prefix(&Word::empty(), &word));
        }
    }

    #[test]
    fn periodic_prefix_examples() {
        assert_eq!(periodic_prefix(&w("ab"), 5).unwrap(), w("ababa"));
        assert_eq!(periodic_prefix(&w("a"), 3).unwrap(), w("aaa"));
        assert_eq!(periodic_prefix(&w("ba"), 0).unwrap(), Word::empty());
        assert_eq!(
            periodic_prefix(&Word::empty(), 3),
            Err(Error::EmptyWordPower)
        );
    }

    #[test]
    fn minimal_period_examples() {
        assert_eq!(minimal_period(&w("abab")).unwrap(), 2);
        assert_eq!(minimal_period(&w("aab")).unwrap(), 3);
        assert_eq!(minimal_period(&w("aabaa")).unwrap(), 3);
        assert!(minimal_period(&Word::empty()).is_err());
    }

    #[test]
    fn availability_anchors() {
        assert!(is_available(&Word::empty()));
        assert!(is_available(&w("a")));
        assert!(is_available(&w("abab")));
        assert!(!is_available(&w("ababa")));
        assert!(!is_available(&w("aa")));
        assert!(is_available(&w("bbab")));
    }

    #[test]
    fn availability_matches_quantifier_scan() {
        for word in words_up_to(14) {
            assert_eq!(
                is_available(&word),
                naive_is_available(&word),
                "disagreement at {word}"
            );
        }
    }

    #[test]
    fn minimality_examples_and_scan() {
        assert!(is_minimal(&w("a")));
        assert!(is_minimal(&w("ab")));
        assert!(!is_minimal(&w("aa")));
        assert!(!is_minimal(&w("aabaab")));
        for word in words_up_to(14) {
            assert_eq!(is_minimal(&word), naive_is_minimal(&word));
        }
    }

    #[test]
    fn available_extension_anchors() {
        assert_eq!(available_extension(&w("a"), 4).unwrap(), w("aaaab"));
        assert_eq!(
            available_extension(&w("ba"), 9).unwrap(),
            w("babababababaa")
        );
        assert_eq!(available_extension(&w("a"), 1).unwrap(), w("ab"));
        assert!(matches!(
            available_extension(&w("aa"), 1),
            Err(Error::NotMinimal(_))
        ));
    }

    #[test]
    fn available_extension_properties() {
        for root in words_up_to(3).into_iter().filter(is_minimal) {
            for n in 1..=20 {
                let ext = available_extension(&root, n).unwrap();
                assert_eq!(ext.len(), root.len() * root.len() + n);
                assert!(is_available(&ext), "{ext} should be available");
                let stem = ext.prefix(ext.len() - 1);
                assert_eq!(stem, periodic_prefix(&root, stem.len()).unwrap());
                assert_eq!(first_deviation(&ext, &root), Some(ext.len()));
            }
        }
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(rotate_for_char(&w("ab")).unwrap(), (w("ba"), Letter::B));
        assert_eq!(rotate_for_char(&w("a")).unwrap(), (w("a"), Letter::A));
        assert_eq!(rotate_for_char(&w("aab")).unwrap(), (w("baa"), Letter::B));
        assert!(rotate_for_char(&Word::empty()).is_err());
    }

    #[test]
    fn rotation_identity_and_minimality() {
        for word in words_up_to(10).into_iter().filter(|x| !x.is_empty()) {
            let (u, s) = rotate_for_char(&word).unwrap();
            assert_eq!(word.prepended(s), u.appended(s), "sw = us fails at {word}");
            if is_minimal(&word) {
                assert!(is_minimal(&u), "rotation of minimal {word} is {u}");
            }
        }
    }

    #[test]
    fn first_deviation_examples() {
        assert_eq!(first_deviation(&w("aab"), &w("a")), Some(3));
        assert_eq!(first_deviation(&w("aaa"), &w("a")), None);
        assert_eq!(first_deviation(&w("babababababaa"), &w("ba")), Some(13));
    }

    #[test]
    fn either_extension_is_available() {
        for word in words_up_to(12) {
            assert!(
                is_available(&word.prepended(Letter::A))
                    || is_available(&word.prepended(Letter::B)),
                "both aw, bw forbidden at {word}"
            );
            assert!(
                is_available(&word.appended(Letter::A)) || is_available(&word.appended(Letter::B)),
                "both wa, wb forbidden at {word}"
            );
        }
    }

    #[test]
    fn power_diff_matches_roots() {
        for u in words_up_to(4).into_iter().filter(|x| !x.is_empty()) {
            for v in words_up_to(4).into_iter().filter(|x| !x.is_empty()) {
                let equal = primitive_root(&u).unwrap() == primitive_root(&v).unwrap();
                assert_eq!(first_diff_of_powers(&u, &v).is_none(), equal);
            }
        }
    }

    proptest! {
        #[test]
        fn border_period_matches_naive(s in "[ab]{1,24}") {
            let word: Word = s.parse().unwrap();
            prop_assert_eq!(minimal_period(&word).unwrap(), naive_minimal_period(&word));
        }

        #[test]
        fn concat_is_associative_and_lengthy(a in "[ab]{0,8}", b in "[ab]{0,8}", c in "[ab]{0,8}") {
            let (a, b, c) = (pw(&a), pw(&b), pw(&c));
            prop_assert_eq!(concat(&concat(&a, &b), &c), concat(&a, &concat(&b, &c)));
            prop_assert_eq!(concat(&a, &b).len(), a.len() + b.len());
            prop_assert!(a.is_prefix_of(&concat(&a, &b)));
        }

        #[test]
        fn periodic_prefix_is_periodic(s in "[ab]{1,6}", len in 0usize..40) {
            let word: Word = s.parse().unwrap();
            let p = periodic_prefix(&word, len).unwrap();
            prop_assert_eq!(p.len(), len);
            for i in 1..=len {
                prop_assert_eq!(p.letter(i - 1), word.letter((i - 1) % word.len()));
            }
        }

        #[test]
        fn word_display_round_trips(s in "[ab]{0,12}") {
            let word = pw(&s);
            let shown = word.to_string();
            let back: Word = shown.parse().unwrap();
            prop_assert_eq!(back, word);
        }
    }
}
