//! The strict total order on descriptors and the enumeration
//! `S_0, S_1, S_2, …` of the family by rank.
//!
//! For distinct sets `U < V` holds when the first applicable clause says so:
//!
//! 1. shorter σ wins;
//! 2. at equal σ-length a proper superset wins;
//! 3. at equal σ-length, incomparable sets order by type `A < B < W`;
//! 4. same type orders alphabetically by σ (`a < b`).
//!
//! Ranks are computed by enumerating whole σ-length layers and sorting them
//! under the order; layers are cached write-once. `diam(S_k) = λ^k`, so the
//! rank is also the diameter exponent.

use crate::setfamily::{Family, Layer, SetDescriptor};
use crate::Error;
use std::cmp::Ordering;
use std::sync::Arc;

/// Largest σ-length for which layers may be materialized. Keeps the layer
/// tables (which enumerate all `2^ℓ` words of a length) at desk scale.
pub const MAX_SIGMA_LEN: usize = 18;

/// Position in the enumeration; rank 0 belongs to `W:_`, and `diam(S_k)`
/// is `λ^k`.
pub type Rank = u64;

impl Family {
    /// The family order. Total: distinct descriptors always compare.
    pub fn compare(&self, u: &SetDescriptor, v: &SetDescriptor) -> Ordering {
        if u == v {
            return Ordering::Equal;
        }
        let (lu, lv) = (self.sigma_len(u), self.sigma_len(v));
        if lu != lv {
            return lu.cmp(&lv);
        }
        if self.subset_by_rules(v, u) {
            return Ordering::Less;
        }
        if self.subset_by_rules(u, v) {
            return Ordering::Greater;
        }
        let kinds = u.kind().cmp(&v.kind());
        if kinds != Ordering::Equal {
            return kinds;
        }
        let su = self.sigma(u);
        let sv = self.sigma(v);
        debug_assert_ne!(su, sv, "incomparable same-type sets share σ: {u} vs {v}");
        su.cmp(&sv)
    }

    pub(crate) fn layer(&self, sigma_len: usize) -> Result<Arc<Layer>, Error> {
        {
            let layers = self.layers.read().expect("layer cache poisoned");
            if let Some(layer) = layers.get(sigma_len) {
                return Ok(Arc::clone(layer));
            }
        }
        let mut layers = self.layers.write().expect("layer cache poisoned");
        while layers.len() <= sigma_len {
            let len = layers.len();
            let start = layers.last().map_or(0, |l| l.start + l.sorted.len() as u64);
            let sorted = self.enumerate_sigma_len(len)?;
            let index = sorted
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), start + i as u64))
                .collect();
            layers.push(Arc::new(Layer {
                start,
                sorted,
                index,
            }));
        }
        Ok(Arc::clone(&layers[sigma_len]))
    }

    /// Number of descriptors strictly below the given one; also its
    /// diameter exponent.
    ///
    /// Layers up to [`MAX_SIGMA_LEN`] are materialized and indexed. Deeper
    /// A-type sets are still ranked exactly: layer sizes follow from
    /// counting formulas, and the A-sets of a layer precede everything
    /// else in it, so sorting just them fixes the position. Deep W- and
    /// B-type ranks would need the full layer and are reported as beyond
    /// the supported depth.
    pub fn rank(&self, set: &SetDescriptor) -> Result<Rank, Error> {
        let len = self.sigma_len(set);
        if len <= MAX_SIGMA_LEN {
            let layer = self.layer(len)?;
            return Ok(*layer
                .index
                .get(set)
                .unwrap_or_else(|| panic!("descriptor {set} missing from its layer")));
        }
        if set.kind() != crate::setfamily::SetKind::A {
            return Err(Error::DepthExceeded {
                needed: len,
                cap: MAX_SIGMA_LEN,
            });
        }
        let start = self.count_through_sigma_len(len - 1)?;
        let mut leaders = self.a_sets_of_layer(len);
        leaders.sort_by(|x, y| self.compare(x, y));
        let position = leaders
            .iter()
            .position(|s| s == set)
            .unwrap_or_else(|| panic!("descriptor {set} missing from its A-block"));
        Ok(start + position as u64)
    }

    /// Exactly the A-type descriptors whose shortest member has the given
    /// length; a small set even for deep layers.
    fn a_sets_of_layer(&self, len: usize) -> Vec<SetDescriptor> {
        let mut out = Vec::new();
        let mut d = 1;
        while d * d < len {
            for root in crate::words::minimal_words(d) {
                let mut p = 1u64;
                while p <= len as u64 {
                    let r = len as u64 % p;
                    if crate::setfamily::a_sigma_len(d, p, r) == len {
                        out.push(SetDescriptor::A {
                            root: root.clone(),
                            period: p,
                            residue: r,
                        });
                    }
                    p *= 2;
                }
            }
            d += 1;
        }
        out
    }

    /// Inverse of [`Family::rank`]: the unique set of the given rank.
    pub fn nth_set(&self, n: Rank) -> Result<SetDescriptor, Error> {
        let mut sigma_len = 0;
        loop {
            let layer = self.layer(sigma_len)?;
            if n < layer.start + layer.sorted.len() as u64 {
                return Ok(layer.sorted[(n - layer.start) as usize].clone());
            }
            sigma_len += 1;
            if sigma_len > MAX_SIGMA_LEN {
                return Err(Error::RankExceeded { rank: n });
            }
        }
    }

    /// Count of descriptors with σ-length at most the bound, by pure
    /// counting; no layer materialization.
    pub fn count_through_sigma_len(&self, sigma_len: usize) -> Result<u64, Error> {
        (0..=sigma_len).map(|l| self.count_sigma_len(l)).sum()
    }

    /// Size of one σ-length layer by counting formulas: available words by
    /// subtracting the short-period ones, A-sets from the σ-length
    /// condition, B-sets from the level structure of the progression
    /// minima.
    pub fn count_sigma_len(&self, len: usize) -> Result<u64, Error> {
        if len >= 62 {
            return Err(Error::DepthExceeded {
                needed: len,
                cap: 61,
            });
        }
        if len == 0 {
            return Ok(1);
        }
        let minimal_counts = minimal_word_counts(len);
        let forbidden: u64 = (1..len)
            .filter(|p| p * p < len)
            .map(|p| minimal_counts[p])
            .sum();
        let mut total = (1u64 << len) - forbidden;
        let mut d = 1;
        while d * d < len {
            let mut p = 1u64;
            while p <= len as u64 {
                let r = len as u64 % p;
                if crate::setfamily::a_sigma_len(d, p, r) == len {
                    total += minimal_counts[d];
                }
                p *= 2;
            }
            let gap = (len - d * d) as u64;
            total += minimal_counts[d] * progression_min_multiplicity(gap);
            d += 1;
        }
        Ok(total)
    }
}

/// `M(d)` for `d ≤ cap`: words of length `d` that are not proper powers;
/// every word has a unique primitive root, so `2^d = Σ_{e|d} M(e)`.
fn minimal_word_counts(cap: usize) -> Vec<u64> {
    let mut counts = vec![0u64; cap + 1];
    for d in 1..=cap {
        let covered: u64 = (1..d).filter(|e| d % e == 0).map(|e| counts[e]).sum();
        counts[d] = (1u64 << d) - covered;
    }
    counts
}

/// How many progressions have minimum exactly `n`: one per level whose
/// fresh minima interval `[2^{m−1}, 3·2^{m−1} − 1]` contains `n`.
fn progression_min_multiplicity(n: u64) -> u64 {
    (1..=63u32)
        .filter(|&m| {
            let step = 1u64 << (m - 1);
            step <= n && n < 3 * step
        })
        .count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfamily::bounded_members;
    use crate::words::words_up_to;

    fn d(s: &str) -> SetDescriptor {
        s.parse().unwrap()
    }

    fn universe(fam: &Family, max_len: usize) -> Vec<SetDescriptor> {
        (0..=max_len)
            .flat_map(|l| fam.enumerate_sigma_len(l).unwrap())
            .collect()
    }

    #[test]
    fn compare_anchors() {
        let fam = Family::new();
        assert_eq!(fam.compare(&d("W:_"), &d("W:a")), Ordering::Less);
        assert_eq!(fam.compare(&d("W:a"), &d("W:b")), Ordering::Less);
        assert_eq!(fam.compare(&d("A:a:1:0"), &d("A:a:2:0")), Ordering::Less);
        assert_eq!(fam.compare(&d("A:a:2:0"), &d("A:a:1:0")), Ordering::Greater);
        assert_eq!(fam.compare(&d("B:a:1"), &d("B:a:1")), Ordering::Equal);
    }

    #[test]
    fn rank_anchors() {
        let fam = Family::new();
        assert_eq!(fam.rank(&d("W:_")).unwrap(), 0);
        assert_eq!(fam.rank(&d("W:a")).unwrap(), 1);
        assert_eq!(fam.rank(&d("W:b")).unwrap(), 2);
        assert_eq!(fam.rank(&d("A:a:1:0")).unwrap(), 3);
        assert_eq!(fam.nth_set(0).unwrap(), d("W:_"));
        assert_eq!(fam.nth_set(1).unwrap(), d("W:a"));
        assert_eq!(fam.nth_set(7).unwrap(), d("B:a:1"));
    }

    #[test]
    fn order_is_total_and_transitive() {
        let fam = Family::new();
        let sets = universe(&fam, 5);
        for u in &sets {
            for v in &sets {
                let uv = fam.compare(u, v);
                let vu = fam.compare(v, u);
                assert_eq!(uv, vu.reverse(), "antisymmetry fails for {u}, {v}");
                if u != v {
                    assert_ne!(uv, Ordering::Equal, "distinct sets compare equal: {u} {v}");
                }
            }
        }
        for u in &sets {
            for v in &sets {
                if fam.compare(u, v) != Ordering::Less {
                    continue;
                }
                for t in &sets {
                    if fam.compare(v, t) == Ordering::Less {
                        assert_eq!(
                            fam.compare(u, t),
                            Ordering::Less,
                            "transitivity fails: {u} < {v} < {t}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn typeprop_on_nested_equal_sigma() {
        use crate::setfamily::SetKind;
        let fam = Family::new();
        let sets = universe(&fam, 5);
        for u in &sets {
            for v in &sets {
                if u == v || !fam.subset_by_rules(v, u) {
                    continue;
                }
                if fam.sigma_len(u) != fam.sigma_len(v) {
                    continue;
                }
                // u ⊃ v with equal σ-length: the only type pairs are
                // (A, A), (B, B) and (B parent, W child)
                let pair = (u.kind(), v.kind());
                assert!(
                    matches!(
                        pair,
                        (SetKind::A, SetKind::A)
                            | (SetKind::B, SetKind::B)
                            | (SetKind::B, SetKind::W)
                    ),
                    "unexpected nested type pair {pair:?} for {u} ⊃ {v}"
                );
                assert_eq!(fam.sigma(u), fam.sigma(v));
            }
        }
    }

    #[test]
    fn rank_and_nth_are_inverse() {
        let fam = Family::new();
        for n in 0..=300 {
            let set = fam.nth_set(n).unwrap();
            assert_eq!(fam.rank(&set).unwrap(), n);
        }
        for set in universe(&fam, 4) {
            assert_eq!(fam.nth_set(fam.rank(&set).unwrap()).unwrap(), set);
        }
    }

    #[test]
    fn a1_down_the_enumeration() {
        // among the first 300 sets, bounded intersection forces nesting with
        // the earlier set on the outside
        let fam = Family::new();
        let sets: Vec<SetDescriptor> = (0..=300).map(|n| fam.nth_set(n).unwrap()).collect();
        let words = words_up_to(14);
        let blocks = words.len().div_ceil(64);
        let bitmaps: Vec<Vec<u64>> = sets
            .iter()
            .map(|s| {
                let mut bits = vec![0u64; blocks];
                for (w, word) in words.iter().enumerate() {
                    if fam.member(s, word) {
                        bits[w / 64] |= 1 << (w % 64);
                    }
                }
                bits
            })
            .collect();
        for (i, u) in sets.iter().enumerate() {
            for (j, v) in sets.iter().enumerate().skip(i + 1) {
                let meets = bitmaps[i].iter().zip(&bitmaps[j]).any(|(a, b)| a & b != 0);
                if meets {
                    assert!(
                        fam.subset_by_rules(v, u),
                        "S_{i} = {u} and S_{j} = {v} intersect but S_{j} ⊄ S_{i}"
                    );
                }
            }
        }
    }

    #[test]
    fn every_finite_subset_has_a_unique_minimum() {
        let fam = Family::new();
        let sets = universe(&fam, 4);
        // a few deterministic nonempty subsets
        for chunk in sets.chunks(7) {
            let min = chunk.iter().min_by(|a, b| fam.compare(a, b)).unwrap();
            for other in chunk {
                if other != min {
                    assert_eq!(fam.compare(min, other), Ordering::Less);
                }
            }
        }
    }

    #[test]
    fn counted_layer_sizes_match_enumeration() {
        let fam = Family::new();
        let mut cumulative = 0;
        for len in 0..=11 {
            let enumerated = fam.enumerate_sigma_len(len).unwrap().len() as u64;
            assert_eq!(
                fam.count_sigma_len(len).unwrap(),
                enumerated,
                "layer {len} size"
            );
            cumulative += enumerated;
            assert_eq!(fam.count_through_sigma_len(len).unwrap(), cumulative);
        }
    }

    #[test]
    fn deep_a_rank_agrees_with_counting_route() {
        let fam = Family::new();
        // materialized route for a mid-depth A-set equals start-of-layer
        // plus its position in the A-block
        let set = d("A:a:16:0");
        assert_eq!(fam.sigma_len(&set), 16);
        let rank = fam.rank(&set).unwrap();
        let start = fam.count_through_sigma_len(15).unwrap();
        let layer = fam.enumerate_sigma_len(16).unwrap();
        let position = layer.iter().position(|s| *s == set).unwrap() as u64;
        assert_eq!(rank, start + position);
        // the A-block leads its layer
        assert!(layer[..position as usize + 1]
            .iter()
            .all(|s| s.kind() == crate::setfamily::SetKind::A));

        // a descriptor beyond the materialization cap still ranks exactly
        let deep = d("A:a:16:8");
        assert_eq!(fam.sigma_len(&deep), 24);
        let deep_rank = fam.rank(&deep).unwrap();
        assert!(deep_rank >= fam.count_through_sigma_len(23).unwrap());
        assert!(deep_rank < fam.count_through_sigma_len(24).unwrap());
        // deep W- and B-type ranks stay out of reach by design
        assert!(matches!(
            fam.rank(&d("B:aabbb:1")),
            Err(Error::DepthExceeded { .. })
        ));
    }

    #[test]
    fn diam_matches_bounded_pair_distances() {
        let fam = Family::new();
        for len in 0..=4 {
            for set in fam.enumerate_sigma_len(len).unwrap() {
                let rank = fam.rank(&set).unwrap();
                // no member pair is farther apart than the diameter
                let members = bounded_members(&fam, &set, 12);
                for x in members.iter().take(50) {
                    for y in members.iter().take(50) {
                        if x == y {
                            continue;
                        }
                        let e = fam.distance(x, y).unwrap().exponent().unwrap();
                        assert!(e >= rank, "pair ({x}, {y}) exceeds diam of {set}");
                    }
                }
                // the diameter is attained: the children's shortest words
                // meet exactly at the parent
                let split = fam.children(&set);
                let (x, y) = (fam.sigma(&split.left), fam.sigma(&split.right));
                assert_eq!(
                    fam.distance(&x, &y).unwrap().exponent().unwrap(),
                    rank,
                    "diameter of {set} not attained by its child σ pair"
                );
            }
        }
    }
}
