//! The recursively defined arithmetic progressions `I_k` that index the
//! components of B-type sets.
//!
//! `I_1 = {1, 2, 3, …}` and `I_2 = I_1` minus its minimum. For each level
//! `m ≥ 2` the indices `2^m − 1 ≤ k ≤ 2^m + 2^{m−1} − 2` start a fresh
//! progression of step `2^{m−1}` seeded from the previous level, and the
//! remaining indices of the level drop the minimum of an earlier
//! progression. Every `I_k` is an infinite arithmetic progression whose
//! step is a power of two; `(first, step)` is its normal form.
//!
//! The table is filled on demand and behaves as a write-once cache:
//! concurrent callers may race to compute an entry but always observe the
//! same value.

use std::sync::RwLock;

/// Normal form of an infinite arithmetic progression `{first + i·step}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Progression {
    pub first: u64,
    pub step: u64,
}

impl Progression {
    pub fn contains(&self, n: u64) -> bool {
        n >= self.first && (n - self.first).is_multiple_of(self.step)
    }

    /// `first + i·step`.
    pub fn nth(&self, i: u64) -> u64 {
        self.first + i * self.step
    }

    /// Elements not exceeding `bound`, ascending.
    pub fn elements_upto(&self, bound: u64) -> impl Iterator<Item = u64> + '_ {
        (0..).map(|i| self.nth(i)).take_while(move |&n| n <= bound)
    }

    /// Set inclusion, decidable from the normal forms.
    pub fn is_subset_of(&self, other: &Progression) -> bool {
        self.step.is_multiple_of(other.step)
            && self.first >= other.first
            && (self.first - other.first).is_multiple_of(other.step)
    }

    /// Powers-of-two steps make intersection a congruence test on the
    /// coarser step.
    pub fn intersects(&self, other: &Progression) -> bool {
        let g = self.step.min(other.step);
        self.first % g == other.first % g
    }
}

/// How `I_k` decomposes into the next members of the family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SplitKind {
    /// `I_k = I_left ⊔ I_right`, the two half-step refinements.
    TwoB { left: u64, right: u64 },
    /// `I_k = {lost} ⊔ I_child`, dropping the minimum.
    DropMin { child: u64, lost: u64 },
}

/// Write-once table of the progressions.
#[derive(Debug, Default)]
pub struct Progressions {
    cache: RwLock<Vec<Option<Progression>>>,
}

impl Progressions {
    pub fn new() -> Progressions {
        Progressions::default()
    }

    /// `I_k` in normal form. Panics on `k = 0`; indices are validated at
    /// parse time.
    pub fn get(&self, k: u64) -> Progression {
        assert!(k >= 1, "progression indices start at 1");
        if let Some(hit) = self
            .cache
            .read()
            .expect("progression cache poisoned")
            .get(k as usize)
            .copied()
            .flatten()
        {
            return hit;
        }
        let value = self.compute(k);
        let mut cache = self.cache.write().expect("progression cache poisoned");
        if cache.len() <= k as usize {
            cache.resize(k as usize + 1, None);
        }
        cache[k as usize] = Some(value);
        value
    }

    // Recurrence exactly as defined; locks are never held across recursion.
    fn compute(&self, k: u64) -> Progression {
        match k {
            1 => Progression { first: 1, step: 1 },
            2 => Progression { first: 2, step: 1 },
            _ => {
                let m = (k + 1).ilog2();
                let half = 1u64 << (m - 1);
                let quarter = 1u64 << (m - 2);
                if k <= (1 << m) + half - 2 {
                    let first = if k % 2 == 1 {
                        self.get((k - 1) / 2 + quarter).first
                    } else {
                        self.get((k - 2) / 2 + quarter).first + quarter
                    };
                    Progression { first, step: half }
                } else {
                    let parent = self.get(k - half);
                    Progression {
                        first: parent.first + parent.step,
                        step: parent.step,
                    }
                }
            }
        }
    }

    pub fn min(&self, k: u64) -> u64 {
        self.get(k).first
    }

    pub fn contains(&self, k: u64, n: u64) -> bool {
        self.get(k).contains(n)
    }

    /// The forward child map inverting the recurrence. The returned
    /// decomposition is an exact disjoint union of `I_k`.
    pub fn split(&self, k: u64) -> SplitKind {
        assert!(k >= 1);
        if k == 1 {
            return SplitKind::DropMin { child: 2, lost: 1 };
        }
        let mut m = 2u32;
        while k > 3 * (1u64 << (m - 1)) - 2 {
            m += 1;
        }
        if k <= (1u64 << m) - 2 {
            let left = 2 * k + 1 - (1u64 << (m - 1));
            SplitKind::TwoB {
                left,
                right: left + 1,
            }
        } else {
            SplitKind::DropMin {
                child: k + (1u64 << (m - 1)),
                lost: self.min(k),
            }
        }
    }

    /// Index of the progression with the given normal form, if one exists.
    /// Steps of `2^{m−1}` live at indices `2^m − 1 ..= 2^{m+1} − 2`.
    pub fn index_with(&self, first: u64, step: u64) -> Option<u64> {
        if step == 1 {
            return match first {
                1 => Some(1),
                2 => Some(2),
                _ => None,
            };
        }
        if !step.is_power_of_two() {
            return None;
        }
        let m = step.ilog2() + 1;
        let lo = (1u64 << m) - 1;
        let hi = (1u64 << (m + 1)) - 2;
        (lo..=hi).find(|&k| self.get(k).first == first)
    }
}
