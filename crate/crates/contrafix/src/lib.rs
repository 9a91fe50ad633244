//! An exact, executable model of a compact ultrametric space on finite words
//! over `{a, b}` in which the two prepend maps form a λ-contractive family,
//! yet no composition of them has a fixed point.
//!
//! The space is carried by a well-ordered family of "diametrisable" sets
//! `S_0, S_1, S_2, …` of three shapes:
//!
//! * `W:w` — every extension of an available word `w`,
//! * `A:w:p:r` — the prefixes of `w^∞` whose lengths run along an arithmetic
//!   progression with power-of-two step `p` and residue `r`,
//! * `B:w:k` — the union of the `W` sets over the one-letter deviations of
//!   `w^∞` at offsets drawn from the progression `I_k`.
//!
//! Distances are `λ^rank` with an exact integer exponent; no floating point
//! enters any decision. The [`harness`] module machine-checks the defining
//! axioms (nesting, finiteness, covering, pushforwards, contraction, pair
//! finiteness) on bounded truncations and exports the family tree.
//!
//! Start with [`Family::new`], or run one of the `examples/` programs; the
//! `contrafix` binary exposes the same operations as subcommands.
//!
//! ```
//! use contrafix::{Family, SetDescriptor, Word};
//!
//! let family = Family::new();
//! let (x, y): (Word, Word) = ("aa".parse()?, "ab".parse()?);
//!
//! // the smallest set holding both words fixes their distance: d = λ^1
//! let common = family.min_common_set(&x, &y)?;
//! assert_eq!(common, "W:a".parse()?);
//! assert_eq!(family.distance(&x, &y)?.exponent(), Some(1));
//!
//! // one of the prepend maps contracts the pair by a full λ-level
//! let c = family.contraction_check(&x, &y)?;
//! let image = family.distance(&x.prepended(c), &y.prepended(c))?;
//! assert!(image.exponent() > Some(1));
//!
//! // the family enumeration starts at the whole space
//! assert_eq!(family.nth_set(0)?, SetDescriptor::root_of_all());
//! # Ok::<(), contrafix::Error>(())
//! ```

pub mod words;

pub mod progressions;

pub mod setfamily;

pub mod ordering;

pub mod metric;

pub mod dynamics;

pub mod harness;

pub mod cli;

mod error;

pub use error::Error;
pub use metric::{CoverWitness, ExactDistance, Lambda};
pub use ordering::Rank;
pub use setfamily::{Family, SetDescriptor, SetKind, SplitResult};
pub use words::{Letter, Word};
