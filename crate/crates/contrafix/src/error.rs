use crate::words::Word;

/// Errors surfaced by the library.
///
/// Precondition violations that only a caller bug can produce (indexing past
/// a word, asking for `I_0`) panic instead; everything reachable from parsed
/// user input is reported here.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("no infinite power of the empty word")]
    EmptyWordPower,

    #[error("the empty word has no period")]
    EmptyWordPeriod,

    #[error("the empty word cannot be rotated")]
    EmptyWordRotation,

    #[error("word `{0}` is not minimal")]
    NotMinimal(Word),

    #[error("word `{0}` is not available")]
    NotAvailable(Word),

    #[error("extension index must be at least 1")]
    ExtensionIndex,

    #[error("A-set period {period} must be a power of two exceeding residue {residue}")]
    BadProgressionShape { period: u64, residue: u64 },

    #[error("B-set index must be at least 1")]
    BadSetIndex,

    #[error("cannot parse `{input}` as {what}")]
    Parse { input: String, what: &'static str },

    #[error("λ must satisfy 0 < p/q < 1, got {num}/{den}")]
    BadLambda { num: u64, den: u64 },

    #[error("identical words have distance zero; no common set is needed")]
    IdenticalWords,

    #[error("rank computation needs σ-length {needed}, beyond the supported depth {cap}")]
    DepthExceeded { needed: usize, cap: usize },

    #[error("rank {rank} lies beyond the supported enumeration depth")]
    RankExceeded { rank: u64 },

    #[error("contraction violated for pair ({0}, {1})")]
    ContractionViolated(Word, Word),

    #[error("len_bound {given} is below the certified sufficiency bound {required}")]
    LenBoundTooSmall { given: usize, required: usize },

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
}
