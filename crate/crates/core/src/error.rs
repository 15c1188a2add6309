use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty string")]
    EmptyText,
    #[error("alphabet size must be at least 1")]
    EmptyAlphabet,
    #[error("symbol {symbol} outside alphabet [1..{sigma}]")]
    SymbolOutOfRange { symbol: u32, sigma: u32 },
    #[error("unknown suffix tree node {0}")]
    UnknownNode(usize),
    #[error("length {n} exceeds the enumeration cap of {cap}; raise the cap explicitly if 2^{n} candidates are acceptable")]
    EnumerationCap { n: usize, cap: usize },
    #[error("a splitter needs at least two candidates, got {0}")]
    TooFewCandidates(usize),
    #[error("expected a binary string (symbols 1 and 2)")]
    NotBinary,
    #[error("hidden string not found among any candidate set up to {max_tau} bits")]
    NotReconstructed { max_tau: usize },
    #[error("code ended before the reconstruction finished")]
    CodeExhausted,
    #[error("{0} unused bits after decoding")]
    TrailingBits(usize),
    #[error("malformed code: {0}")]
    MalformedCode(&'static str),
    #[error("reconstruction did not reproduce its input")]
    RoundTrip,
    #[error("unknown string family `{0}`")]
    UnknownFamily(String),
    #[error("invalid family parameter: {0}")]
    FamilyParameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
