//! Reconstructing a hidden string from substring and prefix membership
//! queries.
//!
//! An [`Oracle`] holds the hidden [`Text`] and counts every question asked.
//! The reconstructors in [`reconstruct`] recover the string with a number of
//! queries bounded by its compressibility: run count, LZ77 phrase count, or
//! the output size of any compressor ([`universal`]).

mod automaton;
pub mod error;
pub mod families;
pub mod measures;
pub mod oracle;
pub mod reconstruct;
pub mod structures;
pub mod text;
pub mod universal;

pub use error::{Error, Result};
pub use families::{generate, Family};
pub use measures::{lz77, measure, rle_runs, LzFactorization, MeasureReport, Phrase};
pub use oracle::{
    Anchor, Oracle, Orientation, PrefixOracle, QueryCounter, QueryStats, RecordingOracle,
    ReplayOracle, SentinelPrefixView, SubstringOracle, SENTINEL,
};
pub use reconstruct::{
    discover_alphabet, lz_phrase_search, reconstruct_lz_prefix, reconstruct_lz_substring,
    reconstruct_naive, reconstruct_rle, Algorithm, Direction, Phase, ReconstructionReport,
};
pub use structures::{centroid_decompose, CentroidTree, LocusInterval, NodeId, SuffixTree};
pub use text::{Symbol, Text};
pub use universal::{
    compressor_from_reconstructor, enumerate_candidates, find_splitter, reconstruct_universal,
    CandidateSet, Compressor, IdentityBits, RleBits, Splitter, UniversalReport,
};
