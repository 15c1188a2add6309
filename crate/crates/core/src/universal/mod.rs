//! Reconstruction of binary strings with a number of substring queries
//! linear in their compressed size under a given compressor.
//!
//! The candidates are all strings of the known length `n` whose code fits
//! a budget. A splitter is a string contained in between a fifth and four
//! fifths of the candidates; asking for it discards at least a fifth of them.
//! The budget is doubled until the hidden string is found.

mod compressors;

pub use compressors::{
    compressor_from_reconstructor, Compressor, IdentityBits, ReconstructorCompressor, RleBits,
};

use crate::error::{Error, Result};
use crate::oracle::{QueryStats, SubstringOracle};
use crate::text::{Symbol, Text};

/// Largest `n` enumerated unless a higher cap is passed explicitly.
pub const DEFAULT_CAP: usize = 16;

/// Packed strings are limited to this many bits.
const MAX_BITS: usize = 31;

/// Binary strings of length `n` whose code length is at most `budget`.
///
/// Members are stored as `n`-bit integers, first symbol in the most
/// significant bit, so numeric order is lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet {
    n: usize,
    budget: usize,
    members: Vec<u32>,
}

fn pack(symbols: &[Symbol]) -> u32 {
    symbols.iter().fold(0, |acc, &c| acc << 1 | (c - 1))
}

fn unpack(code: u32, n: usize) -> Text {
    let symbols = (0..n).rev().map(|i| 1 + ((code >> i) & 1)).collect();
    Text::new(symbols, 2).expect("binary symbols")
}

impl CandidateSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> Vec<Text> {
        self.members.iter().map(|&m| unpack(m, self.n)).collect()
    }

    pub fn contains(&self, s: &Text) -> bool {
        s.len() == self.n
            && s.symbols().iter().all(|&c| c <= 2)
            && self.members.binary_search(&pack(s.symbols())).is_ok()
    }

    /// Members containing `pattern` (`keep = true`) or not containing it.
    pub fn restrict(&self, pattern: &[Symbol], keep: bool) -> CandidateSet {
        let l = pattern.len();
        let p = pack(pattern);
        let mask = if l >= 32 { u32::MAX } else { (1u32 << l) - 1 };
        let has = |m: u32| {
            l == 0 || (l <= self.n && (0..=self.n - l).any(|shift| (m >> shift) & mask == p))
        };
        CandidateSet {
            n: self.n,
            budget: self.budget,
            members: self
                .members
                .iter()
                .copied()
                .filter(|&m| has(m) == keep)
                .collect(),
        }
    }
}

fn code_lengths(n: usize, cap: usize, c: &dyn Compressor) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::EmptyText);
    }
    if n > cap.min(MAX_BITS) {
        return Err(Error::EnumerationCap {
            n,
            cap: cap.min(MAX_BITS),
        });
    }
    (0..1u32 << n)
        .map(|m| c.compress(&unpack(m, n)).map(|code| code.len()))
        .collect()
}

/// All binary strings of length `n` with `|c(S)| <= k`; `n` may not exceed
/// [`DEFAULT_CAP`].
pub fn enumerate_candidates(n: usize, k: usize, c: &dyn Compressor) -> Result<CandidateSet> {
    enumerate_candidates_capped(n, k, c, DEFAULT_CAP)
}

pub fn enumerate_candidates_capped(
    n: usize,
    k: usize,
    c: &dyn Compressor,
    cap: usize,
) -> Result<CandidateSet> {
    let lengths = code_lengths(n, cap, c)?;
    Ok(within_budget(n, k, &lengths))
}

fn within_budget(n: usize, k: usize, lengths: &[usize]) -> CandidateSet {
    CandidateSet {
        n,
        budget: k,
        members: (0..lengths.len() as u32)
            .filter(|&m| lengths[m as usize] <= k)
            .collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitter {
    pub pattern: Text,
    /// Number of candidates containing the pattern.
    pub count: usize,
    /// Set when no pattern met the one-fifth bounds and the most balanced
    /// one was returned instead.
    pub flagged: bool,
}

/// Acceptable splitter counts `[ceil(m/5), floor(4m/5)]`.
pub fn splitter_bounds(m: usize) -> (usize, usize) {
    (m.div_ceil(5), 4 * m / 5)
}

/// Shortest, then lexicographically smallest, substring of some member that
/// is contained in between a fifth and four fifths of the members.
pub fn find_splitter(m: &CandidateSet) -> Result<Splitter> {
    let size = m.len();
    if size < 2 {
        return Err(Error::TooFewCandidates(size));
    }
    let (lo, hi) = splitter_bounds(size);
    let mut fallback: Option<(usize, usize, u32, usize)> = None;
    for l in 1..=m.n {
        let mask = (1u32 << l) - 1;
        let mut count = vec![0usize; 1 << l];
        let mut stamp = vec![usize::MAX; 1 << l];
        for (i, &member) in m.members.iter().enumerate() {
            for shift in 0..=m.n - l {
                let p = ((member >> shift) & mask) as usize;
                if stamp[p] != i {
                    stamp[p] = i;
                    count[p] += 1;
                }
            }
        }
        if let Some(p) = (0..count.len()).find(|&p| (lo..=hi).contains(&count[p])) {
            return Ok(Splitter {
                pattern: unpack(p as u32, l),
                count: count[p],
                flagged: false,
            });
        }
        for (p, &k) in count.iter().enumerate() {
            let gap = (2 * k).abs_diff(size);
            if k > 0 && fallback.is_none_or(|(g, ..)| gap < g) {
                fallback = Some((gap, l, p as u32, k));
            }
        }
    }
    let (_, l, p, count) = fallback.expect("members have substrings");
    Ok(Splitter {
        pattern: unpack(p, l),
        count,
        flagged: true,
    })
}

/// One splitter query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitRecord {
    pub candidates: usize,
    pub count: usize,
    pub flagged: bool,
    pub pattern_len: usize,
    pub answer: bool,
}

/// One budget of the exponential search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub budget: usize,
    pub candidates: usize,
    pub splits: Vec<SplitRecord>,
    /// Full-length candidate queries at the end of the round.
    pub checks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalReport {
    pub recovered: Text,
    pub stats: QueryStats,
    pub rounds: Vec<Round>,
}

impl UniversalReport {
    pub fn splits(&self) -> impl Iterator<Item = &SplitRecord> {
        self.rounds.iter().flat_map(|r| r.splits.iter())
    }
}

/// Candidate sets at or below this size are checked one by one.
pub const DIRECT_CHECK: usize = 5;

/// Reconstructs a binary hidden string of known length `n` (at most
/// [`DEFAULT_CAP`]) with `O(|c(S)|)` substring queries.
pub fn reconstruct_universal<O: SubstringOracle + ?Sized>(
    oracle: &mut O,
    n: usize,
    c: &dyn Compressor,
) -> Result<UniversalReport> {
    reconstruct_universal_capped(oracle, n, c, DEFAULT_CAP)
}

pub fn reconstruct_universal_capped<O: SubstringOracle + ?Sized>(
    oracle: &mut O,
    n: usize,
    c: &dyn Compressor,
    cap: usize,
) -> Result<UniversalReport> {
    let lengths = code_lengths(n, cap, c)?;
    let longest = lengths.iter().copied().max().unwrap_or(0);
    let mut rounds = Vec::new();
    let mut budget = 1;
    loop {
        let mut m = within_budget(n, budget, &lengths);
        let mut round = Round {
            budget,
            candidates: m.len(),
            splits: Vec::new(),
            checks: 0,
        };
        while m.len() > DIRECT_CHECK {
            let s = find_splitter(&m)?;
            let answer = oracle.contains_substring(s.pattern.symbols());
            round.splits.push(SplitRecord {
                candidates: m.len(),
                count: s.count,
                flagged: s.flagged,
                pattern_len: s.pattern.len(),
                answer,
            });
            m = m.restrict(s.pattern.symbols(), answer);
        }
        for candidate in m.members() {
            round.checks += 1;
            if oracle.contains_substring(candidate.symbols()) {
                rounds.push(round);
                return Ok(UniversalReport {
                    recovered: candidate,
                    stats: oracle.stats(),
                    rounds,
                });
            }
        }
        rounds.push(round);
        if budget >= longest {
            return Err(Error::NotReconstructed { max_tau: budget });
        }
        budget *= 2;
    }
}
