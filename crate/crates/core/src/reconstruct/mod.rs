//! Reconstruction algorithms.
//!
//! Every substring-model algorithm runs in two phases: extend `R` to the
//! right until nothing extends it (then `R` is a suffix of the hidden
//! string), and then extend it to the left, which is the same code run on
//! reversed strings. The prefix-model algorithm needs only the first phase.

mod extend;
mod lz;
mod search;

use std::fmt;
use std::str::FromStr;

use extend::{Extender, Prefixes, Probe, Substrings};
pub use lz::lz_phrase_search;
pub use search::{discover_alphabet, gallop};

use crate::error::{Error, Result};
use crate::oracle::{PrefixOracle, QueryCounter, QueryStats, SubstringOracle};
use crate::structures::CentroidAudit;
use crate::text::{Symbol, Text};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// One symbol per step.
    Naive,
    /// One maximal run per step.
    Rle,
    /// LZ phrases via prefix queries.
    LzPrefix,
    /// LZ phrases via substring queries, right then left.
    LzSubstring,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Naive,
        Algorithm::Rle,
        Algorithm::LzPrefix,
        Algorithm::LzSubstring,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::Rle => "rle",
            Algorithm::LzPrefix => "lz-prefix",
            Algorithm::LzSubstring => "lz-substring",
        }
    }

    /// Reconstructs the hidden string behind `oracle`, whose alphabet is
    /// `[1..sigma]`.
    pub fn run<O>(self, oracle: &mut O, sigma: u32) -> Result<ReconstructionReport>
    where
        O: SubstringOracle + PrefixOracle + ?Sized,
    {
        match self {
            Algorithm::Naive => reconstruct_naive(oracle, sigma),
            Algorithm::Rle => reconstruct_rle(oracle, sigma),
            Algorithm::LzPrefix => reconstruct_lz_prefix(oracle, sigma),
            Algorithm::LzSubstring => reconstruct_lz_substring(oracle, sigma),
        }
    }

    /// Query budget this algorithm is held to on a string of length `n`
    /// with `rle` runs, given the number of phrases it emitted.
    pub fn query_bound(self, n: usize, sigma: u32, rle: usize, phrases: usize) -> f64 {
        let n = n as f64;
        let sigma = f64::from(sigma);
        match self {
            Algorithm::Naive => sigma * (n + 2.0),
            Algorithm::Rle => {
                let rle = rle as f64;
                4.0 * rle * (sigma + (n / rle).log2() + 2.0)
            }
            Algorithm::LzPrefix | Algorithm::LzSubstring => {
                8.0 * sigma * phrases as f64 * (n.log2() + 2.0)
            }
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                format!("unknown algorithm `{s}` (expected naive, rle, lz-prefix or lz-substring)")
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Phase {
    pub direction: Direction,
    /// Symbols, runs or phrases appended during the phase.
    pub units: usize,
    /// Queries asked during the phase.
    pub queries: u64,
    /// Length of `R` when the phase ended.
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReconstructionReport {
    pub algorithm: Algorithm,
    pub recovered: Text,
    pub stats: QueryStats,
    pub phases: Vec<Phase>,
    /// Centroid bookkeeping for LZ runs.
    pub centroid_audit: Option<CentroidAudit>,
}

impl ReconstructionReport {
    pub fn units(&self) -> usize {
        self.phases.iter().map(|p| p.units).sum()
    }

    /// Phrases emitted by an LZ run, zero otherwise.
    pub fn phrases(&self) -> usize {
        match self.algorithm {
            Algorithm::LzPrefix | Algorithm::LzSubstring => self.units(),
            _ => 0,
        }
    }

    /// Whether the run stayed within [`Algorithm::query_bound`], given the
    /// run count of the hidden string.
    pub fn within_bound(&self, rle: usize) -> bool {
        let bound = self.algorithm.query_bound(
            self.recovered.len(),
            self.recovered.sigma(),
            rle,
            self.phrases(),
        );
        self.stats.total_queries() as f64 <= bound
    }
}

fn check_sigma(sigma: u32) -> Result<()> {
    if sigma == 0 {
        Err(Error::EmptyAlphabet)
    } else {
        Ok(())
    }
}

fn run_phase<P: Probe>(
    direction: Direction,
    ext: &mut Extender<P>,
    step: impl FnOnce(&mut Extender<P>) -> Result<usize>,
) -> Result<Phase> {
    let before = ext.queries();
    let units = step(ext)?;
    Ok(Phase {
        direction,
        units,
        queries: ext.queries() - before,
        length: ext.known().len(),
    })
}

/// Right extension from the empty string, then left extension of the
/// result, both with `step`.
fn both_ways<O>(
    oracle: &mut O,
    mut step: impl for<'a> FnMut(&mut Extender<Substrings<'a, O>>) -> Result<usize>,
) -> Result<(Vec<Symbol>, Vec<Phase>)>
where
    O: SubstringOracle + ?Sized,
{
    let mut ext = Extender::new(Substrings::forward(&mut *oracle), Vec::new());
    let forward = run_phase(Direction::Forward, &mut ext, &mut step)?;
    let mut known = ext.into_known();
    known.reverse();

    let mut ext = Extender::new(Substrings::backward(&mut *oracle), known);
    let backward = run_phase(Direction::Backward, &mut ext, &mut step)?;
    let mut known = ext.into_known();
    known.reverse();
    Ok((known, vec![forward, backward]))
}

fn report<O: QueryCounter + ?Sized>(
    algorithm: Algorithm,
    oracle: &O,
    sigma: u32,
    known: Vec<Symbol>,
    phases: Vec<Phase>,
    centroid_audit: Option<CentroidAudit>,
) -> Result<ReconstructionReport> {
    Ok(ReconstructionReport {
        algorithm,
        recovered: Text::new(known, sigma)?,
        stats: oracle.stats(),
        phases,
        centroid_audit,
    })
}

fn naive_step<P: Probe>(ext: &mut Extender<P>, sigma: u32) -> usize {
    let mut units = 0;
    while let Some(c) = (1..=sigma).find(|&c| ext.test(&[c])) {
        ext.commit(&[c]);
        units += 1;
    }
    units
}

/// Extends by whole runs. The symbol of the run just appended is skipped
/// when probing the next one, since that run is already maximal.
fn rle_step<P: Probe>(ext: &mut Extender<P>, sigma: u32) -> usize {
    let mut units = 0;
    let mut last: Option<Symbol> = None;
    let mut run = Vec::new();
    while let Some(c) = (1..=sigma).find(|&c| Some(c) != last && ext.test(&[c])) {
        run.clear();
        let len = gallop(1, None, |l| {
            run.resize(l, c);
            ext.test(&run[..l])
        });
        run.resize(len, c);
        ext.commit(&run);
        last = Some(c);
        units += 1;
    }
    units
}

/// At most `sigma · (n + 2)` substring queries.
pub fn reconstruct_naive<O>(oracle: &mut O, sigma: u32) -> Result<ReconstructionReport>
where
    O: SubstringOracle + ?Sized,
{
    check_sigma(sigma)?;
    let (known, phases) = both_ways(oracle, |ext| Ok(naive_step(ext, sigma)))?;
    report(Algorithm::Naive, oracle, sigma, known, phases, None)
}

/// One step per run: probe the next symbol, then gallop on the run length.
pub fn reconstruct_rle<O>(oracle: &mut O, sigma: u32) -> Result<ReconstructionReport>
where
    O: SubstringOracle + ?Sized,
{
    check_sigma(sigma)?;
    let (known, phases) = both_ways(oracle, |ext| Ok(rle_step(ext, sigma)))?;
    report(Algorithm::Rle, oracle, sigma, known, phases, None)
}

/// LZ phrase reconstruction with prefix queries.
pub fn reconstruct_lz_prefix<O>(oracle: &mut O, sigma: u32) -> Result<ReconstructionReport>
where
    O: PrefixOracle + ?Sized,
{
    check_sigma(sigma)?;
    let mut audit = CentroidAudit::default();
    let mut ext = Extender::new(Prefixes(&mut *oracle), Vec::new());
    let phase = run_phase(Direction::Forward, &mut ext, |ext| {
        lz::lz_phase(ext, sigma, &mut audit)
    })?;
    let known = ext.into_known();
    report(
        Algorithm::LzPrefix,
        oracle,
        sigma,
        known,
        vec![phase],
        Some(audit),
    )
}

/// LZ phrase reconstruction with substring queries, right then left.
pub fn reconstruct_lz_substring<O>(oracle: &mut O, sigma: u32) -> Result<ReconstructionReport>
where
    O: SubstringOracle + ?Sized,
{
    check_sigma(sigma)?;
    let mut audit = CentroidAudit::default();
    let (known, phases) = both_ways(oracle, |ext| lz::lz_phase(ext, sigma, &mut audit))?;
    report(
        Algorithm::LzSubstring,
        oracle,
        sigma,
        known,
        phases,
        Some(audit),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{measure, rle_runs};
    use crate::oracle::{Anchor, Oracle};

    fn oracle(s: &str) -> Oracle {
        Oracle::new(Text::from_letters(s).unwrap()).unwrap()
    }

    /// Counts queries independently of the oracle's own counters.
    struct Tally<O> {
        inner: O,
        substring: u64,
        prefix: u64,
    }

    impl<O: QueryCounter> QueryCounter for Tally<O> {
        fn stats(&self) -> QueryStats {
            self.inner.stats()
        }
    }

    impl<O: SubstringOracle> SubstringOracle for Tally<O> {
        fn extend_substring(&mut self, base: &Anchor, tail: &[Symbol]) -> Option<Anchor> {
            self.substring += 1;
            self.inner.extend_substring(base, tail)
        }
    }

    impl<O: PrefixOracle> PrefixOracle for Tally<O> {
        fn extend_prefix(&mut self, base: &Anchor, tail: &[Symbol]) -> Option<Anchor> {
            self.prefix += 1;
            self.inner.extend_prefix(base, tail)
        }
    }

    fn all_binary(max_len: usize) -> impl Iterator<Item = Vec<Symbol>> {
        (1..=max_len).flat_map(|n| {
            (0..1u32 << n).map(move |code| (0..n).map(|i| 1 + ((code >> i) & 1)).collect())
        })
    }

    #[test]
    fn naive_examples() {
        let mut o = oracle("b");
        let r = reconstruct_naive(&mut o, 2).unwrap();
        assert_eq!(r.recovered.to_letters(), "b");
        assert!(r.stats.substring_queries <= 6);

        let mut t = Tally {
            inner: oracle("ab"),
            substring: 0,
            prefix: 0,
        };
        let r = reconstruct_naive(&mut t, 2).unwrap();
        assert_eq!(r.recovered.to_letters(), "ab");
        assert_eq!(r.stats.substring_queries, t.substring);
        assert_eq!(t.prefix, 0);

        let mut o = oracle("abbabba");
        let r = reconstruct_naive(&mut o, 2).unwrap();
        assert_eq!(r.recovered.to_letters(), "abbabba");
        assert!(r.within_bound(5));
        assert_eq!(r.units(), 7);
    }

    #[test]
    fn rle_examples() {
        let mut o = oracle("aaaa");
        let r = reconstruct_rle(&mut o, 1).unwrap();
        assert_eq!(r.recovered.to_letters(), "aaaa");
        assert_eq!(r.units(), 1);
        // 'a', then lengths 2, 4, 8 and 6, 5; then one failed probe per phase.
        assert!(r.stats.substring_queries <= 1 + 6 + 2);

        let mut o = oracle("AAABCABCABCAAA");
        let r = reconstruct_rle(&mut o, 3).unwrap();
        assert_eq!(r.recovered.to_letters(), "aaabcabcabcaaa");
        assert_eq!(r.units(), 10);
        assert!(r.within_bound(10));
    }

    #[test]
    fn rle_on_alternating_text() {
        let s: Vec<Symbol> = (0..1000).map(|i| 1 + (i % 2) as Symbol).collect();
        let mut o = Oracle::new(Text::new(s.clone(), 2).unwrap()).unwrap();
        let r = reconstruct_rle(&mut o, 2).unwrap();
        assert_eq!(r.recovered.symbols(), &s[..]);
        assert!(r.within_bound(rle_runs(&s).unwrap()));
    }

    #[test]
    fn lz_examples() {
        let mut o = oracle("abbabba");
        let r = reconstruct_lz_prefix(&mut o, 2).unwrap();
        assert_eq!(r.recovered.to_letters(), "abbabba");
        assert_eq!(r.stats.substring_queries, 0);
        assert!(r.centroid_audit.unwrap().is_clean());

        let mut o = oracle("x");
        let r = reconstruct_lz_prefix(&mut o, 24).unwrap();
        assert_eq!(r.recovered.to_letters(), "x");
        assert!(r.stats.prefix_queries <= 48);

        let mut o = Oracle::new(Text::new(vec![1; 100], 1).unwrap()).unwrap();
        let r = reconstruct_lz_prefix(&mut o, 1).unwrap();
        assert_eq!(r.recovered.len(), 100);
        assert!(r.phrases() <= 8, "{} phrases", r.phrases());
        assert!(r.stats.prefix_queries < 100);

        let mut o = oracle("abbabba");
        let r = reconstruct_lz_substring(&mut o, 2).unwrap();
        assert_eq!(r.recovered.to_letters(), "abbabba");
        assert_eq!(r.stats.prefix_queries, 0);
    }

    #[test]
    fn lz_prefix_through_sentinel_view() {
        let hidden = Text::from_letters("abcabcabbcab").unwrap();
        let mut v = Oracle::new(hidden.clone())
            .unwrap()
            .into_sentinel_prefix_view();
        let r = reconstruct_lz_prefix(&mut v, 3).unwrap();
        assert_eq!(r.recovered, hidden);
        assert_eq!(r.stats.prefix_queries, 0);
        assert!(r.stats.substring_queries > 0);
    }

    #[test]
    fn exhaustive_short_binary_strings() {
        for s in all_binary(8) {
            let hidden = Text::new(s, 2).unwrap();
            let m = measure(&hidden).unwrap();
            for algo in Algorithm::ALL {
                let mut o = Oracle::new(hidden.clone()).unwrap();
                let r = algo.run(&mut o, 2).unwrap();
                assert_eq!(r.recovered, hidden, "{algo} on {hidden:?}");
                assert!(r.within_bound(m.rle), "{algo} on {hidden:?}: {:?}", r.stats);
                assert!(r.phases.iter().all(|p| p.length <= hidden.len()));
            }
        }
    }

    #[test]
    fn zero_sigma_is_rejected() {
        let mut o = oracle("a");
        assert_eq!(reconstruct_naive(&mut o, 0), Err(Error::EmptyAlphabet));
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>(), Ok(a));
        }
        assert!("lz".parse::<Algorithm>().is_err());
    }
}
