//! Membership oracles over a hidden string.
//!
//! An oracle answers "is `q` a substring of S?" or "is `q` a prefix of S?"
//! and counts every question it is asked. Reconstruction algorithms only ever
//! see an oracle through [`SubstringOracle`] / [`PrefixOracle`], never the
//! hidden string itself.
//!
//! Queries can be issued relative to an [`Anchor`], an opaque token that an
//! oracle hands out for a string it has just answered positively. Asking
//! `base · tail` through an anchor is accounted exactly like asking the full
//! string, but lets the engine resume from where `base` ended instead of
//! re-reading it.

mod replay;

pub use replay::{RecordingOracle, ReplayOracle};

use crate::automaton::{StateId, SuffixAutomaton, ROOT};
use crate::error::{Error, Result};
use crate::text::{Symbol, Text};

/// Symbol prepended to the hidden string by [`SentinelPrefixView`]; it lies
/// below every user alphabet.
pub const SENTINEL: Symbol = 0;

/// Exact query accounting.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QueryStats {
    pub substring_queries: u64,
    pub prefix_queries: u64,
    /// Sum of the lengths of every queried string.
    pub total_queried_symbols: u64,
    pub max_query_length: u64,
}

impl QueryStats {
    pub fn total_queries(&self) -> u64 {
        self.substring_queries + self.prefix_queries
    }

    pub(crate) fn record_substring(&mut self, len: usize) {
        self.substring_queries += 1;
        self.record_length(len);
    }

    pub(crate) fn record_prefix(&mut self, len: usize) {
        self.prefix_queries += 1;
        self.record_length(len);
    }

    fn record_length(&mut self, len: usize) {
        let len = len as u64;
        self.total_queried_symbols += len;
        self.max_query_length = self.max_query_length.max(len);
    }
}

/// Reading direction of an anchored query.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// Substring query read left to right.
    Forward,
    /// Substring query whose symbols are supplied right to left: the anchored
    /// string `base · tail` stands for the query `reverse(base · tail)`.
    Reversed,
    /// Prefix query read left to right.
    Prefix,
}

/// A witness that the oracle answered "yes" for some string of length
/// [`Anchor::len`], in a given orientation.
///
/// Anchors are only meaningful for the oracle that issued them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Anchor {
    orientation: Orientation,
    len: usize,
    state: StateId,
}

impl Anchor {
    /// The empty string, which every oracle accepts.
    pub fn empty(orientation: Orientation) -> Self {
        Self {
            orientation,
            len: 0,
            state: ROOT,
        }
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn extended(&self, extra: usize, state: StateId) -> Self {
        Self {
            orientation: self.orientation,
            len: self.len + extra,
            state,
        }
    }
}

pub trait QueryCounter {
    fn stats(&self) -> QueryStats;
}

/// Oracle for substring queries.
pub trait SubstringOracle: QueryCounter {
    /// Asks whether `base · tail` (read in `base`'s orientation) occurs in
    /// the hidden string. Counts as one substring query of length
    /// `base.len() + tail.len()`. Returns an anchor for `base · tail` on a
    /// positive answer.
    ///
    /// Panics if `base` has [`Orientation::Prefix`].
    fn extend_substring(&mut self, base: &Anchor, tail: &[Symbol]) -> Option<Anchor>;

    fn contains_substring(&mut self, q: &[Symbol]) -> bool {
        self.extend_substring(&Anchor::empty(Orientation::Forward), q)
            .is_some()
    }

    /// `contains_substring(reverse(q_reversed))`.
    fn contains_reversed(&mut self, q_reversed: &[Symbol]) -> bool {
        self.extend_substring(&Anchor::empty(Orientation::Reversed), q_reversed)
            .is_some()
    }
}

/// Oracle for prefix queries.
pub trait PrefixOracle: QueryCounter {
    /// Asks whether `base · tail` is a prefix of the hidden string.
    ///
    /// Panics if `base` is not a [`Orientation::Prefix`] anchor.
    fn extend_prefix(&mut self, base: &Anchor, tail: &[Symbol]) -> Option<Anchor>;

    fn is_prefix(&mut self, q: &[Symbol]) -> bool {
        self.extend_prefix(&Anchor::empty(Orientation::Prefix), q)
            .is_some()
    }
}

impl<T: QueryCounter + ?Sized> QueryCounter for &mut T {
    fn stats(&self) -> QueryStats {
        (**self).stats()
    }
}

impl<T: SubstringOracle + ?Sized> SubstringOracle for &mut T {
    fn extend_substring(&mut self, base: &Anchor, tail: &[Symbol]) -> Option<Anchor> {
        (**self).extend_substring(base, tail)
    }
}

impl<T: PrefixOracle + ?Sized> PrefixOracle for &mut T {
    fn extend_prefix(&mut self, base: &Anchor, tail: &[Symbol]) -> Option<Anchor> {
        (**self).extend_prefix(base, tail)
    }
}

/// The instrumented oracle holding a hidden string.
///
/// Substring membership is answered by suffix automata over the hidden string
/// and its reverse, built once, so each query costs time linear in the part
/// of the query not covered by its anchor.
#[derive(Clone, Debug)]
pub struct Oracle {
    hidden: Text,
    forward: SuffixAutomaton,
    backward: SuffixAutomaton,
    stats: QueryStats,
}

impl Oracle {
    pub fn new(hidden: Text) -> Result<Self> {
        if hidden.is_empty() {
            return Err(Error::EmptyText);
        }
        let forward = SuffixAutomaton::new(hidden.symbols());
        let rev: Vec<Symbol> = hidden.symbols().iter().rev().copied().collect();
        let backward = SuffixAutomaton::new(&rev);
        Ok(Self {
            hidden,
            forward,
            backward,
            stats: QueryStats::default(),
        })
    }

    pub fn sigma(&self) -> u32 {
        self.hidden.sigma()
    }

    /// The hidden string. Reconstruction code never calls this; it exists so
    /// harnesses can check results.
    pub fn reveal(&self) -> &Text {
        &self.hidden
    }

    /// Turns this oracle into a prefix oracle that asks only substring
    /// questions against `$ · hidden`.
    pub fn into_sentinel_prefix_view(self) -> SentinelPrefixView {
        SentinelPrefixView::new(&self.hidden)
    }
}

impl QueryCounter for Oracle {
    fn stats(&self) -> QueryStats {
        self.stats
    }
}

impl SubstringOracle for Oracle {
    fn extend_substring(&mut self, base: &Anchor, tail: &[Symbol]) -> Option<Anchor> {
        self.stats.record_substring(base.len + tail.len());
        let engine = match base.orientation {
            Orientation::Forward => &self.forward,
            Orientation::Reversed => &self.backward,
            Orientation::Prefix => panic!("prefix anchor passed to a substring query"),
        };
        engine
            .walk(base.state, tail)
            .map(|state| base.extended(tail.len(), state))
    }
}

impl PrefixOracle for Oracle {
    fn extend_prefix(&mut self, base: &Anchor, tail: &[Symbol]) -> Option<Anchor> {
        assert_eq!(
            base.orientation,
            Orientation::Prefix,
            "substring anchor passed to a prefix query"
        );
        self.stats.record_prefix(base.len + tail.len());
        let hidden = self.hidden.symbols();
        let end = base.len + tail.len();
        (end <= hidden.len() && &hidden[base.len..end] == tail)
            .then(|| base.extended(tail.len(), ROOT))
    }
}

/// Prefix oracle built from a substring oracle over `$ · S`: `is_prefix(q)`
/// is answered by the substring query `$ · q`, and is counted as such.
#[derive(Clone, Debug)]
pub struct SentinelPrefixView {
    engine: SuffixAutomaton,
    after_sentinel: StateId,
    stats: QueryStats,
}

impl SentinelPrefixView {
    fn new(hidden: &Text) -> Self {
        let mut marked = Vec::with_capacity(hidden.len() + 1);
        marked.push(SENTINEL);
        marked.extend_from_slice(hidden.symbols());
        let engine = SuffixAutomaton::new(&marked);
        let after_sentinel = engine
            .step(ROOT, SENTINEL)
            .expect("sentinel starts the indexed string");
        Self {
            engine,
            after_sentinel,
            stats: QueryStats::default(),
        }
    }

    /// Plain substring query against `$ · S`, for demonstrating the reduction.
    pub fn contains_marked(&mut self, q: &[Symbol]) -> bool {
        self.stats.record_substring(q.len());
        self.engine.walk(ROOT, q).is_some()
    }
}

impl QueryCounter for SentinelPrefixView {
    fn stats(&self) -> QueryStats {
        self.stats
    }
}

impl PrefixOracle for SentinelPrefixView {
    fn extend_prefix(&mut self, base: &Anchor, tail: &[Symbol]) -> Option<Anchor> {
        assert_eq!(
            base.orientation,
            Orientation::Prefix,
            "substring anchor passed to a prefix query"
        );
        self.stats.record_substring(1 + base.len + tail.len());
        let from = if base.len == 0 {
            self.after_sentinel
        } else {
            base.state
        };
        self.engine
            .walk(from, tail)
            .map(|state| base.extended(tail.len(), state))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(s: &str) -> Oracle {
        Oracle::new(Text::from_letters(s).unwrap()).unwrap()
    }

    fn q(s: &str) -> Vec<Symbol> {
        Text::from_letters(s).unwrap().into_symbols()
    }

    #[test]
    fn fresh_oracle_has_zero_stats() {
        assert_eq!(oracle("abbabba").stats(), QueryStats::default());
    }

    #[test]
    fn empty_hidden_string_is_rejected() {
        assert_eq!(
            Oracle::new(Text::new(vec![], 2).unwrap()).unwrap_err(),
            Error::EmptyText
        );
    }

    #[test]
    fn substring_examples() {
        let mut o = oracle("abbabba");
        assert!(o.contains_substring(&q("abba")));
        assert!(!o.contains_substring(&q("aa")));
        assert!(o.contains_substring(&[]));
        assert_eq!(o.stats().substring_queries, 3);
        assert_eq!(o.stats().total_queried_symbols, 6);
    }

    #[test]
    fn long_unary_query() {
        let mut o = Oracle::new(Text::new(vec![1; 10_000], 1).unwrap()).unwrap();
        assert!(o.contains_substring(&vec![1; 10_000]));
        assert!(!o.contains_substring(&vec![1; 10_001]));
    }

    #[test]
    fn prefix_examples() {
        let mut o = oracle("abbabba");
        assert!(o.is_prefix(&q("abb")));
        assert!(!o.is_prefix(&q("bba")));
        assert!(o.is_prefix(&[]));
        assert!(o.is_prefix(&q("abbabba")));
        assert!(!o.is_prefix(&q("abbabbaa")));
        assert_eq!(o.stats().prefix_queries, 5);
        assert_eq!(o.stats().substring_queries, 0);
    }

    #[test]
    fn stats_counter_arithmetic() {
        let mut o = oracle("abcd");
        o.contains_substring(&q("a"));
        o.contains_substring(&q("zz"));
        o.contains_substring(&q("abcd"));
        let s = o.stats();
        assert_eq!(s.substring_queries, 3);
        assert_eq!(s.total_queried_symbols, 7);
        assert_eq!(s.max_query_length, 4);
    }

    #[test]
    fn symbols_outside_alphabet_never_match() {
        let mut o = oracle("ab");
        assert!(!o.contains_substring(&[0]));
        assert!(!o.contains_substring(&[1, 7]));
    }

    #[test]
    fn sentinel_view_examples() {
        let mut v = oracle("ab").into_sentinel_prefix_view();
        assert!(v.is_prefix(&q("a")));
        assert!(!v.is_prefix(&q("b")));
        assert!(v.is_prefix(&q("ab")));
        assert!(v.contains_marked(&[SENTINEL, 1]));
        let s = v.stats();
        assert_eq!(s.substring_queries, 4);
        assert_eq!(s.prefix_queries, 0);
        assert_eq!(s.total_queried_symbols, 2 + 2 + 3 + 2);
    }

    #[test]
    fn anchored_queries_match_full_queries() {
        let mut o = oracle("abcabcab");
        let a = o
            .extend_substring(&Anchor::empty(Orientation::Forward), &q("bca"))
            .unwrap();
        assert_eq!(a.len(), 3);
        assert!(o.extend_substring(&a, &q("bc")).is_some());
        assert!(o.extend_substring(&a, &q("bb")).is_none());
        assert_eq!(o.stats().total_queried_symbols, 3 + 5 + 5);

        let r = o
            .extend_substring(&Anchor::empty(Orientation::Reversed), &q("ba"))
            .unwrap();
        // reverse("ba" + "c") = "cab"
        assert!(o.extend_substring(&r, &q("c")).is_some());
        assert!(o.extend_substring(&r, &q("a")).is_none());

        let p = o
            .extend_prefix(&Anchor::empty(Orientation::Prefix), &q("abc"))
            .unwrap();
        assert!(o.extend_prefix(&p, &q("ab")).is_some());
        assert!(o.extend_prefix(&p, &q("b")).is_none());
    }

    #[test]
    #[should_panic(expected = "prefix anchor")]
    fn mixing_anchor_kinds_panics() {
        let mut o = oracle("ab");
        o.extend_substring(&Anchor::empty(Orientation::Prefix), &[1]);
    }
}
