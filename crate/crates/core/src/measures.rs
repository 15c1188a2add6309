//! Compressibility measures: run count and greedy LZ77 phrase counts.

use crate::automaton::{SuffixAutomaton, ROOT};
use crate::error::{Error, Result};
use crate::text::{Symbol, Text};

/// Number of maximal equal-symbol runs.
pub fn rle_runs(s: &[Symbol]) -> Result<usize> {
    if s.is_empty() {
        return Err(Error::EmptyText);
    }
    Ok(1 + s.windows(2).filter(|w| w[0] != w[1]).count())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phrase {
    /// A symbol with no earlier occurrence.
    Fresh(Symbol),
    /// `len` symbols copied from `source`, which lies strictly before the
    /// phrase start.
    Copy { source: usize, len: usize },
}

impl Phrase {
    pub fn len(&self) -> usize {
        match *self {
            Phrase::Fresh(_) => 1,
            Phrase::Copy { len, .. } => len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LzFactorization {
    pub phrases: Vec<Phrase>,
    pub overlap_allowed: bool,
}

impl LzFactorization {
    pub fn len(&self) -> usize {
        self.phrases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phrases.is_empty()
    }

    /// Rebuilds the parsed string. Overlapping copies are expanded symbol by
    /// symbol.
    pub fn decode(&self) -> Vec<Symbol> {
        let mut out = Vec::new();
        for phrase in &self.phrases {
            match *phrase {
                Phrase::Fresh(c) => out.push(c),
                Phrase::Copy { source, len } => {
                    for k in 0..len {
                        out.push(out[source + k]);
                    }
                }
            }
        }
        out
    }

    /// Phrase boundaries rendered as `a|b|b|abba`.
    pub fn render(&self) -> String {
        let decoded = self.decode();
        let mut out = String::new();
        let mut at = 0;
        for (i, phrase) in self.phrases.iter().enumerate() {
            if i > 0 {
                out.push('|');
            }
            out.push_str(&crate::text::letters(&decoded[at..at + phrase.len()]));
            at += phrase.len();
        }
        out
    }
}

/// Greedy left-to-right LZ77 parse. Each phrase is the longest string with
/// an earlier occurrence (starting before the phrase; with `allow_overlap ==
/// false` also ending before it), taken from its leftmost occurrence, or a
/// fresh symbol if no such string exists.
pub fn lz77(s: &[Symbol], allow_overlap: bool) -> Result<LzFactorization> {
    if s.is_empty() {
        return Err(Error::EmptyText);
    }
    let sa = SuffixAutomaton::new(s);
    let mut phrases = Vec::new();
    let mut i = 0;
    while i < s.len() {
        let mut state = ROOT;
        let mut len = 0;
        let mut source = 0;
        while i + len < s.len() {
            let next = sa
                .step(state, s[i + len])
                .expect("every substring is recognised");
            let end = sa.first_end(next);
            let start = end - (len + 1);
            let ok = if allow_overlap { start < i } else { end <= i };
            if !ok {
                break;
            }
            state = next;
            len += 1;
            source = start;
        }
        if len == 0 {
            phrases.push(Phrase::Fresh(s[i]));
            i += 1;
        } else {
            phrases.push(Phrase::Copy { source, len });
            i += len;
        }
    }
    Ok(LzFactorization {
        phrases,
        overlap_allowed: allow_overlap,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeasureReport {
    pub n: usize,
    pub sigma: u32,
    pub rle: usize,
    pub z: usize,
    pub z_no: usize,
}

impl MeasureReport {
    /// Whether `z <= z_no <= rle` holds for this string. The first inequality
    /// always holds; the second fails on strings with long runs (`aaaa` has
    /// one run but three overlap-free phrases).
    pub fn chain_holds(&self) -> bool {
        self.z <= self.z_no && self.z_no <= self.rle
    }

    /// `z_no / (z * log2 n)`, the slack in `z_no = O(z log n)`.
    pub fn z_no_ratio(&self) -> f64 {
        self.z_no as f64 / (self.z as f64 * log2_at_least_one(self.n))
    }

    /// Reference value `z_no * log2(n / z_no)` for the smallest grammar size.
    pub fn grammar_bound(&self) -> f64 {
        self.z_no as f64 * (self.n as f64 / self.z_no as f64).log2().max(1.0)
    }

    /// Worst-case lower bound `sigma * n / 4` on substring queries.
    pub fn worst_case_lower_bound(&self) -> f64 {
        f64::from(self.sigma) * self.n as f64 / 4.0
    }

    /// Shape of the LZ lower bound `sigma * z_no * log_sigma n`.
    pub fn lz_lower_bound_shape(&self) -> f64 {
        let log_sigma = if self.sigma > 1 {
            (self.n as f64).ln() / f64::from(self.sigma).ln()
        } else {
            self.n as f64
        };
        f64::from(self.sigma) * self.z_no as f64 * log_sigma
    }
}

fn log2_at_least_one(n: usize) -> f64 {
    (n as f64).log2().max(1.0)
}

pub fn measure(s: &Text) -> Result<MeasureReport> {
    let symbols = s.symbols();
    let report = MeasureReport {
        n: symbols.len(),
        sigma: s.sigma(),
        rle: rle_runs(symbols)?,
        z: lz77(symbols, true)?.len(),
        z_no: lz77(symbols, false)?.len(),
    };
    debug_assert!(report.z <= report.z_no);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(s: &str) -> Text {
        Text::from_letters(s).unwrap()
    }

    /// Brute-force greedy parse: try every length from longest to shortest and
    /// every earlier start.
    fn brute_lz(s: &[Symbol], overlap: bool) -> Vec<usize> {
        let mut lens = Vec::new();
        let mut i = 0;
        while i < s.len() {
            let mut best = 0;
            for len in (1..=s.len() - i).rev() {
                let found =
                    (0..i).any(|j| (overlap || j + len <= i) && s[j..j + len] == s[i..i + len]);
                if found {
                    best = len;
                    break;
                }
            }
            let step = best.max(1);
            lens.push(step);
            i += step;
        }
        lens
    }

    #[test]
    fn run_counts() {
        assert_eq!(rle_runs(t("aaaa").symbols()), Ok(1));
        assert_eq!(rle_runs(t("abbabba").symbols()), Ok(5));
        assert_eq!(rle_runs(t("AAABCABCABCAAA").symbols()), Ok(10));
        assert_eq!(rle_runs(&[]), Err(Error::EmptyText));
    }

    #[test]
    fn lz77_reference_parses() {
        let s = t("abbabba");
        let with = lz77(s.symbols(), true).unwrap();
        assert_eq!(with.len(), 4);
        assert_eq!(with.render(), "a|b|b|abba");
        let without = lz77(s.symbols(), false).unwrap();
        assert_eq!(without.len(), 5);
        assert_eq!(without.render(), "a|b|b|abb|a");
    }

    #[test]
    fn unary_parses() {
        let s = t("aaaa");
        let with = lz77(s.symbols(), true).unwrap();
        assert_eq!(with.render(), "a|aaa");
        assert_eq!(with.phrases[1], Phrase::Copy { source: 0, len: 3 });
        let without = lz77(s.symbols(), false).unwrap();
        assert_eq!(without.render(), "a|a|aa");
        assert_eq!(lz77(&[], true), Err(Error::EmptyText));
    }

    #[test]
    fn measure_examples() {
        let m = measure(&t("abbabba")).unwrap();
        assert_eq!((m.n, m.rle, m.z, m.z_no), (7, 5, 4, 5));
        assert!(m.chain_holds());
        let m = measure(&t("aaaa")).unwrap();
        assert_eq!((m.n, m.rle, m.z, m.z_no), (4, 1, 2, 3));
        assert!(!m.chain_holds());
        let m = measure(&t("ab")).unwrap();
        assert_eq!((m.n, m.rle, m.z, m.z_no), (2, 2, 2, 2));
    }

    #[test]
    fn leftmost_sources() {
        let f = lz77(t("abab").symbols(), true).unwrap();
        assert_eq!(f.phrases[2], Phrase::Copy { source: 0, len: 2 });
    }

    proptest! {
        #[test]
        fn parse_round_trips_and_matches_brute_force(
            s in proptest::collection::vec(1u32..=3, 1..60),
            overlap in any::<bool>(),
        ) {
            let f = lz77(&s, overlap).unwrap();
            prop_assert_eq!(f.decode(), s.clone());
            let lens: Vec<usize> = f.phrases.iter().map(Phrase::len).collect();
            prop_assert_eq!(lens, brute_lz(&s, overlap));
            let mut at = 0;
            for p in &f.phrases {
                match *p {
                    Phrase::Fresh(c) => prop_assert!(!s[..at].contains(&c)),
                    Phrase::Copy { source, len } => {
                        prop_assert!(source < at);
                        if !overlap {
                            prop_assert!(source + len <= at);
                        }
                    }
                }
                at += p.len();
            }
        }

        #[test]
        fn measure_relations(s in proptest::collection::vec(1u32..=4, 1..200)) {
            let m = measure(&Text::new(s, 4).unwrap()).unwrap();
            prop_assert!(m.z <= m.z_no);
            prop_assert!(m.z <= 2 * m.rle);
            prop_assert!(m.rle <= m.n);
            prop_assert!(m.z_no_ratio() > 0.0);
        }
    }
}
