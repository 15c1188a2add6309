//! Growing a known string `R` one verified piece at a time.

use crate::oracle::{Anchor, Orientation, PrefixOracle, SubstringOracle};
use crate::text::Symbol;

/// One kind of membership question, asked relative to an anchor.
pub(crate) trait Probe {
    fn orientation(&self) -> Orientation;
    fn ask(&mut self, base: &Anchor, tail: &[Symbol]) -> Option<Anchor>;
    /// Queries asked so far through the underlying oracle.
    fn queries(&self) -> u64;
}

pub(crate) struct Substrings<'a, O: ?Sized> {
    oracle: &'a mut O,
    orientation: Orientation,
}

impl<'a, O: SubstringOracle + ?Sized> Substrings<'a, O> {
    pub(crate) fn forward(oracle: &'a mut O) -> Self {
        Self {
            oracle,
            orientation: Orientation::Forward,
        }
    }

    /// Tails are given right to left; `R` is stored reversed.
    pub(crate) fn backward(oracle: &'a mut O) -> Self {
        Self {
            oracle,
            orientation: Orientation::Reversed,
        }
    }
}

impl<O: SubstringOracle + ?Sized> Probe for Substrings<'_, O> {
    fn orientation(&self) -> Orientation {
        self.orientation
    }

    fn ask(&mut self, base: &Anchor, tail: &[Symbol]) -> Option<Anchor> {
        self.oracle.extend_substring(base, tail)
    }

    fn queries(&self) -> u64 {
        self.oracle.stats().total_queries()
    }
}

pub(crate) struct Prefixes<'a, O: ?Sized>(pub(crate) &'a mut O);

impl<O: PrefixOracle + ?Sized> Probe for Prefixes<'_, O> {
    fn orientation(&self) -> Orientation {
        Orientation::Prefix
    }

    fn ask(&mut self, base: &Anchor, tail: &[Symbol]) -> Option<Anchor> {
        self.0.extend_prefix(base, tail)
    }

    fn queries(&self) -> u64 {
        self.0.stats().total_queries()
    }
}

/// Holds `R` (in the probe's orientation) and answers "does `R · t` hold?".
///
/// When an anchor for `R` is available only the tail is sent through it;
/// otherwise the full string `R · t` is asked. Either way the oracle counts
/// one query of length `|R| + |t|`.
pub(crate) struct Extender<P> {
    probe: P,
    known: Vec<Symbol>,
    anchor: Option<Anchor>,
    /// Positive tails since the last commit, with their anchors.
    hits: Vec<(Vec<Symbol>, Anchor)>,
    buf: Vec<Symbol>,
}

impl<P: Probe> Extender<P> {
    pub(crate) fn new(probe: P, known: Vec<Symbol>) -> Self {
        let anchor = known.is_empty().then(|| Anchor::empty(probe.orientation()));
        Self {
            probe,
            known,
            anchor,
            hits: Vec::new(),
            buf: Vec::new(),
        }
    }

    pub(crate) fn known(&self) -> &[Symbol] {
        &self.known
    }

    pub(crate) fn queries(&self) -> u64 {
        self.probe.queries()
    }

    pub(crate) fn into_known(self) -> Vec<Symbol> {
        self.known
    }

    pub(crate) fn test(&mut self, tail: &[Symbol]) -> bool {
        let answer = match &self.anchor {
            Some(anchor) => self.probe.ask(anchor, tail),
            None => {
                self.buf.clear();
                self.buf.extend_from_slice(&self.known);
                self.buf.extend_from_slice(tail);
                self.probe
                    .ask(&Anchor::empty(self.probe.orientation()), &self.buf)
            }
        };
        match answer {
            Some(anchor) => {
                self.hits.push((tail.to_vec(), anchor));
                true
            }
            None => false,
        }
    }

    /// Appends `tail` to `R`. `tail` should have tested positive since the
    /// previous commit; otherwise the next query is asked unanchored.
    pub(crate) fn commit(&mut self, tail: &[Symbol]) {
        self.known.extend_from_slice(tail);
        self.anchor = self
            .hits
            .iter()
            .rev()
            .find(|(t, _)| t == tail)
            .map(|&(_, a)| a);
        self.hits.clear();
    }
}
