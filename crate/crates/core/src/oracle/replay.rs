use super::{Anchor, PrefixOracle, QueryCounter, QueryStats, SubstringOracle};
use crate::text::Symbol;

/// Forwards every query to an inner oracle and keeps the answers, in order.
#[derive(Debug)]
pub struct RecordingOracle<O> {
    inner: O,
    answers: Vec<bool>,
}

impl<O> RecordingOracle<O> {
    pub fn new(inner: O) -> Self {
        Self {
            inner,
            answers: Vec::new(),
        }
    }

    pub fn answers(&self) -> &[bool] {
        &self.answers
    }

    pub fn into_parts(self) -> (O, Vec<bool>) {
        (self.inner, self.answers)
    }
}

impl<O: QueryCounter> QueryCounter for RecordingOracle<O> {
    fn stats(&self) -> QueryStats {
        self.inner.stats()
    }
}

impl<O: SubstringOracle> SubstringOracle for RecordingOracle<O> {
    fn extend_substring(&mut self, base: &Anchor, tail: &[Symbol]) -> Option<Anchor> {
        let answer = self.inner.extend_substring(base, tail);
        self.answers.push(answer.is_some());
        answer
    }
}

impl<O: PrefixOracle> PrefixOracle for RecordingOracle<O> {
    fn extend_prefix(&mut self, base: &Anchor, tail: &[Symbol]) -> Option<Anchor> {
        let answer = self.inner.extend_prefix(base, tail);
        self.answers.push(answer.is_some());
        answer
    }
}

/// Answers queries from a pre-recorded bit sequence without knowing the
/// hidden string. Once the bits run out every answer is "no" and the oracle
/// remembers that it was overrun.
#[derive(Clone, Debug)]
pub struct ReplayOracle<'a> {
    answers: &'a [bool],
    cursor: usize,
    overrun: bool,
    stats: QueryStats,
}

impl<'a> ReplayOracle<'a> {
    pub fn new(answers: &'a [bool]) -> Self {
        Self {
            answers,
            cursor: 0,
            overrun: false,
            stats: QueryStats::default(),
        }
    }

    pub fn overrun(&self) -> bool {
        self.overrun
    }

    pub fn remaining(&self) -> usize {
        self.answers.len() - self.cursor
    }

    fn next(&mut self, base: &Anchor, tail: &[Symbol]) -> Option<Anchor> {
        let answer = match self.answers.get(self.cursor) {
            Some(&a) => {
                self.cursor += 1;
                a
            }
            None => {
                self.overrun = true;
                false
            }
        };
        answer.then(|| base.extended(tail.len(), 0))
    }
}

impl QueryCounter for ReplayOracle<'_> {
    fn stats(&self) -> QueryStats {
        self.stats
    }
}

impl SubstringOracle for ReplayOracle<'_> {
    fn extend_substring(&mut self, base: &Anchor, tail: &[Symbol]) -> Option<Anchor> {
        self.stats.record_substring(base.len() + tail.len());
        self.next(base, tail)
    }
}

impl PrefixOracle for ReplayOracle<'_> {
    fn extend_prefix(&mut self, base: &Anchor, tail: &[Symbol]) -> Option<Anchor> {
        self.stats.record_prefix(base.len() + tail.len());
        self.next(base, tail)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::Oracle;
    use crate::text::Text;

    #[test]
    fn replay_reproduces_recorded_answers() {
        let hidden = Text::from_letters("abba").unwrap();
        let mut rec = RecordingOracle::new(Oracle::new(hidden).unwrap());
        let queries: [&[Symbol]; 4] = [&[1, 2], &[2, 2, 2], &[2, 1], &[1, 1]];
        let live: Vec<bool> = queries.iter().map(|q| rec.contains_substring(q)).collect();
        assert_eq!(rec.answers(), &live[..]);

        let bits = rec.answers().to_vec();
        let mut replay = ReplayOracle::new(&bits);
        let replayed: Vec<bool> = queries
            .iter()
            .map(|q| replay.contains_substring(q))
            .collect();
        assert_eq!(replayed, live);
        assert!(!replay.overrun());
        assert!(!replay.contains_substring(&[1]));
        assert!(replay.overrun());
        assert_eq!(replay.stats().substring_queries, 5);
    }
}
