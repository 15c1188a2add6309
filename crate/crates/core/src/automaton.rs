//! Suffix automaton over integer symbols.
//!
//! Recognises exactly the substrings of the indexed string. Each state also
//! keeps the end position of the first occurrence of its strings, which the
//! LZ77 parser uses to locate leftmost sources.

use crate::text::Symbol;

pub(crate) type StateId = u32;

pub(crate) const ROOT: StateId = 0;

#[derive(Clone, Debug)]
struct State {
    len: usize,
    link: Option<StateId>,
    /// Exclusive end of the first occurrence of every string in this state.
    first_end: usize,
    next: Vec<(Symbol, StateId)>,
}

impl State {
    fn get(&self, c: Symbol) -> Option<StateId> {
        self.next
            .binary_search_by_key(&c, |&(s, _)| s)
            .ok()
            .map(|i| self.next[i].1)
    }

    fn set(&mut self, c: Symbol, to: StateId) {
        match self.next.binary_search_by_key(&c, |&(s, _)| s) {
            Ok(i) => self.next[i].1 = to,
            Err(i) => self.next.insert(i, (c, to)),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct SuffixAutomaton {
    states: Vec<State>,
    last: StateId,
}

impl SuffixAutomaton {
    pub(crate) fn new(text: &[Symbol]) -> Self {
        let mut sa = Self {
            states: Vec::with_capacity(2 * text.len() + 1),
            last: ROOT,
        };
        sa.states.push(State {
            len: 0,
            link: None,
            first_end: 0,
            next: Vec::new(),
        });
        for &c in text {
            sa.push(c);
        }
        sa
    }

    fn push(&mut self, c: Symbol) {
        let cur = self.states.len() as StateId;
        let len = self.states[self.last as usize].len + 1;
        self.states.push(State {
            len,
            link: None,
            first_end: len,
            next: Vec::new(),
        });
        let mut p = Some(self.last);
        while let Some(pi) = p {
            if self.states[pi as usize].get(c).is_some() {
                break;
            }
            self.states[pi as usize].set(c, cur);
            p = self.states[pi as usize].link;
        }
        match p {
            None => self.states[cur as usize].link = Some(ROOT),
            Some(pi) => {
                let q = self.states[pi as usize].get(c).expect("transition present");
                if self.states[pi as usize].len + 1 == self.states[q as usize].len {
                    self.states[cur as usize].link = Some(q);
                } else {
                    let clone = self.states.len() as StateId;
                    let mut cloned = self.states[q as usize].clone();
                    cloned.len = self.states[pi as usize].len + 1;
                    self.states.push(cloned);
                    let mut p = Some(pi);
                    while let Some(pi) = p {
                        if self.states[pi as usize].get(c) != Some(q) {
                            break;
                        }
                        self.states[pi as usize].set(c, clone);
                        p = self.states[pi as usize].link;
                    }
                    self.states[q as usize].link = Some(clone);
                    self.states[cur as usize].link = Some(clone);
                }
            }
        }
        self.last = cur;
    }

    #[inline]
    pub(crate) fn step(&self, from: StateId, c: Symbol) -> Option<StateId> {
        self.states[from as usize].get(c)
    }

    /// Follows `tail` from `from`; `None` as soon as the walk leaves the
    /// substring language.
    pub(crate) fn walk(&self, from: StateId, tail: &[Symbol]) -> Option<StateId> {
        tail.iter().try_fold(from, |s, &c| self.step(s, c))
    }

    pub(crate) fn first_end(&self, state: StateId) -> usize {
        self.states[state as usize].first_end
    }

    #[cfg(test)]
    pub(crate) fn state_count(&self) -> usize {
        self.states.len()
    }
}
