//! Online suffix tree (Ukkonen) without a terminal sentinel.
//!
//! Suffixes that are proper prefixes of longer suffixes have no leaf; they
//! end inside an edge or at an internal node and are reported by
//! [`SuffixTree::implicit_suffixes`]. Every node also tracks the number of
//! nodes in its subtree, kept up to date as symbols are appended.

use std::fmt::{self, Write as _};
use std::ops::Range;

use crate::error::{Error, Result};
use crate::text::{letters, Symbol};

pub type NodeId = usize;

pub const ROOT: NodeId = 0;

const OPEN: usize = usize::MAX;
const NONE: NodeId = usize::MAX;

#[derive(Clone, Debug)]
struct Node {
    /// Edge label is `text[start..end]`; leaves have `end == OPEN`.
    start: usize,
    end: usize,
    parent: NodeId,
    link: NodeId,
    children: Vec<(Symbol, NodeId)>,
    /// String depth for internal nodes, suffix start for leaves.
    depth_or_suffix: usize,
    size: usize,
}

impl Node {
    fn is_leaf(&self) -> bool {
        self.end == OPEN
    }
}

/// Interval of text positions spelling a node's locus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocusInterval {
    /// 0-based start position.
    pub start: usize,
    pub len: usize,
}

impl LocusInterval {
    pub fn range(&self) -> Range<usize> {
        self.start..self.start + self.len
    }

    /// 1-based inclusive `[i, j]`, `None` for the empty locus.
    pub fn one_based(&self) -> Option<(usize, usize)> {
        (self.len > 0).then(|| (self.start + 1, self.start + self.len))
    }
}

impl fmt::Display for LocusInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.one_based() {
            Some((i, j)) => write!(f, "[{i},{j}]"),
            None => f.write_str("[]"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuffixTree {
    sigma: u32,
    text: Vec<Symbol>,
    nodes: Vec<Node>,
    active_node: NodeId,
    active_edge: usize,
    active_len: usize,
    remainder: usize,
}

impl SuffixTree {
    pub fn new(sigma: u32) -> Result<Self> {
        if sigma == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Self {
            sigma,
            text: Vec::new(),
            nodes: vec![Node {
                start: 0,
                end: 0,
                parent: NONE,
                link: ROOT,
                children: Vec::new(),
                depth_or_suffix: 0,
                size: 1,
            }],
            active_node: ROOT,
            active_edge: 0,
            active_len: 0,
            remainder: 0,
        })
    }

    pub fn from_symbols(sigma: u32, symbols: &[Symbol]) -> Result<Self> {
        let mut st = Self::new(sigma)?;
        st.extend_from(symbols)?;
        Ok(st)
    }

    pub fn extend_from(&mut self, symbols: &[Symbol]) -> Result<()> {
        symbols.iter().try_for_each(|&c| self.push(c))
    }

    /// Appends one symbol, updating the tree to represent every suffix of the
    /// extended text.
    pub fn push(&mut self, c: Symbol) -> Result<()> {
        if c == 0 || c > self.sigma {
            return Err(Error::SymbolOutOfRange {
                symbol: c,
                sigma: self.sigma,
            });
        }
        self.text.push(c);
        let pos = self.text.len() - 1;
        self.remainder += 1;
        let mut pending_link: Option<NodeId> = None;

        while self.remainder > 0 {
            if self.active_len == 0 {
                self.active_edge = pos;
            }
            let a = self.text[self.active_edge];
            match self.child(self.active_node, a) {
                None => {
                    let parent = self.active_node;
                    self.add_leaf(parent, pos);
                    if let Some(l) = pending_link.take() {
                        self.nodes[l].link = parent;
                    }
                }
                Some(next) => {
                    let edge_len = self.edge_len(next);
                    if self.active_len >= edge_len {
                        self.active_edge += edge_len;
                        self.active_len -= edge_len;
                        self.active_node = next;
                        continue;
                    }
                    if self.text[self.nodes[next].start + self.active_len] == c {
                        if let Some(l) = pending_link.take() {
                            self.nodes[l].link = self.active_node;
                        }
                        self.active_len += 1;
                        break;
                    }
                    let split = self.split_edge(self.active_node, next, self.active_len);
                    self.add_leaf(split, pos);
                    if let Some(l) = pending_link.replace(split) {
                        self.nodes[l].link = split;
                    }
                }
            }
            self.remainder -= 1;
            if self.active_node == ROOT && self.active_len > 0 {
                self.active_len -= 1;
                self.active_edge = pos + 1 - self.remainder;
            } else if self.active_node != ROOT {
                self.active_node = self.nodes[self.active_node].link;
            }
        }
        Ok(())
    }

    fn add_leaf(&mut self, parent: NodeId, pos: usize) {
        let id = self.nodes.len();
        self.nodes.push(Node {
            start: pos,
            end: OPEN,
            parent,
            link: ROOT,
            children: Vec::new(),
            depth_or_suffix: pos + 1 - self.remainder,
            size: 1,
        });
        self.insert_child(parent, self.text[pos], id);
        self.bump_sizes(parent, 1);
    }

    /// Splits the edge `parent -> child` after `at` symbols; returns the new
    /// internal node.
    fn split_edge(&mut self, parent: NodeId, child: NodeId, at: usize) -> NodeId {
        let id = self.nodes.len();
        let start = self.nodes[child].start;
        let depth = self.string_depth(parent) + at;
        self.nodes.push(Node {
            start,
            end: start + at,
            parent,
            link: ROOT,
            children: vec![(self.text[start + at], child)],
            depth_or_suffix: depth,
            size: self.nodes[child].size + 1,
        });
        let slot = self.nodes[parent]
            .children
            .binary_search_by_key(&self.text[start], |&(s, _)| s)
            .expect("split edge exists");
        self.nodes[parent].children[slot].1 = id;
        self.nodes[child].start += at;
        self.nodes[child].parent = id;
        self.bump_sizes(parent, 1);
        id
    }

    fn insert_child(&mut self, node: NodeId, c: Symbol, child: NodeId) {
        let children = &mut self.nodes[node].children;
        let slot = children
            .binary_search_by_key(&c, |&(s, _)| s)
            .expect_err("child symbols are distinct");
        children.insert(slot, (c, child));
    }

    fn bump_sizes(&mut self, from: NodeId, by: usize) {
        let mut x = from;
        while x != NONE {
            self.nodes[x].size += by;
            x = self.nodes[x].parent;
        }
    }

    fn edge_len(&self, u: NodeId) -> usize {
        let n = &self.nodes[u];
        if n.is_leaf() {
            self.text.len() - n.start
        } else {
            n.end - n.start
        }
    }

    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    pub fn text(&self) -> &[Symbol] {
        &self.text
    }

    pub fn root(&self) -> NodeId {
        ROOT
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn contains_node(&self, u: NodeId) -> bool {
        u < self.nodes.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes.iter().filter(|n| n.is_leaf()).count()
    }

    pub fn is_leaf(&self, u: NodeId) -> bool {
        self.nodes[u].is_leaf()
    }

    pub fn parent(&self, u: NodeId) -> Option<NodeId> {
        let p = self.nodes[u].parent;
        (p != NONE).then_some(p)
    }

    /// Children in ascending order of their first edge symbol.
    pub fn children(&self, u: NodeId) -> &[(Symbol, NodeId)] {
        &self.nodes[u].children
    }

    pub fn child(&self, u: NodeId, c: Symbol) -> Option<NodeId> {
        let children = &self.nodes[u].children;
        children
            .binary_search_by_key(&c, |&(s, _)| s)
            .ok()
            .map(|i| children[i].1)
    }

    /// Number of nodes in the subtree rooted at `u`, `u` included.
    pub fn subtree_size(&self, u: NodeId) -> usize {
        self.nodes[u].size
    }

    /// Length of `locus(u)`.
    pub fn string_depth(&self, u: NodeId) -> usize {
        let n = &self.nodes[u];
        if n.is_leaf() {
            self.text.len() - n.depth_or_suffix
        } else {
            n.depth_or_suffix
        }
    }

    /// Text positions of the label on the edge entering `u`.
    pub fn edge_range(&self, u: NodeId) -> Range<usize> {
        let n = &self.nodes[u];
        n.start..n.start + self.edge_len(u)
    }

    /// Text positions spelling `locus(u)`.
    pub fn locus_range(&self, u: NodeId) -> Range<usize> {
        let end = self.edge_range(u).end;
        end - self.string_depth(u)..end
    }

    pub fn locus(&self, u: NodeId) -> &[Symbol] {
        &self.text[self.locus_range(u)]
    }

    pub fn locus_interval(&self, u: NodeId) -> Result<LocusInterval> {
        if !self.contains_node(u) {
            return Err(Error::UnknownNode(u));
        }
        let r = self.locus_range(u);
        Ok(LocusInterval {
            start: r.start,
            len: r.len(),
        })
    }

    /// Start positions of suffixes represented by leaves.
    pub fn leaf_suffix_starts(&self) -> Vec<usize> {
        let mut starts: Vec<usize> = self
            .nodes
            .iter()
            .filter(|n| n.is_leaf())
            .map(|n| n.depth_or_suffix)
            .collect();
        starts.sort_unstable();
        starts
    }

    /// Start positions of suffixes with no leaf of their own.
    pub fn implicit_suffixes(&self) -> Range<usize> {
        self.text.len() - self.remainder..self.text.len()
    }

    /// Whether `pattern` can be spelled from the root.
    pub fn contains(&self, pattern: &[Symbol]) -> bool {
        let mut node = ROOT;
        let mut i = 0;
        while i < pattern.len() {
            let Some(next) = self.child(node, pattern[i]) else {
                return false;
            };
            let edge = &self.text[self.edge_range(next)];
            let take = edge.len().min(pattern.len() - i);
            if edge[..take] != pattern[i..i + take] {
                return false;
            }
            i += take;
            node = next;
        }
        true
    }

    /// Indented listing: one line per node with id, locus interval and locus.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let mut stack = vec![(ROOT, 0usize)];
        while let Some((u, level)) = stack.pop() {
            let iv = self.locus_interval(u).expect("live node");
            let _ = writeln!(
                out,
                "{:indent$}#{u} {iv} {}",
                "",
                letters(self.locus(u)),
                indent = 2 * level
            );
            for &(_, v) in self.children(u).iter().rev() {
                stack.push((v, level + 1));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::Text;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn tree(s: &str) -> SuffixTree {
        let t = Text::from_letters(s).unwrap();
        SuffixTree::from_symbols(t.sigma(), t.symbols()).unwrap()
    }

    /// Node count of the compacted trie of all suffixes (explicit nodes only:
    /// root, branching substrings, and suffixes that are not proper prefixes
    /// of other suffixes).
    fn brute_node_count(s: &[Symbol]) -> usize {
        let n = s.len();
        let subs: BTreeSet<&[Symbol]> = (0..n)
            .flat_map(|i| (i + 1..=n).map(move |j| &s[i..j]))
            .collect();
        let mut count = 1;
        for &x in &subs {
            let exts: BTreeSet<Symbol> = subs
                .iter()
                .filter(|y| y.len() == x.len() + 1 && y.starts_with(x))
                .map(|y| y[x.len()])
                .collect();
            let is_suffix = s.ends_with(x);
            if exts.len() >= 2 || (exts.is_empty() && is_suffix) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn new_tree_is_root_only() {
        let st = SuffixTree::new(2).unwrap();
        assert_eq!(st.node_count(), 1);
        assert_eq!(st.leaf_count(), 0);
        assert_eq!(SuffixTree::new(0).unwrap_err(), Error::EmptyAlphabet);
    }

    #[test]
    fn single_symbol_makes_one_leaf() {
        let mut st = SuffixTree::new(26).unwrap();
        st.push(1).unwrap();
        assert_eq!(st.leaf_count(), 1);
        assert_eq!(
            st.push(27),
            Err(Error::SymbolOutOfRange {
                symbol: 27,
                sigma: 26
            })
        );
    }

    #[test]
    fn abab_matches_compacted_trie() {
        let st = tree("abab");
        assert_eq!(st.node_count(), brute_node_count(&[1, 2, 1, 2]));
        assert_eq!(st.leaf_suffix_starts(), vec![0, 1]);
        assert_eq!(st.implicit_suffixes(), 2..4);
        for leaf in (0..st.node_count()).filter(|&u| st.is_leaf(u)) {
            let iv = st.locus_interval(leaf).unwrap();
            assert_eq!(iv.start + iv.len, 4);
        }
    }

    #[test]
    fn unary_text_is_a_single_leaf() {
        let st = tree("aaaaa");
        assert_eq!(st.node_count(), 2);
        assert_eq!(st.leaf_count(), 1);
        assert_eq!(st.implicit_suffixes(), 1..5);
    }

    #[test]
    fn running_example_locus() {
        let st = tree("AAABCABCABCAAA");
        let target = Text::from_letters("ABCABCA").unwrap();
        let node = (0..st.node_count())
            .find(|&u| st.locus(u) == target.symbols())
            .expect("ABCABCA is a branching substring");
        let iv = st.locus_interval(node).unwrap();
        assert_eq!(iv.one_based(), Some((3, 9)));
        assert_eq!(iv.to_string(), "[3,9]");
        assert_eq!(st.implicit_suffixes(), 11..14);
    }

    #[test]
    fn root_interval_is_empty() {
        let st = tree("abc");
        let iv = st.locus_interval(ROOT).unwrap();
        assert_eq!(iv.len, 0);
        assert_eq!(iv.one_based(), None);
        assert_eq!(st.locus_interval(99), Err(Error::UnknownNode(99)));
    }

    #[test]
    fn dump_lists_every_node() {
        let st = tree("abab");
        let dump = st.dump();
        assert_eq!(dump.lines().count(), st.node_count());
        assert!(dump.starts_with("#0 [] \n"));
        assert!(dump.contains("[1,4] abab"));
    }

    proptest! {
        #[test]
        fn suffixes_and_substrings_match_brute_force(
            s in proptest::collection::vec(1u32..=3, 1..40)
        ) {
            let st = SuffixTree::from_symbols(3, &s).unwrap();
            let n = s.len();
            // Leaves and implicit suffixes partition all suffix starts.
            let mut starts = st.leaf_suffix_starts();
            starts.extend(st.implicit_suffixes());
            prop_assert_eq!(starts, (0..n).collect::<Vec<_>>());
            for i in st.implicit_suffixes() {
                prop_assert!((0..i).any(|j| s[j..].starts_with(&s[i..])));
            }
            for u in 0..st.node_count() {
                let loc = st.locus(u);
                prop_assert!(s.windows(loc.len().max(1)).any(|w| loc.is_empty() || w == loc));
                if st.is_leaf(u) {
                    prop_assert!(s.ends_with(loc));
                }
                let kids: Vec<Symbol> = st.children(u).iter().map(|&(c, _)| c).collect();
                let mut sorted = kids.clone();
                sorted.dedup();
                prop_assert_eq!(&kids, &sorted);
                for &(c, v) in st.children(u) {
                    prop_assert_eq!(st.parent(v), Some(u));
                    prop_assert_eq!(st.text()[st.edge_range(v).start], c);
                    prop_assert!(st.locus(v).starts_with(loc));
                }
                let size = 1 + st.children(u).iter().map(|&(_, v)| st.subtree_size(v)).sum::<usize>();
                prop_assert_eq!(st.subtree_size(u), size);
            }
            prop_assert_eq!(st.node_count(), brute_node_count(&s));
            for i in 0..n {
                for j in i..=n.min(i + 8) {
                    prop_assert!(st.contains(&s[i..j]));
                }
            }
        }

        #[test]
        fn membership_agrees_with_scan(
            s in proptest::collection::vec(1u32..=2, 1..30),
            q in proptest::collection::vec(1u32..=2, 0..8),
        ) {
            let st = SuffixTree::from_symbols(2, &s).unwrap();
            let naive = q.is_empty() || s.windows(q.len()).any(|w| w == &q[..]);
            prop_assert_eq!(st.contains(&q), naive);
        }
    }
}
