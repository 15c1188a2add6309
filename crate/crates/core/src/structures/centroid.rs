//! Centroid decomposition of a suffix tree's node set.
//!
//! [`CentroidTree`] is the complete decomposition. [`LazyCentroids`] walks the
//! same decomposition but only computes the centroids a search actually
//! visits; both pick, among valid centroids, the one with the smallest id.

use std::collections::VecDeque;
use std::fmt::Write as _;

use super::suffix_tree::{NodeId, SuffixTree};
use crate::error::{Error, Result};
use crate::text::letters;

/// Navigation over a centroid decomposition, as used by the phrase search.
pub trait CentroidSearch {
    /// Centroid of the whole tree.
    fn root(&mut self) -> NodeId;

    /// Centroid of the component that contains `toward` once `u` is removed
    /// from `u`'s component, or `None` if `toward` lies outside that
    /// component. `u` must be the centroid most recently returned and
    /// `toward` a suffix-tree neighbour of `u`.
    fn descend(&mut self, u: NodeId, toward: NodeId) -> Option<NodeId>;
}

#[derive(Clone, Debug)]
pub struct CentroidTree {
    root: NodeId,
    parent: Vec<Option<NodeId>>,
    children: Vec<Vec<NodeId>>,
    level: Vec<usize>,
    component_size: Vec<usize>,
}

/// Minimal rooted-tree view needed by the decomposition.
pub trait RootedTree {
    fn node_count(&self) -> usize;
    fn root(&self) -> NodeId;
    fn parent_of(&self, u: NodeId) -> Option<NodeId>;
    /// Children of `u` in a fixed order.
    fn child_ids(&self, u: NodeId) -> Vec<NodeId>;
}

impl RootedTree for SuffixTree {
    fn node_count(&self) -> usize {
        SuffixTree::node_count(self)
    }

    fn root(&self) -> NodeId {
        SuffixTree::root(self)
    }

    fn parent_of(&self, u: NodeId) -> Option<NodeId> {
        self.parent(u)
    }

    fn child_ids(&self, u: NodeId) -> Vec<NodeId> {
        self.children(u).iter().map(|&(_, v)| v).collect()
    }
}

/// A tree given by parent pointers; children are ordered by id.
#[derive(Clone, Debug)]
pub struct ParentTree {
    root: NodeId,
    parent: Vec<Option<NodeId>>,
    children: Vec<Vec<NodeId>>,
}

impl ParentTree {
    /// Panics unless exactly one entry is `None` and all others point at
    /// valid ids (cycles are not detected).
    pub fn new(parent: Vec<Option<NodeId>>) -> Self {
        let mut children = vec![Vec::new(); parent.len()];
        let mut root = None;
        for (u, p) in parent.iter().enumerate() {
            match *p {
                Some(p) => children[p].push(u),
                None => {
                    assert!(root.is_none(), "more than one root");
                    root = Some(u);
                }
            }
        }
        Self {
            root: root.expect("a root"),
            parent,
            children,
        }
    }

    /// The path `0 - 1 - ... - (n-1)` rooted at 0.
    pub fn path(n: usize) -> Self {
        Self::new((0..n).map(|u| u.checked_sub(1)).collect())
    }
}

impl RootedTree for ParentTree {
    fn node_count(&self) -> usize {
        self.parent.len()
    }

    fn root(&self) -> NodeId {
        self.root
    }

    fn parent_of(&self, u: NodeId) -> Option<NodeId> {
        self.parent[u]
    }

    fn child_ids(&self, u: NodeId) -> Vec<NodeId> {
        self.children[u].clone()
    }
}

fn neighbours<T: RootedTree + ?Sized>(t: &T, u: NodeId) -> Vec<NodeId> {
    let mut out: Vec<NodeId> = t.parent_of(u).into_iter().collect();
    out.extend(t.child_ids(u));
    out
}

/// Builds the decomposition by repeated centroid removal, one BFS per
/// component.
pub fn centroid_decompose<T: RootedTree + ?Sized>(st: &T) -> CentroidTree {
    let n = st.node_count();
    let mut ct = CentroidTree {
        root: 0,
        parent: vec![None; n],
        children: vec![Vec::new(); n],
        level: vec![0; n],
        component_size: vec![0; n],
    };
    let mut removed = vec![false; n];
    let mut size = vec![0usize; n];
    let mut heaviest = vec![0usize; n];
    let mut bfs_parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::from([(st.root(), None::<NodeId>, 0usize)]);

    while let Some((entry, up, level)) = queue.pop_front() {
        order.clear();
        order.push(entry);
        bfs_parent[entry] = usize::MAX;
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for y in neighbours(st, x) {
                if !removed[y] && y != bfs_parent[x] {
                    bfs_parent[y] = x;
                    order.push(y);
                }
            }
        }
        let m = order.len();
        for &x in &order {
            size[x] = 1;
            heaviest[x] = 0;
        }
        for &x in order.iter().rev() {
            let p = bfs_parent[x];
            if p != usize::MAX {
                size[p] += size[x];
                heaviest[p] = heaviest[p].max(size[x]);
            }
        }
        let c = order
            .iter()
            .copied()
            .filter(|&x| 2 * heaviest[x].max(m - size[x]) <= m)
            .min()
            .expect("every tree has a centroid");

        removed[c] = true;
        ct.parent[c] = up;
        ct.level[c] = level;
        ct.component_size[c] = m;
        match up {
            Some(p) => ct.children[p].push(c),
            None => ct.root = c,
        }
        for y in neighbours(st, c) {
            if !removed[y] {
                queue.push_back((y, Some(c), level + 1));
            }
        }
    }
    ct
}

impl CentroidTree {
    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, u: NodeId) -> Option<NodeId> {
        self.parent[u]
    }

    /// Decomposition children of `u`: the component holding `u`'s
    /// suffix-tree parent first (if any), then the components below `u` in
    /// order of their first edge symbol.
    pub fn children(&self, u: NodeId) -> &[NodeId] {
        &self.children[u]
    }

    pub fn level(&self, u: NodeId) -> usize {
        self.level[u]
    }

    /// Size of the component in which `u` was chosen.
    pub fn component_size(&self, u: NodeId) -> usize {
        self.component_size[u]
    }

    /// Number of levels.
    pub fn height(&self) -> usize {
        self.level.iter().max().map_or(0, |&l| l + 1)
    }

    /// The decomposition child of `u` whose component contains `v`, or `None`
    /// if `v == u` or `v` lies outside `u`'s component.
    pub fn component_of(&self, u: NodeId, v: NodeId) -> Result<Option<NodeId>> {
        for x in [u, v] {
            if x >= self.node_count() {
                return Err(Error::UnknownNode(x));
            }
        }
        if self.level[v] <= self.level[u] {
            return Ok(None);
        }
        let mut x = v;
        while self.level[x] > self.level[u] + 1 {
            x = self.parent[x].expect("non-root has a parent");
        }
        Ok((self.parent[x] == Some(u)).then_some(x))
    }

    /// Checks the decomposition against `st` from scratch: every node appears
    /// once, each component is connected, component sizes at least halve per
    /// level, and the height is at most `floor(log2 N) + 1`.
    pub fn check_invariants<T: RootedTree + ?Sized>(
        &self,
        st: &T,
    ) -> std::result::Result<(), String> {
        let n = st.node_count();
        if self.node_count() != n {
            return Err(format!("decomposes {} of {n} nodes", self.node_count()));
        }
        let roots = (0..n).filter(|&u| self.parent[u].is_none()).count();
        if roots != 1 || self.parent[self.root].is_some() {
            return Err(format!("{roots} roots"));
        }
        let mut by_level: Vec<NodeId> = (0..n).collect();
        by_level.sort_by_key(|&u| std::cmp::Reverse(self.level[u]));
        let mut desc = vec![1usize; n];
        for &u in &by_level {
            if let Some(p) = self.parent[u] {
                if self.level[p] + 1 != self.level[u] {
                    return Err(format!("node {u} has inconsistent level"));
                }
                desc[p] += desc[u];
            }
        }
        if desc[self.root] != n {
            return Err("decomposition does not reach every node".into());
        }
        // A set of k tree nodes is connected iff it spans k - 1 tree edges.
        let mut inner_edges = vec![0usize; n];
        for v in 0..n {
            let Some(p) = st.parent_of(v) else { continue };
            let (hi, lo) = if self.level[p] < self.level[v] {
                (p, v)
            } else {
                (v, p)
            };
            let mut x = lo;
            while self.level[x] > self.level[hi] {
                x = self.parent[x].expect("non-root has a parent");
            }
            if x != hi {
                return Err(format!("edge {p}-{v} crosses components"));
            }
            let mut w = Some(hi);
            while let Some(a) = w {
                inner_edges[a] += 1;
                w = self.parent[a];
            }
        }
        for u in 0..n {
            if inner_edges[u] + 1 != desc[u] {
                return Err(format!("component of {u} is disconnected"));
            }
            if desc[u] != self.component_size[u] {
                return Err(format!("component of {u} has wrong recorded size"));
            }
            for &c in &self.children[u] {
                if 2 * desc[c] > desc[u] {
                    return Err(format!(
                        "child component {c} of size {} exceeds half of {}",
                        desc[c], desc[u]
                    ));
                }
            }
        }
        let limit = n.ilog2() as usize + 1;
        if self.height() > limit {
            return Err(format!("height {} exceeds {limit}", self.height()));
        }
        Ok(())
    }

    /// Indented listing of the decomposition: node id, locus interval, locus.
    pub fn dump(&self, st: &SuffixTree) -> String {
        let mut out = String::new();
        let mut stack = vec![self.root];
        while let Some(u) = stack.pop() {
            let iv = st.locus_interval(u).expect("live node");
            let _ = writeln!(
                out,
                "{:indent$}#{u} {iv} {}",
                "",
                letters(st.locus(u)),
                indent = 2 * self.level[u]
            );
            stack.extend(self.children[u].iter().rev());
        }
        out
    }
}

impl CentroidSearch for &CentroidTree {
    fn root(&mut self) -> NodeId {
        self.root
    }

    fn descend(&mut self, u: NodeId, toward: NodeId) -> Option<NodeId> {
        self.component_of(u, toward).expect("nodes of the tree")
    }
}

/// Counters kept by [`LazyCentroids`] for every centroid it selects.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CentroidAudit {
    pub centroids: u64,
    /// Centroids whose removal left a component larger than half.
    pub halving_violations: u64,
    /// Searches that visited more than `floor(log2 N) + 1` levels.
    pub depth_violations: u64,
    pub max_depth: usize,
}

impl CentroidAudit {
    pub fn merge(&mut self, other: &CentroidAudit) {
        self.centroids += other.centroids;
        self.halving_violations += other.halving_violations;
        self.depth_violations += other.depth_violations;
        self.max_depth = self.max_depth.max(other.max_depth);
    }

    pub fn is_clean(&self) -> bool {
        self.halving_violations == 0 && self.depth_violations == 0
    }
}

/// Reusable buffers for [`LazyCentroids`].
#[derive(Clone, Debug, Default)]
pub struct CentroidScratch {
    removed_weight: Vec<usize>,
    touched: Vec<NodeId>,
}

/// One root-to-leaf walk through the centroid decomposition of `st`,
/// computing each visited centroid on demand.
///
/// The current component is always a subtree of `st` rooted at `top` minus
/// the subtrees of already visited centroids below it ("holes");
/// `removed_weight[x]` is the number of hole nodes under `x`.
#[derive(Debug)]
pub struct LazyCentroids<'t> {
    st: &'t SuffixTree,
    top: NodeId,
    current: Option<NodeId>,
    depth: usize,
    scratch: CentroidScratch,
    audit: CentroidAudit,
}

impl<'t> LazyCentroids<'t> {
    pub fn new(st: &'t SuffixTree) -> Self {
        Self::with_scratch(st, CentroidScratch::default())
    }

    pub fn with_scratch(st: &'t SuffixTree, mut scratch: CentroidScratch) -> Self {
        if scratch.removed_weight.len() < st.node_count() {
            scratch.removed_weight.resize(st.node_count(), 0);
        }
        Self {
            st,
            top: st.root(),
            current: None,
            depth: 0,
            scratch,
            audit: CentroidAudit::default(),
        }
    }

    pub fn audit(&self) -> CentroidAudit {
        self.audit
    }

    /// Clears the buffers for the next walk and hands them back.
    pub fn into_scratch(mut self) -> CentroidScratch {
        for &x in &self.scratch.touched {
            self.scratch.removed_weight[x] = 0;
        }
        self.scratch.touched.clear();
        self.scratch
    }

    fn weight(&self, x: NodeId) -> usize {
        self.st.subtree_size(x) - self.scratch.removed_weight[x]
    }

    fn select(&mut self) -> NodeId {
        let st = self.st;
        let m = self.weight(self.top);
        let mut x = self.top;
        while let Some(&(_, y)) = st
            .children(x)
            .iter()
            .find(|&&(_, y)| 2 * self.weight(y) > m)
        {
            x = y;
        }
        // A child holding exactly half is a centroid too.
        let mut c = x;
        for &(_, y) in st.children(x) {
            if 2 * self.weight(y) == m && y < c {
                c = y;
            }
        }

        let heaviest_below = st
            .children(c)
            .iter()
            .map(|&(_, y)| self.weight(y))
            .max()
            .unwrap_or(0);
        let above = m - self.weight(c);
        self.audit.centroids += 1;
        if 2 * heaviest_below.max(above) > m {
            self.audit.halving_violations += 1;
        }
        self.depth += 1;
        self.audit.max_depth = self.audit.max_depth.max(self.depth);
        if self.depth == st.node_count().ilog2() as usize + 2 {
            self.audit.depth_violations += 1;
        }
        self.current = Some(c);
        c
    }
}

impl CentroidSearch for LazyCentroids<'_> {
    fn root(&mut self) -> NodeId {
        assert!(self.current.is_none(), "a walk starts at the root once");
        self.select()
    }

    fn descend(&mut self, u: NodeId, toward: NodeId) -> Option<NodeId> {
        assert_eq!(self.current, Some(u), "descend from the current centroid");
        if self.st.parent(toward) == Some(u) {
            if self.weight(toward) == 0 {
                return None;
            }
            self.top = toward;
        } else {
            assert_eq!(self.st.parent(u), Some(toward), "toward must neighbour u");
            if u == self.top {
                return None;
            }
            let w = self.weight(u);
            let mut x = u;
            loop {
                self.scratch.removed_weight[x] += w;
                self.scratch.touched.push(x);
                if x == self.top {
                    break;
                }
                x = self.st.parent(x).expect("top is an ancestor");
            }
        }
        Some(self.select())
    }
}
