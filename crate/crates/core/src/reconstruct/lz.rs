use super::extend::{Extender, Probe};
use super::search::gallop;
use crate::error::Result;
use crate::structures::{
    CentroidAudit, CentroidScratch, CentroidSearch, LazyCentroids, NodeId, SuffixTree,
};
use crate::text::Symbol;

/// Finds a longest string `t` spelled by a path of `st` such that
/// `extend(t)` holds, assuming `extend` is closed under taking prefixes.
///
/// The walk follows the centroid decomposition. At a visited node `u` the
/// locus is tested; if it holds, children of `u` are probed in ascending
/// symbol order with `locus(u) · c` and the walk moves towards the first
/// child that holds; otherwise it moves towards `u`'s parent. The deepest
/// holding node found is then extended along the chosen edge by a galloping
/// search. Every argument passed to `extend` is a slice of `st.text()`.
///
/// Returns the empty string if no non-empty path holds.
pub fn lz_phrase_search<C: CentroidSearch + ?Sized>(
    st: &SuffixTree,
    centroids: &mut C,
    mut extend: impl FnMut(&[Symbol]) -> bool,
) -> Vec<Symbol> {
    let text = st.text();
    let mut best = st.root();
    let mut toward: Option<NodeId> = None;
    let mut u = centroids.root();
    loop {
        let locus = st.locus_range(u);
        let next = if locus.is_empty() || extend(&text[locus.clone()]) {
            best = u;
            let depth = locus.len();
            let child = st.children(u).iter().map(|&(_, v)| v).find(|&v| {
                let start = st.locus_range(v).start;
                extend(&text[start..start + depth + 1])
            });
            toward = child;
            match child {
                Some(v) => centroids.descend(u, v),
                None => return text[locus].to_vec(),
            }
        } else {
            match st.parent(u) {
                Some(p) => centroids.descend(u, p),
                None => None,
            }
        };
        match next {
            Some(x) => u = x,
            None => break,
        }
    }

    let base = st.locus_range(best);
    let Some(v) = toward else {
        return text[base].to_vec();
    };
    let start = st.locus_range(v).start;
    let depth = base.len();
    let edge = st.string_depth(v) - depth;
    let k = gallop(1, Some(edge.saturating_sub(1).max(1)), |k| {
        extend(&text[start..start + depth + k])
    });
    text[start..start + depth + k].to_vec()
}

/// Extends `R` phrase by phrase until neither a phrase nor a fresh symbol
/// holds. Returns the number of phrases appended.
pub(crate) fn lz_phase<P: Probe>(
    ext: &mut Extender<P>,
    sigma: u32,
    audit: &mut CentroidAudit,
) -> Result<usize> {
    let mut st = SuffixTree::from_symbols(sigma, ext.known())?;
    let mut seen = vec![false; sigma as usize + 1];
    for &c in ext.known() {
        seen[c as usize] = true;
    }
    let mut scratch = CentroidScratch::default();
    let mut phrases = 0;
    loop {
        let mut centroids = LazyCentroids::with_scratch(&st, scratch);
        let mut phrase = lz_phrase_search(&st, &mut centroids, |t| ext.test(t));
        audit.merge(&centroids.audit());
        scratch = centroids.into_scratch();
        if phrase.is_empty() {
            if let Some(c) = (1..=sigma).find(|&c| !seen[c as usize] && ext.test(&[c])) {
                phrase.push(c);
            }
        }
        if phrase.is_empty() {
            return Ok(phrases);
        }
        ext.commit(&phrase);
        st.extend_from(&phrase)?;
        for &c in &phrase {
            seen[c as usize] = true;
        }
        phrases += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::centroid_decompose;
    use crate::text::Text;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn sym(s: &str) -> Vec<Symbol> {
        Text::from_letters(s).unwrap().into_symbols()
    }

    fn contains(hay: &[Symbol], q: &[Symbol]) -> bool {
        q.is_empty() || hay.windows(q.len()).any(|w| w == q)
    }

    /// All substrings `t` of `r` with `r · t` in `hidden`.
    fn holding(r: &[Symbol], hidden: &[Symbol]) -> BTreeSet<Vec<Symbol>> {
        let mut out = BTreeSet::new();
        for i in 0..r.len() {
            for j in i + 1..=r.len() {
                let mut q = r.to_vec();
                q.extend_from_slice(&r[i..j]);
                if contains(hidden, &q) {
                    out.insert(r[i..j].to_vec());
                }
            }
        }
        out
    }

    fn search(
        r: &[Symbol],
        sigma: u32,
        mut extend: impl FnMut(&[Symbol]) -> bool,
    ) -> (Vec<Symbol>, usize) {
        let st = SuffixTree::from_symbols(sigma, r).unwrap();
        let mut lazy = LazyCentroids::new(&st);
        let mut calls = 0;
        let phrase = lz_phrase_search(&st, &mut lazy, |t| {
            calls += 1;
            extend(t)
        });
        assert!(lazy.audit().is_clean());
        // The full decomposition walks the same way.
        let ct = centroid_decompose(&st);
        let again = lz_phrase_search(&st, &mut &ct, |t| extend(t));
        assert_eq!(phrase, again);
        (phrase, calls)
    }

    fn substring_extend<'a>(
        r: &'a [Symbol],
        hidden: &'a [Symbol],
    ) -> impl FnMut(&[Symbol]) -> bool + 'a {
        move |t| {
            let mut q = r.to_vec();
            q.extend_from_slice(t);
            contains(hidden, &q)
        }
    }

    #[test]
    fn running_example_phrase() {
        let r = sym("AAABCABCABCAAA");
        let mut hidden = r.clone();
        hidden.extend(sym("ABCABB"));
        hidden.extend(&r);
        let (phrase, _) = search(&r, 3, substring_extend(&r, &hidden));
        assert_eq!(Text::new(phrase, 3).unwrap().to_letters(), "abcab");
    }

    #[test]
    fn no_repeat_gives_empty_phrase() {
        let r = sym("a");
        let hidden = sym("ab");
        let (phrase, calls) = search(&r, 2, substring_extend(&r, &hidden));
        assert!(phrase.is_empty());
        assert_eq!(calls, 1);
    }

    #[test]
    fn empty_tree_asks_nothing() {
        let (phrase, calls) = search(&[], 2, |_| panic!("no query expected"));
        assert!(phrase.is_empty());
        assert_eq!(calls, 0);
    }

    #[test]
    fn periodic_text_extends_to_full_copy() {
        let r = sym("abab");
        let hidden = sym("abababab");
        let (phrase, _) = search(&r, 2, substring_extend(&r, &hidden));
        assert_eq!(phrase, r);
    }

    proptest! {
        /// With prefix queries the holding strings form a chain, so the
        /// search must return the longest one.
        #[test]
        fn prefix_phrase_is_longest_holding(
            hidden in proptest::collection::vec(1u32..=3, 2..80),
            cut in 1usize..79,
        ) {
            let cut = cut.min(hidden.len() - 1);
            let r = &hidden[..cut];
            let extend = |t: &[Symbol]| hidden[cut..].starts_with(t);
            let (phrase, calls) = search(r, 3, extend);
            let expected = (0..=hidden.len() - cut)
                .rev()
                .find(|&l| contains(r, &hidden[cut..cut + l]))
                .unwrap();
            prop_assert_eq!(&phrase[..], &hidden[cut..cut + expected]);
            let n = 2 * cut + 1;
            let bound = 4 * ((n as f64).log2() as usize + 2) + 2 * ((expected + 1) as f64).log2().ceil() as usize + 2;
            prop_assert!(calls <= bound, "calls {calls} > {bound}");
        }

        /// With substring queries the result is a maximal holding string.
        #[test]
        fn substring_phrase_is_maximal(
            hidden in proptest::collection::vec(1u32..=2, 2..40),
            i in 0usize..40,
            len in 1usize..20,
        ) {
            let i = i.min(hidden.len() - 1);
            let r = &hidden[i..(i + len).min(hidden.len())];
            let ok = holding(r, &hidden);
            let (phrase, _) = search(r, 2, substring_extend(r, &hidden));
            if ok.is_empty() {
                prop_assert!(phrase.is_empty());
            } else {
                prop_assert!(ok.contains(&phrase));
                for c in 1..=2 {
                    let mut longer = phrase.clone();
                    longer.push(c);
                    prop_assert!(!ok.contains(&longer));
                }
            }
        }
    }
}
