//! Suffix tree of the reconstructed text and its centroid decomposition.

mod centroid;
mod suffix_tree;

pub use centroid::{
    centroid_decompose, CentroidAudit, CentroidScratch, CentroidSearch, CentroidTree,
    LazyCentroids, ParentTree, RootedTree,
};
pub use suffix_tree::{LocusInterval, NodeId, SuffixTree, ROOT};
