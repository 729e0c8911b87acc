//! Constructors for the labelled topologies used throughout the crate.
//!
//! Numbering: switches take ids `0..m` in path order, then the leaves follow,
//! grouped by switch in ascending order. Leaf `j` (1-based) of switch `i` is
//! labelled `K{j}_{i}`.

use crate::error::{Error, Result};
use crate::graph::{Graph, Role, VertexId};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiStarSpec {
    pub leaf_counts: Vec<usize>,
}

impl MultiStarSpec {
    pub fn new(leaf_counts: Vec<usize>) -> Result<Self> {
        if leaf_counts.is_empty() {
            return Err(Error::EmptySpec);
        }
        Ok(MultiStarSpec { leaf_counts })
    }

    pub fn homogeneous(m: usize, n: usize) -> Result<Self> {
        MultiStarSpec::new(vec![n; m])
    }

    /// Number of switches.
    pub fn m(&self) -> usize {
        self.leaf_counts.len()
    }

    /// Total vertex count, switches plus leaves.
    pub fn total_vertices(&self) -> usize {
        self.m() + self.leaf_counts.iter().sum::<usize>()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.leaf_counts.windows(2).all(|w| w[0] == w[1])
    }

    /// Id of leaf `j` (0-based) of switch `i` under the builder numbering.
    pub fn leaf_id(&self, i: usize, j: usize) -> VertexId {
        let before: usize = self.leaf_counts[..i].iter().sum();
        VertexId((self.m() + before + j) as u32)
    }

    pub fn leaves_of(&self, i: usize) -> Vec<VertexId> {
        (0..self.leaf_counts[i]).map(|j| self.leaf_id(i, j)).collect()
    }
}

pub fn build_multi_star(spec: &MultiStarSpec) -> Graph {
    let m = spec.m();
    let mut g = Graph::new();
    for i in 0..m {
        g.add_labeled_vertex(VertexId(i as u32), Role::Switch(i)).unwrap();
    }
    for i in 1..m {
        g.add_edge(VertexId(i as u32 - 1), VertexId(i as u32)).unwrap();
    }
    for (i, &count) in spec.leaf_counts.iter().enumerate() {
        for j in 0..count {
            let v = spec.leaf_id(i, j);
            g.add_labeled_vertex(
                v,
                Role::Client {
                    switch: i,
                    index: j + 1,
                },
            )
            .unwrap();
            g.add_edge(VertexId(i as u32), v).unwrap();
        }
    }
    g
}

pub fn build_star(n: usize) -> Graph {
    build_multi_star(&MultiStarSpec { leaf_counts: vec![n] })
}

pub fn build_bi_star(n1: usize, n2: usize) -> Graph {
    build_multi_star(&MultiStarSpec {
        leaf_counts: vec![n1, n2],
    })
}

pub fn build_tri_star(n1: usize, n2: usize, n3: usize) -> Graph {
    build_multi_star(&MultiStarSpec {
        leaf_counts: vec![n1, n2, n3],
    })
}

/// Path of `m` switches without leaves.
pub fn build_path(m: usize) -> Graph {
    build_multi_star(&MultiStarSpec {
        leaf_counts: vec![0; m],
    })
}

pub fn build_complete(n: usize) -> Graph {
    let mut g = Graph::with_vertices(n);
    for a in 0..n as u32 {
        for b in a + 1..n as u32 {
            g.add_edge(VertexId(a), VertexId(b)).unwrap();
        }
    }
    g
}

/// `K_{n1,n2}` with the `n1` side on ids `0..n1`.
pub fn build_complete_bipartite(n1: usize, n2: usize) -> Graph {
    let mut g = Graph::with_vertices(n1 + n2);
    for a in 0..n1 {
        for b in n1..n1 + n2 {
            g.add_edge(VertexId(a as u32), VertexId(b as u32)).unwrap();
        }
    }
    g
}
