//! Topology classification.
//!
//! Kinds are tried in a fixed order and the first match wins:
//! `Empty`, `SingleVertex`, `Complete`, `CompleteBipartite`, `Star`,
//! `BiStar`, `TriStar`, `Path`, `Caterpillar`, `Other`.
//!
//! Overlapping names are resolved by that order plus two size conventions:
//! `K_2` is `Complete(2)` and `K_{1,n}` is a star, so `CompleteBipartite`
//! needs at least two vertices on each side.

use crate::graph::{Graph, VertexId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum TopologyClass {
    /// No edges, and either zero or at least two vertices.
    Empty {
        order: usize,
    },
    SingleVertex,
    Complete {
        order: usize,
    },
    /// Part sizes, smaller first.
    CompleteBipartite {
        left: usize,
        right: usize,
    },
    Star {
        center: VertexId,
        leaves: usize,
    },
    /// Centers in path order, lower-id end first; `leaves[i]` belongs to `centers[i]`.
    BiStar {
        centers: [VertexId; 2],
        leaves: [usize; 2],
    },
    TriStar {
        centers: [VertexId; 3],
        leaves: [usize; 3],
    },
    /// Path graph on `order` vertices.
    Path {
        order: usize,
    },
    Caterpillar,
    Other,
}

/// Label-free summary of a [`TopologyClass`]: vertex ids dropped and
/// mirror-symmetric parameters normalised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Shape {
    Empty(usize),
    SingleVertex,
    Complete(usize),
    CompleteBipartite(usize, usize),
    Star(usize),
    BiStar(usize, usize),
    TriStar(usize, usize, usize),
    Path(usize),
    Caterpillar,
    Other,
}

impl TopologyClass {
    pub fn shape(&self) -> Shape {
        match *self {
            TopologyClass::Empty { order } => Shape::Empty(order),
            TopologyClass::SingleVertex => Shape::SingleVertex,
            TopologyClass::Complete { order } => Shape::Complete(order),
            TopologyClass::CompleteBipartite { left, right } => Shape::CompleteBipartite(left, right),
            TopologyClass::Star { leaves, .. } => Shape::Star(leaves),
            TopologyClass::BiStar { leaves: [a, b], .. } => Shape::BiStar(a.min(b), a.max(b)),
            TopologyClass::TriStar { leaves: [a, b, c], .. } => {
                let (x, z) = if (a, c) <= (c, a) { (a, c) } else { (c, a) };
                Shape::TriStar(x, b, z)
            }
            TopologyClass::Path { order } => Shape::Path(order),
            TopologyClass::Caterpillar => Shape::Caterpillar,
            TopologyClass::Other => Shape::Other,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            TopologyClass::Empty { .. } => "Empty",
            TopologyClass::SingleVertex => "SingleVertex",
            TopologyClass::Complete { .. } => "Complete",
            TopologyClass::CompleteBipartite { .. } => "CompleteBipartite",
            TopologyClass::Star { .. } => "Star",
            TopologyClass::BiStar { .. } => "BiStar",
            TopologyClass::TriStar { .. } => "TriStar",
            TopologyClass::Path { .. } => "Path",
            TopologyClass::Caterpillar => "Caterpillar",
            TopologyClass::Other => "Other",
        }
    }

    /// Centers of a star-family class, in reporting order.
    pub fn centers(&self) -> Vec<VertexId> {
        match self {
            TopologyClass::Star { center, .. } => vec![*center],
            TopologyClass::BiStar { centers, .. } => centers.to_vec(),
            TopologyClass::TriStar { centers, .. } => centers.to_vec(),
            _ => vec![],
        }
    }
}

impl fmt::Display for TopologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologyClass::Empty { order } => write!(f, "Empty({order})"),
            TopologyClass::SingleVertex => write!(f, "SingleVertex"),
            TopologyClass::Complete { order } => write!(f, "Complete({order})"),
            TopologyClass::CompleteBipartite { left, right } => write!(f, "CompleteBipartite({left},{right})"),
            TopologyClass::Star { center, leaves } => write!(f, "Star(center {center}, {leaves} leaves)"),
            TopologyClass::BiStar { centers, leaves } => write!(
                f,
                "BiStar(centers {},{}; leaves {},{})",
                centers[0], centers[1], leaves[0], leaves[1]
            ),
            TopologyClass::TriStar { centers, leaves } => write!(
                f,
                "TriStar(centers {},{},{}; leaves {},{},{})",
                centers[0], centers[1], centers[2], leaves[0], leaves[1], leaves[2]
            ),
            TopologyClass::Path { order } => write!(f, "Path({order})"),
            TopologyClass::Caterpillar => write!(f, "Caterpillar"),
            TopologyClass::Other => write!(f, "Other"),
        }
    }
}

fn is_tree(g: &Graph) -> bool {
    g.order() >= 1 && g.size() == g.order() - 1 && g.is_connected()
}

fn degree(g: &Graph, v: VertexId) -> usize {
    g.neighborhood(v).map(|n| n.len()).unwrap_or(0)
}

pub(crate) fn pendant_count(g: &Graph, v: VertexId) -> usize {
    g.neighborhood(v)
        .map(|ns| ns.iter().filter(|&&u| degree(g, u) == 1).count())
        .unwrap_or(0)
}

/// Part sizes `(color 0, color 1)` when `g` is a connected complete bipartite
/// graph with both parts non-empty.
pub fn complete_bipartite_parts(g: &Graph) -> Option<(usize, usize)> {
    if g.order() < 2 || !g.is_connected() {
        return None;
    }
    let col = g.bicoloring().ok()?;
    let a = col.class(0).len();
    let b = col.class(1).len();
    (a > 0 && b > 0 && g.size() == a * b).then_some((a, b))
}

/// True for trees with at most one non-leaf vertex: `K_1`, `K_2` and every
/// star `S_n`.
pub fn is_star_graph(g: &Graph) -> bool {
    is_tree(g) && g.vertices().filter(|&v| degree(g, v) > 1).count() <= 1
}

/// Orders the centers of a path-shaped spine so the lower-id end comes first.
fn spine_order(g: &Graph, spine: &BTreeSet<VertexId>) -> Vec<VertexId> {
    let inner = |v: VertexId| g.neighborhood(v).unwrap().iter().filter(|u| spine.contains(u)).count();
    let start = spine
        .iter()
        .copied()
        .filter(|&v| inner(v) <= 1)
        .min()
        .expect("a finite path has an end");
    let mut order = vec![start];
    let mut prev = None;
    let mut cur = start;
    while order.len() < spine.len() {
        let next = g
            .neighborhood(cur)
            .unwrap()
            .iter()
            .copied()
            .find(|u| spine.contains(u) && Some(*u) != prev)
            .expect("spine is connected");
        order.push(next);
        prev = Some(cur);
        cur = next;
    }
    order
}

pub fn classify_topology(g: &Graph) -> TopologyClass {
    let n = g.order();
    let m = g.size();
    if n == 1 {
        return TopologyClass::SingleVertex;
    }
    if m == 0 {
        return TopologyClass::Empty { order: n };
    }
    if m == n * (n - 1) / 2 {
        return TopologyClass::Complete { order: n };
    }
    if let Some((a, b)) = complete_bipartite_parts(g) {
        if a >= 2 && b >= 2 {
            return TopologyClass::CompleteBipartite {
                left: a.min(b),
                right: a.max(b),
            };
        }
    }
    if !is_tree(g) {
        return TopologyClass::Other;
    }
    let spine: BTreeSet<VertexId> = g.vertices().filter(|&v| degree(g, v) > 1).collect();
    match spine.len() {
        1 => {
            let center = *spine.first().unwrap();
            return TopologyClass::Star { center, leaves: n - 1 };
        }
        2 => {
            let c = spine_order(g, &spine);
            return TopologyClass::BiStar {
                centers: [c[0], c[1]],
                leaves: [pendant_count(g, c[0]), pendant_count(g, c[1])],
            };
        }
        3 => {
            let c = spine_order(g, &spine);
            let leaves = [pendant_count(g, c[0]), pendant_count(g, c[1]), pendant_count(g, c[2])];
            if leaves.iter().all(|&l| l >= 1) {
                return TopologyClass::TriStar {
                    centers: [c[0], c[1], c[2]],
                    leaves,
                };
            }
        }
        _ => {}
    }
    if g.vertices().all(|v| degree(g, v) <= 2) {
        return TopologyClass::Path { order: n };
    }
    // The non-leaf vertices of a tree induce a subtree; it is a path iff
    // nobody in it has more than two spine neighbors.
    let spine_is_path = spine
        .iter()
        .all(|&v| g.neighborhood(v).unwrap().iter().filter(|u| spine.contains(u)).count() <= 2);
    if spine_is_path {
        TopologyClass::Caterpillar
    } else {
        TopologyClass::Other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(u32, u32)]) -> Graph {
        Graph::from_edges(n, e).unwrap()
    }

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn examples() {
        let s5 = g(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        assert_eq!(
            classify_topology(&s5),
            TopologyClass::Star {
                center: v(0),
                leaves: 5
            }
        );

        // centers 0 and 1, 2 and 3 leaves
        let bi = g(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (1, 6)]);
        assert_eq!(
            classify_topology(&bi),
            TopologyClass::BiStar {
                centers: [v(0), v(1)],
                leaves: [2, 3]
            }
        );

        let k23 = g(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]);
        assert_eq!(
            classify_topology(&k23),
            TopologyClass::CompleteBipartite { left: 2, right: 3 }
        );
    }

    #[test]
    fn degenerate_sizes() {
        assert_eq!(classify_topology(&Graph::new()), TopologyClass::Empty { order: 0 });
        assert_eq!(classify_topology(&Graph::with_vertices(1)), TopologyClass::SingleVertex);
        assert_eq!(
            classify_topology(&Graph::with_vertices(3)),
            TopologyClass::Empty { order: 3 }
        );
        assert_eq!(
            classify_topology(&g(2, &[(0, 1)])),
            TopologyClass::Complete { order: 2 }
        );
        assert_eq!(
            classify_topology(&g(3, &[(0, 1), (1, 2)])),
            TopologyClass::Star {
                center: v(1),
                leaves: 2
            }
        );
        // P4 is the smallest bi-star
        assert_eq!(
            classify_topology(&g(4, &[(0, 1), (1, 2), (2, 3)])),
            TopologyClass::BiStar {
                centers: [v(1), v(2)],
                leaves: [1, 1]
            }
        );
        assert_eq!(
            classify_topology(&g(5, &[(0, 1), (1, 2), (2, 3), (3, 4)])),
            TopologyClass::Path { order: 5 }
        );
        // C4 = K_{2,2}
        assert_eq!(
            classify_topology(&g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])),
            TopologyClass::CompleteBipartite { left: 2, right: 2 }
        );
        assert_eq!(
            classify_topology(&g(5, &[(0, 1), (1, 2), (2, 0), (3, 4)])),
            TopologyClass::Other
        );
    }

    #[test]
    fn tri_star_and_caterpillar() {
        // spine 3-0-5 (ids chosen so the lower-id end is 3)
        let t = g(9, &[(3, 0), (0, 5), (3, 1), (0, 2), (5, 4), (5, 6), (3, 7), (0, 8)]);
        assert_eq!(
            classify_topology(&t),
            TopologyClass::TriStar {
                centers: [v(3), v(0), v(5)],
                leaves: [2, 2, 2]
            }
        );
        // spine of four with leaves everywhere
        let c = g(8, &[(0, 1), (1, 2), (2, 3), (0, 4), (1, 5), (2, 6), (3, 7)]);
        assert_eq!(classify_topology(&c), TopologyClass::Caterpillar);
        // spider with three long legs is not a caterpillar
        let s = g(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]);
        assert_eq!(classify_topology(&s), TopologyClass::Other);
    }

    #[test]
    fn star_predicate_and_bipartite_parts() {
        assert!(is_star_graph(&Graph::with_vertices(1)));
        assert!(is_star_graph(&g(2, &[(0, 1)])));
        assert!(!is_star_graph(&g(4, &[(0, 1), (1, 2), (2, 3)])));
        assert_eq!(complete_bipartite_parts(&g(2, &[(0, 1)])), Some((1, 1)));
        assert_eq!(complete_bipartite_parts(&g(4, &[(0, 1), (0, 2), (0, 3)])), Some((1, 3)));
        assert_eq!(complete_bipartite_parts(&g(4, &[(0, 1), (1, 2), (2, 3)])), None);
    }
}
