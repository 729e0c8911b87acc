//! Bitmask adjacency for small graphs, used by canonical labelling and the
//! LC-orbit search.

use crate::graph::{Graph, VertexId};

pub const MAX_DENSE: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DenseGraph {
    pub n: usize,
    pub adj: [u16; MAX_DENSE],
}

impl DenseGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_DENSE);
        DenseGraph { n, adj: [0; MAX_DENSE] }
    }

    /// Dense copy of `g`; vertex `i` is the `i`-th smallest id. Returns the id
    /// order alongside.
    pub fn from_graph(g: &Graph) -> (Self, Vec<VertexId>) {
        let ids: Vec<VertexId> = g.vertices().collect();
        let mut d = DenseGraph::empty(ids.len());
        for (u, v) in g.edges() {
            let a = ids.binary_search(&u).unwrap();
            let b = ids.binary_search(&v).unwrap();
            d.add_edge(a, b);
        }
        (d, ids)
    }

    pub fn to_graph(&self) -> Graph {
        let mut e = Vec::new();
        for a in 0..self.n {
            for b in a + 1..self.n {
                if self.has_edge(a, b) {
                    e.push((a as u32, b as u32));
                }
            }
        }
        Graph::from_edges(self.n, &e).expect("dense graphs are simple")
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a] >> b & 1 == 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        debug_assert!(a != b);
        self.adj[a] |= 1 << b;
        self.adj[b] |= 1 << a;
    }

    #[inline]
    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    pub fn edge_count(&self) -> usize {
        self.adj[..self.n]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn local_complement(&self, v: usize) -> Self {
        let mut out = *self;
        let nv = self.adj[v];
        let mut rest = nv;
        while rest != 0 {
            let u = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out.adj[u] ^= nv & !(1 << u);
        }
        out
    }

    /// Relabelled copy: vertex `v` moves to position `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = DenseGraph::empty(self.n);
        for a in 0..self.n {
            let mut rest = self.adj[a];
            while rest != 0 {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                out.adj[perm[a]] |= 1 << perm[b];
            }
        }
        out
    }

    /// Upper triangle packed row by row: bit for pair `(i, j)`, `i < j`, in
    /// lexicographic pair order starting from the most significant used bit.
    pub fn code(&self) -> u128 {
        let mut c = 0u128;
        for i in 0..self.n {
            for j in i + 1..self.n {
                c = (c << 1) | self.has_edge(i, j) as u128;
            }
        }
        c
    }

    /// Connected components as vertex masks, ordered by lowest member.
    pub fn components(&self) -> Vec<u16> {
        let mut seen = 0u16;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen >> s & 1 == 1 {
                continue;
            }
            let mut comp = 1u16 << s;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u16;
                let mut rest = frontier;
                while rest != 0 {
                    let u = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    next |= self.adj[u];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on the vertices of `mask`, renumbered in order.
    pub fn induced(&self, mask: u16) -> Self {
        let verts: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut out = DenseGraph::empty(verts.len());
        for (i, &a) in verts.iter().enumerate() {
            for (j, &b) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    out.add_edge(i, j);
                }
            }
        }
        out
    }
}
