//! Canonical labelling of small graphs.
//!
//! Individualisation-refinement search: colour refinement down to an equitable
//! ordered partition, branch on the first non-singleton cell, and keep the
//! lexicographically smallest packed adjacency matrix among the leaves of the
//! search tree.
//! Automorphisms discovered at equal leaves prune sibling branches that lie in
//! the same orbit of the prefix stabiliser. The result is exact: two graphs get
//! the same [`CanonForm`] iff they are isomorphic.

use crate::dense::DenseGraph;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_CANON: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonForm {
    n: usize,
    bits: Vec<u64>,
}

impl CanonForm {
    pub fn order(&self) -> usize {
        self.n
    }
}

/// Canonical form plus the labelling that produced it (`perm[v]` = canonical
/// position of vertex `v`).
#[derive(Debug, Clone)]
pub struct Canonical {
    pub form: CanonForm,
    pub perm: Vec<usize>,
}

pub fn canonical_dense(g: &DenseGraph) -> CanonForm {
    let rows: Vec<u128> = g.adj[..g.n].iter().map(|&r| r as u128).collect();
    canonize(&rows).form
}

pub fn canonical_graph(g: &Graph) -> Result<Canonical> {
    let ids: Vec<_> = g.vertices().collect();
    if ids.len() > MAX_CANON {
        return Err(Error::TooManyVertices {
            count: ids.len(),
            limit: MAX_CANON,
        });
    }
    let mut rows = vec![0u128; ids.len()];
    for (u, v) in g.edges() {
        let a = ids.binary_search(&u).unwrap();
        let b = ids.binary_search(&v).unwrap();
        rows[a] |= 1 << b;
        rows[b] |= 1 << a;
    }
    Ok(canonize(&rows))
}

/// Isomorphism test for labelled graphs (labels and ids ignored).
pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.order() != b.order() || a.size() != b.size() {
        return Ok(false);
    }
    Ok(canonical_graph(a)?.form == canonical_graph(b)?.form)
}

fn mask_of(cell: &[usize]) -> u128 {
    cell.iter().fold(0u128, |m, &v| m | 1 << v)
}

/// Splits cells by neighbour counts into every current cell until stable.
fn refine(rows: &[u128], cells: &mut Vec<Vec<usize>>) {
    loop {
        let masks: Vec<u128> = cells.iter().map(|c| mask_of(c)).collect();
        let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len());
        for cell in cells.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u32>, usize)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|m| (rows[v] & m).count_ones()).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        let stable = next.len() == cells.len();
        *cells = next;
        if stable {
            return;
        }
    }
}

fn pack(rows: &[u128], perm: &[usize]) -> Vec<u64> {
    let n = rows.len();
    let mut inv = vec![0usize; n];
    for (v, &p) in perm.iter().enumerate() {
        inv[p] = v;
    }
    let total = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u64; total.div_ceil(64)];
    let mut k = 0;
    for i in 0..n {
        let row = rows[inv[i]];
        for &vj in &inv[i + 1..n] {
            if row >> vj & 1 == 1 {
                bits[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    bits
}

struct Search<'a> {
    rows: &'a [u128],
    /// Code, labelling and individualised path of the first and best leaves.
    first: Option<(Vec<u64>, Vec<usize>, Vec<usize>)>,
    best: Option<(Vec<u64>, Vec<usize>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns the depth to unwind to when this leaf is equivalent to an
    /// earlier one.
    fn leaf(&mut self, cells: &[Vec<usize>], path: &[usize]) -> Option<usize> {
        let mut perm = vec![0usize; self.rows.len()];
        for (pos, cell) in cells.iter().enumerate() {
            perm[cell[0]] = pos;
        }
        let code = pack(self.rows, &perm);
        let Some(first) = &self.first else {
            self.first = Some((code.clone(), perm.clone(), path.to_vec()));
            self.best = Some((code, perm, path.to_vec()));
            return None;
        };
        let best = self.best.as_ref().unwrap();
        let reference = if code == first.0 {
            first
        } else if code == best.0 {
            best
        } else {
            if code < best.0 {
                self.best = Some((code, perm, path.to_vec()));
            }
            return None;
        };
        // rp^-1 . perm maps the graph onto itself
        let mut inv = vec![0usize; perm.len()];
        for (v, &p) in reference.1.iter().enumerate() {
            inv[p] = v;
        }
        let auto: Vec<usize> = perm.iter().map(|&p| inv[p]).collect();
        // the subtree hanging off the divergence point is the image of the
        // reference's subtree, so nothing below it can be new
        let diverge = path.iter().zip(&reference.2).take_while(|(a, b)| a == b).count();
        if auto.iter().enumerate().any(|(i, &j)| i != j) {
            self.autos.push(auto);
        }
        Some(diverge)
    }

    /// Orbit representative of every vertex under the automorphisms found so
    /// far that fix `prefix` pointwise.
    fn orbits(&self, prefix: &[usize]) -> Vec<usize> {
        let n = self.rows.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let nx = p[c];
                p[c] = r;
                c = nx;
            }
            r
        }
        for a in &self.autos {
            if prefix.iter().any(|&v| a[v] != v) {
                continue;
            }
            for (v, &av) in a.iter().enumerate().take(n) {
                let (x, y) = (find(&mut parent, v), find(&mut parent, av));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }

    fn run(&mut self, cells: Vec<Vec<usize>>, prefix: &mut Vec<usize>) -> Option<usize> {
        let Some(t) = cells.iter().position(|c| c.len() > 1) else {
            return self.leaf(&cells, prefix);
        };
        let depth = prefix.len();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[t] {
            if !tried.is_empty() {
                let orb = self.orbits(prefix);
                if tried.iter().any(|&w| orb[w] == orb[v]) {
                    continue;
                }
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(vec![v]);
            child.push(cells[t].iter().copied().filter(|&w| w != v).collect());
            child.extend_from_slice(&cells[t + 1..]);
            refine(self.rows, &mut child);
            prefix.push(v);
            let jump = self.run(child, prefix);
            prefix.pop();
            tried.push(v);
            if let Some(d) = jump {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }
}

fn canonize(rows: &[u128]) -> Canonical {
    let n = rows.len();
    if n == 0 {
        return Canonical {
            form: CanonForm { n, bits: vec![] },
            perm: vec![],
        };
    }
    let mut cells = vec![(0..n).collect::<Vec<_>>()];
    refine(rows, &mut cells);
    let mut s = Search {
        rows,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    s.run(cells, &mut Vec::new());
    let (bits, perm, _) = s.best.unwrap();
    Canonical {
        form: CanonForm { n, bits },
        perm,
    }
}
