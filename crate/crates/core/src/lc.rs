//! Local-complementation equivalence by orbit search.
//!
//! Two graphs are treated as equivalent when one can be turned into a graph
//! isomorphic to the other by a sequence of local complementations. The orbit
//! of each connected component is explored breadth-first over isomorphism
//! classes (canonical forms), from both ends at once, so the search stops as
//! soon as the two orbits meet.

use crate::canon::{canonical_dense, CanonForm};
use crate::dense::DenseGraph;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::Graph;
use std::collections::HashSet;

/// Largest vertex count accepted by the orbit search.
pub const MAX_LC_VERTICES: usize = 12;

/// Default bound on the number of isomorphism classes visited per component.
pub const DEFAULT_MAX_ORBIT: usize = 250_000;

pub fn are_lc_equivalent(g1: &Graph, g2: &Graph, max_orbit: usize) -> Result<bool> {
    are_lc_equivalent_with(g1, g2, max_orbit, Exec::default())
}

pub fn are_lc_equivalent_with(g1: &Graph, g2: &Graph, max_orbit: usize, exec: Exec) -> Result<bool> {
    if g1.order() != g2.order() {
        return Err(Error::SizeMismatch {
            left: g1.order(),
            right: g2.order(),
        });
    }
    if g1.order() > MAX_LC_VERTICES {
        return Err(Error::TooManyVertices {
            count: g1.order(),
            limit: MAX_LC_VERTICES,
        });
    }
    let (a, _) = DenseGraph::from_graph(g1);
    let (b, _) = DenseGraph::from_graph(g2);
    dense_lc_equivalent(&a, &b, max_orbit, exec)
}

pub(crate) fn dense_lc_equivalent(a: &DenseGraph, b: &DenseGraph, max_orbit: usize, exec: Exec) -> Result<bool> {
    // LC never changes the connected components, so equivalence splits into
    // a matching between components.
    let comps_a: Vec<DenseGraph> = a.components().into_iter().map(|m| a.induced(m)).collect();
    let mut comps_b: Vec<Option<DenseGraph>> = b.components().into_iter().map(|m| Some(b.induced(m))).collect();
    let mut sizes_a: Vec<usize> = comps_a.iter().map(|c| c.n).collect();
    let mut sizes_b: Vec<usize> = comps_b.iter().flatten().map(|c| c.n).collect();
    sizes_a.sort_unstable();
    sizes_b.sort_unstable();
    if sizes_a != sizes_b {
        return Ok(false);
    }
    'outer: for ca in &comps_a {
        for slot in comps_b.iter_mut() {
            let Some(cb) = slot else { continue };
            if cb.n == ca.n && connected_lc_equivalent(ca, cb, max_orbit, exec)? {
                *slot = None;
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

fn expand(frontier: &[DenseGraph], exec: Exec) -> Vec<Vec<(CanonForm, DenseGraph)>> {
    exec.map(frontier, |g| {
        (0..g.n)
            .filter(|&v| g.degree(v) >= 2)
            .map(|v| {
                let h = g.local_complement(v);
                (canonical_dense(&h), h)
            })
            .collect()
    })
}

fn connected_lc_equivalent(a: &DenseGraph, b: &DenseGraph, max_orbit: usize, exec: Exec) -> Result<bool> {
    if a.n <= 2 {
        return Ok(a.edge_count() == b.edge_count());
    }
    let ca = canonical_dense(a);
    let cb = canonical_dense(b);
    if ca == cb {
        return Ok(true);
    }
    let mut seen = [HashSet::from([ca]), HashSet::from([cb])];
    let mut frontier = [vec![*a], vec![*b]];
    loop {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        if frontier[side].is_empty() {
            return Ok(false);
        }
        let mut next = Vec::new();
        for batch in expand(&frontier[side], exec) {
            for (c, h) in batch {
                if seen[1 - side].contains(&c) {
                    return Ok(true);
                }
                if seen[side].insert(c) {
                    next.push(h);
                }
            }
        }
        if seen[side].len() > max_orbit {
            return Err(Error::OrbitBoundExceeded { bound: max_orbit });
        }
        frontier[side] = next;
    }
}

/// One representative per isomorphism class in the LC orbit of `g`, in
/// breadth-first discovery order.
pub fn lc_orbit_classes(g: &Graph, max_orbit: usize) -> Result<Vec<Graph>> {
    if g.order() > MAX_LC_VERTICES {
        return Err(Error::TooManyVertices {
            count: g.order(),
            limit: MAX_LC_VERTICES,
        });
    }
    let (d, _) = DenseGraph::from_graph(g);
    let mut seen = HashSet::from([canonical_dense(&d)]);
    let mut out = vec![d];
    let mut frontier = vec![d];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for batch in expand(&frontier, Exec::default()) {
            for (c, h) in batch {
                if seen.insert(c) {
                    next.push(h);
                    out.push(h);
                }
            }
        }
        if seen.len() > max_orbit {
            return Err(Error::OrbitBoundExceeded { bound: max_orbit });
        }
        frontier = next;
    }
    Ok(out.iter().map(DenseGraph::to_graph).collect())
}
