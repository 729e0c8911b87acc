use super::tableau::{Gate, PauliRow, StabilizerTableau};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use serde::{Deserialize, Serialize};

/// Local Clifford gates, in application order, that take the graph state of
/// the extracted graph to the original tableau's state.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalOps {
    pub ops: Vec<(usize, Gate)>,
}

impl LocalOps {
    pub fn apply(&self, t: &mut StabilizerTableau) -> Result<()> {
        for &(q, g) in &self.ops {
            t.apply_gate(g, q)?;
        }
        Ok(())
    }
}

/// Rewrites `rows` so the x-part is in reduced row echelon form and returns
/// the pivot columns.
fn reduce_x(rows: &mut [PauliRow], n: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i].x >> col & 1 == 1) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for (i, r) in rows.iter_mut().enumerate() {
            if i != rank && r.x >> col & 1 == 1 {
                *r = r.mul(&pivot);
            }
        }
        pivots.push(col);
        rank += 1;
    }
    pivots
}

/// Finds a graph whose state is local-Clifford equivalent to `t`. Vertex `k`
/// of the returned graph is qubit `k`.
pub fn graph_from_tableau(t: &StabilizerTableau) -> Result<(Graph, LocalOps)> {
    t.validate()?;
    let n = t.n();
    let mut work = t.clone();
    let mut forward: Vec<(usize, Gate)> = Vec::new();

    // Hadamards on the non-pivot columns make the x-part invertible
    let mut rows = work.rows().to_vec();
    let pivots = reduce_x(&mut rows, n);
    for q in (0..n).filter(|q| !pivots.contains(q)) {
        work.apply_gate(Gate::H, q)?;
        forward.push((q, Gate::H));
    }

    let mut rows = work.rows().to_vec();
    if reduce_x(&mut rows, n).len() != n {
        return Err(Error::InvalidTableau("x-part is rank deficient after Hadamards".into()));
    }
    work = StabilizerTableau::from_rows(n, rows)?;

    // row q is now X_q (or Y_q) times Z's elsewhere
    for q in 0..n {
        if work.rows()[q].z >> q & 1 == 1 {
            work.apply_gate(Gate::Sdg, q)?;
            forward.push((q, Gate::Sdg));
        }
    }
    for q in 0..n {
        if work.rows()[q].sign {
            work.apply_gate(Gate::Z, q)?;
            forward.push((q, Gate::Z));
        }
    }

    let mut g = Graph::with_vertices(n);
    for a in 0..n {
        let za = work.rows()[a].z;
        for b in a + 1..n {
            let ab = za >> b & 1 == 1;
            if ab != (work.rows()[b].z >> a & 1 == 1) {
                return Err(Error::InvalidTableau("extracted adjacency is not symmetric".into()));
            }
            if ab {
                g.add_edge(VertexId(a as u32), VertexId(b as u32))?;
            }
        }
    }
    let ops = forward.iter().rev().map(|&(q, gate)| (q, gate.inverse())).collect();
    Ok((g, LocalOps { ops }))
}
