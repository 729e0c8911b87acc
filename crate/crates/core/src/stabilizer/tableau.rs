use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::measurement::PauliBasis;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest qubit count a tableau row can hold.
pub const MAX_QUBITS: usize = 128;

/// Signed Pauli string. Qubit `q` carries I, X, Z or Y for `(x, z)` bits
/// `(0,0)`, `(1,0)`, `(0,1)`, `(1,1)`; the operator is `(-1)^sign` times the
/// tensor product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PauliRow {
    pub x: u128,
    pub z: u128,
    pub sign: bool,
}

impl PauliRow {
    pub fn single(basis: PauliBasis, q: usize) -> Self {
        let bit = 1u128 << q;
        match basis {
            PauliBasis::X => PauliRow {
                x: bit,
                z: 0,
                sign: false,
            },
            PauliBasis::Y => PauliRow {
                x: bit,
                z: bit,
                sign: false,
            },
            PauliBasis::Z => PauliRow {
                x: 0,
                z: bit,
                sign: false,
            },
        }
    }

    pub fn commutes(&self, other: &PauliRow) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones().is_multiple_of(2)
    }

    /// Product `self * other` of two commuting rows.
    pub fn mul(&self, other: &PauliRow) -> PauliRow {
        debug_assert!(self.commutes(other));
        let (x1, z1, x2, z2) = (self.x, self.z, other.x, other.z);
        // powers of i picked up qubit by qubit: YZ, XY, ZX give +i and
        // YX, XZ, ZY give -i
        let plus = (x1 & z1 & z2 & !x2) | (x1 & !z1 & x2 & z2) | (!x1 & z1 & x2 & !z2);
        let minus = (x1 & z1 & x2 & !z2) | (x1 & !z1 & z2 & !x2) | (!x1 & z1 & x2 & z2);
        let phase = 2 * (self.sign as i64 + other.sign as i64) + plus.count_ones() as i64 - minus.count_ones() as i64;
        PauliRow {
            x: x1 ^ x2,
            z: z1 ^ z2,
            sign: phase.rem_euclid(4) == 2,
        }
    }

    fn get(&self, q: usize) -> (bool, bool) {
        (self.x >> q & 1 == 1, self.z >> q & 1 == 1)
    }

    fn drop_qubit(&mut self, q: usize) {
        let low = (1u128 << q) - 1;
        let squeeze = |v: u128| (v & low) | ((v >> (q + 1)) << q);
        self.x = squeeze(self.x);
        self.z = squeeze(self.z);
    }
}

/// Single-qubit Clifford gates, described by their conjugation action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gate {
    /// X <-> Z, Y -> -Y
    H,
    /// X -> Y, Y -> -X
    S,
    /// X -> -Y, Y -> X; this is `exp(i pi/4 Z)` up to phase
    Sdg,
    /// Z -> -Y, Y -> Z; this is `exp(-i pi/4 X)`
    SqrtX,
    /// Z -> Y, Y -> -Z
    SqrtXdg,
    X,
    Y,
    Z,
}

impl Gate {
    pub fn inverse(self) -> Gate {
        match self {
            Gate::S => Gate::Sdg,
            Gate::Sdg => Gate::S,
            Gate::SqrtX => Gate::SqrtXdg,
            Gate::SqrtXdg => Gate::SqrtX,
            g => g,
        }
    }
}

/// Stabilizer state on `n` qubits given by `n` commuting, independent
/// generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerTableau {
    n: usize,
    rows: Vec<PauliRow>,
}

impl StabilizerTableau {
    pub fn from_rows(n: usize, rows: Vec<PauliRow>) -> Result<Self> {
        if n > MAX_QUBITS {
            return Err(Error::TooManyVertices {
                count: n,
                limit: MAX_QUBITS,
            });
        }
        let t = StabilizerTableau { n, rows };
        t.validate()?;
        Ok(t)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[PauliRow] {
        &self.rows
    }

    /// Checks row count, qubit range, commutation and independence.
    pub fn validate(&self) -> Result<()> {
        if self.rows.len() != self.n {
            return Err(Error::InvalidTableau(format!(
                "{} generators for {} qubits",
                self.rows.len(),
                self.n
            )));
        }
        let mask = if self.n == 128 {
            u128::MAX
        } else {
            (1u128 << self.n) - 1
        };
        if self.rows.iter().any(|r| (r.x | r.z) & !mask != 0) {
            return Err(Error::InvalidTableau("generator acts outside the register".into()));
        }
        for (i, a) in self.rows.iter().enumerate() {
            for b in &self.rows[i + 1..] {
                if !a.commutes(b) {
                    return Err(Error::InvalidTableau("generators do not commute".into()));
                }
            }
        }
        if self.canonical_rows().len() != self.n {
            return Err(Error::InvalidTableau("generators are not independent".into()));
        }
        Ok(())
    }

    fn check_qubit(&self, q: usize) -> Result<()> {
        if q >= self.n {
            return Err(Error::QubitOutOfRange { index: q, n: self.n });
        }
        Ok(())
    }

    pub fn apply_gate(&mut self, gate: Gate, q: usize) -> Result<()> {
        self.check_qubit(q)?;
        let bit = 1u128 << q;
        for r in &mut self.rows {
            let (x, z) = r.get(q);
            match gate {
                Gate::H => {
                    r.sign ^= x & z;
                    if x != z {
                        r.x ^= bit;
                        r.z ^= bit;
                    }
                }
                Gate::S | Gate::Sdg => {
                    r.sign ^= if gate == Gate::S { x & z } else { x & !z };
                    if x {
                        r.z ^= bit;
                    }
                }
                Gate::SqrtX | Gate::SqrtXdg => {
                    r.sign ^= if gate == Gate::SqrtX { z & !x } else { z & x };
                    if z {
                        r.x ^= bit;
                    }
                }
                Gate::X => r.sign ^= z,
                Gate::Z => r.sign ^= x,
                Gate::Y => r.sign ^= x ^ z,
            }
        }
        Ok(())
    }

    /// Reduced row echelon form of the generators over columns
    /// `x_0..x_{n-1}, z_0..z_{n-1}`. Two tableaux describe the same state iff
    /// these agree (signs included).
    pub fn canonical_rows(&self) -> Vec<PauliRow> {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..2 * self.n {
            let bit = |r: &PauliRow| {
                if col < self.n {
                    r.x >> col & 1 == 1
                } else {
                    r.z >> (col - self.n) & 1 == 1
                }
            };
            let Some(p) = (rank..rows.len()).find(|&i| bit(&rows[i])) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (i, r) in rows.iter_mut().enumerate() {
                if i != rank && bit(r) {
                    *r = r.mul(&pivot);
                }
            }
            rank += 1;
        }
        rows.truncate(rank);
        rows
    }

    pub fn same_state(&self, other: &StabilizerTableau) -> bool {
        self.n == other.n && self.canonical_rows() == other.canonical_rows()
    }

    /// Post-selects the +1 outcome of measuring `basis` on qubit `q`, then
    /// drops `q`. Qubits above `q` shift down by one.
    pub fn measure_postselect(&self, basis: PauliBasis, q: usize) -> Result<StabilizerTableau> {
        self.check_qubit(q)?;
        let p = PauliRow::single(basis, q);
        let mut rows = self.rows.clone();
        let anti: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].commutes(&p)).collect();
        let pivot = if let Some((&first, rest)) = anti.split_first() {
            for &i in rest {
                rows[i] = rows[i].mul(&rows[first]);
            }
            rows[first] = p;
            first
        } else {
            // deterministic outcome: find the generators whose product is +-P
            let combo = self
                .solve(&p)
                .ok_or_else(|| Error::InvalidTableau("measured Pauli outside the group".into()))?;
            let members: Vec<usize> = (0..rows.len()).filter(|&i| combo >> i & 1 == 1).collect();
            let prod = members[1..].iter().fold(rows[members[0]], |acc, &i| acc.mul(&rows[i]));
            if prod.sign {
                return Err(Error::ZeroProbabilityOutcome);
            }
            rows[members[0]] = prod;
            members[0]
        };
        // every other row now has I or P on q; strip it with the pivot row
        for (i, r) in rows.iter_mut().enumerate() {
            if i != pivot && (r.x | r.z) >> q & 1 == 1 {
                *r = r.mul(&p);
            }
        }
        rows.remove(pivot);
        for r in &mut rows {
            r.drop_qubit(q);
        }
        Ok(StabilizerTableau { n: self.n - 1, rows })
    }

    /// Mask of generators whose product equals `target` up to sign.
    fn solve(&self, target: &PauliRow) -> Option<u128> {
        let mut rows: Vec<(PauliRow, u128)> = self.rows.iter().enumerate().map(|(i, r)| (*r, 1u128 << i)).collect();
        let mut want = (target.x, target.z, 0u128);
        let mut rank = 0;
        for col in 0..2 * self.n {
            let bit = |x: u128, z: u128| {
                if col < self.n {
                    x >> col & 1 == 1
                } else {
                    z >> (col - self.n) & 1 == 1
                }
            };
            let Some(p) = (rank..rows.len()).find(|&i| bit(rows[i].0.x, rows[i].0.z)) else {
                continue;
            };
            rows.swap(rank, p);
            let (pr, pm) = rows[rank];
            for (i, (r, m)) in rows.iter_mut().enumerate() {
                if i != rank && bit(r.x, r.z) {
                    r.x ^= pr.x;
                    r.z ^= pr.z;
                    *m ^= pm;
                }
            }
            if bit(want.0, want.1) {
                want.0 ^= pr.x;
                want.1 ^= pr.z;
                want.2 ^= pm;
            }
            rank += 1;
        }
        (want.0 == 0 && want.1 == 0).then_some(want.2)
    }
}

impl fmt::Display for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            f.write_str(if r.sign { "-" } else { "+" })?;
            for q in 0..self.n {
                f.write_str(match r.get(q) {
                    (false, false) => "I",
                    (true, false) => "X",
                    (false, true) => "Z",
                    (true, true) => "Y",
                })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Graph state of `g`: generator `k` is `X_k` times `Z` on the neighbors of
/// `k`. Qubit `k` is the `k`-th smallest vertex id.
pub fn tableau_from_graph(g: &Graph) -> Result<StabilizerTableau> {
    let ids: Vec<_> = g.vertices().collect();
    if ids.len() > MAX_QUBITS {
        return Err(Error::TooManyVertices {
            count: ids.len(),
            limit: MAX_QUBITS,
        });
    }
    let rows = ids
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let z = g
                .neighborhood(v)
                .unwrap()
                .iter()
                .fold(0u128, |m, u| m | 1 << ids.binary_search(u).unwrap());
            PauliRow {
                x: 1 << k,
                z,
                sign: false,
            }
        })
        .collect();
    Ok(StabilizerTableau { n: ids.len(), rows })
}

/// The local unitary that realises local complementation at `a`:
/// `exp(-i pi/4 X_a)` on `a` and `exp(i pi/4 Z_b)` on every `b` in
/// `neighbors`.
pub fn apply_lc_unitary(t: &StabilizerTableau, a: usize, neighbors: &[usize]) -> Result<StabilizerTableau> {
    let mut out = t.clone();
    out.apply_gate(Gate::SqrtX, a)?;
    for &b in neighbors {
        out.apply_gate(Gate::Sdg, b)?;
    }
    Ok(out)
}
