use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::graph::{MultiGraph, NodeId};

/// Symmetric integer matrix indexed by the non-arrowhead vertices of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionMatrix {
    index: Vec<NodeId>,
    entries: Vec<Vec<i64>>,
}

impl IntersectionMatrix {
    /// Builds the matrix over `vertices` (id and self-intersection, in the
    /// order given). Edges leaving the vertex set are ignored; loops add 2
    /// to the diagonal.
    pub fn from_graph<N, E>(g: &MultiGraph<N, E>, vertices: &[(NodeId, i64)]) -> Self {
        let pos: BTreeMap<NodeId, usize> =
            vertices.iter().enumerate().map(|(i, (id, _))| (*id, i)).collect();
        let n = vertices.len();
        let mut entries = vec![vec![0i64; n]; n];
        for (i, (_, e)) in vertices.iter().enumerate() {
            entries[i][i] = *e;
        }
        for (_, rec) in g.edges() {
            let (Some(&a), Some(&b)) = (pos.get(&rec.ends[0]), pos.get(&rec.ends[1])) else {
                continue;
            };
            if a == b {
                entries[a][a] += 2;
            } else {
                entries[a][b] += 1;
                entries[b][a] += 1;
            }
        }
        Self {
            index: vertices.iter().map(|(id, _)| *id).collect(),
            entries,
        }
    }

    /// Matrix with synthetic row ids `n0, n1, ...`.
    ///
    /// # Panics
    /// If `rows` is not square.
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            index: (0..n as u32).map(NodeId).collect(),
            entries: rows,
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn index(&self) -> &[NodeId] {
        &self.index
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    fn negated_big(&self) -> Vec<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(-x)).collect())
            .collect()
    }

    /// Whether the form is negative definite, by the signs of the leading
    /// principal minors of `-M` computed with Bareiss elimination. The empty
    /// matrix counts as definite.
    pub fn is_negative_definite(&self) -> bool {
        let mut a = self.negated_big();
        let n = a.len();
        let mut prev = BigInt::from(1);
        for k in 0..n {
            // a[k][k] is now the (k+1)-th leading principal minor
            if !a[k][k].is_positive() {
                return false;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        true
    }

    /// Absolute value of the determinant (1 for the empty matrix).
    pub fn det_abs(&self) -> BigUint {
        let mut a: Vec<Vec<BigInt>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let n = a.len();
        let mut prev = BigInt::from(1);
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return BigUint::zero();
            };
            a.swap(k, p);
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            BigUint::from(1u32)
        } else {
            prev.magnitude().clone()
        }
    }

    /// `Some(rank)` if the form is negative semidefinite, `None` otherwise.
    pub fn negative_semidefinite_rank(&self) -> Option<usize> {
        let mut a: Vec<Vec<BigRational>> = self
            .negated_big()
            .into_iter()
            .map(|r| r.into_iter().map(BigRational::from_integer).collect())
            .collect();
        let mut live: Vec<usize> = (0..a.len()).collect();
        let mut rank = 0;
        loop {
            if live.iter().any(|&i| a[i][i].is_negative()) {
                return None;
            }
            let Some(pos) = live.iter().position(|&i| a[i][i].is_positive()) else {
                let all_zero = live.iter().all(|&i| live.iter().all(|&j| a[i][j].is_zero()));
                return all_zero.then_some(rank);
            };
            let p = live.remove(pos);
            rank += 1;
            for &i in &live {
                if a[i][p].is_zero() {
                    continue;
                }
                let f = &a[i][p] / &a[p][p];
                for &j in &live {
                    let d = &f * &a[p][j];
                    a[i][j] -= d;
                }
            }
        }
    }
}
