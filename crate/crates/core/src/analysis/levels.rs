use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::base_graph::{adjacency_matrix, BaseGraph, TypeId};

/// `w(n) = D^n`: entry `(i, j)` counts type-`j` vertices at depth `n` of the
/// cover rooted at type `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelCounts {
    pub n: u32,
    matrix: Vec<Vec<BigUint>>,
}

impl LevelCounts {
    pub fn matrix(&self) -> &[Vec<BigUint>] {
        &self.matrix
    }

    pub fn get(&self, i: TypeId, j: TypeId) -> &BigUint {
        &self.matrix[i.index()][j.index()]
    }

    /// `w_i(n) = Σ_j w_ij(n)`, total depth-`n` population of each cover.
    pub fn totals(&self) -> Vec<BigUint> {
        self.matrix.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn total(&self, root: TypeId) -> BigUint {
        self.matrix[root.index()].iter().sum()
    }

    /// Matrix product, for the semigroup property `w(a + b) = w(a) w(b)`.
    pub fn compose(&self, other: &LevelCounts) -> LevelCounts {
        LevelCounts { n: self.n + other.n, matrix: mat_mul(&self.matrix, &other.matrix) }
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.matrix.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }
}

impl Serialize for LevelCounts {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

fn identity(m: usize) -> Vec<Vec<BigUint>> {
    (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigUint::one() } else { BigUint::zero() }).collect())
        .collect()
}

fn mat_mul(a: &[Vec<BigUint>], b: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let m = a.len();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| (0..m).fold(BigUint::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

pub fn level_counts(graph: &BaseGraph, n: u32) -> LevelCounts {
    let d: Vec<Vec<BigUint>> = adjacency_matrix(graph)
        .into_iter()
        .map(|r| r.into_iter().map(BigUint::from).collect())
        .collect();
    let mut result = identity(d.len());
    let mut base = d;
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base);
        }
    }
    LevelCounts { n, matrix: result }
}
