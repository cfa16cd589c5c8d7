use serde::Serialize;

use crate::base_graph::BaseGraph;

use super::distribution::{RotorDistributionFamily, Scalar};
use super::offspring::good_children_count;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericField {
    Exact,
    Float,
}

/// First-moment matrix of the good-children process:
/// `m_ij = Σ_k D_i(k) · C_i^j(k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentMatrix<S> {
    entries: Vec<Vec<S>>,
}

impl<S: Scalar> MomentMatrix<S> {
    pub fn from_rows(entries: Vec<Vec<S>>) -> Self {
        assert!(entries.iter().all(|r| r.len() == entries.len()), "matrix must be square");
        MomentMatrix { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.entries
    }

    pub fn field(&self) -> NumericField {
        if S::EXACT {
            NumericField::Exact
        } else {
            NumericField::Float
        }
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(Scalar::to_f64).collect())
            .collect()
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(Scalar::render).collect())
            .collect()
    }

    pub(crate) fn support(&self) -> Vec<Vec<bool>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(|x| *x > S::zero()).collect())
            .collect()
    }
}

pub fn moment_matrix<S: Scalar>(graph: &BaseGraph, dists: &RotorDistributionFamily<S>) -> MomentMatrix<S> {
    let entries = graph
        .types()
        .map(|i| {
            graph
                .types()
                .map(|j| {
                    dists
                        .probabilities(i)
                        .iter()
                        .enumerate()
                        .fold(S::zero(), |acc, (k, p)| {
                            let c = good_children_count(graph, i, j, k).expect("k within 0..=d_i");
                            acc + p.clone() * S::from_u64(c as u64)
                        })
                })
                .collect()
        })
        .collect();
    MomentMatrix { entries }
}

/// Some power `M^n` with `n ≤ m² − 2m + 2` is entrywise positive.
pub fn positive_regularity<S: Scalar>(m: &MomentMatrix<S>) -> bool {
    let support = m.support();
    let dim = support.len();
    if dim == 0 {
        return false;
    }
    let bound = (dim - 1) * (dim - 1) + 1;
    let mut power = support.clone();
    for _ in 0..bound {
        if power.iter().flatten().all(|&b| b) {
            return true;
        }
        power = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| (0..dim).any(|k| power[i][k] && support[k][j]))
                    .collect()
            })
            .collect();
    }
    power.iter().flatten().all(|&b| b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Rational;
    use crate::base_graph::{adjacency_matrix, catalog};

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn exact(rows: &[&[&str]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|s| q(s)).collect()).collect()
    }

    #[test]
    fn embedding_moments() {
        let ga = catalog::embedding_a();
        let ma = moment_matrix(&ga, &RotorDistributionFamily::<Rational>::uniform(&ga));
        assert_eq!(ma.rows(), exact(&[&["0", "1/2"], &["5/4", "1/4"]]).as_slice());
        let gc = catalog::embedding_c();
        let mc = moment_matrix(&gc, &RotorDistributionFamily::<Rational>::uniform(&gc));
        assert_eq!(mc.rows(), exact(&[&["0", "1/2"], &["3/4", "3/4"]]).as_slice());
        assert_eq!(mc.field(), NumericField::Exact);
    }

    #[test]
    fn generalized_fibonacci_moments() {
        for alpha in 1..=6usize {
            let g = catalog::generalized_fibonacci(alpha);
            let m = moment_matrix(&g, &RotorDistributionFamily::<Rational>::uniform(&g));
            let half_alpha = format!("{alpha}/2");
            assert_eq!(m.rows(), exact(&[&["0", &half_alpha], &["2/3", "1/3"]]).as_slice());
        }
    }

    #[test]
    fn all_good_children_gives_adjacency() {
        let g = catalog::embedding_b();
        let dists = RotorDistributionFamily::<Rational>::point_masses(&g, &[0, 0]).unwrap();
        let m = moment_matrix(&g, &dists);
        let d = adjacency_matrix(&g);
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(m.get(i, j).to_f64(), d[i][j] as f64);
            }
        }
    }

    #[test]
    fn regularity() {
        let g = catalog::fibonacci();
        let m = moment_matrix(&g, &RotorDistributionFamily::<f64>::uniform(&g));
        assert!(positive_regularity(&m));
        let bi = catalog::bi_regular(2, 3);
        let mb = moment_matrix(&bi, &RotorDistributionFamily::<f64>::uniform(&bi));
        assert!(!positive_regularity(&mb), "bi-regular covers are periodic");
    }

    #[test]
    fn scalar_positive_regularity() {
        let m = MomentMatrix::from_rows(vec![vec![0.5f64]]);
        assert!(positive_regularity(&m));
        assert!(!positive_regularity(&MomentMatrix::from_rows(vec![vec![0.0f64]])));
    }
}
