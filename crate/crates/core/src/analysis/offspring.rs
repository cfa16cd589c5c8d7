use crate::base_graph::{BaseGraph, TypeId};
use crate::error::{Error, Result};

use super::distribution::{RotorDistributionFamily, Scalar};

/// Number of type-`j` children at positions `k+1..=d_i` of a type-`i` vertex,
/// i.e. its good children of type `j` when the rotor sits at `k`.
pub fn good_children_count(graph: &BaseGraph, i: TypeId, j: TypeId, k: usize) -> Result<usize> {
    let d = graph.degree(i);
    if k > d {
        return Err(Error::Domain(format!("rotor state {k} outside 0..={d} for type {i}")));
    }
    Ok(graph.children(i)[k..].iter().filter(|&&t| t == j).count())
}

/// Good-children counts by type for rotor state `k`.
fn good_children_vector(graph: &BaseGraph, i: TypeId, k: usize) -> Vec<u32> {
    let mut counts = vec![0u32; graph.type_count()];
    for t in &graph.children(i)[k..] {
        counts[t.index()] += 1;
    }
    counts
}

/// One support point of an offspring law.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom<S> {
    pub counts: Vec<u32>,
    pub prob: S,
}

impl<S> Atom<S> {
    pub fn total_children(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }
}

/// Offspring law of the good-children process, one atom list per type.
#[derive(Debug, Clone, PartialEq)]
pub struct OffspringLaw<S> {
    atoms: Vec<Vec<Atom<S>>>,
}

impl<S: Scalar> OffspringLaw<S> {
    pub fn type_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atoms(&self, i: TypeId) -> &[Atom<S>] {
        &self.atoms[i.index()]
    }

    /// Probability of the count vector `s` for a type-`i` parent.
    pub fn probability(&self, i: TypeId, s: &[u32]) -> S {
        self.atoms[i.index()]
            .iter()
            .find(|a| a.counts == s)
            .map(|a| a.prob.clone())
            .unwrap_or_else(S::zero)
    }

    pub fn to_f64(&self) -> OffspringLaw<f64> {
        OffspringLaw {
            atoms: self
                .atoms
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|a| Atom { counts: a.counts.clone(), prob: a.prob.to_f64() })
                        .collect()
                })
                .collect(),
        }
    }
}

/// Rotor state `k` contributes mass `D_i(k)` at its good-children vector;
/// coinciding vectors merge and zero-mass states are dropped.
pub fn offspring_law<S: Scalar>(graph: &BaseGraph, dists: &RotorDistributionFamily<S>) -> OffspringLaw<S> {
    let atoms = graph
        .types()
        .map(|i| {
            let mut row: Vec<Atom<S>> = Vec::new();
            for (k, p) in dists.probabilities(i).iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let counts = good_children_vector(graph, i, k);
                match row.iter_mut().find(|a| a.counts == counts) {
                    Some(atom) => atom.prob = atom.prob.clone() + p.clone(),
                    None => row.push(Atom { counts, prob: p.clone() }),
                }
            }
            row
        })
        .collect();
    OffspringLaw { atoms }
}

/// Probability generating function `f^i(z) = Σ p^i(s) Π_j z_j^{s_j}`.
pub fn pgf_eval<S: Scalar>(law: &OffspringLaw<S>, i: TypeId, z: &[f64]) -> Result<f64> {
    if z.len() != law.type_count() {
        return Err(Error::Domain(format!(
            "pgf argument has {} coordinates, expected {}",
            z.len(),
            law.type_count()
        )));
    }
    if let Some(j) = z.iter().position(|x| !(0.0..=1.0).contains(x)) {
        return Err(Error::Domain(format!("z[{j}] = {} is outside [0, 1]", z[j])));
    }
    Ok(law
        .atoms(i)
        .iter()
        .map(|a| {
            a.counts
                .iter()
                .zip(z)
                .fold(a.prob.to_f64(), |acc, (&s, &x)| acc * x.powi(s as i32))
        })
        .sum())
}

/// Every individual has exactly one child almost surely.
pub fn is_singular<S: Scalar>(law: &OffspringLaw<S>) -> bool {
    law.atoms.iter().flatten().all(|a| a.total_children() == 1)
}
