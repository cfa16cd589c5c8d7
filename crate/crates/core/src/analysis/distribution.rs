use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::base_graph::{BaseGraph, TypeId};
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Numeric field for probabilities and moments: `f64` or exact rationals.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    const EXACT: bool;

    fn from_u64(n: u64) -> Self;

    fn to_f64(&self) -> f64;

    /// Whether a probability total counts as one.
    fn is_unit_total(&self) -> bool;

    /// `"p/q"` for rationals, shortest round-trip decimal for floats.
    fn render(&self) -> String;
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_u64(n: u64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_unit_total(&self) -> bool {
        (self - 1.0).abs() <= 1e-12
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_u64(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_unit_total(&self) -> bool {
        self.is_one()
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

/// Per-type law of the initial rotor state: entry `k` of row `i` is the
/// probability that a type-`i` rotor starts at position `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RotorDistributionFamily<S> {
    probs: Vec<Vec<S>>,
}

impl<S: Scalar> RotorDistributionFamily<S> {
    pub fn new(graph: &BaseGraph, probs: Vec<Vec<S>>) -> Result<Self> {
        if probs.len() != graph.type_count() {
            return Err(Error::InvalidDistribution(format!(
                "expected {} rows, got {}",
                graph.type_count(),
                probs.len()
            )));
        }
        for i in graph.types() {
            let row = &probs[i.index()];
            let want = graph.degree(i) + 1;
            if row.len() != want {
                return Err(Error::InvalidDistribution(format!(
                    "type {i} needs {want} probabilities (states 0..={}), got {}",
                    want - 1,
                    row.len()
                )));
            }
            if let Some(k) = row.iter().position(|p| *p < S::zero()) {
                return Err(Error::InvalidDistribution(format!(
                    "type {i} has negative probability at state {k}"
                )));
            }
            let total = row.iter().cloned().fold(S::zero(), |a, b| a + b);
            if !total.is_unit_total() {
                return Err(Error::InvalidDistribution(format!(
                    "type {i} probabilities sum to {}, not 1",
                    total.render()
                )));
            }
        }
        Ok(RotorDistributionFamily { probs })
    }

    /// Uniform on `{0, ..., d_i}` for every type.
    pub fn uniform(graph: &BaseGraph) -> Self {
        let probs = graph
            .types()
            .map(|i| {
                let states = graph.degree(i) as u64 + 1;
                vec![S::one() / S::from_u64(states); states as usize]
            })
            .collect();
        RotorDistributionFamily { probs }
    }

    /// Type `i` starts deterministically at `states[i]`.
    pub fn point_masses(graph: &BaseGraph, states: &[usize]) -> Result<Self> {
        let probs = graph
            .types()
            .map(|i| {
                let mut row = vec![S::zero(); graph.degree(i) + 1];
                let k = *states.get(i.index()).ok_or_else(|| {
                    Error::InvalidDistribution(format!("no state given for type {i}"))
                })?;
                if k > graph.degree(i) {
                    return Err(Error::InvalidDistribution(format!(
                        "state {k} exceeds d_{i} = {}",
                        graph.degree(i)
                    )));
                }
                row[k] = S::one();
                Ok(row)
            })
            .collect::<Result<_>>()?;
        Ok(RotorDistributionFamily { probs })
    }

    pub fn probabilities(&self, i: TypeId) -> &[S] {
        &self.probs[i.index()]
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.probs
    }

    /// Expected rotor state of type `i`.
    pub fn mean_state(&self, i: TypeId) -> S {
        self.probs[i.index()]
            .iter()
            .enumerate()
            .fold(S::zero(), |acc, (k, p)| acc + S::from_u64(k as u64) * p.clone())
    }

    pub fn to_f64(&self) -> RotorDistributionFamily<f64> {
        RotorDistributionFamily {
            probs: self
                .probs
                .iter()
                .map(|row| row.iter().map(Scalar::to_f64).collect())
                .collect(),
        }
    }

    /// Reorders rows after a relabeling of types (see `BaseGraph::relabel`).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut probs = vec![Vec::new(); self.probs.len()];
        for (i, row) in self.probs.iter().enumerate() {
            probs[perm[i]] = row.clone();
        }
        RotorDistributionFamily { probs }
    }
}

impl<S: Scalar> Serialize for RotorDistributionFamily<S> {
    fn serialize<Se: Serializer>(&self, serializer: Se) -> std::result::Result<Se::Ok, Se::Error> {
        let rendered: Vec<Vec<String>> = self
            .probs
            .iter()
            .map(|row| row.iter().map(Scalar::render).collect())
            .collect();
        rendered.serialize(serializer)
    }
}
