use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Finite probability vector: entries in `[0, 1]` summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector<T> {
    weights: Vec<T>,
}

impl<T: Scalar> WeightVector<T> {
    pub fn new(weights: Vec<T>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Weights("empty weight list".into()));
        }
        if let Some((i, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(**w >= T::zero() && **w <= T::one()))
        {
            return Err(Error::Weights(format!("weight {i} = {w} outside [0, 1]")));
        }
        let total: T = weights.iter().copied().sum();
        let slack = T::tol(1e-12).max(T::epsilon() * T::of(4.0 * weights.len() as f64));
        if (total - T::one()).abs() > slack {
            return Err(Error::Weights(format!("weights sum to {total}, not 1")));
        }
        Ok(Self { weights })
    }

    /// `k` equal weights.
    pub fn uniform(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::Weights("empty weight list".into()));
        }
        Self::new(vec![T::one() / T::of(k as f64); k])
    }

    pub fn as_slice(&self) -> &[T] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn cast<U: Scalar>(&self) -> WeightVector<U> {
        WeightVector {
            weights: self
                .weights
                .iter()
                .map(|w| U::of(w.to_f64_lossy()))
                .collect(),
        }
    }
}
