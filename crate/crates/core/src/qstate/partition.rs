use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the total dimension of a dense state.
pub const DEFAULT_DIMENSION_CAP: usize = 1 << 14;

/// Ordered tensor-factor structure: subsystem dimensions plus unique labels.
///
/// The first factor is the most significant index of the flattened basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPartition")]
pub struct HilbertPartition {
    dims: Vec<usize>,
    labels: Vec<String>,
}

#[derive(Deserialize)]
struct RawPartition {
    dims: Vec<usize>,
    labels: Vec<String>,
}

impl TryFrom<RawPartition> for HilbertPartition {
    type Error = Error;

    fn try_from(raw: RawPartition) -> Result<Self> {
        Self::new(raw.dims, raw.labels)
    }
}

impl HilbertPartition {
    pub fn new<S: Into<String>>(dims: Vec<usize>, labels: Vec<S>) -> Result<Self> {
        Self::with_cap(dims, labels, DEFAULT_DIMENSION_CAP)
    }

    pub fn with_cap<S: Into<String>>(dims: Vec<usize>, labels: Vec<S>, cap: usize) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if dims.is_empty() {
            return Err(Error::Partition("no subsystems".into()));
        }
        if dims.len() != labels.len() {
            return Err(Error::Partition(format!("{} dims but {} labels", dims.len(), labels.len())));
        }
        if let Some(pos) = dims.iter().position(|&d| d == 0) {
            return Err(Error::Partition(format!("subsystem `{}` has dimension 0", labels[pos])));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Partition(format!("duplicate label `{l}`")));
            }
        }
        let dim = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).unwrap_or(usize::MAX);
        if dim > cap {
            return Err(Error::DimensionCap { dim, cap });
        }
        Ok(Self { dims, labels })
    }

    /// A single subsystem.
    pub fn single(dim: usize, label: &str) -> Result<Self> {
        Self::new(vec![dim], vec![label])
    }

    /// `n` qubits labelled `q0 .. q{n-1}`.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n], (0..n).map(|i| format!("q{i}")).collect())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.labels.iter().position(|l| l == label).ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn positions<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(labels.len());
        for l in labels {
            let p = self.position(l.as_ref())?;
            if out.contains(&p) {
                return Err(Error::Partition(format!("label `{}` repeated", l.as_ref())));
            }
            out.push(p);
        }
        Ok(out)
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        Ok(self.dims[self.position(label)?])
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        let dims = self.dims.iter().chain(&other.dims).copied().collect();
        let labels: Vec<String> = self.labels.iter().chain(&other.labels).cloned().collect();
        Self::new(dims, labels)
    }

    /// Sub-partition made of the given positions, in the given order.
    pub fn restrict(&self, positions: &[usize]) -> Self {
        Self {
            dims: positions.iter().map(|&p| self.dims[p]).collect(),
            labels: positions.iter().map(|&p| self.labels[p].clone()).collect(),
        }
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    /// Flattened-index offsets of every basis state of the subsystems at
    /// `positions` (enumerated row-major in the given order).
    pub(crate) fn offsets(&self, positions: &[usize]) -> Vec<usize> {
        let strides = self.strides();
        let mut out = vec![0usize];
        for &p in positions {
            let mut next = Vec::with_capacity(out.len() * self.dims[p]);
            for &base in &out {
                for i in 0..self.dims[p] {
                    next.push(base + i * strides[p]);
                }
            }
            out = next;
        }
        out
    }

    /// Offsets for `positions` and for all remaining positions (original order).
    pub(crate) fn split_offsets(&self, positions: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let rest: Vec<usize> = (0..self.dims.len()).filter(|p| !positions.contains(p)).collect();
        (self.offsets(positions), self.offsets(&rest))
    }

    /// Positions of `labels` sorted into partition order.
    pub(crate) fn sorted_positions<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut p = self.positions(labels)?;
        p.sort_unstable();
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_partitions() {
        assert!(HilbertPartition::new(vec![2, 0], vec!["a", "b"]).is_err());
        assert!(HilbertPartition::new(vec![2, 2], vec!["a", "a"]).is_err());
        assert!(HilbertPartition::new(vec![2], vec!["a", "b"]).is_err());
        assert!(matches!(HilbertPartition::qubits(15), Err(Error::DimensionCap { .. })));
        assert!(HilbertPartition::with_cap(vec![2; 15], (0..15).map(|i| i.to_string()).collect(), 1 << 15).is_ok());
    }

    #[test]
    fn offsets_cover_the_space() {
        let p = HilbertPartition::new(vec![2, 3, 2], vec!["a", "b", "c"]).unwrap();
        let (k, r) = p.split_offsets(&[1]);
        assert_eq!(k, vec![0, 2, 4]);
        assert_eq!(r, vec![0, 1, 6, 7]);
        let mut all: Vec<usize> = k.iter().flat_map(|a| r.iter().map(move |b| a + b)).collect();
        all.sort_unstable();
        assert_eq!(all, (0..12).collect::<Vec<_>>());
    }
}
