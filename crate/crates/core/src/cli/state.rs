//! Sparse Fock-state syntax: `index:re[:im][,index:re[:im]…]`.

use num_complex::Complex64;

use crate::quantum::FockState;
use crate::{Error, Result};

/// A parsed `--state` value, before normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseState {
    pub entries: Vec<(usize, Complex64)>,
}

impl SparseState {
    pub fn parse(spec: &str) -> Result<Self> {
        let mut entries: Vec<(usize, Complex64)> = Vec::new();
        for item in spec.split(',').map(str::trim) {
            let parts: Vec<&str> = item.split(':').map(str::trim).collect();
            let bad = || Error::Parse(format!("state entry `{item}` is not index:re[:im]"));
            if !(2..=3).contains(&parts.len()) {
                return Err(bad());
            }
            let index: usize = parts[0].parse().map_err(|_| bad())?;
            let re: f64 = parts[1].parse().map_err(|_| bad())?;
            let im: f64 = match parts.get(2) {
                Some(v) => v.parse().map_err(|_| bad())?,
                None => 0.0,
            };
            if entries.iter().any(|(i, _)| *i == index) {
                return Err(Error::Parse(format!("state index {index} given twice")));
            }
            entries.push((index, Complex64::new(re, im)));
        }
        Ok(Self { entries })
    }

    /// Smallest Fock dimension that holds every entry.
    pub fn min_dim(&self) -> usize {
        self.entries.iter().map(|(i, _)| i + 1).max().unwrap_or(1)
    }

    /// Dense normalized state of dimension `dim` (default: [`Self::min_dim`]),
    /// with the factor that was applied.
    pub fn build(&self, dim: Option<usize>) -> Result<(FockState, f64)> {
        let need = self.min_dim();
        let dim = dim.unwrap_or(need);
        if dim < need {
            return Err(Error::DimensionMismatch { left: need, right: dim });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        for &(i, a) in &self.entries {
            amps[i] = a;
        }
        FockState::normalized(amps)
    }
}
