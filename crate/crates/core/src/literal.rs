//! JSON literal format for complexes:
//! `{"ring": "Z/8", "lo": 0, "ranks": [1, 1], "diffs": [[["2"]]]}`.
//! `diffs[k]` lists the rows of `d^{lo+k}`; entries are ring-element strings
//! or plain integers.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{Ring, RingSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexLiteral {
    pub ring: String,
    pub lo: i32,
    pub ranks: Vec<usize>,
    #[serde(default)]
    pub diffs: Vec<Vec<Vec<Entry>>>,
}

impl ComplexLiteral {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn from_complex<R: Ring>(x: &FreeComplex<R>) -> Self {
        let r = x.ring();
        let diffs = x
            .degrees()
            .take(x.ranks().len().saturating_sub(1))
            .map(|i| {
                x.d(i).to_dense(r).iter().map(|row| row.iter().map(|e| Entry::Text(r.format_elem(e))).collect()).collect()
            })
            .collect();
        ComplexLiteral { ring: r.name(), lo: x.lo(), ranks: x.ranks().to_vec(), diffs }
    }

    /// Builds the complex over `ring`, which must match the literal's ring.
    pub fn to_complex<R: Ring>(&self, ring: &R) -> Result<FreeComplex<R>> {
        let declared = RingSpec::parse(&self.ring)?.name();
        if declared != ring.name() {
            return Err(Error::RingMismatch(declared, ring.name()));
        }
        if self.diffs.len() + 1 != self.ranks.len().max(1) {
            return Err(Error::InvalidComplex(format!(
                "{} degrees need {} differentials, got {}",
                self.ranks.len(),
                self.ranks.len().saturating_sub(1),
                self.diffs.len()
            )));
        }
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(k, rows)| {
                let entries = rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|e| match e {
                                Entry::Int(n) => Ok(ring.from_i64(*n)),
                                Entry::Text(s) => ring.parse_elem(s),
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Matrix::from_rows(ring, self.ranks[k + 1], self.ranks[k], &entries)
            })
            .collect::<Result<Vec<_>>>()?;
        FreeComplex::new(ring.clone(), self.lo, self.ranks.clone(), diffs)
    }
}
