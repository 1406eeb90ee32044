//! JSON documents for states: `{party_dims, params, label, variant, entries}`
//! with `entries` listing nonzero `[row, col, re, im]`.
//!
//! Numbers are written as shortest round-trip decimals, so reading a written
//! document reproduces every entry bit for bit.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::party::{total_dim, Dims};
use crate::states::{ConstructionVariant, MultipartiteState};
use crate::tensor::{DenseMatrix, C64, ZERO};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateDocument {
    pub party_dims: Dims,
    pub params: BTreeMap<String, f64>,
    pub label: String,
    pub variant: Option<ConstructionVariant>,
    /// `(row, col, re, im)`, 0-based, row-major order.
    pub entries: Vec<(usize, usize, f64, f64)>,
}

impl StateDocument {
    pub fn from_state(state: &MultipartiteState) -> Self {
        let rho = state.rho();
        let mut entries = Vec::new();
        for i in 0..rho.rows() {
            for j in 0..rho.cols() {
                let z = rho.get(i, j);
                if z.re.to_bits() != 0 || z.im.to_bits() != 0 {
                    entries.push((i, j, z.re, z.im));
                }
            }
        }
        Self {
            party_dims: state.dims(),
            params: state.params().clone(),
            label: state.label().to_string(),
            variant: state.variant(),
            entries,
        }
    }

    pub fn to_state(&self) -> Result<MultipartiteState> {
        let d = total_dim(&self.party_dims);
        let mut data = vec![ZERO; d * d];
        for &(i, j, r, im) in &self.entries {
            if i >= d || j >= d {
                return Err(Error::Malformed(format!("entry ({i}, {j}) outside {d}x{d}")));
            }
            data[i * d + j] = C64::new(r, im);
        }
        MultipartiteState::new(
            self.party_dims,
            DenseMatrix::new(d, d, data)?,
            self.label.clone(),
            self.params.clone(),
            self.variant,
        )
    }
}

pub fn state_to_json(state: &MultipartiteState) -> String {
    serde_json::to_string_pretty(&StateDocument::from_state(state)).expect("plain data serializes")
}

pub fn state_from_json(text: &str) -> Result<MultipartiteState> {
    let doc: StateDocument = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    doc.to_state()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{rho_a, sigma_b};

    #[test]
    fn round_trip_is_bit_exact() {
        for s in [
            sigma_b(0.3).unwrap(),
            rho_a(2, 0.7, ConstructionVariant::default()).unwrap(),
        ] {
            let back = state_from_json(&state_to_json(&s)).unwrap();
            assert_eq!(back, s);
            for (x, y) in back.rho().data().iter().zip(s.rho().data()) {
                assert_eq!(x.re.to_bits(), y.re.to_bits());
                assert_eq!(x.im.to_bits(), y.im.to_bits());
            }
        }
    }

    #[test]
    fn malformed_documents_rejected() {
        assert!(matches!(state_from_json("{"), Err(Error::Malformed(_))));
        let mut doc = StateDocument::from_state(&sigma_b(0.5).unwrap());
        doc.entries.push((9, 0, 1.0, 0.0));
        assert!(doc.to_state().is_err());
    }
}
