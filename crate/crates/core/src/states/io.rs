//! JSON state files: `{"dims": [..], "amplitudes": [{"index": [..], "re": x, "im": y}, ..]}`.
//! Unlisted indices are zero.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::state::PureState;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AmplitudeEntry {
    pub index: Vec<usize>,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<usize>,
    pub amplitudes: Vec<AmplitudeEntry>,
}

impl StateFile {
    pub fn from_state(state: &PureState) -> Self {
        let amplitudes = state
            .nonzeros()
            .into_iter()
            .map(|(index, a)| AmplitudeEntry { index, re: a.re, im: a.im })
            .collect();
        Self { dims: state.dims().to_vec(), amplitudes }
    }

    /// Validates bounds and normalization and builds a sparse state.
    pub fn into_state(self) -> Result<PureState> {
        let entries = self.amplitudes.into_iter().map(|e| (e.index, Complex64::new(e.re, e.im)));
        let state = PureState::sparse(self.dims, entries)
            .map_err(|e| Error::MalformedStateFile(e.to_string()))?;
        state.require_normalized()?;
        Ok(state)
    }
}

pub fn state_from_json(text: &str) -> Result<PureState> {
    let file: StateFile = serde_json::from_str(text)?;
    file.into_state()
}

pub fn state_to_json(state: &PureState) -> Result<String> {
    Ok(serde_json::to_string_pretty(&StateFile::from_state(state))?)
}

pub fn read_state(path: impl AsRef<Path>) -> Result<PureState> {
    state_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_state(path: impl AsRef<Path>, state: &PureState) -> Result<()> {
    let mut text = state_to_json(state)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}
