//! Full decoding pipeline: syndrome, key basis, hard decision, then Chase.

use serde::Serialize;

use crate::bch::BchCode;
use crate::chase::{chase_decode, Candidate, ChaseConfig, ChaseStats};
use crate::error::{Error, Result};
use crate::keysolve::{hd_decode_with_key, key_basis_for, HdOutcome};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodeStage {
    /// Zero syndrome.
    Codeword,
    HardDecision,
    Chase,
    Failure,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecodeReport {
    pub stage: DecodeStage,
    /// Error positions of the chosen correction.
    pub error: Option<Vec<usize>>,
    pub candidates: Vec<Candidate>,
    pub chase: Option<ChaseStats>,
}

impl DecodeReport {
    pub fn success(&self) -> bool {
        self.error.is_some()
    }

    /// The received word with the chosen error removed.
    pub fn corrected(&self, y: &[bool]) -> Option<Vec<bool>> {
        let mut c = y.to_vec();
        for &i in self.error.as_ref()? {
            c[i] ^= true;
        }
        Some(c)
    }
}

/// Decodes `y`, falling back to Chase when hard decision fails. Among Chase
/// candidates the one with the least total reliability is chosen.
pub fn decode(code: &BchCode, y: &[bool], reliabilities: &[f64], cfg: &ChaseConfig) -> Result<DecodeReport> {
    if reliabilities.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            got: reliabilities.len(),
        });
    }
    cfg.validate(code.n())?;
    let s = code.syndrome(y)?;
    if s.is_zero() {
        return Ok(DecodeReport {
            stage: DecodeStage::Codeword,
            error: Some(vec![]),
            candidates: vec![],
            chase: None,
        });
    }
    let key = key_basis_for(&s, code.field());
    if let HdOutcome::Decoded(e) = hd_decode_with_key(code, &key) {
        return Ok(DecodeReport {
            stage: DecodeStage::HardDecision,
            error: Some(e),
            candidates: vec![],
            chase: None,
        });
    }
    let outcome = chase_decode(code, &key, &s, reliabilities, cfg)?;
    let error = outcome.best(reliabilities).map(|c| c.error.clone());
    Ok(DecodeReport {
        stage: if error.is_some() {
            DecodeStage::Chase
        } else {
            DecodeStage::Failure
        },
        error,
        candidates: outcome.candidates,
        chase: Some(outcome.stats),
    })
}
