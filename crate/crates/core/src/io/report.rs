//! Fingerprint reports as JSON.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::style::StyleFingerprint;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FingerprintReport {
    pub measure_names: Vec<String>,
    pub u: Vec<f64>,
    pub w_plus: Vec<f64>,
    pub u_norm: f64,
    pub m: f64,
    pub theta: f64,
    pub eta: Option<f64>,
    pub eta_reason: Option<String>,
    pub sigma_a2: f64,
    pub sigma_ab2: f64,
    pub size_a: usize,
    pub size_b: usize,
    pub p: f64,
    pub config_hash: String,
}

/// Hex SHA-256 of a canonical configuration string.
pub fn config_hash(canonical: &str) -> String {
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

impl FingerprintReport {
    pub fn new(fp: &StyleFingerprint, config_hash: String) -> Self {
        Self {
            measure_names: fp.measure_names.clone(),
            u: fp.u.clone(),
            w_plus: fp.w_plus.clone(),
            u_norm: fp.u_norm,
            m: fp.m,
            theta: fp.theta,
            eta: fp.eta,
            eta_reason: fp.eta.is_none().then(|| fp.eta_reason().unwrap_or("too-few-codes").to_string()),
            sigma_a2: fp.sigma_a2,
            sigma_ab2: fp.sigma_ab2,
            size_a: fp.size_a,
            size_b: fp.size_b,
            p: fp.p,
            config_hash,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

pub fn write_fingerprint_json(path: impl AsRef<Path>, fp: &StyleFingerprint, config_hash: String) -> Result<()> {
    let path = path.as_ref();
    let text = FingerprintReport::new(fp, config_hash).to_json()?;
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}
