//! Self-contained certificates that can be re-checked without rerunning
//! the scenario that produced them.

use std::path::Path;

use nicerec_core::keyengine::{check_key_hypothesis, verify_key_witness, KeyInstance, RankCertificate};
use nicerec_core::spectral::{verify_limit_certificate, PhaseUnitary};
use nicerec_core::{BinPoly, Lattice, Limits, PolyTuple};
use serde::{Deserialize, Serialize};

use crate::scenario::SCHEMA_VERSION;
use crate::InputError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LimitFamily {
    pub fs: Vec<BinPoly>,
    pub lattice: Lattice,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Certificate {
    /// `v(a) - v(0) ∈ target` for every `a` in `witness`.
    KeyLemma {
        v: PolyTuple,
        target: Lattice,
        hypothesis: Lattice,
        witness: Lattice,
    },
    /// Every phase of `prod U_i^{f_i(z)}` vanishes on each family's lattice.
    SpectralLimit {
        unitary: PhaseUnitary,
        families: Vec<LimitFamily>,
    },
    StableRank {
        v: PolyTuple,
        certificate: RankCertificate,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub schema_version: u32,
    pub scenario: String,
    pub certificate: Certificate,
}

impl Certificate {
    /// Re-runs every check from scratch.
    pub fn verify(&self, limits: &Limits) -> nicerec_core::Result<()> {
        match self {
            Certificate::KeyLemma {
                v,
                target,
                hypothesis,
                witness,
            } => {
                let inst = KeyInstance::new(v.clone(), target.clone())?;
                check_key_hypothesis(&inst, hypothesis)?;
                verify_key_witness(&inst, witness)
            }
            Certificate::SpectralLimit { unitary, families } => families
                .iter()
                .try_for_each(|f| verify_limit_certificate(unitary, &f.fs, &f.lattice)),
            Certificate::StableRank { v, certificate } => certificate.verify(v, limits),
        }
    }
}

pub fn read_certificate(path: &Path) -> Result<CertificateFile, InputError> {
    let err = |message: String| InputError {
        file: path.display().to_string(),
        message,
    };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    let mut de = serde_json::Deserializer::from_str(&text);
    let file: CertificateFile =
        serde_path_to_error::deserialize(&mut de).map_err(|e| err(format!("{}: {}", e.path(), e.inner())))?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(err(format!("unsupported schema_version {}", file.schema_version)));
    }
    Ok(file)
}

/// Exit code contract: 0 verified, 1 rejected, 2 unreadable.
pub fn verify_certificate_file(path: &Path, limits: &Limits) -> (i32, String) {
    match read_certificate(path) {
        Err(e) => (2, e.to_string()),
        Ok(file) => match file.certificate.verify(limits) {
            Ok(()) => (0, format!("{}: certificate for {} verified", path.display(), file.scenario)),
            Err(e) => (1, format!("{}: certificate for {} rejected: {e}", path.display(), file.scenario)),
        },
    }
}
