//! The pinned SI constant table. The built-in copy is compiled in; a file
//! given with `--constants` replaces it. Either way its SHA-256 goes into
//! the run manifest.

use std::path::Path;

use qfoundry::units::SiConstants;
use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::report::ConstantsStamp;

pub const BUILTIN: &str = include_str!("../constants/si-codata2018.txt");

#[derive(Debug, Clone, PartialEq)]
pub struct ConstantsFile {
    pub values: SiConstants,
    pub stamp: ConstantsStamp,
}

impl ConstantsFile {
    pub fn builtin() -> Self {
        Self::from_text(BUILTIN, "builtin").expect("the built-in constants file parses")
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_text(&text, &path.display().to_string())
    }

    pub fn from_text(text: &str, source: &str) -> Result<Self, CliError> {
        let values = SiConstants::parse(text)?;
        let stamp = ConstantsStamp { source: source.into(), sha256: hex::encode(Sha256::digest(text.as_bytes())) };
        Ok(Self { values, stamp })
    }
}
