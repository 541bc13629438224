//! JSON file formats for codes and PD-sets. Positions are 1-based and
//! matrices are lists of digit-string rows.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::code::{AnyCode, CodeDescriptor, SystematicCode};
use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::pdset::{PdMatrices, PdSet, Provenance, QuaternaryLevel};
use crate::perm::Permutation;
use crate::z4::{LBlockShape, Z4Matrix};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Binary,
    Quaternary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuaternaryFile {
    pub info_set: Vec<usize>,
    pub perms: Vec<Permutation>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PdSetFile {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub code: Option<CodeDescriptor>,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    pub info_set: Vec<usize>,
    pub perms: Vec<Permutation>,
    #[serde(default = "manual")]
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub derivation: Vec<String>,
    #[serde(default = "binary_level")]
    pub level: Level,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quaternary: Option<QuaternaryFile>,
}

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

fn manual() -> Provenance {
    Provenance::Manual
}

fn binary_level() -> Level {
    Level::Binary
}

fn matrix_rows(text: String) -> Vec<String> {
    text.lines().map(str::to_owned).collect()
}

impl From<&PdSet> for PdSetFile {
    fn from(pd: &PdSet) -> Self {
        let (gamma, delta) = match &pd.code {
            CodeDescriptor::Z4 { gamma, delta, .. } => (Some(*gamma), Some(*delta)),
            CodeDescriptor::Binary { .. } => (None, None),
        };
        let matrices = pd.matrices.as_ref().map(|ms| match ms {
            PdMatrices::Binary(v) => v.iter().map(|m| matrix_rows(m.to_string())).collect(),
            PdMatrices::Z4 { matrices, .. } => matrices.iter().map(|m| matrix_rows(m.to_string())).collect(),
        });
        PdSetFile {
            schema_version: SCHEMA_VERSION,
            code: Some(pd.code.clone()),
            n: pd.n,
            s: Some(pd.s),
            info_set: pd.info_set.clone(),
            perms: pd.perms.clone(),
            provenance: pd.provenance,
            derivation: pd.derivation.clone(),
            level: if pd.quaternary.is_some() {
                Level::Quaternary
            } else {
                Level::Binary
            },
            gamma,
            delta,
            matrices,
            quaternary: pd.quaternary.as_ref().map(|q| QuaternaryFile {
                info_set: q.info_set.clone(),
                perms: q.perms.clone(),
            }),
        }
    }
}

impl PdSetFile {
    /// Rebuilds the code named in the file.
    pub fn build_code(&self) -> Result<AnyCode> {
        self.code
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("PD-set file does not name its code".into()))?
            .build()
    }

    pub fn binary_matrices(&self) -> Result<Option<Vec<BitMatrix>>> {
        self.matrices
            .as_ref()
            .map(|ms| ms.iter().map(|rows| BitMatrix::parse(&rows.join("\n"))).collect())
            .transpose()
    }

    pub fn z4_matrices(&self) -> Result<Option<Vec<Z4Matrix>>> {
        self.matrices
            .as_ref()
            .map(|ms| ms.iter().map(|rows| Z4Matrix::parse(&rows.join("\n"))).collect())
            .transpose()
    }

    /// Converts to a [`PdSet`], checking every permutation against the code.
    pub fn into_pdset(&self) -> Result<(AnyCode, PdSet)> {
        let code = self.build_code()?;
        if code.info_set() != self.info_set.as_slice() {
            return Err(Error::InvalidParameter(
                "information set does not match the code".into(),
            ));
        }
        let s = self.s.unwrap_or(self.perms.len().saturating_sub(1));
        let mut pd = PdSet::new(&code, self.perms.clone(), s, self.provenance, self.derivation.clone())?;
        pd.matrices = match (&code, &self.matrices) {
            (_, None) => None,
            (AnyCode::Binary(_), Some(_)) => self.binary_matrices()?.map(PdMatrices::Binary),
            (AnyCode::Z4(c), Some(_)) => self.z4_matrices()?.map(|matrices| PdMatrices::Z4 {
                shape: LBlockShape {
                    gamma: c.gamma(),
                    delta: c.delta(),
                },
                matrices,
            }),
        };
        pd.quaternary = self.quaternary.as_ref().map(|q| QuaternaryLevel {
            perms: q.perms.clone(),
            info_set: q.info_set.clone(),
        });
        Ok((code, pd))
    }
}

/// Metadata and generator of a code, as written by `gen-code`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeFile {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    pub code: CodeDescriptor,
    pub m: usize,
    pub n: usize,
    pub t: usize,
    pub info_set: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_info_set: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generator: Vec<String>,
}

impl CodeFile {
    pub fn describe(code: &AnyCode) -> Self {
        let generator = match code {
            AnyCode::Binary(c) => matrix_rows(c.generator().to_string()),
            AnyCode::Z4(c) => matrix_rows(c.generator().to_string()),
        };
        let (gamma, delta, beta, q_info_set) = match code {
            AnyCode::Z4(c) => (
                Some(c.gamma()),
                Some(c.delta()),
                Some(c.beta()),
                Some(c.q_info_set().to_vec()),
            ),
            AnyCode::Binary(_) => (None, None, None, None),
        };
        CodeFile {
            schema_version: SCHEMA_VERSION,
            code: code.descriptor(),
            m: code.descriptor().log_length(),
            n: code.length(),
            t: code.error_capability(),
            info_set: code.info_set().to_vec(),
            gamma,
            delta,
            beta,
            q_info_set,
            generator,
        }
    }

    pub fn build(&self) -> Result<AnyCode> {
        let code = self.code.build()?;
        if code.length() != self.n {
            return Err(Error::LengthMismatch {
                expected: code.length(),
                got: self.n,
            });
        }
        Ok(code)
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable value")
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json(value) + "\n").map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}
