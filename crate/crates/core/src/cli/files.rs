//! JSON input files.
//!
//! Cover file: `{"classes":[{"a":int,"n":int},...], "weights":[int,...]?}`
//!
//! Number-field file: `{"min_poly":[c0,...,1], "classes":[{"alpha":[..],"beta":[..]},...],
//! "omegas":[[..],...]?, "mu_num":[..]?, "mu_den":int?}`

use std::fmt;
use std::path::Path;

use num::{BigInt, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::cover::{CoverSystem, ResidueClass};
use crate::error::Error;
use crate::field::{NFCoverSystem, NFElement, NFResidueClass, NumberField};

#[derive(Debug)]
pub enum InputError {
    Io {
        path: String,
        message: String,
    },
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    Invalid {
        field: String,
        source: Error,
    },
}

impl InputError {
    pub fn code(&self) -> &'static str {
        match self {
            InputError::Io { .. } => "io",
            InputError::Syntax { .. } => "parse",
            InputError::Invalid { .. } => "validation",
        }
    }

    fn invalid(field: impl Into<String>, source: Error) -> Self {
        InputError::Invalid {
            field: field.into(),
            source,
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::Io { path, message } => write!(f, "cannot read {path}: {message}"),
            InputError::Syntax { line, column, message } => {
                write!(f, "line {line}, column {column}: {message}")
            }
            InputError::Invalid { field, source } => write!(f, "{field}: {source}"),
        }
    }
}

impl std::error::Error for InputError {}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassEntry {
    pub a: i64,
    pub n: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub classes: Vec<ClassEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<i64>>,
}

impl CoverFile {
    pub fn from_system(sys: &CoverSystem) -> Self {
        CoverFile {
            classes: sys
                .classes()
                .iter()
                .map(|c| ClassEntry {
                    a: c.residue() as i64,
                    n: c.modulus() as i64,
                })
                .collect(),
            weights: sys.explicit_weights().map(<[i64]>::to_vec),
        }
    }

    pub fn into_system(self) -> Result<CoverSystem, InputError> {
        let classes = self
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| ResidueClass::new(c.a, c.n).map_err(|e| InputError::invalid(format!("classes[{i}].n"), e)))
            .collect::<Result<Vec<_>, _>>()?;
        match self.weights {
            None => Ok(CoverSystem::new(classes)),
            Some(w) => CoverSystem::with_weights(classes, w).map_err(|e| InputError::invalid("weights", e)),
        }
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

pub fn parse_cover_str(text: &str) -> Result<CoverSystem, InputError> {
    serde_json::from_str::<CoverFile>(text)?.into_system()
}

pub fn parse_cover_file(path: &Path) -> Result<CoverSystem, InputError> {
    parse_cover_str(&read(path)?)
}

/// Canonical cover-file text: compact JSON plus a trailing newline.
pub fn write_cover_string(sys: &CoverSystem) -> String {
    let mut s = serde_json::to_string(&CoverFile::from_system(sys)).expect("cover file serializes");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NFClassEntry {
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NFFile {
    pub min_poly: Vec<i64>,
    pub classes: Vec<NFClassEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omegas: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_num: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_den: Option<i64>,
}

/// A parsed number-field system and its optional target `μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NFInput {
    pub system: NFCoverSystem,
    pub mu: Option<NFElement>,
}

fn integral(field: &NumberField, coords: &[i64], locus: String) -> Result<NFElement, InputError> {
    field
        .integral_element(coords)
        .map_err(|e| InputError::invalid(locus, e))
}

impl NFFile {
    pub fn into_input(self) -> Result<NFInput, InputError> {
        let field = NumberField::new(&self.min_poly).map_err(|e| InputError::invalid("min_poly", e))?;
        let classes = self
            .classes
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let alpha = integral(&field, &c.alpha, format!("classes[{i}].alpha"))?;
                let beta = integral(&field, &c.beta, format!("classes[{i}].beta"))?;
                NFResidueClass::new(alpha, beta).map_err(|e| InputError::invalid(format!("classes[{i}].beta"), e))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let omegas = self
            .omegas
            .map(|ws| {
                ws.iter()
                    .enumerate()
                    .map(|(i, w)| integral(&field, w, format!("omegas[{i}]")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        let mu = match (self.mu_num, self.mu_den) {
            (None, None) => None,
            (None, Some(_)) => {
                return Err(InputError::invalid(
                    "mu_den",
                    Error::SpecViolation("mu_den given without mu_num".into()),
                ))
            }
            (Some(num), den) => {
                let den = den.unwrap_or(1);
                if den <= 0 {
                    return Err(InputError::invalid(
                        "mu_den",
                        Error::SpecViolation("mu_den must be positive".into()),
                    ));
                }
                let coords = num
                    .iter()
                    .map(|&v| Rational::new(BigInt::from(v), BigInt::from(den)))
                    .collect();
                Some(field.element(coords).map_err(|e| InputError::invalid("mu_num", e))?)
            }
        };
        let system = NFCoverSystem::new(field, classes, omegas).map_err(|e| InputError::invalid("omegas", e))?;
        Ok(NFInput { system, mu })
    }
}

impl NFFile {
    /// Canonical file form of a system; fails if a value does not fit `i64`.
    pub fn from_input(input: &NFInput) -> Option<Self> {
        let ints = |e: &NFElement| -> Option<Vec<i64>> {
            e.coords()
                .iter()
                .map(|c| c.is_integer().then(|| c.to_integer().to_i64()).flatten())
                .collect()
        };
        let field = input.system.field();
        let classes = input
            .system
            .classes()
            .iter()
            .map(|c| {
                Some(NFClassEntry {
                    alpha: ints(c.alpha())?,
                    beta: ints(c.beta())?,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        let omegas = match input.system.explicit_omegas() {
            Some(ws) => Some(ws.iter().map(ints).collect::<Option<Vec<_>>>()?),
            None => None,
        };
        let (mu_num, mu_den) = match &input.mu {
            None => (None, None),
            Some(mu) => {
                let den = mu.denominator();
                let scaled = mu
                    .coords()
                    .iter()
                    .map(|c| (c * Rational::from_integer(den.clone())).to_integer().to_i64())
                    .collect::<Option<Vec<_>>>()?;
                (Some(scaled), Some(den.to_i64()?))
            }
        };
        Some(NFFile {
            min_poly: field
                .min_poly()
                .iter()
                .map(ToPrimitive::to_i64)
                .collect::<Option<_>>()?,
            classes,
            omegas,
            mu_num,
            mu_den,
        })
    }
}

pub fn parse_nf_str(text: &str) -> Result<NFInput, InputError> {
    serde_json::from_str::<NFFile>(text)?.into_input()
}

pub fn parse_nf_file(path: &Path) -> Result<NFInput, InputError> {
    parse_nf_str(&read(path)?)
}
