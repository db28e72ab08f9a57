//! JSON file formats: integer sets (elements as decimal strings, so no width
//! limits) and abstract structures (cover lists).

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::gcdset::{GcdSet, SetError};
use crate::poset::{Structure, StructureError};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("element {0:?} is not a decimal integer")]
    BadInteger(String),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("file is neither a set file nor a structure file")]
    UnknownFormat,
}

/// On-disk shape of a set file: `{"name": …, "elements": ["12", "60", …]}`.
#[derive(Serialize, Deserialize)]
pub struct SetFile {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub elements: Vec<String>,
}

impl SetFile {
    pub fn from_set(set: &GcdSet) -> Self {
        SetFile {
            name: set.name().map(str::to_owned),
            elements: set.elements().iter().map(|x| x.to_string()).collect(),
        }
    }

    pub fn into_set(self) -> Result<GcdSet, FileError> {
        let mut values = Vec::with_capacity(self.elements.len());
        for raw in &self.elements {
            let v = raw
                .parse::<BigInt>()
                .map_err(|_| FileError::BadInteger(raw.clone()))?;
            values.push(v);
        }
        let set = GcdSet::new(values)?;
        Ok(match self.name {
            Some(name) => set.with_name(name),
            None => set,
        })
    }
}

/// On-disk shape of a structure file: `{"n": 3, "covers": [[0,1],[0,2]]}`
/// with pair `[a, b]` meaning "b covers a".
#[derive(Serialize, Deserialize)]
pub struct StructureFile {
    pub n: usize,
    pub covers: Vec<(usize, usize)>,
}

impl StructureFile {
    pub fn from_structure(s: &Structure) -> Self {
        StructureFile {
            n: s.len(),
            covers: s.covers().to_vec(),
        }
    }

    /// Validates as a meet semilattice unless `raw` is set, in which case any
    /// well-formed poset is accepted.
    pub fn into_structure(self, raw: bool) -> Result<Structure, FileError> {
        let s = if raw {
            Structure::new_poset(self.n, &self.covers)?
        } else {
            Structure::new(self.n, &self.covers)?
        };
        Ok(s)
    }
}

pub fn read_set_file(path: &Path) -> Result<GcdSet, FileError> {
    let text = std::fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let file: SetFile = serde_json::from_str(&text)?;
    file.into_set()
}

pub fn write_set_file(path: &Path, set: &GcdSet) -> Result<(), FileError> {
    let text = serde_json::to_string_pretty(&SetFile::from_set(set)).expect("serializable");
    std::fs::write(path, text + "\n").map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_structure_file(path: &Path, raw: bool) -> Result<Structure, FileError> {
    let text = std::fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let file: StructureFile = serde_json::from_str(&text)?;
    file.into_structure(raw)
}

pub fn structure_to_json(s: &Structure) -> String {
    serde_json::to_string(&StructureFile::from_structure(s)).expect("serializable")
}

/// Either kind of input file, distinguished by its fields.
pub enum AnyFile {
    Set(GcdSet),
    Structure(Structure),
}

pub fn read_any_file(path: &Path, raw: bool) -> Result<AnyFile, FileError> {
    let text = std::fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    if value.get("elements").is_some() {
        let file: SetFile = serde_json::from_value(value)?;
        Ok(AnyFile::Set(file.into_set()?))
    } else if value.get("covers").is_some() {
        let file: StructureFile = serde_json::from_value(value)?;
        Ok(AnyFile::Structure(file.into_structure(raw)?))
    } else {
        Err(FileError::UnknownFormat)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_files_round_trip() {
        let set = crate::catalog::singular_cube_8();
        let file = SetFile::from_set(&set);
        let json = serde_json::to_string(&file).unwrap();
        let parsed: SetFile = serde_json::from_str(&json).unwrap();
        let back = parsed.into_set().unwrap();
        assert_eq!(back.elements(), set.elements());
        assert_eq!(back.name(), set.name());
    }

    #[test]
    fn structure_files_round_trip() {
        let s = crate::construct::cube_structure();
        let json = structure_to_json(&s);
        let parsed: StructureFile = serde_json::from_str(&json).unwrap();
        let back = parsed.into_structure(false).unwrap();
        assert_eq!(back.covers(), s.covers());
    }

    #[test]
    fn raw_flag_gates_semilattice_validation() {
        let antichain = StructureFile {
            n: 2,
            covers: vec![],
        };
        assert!(matches!(
            StructureFile {
                n: 2,
                covers: vec![]
            }
            .into_structure(false),
            Err(FileError::Structure(StructureError::NotMeetSemilattice(0, 1)))
        ));
        let s = antichain.into_structure(true).unwrap();
        assert!(!s.is_meet_semilattice());
    }

    #[test]
    fn bad_integers_are_reported() {
        let file = SetFile {
            name: None,
            elements: vec!["12".into(), "x".into()],
        };
        assert!(matches!(file.into_set(), Err(FileError::BadInteger(_))));
    }
}
