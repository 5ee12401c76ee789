//! File formats: reading inputs and writing canonical JSON.
//!
//! Struct fields serialize in declaration order and maps are `BTreeMap`s, so
//! keys always come out in the same order and identical inputs give
//! byte-identical output.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::eval::ValueVector;
use crate::game::{validate_game, Game, RawGame, StrategyFile};
use crate::rational;
use crate::solvers::Solution;

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn load_game(path: &Path) -> Result<Game> {
    validate_game(&read_json::<RawGame>(path)?)
}

/// Compact single-line JSON followed by a newline.
pub fn to_json_line<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string(value).expect("serializable");
    out.push('\n');
    out
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable");
    out.push('\n');
    out
}

pub fn write_pretty<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    fs::write(path, to_json_pretty(value))
        .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateFile {
    pub lower: BTreeMap<String, String>,
    pub upper: BTreeMap<String, String>,
}

/// JSON shape of a [`Solution`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionFile {
    pub values: BTreeMap<String, String>,
    pub strategy: StrategyFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateFile>,
}

impl SolutionFile {
    pub fn new(game: &Game, solution: &Solution) -> SolutionFile {
        let ids = game.state_ids();
        let named = |v: &[rational::Rational]| ValueVector::new(ids.clone(), v.to_vec()).to_map();
        SolutionFile {
            values: solution.values.to_map(),
            strategy: solution.optimal_pair.to_names(game),
            certificate: solution.certificate.as_ref().map(|c| CertificateFile {
                lower: named(&c.lower),
                upper: named(&c.upper),
            }),
        }
    }
}
