//! Loading JSON inputs given either as a path or inline.

use std::fs;

use serde::de::DeserializeOwned;

use polyamory::frieze::{Triangulation, TriangulationFile};
use polyamory::quiver::QuiverFile;
use polyamory::{Quiver, Specialization};

use crate::error::CliError;

/// Arguments starting with `{` are parsed as JSON directly, anything else
/// is read as a file.
fn load<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T, CliError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| CliError::Input(format!("cannot read {what} {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("malformed {what} {arg}: {e}")))
}

pub fn quiver(arg: &str) -> Result<Quiver, CliError> {
    let file: QuiverFile = load(arg, "quiver")?;
    Ok(Quiver::try_from(file)?)
}

pub fn specialization(arg: Option<&str>, what: &str) -> Result<Specialization, CliError> {
    match arg {
        Some(a) => load(a, what),
        None => Ok(Specialization::new()),
    }
}

pub fn triangulation(arg: &str) -> Result<Triangulation, CliError> {
    let file: TriangulationFile = load(arg, "triangulation")?;
    Ok(Triangulation::try_from(file)?)
}
