//! Reading series, packages and ring contexts from the command line.
//!
//! Every input is inline JSON or a path to a file holding it. A bare
//! bracketed list `[c0, c1, ...]` is a series over the ring given by the
//! global flags, degree 0 first.

use std::sync::Arc;

use padyn::json::{context_from_json, series_in, CoeffJson, ContextJson, PackageJson, SeriesJson};
use padyn::padic::ExtensionSpec;
use padyn::series::TruncatedSeries;
use padyn::{Error, Scalar};
use serde::de::DeserializeOwned;

/// Input errors that never reach the library.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON in {what}: {source}")]
    Json { what: String, source: serde_json::Error },
}

pub fn read_text(arg: &str) -> Result<String, InputError> {
    let t = arg.trim_start();
    if t.starts_with('[') || t.starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|source| InputError::Io { path: arg.to_string(), source })
}

pub fn parse_json<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T, InputError> {
    let text = read_text(arg)?;
    serde_json::from_str(&text).map_err(|source| InputError::Json { what: what.to_string(), source })
}

/// Ring and truncation used for bare coefficient lists.
#[derive(Clone, Debug)]
pub struct Defaults {
    pub context: ContextJson,
    pub trunc: usize,
}

/// A series document before it is bound to a backend. `explicit_trunc`
/// is false for bare lists, whose truncation came from the flags.
#[derive(Clone, Debug)]
pub struct SeriesInput {
    pub doc: SeriesJson,
    pub explicit_trunc: bool,
}

impl SeriesInput {
    pub fn load(arg: &str, what: &str, defaults: &Defaults) -> Result<Self, InputError> {
        let text = read_text(arg)?;
        if text.trim_start().starts_with('[') {
            let coeffs: Vec<CoeffJson> =
                serde_json::from_str(&text).map_err(|source| InputError::Json { what: what.to_string(), source })?;
            let doc = SeriesJson { context: defaults.context.clone(), trunc: defaults.trunc, coeffs };
            return Ok(SeriesInput { doc, explicit_trunc: false });
        }
        let doc = serde_json::from_str(&text).map_err(|source| InputError::Json { what: what.to_string(), source })?;
        Ok(SeriesInput { doc, explicit_trunc: true })
    }

    pub fn with_trunc(&self, trunc: usize) -> Self {
        SeriesInput { doc: SeriesJson { trunc, ..self.doc.clone() }, explicit_trunc: self.explicit_trunc }
    }

    pub fn spec<S: Scalar>(&self) -> Result<Arc<ExtensionSpec<S>>, Error> {
        context_from_json(&self.doc.context)
    }

    pub fn series<S: Scalar>(&self) -> Result<TruncatedSeries<S>, Error> {
        series_in(&self.spec()?, &self.doc)
    }

    /// The series over `spec`; a mismatched ring is an error.
    pub fn series_over<S: Scalar>(&self, spec: &Arc<ExtensionSpec<S>>) -> Result<TruncatedSeries<S>, Error> {
        series_in(spec, &self.doc)
    }
}

pub fn load_package(arg: &str) -> Result<PackageJson, InputError> {
    parse_json(arg, "package")
}
