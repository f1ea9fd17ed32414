use latres_core::corpus;
use latres_core::schema::{parse_as, sha256_hex};
use latres_core::{Error, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::path::Path;

/// Where an input document came from and the digest of its bytes.
#[derive(Clone, Debug, Serialize)]
pub struct InputRecord {
    pub role: String,
    pub source: String,
    pub sha256: String,
}

/// Reads a path if one exists, else a corpus entry of that name.
pub fn load<T: DeserializeOwned>(arg: &str, ty: &str, role: &str) -> Result<(T, InputRecord)> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Error::Input(format!("cannot read {arg}: {e}")))?
    } else {
        corpus::text(arg)
            .map_err(|_| Error::Input(format!("{arg} is neither a readable file nor a corpus entry")))?
            .to_string()
    };
    let doc = parse_as(&text, ty)?;
    Ok((
        doc,
        InputRecord {
            role: role.to_string(),
            source: arg.to_string(),
            sha256: sha256_hex(text.as_bytes()),
        },
    ))
}

/// Document type of a file or corpus entry, for inputs that may be either kind.
pub fn type_of(arg: &str) -> Result<String> {
    let text = if Path::new(arg).is_file() {
        std::fs::read_to_string(arg).map_err(|e| Error::Input(format!("cannot read {arg}: {e}")))?
    } else {
        corpus::text(arg)?.to_string()
    };
    if let Ok(d) = corpus::parse_document(&text) {
        return Ok(d.type_name().to_string());
    }
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Input(format!("malformed JSON: {e}")))?;
    let ty = if v.get("X_rank").is_some() {
        "datum"
    } else if v
        .get("kind")
        .and_then(|k| k.as_str())
        .is_some_and(|k| k != "table" && k != "perm")
    {
        "sequence"
    } else {
        return Err(Error::Input(format!("cannot tell what kind of document {arg} is")));
    };
    Ok(ty.to_string())
}
