//! Versioned binary encoding of a built oracle: an 8-byte magic, a
//! little-endian `u32` format version, then the bincode payload.

use std::path::Path;

use dso_core::FullDso;

use crate::error::{Error, Result};

pub const MAGIC: &[u8; 8] = b"DSOBLOB\0";
pub const VERSION: u32 = 1;

pub fn encode(dso: &FullDso) -> Result<Vec<u8>> {
    let mut out = Vec::from(&MAGIC[..]);
    out.extend_from_slice(&VERSION.to_le_bytes());
    bincode::serialize_into(&mut out, dso).map_err(|e| Error::Blob(e.to_string()))?;
    Ok(out)
}

pub fn decode(bytes: &[u8]) -> Result<FullDso> {
    let body = bytes.strip_prefix(&MAGIC[..]).ok_or_else(|| Error::Blob("not an oracle file".into()))?;
    if body.len() < 4 {
        return Err(Error::Blob("truncated header".into()));
    }
    let version = u32::from_le_bytes(body[..4].try_into().expect("4 bytes"));
    if version != VERSION {
        return Err(Error::Blob(format!("format version {version}, this build reads {VERSION}")));
    }
    bincode::deserialize(&body[4..]).map_err(|e| Error::Blob(e.to_string()))
}

pub fn write_file(path: &Path, dso: &FullDso) -> Result<()> {
    std::fs::write(path, encode(dso)?).map_err(|e| Error::io(path, e))
}

pub fn read_file(path: &Path) -> Result<FullDso> {
    decode(&std::fs::read(path).map_err(|e| Error::io(path, e))?)
}
