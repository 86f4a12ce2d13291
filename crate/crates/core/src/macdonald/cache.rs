//! On-disk persistence of Macdonald bases.
//!
//! One text file per degree:
//!
//! ```text
//! nabla-kit macdonald cache
//! format 1
//! degree 3
//! sha256 <hex digest of the body>
//! K [3] [3] = 1
//! K [2,1] [3] = q^2 + q
//! ...
//! ```
//!
//! Writes go to a temporary file in the same directory followed by an
//! atomic rename. Loads check the header and digest and re-validate the
//! defining equations; anything suspicious is logged and treated as absent.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::MacdonaldBasis;
use crate::partitions::{partitions_of, Partition};
use crate::ring::Poly;
use crate::{Error, Result};

pub const CACHE_FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "nabla-kit macdonald cache";

pub fn cache_path(dir: &Path, n: u32) -> PathBuf {
    dir.join(format!("macdonald_n{n}.txt"))
}

fn digest(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

/// Full file contents for a basis.
pub fn serialize(basis: &MacdonaldBasis) -> String {
    let body = basis.to_text();
    format!(
        "{MAGIC}\nformat {CACHE_FORMAT_VERSION}\ndegree {}\nsha256 {}\n{body}",
        basis.degree(),
        digest(&body)
    )
}

pub fn cache_store(dir: &Path, basis: &MacdonaldBasis) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, basis.degree());
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(serialize(basis).as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(&path).map_err(|e| Error::Cache(e.to_string()))?;
    Ok(path)
}

/// Loads and validates; `None` if missing or not trustworthy.
pub fn cache_load(dir: &Path, n: u32) -> Option<MacdonaldBasis> {
    let path = cache_path(dir, n);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
        Err(e) => {
            log::warn!("cannot read {}: {e}", path.display());
            return None;
        }
    };
    match parse(&text, n) {
        Ok(b) => Some(b),
        Err(e) => {
            log::warn!("ignoring cache file {}: {e}", path.display());
            None
        }
    }
}

pub fn parse(text: &str, n: u32) -> Result<MacdonaldBasis> {
    let bad = |m: String| Error::Cache(m);
    let mut lines = text.splitn(5, '\n');
    let mut header = |key: &str| -> Result<String> {
        let line = lines.next().ok_or_else(|| bad(format!("missing {key}")))?;
        if key == MAGIC {
            return if line == MAGIC { Ok(String::new()) } else { Err(bad("not a cache file".into())) };
        }
        line.strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .map(str::to_owned)
            .ok_or_else(|| bad(format!("expected `{key}` header")))
    };
    header(MAGIC)?;
    let version = header("format")?;
    if version != CACHE_FORMAT_VERSION.to_string() {
        return Err(bad(format!("format version {version}, expected {CACHE_FORMAT_VERSION}")));
    }
    let degree = header("degree")?;
    if degree != n.to_string() {
        return Err(bad(format!("degree {degree}, expected {n}")));
    }
    let checksum = header("sha256")?;
    let body = lines.next().unwrap_or("");
    if digest(body) != checksum {
        return Err(bad("checksum mismatch".into()));
    }
    let parts = partitions_of(n);
    let p = parts.len();
    let index = |s: &str| -> Result<usize> {
        let lam: Partition = s.parse()?;
        parts.iter().position(|x| *x == lam).ok_or_else(|| bad(format!("partition {s} not of size {n}")))
    };
    let mut kostka = vec![vec![Poly::zero(); p]; p];
    let mut seen = vec![vec![false; p]; p];
    for line in body.lines() {
        let rest = line.strip_prefix("K ").ok_or_else(|| bad(format!("bad line `{line}`")))?;
        let (lhs, rhs) = rest.split_once(" = ").ok_or_else(|| bad(format!("bad line `{line}`")))?;
        let (l, m) = lhs.split_once(' ').ok_or_else(|| bad(format!("bad line `{line}`")))?;
        let (i, j) = (index(l)?, index(m)?);
        if seen[i][j] {
            return Err(bad(format!("duplicate entry `{lhs}`")));
        }
        seen[i][j] = true;
        kostka[i][j] = Poly::parse(rhs, "x").map_err(bad)?;
    }
    let basis = MacdonaldBasis::from_parts(n, kostka);
    if basis.to_text() != body {
        return Err(bad("body is not in canonical form".into()));
    }
    basis.validate()?;
    Ok(basis)
}
