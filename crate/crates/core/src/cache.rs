//! On-disk sieve cache.
//!
//! A cache file holds the `a(n)` table for one `(field, X)` pair. The file
//! name is derived from the canonical field spec, `X` and [`CODE_VERSION`], so
//! a change in any of them misses the cache instead of reusing stale data.
//!
//! Layout (little endian): magic `NFSIEVE\0`, format version `u32`, code
//! version and field key as `u32`-length-prefixed UTF-8, `X` as `u64`, then
//! `X + 1` counts as `u32`, then a SHA-256 of everything before it.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::ideal_count::{IdealCountSieve, SieveOptions};
use crate::CODE_VERSION;

const MAGIC: &[u8; 8] = b"NFSIEVE\0";
const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Disabled,
    Hit,
    /// Built and written.
    Stored,
}

/// Field identity for caching: the rendered spec plus the index-coprime
/// flag, which changes splitting results.
fn field_key(field: &FieldDescriptor) -> String {
    if field.index_coprime_asserted() {
        format!("{}#index-coprime", field.render())
    } else {
        field.render()
    }
}

/// Hex digest naming the cache file for `(field, X)`.
pub fn cache_key(field: &FieldDescriptor, x: u64) -> String {
    let mut h = Sha256::new();
    h.update(field_key(field).as_bytes());
    h.update(b"\n");
    h.update(x.to_le_bytes());
    h.update(b"\n");
    h.update(CODE_VERSION.as_bytes());
    hex::encode(&h.finalize()[..16])
}

pub fn cache_path(dir: &Path, field: &FieldDescriptor, x: u64) -> PathBuf {
    dir.join(format!("sieve-{}.bin", cache_key(field, x)))
}

fn io_err(path: &Path, e: io::Error) -> Error {
    Error::Cache(format!("{}: {e}", path.display()))
}

fn put_str(buf: &mut Vec<u8>, s: &str) {
    buf.extend_from_slice(&(s.len() as u32).to_le_bytes());
    buf.extend_from_slice(s.as_bytes());
}

fn encode(sieve: &IdealCountSieve) -> Vec<u8> {
    let counts = sieve.counts();
    let mut buf = Vec::with_capacity(64 + counts.len() * 4);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    put_str(&mut buf, CODE_VERSION);
    put_str(&mut buf, &field_key(sieve.field()));
    buf.extend_from_slice(&sieve.limit().to_le_bytes());
    for &a in counts {
        buf.extend_from_slice(&a.to_le_bytes());
    }
    let digest = Sha256::digest(&buf);
    buf.extend_from_slice(&digest);
    buf
}

struct Reader<'a> {
    buf: &'a [u8],
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Option<&'a [u8]> {
        if self.buf.len() < n {
            return None;
        }
        let (head, rest) = self.buf.split_at(n);
        self.buf = rest;
        Some(head)
    }

    fn u32(&mut self) -> Option<u32> {
        self.take(4).map(|b| u32::from_le_bytes(b.try_into().unwrap()))
    }

    fn u64(&mut self) -> Option<u64> {
        self.take(8).map(|b| u64::from_le_bytes(b.try_into().unwrap()))
    }

    fn str(&mut self) -> Option<&'a str> {
        let n = self.u32()? as usize;
        std::str::from_utf8(self.take(n)?).ok()
    }
}

/// Counts stored in `bytes`, if it is an intact file for `(field, x)`.
fn decode(bytes: &[u8], field: &FieldDescriptor, x: u64) -> Option<Vec<u32>> {
    if bytes.len() < 32 {
        return None;
    }
    let (body, digest) = bytes.split_at(bytes.len() - 32);
    if Sha256::digest(body).as_slice() != digest {
        return None;
    }
    let mut r = Reader { buf: body };
    if r.take(8)? != MAGIC || r.u32()? != FORMAT_VERSION || r.str()? != CODE_VERSION {
        return None;
    }
    if r.str()? != field_key(field) || r.u64()? != x {
        return None;
    }
    let raw = r.take((x as usize + 1) * 4)?;
    if !r.buf.is_empty() {
        return None;
    }
    Some(raw.chunks_exact(4).map(|c| u32::from_le_bytes(c.try_into().unwrap())).collect())
}

/// Loads the cached sieve for `(field, x)`. A missing, stale or corrupt file
/// is a miss.
pub fn load(dir: &Path, field: &FieldDescriptor, x: u64, opts: SieveOptions) -> Result<Option<IdealCountSieve>> {
    let path = cache_path(dir, field, x);
    let bytes = match fs::read(&path) {
        Ok(b) => b,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(io_err(&path, e)),
    };
    match decode(&bytes, field, x) {
        Some(counts) => IdealCountSieve::from_counts(field.clone(), counts, opts).map(Some),
        None => Ok(None),
    }
}

/// Writes the sieve atomically (temp file, then rename).
pub fn store(dir: &Path, sieve: &IdealCountSieve) -> Result<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let path = cache_path(dir, sieve.field(), sieve.limit());
    let mut tmp = tempfile_in(dir)?;
    tmp.1.write_all(&encode(sieve)).map_err(|e| io_err(&tmp.0, e))?;
    tmp.1.sync_all().map_err(|e| io_err(&tmp.0, e))?;
    drop(tmp.1);
    fs::rename(&tmp.0, &path).map_err(|e| io_err(&path, e))?;
    Ok(path)
}

fn tempfile_in(dir: &Path) -> Result<(PathBuf, fs::File)> {
    for attempt in 0..100u32 {
        let path = dir.join(format!(".sieve-{}-{attempt}.tmp", std::process::id()));
        match fs::OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(f) => return Ok((path, f)),
            Err(e) if e.kind() == io::ErrorKind::AlreadyExists => continue,
            Err(e) => return Err(io_err(&path, e)),
        }
    }
    Err(Error::Cache(format!("{}: no free temporary name", dir.display())))
}

/// Cached sieve when available, otherwise a fresh build that is then
/// stored. `dir = None` bypasses the cache.
pub fn load_or_build(
    dir: Option<&Path>,
    field: &FieldDescriptor,
    x: u64,
    opts: SieveOptions,
) -> Result<(IdealCountSieve, CacheStatus)> {
    let Some(dir) = dir else {
        return Ok((IdealCountSieve::build_with(field, x, opts)?, CacheStatus::Disabled));
    };
    if let Some(sieve) = load(dir, field, x, opts)? {
        return Ok((sieve, CacheStatus::Hit));
    }
    let sieve = IdealCountSieve::build_with(field, x, opts)?;
    store(dir, &sieve)?;
    Ok((sieve, CacheStatus::Stored))
}
