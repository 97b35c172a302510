//! Persistent text cache of evaluated MZV and MTV constants.
//!
//! The file starts with the header line `MZVCACHE v1`, followed by records
//! `kind|index|arg|prec_bits|midpoint|radius|crc32`, where midpoint and
//! radius are exact decimal expansions of dyadic rationals and the checksum
//! (hexadecimal) covers everything before the last `|`. Damaged records are
//! skipped with a warning; a damaged header discards the whole file.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;

use super::ball::{dyadic_decimal, RealBall};
use super::{ConstTag, Constant, NumericsError};

pub const HEADER: &str = "MZVCACHE v1";

/// Environment variable naming the cache file.
pub const CACHE_ENV: &str = "AKZETA_CACHE";

pub fn default_path() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|s| !s.is_empty()).map(PathBuf::from)
}

type Key = (ConstTag, String, u32);

#[derive(Debug, Clone, PartialEq, Eq)]
struct Stored {
    mid: String,
    rad: String,
}

#[derive(Debug)]
pub struct DiskCache {
    path: PathBuf,
    records: BTreeMap<Key, BTreeMap<u32, Stored>>,
    dirty: bool,
    warnings: Vec<String>,
}

fn record_line(key: &Key, prec: u32, s: &Stored) -> String {
    let body = format!("{}|{}|{}|{}|{}|{}", key.0.name(), key.1, key.2, prec, s.mid, s.rad);
    let crc = crc32fast::hash(body.as_bytes());
    format!("{body}|{crc:08x}")
}

fn parse_record(line: &str) -> Result<(Key, u32, Stored), String> {
    let (body, crc) = line.rsplit_once('|').ok_or("missing checksum")?;
    let expected = u32::from_str_radix(crc.trim(), 16).map_err(|_| "bad checksum field")?;
    if crc32fast::hash(body.as_bytes()) != expected {
        return Err("checksum mismatch".into());
    }
    let parts: Vec<&str> = body.split('|').collect();
    if parts.len() != 6 {
        return Err(format!("expected 7 fields, found {}", parts.len() + 1));
    }
    let tag: ConstTag = parts[0].parse()?;
    let index: crate::index::Index = parts[1].parse().map_err(|e| format!("{e}"))?;
    let arg: u32 = parts[2].parse().map_err(|_| "bad arg")?;
    let prec: u32 = parts[3].parse().map_err(|_| "bad precision")?;
    let stored = Stored { mid: parts[4].to_string(), rad: parts[5].to_string() };
    RealBall::from_decimal_parts(&stored.mid, &stored.rad, prec).ok_or("bad ball")?;
    Ok(((tag, index.to_string(), arg), prec, stored))
}

fn key_of(c: &Constant) -> Key {
    (c.tag, c.index.to_string(), c.arg)
}

impl DiskCache {
    /// Opens (without creating) the cache file at `path`.
    pub fn open(path: impl AsRef<Path>) -> DiskCache {
        let mut c = DiskCache {
            path: path.as_ref().to_path_buf(),
            records: BTreeMap::new(),
            dirty: false,
            warnings: Vec::new(),
        };
        let (records, warnings) = read_file(&c.path);
        c.records = records;
        for w in &warnings {
            log::warn!("{w}");
        }
        c.warnings = warnings;
        c
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Number of stored records.
    pub fn len(&self) -> usize {
        self.records.values().map(|m| m.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The stored value at precision `prec`, or else at the smallest larger one.
    pub fn get(&self, c: &Constant, prec: u32) -> Option<RealBall> {
        let per = self.records.get(&key_of(c))?;
        let (&p, s) = per.range(prec..).next()?;
        RealBall::from_decimal_parts(&s.mid, &s.rad, p)
    }

    pub fn put(&mut self, c: &Constant, prec: u32, b: &RealBall) {
        let (m, e) = b.rad().parts();
        let stored = Stored { mid: b.mid_decimal(), rad: dyadic_decimal(&BigInt::from(m), e) };
        let per = self.records.entry(key_of(c)).or_default();
        if per.get(&prec) != Some(&stored) {
            per.insert(prec, stored);
            self.dirty = true;
        }
    }

    /// Writes all records, merged with whatever is on disk, by atomic replacement.
    pub fn flush(&mut self) -> Result<(), NumericsError> {
        if !self.dirty {
            return Ok(());
        }
        let (on_disk, _) = read_file(&self.path);
        for (k, per) in on_disk {
            let mine = self.records.entry(k).or_default();
            for (p, s) in per {
                mine.entry(p).or_insert(s);
            }
        }
        let mut text = String::from(HEADER);
        text.push('\n');
        for (k, per) in &self.records {
            for (p, s) in per {
                text.push_str(&record_line(k, *p, s));
                text.push('\n');
            }
        }
        write_atomic(&self.path, &text).map_err(|e| NumericsError::Cache(format!("{}: {e}", self.path.display())))?;
        self.dirty = false;
        Ok(())
    }
}

fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}

fn read_file(path: &Path) -> (BTreeMap<Key, BTreeMap<u32, Stored>>, Vec<String>) {
    let mut records: BTreeMap<Key, BTreeMap<u32, Stored>> = BTreeMap::new();
    let mut warnings = Vec::new();
    let Ok(text) = fs::read_to_string(path) else {
        if path.exists() {
            warnings.push(format!("cache {} is unreadable; ignoring it", path.display()));
        }
        return (records, warnings);
    };
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(HEADER) {
        warnings.push(format!("cache {} has a bad header; ignoring it", path.display()));
        return (records, warnings);
    }
    for (n, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match parse_record(line) {
            Ok((k, p, s)) => {
                records.entry(k).or_default().insert(p, s);
            }
            Err(e) => warnings.push(format!("cache {} line {}: {e}; skipped", path.display(), n + 2)),
        }
    }
    (records, warnings)
}

/// Deletes the cache file if it exists.
pub fn clear(path: &Path) -> Result<(), NumericsError> {
    match fs::remove_file(path) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(()),
        Err(e) => Err(NumericsError::Cache(format!("{}: {e}", path.display()))),
    }
}
