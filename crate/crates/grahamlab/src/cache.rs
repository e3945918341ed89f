//! Weight tables on disk.
//!
//! ```text
//! WTCACHE 1 <max_vertices>
//! WT1<TAB><hex tree code><TAB><level><TAB><weight>
//! ...
//! END <record count>
//! ```

use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use grahamlab_core::shadowcount::WT_TABLE_VERSION;
use grahamlab_core::{TreeCode, WtTable};
use num_bigint::BigUint;

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("cache version {found} is not supported (expected {supported})")]
    VersionMismatch { found: u32, supported: u32 },
    #[error("malformed cache record at line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("cache declares {declared} records but holds {found}")]
    ChecksumMismatch { declared: usize, found: usize },
}

fn malformed(line: usize, reason: impl Into<String>) -> CacheError {
    CacheError::Malformed {
        line,
        reason: reason.into(),
    }
}

pub fn write_table<W: Write>(table: &WtTable, mut out: W) -> io::Result<()> {
    writeln!(out, "WTCACHE {} {}", table.version(), table.max_vertices())?;
    for (code, level, weight) in table.iter() {
        writeln!(out, "WT1\t{}\t{level}\t{weight}", hex::encode(code.as_bytes()))?;
    }
    writeln!(out, "END {}", table.len())?;
    out.flush()
}

pub fn read_table<R: BufRead>(input: R) -> Result<WtTable, CacheError> {
    let mut lines = input.lines().enumerate();
    let io_err = |e| CacheError::Io {
        path: PathBuf::new(),
        source: e,
    };
    let (_, header) = lines.next().ok_or_else(|| malformed(1, "empty file"))?;
    let header = header.map_err(io_err)?;
    let fields: Vec<&str> = header.split(' ').collect();
    if fields.len() != 3 || fields[0] != "WTCACHE" {
        return Err(malformed(1, "missing WTCACHE header"));
    }
    let version: u32 = fields[1].parse().map_err(|_| malformed(1, "bad version"))?;
    if version != WT_TABLE_VERSION {
        return Err(CacheError::VersionMismatch {
            found: version,
            supported: WT_TABLE_VERSION,
        });
    }
    let max_vertices: usize = fields[2].parse().map_err(|_| malformed(1, "bad max_vertices"))?;
    let mut table = WtTable::new(max_vertices);
    let mut records = 0;
    for (i, line) in lines {
        let line_no = i + 1;
        let line = line.map_err(io_err)?;
        if let Some(count) = line.strip_prefix("END ") {
            let declared: usize = count.parse().map_err(|_| malformed(line_no, "bad END count"))?;
            if declared != records {
                return Err(CacheError::ChecksumMismatch {
                    declared,
                    found: records,
                });
            }
            return Ok(table);
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 || fields[0] != "WT1" {
            return Err(malformed(line_no, "expected WT1 record"));
        }
        let bytes = hex::decode(fields[1]).map_err(|_| malformed(line_no, "bad hex code"))?;
        let code = TreeCode::from_bytes(bytes).map_err(|e| malformed(line_no, e.to_string()))?;
        let level: u32 = fields[2].parse().map_err(|_| malformed(line_no, "bad level"))?;
        let weight: BigUint = fields[3].parse().map_err(|_| malformed(line_no, "bad weight"))?;
        table
            .insert(code, level, weight)
            .map_err(|e| malformed(line_no, e.to_string()))?;
        records += 1;
    }
    Err(malformed(records + 2, "missing END record (truncated file?)"))
}

pub fn load(path: &Path) -> Result<WtTable, CacheError> {
    let file = fs::File::open(path).map_err(|source| CacheError::Io {
        path: path.to_owned(),
        source,
    })?;
    read_table(BufReader::new(file)).map_err(|e| match e {
        CacheError::Io { source, .. } => CacheError::Io {
            path: path.to_owned(),
            source,
        },
        other => other,
    })
}

/// Writes through a temporary file and renames it into place.
pub fn store(table: &WtTable, path: &Path) -> Result<(), CacheError> {
    let io_err = |source| CacheError::Io {
        path: path.to_owned(),
        source,
    };
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(io_err)?;
    }
    let tmp = path.with_extension("tmp");
    let file = fs::File::create(&tmp).map_err(io_err)?;
    write_table(table, io::BufWriter::new(file)).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)
}

/// A directory of `wt-k<level>-v<max_vertices>.wtcache` files.
#[derive(Clone, Debug)]
pub struct CacheDir {
    root: PathBuf,
}

impl CacheDir {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        CacheDir { root: root.into() }
    }

    /// `$XDG_CACHE_HOME/grahamlab`, else `$HOME/.cache/grahamlab`, else
    /// `.grahamlab-cache`.
    pub fn default_root() -> PathBuf {
        if let Some(dir) = std::env::var_os("XDG_CACHE_HOME").filter(|d| !d.is_empty()) {
            return PathBuf::from(dir).join("grahamlab");
        }
        if let Some(home) = std::env::var_os("HOME").filter(|d| !d.is_empty()) {
            return PathBuf::from(home).join(".cache").join("grahamlab");
        }
        PathBuf::from(".grahamlab-cache")
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn table_path(&self, level: usize, max_vertices: usize) -> PathBuf {
        self.root.join(format!("wt-k{level}-v{max_vertices}.wtcache"))
    }

    fn parse_name(name: &str) -> Option<(usize, usize)> {
        let rest = name.strip_prefix("wt-k")?.strip_suffix(".wtcache")?;
        let (k, v) = rest.split_once("-v")?;
        Some((k.parse().ok()?, v.parse().ok()?))
    }

    /// Cached `(level, max_vertices)` pairs, sorted.
    pub fn entries(&self) -> Vec<(usize, usize)> {
        let Ok(dir) = fs::read_dir(&self.root) else {
            return Vec::new();
        };
        let mut out: Vec<(usize, usize)> = dir
            .filter_map(|e| e.ok())
            .filter_map(|e| Self::parse_name(&e.file_name().to_string_lossy()))
            .collect();
        out.sort_unstable();
        out
    }

    /// The smallest cached table that covers `level` for trees on
    /// `vertices` vertices. Unreadable files are skipped with a warning.
    pub fn find_covering(&self, level: usize, vertices: usize) -> Option<(PathBuf, WtTable)> {
        let needed = vertices.min(level + 1);
        let mut candidates: Vec<(usize, usize)> = self
            .entries()
            .into_iter()
            .filter(|&(k, v)| k >= level && v >= needed)
            .collect();
        candidates.sort_unstable_by_key(|&(k, v)| (k + v, k));
        for (k, v) in candidates {
            let path = self.table_path(k, v);
            match load(&path) {
                Ok(table) if table.covers(level as u32, vertices) => return Some((path, table)),
                Ok(_) => log::warn!("{} does not cover level {level}", path.display()),
                Err(e) => log::warn!("skipping cache file {}: {e}", path.display()),
            }
        }
        None
    }
}
