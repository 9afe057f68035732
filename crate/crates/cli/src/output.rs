//! Confined, hash-stamped output: every file lives directly inside one
//! directory and carries the resolved config hash in its first line or key.

use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use qemis_core::mcmc::TraceSink;
use qemis_core::TraceRecord;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tempfile::NamedTempFile;

pub const MANIFEST: &str = "manifest.txt";
const CONFIG_SEPARATOR: &str = "--- resolved config ---";

/// Plain file names only, so nothing escapes the directory.
pub fn check_name(name: &str) -> Result<()> {
    let ok = !name.is_empty()
        && name != "."
        && name != ".."
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-'));
    if !ok {
        bail!("refusing output file name {name:?}");
    }
    Ok(())
}

/// Maps an arbitrary label onto the file-name alphabet.
pub fn sanitize(label: &str) -> String {
    label
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

pub struct OutputDir {
    root: PathBuf,
    hash: String,
    written: Vec<String>,
}

impl OutputDir {
    pub fn create(root: &Path, hash: &str) -> Result<Self> {
        fs::create_dir_all(root).with_context(|| format!("creating {}", root.display()))?;
        Ok(Self {
            root: root.to_path_buf(),
            hash: hash.to_string(),
            written: Vec::new(),
        })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn hash(&self) -> &str {
        &self.hash
    }

    pub fn path(&self, name: &str) -> Result<PathBuf> {
        check_name(name)?;
        Ok(self.root.join(name))
    }

    /// Writes through a temporary sibling and renames it into place.
    pub fn write_atomic(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        let target = self.path(name)?;
        let mut tmp = NamedTempFile::new_in(&self.root)?;
        tmp.write_all(bytes)?;
        tmp.as_file().sync_all()?;
        tmp.persist(&target)
            .with_context(|| format!("replacing {}", target.display()))?;
        self.note(name);
        Ok(())
    }

    /// CSV with a `# config_hash=` first line.
    pub fn write_csv<R: Serialize>(&mut self, name: &str, rows: &[R]) -> Result<()> {
        let mut buf = format!("# config_hash={}\n", self.hash).into_bytes();
        {
            let mut w = csv::Writer::from_writer(&mut buf);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        self.write_atomic(name, &buf)
    }

    /// Claims a file that the caller writes directly, e.g. a streamed trace.
    pub fn reserve(&mut self, name: &str) -> Result<PathBuf> {
        let path = self.path(name)?;
        self.note(name);
        Ok(path)
    }

    fn note(&mut self, name: &str) {
        if !self.written.iter().any(|n| n == name) {
            self.written.push(name.to_string());
        }
    }

    /// Records every file written so far with its digest, then the config text.
    pub fn write_manifest(
        &mut self,
        command: &str,
        notes: &[String],
        canonical: &str,
    ) -> Result<()> {
        let mut text = format!("config_hash: {}\ncommand: {command}\n", self.hash);
        for note in notes {
            text.push_str(&format!("note: {note}\n"));
        }
        let mut names = self.written.clone();
        names.sort();
        for name in &names {
            text.push_str(&format!(
                "file: {name} sha256={}\n",
                file_digest(&self.root.join(name))?
            ));
        }
        text.push_str(CONFIG_SEPARATOR);
        text.push('\n');
        text.push_str(canonical);
        self.write_atomic(MANIFEST, text.as_bytes())
    }
}

pub fn file_digest(path: &Path) -> Result<String> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

#[derive(Debug, Serialize, Deserialize)]
struct TraceHeader {
    config_hash: String,
}

/// JSON-lines trace: a header object, then one record per line.
pub struct JsonlTrace {
    out: BufWriter<File>,
}

impl JsonlTrace {
    pub fn create(path: &Path, hash: &str) -> Result<Self> {
        let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
        let mut out = BufWriter::new(file);
        serde_json::to_writer(
            &mut out,
            &TraceHeader {
                config_hash: hash.to_string(),
            },
        )?;
        out.write_all(b"\n")?;
        Ok(Self { out })
    }

    pub fn finish(mut self) -> Result<()> {
        self.out.flush()?;
        Ok(())
    }
}

fn sink_err(e: impl std::fmt::Display) -> qemis_core::Error {
    qemis_core::Error::Sink(e.to_string())
}

impl TraceSink for JsonlTrace {
    fn record(&mut self, record: &TraceRecord) -> qemis_core::Result<()> {
        serde_json::to_writer(&mut self.out, record).map_err(sink_err)?;
        self.out.write_all(b"\n").map_err(sink_err)
    }

    fn flush(&mut self) -> qemis_core::Result<()> {
        self.out.flush().map_err(sink_err)
    }
}

/// Parses a trace file back into its hash and records.
pub fn read_trace(reader: impl io::Read) -> Result<(String, Vec<TraceRecord>)> {
    let mut lines = BufReader::new(reader).lines();
    let header: TraceHeader = match lines.next() {
        Some(line) => serde_json::from_str(&line?).context("trace header")?,
        None => bail!("empty trace"),
    };
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        records.push(serde_json::from_str(&line).with_context(|| format!("trace line {}", i + 2))?);
    }
    Ok((header.config_hash, records))
}

/// The hash a file declares for itself, by file type.
pub fn embedded_hash(path: &Path) -> Result<String> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let first = text.lines().next().unwrap_or_default();
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .unwrap_or_default();
    let hash = match ext {
        "jsonl" => serde_json::from_str::<TraceHeader>(first)?.config_hash,
        "csv" => first
            .strip_prefix("# config_hash=")
            .unwrap_or_default()
            .to_string(),
        "toml" => toml::from_str::<toml::Table>(&text)?
            .get("config_hash")
            .and_then(|v| v.as_str())
            .unwrap_or_default()
            .to_string(),
        "txt" => first
            .strip_prefix("config_hash: ")
            .unwrap_or_default()
            .to_string(),
        _ => bail!("unknown output type {}", path.display()),
    };
    Ok(hash)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    pub config_hash: String,
    pub files: Vec<(String, String)>,
    pub config_text: String,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Self> {
        let (head, config_text) = text
            .split_once(&format!("{CONFIG_SEPARATOR}\n"))
            .context("manifest has no resolved config")?;
        let mut config_hash = None;
        let mut files = Vec::new();
        for line in head.lines() {
            if let Some(h) = line.strip_prefix("config_hash: ") {
                config_hash = Some(h.to_string());
            } else if let Some(rest) = line.strip_prefix("file: ") {
                let (name, digest) = rest.split_once(" sha256=").context("malformed file line")?;
                files.push((name.to_string(), digest.to_string()));
            }
        }
        Ok(Self {
            config_hash: config_hash.context("manifest has no config_hash")?,
            files,
            config_text: config_text.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_with_separators_are_refused() {
        for bad in ["", ".", "..", "../x", "a/b", "/abs", "a\\b"] {
            assert!(check_name(bad).is_err(), "{bad}");
        }
        check_name("trace_i0_r1.jsonl").unwrap();
        assert_eq!(sanitize("a b/c.d"), "a_b_c_d");
    }

    #[test]
    fn atomic_write_replaces_and_leaves_no_temporaries() {
        let dir = tempfile::tempdir().unwrap();
        let mut out = OutputDir::create(dir.path(), "h").unwrap();
        out.write_atomic("x.toml", b"config_hash = \"h\"\nv = 1\n")
            .unwrap();
        out.write_atomic("x.toml", b"config_hash = \"h\"\nv = 2\n")
            .unwrap();
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
        assert_eq!(embedded_hash(&dir.path().join("x.toml")).unwrap(), "h");
    }

    #[test]
    fn manifest_lists_files_and_parses_back() {
        let dir = tempfile::tempdir().unwrap();
        let mut out = OutputDir::create(dir.path(), "abc").unwrap();
        out.write_csv("s.csv", &[(1, 2.5)]).unwrap();
        out.write_manifest("solve", &["n=3".into()], "seed = 1\n")
            .unwrap();
        let m = Manifest::parse(&fs::read_to_string(dir.path().join(MANIFEST)).unwrap()).unwrap();
        assert_eq!(m.config_hash, "abc");
        assert_eq!(m.files.len(), 1);
        assert_eq!(
            m.files[0].1,
            file_digest(&dir.path().join("s.csv")).unwrap()
        );
        assert_eq!(m.config_text, "seed = 1\n");
        assert_eq!(embedded_hash(&dir.path().join("s.csv")).unwrap(), "abc");
        assert_eq!(embedded_hash(&dir.path().join(MANIFEST)).unwrap(), "abc");
    }
}
