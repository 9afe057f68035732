use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};

use crate::config::config_hash;
use crate::output::{embedded_hash, file_digest, Manifest, MANIFEST};

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub config_hash: String,
    pub files: usize,
}

/// Recomputes the hash from the manifest's config text, then checks each
/// listed file's digest and embedded hash.
pub fn run(dir: &Path) -> Result<VerifyReport> {
    let text = fs::read_to_string(dir.join(MANIFEST))
        .with_context(|| format!("reading {MANIFEST} in {}", dir.display()))?;
    let manifest = Manifest::parse(&text)?;
    let derived = config_hash(&manifest.config_text);
    if derived != manifest.config_hash {
        bail!(
            "config hash mismatch: manifest says {}, config text hashes to {derived}",
            manifest.config_hash
        );
    }
    for (name, digest) in &manifest.files {
        crate::output::check_name(name)?;
        let path = dir.join(name);
        let actual = file_digest(&path)?;
        if &actual != digest {
            bail!("{name}: content digest {actual} differs from manifest {digest}");
        }
        let embedded = embedded_hash(&path)?;
        if embedded != derived {
            bail!("{name}: embeds config hash {embedded:?}, expected {derived}");
        }
    }
    Ok(VerifyReport {
        config_hash: derived,
        files: manifest.files.len(),
    })
}
