//! Files written by the subcommands. Floats in CSV use `{:.16e}` (17
//! significant digits); JSON uses the shortest round-trip form. Lines end
//! in `\n`.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use smale_core::approach::slab_distance;
use smale_core::engine::{dist_diag, sup_distance, Trace};
use smale_core::{BandSet, PdGame};

pub const MANIFEST: &str = "manifest.json";

/// A player whose `μ` and band distance get their own CSV columns.
#[derive(Clone, Debug)]
pub struct Tracked {
    pub player: usize,
    pub band: BandSet<f64>,
}

pub fn trace_header<G: PdGame<f64> + ?Sized>(game: &G, tracked: &[Tracked]) -> String {
    let mut cols = vec!["n".to_string()];
    cols.extend(game.coord_names());
    cols.extend(tracked.iter().map(|t| format!("mu_{}", t.player + 1)));
    cols.extend(tracked.iter().map(|t| format!("dist_lambda_{}", t.player + 1)));
    cols.push("dist_diag".into());
    cols.push("dist_vstar".into());
    cols.join(",")
}

pub fn write_trace_csv<G: PdGame<f64> + ?Sized, W: Write>(
    out: W,
    trace: &Trace<f64>,
    game: &G,
    tracked: &[Tracked],
) -> Result<()> {
    let mut w = BufWriter::new(out);
    writeln!(w, "{}", trace_header(game, tracked))?;
    let v_star = game.mutual_cooperation();
    let mut payoffs = vec![0.0; game.player_count()];
    for row in trace.rows() {
        write!(w, "{}", row.n)?;
        for x in row.u {
            write!(w, ",{x:.16e}")?;
        }
        for t in tracked {
            write!(w, ",{:.16e}", game.mu(t.player, row.u))?;
        }
        for t in tracked {
            write!(w, ",{:.16e}", slab_distance(&t.band, row.u))?;
        }
        for (i, p) in payoffs.iter_mut().enumerate() {
            *p = game.player_payoff(i, row.u);
        }
        write!(w, ",{:.16e},{:.16e}", dist_diag(&payoffs), sup_distance(row.u, &v_star))?;
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}

pub fn sha256_file(path: &Path) -> Result<String> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

/// Collects output files and writes the manifest last.
pub struct Emitter {
    dir: PathBuf,
    files: Vec<String>,
}

impl Emitter {
    pub fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(Emitter {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        })
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.join(name)
    }

    pub fn csv(&mut self, name: &str, body: impl FnOnce(&mut fs::File) -> Result<()>) -> Result<()> {
        let path = self.path(name);
        let mut f = fs::File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        body(&mut f)?;
        self.files.push(name.to_string());
        Ok(())
    }

    pub fn json<S: Serialize + ?Sized>(&mut self, name: &str, value: &S) -> Result<()> {
        let path = self.path(name);
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
        self.files.push(name.to_string());
        Ok(())
    }

    pub fn finish(self, command: &str, seed: Option<u64>, config: serde_json::Value) -> Result<Manifest> {
        let mut outputs = BTreeMap::new();
        for f in &self.files {
            outputs.insert(f.clone(), sha256_file(&self.dir.join(f))?);
        }
        let manifest = Manifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            seed,
            config,
            outputs,
        };
        let mut text = serde_json::to_string_pretty(&manifest)?;
        text.push('\n');
        fs::write(self.dir.join(MANIFEST), text)?;
        Ok(manifest)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub seed: Option<u64>,
    /// Resolved configuration, defaults included.
    pub config: serde_json::Value,
    /// File name to SHA-256.
    pub outputs: BTreeMap<String, String>,
}

impl Manifest {
    pub fn load(dir: &Path) -> Result<Manifest> {
        let path = dir.join(MANIFEST);
        let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Outputs under `dir` whose checksum differs from this manifest, or
    /// that are missing.
    pub fn mismatches(&self, dir: &Path) -> Vec<String> {
        self.outputs
            .iter()
            .filter(|(name, sum)| sha256_file(&dir.join(name)).map_or(true, |s| &s != *sum))
            .map(|(name, _)| name.clone())
            .collect()
    }
}
