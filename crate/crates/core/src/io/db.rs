//! Append-only store of configuration records for one `(dim, rank)` layer.
//!
//! Layout of the directory:
//! - `journal.txt`: records in discovery order, each batch closed by a line
//!   `# checkpoint <tasks> <count>`; anything after the last checkpoint is
//!   an interrupted write and is discarded on open.
//! - `classes.txt`: canonical sorted records, written once the layer is
//!   complete.
//! - `manifest.txt`: `key=value` lines with the content hash.
//! - `lock`: the pid of the single writer.

use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::records::{parse_records, write_record, write_records, RecordMeta};
use crate::enumerate::{extend_layer, ClassStore, RankPlusOptions};
use crate::error::{Error, Result};
use crate::forms::config::VectorConfiguration;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Manifest {
    pub dim: usize,
    pub rank: usize,
    pub complete: bool,
    pub version: String,
    pub count: usize,
    /// Hex SHA-256 of `classes.txt` when complete, else of the journal.
    pub sha256: String,
}

impl Manifest {
    pub fn to_text(&self) -> String {
        format!(
            "dim={}\nrank={}\ncomplete={}\nversion={}\ncount={}\nsha256={}\n",
            self.dim,
            self.rank,
            u8::from(self.complete),
            self.version,
            self.count,
            self.sha256
        )
    }

    pub fn parse(text: &str) -> Result<Self> {
        let get = |key: &str| -> Result<&str> {
            text.lines()
                .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
                .ok_or_else(|| Error::IncompleteInput(format!("manifest lacks `{key}`")))
        };
        let num = |key: &str| -> Result<usize> {
            get(key)?.trim().parse().map_err(|_| Error::Invalid(format!("manifest field `{key}`")))
        };
        Ok(Manifest {
            dim: num("dim")?,
            rank: num("rank")?,
            complete: get("complete")?.trim() == "1",
            version: get("version")?.trim().to_string(),
            count: num("count")?,
            sha256: get("sha256")?.trim().to_string(),
        })
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

struct Lock(PathBuf);

impl Lock {
    fn acquire(dir: &Path) -> Result<Lock> {
        let path = dir.join("lock");
        for _ in 0..2 {
            match OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(mut f) => {
                    write!(f, "{}", std::process::id())?;
                    return Ok(Lock(path));
                }
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                    let holder = fs::read_to_string(&path).unwrap_or_default();
                    let alive = holder
                        .trim()
                        .parse::<u32>()
                        .map(|pid| pid == std::process::id() || Path::new(&format!("/proc/{pid}")).exists())
                        .unwrap_or(false);
                    if alive {
                        return Err(Error::Invalid(format!("{} is locked by pid {}", dir.display(), holder.trim())));
                    }
                    fs::remove_file(&path)?;
                }
                Err(e) => return Err(e.into()),
            }
        }
        Err(Error::Invalid(format!("cannot lock {}", dir.display())))
    }
}

impl Drop for Lock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

pub struct ConfigurationDatabase {
    dir: PathBuf,
    manifest: Manifest,
    _lock: Lock,
}

impl ConfigurationDatabase {
    /// Opens the layer store in `dir`, creating it if needed.
    pub fn open(dir: &Path, dim: usize, rank: usize) -> Result<Self> {
        fs::create_dir_all(dir)?;
        let lock = Lock::acquire(dir)?;
        let mpath = dir.join("manifest.txt");
        let manifest = if mpath.exists() {
            let m = Manifest::parse(&fs::read_to_string(&mpath)?)?;
            if (m.dim, m.rank) != (dim, rank) {
                return Err(Error::Invalid(format!(
                    "{} holds dim {} rank {}, not dim {dim} rank {rank}",
                    dir.display(),
                    m.dim,
                    m.rank
                )));
            }
            m
        } else {
            Manifest {
                dim,
                rank,
                complete: false,
                version: env!("CARGO_PKG_VERSION").to_string(),
                count: 0,
                sha256: sha256_hex(b""),
            }
        };
        let db = ConfigurationDatabase { dir: dir.to_path_buf(), manifest, _lock: lock };
        db.write_manifest()?;
        Ok(db)
    }

    pub fn manifest(&self) -> &Manifest {
        &self.manifest
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn write_manifest(&self) -> Result<()> {
        let tmp = self.dir.join("manifest.txt.tmp");
        fs::write(&tmp, self.manifest.to_text())?;
        fs::rename(tmp, self.dir.join("manifest.txt"))?;
        Ok(())
    }

    fn journal_path(&self) -> PathBuf {
        self.dir.join("journal.txt")
    }

    /// Journal records up to the last checkpoint and the number of tasks
    /// done. A torn tail is cut off the file.
    pub fn load_journal(&mut self) -> Result<(Vec<VectorConfiguration>, usize)> {
        let path = self.journal_path();
        let text = if path.exists() { fs::read_to_string(&path)? } else { String::new() };
        let mut end = 0;
        let mut tasks = 0;
        let mut offset = 0;
        for line in text.split_inclusive('\n') {
            offset += line.len();
            if let Some(rest) = line.strip_prefix("# checkpoint ") {
                if line.ends_with('\n') {
                    tasks = rest.split_whitespace().next().and_then(|t| t.parse().ok()).unwrap_or(tasks);
                    end = offset;
                }
            }
        }
        if end < text.len() {
            log::warn!("discarding {} bytes of interrupted journal in {}", text.len() - end, self.dir.display());
            let f = OpenOptions::new().write(true).open(&path)?;
            f.set_len(end as u64)?;
            f.sync_all()?;
        }
        let configs = parse_records(&text[..end])?.configs;
        self.manifest.count = configs.len();
        Ok((configs, tasks))
    }

    /// Appends one batch of records and the checkpoint closing it.
    pub fn append_batch(&mut self, batch: &[VectorConfiguration], tasks_done: usize) -> Result<()> {
        if self.manifest.complete {
            return Err(Error::Invalid("layer is already complete".into()));
        }
        let mut s = String::new();
        for v in batch {
            write_record(&mut s, v, Some(&RecordMeta::compute(v)?));
            s.push('\n');
        }
        self.manifest.count += batch.len();
        s.push_str(&format!("# checkpoint {tasks_done} {}\n", self.manifest.count));
        let mut f = OpenOptions::new().create(true).append(true).open(self.journal_path())?;
        f.write_all(s.as_bytes())?;
        f.sync_all()?;
        self.manifest.sha256 = sha256_hex(&fs::read(self.journal_path())?);
        self.write_manifest()
    }

    /// Drops an incomplete journal and starts the layer over.
    pub fn reset(&mut self) -> Result<()> {
        if self.journal_path().exists() {
            fs::remove_file(self.journal_path())?;
        }
        self.manifest.complete = false;
        self.manifest.count = 0;
        self.manifest.sha256 = sha256_hex(b"");
        self.write_manifest()
    }

    /// Writes the canonical class list and marks the layer complete.
    pub fn finish(&mut self, classes: &[VectorConfiguration]) -> Result<()> {
        let meta: Vec<RecordMeta> = classes.iter().map(RecordMeta::compute).collect::<Result<_>>()?;
        let text = write_records(classes, Some(&meta));
        let path = self.dir.join("classes.txt");
        fs::write(&path, &text)?;
        File::open(&path)?.sync_all()?;
        self.manifest.count = classes.len();
        self.manifest.sha256 = sha256_hex(text.as_bytes());
        self.manifest.complete = true;
        self.write_manifest()
    }

    /// Classes of a complete layer, after checking the manifest hash.
    pub fn read_complete(dir: &Path) -> Result<(Manifest, Vec<VectorConfiguration>)> {
        let m = Manifest::parse(&fs::read_to_string(dir.join("manifest.txt"))?)?;
        if !m.complete {
            return Err(Error::IncompleteLayers(format!("{} is not complete", dir.display())));
        }
        let text = fs::read(dir.join("classes.txt"))?;
        if sha256_hex(&text) != m.sha256 {
            return Err(Error::Certificate(format!("hash mismatch in {}", dir.display())));
        }
        let configs = parse_records(&String::from_utf8_lossy(&text))?.configs;
        Ok((m, configs))
    }
}

/// Rank `r` layer from the complete rank `r − 1` layer, processing `chunk`
/// lower classes per checkpoint and resuming from the journal. Stops with
/// `BudgetExhausted` after `max_batches` batches in this call.
pub fn extend_layer_resumable(
    db: &mut ConfigurationDatabase,
    lower: &[VectorConfiguration],
    opts: &RankPlusOptions,
    chunk: usize,
    max_batches: Option<usize>,
) -> Result<Vec<VectorConfiguration>> {
    let (n, r) = (db.manifest.dim, db.manifest.rank);
    if db.manifest.complete {
        return Ok(ConfigurationDatabase::read_complete(&db.dir)?.1);
    }
    let (known, mut done) = db.load_journal()?;
    let mut store = ClassStore::new();
    for v in known {
        if !store.insert(v)? {
            return Err(Error::Certificate("journal holds equivalent records".into()));
        }
    }
    let mut batches = 0;
    while done < lower.len() {
        if max_batches.is_some_and(|m| batches >= m) {
            return Err(Error::BudgetExhausted { iterations: done, pool: store.len() });
        }
        let end = (done + chunk.max(1)).min(lower.len());
        let before = store.len();
        extend_layer(n, r, &lower[done..end], &mut store, opts)?;
        db.append_batch(&store.reps()[before..], end)?;
        done = end;
        batches += 1;
    }
    let classes = store.into_sorted();
    db.finish(&classes)?;
    Ok(classes)
}

/// The complete layer `(n, r)` from the cache under `root`, computing and
/// storing any missing layers below it first. Without `resume`, partial
/// journals are discarded.
pub fn cached_layer(root: &Path, n: usize, r: usize, opts: &RankPlusOptions, resume: bool) -> Result<Vec<VectorConfiguration>> {
    let dir = root.join(format!("n{n}")).join(format!("r{r}"));
    if let Ok((_, classes)) = ConfigurationDatabase::read_complete(&dir) {
        return Ok(classes);
    }
    let lower = if r > n { Some(cached_layer(root, n, r - 1, opts, resume)?) } else { None };
    let mut db = ConfigurationDatabase::open(&dir, n, r)?;
    if !resume {
        db.reset()?;
    }
    match lower {
        None => {
            let mut classes: Vec<VectorConfiguration> =
                crate::enumerate::enumerate_rank_n(n, &Default::default())?.into_iter().map(|c| c.config).collect();
            crate::enumerate::sort_canonical(&mut classes);
            db.finish(&classes)?;
            Ok(classes)
        }
        Some(lower) => {
            let chunk = lower.len().div_ceil(32).max(1);
            extend_layer_resumable(&mut db, &lower, opts, chunk, None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_round_trip() {
        let m = Manifest { dim: 3, rank: 4, complete: true, version: "0.1.0".into(), count: 2, sha256: "ab".into() };
        assert_eq!(Manifest::parse(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn resume_matches_single_run() {
        let tmp = tempfile::tempdir().unwrap();
        let lower = crate::enumerate::enumerate_rank_plus(4, 5, &[VectorConfiguration::standard_basis(4)], &Default::default())
            .unwrap();
        let direct = crate::enumerate::enumerate_rank_plus(4, 6, &lower, &Default::default()).unwrap();
        let dir = tmp.path().join("d4r6");
        {
            let mut db = ConfigurationDatabase::open(&dir, 4, 6).unwrap();
            let e = extend_layer_resumable(&mut db, &lower, &Default::default(), 1, Some(1));
            assert!(matches!(e, Err(Error::BudgetExhausted { .. })));
        }
        // a torn write after the checkpoint
        let mut f = OpenOptions::new().append(true).open(dir.join("journal.txt")).unwrap();
        f.write_all(b"4 5\n1 0 0 0\n").unwrap();
        drop(f);
        let mut db = ConfigurationDatabase::open(&dir, 4, 6).unwrap();
        let resumed = extend_layer_resumable(&mut db, &lower, &Default::default(), 1, None).unwrap();
        assert_eq!(resumed, direct);
        let (m, back) = ConfigurationDatabase::read_complete(&dir).unwrap();
        assert!(m.complete);
        assert_eq!(back, direct);
    }

    #[test]
    fn lock_is_exclusive() {
        let tmp = tempfile::tempdir().unwrap();
        let a = ConfigurationDatabase::open(tmp.path(), 2, 3).unwrap();
        assert!(ConfigurationDatabase::open(tmp.path(), 2, 3).is_err());
        drop(a);
        assert!(ConfigurationDatabase::open(tmp.path(), 2, 3).is_ok());
    }
}
