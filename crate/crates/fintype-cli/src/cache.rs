//! Disk cache for integer relation matrices. Files are keyed by a hash of
//! the generation parameters and carry a hash of their own body, so a stale
//! or corrupted file is detected and rebuilt.

use std::fs;
use std::path::{Path, PathBuf};

use fintype::algebra::SparseIntMatrix;
use fintype::vtk::{VtkPresentation, MAX_RANK};
use sha2::{Digest, Sha256};

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn sha256(text: &str) -> String {
    hex(&Sha256::digest(text.as_bytes()))
}

pub fn cache_key(n: usize) -> String {
    sha256(&format!("fintype vtk relations v{} n={n} max_rank={MAX_RANK}", env!("CARGO_PKG_VERSION")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheState {
    Hit,
    Miss,
    /// A file existed but failed its hash or shape check.
    Rebuilt,
    Disabled,
}

pub struct MatrixCache {
    dir: Option<PathBuf>,
}

impl MatrixCache {
    pub fn new(dir: Option<PathBuf>) -> MatrixCache {
        MatrixCache { dir }
    }

    pub fn path(&self, n: usize) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("vtk-n{n}-{}.triplet", &cache_key(n)[..16])))
    }

    fn load(path: &Path, n: usize) -> Option<VtkPresentation> {
        let text = fs::read_to_string(path).ok()?;
        let (head, body) = text.split_once('\n')?;
        let stored = head.strip_prefix("sha256 ")?;
        if stored != sha256(body) {
            return None;
        }
        let m = SparseIntMatrix::from_triplet(body).ok()?;
        VtkPresentation::with_matrix(n, m).ok()
    }

    /// The rank-`n` presentation, from disk when a valid file exists.
    pub fn presentation(&self, n: usize) -> fintype::Result<(VtkPresentation, CacheState)> {
        let Some(path) = self.path(n) else {
            return Ok((VtkPresentation::new(n)?, CacheState::Disabled));
        };
        let existed = path.exists();
        if let Some(p) = Self::load(&path, n) {
            return Ok((p, CacheState::Hit));
        }
        let p = VtkPresentation::new(n)?;
        let body = p.matrix.to_triplet();
        let text = format!("sha256 {}\n{body}", sha256(&body));
        // a failed write only costs a recomputation next time
        if let Some(dir) = path.parent() {
            let _ = fs::create_dir_all(dir);
        }
        let tmp = path.with_extension("tmp");
        if fs::write(&tmp, text).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
        Ok((p, if existed { CacheState::Rebuilt } else { CacheState::Miss }))
    }
}
