//! On-disk cache of eliminated hit spaces.
//!
//! Each entry is a [`Subspace`] in the layout of [`Subspace::write_to`]. File
//! names carry the algorithm version so stale entries are never picked up.
//! Unreadable or mismatched entries count as misses and are rebuilt.

use std::fs;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::f2linalg::Subspace;
use crate::hit::{HitSpace, Strategy, WeightQuotient};
use crate::monomial::WeightVector;
use crate::Error;

/// Bumped whenever the stored prefix would differ for the same key.
pub const ALGORITHM_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn hit_path(&self, k: usize, n: u32, strategy: Strategy) -> PathBuf {
        self.dir
            .join(format!("hit-a{ALGORITHM_VERSION}-k{k}-n{n}-{}.bin", strategy.name()))
    }

    fn weight_path(&self, k: usize, omega: &WeightVector) -> PathBuf {
        let w: Vec<String> = omega.entries().iter().map(u32::to_string).collect();
        self.dir
            .join(format!("qpw-a{ALGORITHM_VERSION}-k{k}-w{}.bin", w.join("_")))
    }

    fn read(path: &Path, k: usize, n: u32) -> Option<Subspace> {
        let file = fs::File::open(path).ok()?;
        let (fk, fn_, s) = Subspace::read_from(BufReader::new(file)).ok()?;
        (fk as usize == k && fn_ == n).then_some(s)
    }

    fn write(&self, path: &Path, k: usize, n: u32, s: &Subspace) -> Result<(), Error> {
        fs::create_dir_all(&self.dir)?;
        // write then rename so readers never see a partial file
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        {
            let mut w = BufWriter::new(fs::File::create(&tmp)?);
            s.write_to(&mut w, k as u32, n)?;
            w.flush()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// The hit space in degree `n`, and whether it came from the cache.
    pub fn hit_space(&self, k: usize, n: u32) -> Result<(HitSpace, bool), Error> {
        let strategy = HitSpace::default_strategy(k, n);
        let path = self.hit_path(k, n, strategy);
        if let Some(s) = Self::read(&path, k, n) {
            if let Ok(h) = HitSpace::from_parts(k, n, strategy, s) {
                return Ok((h, true));
            }
        }
        let h = HitSpace::with_strategy(k, n, strategy)?;
        self.write(&path, k, n, h.live_subspace())?;
        Ok((h, false))
    }

    pub fn weight_quotient(&self, k: usize, omega: &WeightVector) -> Result<(WeightQuotient, bool), Error> {
        let n = omega.degree() as u32;
        let path = self.weight_path(k, omega);
        if let Some(s) = Self::read(&path, k, n) {
            if let Ok(q) = WeightQuotient::from_parts(k, omega, s) {
                return Ok((q, true));
            }
        }
        let q = WeightQuotient::new(k, omega)?;
        self.write(&path, k, n, q.live_subspace())?;
        Ok((q, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn warm_and_cold_agree() {
        let dir = std::env::temp_dir().join(format!("hitcache-unit-{}", std::process::id()));
        let cache = Cache::new(&dir);
        let (cold, hit) = cache.hit_space(4, 12).unwrap();
        assert!(!hit);
        let (warm, hit) = cache.hit_space(4, 12).unwrap();
        assert!(hit);
        assert_eq!(cold.admissible_monomials(), warm.admissible_monomials());

        let omega = WeightVector::new(vec![3, 3]);
        let (a, _) = cache.weight_quotient(4, &omega).unwrap();
        let (b, hit) = cache.weight_quotient(4, &omega).unwrap();
        assert!(hit);
        assert_eq!(a.basis_monomials(), b.basis_monomials());

        // a truncated entry is a miss, not an error
        let path = cache.hit_path(4, 12, HitSpace::default_strategy(4, 12));
        let bytes = fs::read(&path).unwrap();
        fs::write(&path, &bytes[..bytes.len() / 2]).unwrap();
        let (again, hit) = cache.hit_space(4, 12).unwrap();
        assert!(!hit);
        assert_eq!(again.dim(), cold.dim());
        fs::remove_dir_all(&dir).unwrap();
    }
}
