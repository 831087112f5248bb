use hitlab::cache::Cache;
use hitlab::{Error, HitSpace, WeightQuotient, WeightVector};

/// Computes hit spaces, going through the cache when one is configured.
pub struct Session {
    cache: Option<Cache>,
}

impl Session {
    pub fn new(cache: Option<Cache>) -> Self {
        Session { cache }
    }

    pub fn hit_space(&self, k: usize, n: u32) -> Result<(HitSpace, bool), Error> {
        match &self.cache {
            Some(c) => c.hit_space(k, n),
            None => Ok((HitSpace::new(k, n)?, false)),
        }
    }

    pub fn weight_quotient(&self, k: usize, omega: &WeightVector) -> Result<(WeightQuotient, bool), Error> {
        match &self.cache {
            Some(c) => c.weight_quotient(k, omega),
            None => Ok((WeightQuotient::new(k, omega)?, false)),
        }
    }
}
