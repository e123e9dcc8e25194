//! Process-wide memo of [`Extrema`] per `(family, order)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use sphinv_core::{Extrema, Family};

#[derive(Default)]
pub struct ExtremaCache {
    map: RwLock<HashMap<(Family, u32), Arc<Extrema>>>,
}

impl ExtremaCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static ExtremaCache {
        static CACHE: OnceLock<ExtremaCache> = OnceLock::new();
        CACHE.get_or_init(ExtremaCache::new)
    }

    /// Extrema of `f_n` with at least `count` positive stationary points stored.
    ///
    /// Concurrent callers may both compute; the entry with more stored points wins.
    pub fn get(&self, family: Family, order: u32, count: usize) -> Arc<Extrema> {
        let key = (family, order);
        if let Some(e) = self.map.read().expect("cache lock").get(&key) {
            if e.positive_len() >= count || !matches!(family, Family::Y | Family::J) {
                return Arc::clone(e);
            }
        }
        let fresh = Arc::new(Extrema::with_positive_count(family, order, count.max(4)));
        let mut map = self.map.write().expect("cache lock");
        let slot = map.entry(key).or_insert_with(|| Arc::clone(&fresh));
        if slot.positive_len() < fresh.positive_len() {
            *slot = fresh;
        }
        Arc::clone(slot)
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grows_but_never_shrinks() {
        let c = ExtremaCache::new();
        let a = c.get(Family::Y, 1, 6);
        assert!(a.positive_len() >= 6);
        let b = c.get(Family::Y, 1, 2);
        assert!(Arc::ptr_eq(&a, &b));
        let d = c.get(Family::Y, 1, 20);
        assert!(d.positive_len() >= 20);
        assert_eq!(c.get(Family::Y, 1, 3).positive_len(), d.positive_len());
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn concurrent_inserts_agree() {
        let c = ExtremaCache::new();
        let xs: Vec<f64> = std::thread::scope(|s| {
            let hs: Vec<_> = (0..8)
                .map(|_| s.spawn(|| c.get(Family::J, 2, 10).record(7).unwrap().abscissa))
                .collect();
            hs.into_iter().map(|h| h.join().unwrap()).collect()
        });
        assert!(xs.windows(2).all(|w| w[0] == w[1]));
    }
}
