//! [`recognize`](sphinv_core::recognize) spread over `(family, order)` rows.

use rayon::prelude::*;
use sphinv_core::recognizer::{rank, search_row_in};
use sphinv_core::{Candidate, Error, Family, FloatInput, SearchConfig};

use crate::cache::ExtremaCache;

/// Same ranked list as the sequential search, computed row by row in parallel.
pub fn recognize(input: &FloatInput, cfg: &SearchConfig) -> Result<Vec<Candidate>, Error> {
    cfg.validate()?;
    let rows: Vec<(Family, u32)> = Family::ALL
        .iter()
        .flat_map(|&f| (0..=cfg.max_order).map(move |n| (f, n)))
        .collect();
    let found: Vec<Vec<Candidate>> = rows
        .par_iter()
        .map(|&(family, order)| {
            let ext = ExtremaCache::global().get(family, order, 4);
            search_row_in(&ext, input, cfg)
        })
        .collect();
    Ok(rank(found.into_iter().flatten().collect()))
}
