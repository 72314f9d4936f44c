//! Zonal table construction with one tally per relation spread over threads.

use std::thread;

use pmscheme_core::zonal::{coset_class_tally, CosetTally};
use pmscheme_core::{partitions_of, zonal_table, Result, ZonalTable};

/// Same table as [`zonal_table`]; `threads <= 1` runs on the calling thread.
pub fn zonal_table_threaded(n: usize, threads: usize) -> Result<ZonalTable> {
    if threads <= 1 {
        return zonal_table(n);
    }
    // reject bad n before spawning anything
    if n == 0 || n > pmscheme_core::zonal::MAX_ZONAL_N {
        return zonal_table(n);
    }
    let classes = partitions_of(n);
    let chunk = classes.len().div_ceil(threads);
    let tallies: Vec<CosetTally> = thread::scope(|s| {
        let handles: Vec<_> = classes
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(coset_class_tally).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("tally thread panicked"))
            .collect()
    });
    ZonalTable::from_tallies(n, tallies)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_single_threaded() {
        for n in 1..=5 {
            let a = zonal_table(n).unwrap();
            let b = zonal_table_threaded(n, 3).unwrap();
            for mu in 0..a.classes() {
                for rho in 0..a.classes() {
                    assert_eq!(a.omega(mu, rho), b.omega(mu, rho));
                }
            }
        }
        assert!(zonal_table_threaded(9, 4).is_err());
    }
}
