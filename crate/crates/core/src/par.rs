//! Chunked data-parallel loops over index ranges.
//!
//! Every sweep in this crate is a loop over `0..len` where each index is
//! independent. Work is split into fixed-size chunks so that each chunk can
//! carry its own scratch state (usually an evaluator with a memo table).
//! Results are always combined in chunk order, so output does not depend on
//! scheduling. Without the `parallel` feature both modes run sequentially.

use std::ops::Range;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

pub const CHUNK: usize = 8192;

fn chunks(len: usize, size: usize) -> impl Iterator<Item = Range<usize>> + Clone {
    (0..len.div_ceil(size)).map(move |c| c * size..((c + 1) * size).min(len))
}

/// Runs `f` on every chunk of `0..len` and returns the results in order.
pub fn map_chunks<T, F>(len: usize, exec: Exec, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<usize>) -> T + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            let ranges: Vec<Range<usize>> = chunks(len, CHUNK).collect();
            ranges.into_par_iter().map(f).collect()
        }
        _ => chunks(len, CHUNK).map(f).collect(),
    }
}

/// The lowest-indexed hit, where `f` searches one chunk and returns its own
/// first hit.
pub fn find_first<T, F>(len: usize, exec: Exec, chunk: usize, f: F) -> Option<T>
where
    T: Send,
    F: Fn(Range<usize>) -> Option<T> + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            let ranges: Vec<Range<usize>> = chunks(len, chunk).collect();
            ranges.into_par_iter().find_map_first(f)
        }
        _ => chunks(len, chunk).find_map(f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chunks_cover_the_range() {
        let v: Vec<_> = chunks(10, 4).collect();
        assert_eq!(v, vec![0..4, 4..8, 8..10]);
        assert_eq!(chunks(0, 4).count(), 0);
    }

    #[test]
    fn modes_agree() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let sums = map_chunks(20_000, exec, |r| r.sum::<usize>());
            assert_eq!(sums.iter().sum::<usize>(), (0..20_000).sum::<usize>());
            let hit = find_first(1000, exec, 7, |r| r.into_iter().find(|i| i % 97 == 96));
            assert_eq!(hit, Some(96));
        }
    }
}
