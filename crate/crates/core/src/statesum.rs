//! Brute-force enumeration of all 2ⁿ smoothing states.

use rayon::prelude::*;

use crate::diagram::{Diagram, LoopCounter};
use crate::error::{Error, Result};

/// Default largest crossing count the state sum will enumerate.
pub const DEFAULT_STATE_CAP: usize = 24;

const CHUNK: u64 = 1 << 12;

/// `hist[a][l]` is the number of states with `a` A-smoothings that resolve
/// into `l` circles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateHistogram {
    pub crossings: usize,
    pub counts: Vec<Vec<u64>>,
}

impl StateHistogram {
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.counts.iter().enumerate().flat_map(|(a, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| **c > 0)
                .map(move |(l, c)| (a, l, *c))
        })
    }
}

pub fn state_histogram(d: &Diagram, cap: usize) -> Result<StateHistogram> {
    let n = d.crossing_count();
    if n > cap || n >= 64 {
        return Err(Error::Capacity {
            what: "crossing count",
            size: n,
            cap,
            hint: "use the tl engine for large diagrams",
        });
    }
    let max_loops = d.arc_count() + d.free_loops() + 1;
    let empty = || vec![vec![0u64; max_loops + 1]; n + 1];
    let total = 1u64 << n;
    let chunks = total.div_ceil(CHUNK);
    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut h = empty();
            let mut lc = LoopCounter::new(d);
            for mask in c * CHUNK..((c + 1) * CHUNK).min(total) {
                let a = n - mask.count_ones() as usize;
                h[a][lc.loops(mask)] += 1;
            }
            h
        })
        .reduce(empty, |mut x, y| {
            for (rx, ry) in x.iter_mut().zip(y) {
                for (cx, cy) in rx.iter_mut().zip(ry) {
                    *cx += cy;
                }
            }
            x
        });
    Ok(StateHistogram {
        crossings: n,
        counts,
    })
}
