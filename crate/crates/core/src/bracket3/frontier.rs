//! Frontier contraction for PD input: crossings are absorbed one at a time
//! while tracking, for every partial state, how the half-processed arcs are
//! connected through the smoothed part.

use std::collections::HashMap;

use crate::diagram::{Diagram, Smoothing};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};

/// Default cap on simultaneously open arcs.
pub const DEFAULT_FRONTIER_CAP: usize = 24;

/// Sorted `(x, y)` pairs, `x < y`, of open arcs joined through processed
/// crossings.
type Pairing = Vec<(u32, u32)>;

fn partner(p: &Pairing, x: u32) -> Option<u32> {
    p.iter().find_map(|&(u, v)| {
        if u == x {
            Some(v)
        } else if v == x {
            Some(u)
        } else {
            None
        }
    })
}

fn remove(p: &mut Pairing, x: u32) {
    p.retain(|&(u, v)| u != x && v != x);
}

fn insert(p: &mut Pairing, x: u32, y: u32) {
    let pair = (x.min(y), x.max(y));
    let at = p.binary_search(&pair).unwrap_or_else(|e| e);
    p.insert(at, pair);
}

/// Joins the ends of arcs `x` and `y` at the current crossing. `open[arc]`
/// is true iff exactly one endpoint of the arc was processed before.
/// Returns the number of loops closed.
fn join(p: &mut Pairing, open: &[bool], x: u32, y: u32) -> u32 {
    match (open[x as usize], open[y as usize]) {
        (false, false) if x == y => 1,
        (false, false) => {
            insert(p, x, y);
            0
        }
        (true, false) | (false, true) => {
            let (o, n) = if open[x as usize] { (x, y) } else { (y, x) };
            let q = partner(p, o).expect("open arc has a partner");
            remove(p, o);
            insert(p, q, n);
            0
        }
        (true, true) => {
            let px = partner(p, x).expect("open arc has a partner");
            if px == y {
                remove(p, x);
                1
            } else {
                let py = partner(p, y).expect("open arc has a partner");
                remove(p, x);
                remove(p, y);
                insert(p, px, py);
                0
            }
        }
    }
}

/// Greedy order: next is the unprocessed crossing sharing the most arcs with
/// the open set (ties by index).
fn order(d: &Diagram) -> Vec<usize> {
    let q = d.dense_crossings();
    let mut seen_ends = vec![0u8; d.arc_count()];
    let mut done = vec![false; q.len()];
    let mut out = Vec::with_capacity(q.len());
    for _ in 0..q.len() {
        let best = (0..q.len())
            .filter(|&k| !done[k])
            .max_by_key(|&k| {
                let shared = q[k].iter().filter(|&&a| seen_ends[a] == 1).count();
                (shared, std::cmp::Reverse(k))
            })
            .expect("unprocessed crossing");
        done[best] = true;
        for &a in &q[best] {
            seen_ends[a] += 1;
        }
        out.push(best);
    }
    out
}

/// Unnormalized three-variable bracket of a PD diagram.
pub fn frontier_evaluate(d: &Diagram) -> Result<Polynomial> {
    frontier_evaluate_capped(d, DEFAULT_FRONTIER_CAP)
}

pub fn frontier_evaluate_capped(d: &Diagram, cap: usize) -> Result<Polynomial> {
    let q = d.dense_crossings();
    let mut states: HashMap<Pairing, Polynomial> = HashMap::new();
    states.insert(Vec::new(), Polynomial::one());
    let mut ends = vec![0u8; d.arc_count()];
    for k in order(d) {
        let quad = q[k];
        let mut next: HashMap<Pairing, Polynomial> = HashMap::with_capacity(states.len() * 2);
        for (smoothing, mono) in [
            (Smoothing::A, Monomial::new(1, 0, 0)),
            (Smoothing::B, Monomial::new(0, 1, 0)),
        ] {
            for (pairing, coeff) in &states {
                let mut p = pairing.clone();
                let mut local = ends.clone();
                let mut loops = 0;
                for (i, j) in smoothing.pairs() {
                    let open: Vec<bool> = local.iter().map(|&e| e == 1).collect();
                    loops += join(&mut p, &open, quad[i] as u32, quad[j] as u32);
                    local[quad[i]] += 1;
                    local[quad[j]] += 1;
                }
                let m = mono.mul(&Monomial::new(0, 0, loops));
                *next.entry(p).or_default() += &coeff.mul_monomial(&m);
            }
        }
        for &a in &quad {
            ends[a] += 1;
        }
        let width = ends.iter().filter(|&&e| e == 1).count();
        if width > cap {
            return Err(Error::Capacity {
                what: "frontier width",
                size: width,
                cap,
                hint: "use the naive engine or a braid presentation",
            });
        }
        next.retain(|_, c| !c.is_zero());
        states = next;
    }
    debug_assert!(states.keys().all(|p| p.is_empty()));
    let total: Polynomial = states.into_values().sum();
    Ok(total.mul_monomial(&Monomial::new(0, 0, d.free_loops() as u32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket3::bracket3_raw;
    use crate::diagram::{closure, parse_braid, parse_pd};

    #[test]
    fn matches_state_sum() {
        for w in [
            "braid:1:",
            "braid:2:1",
            "braid:2:-1",
            "braid:2:1,1",
            "braid:2:1,1,1",
            "braid:3:1,-2,1,-2",
            "braid:4:1,-2,3,2,-1,2,3,3",
        ] {
            let d = closure(&parse_braid(w).unwrap());
            assert_eq!(
                frontier_evaluate(&d).unwrap(),
                bracket3_raw(&d).unwrap(),
                "{w}"
            );
        }
        let d = parse_pd("PD[X(8,5,1,6),X(4,1,5,2),X(2,8,3,7),X(6,4,7,3)]").unwrap();
        assert_eq!(frontier_evaluate(&d).unwrap(), bracket3_raw(&d).unwrap());
        let u = Diagram::unlink(3);
        assert_eq!(frontier_evaluate(&u).unwrap(), "d^3".parse().unwrap());
    }
}
