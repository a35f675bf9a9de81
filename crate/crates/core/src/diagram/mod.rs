//! Link diagrams: braid words, planar-diagram codes, braid closure, state
//! resolution and the seeded braid rewrite engine.

mod braid;
mod moves;
mod pd;
pub(crate) mod unionfind;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use braid::{add_kink, parse_braid, BraidWord};
pub use moves::{
    commute, conjugate, delete_rii, insert_rii, rewrite_moves, riii, Lcg, Move, LCG_INCREMENT,
    LCG_MULTIPLIER,
};
pub use pd::{closure, parse_pd, Crossing, Diagram};

use unionfind::UnionFind;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("letter {letter} at index {index} out of range for {strands} strands")]
    LetterOutOfRange {
        index: usize,
        letter: i32,
        strands: usize,
    },
    #[error("arc label {label} appears {count} times (expected exactly 2)")]
    LabelCount { label: u32, count: usize },
    #[error("orientation inference failed: {0}")]
    Orientation(String),
    #[error("empty diagram")]
    Empty,
}

impl ParseError {
    pub(crate) fn at(pos: usize, msg: impl Into<String>) -> Self {
        ParseError::Syntax {
            pos,
            msg: msg.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn opposite(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

pub fn writhe(d: &Diagram) -> i64 {
    d.writhe()
}

/// Kauffman smoothing at a crossing `X(a,b,c,d)`: `A` joins `a–b` and
/// `c–d`, `B` joins `a–d` and `b–c`. For a positive braid letter `A` is the
/// vertical (identity) smoothing; for a negative letter it is the cup-cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Smoothing {
    A,
    B,
}

impl Smoothing {
    pub fn pairs(self) -> [(usize, usize); 2] {
        match self {
            Smoothing::A => [(0, 1), (2, 3)],
            Smoothing::B => [(0, 3), (1, 2)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct State {
    pub choices: Vec<Smoothing>,
}

impl State {
    pub fn all(n: usize, s: Smoothing) -> State {
        State {
            choices: vec![s; n],
        }
    }

    /// Bit `k` set means crossing `k` takes the `B` smoothing.
    pub fn from_mask(n: usize, mask: u64) -> State {
        State {
            choices: (0..n)
                .map(|k| {
                    if mask >> k & 1 == 1 {
                        Smoothing::B
                    } else {
                        Smoothing::A
                    }
                })
                .collect(),
        }
    }

    pub fn b_count(&self) -> usize {
        self.choices.iter().filter(|c| **c == Smoothing::B).count()
    }
}

/// Number of circles left after smoothing every crossing per `s`.
pub fn resolve_state(d: &Diagram, s: &State) -> usize {
    assert_eq!(
        s.choices.len(),
        d.crossing_count(),
        "state length must equal crossing count"
    );
    let mut uf = UnionFind::new(d.arc_count());
    for (q, c) in d.dense_crossings().iter().zip(&s.choices) {
        for (x, y) in c.pairs() {
            uf.union(q[x], q[y]);
        }
    }
    uf.count_classes() + d.free_loops()
}

/// Reusable loop counter for bitmask states.
#[derive(Debug)]
pub struct LoopCounter<'a> {
    diagram: &'a Diagram,
    uf: UnionFind,
}

impl<'a> LoopCounter<'a> {
    pub fn new(diagram: &'a Diagram) -> Self {
        LoopCounter {
            diagram,
            uf: UnionFind::new(diagram.arc_count()),
        }
    }

    /// Loop count for the state where bit `k` selects `B` at crossing `k`.
    pub fn loops(&mut self, mask: u64) -> usize {
        self.uf.reset(self.diagram.arc_count());
        for (k, q) in self.diagram.dense_crossings().iter().enumerate() {
            if mask >> k & 1 == 0 {
                self.uf.union(q[0], q[1]);
                self.uf.union(q[2], q[3]);
            } else {
                self.uf.union(q[0], q[3]);
                self.uf.union(q[1], q[2]);
            }
        }
        self.uf.count_classes() + self.diagram.free_loops()
    }
}

/// Either input form accepted on the command line and in tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    Braid(BraidWord),
    Pd(Diagram),
}

impl Presentation {
    pub fn parse(text: &str) -> Result<Presentation, ParseError> {
        let t = text.trim();
        if t.starts_with("braid:") {
            parse_braid(t).map(Presentation::Braid)
        } else if t.starts_with("PD") {
            parse_pd(t).map(Presentation::Pd)
        } else {
            Err(ParseError::at(0, "expected 'braid:' or 'PD['"))
        }
    }

    pub fn diagram(&self) -> Diagram {
        match self {
            Presentation::Braid(b) => closure(b),
            Presentation::Pd(d) => d.clone(),
        }
    }

    pub fn crossing_count(&self) -> usize {
        match self {
            Presentation::Braid(b) => b.len(),
            Presentation::Pd(d) => d.crossing_count(),
        }
    }

    pub fn writhe(&self) -> i64 {
        match self {
            Presentation::Braid(b) => b.writhe(),
            Presentation::Pd(d) => d.writhe(),
        }
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Presentation::Braid(b) => b.fmt(f),
            Presentation::Pd(d) => d.fmt(f),
        }
    }
}

impl FromStr for Presentation {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Presentation::parse(s)
    }
}
