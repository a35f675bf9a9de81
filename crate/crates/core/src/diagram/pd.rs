use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use super::braid::BraidWord;
use super::unionfind::UnionFind;
use super::{ParseError, Sign};

/// One crossing `X(a,b,c,d)`: labels counterclockwise starting from the
/// incoming under-strand, so the under-strand runs `a → c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub arcs: [u32; 4],
    pub sign: Sign,
}

impl Crossing {
    /// Slot indices `(in, out)` of the over-strand.
    pub fn over_slots(&self) -> (usize, usize) {
        match self.sign {
            Sign::Positive => (3, 1),
            Sign::Negative => (1, 3),
        }
    }
}

/// Oriented link diagram in planar-diagram form plus a count of crossingless
/// circles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    dense: Vec<[usize; 4]>,
    arc_count: usize,
    free_loops: usize,
    components: usize,
}

impl Diagram {
    /// `k` disjoint crossingless circles.
    pub fn unlink(k: usize) -> Diagram {
        Diagram {
            crossings: Vec::new(),
            dense: Vec::new(),
            arc_count: 0,
            free_loops: k,
            components: k,
        }
    }

    /// Validates labels, infers orientation and signs.
    pub fn from_pd(quads: &[[u32; 4]], free_loops: usize) -> Result<Diagram, ParseError> {
        if quads.is_empty() && free_loops == 0 {
            return Err(ParseError::Empty);
        }
        let (labels, dense) = densify(quads)?;
        let arc_count = labels.len();
        let slot_dirs = infer_orientation(quads, &dense, &labels)?;
        let crossings = quads
            .iter()
            .zip(slot_dirs.iter())
            .map(|(q, dirs)| Crossing {
                arcs: *q,
                // over-strand leaving through slot b is the right-hand-rule positive case
                sign: if dirs[1] == Dir::Out {
                    Sign::Positive
                } else {
                    Sign::Negative
                },
            })
            .collect();
        Ok(Self::assemble(crossings, dense, arc_count, free_loops))
    }

    fn from_oriented(crossings: Vec<Crossing>, free_loops: usize) -> Diagram {
        let quads: Vec<[u32; 4]> = crossings.iter().map(|c| c.arcs).collect();
        let (labels, dense) = densify(&quads).expect("closure labels are valid");
        Self::assemble(crossings, dense, labels.len(), free_loops)
    }

    fn assemble(
        crossings: Vec<Crossing>,
        dense: Vec<[usize; 4]>,
        arc_count: usize,
        free_loops: usize,
    ) -> Diagram {
        let mut uf = UnionFind::new(arc_count);
        for q in &dense {
            uf.union(q[0], q[2]);
            uf.union(q[1], q[3]);
        }
        let components = uf.count_classes() + free_loops;
        Diagram {
            crossings,
            dense,
            arc_count,
            free_loops,
            components,
        }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// Crossings with arcs renumbered densely `0..arc_count`.
    pub fn dense_crossings(&self) -> &[[usize; 4]] {
        &self.dense
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// Same diagram with every crossing switched.
    pub fn mirror(&self) -> Diagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.arcs;
                match c.sign {
                    Sign::Positive => Crossing {
                        arcs: [d, a, b, cc],
                        sign: Sign::Negative,
                    },
                    Sign::Negative => Crossing {
                        arcs: [b, cc, d, a],
                        sign: Sign::Positive,
                    },
                }
            })
            .collect();
        Self::from_oriented(crossings, self.free_loops)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dir {
    Unknown,
    In,
    Out,
}

impl Dir {
    fn flip(self) -> Dir {
        match self {
            Dir::In => Dir::Out,
            Dir::Out => Dir::In,
            Dir::Unknown => Dir::Unknown,
        }
    }
}

fn densify(quads: &[[u32; 4]]) -> Result<(Vec<u32>, Vec<[usize; 4]>), ParseError> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for q in quads {
        for &l in q {
            *counts.entry(l).or_default() += 1;
        }
    }
    if let Some((&label, &count)) = counts.iter().find(|(_, &c)| c != 2) {
        return Err(ParseError::LabelCount { label, count });
    }
    let labels: Vec<u32> = counts.keys().copied().collect();
    let index: BTreeMap<u32, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let dense = quads.iter().map(|q| q.map(|l| index[&l])).collect();
    Ok((labels, dense))
}

/// Under-strands fix `a` as incoming and `c` as outgoing; directions then
/// propagate along arcs (an arc enters one slot and leaves another) and
/// across each over-strand. Components that only ever pass over are seeded
/// from the increasing-label convention.
fn infer_orientation(
    quads: &[[u32; 4]],
    dense: &[[usize; 4]],
    labels: &[u32],
) -> Result<Vec<[Dir; 4]>, ParseError> {
    let mut occurrences: Vec<Vec<(usize, usize)>> = vec![Vec::new(); labels.len()];
    for (k, q) in dense.iter().enumerate() {
        for (s, &arc) in q.iter().enumerate() {
            occurrences[arc].push((k, s));
        }
    }
    let mut dirs = vec![[Dir::Unknown; 4]; quads.len()];
    let mut queue = VecDeque::new();

    let set = |dirs: &mut Vec<[Dir; 4]>,
               queue: &mut VecDeque<(usize, usize)>,
               k: usize,
               s: usize,
               d: Dir|
     -> Result<(), ParseError> {
        match dirs[k][s] {
            Dir::Unknown => {
                dirs[k][s] = d;
                queue.push_back((k, s));
                Ok(())
            }
            cur if cur == d => Ok(()),
            _ => Err(ParseError::Orientation(format!(
                "conflicting direction for arc {} at crossing {}",
                quads[k][s],
                k + 1
            ))),
        }
    };

    for k in 0..quads.len() {
        set(&mut dirs, &mut queue, k, 0, Dir::In)?;
        set(&mut dirs, &mut queue, k, 2, Dir::Out)?;
    }
    loop {
        while let Some((k, s)) = queue.pop_front() {
            let d = dirs[k][s];
            let arc = dense[k][s];
            for &(k2, s2) in &occurrences[arc] {
                if (k2, s2) != (k, s) {
                    set(&mut dirs, &mut queue, k2, s2, d.flip())?;
                }
            }
            if s == 1 || s == 3 {
                set(&mut dirs, &mut queue, k, s ^ 2, d.flip())?;
            }
        }
        let Some(k) = dirs.iter().position(|d| d[1] == Dir::Unknown) else {
            break;
        };
        let b_in = seed_from_labels(quads, dense, labels, k)?;
        set(
            &mut dirs,
            &mut queue,
            k,
            1,
            if b_in { Dir::In } else { Dir::Out },
        )?;
    }
    Ok(dirs)
}

/// Decides whether the over-strand at crossing `k` enters through slot `b`,
/// using "labels increase along each component".
fn seed_from_labels(
    quads: &[[u32; 4]],
    dense: &[[usize; 4]],
    labels: &[u32],
    k: usize,
) -> Result<bool, ParseError> {
    let mut uf = UnionFind::new(labels.len());
    for q in dense {
        uf.union(q[0], q[2]);
        uf.union(q[1], q[3]);
    }
    let root = uf.find(dense[k][1]);
    let comp: Vec<u32> = (0..labels.len())
        .filter(|&i| uf.find(i) == root)
        .map(|i| labels[i])
        .collect();
    let succ = |x: u32| -> u32 {
        let i = comp
            .iter()
            .position(|&y| y == x)
            .expect("label in component");
        comp[(i + 1) % comp.len()]
    };
    let (b, d) = (quads[k][1], quads[k][3]);
    match (succ(b) == d, succ(d) == b) {
        (true, false) => Ok(true),
        (false, true) => Ok(false),
        (true, true) => Err(ParseError::Orientation(format!(
            "direction of over-strand {b}/{d} at crossing {} is ambiguous",
            k + 1
        ))),
        (false, false) => Err(ParseError::Orientation(format!(
            "labels {b} and {d} at crossing {} are not consecutive along their component",
            k + 1
        ))),
    }
}

/// Standard trace closure of a braid. Crossing `k` of the result is letter
/// `k` of the word; arcs are labelled 1.. consecutively along each component.
pub fn closure(b: &BraidWord) -> Diagram {
    let n = b.strands();
    let mut current: Vec<u32> = (0..n as u32).collect();
    let mut next = n as u32;
    let mut crossings = Vec::with_capacity(b.len());
    let mut touched = vec![false; n];
    for &l in b.letters() {
        let i = l.unsigned_abs() as usize - 1;
        touched[i] = true;
        touched[i + 1] = true;
        let (left, right) = (current[i], current[i + 1]);
        let (left_out, right_out) = (next, next + 1);
        next += 2;
        let crossing = if l > 0 {
            // over-strand bottom-left to top-right, under bottom-right to top-left
            Crossing {
                arcs: [right, right_out, left_out, left],
                sign: Sign::Positive,
            }
        } else {
            Crossing {
                arcs: [left, right, right_out, left_out],
                sign: Sign::Negative,
            }
        };
        crossings.push(crossing);
        current[i] = left_out;
        current[i + 1] = right_out;
    }
    // Tops join bottoms: the last arc at each position is the first one.
    let mut rename: BTreeMap<u32, u32> = BTreeMap::new();
    for (pos, &top) in current.iter().enumerate() {
        if touched[pos] {
            rename.insert(top, pos as u32);
        }
    }
    for c in crossings.iter_mut() {
        for a in c.arcs.iter_mut() {
            if let Some(&r) = rename.get(a) {
                *a = r;
            }
        }
    }
    let free_loops = touched.iter().filter(|t| !**t).count();
    relabel_along_components(crossings, free_loops)
}

/// Renumbers arcs 1.. so labels increase along the orientation of every
/// component.
fn relabel_along_components(crossings: Vec<Crossing>, free_loops: usize) -> Diagram {
    // arc -> (crossing, slot) where it ends (enters a crossing)
    let mut enters: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    for (k, c) in crossings.iter().enumerate() {
        let (over_in, _) = c.over_slots();
        enters.insert(c.arcs[0], (k, 0));
        enters.insert(c.arcs[over_in], (k, over_in));
    }
    let mut new_label: BTreeMap<u32, u32> = BTreeMap::new();
    let mut counter = 1;
    let starts: Vec<u32> = enters.keys().copied().collect();
    for start in starts {
        let mut arc = start;
        while !new_label.contains_key(&arc) {
            new_label.insert(arc, counter);
            counter += 1;
            let (k, s) = enters[&arc];
            let c = &crossings[k];
            let out_slot = match s {
                0 => 2,
                _ => c.over_slots().1,
            };
            arc = c.arcs[out_slot];
        }
    }
    let crossings = crossings
        .into_iter()
        .map(|c| Crossing {
            arcs: c.arcs.map(|a| new_label[&a]),
            sign: c.sign,
        })
        .collect();
    Diagram::from_oriented(crossings, free_loops)
}

impl fmt::Display for Diagram {
    /// `PD[X(a,b,c,d),...]` with crossings sorted; crossingless circles are
    /// written as trailing `O` items.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut quads: Vec<[u32; 4]> = self.crossings.iter().map(|c| c.arcs).collect();
        quads.sort();
        let mut items: Vec<String> = quads
            .iter()
            .map(|q| format!("X({},{},{},{})", q[0], q[1], q[2], q[3]))
            .collect();
        items.extend(std::iter::repeat_n("O".to_string(), self.free_loops));
        write!(f, "PD[{}]", items.join(","))
    }
}

impl FromStr for Diagram {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_pd(s)
    }
}

/// Parses `PD[X(a,b,c,d),...]`. `X[...]` brackets and whitespace are
/// accepted; a bare `O` item adds a crossingless circle.
pub fn parse_pd(text: &str) -> Result<Diagram, ParseError> {
    let mut p = Scanner::new(text);
    p.expect_str("PD")?;
    p.expect('[')?;
    let mut quads = Vec::new();
    let mut free_loops = 0;
    if !p.eat(']') {
        loop {
            match p.peek() {
                Some('X') => {
                    p.bump();
                    let close = if p.eat('(') {
                        ')'
                    } else if p.eat('[') {
                        ']'
                    } else {
                        return Err(p.error("expected '(' after X"));
                    };
                    let mut q = [0u32; 4];
                    for (i, slot) in q.iter_mut().enumerate() {
                        if i > 0 {
                            p.expect(',')?;
                        }
                        *slot = p.number()?;
                    }
                    p.expect(close)?;
                    quads.push(q);
                }
                Some('O') => {
                    p.bump();
                    free_loops += 1;
                }
                _ => return Err(p.error("expected 'X(' or 'O'")),
            }
            if p.eat(']') {
                break;
            }
            p.expect(',')?;
        }
    }
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Diagram::from_pd(&quads, free_loops)
}

struct Scanner<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        let mut s = Scanner { text, pos: 0 };
        s.skip_ws();
        s
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.pos += c.len_utf8();
        }
        self.skip_ws();
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn expect_str(&mut self, s: &str) -> Result<(), ParseError> {
        for c in s.chars() {
            if self.peek() != Some(c) {
                return Err(self.error(format!("expected '{s}'")));
            }
            self.pos += c.len_utf8();
        }
        self.skip_ws();
        Ok(())
    }

    fn number(&mut self) -> Result<u32, ParseError> {
        let start = self.pos;
        let len = self.text[start..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.text.len() - start);
        if len == 0 {
            return Err(self.error("expected arc label"));
        }
        let v = self.text[start..start + len]
            .parse()
            .map_err(|_| ParseError::at(start, "arc label out of range"))?;
        self.pos += len;
        self.skip_ws();
        Ok(v)
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::at(self.pos, msg)
    }
}
