use std::fmt;
use std::str::FromStr;

use super::{ParseError, Sign};

/// Word in the braid group on `strands` strands. Letter `+i` is the generator
/// σᵢ (a positive crossing between positions `i` and `i+1`), `-i` its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self, ParseError> {
        if strands < 1 {
            return Err(ParseError::at(0, "strand count must be at least 1"));
        }
        for (k, &l) in letters.iter().enumerate() {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(ParseError::LetterOutOfRange {
                    index: k,
                    letter: l,
                    strands,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Self {
        BraidWord::new(strands, Vec::new()).expect("strands >= 1")
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Exponent sum; equals the writhe of the closure.
    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    /// Position permutation: strand starting at bottom position `i` ends at
    /// top position `perm[i]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        // at[pos] = strand currently at pos
        let mut perm = vec![0; self.strands];
        for (pos, &s) in at.iter().enumerate() {
            perm[s] = pos;
        }
        perm
    }

    /// Number of cycles of the permutation, i.e. components of the closure.
    pub fn cycle_count(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; perm.len()];
        let mut cycles = 0;
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = perm[i];
            }
        }
        cycles
    }

    /// Reverses every crossing.
    pub fn mirror(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().map(|l| -l).collect(),
        }
    }

    pub(crate) fn from_parts_unchecked(strands: usize, letters: Vec<i32>) -> Self {
        debug_assert!(BraidWord::new(strands, letters.clone()).is_ok());
        BraidWord { strands, letters }
    }
}

/// Markov stabilization: adds a strand and the letter `±n`, giving the
/// closure one extra kink of the given sign.
pub fn add_kink(b: &BraidWord, sign: Sign) -> BraidWord {
    let n = b.strands as i32;
    let mut letters = b.letters.clone();
    letters.push(sign.value() as i32 * n);
    BraidWord::from_parts_unchecked(b.strands + 1, letters)
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "braid:{}:", self.strands)?;
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_braid(s)
    }
}

/// Parses `braid:<n>:<comma-separated letters>`; the letter list may be empty.
pub fn parse_braid(text: &str) -> Result<BraidWord, ParseError> {
    let text = text.trim();
    let rest = text
        .strip_prefix("braid:")
        .ok_or_else(|| ParseError::at(0, "expected 'braid:' prefix"))?;
    let offset = "braid:".len();
    let (n_text, word_text) = rest
        .split_once(':')
        .ok_or_else(|| ParseError::at(text.len(), "expected ':' after strand count"))?;
    let strands: usize = n_text
        .trim()
        .parse()
        .map_err(|_| ParseError::at(offset, format!("bad strand count '{n_text}'")))?;
    if strands < 1 {
        return Err(ParseError::at(offset, "strand count must be at least 1"));
    }
    let mut letters = Vec::new();
    let mut pos = offset + n_text.len() + 1;
    if !word_text.trim().is_empty() {
        for tok in word_text.split(',') {
            let l: i32 = tok
                .trim()
                .parse()
                .map_err(|_| ParseError::at(pos, format!("bad letter '{}'", tok.trim())))?;
            letters.push(l);
            pos += tok.len() + 1;
        }
    }
    BraidWord::new(strands, letters)
}
