//! Seeded random rewrites of braid words that preserve the regular-isotopy
//! class of the closure.

use super::braid::BraidWord;
use super::Sign;

/// Knuth's MMIX constants.
pub const LCG_MULTIPLIER: u64 = 6364136223846793005;
pub const LCG_INCREMENT: u64 = 1442695040888963407;

/// 64-bit linear congruential generator `x ← x·M + C (mod 2⁶⁴)`; outputs
/// are the high 32 bits of the new state.
#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(LCG_MULTIPLIER)
            .wrapping_add(LCG_INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform-ish draw from `0..n` (`n > 0`).
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (self.next_u32() as u64 % n as u64) as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    InsertRii,
    DeleteRii,
    Riii,
    Commute,
}

const MOVES: [Move; 4] = [Move::InsertRii, Move::DeleteRii, Move::Riii, Move::Commute];

/// Inserts `σ_g^s σ_g^-s` before position `pos`.
pub fn insert_rii(b: &BraidWord, pos: usize, generator: u32, sign: Sign) -> BraidWord {
    assert!(generator >= 1 && (generator as usize) < b.strands());
    assert!(pos <= b.len());
    let g = generator as i32 * sign.value() as i32;
    let mut letters = b.letters().to_vec();
    letters.splice(pos..pos, [g, -g]);
    BraidWord::from_parts_unchecked(b.strands(), letters)
}

/// Deletes a cancelling pair starting at `pos`.
pub fn delete_rii(b: &BraidWord, pos: usize) -> Option<BraidWord> {
    let l = b.letters();
    if pos + 1 < l.len() && l[pos] == -l[pos + 1] {
        let mut letters = l.to_vec();
        letters.drain(pos..pos + 2);
        Some(BraidWord::from_parts_unchecked(b.strands(), letters))
    } else {
        None
    }
}

/// `σᵢσⱼσᵢ → σⱼσᵢσⱼ` for `|i−j| = 1` and equal signs, starting at `pos`.
pub fn riii(b: &BraidWord, pos: usize) -> Option<BraidWord> {
    let l = b.letters();
    if pos + 2 >= l.len() {
        return None;
    }
    let (x, y, z) = (l[pos], l[pos + 1], l[pos + 2]);
    if x != z || x.signum() != y.signum() || (x.abs() - y.abs()).abs() != 1 {
        return None;
    }
    let mut letters = l.to_vec();
    letters[pos..pos + 3].copy_from_slice(&[y, x, y]);
    Some(BraidWord::from_parts_unchecked(b.strands(), letters))
}

/// Swaps far-apart neighbours `σᵢσⱼ → σⱼσᵢ` (`|i−j| ≥ 2`) at `pos`.
pub fn commute(b: &BraidWord, pos: usize) -> Option<BraidWord> {
    let l = b.letters();
    if pos + 1 >= l.len() || (l[pos].abs() - l[pos + 1].abs()).abs() < 2 {
        return None;
    }
    let mut letters = l.to_vec();
    letters.swap(pos, pos + 1);
    Some(BraidWord::from_parts_unchecked(b.strands(), letters))
}

/// Cyclic rotation by `k` letters; the closure is unchanged up to planar
/// isotopy.
pub fn conjugate(b: &BraidWord, k: usize) -> BraidWord {
    let mut letters = b.letters().to_vec();
    if !letters.is_empty() {
        let k = k % letters.len();
        letters.rotate_left(k);
    }
    BraidWord::from_parts_unchecked(b.strands(), letters)
}

fn sites(b: &BraidWord, f: fn(&BraidWord, usize) -> Option<BraidWord>) -> Vec<usize> {
    (0..b.len()).filter(|&p| f(b, p).is_some()).collect()
}

/// Applies `count` random rewrites drawn with an [`Lcg`] seeded by `seed`.
/// Inapplicable draws are discarded and redrawn; one-strand words admit no
/// rewrite and are returned unchanged.
pub fn rewrite_moves(b: &BraidWord, seed: u64, count: usize) -> BraidWord {
    let mut rng = Lcg::new(seed);
    let mut word = b.clone();
    if b.strands() < 2 {
        return word;
    }
    for _ in 0..count {
        loop {
            let next = match MOVES[rng.below(MOVES.len())] {
                Move::InsertRii => {
                    let pos = rng.below(word.len() + 1);
                    let generator = 1 + rng.below(word.strands() - 1) as u32;
                    let sign = if rng.below(2) == 0 {
                        Sign::Positive
                    } else {
                        Sign::Negative
                    };
                    Some(insert_rii(&word, pos, generator, sign))
                }
                Move::DeleteRii => pick(&word, &mut rng, delete_rii),
                Move::Riii => pick(&word, &mut rng, riii),
                Move::Commute => pick(&word, &mut rng, commute),
            };
            if let Some(w) = next {
                word = w;
                break;
            }
        }
    }
    word
}

fn pick(
    word: &BraidWord,
    rng: &mut Lcg,
    f: fn(&BraidWord, usize) -> Option<BraidWord>,
) -> Option<BraidWord> {
    let s = sites(word, f);
    if s.is_empty() {
        None
    } else {
        f(word, s[rng.below(s.len())])
    }
}
