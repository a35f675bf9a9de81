//! The classical Kauffman bracket in ℤ[a, a⁻¹] and its writhe-normalized
//! form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::diagram::Diagram;
use crate::error::Result;
use crate::statesum::{state_histogram, DEFAULT_STATE_CAP};

/// Integer Laurent polynomial in one variable `a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: BTreeMap<i32, BigInt>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i32) -> Self {
        let mut l = Laurent::zero();
        l.add_term(exp, c.into());
        l
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (C, i32)>) -> Self {
        let mut l = Laurent::zero();
        for (c, e) in terms {
            l.add_term(e, c.into());
        }
        l
    }

    /// The circle value `−a⁻² − a²`.
    pub fn loop_value() -> Self {
        Laurent::from_terms([(-1, -2), (-1, 2)])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i32) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exp: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(exp).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    /// Multiplies by `a^k`.
    pub fn shift(&self, k: i32) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Laurent {
        let mut out = Laurent::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c * s);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Laurent {
        (0..e).fold(Laurent::one(), |acc, _| &acc * self)
    }

    /// Substitutes `a → a⁻¹`.
    pub fn invert_variable(&self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Laurent) -> Option<Laurent> {
        let (dmax, dlead) = divisor.terms.iter().next_back()?;
        let dmin = divisor.min_exp()?;
        let Some(lowest) = self.min_exp() else {
            return Some(Laurent::zero());
        };
        let mut rest = self.clone();
        let mut q = Laurent::zero();
        while let Some((rmax, rlead)) = rest.terms.iter().next_back().map(|(e, c)| (*e, c.clone()))
        {
            let e = rmax - dmax;
            if e < lowest - dmin || !(&rlead % dlead).is_zero() {
                return None;
            }
            let t = Laurent::monomial(&rlead / dlead, e);
            rest = &rest - &(&t * divisor);
            q = &q + &t;
        }
        Some(q)
    }
}

impl fmt::Display for Laurent {
    /// Terms descending by exponent: `-1*a^-4 + 1*a^0 - 2*a^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i == 0 {
                write!(f, "{c}*a^{e}")?;
            } else if c.is_negative() {
                write!(f, " - {}*a^{e}", c.abs())?;
            } else {
                write!(f, " + {c}*a^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Laurent {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "0" {
            return Ok(Laurent::zero());
        }
        // split before every sign that is not an exponent sign
        let bytes = compact.as_bytes();
        let mut cuts = vec![0];
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                cuts.push(i);
            }
        }
        cuts.push(bytes.len());
        let mut out = Laurent::zero();
        for w in cuts.windows(2) {
            let term = &compact[w[0]..w[1]];
            let (negative, body) = match term.as_bytes().first() {
                Some(b'+') => (false, &term[1..]),
                Some(b'-') => (true, &term[1..]),
                _ => (false, term),
            };
            let (c, e) = body
                .split_once("*a^")
                .ok_or_else(|| format!("bad term '{term}'"))?;
            let mut c: BigInt = c.parse().map_err(|_| format!("bad coefficient '{c}'"))?;
            let e: i32 = e.parse().map_err(|_| format!("bad exponent '{e}'"))?;
            if negative {
                c = -c;
            }
            out.add_term(e, c);
        }
        Ok(out)
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// `⟨D⟩ = Σ_s a^{#A−#B} (−a⁻² − a²)^{loops−1}` over all smoothing states.
pub fn kauffman_bracket(d: &Diagram) -> Result<Laurent> {
    kauffman_bracket_capped(d, DEFAULT_STATE_CAP)
}

pub fn kauffman_bracket_capped(d: &Diagram, cap: usize) -> Result<Laurent> {
    let hist = state_histogram(d, cap)?;
    let n = hist.crossings as i32;
    let delta = Laurent::loop_value();
    let max_loops = hist.iter().map(|(_, l, _)| l).max().unwrap_or(1);
    let mut powers = vec![Laurent::one()];
    for _ in 1..max_loops {
        let next = &powers[powers.len() - 1] * &delta;
        powers.push(next);
    }
    let mut out = Laurent::zero();
    for (a, loops, count) in hist.iter() {
        debug_assert!(loops >= 1);
        let exp = 2 * a as i32 - n;
        let term = powers[loops - 1].shift(exp).scale(&BigInt::from(count));
        out = &out + &term;
    }
    Ok(out)
}

/// `(−a³)^{−w} · bracket`.
pub fn normalize_by_writhe(bracket: &Laurent, writhe: i64) -> Laurent {
    let w = writhe as i32;
    let signed = if w.rem_euclid(2) == 1 {
        -bracket
    } else {
        bracket.clone()
    };
    signed.shift(-3 * w)
}

/// `[D] = (−a³)^{−w(D)} ⟨D⟩`.
pub fn f_invariant(d: &Diagram) -> Result<Laurent> {
    Ok(normalize_by_writhe(&kauffman_bracket(d)?, d.writhe()))
}
