//! Temperley–Lieb transfer-matrix evaluation of braid closures.
//!
//! An `n`-strand tangle without crossings is a planar perfect matching of
//! `2n` boundary points: bottom points `0..n` left to right, top points
//! `n..2n` left to right. A positive letter contributes `a·1 + b·e`, a
//! negative one `b·1 + a·e`, where `e` is the cup-cap on the two strands.

use std::collections::HashMap;

use crate::diagram::BraidWord;
use crate::error::{Error, Result};
use crate::poly::{Monomial, Polynomial};
use crate::quotient::normal_form;

pub const DEFAULT_STRAND_CAP: usize = 12;

/// Partner table of a crossingless tangle.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching(Vec<u8>);

impl Matching {
    pub fn identity(n: usize) -> Matching {
        let mut p = vec![0u8; 2 * n];
        for i in 0..n {
            p[i] = (n + i) as u8;
            p[n + i] = i as u8;
        }
        Matching(p)
    }

    /// Cup-cap `e_g` (1-based generator) on `n` strands.
    pub fn cup_cap(n: usize, g: usize) -> Matching {
        assert!(g >= 1 && g < n);
        let mut m = Matching::identity(n);
        let (l, r) = (g - 1, g);
        m.0[l] = r as u8;
        m.0[r] = l as u8;
        m.0[n + l] = (n + r) as u8;
        m.0[n + r] = (n + l) as u8;
        m
    }

    pub fn from_partners(p: Vec<u8>) -> Option<Matching> {
        let ok = p.len().is_multiple_of(2)
            && p.iter().enumerate().all(|(i, &j)| {
                (j as usize) < p.len() && j as usize != i && p[j as usize] as usize == i
            });
        let m = Matching(p);
        (ok && m.is_planar()).then_some(m)
    }

    pub fn strands(&self) -> usize {
        self.0.len() / 2
    }

    pub fn partner(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// Position of point `i` walking the boundary counter-clockwise:
    /// bottom left to right, then top right to left.
    fn boundary_pos(&self, i: usize) -> usize {
        let n = self.strands();
        if i < n {
            i
        } else {
            3 * n - 1 - i
        }
    }

    /// No two chords interleave along the boundary.
    pub fn is_planar(&self) -> bool {
        let chords: Vec<(usize, usize)> = (0..self.0.len())
            .filter(|&i| i < self.partner(i))
            .map(|i| {
                let (x, y) = (self.boundary_pos(i), self.boundary_pos(self.partner(i)));
                (x.min(y), x.max(y))
            })
            .collect();
        chords
            .iter()
            .all(|&(a, b)| chords.iter().all(|&(c, d)| !(a < c && c < b && b < d)))
    }

    /// Stacks `upper` on top of `self`; returns the composite and the number
    /// of closed loops formed in the middle.
    pub fn compose(&self, upper: &Matching) -> (Matching, usize) {
        let n = self.strands();
        assert_eq!(n, upper.strands());
        // nodes: 0..2n are self's points, 2n..4n upper's; self top i is glued
        // to upper bottom i
        let glue = |x: usize| -> Option<usize> {
            if (n..2 * n).contains(&x) {
                Some(2 * n + (x - n))
            } else if (2 * n..3 * n).contains(&x) {
                Some(n + (x - 2 * n))
            } else {
                None
            }
        };
        let across = |x: usize| -> usize {
            if x < 2 * n {
                self.partner(x)
            } else {
                2 * n + upper.partner(x - 2 * n)
            }
        };
        let outer = |x: usize| -> Option<usize> {
            if x < n {
                Some(x)
            } else if x >= 3 * n {
                Some(x - 2 * n)
            } else {
                None
            }
        };
        let mut out = vec![u8::MAX; 2 * n];
        let mut seen = vec![false; 4 * n];
        for start in (0..n).chain(3 * n..4 * n) {
            if seen[start] {
                continue;
            }
            let mut x = start;
            loop {
                seen[x] = true;
                let y = across(x);
                seen[y] = true;
                match glue(y) {
                    Some(z) => x = z,
                    None => {
                        let (s, t) = (outer(start).unwrap(), outer(y).unwrap());
                        out[s] = t as u8;
                        out[t] = s as u8;
                        break;
                    }
                }
            }
        }
        let mut loops = 0;
        for start in n..2 * n {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                let y = across(x);
                seen[y] = true;
                x = glue(y).expect("middle points are glued");
            }
        }
        (Matching(out), loops)
    }

    /// Number of circles in the braid-style closure (top `i` joined to
    /// bottom `i`).
    pub fn closure_loops(&self) -> usize {
        let n = self.strands();
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                let y = self.partner(x);
                seen[y] = true;
                x = if y < n { y + n } else { y - n };
            }
        }
        loops
    }
}

/// A single Temperley–Lieb basis element with its coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TLElement {
    pub matching: Matching,
    pub coeff: Polynomial,
}

/// Linear combination of matchings.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TLSum {
    strands: usize,
    terms: HashMap<Matching, Polynomial>,
}

fn a() -> Monomial {
    Monomial::new(1, 0, 0)
}
fn b() -> Monomial {
    Monomial::new(0, 1, 0)
}
fn d() -> Monomial {
    Monomial::new(0, 0, 1)
}

impl TLSum {
    pub fn identity(n: usize) -> TLSum {
        let mut terms = HashMap::new();
        terms.insert(Matching::identity(n), Polynomial::one());
        TLSum { strands: n, terms }
    }

    pub fn elements(&self) -> Vec<TLElement> {
        let mut v: Vec<TLElement> = self
            .terms
            .iter()
            .map(|(m, c)| TLElement {
                matching: m.clone(),
                coeff: c.clone(),
            })
            .collect();
        v.sort_by(|x, y| x.matching.cmp(&y.matching));
        v
    }

    pub fn coeff(&self, m: &Matching) -> Polynomial {
        self.terms.get(m).cloned().unwrap_or_else(Polynomial::zero)
    }

    fn add(&mut self, m: Matching, c: Polynomial) {
        let e = self.terms.entry(m).or_default();
        *e += &c;
    }

    /// Stacks one braid letter on top.
    pub fn apply_letter(&self, letter: i32) -> TLSum {
        let n = self.strands;
        let g = letter.unsigned_abs() as usize;
        let (keep, cup) = if letter > 0 { (a(), b()) } else { (b(), a()) };
        let (l, r) = (n + g - 1, n + g);
        let mut out = TLSum {
            strands: n,
            terms: HashMap::with_capacity(self.terms.len() * 2),
        };
        for (m, c) in &self.terms {
            out.add(m.clone(), c.mul_monomial(&keep));
            let mut p = m.0.clone();
            let mut factor = cup;
            if p[l] as usize == r {
                factor = factor.mul(&d());
            } else {
                let (x, y) = (p[l], p[r]);
                p[x as usize] = y;
                p[y as usize] = x;
                p[l] = r as u8;
                p[r] = l as u8;
            }
            out.add(Matching(p), c.mul_monomial(&factor));
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }

    fn map_coeffs(&mut self, f: impl Fn(&Polynomial) -> Polynomial) {
        for c in self.terms.values_mut() {
            *c = f(c);
        }
        self.terms.retain(|_, c| !c.is_zero());
    }

    /// Sum of `coeff · δ^{closure loops}`.
    pub fn close(&self) -> Polynomial {
        let mut total = Polynomial::zero();
        for (m, c) in &self.terms {
            let k = m.closure_loops() as u32;
            total += &c.mul_monomial(&Monomial::new(0, 0, k));
        }
        total
    }
}

fn check_strands(b: &BraidWord, cap: usize) -> Result<()> {
    if b.strands() > cap {
        return Err(Error::Capacity {
            what: "strand count",
            size: b.strands(),
            cap,
            hint: "raise the strand cap or use the naive engine",
        });
    }
    Ok(())
}

/// Unnormalized three-variable bracket of the closure of `b`.
pub fn tl_evaluate(b: &BraidWord) -> Result<Polynomial> {
    tl_evaluate_capped(b, DEFAULT_STRAND_CAP)
}

pub fn tl_evaluate_capped(b: &BraidWord, cap: usize) -> Result<Polynomial> {
    check_strands(b, cap)?;
    debug_assert!(convention_lock_holds());
    let mut s = TLSum::identity(b.strands());
    for &l in b.letters() {
        s = s.apply_letter(l);
    }
    Ok(s.close())
}

/// Same value modulo the ideal, with coefficients reduced to normal form
/// after every letter to bound term growth.
pub fn tl_evaluate_reduced(b: &BraidWord) -> Result<Polynomial> {
    check_strands(b, DEFAULT_STRAND_CAP)?;
    let mut s = TLSum::identity(b.strands());
    for &l in b.letters() {
        s = s.apply_letter(l);
        s.map_coeffs(|c| normal_form(c).into_inner());
    }
    Ok(normal_form(&s.close()).into_inner())
}

/// `σσ⁻¹ = ab·1 + (a² + b² + abd)·e` on two strands.
pub fn convention_lock_holds() -> bool {
    let s = TLSum::identity(2).apply_letter(1).apply_letter(-1);
    let one: Polynomial = "a*b".parse().expect("literal");
    let e: Polynomial = "a^2 + b^2 + a*b*d".parse().expect("literal");
    s.terms.len() == 2
        && s.coeff(&Matching::identity(2)) == one
        && s.coeff(&Matching::cup_cap(2, 1)) == e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_braid;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn convention_lock() {
        assert!(convention_lock_holds());
        // reverse order gives the same element
        let s = TLSum::identity(2).apply_letter(-1).apply_letter(1);
        assert_eq!(s.coeff(&Matching::identity(2)), p("a*b"));
    }

    #[test]
    fn matchings() {
        assert!(Matching::identity(4).is_planar());
        assert!(Matching::cup_cap(4, 2).is_planar());
        assert_eq!(
            Matching::from_partners(vec![2, 3, 0, 1]),
            Some(Matching::identity(2))
        );
        // crossing chords: bottom0–top1 and bottom1–top0
        assert!(Matching::from_partners(vec![3, 2, 1, 0]).is_none());
        let e = Matching::cup_cap(3, 1);
        assert_eq!(e.compose(&e), (e.clone(), 1));
        let f = Matching::cup_cap(3, 2);
        assert_eq!(e.compose(&f).0.compose(&e), (e.clone(), 0));
        assert_eq!(Matching::identity(3).closure_loops(), 3);
        assert_eq!(e.closure_loops(), 2);
    }

    #[test]
    fn apply_letter_matches_compose() {
        let n = 4;
        let mut s = TLSum::identity(n);
        for l in [1, -2, 3, 2, -1] {
            s = s.apply_letter(l);
        }
        for l in [1i32, -3] {
            let next = s.apply_letter(l);
            let g = l.unsigned_abs() as usize;
            let (keep, cup) = if l > 0 {
                (p("a"), p("b"))
            } else {
                (p("b"), p("a"))
            };
            let mut expect = TLSum {
                strands: n,
                terms: HashMap::new(),
            };
            for el in s.elements() {
                expect.add(el.matching.clone(), &el.coeff * &keep);
                let (m, loops) = el.matching.compose(&Matching::cup_cap(n, g));
                let c = &(&el.coeff * &cup) * &p("d").pow(loops as u32);
                expect.add(m, c);
            }
            expect.terms.retain(|_, c| !c.is_zero());
            assert_eq!(next, expect);
        }
    }

    #[test]
    fn examples() {
        assert_eq!(
            tl_evaluate(&parse_braid("braid:2:").unwrap()).unwrap(),
            p("d^2")
        );
        assert_eq!(
            tl_evaluate(&parse_braid("braid:1:").unwrap()).unwrap(),
            p("d")
        );
        assert_eq!(
            tl_evaluate(&parse_braid("braid:2:1").unwrap()).unwrap(),
            p("a*d^2 + b*d")
        );
        assert_eq!(
            tl_evaluate(&parse_braid("braid:2:1,1,1").unwrap()).unwrap(),
            p("a^3*d^2 + 3*a^2*b*d + 3*a*b^2*d^2 + b^3*d^3")
        );
    }

    #[test]
    fn long_word_against_capped_naive() {
        use crate::bracket3::{bracket3_raw_capped, frontier_evaluate};
        use crate::diagram::{closure, Lcg};
        let mut rng = Lcg::new(11);
        let letters: Vec<i32> = (0..30)
            .map(|_| {
                let g = 1 + rng.below(3) as i32;
                if rng.below(2) == 0 {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let full = BraidWord::new(4, letters.clone()).unwrap();
        let short = BraidWord::new(4, letters[..20].to_vec()).unwrap();
        assert_eq!(
            tl_evaluate(&short).unwrap(),
            bracket3_raw_capped(&closure(&short), 20).unwrap()
        );
        // the naive oracle refuses the full word at the same cap
        assert!(matches!(
            bracket3_raw_capped(&closure(&full), 20),
            Err(Error::Capacity { .. })
        ));
        assert_eq!(
            tl_evaluate(&full).unwrap(),
            frontier_evaluate(&closure(&full)).unwrap()
        );
    }

    #[test]
    fn strand_cap() {
        let b = parse_braid("braid:13:1").unwrap();
        assert!(matches!(tl_evaluate(&b), Err(Error::Capacity { .. })));
    }
}
