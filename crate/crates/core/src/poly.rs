//! Sparse polynomials over the integers in the three variables `a`, `b`, `d`
//! (α, β, δ), with lexicographic monomial orders, multivariate division,
//! S-polynomials and Buchberger completion.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Hard cap on the number of terms any intermediate polynomial may reach in
/// division or completion.
pub const MAX_TERMS: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial exceeded {limit} terms ({terms}) during {context}")]
    TooLarge {
        terms: usize,
        limit: usize,
        context: &'static str,
    },
    #[error("S-polynomial undefined for a zero input")]
    ZeroSPolynomial,
    #[error("division by a zero basis element at index {0}")]
    ZeroDivisor(usize),
    #[error("variable precedence must be a permutation of a, b, d")]
    BadPrecedence,
    #[error("cannot parse polynomial at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Alpha = 0,
    Beta = 1,
    Delta = 2,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::Alpha, Var::Beta, Var::Delta];

    pub fn symbol(self) -> char {
        match self {
            Var::Alpha => 'a',
            Var::Beta => 'b',
            Var::Delta => 'd',
        }
    }

    fn from_symbol(c: char) -> Option<Var> {
        match c {
            'a' | 'α' => Some(Var::Alpha),
            'b' | 'β' => Some(Var::Beta),
            'd' | 'δ' => Some(Var::Delta),
            _ => None,
        }
    }
}

/// Exponent triple `(e_a, e_b, e_d)`. `(0,0,0)` is the constant monomial.
///
/// The derived `Ord` compares `a` first, then `b`, then `d`, which is the
/// lexicographic order with `a > b > d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0, 0, 0]);

    pub const fn new(a: u32, b: u32, d: u32) -> Self {
        Monomial([a, b, d])
    }

    pub fn var(v: Var) -> Self {
        let mut e = [0; 3];
        e[v as usize] = 1;
        Monomial(e)
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v as usize]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::ONE
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
        ])
    }

    /// `true` if `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(x, y)| x <= y)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial([
                other.0[0] - self.0[0],
                other.0[1] - self.0[1],
                other.0[2] - self.0[2],
            ]))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial([
            self.0[0].max(other.0[0]),
            self.0[1].max(other.0[1]),
            self.0[2].max(other.0[2]),
        ])
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(x, y)| *x == 0 || *y == 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exp(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v.symbol())?;
            } else {
                write!(f, "{}^{}", v.symbol(), e)?;
            }
        }
        Ok(())
    }
}

/// Lexicographic order with a chosen variable precedence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    precedence: [Var; 3],
}

impl MonomialOrder {
    /// Lex with `a > b > d`, the order every fixed-ideal computation uses.
    pub const LEX_ABD: MonomialOrder = MonomialOrder {
        precedence: [Var::Alpha, Var::Beta, Var::Delta],
    };

    pub fn lex(precedence: [Var; 3]) -> Result<Self, PolyError> {
        let mut seen = [false; 3];
        for v in precedence {
            if seen[v as usize] {
                return Err(PolyError::BadPrecedence);
            }
            seen[v as usize] = true;
        }
        Ok(MonomialOrder { precedence })
    }

    pub fn precedence(&self) -> [Var; 3] {
        self.precedence
    }

    fn is_natural(&self) -> bool {
        *self == Self::LEX_ABD
    }

    pub fn cmp(&self, m1: &Monomial, m2: &Monomial) -> Ordering {
        for v in self.precedence {
            match m1.exp(v).cmp(&m2.exp(v)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl Default for MonomialOrder {
    fn default() -> Self {
        Self::LEX_ABD
    }
}

pub fn mono_cmp(m1: &Monomial, m2: &Monomial, ord: &MonomialOrder) -> Ordering {
    ord.cmp(m1, m2)
}

/// Sparse polynomial in ℤ[a, b, d]. No stored coefficient is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, Monomial::ONE)
    }

    pub fn var(v: Var) -> Self {
        Self::monomial(1, Monomial::var(v))
    }

    pub fn monomial(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// Builds a polynomial from `(coefficient, [e_a, e_b, e_d])` pairs,
    /// combining repeated monomials.
    pub fn from_terms<C, I>(terms: I) -> Self
    where
        C: Into<BigInt>,
        I: IntoIterator<Item = (C, [u32; 3])>,
    {
        let mut p = Polynomial::zero();
        for (c, e) in terms {
            p.add_term(Monomial(e), c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms in ascending `a > b > d` lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `c * m * other` to `self`.
    pub fn add_scaled(&mut self, c: &BigInt, m: &Monomial, other: &Polynomial) {
        if c.is_zero() {
            return;
        }
        for (om, oc) in &other.terms {
            self.add_term(m.mul(om), c * oc);
        }
    }

    pub fn leading_term(&self, ord: &MonomialOrder) -> Option<(&Monomial, &BigInt)> {
        if ord.is_natural() {
            self.terms.iter().next_back()
        } else {
            self.terms.iter().max_by(|x, y| ord.cmp(x.0, y.0))
        }
    }

    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Option<Monomial> {
        self.leading_term(ord).map(|(m, _)| *m)
    }

    pub fn leading_coeff(&self, ord: &MonomialOrder) -> Option<&BigInt> {
        self.leading_term(ord).map(|(_, c)| c)
    }

    /// Maximum exponent of `v` over all terms.
    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Minimum exponent of `v` over all terms (0 for the zero polynomial).
    pub fn min_degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }

    /// Non-negative gcd of all coefficients.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self, ord: &MonomialOrder) -> Polynomial {
        let Some(lc) = self.leading_coeff(ord) else {
            return Polynomial::zero();
        };
        let mut g = self.content();
        if lc.is_negative() {
            g = -g;
        }
        self.exact_div_scalar(&g)
    }

    /// Makes the leading coefficient positive without touching the content.
    pub fn with_positive_lead(&self, ord: &MonomialOrder) -> Polynomial {
        match self.leading_coeff(ord) {
            Some(lc) if lc.is_negative() => -self,
            _ => self.clone(),
        }
    }

    fn exact_div_scalar(&self, s: &BigInt) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, c / s)).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Polynomial {
        if s.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, c * s)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluates at a point, mapping coefficients and variable values into a
    /// ring `T` via the supplied conversions.
    pub fn eval<T>(&self, point: [T; 3], from_int: impl Fn(&BigInt) -> T) -> T
    where
        T: Clone + Zero + One + Mul<Output = T> + Add<Output = T>,
    {
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = from_int(c);
            for v in Var::ALL {
                for _ in 0..m.exp(v) {
                    t = t * point[v as usize].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    fn check_size(&self, context: &'static str) -> Result<(), PolyError> {
        if self.terms.len() > MAX_TERMS {
            Err(PolyError::TooLarge {
                terms: self.terms.len(),
                limit: MAX_TERMS,
                context,
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text: terms descending in `a > b > d` lex order, every
    /// coefficient signed, unit coefficients and unit exponents elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{sign}{abs}")?;
            } else if abs.is_one() {
                write!(f, "{sign}{m}")?;
            } else {
                write!(f, "{sign}{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = PolyError;

    /// Accepts the canonical grammar with arbitrary whitespace; a leading
    /// sign on the first term is optional.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolyParser::new(s).parse()
    }
}

struct PolyParser<'a> {
    chars: Vec<(usize, char)>,
    idx: usize,
    src: &'a str,
}

impl<'a> PolyParser<'a> {
    fn new(src: &'a str) -> Self {
        PolyParser {
            chars: src
                .char_indices()
                .filter(|(_, c)| !c.is_whitespace())
                .collect(),
            idx: 0,
            src,
        }
    }

    fn pos(&self) -> usize {
        self.chars
            .get(self.idx)
            .map(|x| x.0)
            .unwrap_or(self.src.len())
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).map(|x| x.1)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn number(&mut self) -> Option<String> {
        let start = self.idx;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.idx += 1;
        }
        if self.idx == start {
            None
        } else {
            Some(self.chars[start..self.idx].iter().map(|x| x.1).collect())
        }
    }

    fn parse(mut self) -> Result<Polynomial, PolyError> {
        let mut p = Polynomial::zero();
        if self.chars.is_empty() {
            return self.err("empty input");
        }
        let mut first = true;
        while self.peek().is_some() {
            let negative = match self.peek() {
                Some('+') => {
                    self.idx += 1;
                    false
                }
                Some('-') => {
                    self.idx += 1;
                    true
                }
                _ if first => false,
                _ => return self.err("expected '+' or '-'"),
            };
            first = false;
            let mut coeff = BigInt::one();
            let mut mono = Monomial::ONE;
            loop {
                if let Some(digits) = self.number() {
                    coeff *= digits.parse::<BigInt>().expect("digits");
                } else if let Some(v) = self.peek().and_then(Var::from_symbol) {
                    self.idx += 1;
                    let mut e = 1u32;
                    if self.peek() == Some('^') {
                        self.idx += 1;
                        match self.number() {
                            Some(d) => match d.parse() {
                                Ok(x) => e = x,
                                Err(_) => return self.err("exponent out of range"),
                            },
                            None => return self.err("expected exponent"),
                        }
                    }
                    mono.0[v as usize] += e;
                } else {
                    return self.err("expected coefficient or variable");
                }
                if self.peek() == Some('*') {
                    self.idx += 1;
                } else {
                    break;
                }
            }
            if negative {
                coeff = -coeff;
            }
            p.add_term(mono, coeff);
        }
        p.check_size("parse")?;
        Ok(p)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial { (&self).$f(&rhs) }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: &Polynomial) -> Polynomial { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

pub fn poly_add(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p + q
}

pub fn poly_mul(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p * q
}

/// Result of multivariate division: `multiplier * p = Σ quotients[i] * basis[i] + remainder`.
///
/// The multiplier is 1 whenever every leading coefficient used divides the
/// coefficient it cancels (always the case for monic bases). Otherwise the
/// working polynomial is scaled to stay inside ℤ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Division {
    pub quotients: Vec<Polynomial>,
    pub remainder: Polynomial,
    pub multiplier: BigInt,
}

/// Divides `p` by `basis`, always cancelling the largest reducible term and
/// using the earliest basis element whose leading monomial divides it.
pub fn divide(
    p: &Polynomial,
    basis: &[Polynomial],
    ord: &MonomialOrder,
) -> Result<Division, PolyError> {
    let mut leads = Vec::with_capacity(basis.len());
    for (i, b) in basis.iter().enumerate() {
        match b.leading_term(ord) {
            Some((m, c)) => leads.push((*m, c.clone())),
            None => return Err(PolyError::ZeroDivisor(i)),
        }
    }
    let mut quotients = vec![Polynomial::zero(); basis.len()];
    let mut remainder = Polynomial::zero();
    let mut multiplier = BigInt::one();
    let mut rest = p.clone();

    while let Some((m, c)) = rest.leading_term(ord).map(|(m, c)| (*m, c.clone())) {
        let hit = leads
            .iter()
            .enumerate()
            .find_map(|(i, (lm, lc))| lm.quotient_of(&m).map(|q| (i, q, lc)));
        match hit {
            None => {
                rest.terms.remove(&m);
                remainder.terms.insert(m, c);
            }
            Some((i, shift, lc)) => {
                let (factor, scale) = if (&c % lc).is_zero() {
                    (&c / lc, None)
                } else {
                    let g = c.gcd(lc);
                    let scale = lc.abs() / &g;
                    let factor = (&c / &g) * lc.signum();
                    (factor, Some(scale))
                };
                if let Some(s) = scale {
                    rest = rest.scale(&s);
                    remainder = remainder.scale(&s);
                    for q in quotients.iter_mut() {
                        *q = q.scale(&s);
                    }
                    multiplier *= s;
                }
                quotients[i].add_term(shift, factor.clone());
                rest.add_scaled(&-factor, &shift, &basis[i]);
                rest.check_size("division")?;
            }
        }
    }
    Ok(Division {
        quotients,
        remainder,
        multiplier,
    })
}

/// `S(p, q) = (l/LC(p))·(L/LM(p))·p − (l/LC(q))·(L/LM(q))·q` with `L` the
/// monomial lcm and `l` the integer lcm of the leading coefficients.
pub fn s_poly(
    p: &Polynomial,
    q: &Polynomial,
    ord: &MonomialOrder,
) -> Result<Polynomial, PolyError> {
    let ((mp, cp), (mq, cq)) = match (p.leading_term(ord), q.leading_term(ord)) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(PolyError::ZeroSPolynomial),
    };
    let lcm = mp.lcm(mq);
    let l = cp.lcm(cq);
    let mut s = Polynomial::zero();
    s.add_scaled(&(&l / cp), &mp.quotient_of(&lcm).expect("lcm"), p);
    s.add_scaled(&-(&l / cq), &mq.quotient_of(&lcm).expect("lcm"), q);
    Ok(s)
}

/// Buchberger completion over ℚ with integer (primitive) representatives.
///
/// The output starts with the nonzero inputs in order; new elements are
/// appended as primitive polynomials with positive leading coefficient.
/// Pairs with coprime leading monomials are skipped.
pub fn buchberger(gens: &[Polynomial], ord: &MonomialOrder) -> Result<Vec<Polynomial>, PolyError> {
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut pairs: VecDeque<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = pairs.pop_front() {
        let li = basis[i].leading_monomial(ord).expect("nonzero");
        let lj = basis[j].leading_monomial(ord).expect("nonzero");
        if li.is_coprime(&lj) {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], ord)?;
        let r = divide(&s, &basis, ord)?.remainder;
        if r.is_zero() {
            continue;
        }
        let r = r.primitive(ord);
        r.check_size("buchberger")?;
        let k = basis.len();
        basis.push(r);
        pairs.extend((0..k).map(|i| (i, k)));
    }
    Ok(basis)
}

/// How `reduce_basis` treats integer content.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ContentMode {
    /// Keep whatever integer content the elements carry.
    #[default]
    Keep,
    /// Divide every element by its content.
    Primitive,
}

/// Minimal, inter-reduced basis with positive leading coefficients, sorted
/// ascending by leading monomial. The input must already be a Gröbner basis.
pub fn reduce_basis(
    basis: &[Polynomial],
    ord: &MonomialOrder,
    content: ContentMode,
) -> Result<Vec<Polynomial>, PolyError> {
    let nonzero: Vec<&Polynomial> = basis.iter().filter(|b| !b.is_zero()).collect();
    let leads: Vec<Monomial> = nonzero
        .iter()
        .map(|b| b.leading_monomial(ord).expect("nonzero"))
        .collect();
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, b) in nonzero.iter().enumerate() {
        let redundant = leads
            .iter()
            .enumerate()
            .any(|(j, lj)| j != i && lj.divides(&leads[i]) && (lj != &leads[i] || j < i));
        if !redundant {
            minimal.push((*b).clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let r = divide(g, &others, ord)?.remainder;
        reduced.push(match content {
            ContentMode::Keep => r.with_positive_lead(ord),
            ContentMode::Primitive => r.primitive(ord),
        });
    }
    reduced.sort_by(|x, y| {
        ord.cmp(
            &x.leading_monomial(ord).expect("nonzero"),
            &y.leading_monomial(ord).expect("nonzero"),
        )
    });
    Ok(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    const ORD: MonomialOrder = MonomialOrder::LEX_ABD;
    const P1: &str = "+a^2*d +2*a*b*d^2 +b^2*d -d^2";
    const P2: &str = "+a^2*d^2 +a*b*d^3 +a*b*d +b^2*d^2 -d";
    const Q1: &str = "d^3*b^4 - d*b^4 + d^4*b^2 - d^2*b^2 + d^3 - d";
    const Q2: &str = "b*d^4 + b^3*d^3 + a*d^3 - b*d^2 - b^3*d - a*d";
    const Q3: &str = "d*a^2 + 2*b*d^2*a - d^2 + b^2*d";

    #[test]
    fn lex_comparisons() {
        let m = |a, b, d| Monomial::new(a, b, d);
        assert_eq!(mono_cmp(&m(2, 0, 1), &m(1, 0, 3), &ORD), Ordering::Greater);
        assert_eq!(mono_cmp(&m(1, 2, 3), &m(1, 2, 3), &ORD), Ordering::Equal);
        assert_eq!(mono_cmp(&m(0, 4, 3), &m(1, 0, 1), &ORD), Ordering::Less);
        let dba = MonomialOrder::lex([Var::Delta, Var::Beta, Var::Alpha]).unwrap();
        assert_eq!(dba.cmp(&m(2, 0, 1), &m(1, 0, 3)), Ordering::Less);
        assert!(MonomialOrder::lex([Var::Alpha, Var::Alpha, Var::Delta]).is_err());
    }

    #[test]
    fn canonical_text() {
        assert_eq!(p(P1).to_string(), P1);
        // written order is irrelevant; output is lex-descending
        assert_eq!(p("a^2*d + 2*a*b*d^2 - d^2 + b^2*d").to_string(), P1);
        assert_eq!(p("  -  5 ").to_string(), "-5");
        assert_eq!(p("d*b*a").to_string(), "+a*b*d");
        assert_eq!(p("a - a").to_string(), "0");
        assert_eq!(p("0").to_string(), "0");
        assert!(matches!(
            "a +".parse::<Polynomial>(),
            Err(PolyError::Parse { .. })
        ));
        assert!("a b".parse::<Polynomial>().is_err());
        assert!("a^".parse::<Polynomial>().is_err());
        assert!("".parse::<Polynomial>().is_err());
    }

    #[test]
    fn add_examples() {
        let x = p(P1);
        assert_eq!(&x + &Polynomial::zero(), x);
        assert!((&p("a*d") + &p("-a*d")).is_zero());
        // Hand expansion of p1 + p2: the two a*b*d-type terms stay separate
        // (a*b*d^2 vs a*b*d^3 vs a*b*d), d^2 terms do not combine with b^2*d^2.
        assert_eq!(
            (&x + &p(P2)).to_string(),
            "+a^2*d^2 +a^2*d +a*b*d^3 +2*a*b*d^2 +a*b*d +b^2*d^2 +b^2*d -d^2 -d"
        );
    }

    #[test]
    fn mul_examples() {
        let x = p(P2);
        assert_eq!(&x * &Polynomial::one(), x);
        assert_eq!(
            &p("a*d + b") * &p("a + b*d"),
            p("a^2*d + a*b*d^2 + a*b + b^2*d")
        );
        let c1 = p("2*a*b*d - d + a^2 + b^2");
        assert_eq!(&Polynomial::var(Var::Delta) * &c1, p(P1));
    }

    #[test]
    fn derived_identity_p2() {
        let d = Polynomial::var(Var::Delta);
        let rhs = &(&d * &p(P1)) - &(&(&d * &p("d^2 - 1")) * &p("a*b - 1"));
        assert_eq!(rhs, p(P2));
    }

    #[test]
    fn divide_examples() {
        let g = [p(Q1), p(Q2), p(Q3)];
        assert!(divide(&p(Q3), &g, &ORD).unwrap().remainder.is_zero());
        let r = divide(&p("d"), &g, &ORD).unwrap();
        assert_eq!(r.remainder, p("d"));
        let r = divide(&p("a^2*d"), &[p(Q3)], &ORD).unwrap();
        assert_eq!(r.remainder, p("-2*a*b*d^2 + d^2 - b^2*d"));
        assert_eq!(r.quotients, vec![Polynomial::one()]);
        let r = divide(&p("a+b"), &[], &ORD).unwrap();
        assert_eq!(r.remainder, p("a+b"));
        assert!(r.quotients.is_empty());
        assert_eq!(
            divide(&p("a"), &[p("b"), Polynomial::zero()], &ORD),
            Err(PolyError::ZeroDivisor(1))
        );
    }

    #[test]
    fn divide_with_non_unit_leads() {
        let x = p("3*a^2 + b");
        let basis = [p("2*a + d")];
        let r = divide(&x, &basis, &ORD).unwrap();
        let lhs = x.scale(&r.multiplier);
        let rhs = &(&r.quotients[0] * &basis[0]) + &r.remainder;
        assert_eq!(lhs, rhs);
        assert!(r
            .remainder
            .terms()
            .all(|(m, _)| !Monomial::new(1, 0, 0).divides(m)));
        assert_eq!(r.multiplier, BigInt::from(4));
    }

    #[test]
    fn s_poly_examples() {
        let x = p(P1);
        assert!(s_poly(&x, &x, &ORD).unwrap().is_zero());
        assert!(s_poly(&p("a*d"), &p("b*d"), &ORD).unwrap().is_zero());
        assert_eq!(s_poly(&p("a+b"), &p("b+d"), &ORD).unwrap(), p("b^2 - a*d"));
        assert_eq!(
            s_poly(&Polynomial::zero(), &x, &ORD),
            Err(PolyError::ZeroSPolynomial)
        );
    }

    #[test]
    fn buchberger_examples() {
        let out = buchberger(&[p("a"), p("b")], &ORD).unwrap();
        assert_eq!(out, vec![p("a"), p("b")]);
        assert!(buchberger(&[], &ORD).unwrap().is_empty());

        let g = [p(Q1), p(Q2), p(Q3)];
        let out = buchberger(&g, &ORD).unwrap();
        assert_eq!(out.len(), 3, "the fixed basis is already complete");

        let b = buchberger(&[p(P1), p(P2)], &ORD).unwrap();
        let red = reduce_basis(&b, &ORD, ContentMode::Primitive).unwrap();
        assert_eq!(red, vec![p(Q1), p(Q2), p(Q3)]);
    }

    #[test]
    fn reduce_basis_examples() {
        assert_eq!(
            reduce_basis(&[p("a"), p("a^2")], &ORD, ContentMode::Keep).unwrap(),
            vec![p("a")]
        );
        assert_eq!(
            reduce_basis(&[p("2*a")], &ORD, ContentMode::Keep).unwrap(),
            vec![p("2*a")]
        );
        assert_eq!(
            reduce_basis(&[p("-2*a")], &ORD, ContentMode::Primitive).unwrap(),
            vec![p("a")]
        );
    }

    #[test]
    fn pow_and_eval() {
        let x = p("a + b");
        assert_eq!(x.pow(0), Polynomial::one());
        assert_eq!(x.pow(2), p("a^2 + 2*a*b + b^2"));
        let v: i64 = p(P1).eval([1i64, -2, 1], |c| i64::try_from(c).unwrap());
        assert_eq!(v, 0);
    }
}
