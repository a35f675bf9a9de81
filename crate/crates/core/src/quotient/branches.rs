//! Solution branches of `p1 = p2 = 0`, stored exactly as sums of rational
//! multiples of roots of unity and powers of free variables, and checked by
//! complex floating-point evaluation.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

use super::{bigint_to_f64, ideal};
use crate::poly::Var;

/// Free-variable sample values `2, 3+i, −1/2, 5i`.
pub const SAMPLES: [Complex64; 4] = [
    Complex64::new(2.0, 0.0),
    Complex64::new(3.0, 1.0),
    Complex64::new(-0.5, 0.0),
    Complex64::new(0.0, 5.0),
];

/// `(−1)^{num/den} = exp(iπ·num/den)` with `0 ≤ num < 2·den`, reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    num: u32,
    den: u32,
}

impl RootOfUnity {
    pub fn new(num: i64, den: u32) -> Self {
        assert!(den > 0);
        let period = 2 * den as i64;
        let n = num.rem_euclid(period) as u32;
        let g = n.gcd(&den).max(1);
        let (n, d) = if n == 0 { (0, 1) } else { (n / g, den / g) };
        RootOfUnity { num: n, den: d }
    }

    pub fn one() -> Self {
        RootOfUnity::new(0, 1)
    }

    pub fn value(&self) -> Complex64 {
        // quarter turns are exact so integer branches evaluate exactly
        match (self.num, self.den) {
            (0, 1) => return Complex64::new(1.0, 0.0),
            (1, 1) => return Complex64::new(-1.0, 0.0),
            (1, 2) => return Complex64::new(0.0, 1.0),
            (3, 2) => return Complex64::new(0.0, -1.0),
            _ => {}
        }
        Complex64::from_polar(
            1.0,
            std::f64::consts::PI * self.num as f64 / self.den as f64,
        )
    }

    fn times_minus_one(self) -> Self {
        RootOfUnity::new(self.num as i64 + self.den as i64, self.den)
    }
}

/// `coeff · root · var^power`, with an integer coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExprTerm {
    pub coeff: i64,
    pub root: RootOfUnity,
    pub var: Option<(Var, i32)>,
}

/// Exact closed-form expression: a sum of [`ExprTerm`]s.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Expr {
    terms: Vec<ExprTerm>,
}

impl Expr {
    pub fn int(c: i64) -> Expr {
        Expr::term(c, RootOfUnity::one(), None)
    }

    /// `(−1)^{num/den}`.
    pub fn root(num: i64, den: u32) -> Expr {
        Expr::term(1, RootOfUnity::new(num, den), None)
    }

    /// The imaginary unit `(−1)^{1/2}`.
    pub fn i() -> Expr {
        Expr::root(1, 2)
    }

    pub fn var_pow(v: Var, k: i32) -> Expr {
        Expr::term(1, RootOfUnity::one(), Some((v, k)))
    }

    fn term(coeff: i64, root: RootOfUnity, var: Option<(Var, i32)>) -> Expr {
        let mut e = Expr::default();
        e.push(ExprTerm { coeff, root, var });
        e
    }

    /// Keeps the representation canonical: positive coefficients (signs
    /// folded into the root), like terms merged, terms sorted.
    fn push(&mut self, mut t: ExprTerm) {
        if t.coeff == 0 {
            return;
        }
        if t.coeff < 0 {
            t.coeff = -t.coeff;
            t.root = t.root.times_minus_one();
        }
        let key = |x: &ExprTerm| (x.root, x.var.map(|(v, k)| (v as u8, k)));
        let opposite = ExprTerm {
            root: t.root.times_minus_one(),
            ..t
        };
        if let Some(i) = self.terms.iter().position(|x| key(x) == key(&t)) {
            self.terms[i].coeff += t.coeff;
        } else if let Some(i) = self.terms.iter().position(|x| key(x) == key(&opposite)) {
            let c = self.terms[i].coeff - t.coeff;
            self.terms.remove(i);
            if c != 0 {
                self.push(ExprTerm {
                    coeff: c,
                    ..opposite
                });
            }
        } else {
            self.terms.push(t);
        }
        self.terms.sort_by_key(|x| (key(x), x.coeff));
    }

    pub fn terms(&self) -> &[ExprTerm] {
        &self.terms
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self
            .terms
            .iter()
            .filter_map(|t| t.var.map(|x| x.0))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// Evaluates with free-variable values from `env`; `None` on division
    /// by zero or an unbound variable.
    pub fn eval(&self, env: &[(Var, Complex64)]) -> Option<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let mut x = t.root.value() * t.coeff as f64;
            if let Some((v, k)) = t.var {
                let z = env.iter().find(|(w, _)| *w == v)?.1;
                if k < 0 && z.norm() < 1e-300 {
                    return None;
                }
                x *= z.powi(k);
            }
            acc += x;
        }
        Some(acc)
    }
}

impl Add for Expr {
    type Output = Expr;
    fn add(mut self, rhs: Expr) -> Expr {
        for t in rhs.terms {
            self.push(t);
        }
        self
    }
}

impl Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        let mut out = Expr::default();
        for t in self.terms {
            out.push(ExprTerm {
                coeff: -t.coeff,
                ..t
            });
        }
        out
    }
}

impl Sub for Expr {
    type Output = Expr;
    fn sub(self, rhs: Expr) -> Expr {
        self + (-rhs)
    }
}

impl std::ops::Mul<Expr> for i64 {
    type Output = Expr;
    fn mul(self, rhs: Expr) -> Expr {
        let mut out = Expr::default();
        for t in rhs.terms {
            out.push(ExprTerm {
                coeff: self * t.coeff,
                ..t
            });
        }
        out
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mut parts = Vec::new();
            if t.coeff != 1 {
                parts.push(t.coeff.to_string());
            }
            if t.root != RootOfUnity::one() {
                parts.push(format!("(-1)^({}/{})", t.root.num, t.root.den));
            }
            if let Some((v, k)) = t.var {
                parts.push(format!("{}^{}", v.symbol(), k));
            }
            if parts.is_empty() {
                parts.push("1".into());
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchSubstitution {
    /// Label exactly as printed in the source list (`sol_12` occurs twice).
    pub label: String,
    /// 1-based position in the source list.
    pub index: usize,
    pub assignments: Vec<(Var, Expr)>,
    pub free: Vec<Var>,
}

impl BranchSubstitution {
    fn new(label: &str, index: usize, assignments: Vec<(Var, Expr)>) -> Self {
        let free = Var::ALL
            .into_iter()
            .filter(|v| assignments.iter().all(|(w, _)| w != v))
            .collect();
        BranchSubstitution {
            label: label.to_string(),
            index,
            assignments,
            free,
        }
    }

    pub fn get(&self, v: Var) -> Option<&Expr> {
        self.assignments
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| e)
    }

    /// Free-variable environment for sample `k`: the `j`-th free variable
    /// takes `SAMPLES[(k + j) % 4]`.
    fn env(&self, k: usize) -> Vec<(Var, Complex64)> {
        self.free
            .iter()
            .enumerate()
            .map(|(j, v)| (*v, SAMPLES[(k + j) % SAMPLES.len()]))
            .collect()
    }

    /// Point `(a, b, d)` for sample `k`, or `None` on division by zero.
    pub fn point(&self, k: usize) -> Option<[Complex64; 3]> {
        let env = self.env(k);
        let mut pt = [Complex64::new(0.0, 0.0); 3];
        for v in Var::ALL {
            pt[v as usize] = match self.get(v) {
                Some(e) => e.eval(&env)?,
                None => env.iter().find(|(w, _)| *w == v)?.1,
            };
        }
        Some(pt)
    }

    fn same_value(&self, other: &BranchSubstitution) -> bool {
        if self.free != other.free {
            return false;
        }
        (0..SAMPLES.len()).all(|k| match (self.point(k), other.point(k)) {
            (Some(x), Some(y)) => x.iter().zip(y.iter()).all(|(u, v)| (u - v).norm() < 1e-12),
            _ => false,
        })
    }
}

impl fmt::Display for BranchSubstitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self
            .assignments
            .iter()
            .map(|(v, e)| format!("{} -> {}", v.symbol(), e))
            .collect();
        write!(f, "{}{{{}}}", self.label, items.join(", "))
    }
}

fn transcribed() -> Vec<BranchSubstitution> {
    use Var::{Alpha as A, Beta as B, Delta as D};
    let int = Expr::int;
    let i = Expr::i;
    let r6 = || Expr::root(1, 6);
    let r56 = || Expr::root(5, 6);
    let r3 = || Expr::root(1, 3);
    let r23 = || Expr::root(2, 3);
    let a = |k| Expr::var_pow(A, k);
    let rows: Vec<(&str, Vec<(Var, Expr)>)> = vec![
        ("sol_1", vec![(B, a(-1)), (D, -a(2) - a(-2))]),
        ("sol_2", vec![(D, int(-1)), (B, a(1) - i())]),
        ("sol_3", vec![(D, int(-1)), (B, a(1) + i())]),
        ("sol_4", vec![(D, int(1)), (B, -a(1) - int(1))]),
        ("sol_5", vec![(D, int(1)), (B, int(1) - a(1))]),
        ("sol_6", vec![(B, -r6()), (D, int(-1)), (A, r56())]),
        ("sol_7", vec![(B, r6()), (D, int(-1)), (A, -r56())]),
        ("sol_8", vec![(B, -r3()), (D, int(1)), (A, r23())]),
        ("sol_9", vec![(B, r3()), (D, int(1)), (A, -r23())]),
        ("sol_10", vec![(B, -i() - r6()), (D, int(-1)), (A, -r6())]),
        ("sol_11", vec![(B, i() - r6()), (D, int(-1)), (A, -r6())]),
        (
            "sol_12",
            vec![(B, 2 * i() - r6()), (D, int(-1)), (A, r56())],
        ),
        ("sol_12", vec![(B, -i() + r6()), (D, int(-1)), (A, r6())]),
        ("sol_13", vec![(B, i() + r6()), (D, int(-1)), (A, r6())]),
        (
            "sol_14",
            vec![(B, -2 * i() + r6()), (D, int(-1)), (A, -r56())],
        ),
        ("sol_15", vec![(B, int(-1) - r3()), (D, int(1)), (A, r3())]),
        ("sol_16", vec![(B, int(1) - r3()), (D, int(1)), (A, r3())]),
        ("sol_17", vec![(B, int(2) - r3()), (D, int(1)), (A, r23())]),
        (
            "sol_18",
            vec![(B, int(-2) + r3()), (D, int(1)), (A, -r23())],
        ),
        ("sol_19", vec![(B, int(-1) + r3()), (D, int(1)), (A, -r3())]),
        ("sol_20", vec![(B, int(1) + r3()), (D, int(1)), (A, -r3())]),
        ("sol_21", vec![(D, int(-1)), (B, -2 * i()), (A, -i())]),
        ("sol_22", vec![(D, int(-1)), (B, 2 * i()), (A, i())]),
        ("sol_23", vec![(D, int(-1)), (B, i() - r6()), (A, -r6())]),
        ("sol_24", vec![(D, int(-1)), (B, -i() + r6()), (A, r6())]),
        ("sol_25", vec![(D, int(-1)), (B, i() - r56()), (A, -r56())]),
        ("sol_26", vec![(D, int(-1)), (B, -i() + r56()), (A, r56())]),
        ("sol_27", vec![(D, int(1)), (B, int(-2)), (A, int(1))]),
        ("sol_28", vec![(D, int(1)), (B, int(2)), (A, int(-1))]),
        ("sol_29", vec![(D, int(1)), (B, int(1) - r3()), (A, r3())]),
        ("sol_30", vec![(D, int(1)), (B, int(-1) + r3()), (A, -r3())]),
        (
            "sol_31",
            vec![(D, int(1)), (B, int(-1) - r23()), (A, r23())],
        ),
        (
            "sol_32",
            vec![(D, int(1)), (B, int(1) + r23()), (A, -r23())],
        ),
        ("sol_33", vec![(D, int(0))]),
    ];
    rows.into_iter()
        .enumerate()
        .map(|(k, (label, asg))| BranchSubstitution::new(label, k + 1, asg))
        .collect()
}

/// Every entry of the source list, duplicates included.
pub fn raw_branches() -> Vec<BranchSubstitution> {
    transcribed()
}

pub fn raw_branch_count() -> usize {
    transcribed().len()
}

/// Source list with value-equal entries removed (first occurrence kept).
pub fn branches() -> Vec<BranchSubstitution> {
    let mut out: Vec<BranchSubstitution> = Vec::new();
    for b in transcribed() {
        if !out.iter().any(|o| o.same_value(&b)) {
            out.push(b);
        }
    }
    out
}

/// Pairs `(kept, dropped)` of source positions removed by [`branches`].
pub fn duplicate_pairs() -> Vec<(usize, usize)> {
    let all = transcribed();
    let mut pairs = Vec::new();
    for (j, b) in all.iter().enumerate() {
        if let Some(o) = all[..j].iter().find(|o| o.same_value(b)) {
            if !pairs.iter().any(|&(_, d)| d == o.index) {
                pairs.push((o.index, b.index));
            }
        }
    }
    pairs
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BranchReport {
    pub label: String,
    pub index: usize,
    pub pass: bool,
    pub max_residual_p1: f64,
    pub max_residual_p2: f64,
    pub samples_evaluated: usize,
    /// Sample indices skipped because an expression divided by zero.
    pub skipped: Vec<usize>,
}

/// Evaluates `p1`, `p2` on the branch at `samples` sample points; passes iff
/// both residuals stay below `tol` everywhere.
pub fn verify_branch(b: &BranchSubstitution, samples: usize, tol: f64) -> BranchReport {
    assert!(tol > 0.0 && samples >= 1);
    let fi = ideal();
    let mut r1: f64 = 0.0;
    let mut r2: f64 = 0.0;
    let mut skipped = Vec::new();
    let mut evaluated = 0;
    for k in 0..samples {
        let Some(pt) = b.point(k) else {
            skipped.push(k);
            continue;
        };
        evaluated += 1;
        let from = |c: &num_bigint::BigInt| Complex64::new(bigint_to_f64(c), 0.0);
        r1 = r1.max(fi.p1.eval(pt, from).norm());
        r2 = r2.max(fi.p2.eval(pt, from).norm());
    }
    BranchReport {
        label: b.label.clone(),
        index: b.index,
        pass: evaluated > 0 && r1 < tol && r2 < tol,
        max_residual_p1: r1,
        max_residual_p2: r2,
        samples_evaluated: evaluated,
        skipped,
    }
}
