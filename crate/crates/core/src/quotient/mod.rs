//! The fixed ideal `I = ⟨p1, p2⟩ ⊂ ℤ[a,b,d]`, normal forms modulo its lex
//! Gröbner basis, and the map to the classical bracket ring.

mod branches;

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::Serialize;

pub use branches::{
    branches, duplicate_pairs, raw_branch_count, raw_branches, verify_branch, BranchReport,
    BranchSubstitution, Expr, ExprTerm, RootOfUnity, SAMPLES,
};

use crate::classical::Laurent;
use crate::poly::{
    buchberger, divide, reduce_basis, s_poly, ContentMode, Monomial, MonomialOrder, PolyError,
    Polynomial,
};

pub const P1_TEXT: &str = "+a^2*d +2*a*b*d^2 +b^2*d -d^2";
pub const P2_TEXT: &str = "+a^2*d^2 +a*b*d^3 +a*b*d +b^2*d^2 -d";
pub const Q1_TEXT: &str = "+b^4*d^3 -b^4*d +b^2*d^4 -b^2*d^2 +d^3 -d";
pub const Q2_TEXT: &str = "+a*d^3 -a*d +b^3*d^3 -b^3*d +b*d^4 -b*d^2";
pub const Q3_TEXT: &str = "+a^2*d +2*a*b*d^2 +b^2*d -d^2";

#[derive(Debug, Clone)]
pub struct FixedIdeal {
    pub p1: Polynomial,
    pub p2: Polynomial,
    pub q1: Polynomial,
    pub q2: Polynomial,
    pub q3: Polynomial,
    pub order: MonomialOrder,
    basis: [Polynomial; 3],
}

impl FixedIdeal {
    fn new() -> Self {
        let parse = |s: &str| s.parse::<Polynomial>().expect("built-in polynomial");
        let (q1, q2, q3) = (parse(Q1_TEXT), parse(Q2_TEXT), parse(Q3_TEXT));
        FixedIdeal {
            p1: parse(P1_TEXT),
            p2: parse(P2_TEXT),
            basis: [q1.clone(), q2.clone(), q3.clone()],
            q1,
            q2,
            q3,
            order: MonomialOrder::LEX_ABD,
        }
    }

    pub fn generators(&self) -> [&Polynomial; 2] {
        [&self.p1, &self.p2]
    }

    /// `[q1, q2, q3]` in the order division uses.
    pub fn basis(&self) -> &[Polynomial; 3] {
        &self.basis
    }

    /// Leading monomials `b⁴d³`, `ad³`, `a²d`.
    pub fn leading_monomials(&self) -> [Monomial; 3] {
        self.basis
            .each_ref()
            .map(|q| q.leading_monomial(&self.order).expect("nonzero"))
    }
}

pub fn ideal() -> &'static FixedIdeal {
    static IDEAL: OnceLock<FixedIdeal> = OnceLock::new();
    IDEAL.get_or_init(FixedIdeal::new)
}

/// Distinguished representative of a coset of `I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm(Polynomial);

impl NormalForm {
    pub fn representative(&self) -> &Polynomial {
        &self.0
    }

    pub fn into_inner(self) -> Polynomial {
        self.0
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Remainder of `p` against `[q1, q2, q3]` in lex `a > b > d`.
pub fn normal_form(p: &Polynomial) -> NormalForm {
    let fi = ideal();
    let div = divide(p, fi.basis(), &fi.order).expect("fixed basis is nonzero");
    // The basis is monic, so division never rescales.
    debug_assert!(num_traits::One::is_one(&div.multiplier));
    NormalForm(div.remainder)
}

/// Substitutes `b → a⁻¹`, `d → −a⁻² − a²`.
pub fn specialize_classical(p: &Polynomial) -> Laurent {
    let delta = Laurent::loop_value();
    let max_d = p.terms().map(|(m, _)| m.0[2]).max().unwrap_or(0);
    let mut powers = vec![Laurent::one()];
    for _ in 0..max_d {
        let next = &powers[powers.len() - 1] * &delta;
        powers.push(next);
    }
    let mut out = Laurent::zero();
    for (m, c) in p.terms() {
        let [ea, eb, ed] = m.0;
        let term = powers[ed as usize].shift(ea as i32 - eb as i32).scale(c);
        out = &out + &term;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroebnerReport {
    pub checks: Vec<Check>,
    /// Reduced basis recomputed from `p1, p2`, canonical text.
    pub recomputed_basis: Vec<String>,
    /// How the recomputed basis relates to `q1, q2, q3`.
    pub relation: String,
}

impl GroebnerReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Checks that `(q1, q2, q3)` is a Gröbner basis of `⟨p1, p2⟩`: every
/// S-polynomial reduces to zero, `p1` and `p2` reduce to zero, and each `qᵢ`
/// reduces to zero against an independently completed basis of `⟨p1, p2⟩`.
pub fn verify_groebner() -> Result<GroebnerReport, PolyError> {
    let fi = ideal();
    let ord = fi.order;
    let g = fi.basis();
    let names = ["q1", "q2", "q3"];
    let mut checks = Vec::new();

    for i in 0..3 {
        for j in i..3 {
            let s = s_poly(&g[i], &g[j], &ord)?;
            let r = divide(&s, g, &ord)?.remainder;
            checks.push(Check {
                check: format!("spoly_reduces({},{})", names[i], names[j]),
                pass: r.is_zero(),
                witness: (!r.is_zero()).then(|| r.to_string()),
            });
        }
    }
    for (name, p) in [("p1", &fi.p1), ("p2", &fi.p2)] {
        let r = divide(p, g, &ord)?.remainder;
        checks.push(Check {
            check: format!("generator_in_basis_ideal({name})"),
            pass: r.is_zero(),
            witness: (!r.is_zero()).then(|| r.to_string()),
        });
    }
    let completed = buchberger(&[fi.p1.clone(), fi.p2.clone()], &ord)?;
    for (name, q) in names.iter().zip(g.iter()) {
        let r = divide(q, &completed, &ord)?.remainder;
        checks.push(Check {
            check: format!("basis_in_generator_ideal({name})"),
            pass: r.is_zero(),
            witness: (!r.is_zero()).then(|| r.to_string()),
        });
    }
    let reduced = reduce_basis(&completed, &ord, ContentMode::Primitive)?;
    let relation = relation_to_fixed_basis(&reduced, g);
    checks.push(Check {
        check: "reduced_basis_equals_q".into(),
        pass: relation != "different",
        witness: (relation == "different").then(|| {
            reduced
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(" ; ")
        }),
    });
    Ok(GroebnerReport {
        checks,
        recomputed_basis: reduced.iter().map(|p| p.to_string()).collect(),
        relation,
    })
}

/// `"identical"`, `"equal up to sign/content/order"` or `"different"`.
pub fn relation_to_fixed_basis(reduced: &[Polynomial], fixed: &[Polynomial]) -> String {
    if reduced == fixed {
        return "identical".into();
    }
    let ord = MonomialOrder::LEX_ABD;
    let norm = |v: &[Polynomial]| {
        let mut out: Vec<String> = v.iter().map(|p| p.primitive(&ord).to_string()).collect();
        out.sort();
        out
    };
    if norm(reduced) == norm(fixed) {
        "equal up to sign/content/order".into()
    } else {
        "different".into()
    }
}

/// `d·(ad + b)(a + bd) − d`. It lies in `I`, so a pair of opposite kinks
/// is invisible in the normal form of any multiple of `d`.
pub fn kink_pair_defect() -> Polynomial {
    let f_plus: Polynomial = "a*d + b".parse().expect("literal");
    let f_minus: Polynomial = "a + b*d".parse().expect("literal");
    let d = Polynomial::var(crate::poly::Var::Delta);
    &(&d * &(&f_plus * &f_minus)) - &d
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn stored_polynomials_match_literals() {
        let fi = ideal();
        assert_eq!(fi.p1, p("a^2*d + 2*a*b*d^2 - d^2 + b^2*d"));
        assert_eq!(fi.p2, p("a*b*d^3 + a^2*d^2 + b^2*d^2 + a*b*d - d"));
        assert_eq!(fi.q1, p("d^3*b^4 - d*b^4 + d^4*b^2 - d^2*b^2 + d^3 - d"));
        assert_eq!(fi.q2, p("b*d^4 + b^3*d^3 + a*d^3 - b*d^2 - b^3*d - a*d"));
        assert_eq!(fi.q3, p("d*a^2 + 2*b*d^2*a - d^2 + b^2*d"));
        assert_eq!(
            fi.leading_monomials(),
            [
                Monomial::new(0, 4, 3),
                Monomial::new(1, 0, 3),
                Monomial::new(2, 0, 1)
            ]
        );
        assert_eq!(fi.p1.to_string(), P1_TEXT);
        assert_eq!(fi.q3.to_string(), Q3_TEXT);
    }

    #[test]
    fn normal_form_examples() {
        let fi = ideal();
        assert!(normal_form(&fi.q1).representative().is_zero());
        assert!(normal_form(&fi.p2).representative().is_zero());
        assert_eq!(
            normal_form(&p("a^2*d")).into_inner(),
            p("-2*a*b*d^2 + d^2 - b^2*d")
        );
        assert_eq!(normal_form(&p("d")).into_inner(), p("d"));
    }

    #[test]
    fn normal_form_has_no_leading_multiples() {
        let x = p("a^5*b^3*d^4 + 7*a*b^6*d^5 - 3*b^4*d^3 + a^2*d");
        let nf = normal_form(&x);
        let leads = ideal().leading_monomials();
        for (m, _) in nf.representative().terms() {
            assert!(leads.iter().all(|l| !l.divides(m)), "{m}");
        }
    }

    #[test]
    fn groebner_report_passes() {
        let r = verify_groebner().unwrap();
        assert!(r.all_pass(), "{r:?}");
        assert_eq!(r.relation, "identical");
        assert_eq!(r.checks.len(), 6 + 2 + 3 + 1);
    }

    #[test]
    fn specialization_examples() {
        assert_eq!(specialize_classical(&Polynomial::one()), Laurent::one());
        assert_eq!(
            specialize_classical(&Polynomial::var(Var::Delta)),
            Laurent::from_terms([(-1, -2), (-1, 2)])
        );
        assert!(specialize_classical(&ideal().p1).is_zero());
        assert!(specialize_classical(&ideal().p2).is_zero());
    }

    #[test]
    fn kink_pair_defect_is_p2() {
        assert_eq!(kink_pair_defect(), ideal().p2);
        let d = Polynomial::var(Var::Delta);
        let lhs = &(&d * &p("d^2 - 1")) * &p("a*b - 1");
        assert_eq!(lhs, &(&d * &ideal().p1) - &ideal().p2);
    }
}
