use proptest::prelude::*;

use qbracket::bracket3::{
    ambient3_from_raw, bracket3_raw, curl_factor, frontier_evaluate, tl_evaluate,
    tl_evaluate_reduced,
};
use qbracket::diagram::{add_kink, closure, conjugate, rewrite_moves, BraidWord};
use qbracket::poly::{divide, MonomialOrder};
use qbracket::quotient::{ideal, normal_form, specialize_classical};
use qbracket::{Polynomial, Sign};

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((-5i64..=5, 0u32..4, 0u32..4, 0u32..5), 0..6)
        .prop_map(|t| Polynomial::from_terms(t.into_iter().map(|(c, x, y, z)| (c, [x, y, z]))))
}

/// Total degree at most `deg`, coefficients in `-50..=50`.
fn poly_deg(deg: u32) -> impl Strategy<Value = Polynomial> {
    let term = (0..=deg)
        .prop_flat_map(move |x| (Just(x), 0..=deg - x))
        .prop_flat_map(move |(x, y)| (-50i64..=50, Just(x), Just(y), 0..=deg - x - y));
    prop::collection::vec(term, 0..8)
        .prop_map(|t| Polynomial::from_terms(t.into_iter().map(|(c, x, y, z)| (c, [x, y, z]))))
}

fn braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_strands).prop_flat_map(move |n| {
        let letter = (1..n as i32, any::<bool>()).prop_map(|(g, s)| if s { g } else { -g });
        prop::collection::vec(letter, 0..=max_len).prop_map(move |l| BraidWord::new(n, l).unwrap())
    })
}

fn swap_ab(p: &Polynomial) -> Polynomial {
    Polynomial::from_terms(
        p.terms()
            .map(|(m, c)| (c.clone(), [m.0[1], m.0[0], m.0[2]])),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_axioms(x in poly_deg(6), y in poly_deg(6), z in poly_deg(6)) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &Polynomial::one(), x.clone());
        prop_assert_eq!(x.to_string().parse::<Polynomial>().unwrap(), x);
    }

    #[test]
    fn division_identity(x in poly(), g1 in poly(), g2 in poly()) {
        prop_assume!(!g1.is_zero() && !g2.is_zero());
        let ord = MonomialOrder::LEX_ABD;
        let basis = [g1, g2];
        let d = divide(&x, &basis, &ord).unwrap();
        let mut rhs = d.remainder.clone();
        for (q, g) in d.quotients.iter().zip(&basis) {
            rhs += &(q * g);
        }
        prop_assert_eq!(x.scale(&d.multiplier), rhs);
        let leads: Vec<_> = basis.iter().map(|g| g.leading_monomial(&ord).unwrap()).collect();
        for (m, _) in d.remainder.terms() {
            prop_assert!(leads.iter().all(|l| !l.divides(m)));
        }
    }

    #[test]
    fn normal_form_laws(x in poly(), y in poly(), h1 in poly_deg(3), h2 in poly_deg(3)) {
        let fi = ideal();
        let nx = normal_form(&x);
        prop_assert_eq!(normal_form(nx.representative()), nx.clone());
        prop_assert_eq!(
            normal_form(&(&x + &y)).into_inner(),
            nx.representative() + normal_form(&y).representative()
        );
        let member = &(&h1 * &fi.p1) + &(&h2 * &fi.p2);
        prop_assert!(normal_form(&member).representative().is_zero());
        prop_assert_eq!(normal_form(&(&x + &member)), nx.clone());
        prop_assert_eq!(
            normal_form(&(&x * &y)),
            normal_form(&(nx.representative() * normal_form(&y).representative()))
        );
    }

    #[test]
    fn specialization_kills_ideal(x in poly(), h1 in poly_deg(3), h2 in poly_deg(3)) {
        let fi = ideal();
        let member = &(&h1 * &fi.p1) + &(&h2 * &fi.p2);
        prop_assert!(specialize_classical(&member).is_zero());
        prop_assert_eq!(specialize_classical(&x), specialize_classical(normal_form(&x).representative()));
    }

    #[test]
    fn engines_agree(b in braid(5, 12)) {
        let d = closure(&b);
        let naive = bracket3_raw(&d).unwrap();
        prop_assert_eq!(tl_evaluate(&b).unwrap(), naive.clone());
        prop_assert_eq!(frontier_evaluate(&d).unwrap(), naive.clone());
        prop_assert_eq!(tl_evaluate_reduced(&b).unwrap(), normal_form(&naive).into_inner());
    }

    #[test]
    fn rewrites_preserve_normal_form(b in braid(4, 8), seed in any::<u64>()) {
        let r = rewrite_moves(&b, seed, 12);
        prop_assert_eq!(
            normal_form(&tl_evaluate(&b).unwrap()),
            normal_form(&tl_evaluate(&r).unwrap())
        );
        let c = conjugate(&b, (seed % 5) as usize);
        prop_assert_eq!(tl_evaluate(&b).unwrap(), tl_evaluate(&c).unwrap());
    }

    #[test]
    fn kink_multipliers(b in braid(4, 8), positive in any::<bool>()) {
        let s = if positive { Sign::Positive } else { Sign::Negative };
        let raw = tl_evaluate(&b).unwrap();
        prop_assert_eq!(tl_evaluate(&add_kink(&b, s)).unwrap(), curl_factor(s) * &raw);
        prop_assert_eq!(
            ambient3_from_raw(&tl_evaluate(&add_kink(&b, s)).unwrap(), b.writhe() + s.value()),
            ambient3_from_raw(&raw, b.writhe())
        );
    }

    #[test]
    fn mirror_swaps_a_and_b(b in braid(4, 10)) {
        prop_assert_eq!(tl_evaluate(&b.mirror()).unwrap(), swap_ab(&tl_evaluate(&b).unwrap()));
        let d = closure(&b);
        prop_assert_eq!(bracket3_raw(&d.mirror()).unwrap(), swap_ab(&bracket3_raw(&d).unwrap()));
    }

    #[test]
    fn raw_divisible_by_d(b in braid(4, 10)) {
        let raw = tl_evaluate(&b).unwrap();
        prop_assert!(raw.terms().all(|(m, _)| m.0[2] >= 1));
    }
}
