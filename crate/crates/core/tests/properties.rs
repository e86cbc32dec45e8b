mod common;

use common::*;
use gasym::exactfield::UniPoly;
use gasym::polynomial::{resultant, sylvester_resultant, var_list, MultiPoly};
use gasym::spacecurve::{analyze_curve, make_proper, AsymptoteParam, Method};
use gasym::AlgebraicNumber;
use num::Integer;
use proptest::prelude::*;

type AN = AlgebraicNumber;

fn poly_from(terms: &[(u32, u32, u32, i64)]) -> MultiPoly {
    let vars = var_list(&["x1", "x2", "x3"]);
    MultiPoly::from_terms(
        &vars,
        terms
            .iter()
            .map(|&(a, b, c, k)| (vec![a, b, c], AN::from_int(k))),
    )
}

fn terms() -> impl Strategy<Value = Vec<(u32, u32, u32, i64)>> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..4, -5i64..=5), 1..6)
}

fn uni(cs: &[i64]) -> UniPoly {
    UniPoly::from_ints(cs)
}

/// `q(s)` with `s = t^d`.
fn inflate(q: &UniPoly, d: usize) -> UniPoly {
    q.compose(&UniPoly::monomial(AN::one(), d))
}

fn exponent_gcd(a: &AsymptoteParam) -> usize {
    a.components()
        .iter()
        .flat_map(|q| {
            q.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, _)| i)
        })
        .fold(0, |g, i| g.gcd(&i))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn subresultant_matches_sylvester(f in terms(), g in terms()) {
        let (f, g) = (poly_from(&f), poly_from(&g));
        prop_assume!(f.deg(2) > 0 && g.deg(2) > 0);
        prop_assert_eq!(check_resultant(&f, &g), Ok(()));
    }

    #[test]
    fn make_proper_recovers_reduced_form(
        k in 1usize..=3,
        d in 1usize..=3,
        q2 in prop::collection::vec(-3i64..=3, 1..4),
        q3 in prop::collection::vec(-3i64..=3, 1..4),
    ) {
        let a = AsymptoteParam::new((k * d) as u32, inflate(&uni(&q2), d), inflate(&uni(&q3), d));
        let p = make_proper(&a);
        prop_assert!(p.proper);
        prop_assert_eq!(exponent_gcd(&p), 1);
        prop_assert_eq!(a.k % p.k, 0);
        let e = (a.k / p.k) as u32;
        for t in [-3i64, -1, 2, 5] {
            let t = AN::from_int(t);
            let s = t.pow(e);
            for (x, y) in a.components().iter().zip(p.components()) {
                prop_assert_eq!(x.eval(&t), y.eval(&s));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn extension_agrees_with_lift_on_overlap(seed in any::<u64>()) {
        let (f1, f2) = random_graph_curve(&mut rng(seed));
        prop_assert_eq!(check_extension(&f1, &f2, 2), Ok(()));
    }

    #[test]
    fn graph_curve_systems(seed in any::<u64>()) {
        let (f1, f2) = random_graph_curve(&mut rng(seed));
        let a = analyze_curve(&f1, &f2, Method::Improved, &serial()).unwrap();
        prop_assert_eq!(check_systems(&a), Ok(()));
        prop_assert_eq!(check_branch_residuals(&a), Ok(()));
    }
}

#[test]
fn systems_are_triangular_and_solved() {
    for (name, f1, f2) in all_curves(8) {
        let a = analyze_curve(&f1, &f2, Method::Improved, &serial()).unwrap();
        assert_eq!(check_systems(&a), Ok(()), "{name}");
    }
}

#[test]
fn branches_satisfy_their_equations() {
    for (name, f1, f2) in all_curves(8) {
        for method in [Method::Basic, Method::Improved] {
            let a = analyze_curve(&f1, &f2, method, &serial()).unwrap();
            assert_eq!(check_branch_residuals(&a), Ok(()), "{name} {method:?}");
        }
    }
}

#[test]
fn methods_agree_on_corpus() {
    for (name, f1, f2) in all_curves(8) {
        let (basic, improved) = both_methods(&f1, &f2);
        assert_eq!(basic, improved, "{name}");
    }
}

#[test]
fn resultant_of_first_example() {
    let (f1, f2) = first_example();
    let res = resultant(&f1, &f2, 2).unwrap();
    assert_eq!(res, sylvester_resultant(&f1, &f2, 2).unwrap());
    assert_eq!(
        res.normalized_integer(),
        poly("x1^2*x2^2 - 2*x1*x2^3 + x2^4 - x1^2*x2 + x1*x2^2 - 2*x1*x2 + x2 - 2")
    );
}

#[test]
fn make_proper_keeps_proper_input() {
    let a = AsymptoteParam::new(1, uni(&[-2, 1]), uni(&[0, 2]));
    let p = make_proper(&a);
    assert_eq!((p.k, p.repaired_from), (1, None));
    assert_eq!(p.q3, a.q3);
}
