//! One PASS/FAIL line per acceptance criterion, with its runtime budget.

mod common;

use common::*;
use gasym::exactfield::{ratio, Exponent, UniPoly};
use gasym::polynomial::{parse_poly, var_list, MultiPoly};
use gasym::spacecurve::{
    analyze_curve, eliminate_lambda, evaluate_on_param, verify_convergence, AsymptoteParam,
    BranchResult, Method, SpaceAnalysis,
};
use gasym::{AlgebraicNumber, NumberField, PuiseuxTruncation, Rational};
use std::time::{Duration, Instant};

type AN = AlgebraicNumber;
type Terms = Vec<(Exponent, AN)>;

struct Outcome {
    passed: bool,
    summary: String,
    details: Vec<String>,
    /// Sub-checks that must hold even when the criterion as stated cannot.
    required: Vec<(String, bool)>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            passed: true,
            summary: String::new(),
            details: Vec::new(),
            required: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, ok: bool) {
        self.passed &= ok;
        self.required.push((name.to_string(), ok));
        if !ok {
            self.details.push(format!("failed: {name}"));
        }
    }

    /// Part of the criterion that is reported but not asserted.
    fn report(&mut self, name: &str, ok: bool, note: &str) {
        self.passed &= ok;
        if !ok {
            self.details.push(format!("failed: {name}; {note}"));
        }
    }
}

fn run(id: u32, title: &str, budget: u64, f: impl FnOnce(&mut Outcome)) -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    f(&mut o);
    let elapsed = start.elapsed();
    let in_time = elapsed < Duration::from_secs(budget);
    o.passed &= in_time;
    println!(
        "{} criterion {id} {title}: {} ({:.2} s, budget {budget} s)",
        if o.passed { "PASS" } else { "FAIL" },
        o.summary,
        elapsed.as_secs_f64()
    );
    for d in &o.details {
        println!("    {d}");
    }
    o.required
        .push((format!("runtime under {budget} s"), in_time));
    o
}

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn b_poly(n: usize, s: &str) -> MultiPoly {
    let names: Vec<String> = (0..n).map(|i| format!("b{i}")).collect();
    let refs: Vec<&str> = names.iter().map(|x| x.as_str()).collect();
    parse_poly(s, &refs).unwrap()
}

/// `list = c * expected` for one nonzero scalar `c`.
fn proportional(list: &[MultiPoly], expected: &[MultiPoly]) -> bool {
    if list.len() != expected.len() {
        return false;
    }
    let Some(i) = expected.iter().position(|e| !e.is_zero()) else {
        return list.iter().all(|l| l.is_zero());
    };
    let (e, c) = expected[i].terms().next().unwrap();
    let Ok(scale) = list[i].coeff(e).checked_div(c) else {
        return false;
    };
    !scale.is_zero()
        && list
            .iter()
            .zip(expected)
            .all(|(l, x)| *l == x.scale(&scale))
}

fn line(a2: Rational, b2: Rational, a3: Rational, b3: Rational) -> AsymptoteParam {
    AsymptoteParam::new(
        1,
        UniPoly::from_rationals(&[b2, a2]),
        UniPoly::from_rationals(&[b3, a3]),
    )
}

fn sorted(a: &SpaceAnalysis) -> Vec<AsymptoteParam> {
    let mut v: Vec<AsymptoteParam> = a.asymptotes.iter().map(|e| e.asymptote.clone()).collect();
    v.sort_by_key(|x| x.to_string());
    v
}

fn same_set(a: &SpaceAnalysis, expected: &[AsymptoteParam]) -> bool {
    let mut e = expected.to_vec();
    e.sort_by_key(|x| x.to_string());
    sorted(a) == e
}

/// Plane series of the branch cut at the `n` negative powers of `t` used by its system.
fn used_truncation(b: &BranchResult) -> Vec<(Exponent, AN)> {
    let s = b.system.as_ref().unwrap();
    let cut = Exponent::new(-(s.n_used as i64), s.k.max(1) as i64);
    b.branch
        .plane
        .r2
        .terms()
        .filter(|(e, _)| **e >= cut)
        .map(|(e, c)| (*e, c.clone()))
        .collect()
}

fn series(terms: &[(i64, Rational)]) -> Vec<(Exponent, AN)> {
    let mut v: Vec<(Exponent, AN)> = terms
        .iter()
        .map(|(e, c)| (Exponent::from_integer(*e), AN::from(c.clone())))
        .collect();
    v.sort_by_key(|(e, _)| *e);
    v
}

fn show(terms: &[(Exponent, AN)]) -> String {
    PuiseuxTruncation::exact(terms.iter().cloned()).to_string()
}

fn first_example_criterion(o: &mut Outcome) {
    let (f1, f2) = first_example();
    let expected = [
        line(r(1), r(-2), r(2), ratio(-5, 3)),
        line(r(1), r(1), r(-1), ratio(-1, 3)),
        line(r(0), r(0), r(0), r(0)),
        line(r(0), r(1), r(1), r(2)),
    ];
    let basic = analyze_curve(&f1, &f2, Method::Basic, &serial()).unwrap();
    let improved = analyze_curve(&f1, &f2, Method::Improved, &serial()).unwrap();
    o.check("basic asymptote set", same_set(&basic, &expected));
    o.check("improved asymptote set", same_set(&improved, &expected));

    let p = &improved.projection;
    let reference_fp = poly("-x1^2*x2^2 + 2*x1*x2^3 - x2^4 + x1^2*x2 - x1*x2^2 + 2*x1*x2 - x2 + 2");
    o.check(
        "projection fp",
        p.transform.is_none() && p.fp == reference_fp.normalized_integer(),
    );
    let h = p
        .lift
        .h2
        .constant_value()
        .and_then(|c| c.inv().ok())
        .map(|c| p.lift.h1.scale(&c));
    o.check("lift h = x1*x2 - x2^2", h == Some(poly("x1*x2 - x2^2")));

    let table: [(Terms, &str, &str); 4] = [
        (
            series(&[(1, r(1)), (0, r(-2)), (-1, ratio(-7, 3))]),
            "b0 - 2",
            "b1 + 5/3",
        ),
        (
            series(&[(1, r(1)), (0, r(1)), (-1, ratio(-2, 3))]),
            "b0 + 1",
            "b1 + 1/3",
        ),
        (series(&[]), "b0", "b1"),
        (series(&[(0, r(1)), (-1, r(3))]), "b0 - 1", "b1 - 2"),
    ];
    for (trunc, l0, l1) in &table {
        let hit = improved
            .branches
            .iter()
            .find(|b| used_truncation(b) == *trunc);
        o.check(&format!("truncation {}", show(trunc)), hit.is_some());
        if let Some(b) = hit {
            let s = b.system.as_ref().unwrap();
            o.check(
                &format!("Λ pair ({l0}, {l1})"),
                s.coefficients == vec![b_poly(2, l0), b_poly(2, l1)],
            );
        }
    }
    o.summary = format!(
        "{} asymptotes, fp, h, truncations and Λ pairs compared exactly",
        expected.len()
    );
}

/// Numerator of `f2(t^4, t^2 - 1/2 + 1/t + 1/(8 t^2), Σ b_j t^(4-j))` times `64 t^4`,
/// as the list of its top five coefficients in `t`.
fn second_example_direct_system() -> Vec<MultiPoly> {
    let q = |s: &str| parse_poly(s, &["t", "b0", "b1", "b2", "b3", "b4"]).unwrap();
    let (x1, x2, den) = (q("t^4"), q("8*t^4 - 4*t^2 + 8*t + 1"), q("8*t^2"));
    let x3 = q("b0*t^4 + b1*t^3 + b2*t^2 + b3*t + b4");
    let d2 = den.pow(2);
    let num = x1
        .pow(2)
        .mul(&x2)
        .mul(&den)
        .add(&x1.mul(&x2).mul(&x3).mul(&den).scale(&AN::from_int(2)))
        .sub(&x2.pow(2).mul(&x3))
        .add(&x2.pow(2))
        .add(&x1.mul(&d2))
        .sub(&x2.mul(&den))
        .add(&x3.mul(&d2));
    let coeffs = num.coeffs_in(0);
    let top = coeffs.len() - 1;
    let vars = var_list(&["b0", "b1", "b2", "b3", "b4"]);
    (0..5)
        .map(|j| {
            MultiPoly::from_terms(
                &vars,
                coeffs[top - j]
                    .terms()
                    .map(|(e, c)| (e[1..].to_vec(), c.clone())),
            )
        })
        .collect()
}

/// Forward substitution on a lower-triangular affine system.
fn solve(system: &[MultiPoly]) -> Option<Vec<AN>> {
    let n = system.len();
    let mut sol: Vec<AN> = Vec::new();
    for (j, l) in system.iter().enumerate() {
        let mut rest = l.clone();
        for (i, v) in sol.iter().enumerate() {
            rest = rest.eval_var(i, v);
        }
        let mut e = vec![0; n];
        e[j] = 1;
        let diag = rest.coeff(&e);
        let c = rest.eval(&vec![AN::zero(); n]);
        sol.push(-(c.checked_div(&diag).ok()?));
    }
    Some(sol)
}

fn second_example_criterion(o: &mut Outcome) {
    let (f1, f2) = second_example();
    let basic = analyze_curve(&f1, &f2, Method::Basic, &serial()).unwrap();
    let improved = analyze_curve(&f1, &f2, Method::Improved, &serial()).unwrap();
    let steep_expected = AsymptoteParam {
        repaired_from: Some(4),
        ..AsymptoteParam::new(
            2,
            UniPoly::from_rationals(&[ratio(-1, 2), r(1)]),
            UniPoly::from_rationals(&[r(0), ratio(-1, 4), ratio(-1, 2)]),
        )
    };
    let stated = [line(r(1), r(0), r(0), r(0)), steep_expected.clone()];
    let derived = [line(r(1), r(0), r(-1), r(-1)), steep_expected];
    o.report(
        "stated set {(t, t, 0), (t^2, t - 1/2, -t^2/2 - t/4)}",
        same_set(&improved, &stated),
        "the first branch gives (t, t, -t - 1); the stated Λ0 = b0 + 1, Λ1 = b1 + 1 also force b0 = b1 = -1",
    );
    o.check(
        "basic set {(t, t, -t - 1), (t^2, t - 1/2, -t^2/2 - t/4)}",
        same_set(&basic, &derived),
    );
    o.check(
        "improved set {(t, t, -t - 1), (t^2, t - 1/2, -t^2/2 - t/4)}",
        same_set(&improved, &derived),
    );

    // Polynomial part of x3 on x1 = x2 = t, from f2 directly.
    let num = UniPoly::from_ints(&[0, 0, -1, -1]);
    let den = UniPoly::from_ints(&[1, 0, 1]);
    let (quot, _) = num.divrem(&den).unwrap();
    o.check(
        "direct division gives x3 = -t - 1 + O(1/t)",
        quot == UniPoly::from_ints(&[-1, -1]),
    );

    let steep = improved
        .branches
        .iter()
        .find(|b| b.system.as_ref().is_some_and(|s| s.k == 4));
    o.check("ramified branch present", steep.is_some());
    let Some(steep) = steep else { return };
    let s = steep.system.as_ref().unwrap();
    let sol = steep.solution.as_ref().unwrap();
    o.check(
        "repaired from t^4",
        steep.asymptote.repaired_from == Some(4) && steep.asymptote.k == 2,
    );

    let reference = ["8*b0 + 4", "8*b1", "8*b2 - 8*b0 - 2", "-8*b1 + 8*b2"].map(|x| b_poly(5, x));
    o.report(
        "Λ0..Λ3 equal the stated list",
        s.coefficients[..4] == reference[..],
        "the stated Λ3 = -8b1 + 8b2 lacks b3, which a triangular system needs on its diagonal",
    );
    o.check(
        "Λ0..Λ2 proportional to the stated list",
        proportional(&s.coefficients[..3], &reference[..3]),
    );
    let direct = second_example_direct_system();
    o.check(
        "Λ0..Λ4 proportional to a direct expansion",
        proportional(&s.coefficients, &direct),
    );
    o.check("Λ4 forces b4 = 0", sol.len() == 5 && sol[4].is_zero());
    o.check(
        "direct system solves to b4 = 0",
        solve(&direct).is_some_and(|d| d == *sol),
    );
    o.summary =
        "asymptotes differ from the stated (t, t, 0); Λ3 of the stated list is inconsistent"
            .to_string();
    if o.passed {
        o.summary = "asymptotes and Λ list match".to_string();
    }
    for (i, l) in s.coefficients.iter().enumerate() {
        o.details.push(format!("computed Λ{i} = {l}"));
    }
}

fn conjugate_criterion(o: &mut Outcome) {
    let (f1, f2) = conjugate_example();
    let field = NumberField::from_ints(&[-2, 1, -4, 1]).unwrap();
    let lam = field.generator();
    let one = AN::one();
    let a = analyze_curve(&f1, &f2, Method::Improved, &serial()).unwrap();
    o.check("one asymptote", a.asymptotes.len() == 1);
    let Some(e) = a.asymptotes.first() else {
        return;
    };
    let q = &e.asymptote;
    let c = |x: i64| AN::from_ratio(x, 29);
    let q2_0 = &(&(&lam.pow(2) * &c(4)) - &(&lam * &c(36))) + &c(-48);
    let b1 = -((&lam + &one).checked_div(&(&lam - &one)).unwrap());
    o.check("q1 = t", q.k == 1 && q.q1 == UniPoly::x());
    o.check(
        "q2 = λt^2 + 4λ^2/29 - 36λ/29 - 48/29",
        q.q2 == UniPoly::new(vec![q2_0, AN::zero(), lam.clone()]),
    );
    o.check(
        "q3 = -((λ+1)/(λ-1)) t",
        q.q3 == UniPoly::new(vec![AN::zero(), b1.clone()]),
    );
    o.check(
        "b1 is a reduced residue",
        b1.rep().len() <= 3 && q.q3.coeff(1).rep() == b1.rep(),
    );
    o.check(
        "minimal polynomial λ^3 - 4λ^2 + λ - 2",
        q.minpoly.as_deref() == Some(field.minpoly()),
    );

    let (g1, g2) = eliminate_lambda(q).unwrap();
    let reference_g1 = poly("48778*x1^6 - 24389*x1^4*x2 - 195112*x1^4 + 97556*x1^2*x2^2 + 390224*x1^2*x2 - 24389*x2^3 + 538240*x1^2 - 195112*x2^2 - 484416*x2 - 430592");
    o.check(
        "g1 proportional to the stated sextic",
        proportional(std::slice::from_ref(&g1), &[reference_g1]),
    );
    o.check(
        "g1 vanishes on the parametrization",
        evaluate_on_param(&g1, q).is_zero(),
    );
    o.check(
        "g2 vanishes on the parametrization",
        evaluate_on_param(&g2, q).is_zero(),
    );
    o.summary = format!("{q}; g1 = {g1}");
}

fn agreement_criterion(o: &mut Outcome) {
    let curves = all_curves(8);
    let mut agreed = 0;
    for (name, f1, f2) in &curves {
        let (basic, improved) = both_methods(f1, f2);
        let ok = basic == improved && !basic.is_empty();
        agreed += ok as usize;
        o.check(&format!("{name}: identical asymptote sets"), ok);
    }
    o.summary = format!(
        "{agreed} of {} curves agree (3 examples, {} random)",
        curves.len(),
        curves.len() - 3
    );
}

fn property_criterion(o: &mut Outcome) {
    let mut systems = 0;
    let mut branches = 0;
    for (name, f1, f2) in all_curves(8) {
        let improved = analyze_curve(&f1, &f2, Method::Improved, &serial()).unwrap();
        let basic = analyze_curve(&f1, &f2, Method::Basic, &serial()).unwrap();
        systems += improved.branches.len();
        branches += improved.branches.len() + basic.branches.len();
        let sys = check_systems(&improved);
        o.check(&format!("{name}: (a)-(c) {sys:?}"), sys.is_ok());
        for a in [&improved, &basic] {
            let res = check_branch_residuals(a);
            o.check(&format!("{name}: (d) {res:?}"), res.is_ok());
        }
    }
    let mut g = rng(11);
    for i in 0..50 {
        let (f, h) = random_resultant_pair(&mut g);
        let res = check_resultant(&f, &h);
        o.check(&format!("(e) pair {i}: {res:?}"), res.is_ok());
    }
    let mut g = rng(13);
    for i in 0..20 {
        let (f1, f2) = random_graph_curve(&mut g);
        let ext = check_extension(&f1, &f2, 2);
        o.check(&format!("(f) graph curve {i}: {ext:?}"), ext.is_ok());
    }
    o.summary = format!(
        "{systems} systems, {branches} branch residuals, 50 resultant pairs, 20 graph curves"
    );
}

fn convergence_criterion(o: &mut Outcome) {
    let samples = [r(100), r(1000), r(10000)];
    let mut pairs = 0;
    for (name, (f1, f2)) in [
        ("first", first_example()),
        ("second", second_example()),
        ("conjugate", conjugate_example()),
    ] {
        let a = analyze_curve(&f1, &f2, Method::Basic, &serial()).unwrap();
        for (i, b) in a.branches.iter().enumerate() {
            let rep = verify_convergence(&b.local, &b.branch, &samples).unwrap();
            pairs += 1;
            o.check(&format!("{name} branch {}: exact part", i + 1), rep.exact);
            o.check(
                &format!("{name} branch {}: decreasing distances", i + 1),
                rep.decreasing || rep.identically_zero,
            );
            if rep.identically_zero {
                o.details.push(format!(
                    "{name} branch {}: distance identically zero",
                    i + 1
                ));
            }
        }
    }
    o.summary = format!("{pairs} branch/asymptote pairs at |z| = 10^2, 10^3, 10^4");
}

fn main() {
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    if filters.iter().any(|f| !"acceptance".contains(f.as_str())) {
        return;
    }
    let outcomes = [
        run(1, "first example", 5, first_example_criterion),
        run(2, "second example", 10, second_example_criterion),
        run(3, "conjugate example", 20, conjugate_criterion),
        run(4, "method agreement", 60, agreement_criterion),
        run(5, "property suites", 120, property_criterion),
        run(6, "convergence", 10, convergence_criterion),
    ];
    let broken: Vec<String> = outcomes
        .iter()
        .enumerate()
        .flat_map(|(i, o)| {
            o.required
                .iter()
                .filter(|(_, ok)| !ok)
                .map(move |(n, _)| format!("criterion {}: {n}", i + 1))
        })
        .collect();
    if !broken.is_empty() {
        eprintln!("required checks failed: {broken:#?}");
        std::process::exit(1);
    }
}
