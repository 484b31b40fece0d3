use moulde_core::lie::{ihara_bracket, Bracket};
use moulde_core::mould::{check_dm, check_ls, Sequential};
use moulde_core::solutions::{
    compare_lifts, decompose_sigma, prop54_check, psi0, q4, s_mould, s_r, seed, xi_relation, BracketExpr, Workbench,
};
use moulde_core::Rational;

fn direct_s(x: &[Rational]) -> Rational {
    let r = x.len() - 1;
    let mut total = Rational::zero();
    for i in 0..r {
        let mut term = Rational::from_integer((r - i) as i64);
        for j in 0..=r {
            if j != i {
                term = &term / &(&x[j] - &x[i]);
            }
        }
        total += &term;
    }
    total
}

#[test]
fn s_r_agrees_with_its_defining_sum_at_points() {
    let points: [[i64; 4]; 3] = [[2, 5, -3, 7], [1, 4, 9, -2], [-6, 3, 11, 5]];
    for r in 1..=4 {
        for p in &points {
            let x: Vec<Rational> = p[..r].iter().map(|&v| Rational::from_integer(v)).collect();
            let mut with_zero = vec![Rational::zero()];
            with_zero.extend(x.iter().cloned());
            assert_eq!(s_r(r).evaluate(&x).unwrap(), direct_s(&with_zero), "r={r} at {p:?}");
        }
    }
}

#[test]
fn psi0_is_a_normalized_s() {
    let x = [3, -1, 4].map(Rational::from_integer);
    assert_eq!(psi0(3).evaluate(&x).unwrap(), &s_r(3).evaluate(&x).unwrap() / &Rational::from_integer(6));
}

#[test]
fn s_bracket_has_the_witt_sign() {
    let d = 4;
    let b = ihara_bracket(&s_mould(1, d), &s_mould(2, d)).unwrap();
    assert_eq!(b, s_mould(3, d));
    let b = ihara_bracket(&s_mould(1, d), &s_mould(3, d)).unwrap();
    assert_eq!(b, s_mould(4, d).scale(&Rational::from_integer(2)));
}

#[test]
fn lifts_start_with_their_input_and_land_in_dm() {
    let wb = Workbench::new(4, &Sequential);
    for k in [2, 4, -2] {
        let f = seed(k, 4);
        let e = wb.chi_e(&f).unwrap();
        assert_eq!(e.get(1), f.get(1));
        let report = check_dm(&e);
        assert!(report.passed(), "chi_E(x1^{k}): {report}");
    }
    let b = wb.chi_b(&seed(2, 4)).unwrap();
    assert!(check_dm(&b).passed());
    assert_eq!(wb.eta(3).unwrap().get(2).to_string(), "-2*x1 + x2");
}

#[test]
fn lifts_reject_inputs_outside_ls() {
    let wb = Workbench::new(3, &Sequential);
    let odd = seed(3, 3);
    assert!(wb.chi_e(&odd).is_err());
    assert!(wb.chi_b(&odd).is_err());
}

#[test]
fn chi_e_preserves_brackets() {
    let wb = Workbench::new(4, &Sequential);
    let (f, g) = (seed(2, 4), seed(4, 4));
    let lhs = wb.chi_e(&ihara_bracket(&f, &g).unwrap()).unwrap();
    let rhs = ihara_bracket(&wb.chi_e(&f).unwrap(), &wb.chi_e(&g).unwrap()).unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn chi_b_inverse_round_trips() {
    let wb = Workbench::new(4, &Sequential);
    for k in [2, 4] {
        let f = seed(k, 4);
        let big = wb.chi_b(&f).unwrap();
        assert_eq!(wb.chi_b_inv(&big).unwrap(), f);
        assert_eq!(wb.chi_b(&wb.chi_b_inv(&big).unwrap()).unwrap(), big);
    }
    let back = wb.chi_b_inv(&wb.eta(3).unwrap()).unwrap();
    assert!(check_ls(&back).passed());
}

#[test]
fn phi0_flat_is_in_neither_space() {
    let wb = Workbench::new(4, &Sequential);
    let flat = wb.phi0_flat().unwrap();
    assert!(!check_ls(flat).passed());
    assert!(!check_dm(flat).passed());
}

#[test]
fn lifts_agree_through_three_steps_then_differ_by_q4() {
    let wb = Workbench::new(5, &Sequential);
    let c = compare_lifts(&wb, &seed(2, 5)).unwrap();
    assert!(c.agreement.passed(), "{}", c.agreement);
    assert!(c.remark.passed(), "{}", c.remark);
    assert!(!c.difference.get(5).is_zero());
    assert!(check_ls(&q4(5)).passed());
}

#[test]
fn chi_b_is_an_adjoint_series() {
    let wb = Workbench::new(4, &Sequential);
    let report = prop54_check(&wb, &seed(2, 4)).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn sigma3_and_the_first_xi_relation() {
    let wb = Workbench::new(2, &Sequential);
    let (report, m) = decompose_sigma(&wb, 3).unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(m.get(1).to_string(), "x1^2");
    let wb = Workbench::new(4, &Sequential);
    let report = xi_relation(&wb).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn bracket_expressions_nest_to_the_right() {
    let wb = Workbench::new(3, &Sequential);
    let e = BracketExpr::parse("{eta:3, eta:3, eta:-1}").unwrap();
    let got = wb.evaluate(&e, Bracket::Ihara).unwrap();
    let (a, b) = (wb.eta(3).unwrap(), wb.eta(-1).unwrap());
    let want = ihara_bracket(&a, &ihara_bracket(&a, &b).unwrap()).unwrap();
    assert_eq!(got, want);
    let zero = wb.evaluate(&BracketExpr::parse("{phi0, phi0}").unwrap(), Bracket::Ari).unwrap();
    assert!(zero.is_zero());
}
