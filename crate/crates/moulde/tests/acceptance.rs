//! One pass/fail line per acceptance criterion. All comparisons are exact.
//!
//! Criteria that fail on the reference data are listed in `EXPECTED_FAILURES`.
//! The target itself fails only if the set of failing criteria changes.

use std::sync::Mutex;
use std::time::Instant;

use moulde::exec::Pool;
use moulde_core::kernel::parse::parse_ratfun;
use moulde_core::lie::{bracket, ihara_bracket, Bracket};
use moulde_core::mould::{check_dm_with, check_in_v, check_ls_with};
use moulde_core::solutions::{
    calibrate, compare_lifts, decompose_sigma, evaluate_decomposition, pal_symmetral, phi0_extra_check, phi0_shuffle,
    prop54_check, psi0, psi0_mould, q4, s_identity_check, seed, sigma_terms, witt_check, xi_relation, BracketExpr,
    Workbench,
};
use moulde_core::words::{shuffle, stuffle, Word, WordSum};
use moulde_core::{Mould, Polynomial, Rational, RationalFunction, VerificationReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const D: usize = 5;
const EXPECTED_FAILURES: [u32; 3] = [2, 7, 13];

const PSI0_REFERENCE: [&str; 3] = [
    "1/x1",
    "(2*x1 - x2)/(3*x1*(x1 - x2)*x2)",
    "(3*x2*x1^2 - 2*x3*x1^2 - 3*x2^2*x1 + 2*x3^2*x1 - x2*x3^2 + x2^2*x3)\
     /(6*x1*x2*x3*(x1 - x2)*(x1 - x3)*(x2 - x3))",
];

type Outcome = (bool, String);

struct Suite {
    pool: Pool,
    failed: Vec<u32>,
}

impl Suite {
    fn criterion(&mut self, id: u32, title: &str, check: impl FnOnce(&Pool) -> Outcome) {
        let start = Instant::now();
        let (ok, detail) = check(&self.pool);
        if !ok {
            self.failed.push(id);
        }
        println!(
            "criterion {id:>2}: {}  {title}: {detail} [{:.1}s]",
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
        for text in FINDINGS.lock().unwrap().drain(..) {
            info(&text);
        }
    }
}

static FINDINGS: Mutex<Vec<String>> = Mutex::new(Vec::new());

fn info(text: &str) {
    println!("     finding: {text}");
}

/// Queued until the criterion line has been printed.
fn finding(text: String) {
    FINDINGS.lock().unwrap().push(text);
}

fn rf(s: &str) -> RationalFunction {
    parse_ratfun(s).unwrap()
}

fn failing(report: &VerificationReport) -> Vec<(usize, usize)> {
    report.failures().map(|x| (x.r, x.i)).collect()
}

fn verdict(report: &VerificationReport) -> String {
    if report.passed() {
        format!("{} ok ({} instances)", report.law, report.instances.len())
    } else {
        format!("{} fails at {:?}", report.law, failing(report))
    }
}

fn random_linear(rng: &mut ChaCha8Rng, r: usize) -> Polynomial {
    let i = rng.gen_range(1..=r);
    let j = rng.gen_range(0..=r);
    match j {
        0 => Polynomial::var(i),
        j if j == i => Polynomial::var(i),
        j if rng.gen_bool(0.5) => Polynomial::var(i).add(&Polynomial::var(j)),
        j => Polynomial::var(i).sub(&Polynomial::var(j)),
    }
}

fn random_component(rng: &mut ChaCha8Rng, r: usize) -> RationalFunction {
    let mut num = Polynomial::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let mut m = Polynomial::constant(Rational::from_integer(rng.gen_range(-4..=4)));
        for _ in 0..rng.gen_range(0..=2) {
            m = m.mul(&Polynomial::var(rng.gen_range(1..=r)));
        }
        num = num.add(&m);
    }
    let mut den = Polynomial::one();
    for _ in 0..rng.gen_range(0..=2) {
        den = den.mul(&random_linear(rng, r));
    }
    RationalFunction::new(num, den).unwrap()
}

fn random_v(rng: &mut ChaCha8Rng, depth: usize) -> Mould {
    let mut h = Mould::zero(depth);
    for r in 1..=depth {
        h.set(r, random_component(rng, r));
    }
    h.sub(&h.varphi())
}

fn combination(rng: &mut ChaCha8Rng, basis: &[Mould]) -> Mould {
    let mut m = Mould::zero(D);
    for b in basis {
        let c = rng.gen_range(-3i64..=3);
        m = m.add(&b.scale(&Rational::from_integer(c)));
    }
    m
}

fn c1_calibration(pool: &Pool) -> Outcome {
    let report = calibrate(pool);
    let gate = Workbench::new(3, pool).phi0().is_ok();
    let selected = report.notes.iter().find(|n| n.contains("selected")).cloned().unwrap_or_default();
    (report.passed() && gate, format!("log_ari(pal) = reference phi0 at depths 1-3; {selected}"))
}

fn c2_psi0(_: &Pool) -> Outcome {
    let reference = (1..=3).all(|r| psi0(r) == rf(PSI0_REFERENCE[r - 1]));
    let witt = witt_check(D);
    let s = s_identity_check();
    let detail = format!(
        "psi0 reference values {}; {}; {}; {}",
        if reference { "ok" } else { "differ" },
        verdict(&witt),
        verdict(&s),
        s.notes.join("; ")
    );
    (reference && witt.passed() && s.passed(), detail)
}

fn c3_phi0_flat(pool: &Pool) -> Outcome {
    let wb = Workbench::new(4, pool);
    let report = phi0_extra_check(&wb).unwrap();
    let flat: Vec<_> = report.instances.iter().filter(|x| x.i == 1).collect();
    let ok = flat.len() == 4 && flat.iter().all(|x| x.ok);
    (ok, "(phi0^(r))-flat = -psi0^(r)/2^r for r = 1,2,3 and differs from psi_B^(4)".into())
}

fn c4_flat_morphism(_: &Pool) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut agree = 0;
    for _ in 0..25 {
        let f = random_v(&mut rng, 4);
        let g = random_v(&mut rng, 4);
        assert!(check_in_v(&f).passed() && check_in_v(&g).passed());
        let lhs = bracket(Bracket::Ari, &f, &g).unwrap().flat();
        let rhs = ihara_bracket(&f.flat(), &g.flat()).unwrap();
        agree += usize::from(lhs == rhs);
    }
    let f = Mould::concentrated(2, rf("x1 + x2"), 3);
    let g = Mould::concentrated(1, rf("x1"), 3);
    let diff = bracket(Bracket::Ari, &f, &g).unwrap().flat().sub(&ihara_bracket(&f.flat(), &g.flat()).unwrap());
    let counter = diff.get(3) == &rf("2*(x1 - x3)*x3") && diff.get(1).is_zero() && diff.get(2).is_zero();
    (agree == 25 && counter, format!("{agree}/25 seeded V pairs agree; counterexample gives {}", diff.get(3)))
}

fn c5_sigma3(pool: &Pool) -> Outcome {
    let wb = Workbench::new(2, pool);
    let f = seed(2, 2);
    let e = wb.chi_e(&f).unwrap();
    let b = wb.chi_b(&f).unwrap();
    let target = rf("-2*x1 + x2");
    (e.get(2) == &target && b.get(2) == &target, format!("chi_E: {}, chi_B: {}", e.get(2), b.get(2)))
}

fn c6_theorem(pool: &Pool) -> Outcome {
    let wb = Workbench::new(D, pool);
    let mut ok = true;
    let mut parts = Vec::new();
    for k in [2, 4, -2] {
        let c = compare_lifts(&wb, &seed(k, D)).unwrap();
        ok &= c.agreement.passed() && c.remark.passed();
        parts.push(format!("x1^{k}: {} / {}", verdict(&c.agreement), verdict(&c.remark)));
    }
    (ok, format!("agreement at depths 1-4, depth-5 difference = {{f, Q4}}/240 != 0; {}", parts.join("; ")))
}

fn c7_membership(pool: &Pool) -> Outcome {
    let wb = Workbench::new(D, pool);
    let mut ok = true;
    let mut parts = Vec::new();
    let dm_targets = [
        ("chi_E(x1^2)", wb.chi_e(&seed(2, D)).unwrap()),
        ("chi_E(x1^4)", wb.chi_e(&seed(4, D)).unwrap()),
        ("chi_B(x1^2)", wb.chi_b(&seed(2, D)).unwrap()),
        ("psi0", psi0_mould(D)),
    ];
    for (name, m) in &dm_targets {
        let r = check_dm_with(m, pool);
        ok &= r.passed();
        parts.push(format!("{name} {}", verdict(&r)));
    }
    let q = check_ls_with(&q4(D), pool);
    let pal = pal_symmetral(&wb).unwrap();
    let shuffle_law = phi0_shuffle(&wb).unwrap();
    let flat = wb.phi0_flat().unwrap();
    let flat_out = !check_ls_with(flat, pool).passed() && !check_dm_with(flat, pool).passed();
    ok &= q.passed() && pal.passed() && shuffle_law.passed() && flat_out;
    parts.push(format!("Q4 {}", verdict(&q)));
    parts.push(verdict(&pal));
    parts.push(verdict(&shuffle_law));
    parts.push(format!("phi0-flat outside ls and dm: {flat_out}"));
    (ok, parts.join("; "))
}

fn c8_closure(pool: &Pool) -> Outcome {
    let wb = Workbench::new(D, pool);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let ls_basis = [seed(2, D), seed(4, D), seed(-2, D), q4(D)];
    let dm_basis = [wb.eta(3).unwrap(), wb.eta(5).unwrap(), wb.eta(-1).unwrap(), wb.xi(3).unwrap()];
    let mut ok = true;
    let mut count = 0;
    for (basis, polar) in [(&ls_basis, false), (&dm_basis, true)] {
        let check = |m: &Mould| if polar { check_dm_with(m, pool) } else { check_ls_with(m, pool) };
        for _ in 0..3 {
            let f = combination(&mut rng, basis);
            let g = combination(&mut rng, basis);
            if !(check(&f).passed() && check(&g).passed()) {
                return (false, "a seeded input fails its own law".into());
            }
            ok &= check(&ihara_bracket(&f, &g).unwrap()).passed();
            count += 1;
        }
    }
    (ok, format!("{count} seeded pairs (3 in ls, 3 in dm) stay in their space under the Ihara bracket"))
}

fn c9_morphism(pool: &Pool) -> Outcome {
    let wb = Workbench::new(D, pool);
    let (f, g) = (seed(2, D), seed(4, D));
    let lhs = wb.chi_e(&ihara_bracket(&f, &g).unwrap()).unwrap();
    let rhs = ihara_bracket(&wb.chi_e(&f).unwrap(), &wb.chi_e(&g).unwrap()).unwrap();
    (lhs == rhs, "chi_E({x1^2, x1^4}) = {chi_E(x1^2), chi_E(x1^4)} through depth 5".into())
}

fn c10_round_trip(pool: &Pool) -> Outcome {
    let wb = Workbench::new(D, pool);
    let mut ok = true;
    for k in [2, 4] {
        let f = seed(k, D);
        ok &= wb.chi_b_inv(&wb.chi_b(&f).unwrap()).unwrap() == f;
    }
    let back = wb.chi_b_inv(&wb.chi_e(&seed(2, D)).unwrap()).unwrap();
    let ls = check_ls_with(&back, pool);
    (ok && ls.passed(), format!("chi_B_inv(chi_B(f)) = f for x1^2, x1^4; chi_B_inv(chi_E(x1^2)): {}", verdict(&ls)))
}

fn c11_xi(pool: &Pool) -> Outcome {
    let r = xi_relation(&Workbench::new(D, pool)).unwrap();
    (r.passed(), format!("{{xi3, xi9}} - 3{{xi5, xi7}} = 0 through depth 4: {}", verdict(&r)))
}

fn c12_adjoint_series(pool: &Pool) -> Outcome {
    let r = prop54_check(&Workbench::new(D, pool), &seed(2, D)).unwrap();
    (r.passed(), format!("{}; {}", verdict(&r), r.notes.join("; ")))
}

fn c13_sigma(pool: &Pool) -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for which in [3u32, 5, 9, 7] {
        let (modulus, _) = sigma_terms(which).unwrap();
        let wb = Workbench::new(modulus - 1, pool);
        let (report, total) = decompose_sigma(&wb, which).unwrap();
        ok &= report.passed();
        parts.push(format!("sigma{which} {}", verdict(&report)));
        if which == 7 {
            let t = BracketExpr::nested(&["eta:-1", "eta:3", "eta:-1", "eta:7", "eta:-1"]);
            let single = evaluate_decomposition(&wb, 7, 7, &[(Rational::new(-1, 960), t)]).unwrap().1;
            let corrected = total.add(&single);
            let poly = (1..=6).all(|r| corrected.get(r).has_unit_denominator());
            finding(format!(
                "sigma7 with the {{eta-1, eta3, eta-1, eta7, eta-1}} coefficient -1/1920 instead of +1/1920: \
                 depths 1-6 polynomial = {poly}"
            ));
        }
    }
    (ok, parts.join("; "))
}

fn random_ratfun(rng: &mut ChaCha8Rng) -> RationalFunction {
    let r = 3;
    let a = random_component(rng, r);
    if rng.gen_bool(0.3) {
        let mut den = Polynomial::constant(Rational::from_integer(rng.gen_range(1..=3)));
        den = den.add(&Polynomial::var(1).mul(&Polynomial::var(2)));
        a.div(&RationalFunction::from_poly(den)).unwrap()
    } else {
        a
    }
}

fn point(rng: &mut ChaCha8Rng) -> Vec<Rational> {
    (0..3).map(|_| Rational::new(rng.gen_range(-1000..=1000), rng.gen_range(1..=50))).collect()
}

fn value_at(f: &RationalFunction, p: &[Rational]) -> Option<Rational> {
    f.evaluate(p).ok()
}

fn shuffle_oracle(u: &Word, v: &Word) -> WordSum {
    let (a, b): (Vec<usize>, Vec<usize>) = (u.letters().collect(), v.letters().collect());
    let n = a.len() + b.len();
    let mut out = WordSum::zero();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != a.len() {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let letters: Vec<usize> = (0..n)
            .map(|k| {
                if mask >> k & 1 == 1 {
                    i += 1;
                    a[i - 1]
                } else {
                    j += 1;
                    b[j - 1]
                }
            })
            .collect();
        out.add_term(Word::new(&letters), RationalFunction::one());
    }
    out
}

fn c14_kernel(_: &Pool) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut ring = true;
    let mut idempotent = true;
    for _ in 0..50 {
        let (a, b, c) = (random_ratfun(&mut rng), random_ratfun(&mut rng), random_ratfun(&mut rng));
        ring &= a.add(&b) == b.add(&a) && a.mul(&b) == b.mul(&a);
        ring &= a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c));
        ring &= a.add(&b).add(&c) == a.add(&b.add(&c)) && a.sub(&a).is_zero();
        idempotent &= rf(&a.to_string()) == a && rf(&a.to_string()).to_string() == a.to_string();
    }
    let mut sz = 0;
    for k in 0..200 {
        let (a, b, c) = (random_ratfun(&mut rng), random_ratfun(&mut rng), random_ratfun(&mut rng));
        let lhs = a.add(&b).mul(&c);
        let rhs = if k % 2 == 0 { a.mul(&c).add(&b.mul(&c)) } else { a.mul(&c).add(&b.mul(&c)).add(&RationalFunction::var(1)) };
        let canonical = lhs == rhs;
        let p = point(&mut rng);
        let numeric = match (value_at(&a, &p), value_at(&b, &p), value_at(&c, &p)) {
            (Some(x), Some(y), Some(z)) => {
                let l = &(&x + &y) * &z;
                let r = &(&x * &z) + &(&y * &z);
                let r = if k % 2 == 0 { r } else { &r + &p[0] };
                l == r
            }
            _ => canonical,
        };
        sz += usize::from(canonical == numeric && canonical == (k % 2 == 0));
    }
    let mut products = true;
    let words: Vec<Word> = [&[][..], &[1], &[2], &[1, 2], &[3, 1], &[2, 3, 1]].iter().map(|w| Word::new(w)).collect();
    for u in &words {
        for v in &words {
            if u.len() + v.len() > 4 {
                continue;
            }
            products &= shuffle(u, v) == shuffle_oracle(u, v);
            products &= stuffle(u, v) == stuffle(v, u);
        }
    }
    let ok = ring && idempotent && sz == 200 && products;
    (
        ok,
        format!(
            "ring laws {ring}, canonical idempotence {idempotent}, Schwartz-Zippel {sz}/200, shuffle/stuffle oracles {products}"
        ),
    )
}

fn main() {
    let start = Instant::now();
    let mut suite = Suite { pool: Pool::new(None).expect("worker pool"), failed: Vec::new() };
    println!("acceptance: truncation depth {D}, {} worker threads", suite.pool.threads());
    suite.criterion(1, "calibration gate", c1_calibration);
    suite.criterion(2, "psi0 values, s-identity, Witt r=3..5", c2_psi0);
    info("{s_m, s_n} = (n - m) s_(m+n) holds for every m, n <= 3; the stated (m - n) sign contradicts the Witt identity");
    suite.criterion(3, "phi0-flat against psi0-bar and psi_B", c3_phi0_flat);
    suite.criterion(4, "flat is a bracket morphism on V", c4_flat_morphism);
    suite.criterion(5, "sigma3 anchor", c5_sigma3);
    suite.criterion(6, "lift agreement and the Q4 difference", c6_theorem);
    suite.criterion(7, "memberships", c7_membership);
    info("psi0 satisfies every dm equation through depth 5 but psi0^(1) = 1/x1 is odd, so only the evenness instance (1,0) fails");
    suite.criterion(8, "Lie closure of ls and dm", c8_closure);
    suite.criterion(9, "chi_E is a Lie morphism", c9_morphism);
    suite.criterion(10, "chi_B round trips", c10_round_trip);
    suite.criterion(11, "xi relation", c11_xi);
    suite.criterion(12, "chi_B as an adjoint series, B factorizations", c12_adjoint_series);
    suite.criterion(13, "sigma decompositions (sigma7 at depth 6)", c13_sigma);
    suite.criterion(14, "kernel properties", c14_kernel);
    let expected: Vec<u32> = EXPECTED_FAILURES.to_vec();
    println!(
        "acceptance: {} of 14 criteria pass; failing {:?} (documented findings {:?}) in {:.1}s",
        14 - suite.failed.len(),
        suite.failed,
        expected,
        start.elapsed().as_secs_f64()
    );
    if suite.failed != expected {
        println!("acceptance: the failing set differs from the documented findings");
        std::process::exit(1);
    }
}
