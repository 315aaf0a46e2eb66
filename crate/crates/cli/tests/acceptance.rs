//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits non-zero on any FAIL.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sdmap_cli::deterministic_payload;
use sdmap_core::exact::{q, Polynomial, Rational, RationalFunction};
use sdmap_core::fields::{
    qpi_in_image, sample_pairs, FunctionField, ImageMembership, PrimeField, QuadraticField, RationalField,
};
use sdmap_core::finite::{
    classify, is_sd_power_map, oracle_all_maps, oracle_constrained, power_map_candidates, ClassifyOptions, FpMap,
    OracleTier, PowerMapVerdict, Witness,
};
use sdmap_core::quad::{lattice_fix, lattice_fix_ordered, wrong_sign_contradiction, verify_automorphism_sd, verify_complex};
use sdmap_core::quad::{Automorphism, Case, LatticeOrder};
use sdmap_core::sd::{
    ap_propagate, check_sd, integer_induction_check, symbolic_sequence, u_constraint, Direction, Identity, QpiMap,
    Rule,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Display>(err: T) -> String {
    err.to_string()
}

fn poly(c: &[i64]) -> Polynomial {
    Polynomial::from_ints(c)
}

fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
    RationalFunction::new(poly(num), poly(den)).unwrap()
}

/// f(0..=8) in u, entered from the closed forms (coefficients low degree first).
fn closed_forms() -> Vec<RationalFunction> {
    vec![
        rf(&[0], &[1]),
        rf(&[1], &[1]),
        rf(&[0, 1], &[1]),
        rf(&[1, 1], &[-1, 1]),
        rf(&[0, 0, 1], &[1]),
        rf(&[1, 0, 1], &[1, -2, 1]),
        rf(&[0, 1, -1, 1], &[1]),
        rf(&[1, 1, -1, 1], &[-1, 3, -3, 1]),
        rf(&[0, 0, 2, -2, 1], &[1]),
    ]
}

fn symbolic_table() -> Outcome {
    let seq = symbolic_sequence(8).map_err(e)?;
    let expected = closed_forms();
    for (n, want) in expected.iter().enumerate() {
        let got = seq.entries.get(n).ok_or("sequence too short")?;
        ensure(got == want, || format!("f({n}) = {got}, expected {want}"))?;
    }
    Ok("f(0..8) match the closed forms".into())
}

fn constraint_roots() -> Outcome {
    let c = u_constraint().map_err(e)?;
    // f(8) - u f(4) = u^2 (u-1)(u-2) expanded independently
    let expected = poly(&[0, 0, 2, -3, 1]);
    ensure(c.numerator.monic() == expected, || format!("numerator {}", c.numerator.display_with("u")))?;
    let mut multiset: Vec<Rational> = c
        .roots
        .iter()
        .flat_map(|(r, m)| std::iter::repeat_n(r.clone(), *m))
        .collect();
    multiset.sort();
    let want = vec![q(0, 1), q(0, 1), q(1, 1), q(2, 1)];
    ensure(multiset == want, || format!("roots {multiset:?}"))?;
    for r in &multiset {
        ensure(expected.eval(r).is_zero(), || format!("{r} is not a root"))?;
    }
    ensure(c.surviving == vec![q(2, 1)], || format!("surviving {:?}", c.surviving))?;
    Ok("roots {0, 0, 1, 2}, survivor u = 2".into())
}

fn integer_induction() -> Outcome {
    let report = integer_induction_check(1000).map_err(e)?;
    ensure(report.passed(), || format!("{:?}", report.violations.first()))?;
    // independent replay of the recurrence in exact rationals
    let (mut prev, mut cur) = (q(1, 1), q(2, 1));
    for n in 2..1000i64 {
        let next = (&prev * &(&cur + &q(1, 1))).checked_div(&(&cur - &q(1, 1))).map_err(e)?;
        ensure(next == q(n + 1, 1), || format!("f({}) = {next}", n + 1))?;
        (prev, cur) = (cur, next);
    }
    Ok(format!("f(n) = n for n <= 1000 ({} checks)", report.checked_pairs))
}

fn powmod(b: u64, k: u64, p: u64) -> u64 {
    (0..k).fold(1, |acc, _| acc * b % p)
}

fn power_table(p: u64, k: u64) -> Vec<u64> {
    (0..p).map(|x| powmod(x, k, p)).collect()
}

fn table_set(maps: &[FpMap]) -> BTreeSet<Vec<u64>> {
    maps.iter().map(|m| m.table.clone()).collect()
}

fn f5_classification() -> Outcome {
    let opts = ClassifyOptions {
        max_oracle_tier: OracleTier::AllMaps,
        ..ClassifyOptions::default()
    };
    let result = classify(5, &opts).map_err(e)?;
    let expected: BTreeSet<_> = [power_table(5, 1), power_table(5, 3)].into_iter().collect();
    ensure(result.maps.len() == 2, || format!("{} maps", result.maps.len()))?;
    ensure(table_set(&result.maps) == expected, || format!("{:?}", result.tables()))?;
    let oracle = oracle_all_maps(5).map_err(e)?;
    ensure(oracle.stats.candidates_examined == 3125, || {
        format!("oracle examined {}", oracle.stats.candidates_examined)
    })?;
    ensure(table_set(&oracle.maps) == expected, || "all-maps oracle disagrees".into())?;
    Ok("{x, x^3}, all 3125 maps agree".into())
}

fn power_search(p: u64) -> Result<BTreeSet<Vec<u64>>, String> {
    let mut out = BTreeSet::new();
    for k in power_map_candidates(p).map_err(e)? {
        if is_sd_power_map(p, k).map_err(e)? == PowerMapVerdict::Pass {
            out.insert(power_table(p, k));
        }
    }
    Ok(out)
}

fn oracle_concordance() -> Outcome {
    for p in [3, 5, 7] {
        let all = table_set(&oracle_all_maps(p).map_err(e)?.maps);
        let constrained = table_set(&oracle_constrained(p).map_err(e)?.maps);
        let search = power_search(p)?;
        ensure(all == constrained && constrained == search, || format!("disagreement at p = {p}"))?;
    }
    for p in [11, 13] {
        let constrained = table_set(&oracle_constrained(p).map_err(e)?.maps);
        ensure(constrained == power_search(p)?, || format!("disagreement at p = {p}"))?;
    }
    Ok("p in {3,5,7}: three methods agree; p in {11,13}: two agree".into())
}

const DS: [i64; 6] = [2, 3, 5, -1, -2, -3];

fn automorphism_suite() -> Outcome {
    for d in DS {
        for map in [Automorphism::Identity, Automorphism::Conjugation] {
            let r = verify_automorphism_sd(&q(d, 1), map, 500, 0).map_err(e)?;
            ensure(r.passed() && r.violations.is_empty() && r.checked_pairs == 500, || {
                format!("{map:?} on d = {d}: {:?}", r.violations.first())
            })?;
        }
    }
    Ok("identity and conjugation, 500 pairs, 6 fields, 0 violations".into())
}

fn quadratic_replay() -> Outcome {
    for d in DS {
        for case in [Case::Plus, Case::Minus] {
            let c = wrong_sign_contradiction(&q(d, 1), case).map_err(e)?;
            ensure(c.confirmed(), || format!("d = {d} {case:?} not confirmed"))?;
            for comp in &c.components {
                ensure(!comp.b_component.is_zero(), || format!("d = {d}: zero sqrt(d)-component"))?;
            }
        }
    }
    let field = QuadraticField::new(q(2, 1)).map_err(e)?;
    let fix = lattice_fix(&q(2, 1), Automorphism::Identity, 20, 20).map_err(e)?;
    ensure(fix.points.len() == 1680 && fix.all_certified(), || format!("{} points", fix.points.len()))?;
    for p in fix.points.values() {
        let want = field.int_elem(p.m, p.n);
        ensure(p.value == want && p.image == want, || format!("({}, {}) -> {}", p.m, p.n, p.image))?;
    }
    let cols = lattice_fix_ordered(&q(2, 1), Automorphism::Identity, 20, 20, LatticeOrder::ColumnMajor).map_err(e)?;
    ensure(cols.images() == fix.images(), || "row and column order disagree".into())?;
    Ok("contradiction for 6 values of d; 1680 lattice points, order-independent".into())
}

fn ap_engine() -> Outcome {
    let f = RationalField::default();
    let (a, d) = (q(1, 1), q(1, 1));
    let run = ap_propagate(&f, &Identity, &a, &d, 50).map_err(e)?;
    ensure(run.certified() && run.failures.is_empty(), || format!("{:?}", run.failures))?;
    let ks: Vec<i64> = run.terms().iter().map(|(k, _)| *k).collect();
    ensure(ks == (2..=50).collect::<Vec<_>>(), || format!("derived k = {ks:?}"))?;
    for (k, term) in run.terms() {
        ensure(term == q(k + 1, 1), || format!("t_{k} = {term}"))?;
    }
    let identity = (&a - &d).checked_div(&(&a + &d)).map_err(e)?;
    ensure(run.halt_ratio.as_ref() == Some(&identity), || format!("halt ratio {:?}", run.halt_ratio))?;

    // a progression whose backward move does not hit zero immediately
    let (a, d) = (q(1, 1), q(2, 7));
    let run = ap_propagate(&f, &Identity, &a, &d, 4).map_err(e)?;
    let back = run
        .derived
        .iter()
        .find(|s| s.k == -1 && s.direction == Direction::Backward)
        .ok_or("no backward step at k = -1")?;
    let identity = (&a - &d).checked_div(&(&a + &d)).map_err(e)?;
    ensure(back.ratio == identity, || format!("ratio {} vs {identity}", back.ratio))?;
    Ok("f(n) = n for n = 3..51; backward ratio (a-d)/(a+d) for d = 1, 2/7".into())
}

fn counterexample_suite() -> Outcome {
    let field = FunctionField::default();
    let pairs = sample_pairs(&field, &mut ChaCha8Rng::seed_from_u64(0), 200);
    let x = RationalFunction::var();
    for k in [2usize, 3] {
        let r = check_sd(&field, &QpiMap { k }, &pairs).map_err(e)?;
        ensure(r.passed() && r.checked_pairs == 200, || format!("k = {k}: {:?}", r.violations.first()))?;
        let m = qpi_in_image(k, &x).map_err(e)?;
        ensure(m == ImageMembership::No { exponent: 1 }, || format!("k = {k}: {m:?}"))?;
        let xk = RationalFunction::new(Polynomial::monomial(q(1, 1), k), Polynomial::one()).unwrap();
        ensure(qpi_in_image(k, &xk).map_err(e)? == ImageMembership::Yes, || "x^k should be an image".into())?;
    }
    Ok("k = 2, 3 pass 200 pairs; x is not an image".into())
}

fn complex_smoke() -> Outcome {
    let s = verify_complex(1e-9, 1000, 0).map_err(e)?;
    for (name, r) in [("identity", &s.identity_sd), ("conjugation", &s.conjugation_sd)] {
        ensure(r.passed() && r.checked_pairs == 1000, || format!("{name}: {:?}", r.violations.first()))?;
    }
    ensure(s.ratio_identities.passed(), || format!("{:?}", s.ratio_identities.violations.first()))?;
    ensure(s.half_angle.passed(), || format!("{:?}", s.half_angle.violations.first()))?;
    Ok("1000 pairs within 1e-9".into())
}

fn negative_controls() -> Outcome {
    let f = RationalField::default();
    let pairs = vec![(q(2, 1), q(1, 1))];
    let square = Rule::new("x^2", |_: &RationalField, x: &Rational| x * x);
    let shift = Rule::new("x+1", |_: &RationalField, x: &Rational| x + &q(1, 1));
    // f(3) = 9 against 5/3 for the square; f(3) = 4 against 5/1 for the shift
    for (rule, lhs, rhs) in [(square, "9", "5/3"), (shift, "4", "5")] {
        let r = check_sd(&f, &rule, &pairs).map_err(e)?;
        let v = r.violations.first().ok_or("no violation recorded")?;
        ensure(!r.passed() && v.x == "2" && v.y.as_deref() == Some("1"), || format!("{v:?}"))?;
        ensure(v.lhs == lhs && v.rhs == rhs, || format!("{v:?}"))?;
    }
    // F_7, k = 5: lhs 3^5, rhs (2^5 + 1)/(2^5 - 1)
    let p = 7;
    let lhs = powmod(3, 5, p);
    let inv = powmod(powmod(2, 5, p) + p - 1, p - 2, p);
    let rhs = (powmod(2, 5, p) + 1) * inv % p;
    let verdict = is_sd_power_map(p, 5).map_err(e)?;
    let want = PowerMapVerdict::Fail(Witness { x: 2, y: 1, lhs, rhs: Some(rhs) });
    ensure(verdict == want && (lhs, rhs) == (5, 4), || format!("{verdict:?}"))?;
    let field = PrimeField::new(p).map_err(e)?;
    let map = FpMap::power(p, 5);
    let elem = |v: i64| field.elem(v);
    let r = check_sd(&field, &map, &[(elem(2), elem(1))]).map_err(e)?;
    ensure(!r.passed(), || "F_7 k = 5 accepted".into())?;
    Ok("x^2, x+1 and F_7 x^5 rejected at (2,1); F_7 lhs 5 vs rhs 4".into())
}

const RUNS: [&[&str]; 6] = [
    &["verify-symbolic"],
    &["classify"],
    &["verify-quad"],
    &["verify-complex"],
    &["ap-demo", "--steps", "20"],
    &["counterexamples"],
];

fn determinism() -> Outcome {
    for args in RUNS {
        let run = || {
            let out = Command::new(env!("CARGO_BIN_EXE_sdmap"))
                .args(args)
                .args(["--seed", "17", "--format", "json"])
                .output()
                .map_err(e)?;
            ensure(out.status.code() == Some(0), || format!("{args:?} exited {:?}", out.status.code()))?;
            deterministic_payload(&String::from_utf8_lossy(&out.stdout)).map_err(e)
        };
        let (first, second) = (run()?, run()?);
        ensure(first == second, || format!("{} differs between runs", args[0]))?;
        let bytes = |v: &serde_json::Value| serde_json::to_string(v).unwrap();
        ensure(bytes(&first) == bytes(&second), || format!("{} bytes differ", args[0]))?;
    }
    Ok("6 commands, identical payloads".into())
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() {
    let secs = Duration::from_secs;
    let criteria: [Criterion; 12] = [
        ("symbolic table", symbolic_table, secs(1)),
        ("constraint roots", constraint_roots, secs(1)),
        ("integer induction", integer_induction, secs(5)),
        ("F_5 classification", f5_classification, secs(10)),
        ("oracle concordance", oracle_concordance, secs(300)),
        ("automorphism suite", automorphism_suite, secs(10)),
        ("quadratic replay", quadratic_replay, secs(30)),
        ("progression engine", ap_engine, secs(30)),
        ("counterexample suite", counterexample_suite, secs(30)),
        ("complex smoke test", complex_smoke, secs(5)),
        ("negative controls", negative_controls, secs(10)),
        ("determinism", determinism, secs(120)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed <= *limit {
                Ok(msg)
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match outcome {
            Ok(msg) => println!("PASS {:>2} {name}: {msg} [{elapsed:.2?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {msg} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
