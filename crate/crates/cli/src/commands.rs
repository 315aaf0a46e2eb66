use std::fmt::Write as _;

use rand::SeedableRng;
use sdmap_core::exact::{q, Rational};
use sdmap_core::fields::{
    qpi_in_image, sample_pairs, Field, FunctionField, ImageMembership, QuadraticElement, QuadraticField,
    RationalField, SampleField,
};
use sdmap_core::finite::{classify_range, ClassifyOptions, OracleTier};
use sdmap_core::quad::{
    lattice_fix_ordered, ratio_case_formulas, wrong_sign_contradiction, verify_automorphism_sd, verify_complex,
    Automorphism, Case, LatticeOrder,
};
use sdmap_core::sd::{
    ap_propagate, check_properties, check_sd, integer_induction_check, reference_values, symbolic_sequence,
    u_constraint, Conjugation, Identity, QpiMap, SdCandidate, SdReport, DEFAULT_SEQUENCE_CAP,
};
use sdmap_core::Error;
use serde_json::{json, Value};

use crate::args::{ApDemo, ApMap, Classify, Counterexamples, MapChoice, VerifyComplex, VerifyQuad, VerifySymbolic};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_ASSERTION: i32 = 2;
pub const EXIT_INCONSISTENCY: i32 = 3;

/// What a command produced. `result` and `config` are deterministic given
/// the seed; anything time-dependent goes in `stats`.
#[derive(Debug)]
pub struct Outcome {
    pub config: Value,
    pub result: Value,
    pub stats: Value,
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn new(config: Value) -> Self {
        Outcome {
            config,
            result: Value::Null,
            stats: json!({}),
            text: String::new(),
            code: EXIT_PASS,
        }
    }

    fn fail_with(&mut self, code: i32) {
        self.code = self.code.max(code);
    }

    fn require(&mut self, report: &SdReport) {
        if !report.passed() {
            self.fail_with(EXIT_ASSERTION);
        }
    }

    fn error(mut self, e: &Error) -> Self {
        self.fail_with(exit_code(e));
        self.result = json!({ "error": e.to_string() });
        self
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InternalInconsistency(_) => EXIT_INCONSISTENCY,
        Error::ZeroTermEncountered(_) | Error::InjectivityViolation { .. } | Error::RecurrenceDegenerate(_) => {
            EXIT_ASSERTION
        }
        _ => EXIT_USAGE,
    }
}

fn status(code: i32) -> &'static str {
    if code == EXIT_PASS {
        "pass"
    } else {
        "fail"
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

pub fn verify_symbolic(args: &VerifySymbolic, seed: u64) -> Outcome {
    let out = Outcome::new(json!({ "seed": seed, "max_n": args.max_n }));
    match verify_symbolic_inner(args, out) {
        Ok(o) => o,
        Err(b) => {
            let (o, e) = *b;
            o.error(&e)
        }
    }
}

type Partial = Result<Outcome, Box<(Outcome, Error)>>;

macro_rules! attempt {
    ($out:ident, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Err(Box::new(($out, e))),
        }
    };
}

fn verify_symbolic_inner(args: &VerifySymbolic, mut out: Outcome) -> Partial {
    if args.max_n < 3 {
        return Err(Box::new((out, Error::Precondition(format!("--max-n must be at least 3, got {}", args.max_n)))));
    }
    let len = args.max_n.clamp(8, DEFAULT_SEQUENCE_CAP);
    let seq = attempt!(out, symbolic_sequence(len));
    let reference = reference_values();
    let table_matches = seq.entries[..reference.len()] == reference[..];
    let two = q(2, 1);
    let integer_at_two = seq
        .entries
        .iter()
        .enumerate()
        .all(|(n, e)| e.eval(&two).ok() == Some(Rational::from(n as i64)));
    let constraint = attempt!(out, u_constraint());
    let induction = attempt!(out, integer_induction_check(args.max_n));

    if !table_matches || !integer_at_two {
        out.fail_with(EXIT_ASSERTION);
    }
    out.require(&induction);

    let entries: Vec<Value> = (0..=8)
        .map(|n| json!({ "n": n, "f": seq.render(n).unwrap() }))
        .collect();
    let t = &mut out.text;
    let _ = writeln!(t, "symbolic values, u = f(2):");
    for n in 0..=8 {
        let _ = writeln!(t, "  f({n}) = {}", seq.render(n).unwrap());
    }
    let _ = writeln!(t, "table matches closed forms: {table_matches}");
    let _ = writeln!(t, "entries 0..{len} equal n at u = 2: {integer_at_two}");
    let _ = writeln!(t, "numerator of f(8) - u*f(4): {}", constraint.numerator.display_with("u"));
    let roots: Vec<String> = constraint.roots.iter().map(|(r, m)| format!("{r} (x{m})")).collect();
    let _ = writeln!(t, "rational roots: {}", roots.join(", "));
    let _ = writeln!(t, "surviving root after excluding 0, 1: u = {}", constraint.surviving[0]);
    t.push_str(&induction.render_text(&format!("f(n) = n for n <= {}", args.max_n)));

    out.result = json!({
        "status": status(out.code),
        "entries": entries,
        "table_matches_closed_forms": table_matches,
        "sequence_length": len,
        "integer_values_at_u_equals_2": integer_at_two,
        "constraint": to_value(&constraint),
        "induction": to_value(&induction),
    });
    Ok(out)
}

pub fn classify(args: &Classify, seed: u64) -> Outcome {
    let mut out = Outcome::new(json!({
        "seed": seed,
        "primes": args.primes,
        "max_oracle_tier": args.max_oracle_tier,
        "max_prime": args.max_prime,
    }));
    if args.primes.is_empty() {
        return out.error(&Error::Precondition("--primes is empty".into()));
    }
    let tier: OracleTier = match args.max_oracle_tier.parse() {
        Ok(t) => t,
        Err(e) => return out.error(&e),
    };
    let opts = ClassifyOptions {
        max_oracle_tier: tier,
        max_prime: args.max_prime,
    };
    let results = classify_range(&args.primes, &opts);
    let mut entries = Vec::new();
    let mut stats = Vec::new();
    let mut counts = Vec::new();
    for (&p, r) in args.primes.iter().zip(&results) {
        match r {
            Ok(c) => {
                let ks: Vec<String> = c
                    .maps
                    .iter()
                    .map(|m| m.k().map_or_else(|| format!("{:?}", m.table), |k| format!("x^{k}")))
                    .collect();
                let _ = writeln!(
                    out.text,
                    "F_{p}: {} SD map(s) [{}] via {:?}, cross-checked by {:?}",
                    c.maps.len(),
                    ks.join(", "),
                    c.method,
                    c.methods_run
                );
                for n in &c.notes {
                    let _ = writeln!(out.text, "  note: {n}");
                }
                counts.push(json!(c.maps.len()));
                entries.push(to_value(c));
                stats.push(json!({
                    "p": p,
                    "candidates_examined": c.stats.candidates_examined,
                    "pairs_checked": c.stats.pairs_checked,
                    "wall_ms": c.stats.wall_ms,
                }));
            }
            Err(e) => {
                out.fail_with(exit_code(e));
                let _ = writeln!(out.text, "F_{p}: error: {e}");
                counts.push(Value::Null);
                entries.push(json!({ "p": p, "error": e.to_string() }));
            }
        }
    }
    out.stats = json!({ "per_prime": stats });
    out.result = json!({ "status": status(out.code), "counts": counts, "results": entries });
    out
}

fn parse_grid(s: &str) -> Result<(i64, i64), Error> {
    let bad = || Error::Parse(format!("invalid grid {s:?}, expected MxN"));
    let (m, n) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((m.trim().parse().map_err(|_| bad())?, n.trim().parse().map_err(|_| bad())?))
}

pub fn verify_quad(args: &VerifyQuad, seed: u64) -> Outcome {
    let out = Outcome::new(json!({
        "seed": seed,
        "d": args.d,
        "map": format!("{:?}", args.map).to_lowercase(),
        "grid": args.grid,
        "samples": args.samples,
    }));
    match verify_quad_inner(args, seed, out) {
        Ok(o) => o,
        Err(b) => {
            let (o, e) = *b;
            o.error(&e)
        }
    }
}

fn verify_quad_inner(args: &VerifyQuad, seed: u64, mut out: Outcome) -> Partial {
    let d: Rational = attempt!(out, args.d.parse());
    let field = attempt!(out, QuadraticField::new(d.clone()));
    let (m_bound, n_bound) = attempt!(out, parse_grid(&args.grid));
    let maps: Vec<Automorphism> = match args.map {
        MapChoice::Identity => vec![Automorphism::Identity],
        MapChoice::Conj => vec![Automorphism::Conjugation],
        MapChoice::Both => vec![Automorphism::Identity, Automorphism::Conjugation],
    };
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut zs: Vec<QuadraticElement> = vec![field.one(), field.int_elem(1, 1)];
    zs.extend((0..args.samples).map(|_| field.sample(&mut rng)).filter(|z| !z.is_zero()));

    let mut per_map = Vec::new();
    for map in maps {
        let name = format!("{map:?}").to_lowercase();
        let case = match map {
            Automorphism::Identity => Case::Plus,
            Automorphism::Conjugation => Case::Minus,
        };
        let sd = attempt!(out, verify_automorphism_sd(&d, map, args.samples, seed));
        let cases = attempt!(out, ratio_case_formulas(&d, case, &zs));
        let contradiction = attempt!(out, wrong_sign_contradiction(&d, case));
        let rows = attempt!(out, lattice_fix_ordered(&d, map, m_bound, n_bound, LatticeOrder::RowMajor));
        let cols = attempt!(out, lattice_fix_ordered(&d, map, m_bound, n_bound, LatticeOrder::ColumnMajor));
        let orders_agree = rows.images() == cols.images();

        out.require(&sd);
        out.require(&cases);
        if !contradiction.confirmed() || !orders_agree || !rows.all_certified() {
            out.fail_with(EXIT_ASSERTION);
        }
        let t = &mut out.text;
        t.push_str(&sd.render_text(&format!("{name} is SD on {} seeded pairs", args.samples)));
        t.push_str(&cases.render_text(&format!("{name}: z/conj(z) case formulas")));
        let _ = writeln!(
            t,
            "[{}] wrong-sign hypothesis gives f(2+sqrt(d)) = {}; sqrt(d)-components of cleared discrepancies: {}",
            if contradiction.confirmed() { "PASS" } else { "FAIL" },
            contradiction.hypothetical,
            contradiction
                .components
                .iter()
                .map(|c| c.b_component.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
        let _ = writeln!(
            t,
            "[{}] lattice {}x{}: {} of {} points certified, row/column orders agree: {orders_agree}",
            if rows.all_certified() && orders_agree { "PASS" } else { "FAIL" },
            m_bound,
            n_bound,
            rows.points.len(),
            rows.expected_points()
        );
        for n in &rows.notes {
            let _ = writeln!(t, "  note: {n}");
        }
        per_map.push(json!({
            "map": name,
            "sd": to_value(&sd),
            "case_formulas": to_value(&cases),
            "contradiction": to_value(&contradiction),
            "lattice": to_value(&rows),
            "lattice_orders_agree": orders_agree,
        }));
    }
    out.result = json!({
        "status": status(out.code),
        "d": d.to_string(),
        "field": field.name(),
        "maps": per_map,
    });
    Ok(out)
}

pub fn verify_complex_cmd(args: &VerifyComplex, seed: u64) -> Outcome {
    let mut out = Outcome::new(json!({ "seed": seed, "tol": args.tol, "samples": args.samples }));
    let suite = match verify_complex(args.tol, args.samples, seed) {
        Ok(s) => s,
        Err(e) => return out.error(&e),
    };
    for r in [&suite.identity_sd, &suite.conjugation_sd, &suite.ratio_identities, &suite.half_angle] {
        out.require(r);
    }
    let t = &mut out.text;
    t.push_str(&suite.identity_sd.render_text("identity is SD on seeded complex pairs"));
    t.push_str(&suite.conjugation_sd.render_text("conjugation is SD on seeded complex pairs"));
    t.push_str(&suite.ratio_identities.render_text("z/conj(z) and polar identities"));
    t.push_str(&suite.half_angle.render_text("half-angle identities"));
    out.result = json!({ "status": status(out.code), "suite": to_value(&suite) });
    out
}

fn run_ap<F: Field, C: SdCandidate<F> + ?Sized>(
    field: &F,
    f: &C,
    a: &F::Elem,
    d: &F::Elem,
    steps: usize,
    out: &mut Outcome,
) -> Result<Value, Error> {
    let run = ap_propagate(field, f, a, d, steps)?;
    if !run.certified() {
        out.fail_with(EXIT_ASSERTION);
    }
    let t = &mut out.text;
    let _ = writeln!(t, "progression {a} + k*({d}) in {} against {}", field.name(), f.name());
    if run.degenerate {
        let _ = writeln!(t, "  d = 0: nothing to propagate");
    }
    let mut steps_json = Vec::new();
    let mut derived = run.derived.clone();
    derived.sort_by_key(|s| s.k);
    for s in &derived {
        let _ = writeln!(t, "  {s}");
        steps_json.push(json!({
            "k": s.k,
            "term": s.term.to_string(),
            "ratio": s.ratio.to_string(),
            "direction": s.direction,
        }));
    }
    if let (Some(k), Some(r)) = (run.backward_halt, &run.halt_ratio) {
        let _ = writeln!(t, "  backward direction stops at the zero term k = {k} (move ratio {r})");
    }
    for fail in &run.failures {
        let _ = writeln!(t, "  FAILED at k = {}: {}", fail.k, fail.reason);
    }
    Ok(json!({
        "field": field.name(),
        "map": f.name(),
        "degenerate": run.degenerate,
        "terms": steps_json,
        "backward_halt": run.backward_halt,
        "halt_ratio": run.halt_ratio.as_ref().map(ToString::to_string),
        "failures": run.failures,
        "certified": run.certified(),
    }))
}

pub fn ap_demo(args: &ApDemo, seed: u64) -> Outcome {
    let mut out = Outcome::new(json!({
        "seed": seed,
        "a": args.a,
        "d": args.d,
        "steps": args.steps,
        "map": format!("{:?}", args.map).to_lowercase(),
    }));
    let quadratic = args.a.contains("sqrt") || args.d.contains("sqrt");
    let result = if quadratic {
        (|| {
            let carrier = if args.a.contains("sqrt") { &args.a } else { &args.d };
            let dd = QuadraticElement::parse(carrier, None)?.d;
            let field = QuadraticField::new(dd)?;
            let (a, d) = (field.parse(&args.a)?, field.parse(&args.d)?);
            match args.map {
                ApMap::Identity => run_ap(&field, &Identity, &a, &d, args.steps, &mut out),
                ApMap::Conj => run_ap(&field, &Conjugation, &a, &d, args.steps, &mut out),
            }
        })()
    } else {
        (|| {
            if args.map == ApMap::Conj {
                return Err(Error::Precondition("--map conj needs a quadratic literal such as 1+sqrt(2)".into()));
            }
            let (a, d): (Rational, Rational) = (args.a.parse()?, args.d.parse()?);
            run_ap(&RationalField::default(), &Identity, &a, &d, args.steps, &mut out)
        })()
    };
    match result {
        Ok(v) => {
            let mut v = v;
            v["status"] = json!(status(out.code));
            out.result = v;
            out
        }
        Err(e) => out.error(&e),
    }
}

pub fn counterexamples(args: &Counterexamples, seed: u64) -> Outcome {
    let mut out = Outcome::new(json!({ "seed": seed, "k": args.k, "samples": args.samples }));
    if let Some(k) = args.k.iter().find(|&&k| k < 2) {
        return out.error(&Error::Precondition(format!("exponents must be >= 2, got {k}")));
    }
    if args.k.is_empty() {
        return out.error(&Error::Precondition("--k is empty".into()));
    }
    let field = FunctionField::default();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let pairs = sample_pairs(&field, &mut rng, args.samples);
    let elems: Vec<_> = (0..args.samples.min(100)).map(|_| field.sample(&mut rng)).collect();
    let x = sdmap_core::exact::RationalFunction::var();
    let mut per_k = Vec::new();
    for &k in &args.k {
        let f = QpiMap { k };
        let sd = match check_sd(&field, &f, &pairs) {
            Ok(r) => r,
            Err(e) => return out.error(&e),
        };
        let props = match check_properties(&field, &f, &elems) {
            Ok(r) => r,
            Err(e) => return out.error(&e),
        };
        let membership = match qpi_in_image(k, &x) {
            Ok(m) => m,
            Err(e) => return out.error(&e),
        };
        out.require(&sd);
        out.require(&props);
        let witness = match &membership {
            ImageMembership::No { exponent } => {
                format!("x not in image of f_{k}: exponent {exponent} is not a multiple of {k}")
            }
            ImageMembership::Yes => {
                out.fail_with(EXIT_ASSERTION);
                format!("x unexpectedly in image of f_{k}")
            }
        };
        let t = &mut out.text;
        t.push_str(&sd.render_text(&format!("f_{k}: g(x) -> g(x^{k}) is SD on {} seeded pairs", args.samples)));
        t.push_str(&props.render_text(&format!("f_{k}: forced properties")));
        let _ = writeln!(t, "witness: {witness}");
        per_k.push(json!({
            "k": k,
            "sd": to_value(&sd),
            "properties": to_value(&props),
            "image_of_x": to_value(&membership),
            "witness": witness,
        }));
    }
    out.result = json!({ "status": status(out.code), "maps": per_k });
    out
}
