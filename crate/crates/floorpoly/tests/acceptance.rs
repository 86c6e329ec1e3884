//! One PASS/FAIL line per acceptance criterion.
//!
//! Exits non-zero when the set of failing criteria differs from KNOWN_FAILURES,
//! or on any failure when ACCEPTANCE_STRICT is set.

use std::time::{Duration, Instant};

use floorpoly::cache::Cache;
use floorpoly::compute::{assemble, Context};
use floorpoly::paper;
use floorpoly::verify::{self, Status};
use floorpoly_core::assembly::{evaluate_relative_severi, leading_terms, node_polynomial, r_poly};
use floorpoly_core::decompose::{decompose, recompose, tail_factor};
use floorpoly_core::ext::enumerate_extended_templates;
use floorpoly_core::floor::{
    cogenus_zero_degree, count_markings_for_pair, enumerate_compatible_pairs, enumerate_floor_diagrams,
    severi_degree_enum, CompatiblePair, FloorDiagram,
};
use floorpoly_core::poly::{discrete_sum, rat, Monomial, MultiPoly, Var};
use floorpoly_core::seq::{tangency_pairs, TangencySequence};
use floorpoly_core::template::enumerate_templates;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLE_TIME: Duration = Duration::from_secs(1);
const APPENDIX_SMALL_TIME: Duration = Duration::from_secs(10);
const APPENDIX_N3_TIME: Duration = Duration::from_secs(180);
const GRID_TIME: Duration = Duration::from_secs(300);
const R_TIME: Duration = Duration::from_secs(300);
const TELESCOPING_CASES: usize = 500;
const SEED: u64 = 20241015;

/// Criteria that fail for documented reasons (see README).
const KNOWN_FAILURES: &[u32] = &[1, 3, 8];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, ok: String) -> Outcome {
    if failures.is_empty() {
        Outcome { pass: true, detail: ok }
    } else {
        Outcome { pass: false, detail: failures.join("; ") }
    }
}

fn ctx() -> Context {
    Context::new(Cache::disabled())
}

fn seq(v: &[u64]) -> TangencySequence {
    TangencySequence::new(v.to_vec())
}

fn timed(limit: Duration, start: Instant, what: &str, failures: &mut Vec<String>) -> Duration {
    let t = start.elapsed();
    if t > limit {
        failures.push(format!("{what} took {t:?}, limit {limit:?}"));
    }
    t
}

fn table_checks(checks: Vec<verify::Check>, failures: &mut Vec<String>, flags: &mut Vec<String>) {
    for c in checks {
        match c.status {
            Status::Pass => {}
            Status::Flagged(why) => flags.push(format!("{}: {why}", c.name)),
            Status::Fail(why) => failures.push(format!("{}: {why}", c.name)),
        }
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let counts: Vec<usize> = (1..=2).map(|d| enumerate_templates(d).len()).collect();
    let table: Vec<usize> = (1..=2).map(|d| paper::TEMPLATE_TABLE.iter().filter(|r| r.delta == d).count()).collect();
    if counts != table {
        failures.push(format!("counts {counts:?}, table rows {table:?}"));
    }
    let mut flags = Vec::new();
    table_checks(verify::template_table(&ctx(), 2).unwrap(), &mut failures, &mut flags);
    // every printed cell must match; flagged cells are mismatches too
    failures.extend(flags.into_iter().map(|f| format!("printed cell differs: {f}")));
    let t = timed(TABLE_TIME, start, "generation", &mut failures);
    outcome(
        failures,
        format!("{counts:?} templates at delta 1,2; all rows match ({t:?})"),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let counts: Vec<usize> = (0..=2).map(|d| enumerate_extended_templates(d).len()).collect();
    let table: Vec<usize> = (0..=2).map(|d| paper::EXT_TABLE.iter().filter(|r| r.delta == d).count()).collect();
    if counts != table {
        failures.push(format!("counts {counts:?}, table rows {table:?}"));
    }
    let mut flags = Vec::new();
    let checks = verify::ext_table(&ctx(), 2).unwrap();
    for c in &checks {
        if let Status::Fail(why) = &c.status {
            failures.push(format!("{}: {why}", c.name));
        }
        if let Status::Flagged(why) = &c.status {
            flags.push(why.clone());
        }
    }
    // d_min against the formula: the only permitted departures are the two
    // cogenus-1 rows printing 1
    for (idx, row) in paper::EXT_TABLE.iter().enumerate() {
        let d_min = row.ext().d_min();
        if d_min != row.d_min && !matches!(idx, 1 | 2) {
            failures.push(format!("row {} d_min {d_min} vs printed {}", idx + 1, row.d_min));
        }
    }
    let t = timed(TABLE_TIME, start, "generation", &mut failures);
    outcome(
        failures,
        format!(
            "{counts:?} extended templates at delta 0,1,2 (as in the table); q matches all {} rows; flagged: {} ({t:?})",
            paper::EXT_TABLE.len(),
            flags.join(", ")
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut sizes = Vec::new();
    for delta in 0..=3 {
        let start = Instant::now();
        let n = node_polynomial(delta).unwrap();
        let limit = if delta <= 2 { APPENDIX_SMALL_TIME } else { APPENDIX_N3_TIME };
        timed(limit, start, &format!("N_{delta}"), &mut failures);
        sizes.push(n.poly.len());
        let check = verify::appendix(&n, false).unwrap();
        if let Status::Fail(why) = check.status {
            failures.push(format!("N_{delta} differs from the appendix: {why}"));
        }
    }
    outcome(failures, format!("N_0..N_3 equal the appendix, term counts {sizes:?}"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases = 0;
    for delta in 0..=2 {
        let n = node_polynomial(delta).unwrap();
        for d in 1..=6 {
            for (a, b) in tangency_pairs(d) {
                if b.norm() < delta as u64 {
                    continue;
                }
                cases += 1;
                let e = severi_degree_enum(delta, &a, &b).unwrap();
                let p = n.evaluate(&a, &b);
                if p.as_ref() != Ok(&e) {
                    failures.push(format!("delta={delta} alpha={a} beta={b}: {e} vs {p:?}"));
                }
            }
        }
    }
    let t = timed(GRID_TIME, start, "grid", &mut failures);
    outcome(failures, format!("{cases} cases agree exactly ({t:?})"))
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let expect = [0u32, 3, 12, 27, 48, 75];
    for d in 1..=6u64 {
        let beta = TangencySequence::unit(1, d);
        let want = BigUint::from(expect[d as usize - 1]);
        let e = severi_degree_enum(1, &seq(&[]), &beta).unwrap();
        let p = evaluate_relative_severi(1, &seq(&[]), &beta).unwrap();
        if e != want || p != want {
            failures.push(format!("N^({d},1): enumeration {e}, polynomial {p}, expected {want}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut shapes: Vec<TangencySequence> = Vec::new();
    while shapes.len() < 20 {
        let len = rng.gen_range(1..=4);
        let b = TangencySequence::new((0..len).map(|_| rng.gen_range(0..3)).collect());
        if b.weighted() > 0 && b.weighted() <= 7 && !shapes.contains(&b) {
            shapes.push(b);
        }
    }
    for b in &shapes {
        let want = cogenus_zero_degree(b);
        let e = severi_degree_enum(0, &seq(&[]), b).unwrap();
        let p = evaluate_relative_severi(0, &seq(&[]), b).unwrap();
        if e != want || p != want {
            failures.push(format!("delta=0 beta={b}: enumeration {e}, polynomial {p}, expected {want}"));
        }
    }
    outcome(failures, "3(d-1)^2 for d=1..6 and |beta|!/beta! prod j^beta_j on 20 shapes, both paths".into())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    for delta in 1..=4usize {
        let r = r_poly(delta).unwrap();
        let printed = paper::r_expansion(delta);
        for (k, p) in printed.iter().enumerate().take(4) {
            if k > 2 * delta {
                // d^{-1} at delta = 1: the display's coefficient vanishes there
                assert!(p == &rat(0));
                continue;
            }
            let e = (2 * delta - k) as u32;
            let c = r.coeff(&Monomial::var(Var::D, e));
            if &c != p {
                failures.push(format!("delta={delta} d^{e}: displayed {p}, computed {c}"));
            }
        }
    }
    let r1 = r_poly(1).unwrap();
    if r1 != floorpoly_core::poly::parse_poly("3 D^2 - 8 D + 4").unwrap() {
        failures.push(format!("R_1 = {r1}"));
    }
    let t = timed(R_TIME, start, "R_1..R_4", &mut failures);
    outcome(failures, format!("d^(2δ)..d^(2δ-3) match for δ=1..4, R_1 = 3d^2 - 8d + 4 ({t:?})"))
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    for delta in 1..=4 {
        let lead = leading_terms(delta, 2).unwrap();
        let display = paper::theorem_leading(delta).unwrap();
        for (m, p, c) in verify::term_diff(&display, &lead) {
            failures.push(format!("delta={delta} {m}: displayed {p}, computed {c}"));
        }
        let full = node_polynomial(delta).unwrap().poly;
        if full.truncate_below((3 * delta - 2) as u32) != lead {
            failures.push(format!("delta={delta}: leading terms differ from the truncated N_delta"));
        }
    }
    outcome(failures, "display instantiated at δ=1..4 equals leading_terms and the truncation".into())
}

fn random_poly(rng: &mut ChaCha8Rng) -> MultiPoly {
    let k = MultiPoly::var(Var::K);
    let mut p = MultiPoly::zero();
    for e in 0..rng.gen_range(1..=7u32) {
        p += k.pow(e).scale(&rat(rng.gen_range(-20..=20)));
    }
    p
}

fn criterion_8() -> Outcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..TELESCOPING_CASES {
        let p = random_poly(&mut rng);
        let c = rng.gen_range(-6..=6i64);
        let f = discrete_sum(&p, c);
        let back = &f - &f.substitute(Var::X, &MultiPoly::linear(Var::X, -1));
        if back != p.rename(Var::K, Var::X) || !f.substitute_value(Var::X, &rat(c - 1)).is_zero() {
            failures.push(format!("telescoping fails for {p} from {c}"));
        }
    }
    notes.push(format!("telescoping {TELESCOPING_CASES}"));

    let mut instances = 0;
    for d in 1..=5usize {
        for delta in 0..=2 {
            let diagrams = enumerate_floor_diagrams(d, delta);
            for (a, b) in tangency_pairs(d as u64) {
                for fd in &diagrams {
                    for pair in enumerate_compatible_pairs(fd, &a, &b).unwrap() {
                        instances += 1;
                        let dec = match decompose(fd, &pair) {
                            Ok(x) => x,
                            Err(e) => {
                                failures.push(format!("decompose {fd:?}: {e}"));
                                continue;
                            }
                        };
                        if dec.cogenus() != delta {
                            failures.push(format!("cogenus not additive for {fd:?}"));
                        }
                        if recompose(&dec, &a, &b).ok() != Some((fd.clone(), pair.clone())) {
                            failures.push(format!("round trip fails for {fd:?} {pair:?}"));
                        }
                        if tail_factor(&dec, &a, &b).ok() != count_markings_for_pair(fd, &pair).ok() {
                            failures.push(format!("tail factor differs for {fd:?} {pair:?}"));
                        }
                    }
                }
            }
        }
    }
    notes.push(format!("round trip, additivity and tail factor on {instances} marked pairs"));

    let mut vanish = 0;
    for delta in 0..=3 {
        for ext in enumerate_extended_templates(delta) {
            let inv = ext.invariants();
            let q = ext.q_poly();
            for c in inv.d_min - inv.s..inv.d_min {
                vanish += 1;
                if !q.substitute_value(Var::D, &rat(c as i64)).is_zero() {
                    failures.push(format!("q does not vanish at D={c} for {ext:?}"));
                }
            }
        }
    }
    notes.push(format!("vanishing at {vanish} points"));

    let mut printed_kmin = Vec::new();
    for delta in 0..=4 {
        for ext in enumerate_extended_templates(delta) {
            let inv = ext.invariants();
            if inv.d_min - inv.s > delta + 1 {
                failures.push(format!("d_min - s > delta + 1 for {ext:?}"));
            }
        }
        if delta == 0 {
            continue;
        }
        for t in enumerate_templates(delta) {
            let inv = t.invariants();
            if inv.k_min + inv.l > delta + 1 + inv.s {
                printed_kmin.push(format!("{:?} (k_min={}, l={}, s={})", t.edges(), inv.k_min, inv.l, inv.s));
            }
            if inv.k_min + inv.l > delta + 2 + inv.s {
                failures.push(format!("k_min + l - s - 1 > delta + 1 for {:?}", t.edges()));
            }
        }
    }
    if !printed_kmin.is_empty() {
        failures.push(format!(
            "k_min + l - s <= delta + 1 fails for {} templates, e.g. {}; the form with -1 holds for all",
            printed_kmin.len(),
            printed_kmin[..printed_kmin.len().min(3)].join(", ")
        ));
    }
    notes.push("d_min - s <= delta + 1 up to delta 4".into());

    for delta in 0..=3 {
        let n = node_polynomial(delta).unwrap();
        if n.poly.max_index() as usize > delta {
            failures.push(format!("N_{delta} mentions an index above {delta}"));
        }
    }
    notes.push("no index above delta in N_0..N_3".into());

    let fd = FloorDiagram::new(4, vec![(1, 2, 1), (2, 3, 2), (3, 4, 1), (3, 4, 1)]).unwrap();
    let pair = CompatiblePair {
        alpha: vec![seq(&[]), seq(&[]), seq(&[]), seq(&[1])],
        beta: vec![seq(&[]), seq(&[]), seq(&[1]), seq(&[0, 1])],
    };
    let five = count_markings_for_pair(&fd, &pair).unwrap();
    if five != BigUint::from(5u32) {
        failures.push(format!("worked marking example gives {five}"));
    }
    notes.push("worked marking example gives 5".into());
    outcome(failures, notes.join(", "))
}

fn criterion_9() -> Outcome {
    let mut parts = Vec::new();
    let mut agree = true;
    for &(delta, printed) in paper::PRINTED_TERM_COUNTS {
        let start = Instant::now();
        let n = assemble(delta).unwrap();
        agree &= n.poly.len() == printed;
        parts.push(format!("N_{delta}: {} terms (printed {printed}) in {:?}", n.poly.len(), start.elapsed()));
    }
    Outcome {
        pass: agree,
        detail: parts.join(", "),
    }
}

type Criterion = (u32, &'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "template table", criterion_1),
        (2, "extended template table", criterion_2),
        (3, "appendix polynomials", criterion_3),
        (4, "enumeration vs polynomial", criterion_4),
        (5, "classical specializations", criterion_5),
        (6, "R expansion", criterion_6),
        (7, "leading terms", criterion_7),
        (8, "property suites", criterion_8),
        (9, "term counts (informational)", criterion_9),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let strict = std::env::var_os("ACCEPTANCE_STRICT").is_some();
    let mut failed = Vec::new();
    let mut ran = Vec::new();
    for (id, name, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str()) || f == &id.to_string()) {
            continue;
        }
        ran.push(id);
        let o = run();
        let tag = match (o.pass, id) {
            (true, _) => "PASS",
            (false, 9) => "INFO",
            (false, _) => "FAIL",
        };
        println!("{tag} criterion {id} ({name}): {}", o.detail);
        if !o.pass && id != 9 {
            failed.push(id);
        }
    }
    let expected: Vec<u32> = KNOWN_FAILURES.iter().copied().filter(|i| ran.contains(i)).collect();
    println!("{} criteria run, failing: {failed:?}, documented: {expected:?}", ran.len());
    if failed != expected || (strict && !failed.is_empty()) {
        std::process::exit(1);
    }
}
