//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines always show.

use std::sync::Arc;
use std::time::{Duration, Instant};

use hermicode::cache::open_space;
use hermicode::clock::SystemClock;
use hermicode::suites::{random_combination, CheckRow, Suite, SuiteConfig, Workbench};
use hermicode_core::budget::Budget;
use hermicode_core::counting;
use hermicode_core::dualcode::mindist::{min_distance, Method, MinDistOptions};
use hermicode_core::dualcode::peel::{peel, PeelOptions};
use hermicode_core::dualcode::{construct_pair_word, is_codeword, IncidenceMatrix, PairWordSpec};
use hermicode_core::gf::FieldCtx;
use hermicode_core::hermitian::HermitianSpace;
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

/// Time limits, in seconds.
const CARDINALITY_LIMIT: f64 = 1.0;
const FORMULAS_LIMIT: f64 = 60.0;
const RECURRENCES_LIMIT: f64 = 5.0;
const CONSTRUCTION_LIMIT: f64 = 10.0;
const EXHAUSTIVE_LIMIT: f64 = 600.0;
const BZ_BUDGET: f64 = 1800.0;

struct Outcome {
    ok: bool,
    detail: String,
}

fn space(q2: u32, n: usize) -> HermitianSpace {
    open_space(Arc::new(FieldCtx::from_order(q2).unwrap()), n, None).unwrap().0
}

fn bench(orders: Vec<u32>, ns: Vec<usize>, trials: Option<usize>) -> Workbench {
    Workbench::new(SuiteConfig { orders, ns, trials, seed: SEED, cache: None })
}

fn summarize(rows: &[CheckRow]) -> (bool, String) {
    let bad: Vec<String> = rows.iter().filter(|r| !r.ok).map(|r| format!("{} {} [{}]: {} vs {}", r.suite, r.check, r.params, r.expected, r.got)).collect();
    if bad.is_empty() {
        (!rows.is_empty(), format!("{} checks, 0 failed", rows.len()))
    } else {
        (false, format!("{} checks, {} failed: {}", rows.len(), bad.len(), bad.join("; ")))
    }
}

fn within(ok: bool, detail: String, elapsed: Duration, limit: f64) -> Outcome {
    let secs = elapsed.as_secs_f64();
    if secs > limit {
        Outcome { ok: false, detail: format!("{detail}; took {secs:.2}s, limit {limit}s") }
    } else {
        Outcome { ok, detail }
    }
}

fn cardinality() -> Outcome {
    let mut worst = Duration::ZERO;
    let mut notes = Vec::new();
    let mut ok = true;
    for (q2, n, pts, gens) in [(4u32, 1usize, 45usize, 27usize), (4, 2, 693, 891), (9, 1, 280, 112)] {
        let t = Instant::now();
        let h = space(q2, n);
        worst = worst.max(t.elapsed());
        let q = h.q();
        let closed = counting::mu(2 * n as i64 + 1, q).unwrap() == BigUint::from(pts)
            && counting::generator_count(n as i64, q).unwrap() == BigUint::from(gens);
        let good = h.point_count() == pts && h.generators().len() == gens && closed;
        ok &= good;
        notes.push(format!("H({},{q2}) {}/{}", 2 * n + 1, h.point_count(), h.generators().len()));
    }
    within(ok, format!("{}; slowest {:.3}s", notes.join(", "), worst.as_secs_f64()), worst, CARDINALITY_LIMIT)
}

fn formulas() -> Outcome {
    let t = Instant::now();
    let rows = bench(vec![4], vec![1, 2], None).run(Suite::Formulas).unwrap();
    let (mut ok, mut detail) = summarize(&rows);
    let pinned = [
        (counting::c_nj(1, 1, 2).unwrap(), 18u32),
        (counting::N_ni(1, -1, 2).unwrap(), 1),
        (counting::N_ni(2, -1, 2).unwrap(), 3),
        (counting::N_ni(2, 0, 2).unwrap(), 2),
    ];
    ok &= pinned.iter().all(|(v, want)| *v == BigUint::from(*want));
    let exhaustive = rows.iter().filter(|r| r.check == "n_P").all(|r| {
        let pts = r.params.split("points=").nth(1).unwrap_or("");
        pts.split('/').next() == pts.split('/').nth(1)
    });
    ok &= exhaustive;
    detail.push_str(&format!("; c_11(2)=18 N(1,-1)=1 N(2,-1)=3 N(2,0)=2; n_P exhaustive over R: {exhaustive}"));
    within(ok, detail, t.elapsed(), FORMULAS_LIMIT)
}

fn recurrences() -> Outcome {
    let t = Instant::now();
    let rows = bench(vec![], vec![], None).run(Suite::Recurrences).unwrap();
    let (ok, detail) = summarize(&rows);
    within(ok, detail, t.elapsed(), RECURRENCES_LIMIT)
}

fn construction() -> Outcome {
    let t = Instant::now();
    let mut ok = true;
    let mut seen = Vec::new();
    for (n, want) in [(1usize, vec![6usize, 0, 0]), (2, vec![18, 24, 0, 0])] {
        let h = space(4, n);
        let a = IncidenceMatrix::build(&h).unwrap();
        for (k, &w) in want.iter().enumerate() {
            let i = k as isize - 1;
            let spec = PairWordSpec::new(&h, h.make_nspace(i).unwrap(), 1).unwrap();
            let c = construct_pair_word(&h, &spec).unwrap();
            ok &= is_codeword(&c, &a).unwrap() && c.weight() == w;
            seen.push(format!("n={n} i={i}: {}", c.weight()));
        }
    }
    let rows = bench(vec![4], vec![1, 2], Some(100)).run(Suite::Codewords).unwrap();
    let (suite_ok, suite_detail) = summarize(&rows);
    within(ok && suite_ok, format!("{}; suite {suite_detail}", seen.join(", ")), t.elapsed(), CONSTRUCTION_LIMIT)
}

fn min_distance_checks() -> Vec<(String, Outcome)> {
    let mut out = Vec::new();
    let h34 = space(4, 1);
    let h54 = space(4, 2);
    let a34 = IncidenceMatrix::build(&h34).unwrap();
    let a54 = IncidenceMatrix::build(&h54).unwrap();

    let w34 = construct_pair_word(&h34, &PairWordSpec::new(&h34, h34.make_nspace(-1).unwrap(), 1).unwrap()).unwrap();
    let w54 = construct_pair_word(&h54, &PairWordSpec::new(&h54, h54.make_nspace(-1).unwrap(), 1).unwrap()).unwrap();
    let ok = is_codeword(&w34, &a34).unwrap() && w34.weight() == 6 && is_codeword(&w54, &a54).unwrap() && w54.weight() == 18;
    out.push((
        "5a upper bounds by certificate".to_string(),
        Outcome { ok, detail: format!("H(3,4) word of weight {}, H(5,4) word of weight {}", w34.weight(), w54.weight()) },
    ));

    let t = Instant::now();
    let opts = MinDistOptions { method: Some(Method::ExhaustiveSupport), ..Default::default() };
    let r = min_distance(&a34, &opts, &Budget::UNLIMITED).unwrap();
    let cert_ok = r.certificate.as_ref().is_some_and(|c| is_codeword(c, &a34).unwrap() && Some(c.weight()) == r.best);
    let ok = r.certified && r.best == Some(6) && cert_ok;
    out.push((
        "5b exhaustive d on H(3,4)".to_string(),
        within(ok, format!("d={:?} certified={} pinned 6", r.best, r.certified), t.elapsed(), EXHAUSTIVE_LIMIT),
    ));

    let clock = SystemClock::start();
    let opts = MinDistOptions { method: Some(Method::BrouwerZimmermann), seeds: vec![w54], ..Default::default() };
    let r = min_distance(&a54, &opts, &Budget::timed(&clock, BZ_BUDGET)).unwrap();
    let cert_ok = r.certificate.as_ref().is_some_and(|c| is_codeword(c, &a54).unwrap() && Some(c.weight()) == r.best);
    let ok = r.best.is_some_and(|d| d <= 18) && cert_ok;
    out.push((
        "5c bz on H(5,4)".to_string(),
        Outcome {
            ok,
            detail: format!(
                "best-known d={:?}, certified={}, lower bound {}, stop {:?} after {:.2}s of {BZ_BUDGET}s",
                r.best, r.certified, r.lower_bound, r.stop, r.seconds
            ),
        },
    ));
    out
}

fn peel_combinations() -> Outcome {
    let h = space(4, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let t = Instant::now();
    let (mut failures, mut steps) = (0, 0);
    for trial in 0..100usize {
        let parts = 1 + trial % 3;
        let (c, _) = random_combination(&h, parts, &mut rng).unwrap();
        let out = peel(&h, &c, &PeelOptions::default(), &Budget::UNLIMITED).unwrap();
        let mut last = c.weight();
        let mut decreasing = true;
        for s in &out.steps {
            decreasing &= s.weight_before == last && s.weight_after < s.weight_before;
            last = s.weight_after;
        }
        steps += out.steps.len();
        failures += !(out.succeeded() && out.residual.is_zero() && decreasing) as usize;
    }
    Outcome {
        ok: failures == 0,
        detail: format!("100 combinations, {failures} failures, {steps} steps, {:.2}s", t.elapsed().as_secs_f64()),
    }
}

fn properties() -> Outcome {
    let mut rows = Vec::new();
    let mut small = bench(vec![4], vec![1], None);
    let mut large = bench(vec![4], vec![2], None);
    for s in [Suite::Meets, Suite::Vertex, Suite::Collinear, Suite::Codewords, Suite::Bounds] {
        rows.extend(small.run(s).unwrap());
        rows.extend(large.run(s).unwrap());
    }
    let pperp_floor = rows
        .iter()
        .filter(|r| r.check == "pperp" && !r.params.contains("random"))
        .all(|r| r.expected == if r.params.starts_with("n=1") { ">=4" } else { ">=10" });
    let (ok, detail) = summarize(&rows);
    Outcome { ok: ok && pperp_floor, detail }
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<(String, Outcome)> = Vec::new();
    let timed = |name: &str, f: fn() -> Outcome, results: &mut Vec<(String, Outcome)>| {
        let t = Instant::now();
        let o = f();
        let line = format!("{name} ({:.2}s)", t.elapsed().as_secs_f64());
        report(&line, &o);
        results.push((line, o));
    };
    timed("1 cardinality", cardinality, &mut results);
    timed("2 formulas vs oracle", formulas, &mut results);
    timed("3 recurrences", recurrences, &mut results);
    timed("4 code word construction", construction, &mut results);
    for (name, o) in min_distance_checks() {
        report(&name, &o);
        results.push((name, o));
    }
    timed("6 peel on combinations", peel_combinations, &mut results);
    timed("7 property suites", properties, &mut results);
    let failed = results.iter().filter(|(_, o)| !o.ok).count();
    println!("acceptance: {} criteria, {failed} failed, {:.2}s", results.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn report(name: &str, o: &Outcome) {
    println!("{} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
}
