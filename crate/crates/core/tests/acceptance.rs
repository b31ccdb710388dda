//! Acceptance suite: one line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the per-criterion lines
//! always reach the log. Criteria listed in `KNOWN_RED` are expected to fail
//! with exactly the recorded cause; the process exits nonzero if any other
//! criterion fails or a known-red one changes its failure.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stern_core::conjecture::{divisibility_by_t_plus_1, h_no_real_roots};
use stern_core::families::{
    count_p_below, errata, p_index, run_identity, verify_lemma1, verify_p_injectivity, Identity,
    IdentityReport,
};
use stern_core::golden;
use stern_core::grid::Grid;
use stern_core::poly::count_real_roots;
use stern_core::search::{
    check_lower_bound, enumerate_solutions, is_solution, mine_affine_families, spaced_binary,
    write_solutions_csv, AffineTriple, CongruenceSpec, LowerBound, SearchConfig, SearchReport,
    Verdict,
};
use stern_core::stern::{gf_prefix, hyperbinary_poly, stern_number, stern_poly, stern_poly_u64};
use stern_core::SternIndex;

/// Criteria that cannot pass, with the failure detail they must show.
const KNOWN_RED: &[(u32, &str)] = &[(3, "n=205 fails (4,5)")];

/// Seed for the randomized identity cases.
const SEED: u64 = 0x5743_524e;
/// Randomized Lemma 1 cases.
const LEMMA1_CASES: usize = 1000;
/// All arithmetic is exact; the only floating-point comparison is the
/// counting bounds, where a count must reach the bound minus this slack.
const BOUND_TOLERANCE: f64 = 1e-9;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn spec(r: u32, m: u32) -> CongruenceSpec {
    CongruenceSpec::new(r, m).expect("valid pair")
}

fn config(workers: usize) -> SearchConfig {
    SearchConfig::with_workers(workers)
}

fn parallel() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn table1_reports(workers: usize, kmax: u32) -> (SearchReport, SearchReport) {
    let x = 1u64 << kmax;
    (
        enumerate_solutions(x, &spec(0, 2), &[], &config(workers)).expect("sweep"),
        enumerate_solutions(x, &spec(1, 2), &[], &config(workers)).expect("sweep"),
    )
}

fn count_upto(r: &SearchReport, x: u64) -> u64 {
    r.solutions.partition_point(|&n| n <= x) as u64
}

fn criterion1() -> Outcome {
    let kmax = 26;
    let (r02, r12) = table1_reports(1, kmax);
    let mut bad = Vec::new();
    for row in golden::table1().into_iter().filter(|r| r.k <= kmax) {
        let x = 1u64 << row.k;
        let got = (count_upto(&r02, x), count_upto(&r12, x));
        if got != (row.pi02, row.pi12) {
            bad.push(format!("k={} got {got:?} want ({}, {})", row.k, row.pi02, row.pi12));
        }
    }
    let mut d = format!("k=15..{kmax} single-threaded, n=1 not counted");
    if !bad.is_empty() {
        d = bad.join("; ");
    }
    outcome(bad.is_empty(), d)
}

fn table_reports(workers: usize) -> Vec<(golden::SolutionTable, SearchReport)> {
    (2..=4)
        .map(|t| {
            let table = golden::solution_table(t).expect("table");
            let rep = enumerate_solutions(1 << 20, &table.spec, &table.exclusions, &config(workers))
                .expect("sweep");
            (table, rep)
        })
        .collect()
}

fn criterion2() -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    for (table, rep) in table_reports(1) {
        let listed: Vec<(u64, String)> =
            table.up_to(1 << 20).into_iter().map(|e| (e.n, e.binary.clone())).collect();
        let found: Vec<(u64, String)> = rep.solutions.iter().map(|&n| (n, spaced_binary(n))).collect();
        pass &= listed == found;
        lines.push(format!("{} {}/{}", table.spec, found.len(), listed.len()));
    }
    outcome(pass, format!("entries <= 2^20 and binaries: {}", lines.join(", ")))
}

fn criterion3() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for row in golden::table5() {
        let b = stern_poly_u64(row.n);
        if b.pretty() != row.poly {
            failures.push(format!("n={} polynomial {} != {}", row.n, b.pretty(), row.poly));
        }
        for m in row.moduli() {
            checked += 1;
            if !is_solution(&SternIndex::new(row.n), &spec(row.r, m)).expect("odd index") {
                failures.push(format!("n={} fails ({},{m})", row.n, row.r));
            }
        }
    }
    if failures.is_empty() {
        outcome(true, format!("7 polynomials, {checked} congruences"))
    } else {
        outcome(false, format!("{}; see erratum sporadic-205", failures.join("; ")))
    }
}

fn criterion4() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=1u64 << 12 {
        if stern_poly_u64(n) != hyperbinary_poly(&SternIndex::new(n - 1)) {
            bad.push(format!("hyperbinary n={n}"));
            break;
        }
    }
    let gf = gf_prefix(1024);
    if let Some(n) = (0..=1024usize).find(|&n| gf.get(n) != Some(&stern_poly_u64(n as u64))) {
        bad.push(format!("generating function n={n}"));
    }
    let prefix = golden::stern_prefix();
    if let Some(n) = (0..prefix.len()).find(|&n| stern_number(&SternIndex::new(n as u64)) != prefix[n].into()) {
        bad.push(format!("s_{n}"));
    }
    let (one, two) = (BigInt::from(1), BigInt::from(2));
    for n in 0..=100_000u64 {
        let b = stern_poly_u64(n);
        if b.eval(&two) != BigInt::from(n) || b.eval(&one) != stern_number(&SternIndex::new(n)).into() {
            bad.push(format!("values at 1, 2 for n={n}"));
            break;
        }
    }
    let pass = bad.is_empty();
    let d = if pass {
        "hyperbinary n <= 2^12, generating function n <= 1024, 32 Stern numbers, B_n(1), B_n(2) n <= 10^5".into()
    } else {
        bad.join("; ")
    };
    outcome(pass, d)
}

fn lemma1_random() -> IdentityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let cells = (0..LEMMA1_CASES)
        .map(|_| {
            let a = rng.gen_range(0..=20u32);
            let m = rng.gen_range(0..1u64 << 20);
            let r = rng.gen_range(0..=1u64 << a);
            verify_lemma1(a, m, r).expect("in domain")
        })
        .collect();
    IdentityReport::merge("lemma1", format!("{LEMMA1_CASES} random cases"), cells)
}

fn criterion5() -> Outcome {
    let mut reports = vec![lemma1_random()];
    let suites = [
        Identity::Lemma2,
        Identity::Dkt,
        Identity::VExplicit,
        Identity::VRecurrence,
        Identity::CMachinery,
        Identity::PTheorem,
        Identity::STheorem,
        Identity::Alpha,
        Identity::HMachinery,
        Identity::Theorem3,
    ];
    for id in suites {
        reports.push(run_identity(id, &Grid::new()).expect("default ranges are in domain"));
    }
    reports.push(run_identity(Identity::Theorem3, &"n=3".parse().expect("grid")).expect("in domain"));
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{} ({:?})", r.identity, r.counterexample))
        .collect();
    let checks: u64 = reports.iter().map(|r| r.checked).sum();
    if failed.is_empty() {
        outcome(true, format!("{} suites, {checks} checks", reports.len()))
    } else {
        outcome(false, failed.join("; "))
    }
}

fn criterion6() -> Outcome {
    let list = errata();
    let required = ["recurrence-variant", "w-initials", "v3-summation-index"];
    let missing: Vec<&str> = required
        .iter()
        .copied()
        .filter(|id| !list.iter().any(|e| e.id == *id && e.confirmed))
        .collect();
    let flagged: Vec<&str> = list.iter().filter(|e| e.confirmed).map(|e| e.id).collect();
    let pass = missing.is_empty() && flagged.len() == list.len();
    let d = if pass {
        format!("{} discrepancies flagged: {}", flagged.len(), flagged.join(", "))
    } else {
        format!("not confirmed: {:?}", list.iter().filter(|e| !e.confirmed).map(|e| e.id).collect::<Vec<_>>())
    };
    outcome(pass, d)
}

fn criterion7() -> Outcome {
    let lo = 1u64 << 15;
    let hi = 1u64 << 20;
    let mut xs: Vec<u64> = (15..=20).map(|k| 1u64 << k).collect();
    xs.extend((1..64).map(|i| lo + (hi - lo) * i / 64));
    xs.sort_unstable();
    let mut bad = Vec::new();
    for b in LowerBound::ALL {
        let checks = check_lower_bound(b, &xs, &config(parallel())).expect("sweep");
        for c in checks.iter().filter(|c| (c.count as f64) + BOUND_TOLERANCE < c.value) {
            bad.push(format!("{:?} at x={}: {} < {:.3}", b, c.x, c.count, c.value));
        }
    }
    let inj = verify_p_injectivity(20, 20).expect("in domain");
    if !inj.pass {
        bad.push(format!("p-injectivity: {:?}", inj.counterexample));
    }
    let below = count_p_below(26);
    if below != 145 {
        bad.push(format!("{below} values of p below 2^26"));
    }
    let pass = bad.is_empty();
    let d = if pass {
        format!("3 bounds at {} points, injective for K=N=20, {below} values below 2^26", xs.len())
    } else {
        bad.join("; ")
    };
    outcome(pass, d)
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn criterion8() -> Outcome {
    let s = spec(0, 2);
    let sols = enumerate_solutions(40_000, &s, &[], &config(parallel())).expect("sweep").solutions;
    let mined = mine_affine_families(&sols, 6, &s).expect("enough solutions");
    let good = AffineTriple { p: ratio(16, 1), q: ratio(-12, 1), u: ratio(1, 1) };
    let bad = AffineTriple { p: ratio(88, 3), q: ratio(-64, 1), u: ratio(119, 3) };
    let find = |t: &AffineTriple| mined.iter().find(|f| &f.triple == t).map(|f| f.verdict.clone());
    let good_ok = matches!(find(&good), Some(Verdict::Validated { .. }));
    let bad_ok = matches!(find(&bad), Some(Verdict::Rejected { index: 4, ref value, .. }) if value == "6525");
    let validated = mined.iter().filter(|f| matches!(f.verdict, Verdict::Validated { .. })).count();
    outcome(
        good_ok && bad_ok,
        format!(
            "{} solutions, {} triples, {validated} validated; (16,-12,1) validated: {good_ok}; \
             (88/3,-64,119/3) rejected at U_4 = 6525: {bad_ok}",
            sols.len(),
            mined.len()
        ),
    )
}

fn criterion9() -> Outcome {
    let mut bad = Vec::new();
    let roots = |n: &SternIndex| count_real_roots(&stern_poly(n)).expect("nonzero");
    if roots(&SternIndex::new(5)) != 1 {
        bad.push("B_5".to_string());
    }
    for i in 2..=5 {
        let r = roots(&p_index(2 * i, 2));
        if r != 2 {
            bad.push(format!("p({},2) has {r} roots", 2 * i));
        }
    }
    let m1 = divisibility_by_t_plus_1(&"n=1..10000".parse().expect("grid"));
    if !m1.consistent {
        bad.push(format!("B_n(-1): {} exceptions", m1.cells.len()));
    }
    let h = h_no_real_roots(&"n=0..6".parse().expect("grid"));
    if !h.consistent {
        bad.push(format!("h: {:?}", h.inconsistent_cells().map(|c| c.cell.clone()).collect::<Vec<_>>()));
    }
    let pass = bad.is_empty();
    let d = if pass {
        "B_5 one root, p(2i,2) two roots i=2..5, B_n(-1)=0 iff 3|n to 10^4, B_h(n) rootless n<=6".into()
    } else {
        bad.join("; ")
    };
    outcome(pass, d)
}

fn fingerprint(workers: usize) -> Vec<u8> {
    let mut out = Vec::new();
    let (a, b) = table1_reports(workers, 20);
    let tables = table_reports(workers);
    for rep in [&a, &b].into_iter().chain(tables.iter().map(|(_, r)| r)) {
        write_solutions_csv(rep, &mut out).expect("in-memory write");
        out.extend(serde_json::to_vec(rep).expect("serializable"));
    }
    out
}

fn criterion10() -> Outcome {
    let base = fingerprint(1);
    let same: Vec<bool> = [2, 8].iter().map(|&w| fingerprint(w) == base).collect();
    outcome(
        same.iter().all(|&s| s),
        format!("criteria 1-2 output ({} bytes) identical for 1/2/8 workers: {same:?}", base.len()),
    )
}

fn main() -> ExitCode {
    // `cargo test` passes harness flags such as `--quiet`; a name filter
    // that does not match this target skips it.
    let filter = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    if filter.as_deref().is_some_and(|f| !"acceptance".contains(f)) {
        return ExitCode::SUCCESS;
    }
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion1),
        (2, criterion2),
        (3, criterion3),
        (4, criterion4),
        (5, criterion5),
        (6, criterion6),
        (7, criterion7),
        (8, criterion8),
        (9, criterion9),
        (10, criterion10),
    ];
    let mut unexpected = 0;
    for (id, run) in criteria {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN_RED.iter().find(|(k, _)| *k == id);
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {id:>2}: {status} ({secs:.1}s) {}", o.detail);
        let expected = match known {
            None => o.pass,
            Some((_, cause)) => !o.pass && o.detail.contains(cause),
        };
        if !expected {
            unexpected += 1;
            println!("criterion {id:>2}: unexpected outcome");
        }
    }
    if unexpected == 0 {
        println!("acceptance: all criteria as recorded ({} known red)", KNOWN_RED.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected outcome(s)");
        ExitCode::FAILURE
    }
}
