//! One line per acceptance criterion. Exits nonzero only when a result
//! differs from what is expected, including the one criterion whose
//! failure is expected and explained below.

#[path = "../../core/tests/support/logic.rs"]
mod logic;

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use defcyc_cli::{run_suite, Report, Suite, Verdict, VerifyOptions};
use defcyc_core::fgabelian::{snf, verify_snf, IntMatrix};
use defcyc_core::group::{
    catalog_up_to, direct_product, make_abelian, make_alternating4, make_cyclic, make_dicyclic, make_dihedral,
    make_quaternion, make_symmetric,
};
use defcyc_core::{Evaluator, FiniteGroup};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Line {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: String,
    /// A failure that has been analysed and is expected.
    expected_failure: bool,
}

fn suite(s: Suite, max_order: Option<usize>) -> Report {
    run_suite(s, &VerifyOptions { max_order, ..Default::default() }).expect("suite runs")
}

fn failures(r: &Report) -> Vec<String> {
    r.cases
        .iter()
        .filter(|c| c.verdict != Verdict::Pass)
        .map(|c| format!("{} {}: {}", r.suite, c.name, c.witness.as_deref().or(c.reason.as_deref()).unwrap_or("")))
        .collect()
}

fn from_reports(id: u32, title: &'static str, reports: &[Report], note: String) -> Line {
    let bad: Vec<String> = reports.iter().flat_map(failures).collect();
    let cases: usize = reports.iter().map(|r| r.cases.len()).sum();
    let detail = if bad.is_empty() { format!("{cases} cases; {note}") } else { bad.join(" | ") };
    Line { id, title, passed: bad.is_empty(), detail, expected_failure: false }
}

fn criterion_1() -> Line {
    let start = Instant::now();
    let complete = suite(Suite::Thm21, Some(15));
    let families = suite(Suite::Thm21, Some(48));
    let secs = start.elapsed().as_secs_f64();
    let mut line = from_reports(
        1,
        "logically cyclic iff cyclic",
        &[complete, families],
        format!("28 complete + 150 family groups up to 48 in {secs:.2}s"),
    );
    if secs >= 60.0 {
        line.passed = false;
        line.detail = format!("took {secs:.1}s");
    }
    line
}

fn criterion_2() -> Line {
    let r = suite(Suite::HillarRhea, Some(64));
    let special = ["Z2xZ4 = 2^3", "Z2xZ8 = 2^4", "Z2xZ16 = 2^5"];
    let mut line = from_reports(2, "closed-form |Aut| of abelian p-groups", std::slice::from_ref(&r), "p in {2,3,5,7}, order <= 64".into());
    for name in special {
        if !r.cases.iter().any(|c| c.name == name && c.verdict == Verdict::Pass) {
            line.passed = false;
            line.detail = format!("missing case {name}");
        }
    }
    line
}

fn criterion_3() -> Line {
    let r = suite(Suite::CayleyOracle, Some(8));
    let checks: u64 = r
        .cases
        .iter()
        .filter_map(|c| c.witness.as_deref()?.split(' ').next()?.parse::<u64>().ok())
        .sum();
    from_reports(3, "Cayley formula agrees with fixed points", &[r], format!("{checks} (S, g) pairs"))
}

fn criterion_4() -> Line {
    let reports: Vec<Report> = [Suite::DefAbelian, Suite::EmptyParams, Suite::OrbitLaw, Suite::AutBound, Suite::Prop14]
        .into_iter()
        .map(|s| suite(s, Some(15)))
        .collect();
    from_reports(4, "structural laws up to order 15", &reports, "def abelian subgroup, def of {} = G only for Z1/Z2, orbit law, |Aut| <= |G|".into())
}

fn criterion_5() -> Line {
    let r = suite(Suite::D8Counterexample, None);
    let w = r.cases[0].witness.clone().unwrap_or_default();
    from_reports(5, "D8 counterexample", &[r], w)
}

fn criterion_6() -> Line {
    from_reports(6, "Z x Z_m grid", &[suite(Suite::Prop31, Some(12))], "m = 3..12 all fixed, m = 2 trivial stabilizer, formula defines (u, 1)".into())
}

/// Over Q x Z_2 with s = (1, 0), `n z = m s` has the two solutions
/// (m/n, 0) and (m/n, 1) whenever n is even, so the consequent `x = y + z`
/// must hold for both and no x qualifies. The formula therefore defines
/// (m/n, 1) exactly for odd n, and this line is expected to fail on the
/// even denominators.
fn criterion_7() -> Line {
    let r = suite(Suite::Rationals, Some(20));
    let failing: Vec<&str> = r.cases.iter().filter(|c| c.verdict != Verdict::Pass).map(|c| c.name.as_str()).collect();
    let expected: Vec<String> = (2..=20).step_by(2).map(|n| format!("QxZ2: two guards, n = {n}")).collect();
    let linear_ok = r.cases.iter().filter(|c| c.name.starts_with("Q:")).all(|c| c.verdict == Verdict::Pass);
    let matches_analysis = linear_ok && failing == expected.iter().map(String::as_str).collect::<Vec<_>>();
    let detail = if matches_analysis {
        "n x = m s defines m/n for all 20 denominators; the Q x Z2 two-guard formula defines (m/n, 1) for odd n \
         only: for even n the z-guard has two solutions (m/n, 0), (m/n, 1) and the solution set is empty"
            .to_string()
    } else {
        failures(&r).join(" | ")
    };
    Line { id: 7, title: "rationals", passed: failing.is_empty(), detail, expected_failure: matches_analysis }
}

fn axioms_hold(g: &FiniteGroup) -> bool {
    let t = g.rows();
    let n = g.order();
    let perms = t.iter().all(|row| {
        let mut seen = vec![false; n];
        row.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
    });
    let identity = (0..n).all(|i| t[0][i] == i && t[i][0] == i);
    let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])));
    perms && identity && assoc
}

fn criterion_8() -> Line {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut problems = Vec::new();

    for i in 0..1000 {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-50..=50)).collect()).collect();
        let a = IntMatrix::from_rows(&rows).unwrap();
        let s = snf(&a);
        let one = BigInt::from(1);
        let ok = verify_snf(&a, &s).is_ok()
            && s.u.mul(&a).mul(&s.v) == s.d
            && s.u.determinant().magnitude() == one.magnitude()
            && s.v.determinant().magnitude() == one.magnitude();
        if !ok {
            problems.push(format!("snf matrix #{i}"));
        }
    }

    let mut groups = catalog_up_to(48).unwrap();
    groups.extend([
        make_cyclic(64).unwrap(),
        make_abelian(&[2, 2, 4, 4]).unwrap(),
        make_dihedral(16).unwrap(),
        make_dicyclic(6).unwrap(),
        make_quaternion().unwrap(),
        make_symmetric(4).unwrap(),
        make_alternating4().unwrap(),
        direct_product(&make_quaternion().unwrap(), &make_cyclic(3).unwrap()).unwrap(),
    ]);
    problems.extend(groups.iter().filter(|g| !axioms_hold(g)).map(|g| format!("axioms {}", g.name())));

    let small = catalog_up_to(6).unwrap();
    for i in 0..500 {
        let g = &small[rng.gen_range(0..small.len())];
        let s = rng.gen_range(0..g.order());
        let f = logic::random_formula(&mut rng, 4);
        let params = BTreeMap::from([("s".to_string(), s)]);
        let expected: Vec<usize> =
            g.elements().filter(|&x| logic::naive_holds(g, &f, &mut vec![("x".into(), x)], &params)).collect();
        let ev = Evaluator::new(g).with_params(params.clone());
        let mut variants = vec![("original", f.clone())];
        variants.extend(logic::equivalents(&f));
        for (label, v) in variants {
            match ev.solutions(&v, "x") {
                Ok(sol) if sol.as_slice() == expected.as_slice() => {}
                _ => problems.push(format!("formula #{i} ({label}) in {}", g.name())),
            }
        }
    }

    let detail = if problems.is_empty() {
        format!("1000 SNF matrices, {} constructed groups, 500 formulas x 4 forms", groups.len())
    } else {
        problems.join(" | ")
    };
    Line { id: 8, title: "property suites", passed: problems.is_empty(), detail, expected_failure: false }
}

fn main() -> ExitCode {
    let lines = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
    ];
    let mut unexpected = 0;
    for l in &lines {
        let status = if l.passed { "PASS" } else { "FAIL" };
        println!("criterion {} {status}  {}: {}", l.id, l.title, l.detail);
        if !l.passed && !l.expected_failure {
            unexpected += 1;
        }
    }
    let passed = lines.iter().filter(|l| l.passed).count();
    println!("{passed}/{} criteria pass; {unexpected} unexpected results", lines.len());
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
