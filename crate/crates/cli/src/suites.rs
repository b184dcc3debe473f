//! The verification suites behind `defcyc verify`.
//!
//! Each suite expands into a list of independent cases in a fixed order.
//! Cases may run on a thread pool; the report always lists them in that
//! order, and timings are recorded only on request, so two runs with the
//! same options produce identical reports.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use defcyc_core::aut::{
    aut_order, automorphism_group_with_budget, hillar_rhea_order, nontrivial_fixing_automorphism, orbit,
    AbelianPShape, AutError, AutGroup,
};
use defcyc_core::definability::{definable_closure_in, is_logically_cyclic, DefinabilityError};
use defcyc_core::fgabelian::{
    check_defines_guarded, enumerate_aut, stabilizer_in_aut, GuardSolutions, GuardedEvaluator,
};
use defcyc_core::folang::{cayley_formula, EvalError};
use defcyc_core::group::{catalog_up_to, make_abelian, make_dihedral};
use defcyc_core::{
    parse_formula, Ambient, AmbientElement, Dialect, Evaluator, FgElement, FiniteGroup, Limits, RationalElement,
    Subset,
};
use num_bigint::BigUint;
use rayon::prelude::*;
use thiserror::Error;

use crate::report::{Case, Report, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Thm21,
    Prop14,
    DefAbelian,
    OrbitLaw,
    AutBound,
    EmptyParams,
    HillarRhea,
    CayleyOracle,
    D8Counterexample,
    Prop31,
    Rationals,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Thm21,
        Suite::Prop14,
        Suite::DefAbelian,
        Suite::OrbitLaw,
        Suite::AutBound,
        Suite::EmptyParams,
        Suite::HillarRhea,
        Suite::CayleyOracle,
        Suite::D8Counterexample,
        Suite::Prop31,
        Suite::Rationals,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Thm21 => "thm2-1",
            Suite::Prop14 => "prop1-4",
            Suite::DefAbelian => "def-abelian",
            Suite::OrbitLaw => "orbit-law",
            Suite::AutBound => "aut-bound",
            Suite::EmptyParams => "empty-params",
            Suite::HillarRhea => "hillar-rhea",
            Suite::CayleyOracle => "cayley-oracle",
            Suite::D8Counterexample => "d8-counterexample",
            Suite::Prop31 => "prop3-1",
            Suite::Rationals => "rationals",
        }
    }

    /// The bound `--max-order` defaults to. For `prop3-1` it bounds the
    /// modulus `m`, for `rationals` the numerators and denominators.
    pub fn default_max_order(self) -> usize {
        match self {
            Suite::HillarRhea => 64,
            Suite::CayleyOracle => 8,
            Suite::D8Counterexample => 8,
            Suite::Prop31 => 12,
            Suite::Rationals => 20,
            _ => 15,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| SuiteError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("cannot build the catalog: {0}")]
    Catalog(#[from] defcyc_core::GroupError),
    #[error("cannot start the worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_order: Option<usize>,
    pub jobs: usize,
    pub limits: Limits,
    /// Record wall-clock milliseconds per case (reports then differ
    /// between runs).
    pub timing: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { max_order: None, jobs: 1, limits: Limits::default(), timing: false }
    }
}

pub enum Outcome {
    Pass(Option<String>),
    Fail(String),
    Skip(String),
}

type Check = Box<dyn Fn(&Limits) -> Outcome + Send + Sync>;

struct Task {
    name: String,
    order: Option<u64>,
    check: Check,
}

fn task(name: impl Into<String>, order: Option<u64>, check: impl Fn(&Limits) -> Outcome + Send + Sync + 'static) -> Task {
    Task { name: name.into(), order, check: Box::new(check) }
}

fn group_task(g: FiniteGroup, check: impl Fn(&FiniteGroup, &Limits) -> Outcome + Send + Sync + 'static) -> Task {
    task(g.name().to_string(), Some(g.order() as u64), move |lim| check(&g, lim))
}

fn aut_fault(e: AutError) -> Outcome {
    match e {
        AutError::BudgetExceeded { .. } => Outcome::Skip(e.to_string()),
        e => Outcome::Fail(format!("error: {e}")),
    }
}

fn def_fault(e: DefinabilityError) -> Outcome {
    match e {
        DefinabilityError::Aut(e) => aut_fault(e),
        DefinabilityError::Eval(EvalError::BudgetExceeded { .. }) => Outcome::Skip(e.to_string()),
        e => Outcome::Fail(format!("error: {e}")),
    }
}

macro_rules! attempt {
    ($e:expr, $fault:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return $fault(e.into()),
        }
    };
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Report, SuiteError> {
    let max = opts.max_order.unwrap_or(suite.default_max_order());
    let tasks = match suite {
        Suite::Thm21 => catalog_up_to(max)?.into_iter().map(|g| group_task(g, thm21)).collect(),
        Suite::Prop14 => catalog_up_to(max)?.into_iter().map(|g| group_task(g, prop14)).collect(),
        Suite::DefAbelian => catalog_up_to(max)?.into_iter().map(|g| group_task(g, def_abelian)).collect(),
        Suite::OrbitLaw => catalog_up_to(max)?.into_iter().map(|g| group_task(g, orbit_law)).collect(),
        Suite::AutBound => catalog_up_to(max)?.into_iter().map(|g| group_task(g, aut_bound)).collect(),
        Suite::EmptyParams => catalog_up_to(max)?.into_iter().map(|g| group_task(g, empty_params)).collect(),
        Suite::HillarRhea => hillar_rhea_tasks(max as u64)?,
        Suite::CayleyOracle => catalog_up_to(max)?.into_iter().map(|g| group_task(g, cayley_oracle)).collect(),
        Suite::D8Counterexample => vec![group_task(make_dihedral(4)?, d8_counterexample)],
        Suite::Prop31 => prop31_tasks(max as u64),
        Suite::Rationals => rationals_tasks(max as i64),
    };
    let cases = execute(&tasks, opts)?;
    Ok(Report::new(suite.name(), cases))
}

fn execute(tasks: &[Task], opts: &VerifyOptions) -> Result<Vec<Case>, SuiteError> {
    let run = |t: &Task| {
        let start = Instant::now();
        let outcome = (t.check)(&opts.limits);
        let millis = if opts.timing { start.elapsed().as_millis() as u64 } else { 0 };
        let (verdict, witness, reason) = match outcome {
            Outcome::Pass(w) => (Verdict::Pass, w, None),
            Outcome::Fail(w) => (Verdict::Fail, Some(w), None),
            Outcome::Skip(r) => (Verdict::Skip, None, Some(r)),
        };
        Case { name: t.name.clone(), order: t.order, verdict, witness, reason, millis }
    };
    if opts.jobs <= 1 {
        return Ok(tasks.iter().map(run).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build()?;
    Ok(pool.install(|| tasks.par_iter().map(run).collect()))
}

fn thm21(g: &FiniteGroup, lim: &Limits) -> Outcome {
    let verdict = attempt!(is_logically_cyclic(g, lim), def_fault);
    let gens = g.format_subset(&verdict.generators);
    match (verdict.is_logically_cyclic, g.is_cyclic()) {
        (true, true) => Outcome::Pass(Some(format!("logical generators {gens}"))),
        (false, false) => Outcome::Pass(None),
        (true, false) => Outcome::Fail(format!("logical generators {gens} but not cyclic")),
        (false, true) => {
            let c = g.elements().find(|&x| g.element_order(x) == g.order()).expect("cyclic");
            let single = Subset::singleton(g.order(), c).expect("in range");
            let moved = attempt!(nontrivial_fixing_automorphism(g, &single, lim.aut_nodes), aut_fault);
            let moved = moved.map_or("?".to_string(), |a| a.describe(g));
            Outcome::Fail(format!("cyclic generator {} is fixed by {moved}", g.element_name(c)))
        }
    }
}

fn prop14(g: &FiniteGroup, lim: &Limits) -> Outcome {
    let verdict = attempt!(is_logically_cyclic(g, lim), def_fault);
    if !verdict.is_logically_cyclic || g.is_abelian() {
        return Outcome::Pass(None);
    }
    let (a, b) = non_commuting(g, &Subset::full(g.order())).expect("non-abelian");
    Outcome::Fail(format!(
        "logically cyclic but {} and {} do not commute",
        g.element_name(a),
        g.element_name(b)
    ))
}

fn non_commuting(g: &FiniteGroup, s: &Subset) -> Option<(usize, usize)> {
    s.iter().flat_map(|a| s.iter().map(move |b| (a, b))).find(|&(a, b)| !g.commute(a, b))
}

fn full_aut<'g>(g: &'g FiniteGroup, lim: &Limits) -> Result<AutGroup<'g>, AutError> {
    automorphism_group_with_budget(g, lim.aut_nodes)
}

fn def_abelian(g: &FiniteGroup, lim: &Limits) -> Outcome {
    let aut = attempt!(full_aut(g, lim), aut_fault);
    for s in g.elements() {
        let def = definable_closure_in(&aut, &Subset::singleton(g.order(), s).expect("in range")).closure;
        if !g.is_subgroup(&def) {
            return Outcome::Fail(format!("def of {} = {} is not a subgroup", g.element_name(s), g.format_subset(&def)));
        }
        if let Some((a, b)) = non_commuting(g, &def) {
            return Outcome::Fail(format!(
                "def of {} contains non-commuting {} and {}",
                g.element_name(s),
                g.element_name(a),
                g.element_name(b)
            ));
        }
    }
    Outcome::Pass(None)
}

fn orbit_law(g: &FiniteGroup, lim: &Limits) -> Outcome {
    let aut = attempt!(full_aut(g, lim), aut_fault);
    let verdict = attempt!(is_logically_cyclic(g, lim), def_fault);
    for s in verdict.generators.iter() {
        let size = orbit(&aut, s).len();
        if size != aut.len() {
            return Outcome::Fail(format!("|Orb({})| = {size} but |Aut| = {}", g.element_name(s), aut.len()));
        }
    }
    if verdict.is_logically_cyclic {
        Outcome::Pass(Some(format!("|Orb(s)| = |Aut| = {} for {} generators", aut.len(), verdict.generators.len())))
    } else {
        Outcome::Pass(None)
    }
}

fn aut_bound(g: &FiniteGroup, lim: &Limits) -> Outcome {
    let verdict = attempt!(is_logically_cyclic(g, lim), def_fault);
    if !verdict.is_logically_cyclic {
        return Outcome::Pass(None);
    }
    let n = attempt!(aut_order(g, lim), aut_fault);
    if n <= g.order() as u128 {
        Outcome::Pass(Some(format!("|Aut| = {n}")))
    } else {
        Outcome::Fail(format!("|Aut| = {n} exceeds |G|"))
    }
}

fn empty_params(g: &FiniteGroup, lim: &Limits) -> Outcome {
    let aut = attempt!(full_aut(g, lim), aut_fault);
    let def = definable_closure_in(&aut, &Subset::empty(g.order())).closure;
    let everything = def.len() == g.order();
    match (everything, g.order() <= 2) {
        (true, true) => Outcome::Pass(Some("def = G".into())),
        (false, false) => Outcome::Pass(None),
        (true, false) => Outcome::Fail("every element is definable without parameters".into()),
        (false, true) => Outcome::Fail(format!("def = {}", g.format_subset(&def))),
    }
}

/// Full enumeration is used as a second count when it is cheap.
const ENUMERATION_CAP: u32 = 50_000;

fn hillar_rhea_tasks(max: u64) -> Result<Vec<Task>, SuiteError> {
    let mut tasks = Vec::new();
    for p in [2u64, 3, 5, 7] {
        for shape in AbelianPShape::all_up_to(p, max) {
            let g = make_abelian(&shape.factors())?;
            let expected = hillar_rhea_order(&shape);
            tasks.push(group_task(g, move |g, lim| compare_aut_order(g, &expected, lim)));
        }
    }
    for f in 2..=4u32 {
        if 2 << f > max {
            break;
        }
        let shape = AbelianPShape::new(2, vec![1, f]).expect("valid shape");
        let g = make_abelian(&shape.factors())?;
        let name = format!("{} = 2^{}", g.name(), f + 1);
        tasks.push(task(name, Some(2 << f), move |lim| {
            let formula = hillar_rhea_order(&shape);
            if formula != BigUint::from(2u32 << f) {
                return Outcome::Fail(format!("closed form gives {formula}"));
            }
            compare_aut_order(&g, &formula, lim)
        }));
    }
    Ok(tasks)
}

fn compare_aut_order(g: &FiniteGroup, expected: &BigUint, lim: &Limits) -> Outcome {
    let counted = attempt!(aut_order(g, lim), aut_fault);
    if BigUint::from(counted) != *expected {
        return Outcome::Fail(format!("closed form {expected}, counted {counted}"));
    }
    if *expected <= BigUint::from(ENUMERATION_CAP) {
        let listed = attempt!(full_aut(g, lim), aut_fault).len();
        if BigUint::from(listed) != *expected {
            return Outcome::Fail(format!("closed form {expected}, enumerated {listed}"));
        }
    }
    Outcome::Pass(Some(format!("|Aut| = {expected}")))
}

fn cayley_oracle(g: &FiniteGroup, lim: &Limits) -> Outcome {
    let n = g.order();
    if n > lim.formula_max_order {
        return Outcome::Skip(format!("order {n} exceeds the formula guard {}", lim.formula_max_order));
    }
    let aut = attempt!(full_aut(g, lim), aut_fault);
    let mut checks = 0u64;
    for bits in 0..(1u64 << n) {
        let s = Subset::from_bits(n, bits);
        let def = definable_closure_in(&aut, &s).closure;
        for target in g.elements() {
            let cf = cayley_formula(g, &s, target).expect("valid subset and target");
            let ev = Evaluator::new(g).with_params(cf.params.clone()).with_budget(lim.eval_atoms);
            let defines = attempt!(ev.check_defines(&cf.formula, &cf.free_var, target), |e: EvalError| def_fault(e.into()));
            checks += 1;
            if defines != def.contains(target) {
                return Outcome::Fail(format!(
                    "S = {}, g = {}: formula says {defines}, automorphisms say {}",
                    g.format_subset(&s),
                    g.element_name(target),
                    def.contains(target)
                ));
            }
        }
    }
    Outcome::Pass(Some(format!("{checks} (S, g) pairs agree")))
}

fn d8_counterexample(g: &FiniteGroup, lim: &Limits) -> Outcome {
    let aut = attempt!(full_aut(g, lim), aut_fault);
    for s in g.elements() {
        let def = definable_closure_in(&aut, &Subset::singleton(g.order(), s).expect("in range")).closure;
        let abelian = non_commuting(g, &def).is_none();
        let cyclic = def.iter().any(|x| g.element_order(x) == def.len());
        if abelian && !cyclic && def.len() >= 4 {
            return Outcome::Pass(Some(format!(
                "def of {} = {} is abelian, not cyclic, of size {}",
                g.element_name(s),
                g.format_subset(&def),
                def.len()
            )));
        }
    }
    Outcome::Fail("every def of a single element is cyclic, non-abelian or smaller than 4".into())
}

fn totient(m: u64) -> u64 {
    (1..=m).filter(|&k| num_integer::gcd(k, m) == 1).count() as u64
}

fn prop31_tasks(max_m: u64) -> Vec<Task> {
    let mut tasks = Vec::new();
    for m in 2..=max_m {
        tasks.push(task(format!("ZxZ{m}"), None, move |_| prop31_case(m)));
    }
    if max_m >= 2 {
        tasks.push(task("ZxZ2 defines (u, 1)", None, |_| prop31_formula()));
    }
    tasks
}

fn prop31_case(m: u64) -> Outcome {
    let all = enumerate_aut(m);
    let expected = 2 * m * totient(m);
    if all.len() as u64 != expected {
        return Outcome::Fail(format!("{} automorphisms, expected 2m phi(m) = {expected}", all.len()));
    }
    let point = |u: i64, v: u64| FgElement::pair(m, u, v).expect("valid modulus");
    if m == 2 {
        let s = point(1, 0);
        let stab = stabilizer_in_aut(m, &s).expect("matching shape");
        return if stab.iter().all(|a| a.is_identity()) {
            Outcome::Pass(Some(format!("{s} has trivial stabilizer among {expected} automorphisms")))
        } else {
            Outcome::Fail(format!("{s} is fixed by {}", stab.iter().find(|a| !a.is_identity()).expect("nontrivial")))
        };
    }
    // u ranges over a full period on both sides of 0: the stabilizer of
    // (u, v) depends on u mod m and on whether u = 0.
    let bound = m as i64;
    for u in -bound..=bound {
        for v in 0..m {
            let s = point(u, v);
            let stab = stabilizer_in_aut(m, &s).expect("matching shape");
            if !stab.iter().any(|a| !a.is_identity()) {
                return Outcome::Fail(format!("{s} has trivial stabilizer"));
            }
        }
    }
    let stab = stabilizer_in_aut(m, &point(1, 0)).expect("matching shape");
    let example = stab.iter().find(|a| !a.is_identity()).expect("checked above");
    Outcome::Pass(Some(format!(
        "{} points, each with a nontrivial stabilizer among {expected}; e.g. (1, 0 mod {m}) is fixed by {example}",
        (2 * bound + 1) as u64 * m
    )))
}

fn prop31_formula() -> Outcome {
    let ambient = Ambient::Fg(defcyc_core::FgAbelian::z_times_zm(2).expect("m = 2"));
    let s = AmbientElement::Fg(FgElement::pair(2, 1, 0).expect("m = 2"));
    let params = BTreeMap::from([("s".to_string(), s)]);
    for u in -5i64..=5 {
        let text = format!("forall y ((2y=0 & y!=0) -> x = {u}s + y)");
        let f = parse_formula(&text, Dialect::Additive, &["s"]).expect("well-formed");
        let target = AmbientElement::Fg(FgElement::pair(2, u, 1).expect("m = 2"));
        match check_defines_guarded(&ambient, &params, &f, "x", &target) {
            Ok(true) => {}
            Ok(false) => return Outcome::Fail(format!("{text} does not define {target}")),
            Err(e) => return Outcome::Fail(format!("{text}: {e}")),
        }
    }
    Outcome::Pass(Some("u = -5..5".into()))
}

fn reduced(bound: i64, n: i64) -> impl Iterator<Item = i64> {
    (-bound..=bound).filter(move |&m| num_integer::gcd(m, n) == 1)
}

fn rationals_tasks(bound: i64) -> Vec<Task> {
    let mut tasks = Vec::new();
    for n in 1..=bound {
        tasks.push(task(format!("Q: {n}x = ms"), None, move |_| rationals_linear(bound, n)));
    }
    for n in 1..=bound {
        tasks.push(task(format!("QxZ2: two guards, n = {n}"), None, move |_| rationals_two_guard(bound, n)));
    }
    tasks
}

fn rationals_linear(bound: i64, n: i64) -> Outcome {
    let ambient = Ambient::Rationals;
    let ev = GuardedEvaluator::new(&ambient).with_param("s", RationalElement::integer(1).into());
    for m in reduced(bound, n) {
        let f = parse_formula(&format!("{n}x = {m}s"), Dialect::Additive, &["s"]).expect("well-formed");
        let target: AmbientElement = RationalElement::new(m, n).expect("n > 0").into();
        match ev.check_defines(&f, "x", &target) {
            Ok(true) => {}
            Ok(false) => return Outcome::Fail(format!("{n}x = {m}s does not define {target}")),
            Err(e) => return Outcome::Fail(format!("{n}x = {m}s: {e}")),
        }
    }
    Outcome::Pass(None)
}

/// The formula forces `y = (0, 1)` and `n z = m s`, so it defines `(m/n, 1)`
/// exactly when `n z = m s` has a single solution.
fn rationals_two_guard(bound: i64, n: i64) -> Outcome {
    let ambient = Ambient::RationalsTimesZ2;
    let s = AmbientElement::RationalZ2(RationalElement::integer(1), 0);
    let ev = GuardedEvaluator::new(&ambient).with_param("s", s);
    let mut failures = Vec::new();
    for m in reduced(bound, n) {
        let text = format!("forall y forall z ((2y=0 & y!=0 & {n}z = {m}s) -> x = y+z)");
        let f = parse_formula(&text, Dialect::Additive, &["s"]).expect("well-formed");
        let q = RationalElement::new(m, n).expect("n > 0");
        let target = AmbientElement::RationalZ2(q.clone(), 1);
        match ev.solutions(&f, "x") {
            Ok(GuardSolutions::Finite(v)) if v == [target.clone()] => {}
            Ok(found) => failures.push((q, found)),
            Err(e) => return Outcome::Fail(format!("{text}: {e}")),
        }
    }
    let Some((q, found)) = failures.first() else {
        return Outcome::Pass(None);
    };
    let found = match found {
        GuardSolutions::Infinite => "infinitely many solutions".to_string(),
        GuardSolutions::Finite(v) => {
            let v: Vec<String> = v.iter().map(ToString::to_string).collect();
            format!("solutions {{{}}}", v.join(", "))
        }
    };
    let guard = ev
        .guard_solutions(
            &parse_formula(&format!("{n}z = {}s", q.numer()), Dialect::Additive, &["s"]).expect("well-formed"),
            "z",
            &BTreeMap::new(),
        )
        .map(|g| match g {
            GuardSolutions::Finite(v) => v.len().to_string(),
            GuardSolutions::Infinite => "infinitely many".into(),
        })
        .unwrap_or_else(|e| e.to_string());
    Outcome::Fail(format!(
        "{} of the fractions fail, e.g. m/n = {q}: {found}; the z-guard has {guard} solutions",
        failures.len()
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("thm".parse::<Suite>().is_err());
    }

    #[test]
    fn parallel_runs_match_serial_runs() {
        let serial = run_suite(Suite::Thm21, &VerifyOptions { max_order: Some(12), ..Default::default() }).unwrap();
        let parallel =
            run_suite(Suite::Thm21, &VerifyOptions { max_order: Some(12), jobs: 4, ..Default::default() }).unwrap();
        assert_eq!(serial.to_json(), parallel.to_json());
        assert_eq!(serial.exit_code(), 0);
    }

    #[test]
    fn budget_exhaustion_becomes_a_skip() {
        let opts = VerifyOptions { max_order: Some(8), limits: Limits::default().with_budget(3), ..Default::default() };
        let r = run_suite(Suite::Thm21, &opts).unwrap();
        assert!(r.summary.skip > 0);
        assert!(r.cases.iter().filter(|c| c.verdict == Verdict::Skip).all(|c| c.reason.is_some()));
        assert_eq!(r.exit_code(), 3);
    }

    #[test]
    fn d8_has_the_counterexample() {
        let r = run_suite(Suite::D8Counterexample, &VerifyOptions::default()).unwrap();
        assert_eq!(r.summary.pass, 1, "{}", r.to_table());
    }

    #[test]
    fn odd_denominators_pass_the_two_guard_formula() {
        assert!(matches!(rationals_two_guard(5, 3), Outcome::Pass(_)));
        assert!(matches!(rationals_two_guard(5, 2), Outcome::Fail(_)));
    }
}
