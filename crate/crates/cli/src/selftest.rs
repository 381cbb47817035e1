//! Randomized self-test suites. Every case draws from its own seeded stream,
//! so results do not depend on scheduling.

use plov_core::algebra::RatMatrix;
use plov_core::cohomology::{plov_via_model, standard_form, vanishing_scan};
use plov_core::cyclotomic::quasi_unipotency;
use plov_core::jordan::{half_profile, jordan_profile};
use plov_core::plov::{growth_exponent, max_block_compound2, plov_of};
use plov_core::powersum::{power_sum_brute, power_sum_det, SpdMatrix};
use plov_core::random::{
    conjugate, conjugated_unipotent, integer_matrix, paired_unipotent, partition, quasi_unipotent_block_sum, rng,
    spd, TestRng,
};
use plov_core::Exec;
use rand::Rng;
use serde::Serialize;

use crate::report::{CheckLine, Outcome, ReportDocument};

/// Number of suites; a run performs `SUITES * cases` checks.
pub const SUITES: usize = 6;
pub const DEFAULT_MAX_SIZE: usize = 8;
pub const DEFAULT_CASES: usize = 50;

/// Heavier suites cap their dimension independently of `--max-size`.
const POWERSUM_CAP: usize = 8;
const GROWTH_GENUS_CAP: usize = 5;
const MODEL_GENUS_CAP: usize = 4;

type Case = fn(&mut TestRng, usize) -> Result<(), String>;

const CASES: [(&str, Case); SUITES] = [
    ("jordan-similarity", jordan_similarity),
    ("powersum-oracle", powersum_oracle),
    ("powersum-invariance", powersum_invariance),
    ("growth-h2", growth_h2),
    ("compound-quasi-unipotency", compound_quasi_unipotency),
    ("model-vanishing", model_vanishing),
];

#[derive(Debug, Clone, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelftestReport {
    pub seed: u64,
    pub max_size: usize,
    pub cases_per_suite: usize,
    pub suite_size: usize,
    pub passed: usize,
    pub suites: Vec<SuiteResult>,
}

/// SplitMix64 finaliser over `(seed, suite, case)`.
fn case_seed(seed: u64, suite: usize, case: usize) -> u64 {
    let mut z = seed ^ ((suite as u64) << 48) ^ (case as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn run_selftest(max_size: usize, cases: usize, seed: u64, exec: Exec) -> SelftestReport {
    let suites: Vec<SuiteResult> = CASES
        .iter()
        .enumerate()
        .map(|(s, &(name, case))| {
            let outcomes = exec.map_range(cases, |c| case(&mut rng(case_seed(seed, s, c)), max_size));
            let failures: Vec<String> = outcomes
                .iter()
                .enumerate()
                .filter_map(|(c, o)| o.as_ref().err().map(|e| format!("case {c}: {e}")))
                .collect();
            SuiteResult { name: name.into(), cases, passed: cases - failures.len(), failures }
        })
        .collect();
    let passed = suites.iter().map(|s| s.passed).sum();
    SelftestReport { seed, max_size, cases_per_suite: cases, suite_size: SUITES * cases, passed, suites }
}

pub fn selftest(max_size: usize, cases: usize, seed: u64, exec: Exec) -> Outcome {
    let doc = ReportDocument::new("selftest");
    if max_size < 2 {
        return Outcome::invalid_flag(doc, "--max-size must be at least 2");
    }
    let report = run_selftest(max_size, cases, seed, exec);
    let mut doc = doc;
    doc.checks = report
        .suites
        .iter()
        .map(|s| {
            CheckLine::new(&s.name, "every case passes", s.passed == s.cases, true, format!("{}/{}", s.passed, s.cases))
        })
        .collect();
    let mut summary: Vec<String> =
        report.suites.iter().map(|s| format!("{:<28} {}/{}", s.name, s.passed, s.cases)).collect();
    summary.push(format!("selftest: {}/{} passed", report.passed, report.suite_size));
    doc.result = Some(serde_json::to_value(&report).expect("selftest report serializes"));
    Outcome::finish(doc, summary)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: plov_core::Error) -> String {
    e.to_string()
}

fn jordan_similarity(r: &mut TestRng, max: usize) -> Result<(), String> {
    let dim = r.gen_range(1..=max);
    let d = quasi_unipotent_block_sum(r, dim, 4);
    let m = conjugate(r, &d);
    let (a, b) = (jordan_profile(&d).map_err(err)?, jordan_profile(&m).map_err(err)?);
    ensure(a == b, || format!("profile changed under similarity at dimension {dim}"))
}

fn powersum_oracle(r: &mut TestRng, max: usize) -> Result<(), String> {
    let dim = r.gen_range(1..=max.min(POWERSUM_CAP));
    let sizes = partition(r, dim, 4);
    let a = conjugated_unipotent(r, &sizes);
    let h = spd(r, dim);
    let res = power_sum_det(&a, &h).map_err(err)?;
    let want: usize = sizes.iter().map(|k| k * k).sum();
    ensure(res.degree == want, || format!("sizes {sizes:?}: degree {} vs {want}", res.degree))?;
    for n in 1..=4 {
        ensure(res.poly.eval_int(n as i64) == power_sum_brute(&a, &h, n), || format!("sizes {sizes:?}: P({n})"))?;
    }
    Ok(())
}

fn powersum_invariance(r: &mut TestRng, max: usize) -> Result<(), String> {
    let dim = r.gen_range(1..=max.min(POWERSUM_CAP).min(6));
    let sizes = partition(r, dim, 4);
    let a = conjugated_unipotent(r, &sizes);
    let base = power_sum_det(&a, &SpdMatrix::identity(dim)).map_err(err)?.degree;
    let h = spd(r, dim);
    let other = power_sum_det(&conjugate(r, &a), &h).map_err(err)?.degree;
    ensure(base == other, || format!("sizes {sizes:?}: degree {base} vs {other}"))
}

fn growth_h2(r: &mut TestRng, max: usize) -> Result<(), String> {
    let g = r.gen_range(1..=(max / 2).clamp(1, GROWTH_GENUS_CAP));
    let c = quasi_unipotent_block_sum(r, g, 4);
    let m = conjugate(r, &RatMatrix::direct_sum(&[c.clone(), c]));
    let half = half_profile(&jordan_profile(&m).map_err(err)?).map_err(err)?;
    let kj = half.max_block_size() - 1;
    let e2 = growth_exponent(&m, 2).map_err(err)?;
    ensure(e2 == 2 * kj, || format!("g={g}: exponent on H^2 {e2} vs {}", 2 * kj))?;
    let mb = max_block_compound2(&m).map_err(err)?;
    ensure(mb == 2 * kj + 1, || format!("g={g}: block {mb} vs {}", 2 * kj + 1))
}

fn compound_quasi_unipotency(r: &mut TestRng, max: usize) -> Result<(), String> {
    let dim = r.gen_range(3.min(max)..=max.min(POWERSUM_CAP));
    let m = if r.gen_bool(0.5) {
        let d = quasi_unipotent_block_sum(r, dim, 3);
        conjugate(r, &d)
    } else {
        integer_matrix(r, dim, 2)
    };
    let a = quasi_unipotency(&m).is_quasi_unipotent;
    let b = quasi_unipotency(&m.compound(2)).is_quasi_unipotent;
    ensure(a == b, || format!("dimension {dim}: M {a}, compound {b}"))
}

fn model_vanishing(r: &mut TestRng, max: usize) -> Result<(), String> {
    let g = r.gen_range(1..=(max / 2).clamp(1, MODEL_GENUS_CAP));
    let (sizes, m) = paired_unipotent(r, g, 4);
    let h = standard_form(g);
    let scan = vanishing_scan(&m, &h).map_err(err)?;
    ensure(scan.violations == 0, || format!("sizes {sizes:?}: {} violations", scan.violations))?;
    let model = plov_via_model(&m, &h).map_err(err)?;
    let plov = plov_of(&half_profile(&jordan_profile(&m).map_err(err)?).map_err(err)?);
    ensure(model.equality && model.degree == plov, || format!("sizes {sizes:?}: model {} vs {plov}", model.degree))?;
    Ok(())
}
