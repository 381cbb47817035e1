//! Acceptance criteria, one PASS/FAIL line each.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{cofactor_det, j1};
use plov_core::algebra::{int, rat, RatMatrix, UniPoly, Var};
use plov_core::cohomology::{plov_via_model, standard_form, vanishing_scan};
use plov_core::cyclotomic::quasi_unipotency;
use plov_core::jordan::{half_profile, jordan_profile};
use plov_core::plov::{analyze, analyze_with, growth_exponents, max_block_compound2, plov_of, AnalysisOptions};
use plov_core::powersum::{
    hilbert_det, hilbert_matrix, power_sum_brute, power_sum_det, single_block_leading_coeff, SpdMatrix,
};
use plov_core::random::{
    conjugate, conjugated_unipotent, integer_matrix, paired_unipotent, partition, quasi_unipotent_block_sum, rng,
    spd, two_form, unipotent_block_sum,
};
use plov_core::Exec;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// `J_{1,2}^{⊕a} ⊕ J_{1,1}^{⊕b}`.
fn remark_case(twos: usize, ones: usize) -> RatMatrix {
    let mut blocks = vec![j1(2); twos];
    blocks.extend(vec![j1(1); ones]);
    RatMatrix::direct_sum(&blocks)
}

fn remark_options() -> AnalysisOptions {
    // plov and the Theorem 3.6 bound do not depend on high-degree exponents;
    // H² is kept for the kf cross-check
    AnalysisOptions { degrees: Some(vec![1, 2]), exec: Exec::default() }
}

fn c1_remark_golden() -> Outcome {
    let mut slowest = Duration::ZERO;
    for m in 1..=4 {
        let g = 2 * m;
        let start = Instant::now();
        let r = analyze_with(&remark_case(2 * m, 0), &remark_options()).map_err(|e| e.to_string())?;
        slowest = slowest.max(start.elapsed());
        ensure(r.plov == Some(2 * g), || format!("g={g}: plov {:?}, want {}", r.plov, 2 * g))?;

        let g = 2 * m - 1;
        let start = Instant::now();
        let r = analyze_with(&remark_case(2 * (m - 1), 2), &remark_options()).map_err(|e| e.to_string())?;
        slowest = slowest.max(start.elapsed());
        ensure(r.plov == Some(2 * g - 1), || format!("g={g}: plov {:?}, want {}", r.plov, 2 * g - 1))?;
    }
    ensure(slowest < Duration::from_secs(1), || format!("slowest case took {slowest:?}"))?;
    Ok(format!("8 cases, slowest {slowest:?}"))
}

fn c2_degree_law() -> Outcome {
    let mut r = rng(2);
    for case in 0..50 {
        let dim = r_range(&mut r, 1, 8);
        let sizes = partition(&mut r, dim, 4);
        let a = conjugated_unipotent(&mut r, &sizes);
        let want: usize = sizes.iter().map(|k| k * k).sum();
        let res = power_sum_det(&a, &SpdMatrix::identity(dim)).map_err(|e| format!("case {case}: {e}"))?;
        ensure(res.degree == want, || format!("case {case} sizes {sizes:?}: degree {}, want {want}", res.degree))?;
    }
    Ok("50 matrices".into())
}

fn c3_closed_form() -> Outcome {
    let a = j1(2);
    let h = SpdMatrix::identity(2);
    let res = power_sum_det(&a, &h).map_err(|e| e.to_string())?;
    let want = UniPoly::from_coeffs(vec![int(0), int(0), rat(11, 12), int(0), rat(1, 12)], Var::N);
    ensure(res.poly == want, || format!("poly {}", res.poly))?;
    for n in 1..=9 {
        let brute = power_sum_brute(&a, &h, n);
        ensure(res.poly.eval_int(n as i64) == brute, || format!("n={n}: brute {brute}"))?;
    }
    ensure(power_sum_brute(&a, &h, 1) == int(1) && power_sum_brute(&a, &h, 2) == int(5), || "P(1), P(2)".into())?;
    Ok(format!("P(n) = {}", res.poly))
}

fn c4_leading_coefficients() -> Outcome {
    for k in 1..=5 {
        let res = power_sum_det(&j1(k), &SpdMatrix::identity(k)).map_err(|e| e.to_string())?;
        let want = single_block_leading_coeff(k);
        ensure(res.leading_coeff == want, || format!("k={k}: {} vs {want}", res.leading_coeff))?;
    }
    for k in 1..=8 {
        let want = cofactor_det(&hilbert_matrix(k));
        ensure(hilbert_det(k) == want, || format!("hilbert k={k}"))?;
    }
    Ok("k = 1..5 leading, Hilbert k <= 8".into())
}

fn c5_invariances() -> Outcome {
    let mut r = rng(5);
    for case in 0..20 {
        let dim = r_range(&mut r, 1, 6);
        let sizes = partition(&mut r, dim, 4);
        let a = conjugated_unipotent(&mut r, &sizes);
        let base = power_sum_det(&a, &SpdMatrix::identity(dim)).map_err(|e| e.to_string())?.degree;
        for _ in 0..5 {
            let h = spd(&mut r, dim);
            let d = power_sum_det(&a, &h).map_err(|e| e.to_string())?.degree;
            ensure(d == base, || format!("case {case}: H changed degree {base} -> {d}"))?;
        }
        let b = conjugate(&mut r, &a);
        let d = power_sum_det(&b, &SpdMatrix::identity(dim)).map_err(|e| e.to_string())?.degree;
        ensure(d == base, || format!("case {case}: similarity changed degree {base} -> {d}"))?;
    }
    Ok("20 matrices x (5 SPD + 1 similarity)".into())
}

fn c6_theorem_d() -> Outcome {
    let mut r = rng(6);
    let mut cases = 0;
    for g in 1..=5 {
        for _ in 0..4 {
            let c = if cases % 2 == 0 {
                unipotent_block_sum(&partition(&mut r, g, 5))
            } else {
                quasi_unipotent_block_sum(&mut r, g, 4)
            };
            let m = conjugate(&mut r, &RatMatrix::direct_sum(&[c.clone(), c]));
            let half = half_profile(&jordan_profile(&m).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let kj = half.max_block_size() - 1;
            let degrees: Vec<usize> = (1..=g).map(|k| 2 * k).collect();
            let e = growth_exponents(&m, &degrees, Exec::default()).map_err(|e| e.to_string())?;
            ensure(e[&2] == 2 * kj, || format!("g={g}: exponent on H2 {} vs 2kJ {}", e[&2], 2 * kj))?;
            let mb = max_block_compound2(&m).map_err(|e| e.to_string())?;
            ensure(mb == 2 * kj + 1, || format!("g={g}: max block {mb} vs {}", 2 * kj + 1))?;
            for k in 1..=g {
                ensure(e[&(2 * k)] <= 2 * k * (g - k), || format!("g={g}: exponent on H{} too large", 2 * k))?;
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} profiles, g <= 5"))
}

fn c7_compound_equivalence() -> Outcome {
    let mut r = rng(7);
    let (mut yes, mut no) = (0, 0);
    for case in 0..30 {
        let dim = 4 + case % 3;
        let m = if case % 2 == 0 {
            let d = quasi_unipotent_block_sum(&mut r, dim, 3);
            conjugate(&mut r, &d)
        } else {
            integer_matrix(&mut r, dim, 2)
        };
        let a = quasi_unipotency(&m).is_quasi_unipotent;
        let b = quasi_unipotency(&m.compound(2)).is_quasi_unipotent;
        ensure(a == b, || format!("case {case}: M {a}, compound {b}"))?;
        if a {
            yes += 1;
        } else {
            no += 1;
        }
    }
    ensure(yes > 0 && no > 0, || "sample is not mixed".into())?;
    Ok(format!("{yes} quasi-unipotent, {no} not"))
}

fn c8_vanishing() -> Outcome {
    let mut r = rng(8);
    let mut tuples = 0;
    for g in 1..=4 {
        for _ in 0..5 {
            let (sizes, m) = paired_unipotent(&mut r, g, 4);
            let rep = vanishing_scan(&m, &standard_form(g)).map_err(|e| e.to_string())?;
            ensure(rep.violations == 0, || format!("sizes {sizes:?}: {} violations", rep.violations))?;
            tuples += rep.entries.len();
        }
    }
    Ok(format!("20 matrices, {tuples} tuples above threshold, all zero"))
}

fn c9_triangle() -> Outcome {
    let mut r = rng(9);
    let (mut equal, mut total) = (0, 0);
    for g in 1..=4 {
        for trial in 0..6 {
            let (_, m) = paired_unipotent(&mut r, g, 4);
            let h = if trial % 2 == 0 { standard_form(g) } else { two_form(&mut r, g) };
            let Ok(model) = plov_via_model(&m, &h) else { continue };
            total += 1;
            ensure(model.within_bound, || format!("g={g}: model degree {} > plov {}", model.degree, model.plov))?;
            if !model.equality {
                continue;
            }
            equal += 1;
            let ps = power_sum_det(&m, &spd(&mut r, 2 * g)).map_err(|e| e.to_string())?.degree;
            let plov = plov_of(&half_profile(&jordan_profile(&m).unwrap()).unwrap());
            ensure(2 * model.degree == ps && ps == 2 * plov, || {
                format!("g={g}: 2*model {} power-sum {ps} 2*plov {}", 2 * model.degree, 2 * plov)
            })?;
        }
    }
    ensure(equal > 0, || "no case with equality".into())?;
    Ok(format!("{equal} of {total} cases with equality"))
}

fn c10_theorem_36() -> Outcome {
    let mut checked = 0;
    let mut witnesses = 0;
    let mut inputs: Vec<RatMatrix> = Vec::new();
    for m in 1..=4 {
        inputs.push(remark_case(2 * m, 0));
        inputs.push(remark_case(2 * (m - 1), 2));
    }
    let mut r = rng(10);
    for g in 1..=4 {
        for _ in 0..4 {
            let sizes = partition(&mut r, g, 2);
            let j = unipotent_block_sum(&sizes);
            inputs.push(conjugate(&mut r, &RatMatrix::direct_sum(&[j.clone(), j])));
        }
    }
    for (idx, m) in inputs.iter().enumerate() {
        let rep = if idx < 8 { analyze_with(m, &remark_options()) } else { analyze(m) };
        let rep = rep.map_err(|e| e.to_string())?;
        if rep.kf != Some(2) {
            continue;
        }
        let g = rep.genus;
        let plov = rep.plov.unwrap();
        let bound = 2 * (g / 2) + g;
        ensure(plov <= bound, || format!("case {idx}: plov {plov} > {bound}"))?;
        checked += 1;
        if idx < 8 {
            ensure(plov == bound, || format!("remark case {idx}: plov {plov} != bound {bound}"))?;
            witnesses += 1;
        }
    }
    Ok(format!("{checked} cases with kf = 2, {witnesses} equality witnesses"))
}

fn r_range(r: &mut plov_core::random::TestRng, lo: usize, hi: usize) -> usize {
    use rand::Rng;
    r.gen_range(lo..=hi)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("plov golden cases J_{1,2} sums", 8, c1_remark_golden),
        ("power-sum degree law, 50 random unipotent", 60, c2_degree_law),
        ("closed form n^2(n^2+11)/12", 1, c3_closed_form),
        ("leading coefficient and Hilbert determinant", 10, c4_leading_coefficients),
        ("degree invariance under H and similarity", 30, c5_invariances),
        ("H2 exponent 2kJ and block 2kJ+1", 60, c6_theorem_d),
        ("quasi-unipotency of M vs compound2(M)", 30, c7_compound_equivalence),
        ("vanishing scan under H_std", 60, c8_vanishing),
        ("consistency triangle", 60, c9_triangle),
        ("plov <= 2 floor(g/2) + g when kf = 2", 5, c10_theorem_36),
    ];
    let mut failed = 0;
    for (idx, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed > Duration::from_secs(*budget) {
                Err(format!("{msg}; over budget {budget}s"))
            } else {
                Ok(msg)
            }
        });
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} ({elapsed:.2?}, budget {budget}s)", idx + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} ({elapsed:.2?}, budget {budget}s)", idx + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
