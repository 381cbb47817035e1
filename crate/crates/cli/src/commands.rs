//! The `analyze`, `powersum`, `growth` and `model` pipelines.

use plov_core::algebra::rational::is_positive;
use plov_core::algebra::{to_exact_string, RatMatrix};
use plov_core::cohomology::{plov_via_model, standard_form, vanishing_scan_with};
use plov_core::cyclotomic::{quasi_unipotency, unipotent_power};
use plov_core::plov::{analyze_with, growth_exponents, AnalysisOptions};
use plov_core::powersum::{power_sum_brute, power_sum_det_with, SpdMatrix};
use plov_core::random::{rng, spd, two_form};
use plov_core::{Error, Exec};
use serde::Serialize;
use serde_json::{json, Value};

use crate::input::InputDocument;
use crate::report::{CheckLine, Outcome, ReportDocument, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum HChoice {
    Identity,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FormChoice {
    Standard,
    Random,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

fn matrix_strings(m: &RatMatrix) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| r.iter().map(to_exact_string).collect()).collect()
}

fn start(command: &str, input: &InputDocument) -> ReportDocument {
    let mut doc = ReportDocument::new(command);
    doc.input = Some(input.echo());
    doc
}

fn label(input: &InputDocument) -> String {
    match &input.name {
        Some(n) => format!("{n} ({}x{})", input.matrix.dim(), input.matrix.dim()),
        None => format!("{}x{} matrix", input.matrix.dim(), input.matrix.dim()),
    }
}

pub fn analyze(input: &InputDocument, degrees: Option<Vec<usize>>, exec: Exec) -> Outcome {
    let doc = start("analyze", input);
    let opts = AnalysisOptions { degrees, exec };
    let report = match analyze_with(&input.matrix, &opts) {
        Ok(r) => r,
        Err(e) => return Outcome::failed(doc, &e),
    };
    let mut doc = doc;
    let mut summary = vec![format!("analyze {}: genus {}", label(input), report.genus)];
    doc.checks = report
        .bound_checks
        .iter()
        .map(|c| CheckLine::new(&c.name, &c.law, c.holds, true, c.detail.clone()))
        .collect();
    if report.pseudo_analytic {
        summary.push(format!(
            "plov {}, kJ {}, kf {}, largest block on H^2 {}",
            report.plov.unwrap(),
            report.kj.unwrap(),
            report.kf.unwrap(),
            report.max_block_compound2
        ));
    } else {
        doc.status = Status::PreconditionViolated;
        doc.error = Some(crate::report::ErrorInfo {
            kind: "not-pseudo-analytic".into(),
            message: "Jordan profile is not of the form J + conj(J); plov is not defined".into(),
        });
        summary.push("not pseudo-analytic: plov omitted".into());
    }
    let exps: Vec<String> = report.exponents.iter().map(|(r, e)| format!("H^{r}: {e}")).collect();
    summary.push(format!("growth exponents {}", exps.join(", ")));
    doc.result = Some(to_value(&report));
    Outcome::finish(doc, summary)
}

pub fn powersum(input: &InputDocument, h: HChoice, seed: u64, samples: u64, exec: Exec) -> Outcome {
    let doc = start("powersum", input);
    let m = &input.matrix;
    if !quasi_unipotency(m).is_quasi_unipotent {
        return Outcome::failed(doc, &Error::NotQuasiUnipotent);
    }
    let (order, a) = match unipotent_power(m) {
        Ok(x) => x,
        Err(e) => return Outcome::failed(doc, &e),
    };
    let k = a.dim();
    let hm = match h {
        HChoice::Identity => SpdMatrix::identity(k),
        HChoice::Random => spd(&mut rng(seed), k),
    };
    let res = match power_sum_det_with(&a, &hm, exec) {
        Ok(r) => r,
        Err(e) => return Outcome::failed(doc, &e),
    };
    let nodes: Vec<u64> = (1..=samples).collect();
    let brute = exec.map(&nodes, |&n| power_sum_brute(&a, &hm, n));
    let mut all_equal = true;
    let sample_rows: Vec<Value> = nodes
        .iter()
        .zip(&brute)
        .map(|(&n, b)| {
            let s = res.poly.eval_int(n as i64);
            let equal = &s == b;
            all_equal &= equal;
            json!({ "n": n, "symbolic": to_exact_string(&s), "brute": to_exact_string(b), "equal": equal })
        })
        .collect();
    let mut doc = doc;
    doc.checks = vec![
        CheckLine::new(
            "degree-law",
            "deg P = sum of k^2 over the Jordan blocks",
            res.degree == res.profile_degree,
            true,
            format!("{} = {}", res.degree, res.profile_degree),
        ),
        CheckLine::new(
            "positivity",
            "leading coefficient > 0",
            is_positive(&res.leading_coeff),
            true,
            to_exact_string(&res.leading_coeff),
        ),
        CheckLine::new(
            "oracle",
            "P(n) equals the literal sum determinant",
            all_equal,
            true,
            format!("n = 1..={samples}"),
        ),
    ];
    let mut result = json!({
        "unipotent_order": order,
        "h": match h { HChoice::Identity => "identity", HChoice::Random => "random" },
        "h_matrix": matrix_strings(hm.matrix()),
        "power_sum": to_value(&res),
        "samples": sample_rows,
    });
    if order > 1 {
        result["iterate"] = to_value(&matrix_strings(&a));
    }
    doc.result = Some(result);
    let mut summary = vec![format!("powersum {}: P(n) = {}", label(input), res.poly)];
    if order > 1 {
        summary.push(format!("computed for the unipotent iterate M^{order}"));
    }
    summary.push(format!("degree {}, leading coefficient {}", res.degree, res.leading_coeff));
    Outcome::finish(doc, summary)
}

pub fn growth(input: &InputDocument, degrees: &[usize], exec: Exec) -> Outcome {
    let doc = start("growth", input);
    let m = &input.matrix;
    let verdict = quasi_unipotency(m);
    let Some(order) = verdict.order else {
        return Outcome::failed(doc, &Error::NotQuasiUnipotent);
    };
    let exps = match growth_exponents(m, degrees, exec) {
        Ok(e) => e,
        Err(e) => return Outcome::failed(doc, &e),
    };
    let mut doc = doc;
    doc.result = Some(json!({ "unipotent_order": order, "exponents": to_value(&exps) }));
    let list: Vec<String> = exps.iter().map(|(r, e)| format!("H^{r}: {e}")).collect();
    Outcome::finish(doc, vec![format!("growth {}: {}", label(input), list.join(", "))])
}

pub fn model(input: &InputDocument, form: FormChoice, seed: u64, exec: Exec) -> Outcome {
    let doc = start("model", input);
    let m = &input.matrix;
    if !m.dim().is_multiple_of(2) {
        return Outcome::failed(doc, &Error::OddDimension(m.dim()));
    }
    let g = m.dim() / 2;
    if !quasi_unipotency(m).is_quasi_unipotent {
        return Outcome::failed(doc, &Error::NotQuasiUnipotent);
    }
    let (order, a) = match unipotent_power(m) {
        Ok(x) => x,
        Err(e) => return Outcome::failed(doc, &e),
    };
    let h = match form {
        FormChoice::Standard => standard_form(g),
        FormChoice::Random => two_form(&mut rng(seed), g),
    };
    let res = match plov_via_model(&a, &h) {
        Ok(r) => r,
        Err(e) => return Outcome::failed(doc, &e),
    };
    let scan = match vanishing_scan_with(&a, &h, exec) {
        Ok(s) => s,
        Err(e) => return Outcome::failed(doc, &e),
    };
    let mut doc = doc;
    doc.checks = vec![
        CheckLine::new(
            "model-ceiling",
            "deg of Delta_n^g <= plov",
            res.within_bound,
            true,
            format!("{} <= {}", res.degree, res.plov),
        ),
        CheckLine::new(
            "model-equality",
            "deg of Delta_n^g = plov (expected for ample H)",
            res.equality,
            false,
            format!("{} vs {}", res.degree, res.plov),
        ),
        CheckLine::new(
            "vanishing",
            "N^i1 H ... N^ig H = 0 whenever i1 + ... + ig > g*kf/2",
            scan.violations == 0,
            true,
            format!("{} tuples above threshold, {} nonzero", scan.entries.len(), scan.violations),
        ),
    ];
    let mut result = json!({
        "unipotent_order": order,
        "form_kind": match form { FormChoice::Standard => "standard", FormChoice::Random => "random" },
        "form": to_value(&h),
        "model": to_value(&res),
        "scan": to_value(&scan),
    });
    if order > 1 {
        result["iterate"] = to_value(&matrix_strings(&a));
    }
    doc.result = Some(result);
    let summary = vec![
        format!(
            "model {}: deg Delta_n^g = {}, plov {}, equality {}",
            label(input),
            res.degree,
            res.plov,
            res.equality
        ),
        format!("vanishing scan: kf {}, {} tuples, {} violations", scan.kf, scan.entries.len(), scan.violations),
    ];
    Outcome::finish(doc, summary)
}
