//! Polynomial volume growth, growth exponents on exterior powers, and the
//! full analysis pipeline.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::minors::{MinorEntry, MinorPlan};
use crate::algebra::{PolyMatrix, RatMatrix, Rational};
use crate::cyclotomic::{quasi_unipotency, unipotent_power, QuasiUnipotencyVerdict};
use crate::error::{Error, Result};
use crate::jordan::{half_profile, jordan_profile, jordan_profile_with, pseudo_analytic_check};
use crate::jordan::{HalfProfile, JordanProfile};
use crate::Exec;

/// `Σ count · k²`.
pub fn plov_of(half: &HalfProfile) -> usize {
    half.entries.iter().map(|e| e.count * e.size * e.size).sum()
}

/// Degree in `n` of the fastest-growing `r × r` minor of `M^n`, taken along
/// the unipotent subsequence.
pub fn growth_exponent(m: &RatMatrix, r: usize) -> Result<usize> {
    growth_exponent_with(m, r, Exec::default())
}

pub fn growth_exponent_with(m: &RatMatrix, r: usize, exec: Exec) -> Result<usize> {
    check_degree(m.dim(), r)?;
    let (_, u) = unipotent_power(m)?;
    unipotent_exponent(&u, r, exec)
}

/// Exponents for several degrees, sharing the unipotent reduction.
pub fn growth_exponents(m: &RatMatrix, degrees: &[usize], exec: Exec) -> Result<BTreeMap<usize, usize>> {
    for &r in degrees {
        check_degree(m.dim(), r)?;
    }
    let (_, u) = unipotent_power(m)?;
    degrees
        .iter()
        .map(|&r| unipotent_exponent(&u, r, exec).map(|e| (r, e)))
        .collect()
}

fn check_degree(dim: usize, r: usize) -> Result<()> {
    if r == 0 || r > dim {
        return Err(Error::DegreeOutOfRange { degree: r, max: dim });
    }
    Ok(())
}

/// Every `r × r` minor of `U(n)` is a polynomial in `n`. By Jacobi's
/// complementary-minor identity (`det U(n) = 1`, `U(n)⁻¹ = U(-n)`) its degree
/// is at most `min(r, K - r) · d`, with `d` the largest entry degree, so that
/// many forward differences at `n = 0, 1, …` pin it down.
fn unipotent_exponent(u: &RatMatrix, r: usize, exec: Exec) -> Result<usize> {
    let k = u.dim();
    let sym = PolyMatrix::symbolic_power(u)?;
    let d = sym.max_entry_degree().unwrap_or(0);
    let bound = r.min(k - r) * d;
    if bound == 0 {
        return Ok(0);
    }
    let mut powers = Vec::with_capacity(bound + 1);
    let mut p = RatMatrix::identity(k);
    for _ in 0..=bound {
        let next = &p * u;
        powers.push(p);
        p = next;
    }
    let exponent = if powers.iter().all(RatMatrix::is_integral) {
        let nodes: Vec<Vec<Vec<BigInt>>> =
            powers.iter().map(|m| m.to_integer_rows().expect("integral")).collect();
        exponent_from_nodes(&nodes, r, exec)
    } else {
        let nodes: Vec<Vec<Vec<Rational>>> = powers.iter().map(RatMatrix::rows).collect();
        exponent_from_nodes(&nodes, r, exec)
    };
    exponent.ok_or_else(|| Error::InternalCrossCheck(format!("every {r}×{r} minor of U(n) vanishes")))
}

fn exponent_from_nodes<T: MinorEntry>(nodes: &[Vec<Vec<T>>], r: usize, exec: Exec) -> Option<usize> {
    let plan = MinorPlan::new(nodes[0].len(), r);
    let per_rows = exec.map_range(plan.subsets.len(), |row_set| {
        let samples: Vec<Vec<T>> = nodes.iter().map(|a| plan.row_minors(a, row_set)).collect();
        (0..plan.subsets.len())
            .filter_map(|c| sample_degree(samples.iter().map(|s| s[c].clone()).collect()))
            .max()
    });
    per_rows.into_iter().flatten().max()
}

/// Degree of the polynomial taking `values[x]` at `x = 0, 1, …`: the order of
/// the last nonzero forward difference at `0`. `None` for the zero polynomial.
fn sample_degree<T: MinorEntry>(mut values: Vec<T>) -> Option<usize> {
    let mut degree = None;
    for k in 0..values.len() {
        if !values[0].is_zero() {
            degree = Some(k);
        }
        for i in 0..values.len() - k - 1 {
            values[i] = values[i + 1].clone() - values[i].clone();
        }
    }
    degree
}

/// Largest Jordan block of the second compound of `M`.
pub fn max_block_compound2(m: &RatMatrix) -> Result<usize> {
    if m.dim() < 2 {
        return Err(Error::DegreeOutOfRange { degree: 2, max: m.dim() });
    }
    if !quasi_unipotency(m).is_quasi_unipotent {
        return Err(Error::NotQuasiUnipotent);
    }
    Ok(jordan_profile(&m.compound(2))?.max_block_size())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub name: String,
    pub law: String,
    pub holds: bool,
    pub detail: String,
}

impl BoundCheck {
    fn new(name: &str, law: &str, holds: bool, detail: String) -> Self {
        BoundCheck { name: name.into(), law: law.into(), holds, detail }
    }
}

/// The two readings of `max{4(k₁-2), 2(k₁+k₂-2)}` for the exponent on `H⁴`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct H4Readings {
    pub computed: usize,
    /// `k₁ ≥ k₂` the two largest blocks of `J`; only `4(k₁-2)` when `J` has
    /// a single block.
    pub half_blocks: i64,
    pub half_blocks_agree: bool,
    /// `k₁ = k₂` the two largest blocks of `J ⊕ J̄`.
    pub full_blocks: i64,
    pub full_blocks_agree: bool,
}

impl H4Readings {
    fn from_half(half: &HalfProfile, computed: usize) -> Self {
        let sizes = half.block_sizes();
        let k1 = sizes[0] as i64;
        let half_blocks = match sizes.get(1) {
            Some(&k2) => (4 * (k1 - 2)).max(2 * (k1 + k2 as i64 - 2)),
            None => 4 * (k1 - 2),
        };
        let full_blocks = (4 * (k1 - 2)).max(2 * (2 * k1 - 2));
        H4Readings {
            computed,
            half_blocks,
            half_blocks_agree: half_blocks == computed as i64,
            full_blocks,
            full_blocks_agree: full_blocks == computed as i64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub dimension: usize,
    pub genus: usize,
    pub verdict: QuasiUnipotencyVerdict,
    /// Least `N` with `M^N` unipotent; exponents refer to `M^N`.
    pub unipotent_order: u64,
    pub profile: JordanProfile,
    pub pseudo_analytic: bool,
    pub half: Option<HalfProfile>,
    pub plov: Option<usize>,
    pub kj: Option<usize>,
    pub kf: Option<usize>,
    pub max_block_n1: Option<usize>,
    pub max_block_compound2: usize,
    pub exponents: BTreeMap<usize, usize>,
    pub h4: Option<H4Readings>,
    pub bound_checks: Vec<BoundCheck>,
}

impl AnalysisReport {
    pub fn all_bounds_hold(&self) -> bool {
        self.bound_checks.iter().all(|c| c.holds)
    }
}

#[derive(Debug, Clone, Default)]
pub struct AnalysisOptions {
    /// Exponent degrees; `1..=2g` when `None`.
    pub degrees: Option<Vec<usize>>,
    pub exec: Exec,
}

pub fn analyze(m: &RatMatrix) -> Result<AnalysisReport> {
    analyze_with(m, &AnalysisOptions::default())
}

/// Runs the pipeline on a `2g × 2g` matrix. A quasi-unipotent input that is
/// not pseudo-analytic still yields a report, with the half-profile data and
/// `plov` absent.
pub fn analyze_with(m: &RatMatrix, opts: &AnalysisOptions) -> Result<AnalysisReport> {
    let dim = m.dim();
    if !dim.is_multiple_of(2) {
        return Err(Error::OddDimension(dim));
    }
    let g = dim / 2;
    let verdict = quasi_unipotency(m);
    if !verdict.is_quasi_unipotent {
        return Err(Error::NotQuasiUnipotent);
    }
    let profile = jordan_profile_with(m, &verdict)?;
    let pseudo_analytic = pseudo_analytic_check(&profile);
    let degrees: Vec<usize> = opts.degrees.clone().unwrap_or_else(|| (1..=dim).collect());
    let exponents = growth_exponents(m, &degrees, opts.exec)?;
    let unipotent_order = verdict.order.expect("quasi-unipotent verdict carries an order");
    let max_block_compound2 = max_block_compound2(m)?;

    let mut report = AnalysisReport {
        dimension: dim,
        genus: g,
        verdict,
        unipotent_order,
        profile,
        pseudo_analytic,
        half: None,
        plov: None,
        kj: None,
        kf: None,
        max_block_n1: None,
        max_block_compound2,
        exponents,
        h4: None,
        bound_checks: Vec::new(),
    };
    if !pseudo_analytic {
        return Ok(report);
    }

    let half = half_profile(&report.profile)?;
    let plov = plov_of(&half);
    let kj = half.max_block_size() - 1;
    let kf = 2 * kj;
    let mut checks = vec![
        BoundCheck::new(
            "B1",
            "plov <= g + g*kf/2",
            plov <= g + g * kf / 2,
            format!("{plov} <= {}", g + g * kf / 2),
        ),
        BoundCheck::new(
            "B2",
            "kf = 2 implies plov <= 2*floor(g/2) + g",
            kf != 2 || plov <= 2 * (g / 2) + g,
            if kf == 2 { format!("{plov} <= {}", 2 * (g / 2) + g) } else { format!("kf = {kf}, vacuous") },
        ),
    ];
    for r in 1..=g {
        if let Some(&e) = report.exponents.get(&(2 * r)) {
            let b = 2 * r * (g - r);
            checks.push(BoundCheck::new(
                &format!("B3[{}]", 2 * r),
                "exponent on H^(2r) <= 2r(g-r)",
                e <= b,
                format!("{e} <= {b}"),
            ));
        }
        if let Some(&e) = report.exponents.get(&(2 * r - 1)) {
            let b = r * (g - r) + (r - 1) * (g - r + 1);
            checks.push(BoundCheck::new(
                &format!("B3[{}]", 2 * r - 1),
                "exponent on H^(2r-1) <= r(g-r) + (r-1)(g-r+1)",
                e <= b,
                format!("{e} <= {b}"),
            ));
        }
    }
    checks.push(BoundCheck::new(
        "B4",
        "max Jordan block on H^2 = 2*kJ + 1",
        max_block_compound2 == 2 * kj + 1,
        format!("{max_block_compound2} = {}", 2 * kj + 1),
    ));
    if let Some(&e2) = report.exponents.get(&2) {
        checks.push(BoundCheck::new(
            "D2",
            "exponent on H^2 = 2*kJ",
            e2 == kf,
            format!("{e2} = {kf}"),
        ));
    }
    checks.push(BoundCheck::new(
        "P",
        "g <= plov <= g^2",
        g <= plov && plov <= g * g,
        format!("{g} <= {plov} <= {}", g * g),
    ));
    report.h4 = report.exponents.get(&4).map(|&e| H4Readings::from_half(&half, e));
    report.half = Some(half);
    report.plov = Some(plov);
    report.kj = Some(kj);
    report.kf = Some(kf);
    report.max_block_n1 = Some(2 * kj + 1);
    report.bound_checks = checks;
    Ok(report)
}
