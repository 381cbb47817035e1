//! An exterior-algebra model of the cohomology of an abelian variety of
//! dimension `g`: classes in `H²` are alternating 2-forms on a `2g`-space,
//! pullback is the induced action on `∧²`, and intersection numbers are top
//! wedge coefficients against `e₁ ∧ … ∧ e_{2g}`.
//!
//! Pullback acts covariantly on the basis: `e_a ∧ e_b ↦ M e_a ∧ M e_b`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::algebra::{RatMatrix, Rational, UniPoly, Var};
use crate::error::{Error, Result};
use crate::jordan::{half_profile, jordan_profile, pseudo_analytic_check};
use crate::plov::plov_of;
use crate::{serde_exact, Exec};

pub trait FormCoeff:
    Clone
    + PartialEq
    + Zero
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> FormCoeff for T where
    T: Clone
        + PartialEq
        + Zero
        + Send
        + Sync
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// A 2-form `Σ c_{ij} e_i ∧ e_j` over `1 ≤ i < j ≤ 2g`. Zero coefficients
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form2<T> {
    genus: usize,
    coeffs: BTreeMap<(usize, usize), T>,
}

pub type TwoForm = Form2<Rational>;
/// 2-form with coefficients polynomial in `n`.
pub type TwoFormPoly = Form2<UniPoly>;

impl<T: FormCoeff> Form2<T> {
    pub fn zero(genus: usize) -> Self {
        Form2 { genus, coeffs: BTreeMap::new() }
    }

    pub fn from_terms(genus: usize, terms: impl IntoIterator<Item = ((usize, usize), T)>) -> Result<Self> {
        let mut f = Self::zero(genus);
        for ((i, j), c) in terms {
            f.add_term(i, j, c)?;
        }
        Ok(f)
    }

    /// Adds `c · e_i ∧ e_j` (any order of `i ≠ j`; `e_j ∧ e_i = -e_i ∧ e_j`).
    pub fn add_term(&mut self, i: usize, j: usize, c: T) -> Result<()> {
        let dim = 2 * self.genus;
        if i == j || i == 0 || j == 0 || i > dim || j > dim {
            return Err(Error::BadIndexPair(i, j));
        }
        let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
        let sum = match self.coeffs.remove(&key) {
            Some(old) => old + c,
            None => c,
        };
        if !sum.is_zero() {
            self.coeffs.insert(key, sum);
        }
        Ok(())
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn coeff(&self, i: usize, j: usize) -> T {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &T)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn combine(&self, other: &Self, sign: bool) -> Self {
        assert_eq!(self.genus, other.genus, "forms live on different genera");
        let mut out = self.clone();
        for (&(i, j), c) in &other.coeffs {
            let c = if sign { c.clone() } else { -c.clone() };
            out.add_term(i, j, c).expect("indices already validated");
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, true)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, false)
    }

    fn masks(&self) -> Vec<(u64, T)> {
        self.coeffs
            .iter()
            .map(|(&(i, j), c)| ((1u64 << (i - 1)) | (1u64 << (j - 1)), c.clone()))
            .collect()
    }
}

impl TwoForm {
    pub fn scale(&self, c: &Rational) -> Self {
        let terms = self.coeffs.iter().map(|(&k, v)| (k, v * c));
        Self::from_terms(self.genus, terms).expect("indices already validated")
    }
}

impl TwoFormPoly {
    /// Value at an integer `n₀`.
    pub fn eval_int(&self, n0: i64) -> TwoForm {
        let terms = self.coeffs.iter().map(|(&k, p)| (k, p.eval_int(n0)));
        TwoForm::from_terms(self.genus, terms).expect("indices already validated")
    }
}

impl<T: FormCoeff + std::fmt::Display> std::fmt::Display for Form2<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (idx, ((i, j), c)) in self.coeffs.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*e{i}^e{j}")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermRepr<'a> {
    i: usize,
    j: usize,
    #[serde(with = "serde_exact::rational")]
    coeff: &'a Rational,
}

impl Serialize for TwoForm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for (&(i, j), coeff) in &self.coeffs {
            seq.serialize_element(&TermRepr { i, j, coeff })?;
        }
        seq.end()
    }
}

/// `Σ_{j=1}^{g} e_j ∧ e_{g+j}`, pairing coordinate `j` of `J` with its copy
/// in `J ⊕ J`.
pub fn standard_form(genus: usize) -> TwoForm {
    let terms = (1..=genus).map(|j| ((j, genus + j), Rational::from_integer(1.into())));
    TwoForm::from_terms(genus, terms).expect("standard indices are valid")
}

/// `e_i ∧ e_j ↦ M e_i ∧ M e_j`: the coefficient of `e_a ∧ e_b` in the image
/// is `M_ai M_bj - M_bi M_aj`.
pub fn pullback2(m: &RatMatrix, omega: &TwoForm) -> Result<TwoForm> {
    let dim = 2 * omega.genus;
    if m.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: m.dim() });
    }
    let mut out = TwoForm::zero(omega.genus);
    for (&(i, j), c) in &omega.coeffs {
        let (i, j) = (i - 1, j - 1);
        for a in 0..dim {
            for b in a + 1..dim {
                let minor = m.get(a, i) * m.get(b, j) - m.get(b, i) * m.get(a, j);
                if !minor.is_zero() {
                    out.add_term(a + 1, b + 1, minor * c)?;
                }
            }
        }
    }
    Ok(out)
}

/// `[H, NH, N²H, …]` up to the last nonzero term, `N = pullback2(M, ·) - id`.
pub fn nilpotent_orbit(m: &RatMatrix, h: &TwoForm) -> Result<Vec<TwoForm>> {
    if !m.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    let mut orbit = Vec::new();
    let mut cur = h.clone();
    while !cur.is_zero() {
        let next = pullback2(m, &cur)?.sub(&cur);
        orbit.push(cur);
        cur = next;
    }
    Ok(orbit)
}

/// `Δ_n = Σ_{i=0}^{kf} C(n, i+1) N^i H`, with `kf` the largest `i` such
/// that `N^i H ≠ 0`. At integer `n₀`, `Δ_{n₀} = Σ_{m<n₀} pullback2(M^m, H)`.
pub fn delta_n(m: &RatMatrix, h: &TwoForm) -> Result<TwoFormPoly> {
    if h.is_zero() {
        return Err(Error::ZeroForm);
    }
    let orbit = nilpotent_orbit(m, h)?;
    let mut out = TwoFormPoly::zero(h.genus);
    for (i, form) in orbit.iter().enumerate() {
        let basis = UniPoly::binomial_basis(i + 1, Var::N);
        for (&(a, b), c) in &form.coeffs {
            out.add_term(a, b, basis.scale(c))?;
        }
    }
    Ok(out)
}

/// Coefficient of `e₁ ∧ … ∧ e_{2g}` in `ω₁ ∧ … ∧ ω_g`.
pub fn top_wedge<T: FormCoeff>(forms: &[&Form2<T>]) -> Result<T> {
    let Some(first) = forms.first() else {
        return Err(Error::ArityMismatch { expected: 1, found: 0 });
    };
    let g = first.genus;
    if forms.len() != g {
        return Err(Error::ArityMismatch { expected: g, found: forms.len() });
    }
    if let Some(f) = forms.iter().find(|f| f.genus != g) {
        return Err(Error::DimensionMismatch { expected: 2 * g, found: 2 * f.genus });
    }
    let mut acc: BTreeMap<u64, T> = first.masks().into_iter().collect();
    for f in &forms[1..] {
        let terms = f.masks();
        let mut next: BTreeMap<u64, T> = BTreeMap::new();
        for (&mask, c) in &acc {
            for (pair, d) in &terms {
                if mask & pair != 0 {
                    continue;
                }
                let lo = pair.trailing_zeros();
                let hi = 63 - pair.leading_zeros();
                // e_S ∧ e_lo ∧ e_hi: each index moves left past the larger elements of S
                let swaps = (mask >> lo).count_ones() + (mask >> hi).count_ones();
                let term = c.clone() * d.clone();
                let term = if swaps % 2 == 0 { term } else { -term };
                let slot = next.entry(mask | pair).or_insert_with(T::zero);
                *slot = slot.clone() + term;
            }
        }
        next.retain(|_, v| !v.is_zero());
        acc = next;
    }
    let full = if g == 0 { 0 } else { (1u64 << (2 * g)) - 1 };
    Ok(acc.remove(&full).unwrap_or_else(T::zero))
}

/// Top wedge of `g` polynomial classes, as a polynomial in `n`.
pub fn intersection_poly(classes: &[TwoFormPoly]) -> Result<UniPoly> {
    let refs: Vec<&TwoFormPoly> = classes.iter().collect();
    top_wedge(&refs).map(|p| p.with_var(Var::N))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelPlov {
    /// Degree in `n` of `Δ_n^g`.
    pub degree: usize,
    #[serde(with = "serde_exact::poly")]
    pub intersection: UniPoly,
    /// `Σ count · k²` over the half-profile.
    pub plov: usize,
    pub equality: bool,
    pub within_bound: bool,
}

pub fn plov_via_model(m: &RatMatrix, h: &TwoForm) -> Result<ModelPlov> {
    if !m.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    let profile = jordan_profile(m)?;
    if !pseudo_analytic_check(&profile) {
        return Err(Error::NotPseudoAnalytic("unipotent profile has an odd block count".into()));
    }
    let plov = plov_of(&half_profile(&profile)?);
    let delta = delta_n(m, h)?;
    let copies = vec![delta; h.genus];
    let intersection = intersection_poly(&copies)?;
    let degree = intersection.degree().ok_or(Error::DegenerateForm)?;
    Ok(ModelPlov { degree, intersection, plov, equality: degree == plov, within_bound: degree <= plov })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanEntry {
    pub tuple: Vec<usize>,
    #[serde(with = "serde_exact::rational")]
    pub value: Rational,
    pub vanishes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub genus: usize,
    pub kf: usize,
    pub tuples_examined: usize,
    /// Tuples with `2 Σ i_j > g · kf`, in lexicographic order.
    pub entries: Vec<ScanEntry>,
    pub violations: usize,
}

pub fn vanishing_scan(m: &RatMatrix, h: &TwoForm) -> Result<VanishingReport> {
    vanishing_scan_with(m, h, Exec::default())
}

/// Evaluates `N^{i₁}H ∧ … ∧ N^{i_g}H` for every tuple `0 ≤ i_j ≤ kf` above the
/// threshold `Σ i_j > g · kf / 2`.
pub fn vanishing_scan_with(m: &RatMatrix, h: &TwoForm, exec: Exec) -> Result<VanishingReport> {
    if h.is_zero() {
        return Err(Error::ZeroForm);
    }
    let orbit = nilpotent_orbit(m, h)?;
    let g = h.genus;
    let kf = orbit.len() - 1;
    let mut tuples = Vec::new();
    let mut total = 0;
    let mut cur = vec![0usize; g];
    loop {
        total += 1;
        if 2 * cur.iter().sum::<usize>() > g * kf {
            tuples.push(cur.clone());
        }
        let Some(pos) = (0..g).rev().find(|&p| cur[p] < kf) else {
            break;
        };
        cur[pos] += 1;
        for c in &mut cur[pos + 1..] {
            *c = 0;
        }
    }
    let values = exec.map(&tuples, |t| {
        let forms: Vec<&TwoForm> = t.iter().map(|&i| &orbit[i]).collect();
        top_wedge(&forms)
    });
    let mut entries = Vec::with_capacity(tuples.len());
    for (tuple, value) in tuples.into_iter().zip(values) {
        let value = value?;
        entries.push(ScanEntry { tuple, vanishes: value.is_zero(), value });
    }
    let violations = entries.iter().filter(|e| !e.vanishes).count();
    Ok(VanishingReport { genus: g, kf, tuples_examined: total, entries, violations })
}
