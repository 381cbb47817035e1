//! Jordan structure of quasi-unipotent rational matrices.
//!
//! Eigenvalues are tracked only by their multiplicative order `n`: over ℚ the
//! primitive `n`-th roots are Galois conjugate and carry identical block
//! structure. For each cyclotomic factor, `B = Φ_n(M)` is nilpotent on the
//! generalized eigenspaces of the primitive `n`-th roots and invertible
//! elsewhere, so `rank B^{j-1} - rank B^j = φ(n) · #{blocks of size ≥ j}`.

use serde::{Deserialize, Serialize};

use crate::algebra::RatMatrix;
use crate::cyclotomic::{cyclotomic_poly, euler_phi, quasi_unipotency, QuasiUnipotencyVerdict};
use crate::error::{Error, Result};

/// `mult` blocks of size `size` at each primitive `order`-th root of unity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct JordanEntry {
    pub order: u64,
    pub size: usize,
    pub mult: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct JordanProfile {
    pub dimension: usize,
    /// Sorted by `(order, size)`; keys are distinct.
    pub entries: Vec<JordanEntry>,
}

impl JordanProfile {
    /// Validates `Σ φ(n)·k·m = dimension` and key uniqueness, then sorts.
    pub fn new(dimension: usize, mut entries: Vec<JordanEntry>) -> Result<Self> {
        entries.retain(|e| e.mult > 0);
        entries.sort();
        if entries.windows(2).any(|w| (w[0].order, w[0].size) == (w[1].order, w[1].size)) {
            return Err(Error::InternalCrossCheck("duplicate (order, size) in Jordan profile".into()));
        }
        let total: usize = entries
            .iter()
            .map(|e| euler_phi(e.order) as usize * e.size * e.mult)
            .sum();
        if total != dimension {
            return Err(Error::DimensionMismatch { expected: dimension, found: total });
        }
        Ok(JordanProfile { dimension, entries })
    }

    pub fn max_block_size(&self) -> usize {
        self.entries.iter().map(|e| e.size).max().unwrap_or(0)
    }

    /// Every Jordan block over ℂ as a size, largest first.
    pub fn all_block_sizes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for e in &self.entries {
            out.extend(std::iter::repeat_n(e.size, euler_phi(e.order) as usize * e.mult));
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// `Σ k²` over every Jordan block over ℂ.
    pub fn sum_of_squared_sizes(&self) -> usize {
        self.entries
            .iter()
            .map(|e| euler_phi(e.order) as usize * e.mult * e.size * e.size)
            .sum()
    }

    pub fn is_unipotent(&self) -> bool {
        self.entries.iter().all(|e| e.order == 1)
    }
}

/// One summand type of the half `J` in `J ⊕ J̄`: `count` blocks of `size`
/// whose eigenvalues have multiplicative order `order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfEntry {
    pub order: u64,
    pub size: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfProfile {
    pub entries: Vec<HalfEntry>,
    /// `Σ size · count`, half the ambient dimension.
    pub genus: usize,
}

impl HalfProfile {
    pub fn max_block_size(&self) -> usize {
        self.entries.iter().map(|e| e.size).max().unwrap_or(0)
    }

    /// Block sizes of `J`, largest first.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for e in &self.entries {
            out.extend(std::iter::repeat_n(e.size, e.count));
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Reassembles the full profile of `J ⊕ J̄`.
    pub fn double(&self) -> Result<JordanProfile> {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                let mult = if e.order <= 2 {
                    2 * e.count
                } else {
                    let phi = euler_phi(e.order) as usize;
                    if (2 * e.count) % phi != 0 {
                        return Err(Error::InternalCrossCheck(format!(
                            "half count {} at order {} is not a multiple of φ/2",
                            e.count, e.order
                        )));
                    }
                    2 * e.count / phi
                };
                Ok(JordanEntry { order: e.order, size: e.size, mult })
            })
            .collect::<Result<Vec<_>>>()?;
        JordanProfile::new(2 * self.genus, entries)
    }
}

pub fn jordan_profile(m: &RatMatrix) -> Result<JordanProfile> {
    jordan_profile_with(m, &quasi_unipotency(m))
}

/// As [`jordan_profile`] with a verdict already in hand.
pub fn jordan_profile_with(m: &RatMatrix, verdict: &QuasiUnipotencyVerdict) -> Result<JordanProfile> {
    let factors = verdict
        .cyclotomic_factorization
        .as_ref()
        .ok_or(Error::NotQuasiUnipotent)?;
    let k = m.dim();
    let mut entries = Vec::new();
    for f in factors {
        let phi = euler_phi(f.order) as usize;
        let b = m.eval_poly(&cyclotomic_poly(f.order));
        let target = k - phi * f.multiplicity;
        let mut ranks = vec![k];
        let mut power = b.clone();
        loop {
            let r = power.rank();
            let prev = *ranks.last().unwrap();
            if r == prev {
                break;
            }
            ranks.push(r);
            if r == target {
                break;
            }
            power = &power * &b;
        }
        if *ranks.last().unwrap() != target {
            return Err(Error::InternalCrossCheck(format!(
                "rank of Φ_{}(M)^j stalled at {} instead of {target}",
                f.order,
                ranks.last().unwrap()
            )));
        }
        // at_least[j] = number of blocks of size ≥ j + 1 at one primitive root
        let mut at_least = Vec::new();
        for w in ranks.windows(2) {
            let drop = w[0] - w[1];
            if drop % phi != 0 {
                return Err(Error::InternalCrossCheck(format!(
                    "rank drop {drop} not divisible by φ({}) = {phi}",
                    f.order
                )));
            }
            at_least.push(drop / phi);
        }
        for (j, &c) in at_least.iter().enumerate() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            if c < next {
                return Err(Error::InternalCrossCheck("block counts are not monotone".into()));
            }
            if c > next {
                entries.push(JordanEntry { order: f.order, size: j + 1, mult: c - next });
            }
        }
    }
    JordanProfile::new(k, entries)
}

/// Whether the profile splits as `J ⊕ J̄`: blocks at the real eigenvalues
/// `±1` must come in pairs. Non-real primitive roots pair with their complex
/// conjugates automatically.
pub fn pseudo_analytic_check(p: &JordanProfile) -> bool {
    p.entries.iter().all(|e| e.order > 2 || e.mult % 2 == 0)
}

/// The half `J` of `J ⊕ J̄`.
pub fn half_profile(p: &JordanProfile) -> Result<HalfProfile> {
    if !p.dimension.is_multiple_of(2) {
        return Err(Error::NotPseudoAnalytic(format!("odd dimension {}", p.dimension)));
    }
    if let Some(e) = p.entries.iter().find(|e| e.order <= 2 && e.mult % 2 != 0) {
        return Err(Error::NotPseudoAnalytic(format!(
            "eigenvalue {} has {} block(s) of size {}",
            if e.order == 1 { "1" } else { "-1" },
            e.mult,
            e.size
        )));
    }
    let entries: Vec<HalfEntry> = p
        .entries
        .iter()
        .map(|e| HalfEntry {
            order: e.order,
            size: e.size,
            count: if e.order <= 2 { e.mult / 2 } else { e.mult * euler_phi(e.order) as usize / 2 },
        })
        .collect();
    let genus = entries.iter().map(|e| e.size * e.count).sum();
    if 2 * genus != p.dimension {
        return Err(Error::InternalCrossCheck(format!(
            "half profile has genus {genus} for dimension {}",
            p.dimension
        )));
    }
    Ok(HalfProfile { entries, genus })
}
