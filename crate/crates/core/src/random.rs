//! Seeded generators for property tests and the self-test suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{int, RatMatrix, Rational};
use crate::cohomology::TwoForm;
use crate::cyclotomic::cyclotomic_poly;
use crate::powersum::SpdMatrix;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `(S, S⁻¹)` for a random integer `S` with `det S = ±1`, built from
/// elementary row operations with multipliers in `[-2, 2]`, a permutation
/// and sign flips.
pub fn unimodular(rng: &mut TestRng, dim: usize) -> (RatMatrix, RatMatrix) {
    let mut s = RatMatrix::identity(dim);
    let mut s_inv = RatMatrix::identity(dim);
    if dim == 1 {
        if rng.gen_bool(0.5) {
            s = s.scale(&int(-1));
            s_inv = s.clone();
        }
        return (s, s_inv);
    }
    for _ in 0..2 * dim {
        let i = rng.gen_range(0..dim);
        let mut j = rng.gen_range(0..dim - 1);
        if j >= i {
            j += 1;
        }
        let c = *[-2i64, -1, 1, 2].choose(rng).unwrap();
        let mut e = RatMatrix::identity(dim);
        e.set(i, j, int(c));
        let mut e_inv = RatMatrix::identity(dim);
        e_inv.set(i, j, int(-c));
        s = &e * &s;
        s_inv = &s_inv * &e_inv;
    }
    let mut perm: Vec<usize> = (0..dim).collect();
    perm.shuffle(rng);
    let signs: Vec<i64> = (0..dim).map(|_| if rng.gen_bool(0.5) { -1 } else { 1 }).collect();
    // P e_j = sign_j e_{perm_j}, P⁻¹ = Pᵀ
    let p = RatMatrix::from_fn(dim, |r, c| if perm[c] == r { int(signs[c]) } else { int(0) });
    let p_inv = p.transpose();
    (&p * &s, &s_inv * &p_inv)
}

/// `S · M · S⁻¹` for a random unimodular `S`.
pub fn conjugate(rng: &mut TestRng, m: &RatMatrix) -> RatMatrix {
    let (s, s_inv) = unimodular(rng, m.dim());
    m.conjugate_by(&s, &s_inv)
}

pub fn integer_matrix(rng: &mut TestRng, dim: usize, bound: i64) -> RatMatrix {
    RatMatrix::from_fn(dim, |_, _| int(rng.gen_range(-bound..=bound)))
}

/// `GᵀG + I` with `G` an integer matrix, entries in `[-2, 2]`.
pub fn spd(rng: &mut TestRng, dim: usize) -> SpdMatrix {
    let g = integer_matrix(rng, dim, 2);
    let h = &(&g.transpose() * &g) + &RatMatrix::identity(dim);
    SpdMatrix::new(h).expect("GᵀG + I is positive definite")
}

/// Random composition of `total` into parts of size at most `max_part`.
pub fn partition(rng: &mut TestRng, total: usize, max_part: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = total;
    while left > 0 {
        let k = rng.gen_range(1..=left.min(max_part));
        parts.push(k);
        left -= k;
    }
    parts
}

pub fn unipotent_block_sum(sizes: &[usize]) -> RatMatrix {
    let blocks: Vec<RatMatrix> = sizes.iter().map(|&k| RatMatrix::jordan_block(int(1), k)).collect();
    RatMatrix::direct_sum(&blocks)
}

/// Random quasi-unipotent block sum of dimension `dim`: blocks `J_{±1,k}` and
/// companions of `Φ_n^k` for `n ∈ {3, 4, 6}`.
pub fn quasi_unipotent_block_sum(rng: &mut TestRng, dim: usize, max_block: usize) -> RatMatrix {
    let mut blocks = Vec::new();
    let mut left = dim;
    while left > 0 {
        if left >= 2 && rng.gen_bool(0.3) {
            let k = rng.gen_range(1..=(left / 2).min(max_block.div_ceil(2)).max(1));
            let n = *[3u64, 4, 6].choose(rng).unwrap();
            blocks.push(RatMatrix::companion(&cyclotomic_poly(n).pow(k as u32)));
            left -= 2 * k;
        } else {
            let k = rng.gen_range(1..=left.min(max_block));
            let lambda = if rng.gen_bool(0.7) { 1 } else { -1 };
            blocks.push(RatMatrix::jordan_block(int(lambda), k));
            left -= k;
        }
    }
    RatMatrix::direct_sum(&blocks)
}

/// A unipotent matrix with Jordan sizes `sizes`, conjugated by a random
/// unimodular matrix.
pub fn conjugated_unipotent(rng: &mut TestRng, sizes: &[usize]) -> RatMatrix {
    conjugate(rng, &unipotent_block_sum(sizes))
}

/// `J ⊕ J` for `J = ⊕ J_{1,k}` with random sizes summing to `genus`, in the
/// paired coordinates where [`crate::cohomology::standard_form`] applies.
pub fn paired_unipotent(rng: &mut TestRng, genus: usize, max_block: usize) -> (Vec<usize>, RatMatrix) {
    let sizes = partition(rng, genus, max_block);
    let j = unipotent_block_sum(&sizes);
    (sizes, RatMatrix::direct_sum(&[j.clone(), j]))
}

/// Nonzero random 2-form with coefficients in `[-3, 3]`.
pub fn two_form(rng: &mut TestRng, genus: usize) -> TwoForm {
    loop {
        let mut f = TwoForm::zero(genus);
        for i in 1..=2 * genus {
            for j in i + 1..=2 * genus {
                let c = rng.gen_range(-3i64..=3);
                if c != 0 {
                    f.add_term(i, j, Rational::from_integer(c.into())).expect("valid indices");
                }
            }
        }
        if !f.is_zero() {
            return f;
        }
    }
}
