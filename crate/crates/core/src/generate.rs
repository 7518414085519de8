//! Deterministic corpus generator: zero-product pairs with random hermitian
//! forms, T*-extension symmetric algebras complexified into pairs, and
//! random towers of double extensions over abelian bases. Every output is
//! fully validated before it leaves the generator; invalid draws are
//! rejection-sampled away, so the stream is deterministic in the seed.

use crate::apk::ApkPair;
use crate::assoc::AssocAlgebra;
use crate::error::{Error, Result};
use crate::exactlin::{unit_vec, CMat, HermitianGram, RMat};
use crate::extension::{
    double_extend, find_reduction_vector, tower, validate_extension_data, DoubleExtensionData,
};
use crate::format::{ApkPairDoc, Document};
use crate::liereal::{complexify_pair, RealAlgebra, RealSymmetricAlgebra};
use crate::scalar::{rat_int, CRat, Rat};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

#[derive(Clone, Copy, PartialEq, Debug)]
pub enum CorpusKind {
    Abelian,
    Tstar,
    Tower,
}

impl CorpusKind {
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "abelian" => Some(CorpusKind::Abelian),
            "tstar" => Some(CorpusKind::Tstar),
            "tower" => Some(CorpusKind::Tower),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CorpusKind::Abelian => "abelian",
            CorpusKind::Tstar => "tstar",
            CorpusKind::Tower => "tower",
        }
    }
}

pub const MAX_DIM: usize = 12;

fn small_int(rng: &mut ChaCha20Rng, lo: i64, hi: i64) -> i64 {
    rng.random_range(lo..=hi)
}

fn small_crat(rng: &mut ChaCha20Rng) -> CRat {
    CRat::new(
        rat_int(small_int(rng, -2, 2)),
        rat_int(small_int(rng, -2, 2)),
    )
}

fn small_nonzero_crat(rng: &mut ChaCha20Rng) -> CRat {
    loop {
        let v = small_crat(rng);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Zero-product algebra with a random non-degenerate hermitian form.
pub fn abelian_pair(rng: &mut ChaCha20Rng, dim: usize) -> Result<ApkPair> {
    let algebra = AssocAlgebra::zero_algebra(dim);
    if dim == 0 {
        return ApkPair::new(algebra, HermitianGram::new(CMat::zeros(0, 0))?);
    }
    loop {
        let mut g = CMat::zeros(dim, dim);
        for r in 0..dim {
            g.set(r, r, CRat::from_int(small_int(rng, -3, 3)));
            for c in (r + 1)..dim {
                let v = small_crat(rng);
                g.set(r, c, v.clone());
                g.set(c, r, v.conj());
            }
        }
        if let Ok(gram) = HermitianGram::new(g) {
            return ApkPair::new(algebra.clone(), gram);
        }
    }
}

/// Random nilpotent commutative associative algebra: a direct sum of
/// truncated power algebras in a random basis.
pub fn random_nilpotent_algebra(rng: &mut ChaCha20Rng, dim: usize) -> Result<RealAlgebra> {
    if dim == 0 {
        return Ok(RealAlgebra::zero_algebra(0));
    }
    // partition dim into block sizes
    let mut parts = Vec::new();
    let mut left = dim;
    while left > 0 {
        let k = small_int(rng, 1, left.min(4) as i64) as usize;
        parts.push(k);
        left -= k;
    }
    let mut table = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
    let mut offset = 0;
    for k in &parts {
        // block basis t, t², ..., t^k with t^i t^j = t^{i+j} (0 past t^k)
        for i in 1..=*k {
            for j in 1..=*k {
                if i + j <= *k {
                    table[offset + i - 1][offset + j - 1][offset + i + j - 1] = Rat::one();
                }
            }
        }
        offset += k;
    }
    // random basis change with a small invertible integer matrix
    let p = loop {
        let cand = RMat::from_fn(dim, dim, |_, _| rat_int(small_int(rng, -1, 1)));
        if !cand.det().is_zero() {
            break cand;
        }
    };
    let p_inv = p.inverse().expect("determinant checked");
    let base = RealAlgebra::new(table)?;
    let mut changed = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let prod = base.mult(&p.col(i), &p.col(j));
            changed[i][j] = p_inv.mul_vec(&prod);
        }
    }
    RealAlgebra::new(changed)
}

/// T*-extension of a random nilpotent algebra N: the symmetric algebra on
/// N ⊕ N* with product (x,f)(y,g) = (xy, x∘g + y∘f) and pairing f(y) + g(x),
/// in a random basis.
pub fn random_symmetric_algebra(rng: &mut ChaCha20Rng, half_dim: usize) -> Result<RealSymmetricAlgebra> {
    let m = half_dim;
    let n = random_nilpotent_algebra(rng, m)?;
    let dim = 2 * m;
    let mut table = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
    let c = n.constants();
    for i in 0..m {
        for j in 0..m {
            // (n_i, 0)(n_j, 0) = (n_i n_j, 0)
            for k in 0..m {
                table[i][j][k] = c[i][j][k].clone();
            }
            // (n_i, 0)(0, n*_j) = (0, n_i ∘ n*_j), (n_i ∘ n*_j)(n_k) = n*_j(n_i n_k)
            for k in 0..m {
                table[i][m + j][m + k] = c[i][k][j].clone();
                table[m + j][i][m + k] = c[i][k][j].clone();
            }
        }
    }
    let b = RMat::from_fn(dim, dim, |r, c| {
        if r + m == c || c + m == r {
            Rat::one()
        } else {
            Rat::zero()
        }
    });
    let plain = RealSymmetricAlgebra::new(RealAlgebra::new(table)?, b)?;
    // random congruence keeps the symmetric-algebra axioms
    let q = loop {
        let cand = RMat::from_fn(dim, dim, |r, c| {
            if r == c {
                Rat::one()
            } else {
                rat_int(small_int(rng, 0, 1))
            }
        });
        if !cand.det().is_zero() {
            break cand;
        }
    };
    let q_inv = q.inverse().expect("determinant checked");
    let mut changed = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let prod = plain.algebra().mult(&q.col(i), &q.col(j));
            changed[i][j] = q_inv.mul_vec(&prod);
        }
    }
    let b_changed = q.transpose().mul(plain.b()).mul(&q);
    RealSymmetricAlgebra::new(RealAlgebra::new(changed)?, b_changed)
}

/// T*-extension pair: complexification of a random symmetric algebra.
pub fn tstar_pair(rng: &mut ChaCha20Rng, dim: usize) -> Result<ApkPair> {
    if dim % 2 != 0 {
        return Err(Error::Unsupported {
            message: format!("tstar pairs have even complex dimension, got {dim}"),
        });
    }
    let s = random_symmetric_algebra(rng, dim / 2)?;
    Ok(complexify_pair(&s)?.0)
}

/// The pair (ℂ, 1·1 = 1, H(1,1) = -4β); Einstein with factor β.
pub fn unital_line_pair(beta: &Rat) -> Result<ApkPair> {
    if beta.is_zero() {
        return Err(Error::precondition("Einstein factor must be nonzero"));
    }
    let algebra = AssocAlgebra::from_products(1, &[((0, 0), unit_vec(1, 0))], None)?;
    let h = CRat::from_rat(-(beta * &rat_int(4)));
    ApkPair::new(algebra, HermitianGram::new(CMat::from_fn(1, 1, |_, _| h.clone()))?)
}

/// Abelian pair with a ±1 diagonal form: `plus` positive entries, then
/// `minus` negative ones.
pub fn signature_abelian_pair(plus: usize, minus: usize) -> Result<ApkPair> {
    let dim = plus + minus;
    let g = CMat::from_fn(dim, dim, |r, c| {
        if r != c {
            CRat::zero()
        } else if r < plus {
            CRat::one()
        } else {
            -CRat::one()
        }
    });
    ApkPair::new(AssocAlgebra::zero_algebra(dim), HermitianGram::new(g)?)
}

pub use rand_chacha::ChaCha20Rng as CorpusRng;

pub fn rng_from_seed(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Valid extension data over `pair`, drawn from families that keep the
/// extension reducible: trivial data with (ε, α₀) ≠ (0, 0), and rank-one
/// nilpotent data D = w·H(-, z) on zero-product pairs with isotropic z.
pub fn random_extension_data(rng: &mut ChaCha20Rng, pair: &ApkPair) -> DoubleExtensionData {
    let n = pair.dim();
    loop {
        let family = small_int(rng, 0, 2);
        let mut data = DoubleExtensionData::trivial(n);
        match family {
            0 => {
                data.eps = small_nonzero_crat(rng);
                data.alpha0 = small_crat(rng);
            }
            1 => {
                data.alpha0 = small_nonzero_crat(rng);
            }
            _ => {
                // rank-one family on zero-product pairs
                let is_zero_product = pair
                    .algebra()
                    .table()
                    .iter()
                    .all(|row| row.iter().all(|v| v.iter().all(|x| x.is_zero())));
                if !is_zero_product || n == 0 {
                    continue;
                }
                // bounded search: definite forms have no isotropic vectors
                let mut found = None;
                for _ in 0..60 {
                    let cand: Vec<CRat> = (0..n).map(|_| small_crat(rng)).collect();
                    if cand.iter().any(|v| !v.is_zero())
                        && pair.gram().form(&cand, &cand).is_zero()
                    {
                        found = Some(cand);
                        break;
                    }
                }
                let Some(z) = found else {
                    continue;
                };
                let w: Vec<CRat> = (0..n).map(|_| small_crat(rng)).collect();
                // D x = H(x, z) w
                let mut d = CMat::zeros(n, n);
                for c in 0..n {
                    let coeff = pair.gram().form(&unit_vec(n, c), &z);
                    for r in 0..n {
                        d.set(r, c, coeff.clone() * w[r].clone());
                    }
                }
                data.d = d;
                data.eps = pair.gram().form(&w, &z);
                data.a0 = (0..n).map(|_| small_crat(rng)).collect();
                data.alpha0 = small_crat(rng);
                if data.eps.is_zero() && data.alpha0.is_zero() && data.d.is_zero() {
                    continue;
                }
            }
        }
        if let Ok(report) = validate_extension_data(pair, &data) {
            if report.is_valid() {
                return data;
            }
        }
    }
}

/// Random chain of double extensions over an abelian base; the output
/// reduces back to a base in exactly as many steps as were applied.
pub fn tower_pair(rng: &mut ChaCha20Rng, dim: usize) -> Result<ApkPair> {
    if dim < 2 {
        return Err(Error::Unsupported {
            message: format!("tower pairs need complex dimension ≥ 2, got {dim}"),
        });
    }
    'attempt: for _ in 0..200 {
        let k = small_int(rng, 1, (dim / 2) as i64) as usize;
        let base_dim = dim - 2 * k;
        let plus = small_int(rng, 0, base_dim as i64) as usize;
        let mut current = signature_abelian_pair(plus, base_dim - plus)?;
        for _ in 0..k {
            let data = random_extension_data(rng, &current);
            current = double_extend(&current, &data)?;
            if find_reduction_vector(&current)?.is_none() {
                continue 'attempt;
            }
        }
        let (_base, steps) = tower(&current)?;
        if steps.len() != k {
            continue 'attempt;
        }
        return Ok(current);
    }
    Err(Error::internal(
        "tower generation must converge",
        format!("dim {dim}"),
    ))
}

/// One corpus pair, deterministic in (seed, dim, kind).
pub fn generate_pair(seed: u64, dim: usize, kind: CorpusKind) -> Result<ApkPair> {
    if dim > MAX_DIM {
        return Err(Error::Unsupported {
            message: format!("complex dimension {dim} exceeds the supported bound {MAX_DIM}"),
        });
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    match kind {
        CorpusKind::Abelian => abelian_pair(&mut rng, dim),
        CorpusKind::Tstar => tstar_pair(&mut rng, dim),
        CorpusKind::Tower => tower_pair(&mut rng, dim),
    }
}

/// One corpus document, deterministic in (seed, dim, kind).
pub fn generate(seed: u64, dim: usize, kind: CorpusKind) -> Result<Document> {
    let pair = generate_pair(seed, dim, kind)?;
    Ok(Document::ApkPair(ApkPairDoc::from_pair(&pair)))
}
