//! Linear and sesquilinear algebra over the Gaussian rationals: operators,
//! hermitian forms, H-adjoints, real traces, signatures and subspaces.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::{CRat, Rat};
use num_traits::{One, Signed, Zero};

pub type CMat = Mat<CRat>;
pub type RMat = Mat<Rat>;

pub fn conj_mat(m: &CMat) -> CMat {
    m.map(|v| v.conj())
}

/// Conjugate transpose.
pub fn dagger(m: &CMat) -> CMat {
    conj_mat(m).transpose()
}

pub fn re_mat(m: &CMat) -> RMat {
    m.map(|v| v.re.clone())
}

pub fn im_mat(m: &CMat) -> RMat {
    m.map(|v| v.im.clone())
}

pub fn cmat_from_real(m: &RMat) -> CMat {
    m.map(|v| CRat::from_rat(v.clone()))
}

/// Real coordinates of a complex vector in the chart (e_1..e_n, i e_1..i e_n).
pub fn realify_vec(v: &[CRat]) -> Vec<Rat> {
    let mut out = Vec::with_capacity(2 * v.len());
    out.extend(v.iter().map(|z| z.re.clone()));
    out.extend(v.iter().map(|z| z.im.clone()));
    out
}

pub fn complexify_vec(v: &[Rat]) -> Vec<CRat> {
    let n = v.len() / 2;
    assert_eq!(v.len(), 2 * n);
    (0..n)
        .map(|k| CRat::new(v[k].clone(), v[n + k].clone()))
        .collect()
}

/// A ℂ-linear operator acting by `v ↦ M·v`.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearOperator {
    pub mat: CMat,
}

/// A semilinear operator acting by `v ↦ M·conj(v)`: conjugate the
/// coordinates, then multiply. τ(αv) = ᾱτ(v) holds by construction.
#[derive(Clone, PartialEq, Debug)]
pub struct SemilinearOperator {
    pub mat: CMat,
}

impl LinearOperator {
    pub fn new(mat: CMat) -> Self {
        assert!(mat.is_square(), "operators are square");
        LinearOperator { mat }
    }

    pub fn identity(n: usize) -> Self {
        Self::new(CMat::identity(n))
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn apply(&self, v: &[CRat]) -> Vec<CRat> {
        self.mat.mul_vec(v)
    }

    /// self ∘ other, a linear operator.
    pub fn compose(&self, other: &LinearOperator) -> LinearOperator {
        LinearOperator::new(self.mat.mul(&other.mat))
    }

    /// self ∘ τ, a semilinear operator with matrix `M_self · M_τ`.
    pub fn compose_semi(&self, tau: &SemilinearOperator) -> SemilinearOperator {
        SemilinearOperator::new(self.mat.mul(&tau.mat))
    }

    /// Trace of the underlying ℝ-linear map on the realified space: 2·Re(tr M).
    pub fn real_trace(&self) -> Rat {
        let t = self.mat.trace();
        &t.re + &t.re
    }

    /// The 2n×2n real matrix of the operator in the canonical real chart.
    pub fn realify(&self) -> RMat {
        let a = re_mat(&self.mat);
        let b = im_mat(&self.mat);
        a.hstack(&b.neg()).vstack(&b.hstack(&a))
    }
}

impl SemilinearOperator {
    pub fn new(mat: CMat) -> Self {
        assert!(mat.is_square(), "operators are square");
        SemilinearOperator { mat }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(CMat::zeros(n, n))
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn apply(&self, v: &[CRat]) -> Vec<CRat> {
        let cv: Vec<CRat> = v.iter().map(|z| z.conj()).collect();
        self.mat.mul_vec(&cv)
    }

    /// τ ∘ F, semilinear with matrix `M_τ · conj(M_F)`.
    pub fn compose_linear(&self, f: &LinearOperator) -> SemilinearOperator {
        SemilinearOperator::new(self.mat.mul(&conj_mat(&f.mat)))
    }

    /// τ ∘ τ', ℂ-linear with matrix `M_τ · conj(M_τ')`.
    pub fn compose_semi(&self, other: &SemilinearOperator) -> LinearOperator {
        LinearOperator::new(self.mat.mul(&conj_mat(&other.mat)))
    }

    /// Always zero; the realification test lives in the test suite.
    pub fn real_trace(&self) -> Rat {
        Rat::zero()
    }

    pub fn realify(&self) -> RMat {
        let a = re_mat(&self.mat);
        let b = im_mat(&self.mat);
        a.hstack(&b).vstack(&b.hstack(&a.neg()))
    }
}

/// Gram matrix of a non-degenerate hermitian sesquilinear form in the
/// convention `H(x,y) = xᵀ·G·conj(y)` (linear left, semilinear right).
#[derive(Clone, PartialEq, Debug)]
pub struct HermitianGram {
    mat: CMat,
    inv: CMat,
}

impl HermitianGram {
    pub fn new(mat: CMat) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch {
                expected: mat.rows(),
                found: mat.cols(),
                context: "hermitian Gram matrix".into(),
            });
        }
        if dagger(&mat) != mat {
            return Err(Error::Degenerate {
                context: "matrix is not hermitian".into(),
            });
        }
        let inv = mat.inverse().ok_or_else(|| Error::Degenerate {
            context: "hermitian form is degenerate".into(),
        })?;
        Ok(HermitianGram { mat, inv })
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn mat(&self) -> &CMat {
        &self.mat
    }

    pub fn inv(&self) -> &CMat {
        &self.inv
    }

    pub fn entry(&self, j: usize, k: usize) -> &CRat {
        self.mat.at(j, k)
    }

    /// H(x, y) = xᵀ G conj(y).
    pub fn form(&self, x: &[CRat], y: &[CRat]) -> CRat {
        let gy: Vec<CRat> = self
            .mat
            .mul_vec(&y.iter().map(|z| z.conj()).collect::<Vec<_>>());
        let mut acc = CRat::zero();
        for (a, b) in x.iter().zip(gy.iter()) {
            acc = acc + a.clone() * b.clone();
        }
        acc
    }

    /// Gram matrix of the restriction of H to the span of `vectors`.
    pub fn restrict(&self, vectors: &[Vec<CRat>]) -> CMat {
        CMat::from_fn(vectors.len(), vectors.len(), |j, k| {
            self.form(&vectors[j], &vectors[k])
        })
    }

    /// Exact hermitian congruence diagonalization: returns (Q, diag) with
    /// Qᵀ·G·conj(Q) diagonal with real nonzero entries `diag`. Uses symmetric
    /// pivoting with a hyperbolic-pair fix for all-zero diagonals; no square
    /// roots are taken, so the entries carry the signs exactly.
    pub fn congruence_diagonalize(&self) -> Result<(CMat, Vec<Rat>)> {
        let n = self.dim();
        let mut w = self.mat.clone();
        // columns of q are the new basis vectors in the old coordinates
        let mut q_cols: Vec<Vec<CRat>> = (0..n).map(|j| unit_vec(n, j)).collect();
        let mut diag = Vec::with_capacity(n);
        for step in 0..n {
            // find a nonzero diagonal pivot
            let mut pivot = (step..n).find(|&j| !w.at(j, j).is_zero());
            if pivot.is_none() {
                // all diagonal zero: make one nonzero from an off-diagonal entry
                let mut fixed = false;
                'search: for j in step..n {
                    for k in (j + 1)..n {
                        if !w.at(j, k).is_zero() {
                            // f_j += alpha f_k with alpha = W[j][k] gives
                            // diagonal 2|W[j][k]|^2 > 0.
                            let alpha = w.at(j, k).clone();
                            for c in 0..n {
                                let v = w.at(j, c).clone() + alpha.clone() * w.at(k, c).clone();
                                w.set(j, c, v);
                            }
                            let ac = alpha.conj();
                            for r in 0..n {
                                let v = w.at(r, j).clone() + ac.clone() * w.at(r, k).clone();
                                w.set(r, j, v);
                            }
                            let shift = vec_scale(&alpha, &q_cols[k]);
                            q_cols[j] = vec_add(&q_cols[j], &shift);
                            pivot = Some(j);
                            fixed = true;
                            break 'search;
                        }
                    }
                }
                if !fixed {
                    return Err(Error::Degenerate {
                        context: "congruence diagonalization hit a zero block".into(),
                    });
                }
            }
            let pj = pivot.unwrap();
            if pj != step {
                // swap basis vectors step and pj (rows and columns)
                for c in 0..n {
                    let a = w.at(step, c).clone();
                    let b = w.at(pj, c).clone();
                    w.set(step, c, b);
                    w.set(pj, c, a);
                }
                for r in 0..n {
                    let a = w.at(r, step).clone();
                    let b = w.at(r, pj).clone();
                    w.set(r, step, b);
                    w.set(r, pj, a);
                }
                q_cols.swap(step, pj);
            }
            let d = w.at(step, step).clone();
            debug_assert!(d.is_real(), "hermitian diagonal must be real");
            diag.push(d.re.clone());
            // clear row and column `step` against the pivot
            for r in (step + 1)..n {
                if w.at(r, step).is_zero() {
                    continue;
                }
                let beta = w.at(r, step).checked_div(&d)?;
                for c in 0..n {
                    let v = w.at(r, c).clone() - beta.clone() * w.at(step, c).clone();
                    w.set(r, c, v);
                }
                let bc = beta.conj();
                for rr in 0..n {
                    let v = w.at(rr, r).clone() - bc.clone() * w.at(rr, step).clone();
                    w.set(rr, r, v);
                }
                let shift = vec_scale(&beta, &q_cols[step]);
                q_cols[r] = vec_sub(&q_cols[r], &shift);
            }
        }
        let q = CMat::from_fn(n, n, |r, c| q_cols[c][r].clone());
        Ok((q, diag))
    }

    /// Signature (p, q): counts of positive and negative entries after exact
    /// hermitian congruence diagonalization.
    pub fn signature(&self) -> Result<(usize, usize)> {
        let (_, diag) = self.congruence_diagonalize()?;
        let p = diag.iter().filter(|d| d.is_positive()).count();
        Ok((p, diag.len() - p))
    }

    /// W^⊥ = { x : H(x, y) = 0 for all y ∈ W }.
    pub fn orthogonal_complement(&self, w: &Subspace) -> Result<Subspace> {
        if w.ambient() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: w.ambient(),
                context: "subspace vectors in orthogonal complement".into(),
            });
        }
        // H(x, w) = xᵀ·(G·conj(w)), so each basis vector of W contributes the
        // constraint row G·conj(w).
        let rows: Vec<Vec<CRat>> = w
            .basis()
            .iter()
            .map(|bv| {
                let cw: Vec<CRat> = bv.iter().map(|z| z.conj()).collect();
                self.mat.mul_vec(&cw)
            })
            .collect();
        if rows.is_empty() {
            return Ok(Subspace::whole(self.dim()));
        }
        let sys = CMat::from_rows(rows);
        Ok(Subspace::from_spanning(self.dim(), &sys.kernel()))
    }
}

/// The unique F* with H(F*x, y) = H(x, F y); Gram-matrix identity
/// (F*)ᵀ·G = G·conj(F).
pub fn h_adjoint(f: &LinearOperator, g: &HermitianGram) -> Result<LinearOperator> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: f.dim(),
            context: "H-adjoint".into(),
        });
    }
    let rhs = g.mat().mul(&conj_mat(&f.mat)).mul(g.inv());
    Ok(LinearOperator::new(rhs.transpose()))
}

/// `real_trace` of either operator kind, as the spec's single entry point.
pub enum AnyOperator<'a> {
    Linear(&'a LinearOperator),
    Semilinear(&'a SemilinearOperator),
}

pub fn real_trace(op: AnyOperator<'_>) -> Rat {
    match op {
        AnyOperator::Linear(f) => f.real_trace(),
        AnyOperator::Semilinear(t) => t.real_trace(),
    }
}

/// A subspace of ℚ(i)ⁿ held as a reduced-row-echelon basis, so subspace
/// equality is structural equality.
#[derive(Clone, PartialEq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<CRat>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        Self::from_spanning(
            ambient,
            &(0..ambient)
                .map(|j| {
                    let mut v = vec![CRat::zero(); ambient];
                    v[j] = CRat::one();
                    v
                })
                .collect::<Vec<_>>(),
        )
    }

    pub fn from_spanning(ambient: usize, vectors: &[Vec<CRat>]) -> Self {
        for v in vectors {
            assert_eq!(v.len(), ambient, "spanning vector of wrong dimension");
        }
        let nonzero: Vec<Vec<CRat>> = vectors
            .iter()
            .filter(|v| v.iter().any(|z| !z.is_zero()))
            .cloned()
            .collect();
        if nonzero.is_empty() {
            return Subspace::zero(ambient);
        }
        let r = CMat::from_rows(nonzero).rref();
        let basis = (0..r.rank).map(|i| r.mat.row(i).to_vec()).collect();
        Subspace { ambient, basis }
    }

    /// Kernel of a matrix as a subspace of its column space domain.
    pub fn kernel_of(m: &CMat) -> Self {
        Subspace::from_spanning(m.cols(), &m.kernel())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<CRat>] {
        &self.basis
    }

    pub fn contains(&self, v: &[CRat]) -> bool {
        assert_eq!(v.len(), self.ambient);
        // reduce v against the echelon basis
        let mut v = v.to_vec();
        for b in &self.basis {
            let pivot = b.iter().position(|z| !z.is_zero()).unwrap();
            if !v[pivot].is_zero() {
                let f = v[pivot].clone();
                for (vc, bc) in v.iter_mut().zip(b.iter()) {
                    *vc = vc.clone() - f.clone() * bc.clone();
                }
            }
        }
        v.iter().all(|z| z.is_zero())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut vs = self.basis.clone();
        vs.extend(other.basis.clone());
        Subspace::from_spanning(self.ambient, &vs)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient);
        }
        // x = Σ a_i b1_i = Σ c_j b2_j: kernel of [B1ᵀ | -B2ᵀ].
        let b1 = CMat::from_rows(self.basis.clone()).transpose();
        let b2 = CMat::from_rows(other.basis.clone()).transpose();
        let sys = b1.hstack(&b2.neg());
        let vectors: Vec<Vec<CRat>> = sys
            .kernel()
            .into_iter()
            .map(|k| {
                let coeffs = &k[..self.dim()];
                let mut v = vec![CRat::zero(); self.ambient];
                for (a, b) in coeffs.iter().zip(self.basis.iter()) {
                    for (vc, bc) in v.iter_mut().zip(b.iter()) {
                        *vc = vc.clone() + a.clone() * bc.clone();
                    }
                }
                v
            })
            .collect();
        Subspace::from_spanning(self.ambient, &vectors)
    }
}

pub fn vec_add(a: &[CRat], b: &[CRat]) -> Vec<CRat> {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.clone() + y.clone())
        .collect()
}

pub fn vec_sub(a: &[CRat], b: &[CRat]) -> Vec<CRat> {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| x.clone() - y.clone())
        .collect()
}

pub fn vec_scale(s: &CRat, a: &[CRat]) -> Vec<CRat> {
    a.iter().map(|x| s.clone() * x.clone()).collect()
}

pub fn vec_is_zero(a: &[CRat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn unit_vec(n: usize, j: usize) -> Vec<CRat> {
    let mut v = vec![CRat::zero(); n];
    v[j] = CRat::one();
    v
}
