//! The real Lie algebra g_U carrying the abelian pseudo-Kähler structure of a
//! pair (U, H), the aff(A) constructions, the inverse construction from a
//! pseudo-Kähler triple, 2-cocycle spaces and Lie-level predicates.
//!
//! All realizations use the canonical real chart (e_1..e_n, i·e_1..i·e_n), so
//! J is the standard block matrix and every tensor is a rational matrix.

use crate::apk::ApkPair;
use crate::assoc::{validate_table, AssocAlgebra};
use crate::error::{Error, Result, ValidationReport};
use crate::exactlin::{complexify_vec, realify_vec, CMat, HermitianGram, RMat, Subspace};
use crate::scalar::{CRat, Rat};
use num_traits::{One, Zero};

fn fmt_rvec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(crate::scalar::rat_to_string).collect();
    format!("({})", parts.join(", "))
}

fn cvec(v: &[Rat]) -> Vec<CRat> {
    v.iter().map(|r| CRat::from_rat(r.clone())).collect()
}

fn runit(n: usize, j: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[j] = Rat::one();
    v
}

/// A real Lie algebra given by structure constants `[f_a, f_b] = Σ c[a][b][k] f_k`.
#[derive(Clone, PartialEq, Debug)]
pub struct RealLieAlgebra {
    dim: usize,
    c: Vec<Vec<Vec<Rat>>>,
}

impl RealLieAlgebra {
    pub fn new_unchecked(c: Vec<Vec<Vec<Rat>>>) -> Self {
        let dim = c.len();
        RealLieAlgebra { dim, c }
    }

    pub fn new(c: Vec<Vec<Vec<Rat>>>) -> Result<Self> {
        let lie = Self::new_unchecked(c);
        lie.validate().into_result()?;
        Ok(lie)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &Vec<Vec<Vec<Rat>>> {
        &self.c
    }

    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let s = xa * yb;
                for k in 0..self.dim {
                    if !self.c[a][b][k].is_zero() {
                        out[k] = &out[k] + &(&s * &self.c[a][b][k]);
                    }
                }
            }
        }
        out
    }

    pub fn ad(&self, a: usize) -> RMat {
        RMat::from_fn(self.dim, self.dim, |k, b| self.c[a][b][k].clone())
    }

    pub fn ad_vec(&self, x: &[Rat]) -> RMat {
        let mut m = RMat::zeros(self.dim, self.dim);
        for (a, xa) in x.iter().enumerate() {
            if !xa.is_zero() {
                m = m.add(&self.ad(a).scale(xa));
            }
        }
        m
    }

    /// Skew-symmetry and Jacobi, with witnesses.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let n = self.dim;
        for a in 0..n {
            for b in 0..n {
                let mut skew = true;
                for k in 0..n {
                    if self.c[a][b][k] != -self.c[b][a][k].clone() {
                        skew = false;
                    }
                }
                if !skew {
                    report.push(
                        "bracket skew-symmetry",
                        vec![a, b],
                        fmt_rvec(&self.c[a][b]),
                        fmt_rvec(&self.c[b][a]),
                    );
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    let mut acc = self.bracket(&self.c[a][b], &runit(n, c));
                    let t2 = self.bracket(&self.c[b][c], &runit(n, a));
                    let t3 = self.bracket(&self.c[c][a], &runit(n, b));
                    for k in 0..n {
                        acc[k] = &acc[k] + &t2[k];
                        acc[k] = &acc[k] + &t3[k];
                    }
                    if acc.iter().any(|v| !v.is_zero()) {
                        report.push(
                            "Jacobi identity",
                            vec![a, b, c],
                            fmt_rvec(&acc),
                            "(0)",
                        );
                    }
                }
            }
        }
        report
    }

    pub fn derived_subalgebra(&self) -> Subspace {
        let n = self.dim;
        let mut vs = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                vs.push(cvec(&self.c[a][b]));
            }
        }
        Subspace::from_spanning(n, &vs)
    }

    fn bracket_with_subspace(&self, w: &Subspace) -> Subspace {
        let n = self.dim;
        let mut vs = Vec::new();
        for a in 0..n {
            for bv in w.basis() {
                // basis vectors of complexified spans of real vectors stay real
                let real: Vec<Rat> = bv.iter().map(|z| z.re.clone()).collect();
                vs.push(cvec(&self.bracket(&runit(n, a), &real)));
            }
        }
        Subspace::from_spanning(n, &vs)
    }

    pub fn is_nilpotent(&self) -> bool {
        let mut current = Subspace::whole(self.dim);
        for _ in 0..=self.dim {
            current = self.bracket_with_subspace(&current);
            if current.is_zero() {
                return true;
            }
        }
        false
    }

    /// [g, [g, g]] = 0.
    pub fn is_two_step_nilpotent(&self) -> bool {
        self.bracket_with_subspace(&self.derived_subalgebra())
            .is_zero()
    }

    /// [[g, g], [g, g]] = 0.
    pub fn is_two_step_solvable(&self) -> bool {
        let derived = self.derived_subalgebra();
        let n = self.dim;
        for x in derived.basis() {
            for y in derived.basis() {
                let xr: Vec<Rat> = x.iter().map(|z| z.re.clone()).collect();
                let yr: Vec<Rat> = y.iter().map(|z| z.re.clone()).collect();
                if self.bracket(&xr, &yr).iter().any(|v| !v.is_zero()) {
                    return false;
                }
            }
        }
        let _ = n;
        true
    }

    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|a| self.ad(a).trace().is_zero())
    }

    pub fn killing(&self) -> RMat {
        let ads: Vec<RMat> = (0..self.dim).map(|a| self.ad(a)).collect();
        RMat::from_fn(self.dim, self.dim, |a, b| ads[a].mul(&ads[b]).trace())
    }
}

/// A real commutative associative algebra over ℚ.
#[derive(Clone, PartialEq, Debug)]
pub struct RealAlgebra {
    dim: usize,
    c: Vec<Vec<Vec<Rat>>>,
}

impl RealAlgebra {
    pub fn new(c: Vec<Vec<Vec<Rat>>>) -> Result<Self> {
        let dim = c.len();
        let complex: Vec<Vec<Vec<CRat>>> = c
            .iter()
            .map(|row| row.iter().map(|v| cvec(v)).collect())
            .collect();
        validate_table(dim, &complex).into_result()?;
        Ok(RealAlgebra { dim, c })
    }

    pub fn zero_algebra(dim: usize) -> Self {
        RealAlgebra {
            dim,
            c: vec![vec![vec![Rat::zero(); dim]; dim]; dim],
        }
    }

    pub fn from_products(dim: usize, products: &[((usize, usize), Vec<Rat>)]) -> Result<Self> {
        let mut c = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
        for ((i, j), v) in products {
            c[*i][*j] = v.clone();
            c[*j][*i] = v.clone();
        }
        Self::new(c)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn constants(&self) -> &Vec<Vec<Vec<Rat>>> {
        &self.c
    }

    pub fn mult(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi * yj;
                for k in 0..self.dim {
                    if !self.c[i][j][k].is_zero() {
                        out[k] = &out[k] + &(&s * &self.c[i][j][k]);
                    }
                }
            }
        }
        out
    }

    /// Right multiplication as a real matrix.
    pub fn right_mult(&self, x: &[Rat]) -> RMat {
        RMat::from_fn(self.dim, self.dim, |k, j| {
            let mut acc = Rat::zero();
            for (i, xi) in x.iter().enumerate() {
                if !xi.is_zero() {
                    acc = &acc + &(xi * &self.c[j][i][k]);
                }
            }
            acc
        })
    }

    /// Complexification: the same structure constants over ℚ(i).
    pub fn complexify(&self, labels: Option<Vec<String>>) -> AssocAlgebra {
        let table: Vec<Vec<Vec<CRat>>> = self
            .c
            .iter()
            .map(|row| row.iter().map(|v| cvec(v)).collect())
            .collect();
        AssocAlgebra::new(table, labels).expect("complexified valid algebra stays valid")
    }
}

fn validate_symmetric_algebra(algebra: &RealAlgebra, b: &RMat) -> ValidationReport {
    let mut report = ValidationReport::new();
    let n = algebra.dim();
    if b.transpose() != *b {
        report.push("B symmetric", vec![], "B", "Bᵀ");
    }
    if b.det().is_zero() {
        report.push("B non-degenerate", vec![], "det B = 0", "det B ≠ 0");
    }
    let form = |x: &[Rat], y: &[Rat]| -> Rat {
        let by = b.mul_vec(y);
        x.iter().zip(by.iter()).map(|(p, q)| p * q).fold(Rat::zero(), |a, v| &a + &v)
    };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = form(&algebra.c[i][j], &runit(n, k));
                let rhs = form(&runit(n, i), &algebra.c[j][k]);
                if lhs != rhs {
                    report.push(
                        "B(ab,c) = B(a,bc)",
                        vec![i, j, k],
                        crate::scalar::rat_to_string(&lhs),
                        crate::scalar::rat_to_string(&rhs),
                    );
                }
            }
        }
    }
    report
}

/// A symmetric algebra (A, B): commutative associative with a non-degenerate
/// symmetric bilinear form satisfying B(ab, c) = B(a, bc).
#[derive(Clone, PartialEq, Debug)]
pub struct RealSymmetricAlgebra {
    algebra: RealAlgebra,
    b: RMat,
}

impl RealSymmetricAlgebra {
    pub fn new(algebra: RealAlgebra, b: RMat) -> Result<Self> {
        if b.rows() != algebra.dim() || b.cols() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                found: b.rows(),
                context: "symmetric algebra Gram".into(),
            });
        }
        validate_symmetric_algebra(&algebra, &b).into_result()?;
        Ok(RealSymmetricAlgebra { algebra, b })
    }

    pub fn algebra(&self) -> &RealAlgebra {
        &self.algebra
    }

    pub fn b(&self) -> &RMat {
        &self.b
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
}

/// g_U in the canonical chart: bracket constants, J, ω, g and the
/// left-symmetric product as exact rational tensors.
#[derive(Clone, PartialEq, Debug)]
pub struct LieRealization {
    lie: RealLieAlgebra,
    j: RMat,
    omega: RMat,
    g: RMat,
    lsa: Vec<Vec<Vec<Rat>>>,
}

impl LieRealization {
    pub fn rdim(&self) -> usize {
        self.lie.dim()
    }

    pub fn lie(&self) -> &RealLieAlgebra {
        &self.lie
    }

    pub fn j(&self) -> &RMat {
        &self.j
    }

    pub fn omega(&self) -> &RMat {
        &self.omega
    }

    pub fn metric(&self) -> &RMat {
        &self.g
    }

    pub fn lsa(&self) -> &Vec<Vec<Vec<Rat>>> {
        &self.lsa
    }

    pub fn omega_form(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let oy = self.omega.mul_vec(y);
        x.iter()
            .zip(oy.iter())
            .map(|(p, q)| p * q)
            .fold(Rat::zero(), |a, v| &a + &v)
    }

    pub fn metric_form(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let gy = self.g.mul_vec(y);
        x.iter()
            .zip(gy.iter())
            .map(|(p, q)| p * q)
            .fold(Rat::zero(), |a, v| &a + &v)
    }

    /// x · y with the left-symmetric product.
    pub fn lsa_mult(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let n = self.rdim();
        let mut out = vec![Rat::zero(); n];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let s = xa * yb;
                for k in 0..n {
                    if !self.lsa[a][b][k].is_zero() {
                        out[k] = &out[k] + &(&s * &self.lsa[a][b][k]);
                    }
                }
            }
        }
        out
    }

    /// Matrix of right LSA multiplication z ↦ z·w.
    pub fn lsa_right_mult(&self, w: &[Rat]) -> RMat {
        let n = self.rdim();
        RMat::from_fn(n, n, |k, a| {
            let mut acc = Rat::zero();
            for (b, wb) in w.iter().enumerate() {
                if !wb.is_zero() {
                    acc = &acc + &(wb * &self.lsa[a][b][k]);
                }
            }
            acc
        })
    }

    /// Assemble a realization from parts, deriving the left-symmetric product
    /// from ω (ω(x·y, z) = −ω(y, [x,z])) and g = ω(J·, ·) when absent.
    pub fn assemble(
        lie: RealLieAlgebra,
        j: RMat,
        omega: RMat,
        lsa: Option<Vec<Vec<Vec<Rat>>>>,
        g: Option<RMat>,
    ) -> Result<Self> {
        let n = lie.dim();
        let lsa = match lsa {
            Some(t) => t,
            None => derive_lsa(&lie, &omega)?,
        };
        let g = g.unwrap_or_else(|| j.transpose().mul(&omega));
        if j.rows() != n || omega.rows() != n || g.rows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: j.rows(),
                context: "realization tensors".into(),
            });
        }
        Ok(LieRealization {
            lie,
            j,
            omega,
            g,
            lsa,
        })
    }
}

/// Solve ω(x·y, z) = −ω(y, [x, z]) for the left-symmetric product; requires a
/// non-degenerate ω.
pub fn derive_lsa(lie: &RealLieAlgebra, omega: &RMat) -> Result<Vec<Vec<Vec<Rat>>>> {
    let n = lie.dim();
    let omega_t_inv = omega.transpose().inverse().ok_or_else(|| Error::Degenerate {
        context: "omega is degenerate; left-symmetric product is undefined".into(),
    })?;
    let mut lsa = vec![vec![vec![Rat::zero(); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            // rhs_z = -omega(f_b, [f_a, f_z])
            let rhs: Vec<Rat> = (0..n)
                .map(|z| {
                    let br = &lie.constants()[a][z];
                    -(0..n)
                        .map(|k| &omega.at(b, k).clone() * &br[k])
                        .fold(Rat::zero(), |acc, v| &acc + &v)
                })
                .collect();
            lsa[a][b] = omega_t_inv.mul_vec(&rhs);
        }
    }
    Ok(lsa)
}

/// Full pseudo-Kähler validation: every structural invariant of the
/// realization plus J(x·y) = (Jx)·y and 2-step solvability, with witnesses.
pub fn validate_pk(l: &LieRealization) -> ValidationReport {
    let mut report = l.lie.validate();
    let n = l.rdim();
    let j = &l.j;
    // J^2 = -id
    if j.mul(j) != RMat::identity(n).neg() {
        report.push("J² = -id", vec![], "J²", "-id");
    }
    // abelian: [Jx, Jy] = [x, y]
    for a in 0..n {
        for b in (a + 1)..n {
            let ja = j.col(a);
            let jb = j.col(b);
            let lhs = l.lie.bracket(&ja, &jb);
            let rhs = &l.lie.constants()[a][b];
            if lhs != *rhs {
                report.push("[Jx, Jy] = [x, y]", vec![a, b], fmt_rvec(&lhs), fmt_rvec(rhs));
            }
        }
    }
    // omega skew and non-degenerate
    if l.omega.transpose() != l.omega.neg() {
        report.push("omega skew-symmetric", vec![], "ωᵀ", "-ω");
    }
    if l.omega.det().is_zero() {
        report.push("omega non-degenerate", vec![], "det ω = 0", "det ω ≠ 0");
    }
    // cocycle identity
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                let term = |x: usize, y: usize, z: usize| {
                    l.omega_form(&l.lie.constants()[x][y], &runit(n, z))
                };
                let total = &(&term(a, b, c) + &term(b, c, a)) + &term(c, a, b);
                if !total.is_zero() {
                    report.push(
                        "closedness dω = 0",
                        vec![a, b, c],
                        crate::scalar::rat_to_string(&total),
                        "0",
                    );
                }
            }
        }
    }
    // omega(Jx, Jy) = omega(x, y)
    let joj = j.transpose().mul(&l.omega).mul(j);
    if joj != l.omega {
        report.push("ω(Jx, Jy) = ω(x, y)", vec![], "JᵀωJ", "ω");
    }
    // g = omega(J., .) symmetric non-degenerate
    let g_expected = j.transpose().mul(&l.omega);
    if l.g != g_expected {
        report.push("g(x,y) = ω(Jx, y)", vec![], "g", "Jᵀω");
    }
    if l.g.transpose() != l.g {
        report.push("g symmetric", vec![], "gᵀ", "g");
    }
    // left-symmetric product: defining relation, commutator, left-symmetry
    for a in 0..n {
        for b in 0..n {
            let prod = &l.lsa[a][b];
            for z in 0..n {
                let lhs = l.omega_form(prod, &runit(n, z));
                let rhs = -l.omega_form(&runit(n, b), &l.lie.constants()[a][z]);
                if lhs != rhs {
                    report.push(
                        "ω(x·y, z) = -ω(y, [x,z])",
                        vec![a, b, z],
                        crate::scalar::rat_to_string(&lhs),
                        crate::scalar::rat_to_string(&rhs),
                    );
                }
            }
            let comm: Vec<Rat> = (0..n)
                .map(|k| &l.lsa[a][b][k] - &l.lsa[b][a][k])
                .collect();
            if comm != l.lie.constants()[a][b] {
                report.push(
                    "x·y - y·x = [x, y]",
                    vec![a, b],
                    fmt_rvec(&comm),
                    fmt_rvec(&l.lie.constants()[a][b]),
                );
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = l.lsa_mult(&l.lie.constants()[a][b], &runit(n, c));
                let r1 = l.lsa_mult(&runit(n, a), &l.lsa_mult(&runit(n, b), &runit(n, c)));
                let r2 = l.lsa_mult(&runit(n, b), &l.lsa_mult(&runit(n, a), &runit(n, c)));
                let rhs: Vec<Rat> = r1.iter().zip(r2.iter()).map(|(p, q)| p - q).collect();
                if lhs != rhs {
                    report.push(
                        "left-symmetry [x,y]·z = x·(y·z) - y·(x·z)",
                        vec![a, b, c],
                        fmt_rvec(&lhs),
                        fmt_rvec(&rhs),
                    );
                }
            }
        }
    }
    // J(x·y) = (Jx)·y
    for a in 0..n {
        for b in 0..n {
            let lhs = j.mul_vec(&l.lsa[a][b]);
            let rhs = l.lsa_mult(&j.col(a), &runit(n, b));
            if lhs != rhs {
                report.push("J(x·y) = (Jx)·y", vec![a, b], fmt_rvec(&lhs), fmt_rvec(&rhs));
            }
        }
    }
    if !l.lie.is_two_step_solvable() {
        report.push("2-step solvability [[g,g],[g,g]] = 0", vec![], "nonzero", "0");
    }
    report
}

fn standard_j(n: usize) -> RMat {
    let mut j = RMat::zeros(2 * n, 2 * n);
    for k in 0..n {
        j.set(n + k, k, Rat::one());
        j.set(k, n + k, -Rat::one());
    }
    j
}

/// Tensors of g_U computed from any (algebra, Gram) pair, without requiring
/// the compatibility certificate. Used to show that the certificate is
/// exactly what makes the construction work.
pub fn build_lie_unchecked(
    algebra: &AssocAlgebra,
    gram: &HermitianGram,
) -> Result<LieRealization> {
    let n = algebra.dim();
    let rdim = 2 * n;
    let rmats: Vec<CMat> = (0..n)
        .map(|k| {
            algebra
                .right_mult(&crate::exactlin::unit_vec(n, k))
                .map(|op| op.mat)
        })
        .collect::<Result<_>>()?;
    let amats: Vec<CMat> = (0..n)
        .map(|k| {
            crate::exactlin::h_adjoint(
                &crate::exactlin::LinearOperator::new(rmats[k].clone()),
                gram,
            )
            .map(|op| op.mat)
        })
        .collect::<Result<_>>()?;
    // complex representative of real basis vector a
    let rep = |a: usize| -> Vec<CRat> {
        let mut v = vec![CRat::zero(); n];
        if a < n {
            v[a] = CRat::one();
        } else {
            v[a - n] = CRat::i();
        }
        v
    };
    // R*_x v for arbitrary complex x (semilinear in x)
    let star_apply = |x: &[CRat], v: &[CRat]| -> Vec<CRat> {
        let mut out = vec![CRat::zero(); n];
        for (k, xk) in x.iter().enumerate() {
            if xk.is_zero() {
                continue;
            }
            let av = amats[k].mul_vec(v);
            let s = xk.conj();
            for t in 0..n {
                out[t] = out[t].clone() + s.clone() * av[t].clone();
            }
        }
        out
    };
    let right_apply = |x: &[CRat], v: &[CRat]| -> Vec<CRat> {
        let mut out = vec![CRat::zero(); n];
        for (k, xk) in x.iter().enumerate() {
            if xk.is_zero() {
                continue;
            }
            let rv = rmats[k].mul_vec(v);
            for t in 0..n {
                out[t] = out[t].clone() + xk.clone() * rv[t].clone();
            }
        }
        out
    };
    let mut bracket = vec![vec![vec![Rat::zero(); rdim]; rdim]; rdim];
    let mut lsa = vec![vec![vec![Rat::zero(); rdim]; rdim]; rdim];
    for a in 0..rdim {
        let fa = rep(a);
        for b in 0..rdim {
            let fb = rep(b);
            // [x, y] = R*_y x - R*_x y
            let br: Vec<CRat> = star_apply(&fb, &fa)
                .into_iter()
                .zip(star_apply(&fa, &fb))
                .map(|(p, q)| p - q)
                .collect();
            bracket[a][b] = realify_vec(&br);
            // x · y = (R_y + R*_y) x
            let prod: Vec<CRat> = right_apply(&fb, &fa)
                .into_iter()
                .zip(star_apply(&fb, &fa))
                .map(|(p, q)| p + q)
                .collect();
            lsa[a][b] = realify_vec(&prod);
        }
    }
    let mut omega = RMat::zeros(rdim, rdim);
    let mut g = RMat::zeros(rdim, rdim);
    for a in 0..rdim {
        for b in 0..rdim {
            let h = gram.form(&rep(a), &rep(b));
            omega.set(a, b, h.im.clone());
            g.set(a, b, h.re.clone());
        }
    }
    LieRealization::assemble(
        RealLieAlgebra::new_unchecked(bracket),
        standard_j(n),
        omega,
        Some(lsa),
        Some(g),
    )
}

/// g_U with its abelian pseudo-Kähler structure. Construction followed by
/// full validation; a failure would falsify the construction itself and is
/// reported as an internal error.
pub fn build_lie(pair: &ApkPair) -> Result<LieRealization> {
    let l = build_lie_unchecked(pair.algebra(), pair.gram())?;
    let report = validate_pk(&l);
    if !report.is_valid() {
        return Err(Error::internal(
            "g_U of a compatible pair must be pseudo-Kähler",
            report.violations[0].to_string(),
        ));
    }
    Ok(l)
}

/// The Lie algebra aff(A) = A ⊕ A with [(a,b),(a',b')] = (0, ab'-a'b) and its
/// abelian complex structure J(a,b) = (-b, a).
pub fn aff(algebra: &RealAlgebra) -> (RealLieAlgebra, RMat) {
    let m = algebra.dim();
    let rdim = 2 * m;
    let mut c = vec![vec![vec![Rat::zero(); rdim]; rdim]; rdim];
    for j in 0..m {
        for k in 0..m {
            // [(a_j, 0), (0, a_k)] = (0, a_j a_k)
            let prod = &algebra.constants()[j][k];
            for t in 0..m {
                c[j][m + k][m + t] = prod[t].clone();
                c[m + k][j][m + t] = -prod[t].clone();
            }
        }
    }
    (RealLieAlgebra::new_unchecked(c), standard_j(m))
}

/// aff(A) with the standard pseudo-Kähler structure of a symmetric algebra:
/// ω((a,b),(a',b')) = B(a,b') - B(b,a'), with its closed-form
/// left-symmetric product (a,b)·(a',b') = -(aa', ba').
pub fn standard_pk(s: &RealSymmetricAlgebra) -> Result<LieRealization> {
    let m = s.dim();
    let rdim = 2 * m;
    let (lie, j) = aff(s.algebra());
    let b = s.b();
    let mut omega = RMat::zeros(rdim, rdim);
    for p in 0..m {
        for q in 0..m {
            omega.set(p, m + q, b.at(p, q).clone());
            omega.set(m + p, q, -b.at(p, q).clone());
        }
    }
    let mut lsa = vec![vec![vec![Rat::zero(); rdim]; rdim]; rdim];
    for p in 0..m {
        for q in 0..m {
            let prod = &s.algebra().constants()[p][q];
            for t in 0..m {
                // (a_p, 0)·(a_q, 0) = -(a_p a_q, 0)
                lsa[p][q][t] = -prod[t].clone();
                // (0, a_p)·(a_q, 0) = -(0, a_p a_q)
                lsa[m + p][q][m + t] = -prod[t].clone();
            }
        }
    }
    let l = LieRealization::assemble(lie, j, omega, Some(lsa), None)?;
    let report = validate_pk(&l);
    if !report.is_valid() {
        return Err(Error::internal(
            "standard structure of a symmetric algebra must validate",
            report.violations[0].to_string(),
        ));
    }
    Ok(l)
}

/// Check that `iso` realizes a holomorphic symplectomorphism l1 → l2.
pub fn verify_holo_symplecto(
    l1: &LieRealization,
    l2: &LieRealization,
    iso: &RMat,
) -> Result<()> {
    let n = l1.rdim();
    if iso.inverse().is_none() {
        return Err(Error::internal("isomorphism must be invertible", "singular"));
    }
    if iso.mul(l1.j()) != l2.j().mul(iso) {
        return Err(Error::internal(
            "isomorphism must intertwine the complex structures",
            "ψJ ≠ Jψ",
        ));
    }
    if iso.transpose().mul(l2.omega()).mul(iso) != *l1.omega() {
        return Err(Error::internal(
            "isomorphism must pull back the symplectic form",
            "ψ*ω' ≠ ω",
        ));
    }
    for a in 0..n {
        for b in (a + 1)..n {
            let lhs = iso.mul_vec(&l1.lie().constants()[a][b]);
            let rhs = l2.lie().bracket(&iso.col(a), &iso.col(b));
            if lhs != rhs {
                return Err(Error::internal(
                    "isomorphism must preserve brackets",
                    format!("pair ({a}, {b})"),
                ));
            }
        }
    }
    Ok(())
}

/// Complexification of a symmetric algebra into an APK pair: U = A^ℂ with
/// the same structure constants and H = -4B on the real basis. Returns the
/// pair and the verified isomorphism aff(A) → g_U, ψ(a,b) = -(a+ib)/2.
pub fn complexify_pair(s: &RealSymmetricAlgebra) -> Result<(ApkPair, RMat)> {
    let m = s.dim();
    let u = s.algebra().complexify(None);
    let gram = HermitianGram::new(
        s.b().map(|v| CRat::from_rat(-(v * &Rat::from_integer(4.into())))),
    )?;
    let pair = ApkPair::new(u, gram)?;
    let iso = RMat::identity(2 * m).scale(&-crate::scalar::rat(1, 2));
    let l_std = standard_pk(s)?;
    let l_u = build_lie(&pair)?;
    verify_holo_symplecto(&l_std, &l_u, &iso)?;
    Ok((pair, iso))
}

/// Greedy J-adapted basis: vectors v_1..v_n such that (v, Jv) is a real
/// basis, picked from the standard basis with exact pivoting.
fn j_adapted_basis(j: &RMat) -> Vec<Vec<Rat>> {
    let rdim = j.rows();
    let n = rdim / 2;
    let mut picked: Vec<Vec<Rat>> = Vec::new();
    let mut span_cols: Vec<Vec<Rat>> = Vec::new();
    for a in 0..rdim {
        if picked.len() == n {
            break;
        }
        let e = runit(rdim, a);
        // is e in the span of the collected (v, Jv) family?
        let k = span_cols.len();
        let mat = RMat::from_fn(rdim, k + 1, |r, c| {
            if c < k {
                span_cols[c][r].clone()
            } else {
                e[r].clone()
            }
        });
        if mat.rank() == k + 1 {
            let je = j.mul_vec(&e);
            span_cols.push(e.clone());
            span_cols.push(je);
            picked.push(e);
        }
    }
    assert_eq!(picked.len(), n, "J-adapted basis extraction must complete");
    picked
}

/// The inverse construction: from a validated pseudo-Kähler realization
/// recover an APK pair (U, H) with U = {x - iJx} and
/// H(ψx, ψy) = -ω(x, Jy) + iω(x, y), together with the verified isomorphism
/// onto the canonical chart of g_U.
pub fn pair_from_pk(l: &LieRealization) -> Result<(ApkPair, RMat)> {
    validate_pk(l).into_result()?;
    let rdim = l.rdim();
    let n = rdim / 2;
    let vs = j_adapted_basis(l.j());
    let mut t = RMat::zeros(rdim, rdim);
    for (k, v) in vs.iter().enumerate() {
        let jv = l.j().mul_vec(v);
        for r in 0..rdim {
            t.set(r, k, v[r].clone());
            t.set(r, n + k, jv[r].clone());
        }
    }
    let t_inv = t.inverse().ok_or_else(|| {
        Error::internal("J-adapted basis change must be invertible", "singular T")
    })?;
    // structure constants: u_j u_k = complex coords of (v_j·v_k - Jv_j·Jv_k)/2
    let half = crate::scalar::rat(1, 2);
    let mut table = vec![vec![vec![CRat::zero(); n]; n]; n];
    for jdx in 0..n {
        let jv_j = l.j().mul_vec(&vs[jdx]);
        for kdx in 0..n {
            let jv_k = l.j().mul_vec(&vs[kdx]);
            let p1 = l.lsa_mult(&vs[jdx], &vs[kdx]);
            let p2 = l.lsa_mult(&jv_j, &jv_k);
            let w: Vec<Rat> = p1.iter().zip(p2.iter()).map(|(a, b)| &(a - b) * &half).collect();
            let coords = t_inv.mul_vec(&w);
            table[jdx][kdx] = complexify_vec(&coords);
        }
    }
    let gram = CMat::from_fn(n, n, |jdx, kdx| {
        let jv_k = l.j().mul_vec(&vs[kdx]);
        CRat::new(
            -l.omega_form(&vs[jdx], &jv_k),
            l.omega_form(&vs[jdx], &vs[kdx]),
        )
    });
    let algebra = AssocAlgebra::new(table, None).map_err(|e| {
        Error::internal(
            "recovered product must be commutative associative",
            e.to_string(),
        )
    })?;
    let pair = ApkPair::new(algebra, HermitianGram::new(gram)?).map_err(|e| {
        Error::internal("recovered pair must be APK-compatible", e.to_string())
    })?;
    let l_u = build_lie(&pair)?;
    verify_holo_symplecto(l, &l_u, &t_inv)?;
    Ok((pair, t_inv))
}

/// Basis of the space of scalar 2-cocycles of a real Lie algebra, plus a
/// degeneracy certificate: a nonzero vector in the radical of every cocycle,
/// when one exists.
pub fn cocycle_space(lie: &RealLieAlgebra) -> (Vec<RMat>, Option<Vec<Rat>>) {
    let n = lie.dim();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
        .collect();
    let idx = |a: usize, b: usize| -> (usize, bool) {
        if a < b {
            (pairs.iter().position(|&p| p == (a, b)).unwrap(), false)
        } else {
            (pairs.iter().position(|&p| p == (b, a)).unwrap(), true)
        }
    };
    let m = pairs.len();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                let mut row = vec![Rat::zero(); m];
                let mut add_term = |x: usize, y: usize, z: usize| {
                    // omega([f_x, f_y], f_z)
                    for d in 0..n {
                        let coeff = &lie.constants()[x][y][d];
                        if coeff.is_zero() || d == z {
                            continue;
                        }
                        let (k, flip) = idx(d, z);
                        if flip {
                            row[k] = &row[k] - coeff;
                        } else {
                            row[k] = &row[k] + coeff;
                        }
                    }
                };
                add_term(a, b, c);
                add_term(b, c, a);
                add_term(c, a, b);
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        RMat::zeros(1, m).kernel()
    } else {
        RMat::from_rows(rows).kernel()
    };
    let basis: Vec<RMat> = kernel
        .iter()
        .map(|coeffs| {
            let mut omega = RMat::zeros(n, n);
            for (k, &(a, b)) in pairs.iter().enumerate() {
                omega.set(a, b, coeffs[k].clone());
                omega.set(b, a, -coeffs[k].clone());
            }
            omega
        })
        .collect();
    if basis.is_empty() {
        // no cocycles at all: every vector is radical, pick f_0 if n > 0
        return (basis, (n > 0).then(|| runit(n, 0)));
    }
    let mut stacked = basis[0].clone();
    for omega in &basis[1..] {
        stacked = stacked.vstack(omega);
    }
    let radical = stacked.kernel();
    let certificate = radical.into_iter().next();
    (basis, certificate)
}

pub use self::preds::*;

mod preds {
    use super::*;

    pub fn is_unimodular(lie: &RealLieAlgebra) -> bool {
        lie.is_unimodular()
    }

    pub fn is_nilpotent_lie(lie: &RealLieAlgebra) -> bool {
        lie.is_nilpotent()
    }

    pub fn killing(lie: &RealLieAlgebra) -> RMat {
        lie.killing()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::unit_vec;
    use crate::scalar::{rat, rat_int};

    fn e(n: usize, j: usize) -> Vec<CRat> {
        unit_vec(n, j)
    }

    fn pair_5d() -> ApkPair {
        let algebra =
            AssocAlgebra::from_products(5, &[((4, 3), e(5, 2)), ((4, 4), e(5, 2))], None).unwrap();
        let gram = HermitianGram::new(CMat::from_fn(5, 5, |j, k| {
            if j + k == 4 {
                CRat::one()
            } else {
                CRat::zero()
            }
        }))
        .unwrap();
        ApkPair::new(algebra, gram).unwrap()
    }

    fn pair_4d() -> ApkPair {
        let algebra =
            AssocAlgebra::from_products(4, &[((1, 3), e(4, 1)), ((3, 3), e(4, 3))], None).unwrap();
        let gram = HermitianGram::new(CMat::from_fn(4, 4, |j, k| {
            if j + k == 3 {
                CRat::one()
            } else {
                CRat::zero()
            }
        }))
        .unwrap();
        ApkPair::new(algebra, gram).unwrap()
    }

    /// Kodaira-Thurston base algebra: span{x, x²} with x·x = x².
    fn kt_algebra() -> RealAlgebra {
        RealAlgebra::from_products(2, &[((0, 0), runit(2, 1))]).unwrap()
    }

    fn kt_symmetric(t: i64) -> RealSymmetricAlgebra {
        let b = RMat::from_rows(vec![
            vec![rat_int(t), rat_int(1)],
            vec![rat_int(1), rat_int(0)],
        ]);
        RealSymmetricAlgebra::new(kt_algebra(), b).unwrap()
    }

    #[test]
    fn build_lie_of_zero_product_is_abelian() {
        let p = ApkPair::new(
            AssocAlgebra::zero_algebra(2),
            HermitianGram::new(CMat::identity(2)).unwrap(),
        )
        .unwrap();
        let l = build_lie(&p).unwrap();
        assert!(l.lie().derived_subalgebra().is_zero());
        assert!(validate_pk(&l).is_valid());
    }

    #[test]
    fn bracket_in_5d_example() {
        let l = build_lie(&pair_5d()).unwrap();
        // [u2, u3] = R*_{u3} u2 - R*_{u2} u3 = u0
        let expected = realify_vec(&e(5, 0));
        assert_eq!(l.lie().constants()[2][3], expected);
    }

    #[test]
    fn metric_is_real_part_of_h() {
        let p = pair_5d();
        let l = build_lie(&p).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(*l.metric().at(a, b), p.gram().entry(a, b).re);
                assert_eq!(*l.omega().at(a, b), p.gram().entry(a, b).im);
            }
        }
    }

    #[test]
    fn aff_of_r_is_the_nonabelian_2d_algebra() {
        let unit = RealAlgebra::from_products(1, &[((0, 0), runit(1, 0))]).unwrap();
        let (lie, _j) = aff(&unit);
        assert_eq!(lie.dim(), 2);
        // [E1, E2] = E2
        assert_eq!(lie.constants()[0][1], runit(2, 1));
        assert!(!lie.is_unimodular());
        assert!(lie.validate().is_valid());
    }

    #[test]
    fn aff_of_kodaira_thurston_is_nilpotent() {
        let (lie, _j) = aff(&kt_algebra());
        assert_eq!(lie.dim(), 4);
        assert!(lie.is_nilpotent());
        assert!(lie.is_unimodular());
    }

    /// aff of the 3-dim algebra a1a1 = a2a2 = a3 has only
    /// [E1,E4] = [E2,E5] = E6.
    pub(crate) fn remark_algebra() -> RealAlgebra {
        RealAlgebra::from_products(3, &[((0, 0), runit(3, 2)), ((1, 1), runit(3, 2))]).unwrap()
    }

    #[test]
    fn aff_of_remark_algebra_brackets() {
        let (lie, _j) = aff(&remark_algebra());
        assert_eq!(lie.dim(), 6);
        let mut nontrivial = Vec::new();
        for a in 0..6 {
            for b in (a + 1)..6 {
                if lie.constants()[a][b].iter().any(|v| !v.is_zero()) {
                    nontrivial.push((a, b, lie.constants()[a][b].clone()));
                }
            }
        }
        assert_eq!(
            nontrivial,
            vec![(0, 3, runit(6, 5)), (1, 4, runit(6, 5))],
            "only [E1,E4] = [E2,E5] = E6"
        );
    }

    #[test]
    fn standard_pk_of_unit_algebra_is_aff_r() {
        let s = RealSymmetricAlgebra::new(
            RealAlgebra::from_products(1, &[((0, 0), runit(1, 0))]).unwrap(),
            RMat::identity(1),
        )
        .unwrap();
        let l = standard_pk(&s).unwrap();
        assert!(validate_pk(&l).is_valid());
        assert_eq!(l.lie().constants()[0][1], runit(2, 1));
    }

    #[test]
    fn standard_pk_of_kt_is_valid_for_any_t() {
        for t in [0i64, 1, -3] {
            let l = standard_pk(&kt_symmetric(t)).unwrap();
            assert!(validate_pk(&l).is_valid());
            assert!(l.lie().is_nilpotent());
        }
    }

    #[test]
    fn symmetric_algebra_rejects_inassociative_b() {
        // KT algebra with B(x², x²) = 1 breaks B(ab,c) = B(a,bc)
        let b = RMat::from_rows(vec![
            vec![rat_int(0), rat_int(1)],
            vec![rat_int(1), rat_int(1)],
        ]);
        assert!(RealSymmetricAlgebra::new(kt_algebra(), b).is_err());
    }

    #[test]
    fn complexify_pair_gram_and_adjoints() {
        // S = (R, B(1,1) = beta): H(1,1) = -4 beta
        for beta in [1i64, 2, -3] {
            let s = RealSymmetricAlgebra::new(
                RealAlgebra::from_products(1, &[((0, 0), runit(1, 0))]).unwrap(),
                RMat::from_rows(vec![vec![rat_int(beta)]]),
            )
            .unwrap();
            let (pair, _iso) = complexify_pair(&s).unwrap();
            assert_eq!(*pair.gram().entry(0, 0), CRat::from_int(-4 * beta));
        }
        // R*_{a+ib} = R_{a-ib} on the complexification
        let s = kt_symmetric(2);
        let (pair, _iso) = complexify_pair(&s).unwrap();
        let x = vec![CRat::new(rat_int(1), rat_int(2)), CRat::new(rat_int(-1), rat_int(3))];
        let xbar: Vec<CRat> = x.iter().map(|z| z.conj()).collect();
        assert_eq!(
            pair.star_mult(&x).unwrap(),
            pair.right_mult(&xbar).unwrap()
        );
    }

    #[test]
    fn complexified_kt_is_nilpotent_2_complex_dim() {
        let (pair, _iso) = complexify_pair(&kt_symmetric(0)).unwrap();
        assert_eq!(pair.dim(), 2);
        assert_eq!(pair.algebra().nilpotency().0, true);
        let l = build_lie(&pair).unwrap();
        assert_eq!(l.rdim(), 4);
        assert!(l.lie().is_nilpotent());
    }

    #[test]
    fn pair_from_pk_of_abelian_realization() {
        let p = ApkPair::new(
            AssocAlgebra::zero_algebra(2),
            HermitianGram::new(CMat::identity(2)).unwrap(),
        )
        .unwrap();
        let l = build_lie(&p).unwrap();
        let (rec, _iso) = pair_from_pk(&l).unwrap();
        assert_eq!(rec.algebra().table(), p.algebra().table());
        assert_eq!(rec.gram().mat(), p.gram().mat());
    }

    #[test]
    fn pair_from_pk_round_trips_on_paper_pairs() {
        for p in [pair_5d(), pair_4d()] {
            let l = build_lie(&p).unwrap();
            let (rec, iso) = pair_from_pk(&l).unwrap();
            // the canonical chart is already J-adapted, so the emitted basis
            // change is the identity and recovery is literal
            assert_eq!(iso, RMat::identity(l.rdim()));
            assert_eq!(rec.algebra().table(), p.algebra().table());
            assert_eq!(rec.gram().mat(), p.gram().mat());
        }
    }

    #[test]
    fn cocycle_certificate_of_remark_algebra_is_e6() {
        let (lie, _j) = aff(&remark_algebra());
        let (basis, cert) = cocycle_space(&lie);
        assert!(!basis.is_empty());
        assert_eq!(cert, Some(runit(6, 5)), "certificate is E6");
    }

    #[test]
    fn cocycles_of_small_algebras() {
        // abelian dim 2: all skew forms, no certificate
        let abelian = RealLieAlgebra::new_unchecked(vec![vec![vec![Rat::zero(); 2]; 2]; 2]);
        let (basis, cert) = cocycle_space(&abelian);
        assert_eq!(basis.len(), 1);
        assert_eq!(cert, None);
        // aff(R): 1-dim cocycle space, no certificate
        let unit = RealAlgebra::from_products(1, &[((0, 0), runit(1, 0))]).unwrap();
        let (lie, _) = aff(&unit);
        let (basis, cert) = cocycle_space(&lie);
        assert_eq!(basis.len(), 1);
        assert_eq!(cert, None);
    }

    #[test]
    fn unimodularity_tracks_nilpotency_on_paper_pairs() {
        let l5 = build_lie(&pair_5d()).unwrap();
        assert!(l5.lie().is_nilpotent());
        assert!(l5.lie().is_unimodular());
        let l4 = build_lie(&pair_4d()).unwrap();
        assert!(!l4.lie().is_nilpotent());
        assert!(!l4.lie().is_unimodular());
    }

    #[test]
    fn trace_ad_is_minus_trace_right_mult() {
        for p in [pair_5d(), pair_4d()] {
            let l = build_lie(&p).unwrap();
            let n = p.dim();
            for a in 0..n {
                let tr_ad = l.lie().ad(a).trace();
                let tr_r = p.right_mult(&e(n, a)).unwrap().real_trace();
                assert_eq!(tr_ad, -tr_r);
            }
        }
    }

    #[test]
    fn lsa_of_standard_pk_is_associative() {
        let l = standard_pk(&kt_symmetric(1)).unwrap();
        let n = l.rdim();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = l.lsa_mult(&l.lsa[a][b], &runit(n, c));
                    let rhs = l.lsa_mult(&runit(n, a), &l.lsa[a][b].clone());
                    let _ = rhs;
                    let rhs2 = l.lsa_mult(&runit(n, a), &l.lsa_mult(&runit(n, b), &runit(n, c)));
                    assert_eq!(lhs, rhs2);
                }
            }
        }
    }

    #[test]
    fn derive_lsa_matches_closed_form() {
        let s = kt_symmetric(3);
        let l = standard_pk(&s).unwrap();
        let derived = derive_lsa(l.lie(), l.omega()).unwrap();
        assert_eq!(&derived, l.lsa());
    }

    #[test]
    fn two_step_crosses_to_lie_side() {
        let p5 = pair_5d();
        assert!(p5.is_two_step().unwrap());
        assert!(build_lie(&p5).unwrap().lie().is_two_step_nilpotent());
        let p4 = pair_4d();
        assert!(!p4.is_two_step().unwrap());
        assert!(!build_lie(&p4).unwrap().lie().is_two_step_nilpotent());
    }

    #[test]
    fn j_adapted_basis_handles_scrambled_charts() {
        // permuted chart: J not in canonical block form
        let mut j = RMat::zeros(4, 4);
        // J e0 = e2, J e2 = -e0, J e3 = e1, J e1 = -e3
        j.set(2, 0, rat_int(1));
        j.set(0, 2, rat_int(-1));
        j.set(1, 3, rat_int(1));
        j.set(3, 1, rat_int(-1));
        let vs = j_adapted_basis(&j);
        assert_eq!(vs.len(), 2);
        let _ = rat(1, 2);
    }
}
