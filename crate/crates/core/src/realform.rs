//! Detection of aff(A)-type pairs: the σ-involution construction, the
//! ann ⊕ ann^⊥ splitting, and verification of unital decompositions.

use crate::apk::ApkPair;
use crate::error::{Error, Result, ValidationReport};
use crate::exactlin::{
    complexify_vec, conj_mat, realify_vec, unit_vec, vec_add, vec_is_zero, CMat, RMat,
    SemilinearOperator, Subspace,
};
use crate::liereal::{
    build_lie, standard_pk, verify_holo_symplecto, RealAlgebra, RealSymmetricAlgebra,
};
use crate::scalar::{rat, CRat, Rat};
use num_traits::Zero;

/// Witness that a pair is of aff(A) type: the semilinear involution σ, the
/// real form inside U it cuts out, the recovered symmetric algebra (A, B)
/// with B = -¼H, and the verified basis change realizing the holomorphic
/// symplectomorphism standard_pk(A, B) → g_U.
#[derive(Clone, Debug)]
pub struct RealFormCertificate {
    pub sigma: SemilinearOperator,
    pub a_basis: Vec<Vec<CRat>>,
    pub recovered: RealSymmetricAlgebra,
    pub iso: RMat,
}

/// σ built by exact linear solve on the spanning set {R*_{e_i} e_j} from
/// σ(R*_x y) = R*_y x. Well-definedness of that assignment is a theorem for
/// compatible pairs with trivial annihilator; the solve re-verifies it on
/// every input and an inconsistency aborts with a witness.
pub fn sigma_from_adjoints(pair: &ApkPair) -> Result<RealFormCertificate> {
    let sigma = solve_sigma(pair)?;
    certificate_from_sigma(pair, sigma)
}

fn solve_sigma(pair: &ApkPair) -> Result<CMat> {
    if !pair.annihilator().is_zero() {
        return Err(Error::precondition(
            "sigma construction requires a trivial annihilator",
        ));
    }
    let n = pair.dim();
    if n == 0 {
        return Ok(CMat::zeros(0, 0));
    }
    // M · conj(R*_{e_i} e_j) = R*_{e_j} e_i for all pairs (i, j)
    let mut src_cols: Vec<Vec<CRat>> = Vec::with_capacity(n * n);
    let mut dst_cols: Vec<Vec<CRat>> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let s = pair.basis_adjoint(i).apply(&unit_vec(n, j));
            let t = pair.basis_adjoint(j).apply(&unit_vec(n, i));
            src_cols.push(s.iter().map(|z| z.conj()).collect());
            dst_cols.push(t);
        }
    }
    // Solve Sᵀ Mᵀ = Tᵀ column by column; the source columns span U because
    // R*_U U = U when ann(U) = 0.
    let s_t = CMat::from_fn(n * n, n, |r, c| src_cols[r][c].clone());
    let t_t = CMat::from_fn(n * n, n, |r, c| dst_cols[r][c].clone());
    if s_t.rank() < n {
        return Err(Error::internal(
            "R*_U U must span U when ann(U) = 0",
            format!("rank {} < {}", s_t.rank(), n),
        ));
    }
    let m_t = s_t.solve(&t_t).ok_or_else(|| {
        Error::internal(
            "sigma assignment must be well-defined",
            "inconsistent linear system on the spanning set",
        )
    })?;
    Ok(m_t.transpose())
}

/// Semilinear involution on the abelian block: diagonalize H by congruence,
/// conjugate in the diagonalizing coordinates.
fn abelian_sigma(pair: &ApkPair) -> Result<CMat> {
    let (q, _diag) = pair.gram().congruence_diagonalize()?;
    let q_inv = q.inverse().ok_or_else(|| {
        Error::internal("congruence transform must be invertible", "singular Q")
    })?;
    Ok(q.mul(&conj_mat(&q_inv)))
}

/// Check all involution identities, extract the real form {x + σx}, the
/// recovered (A, B), and the verified isomorphism onto standard_pk(A, B).
fn certificate_from_sigma(pair: &ApkPair, sigma_mat: CMat) -> Result<RealFormCertificate> {
    let n = pair.dim();
    let sigma = SemilinearOperator::new(sigma_mat);
    let g = pair.gram();
    // sigma^2 = id
    if sigma.compose_semi(&sigma).mat != CMat::identity(n) {
        return Err(Error::internal("σ² = id", "involution identity fails"));
    }
    // H(sigma x, sigma y) = conj(H(x,y)):  Mᵀ G conj(M) = conj(G)
    let lhs = sigma.mat.transpose().mul(g.mat()).mul(&conj_mat(&sigma.mat));
    if lhs != conj_mat(g.mat()) {
        return Err(Error::internal(
            "H(σx, σy) = conj(H(x, y))",
            "Gram identity fails",
        ));
    }
    for i in 0..n {
        for j in 0..n {
            // multiplicativity σ(xy) = σ(x)σ(y)
            let lhs = sigma.apply(pair.algebra().basis_product(i, j));
            let si = sigma.apply(&unit_vec(n, i));
            let sj = sigma.apply(&unit_vec(n, j));
            let rhs = pair.algebra().mult(&si, &sj);
            if lhs != rhs {
                return Err(Error::internal(
                    "σ(xy) = σ(x)σ(y)",
                    format!("basis pair ({i}, {j})"),
                ));
            }
            // H(xy, z) = H(x, σ(y)z)
            for k in 0..n {
                let lhs = g.form(pair.algebra().basis_product(i, j), &unit_vec(n, k));
                let rhs = g.form(
                    &unit_vec(n, i),
                    &pair.algebra().mult(&sj, &unit_vec(n, k)),
                );
                if lhs != rhs {
                    return Err(Error::internal(
                        "H(xy, z) = H(x, σ(y)z)",
                        format!("basis triple ({i}, {j}, {k})"),
                    ));
                }
            }
        }
    }
    // real form basis: echelon of {e_j + σe_j, i e_j + σ(i e_j)} over ℚ,
    // taken in the realified chart with deterministic pivoting
    let mut spanning: Vec<Vec<Rat>> = Vec::with_capacity(2 * n);
    for j in 0..n {
        let e = unit_vec(n, j);
        spanning.push(realify_vec(&vec_add(&e, &sigma.apply(&e))));
        let ie: Vec<CRat> = e.iter().map(|z| z.clone() * CRat::i()).collect();
        spanning.push(realify_vec(&vec_add(&ie, &sigma.apply(&ie))));
    }
    let nonzero: Vec<Vec<Rat>> = spanning
        .into_iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    let a_basis: Vec<Vec<CRat>> = if nonzero.is_empty() {
        Vec::new()
    } else {
        let r = RMat::from_rows(nonzero).rref();
        (0..r.rank).map(|i| complexify_vec(r.mat.row(i))).collect()
    };
    if a_basis.len() != n {
        return Err(Error::internal(
            "real form must have real dimension n",
            format!("got {} instead of {}", a_basis.len(), n),
        ));
    }
    // structure constants of A over ℚ: solve a_i a_j in the basis {a_k}
    let basis_real = RMat::from_fn(2 * n, n, |r, c| realify_vec(&a_basis[c])[r].clone());
    let mut table = vec![vec![vec![Rat::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let prod = pair.algebra().mult(&a_basis[i], &a_basis[j]);
            let coords = basis_real.solve_vec(&realify_vec(&prod)).ok_or_else(|| {
                Error::internal(
                    "real form must be closed under multiplication",
                    format!("basis pair ({i}, {j})"),
                )
            })?;
            table[i][j] = coords;
        }
    }
    let algebra = RealAlgebra::new(table).map_err(|e| {
        Error::internal("recovered real form must be associative", e.to_string())
    })?;
    // B(a, b) = -¼ H(a, b), real-valued on the real form
    let quarter = rat(-1, 4);
    let mut b = RMat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let h = g.form(&a_basis[i], &a_basis[j]);
            if !h.im.is_zero() {
                return Err(Error::internal(
                    "H must be real-valued on the real form",
                    format!("H(a_{i}, a_{j}) = {h}"),
                ));
            }
            b.set(i, j, &h.re * &quarter);
        }
    }
    let recovered = RealSymmetricAlgebra::new(algebra, b).map_err(|e| {
        Error::internal("recovered (A, B) must be a symmetric algebra", e.to_string())
    })?;
    // isomorphism aff(A) → g_U, ψ(a, b) = -(a + ib)/2, columns in the
    // canonical charts of both sides
    let half = rat(-1, 2);
    let mut iso = RMat::zeros(2 * n, 2 * n);
    for k in 0..n {
        let col = realify_vec(&a_basis[k]);
        let icol = realify_vec(
            &a_basis[k]
                .iter()
                .map(|z| z.clone() * CRat::i())
                .collect::<Vec<_>>(),
        );
        for r in 0..2 * n {
            iso.set(r, k, &col[r] * &half);
            iso.set(r, n + k, &icol[r] * &half);
        }
    }
    let l_std = standard_pk(&recovered)?;
    let l_u = build_lie(pair)?;
    verify_holo_symplecto(&l_std, &l_u, &iso)?;
    Ok(RealFormCertificate {
        sigma,
        a_basis,
        recovered,
        iso,
    })
}

/// U = ann(U) ⊕ ann(U)^⊥ as an orthogonal sum of ideals, when the
/// intersection is trivial. Returns the two restricted pairs and the basis
/// change (columns: ann basis then complement basis); `None` when
/// ann ∩ ann^⊥ ≠ 0 and the caller should reduce instead.
pub fn split_ann(pair: &ApkPair) -> Result<Option<(ApkPair, ApkPair, CMat)>> {
    let ann = pair.annihilator();
    let perp = pair.gram().orthogonal_complement(&ann)?;
    if !ann.intersect(&perp).is_zero() {
        return Ok(None);
    }
    let n = pair.dim();
    let mut basis: Vec<Vec<CRat>> = ann.basis().to_vec();
    basis.extend(perp.basis().to_vec());
    debug_assert_eq!(basis.len(), n);
    let p_ann = pair.restrict(ann.basis(), None)?;
    let p_perp = pair.restrict(perp.basis(), None)?;
    let c = CMat::from_fn(n, n, |r, col| basis[col][r].clone());
    // direct_sum(P_ann, P_perp) equals P after the basis change
    let combined = p_ann.direct_sum(&p_perp)?;
    let recombined = transform_pair(pair, &c)?;
    if combined.algebra().table() != recombined.algebra().table()
        || combined.gram().mat() != recombined.gram().mat()
    {
        return Err(Error::internal(
            "splitting must reproduce the pair as a direct sum",
            "basis-changed pair differs from the block sum",
        ));
    }
    Ok(Some((p_ann, p_perp, c)))
}

/// The pair expressed in the basis given by the columns of `c`.
pub fn transform_pair(pair: &ApkPair, c: &CMat) -> Result<ApkPair> {
    let n = pair.dim();
    let cols: Vec<Vec<CRat>> = (0..n).map(|j| c.col(j)).collect();
    pair.restrict(&cols, None)
}

/// Outcome of aff(A) detection.
#[derive(Clone, Debug)]
pub enum AffDetection {
    Aff(RealFormCertificate),
    NotReducible,
}

/// When ann ∩ ann^⊥ = 0: split off the annihilator, build σ on the
/// complement by the adjoint solve and on the annihilator by congruence
/// diagonalization, and assemble the combined real form with its verified
/// isomorphism. Otherwise the pair is a proper double extension and is
/// reported as not aff-reducible.
pub fn detect_aff(pair: &ApkPair) -> Result<AffDetection> {
    let Some((p_ann, p_perp, c)) = split_ann(pair)? else {
        return Ok(AffDetection::NotReducible);
    };
    let m = p_ann.dim();
    let k = p_perp.dim();
    let s0 = abelian_sigma(&p_ann)?;
    let s1 = if k == 0 {
        CMat::zeros(0, 0)
    } else {
        solve_sigma(&p_perp)?
    };
    // block σ in the split coordinates, pulled back to the original chart
    let s_split = CMat::from_fn(m + k, m + k, |r, col| {
        if r < m && col < m {
            s0.at(r, col).clone()
        } else if r >= m && col >= m {
            s1.at(r - m, col - m).clone()
        } else {
            CRat::zero()
        }
    });
    let c_inv = c.inverse().ok_or_else(|| {
        Error::internal("split basis change must be invertible", "singular C")
    })?;
    let sigma = c.mul(&s_split).mul(&conj_mat(&c_inv));
    let cert = certificate_from_sigma(pair, sigma)?;
    Ok(AffDetection::Aff(cert))
}

/// Verify a user-supplied unital decomposition A = ann(A) ⊕ e_1 A ⊕ ... ⊕ e_p A.
/// This checks a decomposition; it never searches for idempotents.
pub fn verify_unital_decomposition(
    s: &RealSymmetricAlgebra,
    idempotents: &[Vec<Rat>],
) -> ValidationReport {
    let mut report = ValidationReport::new();
    let a = s.algebra();
    let n = a.dim();
    let fmt = |v: &[Rat]| {
        let parts: Vec<String> = v.iter().map(crate::scalar::rat_to_string).collect();
        format!("({})", parts.join(", "))
    };
    let cvecs = |v: &[Rat]| -> Vec<CRat> { v.iter().map(|x| CRat::from_rat(x.clone())).collect() };
    let mut ideals: Vec<Subspace> = Vec::new();
    for (i, e) in idempotents.iter().enumerate() {
        if vec_is_zero(&cvecs(e)) {
            report.push("idempotent e ≠ 0", vec![i], fmt(e), "nonzero");
        }
        let sq = a.mult(e, e);
        if sq != *e {
            report.push("idempotency e·e = e", vec![i], fmt(&sq), fmt(e));
        }
        let gens: Vec<Vec<CRat>> = (0..n)
            .map(|j| {
                let mut basis_j = vec![Rat::zero(); n];
                basis_j[j] = Rat::from_integer(1.into());
                cvecs(&a.mult(e, &basis_j))
            })
            .collect();
        let ideal = Subspace::from_spanning(n, &gens);
        // e acts as the unit on e·A
        for v in ideal.basis() {
            let vr: Vec<Rat> = v.iter().map(|z| z.re.clone()).collect();
            if a.mult(e, &vr) != vr {
                report.push(
                    "unit action e·a = a on e·A",
                    vec![i],
                    fmt(&a.mult(e, &vr)),
                    fmt(&vr),
                );
            }
        }
        ideals.push(ideal);
    }
    let bform = |x: &[Rat], y: &[Rat]| -> Rat {
        let by = s.b().mul_vec(y);
        x.iter()
            .zip(by.iter())
            .map(|(p, q)| p * q)
            .fold(Rat::zero(), |acc, v| &acc + &v)
    };
    for i in 0..ideals.len() {
        for j in (i + 1)..ideals.len() {
            for v in ideals[i].basis() {
                for w in ideals[j].basis() {
                    let vr: Vec<Rat> = v.iter().map(|z| z.re.clone()).collect();
                    let wr: Vec<Rat> = w.iter().map(|z| z.re.clone()).collect();
                    let prod = a.mult(&vr, &wr);
                    if prod.iter().any(|x| !x.is_zero()) {
                        report.push(
                            "mutual annihilation (e_i A)(e_j A) = 0",
                            vec![i, j],
                            fmt(&prod),
                            "(0)",
                        );
                    }
                    let bv = bform(&vr, &wr);
                    if !bv.is_zero() {
                        report.push(
                            "B-orthogonality B(e_i A, e_j A) = 0",
                            vec![i, j],
                            crate::scalar::rat_to_string(&bv),
                            "0",
                        );
                    }
                }
            }
        }
    }
    // together with ann(A), the ideals must span A directly
    let ann = a.complexify(None).annihilator();
    let mut total = ann.clone();
    let mut dim_sum = ann.dim();
    for ideal in &ideals {
        dim_sum += ideal.dim();
        total = total.sum(ideal);
    }
    if total != Subspace::whole(n) || dim_sum != n {
        report.push(
            "spanning ann(A) ⊕ e_1 A ⊕ ... ⊕ e_p A = A",
            vec![],
            format!("dimension sum {dim_sum}, joint span dim {}", total.dim()),
            format!("{n} (residual nilpotent part is not allowed)"),
        );
    }
    report
}
