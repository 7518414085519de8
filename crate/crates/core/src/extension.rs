//! One-dimensional central extensions, generalized semidirect products, APK
//! double extensions, reduction vectors and the full reduction tower.

use crate::apk::ApkPair;
use crate::assoc::AssocAlgebra;
use crate::error::{Error, Result, ValidationReport};
use crate::exactlin::{
    h_adjoint, unit_vec, vec_scale, vec_sub, CMat, HermitianGram, LinearOperator,
    SemilinearOperator, Subspace,
};
use crate::realform::transform_pair;
use crate::scalar::{rat, CRat, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

fn fmt_vec(v: &[CRat]) -> String {
    let parts: Vec<String> = v.iter().map(|z| z.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// The tuple (D, τ, a₀, b₀, ε, α₀) parameterizing an APK double extension.
/// τ is stored as the matrix of a semilinear operator (`v ↦ τ·conj(v)`).
#[derive(Clone, PartialEq, Debug)]
pub struct DoubleExtensionData {
    pub d: CMat,
    pub tau: CMat,
    pub a0: Vec<CRat>,
    pub b0: Vec<CRat>,
    pub eps: CRat,
    pub alpha0: CRat,
}

impl DoubleExtensionData {
    pub fn trivial(dim: usize) -> Self {
        DoubleExtensionData {
            d: CMat::zeros(dim, dim),
            tau: CMat::zeros(dim, dim),
            a0: vec![CRat::zero(); dim],
            b0: vec![CRat::zero(); dim],
            eps: CRat::zero(),
            alpha0: CRat::zero(),
        }
    }
}

/// Every hypothesis of the double-extension construction, each violation
/// reported with the specific identity named.
pub fn validate_extension_data(
    pair: &ApkPair,
    data: &DoubleExtensionData,
) -> Result<ValidationReport> {
    let n = pair.dim();
    if data.d.rows() != n || data.tau.rows() != n || data.a0.len() != n || data.b0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: data.d.rows(),
            context: "double extension data".into(),
        });
    }
    let mut report = ValidationReport::new();
    let alg = pair.algebra();
    let g = pair.gram();
    let d_op = LinearOperator::new(data.d.clone());
    let tau_op = SemilinearOperator::new(data.tau.clone());
    let d_star = h_adjoint(&d_op, g)?;
    for i in 0..n {
        for j in 0..n {
            let lhs = d_op.apply(alg.basis_product(i, j));
            let rhs = alg.mult(&d_op.apply(&unit_vec(n, i)), &unit_vec(n, j));
            if lhs != rhs {
                report.push("D(xy) = (Dx)y", vec![i, j], fmt_vec(&lhs), fmt_vec(&rhs));
            }
            let lhs = g.form(&unit_vec(n, i), &tau_op.apply(&unit_vec(n, j)));
            let rhs = g
                .form(&tau_op.apply(&unit_vec(n, i)), &unit_vec(n, j))
                .conj();
            if lhs != rhs {
                report.push(
                    "H(x, τy) = conj(H(τx, y))",
                    vec![i, j],
                    lhs.to_string(),
                    rhs.to_string(),
                );
            }
        }
    }
    let d_sq = data.d.mul(&data.d).sub(&data.d.scale(&data.eps));
    let r_a0 = pair.right_mult(&data.a0)?.mat;
    if d_sq != r_a0 {
        report.push("D² - εD = R_{a₀}", vec![], "D² - εD", "R_{a₀}");
    }
    let lhs = tau_op.apply(&data.a0);
    let rhs = vec_sub(
        &d_star.apply(&data.b0),
        &vec_scale(&data.eps, &data.b0),
    );
    if lhs != rhs {
        report.push("τa₀ = (D* - ε·id)b₀", vec![], fmt_vec(&lhs), fmt_vec(&rhs));
    }
    let tau_sq = tau_op.compose_semi(&tau_op).mat;
    let r_b0 = pair.right_mult(&data.b0)?.mat;
    if tau_sq != r_b0 {
        report.push("τ² = R_{b₀}", vec![], "τ²", "R_{b₀}");
    }
    let dd_star = data.d.mul(&d_star.mat);
    if dd_star != r_b0 {
        report.push("DD* = R_{b₀}", vec![], "DD*", "R_{b₀}");
    }
    let lhs = tau_op.apply(&data.b0);
    let rhs = d_op.apply(&data.b0);
    if lhs != rhs {
        report.push("τb₀ = Db₀", vec![], fmt_vec(&lhs), fmt_vec(&rhs));
    }
    let d_tau = d_op.compose_semi(&tau_op);
    let tau_d_star = tau_op.compose_linear(&d_star);
    if d_tau != tau_d_star {
        report.push("Dτ = τD*", vec![], "Dτ", "τD*");
    }
    for x in 0..n {
        let rx = pair.right_mult(&unit_vec(n, x))?;
        let sx = pair.basis_adjoint(x);
        if tau_op.compose_linear(sx) != rx.compose_semi(&tau_op) {
            report.push("τR*_x = R_xτ", vec![x], "τR*_x", "R_xτ");
        }
        if tau_op.compose_linear(&rx) != sx.compose_semi(&tau_op) {
            report.push("τR_x = R*_xτ", vec![x], "τR_x", "R*_xτ");
        }
        let lhs = data.d.mul(&sx.mat);
        let rhs = pair.right_mult(&tau_op.apply(&unit_vec(n, x)))?.mat;
        if lhs != rhs {
            report.push("DR*_x = R_{τx}", vec![x], "DR*_x", "R_{τx}");
        }
        let lhs = tau_op.apply(&d_op.apply(&unit_vec(n, x)));
        let rhs = sx.apply(&data.b0);
        if lhs != rhs {
            report.push("τDx = R*_x b₀", vec![x], fmt_vec(&lhs), fmt_vec(&rhs));
        }
    }
    Ok(report)
}

/// Central extension of U by a symmetric bilinear φ with φ(xy,z) = φ(x,yz):
/// the algebra on U ⊕ ℂu₀ with (x + αu₀)(x' + α'u₀) = xx' + φ(x,x')u₀,
/// basis ordered (e_1..e_n, u₀).
pub fn central_extension(algebra: &AssocAlgebra, phi: &CMat) -> Result<AssocAlgebra> {
    let n = algebra.dim();
    if phi.rows() != n || phi.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: phi.rows(),
            context: "central extension form".into(),
        });
    }
    let mut report = ValidationReport::new();
    let eval = |x: &[CRat], y: &[CRat]| -> CRat {
        let py = phi.mul_vec(y);
        let mut acc = CRat::zero();
        for (a, b) in x.iter().zip(py.iter()) {
            acc = acc + a.clone() * b.clone();
        }
        acc
    };
    for i in 0..n {
        for j in 0..n {
            if phi.at(i, j) != phi.at(j, i) {
                report.push(
                    "φ symmetric",
                    vec![i, j],
                    phi.at(i, j).clone(),
                    phi.at(j, i).clone(),
                );
            }
            for k in 0..n {
                let lhs = eval(algebra.basis_product(i, j), &unit_vec(n, k));
                let rhs = eval(&unit_vec(n, i), algebra.basis_product(j, k));
                if lhs != rhs {
                    report.push("φ(xy, z) = φ(x, yz)", vec![i, j, k], lhs, rhs);
                }
            }
        }
    }
    report.into_result()?;
    let m = n + 1;
    let mut table = vec![vec![vec![CRat::zero(); m]; m]; m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                table[i][j][k] = algebra.basis_product(i, j)[k].clone();
            }
            table[i][j][n] = phi.at(i, j).clone();
        }
    }
    let mut labels: Vec<String> = algebra.labels().to_vec();
    labels.push("u0".into());
    AssocAlgebra::new(table, Some(labels))
}

/// Generalized semidirect product of U and ℂv by (δ, x₀) with v² = εv:
/// requires δ(xy) = (δx)y and δ² - εδ = R_{x₀}. Basis ordered (v, e_1..e_n).
pub fn semidirect(
    algebra: &AssocAlgebra,
    delta: &CMat,
    x0: &[CRat],
    eps: &CRat,
) -> Result<AssocAlgebra> {
    let n = algebra.dim();
    if delta.rows() != n || x0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: delta.rows(),
            context: "semidirect product data".into(),
        });
    }
    let mut report = ValidationReport::new();
    for i in 0..n {
        for j in 0..n {
            let lhs = delta.mul_vec(algebra.basis_product(i, j));
            let rhs = algebra.mult(&delta.mul_vec(&unit_vec(n, i)), &unit_vec(n, j));
            if lhs != rhs {
                report.push("δ(xy) = (δx)y", vec![i, j], fmt_vec(&lhs), fmt_vec(&rhs));
            }
        }
    }
    let lhs = delta.mul(delta).sub(&delta.scale(eps));
    let rhs = algebra.right_mult(x0)?.mat;
    if lhs != rhs {
        report.push("δ² - εδ = R_{x₀}", vec![], "δ² - εδ", "R_{x₀}");
    }
    report.into_result()?;
    let m = n + 1;
    let mut table = vec![vec![vec![CRat::zero(); m]; m]; m];
    // v⋆v = εv + x₀
    table[0][0][0] = eps.clone();
    for k in 0..n {
        table[0][0][1 + k] = x0[k].clone();
    }
    for i in 0..n {
        let di = delta.mul_vec(&unit_vec(n, i));
        for k in 0..n {
            table[0][1 + i][1 + k] = di[k].clone();
            table[1 + i][0][1 + k] = di[k].clone();
        }
        for j in 0..n {
            for k in 0..n {
                table[1 + i][1 + j][1 + k] = algebra.basis_product(i, j)[k].clone();
            }
        }
    }
    let mut labels: Vec<String> = vec!["v0".into()];
    labels.extend(algebra.labels().iter().cloned());
    AssocAlgebra::new(table, Some(labels))
}

/// APK double extension: the (dim+2)-dimensional pair on ℂv₀ ⊕ U ⊕ ℂu₀ with
/// the product x⋆y = xy + H(x,τy)u₀, v₀⋆x = Dx + H(x,b₀)u₀,
/// v₀⋆v₀ = εv₀ + a₀ + α₀u₀ and the hyperbolically enlarged form. The result
/// is asserted compatible and the signature grows by exactly (1, 1).
pub fn double_extend(pair: &ApkPair, data: &DoubleExtensionData) -> Result<ApkPair> {
    validate_extension_data(pair, data)?.into_result()?;
    let n = pair.dim();
    let m = n + 2;
    let tau_op = SemilinearOperator::new(data.tau.clone());
    let g = pair.gram();
    // basis order: v₀ = 0, U = 1..=n, u₀ = n+1
    let mut table = vec![vec![vec![CRat::zero(); m]; m]; m];
    table[0][0][0] = data.eps.clone();
    for k in 0..n {
        table[0][0][1 + k] = data.a0[k].clone();
    }
    table[0][0][n + 1] = data.alpha0.clone();
    for i in 0..n {
        let di = data.d.mul_vec(&unit_vec(n, i));
        let hb = g.form(&unit_vec(n, i), &data.b0);
        for k in 0..n {
            table[0][1 + i][1 + k] = di[k].clone();
            table[1 + i][0][1 + k] = di[k].clone();
        }
        table[0][1 + i][n + 1] = hb.clone();
        table[1 + i][0][n + 1] = hb;
        for j in 0..n {
            let prod = pair.algebra().basis_product(i, j);
            for k in 0..n {
                table[1 + i][1 + j][1 + k] = prod[k].clone();
            }
            table[1 + i][1 + j][n + 1] =
                g.form(&unit_vec(n, i), &tau_op.apply(&unit_vec(n, j)));
        }
    }
    let mut labels: Vec<String> = vec!["v0".into()];
    labels.extend(pair.algebra().labels().iter().cloned());
    labels.push("u0".into());
    let algebra = AssocAlgebra::new(table, Some(labels)).map_err(|e| {
        Error::internal(
            "double extension must stay commutative associative",
            e.to_string(),
        )
    })?;
    let gram = CMat::from_fn(m, m, |r, c| {
        if r == 0 && c == m - 1 {
            CRat::one() // H(v₀, u₀) = conj(H(u₀, v₀)) = 1
        } else if r == m - 1 && c == 0 {
            CRat::one() // H(u₀, v₀) = 1
        } else if (1..=n).contains(&r) && (1..=n).contains(&c) {
            g.entry(r - 1, c - 1).clone()
        } else {
            CRat::zero()
        }
    });
    let extended = ApkPair::new(algebra, HermitianGram::new(gram)?).map_err(|e| {
        Error::internal("double extension must be APK-compatible", e.to_string())
    })?;
    let (p0, q0) = pair.signature()?;
    let (p1, q1) = extended.signature()?;
    if (p1, q1) != (p0 + 1, q0 + 1) {
        return Err(Error::internal(
            "double extension must add a hyperbolic plane to the signature",
            format!("({p0}, {q0}) -> ({p1}, {q1})"),
        ));
    }
    Ok(extended)
}

/// Certificate for one reduction step: u₀ ∈ ann(U) ∩ R*_U U with
/// R*_x u₀ = λ(x)·u₀, the hyperbolic partner v₀, and the basis change
/// (columns v₀, U₁-basis, u₀).
#[derive(Clone, Debug)]
pub struct ReductionCertificate {
    pub u0: Vec<CRat>,
    /// values λ(e_j); λ extends semilinearly, λ(x) = Σ conj(x_j) λ_j
    pub lambda: Vec<CRat>,
    pub v0: Vec<CRat>,
    pub basis_change: CMat,
}

impl ReductionCertificate {
    pub fn lambda_eval(&self, x: &[CRat]) -> CRat {
        let mut acc = CRat::zero();
        for (xj, lj) in x.iter().zip(self.lambda.iter()) {
            acc = acc + xj.conj() * lj.clone();
        }
        acc
    }
}

// --- exact Gaussian-integer arithmetic for the eigenvalue search ---

#[derive(Clone, PartialEq, Debug)]
struct GaussInt {
    re: BigInt,
    im: BigInt,
}

impl GaussInt {
    fn new(re: BigInt, im: BigInt) -> Self {
        GaussInt { re, im }
    }

    fn one() -> Self {
        GaussInt::new(BigInt::one(), BigInt::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    fn mul(&self, other: &GaussInt) -> GaussInt {
        GaussInt::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }

    fn conj(&self) -> GaussInt {
        GaussInt::new(self.re.clone(), -self.im.clone())
    }

    /// Exact division when `other` divides `self`.
    fn exact_div(&self, other: &GaussInt) -> Option<GaussInt> {
        let n = other.norm();
        let prod = self.mul(&other.conj());
        if (&prod.re % &n).is_zero() && (&prod.im % &n).is_zero() {
            Some(GaussInt::new(&prod.re / &n, &prod.im / &n))
        } else {
            None
        }
    }

    fn to_crat(&self) -> CRat {
        CRat::new(
            Rat::from_integer(self.re.clone()),
            Rat::from_integer(self.im.clone()),
        )
    }
}

/// Trial-division factorization; complete for cofactors below 10^12.
fn factor_integer(mut m: BigInt) -> Result<Vec<(BigInt, u32)>> {
    let mut factors = Vec::new();
    let mut p = BigInt::from(2u32);
    let bound = BigInt::from(1_000_000u64);
    while &p * &p <= m && p <= bound {
        let mut e = 0u32;
        while (&m % &p).is_zero() {
            m = &m / &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p.clone(), e));
        }
        p += 1u32;
    }
    if m > BigInt::one() {
        // all remaining factors exceed 10^6, so a cofactor below 10^12 is prime
        if m > BigInt::from(1_000_000_000_000u64) {
            return Err(Error::Unsupported {
                message: format!("integer {m} too large to factor exactly"),
            });
        }
        factors.push((m, 1));
    }
    Ok(factors)
}

/// Gaussian prime of norm p for p ≡ 1 (mod 4) or p = 2, by direct search.
fn gauss_prime_over(p: &BigInt) -> GaussInt {
    let mut a = BigInt::one();
    loop {
        let rem = p - &a * &a;
        if rem <= BigInt::zero() {
            unreachable!("p is a sum of two squares");
        }
        let b = rem.sqrt();
        if &b * &b == rem {
            return GaussInt::new(a, b);
        }
        a += 1u32;
    }
}

/// All divisors of a nonzero Gaussian integer, up to units.
fn gauss_divisors(z: &GaussInt) -> Result<Vec<GaussInt>> {
    let norm = z.norm();
    if norm.is_one() {
        return Ok(vec![GaussInt::one()]);
    }
    let factors = factor_integer(norm)?;
    let mut primes: Vec<(GaussInt, u32)> = Vec::new();
    let mut rem = z.clone();
    for (p, _) in &factors {
        let candidates = if p == &BigInt::from(2u32) {
            vec![GaussInt::new(BigInt::one(), BigInt::one())]
        } else if (p % BigInt::from(4u32)) == BigInt::one() {
            let pi = gauss_prime_over(p);
            vec![pi.clone(), pi.conj()]
        } else {
            vec![GaussInt::new(p.clone(), BigInt::zero())]
        };
        for pi in candidates {
            let mut e = 0u32;
            while let Some(q) = rem.exact_div(&pi) {
                rem = q;
                e += 1;
            }
            if e > 0 {
                primes.push((pi, e));
            }
        }
    }
    let mut divisors = vec![GaussInt::one()];
    for (pi, e) in &primes {
        let mut next = Vec::with_capacity(divisors.len() * (*e as usize + 1));
        for d in &divisors {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..*e {
                acc = acc.mul(pi);
                next.push(acc.clone());
            }
        }
        divisors = next;
        if divisors.len() > 100_000 {
            return Err(Error::Unsupported {
                message: "too many divisor candidates in the eigenvalue search".into(),
            });
        }
    }
    Ok(divisors)
}

fn fmt_poly(coeffs: &[CRat]) -> String {
    let d = coeffs.len() - 1;
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| format!("({})t^{}", c, d - k))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Characteristic polynomial det(tI - M) over ℚ(i), coefficients from t^d
/// down to t^0 (Faddeev-LeVerrier).
fn char_poly(m: &CMat) -> Vec<CRat> {
    let d = m.rows();
    let mut coeffs = vec![CRat::one()];
    let mut aux = m.clone();
    for k in 1..=d {
        let c = (-aux.trace())
            .checked_div(&CRat::from_int(k as i64))
            .expect("k > 0");
        coeffs.push(c.clone());
        if k < d {
            let mut shifted = aux.clone();
            for t in 0..d {
                shifted.set(t, t, shifted.at(t, t).clone() + c.clone());
            }
            aux = m.mul(&shifted);
        }
    }
    coeffs
}

fn eval_poly(coeffs: &[CRat], x: &CRat) -> CRat {
    let mut acc = CRat::zero();
    for c in coeffs {
        acc = acc * x.clone() + c.clone();
    }
    acc
}

/// All roots of a polynomial over ℚ(i) that lie in ℚ(i), by the rational
/// root theorem in the Gaussian integers. Exact: a root outside the field is
/// never silently approximated, it is simply not in the returned list.
fn gaussian_rational_roots(coeffs: &[CRat]) -> Result<Vec<CRat>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.first().is_some_and(|c| c.is_zero()) {
        coeffs.remove(0);
    }
    if coeffs.len() <= 1 {
        return Ok(Vec::new());
    }
    let mut roots = Vec::new();
    // strip powers of t
    while coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
        if !roots.contains(&CRat::zero()) {
            roots.push(CRat::zero());
        }
    }
    if coeffs.len() <= 1 {
        return Ok(roots);
    }
    // clear denominators into Z[i]
    let mut lcm = BigInt::one();
    for c in &coeffs {
        lcm = lcm.lcm(c.re.denom());
        lcm = lcm.lcm(c.im.denom());
    }
    let scaled: Vec<GaussInt> = coeffs
        .iter()
        .map(|c| {
            GaussInt::new(
                c.re.numer() * (&lcm / c.re.denom()),
                c.im.numer() * (&lcm / c.im.denom()),
            )
        })
        .collect();
    let lead = scaled.first().unwrap();
    let tail = scaled.last().unwrap();
    debug_assert!(!lead.is_zero() && !tail.is_zero());
    let units = [
        CRat::one(),
        -CRat::one(),
        CRat::i(),
        -CRat::i(),
    ];
    let mut seen: Vec<CRat> = Vec::new();
    for g in gauss_divisors(tail)? {
        for h in gauss_divisors(lead)? {
            let base = g.to_crat().checked_div(&h.to_crat())?;
            for u in &units {
                let cand = base.clone() * u.clone();
                if seen.contains(&cand) {
                    continue;
                }
                seen.push(cand.clone());
                if eval_poly(&coeffs, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort_by(|a, b| (&a.re, &a.im).cmp(&(&b.re, &b.im)));
    roots.dedup();
    Ok(roots)
}

/// Matrix of `op` restricted to the span of `basis` (which must be stable).
fn restrict_op(op: &CMat, basis: &[Vec<CRat>]) -> Result<CMat> {
    let n = op.rows();
    let k = basis.len();
    let b = CMat::from_fn(n, k, |r, c| basis[c][r].clone());
    let image = op.mul(&b);
    b.solve(&image).ok_or_else(|| {
        Error::internal(
            "subspace must be stable under the restricted operator",
            "solve failed",
        )
    })
}

/// Common eigenvector of a commuting family on `space`, over ℚ(i). The
/// search branches over the Gaussian-rational eigenvalues of each member and
/// recurses into eigenspaces; nilpotent members contribute the eigenvalue 0,
/// so all-nilpotent families reduce to iterated kernel intersection. When a
/// needed eigenvalue lies outside ℚ(i) the search reports the offending
/// characteristic polynomial instead of approximating.
fn common_eigenvector(ops: &[CMat], space: &Subspace) -> Result<Vec<CRat>> {
    fn go(ops: &[CMat], k: usize, space: &Subspace) -> Result<Vec<CRat>> {
        if k == ops.len() {
            return Ok(space.basis()[0].clone());
        }
        let basis = space.basis();
        let a = restrict_op(&ops[k], basis)?;
        let dim = basis.len();
        // scalar restrictions constrain nothing
        let is_scalar = {
            let diag = a.at(0, 0).clone();
            a == CMat::identity(dim).scale(&diag)
        };
        if is_scalar {
            return go(ops, k + 1, space);
        }
        let p = char_poly(&a);
        let roots = gaussian_rational_roots(&p)?;
        if roots.is_empty() {
            return Err(Error::EigenvalueOutsideField {
                char_poly: fmt_poly(&p),
            });
        }
        let mut last_err = None;
        for mu in roots {
            let shifted = a.sub(&CMat::identity(dim).scale(&mu));
            let ker = shifted.kernel();
            if ker.is_empty() {
                continue;
            }
            // lift the eigenspace to ambient coordinates
            let lifted: Vec<Vec<CRat>> = ker
                .iter()
                .map(|coeffs| {
                    let mut v = vec![CRat::zero(); space.ambient()];
                    for (c, bv) in coeffs.iter().zip(basis.iter()) {
                        for (t, x) in v.iter_mut().zip(bv.iter()) {
                            *t = t.clone() + c.clone() * x.clone();
                        }
                    }
                    v
                })
                .collect();
            let eigenspace = Subspace::from_spanning(space.ambient(), &lifted);
            match go(ops, k + 1, &eigenspace) {
                Ok(v) => return Ok(v),
                Err(e) => last_err = Some(e),
            }
        }
        Err(last_err.unwrap_or_else(|| {
            Error::internal("eigenvalue branches exhausted", fmt_poly(&p))
        }))
    }
    go(ops, 0, space)
}

/// A reduction vector and its certificate, or `None` exactly when
/// ann(U) ∩ ann(U)^⊥ = 0 (the pair is a tower base).
pub fn find_reduction_vector(pair: &ApkPair) -> Result<Option<ReductionCertificate>> {
    let n = pair.dim();
    let ann = pair.annihilator();
    let perp = pair.gram().orthogonal_complement(&ann)?;
    let w = ann.intersect(&perp);
    if w.is_zero() {
        return Ok(None);
    }
    let ops: Vec<CMat> = (0..n).map(|j| pair.basis_adjoint(j).mat.clone()).collect();
    let u0 = common_eigenvector(&ops, &w)?;
    // eigenvalues λ(e_j) read off the found vector
    let pivot = u0.iter().position(|z| !z.is_zero()).expect("u0 nonzero");
    let mut lambda = Vec::with_capacity(n);
    for op in &ops {
        let image = op.mul_vec(&u0);
        let lj = image[pivot].checked_div(&u0[pivot])?;
        if image != vec_scale(&lj, &u0) {
            return Err(Error::internal(
                "reduction vector must be a common eigenvector",
                fmt_vec(&image),
            ));
        }
        lambda.push(lj);
    }
    if !pair.gram().form(&u0, &u0).is_zero() {
        return Err(Error::internal(
            "reduction vector must be isotropic",
            fmt_vec(&u0),
        ));
    }
    // hyperbolic partner: first basis vector pairing with u₀, normalized and
    // shifted to be isotropic
    let g = pair.gram();
    let a = (0..n)
        .find(|&a| !g.form(&u0, &unit_vec(n, a)).is_zero())
        .expect("H is non-degenerate");
    let c = g.form(&u0, &unit_vec(n, a)).inv()?.conj();
    let mut v0 = vec_scale(&c, &unit_vec(n, a));
    let hvv = g.form(&v0, &v0);
    debug_assert!(hvv.is_real());
    let shift = vec_scale(&CRat::from_rat(&hvv.re * &rat(1, 2)), &u0);
    v0 = vec_sub(&v0, &shift);
    if !g.form(&v0, &v0).is_zero() || g.form(&u0, &v0) != CRat::one() {
        return Err(Error::internal(
            "hyperbolic partner normalization",
            fmt_vec(&v0),
        ));
    }
    // U₁ = {u₀, v₀}^⊥ and the certificate basis (v₀, U₁, u₀)
    let plane = Subspace::from_spanning(n, &[u0.clone(), v0.clone()]);
    let u1 = g.orthogonal_complement(&plane)?;
    let mut cols: Vec<Vec<CRat>> = vec![v0.clone()];
    cols.extend(u1.basis().to_vec());
    cols.push(u0.clone());
    if cols.len() != n {
        return Err(Error::internal(
            "certificate basis must have full dimension",
            format!("{} of {}", cols.len(), n),
        ));
    }
    let basis_change = CMat::from_fn(n, n, |r, c| cols[c][r].clone());
    Ok(Some(ReductionCertificate {
        u0,
        lambda,
        v0,
        basis_change,
    }))
}

/// One reduction step: the pair on U₁ = (ℂu₀ + ℂv₀)^⊥ with the projected
/// product, plus the extracted extension data. The reconstruction
/// double_extend(P₁, data) is asserted to reproduce the pair entrywise in
/// the certificate's basis.
pub fn reduce(pair: &ApkPair) -> Result<(ApkPair, DoubleExtensionData, ReductionCertificate)> {
    let cert = find_reduction_vector(pair)?.ok_or_else(|| {
        Error::precondition("pair has ann(U) ∩ ann(U)^⊥ = 0; nothing to reduce")
    })?;
    let n = pair.dim();
    let m = n - 2;
    let c = &cert.basis_change;
    let c_inv = c.inverse().ok_or_else(|| {
        Error::internal("certificate basis must be invertible", "singular")
    })?;
    let u1_basis: Vec<Vec<CRat>> = (1..=m).map(|j| c.col(j)).collect();
    // products of U₁ elements decompose in the certificate basis with no v₀
    // component; the U₁ block is the reduced product, the u₀ coefficient the
    // central 2-cocycle φ
    let mut table = vec![vec![vec![CRat::zero(); m]; m]; m];
    let mut phi = CMat::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let prod = pair.algebra().mult(&u1_basis[i], &u1_basis[j]);
            let coords = c_inv.mul_vec(&prod);
            if !coords[0].is_zero() {
                return Err(Error::internal(
                    "(ℂu₀)^⊥ must be an ideal",
                    format!("product ({i}, {j}) has a v₀ component"),
                ));
            }
            table[i][j] = coords[1..=m].to_vec();
            phi.set(i, j, coords[n - 1].clone());
        }
    }
    let gram1 = pair.gram().restrict(&u1_basis);
    let algebra1 = AssocAlgebra::new(table, None).map_err(|e| {
        Error::internal("projected product must stay associative", e.to_string())
    })?;
    let pair1 = ApkPair::new(algebra1, HermitianGram::new(gram1)?).map_err(|e| {
        Error::internal("reduced pair must be APK-compatible", e.to_string())
    })?;
    // τ from φ(x, y) = H(x, τy): solve G₁ conj(τ e_j) = φ(·, j)
    let g1_inv = pair1.gram().inv();
    let mut tau = CMat::zeros(m, m);
    for j in 0..m {
        let col: Vec<CRat> = (0..m).map(|i| phi.at(i, j).clone()).collect();
        let t = g1_inv.mul_vec(&col);
        for r in 0..m {
            tau.set(r, j, t[r].conj());
        }
    }
    // v₀ ⋆ v₀ = ε v₀ + a₀ + α₀ u₀
    let vv = c_inv.mul_vec(&pair.algebra().mult(&cert.v0, &cert.v0));
    let eps = vv[0].clone();
    let a0 = vv[1..=m].to_vec();
    let alpha0 = vv[n - 1].clone();
    // v₀ ⋆ x = D x + H(x, b₀) u₀
    let mut d = CMat::zeros(m, m);
    let mut phi_v = Vec::with_capacity(m);
    for j in 0..m {
        let coords = c_inv.mul_vec(&pair.algebra().mult(&cert.v0, &u1_basis[j]));
        if !coords[0].is_zero() {
            return Err(Error::internal(
                "(ℂu₀)^⊥ must absorb multiplication by v₀",
                format!("column {j}"),
            ));
        }
        for r in 0..m {
            d.set(r, j, coords[1 + r].clone());
        }
        phi_v.push(coords[n - 1].clone());
    }
    let b0: Vec<CRat> = g1_inv.mul_vec(&phi_v).iter().map(|z| z.conj()).collect();
    let data = DoubleExtensionData {
        d,
        tau,
        a0,
        b0,
        eps,
        alpha0,
    };
    let report = validate_extension_data(&pair1, &data)?;
    if !report.is_valid() {
        return Err(Error::internal(
            "extracted data must satisfy the double-extension hypotheses",
            report.violations[0].to_string(),
        ));
    }
    let rebuilt = double_extend(&pair1, &data)?;
    let transformed = transform_pair(pair, c)?;
    if rebuilt.algebra().table() != transformed.algebra().table()
        || rebuilt.gram().mat() != transformed.gram().mat()
    {
        return Err(Error::internal(
            "double extension must reproduce the pair in certificate coordinates",
            "entrywise mismatch",
        ));
    }
    let (p0, q0) = pair1.signature()?;
    let (p1, q1) = pair.signature()?;
    if (p1, q1) != (p0 + 1, q0 + 1) {
        return Err(Error::internal(
            "reduction must strip a hyperbolic plane from the signature",
            format!("({p1}, {q1}) -> ({p0}, {q0})"),
        ));
    }
    Ok((pair1, data, cert))
}

/// One layer of the reduction tower.
#[derive(Clone, Debug)]
pub struct TowerStep {
    pub data: DoubleExtensionData,
    pub certificate: ReductionCertificate,
    /// the pair this step reduces, expressed in the certificate's basis
    pub extended: ApkPair,
}

/// Repeatedly reduce until ann ∩ ann^⊥ = 0. Replaying the recorded
/// extensions over the base reproduces every layer exactly.
pub fn tower(pair: &ApkPair) -> Result<(ApkPair, Vec<TowerStep>)> {
    let mut current = pair.clone();
    let mut steps: Vec<TowerStep> = Vec::new();
    while find_reduction_vector(&current)?.is_some() {
        let (reduced, data, cert) = reduce(&current)?;
        let extended = transform_pair(&current, &cert.basis_change)?;
        steps.push(TowerStep {
            data,
            certificate: cert,
            extended,
        });
        current = reduced;
    }
    debug_assert!(steps.len() <= pair.dim() / 2);
    // replay the tower from the base upward; each extension reproduces the
    // layer in its certificate's coordinates, so undo that chart before the
    // next step
    let mut replay = current.clone();
    for step in steps.iter().rev() {
        replay = double_extend(&replay, &step.data)?;
        if replay.algebra().table() != step.extended.algebra().table()
            || replay.gram().mat() != step.extended.gram().mat()
        {
            return Err(Error::internal(
                "tower replay must reproduce every layer",
                "entrywise mismatch",
            ));
        }
        let back = step.certificate.basis_change.inverse().ok_or_else(|| {
            Error::internal("certificate basis must be invertible", "singular")
        })?;
        replay = transform_pair(&replay, &back)?;
    }
    if replay.algebra().table() != pair.algebra().table()
        || replay.gram().mat() != pair.gram().mat()
    {
        return Err(Error::internal(
            "tower replay must recover the original pair",
            "entrywise mismatch at the top",
        ));
    }
    Ok((current, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat_int;

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

    fn zero_pair(dim: usize) -> ApkPair {
        ApkPair::new(
            AssocAlgebra::zero_algebra(dim),
            HermitianGram::new(CMat::identity(dim)).unwrap(),
        )
        .unwrap()
    }

    fn zero_dim_pair() -> ApkPair {
        ApkPair::new(
            AssocAlgebra::zero_algebra(0),
            HermitianGram::new(CMat::zeros(0, 0)).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn central_extension_examples() {
        // φ = 0 adjoins a one-dimensional zero ideal
        let u = AssocAlgebra::zero_algebra(2);
        let ext = central_extension(&u, &CMat::zeros(2, 2)).unwrap();
        assert_eq!(ext.dim(), 3);
        assert!(ext.annihilator().contains(&e(3, 2)));
        // x with x² = 0 and φ(x, x) = 1 gives the 2-dim power algebra
        let line = AssocAlgebra::zero_algebra(1);
        let phi = CMat::from_fn(1, 1, |_, _| CRat::one());
        let power = central_extension(&line, &phi).unwrap();
        assert_eq!(power.basis_product(0, 0), &e(2, 1)[..]);
        assert_eq!(power.nilpotency(), (true, Some(3)));
        // on a zero-product algebra the associativity condition is vacuous,
        // so every symmetric φ is admitted
        let any_phi = CMat::from_fn(2, 2, |r, c| CRat::from_int((r + c) as i64 + 1));
        assert!(central_extension(&u, &any_phi).is_ok());
        // asymmetric φ is rejected
        let mut bad = CMat::zeros(2, 2);
        bad.set(0, 1, CRat::one());
        assert!(central_extension(&u, &bad).is_err());
    }

    #[test]
    fn central_extension_compatibility_constraint() {
        // on the 4-dim algebra, φ must respect φ(xy, z) = φ(x, yz)
        let a = pair_4d().algebra().clone();
        let mut phi = CMat::zeros(4, 4);
        phi.set(0, 0, CRat::one());
        // φ(u0·u0, u3) = 0 but φ(u0, u0·u3) = 0: this particular φ still
        // violates φ(u1 u3, u3) = φ(u1, u3 u3) checks only if involving u0;
        // pick one that plainly fails: φ(u3,u3) = 1, rest 0
        let mut bad = CMat::zeros(4, 4);
        bad.set(3, 3, CRat::one());
        // φ(u3·u3, u1) = φ(u3, u1) = 0 vs φ(u3, u3·u1) = φ(u3, u1) = 0;
        // φ(u3 u3, u3) = φ(u3,u3) = 1 = φ(u3, u3 u3): fine. Use φ(u1,u3)=1:
        let mut worse = CMat::zeros(4, 4);
        worse.set(1, 3, CRat::one());
        worse.set(3, 1, CRat::one());
        // φ(u1·u3, u3) = φ(u1, u3) = 1 vs φ(u1, u3·u3) = φ(u1, u3) = 1: ok;
        // φ(u3·u3, u1) = φ(u3, u1) = 1 vs φ(u3, u3·u1) = φ(u3, u1) = 1: ok;
        // φ(u1·u1, u3) = 0 vs φ(u1, u1 u3) = φ(u1, u1) = 0: ok — valid!
        assert!(central_extension(&a, &worse).is_ok());
        let _ = phi;
    }

    #[test]
    fn semidirect_examples() {
        let u = AssocAlgebra::zero_algebra(2);
        // δ = 0, x₀ = 0, ε = 0: zero ideal adjoined
        let s = semidirect(&u, &CMat::zeros(2, 2), &[CRat::zero(), CRat::zero()], &CRat::zero())
            .unwrap();
        assert_eq!(s.dim(), 3);
        assert!(s.basis_product(0, 0).iter().all(|z| z.is_zero()));
        // ε = 1 adjoins an idempotent: v² = v
        let s = semidirect(&u, &CMat::zeros(2, 2), &[CRat::zero(), CRat::zero()], &CRat::one())
            .unwrap();
        assert_eq!(s.basis_product(0, 0), &e(3, 0)[..]);
        assert_eq!(s.nilpotency().0, false);
        // δ² - εδ ≠ R_{x₀} is rejected with the identity named
        let mut delta = CMat::zeros(2, 2);
        delta.set(0, 1, CRat::one());
        delta.set(1, 0, CRat::one());
        let err = semidirect(&u, &delta, &[CRat::zero(), CRat::zero()], &CRat::zero());
        match err {
            Err(Error::Validation(report)) => {
                assert!(report.violations.iter().any(|v| v.rule.contains("δ²")));
            }
            other => panic!("expected a validation failure, got {other:?}"),
        }
    }

    #[test]
    fn double_extension_of_zero_dim_pair() {
        let p = zero_dim_pair();
        let ext = double_extend(&p, &DoubleExtensionData::trivial(0)).unwrap();
        assert_eq!(ext.dim(), 2);
        assert!(ext.algebra().table()[0][0].iter().all(|z| z.is_zero()));
        assert_eq!(ext.signature().unwrap(), (1, 1));
        // ε = 1 adjoins an idempotent to the extension
        let mut data = DoubleExtensionData::trivial(0);
        data.eps = CRat::one();
        let ext = double_extend(&p, &data).unwrap();
        assert_eq!(ext.algebra().basis_product(0, 0)[0], CRat::one());
        assert!(!ext.algebra().nilpotency().0);
    }

    #[test]
    fn find_reduction_vector_on_paper_pairs() {
        // 5-dim example: the restricted family vanishes, so u₀ is the first
        // echelon vector of span{u0, u1} with λ = 0
        let cert = find_reduction_vector(&pair_5d()).unwrap().unwrap();
        assert_eq!(cert.u0, e(5, 0));
        assert!(cert.lambda.iter().all(|l| l.is_zero()));
        assert_eq!(cert.v0, e(5, 4));
        // anisotropic abelian pair and trivial-annihilator pair: none
        assert!(find_reduction_vector(&zero_pair(2)).unwrap().is_none());
        // zero-product pairs are tower bases even when H has isotropic
        // vectors: ann = U meets ann^⊥ = 0 trivially and R*_U U = 0
        let hyperbolic = ApkPair::new(
            AssocAlgebra::zero_algebra(2),
            HermitianGram::new(CMat::from_fn(2, 2, |j, k| {
                if j + k == 1 {
                    CRat::one()
                } else {
                    CRat::zero()
                }
            }))
            .unwrap(),
        )
        .unwrap();
        assert!(find_reduction_vector(&hyperbolic).unwrap().is_none());
        assert!(matches!(
            reduce(&hyperbolic),
            Err(Error::Precondition { .. })
        ));
        let unital = ApkPair::new(
            AssocAlgebra::from_products(1, &[((0, 0), e(1, 0))], None).unwrap(),
            HermitianGram::new(CMat::from_fn(1, 1, |_, _| CRat::from_int(-4))).unwrap(),
        )
        .unwrap();
        assert!(find_reduction_vector(&unital).unwrap().is_none());
    }

    #[test]
    fn lambda_is_semilinear_on_flat_4d() {
        let p = pair_4d();
        let cert = find_reduction_vector(&p).unwrap().unwrap();
        // R*_x u0 = λ(x) u0 for a random combination x
        let x = vec![
            CRat::from_int(2),
            CRat::i(),
            CRat::from_pair((1, 3), (0, 1)),
            CRat::from_pair((-1, 1), (2, 1)),
        ];
        let lhs = p.star_mult(&x).unwrap().apply(&cert.u0);
        let rhs = vec_scale(&cert.lambda_eval(&x), &cert.u0);
        assert_eq!(lhs, rhs);
        // flat-4d has a non-nilpotent restricted family: λ(u3) = 1
        assert_eq!(cert.lambda[3], CRat::one());
    }

    #[test]
    fn reduce_5d_example() {
        let (reduced, data, cert) = reduce(&pair_5d()).unwrap();
        assert_eq!(reduced.dim(), 3);
        // the reduced pair is the zero-product algebra on span{u1, u2, u3}
        assert!(reduced
            .algebra()
            .table()
            .iter()
            .all(|row| row.iter().all(|v| v.iter().all(|z| z.is_zero()))));
        assert!(data.eps.is_zero());
        assert!(data.tau.is_zero());
        assert!(data.b0.iter().all(|z| z.is_zero()));
        // D sends u3 to u2 in the U₁ coordinates (indices 0,1,2 = u1,u2,u3)
        assert_eq!(data.d.at(1, 2), &CRat::one());
        assert_eq!(cert.u0, e(5, 0));
        // a₀ = u2 in U₁ coordinates
        assert_eq!(data.a0, e(3, 1));
    }

    #[test]
    fn reduce_flat_4d_example() {
        let (reduced, _data, _cert) = reduce(&pair_4d()).unwrap();
        assert_eq!(reduced.dim(), 2);
        let (p, q) = pair_4d().signature().unwrap();
        let (p1, q1) = reduced.signature().unwrap();
        assert_eq!((p, q), (p1 + 1, q1 + 1));
    }

    #[test]
    fn reduce_rejects_base_pairs() {
        assert!(matches!(
            reduce(&zero_pair(2)),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn tower_of_5d_example() {
        let (base, steps) = tower(&pair_5d()).unwrap();
        assert_eq!(steps.len(), 1);
        assert_eq!(base.dim(), 3);
        assert!(find_reduction_vector(&base).unwrap().is_none());
    }

    #[test]
    fn tower_of_base_is_empty() {
        let (base, steps) = tower(&zero_pair(3)).unwrap();
        assert!(steps.is_empty());
        assert_eq!(base.dim(), 3);
    }

    #[test]
    fn tower_of_flat_4d() {
        let (base, steps) = tower(&pair_4d()).unwrap();
        // 4 → 2 → 0 or stop at 2 depending on the intermediate pair
        assert!(steps.len() >= 1);
        assert!(find_reduction_vector(&base).unwrap().is_none());
        assert_eq!(base.dim(), 4 - 2 * steps.len());
    }

    #[test]
    fn roots_of_small_polynomials() {
        // t² + 1 = (t - i)(t + i)
        let p = vec![CRat::one(), CRat::zero(), CRat::one()];
        let roots = gaussian_rational_roots(&p).unwrap();
        assert_eq!(roots, vec![-CRat::i(), CRat::i()]);
        // t² - 2 has no Gaussian-rational roots
        let p = vec![CRat::one(), CRat::zero(), CRat::from_int(-2)];
        assert!(gaussian_rational_roots(&p).unwrap().is_empty());
        // (t - (1+2i))(t - 3) = t² - (4+2i)t + (3+6i)
        let p = vec![
            CRat::one(),
            CRat::from_pair((-4, 1), (-2, 1)),
            CRat::from_pair((3, 1), (6, 1)),
        ];
        let roots = gaussian_rational_roots(&p).unwrap();
        assert!(roots.contains(&CRat::from_pair((1, 1), (2, 1))));
        assert!(roots.contains(&CRat::from_int(3)));
        // rational roots with denominators: (2t - 1)(t + 5)
        let p = vec![
            CRat::from_int(2),
            CRat::from_int(9),
            CRat::from_int(-5),
        ];
        let roots = gaussian_rational_roots(&p).unwrap();
        assert!(roots.contains(&CRat::from_pair((1, 2), (0, 1))));
        assert!(roots.contains(&CRat::from_int(-5)));
    }

    #[test]
    fn eigenvalue_outside_field_is_reported() {
        // companion matrix of t² - 2: eigenvalues ±√2 ∉ ℚ(i)
        let mut m = CMat::zeros(2, 2);
        m.set(0, 1, CRat::from_int(2));
        m.set(1, 0, CRat::one());
        let space = Subspace::whole(2);
        match common_eigenvector(&[m], &space) {
            Err(Error::EigenvalueOutsideField { char_poly }) => {
                assert!(char_poly.contains("t^2"));
            }
            other => panic!("expected EigenvalueOutsideField, got {other:?}"),
        }
    }

    #[test]
    fn char_poly_of_companion_matrix() {
        // companion of t³ - 6t² + 11t - 6 = (t-1)(t-2)(t-3)
        let mut m = CMat::zeros(3, 3);
        m.set(0, 2, CRat::from_int(6));
        m.set(1, 2, CRat::from_int(-11));
        m.set(2, 2, CRat::from_int(6));
        m.set(1, 0, CRat::one());
        m.set(2, 1, CRat::one());
        let p = char_poly(&m);
        assert_eq!(
            p,
            vec![
                CRat::one(),
                CRat::from_int(-6),
                CRat::from_int(11),
                CRat::from_int(-6)
            ]
        );
        let roots = gaussian_rational_roots(&p).unwrap();
        assert_eq!(
            roots,
            vec![CRat::from_int(1), CRat::from_int(2), CRat::from_int(3)]
        );
    }

    #[test]
    fn reduce_then_extend_round_trip_in_certificate_coordinates() {
        for p in [pair_5d(), pair_4d()] {
            let (reduced, data, cert) = reduce(&p).unwrap();
            let rebuilt = double_extend(&reduced, &data).unwrap();
            let transformed = transform_pair(&p, &cert.basis_change).unwrap();
            assert_eq!(rebuilt.algebra().table(), transformed.algebra().table());
            assert_eq!(rebuilt.gram().mat(), transformed.gram().mat());
        }
    }

    #[test]
    fn gauss_divisor_counts() {
        // 5 = (2+i)(2-i): divisors up to units: 1, 2+i, 2-i, 5
        let z = GaussInt::new(BigInt::from(5), BigInt::zero());
        let divs = gauss_divisors(&z).unwrap();
        assert_eq!(divs.len(), 4);
        let _ = rat_int(0);
    }
}
