//! APK-compatible pairs (U, H): the compatibility certificate, star-adjoint
//! multiplications R*_x, the subspace lattice they generate, and the
//! pair-level predicates.

use crate::assoc::AssocAlgebra;
use crate::error::{Error, Result, ValidationReport};
use crate::exactlin::{
    h_adjoint, unit_vec, CMat, HermitianGram, LinearOperator, Subspace,
};
use crate::scalar::CRat;
use num_traits::Zero;

fn fmt_vec(v: &[CRat]) -> String {
    let parts: Vec<String> = v.iter().map(|z| z.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// The compatibility certificate: `e_i · R*_{e_k}(e_j) = e_j · R*_{e_k}(e_i)`
/// on all basis triples, with full witnesses for every violation.
pub fn check_apk(algebra: &AssocAlgebra, gram: &HermitianGram) -> Result<ValidationReport> {
    if algebra.dim() != gram.dim() {
        return Err(Error::DimensionMismatch {
            expected: algebra.dim(),
            found: gram.dim(),
            context: "pair (U, H)".into(),
        });
    }
    let n = algebra.dim();
    let mut report = ValidationReport::new();
    let adjoints: Vec<LinearOperator> = (0..n)
        .map(|k| h_adjoint(&algebra.right_mult(&unit_vec(n, k)).unwrap(), gram))
        .collect::<Result<_>>()?;
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let si = adjoints[k].apply(&unit_vec(n, i));
                let sj = adjoints[k].apply(&unit_vec(n, j));
                let lhs = algebra.mult(&unit_vec(n, i), &sj);
                let rhs = algebra.mult(&unit_vec(n, j), &si);
                if lhs != rhs {
                    report.push(
                        "compatibility e_i R*_{e_k} e_j = e_j R*_{e_k} e_i",
                        vec![i, j, k],
                        fmt_vec(&lhs),
                        fmt_vec(&rhs),
                    );
                }
            }
        }
    }
    Ok(report)
}

/// A validated APK-compatible pair. The certificate is computed once at
/// construction and all downstream operations require it (fail-fast).
#[derive(Clone, PartialEq, Debug)]
pub struct ApkPair {
    algebra: AssocAlgebra,
    gram: HermitianGram,
    adjoints: Vec<LinearOperator>,
}

impl ApkPair {
    pub fn new(algebra: AssocAlgebra, gram: HermitianGram) -> Result<Self> {
        check_apk(&algebra, &gram)?.into_result()?;
        let n = algebra.dim();
        let adjoints = (0..n)
            .map(|k| h_adjoint(&algebra.right_mult(&unit_vec(n, k)).unwrap(), &gram))
            .collect::<Result<_>>()?;
        Ok(ApkPair {
            algebra,
            gram,
            adjoints,
        })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &AssocAlgebra {
        &self.algebra
    }

    pub fn gram(&self) -> &HermitianGram {
        &self.gram
    }

    pub fn signature(&self) -> Result<(usize, usize)> {
        self.gram.signature()
    }

    /// R_x, multiplication by x.
    pub fn right_mult(&self, x: &[CRat]) -> Result<LinearOperator> {
        self.algebra.right_mult(x)
    }

    /// R*_x = h_adjoint(R_x, H); semilinear in the subscript:
    /// R*_{αx} = ᾱ·R*_x, while each R*_x is itself ℂ-linear.
    pub fn star_mult(&self, x: &[CRat]) -> Result<LinearOperator> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.len(),
                context: "star multiplication".into(),
            });
        }
        let n = self.dim();
        let mut m = CMat::zeros(n, n);
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            m = m.add(&self.adjoints[j].mat.scale(&xj.conj()));
        }
        Ok(LinearOperator::new(m))
    }

    pub fn basis_adjoint(&self, j: usize) -> &LinearOperator {
        &self.adjoints[j]
    }

    /// Span of all R*_{e_i}(e_j). Must equal ann(U)^⊥; a failure would
    /// falsify the orthogonality lemma and aborts with a witness.
    pub fn rstar_span(&self) -> Result<Subspace> {
        let n = self.dim();
        let mut vectors = Vec::new();
        for adj in &self.adjoints {
            for j in 0..n {
                vectors.push(adj.apply(&unit_vec(n, j)));
            }
        }
        let span = Subspace::from_spanning(n, &vectors);
        let perp = self
            .gram
            .orthogonal_complement(&self.algebra.annihilator())?;
        if span != perp {
            return Err(Error::internal(
                "R*_U U must equal ann(U)^\u{22a5}",
                format!("span dim {} vs complement dim {}", span.dim(), perp.dim()),
            ));
        }
        Ok(span)
    }

    pub fn annihilator(&self) -> Subspace {
        self.algebra.annihilator()
    }

    /// U³ = 0 and ann(U)^⊥ ⊆ ann(U). Abelian pairs pass vacuously.
    pub fn is_two_step(&self) -> Result<bool> {
        if !self.algebra.power_ideal(3).is_zero() {
            return Ok(false);
        }
        let ann = self.algebra.annihilator();
        let perp = self.gram.orthogonal_complement(&ann)?;
        Ok(ann.contains_subspace(&perp))
    }

    /// R_{e_j} R*_{e_k} = R*_{e_k} R_{e_j} on all basis pairs; equivalent to
    /// associativity of the left-symmetric product.
    pub fn is_novikov(&self) -> Result<bool> {
        let n = self.dim();
        for j in 0..n {
            let rj = self.algebra.right_mult(&unit_vec(n, j))?;
            for k in 0..n {
                if rj.compose(&self.adjoints[k]) != self.adjoints[k].compose(&rj) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// ω-orthogonal direct sum: block-diagonal product table and Gram.
    pub fn direct_sum(&self, other: &ApkPair) -> Result<ApkPair> {
        let algebra = self.algebra.direct_sum(&other.algebra);
        let n1 = self.dim();
        let n = algebra.dim();
        let gram = CMat::from_fn(n, n, |r, c| {
            if r < n1 && c < n1 {
                self.gram.entry(r, c).clone()
            } else if r >= n1 && c >= n1 {
                other.gram.entry(r - n1, c - n1).clone()
            } else {
                CRat::zero()
            }
        });
        ApkPair::new(algebra, HermitianGram::new(gram)?)
    }

    /// Restriction of the pair to a subalgebra spanned by `basis` (which must
    /// be closed under multiplication and carry a non-degenerate restricted
    /// form). Products are re-expressed in the given basis.
    pub fn restrict(&self, basis: &[Vec<CRat>], labels: Option<Vec<String>>) -> Result<ApkPair> {
        let m = basis.len();
        let n = self.dim();
        if m == 0 {
            return ApkPair::new(
                AssocAlgebra::zero_algebra(0),
                HermitianGram::new(CMat::zeros(0, 0))?,
            );
        }
        let bmat = CMat::from_fn(n, m, |r, c| basis[c][r].clone());
        let mut table = vec![vec![vec![CRat::zero(); m]; m]; m];
        for i in 0..m {
            for j in 0..m {
                let prod = self.algebra.mult(&basis[i], &basis[j]);
                let coeffs = bmat.solve_vec(&prod).ok_or_else(|| {
                    Error::precondition("restriction basis is not closed under multiplication")
                })?;
                table[i][j] = coeffs;
            }
        }
        let gram = self.gram.restrict(basis);
        ApkPair::new(AssocAlgebra::new(table, labels)?, HermitianGram::new(gram)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{vec_is_zero, vec_scale, vec_sub};
    use crate::scalar::rat_int;
    use num_traits::One;

    fn e(n: usize, j: usize) -> Vec<CRat> {
        unit_vec(n, j)
    }

    pub(crate) fn pair_5d() -> ApkPair {
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

    pub(crate) fn pair_4d() -> ApkPair {
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

    #[test]
    fn paper_pairs_are_compatible() {
        pair_5d();
        pair_4d();
    }

    #[test]
    fn zero_product_pair_is_compatible() {
        zero_pair(3);
    }

    #[test]
    fn star_mult_paper_values() {
        let p = pair_5d();
        let r4s = p.star_mult(&e(5, 4)).unwrap();
        let mut expected = e(5, 0);
        expected[1] = CRat::one();
        assert_eq!(r4s.apply(&e(5, 2)), expected, "R*_(u4) u2 = u0 + u1");
        let r3s = p.star_mult(&e(5, 3)).unwrap();
        assert_eq!(r3s.apply(&e(5, 2)), e(5, 0), "R*_(u3) u2 = u0");
        let p4 = pair_4d();
        let r3s = p4.star_mult(&e(4, 3)).unwrap();
        assert_eq!(r3s.apply(&e(4, 0)), e(4, 0), "R*_(u3) u0 = u0");
    }

    #[test]
    fn star_mult_of_annihilator_element_vanishes() {
        let p = pair_5d();
        for j in [0usize, 1, 2] {
            assert!(p.star_mult(&e(5, j)).unwrap().mat.is_zero());
        }
    }

    #[test]
    fn star_mult_is_semilinear_in_subscript() {
        let p = pair_5d();
        let x = e(5, 4);
        let ix = vec_scale(&CRat::i(), &x);
        let lhs = p.star_mult(&ix).unwrap();
        let rhs = LinearOperator::new(p.star_mult(&x).unwrap().mat.scale(&CRat::i().conj()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn broken_pair_found_by_brute_force_has_correct_witness() {
        // search tiny dim-2 tables x*x in {u0, u1, u0+u1} against a few
        // hermitian forms until the certificate fails
        let mut found = false;
        'outer: for prod in [e(2, 0), e(2, 1), vec![CRat::one(), CRat::one()]] {
            for gram in [
                CMat::identity(2),
                CMat::from_fn(2, 2, |j, k| {
                    if j + k == 1 {
                        CRat::one()
                    } else {
                        CRat::zero()
                    }
                }),
            ] {
                let Ok(algebra) = AssocAlgebra::from_products(2, &[((1, 1), prod.clone())], None)
                else {
                    continue;
                };
                let Ok(g) = HermitianGram::new(gram) else {
                    continue;
                };
                let report = check_apk(&algebra, &g).unwrap();
                if report.is_valid() {
                    continue;
                }
                // oracle: exhaustive triple evaluation of the reported witness
                let v = &report.violations[0];
                let (i, j, k) = (v.indices[0], v.indices[1], v.indices[2]);
                let adj = h_adjoint(&algebra.right_mult(&e(2, k)).unwrap(), &g).unwrap();
                let lhs = algebra.mult(&e(2, i), &adj.apply(&e(2, j)));
                let rhs = algebra.mult(&e(2, j), &adj.apply(&e(2, i)));
                assert_ne!(lhs, rhs, "witness triple must actually violate compat");
                found = true;
                break 'outer;
            }
        }
        assert!(found, "brute-force search must find a broken pair");
    }

    #[test]
    fn rstar_span_matches_annihilator_complement() {
        let p = pair_5d();
        let span = p.rstar_span().unwrap();
        assert_eq!(span, Subspace::from_spanning(5, &[e(5, 0), e(5, 1)]));
        assert!(zero_pair(3).rstar_span().unwrap().is_zero());
    }

    #[test]
    fn trivial_annihilator_forces_full_span() {
        // U = C with 1*1 = 1 and H(1,1) = -4
        let algebra = AssocAlgebra::from_products(1, &[((0, 0), e(1, 0))], None).unwrap();
        let gram = HermitianGram::new(CMat::from_fn(1, 1, |_, _| CRat::from_int(-4))).unwrap();
        let p = ApkPair::new(algebra, gram).unwrap();
        assert!(p.annihilator().is_zero());
        let span = p.rstar_span().unwrap();
        assert_eq!(span, Subspace::whole(1));
        assert_eq!(p.algebra().power_ideal(2), Subspace::whole(1));
    }

    #[test]
    fn two_step_predicate() {
        assert!(pair_5d().is_two_step().unwrap());
        assert!(zero_pair(2).is_two_step().unwrap());
        assert!(!pair_4d().is_two_step().unwrap());
    }

    #[test]
    fn novikov_predicate() {
        assert!(pair_4d().is_novikov().unwrap());
        assert!(zero_pair(2).is_novikov().unwrap());
        // the 5-dim pair is not Novikov: R*_y R_x does not vanish while
        // R_x R*_y does
        assert!(!pair_5d().is_novikov().unwrap());
    }

    #[test]
    fn direct_sum_with_zero_dim_is_identity() {
        let p = pair_5d();
        let zero = zero_pair(0);
        let s = p.direct_sum(&zero).unwrap();
        assert_eq!(s.algebra().table(), p.algebra().table());
        assert_eq!(s.gram().mat(), p.gram().mat());
    }

    #[test]
    fn direct_sum_combines_signatures() {
        let a = pair_5d();
        let b = pair_4d();
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.dim(), 9);
        let (p1, q1) = a.signature().unwrap();
        let (p2, q2) = b.signature().unwrap();
        assert_eq!(s.signature().unwrap(), (p1 + p2, q1 + q2));
    }

    #[test]
    fn lemma_difference_lands_in_annihilator() {
        for p in [pair_5d(), pair_4d()] {
            let n = p.dim();
            let ann = p.annihilator();
            for x in 0..n {
                for z in 0..n {
                    let rs = p.basis_adjoint(x);
                    let rz = p.right_mult(&e(n, z)).unwrap();
                    let diff = rs.compose(&rz).mat.sub(&rz.compose(rs).mat);
                    for y in 0..n {
                        assert!(ann.contains(&diff.mul_vec(&e(n, y))));
                    }
                }
            }
        }
    }

    #[test]
    fn power_lemma_proof_identities() {
        for p in [pair_5d(), pair_4d()] {
            let n = p.dim();
            for x in 0..n {
                let rx = p.right_mult(&e(n, x)).unwrap();
                let sx = p.basis_adjoint(x);
                for y in 0..n {
                    let sy = p.basis_adjoint(y);
                    let ry = p.right_mult(&e(n, y)).unwrap();
                    // R_x R*_y R_x = R_x^2 R*_y
                    assert_eq!(
                        rx.compose(sy).compose(&rx),
                        rx.compose(&rx).compose(sy)
                    );
                    // R*_x R_y R*_x = R_y (R*_x)^2
                    assert_eq!(
                        sx.compose(&ry).compose(sx),
                        ry.compose(sx).compose(sx)
                    );
                    // R*_x R*_y = R*_{xy}
                    let rxy_star = p.star_mult(&p.algebra().mult(&e(n, x), &e(n, y))).unwrap();
                    assert_eq!(sx.compose(sy), rxy_star);
                }
            }
        }
    }

    #[test]
    fn nilpotent_power_of_r_plus_rstar_vanishes() {
        let p = pair_5d();
        let (flag, index) = p.algebra().nilpotency();
        assert!(flag);
        let n_idx = index.unwrap();
        for x in 0..p.dim() {
            let rx = p.right_mult(&e(p.dim(), x)).unwrap();
            let sum = LinearOperator::new(rx.mat.add(&p.basis_adjoint(x).mat));
            let mut power = LinearOperator::identity(p.dim());
            for _ in 0..(2 * n_idx) {
                power = sum.compose(&power);
            }
            assert!(power.mat.is_zero(), "(R_x + R*_x)^(2n) = 0");
        }
    }

    #[test]
    fn bracket_adjoint_identity() {
        // R*_{[x,y]} = R_y R*_x - R_x R*_y with [x,y] = R*_y x - R*_x y
        for p in [pair_5d(), pair_4d()] {
            let n = p.dim();
            for x in 0..n {
                for y in 0..n {
                    let sx = p.basis_adjoint(x);
                    let sy = p.basis_adjoint(y);
                    let bracket = vec_sub(&sy.apply(&e(n, x)), &sx.apply(&e(n, y)));
                    let lhs = p.star_mult(&bracket).unwrap();
                    let rx = p.right_mult(&e(n, x)).unwrap();
                    let ry = p.right_mult(&e(n, y)).unwrap();
                    let rhs = ry.compose(sx).mat.sub(&rx.compose(sy).mat);
                    assert_eq!(lhs.mat, rhs);
                }
            }
        }
    }

    #[test]
    fn restrict_recovers_direct_summand() {
        let p = pair_5d().direct_sum(&pair_4d()).unwrap();
        let block: Vec<Vec<CRat>> = (0..5).map(|j| e(9, j)).collect();
        let sub = p.restrict(&block, None).unwrap();
        assert_eq!(sub.algebra().table(), pair_5d().algebra().table());
        assert_eq!(sub.gram().mat(), pair_5d().gram().mat());
        // a subspace with a degenerate restricted form is rejected
        let ann = pair_5d().annihilator();
        assert!(pair_5d().restrict(ann.basis(), None).is_err());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let algebra = AssocAlgebra::zero_algebra(2);
        let gram = HermitianGram::new(CMat::identity(3)).unwrap();
        assert!(matches!(
            check_apk(&algebra, &gram),
            Err(Error::DimensionMismatch { .. })
        ));
        let x = vec![CRat::zero(); 3];
        let p = zero_pair(2);
        assert!(p.star_mult(&x).is_err());
        let _ = rat_int(0);
        let v: Vec<CRat> = vec![];
        assert!(vec_is_zero(&v));
    }
}
