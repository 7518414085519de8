//! Complex commutative associative algebras as structure-constant tables.

use crate::error::{Error, Result, ValidationReport};
use crate::exactlin::{unit_vec, CMat, LinearOperator, Subspace};
use crate::scalar::CRat;
use num_traits::Zero;

fn fmt_vec(v: &[CRat]) -> String {
    let parts: Vec<String> = v.iter().map(|z| z.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// A complex commutative associative algebra given by structure constants
/// over a fixed basis: `e_i · e_j = Σ_k c[i][j][k] e_k`.
#[derive(Clone, PartialEq, Debug)]
pub struct AssocAlgebra {
    dim: usize,
    c: Vec<Vec<Vec<CRat>>>,
    labels: Vec<String>,
}

/// Commutativity and associativity of a raw table, every violated triple
/// reported with indices and both sides.
pub fn validate_table(dim: usize, c: &[Vec<Vec<CRat>>]) -> ValidationReport {
    let mut report = ValidationReport::new();
    for i in 0..dim {
        for j in 0..dim {
            if c[i][j] != c[j][i] {
                report.push(
                    "commutativity e_i e_j = e_j e_i",
                    vec![i, j],
                    fmt_vec(&c[i][j]),
                    fmt_vec(&c[j][i]),
                );
            }
        }
    }
    let mult = |x: &[CRat], y: &[CRat]| -> Vec<CRat> {
        let mut out = vec![CRat::zero(); dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi.clone() * yj.clone();
                for k in 0..dim {
                    if !c[i][j][k].is_zero() {
                        out[k] = out[k].clone() + s.clone() * c[i][j][k].clone();
                    }
                }
            }
        }
        out
    };
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let lhs = mult(&c[i][j], &unit_vec(dim, k));
                let rhs = mult(&unit_vec(dim, i), &c[j][k]);
                if lhs != rhs {
                    report.push(
                        "associativity (e_i e_j) e_k = e_i (e_j e_k)",
                        vec![i, j, k],
                        fmt_vec(&lhs),
                        fmt_vec(&rhs),
                    );
                }
            }
        }
    }
    report
}

impl AssocAlgebra {
    pub fn new(c: Vec<Vec<Vec<CRat>>>, labels: Option<Vec<String>>) -> Result<Self> {
        let dim = c.len();
        for row in &c {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                    context: "structure constant table".into(),
                });
            }
            for v in row {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        found: v.len(),
                        context: "structure constant product vector".into(),
                    });
                }
            }
        }
        validate_table(dim, &c).into_result()?;
        let labels =
            labels.unwrap_or_else(|| (0..dim).map(|j| format!("u{j}")).collect::<Vec<_>>());
        if labels.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: labels.len(),
                context: "basis labels".into(),
            });
        }
        Ok(AssocAlgebra { dim, c, labels })
    }

    /// Zero-product algebra of the given dimension.
    pub fn zero_algebra(dim: usize) -> Self {
        let c = vec![vec![vec![CRat::zero(); dim]; dim]; dim];
        AssocAlgebra::new(c, None).unwrap()
    }

    /// Sparse constructor: `products[((i, j), v)]` sets `e_i e_j = v` (and
    /// its commuted mate).
    pub fn from_products(
        dim: usize,
        products: &[((usize, usize), Vec<CRat>)],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut c = vec![vec![vec![CRat::zero(); dim]; dim]; dim];
        for ((i, j), v) in products {
            c[*i][*j] = v.clone();
            c[*j][*i] = v.clone();
        }
        AssocAlgebra::new(c, labels)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &Vec<Vec<Vec<CRat>>> {
        &self.c
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[CRat] {
        &self.c[i][j]
    }

    pub fn mult(&self, x: &[CRat], y: &[CRat]) -> Vec<CRat> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![CRat::zero(); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let s = xi.clone() * yj.clone();
                for k in 0..self.dim {
                    if !self.c[i][j][k].is_zero() {
                        out[k] = out[k].clone() + s.clone() * self.c[i][j][k].clone();
                    }
                }
            }
        }
        out
    }

    /// R_x with R_x(y) = x·y, linear in x.
    pub fn right_mult(&self, x: &[CRat]) -> Result<LinearOperator> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
                context: "right multiplication".into(),
            });
        }
        let mut m = CMat::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mult(&unit_vec(self.dim, j), x);
            for k in 0..self.dim {
                m.set(k, j, col[k].clone());
            }
        }
        Ok(LinearOperator::new(m))
    }

    /// {x : x·y = 0 for all y}, the common kernel of all R_{e_j}.
    pub fn annihilator(&self) -> Subspace {
        if self.dim == 0 {
            return Subspace::zero(0);
        }
        let mut stacked = self.right_mult(&unit_vec(self.dim, 0)).unwrap().mat;
        for j in 1..self.dim {
            stacked = stacked.vstack(&self.right_mult(&unit_vec(self.dim, j)).unwrap().mat);
        }
        Subspace::kernel_of(&stacked)
    }

    /// Linear span of all k-fold products, k ≥ 2. Monotone decreasing in k.
    pub fn power_ideal(&self, k: usize) -> Subspace {
        assert!(k >= 2, "power ideals start at k = 2");
        let mut square = Vec::new();
        for i in 0..self.dim {
            for j in i..self.dim {
                square.push(self.c[i][j].clone());
            }
        }
        let mut current = Subspace::from_spanning(self.dim, &square);
        for _ in 2..k {
            let mut next = Vec::new();
            for v in current.basis() {
                for j in 0..self.dim {
                    next.push(self.mult(v, &unit_vec(self.dim, j)));
                }
            }
            current = Subspace::from_spanning(self.dim, &next);
        }
        current
    }

    /// Nilpotency with the least n such that Uⁿ = 0, searching n ≤ dim+1.
    /// A strictly decreasing chain of ideals stabilizes within dim steps, so
    /// stabilization at a nonzero span certifies non-nilpotency.
    pub fn nilpotency(&self) -> (bool, Option<usize>) {
        let mut prev = self.power_ideal(2);
        if prev.is_zero() {
            return (true, Some(2));
        }
        for n in 3..=(self.dim + 1) {
            let cur = self.power_ideal(n);
            if cur.is_zero() {
                return (true, Some(n));
            }
            if cur == prev {
                return (false, None);
            }
            prev = cur;
        }
        (false, None)
    }

    /// Block-diagonal direct sum of two algebras.
    pub fn direct_sum(&self, other: &AssocAlgebra) -> AssocAlgebra {
        let n1 = self.dim;
        let n = n1 + other.dim;
        let mut c = vec![vec![vec![CRat::zero(); n]; n]; n];
        for i in 0..n1 {
            for j in 0..n1 {
                for k in 0..n1 {
                    c[i][j][k] = self.c[i][j][k].clone();
                }
            }
        }
        for i in 0..other.dim {
            for j in 0..other.dim {
                for k in 0..other.dim {
                    c[n1 + i][n1 + j][n1 + k] = other.c[i][j][k].clone();
                }
            }
        }
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|l| format!("{l}'")));
        AssocAlgebra::new(c, Some(labels)).expect("direct sum of valid algebras is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::vec_is_zero;
    use crate::scalar::rat_int;
    use num_traits::One;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn e(n: usize, j: usize) -> Vec<CRat> {
        unit_vec(n, j)
    }

    /// 5-dim algebra: u4 u3 = u3 u4 = u4 u4 = u2.
    pub(crate) fn algebra_5d() -> AssocAlgebra {
        AssocAlgebra::from_products(5, &[((4, 3), e(5, 2)), ((4, 4), e(5, 2))], None).unwrap()
    }

    /// 4-dim algebra: u1 u3 = u3 u1 = u1, u3 u3 = u3.
    pub(crate) fn algebra_4d() -> AssocAlgebra {
        AssocAlgebra::from_products(4, &[((1, 3), e(4, 1)), ((3, 3), e(4, 3))], None).unwrap()
    }

    #[test]
    fn zero_algebra_is_valid() {
        for dim in 0..4 {
            assert!(validate_table(dim, AssocAlgebra::zero_algebra(dim).table()).is_valid());
        }
    }

    #[test]
    fn paper_examples_are_valid() {
        algebra_5d();
        algebra_4d();
    }

    #[test]
    fn broken_commutativity_reports_one_violation() {
        let mut c = vec![vec![vec![CRat::zero(); 2]; 2]; 2];
        c[0][1][0] = CRat::one();
        let report = validate_table(2, &c);
        let comm: Vec<_> = report
            .violations
            .iter()
            .filter(|v| v.rule.starts_with("commutativity"))
            .collect();
        assert_eq!(comm.len(), 2, "both orderings of the broken slot show up");
        assert_eq!(comm[0].indices, vec![0, 1]);
        assert!(AssocAlgebra::new(c, None).is_err());
    }

    #[test]
    fn right_mult_by_zero_is_zero() {
        let a = algebra_5d();
        let r = a.right_mult(&vec![CRat::zero(); 5]).unwrap();
        assert!(r.mat.is_zero());
    }

    #[test]
    fn right_mult_4d_example() {
        let a = algebra_4d();
        let r3 = a.right_mult(&e(4, 3)).unwrap();
        assert_eq!(r3.apply(&e(4, 3)), e(4, 3));
        assert_eq!(r3.apply(&e(4, 1)), e(4, 1));
        assert!(vec_is_zero(&r3.apply(&e(4, 0))));
        assert!(vec_is_zero(&r3.apply(&e(4, 2))));
    }

    fn random_vec(rng: &mut StdRng, n: usize) -> Vec<CRat> {
        (0..n)
            .map(|_| {
                CRat::new(
                    rat_int(rng.random_range(-2..=2)),
                    rat_int(rng.random_range(-2..=2)),
                )
            })
            .collect()
    }

    #[test]
    fn right_mults_commute_and_compose() {
        // oracle: triple loop over the basis using associativity+commutativity
        let mut rng = StdRng::seed_from_u64(41);
        for a in [algebra_5d(), algebra_4d()] {
            let x = random_vec(&mut rng, a.dim());
            let y = random_vec(&mut rng, a.dim());
            let rx = a.right_mult(&x).unwrap();
            let ry = a.right_mult(&y).unwrap();
            let rxy = a.right_mult(&a.mult(&x, &y)).unwrap();
            assert_eq!(rx.compose(&ry), rxy);
            assert_eq!(ry.compose(&rx), rxy);
        }
    }

    #[test]
    fn basis_right_mults_commute_pairwise() {
        let a = algebra_5d();
        for i in 0..5 {
            for j in 0..5 {
                let ri = a.right_mult(&e(5, i)).unwrap();
                let rj = a.right_mult(&e(5, j)).unwrap();
                assert_eq!(ri.compose(&rj), rj.compose(&ri));
            }
        }
    }

    #[test]
    fn annihilators_of_paper_examples() {
        let a5 = algebra_5d();
        assert_eq!(
            a5.annihilator(),
            Subspace::from_spanning(5, &[e(5, 0), e(5, 1), e(5, 2)])
        );
        let a4 = algebra_4d();
        assert_eq!(
            a4.annihilator(),
            Subspace::from_spanning(4, &[e(4, 0), e(4, 2)])
        );
        assert_eq!(AssocAlgebra::zero_algebra(3).annihilator(), Subspace::whole(3));
    }

    #[test]
    fn power_ideals_of_paper_examples() {
        let a5 = algebra_5d();
        assert_eq!(a5.power_ideal(2), Subspace::from_spanning(5, &[e(5, 2)]));
        assert!(a5.power_ideal(3).is_zero());
        let a4 = algebra_4d();
        let sq = Subspace::from_spanning(4, &[e(4, 1), e(4, 3)]);
        assert_eq!(a4.power_ideal(2), sq);
        for k in 3..6 {
            assert_eq!(a4.power_ideal(k), sq);
        }
        assert!(AssocAlgebra::zero_algebra(3).power_ideal(2).is_zero());
    }

    #[test]
    fn power_ideal_monotone_and_ideal() {
        let a = algebra_5d();
        for k in 2..5 {
            let pk = a.power_ideal(k);
            assert!(pk.contains_subspace(&a.power_ideal(k + 1)));
            // closed under multiplication by every basis element
            for v in pk.basis() {
                for j in 0..5 {
                    assert!(pk.contains(&a.mult(v, &e(5, j))));
                }
            }
        }
    }

    #[test]
    fn nilpotency_results() {
        assert_eq!(algebra_5d().nilpotency(), (true, Some(3)));
        assert_eq!(algebra_4d().nilpotency(), (false, None));
        assert_eq!(AssocAlgebra::zero_algebra(2).nilpotency(), (true, Some(2)));
    }

    #[test]
    fn nilpotent_power_lands_in_annihilator() {
        let a = algebra_5d();
        let (flag, index) = a.nilpotency();
        assert!(flag);
        let n = index.unwrap();
        assert!(a.annihilator().contains_subspace(&a.power_ideal(n - 1)));
    }

    #[test]
    fn nilpotent_right_mults_are_traceless() {
        let a = algebra_5d();
        for j in 0..5 {
            assert!(a.right_mult(&e(5, j)).unwrap().real_trace().is_zero());
        }
    }
}
