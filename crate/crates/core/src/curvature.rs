//! Levi-Civita connection, Riemann and Ricci tensors of the pseudo-Kähler
//! metric, each computed along every route the structure offers, and the
//! flatness / Ricci-flatness / Einstein / Novikov classification.
//!
//! The routes must agree exactly; a disagreement would falsify the curvature
//! formulas themselves and aborts with a witness. All tensors live on the
//! canonical real chart so the routes are comparable entrywise.

use crate::apk::ApkPair;
use crate::error::{Error, Result};
use crate::exactlin::{unit_vec, CMat, RMat};
use crate::liereal::{build_lie, LieRealization};
use crate::realform::{detect_aff, AffDetection};
use crate::scalar::{CRat, Rat};
use num_traits::Zero;

/// Connection, curvature tensors and the derived classification flags of one
/// pair, over the canonical chart.
#[derive(Clone, Debug)]
pub struct CurvatureReport {
    /// nabla[a] is the matrix of y ↦ ∇_{f_a} y.
    pub nabla: Vec<RMat>,
    /// riemann[a][b] is the operator R(f_a, f_b); skew in (a, b).
    pub riemann: Vec<Vec<RMat>>,
    pub ricci: RMat,
    pub flat: bool,
    pub ricci_flat: bool,
    pub einstein_factor: Option<Rat>,
    pub novikov: bool,
    pub two_step: bool,
    pub c1c2c3: (bool, bool, bool),
}

struct Ctx {
    n: usize,
    l: LieRealization,
    rmats: Vec<CMat>,
    amats: Vec<CMat>,
    /// right LSA multiplications by the real basis vectors
    ms: Vec<RMat>,
}

impl Ctx {
    fn new(pair: &ApkPair) -> Result<Self> {
        let n = pair.dim();
        let l = build_lie(pair)?;
        let rmats: Vec<CMat> = (0..n)
            .map(|k| pair.right_mult(&unit_vec(n, k)).map(|op| op.mat))
            .collect::<Result<_>>()?;
        let amats: Vec<CMat> = (0..n).map(|k| pair.basis_adjoint(k).mat.clone()).collect();
        let ms: Vec<RMat> = (0..2 * n)
            .map(|b| {
                let mut w = vec![Rat::zero(); 2 * n];
                w[b] = Rat::from_integer(1.into());
                l.lsa_right_mult(&w)
            })
            .collect();
        Ok(Ctx { n, l, rmats, amats, ms })
    }

    /// complex index and scalar factor of R_{f_a}: R_{i e_k} = i R_{e_k}
    fn rfac(&self, a: usize) -> (usize, CRat) {
        if a < self.n {
            (a, CRat::from_int(1))
        } else {
            (a - self.n, CRat::i())
        }
    }

    /// complex index and scalar factor of R*_{f_a}: R*_{i e_k} = -i R*_{e_k}
    fn sfac(&self, a: usize) -> (usize, CRat) {
        if a < self.n {
            (a, CRat::from_int(1))
        } else {
            (a - self.n, -CRat::i())
        }
    }

    /// index and sign of J f_a in the canonical chart
    fn jmap(&self, a: usize) -> (usize, i32) {
        if a < self.n {
            (a + self.n, 1)
        } else {
            (a - self.n, -1)
        }
    }

    fn realify_linear(&self, m: &CMat) -> RMat {
        crate::exactlin::LinearOperator::new(m.clone()).realify()
    }

    fn lsa_mult_matrix(&self, w: &[Rat]) -> RMat {
        let mut acc = RMat::zeros(2 * self.n, 2 * self.n);
        for (c, wc) in w.iter().enumerate() {
            if !wc.is_zero() {
                acc = acc.add(&self.ms[c].scale(wc));
            }
        }
        acc
    }
}

fn compute_nabla(ctx: &Ctx) -> Result<Vec<RMat>> {
    let rdim = 2 * ctx.n;
    let mut out = Vec::with_capacity(rdim);
    for a in 0..rdim {
        // route 1: realification of R_{f_a} - R*_{f_a}
        let (ja, rf) = ctx.rfac(a);
        let (_, sf) = ctx.sfac(a);
        let complex_op = ctx.rmats[ja].scale(&rf).sub(&ctx.amats[ja].scale(&sf));
        let route1 = ctx.realify_linear(&complex_op);
        // route 2: y ↦ -Jy · J f_a
        let (jb, sign) = ctx.jmap(a);
        let mut route2 = ctx.ms[jb].mul(ctx.l.j()).neg();
        if sign < 0 {
            route2 = route2.neg();
        }
        if route1 != route2 {
            return Err(Error::internal(
                "Levi-Civita routes (R_x - R*_x)y and -Jy·Jx must agree",
                format!("basis index {a}"),
            ));
        }
        out.push(route1);
    }
    Ok(out)
}

fn compute_riemann(ctx: &Ctx, nabla: &[RMat]) -> Result<Vec<Vec<RMat>>> {
    let n = ctx.n;
    let rdim = 2 * n;
    // complex products R_{e_j} R*_{e_k} and R*_{e_j} R_{e_k}
    let mut p = vec![vec![CMat::zeros(n, n); n]; n];
    let mut q = vec![vec![CMat::zeros(n, n); n]; n];
    for j in 0..n {
        for k in 0..n {
            p[j][k] = ctx.rmats[j].mul(&ctx.amats[k]);
            q[j][k] = ctx.amats[j].mul(&ctx.rmats[k]);
        }
    }
    // real products of LSA right multiplications taken along J
    let jm = |a: usize| -> (usize, i32) { ctx.jmap(a) };
    let mut mm = vec![vec![RMat::zeros(0, 0); rdim]; rdim];
    for c in 0..rdim {
        for d in 0..rdim {
            mm[c][d] = ctx.ms[c].mul(&ctx.ms[d]);
        }
    }
    let mut nn = vec![vec![RMat::zeros(0, 0); rdim]; rdim];
    for a in 0..rdim {
        for b in 0..rdim {
            nn[a][b] = nabla[a].mul(&nabla[b]);
        }
    }
    let three = CRat::from_int(3);
    let mut riemann = vec![vec![RMat::zeros(rdim, rdim); rdim]; rdim];
    for a in 0..rdim {
        for b in (a + 1)..rdim {
            // route 1: 3 R_x R*_y - 3 R_y R*_x + R*_x R_y - R*_y R_x
            let (ja, ra) = ctx.rfac(a);
            let (_, sa) = ctx.sfac(a);
            let (jb, rb) = ctx.rfac(b);
            let (_, sb) = ctx.sfac(b);
            let t1 = p[ja][jb].scale(&(three.clone() * ra.clone() * sb.clone()));
            let t2 = p[jb][ja].scale(&(three.clone() * rb.clone() * sa.clone()));
            let t3 = q[ja][jb].scale(&(sa.clone() * rb.clone()));
            let t4 = q[jb][ja].scale(&(sb.clone() * ra.clone()));
            let route1 = ctx.realify_linear(&t1.sub(&t2).add(&t3).sub(&t4));
            // route 2: -J[x,y]-multiplication composed with J plus the
            // commutator of the J-twisted LSA multiplications
            let jbracket = ctx.l.j().mul_vec(&ctx.l.lie().constants()[a][b]);
            let m_jbr = ctx.lsa_mult_matrix(&jbracket);
            let (ca, siga) = jm(a);
            let (cb, sigb) = jm(b);
            let mut comm = mm[ca][cb].sub(&mm[cb][ca]);
            if siga * sigb < 0 {
                comm = comm.neg();
            }
            let route2 = comm.sub(&m_jbr.mul(ctx.l.j()));
            // route 3: nabla_{[x,y]} - nabla_x nabla_y + nabla_y nabla_x
            let mut route3 = nn[b][a].sub(&nn[a][b]);
            for (c, coeff) in ctx.l.lie().constants()[a][b].iter().enumerate() {
                if !coeff.is_zero() {
                    route3 = route3.add(&nabla[c].scale(coeff));
                }
            }
            if route1 != route2 || route1 != route3 {
                return Err(Error::internal(
                    "Riemann routes must agree",
                    format!("basis pair ({a}, {b})"),
                ));
            }
            riemann[a][b] = route1.clone();
            riemann[b][a] = route1.neg();
        }
    }
    for a in 0..rdim {
        riemann[a][a] = RMat::zeros(rdim, rdim);
    }
    Ok(riemann)
}

fn compute_ricci(ctx: &Ctx, riemann: &[Vec<RMat>]) -> Result<RMat> {
    let n = ctx.n;
    let rdim = 2 * n;
    // traces of the complex products R_{e_j} R*_{e_k}
    let mut tp = vec![vec![CRat::zero(); n]; n];
    for j in 0..n {
        for k in 0..n {
            let mut acc = CRat::zero();
            for r in 0..n {
                for c in 0..n {
                    let x = ctx.rmats[j].at(r, c);
                    if x.is_zero() {
                        continue;
                    }
                    acc = acc + x.clone() * ctx.amats[k].at(c, r).clone();
                }
            }
            tp[j][k] = acc;
        }
    }
    let ad_traces: Vec<Rat> = (0..rdim).map(|c| ctx.l.lie().ad(c).trace()).collect();
    let killing = ctx.l.lie().killing();
    let mut ricci = RMat::zeros(rdim, rdim);
    for a in 0..rdim {
        for b in 0..rdim {
            // route 1: Ric(x, y) = -2 trace(R_y R*_x), real trace
            let (ja, _) = ctx.rfac(a);
            let (_, sa) = ctx.sfac(a);
            let (jb, rb) = ctx.rfac(b);
            let t = rb.clone() * sa.clone() * tp[jb][ja].clone();
            // -2 · realtrace = -2 · 2 Re(tr)
            let two_re = &t.re + &t.re;
            let route1 = -(&two_re + &two_re);
            // route 2: trace(ad(Jy·Jx)) - K(x, y)
            let jx = ctx.l.j().col(a);
            let jy = ctx.l.j().col(b);
            let w = ctx.l.lsa_mult(&jy, &jx);
            let tr_ad = w
                .iter()
                .zip(ad_traces.iter())
                .map(|(wc, t)| wc * t)
                .fold(Rat::zero(), |acc, v| &acc + &v);
            let route2 = &tr_ad - killing.at(a, b);
            // route 3: trace(z ↦ R(x, z) y)
            let mut route3 = Rat::zero();
            for c in 0..rdim {
                route3 = &route3 + riemann[a][c].at(c, b);
            }
            if route1 != route2 || route1 != route3 {
                return Err(Error::internal(
                    "Ricci routes must agree",
                    format!("entry ({a}, {b}): {route1} vs {route2} vs {route3}"),
                ));
            }
            ricci.set(a, b, route1);
        }
    }
    if ricci.transpose() != ricci {
        return Err(Error::internal("Ricci must be symmetric", "asymmetry"));
    }
    Ok(ricci)
}

/// The polarized flatness criterion 3 R_x R*_y = R*_y R_x on all basis pairs.
fn flat_by_criterion(ctx: &Ctx) -> bool {
    let three = CRat::from_int(3);
    for j in 0..ctx.n {
        for k in 0..ctx.n {
            let lhs = ctx.rmats[j].mul(&ctx.amats[k]).scale(&three);
            let rhs = ctx.amats[k].mul(&ctx.rmats[j]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// c2 of the flatness trichotomy: associativity of the left-symmetric
/// product, checked structurally on the canonical chart.
fn lsa_associative(ctx: &Ctx) -> bool {
    let rdim = 2 * ctx.n;
    for b in 0..rdim {
        for c in 0..rdim {
            // (x·f_b)·f_c = x·(f_b·f_c) as operators on x
            let lhs = ctx.ms[c].mul(&ctx.ms[b]);
            let rhs = ctx.lsa_mult_matrix(&ctx.l.lsa()[b][c]);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// c3 of the flatness trichotomy: [g, g] ⊆ ann(U), equivalently
/// R_x R*_y = 0 for all x, y. Both readings are computed and must agree.
fn derived_in_annihilator(ctx: &Ctx, pair: &ApkPair) -> Result<bool> {
    let by_ops = (0..ctx.n).all(|j| {
        (0..ctx.n).all(|k| ctx.rmats[j].mul(&ctx.amats[k]).is_zero())
    });
    let ann = pair.annihilator();
    let n = ctx.n;
    let mut by_spaces = true;
    'outer: for a in 0..2 * n {
        for b in (a + 1)..2 * n {
            let br = &ctx.l.lie().constants()[a][b];
            let complex: Vec<CRat> = (0..n)
                .map(|k| CRat::new(br[k].clone(), br[n + k].clone()))
                .collect();
            if !ann.contains(&complex) {
                by_spaces = false;
                break 'outer;
            }
        }
    }
    if by_ops != by_spaces {
        return Err(Error::internal(
            "derived-ideal criteria must agree",
            format!("operators say {by_ops}, subspaces say {by_spaces}"),
        ));
    }
    Ok(by_ops)
}

/// Full curvature computation with every route cross-checked and every
/// connection/curvature invariant asserted.
pub fn curvature_report(pair: &ApkPair) -> Result<CurvatureReport> {
    let ctx = Ctx::new(pair)?;
    let rdim = 2 * ctx.n;
    let nabla = compute_nabla(&ctx)?;
    let riemann = compute_riemann(&ctx, &nabla)?;
    let ricci = compute_ricci(&ctx, &riemann)?;
    // torsion-free, metric and Kähler conditions
    for a in 0..rdim {
        if nabla[a].transpose().mul(ctx.l.metric()) != ctx.l.metric().mul(&nabla[a]).neg() {
            return Err(Error::internal(
                "connection must be metric",
                format!("index {a}"),
            ));
        }
        if nabla[a].mul(ctx.l.j()) != ctx.l.j().mul(&nabla[a]) {
            return Err(Error::internal(
                "complex structure must be parallel",
                format!("index {a}"),
            ));
        }
        for b in 0..rdim {
            let lhs: Vec<Rat> = nabla[a]
                .col(b)
                .iter()
                .zip(nabla[b].col(a).iter())
                .map(|(p, q)| p - q)
                .collect();
            if lhs != ctx.l.lie().constants()[a][b] {
                return Err(Error::internal(
                    "connection must be torsion-free",
                    format!("pair ({a}, {b})"),
                ));
            }
        }
    }
    // first Bianchi identity
    for a in 0..rdim {
        for b in (a + 1)..rdim {
            for c in (b + 1)..rdim {
                let mut acc = riemann[a][b].col(c);
                let t2 = riemann[b][c].col(a);
                let t3 = riemann[c][a].col(b);
                for k in 0..rdim {
                    acc[k] = &acc[k] + &t2[k];
                    acc[k] = &acc[k] + &t3[k];
                }
                if acc.iter().any(|v| !v.is_zero()) {
                    return Err(Error::internal(
                        "first Bianchi identity",
                        format!("triple ({a}, {b}, {c})"),
                    ));
                }
            }
        }
    }
    let flat_tensor = riemann
        .iter()
        .all(|row| row.iter().all(|m| m.is_zero()));
    let flat_crit = flat_by_criterion(&ctx);
    if flat_tensor != flat_crit {
        return Err(Error::internal(
            "flatness criterion must match a vanishing Riemann tensor",
            format!("criterion {flat_crit}, tensor {flat_tensor}"),
        ));
    }
    let ricci_flat = ricci.is_zero();
    if flat_tensor && !ricci_flat {
        return Err(Error::internal("flat implies Ricci-flat", "violated"));
    }
    let novikov = pair.is_novikov()?;
    let c2 = lsa_associative(&ctx);
    if c2 != novikov {
        return Err(Error::internal(
            "Novikov condition must equal associativity of the product",
            format!("novikov {novikov}, associative {c2}"),
        ));
    }
    let c3 = derived_in_annihilator(&ctx, pair)?;
    let c1 = flat_tensor;
    // any one condition makes the other two equivalent
    if (c1 && (c2 != c3)) || (c2 && (c1 != c3)) || (c3 && (c1 != c2)) {
        return Err(Error::internal(
            "flatness trichotomy implication",
            format!("c1 {c1}, c2 {c2}, c3 {c3}"),
        ));
    }
    let two_step = pair.is_two_step()?;
    if two_step != ctx.l.lie().is_two_step_nilpotent() {
        return Err(Error::internal(
            "pair-level 2-step criterion must match the Lie side",
            format!("pair {two_step}"),
        ));
    }
    if two_step {
        // on 2-step pairs: flat ⟺ H(U², U²) = 0
        let square = pair.algebra().power_ideal(2);
        let isotropic = square.basis().iter().all(|v| {
            square
                .basis()
                .iter()
                .all(|w| pair.gram().form(v, w).is_zero())
        });
        if isotropic != flat_tensor {
            return Err(Error::internal(
                "2-step flatness criterion H(U²,U²) = 0",
                format!("isotropic {isotropic}, flat {flat_tensor}"),
            ));
        }
    }
    let einstein_factor = einstein_factor_checked(pair, &ricci, ctx.l.metric())?;
    Ok(CurvatureReport {
        nabla,
        riemann,
        ricci,
        flat: flat_tensor,
        ricci_flat,
        einstein_factor,
        novikov,
        two_step,
        c1c2c3: (c1, c2, c3),
    })
}

/// γ with g = γ·Ric when it exists and Ric ≠ 0. A found γ triggers the
/// structure theorem: the pair must be of aff type with B = γ·(trace form).
fn einstein_factor_checked(
    pair: &ApkPair,
    ricci: &RMat,
    metric: &RMat,
) -> Result<Option<Rat>> {
    if ricci.is_zero() {
        return Ok(None);
    }
    let rdim = ricci.rows();
    let mut gamma = None;
    'search: for a in 0..rdim {
        for b in 0..rdim {
            if !ricci.at(a, b).is_zero() {
                gamma = Some(metric.at(a, b) / ricci.at(a, b));
                break 'search;
            }
        }
    }
    let gamma = gamma.expect("nonzero ricci has a nonzero entry");
    if ricci.scale(&gamma) != *metric {
        return Ok(None);
    }
    // Einstein structure theorem
    let AffDetection::Aff(cert) = detect_aff(pair)? else {
        return Err(Error::internal(
            "Einstein non-Ricci-flat pairs must be of aff type",
            "detect_aff failed",
        ));
    };
    let a = cert.recovered.algebra();
    let m = a.dim();
    for i in 0..m {
        for j in 0..m {
            let mut basis_i = vec![Rat::zero(); m];
            basis_i[i] = Rat::from_integer(1.into());
            let mut basis_j = vec![Rat::zero(); m];
            basis_j[j] = Rat::from_integer(1.into());
            let prod = a.mult(&basis_i, &basis_j);
            let tr = a.right_mult(&prod).trace();
            if *cert.recovered.b().at(i, j) != &gamma * &tr {
                return Err(Error::internal(
                    "Einstein form must be the scaled trace form",
                    format!("entry ({i}, {j})"),
                ));
            }
        }
    }
    Ok(Some(gamma))
}

/// Levi-Civita connection; both derivations asserted equal.
pub fn levi_civita(pair: &ApkPair) -> Result<Vec<RMat>> {
    let ctx = Ctx::new(pair)?;
    compute_nabla(&ctx)
}

/// Riemann tensor as operators R(f_a, f_b); all three routes asserted equal.
pub fn riemann(pair: &ApkPair) -> Result<Vec<Vec<RMat>>> {
    let ctx = Ctx::new(pair)?;
    let nabla = compute_nabla(&ctx)?;
    compute_riemann(&ctx, &nabla)
}

/// Ricci tensor; all three routes asserted equal.
pub fn ricci(pair: &ApkPair) -> Result<RMat> {
    let ctx = Ctx::new(pair)?;
    let nabla = compute_nabla(&ctx)?;
    let riem = compute_riemann(&ctx, &nabla)?;
    compute_ricci(&ctx, &riem)
}

pub fn is_flat(pair: &ApkPair) -> Result<bool> {
    Ok(curvature_report(pair)?.flat)
}

pub fn flat_equiv_report(pair: &ApkPair) -> Result<(bool, bool, bool)> {
    Ok(curvature_report(pair)?.c1c2c3)
}

/// On 2-step pairs: flat ⟺ H(U², U²) = 0 (asserted inside the report);
/// `None` when the pair is not 2-step.
pub fn two_step_flat_criterion(pair: &ApkPair) -> Result<Option<bool>> {
    let report = curvature_report(pair)?;
    if !report.two_step {
        return Ok(None);
    }
    let square = pair.algebra().power_ideal(2);
    let isotropic = square.basis().iter().all(|v| {
        square
            .basis()
            .iter()
            .all(|w| pair.gram().form(v, w).is_zero())
    });
    Ok(Some(isotropic))
}

pub fn einstein_check(pair: &ApkPair) -> Result<Option<Rat>> {
    Ok(curvature_report(pair)?.einstein_factor)
}
