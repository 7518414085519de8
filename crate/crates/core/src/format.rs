//! The canonical JSON document format: strict parsing (unknown fields
//! rejected, exact scalars only), kind-aware validation, and canonical
//! emission so that parse ∘ emit ∘ parse is the identity.
//!
//! Scalars are strings `p/q` (real) or `p/q+r/si` (complex), never floats.
//! Products, Gram matrices, brackets and ω are sparse `{row, col, value}`
//! lists; commutative/hermitian/skew closure is applied on load and
//! conflicting redundant entries are errors.

use crate::apk::{check_apk, ApkPair};
use crate::assoc::{validate_table, AssocAlgebra};
use crate::error::{Error, Result, ValidationReport};
use crate::exactlin::{dagger, CMat, HermitianGram, RMat};
use crate::extension::DoubleExtensionData;
use crate::liereal::{
    derive_lsa, validate_pk, LieRealization, RealAlgebra, RealLieAlgebra, RealSymmetricAlgebra,
};
use crate::scalar::{parse_rat, rat_to_string, CRat, Rat};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScalarEntry {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct VectorEntry {
    pub row: usize,
    pub col: usize,
    pub value: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ApkPairDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_labels: Option<Vec<String>>,
    #[serde(default)]
    pub products: Vec<VectorEntry>,
    #[serde(default)]
    pub gram: Vec<ScalarEntry>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RealSymmetricAlgebraDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_labels: Option<Vec<String>>,
    #[serde(default)]
    pub products: Vec<VectorEntry>,
    #[serde(default)]
    pub gram: Vec<ScalarEntry>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LiePkDoc {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_labels: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<VectorEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<ScalarEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<Vec<ScalarEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gmat: Option<Vec<ScalarEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lsa: Option<Vec<VectorEntry>>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDataDoc {
    pub dim: usize,
    #[serde(default)]
    pub d: Vec<ScalarEntry>,
    #[serde(default)]
    pub tau: Vec<ScalarEntry>,
    pub a0: Vec<String>,
    pub b0: Vec<String>,
    pub eps: String,
    pub alpha0: String,
}

/// A parsed document of any supported kind.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    ApkPair(ApkPairDoc),
    RealSymmetricAlgebra(RealSymmetricAlgebraDoc),
    LiePk(LiePkDoc),
    ExtensionData(ExtensionDataDoc),
}

pub fn parse(text: &str) -> Result<Document> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        message: format!("line {}, column {}: {}", e.line(), e.column(), e),
    })
}

/// Canonical emission: struct field order, entries sorted by (row, col),
/// scalars in reduced canonical form.
pub fn emit(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn parse_crat(s: &str) -> Result<CRat> {
    s.parse()
}

fn parse_real(s: &str) -> Result<Rat> {
    parse_rat(s)
}

fn check_index(v: usize, dim: usize, what: &str) -> Result<()> {
    if v >= dim {
        return Err(Error::Parse {
            message: format!("{what} index {v} out of range for dimension {dim}"),
        });
    }
    Ok(())
}

/// Commutative closure for product tables: entry (i, j) also fills (j, i);
/// redundant entries must agree exactly.
fn products_to_table(
    dim: usize,
    entries: &[VectorEntry],
) -> Result<Vec<Vec<Vec<CRat>>>> {
    let mut table = vec![vec![vec![CRat::zero(); dim]; dim]; dim];
    let mut set = vec![vec![false; dim]; dim];
    for e in entries {
        check_index(e.row, dim, "product row")?;
        check_index(e.col, dim, "product col")?;
        if e.value.len() != dim {
            return Err(Error::Parse {
                message: format!(
                    "product ({}, {}) has {} coefficients, expected {dim}",
                    e.row,
                    e.col,
                    e.value.len()
                ),
            });
        }
        let v: Vec<CRat> = e.value.iter().map(|s| parse_crat(s)).collect::<Result<_>>()?;
        for (slot_r, slot_c) in [(e.row, e.col), (e.col, e.row)] {
            if set[slot_r][slot_c] && table[slot_r][slot_c] != v {
                return Err(Error::Parse {
                    message: format!(
                        "conflicting product entries for ({slot_r}, {slot_c})"
                    ),
                });
            }
            table[slot_r][slot_c] = v.clone();
            set[slot_r][slot_c] = true;
        }
    }
    Ok(table)
}

/// Hermitian closure: entry (i, j) fills (j, i) with the conjugate.
fn gram_to_matrix(dim: usize, entries: &[ScalarEntry]) -> Result<CMat> {
    let mut mat = CMat::zeros(dim, dim);
    let mut set = vec![vec![false; dim]; dim];
    for e in entries {
        check_index(e.row, dim, "gram row")?;
        check_index(e.col, dim, "gram col")?;
        let v = parse_crat(&e.value)?;
        for (slot_r, slot_c, val) in [
            (e.row, e.col, v.clone()),
            (e.col, e.row, v.conj()),
        ] {
            if set[slot_r][slot_c] && *mat.at(slot_r, slot_c) != val {
                return Err(Error::Parse {
                    message: format!("conflicting gram entries for ({slot_r}, {slot_c})"),
                });
            }
            mat.set(slot_r, slot_c, val);
            set[slot_r][slot_c] = true;
        }
    }
    Ok(mat)
}

/// Symmetric closure over the reals.
fn symmetric_to_matrix(dim: usize, entries: &[ScalarEntry]) -> Result<RMat> {
    let mut mat = RMat::zeros(dim, dim);
    let mut set = vec![vec![false; dim]; dim];
    for e in entries {
        check_index(e.row, dim, "gram row")?;
        check_index(e.col, dim, "gram col")?;
        let v = parse_real(&e.value)?;
        for (slot_r, slot_c) in [(e.row, e.col), (e.col, e.row)] {
            if set[slot_r][slot_c] && *mat.at(slot_r, slot_c) != v {
                return Err(Error::Parse {
                    message: format!("conflicting entries for ({slot_r}, {slot_c})"),
                });
            }
            mat.set(slot_r, slot_c, v.clone());
            set[slot_r][slot_c] = true;
        }
    }
    Ok(mat)
}

/// Skew closure: entry (i, j) fills (j, i) with the negative; nonzero
/// diagonal entries conflict with themselves.
fn skew_to_matrix(dim: usize, entries: &[ScalarEntry]) -> Result<RMat> {
    let mut mat = RMat::zeros(dim, dim);
    let mut set = vec![vec![false; dim]; dim];
    for e in entries {
        check_index(e.row, dim, "omega row")?;
        check_index(e.col, dim, "omega col")?;
        let v = parse_real(&e.value)?;
        for (slot_r, slot_c, val) in [(e.row, e.col, v.clone()), (e.col, e.row, -v)] {
            if set[slot_r][slot_c] && *mat.at(slot_r, slot_c) != val {
                return Err(Error::Parse {
                    message: format!("conflicting skew entries for ({slot_r}, {slot_c})"),
                });
            }
            mat.set(slot_r, slot_c, val);
            set[slot_r][slot_c] = true;
        }
    }
    Ok(mat)
}

fn plain_to_matrix(dim: usize, entries: &[ScalarEntry], what: &str) -> Result<RMat> {
    let mut mat = RMat::zeros(dim, dim);
    let mut set = vec![vec![false; dim]; dim];
    for e in entries {
        check_index(e.row, dim, what)?;
        check_index(e.col, dim, what)?;
        let v = parse_real(&e.value)?;
        if set[e.row][e.col] && *mat.at(e.row, e.col) != v {
            return Err(Error::Parse {
                message: format!("conflicting {what} entries for ({}, {})", e.row, e.col),
            });
        }
        mat.set(e.row, e.col, v);
        set[e.row][e.col] = true;
    }
    Ok(mat)
}

fn plain_to_cmatrix(dim: usize, entries: &[ScalarEntry], what: &str) -> Result<CMat> {
    let mut mat = CMat::zeros(dim, dim);
    let mut set = vec![vec![false; dim]; dim];
    for e in entries {
        check_index(e.row, dim, what)?;
        check_index(e.col, dim, what)?;
        let v = parse_crat(&e.value)?;
        if set[e.row][e.col] && *mat.at(e.row, e.col) != v {
            return Err(Error::Parse {
                message: format!("conflicting {what} entries for ({}, {})", e.row, e.col),
            });
    }
        mat.set(e.row, e.col, v);
        set[e.row][e.col] = true;
    }
    Ok(mat)
}

/// Real skew brackets with vector values: entry (a, b) fills (b, a) negated.
fn brackets_to_table(dim: usize, entries: &[VectorEntry]) -> Result<Vec<Vec<Vec<Rat>>>> {
    let mut table = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
    let mut set = vec![vec![false; dim]; dim];
    for e in entries {
        check_index(e.row, dim, "bracket row")?;
        check_index(e.col, dim, "bracket col")?;
        if e.value.len() != dim {
            return Err(Error::Parse {
                message: format!(
                    "bracket ({}, {}) has {} coefficients, expected {dim}",
                    e.row,
                    e.col,
                    e.value.len()
                ),
            });
        }
        let v: Vec<Rat> = e.value.iter().map(|s| parse_real(s)).collect::<Result<_>>()?;
        let neg: Vec<Rat> = v.iter().map(|x| -x.clone()).collect();
        for (slot_r, slot_c, val) in [(e.row, e.col, v), (e.col, e.row, neg)] {
            if set[slot_r][slot_c] && table[slot_r][slot_c] != val {
                return Err(Error::Parse {
                    message: format!(
                        "conflicting bracket entries for ({slot_r}, {slot_c})"
                    ),
                });
            }
            table[slot_r][slot_c] = val;
            set[slot_r][slot_c] = true;
        }
    }
    Ok(table)
}

fn lsa_to_table(dim: usize, entries: &[VectorEntry]) -> Result<Vec<Vec<Vec<Rat>>>> {
    let mut table = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
    let mut set = vec![vec![false; dim]; dim];
    for e in entries {
        check_index(e.row, dim, "lsa row")?;
        check_index(e.col, dim, "lsa col")?;
        if e.value.len() != dim {
            return Err(Error::Parse {
                message: format!("lsa entry has {} coefficients, expected {dim}", e.value.len()),
            });
        }
        let v: Vec<Rat> = e.value.iter().map(|s| parse_real(s)).collect::<Result<_>>()?;
        if set[e.row][e.col] && table[e.row][e.col] != v {
            return Err(Error::Parse {
                message: format!("conflicting lsa entries for ({}, {})", e.row, e.col),
            });
        }
        table[e.row][e.col] = v;
        set[e.row][e.col] = true;
    }
    Ok(table)
}

impl ApkPairDoc {
    pub fn raw_parts(&self) -> Result<(Vec<Vec<Vec<CRat>>>, CMat)> {
        let table = products_to_table(self.dim, &self.products)?;
        let gram = gram_to_matrix(self.dim, &self.gram)?;
        Ok((table, gram))
    }

    /// Full validation report: algebra axioms, hermitian non-degeneracy and
    /// the compatibility certificate.
    pub fn validate(&self) -> Result<ValidationReport> {
        let (table, gram) = self.raw_parts()?;
        let mut report = validate_table(self.dim, &table);
        if dagger(&gram) != gram {
            report.push("H hermitian", vec![], "conj(G)ᵀ", "G");
        }
        if gram.det().is_zero() {
            report.push("H non-degenerate", vec![], "det G = 0", "det G ≠ 0");
            return Ok(report);
        }
        if !report.is_valid() {
            return Ok(report);
        }
        let algebra = AssocAlgebra::new(table, self.basis_labels.clone())?;
        let hg = HermitianGram::new(gram)?;
        report.merge(check_apk(&algebra, &hg)?);
        Ok(report)
    }

    pub fn to_pair(&self) -> Result<ApkPair> {
        let (table, gram) = self.raw_parts()?;
        let algebra = AssocAlgebra::new(table, self.basis_labels.clone())?;
        ApkPair::new(algebra, HermitianGram::new(gram)?)
    }

    pub fn from_pair(pair: &ApkPair) -> Self {
        let n = pair.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in i..n {
                let v = pair.algebra().basis_product(i, j);
                if v.iter().any(|z| !z.is_zero()) {
                    products.push(VectorEntry {
                        row: i,
                        col: j,
                        value: v.iter().map(|z| z.to_string()).collect(),
                    });
                }
            }
        }
        let mut gram = Vec::new();
        for i in 0..n {
            for j in i..n {
                let v = pair.gram().entry(i, j);
                if !v.is_zero() {
                    gram.push(ScalarEntry {
                        row: i,
                        col: j,
                        value: v.to_string(),
                    });
                }
            }
        }
        ApkPairDoc {
            dim: n,
            basis_labels: Some(pair.algebra().labels().to_vec()),
            products,
            gram,
        }
    }
}

impl RealSymmetricAlgebraDoc {
    pub fn validate(&self) -> Result<ValidationReport> {
        let entries: Vec<VectorEntry> = self.products.clone();
        let mut complex_table = vec![vec![vec![CRat::zero(); self.dim]; self.dim]; self.dim];
        let real = self.raw_parts()?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    complex_table[i][j][k] = CRat::from_rat(real.0[i][j][k].clone());
                }
            }
        }
        let mut report = validate_table(self.dim, &complex_table);
        let b = real.1;
        if b.transpose() != b {
            report.push("B symmetric", vec![], "Bᵀ", "B");
        }
        if b.det().is_zero() {
            report.push("B non-degenerate", vec![], "det B = 0", "det B ≠ 0");
            return Ok(report);
        }
        if report.is_valid() {
            let algebra = RealAlgebra::new(real.0)?;
            if let Err(Error::Validation(inner)) = RealSymmetricAlgebra::new(algebra, b) {
                report.merge(inner);
            }
        }
        let _ = entries;
        Ok(report)
    }

    fn raw_parts(&self) -> Result<(Vec<Vec<Vec<Rat>>>, RMat)> {
        let mut table = vec![vec![vec![Rat::zero(); self.dim]; self.dim]; self.dim];
        let complex = products_to_table(self.dim, &self.products)?;
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let v = &complex[i][j][k];
                    if !v.is_real() {
                        return Err(Error::Parse {
                            message: format!(
                                "real algebra product ({i}, {j}) has a complex coefficient {v}"
                            ),
                        });
                    }
                    table[i][j][k] = v.re.clone();
                }
            }
        }
        let b = symmetric_to_matrix(self.dim, &self.gram)?;
        Ok((table, b))
    }

    pub fn to_symmetric_algebra(&self) -> Result<RealSymmetricAlgebra> {
        let (table, b) = self.raw_parts()?;
        RealSymmetricAlgebra::new(RealAlgebra::new(table)?, b)
    }

    pub fn from_symmetric_algebra(s: &RealSymmetricAlgebra) -> Self {
        let n = s.dim();
        let mut products = Vec::new();
        for i in 0..n {
            for j in i..n {
                let v = &s.algebra().constants()[i][j];
                if v.iter().any(|x| !x.is_zero()) {
                    products.push(VectorEntry {
                        row: i,
                        col: j,
                        value: v.iter().map(rat_to_string).collect(),
                    });
                }
            }
        }
        let mut gram = Vec::new();
        for i in 0..n {
            for j in i..n {
                if !s.b().at(i, j).is_zero() {
                    gram.push(ScalarEntry {
                        row: i,
                        col: j,
                        value: rat_to_string(s.b().at(i, j)),
                    });
                }
            }
        }
        RealSymmetricAlgebraDoc {
            dim: n,
            basis_labels: None,
            products,
            gram,
        }
    }
}

impl LiePkDoc {
    pub fn lie_algebra(&self) -> Result<RealLieAlgebra> {
        Ok(RealLieAlgebra::new_unchecked(brackets_to_table(
            self.dim,
            &self.brackets,
        )?))
    }

    pub fn j_matrix(&self) -> Result<Option<RMat>> {
        self.j
            .as_ref()
            .map(|entries| plain_to_matrix(self.dim, entries, "J"))
            .transpose()
    }

    pub fn omega_matrix(&self) -> Result<Option<RMat>> {
        self.omega
            .as_ref()
            .map(|entries| skew_to_matrix(self.dim, entries))
            .transpose()
    }

    /// Validate whatever is present: the Lie axioms always, the complex
    /// structure and symplectic conditions when their tensors are given, and
    /// the full pseudo-Kähler battery when both are.
    pub fn validate(&self) -> Result<ValidationReport> {
        let lie = self.lie_algebra()?;
        let j = self.j_matrix()?;
        let omega = self.omega_matrix()?;
        let lsa = self
            .lsa
            .as_ref()
            .map(|entries| lsa_to_table(self.dim, entries))
            .transpose()?;
        let gmat = self
            .gmat
            .as_ref()
            .map(|entries| symmetric_to_matrix(self.dim, entries))
            .transpose()?;
        if let (Some(j), Some(omega)) = (&j, &omega) {
            if !omega.det().is_zero() {
                let l = LieRealization::assemble(lie, j.clone(), omega.clone(), lsa, gmat)?;
                return Ok(validate_pk(&l));
            }
        }
        let mut report = lie.validate();
        let n = self.dim;
        if let Some(j) = &j {
            if j.mul(j) != RMat::identity(n).neg() {
                report.push("J² = -id", vec![], "J²", "-id");
            }
            for a in 0..n {
                for b in (a + 1)..n {
                    let lhs = lie.bracket(&j.col(a), &j.col(b));
                    if lhs != lie.constants()[a][b] {
                        report.push("[Jx, Jy] = [x, y]", vec![a, b], "lhs", "rhs");
                    }
                }
            }
        }
        if let Some(omega) = &omega {
            if omega.det().is_zero() {
                report.push("omega non-degenerate", vec![], "det ω = 0", "det ω ≠ 0");
            }
        }
        Ok(report)
    }

    /// The full realization; requires ω and J to be present and valid.
    pub fn to_realization(&self) -> Result<LieRealization> {
        let lie = self.lie_algebra()?;
        let j = self.j_matrix()?.ok_or_else(|| {
            Error::precondition("lie_pk document needs a complex structure J")
        })?;
        let omega = self.omega_matrix()?.ok_or_else(|| {
            Error::precondition("lie_pk document needs a symplectic form omega")
        })?;
        let lsa = self
            .lsa
            .as_ref()
            .map(|entries| lsa_to_table(self.dim, entries))
            .transpose()?;
        let gmat = self
            .gmat
            .as_ref()
            .map(|entries| symmetric_to_matrix(self.dim, entries))
            .transpose()?;
        let l = LieRealization::assemble(lie, j, omega, lsa, gmat)?;
        validate_pk(&l).into_result()?;
        Ok(l)
    }

    /// Emit a realization with every tensor filled in (brackets, ω, J, g and
    /// the left-symmetric product).
    pub fn from_realization(l: &LieRealization, labels: Option<Vec<String>>) -> Self {
        let n = l.rdim();
        let mut brackets = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                let v = &l.lie().constants()[a][b];
                if v.iter().any(|x| !x.is_zero()) {
                    brackets.push(VectorEntry {
                        row: a,
                        col: b,
                        value: v.iter().map(rat_to_string).collect(),
                    });
                }
            }
        }
        let sparse_upper = |m: &RMat, skew: bool| -> Vec<ScalarEntry> {
            let mut out = Vec::new();
            for r in 0..n {
                let from = if skew { r + 1 } else { r };
                for c in from..n {
                    if !m.at(r, c).is_zero() {
                        out.push(ScalarEntry {
                            row: r,
                            col: c,
                            value: rat_to_string(m.at(r, c)),
                        });
                    }
                }
            }
            out
        };
        let sparse_full = |m: &RMat| -> Vec<ScalarEntry> {
            let mut out = Vec::new();
            for r in 0..n {
                for c in 0..n {
                    if !m.at(r, c).is_zero() {
                        out.push(ScalarEntry {
                            row: r,
                            col: c,
                            value: rat_to_string(m.at(r, c)),
                        });
                    }
                }
            }
            out
        };
        let mut lsa = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let v = &l.lsa()[a][b];
                if v.iter().any(|x| !x.is_zero()) {
                    lsa.push(VectorEntry {
                        row: a,
                        col: b,
                        value: v.iter().map(rat_to_string).collect(),
                    });
                }
            }
        }
        LiePkDoc {
            dim: n,
            basis_labels: labels,
            brackets,
            omega: Some(sparse_upper(l.omega(), true)),
            j: Some(sparse_full(l.j())),
            gmat: Some(sparse_upper(l.metric(), false)),
            lsa: Some(lsa),
        }
    }
}

impl ExtensionDataDoc {
    pub fn to_data(&self) -> Result<DoubleExtensionData> {
        let d = plain_to_cmatrix(self.dim, &self.d, "D")?;
        let tau = plain_to_cmatrix(self.dim, &self.tau, "tau")?;
        let parse_vec = |v: &[String], what: &str| -> Result<Vec<CRat>> {
            if v.len() != self.dim {
                return Err(Error::Parse {
                    message: format!("{what} has {} entries, expected {}", v.len(), self.dim),
                });
            }
            v.iter().map(|s| parse_crat(s)).collect()
        };
        Ok(DoubleExtensionData {
            d,
            tau,
            a0: parse_vec(&self.a0, "a0")?,
            b0: parse_vec(&self.b0, "b0")?,
            eps: parse_crat(&self.eps)?,
            alpha0: parse_crat(&self.alpha0)?,
        })
    }

    pub fn from_data(data: &DoubleExtensionData) -> Self {
        let dim = data.d.rows();
        let sparse = |m: &CMat| -> Vec<ScalarEntry> {
            let mut out = Vec::new();
            for r in 0..dim {
                for c in 0..dim {
                    if !m.at(r, c).is_zero() {
                        out.push(ScalarEntry {
                            row: r,
                            col: c,
                            value: m.at(r, c).to_string(),
                        });
                    }
                }
            }
            out
        };
        ExtensionDataDoc {
            dim,
            d: sparse(&data.d),
            tau: sparse(&data.tau),
            a0: data.a0.iter().map(|z| z.to_string()).collect(),
            b0: data.b0.iter().map(|z| z.to_string()).collect(),
            eps: data.eps.to_string(),
            alpha0: data.alpha0.to_string(),
        }
    }

    /// Shape-level validation; the full hypothesis battery runs against a
    /// concrete base pair in `extend`.
    pub fn validate(&self) -> Result<ValidationReport> {
        self.to_data()?;
        Ok(ValidationReport::new())
    }
}

impl Document {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Document::ApkPair(_) => "apk_pair",
            Document::RealSymmetricAlgebra(_) => "real_symmetric_algebra",
            Document::LiePk(_) => "lie_pk",
            Document::ExtensionData(_) => "extension_data",
        }
    }

    /// Kind-aware validation report.
    pub fn validate(&self) -> Result<ValidationReport> {
        match self {
            Document::ApkPair(doc) => doc.validate(),
            Document::RealSymmetricAlgebra(doc) => doc.validate(),
            Document::LiePk(doc) => doc.validate(),
            Document::ExtensionData(doc) => doc.validate(),
        }
    }

    /// Convert to a pair, complexifying or inverting as the kind requires.
    pub fn to_pair(&self) -> Result<ApkPair> {
        match self {
            Document::ApkPair(doc) => doc.to_pair(),
            Document::RealSymmetricAlgebra(doc) => {
                let s = doc.to_symmetric_algebra()?;
                Ok(crate::liereal::complexify_pair(&s)?.0)
            }
            Document::LiePk(doc) => {
                let l = doc.to_realization()?;
                Ok(crate::liereal::pair_from_pk(&l)?.0)
            }
            Document::ExtensionData(_) => Err(Error::precondition(
                "extension_data documents do not describe a pair",
            )),
        }
    }

    /// The pseudo-Kähler realization the document describes.
    pub fn to_realization(&self) -> Result<LieRealization> {
        match self {
            Document::ApkPair(doc) => crate::liereal::build_lie(&doc.to_pair()?),
            Document::RealSymmetricAlgebra(doc) => {
                crate::liereal::standard_pk(&doc.to_symmetric_algebra()?)
            }
            Document::LiePk(doc) => doc.to_realization(),
            Document::ExtensionData(_) => Err(Error::precondition(
                "extension_data documents do not describe a realization",
            )),
        }
    }
}

/// Re-derive the left-symmetric product of a parsed realization; used by
/// consumers that need it for display.
pub fn lsa_of(doc: &LiePkDoc) -> Result<Vec<Vec<Vec<Rat>>>> {
    let lie = doc.lie_algebra()?;
    let omega = doc.omega_matrix()?.ok_or_else(|| {
        Error::precondition("left-symmetric product needs a symplectic form")
    })?;
    derive_lsa(&lie, &omega)
}
