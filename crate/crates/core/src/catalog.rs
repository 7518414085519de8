//! Built-in example documents used by the CLI and the regression suites.

use crate::format::{
    ApkPairDoc, Document, LiePkDoc, RealSymmetricAlgebraDoc, ScalarEntry, VectorEntry,
};

fn vecs(entries: &[(usize, usize, &[&str])]) -> Vec<VectorEntry> {
    entries
        .iter()
        .map(|(row, col, value)| VectorEntry {
            row: *row,
            col: *col,
            value: value.iter().map(|s| s.to_string()).collect(),
        })
        .collect()
}

fn scalars(entries: &[(usize, usize, &str)]) -> Vec<ScalarEntry> {
    entries
        .iter()
        .map(|(row, col, value)| ScalarEntry {
            row: *row,
            col: *col,
            value: value.to_string(),
        })
        .collect()
}

fn labels(names: &[&str]) -> Option<Vec<String>> {
    Some(names.iter().map(|s| s.to_string()).collect())
}

/// 5-dimensional 2-step pair: u4u3 = u3u4 = u4u4 = u2 with the antidiagonal
/// hermitian form. Nilpotent, 2-step, not flat.
fn two_step_5d() -> Document {
    Document::ApkPair(ApkPairDoc {
        dim: 5,
        basis_labels: labels(&["u0", "u1", "u2", "u3", "u4"]),
        products: vecs(&[
            (3, 4, &["0", "0", "1", "0", "0"]),
            (4, 4, &["0", "0", "1", "0", "0"]),
        ]),
        gram: scalars(&[(0, 4, "1"), (1, 3, "1"), (2, 2, "1")]),
    })
}

/// 4-dimensional pair with an idempotent: u1u3 = u1, u3u3 = u3. Flat but not
/// nilpotent.
fn flat_4d() -> Document {
    Document::ApkPair(ApkPairDoc {
        dim: 4,
        basis_labels: labels(&["u0", "u1", "u2", "u3"]),
        products: vecs(&[
            (1, 3, &["0", "1", "0", "0"]),
            (3, 3, &["0", "0", "0", "1"]),
        ]),
        gram: scalars(&[(0, 3, "1"), (1, 2, "1")]),
    })
}

/// U = ℂ with 1·1 = 1 and H(1,1) = -4: the Einstein pair with factor 1.
fn einstein_c() -> Document {
    Document::ApkPair(ApkPairDoc {
        dim: 1,
        basis_labels: labels(&["u0"]),
        products: vecs(&[(0, 0, &["1"])]),
        gram: scalars(&[(0, 0, "-4")]),
    })
}

/// The 2-dimensional nilpotent power algebra x·x = x² with the hyperbolic
/// pairing; aff of it is the Kodaira-Thurston Lie algebra.
fn kodaira_thurston() -> Document {
    Document::RealSymmetricAlgebra(RealSymmetricAlgebraDoc {
        dim: 2,
        basis_labels: labels(&["x", "x2"]),
        products: vecs(&[(0, 0, &["0", "1"])]),
        gram: scalars(&[(0, 1, "1")]),
    })
}

/// The 6-dimensional nilpotent Lie algebra n₇ with its abelian pseudo-Kähler
/// structure; its left-symmetric product is not associative.
fn n7() -> Document {
    Document::LiePk(LiePkDoc {
        dim: 6,
        basis_labels: labels(&["E1", "E2", "E3", "E4", "E5", "E6"]),
        brackets: vecs(&[
            (0, 1, &["0", "0", "-1", "0", "0", "-1/2"]),
            (0, 3, &["0", "4", "0", "0", "0", "0"]),
            (0, 4, &["0", "0", "1/2", "0", "0", "1"]),
            (1, 3, &["0", "0", "1/2", "0", "0", "1"]),
            (3, 4, &["0", "0", "-1", "0", "0", "-1/2"]),
        ]),
        omega: Some(scalars(&[
            (0, 2, "4"),
            (0, 3, "-2"),
            (1, 4, "-2"),
            (3, 5, "4"),
        ])),
        j: Some(scalars(&[
            (3, 0, "1"),
            (4, 1, "1"),
            (5, 2, "1"),
            (0, 3, "-1"),
            (1, 4, "-1"),
            (2, 5, "-1"),
        ])),
        gmat: None,
        lsa: None,
    })
}

/// aff of the algebra a1a1 = a2a2 = a3: its only brackets are
/// [E1,E4] = [E2,E5] = E6, and every 2-cocycle is degenerate on E6.
fn remark_2_10() -> Document {
    Document::LiePk(LiePkDoc {
        dim: 6,
        basis_labels: labels(&["E1", "E2", "E3", "E4", "E5", "E6"]),
        brackets: vecs(&[
            (0, 3, &["0", "0", "0", "0", "0", "1"]),
            (1, 4, &["0", "0", "0", "0", "0", "1"]),
        ]),
        omega: None,
        j: Some(scalars(&[
            (3, 0, "1"),
            (4, 1, "1"),
            (5, 2, "1"),
            (0, 3, "-1"),
            (1, 4, "-1"),
            (2, 5, "-1"),
        ])),
        gmat: None,
        lsa: None,
    })
}

pub const NAMES: [&str; 6] = [
    "remark-2-10",
    "n7",
    "two-step-5d",
    "flat-4d",
    "kodaira-thurston",
    "einstein-c",
];

pub fn names() -> &'static [&'static str] {
    &NAMES
}

pub fn get(name: &str) -> Option<Document> {
    match name {
        "remark-2-10" => Some(remark_2_10()),
        "n7" => Some(n7()),
        "two-step-5d" => Some(two_step_5d()),
        "flat-4d" => Some(flat_4d()),
        "kodaira-thurston" => Some(kodaira_thurston()),
        "einstein-c" => Some(einstein_c()),
        _ => None,
    }
}
