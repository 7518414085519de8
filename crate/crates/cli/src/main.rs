//! Command-line surface: validation, realization, curvature, classification,
//! extension/reduction, cocycles, affine detection, the built-in catalog and
//! the corpus generator.
//!
//! Exit codes: 0 success/valid, 1 validation failures present, 2 usage or
//! parse errors, 3 eigenvalue-outside-field or internal assertion failures.

use apklie_core::apk::ApkPair;
use apklie_core::curvature::curvature_report;
use apklie_core::error::Error;
use apklie_core::exactlin::RMat;
use apklie_core::extension::{double_extend, reduce, tower, ReductionCertificate};
use apklie_core::format::{
    emit, parse, ApkPairDoc, Document, ExtensionDataDoc, LiePkDoc, RealSymmetricAlgebraDoc,
};
use apklie_core::generate::{generate, CorpusKind};
use apklie_core::liereal::{build_lie, cocycle_space, standard_pk};
use apklie_core::num_traits::Zero;
use apklie_core::realform::{detect_aff, AffDetection};
use apklie_core::scalar::rat_to_string;
use apklie_core::{catalog, ValidationReport};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::fs;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "apklie", version, about = "exact engine for abelian pseudo-Kähler pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Kind-aware full validation report for a document
    Validate { file: String },
    /// Emit the pseudo-Kähler realization (brackets, J, omega, g, product)
    Lie { file: String },
    /// Connection, curvature tensors and classification flags
    Curvature {
        file: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Classification flags of the pair a document describes
    Classify { file: String },
    /// Apply a double extension to a pair
    Extend {
        pair_file: String,
        #[arg(long)]
        data: String,
    },
    /// Reduce a pair one step, or all the way down with --tower
    Reduce {
        pair_file: String,
        #[arg(long)]
        tower: bool,
    },
    /// Basis of scalar 2-cocycles and the degeneracy certificate
    Cocycles { lie_file: String },
    /// standard structure (for symmetric algebras) or aff-type detection
    /// (for pairs)
    Affine { file: String },
    /// List built-in examples, or emit one by name
    Catalog { name: Option<String> },
    /// Deterministic corpus documents
    Generate {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        kind: String,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Validation(_) => 1,
        Error::EigenvalueOutsideField { .. } | Error::Internal { .. } => 3,
        _ => 2,
    }
}

fn read_document(path: &str) -> Result<Document, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse {
        message: format!("cannot read {path}: {e}"),
    })?;
    parse(&text)
}

fn report_to_json(report: &ValidationReport) -> serde_json::Value {
    serde_json::to_value(report).expect("reports serialize")
}

fn rmat_to_json(m: &RMat) -> serde_json::Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|r| m.row(r).iter().map(rat_to_string).collect())
        .collect();
    json!(rows)
}

fn cert_to_json(cert: &ReductionCertificate) -> serde_json::Value {
    let cvec = |v: &[apklie_core::CRat]| -> Vec<String> {
        v.iter().map(|z| z.to_string()).collect()
    };
    let basis: Vec<Vec<String>> = (0..cert.basis_change.rows())
        .map(|r| {
            (0..cert.basis_change.cols())
                .map(|c| cert.basis_change.at(r, c).to_string())
                .collect()
        })
        .collect();
    json!({
        "u0": cvec(&cert.u0),
        "lambda": cvec(&cert.lambda),
        "v0": cvec(&cert.v0),
        "basis_change": basis,
    })
}

/// The pair a document describes, converting by kind.
fn document_pair(doc: &Document) -> Result<ApkPair, Error> {
    doc.to_pair()
}

fn cmd_validate(file: &str) -> Result<u8, Error> {
    let doc = read_document(file)?;
    let report = doc.validate()?;
    if report.is_valid() {
        println!("valid {}", doc.kind_name());
        Ok(0)
    } else {
        println!("invalid {}", doc.kind_name());
        print!("{report}");
        Ok(1)
    }
}

fn cmd_lie(file: &str) -> Result<u8, Error> {
    let doc = read_document(file)?;
    let l = doc.to_realization()?;
    let labels = match &doc {
        Document::ApkPair(d) => d.basis_labels.clone().map(|ls| {
            let mut out = ls.clone();
            out.extend(ls.iter().map(|s| format!("i*{s}")));
            out
        }),
        Document::LiePk(d) => d.basis_labels.clone(),
        _ => None,
    };
    let out = Document::LiePk(LiePkDoc::from_realization(&l, labels));
    print!("{}", emit(&out));
    Ok(0)
}

fn cmd_curvature(file: &str, format: OutputFormat) -> Result<u8, Error> {
    let doc = read_document(file)?;
    let pair = document_pair(&doc)?;
    let report = curvature_report(&pair)?;
    let n = pair.dim();
    match format {
        OutputFormat::Json => {
            let mut riemann_entries = Vec::new();
            for a in 0..2 * n {
                for b in (a + 1)..2 * n {
                    for c in 0..2 * n {
                        for d in 0..2 * n {
                            let v = report.riemann[a][b].at(d, c);
                            if !v.is_zero() {
                                riemann_entries.push(json!({
                                    "x": a, "y": b, "z": c, "out": d,
                                    "value": rat_to_string(v),
                                }));
                            }
                        }
                    }
                }
            }
            let value = json!({
                "real_dim": 2 * n,
                "nabla": report.nabla.iter().map(rmat_to_json).collect::<Vec<_>>(),
                "riemann": riemann_entries,
                "ricci": rmat_to_json(&report.ricci),
                "flags": {
                    "flat": report.flat,
                    "ricci_flat": report.ricci_flat,
                    "einstein_factor": report.einstein_factor.as_ref().map(rat_to_string),
                    "novikov": report.novikov,
                    "two_step": report.two_step,
                    "c1": report.c1c2c3.0,
                    "c2": report.c1c2c3.1,
                    "c3": report.c1c2c3.2,
                },
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        OutputFormat::Text => {
            println!("real dimension: {}", 2 * n);
            println!("flat: {}", report.flat);
            println!("ricci_flat: {}", report.ricci_flat);
            println!(
                "einstein_factor: {}",
                report
                    .einstein_factor
                    .as_ref()
                    .map(rat_to_string)
                    .unwrap_or_else(|| "none".into())
            );
            println!("novikov: {}", report.novikov);
            println!("two_step: {}", report.two_step);
            println!(
                "flat-equivalence conditions: c1 = {}, c2 = {}, c3 = {}",
                report.c1c2c3.0, report.c1c2c3.1, report.c1c2c3.2
            );
            println!("ricci:");
            for r in 0..2 * n {
                let row: Vec<String> = report.ricci.row(r).iter().map(rat_to_string).collect();
                println!("  [{}]", row.join(", "));
            }
        }
    }
    Ok(0)
}

fn cmd_classify(file: &str) -> Result<u8, Error> {
    let doc = read_document(file)?;
    // an invalid document classifies as not apk_valid with the report shown
    let report = doc.validate()?;
    if !report.is_valid() {
        let value = json!({
            "apk_valid": false,
            "violations": report_to_json(&report),
        });
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
        return Ok(1);
    }
    let pair = document_pair(&doc)?;
    let curv = curvature_report(&pair)?;
    let (p, q) = pair.signature()?;
    let aff_type = matches!(detect_aff(&pair)?, AffDetection::Aff(_));
    let (nilpotent, _) = pair.algebra().nilpotency();
    let l = build_lie(&pair)?;
    let value = json!({
        "apk_valid": true,
        "complex_dim": pair.dim(),
        "nilpotent": nilpotent,
        "unimodular": l.lie().is_unimodular(),
        "flat": curv.flat,
        "ricci_flat": curv.ricci_flat,
        "einstein_factor": curv.einstein_factor.as_ref().map(rat_to_string),
        "novikov": curv.novikov,
        "two_step": curv.two_step,
        "aff_type": aff_type,
        "signature": [p, q],
    });
    println!("{}", serde_json::to_string_pretty(&value).unwrap());
    Ok(0)
}

fn cmd_extend(pair_file: &str, data_file: &str) -> Result<u8, Error> {
    let pair_doc = read_document(pair_file)?;
    let Document::ApkPair(pair_doc) = pair_doc else {
        return Err(Error::precondition("extend expects an apk_pair document"));
    };
    let data_doc = read_document(data_file)?;
    let Document::ExtensionData(data_doc) = data_doc else {
        return Err(Error::precondition(
            "--data expects an extension_data document",
        ));
    };
    let pair = pair_doc.to_pair()?;
    let data = data_doc.to_data()?;
    let extended = double_extend(&pair, &data)?;
    print!("{}", emit(&Document::ApkPair(ApkPairDoc::from_pair(&extended))));
    Ok(0)
}

fn cmd_reduce(pair_file: &str, full_tower: bool) -> Result<u8, Error> {
    let doc = read_document(pair_file)?;
    let Document::ApkPair(pair_doc) = doc else {
        return Err(Error::precondition("reduce expects an apk_pair document"));
    };
    let pair = pair_doc.to_pair()?;
    if full_tower {
        let (base, steps) = tower(&pair)?;
        let value = json!({
            "base": serde_json::to_value(ApkPairDoc::from_pair(&base)).unwrap(),
            "steps": steps.iter().map(|s| json!({
                "data": serde_json::to_value(ExtensionDataDoc::from_data(&s.data)).unwrap(),
                "certificate": cert_to_json(&s.certificate),
            })).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        let (reduced, data, cert) = reduce(&pair)?;
        let value = json!({
            "reduced": serde_json::to_value(ApkPairDoc::from_pair(&reduced)).unwrap(),
            "data": serde_json::to_value(ExtensionDataDoc::from_data(&data)).unwrap(),
            "certificate": cert_to_json(&cert),
        });
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    }
    Ok(0)
}

fn cmd_cocycles(lie_file: &str) -> Result<u8, Error> {
    let doc = read_document(lie_file)?;
    let Document::LiePk(lie_doc) = doc else {
        return Err(Error::precondition("cocycles expects a lie_pk document"));
    };
    let lie = lie_doc.lie_algebra()?;
    let (basis, certificate) = cocycle_space(&lie);
    let basis_json: Vec<serde_json::Value> = basis
        .iter()
        .map(|omega| {
            let mut entries = Vec::new();
            for r in 0..omega.rows() {
                for c in (r + 1)..omega.cols() {
                    if !omega.at(r, c).is_zero() {
                        entries.push(json!({
                            "row": r,
                            "col": c,
                            "value": rat_to_string(omega.at(r, c)),
                        }));
                    }
                }
            }
            json!(entries)
        })
        .collect();
    let value = json!({
        "basis": basis_json,
        "degeneracy_certificate": certificate.map(|v| {
            v.iter().map(rat_to_string).collect::<Vec<_>>()
        }),
    });
    println!("{}", serde_json::to_string_pretty(&value).unwrap());
    Ok(0)
}

fn cmd_affine(file: &str) -> Result<u8, Error> {
    let doc = read_document(file)?;
    match doc {
        Document::RealSymmetricAlgebra(rsa_doc) => {
            let s = rsa_doc.to_symmetric_algebra()?;
            let l = standard_pk(&s)?;
            print!("{}", emit(&Document::LiePk(LiePkDoc::from_realization(&l, None))));
            Ok(0)
        }
        Document::ApkPair(pair_doc) => {
            let pair = pair_doc.to_pair()?;
            match detect_aff(&pair)? {
                AffDetection::Aff(cert) => {
                    let value = json!({
                        "result": "aff",
                        "algebra": serde_json::to_value(
                            RealSymmetricAlgebraDoc::from_symmetric_algebra(&cert.recovered)
                        ).unwrap(),
                        "iso": rmat_to_json(&cert.iso),
                    });
                    println!("{}", serde_json::to_string_pretty(&value).unwrap());
                }
                AffDetection::NotReducible => {
                    let value = json!({ "result": "not_aff_reducible" });
                    println!("{}", serde_json::to_string_pretty(&value).unwrap());
                }
            }
            Ok(0)
        }
        _ => Err(Error::precondition(
            "affine expects an apk_pair or real_symmetric_algebra document",
        )),
    }
}

fn cmd_catalog(name: Option<&str>) -> Result<u8, Error> {
    match name {
        None => {
            for n in catalog::names() {
                println!("{n}");
            }
            Ok(0)
        }
        Some(n) => {
            let doc = catalog::get(n).ok_or_else(|| Error::Parse {
                message: format!("unknown catalog entry {n:?}"),
            })?;
            print!("{}", emit(&doc));
            Ok(0)
        }
    }
}

fn cmd_generate(seed: u64, dim: usize, kind: &str) -> Result<u8, Error> {
    let kind = CorpusKind::from_name(kind).ok_or_else(|| Error::Parse {
        message: format!("unknown corpus kind {kind:?}; use abelian, tstar or tower"),
    })?;
    let doc = generate(seed, dim, kind)?;
    print!("{}", emit(&doc));
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Validate { file } => cmd_validate(file),
        Command::Lie { file } => cmd_lie(file),
        Command::Curvature { file, format } => cmd_curvature(file, *format),
        Command::Classify { file } => cmd_classify(file),
        Command::Extend { pair_file, data } => cmd_extend(pair_file, data),
        Command::Reduce { pair_file, tower } => cmd_reduce(pair_file, *tower),
        Command::Cocycles { lie_file } => cmd_cocycles(lie_file),
        Command::Affine { file } => cmd_affine(file),
        Command::Catalog { name } => cmd_catalog(name.as_deref()),
        Command::Generate { seed, dim, kind } => cmd_generate(*seed, *dim, kind),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
