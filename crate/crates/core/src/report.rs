//! Machine-readable JSON reports shared by the command line and the C API.
//! Rationals are always strings, keys keep insertion order.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::algebra::LeibnizAlgebra;
use crate::cartan::{find_cartan, root_decomposition, structure_checks, RootDatum};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, Matrix, Rational, Subspace};
use crate::module::{
    extended_lie_eigenvector, flag_basis, is_3_irreducible, weight_decomposition, LeibnizModule,
    PsiBranch,
};
use crate::simple::{is_semisimple_lie, is_standard, simplicity_certificate};
use crate::sl2::ClassificationResult;
use crate::structure::{
    annihilator, derived_series, is_right_nilpotent, is_solvable, lie_factor, right_central_series,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MATH: i32 = 2;
pub const EXIT_UNDECIDABLE: i32 = 3;

/// Exit status for an error: input problems are usage errors, undecided or
/// non-split cases are 3, everything else is a failed verification.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } | Error::Validation(_) | Error::Io(_) | Error::BadParity(_) | Error::BadRange(_) => {
            EXIT_USAGE
        }
        Error::Undecidable(_) | Error::SplittingFailure(_) => EXIT_UNDECIDABLE,
        _ => EXIT_MATH,
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::NotSquare { .. } => "not_square",
        Error::SingularMatrix => "singular_matrix",
        Error::SplittingFailure(_) => "splitting_failure",
        Error::NotADecomposition(_) => "not_a_decomposition",
        Error::IdentityViolation(_) => "identity_violation",
        Error::WellDefinednessFailure(_) => "well_definedness_failure",
        Error::NotClosed => "not_closed",
        Error::NotAnIdeal => "not_an_ideal",
        Error::NotSolvable => "not_solvable",
        Error::NotRightNilpotent => "not_right_nilpotent",
        Error::TheoremViolation(_) => "theorem_violation",
        Error::Undecidable(_) => "undecidable",
        Error::NotCartan(_) => "not_cartan",
        Error::ZeroWeightMismatch => "zero_weight_mismatch",
        Error::NotFound { .. } => "not_found",
        Error::SemisimplicityNotEstablished => "semisimplicity_not_established",
        Error::ClauseFailure { .. } => "clause_failure",
        Error::NotSl2(_) => "not_sl2",
        Error::BadParity(_) => "bad_parity",
        Error::BadRange(_) => "bad_range",
        Error::InternalMismatch(_) => "internal_mismatch",
        Error::Parse { .. } => "parse_error",
        Error::Validation(_) => "validation_error",
        Error::Io(_) => "io_error",
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Top-level report envelope.
pub struct Report {
    pub command: String,
    pub input_digest: Option<String>,
    pub exit_code: i32,
    pub result: Value,
}

impl Report {
    pub fn ok(command: &str, input_digest: Option<String>, result: Value) -> Self {
        Report {
            command: command.into(),
            input_digest,
            exit_code: EXIT_OK,
            result,
        }
    }

    pub fn error(command: &str, input_digest: Option<String>, e: &Error) -> Self {
        Report {
            command: command.into(),
            input_digest,
            exit_code: exit_code(e),
            result: error_value(e),
        }
    }

    pub fn status(&self) -> &'static str {
        match self.exit_code {
            EXIT_OK => "ok",
            EXIT_USAGE => "usage_error",
            EXIT_MATH => "failed",
            _ => "undecidable",
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": self.command,
            "input_digest": self.input_digest,
            "status": self.status(),
            "exit_code": self.exit_code,
            "result": self.result,
        })
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("values serialize")
    }
}

pub fn error_value(e: &Error) -> Value {
    let mut m = Map::new();
    m.insert("error".into(), error_kind(e).into());
    m.insert("message".into(), e.to_string().into());
    if let Error::Parse { line, column, .. } = e {
        m.insert("line".into(), (*line).into());
        m.insert("column".into(), (*column).into());
    }
    Value::Object(m)
}

pub fn rational(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

pub fn rationals(v: &[Rational]) -> Value {
    v.iter().map(rational).collect()
}

/// Sparse `{label: coefficient}` object of the nonzero coordinates.
pub fn vector(labels: &[String], v: &[Rational]) -> Value {
    let mut m = Map::new();
    for (l, x) in labels.iter().zip(v) {
        if !num_traits::Zero::is_zero(x) {
            m.insert(l.clone(), rational(x));
        }
    }
    Value::Object(m)
}

pub fn matrix(m: &Matrix) -> Value {
    (0..m.rows()).map(|r| rationals(m.row(r))).collect()
}

pub fn subspace(labels: &[String], s: &Subspace) -> Value {
    json!({
        "dim": s.dim(),
        "basis": s.basis_vectors().iter().map(|v| vector(labels, v)).collect::<Vec<_>>(),
    })
}

/// Nonzero brackets as `{"a,b": {label: coefficient}}`.
pub fn brackets(l: &LeibnizAlgebra) -> Value {
    match crate::format::to_value(l) {
        Value::Object(mut m) => m.remove("brackets").unwrap_or(Value::Null),
        _ => Value::Null,
    }
}

pub fn verify(l: &LeibnizAlgebra) -> (Value, bool) {
    let labels = l.labels();
    match l.leibniz_counterexample() {
        None => (json!({ "dim": l.dim(), "leibniz": true, "witness": null }), true),
        Some((i, j, k)) => (
            json!({
                "dim": l.dim(),
                "leibniz": false,
                "witness": [labels[i], labels[j], labels[k]],
            }),
            false,
        ),
    }
}

fn series_dims(s: &[Subspace]) -> Value {
    s.iter().map(Subspace::dim).collect()
}

pub fn info(l: &LeibnizAlgebra) -> Result<Value> {
    if let Some((i, j, k)) = l.leibniz_counterexample() {
        return Err(Error::IdentityViolation(format!(
            "Leibniz identity fails on ({}, {}, {})",
            l.labels()[i],
            l.labels()[j],
            l.labels()[k]
        )));
    }
    let labels = l.labels();
    let ann = annihilator(l)?;
    let factor = lie_factor(l)?;
    let cert = simplicity_certificate(l)?;
    let standard = is_standard(l)?;
    Ok(json!({
        "dim": l.dim(),
        "labels": labels,
        "annihilator": subspace(labels, &ann),
        "lie_factor": {
            "dim": factor.algebra.dim(),
            "labels": factor.algebra.labels(),
            "brackets": brackets(&factor.algebra),
            "semisimple": is_semisimple_lie(&factor.algebra),
        },
        "solvable": is_solvable(l),
        "right_nilpotent": is_right_nilpotent(l),
        "derived_series_dims": series_dims(&derived_series(l)),
        "right_central_series_dims": series_dims(&right_central_series(l)),
        "simplicity": {
            "simple": cert.is_simple(),
            "failed_clause": cert.failed.map(|c| c.name()),
            "annihilator_acts": cert.annihilator_acts,
            "factor_simple": cert.factor_simple,
            "annihilator_irreducible": cert.annihilator_irreducible,
            "perfect": cert.perfect,
        },
        "standard": standard.as_ref().map(|s| json!({
            "complement": subspace(labels, &s.complement),
        })),
    }))
}

pub fn root_datum(l: &LeibnizAlgebra, rd: &RootDatum) -> Value {
    let labels = l.labels();
    let roots: Vec<Value> = rd
        .roots
        .iter()
        .map(|r| {
            json!({
                "values": rationals(&r.functional),
                "dim": r.space.dim(),
                "parity": r.parity.as_str(),
                "space": subspace(labels, &r.space),
                "ann_part": subspace(labels, &r.ann_part),
            })
        })
        .collect();
    json!({
        "cartan": subspace(labels, &rd.cartan),
        "roots": roots,
        "even": rd.count(crate::cartan::Parity::Even),
        "odd": rd.count(crate::cartan::Parity::Odd),
    })
}

/// Cartan subalgebra (given or searched with `seed`), root data and, for a
/// semisimple Lie factor, the verified root-space structure.
pub fn roots(l: &LeibnizAlgebra, cartan: Option<Subspace>, seed: u64) -> Result<Value> {
    let labels = l.labels();
    let supplied = cartan.is_some();
    let h = match cartan {
        Some(h) => h,
        None => find_cartan(l, seed)?,
    };
    let rd = root_decomposition(l, &h)?;
    let mut out = match root_datum(l, &rd) {
        Value::Object(m) => m,
        _ => unreachable!(),
    };
    out.insert("cartan_source".into(), (if supplied { "supplied" } else { "search" }).into());
    if !supplied {
        out.insert("seed".into(), seed.into());
    }
    let semisimple = lie_factor(l).is_ok_and(|f| is_semisimple_lie(&f.algebra));
    let structure = if semisimple {
        let report = structure_checks(l, &rd)?;
        json!({
            "clauses": report.clauses,
            "roots": report.roots.iter().map(|r| json!({
                "values": rationals(&r.functional),
                "parity": r.parity.as_str(),
                "ann_lines": r.ann_lines.iter().map(|v| vector(labels, v)).collect::<Vec<_>>(),
                "v_phi": r.v_phi.as_ref().map(|v| vector(labels, v)),
            })).collect::<Vec<_>>(),
        })
    } else {
        Value::Null
    };
    out.insert("structure".into(), structure);
    Ok(Value::Object(out))
}

pub fn classification(l: &LeibnizAlgebra, r: &ClassificationResult) -> Value {
    let labels = l.labels();
    let new_basis = r.basis_change.as_ref().map(|p| {
        let names = if r.n >= 1 {
            crate::sl2::construct_standard(r.n)
                .map(|t| t.labels().to_vec())
                .unwrap_or_default()
        } else {
            Vec::new()
        };
        (0..p.cols())
            .map(|c| {
                json!({
                    "label": names.get(c),
                    "vector": vector(labels, &p.column(c)),
                })
            })
            .collect::<Vec<_>>()
    });
    json!({
        "variant": r.variant.as_str(),
        "n": r.n,
        "alpha": r.alpha.as_ref().map(rational),
        "beta": r.beta.as_ref().map(rational),
        "basis_change": r.basis_change.as_ref().map(matrix),
        "new_basis": new_basis,
        "note": r.note,
        "verified": r.verified,
    })
}

/// `v_labels` name the coordinates of the module space.
pub fn module_weights(m: &LeibnizModule, v_labels: &[String], with_flags: bool) -> Result<Value> {
    let alg_labels = m.algebra().labels();
    let weights = weight_decomposition(m)?;
    let mut out = Vec::new();
    for w in &weights {
        let mut entry = Map::new();
        entry.insert("values".into(), vector_full(alg_labels, &w.functional));
        entry.insert("space".into(), subspace(v_labels, &w.space));
        if with_flags {
            let flag = flag_basis(m, w)?;
            let blocks: Vec<Value> = flag
                .blocks
                .iter()
                .map(|b| {
                    json!({
                        "ann_vectors": b.ann_vectors.iter().map(|v| vector(v_labels, v)).collect::<Vec<_>>(),
                        "eigen_vector": b.eigen_vector.as_ref().map(|v| vector(v_labels, v)),
                    })
                })
                .collect();
            entry.insert("flag".into(), blocks.into());
            entry.insert("ends_with_ann_block".into(), flag.ends_with_ann_block().into());
        }
        out.push(Value::Object(entry));
    }
    Ok(json!({ "algebra_labels": alg_labels, "weights": out }))
}

pub fn module_extended_lie(m: &LeibnizModule, v_labels: &[String]) -> Result<Value> {
    let r = extended_lie_eigenvector(m)?;
    let alg_labels = m.algebra().labels();
    Ok(json!({
        "phi": vector_full(alg_labels, &r.phi),
        "psi": vector_full(alg_labels, &r.psi),
        "branch": match r.branch { PsiBranch::Equal => "psi_equals_phi", PsiBranch::Zero => "psi_zero" },
        "vector": vector(v_labels, &r.vector),
    }))
}

pub fn module_three_irreducible(m: &LeibnizModule) -> Result<Value> {
    Ok(json!({ "three_irreducible": is_3_irreducible(m)? }))
}

/// Every coordinate, zeros included, keyed by label.
fn vector_full(labels: &[String], v: &[Rational]) -> Value {
    let mut m = Map::new();
    for (l, x) in labels.iter().zip(v) {
        m.insert(l.clone(), rational(x));
    }
    Value::Object(m)
}
