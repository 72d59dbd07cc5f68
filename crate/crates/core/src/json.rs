//! JSON document formats for algebras, extending data, flag datums and
//! matrices. Scalars are carried in their canonical text form (`a` or `a/b`
//! over the rationals, the residue over a prime field); sparse entry lists
//! leave omitted entries at zero. Serialization is deterministic: entries
//! are emitted in lexicographic index order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::flags::{FlagDatum, FlagDatum1, FlagDatum2};
use crate::linalg::{Matrix, Tensor3, Vector};
use crate::products::ExtendingDatum;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FieldDoc {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

impl FieldDoc {
    pub fn to_field(&self) -> Result<FieldSpec> {
        match self.kind.as_str() {
            "rational" => Ok(FieldSpec::Rational),
            "prime" => {
                let p = self
                    .p
                    .ok_or_else(|| Error::Document("prime field needs \"p\"".into()))?;
                FieldSpec::prime(p)
            }
            other => Err(Error::Document(format!("unknown field kind {other:?}"))),
        }
    }

    pub fn from_field(field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rational => FieldDoc {
                kind: "rational".into(),
                p: None,
            },
            FieldSpec::Prime(p) => FieldDoc {
                kind: "prime".into(),
                p: Some(p),
            },
        }
    }
}

/// One sparse bilinear-map entry: the images of the basis pair
/// `(left, right)`, keyed by output coordinate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EntryDoc {
    pub left: usize,
    pub right: usize,
    pub value: BTreeMap<String, String>,
}

pub fn tensor_from_entries(
    field: FieldSpec,
    dims: (usize, usize, usize),
    entries: &[EntryDoc],
) -> Result<Tensor3> {
    let mut tensor = Tensor3::zero(field, dims);
    let mut seen = std::collections::BTreeSet::new();
    for entry in entries {
        if entry.left >= dims.0 || entry.right >= dims.1 {
            return Err(Error::Document(format!(
                "entry ({}, {}) outside {}x{}",
                entry.left, entry.right, dims.0, dims.1
            )));
        }
        if !seen.insert((entry.left, entry.right)) {
            return Err(Error::Document(format!(
                "duplicate entry for pair ({}, {})",
                entry.left, entry.right
            )));
        }
        for (key, text) in &entry.value {
            let l: usize = key
                .parse()
                .map_err(|_| Error::Document(format!("bad output index {key:?}")))?;
            if l >= dims.2 {
                return Err(Error::Document(format!(
                    "output index {l} outside dimension {}",
                    dims.2
                )));
            }
            tensor.set(entry.left, entry.right, l, field.parse_scalar(text)?);
        }
    }
    Ok(tensor)
}

pub fn tensor_to_entries(tensor: &Tensor3) -> Vec<EntryDoc> {
    let dims = tensor.dims();
    let mut out = Vec::new();
    for i in 0..dims.0 {
        for j in 0..dims.1 {
            let mut value = BTreeMap::new();
            for l in 0..dims.2 {
                let s = tensor.get(i, j, l);
                if !s.is_zero() {
                    value.insert(l.to_string(), s.to_text());
                }
            }
            if !value.is_empty() {
                out.push(EntryDoc {
                    left: i,
                    right: j,
                    value,
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub field: FieldDoc,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    #[serde(default)]
    pub bracket: Vec<EntryDoc>,
}

impl AlgebraDoc {
    /// Checked conversion; rejects non-Leibniz tables.
    pub fn to_algebra(&self) -> Result<Algebra> {
        let (field, tensor) = self.parts()?;
        let a = Algebra::new(field, self.dim, tensor)?;
        Ok(match &self.basis {
            Some(names) => a.with_names(names.clone()),
            None => a,
        })
    }

    /// Unchecked conversion, for identity-check commands and negative tests.
    pub fn to_algebra_unchecked(&self) -> Result<Algebra> {
        let (field, tensor) = self.parts()?;
        let a = Algebra::new_unchecked(field, self.dim, tensor)?;
        Ok(match &self.basis {
            Some(names) => a.with_names(names.clone()),
            None => a,
        })
    }

    fn parts(&self) -> Result<(FieldSpec, Tensor3)> {
        let field = self.field.to_field()?;
        if let Some(names) = &self.basis {
            if names.len() != self.dim {
                return Err(Error::Document(format!(
                    "{} basis names for dimension {}",
                    names.len(),
                    self.dim
                )));
            }
        }
        let tensor = tensor_from_entries(field, (self.dim, self.dim, self.dim), &self.bracket)?;
        Ok((field, tensor))
    }

    pub fn from_algebra(a: &Algebra) -> Self {
        AlgebraDoc {
            field: FieldDoc::from_field(a.field()),
            dim: a.dim(),
            basis: a.names().map(|n| n.to_vec()),
            bracket: tensor_to_entries(a.bracket()),
        }
    }
}

/// Extending datum document: the algebra, the complement dimension, and the
/// six tensors as sparse entry lists (omitted blocks are zero).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DatumDoc {
    pub g: AlgebraDoc,
    pub v_dim: usize,
    #[serde(default)]
    pub la: Vec<EntryDoc>,
    #[serde(default)]
    pub ra: Vec<EntryDoc>,
    #[serde(default)]
    pub lh: Vec<EntryDoc>,
    #[serde(default)]
    pub rh: Vec<EntryDoc>,
    #[serde(default)]
    pub f: Vec<EntryDoc>,
    #[serde(default)]
    pub vb: Vec<EntryDoc>,
}

impl DatumDoc {
    pub fn to_datum(&self) -> Result<ExtendingDatum> {
        let g = self.g.to_algebra()?;
        let field = g.field();
        let n = g.dim();
        let m = self.v_dim;
        ExtendingDatum::new(
            g,
            m,
            tensor_from_entries(field, (m, n, m), &self.la)?,
            tensor_from_entries(field, (m, n, n), &self.ra)?,
            tensor_from_entries(field, (n, m, n), &self.lh)?,
            tensor_from_entries(field, (n, m, m), &self.rh)?,
            tensor_from_entries(field, (m, m, n), &self.f)?,
            tensor_from_entries(field, (m, m, m), &self.vb)?,
        )
    }

    pub fn from_datum(d: &ExtendingDatum) -> Self {
        DatumDoc {
            g: AlgebraDoc::from_algebra(d.g()),
            v_dim: d.v_dim(),
            la: tensor_to_entries(d.la()),
            ra: tensor_to_entries(d.ra()),
            lh: tensor_to_entries(d.lh()),
            rh: tensor_to_entries(d.rh()),
            f: tensor_to_entries(d.f()),
            vb: tensor_to_entries(d.vb()),
        }
    }
}

pub fn vector_to_doc(v: &Vector) -> Vec<String> {
    v.to_texts()
}

pub fn vector_from_doc(field: FieldSpec, texts: &[String]) -> Result<Vector> {
    let entries = texts
        .iter()
        .map(|t| field.parse_scalar(t))
        .collect::<Result<Vec<_>>>()?;
    Ok(Vector::new(field, entries))
}

pub fn matrix_to_doc(m: &Matrix) -> Vec<Vec<String>> {
    m.to_text_rows()
}

pub fn matrix_from_doc(field: FieldSpec, rows: &[Vec<String>]) -> Result<Matrix> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::Document("ragged matrix rows".into()));
    }
    let vecs = rows
        .iter()
        .map(|r| vector_from_doc(field, r))
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(field, &vecs))
}

/// Flag datum document. `alpha` and `lambda` belong to kind 1, `nu` to
/// kind 2; `D` and `Delta` are dense column-image matrices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlagDoc {
    pub kind: u8,
    pub g0: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<String>>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<String>>,
    #[serde(rename = "Delta")]
    pub delta: Vec<Vec<String>>,
}

impl FlagDoc {
    pub fn to_flag(&self, field: FieldSpec, dim: usize) -> Result<FlagDatum> {
        let g0 = vector_from_doc(field, &self.g0)?;
        let d = matrix_from_doc(field, &self.d)?;
        let delta = matrix_from_doc(field, &self.delta)?;
        if g0.len() != dim || d.rows() != dim || d.cols() != dim || delta.rows() != dim
            || delta.cols() != dim
        {
            return Err(Error::Document(
                "flag datum pieces must match the algebra dimension".into(),
            ));
        }
        match self.kind {
            1 => {
                let alpha = field.parse_scalar(
                    self.alpha
                        .as_deref()
                        .ok_or_else(|| Error::Document("kind 1 needs \"alpha\"".into()))?,
                )?;
                let lambda = vector_from_doc(
                    field,
                    self.lambda
                        .as_ref()
                        .ok_or_else(|| Error::Document("kind 1 needs \"lambda\"".into()))?,
                )?;
                if lambda.len() != dim {
                    return Err(Error::Document("lambda length mismatch".into()));
                }
                Ok(FlagDatum::First(FlagDatum1 {
                    g0,
                    alpha,
                    lambda,
                    d,
                    delta,
                }))
            }
            2 => {
                let nu = vector_from_doc(
                    field,
                    self.nu
                        .as_ref()
                        .ok_or_else(|| Error::Document("kind 2 needs \"nu\"".into()))?,
                )?;
                if nu.len() != dim {
                    return Err(Error::Document("nu length mismatch".into()));
                }
                if nu.is_zero() {
                    return Err(Error::ZeroNu);
                }
                Ok(FlagDatum::Second(FlagDatum2 { g0, nu, d, delta }))
            }
            other => Err(Error::Document(format!("flag kind {other} not in {{1, 2}}"))),
        }
    }

    pub fn from_flag(fd: &FlagDatum) -> Self {
        match fd {
            FlagDatum::First(fd) => FlagDoc {
                kind: 1,
                g0: vector_to_doc(&fd.g0),
                alpha: Some(fd.alpha.to_text()),
                lambda: Some(vector_to_doc(&fd.lambda)),
                nu: None,
                d: matrix_to_doc(&fd.d),
                delta: matrix_to_doc(&fd.delta),
            },
            FlagDatum::Second(fd) => FlagDoc {
                kind: 2,
                g0: vector_to_doc(&fd.g0),
                alpha: None,
                lambda: None,
                nu: Some(vector_to_doc(&fd.nu)),
                d: matrix_to_doc(&fd.d),
                delta: matrix_to_doc(&fd.delta),
            },
        }
    }
}
