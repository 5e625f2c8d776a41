//! JSON exports of MUB collections and signal sets, and the CSV correlation
//! row format.
//!
//! A MUB export looks like
//!
//! ```json
//! {"p": 5, "r": 1, "modulus": [3, 1], "construction": "planar",
//!  "function": "x^2", "standard_basis": true,
//!  "bases": [{"a": 0, "vectors": [{"b": 0, "exponents": [0, 0, 0, 0, 0]}]}]}
//! ```
//!
//! where `bases` lists the non-standard bases only. A plain signal file is
//! `{"dimension": K, "vectors": [[[re, im], ...], ...]}`.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::fn_algebra::PolyFn;

use super::signal::{CorrelationReport, Quantity, SignalSet, SignalVector};
use super::{Basis, Construction, ExponentVector, MubCollection};

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorExport {
    pub b: u32,
    pub exponents: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisExport {
    pub a: u32,
    pub vectors: Vec<VectorExport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MubExport {
    pub p: u32,
    pub r: u32,
    pub modulus: Vec<u32>,
    pub construction: Construction,
    pub function: String,
    #[serde(default = "yes")]
    pub standard_basis: bool,
    pub bases: Vec<BasisExport>,
}

impl MubExport {
    pub fn from_collection(m: &MubCollection) -> Self {
        let spec = m.field().spec();
        let mut standard_basis = false;
        let mut bases = Vec::new();
        for basis in m.bases() {
            match basis {
                Basis::Standard { .. } => standard_basis = true,
                Basis::Phase { a, vectors, .. } => bases.push(BasisExport {
                    a: a.index(),
                    vectors: vectors
                        .iter()
                        .map(|v| VectorExport {
                            b: v.b().index(),
                            exponents: v.exps().to_vec(),
                        })
                        .collect(),
                }),
            }
        }
        MubExport {
            p: spec.p(),
            r: spec.r(),
            modulus: spec.modulus().to_vec(),
            construction: m.construction(),
            function: m.function().to_string(),
            standard_basis,
            bases,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(src: &str) -> Result<Self> {
        serde_json::from_str(src).map_err(|e| Error::Malformed(e.to_string()))
    }

    pub fn field(&self) -> Result<Field> {
        Ok(Field::new(FieldSpec::new(
            self.p,
            self.r,
            self.modulus.clone(),
        )?))
    }

    fn phase_bases(&self, field: &Field) -> Result<Vec<Basis>> {
        let q = field.q();
        let mut seen_a = BTreeSet::new();
        let mut out = Vec::with_capacity(self.bases.len());
        for basis in &self.bases {
            if basis.a >= q || !seen_a.insert(basis.a) {
                return Err(Error::Malformed(format!(
                    "basis label a = {} repeated or out of range",
                    basis.a
                )));
            }
            let a = field.element(basis.a)?;
            if basis.vectors.len() != q as usize {
                return Err(Error::Malformed(format!(
                    "basis a = {} has {} vectors, expected {q}",
                    basis.a,
                    basis.vectors.len()
                )));
            }
            let mut seen_b = BTreeSet::new();
            let mut vectors = Vec::with_capacity(q as usize);
            for v in &basis.vectors {
                if v.b >= q || !seen_b.insert(v.b) {
                    return Err(Error::Malformed(format!(
                        "vector label b = {} repeated or out of range",
                        v.b
                    )));
                }
                vectors.push(ExponentVector::new(
                    a.clone(),
                    field.element(v.b)?,
                    v.exponents.clone(),
                )?);
            }
            out.push(Basis::Phase {
                construction: self.construction,
                a,
                vectors,
            });
        }
        Ok(out)
    }

    /// Rebuilds a complete collection: standard basis plus q phase bases.
    pub fn to_collection(&self) -> Result<MubCollection> {
        let field = self.field()?;
        let q = field.q() as usize;
        if !self.standard_basis || self.bases.len() != q {
            return Err(Error::Malformed(format!(
                "incomplete collection: {} bases besides the standard one, expected {q}",
                self.bases.len()
            )));
        }
        let function = PolyFn::parse(&field, &self.function)?;
        let mut bases = vec![Basis::Standard { dim: q }];
        bases.extend(self.phase_bases(&field)?);
        Ok(MubCollection::from_parts(
            field,
            self.construction,
            function,
            bases,
        ))
    }

    /// The exported vectors as a signal set, complete or not.
    pub fn to_signal_set(&self) -> Result<SignalSet> {
        let field = self.field()?;
        let q = field.q() as usize;
        let mut vectors = Vec::new();
        if self.standard_basis {
            vectors.extend((0..q).map(SignalVector::Unit));
        }
        for basis in self.phase_bases(&field)? {
            vectors.extend(
                basis
                    .vectors()
                    .iter()
                    .map(|v| SignalVector::Phase(v.exps().to_vec())),
            );
        }
        SignalSet::new(q, field.p(), vectors)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignalFile {
    pub dimension: usize,
    pub vectors: Vec<Vec<[f64; 2]>>,
}

impl SignalFile {
    pub fn to_signal_set(&self) -> Result<SignalSet> {
        let vectors = self
            .vectors
            .iter()
            .map(|v| {
                SignalVector::Complex(v.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            })
            .collect();
        SignalSet::new(self.dimension, 0, vectors)
    }
}

/// Reads either a MUB export or a plain signal file.
pub fn load_signal_set(src: &str) -> Result<SignalSet> {
    let value: serde_json::Value =
        serde_json::from_str(src).map_err(|e| Error::Malformed(e.to_string()))?;
    let malformed = |e: serde_json::Error| Error::Malformed(e.to_string());
    if value.get("bases").is_some() {
        serde_json::from_value::<MubExport>(value)
            .map_err(malformed)?
            .to_signal_set()
    } else if value.get("dimension").is_some() {
        serde_json::from_value::<SignalFile>(value)
            .map_err(malformed)?
            .to_signal_set()
    } else {
        Err(Error::Malformed(
            "expected a MUB export or a signal file".into(),
        ))
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    name: &'a str,
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "K")]
    k: usize,
    i_rms_sq_num: String,
    i_rms_sq_den: String,
    i_max_sq_num: String,
    i_max_sq_den: String,
    welch_sq: String,
    levenstein_sq: String,
    meets_welch_rms: bool,
    meets_levenstein: String,
}

fn num_den(q: &Quantity) -> (String, String) {
    match q {
        Quantity::Exact(r) => (r.numer().to_string(), r.denom().to_string()),
        Quantity::Approx(x) => (format!("{x:.12}"), "1".into()),
    }
}

/// A header line followed by one row per `(name, report)`.
pub fn correlation_csv<'a>(
    rows: impl IntoIterator<Item = (&'a str, &'a CorrelationReport)>,
) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for (name, rep) in rows {
        let (i_rms_sq_num, i_rms_sq_den) = num_den(&rep.i_rms_sq);
        let (i_max_sq_num, i_max_sq_den) = num_den(&rep.i_max_sq);
        w.serialize(CsvRow {
            name,
            n: rep.n,
            k: rep.k,
            i_rms_sq_num,
            i_rms_sq_den,
            i_max_sq_num,
            i_max_sq_den,
            welch_sq: rep.welch_rms_sq.to_string(),
            levenstein_sq: rep
                .levenstein_sq
                .as_ref()
                .map(ToString::to_string)
                .unwrap_or_default(),
            meets_welch_rms: rep.meets_welch_rms,
            meets_levenstein: rep
                .meets_levenstein
                .map(|b| b.to_string())
                .unwrap_or_default(),
        })
        .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is utf-8")
}
