//! The `aqg-v1` JSON document format.
//!
//! Every complex number is a `[re, im]` pair. Rows index basis elements:
//! `mult[i][j][k]` is the coefficient of e_k in e_i e_j, `star[i]`,
//! `antipode[i]` and `comult[i]` are the coordinates of e_i*, S(e_i) and
//! Δ(e_i), the last flattened as u·n + v for e_u⊗e_v.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{Algebra, Functional, HopfAlgebra, HopfStructure};
use crate::error::{AqgError, Result};
use crate::quantum::QuantumGroup;
use crate::tensor::{zeros, ComplexMatrix, ComplexVector, C64};

pub const SCHEMA: &str = "aqg-v1";

type Pair = [f64; 2];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QGDocument {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_labels: Option<Vec<String>>,
    pub mult: Vec<Vec<Vec<Pair>>>,
    pub star: Vec<Vec<Pair>>,
    pub unit: Vec<Pair>,
    pub comult: Vec<Vec<Pair>>,
    pub counit: Vec<Pair>,
    pub antipode: Vec<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub haar: Option<Vec<Pair>>,
}

fn pair_of(z: C64) -> Pair {
    [z.re, z.im]
}

fn complex(p: &Pair, field: &str) -> Result<C64> {
    if !(p[0].is_finite() && p[1].is_finite()) {
        return Err(AqgError::Shape(format!("non-finite entry in `{field}`")));
    }
    Ok(C64::new(p[0], p[1]))
}

fn vector(v: &[Pair], n: usize, field: &str) -> Result<ComplexVector> {
    if v.len() != n {
        return Err(AqgError::Shape(format!("`{field}` must have length {n}, found {}", v.len())));
    }
    let vals = v.iter().map(|p| complex(p, field)).collect::<Result<Vec<_>>>()?;
    Ok(ComplexVector::from_vec(vals))
}

/// Matrix whose column i is row i of the document.
fn columns_of(rows: &[Vec<Pair>], n: usize, len: usize, field: &str) -> Result<ComplexMatrix> {
    if rows.len() != n {
        return Err(AqgError::Shape(format!("`{field}` must have {n} rows, found {}", rows.len())));
    }
    let mut m = zeros(len, n);
    for (i, row) in rows.iter().enumerate() {
        m.set_column(i, &vector(row, len, field)?);
    }
    Ok(m)
}

fn rows_of(m: &ComplexMatrix) -> Vec<Vec<Pair>> {
    (0..m.ncols())
        .map(|i| m.column(i).iter().map(|z| pair_of(*z)).collect())
        .collect()
}

impl QGDocument {
    pub fn from_hopf(h: &HopfAlgebra, haar: Option<&Functional>) -> Self {
        let n = h.dim();
        let alg = &h.algebra;
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| alg.left[i].column(j).iter().map(|z| pair_of(*z)).collect())
                    .collect()
            })
            .collect();
        let comult = h
            .hopf
            .comult
            .iter()
            .map(|d| {
                (0..n)
                    .flat_map(|u| (0..n).map(move |v| (u, v)))
                    .map(|(u, v)| pair_of(d[(u, v)]))
                    .collect()
            })
            .collect();
        QGDocument {
            schema: SCHEMA.to_string(),
            name: Some(h.name.clone()),
            dim: n,
            basis_labels: Some(h.labels.clone()),
            mult,
            star: rows_of(&alg.star),
            unit: alg.unit.iter().map(|z| pair_of(*z)).collect(),
            comult,
            counit: h.hopf.counit.iter().map(|z| pair_of(*z)).collect(),
            antipode: rows_of(&h.hopf.antipode),
            haar: haar.map(|f| f.iter().map(|z| pair_of(*z)).collect()),
        }
    }

    pub fn to_hopf(&self) -> Result<HopfAlgebra> {
        if self.schema != SCHEMA {
            return Err(AqgError::Parse(format!("unsupported schema `{}`", self.schema)));
        }
        let n = self.dim;
        if n == 0 {
            return Err(AqgError::Shape("dim must be positive".into()));
        }
        if self.mult.len() != n {
            return Err(AqgError::Shape(format!("`mult` must be {n}×{n}×{n}")));
        }
        let left = self
            .mult
            .iter()
            .map(|rows| columns_of(rows, n, n, "mult"))
            .collect::<Result<Vec<_>>>()?;
        let star = columns_of(&self.star, n, n, "star")?;
        let unit = vector(&self.unit, n, "unit")?;
        let algebra = Algebra::new(left, star, unit)?;
        if self.comult.len() != n {
            return Err(AqgError::Shape(format!("`comult` must have {n} rows")));
        }
        let comult = self
            .comult
            .iter()
            .map(|row| {
                let v = vector(row, n * n, "comult")?;
                Ok(ComplexMatrix::from_fn(n, n, |u, w| v[u * n + w]))
            })
            .collect::<Result<Vec<_>>>()?;
        let hopf = HopfStructure {
            comult,
            counit: vector(&self.counit, n, "counit")?,
            antipode: columns_of(&self.antipode, n, n, "antipode")?,
        };
        let labels = match &self.basis_labels {
            Some(l) => l.clone(),
            None => (0..n).map(|i| format!("e{i}")).collect(),
        };
        let name = self.name.clone().unwrap_or_else(|| "document".into());
        HopfAlgebra::new(name, labels, algebra, hopf)
    }

    pub fn haar(&self) -> Result<Option<Functional>> {
        self.haar.as_ref().map(|h| vector(h, self.dim, "haar")).transpose()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| AqgError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn load(path: &Path) -> Result<Self> {
        QGDocument::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}

/// Builds and verifies a quantum group from a document. A supplied Haar
/// functional is compared against the computed one.
pub fn quantum_group_from_document(doc: &QGDocument, tol: f64) -> Result<QuantumGroup> {
    let q = QuantumGroup::new(doc.to_hopf()?, tol)?;
    if let Some(supplied) = doc.haar()? {
        let value = crate::haar::supplied_haar_residual(q.phi(), &supplied);
        if value >= tol {
            return Err(AqgError::AxiomFailure {
                name: "supplied_haar".into(),
                value,
                tol,
            });
        }
    }
    Ok(q)
}

pub fn load_quantum_group(path: &Path, tol: f64) -> Result<QuantumGroup> {
    quantum_group_from_document(&QGDocument::load(path)?, tol)
}

/// Document for a quantum group, with its Haar functional included.
pub fn document_of(q: &QuantumGroup) -> QGDocument {
    QGDocument::from_hopf(&q.hopf, Some(q.phi()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{by_name, STANDARD};

    #[test]
    fn round_trip_is_bit_exact() {
        for name in STANDARD {
            let q = QuantumGroup::from_builtin(name, 1e-9).unwrap();
            let doc = document_of(&q);
            let text = doc.to_json();
            let back = QGDocument::from_json(&text).unwrap();
            assert_eq!(back, doc);
            let again = QGDocument::from_hopf(&back.to_hopf().unwrap(), back.haar().unwrap().as_ref());
            assert_eq!(again.to_json(), text);
        }
    }

    #[test]
    fn s3_loads_and_passes() {
        let h = by_name("s3-group").unwrap();
        let doc = QGDocument::from_hopf(&h, None);
        let q = quantum_group_from_document(&QGDocument::from_json(&doc.to_json()).unwrap(), 1e-9).unwrap();
        assert!(q.axioms_report().passed());
        assert!(q.modular_report().passed());
    }

    #[test]
    fn broken_associativity_is_named() {
        let h = by_name("s3-group").unwrap();
        let mut doc = QGDocument::from_hopf(&h, None);
        doc.mult[1][2][3][0] += 0.5;
        match quantum_group_from_document(&doc, 1e-9) {
            Err(e @ AqgError::AxiomFailure { .. }) => {
                assert_eq!(e.exit_code(), 2);
                assert!(e.to_string().contains("associativity"));
            }
            other => panic!("expected an axiom failure, got {other:?}"),
        }
    }

    #[test]
    fn truncated_file_is_a_parse_error() {
        let text = document_of(&QuantumGroup::from_builtin("z2", 1e-9).unwrap()).to_json();
        let err = QGDocument::from_json(&text[..text.len() / 2]).unwrap_err();
        assert!(matches!(err, AqgError::Parse(_)));
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn shape_errors() {
        let mut doc = QGDocument::from_hopf(&by_name("z2").unwrap(), None);
        doc.counit.pop();
        assert!(matches!(doc.to_hopf(), Err(AqgError::Shape(_))));
        let mut doc = QGDocument::from_hopf(&by_name("z2").unwrap(), None);
        doc.schema = "other".into();
        assert!(matches!(doc.to_hopf(), Err(AqgError::Parse(_))));
    }

    #[test]
    fn wrong_haar_is_rejected() {
        let q = QuantumGroup::from_builtin("z4", 1e-9).unwrap();
        let mut doc = document_of(&q);
        doc.haar.as_mut().unwrap()[1] = [0.5, 0.0];
        let err = quantum_group_from_document(&doc, 1e-9).unwrap_err();
        assert!(err.to_string().contains("supplied_haar"));
    }

    #[test]
    fn indefinite_haar_exits_three() {
        // C[Z₃] with g* = g is a Hopf *-algebra whose Haar functional is not positive
        let h = by_name("z3").unwrap();
        let mut doc = QGDocument::from_hopf(&h, None);
        doc.star = (0..3)
            .map(|i| (0..3).map(|k| if i == k { [1.0, 0.0] } else { [0.0, 0.0] }).collect())
            .collect();
        let err = quantum_group_from_document(&doc, 1e-9).unwrap_err();
        assert!(matches!(err, AqgError::NoHaar(_)), "{err:?}");
        assert_eq!(err.exit_code(), 3);
    }
}
