//! JSON interchange for reduced algebras.
//!
//! ```json
//! {"basis": [{"id": "L", "weight": "2", "parity": 0}],
//!  "L": "L",
//!  "products": [{"n": 1, "a": "L", "b": "L", "terms": [{"coeff": "2", "basis": "L"}]}]}
//! ```
//!
//! Serialization is canonical: products are ordered by `(n, a, b)` in basis
//! order, terms by basis order, and scalars use the canonical text form.

use serde::{Deserialize, Serialize};

use super::{AlgebraError, BasisVector, Element, Parity, ReducedAlgebra, Weight};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisJson {
    pub id: String,
    pub weight: String,
    pub parity: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub basis: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductJson {
    pub n: usize,
    pub a: String,
    pub b: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub basis: Vec<BasisJson>,
    #[serde(rename = "L")]
    pub l: String,
    pub products: Vec<ProductJson>,
}

fn parse_weight(s: &str) -> Result<Weight, AlgebraError> {
    s.trim().parse::<Weight>().map_err(|_| AlgebraError::Invalid(format!("bad weight {:?}", s)))
}

impl ReducedAlgebra {
    pub fn to_json_value(&self) -> AlgebraJson {
        let basis = self
            .basis()
            .iter()
            .map(|b| BasisJson { id: b.id.clone(), weight: b.weight.to_string(), parity: b.parity.bit() })
            .collect();
        let products = self
            .product_entries()
            .into_iter()
            .map(|(n, a, b, e)| ProductJson {
                n,
                a: self.id(a).to_string(),
                b: self.id(b).to_string(),
                terms: e.iter().map(|(k, c)| TermJson { coeff: c.to_string(), basis: self.id(*k).to_string() }).collect(),
            })
            .collect();
        AlgebraJson { basis, l: self.id(self.l_index()).to_string(), products }
    }

    /// Canonical pretty-printed JSON (trailing newline included).
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json_value(v: &AlgebraJson) -> Result<Self, AlgebraError> {
        let basis = v
            .basis
            .iter()
            .map(|b| {
                let parity = Parity::from_bit(b.parity)
                    .ok_or_else(|| AlgebraError::Invalid(format!("parity of {} must be 0 or 1", b.id)))?;
                Ok(BasisVector::new(b.id.clone(), parse_weight(&b.weight)?, parity))
            })
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        let idx = |id: &str| {
            basis.iter().position(|b| b.id == id).ok_or_else(|| AlgebraError::UnknownBasisVector(id.to_string()))
        };
        let mut entries = Vec::new();
        for p in &v.products {
            let terms = p
                .terms
                .iter()
                .map(|t| Ok((idx(&t.basis)?, t.coeff.parse::<Scalar>()?)))
                .collect::<Result<Vec<_>, AlgebraError>>()?;
            entries.push((p.n, idx(&p.a)?, idx(&p.b)?, Element::from_terms(terms)));
        }
        ReducedAlgebra::new(basis, &v.l, entries)
    }

    pub fn from_json(s: &str) -> Result<Self, AlgebraError> {
        let v: AlgebraJson = serde_json::from_str(s).map_err(|e| AlgebraError::Invalid(e.to_string()))?;
        Self::from_json_value(&v)
    }
}
