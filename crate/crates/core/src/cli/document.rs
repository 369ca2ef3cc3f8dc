//! The JSON instance format: a field, an ambient algebra and an optional
//! list of generators for the base subring.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::field::Scalar;
use crate::algebra::{Algebra, Extension, FiniteField, Subalgebra};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub field: FieldDocument,
    pub algebra: AlgebraDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_subring: Option<BaseSubring>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldDocument {
    pub p: u32,
    pub e: u32,
    /// Monic modulus, lowest degree first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraDocument {
    /// Monic coefficients, lowest degree first.
    PolyQuotient(Vec<Scalar>),
    Table(TableDocument),
    Product(Vec<AlgebraDocument>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    pub dim: usize,
    /// `mul[(i * dim + j) * dim + k]`: coefficient of `e_k` in `e_i e_j`.
    pub mul: Vec<Scalar>,
    pub one: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseSubring {
    pub generators: Vec<Vec<Scalar>>,
}

/// A syntax or schema error with its position in the source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl InstanceDocument {
    pub fn parse(text: &str) -> std::result::Result<Self, ParseError> {
        serde_json::from_str(text).map_err(|e| ParseError {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn build_field(&self) -> Result<FiniteField> {
        let f = &self.field;
        match &f.modulus {
            Some(m) => FiniteField::with_modulus(f.p, f.e, m),
            None => FiniteField::new(f.p, f.e),
        }
    }

    pub fn build(&self) -> Result<Extension> {
        let field = self.build_field()?;
        let s = Arc::new(self.algebra.build(&field)?);
        let base = match &self.base_subring {
            None => Subalgebra::prime(s.clone()),
            Some(b) => {
                for g in &b.generators {
                    if g.len() != s.dim() {
                        return Err(Error::DimensionMismatch {
                            expected: s.dim(),
                            got: g.len(),
                        });
                    }
                    if g.iter().any(|&c| !field.contains(c)) {
                        return Err(Error::InvalidField(format!(
                            "generator entry outside 0..{}",
                            field.order()
                        )));
                    }
                }
                Subalgebra::generated(s.clone(), None, &b.generators)
            }
        };
        Extension::over(s, base)
    }

    /// The document of an extension whose top ring is the whole ambient
    /// algebra: the structure table, and the echelon basis of `R` as
    /// generators.
    pub fn from_extension(ext: &Extension) -> Self {
        let a = ext.ambient();
        let f = a.field();
        InstanceDocument {
            field: FieldDocument {
                p: f.p(),
                e: f.e(),
                modulus: (f.e() > 1).then(|| f.modulus().to_vec()),
            },
            algebra: AlgebraDocument::Table(TableDocument {
                dim: a.dim(),
                mul: a.table().to_vec(),
                one: a.one().clone(),
            }),
            base_subring: Some(BaseSubring {
                generators: ext.base().space().rows().to_vec(),
            }),
        }
    }
}

impl AlgebraDocument {
    pub fn build(&self, field: &FiniteField) -> Result<Algebra> {
        match self {
            AlgebraDocument::PolyQuotient(f) => Algebra::poly_quotient(field, f),
            AlgebraDocument::Table(t) => {
                let n = t.dim;
                if t.mul.len() != n * n * n {
                    return Err(Error::DimensionMismatch {
                        expected: n * n * n,
                        got: t.mul.len(),
                    });
                }
                Algebra::new(field.clone(), n, t.mul.clone(), t.one.clone())
            }
            AlgebraDocument::Product(parts) => {
                if parts.is_empty() {
                    return Err(Error::DegreeZero);
                }
                let algs = parts
                    .iter()
                    .map(|p| p.build(field))
                    .collect::<Result<Vec<_>>>()?;
                Algebra::product_of(&algs)
            }
        }
    }
}
