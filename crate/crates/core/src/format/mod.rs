//! Serialization: serde adapters for exact objects, system files and reports.
//!
//! Rationals are always written as strings (`"3"`, `"-1/2"`), never floats.

mod expr;
mod observer;
mod report;
mod system_file;

pub use expr::{parse_rational_function, parse_transfer_matrix};
pub use observer::{parse_observer_file, ObserverSpec};
pub use report::{Report, StageTiming, SCHEMA_VERSION};
pub use system_file::{parse_system_file, ExpectedWitness, SystemFile};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactlin::{format_rational, parse_rational, Matrix, Rational, Subspace};
use crate::polymat::Polynomial;
use crate::witness::{RationalFunction, RationalFunctionMatrix};

fn text<E: serde::de::Error>(s: &str) -> Result<Rational, E> {
    parse_rational(s).map_err(E::custom)
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

fn parse_all<E: serde::de::Error>(v: &[String]) -> Result<Vec<Rational>, E> {
    v.iter().map(|s| text(s)).collect()
}

pub mod serde_rational {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        text(&String::deserialize(d)?)
    }

    pub mod vec {
        use super::super::*;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            strings(v).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            parse_all(&Vec::<String>::deserialize(d)?)
        }
    }

    pub mod opt_vec {
        use super::super::*;

        pub fn serialize<S: Serializer>(v: &Option<Vec<Rational>>, s: S) -> Result<S::Ok, S::Error> {
            v.as_deref().map(strings).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Rational>>, D::Error> {
            Option::<Vec<String>>::deserialize(d)?
                .map(|v| parse_all(&v))
                .transpose()
        }
    }

    pub mod opt_nested {
        use super::super::*;

        pub fn serialize<S: Serializer>(v: &Option<Vec<Vec<Rational>>>, s: S) -> Result<S::Ok, S::Error> {
            v.as_ref()
                .map(|rows| rows.iter().map(|r| strings(r)).collect::<Vec<_>>())
                .serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<Vec<Rational>>>, D::Error> {
            Option::<Vec<Vec<String>>>::deserialize(d)?
                .map(|rows| rows.iter().map(|r| parse_all(r)).collect())
                .transpose()
        }
    }
}

/// Polynomials as ascending coefficient strings plus a display form that is
/// ignored on input.
#[derive(Serialize, Deserialize)]
struct PolyRepr {
    coefficients: Vec<String>,
    #[serde(default, skip_deserializing)]
    text: String,
}

impl PolyRepr {
    fn from_poly(p: &Polynomial) -> Self {
        Self {
            coefficients: strings(p.coeffs()),
            text: p.to_string(),
        }
    }

    fn into_poly<E: serde::de::Error>(self) -> Result<Polynomial, E> {
        Ok(Polynomial::new(parse_all(&self.coefficients)?))
    }
}

pub mod serde_poly {
    use super::*;

    pub fn serialize<S: Serializer>(p: &Polynomial, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr::from_poly(p).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Polynomial, D::Error> {
        PolyRepr::deserialize(d)?.into_poly()
    }

    pub mod opt {
        use super::super::*;

        pub fn serialize<S: Serializer>(p: &Option<Polynomial>, s: S) -> Result<S::Ok, S::Error> {
            p.as_ref().map(PolyRepr::from_poly).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Polynomial>, D::Error> {
            Option::<PolyRepr>::deserialize(d)?.map(PolyRepr::into_poly).transpose()
        }
    }
}

/// Shape is stored explicitly so empty blocks survive a round trip.
#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: usize,
    cols: usize,
    data: Vec<Vec<String>>,
}

pub mod serde_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &Matrix, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: m.rows(),
            cols: m.cols(),
            data: m.to_rows().iter().map(|r| strings(r)).collect(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Matrix, D::Error> {
        let repr = MatrixRepr::deserialize(d)?;
        let rows = repr.data.iter().map(|r| parse_all(r)).collect::<Result<Vec<_>, _>>()?;
        if rows.len() != repr.rows {
            return Err(D::Error::custom(format!("expected {} rows, found {}", repr.rows, rows.len())));
        }
        Matrix::from_rows(rows, repr.cols).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient_dim: usize,
    dim: usize,
    basis: Vec<Vec<String>>,
}

pub mod serde_subspace {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Subspace, s: S) -> Result<S::Ok, S::Error> {
        SubspaceRepr {
            ambient_dim: v.ambient_dim(),
            dim: v.dim(),
            basis: v.basis_vectors().iter().map(|b| strings(b)).collect(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Subspace, D::Error> {
        let repr = SubspaceRepr::deserialize(d)?;
        let vectors = repr.basis.iter().map(|b| parse_all(b)).collect::<Result<Vec<_>, _>>()?;
        let v = Subspace::from_vectors(repr.ambient_dim, &vectors).map_err(D::Error::custom)?;
        if v.dim() != repr.dim {
            return Err(D::Error::custom("basis vectors are dependent"));
        }
        Ok(v)
    }
}

#[derive(Serialize, Deserialize)]
struct RationalFunctionRepr {
    num: PolyRepr,
    den: PolyRepr,
    #[serde(default, skip_deserializing)]
    text: String,
}

#[derive(Serialize, Deserialize)]
struct RfMatrixRepr {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<RationalFunctionRepr>>,
}

impl RfMatrixRepr {
    fn from_matrix(m: &RationalFunctionMatrix) -> Self {
        let entries = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| {
                        let f = m.get(i, j);
                        RationalFunctionRepr {
                            num: PolyRepr::from_poly(f.num()),
                            den: PolyRepr::from_poly(f.den()),
                            text: f.to_string(),
                        }
                    })
                    .collect()
            })
            .collect();
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    fn into_matrix<E: serde::de::Error>(self) -> Result<RationalFunctionMatrix, E> {
        if self.entries.len() != self.rows || self.entries.iter().any(|r| r.len() != self.cols) {
            return Err(E::custom("rational function matrix shape does not match its entries"));
        }
        let mut out = RationalFunctionMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.entries.into_iter().enumerate() {
            for (j, e) in row.into_iter().enumerate() {
                let f = RationalFunction::new(e.num.into_poly()?, e.den.into_poly()?).map_err(E::custom)?;
                out.set(i, j, f);
            }
        }
        Ok(out)
    }
}

pub mod serde_rfmatrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &RationalFunctionMatrix, s: S) -> Result<S::Ok, S::Error> {
        RfMatrixRepr::from_matrix(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RationalFunctionMatrix, D::Error> {
        RfMatrixRepr::deserialize(d)?.into_matrix()
    }

    pub mod opt {
        use super::super::*;

        pub fn serialize<S: Serializer>(m: &Option<RationalFunctionMatrix>, s: S) -> Result<S::Ok, S::Error> {
            m.as_ref().map(RfMatrixRepr::from_matrix).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<RationalFunctionMatrix>, D::Error> {
            Option::<RfMatrixRepr>::deserialize(d)?
                .map(RfMatrixRepr::into_matrix)
                .transpose()
        }
    }
}
