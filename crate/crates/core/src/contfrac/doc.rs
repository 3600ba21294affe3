//! JSON continued-fraction documents.
//!
//! Numeric: `{"q0": "4", "partials": [["1","2"], ["1","1"], ["1","2"]]}`.
//! Algebraic: the same shape with every entry a coefficient array, e.g.
//! `{"q0": ["1"], "partials": [[["0","1"], ["1"]]]}`.

use std::fmt;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};

use super::{AlgebraicCF, ContinuedFraction, NumericCF};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum CfDoc {
    Numeric {
        q0: Rational,
        partials: Vec<(Rational, Rational)>,
    },
    Algebraic {
        q0: Vec<Rational>,
        partials: Vec<(Vec<Rational>, Vec<Rational>)>,
    },
}

/// A rational or a coefficient array; one document must not mix them.
#[derive(Deserialize)]
#[serde(untagged, expecting = "a rational string or an array of rational strings")]
enum Term {
    Scalar(Rational),
    Poly(Vec<Rational>),
}

// Parsed through a visitor so that errors keep their line and column.
impl<'de> Deserialize<'de> for CfDoc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        deserializer.deserialize_map(CfVisitor)
    }
}

struct CfVisitor;

impl<'de> Visitor<'de> for CfVisitor {
    type Value = CfDoc;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a continued-fraction object with `q0` and `partials`")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<CfDoc, A::Error> {
        let mut q0: Option<Term> = None;
        let mut partials: Option<Vec<(Term, Term)>> = None;
        while let Some(key) = map.next_key::<String>()? {
            let dup = match key.as_str() {
                "q0" => q0.replace(map.next_value()?).is_some(),
                "partials" => partials.replace(map.next_value()?).is_some(),
                other => return Err(de::Error::unknown_field(other, &["q0", "partials"])),
            };
            if dup {
                return Err(de::Error::custom(format!("duplicate field `{key}`")));
            }
        }
        let q0 = q0.ok_or_else(|| de::Error::missing_field("q0"))?;
        let partials = partials.ok_or_else(|| de::Error::missing_field("partials"))?;
        let mixed = || de::Error::custom("mixed numeric and polynomial terms");
        match q0 {
            Term::Scalar(q0) => {
                let partials = partials
                    .into_iter()
                    .map(|pair| match pair {
                        (Term::Scalar(p), Term::Scalar(q)) => Ok((p, q)),
                        _ => Err(mixed()),
                    })
                    .collect::<std::result::Result<_, _>>()?;
                Ok(CfDoc::Numeric { q0, partials })
            }
            Term::Poly(q0) => {
                let partials = partials
                    .into_iter()
                    .map(|pair| match pair {
                        (Term::Poly(p), Term::Poly(q)) => Ok((p, q)),
                        _ => Err(mixed()),
                    })
                    .collect::<std::result::Result<_, _>>()?;
                Ok(CfDoc::Algebraic { q0, partials })
            }
        }
    }
}

impl CfDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidDocument(format!("continued fraction: {e}")))
    }

    pub fn from_numeric(cf: &NumericCF) -> Self {
        CfDoc::Numeric { q0: cf.q0().clone(), partials: cf.partials().to_vec() }
    }

    pub fn from_algebraic(cf: &AlgebraicCF) -> Self {
        CfDoc::Algebraic {
            q0: cf.q0().coeffs().to_vec(),
            partials: cf.partials().iter().map(|(p, q)| (p.coeffs().to_vec(), q.coeffs().to_vec())).collect(),
        }
    }

    fn check_numerators<T>(partials: &[(T, T)], is_zero: impl Fn(&T) -> bool) -> Result<()> {
        match partials.iter().position(|(p, _)| is_zero(p)) {
            Some(k) => Err(Error::InvalidDocument(format!("partial numerator {} is zero", k + 1))),
            None => Ok(()),
        }
    }

    pub fn to_numeric(&self) -> Result<NumericCF> {
        match self {
            CfDoc::Numeric { q0, partials } => {
                Self::check_numerators(partials, num_traits::Zero::is_zero)?;
                Ok(ContinuedFraction::new(q0.clone(), partials.clone()))
            }
            CfDoc::Algebraic { .. } => Err(Error::InvalidDocument("expected a numeric continued fraction".into())),
        }
    }

    /// Numeric documents are accepted too, as constant polynomials.
    pub fn to_algebraic(&self) -> Result<AlgebraicCF> {
        let (q0, partials): (Polynomial, Vec<(Polynomial, Polynomial)>) = match self {
            CfDoc::Numeric { q0, partials } => (
                Polynomial::constant(q0.clone()),
                partials.iter().map(|(p, q)| (Polynomial::constant(p.clone()), Polynomial::constant(q.clone()))).collect(),
            ),
            CfDoc::Algebraic { q0, partials } => (
                Polynomial::new(q0.clone()),
                partials.iter().map(|(p, q)| (Polynomial::new(p.clone()), Polynomial::new(q.clone()))).collect(),
            ),
        };
        Self::check_numerators(&partials, num_traits::Zero::is_zero)?;
        Ok(ContinuedFraction::new(q0, partials))
    }

    pub fn is_numeric(&self) -> bool {
        matches!(self, CfDoc::Numeric { .. })
    }
}
