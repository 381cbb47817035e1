//! Serde adapters that keep every number exact: rationals travel as `"p/q"`
//! strings, polynomials as ascending coefficient lists of such strings.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{parse_rational, Rational, UniPoly, Var};

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    var: Var,
    coeffs: Vec<String>,
    #[serde(default, skip_deserializing)]
    text: String,
}

fn to_repr(p: &UniPoly) -> PolyRepr {
    PolyRepr {
        var: p.var(),
        coeffs: p.coeffs().iter().map(ToString::to_string).collect(),
        text: p.to_string(),
    }
}

fn from_repr<E: serde::de::Error>(r: PolyRepr) -> Result<UniPoly, E> {
    let coeffs = r
        .coeffs
        .iter()
        .map(|c| parse_rational(c).map_err(E::custom))
        .collect::<Result<Vec<_>, E>>()?;
    Ok(UniPoly::from_coeffs(coeffs, r.var))
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(D::Error::custom)
    }
}

pub mod opt_rational {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        x.as_ref().map(ToString::to_string).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_rational(&t).map_err(D::Error::custom))
            .transpose()
    }
}

pub mod poly {
    use super::*;

    pub fn serialize<S: Serializer>(p: &UniPoly, s: S) -> Result<S::Ok, S::Error> {
        to_repr(p).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<UniPoly, D::Error> {
        from_repr(PolyRepr::deserialize(d)?)
    }
}

pub mod opt_poly {
    use super::*;

    pub fn serialize<S: Serializer>(p: &Option<UniPoly>, s: S) -> Result<S::Ok, S::Error> {
        p.as_ref().map(to_repr).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<UniPoly>, D::Error> {
        Option::<PolyRepr>::deserialize(d)?.map(from_repr).transpose()
    }
}
