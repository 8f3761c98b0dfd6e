//! JSON encodings: a number is `{"order": N, "terms": [[num, den, exp], …]}`
//! meaning Σ (num/den)·ζ_N^exp, canonicalized on load. Integers that do not
//! fit in an `i64` are written as decimal strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{CycMatrix, CycNumber, CycPoly};

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

impl JsonInt {
    fn from_big(b: &BigInt) -> Self {
        match b.to_i64() {
            Some(v) => JsonInt::Small(v),
            None => JsonInt::Big(b.to_string()),
        }
    }

    fn to_big(&self) -> Result<BigInt, String> {
        match self {
            JsonInt::Small(v) => Ok(BigInt::from(*v)),
            JsonInt::Big(s) => s.parse().map_err(|_| format!("invalid integer `{s}`")),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct NumberRepr {
    order: u32,
    terms: Vec<(JsonInt, JsonInt, i64)>,
}

impl Serialize for CycNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        NumberRepr {
            order: self.order(),
            terms: self
                .terms()
                .into_iter()
                .map(|(q, e)| (JsonInt::from_big(q.numer()), JsonInt::from_big(q.denom()), e as i64))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = NumberRepr::deserialize(d)?;
        let mut terms = Vec::with_capacity(repr.terms.len());
        for (n, den, e) in &repr.terms {
            let den = den.to_big().map_err(D::Error::custom)?;
            if den == BigInt::from(0) {
                return Err(D::Error::custom("zero denominator in cyclotomic term"));
            }
            terms.push((BigRational::new(n.to_big().map_err(D::Error::custom)?, den), *e));
        }
        CycNumber::from_terms(repr.order, &terms).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    coeffs: Vec<CycNumber>,
}

impl Serialize for CycPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            coeffs: self.coeffs().to_vec(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        CycPoly::new(PolyRepr::deserialize(d)?.coeffs).map_err(D::Error::custom)
    }
}

impl Serialize for CycMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        CycMatrix::from_rows(Vec::<Vec<CycNumber>>::deserialize(d)?).map_err(D::Error::custom)
    }
}
