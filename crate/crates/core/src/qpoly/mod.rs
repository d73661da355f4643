//! Exact arithmetic in `Z[q]` and `Q(q)`.
//!
//! Both types are generic over the integer coefficient type; the rest of the
//! crate works with the `BigInt` instantiations [`crate::QPoly`] and
//! [`crate::QRat`]. On the wire a polynomial is a JSON array of decimal
//! strings (constant term first) and a rational function is
//! `{"num": [...], "den": [...]}`.

mod poly;
mod rational;
mod scalar;

pub use poly::{q_binomial, q_factorial, q_int, Poly};
pub use rational::RatFunc;
pub use scalar::Coeff;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

impl<T: Coeff> Serialize for Poly<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs().iter().map(|c| c.to_string()))
    }
}

impl<'de, T: Coeff> Deserialize<'de> for Poly<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        let coeffs = raw
            .iter()
            .map(|s| {
                s.parse::<T>()
                    .map_err(|_| de::Error::custom(format!("bad coefficient {s:?}")))
            })
            .collect::<Result<Vec<T>, _>>()?;
        Ok(Poly::from_coeffs(coeffs))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(bound = "T: Coeff")]
struct RatWire<T: Coeff> {
    num: Poly<T>,
    den: Poly<T>,
}

impl<T: Coeff> Serialize for RatFunc<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RatWire { num: self.numer().clone(), den: self.denom().clone() }.serialize(s)
    }
}

impl<'de, T: Coeff> Deserialize<'de> for RatFunc<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = RatWire::<T>::deserialize(d)?;
        RatFunc::new(w.num, w.den).map_err(de::Error::custom)
    }
}
