use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactnum::{format_scalar, parse_scalar, Scalar};

/// A weight in ε/δ coordinates, held in the canonical representative of its frame.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(pub Vec<Scalar>);

impl Weight {
    pub fn zero(len: usize) -> Self {
        Weight(vec![Scalar::zero(); len])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Weight(xs.iter().map(|&x| Scalar::from_integer(x.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, c: &Scalar) -> Weight {
        Weight(self.0.iter().map(|x| x * c).collect())
    }

    pub fn dot(&self, v: &[Scalar]) -> Scalar {
        self.0.iter().zip(v).map(|(a, b)| a * b).sum()
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.len(), rhs.len());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.len(), rhs.len());
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_scalar).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(format_scalar).collect();
        parts.serialize(s)
    }
}

/// Accepts JSON numbers (integers) or rational strings per coordinate.
impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<serde_json::Value> = Vec::deserialize(d)?;
        raw.iter()
            .map(|v| match v {
                serde_json::Value::String(s) => parse_scalar(s).map_err(serde::de::Error::custom),
                serde_json::Value::Number(n) => parse_scalar(&n.to_string()).map_err(serde::de::Error::custom),
                other => Err(serde::de::Error::custom(format!("bad weight coordinate {other}"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
    }
}
