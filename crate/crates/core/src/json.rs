//! Serialization helpers shared by the reports.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

const SAFE_INTEGER: u64 = 1 << 53;

/// An exact count that serializes as a JSON number below `2^53` and as a
/// decimal string above it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BigCount(pub BigUint);

impl BigCount {
    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) if v < SAFE_INTEGER => s.serialize_u64(v),
            _ => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for BigCount {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = BigCount;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative integer or a decimal string")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<BigCount, E> {
                Ok(BigCount::from(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<BigCount, E> {
                u64::try_from(v).map(BigCount::from).map_err(|_| E::custom("negative count"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<BigCount, E> {
                v.parse::<BigUint>().map(BigCount).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn switches_to_strings_above_two_to_the_53() {
        let small = BigCount::from(12u64);
        assert_eq!(serde_json::to_string(&small).unwrap(), "12");
        let big = BigCount(BigUint::from(1u64 << 53));
        assert_eq!(serde_json::to_string(&big).unwrap(), "\"9007199254740992\"");
        for v in [small, big] {
            let back: BigCount = serde_json::from_str(&serde_json::to_string(&v).unwrap()).unwrap();
            assert_eq!(back, v);
        }
    }
}
