//! Exact brute-force counts. Every routine here works in integer or rational
//! arithmetic and fails with a budget error rather than running unbounded.

mod enumerate;
mod moments;
mod orient;
mod ryser;
mod undirected;

pub use enumerate::{
    bipartite_graphs, count_bipartite, count_bipartite_stratified, count_bipartite_unpruned,
    count_loopfree, count_oriented, exact_event_probability, exact_expected_permanent,
    expected_permanent_by_transversals, stratum, stratum_by_two_cycles, Event,
};
pub use moments::{permutation_moment_oracle, MomentOracle, MAX_PERMUTATION_N};
pub use orient::{count_eulerian_orientations, count_orientations_with_degrees};
pub use ryser::{naive_permanent, ryser_permanent, Matrix01};
pub use undirected::{enumerate_undirected, exact_expected_orientations};


use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Size limits for the exhaustive routines.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of edges `S` for bipartite and undirected enumeration.
    pub max_edges: usize,
    /// Maximum order for Ryser's permanent.
    pub max_ryser_n: usize,
    /// Maximum edge count for orientation counting.
    pub max_orientation_edges: usize,
    /// Upper limit on the number of graphs an enumeration may visit, judged
    /// from the asymptotic estimate before starting.
    pub max_graphs: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_edges: 24,
            max_ryser_n: 24,
            max_orientation_edges: 28,
            max_graphs: 1e9,
        }
    }
}

impl Budget {
    pub fn with_max_edges(mut self, s: usize) -> Self {
        self.max_edges = s;
        self
    }

    pub fn with_max_ryser_n(mut self, n: usize) -> Self {
        self.max_ryser_n = n;
        self
    }

    pub(crate) fn check_edges(&self, s: usize) -> Result<()> {
        check("S", self.max_edges, s)
    }

    pub(crate) fn check_graphs(&self, log_estimate: f64) -> Result<()> {
        if log_estimate > self.max_graphs.ln() {
            return Err(Error::Budget {
                what: "estimated number of graphs",
                limit: self.max_graphs as usize,
                actual: log_estimate.exp().min(usize::MAX as f64) as usize,
            });
        }
        Ok(())
    }
}

pub(crate) fn check(what: &'static str, limit: usize, actual: usize) -> Result<()> {
    if actual > limit {
        Err(Error::Budget { what, limit, actual })
    } else {
        Ok(())
    }
}

/// An exact nonnegative count; serialized as a decimal string.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExactCount(#[serde(with = "decimal")] pub BigUint);

impl ExactCount {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn ln(&self) -> f64 {
        big_ln(&self.0)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }
}

impl From<u128> for ExactCount {
    fn from(v: u128) -> Self {
        ExactCount(BigUint::from(v))
    }
}

impl From<BigUint> for ExactCount {
    fn from(v: BigUint) -> Self {
        ExactCount(v)
    }
}

impl std::fmt::Display for ExactCount {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Natural log of a big integer without overflowing `f64`.
pub fn big_ln(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// An exact reduced fraction; serialized as `{"numerator": "..", "denominator": ".."}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactRational(pub BigRational);

impl ExactRational {
    pub fn new(num: BigUint, den: BigUint) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::EmptySpace("zero denominator".into()));
        }
        Ok(ExactRational(BigRational::new(num.into(), den.into())))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// `ln(numerator) - ln(denominator)`, stable for huge values.
    pub fn ln(&self) -> f64 {
        let n = self.0.numer().to_biguint().unwrap_or_default();
        let d = self.0.denom().to_biguint().unwrap_or_default();
        big_ln(&n) - big_ln(&d)
    }
}

impl std::fmt::Display for ExactRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    numerator: String,
    denominator: String,
}

impl Serialize for ExactRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalRepr {
            numerator: self.0.numer().to_string(),
            denominator: self.0.denom().to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = RationalRepr::deserialize(d)?;
        let num: BigUint = r.numerator.parse().map_err(D::Error::custom)?;
        let den: BigUint = r.denominator.parse().map_err(D::Error::custom)?;
        ExactRational::new(num, den).map_err(D::Error::custom)
    }
}

/// Serde helpers writing big integers as decimal strings.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        use serde::de::Error;
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }

    pub mod vec {
        use num_bigint::BigUint;
        use serde::{Deserialize, Deserializer, Serializer};

        pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(v.iter().map(|x| x.to_string()))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
            use serde::de::Error;
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|x| x.parse().map_err(D::Error::custom))
                .collect()
        }
    }

    pub mod option {
        use num_bigint::BigUint;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(x) => s.serialize_str(&x.to_string()),
                None => s.serialize_none(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_json_is_decimal_string() {
        let c = ExactCount::from(12345678901234567890u128);
        assert_eq!(serde_json::to_string(&c).unwrap(), "\"12345678901234567890\"");
        let back: ExactCount = serde_json::from_str("\"42\"").unwrap();
        assert_eq!(back, ExactCount::from(42));
    }

    #[test]
    fn rational_json() {
        let r = ExactRational::new(BigUint::from(24u32), BigUint::from(10u32)).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["numerator"], "12");
        assert_eq!(v["denominator"], "5");
        assert!(ExactRational::new(BigUint::from(1u32), BigUint::zero()).is_err());
    }

    #[test]
    fn log_of_huge() {
        let x = crate::special::factorial_big(300);
        let want = crate::special::ln_factorial(300);
        assert!((big_ln(&x) - want).abs() < 1e-9 * want);
    }
}
