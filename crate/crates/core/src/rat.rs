//! Exact number types and their string forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision integer.
pub type Int = BigInt;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

/// Formats a rational as `"p"` or `"p/q"`.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        None => s.parse::<Int>().map(Rat::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: Int = p.trim().parse().map_err(|_| bad())?;
            let q: Int = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Least common multiple of the denominators of `v` (1 for an empty slice).
pub fn denominator_lcm(v: &[Rat]) -> Int {
    use num_integer::Integer;
    v.iter().fold(Int::one(), |acc, r| acc.lcm(r.denom()))
}

/// Scales a nonnegative rational vector to the smallest positive integer
/// multiple with integral entries.
pub fn clear_denominators(v: &[Rat]) -> Vec<Int> {
    let l = denominator_lcm(v);
    v.iter().map(|r| (r * Rat::from_integer(l.clone())).to_integer()).collect()
}

/// Dot product of two rational vectors of equal length.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_nonnegative(v: &[Rat]) -> bool {
    v.iter().all(|x| !x.is_negative())
}

pub fn to_rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

/// Serde helpers storing rationals as `"p/q"` strings.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde helpers for `Vec<Rat>` stored as a list of strings.
pub mod serde_rat_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(format_rat).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings_round_trip() {
        for s in ["0", "-3", "1/2", "-7/12"] {
            assert_eq!(format_rat(&parse_rat(s).unwrap()), s);
        }
        assert_eq!(parse_rat("4/8").unwrap(), ratio(1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn clearing_denominators() {
        let v = vec![ratio(1, 2), ratio(1, 3), rat(0)];
        assert_eq!(clear_denominators(&v), vec![int(3), int(2), int(0)]);
    }
}
