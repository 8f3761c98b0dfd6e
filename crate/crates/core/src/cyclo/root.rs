use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::CycNumber;
use crate::error::Result;

/// exp(2πi·num/den), kept reduced with 0 ≤ num < den.
///
/// Character values, twists and signs live here; conversion to a
/// [`CycNumber`] happens only when they enter matrices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[u64; 2]", try_from = "[i64; 2]")]
pub struct RootOfUnity {
    num: u64,
    den: u64,
}

impl RootOfUnity {
    pub const ONE: RootOfUnity = RootOfUnity { num: 0, den: 1 };
    pub const MINUS_ONE: RootOfUnity = RootOfUnity { num: 1, den: 2 };

    pub fn new(num: i64, den: u64) -> Self {
        assert!(den > 0, "root of unity with zero denominator");
        let n = num.rem_euclid(den as i64) as u64;
        let g = n.gcd(&den);
        RootOfUnity {
            num: n / g,
            den: den / g,
        }
    }

    pub fn sign(positive: bool) -> Self {
        if positive {
            Self::ONE
        } else {
            Self::MINUS_ONE
        }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    /// Multiplicative order.
    pub fn order(self) -> u64 {
        self.den
    }

    pub fn is_one(self) -> bool {
        self.num == 0
    }

    /// `Some(true)` for +1, `Some(false)` for −1, otherwise `None`.
    pub fn as_sign(self) -> Option<bool> {
        match self.den {
            1 => Some(true),
            2 => Some(false),
            _ => None,
        }
    }

    pub fn mul(self, other: Self) -> Self {
        let den = self.den.lcm(&other.den);
        let num = self.num * (den / self.den) + other.num * (den / other.den);
        RootOfUnity::new(num as i64, den)
    }

    pub fn inv(self) -> Self {
        RootOfUnity::new(-(self.num as i64), self.den)
    }

    pub fn pow(self, k: i64) -> Self {
        let e = (self.num as i128 * k as i128).rem_euclid(self.den as i128);
        RootOfUnity::new(e as i64, self.den)
    }

    pub fn to_cyc(self) -> Result<CycNumber> {
        CycNumber::zeta(self.den as u32, self.num as i64)
    }
}

impl From<RootOfUnity> for [u64; 2] {
    fn from(r: RootOfUnity) -> Self {
        [r.num, r.den]
    }
}

impl TryFrom<[i64; 2]> for RootOfUnity {
    type Error = String;
    fn try_from(v: [i64; 2]) -> std::result::Result<Self, String> {
        if v[1] <= 0 {
            return Err(format!("invalid root-of-unity denominator {}", v[1]));
        }
        Ok(RootOfUnity::new(v[0], v[1] as u64))
    }
}

impl fmt::Debug for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.num, self.den) {
            (0, _) => write!(f, "1"),
            (1, 2) => write!(f, "-1"),
            (n, d) => write!(f, "e(2πi·{}/{})", n, d),
        }
    }
}
