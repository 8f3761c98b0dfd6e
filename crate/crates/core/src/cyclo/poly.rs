use std::fmt;

use super::CycNumber;
use crate::error::{Error, Result};

/// A monic polynomial over ℚ(ζ), coefficients stored low degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct CycPoly {
    coeffs: Vec<CycNumber>,
}

impl CycPoly {
    /// Validates monicity. `coeffs[0]` is the constant term.
    pub fn new(coeffs: Vec<CycNumber>) -> Result<Self> {
        match coeffs.last() {
            None => Err(Error::domain("polynomial needs at least one coefficient")),
            Some(lead) if !lead.is_one() => Err(Error::domain(format!(
                "polynomial is not monic (leading coefficient {lead})"
            ))),
            _ => Ok(CycPoly { coeffs }),
        }
    }

    /// Normalizes an arbitrary coefficient list (trailing zeros stripped)
    /// to monic form.
    pub fn monic_from(mut coeffs: Vec<CycNumber>) -> Result<Self> {
        while coeffs.last().is_some_and(CycNumber::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs
            .last()
            .ok_or_else(|| Error::domain("zero polynomial has no monic form"))?
            .inv()?;
        Ok(CycPoly {
            coeffs: coeffs.iter().map(|c| c * &lead).collect(),
        })
    }

    pub fn one() -> Self {
        CycPoly {
            coeffs: vec![CycNumber::one()],
        }
    }

    /// z − root.
    pub fn linear(root: &CycNumber) -> Self {
        CycPoly {
            coeffs: vec![-root, CycNumber::one()],
        }
    }

    /// z^d − c.
    pub fn binomial(d: usize, c: &CycNumber) -> Self {
        let mut coeffs = vec![CycNumber::zero(); d + 1];
        coeffs[0] = -c;
        coeffs[d] = coeffs[d].clone() + CycNumber::one();
        CycPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[CycNumber] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &CycNumber {
        &self.coeffs[0]
    }

    /// Member of the space of admissible minimal polynomials: degree ≥ 1 and
    /// nonzero constant term.
    pub fn is_invertible_type(&self) -> bool {
        self.degree() >= 1 && !self.constant_term().is_zero()
    }

    pub fn mul(&self, other: &CycPoly) -> CycPoly {
        let mut out = vec![CycNumber::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        CycPoly { coeffs: out }
    }

    pub fn eval(&self, x: &CycNumber) -> CycNumber {
        let mut acc = CycNumber::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// z^{deg R}·R(1/z)/R(0): the minimal polynomial of the inverse operator.
    pub fn theta(&self) -> Result<CycPoly> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::domain("ϑ needs a nonzero constant term"));
        }
        let inv = c0.inv()?;
        Ok(CycPoly {
            coeffs: self.coeffs.iter().rev().map(|c| c * &inv).collect(),
        })
    }

    /// The unique monic R̄ with R(z) = R̄(z^e), if R is supported on exponents
    /// divisible by e.
    pub fn detect_power_factor(&self, e: usize) -> Result<Option<CycPoly>> {
        if e == 0 {
            return Err(Error::domain("power factor exponent must be positive"));
        }
        let supported = self
            .coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| i % e == 0 || c.is_zero());
        if !supported {
            return Ok(None);
        }
        Ok(Some(CycPoly {
            coeffs: self.coeffs.iter().step_by(e).cloned().collect(),
        }))
    }

    /// R(z^e).
    pub fn compose_power(&self, e: usize) -> CycPoly {
        assert!(e > 0);
        let mut coeffs = vec![CycNumber::zero(); self.degree() * e + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * e] = c.clone();
        }
        CycPoly { coeffs }
    }

    /// c^{-deg}·R(c·z), the monic polynomial whose roots are those of R
    /// divided by c.
    pub fn rescale(&self, c: &CycNumber) -> Result<CycPoly> {
        let d = self.degree() as i64;
        let mut out = Vec::with_capacity(self.coeffs.len());
        for (i, a) in self.coeffs.iter().enumerate() {
            out.push(a * &c.pow(i as i64 - d)?);
        }
        Ok(CycPoly { coeffs: out })
    }
}

impl fmt::Debug for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            let (neg, body) = match c.terms().as_slice() {
                [(q, _)] if num_traits::Signed::is_negative(q) => {
                    (true, (-c).to_string())
                }
                [_] => (false, c.to_string()),
                _ => (false, format!("({c})")),
            };
            let term = if mono.is_empty() {
                body
            } else if body == "1" {
                mono
            } else {
                format!("{body}*{mono}")
            };
            if first {
                write!(f, "{}{}", if neg { "-" } else { "" }, term)?;
            } else {
                write!(f, " {} {}", if neg { "-" } else { "+" }, term)?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> CycNumber {
        CycNumber::from_frac(n, d).unwrap()
    }

    fn int_poly(c: &[i64]) -> CycPoly {
        CycPoly::new(c.iter().map(|&v| CycNumber::from_integer(v)).collect()).unwrap()
    }

    #[test]
    fn theta_examples() {
        assert_eq!(int_poly(&[-2, 1]).theta().unwrap(), CycPoly::new(vec![q(-1, 2), q(1, 1)]).unwrap());
        assert_eq!(
            int_poly(&[2, 3, 1]).theta().unwrap(),
            CycPoly::new(vec![q(1, 2), q(3, 2), q(1, 1)]).unwrap()
        );
        let z3 = CycNumber::zeta(3, 1).unwrap();
        let r = CycPoly::new(vec![q(5, 1), z3, CycNumber::zero(), CycNumber::one()]).unwrap();
        assert_eq!(r.theta().unwrap().theta().unwrap(), r);
        assert!(int_poly(&[0, 1]).theta().is_err());
    }

    #[test]
    fn power_factor_examples() {
        assert_eq!(int_poly(&[-1, 0, 0, 0, 1]).detect_power_factor(2).unwrap(), Some(int_poly(&[-1, 0, 1])));
        assert_eq!(int_poly(&[1, 1, 1]).detect_power_factor(2).unwrap(), None);
        let r = int_poly(&[3, 1, 4, 1]);
        assert_eq!(r.detect_power_factor(1).unwrap(), Some(r.clone()));
        assert!(r.detect_power_factor(0).is_err());
        assert_eq!(int_poly(&[-1, 1]).compose_power(3), int_poly(&[-1, 0, 0, 1]));
    }

    #[test]
    fn rescale_by_sign() {
        // (-1)^2 * R(-z) for R = z^2 + 3z + 2 is z^2 - 3z + 2
        let r = int_poly(&[2, 3, 1]);
        assert_eq!(r.rescale(&CycNumber::from_integer(-1)).unwrap(), int_poly(&[2, -3, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(int_poly(&[-1, 0, 1]).to_string(), "z^2 - 1");
        let z = CycNumber::zeta(4, 1).unwrap();
        let p = CycPoly::new(vec![z.clone() + CycNumber::one(), -z, CycNumber::one()]).unwrap();
        assert_eq!(p.to_string(), "z^2 - ζ4*z + (1 + ζ4)");
    }
}
