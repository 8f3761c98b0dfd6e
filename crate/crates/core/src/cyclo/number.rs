use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU32, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: u32 = 120;

static ORDER_CAP: AtomicU32 = AtomicU32::new(DEFAULT_ORDER_CAP);

/// Largest cyclotomic order any arithmetic is allowed to lift to.
pub fn order_cap() -> u32 {
    ORDER_CAP.load(Ordering::Relaxed)
}

pub fn set_order_cap(cap: u32) {
    ORDER_CAP.store(cap.max(1), Ordering::Relaxed);
}

pub fn lcm_order(a: u32, b: u32) -> Result<u32> {
    let l = a.lcm(&b);
    check_order(l)?;
    Ok(l)
}

fn check_order(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("cyclotomic order must be positive"));
    }
    let cap = order_cap();
    if n > cap {
        return Err(Error::Capacity {
            what: "cyclotomic order",
            limit: cap as usize,
            found: n as usize,
        });
    }
    Ok(())
}

/// Reduction data for one order N: `powers[k]` is ζ_N^k written in the basis
/// 1, ζ_N, …, ζ_N^{φ(N)−1}.
#[derive(Debug)]
pub(crate) struct OrderCtx {
    pub n: u32,
    pub phi: usize,
    pub powers: Vec<Vec<i64>>,
}

fn poly_divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    if rem.len() <= dn {
        return vec![];
    }
    let mut quo = vec![0i64; rem.len() - dn];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dn];
        quo[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    quo
}

/// Integer coefficients of the n-th cyclotomic polynomial, low degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_divide_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

fn build_ctx(n: u32) -> OrderCtx {
    let phi_poly = cyclotomic_polynomial(n);
    let phi = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by ζ: shift up then reduce the overflow coefficient
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..phi {
                cur[i] -= top * phi_poly[i];
            }
        }
    }
    OrderCtx { n, phi, powers }
}

pub(crate) fn ctx(n: u32) -> Arc<OrderCtx> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<OrderCtx>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(c) = cache.read().unwrap().get(&n) {
        return c.clone();
    }
    let c = Arc::new(build_ctx(n));
    cache.write().unwrap().entry(n).or_insert(c).clone()
}

pub fn euler_phi(n: u32) -> usize {
    ctx(n).phi
}

/// An exact element of the cyclotomic field ℚ(ζ_N), stored as rational
/// coefficients of 1, ζ_N, …, ζ_N^{φ(N)−1}.
///
/// Arithmetic between numbers of different orders lifts both operands to the
/// lcm of the orders. The `std::ops` impls panic if that lcm exceeds
/// [`order_cap`]; use [`CycNumber::checked_add`] and friends (or
/// [`super::cyc_arith`]) where the order is not known to be in range.
#[derive(Clone)]
pub struct CycNumber {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycNumber {
    pub fn zero_at(order: u32) -> Result<Self> {
        check_order(order)?;
        Ok(CycNumber {
            order,
            coeffs: vec![BigRational::zero(); euler_phi(order)],
        })
    }

    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_rational(BigRational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    pub fn from_rational(q: BigRational) -> Self {
        CycNumber {
            order: 1,
            coeffs: vec![q],
        }
    }

    /// ζ_N^k for any integer k.
    pub fn zeta(order: u32, k: i64) -> Result<Self> {
        check_order(order)?;
        let c = ctx(order);
        let idx = k.rem_euclid(order as i64) as usize;
        Ok(CycNumber {
            order,
            coeffs: c.powers[idx]
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        })
    }

    /// Σ c·ζ_N^e over the given terms, reduced.
    pub fn from_terms(order: u32, terms: &[(BigRational, i64)]) -> Result<Self> {
        let mut acc = Self::zero_at(order)?;
        let c = ctx(order);
        for (q, e) in terms {
            let row = &c.powers[e.rem_euclid(order as i64) as usize];
            for (dst, &v) in acc.coeffs.iter_mut().zip(row) {
                if v != 0 {
                    *dst += q * BigRational::from_integer(BigInt::from(v));
                }
            }
        }
        Ok(acc)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients in the reduced power basis of ζ_order.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    /// Re-express at an order that is a multiple of the current one.
    pub fn lift(&self, order: u32) -> Result<Self> {
        if order == self.order {
            return Ok(self.clone());
        }
        if !order.is_multiple_of(self.order) {
            return Err(Error::domain(format!(
                "cannot lift order {} to {}",
                self.order, order
            )));
        }
        check_order(order)?;
        let step = (order / self.order) as usize;
        let c = ctx(order);
        let mut out = vec![BigRational::zero(); c.phi];
        for (j, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            let row = &c.powers[(j * step) % order as usize];
            for (dst, &v) in out.iter_mut().zip(row) {
                if v != 0 {
                    *dst += q * BigRational::from_integer(BigInt::from(v));
                }
            }
        }
        Ok(CycNumber { order, coeffs: out })
    }

    fn lifted_pair(&self, other: &Self) -> Result<(Self, Self)> {
        let l = lcm_order(self.order, other.order)?;
        Ok((self.lift(l)?, other.lift(l)?))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        if self.order == other.order {
            return Ok(CycNumber {
                order: self.order,
                coeffs: self
                    .coeffs
                    .iter()
                    .zip(&other.coeffs)
                    .map(|(a, b)| a + b)
                    .collect(),
            });
        }
        let (a, b) = self.lifted_pair(other)?;
        a.checked_add(&b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg_ref())
    }

    fn neg_ref(&self) -> Self {
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        if self.order == 1 {
            return Ok(other.scale(&self.coeffs[0]));
        }
        if other.order == 1 {
            return Ok(self.scale(&other.coeffs[0]));
        }
        if self.order != other.order {
            let (a, b) = self.lifted_pair(other)?;
            return a.checked_mul(&b);
        }
        let c = ctx(self.order);
        let phi = c.phi;
        let mut prod = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<BigRational> = prod[..phi].to_vec();
        for (k, q) in prod.iter().enumerate().skip(phi) {
            if q.is_zero() {
                continue;
            }
            for (dst, &v) in out.iter_mut().zip(&c.powers[k % c.n as usize]) {
                if v != 0 {
                    *dst += q * BigRational::from_integer(BigInt::from(v));
                }
            }
        }
        Ok(CycNumber {
            order: self.order,
            coeffs: out,
        })
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|a| a * q).collect(),
        }
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        if self.order <= 2 {
            return self.clone();
        }
        let c = ctx(self.order);
        let n = self.order as usize;
        let mut out = vec![BigRational::zero(); c.phi];
        for (j, q) in self.coeffs.iter().enumerate() {
            if q.is_zero() {
                continue;
            }
            for (dst, &v) in out.iter_mut().zip(&c.powers[(n - j) % n]) {
                if v != 0 {
                    *dst += q * BigRational::from_integer(BigInt::from(v));
                }
            }
        }
        CycNumber {
            order: self.order,
            coeffs: out,
        }
    }

    /// Multiplicative inverse, solving the φ×φ rational system for a·x = 1.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Self::from_rational(self.coeffs[0].recip()).lift(self.order);
        }
        let c = ctx(self.order);
        let phi = c.phi;
        // column j = self·ζ^j
        let mut cols = Vec::with_capacity(phi);
        for j in 0..phi {
            cols.push(self.checked_mul(&CycNumber::zeta(self.order, j as i64)?)?.coeffs);
        }
        let mut aug: Vec<Vec<BigRational>> = (0..phi)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..phi).map(|j| cols[j][r].clone()).collect();
                row.push(if r == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for col in 0..phi {
            let piv = (col..phi)
                .find(|&r| !aug[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            aug.swap(col, piv);
            let p = aug[col][col].clone();
            for v in aug[col].iter_mut() {
                *v /= &p;
            }
            for r in 0..phi {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for k in col..=phi {
                        let t = &aug[col][k] * &f;
                        aug[r][k] -= t;
                    }
                }
            }
        }
        Ok(CycNumber {
            order: self.order,
            coeffs: aug.into_iter().map(|row| row[phi].clone()).collect(),
        })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = CycNumber::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&b)?;
            }
            e >>= 1;
            if e > 0 {
                b = b.checked_mul(&b)?;
            }
        }
        Ok(acc)
    }

    /// The exponent k with self = ζ_M^k for M = lcm(order, 2), if self is a
    /// root of unity in its field.
    pub fn root_of_unity_exponent(&self) -> Option<(i64, u32)> {
        let m = lcm_order(self.order, 2).ok()?;
        (0..m as i64)
            .find(|&k| CycNumber::zeta(m, k).map(|z| z == *self).unwrap_or(false))
            .map(|k| (k, m))
    }

    /// Nonzero (coefficient, exponent) pairs of the reduced form.
    pub fn terms(&self) -> Vec<(BigRational, u32)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(e, q)| (q.clone(), e as u32))
            .collect()
    }

    /// Hashable identity of this number at a fixed order.
    pub fn key_at(&self, order: u32) -> Result<Vec<BigRational>> {
        Ok(self.lift(order)?.coeffs)
    }
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        if self.is_rational() && other.is_rational() {
            return self.coeffs[0] == other.coeffs[0];
        }
        match self.lifted_pair(other) {
            Ok((a, b)) => a.coeffs == b.coeffs,
            Err(_) => false,
        }
    }
}

impl Eq for CycNumber {}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (q, e)) in terms.iter().enumerate() {
            let neg = q.is_negative();
            let mag = q.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let z = match e {
                0 => String::new(),
                1 => format!("ζ{}", self.order),
                _ => format!("ζ{}^{}", self.order, e),
            };
            if z.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", z)?;
            } else {
                write!(f, "{}*{}", mag, z)?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&CycNumber> for &CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: &CycNumber) -> CycNumber {
                self.$checked(rhs).expect("cyclotomic order exceeds cap")
            }
        }
        impl $tr<CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: CycNumber) -> CycNumber {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&CycNumber> for CycNumber {
            type Output = CycNumber;
            fn $m(self, rhs: &CycNumber) -> CycNumber {
                (&self).$m(rhs)
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        self.neg_ref()
    }
}

impl Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        self.neg_ref()
    }
}

impl From<i64> for CycNumber {
    fn from(n: i64) -> Self {
        CycNumber::from_integer(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(105), 48);
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn zeta_power_wraps() {
        for n in 1..=60u32 {
            assert!(CycNumber::zeta(n, 1).unwrap().pow(n as i64).unwrap().is_one(), "n = {n}");
            assert!(CycNumber::zeta(n, n as i64).unwrap().is_one());
        }
    }

    #[test]
    fn examples() {
        let i = CycNumber::zeta(4, 1).unwrap();
        assert_eq!(&i * &i, CycNumber::from_integer(-1));
        let w = CycNumber::zeta(3, 1).unwrap();
        let s = CycNumber::one() + &w + &w * &w;
        assert!(s.is_zero());
        assert_eq!(
            CycNumber::from_integer(2).inv().unwrap(),
            CycNumber::from_frac(1, 2).unwrap()
        );
    }

    #[test]
    fn mixed_orders_lift() {
        let a = CycNumber::zeta(4, 1).unwrap();
        let b = CycNumber::zeta(6, 1).unwrap();
        let c = &a * &b;
        assert_eq!(c.order(), 12);
        assert_eq!(c, CycNumber::zeta(12, 5).unwrap());
        // ζ_6^3 = -1 = ζ_4^2
        assert_eq!(b.pow(3).unwrap(), a.pow(2).unwrap());
    }

    #[test]
    fn inverse_and_conj() {
        let z = CycNumber::zeta(12, 1).unwrap();
        let a = CycNumber::from_integer(3) + &z * &z - &z.pow(5).unwrap();
        let inv = a.inv().unwrap();
        assert!((&a * &inv).is_one());
        assert_eq!(z.conj(), z.inv().unwrap());
        assert_eq!(CycNumber::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn cap_is_enforced() {
        let a = CycNumber::zeta(120, 1).unwrap();
        let b = CycNumber::zeta(7, 1).unwrap();
        assert!(matches!(a.checked_mul(&b), Err(Error::Capacity { .. })));
        assert!(matches!(CycNumber::zeta(121, 1), Err(Error::Capacity { .. })));
    }

    #[test]
    fn root_exponent_detection() {
        let z = CycNumber::zeta(3, 1).unwrap();
        assert_eq!((-z).root_of_unity_exponent(), Some((5, 6)));
        assert_eq!(CycNumber::from_integer(2).root_of_unity_exponent(), None);
    }

    #[test]
    fn display() {
        let z = CycNumber::zeta(4, 1).unwrap();
        assert_eq!((CycNumber::from_frac(1, 2).unwrap() - z).to_string(), "1/2 - ζ4");
        assert_eq!(CycNumber::zero().to_string(), "0");
    }
}
