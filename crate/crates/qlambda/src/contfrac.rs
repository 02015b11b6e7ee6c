//! Periodic continued fractions of real quadratic surds `(P + sqrt D) / Q`.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::Rat;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CfError {
    #[error("D = {0} is a perfect square, the surd is rational")]
    PerfectSquare(BigInt),
    #[error("D must be positive")]
    NonPositive,
    #[error("denominator Q must be nonzero")]
    ZeroDenominator,
}

/// The real number `(p + sqrt(d)) / q`, with `q | d - p^2` after normalisation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticSurd {
    pub p: BigInt,
    pub d: BigInt,
    pub q: BigInt,
}

impl QuadraticSurd {
    pub fn new(p: impl Into<BigInt>, d: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, CfError> {
        let (p, d, q) = (p.into(), d.into(), q.into());
        if q.is_zero() {
            return Err(CfError::ZeroDenominator);
        }
        if !d.is_positive() {
            return Err(CfError::NonPositive);
        }
        let r = d.sqrt();
        if &r * &r == d {
            return Err(CfError::PerfectSquare(d));
        }
        let s = QuadraticSurd { p, d, q };
        Ok(s.normalized())
    }

    /// Rewrite so that `q` divides `d - p^2`, scaling by `|q|` if needed.
    fn normalized(self) -> Self {
        let QuadraticSurd { p, d, q } = self;
        if (&d - &p * &p).is_multiple_of(&q) {
            return QuadraticSurd { p, d, q };
        }
        let a = q.abs();
        QuadraticSurd { p: &p * &a, d: &d * &a * &a, q: &q * &a }
    }

    pub fn to_f64(&self) -> f64 {
        let f = |x: &BigInt| crate::poly::bigint_to_f64(x);
        (f(&self.p) + f(&self.d).sqrt()) / f(&self.q)
    }

    /// Sign of `x + y * self` for rationals `x`, `y`.
    pub fn sign_linear(&self, x: &Rat, y: &Rat) -> Ordering {
        // x + y (p + sqrt d)/q = (xq + yp)/q + (y/q) sqrt d
        let q = Rat::from_integer(self.q.clone());
        let a = x + y * Rat::from_integer(self.p.clone()) / &q;
        let b = y / &q;
        surd_sign(&a, &b, &self.d)
    }
}

/// Sign of `a + b sqrt(d)` for a non-square `d > 0`.
pub fn surd_sign(a: &Rat, b: &Rat, d: &BigInt) -> Ordering {
    let sa = a.cmp(&Rat::zero());
    let sb = b.cmp(&Rat::zero());
    if sb == Ordering::Equal {
        return sa;
    }
    if sa == Ordering::Equal || sa == sb {
        return sb;
    }
    // opposite signs: compare a^2 with b^2 d
    let lhs = a * a;
    let rhs = b * b * Rat::from_integer(d.clone());
    match lhs.cmp(&rhs) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicContinuedFraction {
    pub surd: QuadraticSurd,
    pub preperiod: Vec<BigInt>,
    pub period: Vec<BigInt>,
}

/// Continued fraction of a quadratic surd by the `(P, Q)` state recurrence
/// `a = floor((P + sqrt D) / Q)`, `P' = aQ - P`, `Q' = (D - P'^2) / Q`. The
/// expansion is periodic once a state repeats.
pub fn surd_continued_fraction(surd: &QuadraticSurd) -> Result<PeriodicContinuedFraction, CfError> {
    let s = QuadraticSurd::new(surd.p.clone(), surd.d.clone(), surd.q.clone())?;
    let d = s.d.clone();
    let r = d.sqrt();
    let mut p = s.p.clone();
    let mut q = s.q.clone();
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut quotients = Vec::new();
    loop {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            return Ok(PeriodicContinuedFraction {
                surd: s,
                preperiod: quotients[..start].to_vec(),
                period: quotients[start..].to_vec(),
            });
        }
        seen.insert((p.clone(), q.clone()), quotients.len());
        let a = if q.is_positive() {
            (&p + &r).div_floor(&q)
        } else {
            (-&p - &r - BigInt::one()).div_floor(&-&q)
        };
        let np = &a * &q - &p;
        let nq = (&d - &np * &np) / &q;
        quotients.push(a);
        p = np;
        q = nq;
    }
}

impl PeriodicContinuedFraction {
    /// Partial quotient `a_k`.
    pub fn quotient(&self, k: usize) -> BigInt {
        if k < self.preperiod.len() {
            self.preperiod[k].clone()
        } else {
            self.period[(k - self.preperiod.len()) % self.period.len()].clone()
        }
    }

    /// Convergents `(p_k, q_k)` for `k = 0..n`.
    pub fn convergents(&self, n: usize) -> Vec<(BigInt, BigInt)> {
        let (mut p2, mut p1) = (BigInt::zero(), BigInt::one());
        let (mut q2, mut q1) = (BigInt::one(), BigInt::zero());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.quotient(k);
            let p = &a * &p1 + &p2;
            let q = &a * &q1 + &q2;
            out.push((p.clone(), q.clone()));
            p2 = std::mem::replace(&mut p1, p);
            q2 = std::mem::replace(&mut q1, q);
        }
        out
    }

    /// Convergent `(p_k, q_k)`, including `k = -1` as `(1, 0)` and `k = -2`
    /// as `(0, 1)`.
    pub fn convergent(&self, k: i64) -> (BigInt, BigInt) {
        match k {
            -2 => (BigInt::zero(), BigInt::one()),
            -1 => (BigInt::one(), BigInt::zero()),
            _ => self.convergents(k as usize + 1).pop().unwrap(),
        }
    }

    /// `eta_k = (-1)^k (q_k mu - p_k)` as the pair `(a, b)` with value `a + b mu`.
    pub fn eta(&self, k: i64) -> (BigInt, BigInt) {
        let (p, q) = self.convergent(k);
        if k.rem_euclid(2) == 0 {
            (-p, q)
        } else {
            (p, -q)
        }
    }

    /// Sign of `a + b mu`.
    pub fn sign_linear(&self, a: &BigInt, b: &BigInt) -> Ordering {
        self.surd.sign_linear(&Rat::from_integer(a.clone()), &Rat::from_integer(b.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn sqrt17_expansion() {
        let s = QuadraticSurd::new(-3, 17, 2).unwrap();
        let cf = surd_continued_fraction(&s).unwrap();
        assert_eq!(cf.preperiod, ints(&[0]));
        assert_eq!(cf.period, ints(&[1, 1, 3]));
        let c = cf.convergents(8);
        assert_eq!(c[7], (BigInt::from(41), BigInt::from(73)));
        assert_eq!(c[5], (BigInt::from(9), BigInt::from(16)));
        assert_eq!(cf.eta(7), (BigInt::from(41), BigInt::from(-73)));
    }

    #[test]
    fn golden_expansion() {
        let s = QuadraticSurd::new(-1, 5, 2).unwrap();
        let cf = surd_continued_fraction(&s).unwrap();
        assert_eq!(cf.preperiod, ints(&[0]));
        assert_eq!(cf.period, ints(&[1]));
        let qs: Vec<BigInt> = cf.convergents(8).into_iter().map(|c| c.1).collect();
        assert_eq!(qs, ints(&[1, 1, 2, 3, 5, 8, 13, 21]));
    }

    #[test]
    fn negative_denominators_and_normalisation() {
        // -sqrt(2) = (0 + sqrt 2)/(-1) = [-2; 1, 1, 2, 2, ...]
        let cf = surd_continued_fraction(&QuadraticSurd::new(0, 2, -1).unwrap()).unwrap();
        let v: Vec<BigInt> = (0..6).map(|k| cf.quotient(k)).collect();
        assert_eq!(v, ints(&[-2, 1, 1, 2, 2, 2]));
        // (1 + sqrt 3)/3 needs rescaling since 3 does not divide 3 - 1
        let s = QuadraticSurd::new(1, 3, 3).unwrap();
        assert!((&s.d - &s.p * &s.p).is_multiple_of(&s.q));
        assert!((s.to_f64() - (1.0 + 3f64.sqrt()) / 3.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_squares() {
        assert_eq!(QuadraticSurd::new(0, 16, 1), Err(CfError::PerfectSquare(16.into())));
    }
}
