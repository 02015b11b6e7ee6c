//! The groupoid of integer polynomials generated from `{0, 1}` by
//! `(S, T) -> (1 - x) S + x T`: star-basis coordinates, exact membership,
//! level enumeration and threshold polynomials.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::interval::{rat_to_f64, RationalInterval};
use crate::poly::IntPolynomial;
use crate::Rat;

/// Largest basis-lifting level tried when producing a member's witness.
const MAX_LIFT: usize = 4096;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum QpolyError {
    #[error("level {n} is below the degree {deg}")]
    LevelTooLow { n: usize, deg: usize },
    #[error("level {n} has {count} polynomials, above the budget of {budget}")]
    Budget { n: usize, count: String, budget: usize },
    #[error("parameters must lie strictly between 0 and 1")]
    Range,
}

/// `(1 - x) S + x T`.
pub fn star_x(s: &IntPolynomial, t: &IntPolynomial) -> IntPolynomial {
    let one_minus = IntPolynomial::from_i64(&[1, -1]);
    &(&one_minus * s) + &(&IntPolynomial::x() * t)
}

fn pow_poly(p: &IntPolynomial, k: usize) -> IntPolynomial {
    let mut r = IntPolynomial::constant(1);
    for _ in 0..k {
        r = &r * p;
    }
    r
}

/// Coordinates of a polynomial in the basis `x^k (1 - x)^{n - k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarBasis {
    pub n: usize,
    pub coeffs: Vec<BigInt>,
}

impl StarBasis {
    /// `0 <= f_k <= C(n, k)` for every `k`.
    pub fn within_binomial_bounds(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| !c.is_negative() && c <= &binomial(BigInt::from(self.n), BigInt::from(k)))
    }

    /// Coordinates at level `n + 1` by the Pascal rule `f_k + f_{k-1}`.
    pub fn lift(&self) -> StarBasis {
        let n = self.n + 1;
        let coeffs = (0..=n)
            .map(|k| {
                let a = self.coeffs.get(k).cloned().unwrap_or_default();
                let b = if k > 0 { self.coeffs[k - 1].clone() } else { BigInt::zero() };
                a + b
            })
            .collect();
        StarBasis { n, coeffs }
    }
}

/// Substituting `x = t / (1 + t)` and clearing `(1 + t)^n` turns
/// `sum f_k x^k (1 - x)^{n-k}` into `sum f_k t^k`, so the coordinates are the
/// coefficients of `sum_i a_i t^i (1 + t)^{n-i}`.
pub fn to_star_basis(f: &IntPolynomial, n: usize) -> Result<StarBasis, QpolyError> {
    let deg = if f.is_zero() { 0 } else { f.degree() };
    if n < deg {
        return Err(QpolyError::LevelTooLow { n, deg });
    }
    let one_plus = IntPolynomial::from_i64(&[1, 1]);
    let mut acc = IntPolynomial::zero();
    for (i, a) in f.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        acc = &acc + &(&IntPolynomial::monomial(a.clone(), i) * &pow_poly(&one_plus, n - i));
    }
    Ok(StarBasis { n, coeffs: (0..=n).map(|k| acc.coeff(k)).collect() })
}

pub fn from_star_basis(b: &StarBasis) -> IntPolynomial {
    let one_minus = IntPolynomial::from_i64(&[1, -1]);
    let mut acc = IntPolynomial::zero();
    for (k, c) in b.coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        acc = &acc + &(&IntPolynomial::monomial(c.clone(), k) * &pow_poly(&one_minus, b.n - k));
    }
    acc
}

/// Why a polynomial fails the range condition on `(0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonMemberWitness {
    /// `f(0)` or `f(1)` is not 0 or 1.
    Endpoint { at: Rat, value: Rat },
    /// A rational point in `(0, 1)` where `f` is outside `(0, 1)`.
    Point { at: Rat, value: Rat },
    /// An irrational critical point, isolated in `interval`, where `f` equals
    /// `value` (0 or 1) exactly.
    CriticalRoot { interval: RationalInterval, value: Rat },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipVerdict {
    /// Coordinates at `level` lie within the binomial bounds.
    Member { level: usize, basis: StarBasis },
    NonMember(NonMemberWitness),
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipVerdict::Member { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            MembershipVerdict::Member { level, .. } => json!({"member": true, "witness_level": level}),
            MembershipVerdict::NonMember(w) => {
                let (kind, at, value) = match w {
                    NonMemberWitness::Endpoint { at, value } => ("endpoint", at.to_string(), value.to_string()),
                    NonMemberWitness::Point { at, value } => ("point", at.to_string(), value.to_string()),
                    NonMemberWitness::CriticalRoot { interval, value } => {
                        ("critical-root", format!("[{}, {}]", interval.lo, interval.hi), value.to_string())
                    }
                };
                json!({"member": false, "witness_kind": kind, "witness_point": at, "value": value})
            }
        }
    }
}

/// Decide membership exactly. The range condition `0 < f < 1` on `(0, 1)` is
/// checked at the real critical points of `f` in `(0, 1)` once `f(0)` and
/// `f(1)` are known to be 0 or 1; members then get the least level whose
/// star-basis coordinates are within the binomial bounds.
pub fn membership(f: &IntPolynomial) -> MembershipVerdict {
    if f.is_zero() || (f.degree() == 0 && f.coeff(0).is_one()) {
        let basis = to_star_basis(f, 0).expect("level 0 fits a constant");
        return MembershipVerdict::Member { level: 0, basis };
    }
    let zero = Rat::zero();
    let one = Rat::one();
    for at in [&zero, &one] {
        let v = f.eval_rat(at);
        if v != zero && v != one {
            return MembershipVerdict::NonMember(NonMemberWitness::Endpoint { at: at.clone(), value: v });
        }
    }
    if f.degree() >= 2 {
        if let Some(w) = range_violation(f) {
            return MembershipVerdict::NonMember(w);
        }
    }
    let mut b = to_star_basis(f, f.degree()).expect("level equals degree");
    while !b.within_binomial_bounds() {
        if b.n >= MAX_LIFT {
            unreachable!("range condition holds, so some level up to {MAX_LIFT} certifies membership");
        }
        b = b.lift();
    }
    MembershipVerdict::Member { level: b.n, basis: b }
}

/// A critical point in `(0, 1)` where `f` leaves `(0, 1)`, if any.
fn range_violation(f: &IntPolynomial) -> Option<NonMemberWitness> {
    let zero = Rat::zero();
    let one = Rat::one();
    let d = f.derivative();
    let p = d.squarefree_part();
    let f1 = f - &IntPolynomial::constant(1);
    let touch0 = f.gcd(&p);
    let touch1 = f1.gcd(&p);
    for iv in p.real_root_intervals(&zero, &one) {
        if iv.hi <= zero || iv.lo >= one {
            continue;
        }
        if iv.lo == iv.hi {
            let v = f.eval_rat(&iv.lo);
            if v <= zero || v >= one {
                return Some(NonMemberWitness::Point { at: iv.lo.clone(), value: v });
            }
            continue;
        }
        if let Some(w) = classify_critical(f, &p, &touch0, &touch1, iv) {
            return Some(w);
        }
    }
    None
}

fn has_root_in(g: &IntPolynomial, iv: &RationalInterval) -> bool {
    if g.is_zero() || g.degree() == 0 {
        return false;
    }
    let seq = g.squarefree_part().sturm_sequence();
    IntPolynomial::count_roots_sturm(&seq, &iv.lo, &iv.hi) > 0
}

/// Sign of `f` and `f - 1` at the unique root of `p` inside `iv`, refining by
/// bisection. Equality is settled by common roots with `p`.
fn classify_critical(
    f: &IntPolynomial,
    p: &IntPolynomial,
    touch0: &IntPolynomial,
    touch1: &IntPolynomial,
    mut iv: RationalInterval,
) -> Option<NonMemberWitness> {
    let zero = Rat::zero();
    let one = Rat::one();
    for (g, v) in [(touch0, &zero), (touch1, &one)] {
        if has_root_in(g, &iv) {
            let g = g.squarefree_part();
            if g.degree() == 1 {
                let at = Rat::new(-g.coeff(0), g.coeff(1));
                return Some(NonMemberWitness::Point { at, value: v.clone() });
            }
            return Some(NonMemberWitness::CriticalRoot { interval: iv, value: v.clone() });
        }
    }
    let two = Rat::from_integer(2.into());
    loop {
        let e = f.eval_interval(&iv);
        if e.lo > zero && e.hi < one {
            return None;
        }
        if e.hi < zero || e.lo > one {
            let at = iv.mid();
            let value = f.eval_rat(&at);
            return Some(NonMemberWitness::Point { at, value });
        }
        let m = (&iv.lo + &iv.hi) / &two;
        let pm = p.eval_rat(&m);
        if pm.is_zero() {
            let value = f.eval_rat(&m);
            return (value <= zero || value >= one).then_some(NonMemberWitness::Point { at: m, value });
        }
        let plo = p.eval_rat(&iv.lo);
        iv = if plo.signum() != pm.signum() {
            RationalInterval::new(iv.lo.clone(), m)
        } else {
            RationalInterval::new(m, iv.hi.clone())
        };
    }
}

/// `prod_k (1 + C(n, k))`.
pub fn level_count(n: usize) -> BigInt {
    (0..=n).map(|k| binomial(BigInt::from(n), BigInt::from(k)) + 1).product()
}

/// Every polynomial of level `n`: all `sum b_k x^k (1 - x)^{n-k}` with
/// `0 <= b_k <= C(n, k)`, in standard form and sorted.
pub fn enumerate_level(n: usize, budget: usize) -> Result<Vec<IntPolynomial>, QpolyError> {
    let count = level_count(n);
    if count > BigInt::from(budget) {
        return Err(QpolyError::Budget { n, count: count.to_string(), budget });
    }
    let bounds: Vec<i64> = (0..=n).map(|k| binomial(n as i64, k as i64)).collect();
    let basis: Vec<IntPolynomial> = (0..=n)
        .map(|k| &IntPolynomial::monomial(1, k) * &pow_poly(&IntPolynomial::from_i64(&[1, -1]), n - k))
        .collect();
    let firsts: Vec<i64> = (0..=bounds[0]).collect();
    let mut out: Vec<IntPolynomial> = firsts
        .par_iter()
        .flat_map_iter(|&b0| {
            let mut acc = vec![(poly_scale(&basis[0], b0))];
            for k in 1..=n {
                acc = acc
                    .into_iter()
                    .flat_map(|p| (0..=bounds[k]).map(move |b| (p.clone(), b)))
                    .map(|(p, b)| &p + &poly_scale(&basis[k], b))
                    .collect();
            }
            acc
        })
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

fn poly_scale(p: &IntPolynomial, k: i64) -> IntPolynomial {
    p.scale(&BigInt::from(k))
}

/// Level `n` of the closure of `{0, 1}` under `star_x`, built directly.
pub fn closure_level(n: usize) -> Vec<IntPolynomial> {
    let mut level: BTreeSet<Vec<BigInt>> = [vec![], vec![BigInt::one()]].into_iter().collect();
    for _ in 0..n {
        let cur: Vec<IntPolynomial> = level.iter().map(|c| IntPolynomial::new(c.clone())).collect();
        level = cur
            .par_iter()
            .flat_map_iter(|s| cur.iter().map(move |t| star_x(s, t).coeffs().to_vec()).collect::<Vec<_>>())
            .collect();
    }
    let mut v: Vec<IntPolynomial> = level.into_iter().map(IntPolynomial::new).collect();
    v.sort();
    v
}

/// A threshold polynomial and its level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Threshold {
    pub n: usize,
    pub poly: IntPolynomial,
}

/// `t(x) = sum_{i <= floor(gamma n)} C(n, i) x^i (1 - x)^{n-i}` with
/// `n = ceil(-ln(eps) / (2 eps^2))`, natural logarithm.
pub fn threshold_poly(gamma: &Rat, eps: &Rat) -> Result<Threshold, QpolyError> {
    let z = Rat::zero();
    let o = Rat::one();
    if gamma <= &z || gamma >= &o || eps <= &z || eps >= &o {
        return Err(QpolyError::Range);
    }
    let e = rat_to_f64(eps);
    let n = (-e.ln() / (2.0 * e * e)).ceil().max(1.0) as usize;
    let cut = (gamma * Rat::from_integer(BigInt::from(n))).floor().to_integer().to_usize().unwrap_or(0);
    let coeffs =
        (0..=n).map(|i| if i <= cut { binomial(BigInt::from(n), BigInt::from(i)) } else { BigInt::zero() }).collect();
    Ok(Threshold { n, poly: from_star_basis(&StarBasis { n, coeffs }) })
}

/// Members among all integer polynomials of exactly `degree` with every
/// coefficient in `[-bound, bound]`. A bounded search, not a complete count.
#[derive(Clone, Debug)]
pub struct Census {
    pub degree: usize,
    pub bound: i64,
    pub checked: usize,
    pub members: Vec<IntPolynomial>,
}

pub fn census(degree: usize, bound: i64) -> Census {
    let width = (2 * bound + 1) as usize;
    let total = width.pow(degree as u32 + 1);
    let mut members: Vec<IntPolynomial> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut t = code;
            let c: Vec<i64> = (0..=degree)
                .map(|_| {
                    let v = (t % width) as i64 - bound;
                    t /= width;
                    v
                })
                .collect();
            // the zero polynomial counts as the constant of degree 0
            if degree > 0 && c[degree] == 0 {
                return None;
            }
            let p = IntPolynomial::from_i64(&c);
            membership(&p).is_member().then_some(p)
        })
        .collect();
    members.sort();
    Census { degree, bound, checked: total, members }
}

/// Low-degree-first coefficient list.
pub fn coeff_list(p: &IntPolynomial) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        IntPolynomial::parse(s).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn star_examples() {
        assert_eq!(star_x(&IntPolynomial::zero(), &IntPolynomial::constant(1)), IntPolynomial::x());
        let p6 = p("-x^2+2x");
        let p5 = p("-x^2+1");
        assert_eq!(star_x(&p6, &p5), p("-3x^2+3x"));
        assert_eq!(star_x(&p6, &p6), p6);
    }

    #[test]
    fn basis_examples() {
        assert_eq!(to_star_basis(&IntPolynomial::constant(1), 2).unwrap().coeffs, ints(&[1, 2, 1]));
        assert_eq!(to_star_basis(&IntPolynomial::x(), 1).unwrap().coeffs, ints(&[0, 1]));
        assert_eq!(to_star_basis(&p("x^2-x+1"), 2).unwrap().coeffs, ints(&[1, 1, 1]));
        assert!(to_star_basis(&p("x^3"), 2).is_err());
    }

    #[test]
    fn membership_examples() {
        assert!(membership(&p("x^2-x+1")).is_member());
        assert_eq!(
            membership(&p("4x^2-4x+1")),
            MembershipVerdict::NonMember(NonMemberWitness::Point { at: Rat::new(1.into(), 2.into()), value: Rat::zero() })
        );
        assert_eq!(
            membership(&p("5x^2-5x+1")),
            MembershipVerdict::NonMember(NonMemberWitness::Point {
                at: Rat::new(1.into(), 2.into()),
                value: Rat::new((-1).into(), 4.into())
            })
        );
        assert!(matches!(membership(&p("2x")), MembershipVerdict::NonMember(NonMemberWitness::Endpoint { .. })));
    }

    #[test]
    fn level_examples() {
        assert_eq!(enumerate_level(0, 100).unwrap().len(), 2);
        assert_eq!(enumerate_level(1, 100).unwrap().len(), 4);
        let l2 = enumerate_level(2, 100).unwrap();
        assert_eq!(l2.len(), 12);
        assert_eq!(l2.iter().filter(|q| q.degree() == 2).count(), 8);
        for n in 0..=3 {
            assert_eq!(enumerate_level(n, 1000).unwrap(), closure_level(n), "level {n}");
        }
        assert_eq!(level_count(4), BigInt::from(700));
        assert!(enumerate_level(4, 10).is_err());
    }

    #[test]
    fn threshold_examples() {
        let half = Rat::new(1.into(), 2.into());
        let t = threshold_poly(&half, &Rat::new(1.into(), 4.into())).unwrap();
        assert_eq!(t.n, 12);
        assert_eq!(t.poly.eval_rat(&Rat::zero()), Rat::one());
        assert!(t.poly.eval_rat(&Rat::new(1.into(), 4.into())) >= Rat::new(3.into(), 4.into()));
        assert!(t.poly.eval_rat(&Rat::new(3.into(), 4.into())) <= Rat::new(1.into(), 4.into()));
        assert!(membership(&t.poly).is_member());
    }
}
