//! Strong PV classification, explicit quadratic and cubic families, the
//! polygon constants `lambda_n` and fundamental units of real quadratic rings.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::contfrac::{surd_continued_fraction, QuadraticSurd};
use crate::field::{make_context, make_context_at, AlgebraError, Context, FieldElement, MAX_DEGREE};
use crate::poly::IntPolynomial;
use crate::Rat;

#[derive(Debug, thiserror::Error)]
pub enum SpvError {
    #[error("parameters out of range: {0}")]
    ParamRange(String),
    #[error("context must be a real quadratic field")]
    NotRealQuadratic,
    #[error("no unit found among the first {0} convergents")]
    NoUnit(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpvVerdict {
    #[serde(rename = "sPV-trivial")]
    SpvTrivial,
    #[serde(rename = "sPV-nontrivial")]
    SpvNontrivial,
    #[serde(rename = "not-sPV")]
    NotSpv,
}

impl SpvVerdict {
    pub fn is_spv(self) -> bool {
        self != SpvVerdict::NotSpv
    }
}

/// The set every convex closure equals: `[0,1]`, the real line or the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConvexityRegion {
    #[serde(rename = "unit-interval")]
    UnitInterval,
    #[serde(rename = "real-line")]
    RealLine,
    #[serde(rename = "complex-plane")]
    ComplexPlane,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpvReport {
    pub is_algebraic_integer: bool,
    pub degree: usize,
    pub unit_interval_conjugate_count: usize,
    pub verdict: SpvVerdict,
    pub convexity_region: ConvexityRegion,
    /// `"uniformly-discrete"` for sPV parameters; otherwise `"unknown"`, since
    /// failing the sPV test does not by itself imply density.
    pub discreteness: String,
}

pub fn convexity_region(ctx: &Context) -> ConvexityRegion {
    let i = ctx.lambda_index();
    if !ctx.is_real_root(i) {
        return ConvexityRegion::ComplexPlane;
    }
    let l = FieldElement::lambda(ctx);
    let ge0 = l.sign_against(&Rat::zero(), i).map(|o| o != Ordering::Less).unwrap_or(false);
    let le1 = l.sign_against(&Rat::one(), i).map(|o| o != Ordering::Greater).unwrap_or(false);
    if ge0 && le1 {
        ConvexityRegion::UnitInterval
    } else {
        ConvexityRegion::RealLine
    }
}

pub fn classify_spv(ctx: &Context) -> SpvReport {
    let li = ctx.lambda_index();
    let lc = ctx.conjugate_index(li);
    let others: Vec<usize> = (0..ctx.root_count()).filter(|&i| i != li && i != lc).collect();
    let unit = ctx.real_unit_interval_indices();
    let k = others.iter().filter(|i| unit.contains(i)).count();
    let verdict = if k < others.len() {
        SpvVerdict::NotSpv
    } else if k == 0 {
        SpvVerdict::SpvTrivial
    } else {
        SpvVerdict::SpvNontrivial
    };
    SpvReport {
        is_algebraic_integer: true,
        degree: ctx.degree(),
        unit_interval_conjugate_count: k,
        verdict,
        convexity_region: convexity_region(ctx),
        discreteness: if verdict.is_spv() { "uniformly-discrete" } else { "unknown" }.into(),
    }
}

/// Context for the negative root of `x^2 + m x - n`, which is sPV with
/// conjugate in `(0,1)` whenever `0 < n <= m`.
pub fn quadratic_from_mn(m: i64, n: i64) -> Result<Context, SpvError> {
    if !(0 < n && n <= m) {
        return Err(SpvError::ParamRange(format!("need 0 < n <= m, got m = {m}, n = {n}")));
    }
    let p = IntPolynomial::from_i64(&[-n, m, 1]);
    // The roots have product -n < 0, so index 0 is the negative one.
    Ok(make_context_at(&p, 0)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicParams {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl CubicParams {
    /// Discriminant of `x^3 + a x^2 + b x + c`.
    pub fn discriminant(&self) -> BigInt {
        let (a, b, c) = (BigInt::from(self.a), BigInt::from(self.b), BigInt::from(self.c));
        &a * &a * &b * &b - 4 * &b * &b * &b - 4 * &a * &a * &a * &c - 27 * &c * &c + 18 * &a * &b * &c
    }

    pub fn polynomial(&self) -> IntPolynomial {
        IntPolynomial::from_i64(&[self.c, self.b, self.a, 1])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CubicMode {
    Nonreal,
    Real,
}

#[derive(Clone, Debug)]
pub struct CubicVerdict {
    pub holds: bool,
    pub discriminant: BigInt,
    /// Context for the designated root; `None` when the conditions fail or
    /// the cubic is reducible.
    pub context: Option<Context>,
}

/// Sufficient sPV conditions for cubics: the non-real root when
/// `c < 0, a + b + c >= 0, disc < 0`, or the least real root when
/// `c > 0, a + b + c >= 0, -2a - 3 < b < 0, disc > 0`.
pub fn cubic_spv_check(params: CubicParams, mode: CubicMode) -> CubicVerdict {
    let CubicParams { a, b, c } = params;
    let disc = params.discriminant();
    let holds = match mode {
        CubicMode::Nonreal => c < 0 && a + b + c >= 0 && disc.is_negative(),
        CubicMode::Real => c > 0 && a + b + c >= 0 && -2 * a - 3 < b && b < 0 && disc.is_positive(),
    };
    let context = if holds {
        let p = params.polynomial();
        match mode {
            // roots are ordered by (re, im); the upper member of the pair
            // comes second among the two non-real roots
            CubicMode::Nonreal => make_context_at(&p, 0).ok().and_then(|ctx| {
                let i = (0..3).filter(|&i| !ctx.is_real_root(i)).max_by(|&x, &y| {
                    ctx.root_f64(x).im.total_cmp(&ctx.root_f64(y).im)
                })?;
                Some(ctx.with_lambda_index(i))
            }),
            CubicMode::Real => make_context_at(&p, 0).ok(),
        }
    } else {
        None
    };
    CubicVerdict { holds, discriminant: disc, context }
}

#[derive(Clone, Debug)]
pub struct PolygonLambda {
    pub n: usize,
    /// Primitive integer minimal polynomial with positive leading coefficient.
    pub minpoly: IntPolynomial,
    pub algebraic_integer: bool,
    pub value: f64,
    pub spv: bool,
    /// Present when `lambda_n` is an algebraic integer of degree at most 8.
    pub context: Option<Context>,
}

/// Coprimality window test for odd `n`: `lambda_n` is sPV iff no `j` coprime
/// to `n` with `n/3 <= j <= 2n/3` exists apart from `(n +- 1)/2`.
pub fn polygon_window_test(n: usize) -> bool {
    assert!(n % 2 == 1 && n >= 3);
    !(1..n).any(|j| j.gcd(&n) == 1 && 3 * j >= n && 3 * j <= 2 * n && j != (n - 1) / 2 && j != (n + 1) / 2)
}

/// Minimal polynomial of `theta = 2 - 2 cos(pi/n) = 1/lambda_n`: the product
/// of `x - (2 - w^j - w^-j)` over `0 < j < n` coprime to `2n`, where `w` is a
/// primitive `2n`-th root of unity. Computed in `Z[t]/(t^2n - 1)` and reduced
/// modulo the cyclotomic polynomial, where every coefficient must be an integer.
fn theta_minpoly(n: usize) -> IntPolynomial {
    let big_n = 2 * n;
    let phi = IntPolynomial::cyclotomic(big_n);
    // product coefficients, each an element of Z[t]/(t^N - 1)
    let mut prod: Vec<Vec<BigInt>> = vec![unit_vec(big_n, 0)];
    for j in (1..n).filter(|j| j.gcd(&big_n) == 1) {
        let mut next = vec![vec![BigInt::zero(); big_n]; prod.len() + 1];
        for (i, c) in prod.iter().enumerate() {
            for (k, v) in c.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                next[i + 1][k] += v;
                // subtract c * (2 - t^j - t^(N-j))
                next[i][k] -= 2 * v;
                next[i][(k + j) % big_n] += v;
                next[i][(k + big_n - j) % big_n] += v;
            }
        }
        prod = next;
    }
    let coeffs = prod
        .into_iter()
        .map(|c| {
            let r = IntPolynomial::new(c).rem_monic(&phi);
            assert!(r.degree() == 0, "coefficient of the theta polynomial is not rational");
            r.coeff(0)
        })
        .collect();
    IntPolynomial::new(coeffs)
}

fn unit_vec(n: usize, k: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[k] = BigInt::one();
    v
}

/// `lambda_n = 1 / (2 (1 - cos(pi/n)))`, its minimal polynomial and sPV verdict.
pub fn polygon_lambda(n: usize) -> Result<PolygonLambda, SpvError> {
    if n < 3 {
        return Err(SpvError::ParamRange(format!("polygon order must be at least 3, got {n}")));
    }
    let g = theta_minpoly(n);
    let g0 = g.coeff(0);
    let algebraic_integer = g0.abs().is_one();
    let minpoly = g.reversed().primitive();
    let value = 1.0 / (2.0 * (1.0 - (std::f64::consts::PI / n as f64).cos()));
    // the other conjugates are 1/(2 - 2cos(j pi/n)), inside (0,1) iff 3j > n
    let spv = algebraic_integer && (2..n).filter(|j| j.gcd(&(2 * n)) == 1).all(|j| 3 * j > n);
    let context = if algebraic_integer && minpoly.degree() <= MAX_DEGREE {
        Some(make_context(&minpoly, Complex::new(value, 0.0))?)
    } else {
        None
    };
    Ok(PolygonLambda { n, minpoly, algebraic_integer, value, spv, context })
}

/// The least unit greater than 1 of `Z[lambda]` for a real quadratic
/// context, measured at the designated embedding.
///
/// Continued-fraction convergents of `-lambda'` give some unit `w > 1`. Any
/// unit `1 < u <= w` has `|u'| < 1`, so `|b| = |u - u'| / sqrt(disc)` is at
/// most `(w + 1) / sqrt(disc)`; all such `b` are then searched exhaustively.
pub fn fundamental_unit(ctx: &Context) -> Result<FieldElement, SpvError> {
    if ctx.degree() != 2 || !ctx.lambda_is_real() {
        return Err(SpvError::NotRealQuadratic);
    }
    let mp = ctx.minpoly();
    let (bb, cc) = (mp.coeff(1), mp.coeff(0));
    let disc: BigInt = &bb * &bb - BigInt::from(4) * &cc;
    let li = ctx.lambda_index();
    // roots are sorted ascending; lambda' is the larger root iff li == 0
    let conj_larger = li == 0;
    // lambda' = (-B + s sqrt D)/2, so -lambda' = (B - s sqrt D)/2
    let surd = if conj_larger {
        QuadraticSurd::new(-bb.clone(), disc.clone(), -2)
    } else {
        QuadraticSurd::new(bb.clone(), disc.clone(), 2)
    }
    .map_err(|_| SpvError::NotRealQuadratic)?;
    let cf = surd_continued_fraction(&surd).map_err(|_| SpvError::NotRealQuadratic)?;
    let norm = |a: &BigInt, b: &BigInt| a * a - &bb * a * b + &cc * b * b;
    let limit = 400;
    let mut w = None;
    for (p, q) in cf.convergents(limit) {
        if q.is_positive() && norm(&p, &q).abs().is_one() {
            w = Some(orient(FieldElement::new(ctx, vec![p, q])?, li));
            break;
        }
    }
    let w = w.ok_or(SpvError::NoUnit(limit))?;
    let wv = w.shadow(li).re;
    let bmax = ((wv + 1.0) / crate::poly::bigint_to_f64(&disc).sqrt()).floor() as i64 + 1;
    let mut best = w;
    for b in -bmax..=bmax {
        for a in norm_solutions(&bb, &cc, &BigInt::from(b)) {
            let u = orient(FieldElement::new(ctx, vec![a, BigInt::from(b)])?, li);
            if u.sign_against(&Rat::one(), li)? == Ordering::Greater && u.cmp_at(&best, li)? == Ordering::Less {
                best = u;
            }
        }
    }
    Ok(best)
}

/// The least unit `u > 1` whose conjugate `u'` lies in `(0, 1)`: the
/// fundamental unit when its conjugate is positive, else its square.
pub fn window_unit(ctx: &Context) -> Result<FieldElement, SpvError> {
    let e = fundamental_unit(ctx)?;
    let j = 1 - ctx.lambda_index();
    if e.sign_at(j)? == Ordering::Greater {
        Ok(e)
    } else {
        Ok(&e * &e)
    }
}

/// Flip sign so the image at root `i` is positive.
fn orient(u: FieldElement, i: usize) -> FieldElement {
    if u.sign_at(i) == Ok(Ordering::Less) {
        u.neg()
    } else {
        u
    }
}

/// Integers `a` with `a^2 - B a b + C b^2 = +-1`.
fn norm_solutions(bb: &BigInt, cc: &BigInt, b: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    for t in [-1i64, 1] {
        // a = (B b +- sqrt(B^2 b^2 - 4 (C b^2 - t))) / 2
        let disc: BigInt = bb * bb * b * b - BigInt::from(4) * (cc * b * b - BigInt::from(t));
        if disc.is_negative() {
            continue;
        }
        let r = disc.sqrt();
        if &r * &r != disc {
            continue;
        }
        for s in [&r, &-&r] {
            let num = bb * b + s;
            if num.is_even() {
                let a: BigInt = num / 2;
                if !out.contains(&a) {
                    out.push(a);
                }
            }
        }
    }
    out
}

/// Numeric value of an element at the designated root, for reports.
pub fn value_of(x: &FieldElement) -> f64 {
    x.value_f64().re
}

pub fn to_i64_pair(x: &FieldElement) -> Option<(i64, i64)> {
    Some((x.coords()[0].to_i64()?, x.coords().get(1)?.to_i64()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(s: &str) -> IntPolynomial {
        IntPolynomial::parse(s).unwrap()
    }

    #[test]
    fn quadratic_family() {
        let c = quadratic_from_mn(3, 1).unwrap();
        let r = classify_spv(&c);
        assert_eq!(r.verdict, SpvVerdict::SpvNontrivial);
        assert_eq!(r.unit_interval_conjugate_count, 1);
        assert!((c.lambda_f64().re + (3.0 + 13f64.sqrt()) / 2.0).abs() < 1e-9);
        assert!(quadratic_from_mn(1, 2).is_err());
    }

    #[test]
    fn golden_ratio_is_not_spv() {
        let c = make_context(&ip("x^2-x-1"), Complex::new(1.6, 0.0)).unwrap();
        let r = classify_spv(&c);
        assert_eq!(r.verdict, SpvVerdict::NotSpv);
        assert_eq!(r.discreteness, "unknown");
        let five = make_context(&ip("x-5"), Complex::new(5.0, 0.0)).unwrap();
        assert_eq!(classify_spv(&five).verdict, SpvVerdict::SpvTrivial);
    }

    #[test]
    fn cubic_conditions() {
        let v = cubic_spv_check(CubicParams { a: 1, b: 0, c: -1 }, CubicMode::Nonreal);
        assert!(v.holds);
        let ctx = v.context.unwrap();
        assert!(ctx.lambda_f64().im > 0.0);
        assert_eq!(classify_spv(&ctx).verdict, SpvVerdict::SpvNontrivial);
        assert!(cubic_spv_check(CubicParams { a: 0, b: 1, c: -1 }, CubicMode::Nonreal).holds);
        let f = cubic_spv_check(CubicParams { a: 0, b: 0, c: -1 }, CubicMode::Nonreal);
        assert!(!f.holds);
        assert_eq!(f.discriminant, BigInt::from(-27));
    }

    #[test]
    fn polygon_table() {
        assert_eq!(polygon_lambda(3).unwrap().minpoly, ip("x-1"));
        assert_eq!(polygon_lambda(4).unwrap().minpoly, ip("2x^2-4x+1"));
        assert!(!polygon_lambda(4).unwrap().algebraic_integer);
        assert_eq!(polygon_lambda(5).unwrap().minpoly, ip("x^2-3x+1"));
        assert_eq!(polygon_lambda(6).unwrap().minpoly, ip("x^2-4x+1"));
        assert_eq!(polygon_lambda(7).unwrap().minpoly, ip("x^3-6x^2+5x-1"));
        assert_eq!(polygon_lambda(9).unwrap().minpoly, ip("x^3-9x^2+6x-1"));
        let p15 = polygon_lambda(15).unwrap();
        assert_eq!(p15.minpoly, ip("x^4-24x^3+26x^2-9x+1"));
        assert!((p15.value - 22.881).abs() < 1e-3);
    }

    #[test]
    fn fundamental_units() {
        let c = make_context(&ip("x^2+3x-2"), Complex::new(-3.56, 0.0)).unwrap();
        let u = fundamental_unit(&c).unwrap();
        // (1 - 2 lambda)^2 = 9 - 16 lambda, and 1 - 2 lambda has norm -1
        assert_eq!(u.coords_i64().unwrap(), vec![1, -2]);
        assert_eq!(u.norm(), BigInt::from(-1));
        let w = window_unit(&c).unwrap();
        assert_eq!(w.coords_i64().unwrap(), vec![9, -16]);
        assert_eq!(w.norm(), BigInt::one());
        let c = make_context(&ip("x^2-3x+1"), Complex::new(2.6, 0.0)).unwrap();
        let u = fundamental_unit(&c).unwrap();
        // phi = lambda - 1 when lambda = 1 + phi
        assert_eq!(u.coords_i64().unwrap(), vec![-1, 1]);
    }
}
