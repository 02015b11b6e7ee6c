//! Closed rational intervals and rectangular complex boxes.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::Rat;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RationalInterval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RationalInterval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        RationalInterval { lo: x.clone(), hi: x }
    }

    pub fn from_int(n: i64) -> Self {
        Self::point(Rat::from_integer(BigInt::from(n)))
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_interval(&self, other: &Self) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = (&self.lo).max(&other.lo).clone();
        let hi = (&self.hi).min(&other.hi).clone();
        (lo <= hi).then(|| RationalInterval { lo, hi })
    }

    pub fn hull(&self, other: &Self) -> Self {
        RationalInterval {
            lo: (&self.lo).min(&other.lo).clone(),
            hi: (&self.hi).max(&other.hi).clone(),
        }
    }

    /// Position relative to `q`: `Some(Less)` if entirely below, `Some(Greater)`
    /// if entirely above, `Some(Equal)` for the degenerate point `[q, q]`.
    pub fn compare_to(&self, q: &Rat) -> Option<Ordering> {
        if &self.hi < q {
            Some(Ordering::Less)
        } else if &self.lo > q {
            Some(Ordering::Greater)
        } else if &self.lo == q && &self.hi == q {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        RationalInterval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Self) -> Self {
        RationalInterval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Self {
        RationalInterval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn add_scalar(&self, c: &Rat) -> Self {
        RationalInterval { lo: &self.lo + c, hi: &self.hi + c }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_negative() {
            RationalInterval { lo: &self.hi * c, hi: &self.lo * c }
        } else {
            RationalInterval { lo: &self.lo * c, hi: &self.hi * c }
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = p.iter().min().unwrap().clone();
        let hi = p.iter().max().unwrap().clone();
        RationalInterval { lo, hi }
    }

    pub fn sqr(&self) -> Self {
        let a = &self.lo * &self.lo;
        let b = &self.hi * &self.hi;
        let hi = (&a).max(&b).clone();
        let lo = if self.contains(&Rat::zero()) { Rat::zero() } else { a.min(b) };
        RationalInterval { lo, hi }
    }

    /// Reciprocal; `None` when the interval contains zero.
    pub fn recip(&self) -> Option<Self> {
        if self.contains(&Rat::zero()) {
            return None;
        }
        Some(RationalInterval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn abs(&self) -> Self {
        if self.lo.is_negative() && self.hi.is_positive() {
            RationalInterval { lo: Rat::zero(), hi: (-&self.lo).max(self.hi.clone()) }
        } else if self.hi.is_negative() || self.hi.is_zero() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Largest absolute value of any point.
    pub fn mag(&self) -> Rat {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.mid())
    }
}

impl fmt::Debug for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Axis-aligned box `re × im` in the complex plane.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ComplexBox {
    pub re: RationalInterval,
    pub im: RationalInterval,
}

impl ComplexBox {
    pub fn real(re: RationalInterval) -> Self {
        ComplexBox { re, im: RationalInterval::point(Rat::zero()) }
    }

    pub fn point(re: Rat, im: Rat) -> Self {
        ComplexBox { re: RationalInterval::point(re), im: RationalInterval::point(im) }
    }

    pub fn width(&self) -> Rat {
        self.re.width().max(self.im.width())
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexBox { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        ComplexBox { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn add_real(&self, c: &Rat) -> Self {
        ComplexBox { re: self.re.add_scalar(c), im: self.im.clone() }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        ComplexBox { re: self.re.scale(c), im: self.im.scale(c) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        ComplexBox {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    /// Enclosure of `|z|^2`.
    pub fn norm_sqr(&self) -> RationalInterval {
        self.re.sqr().add(&self.im.sqr())
    }

    pub fn intersects(&self, o: &Self) -> bool {
        self.re.intersects(&o.re) && self.im.intersects(&o.im)
    }

    pub fn intersect(&self, o: &Self) -> Option<Self> {
        Some(ComplexBox { re: self.re.intersect(&o.re)?, im: self.im.intersect(&o.im)? })
    }

    pub fn contains_point(&self, re: &Rat, im: &Rat) -> bool {
        self.re.contains(re) && self.im.contains(im)
    }
}

pub fn rat_to_f64(q: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    if let Some(v) = q.to_f64() {
        if v.is_finite() && (v != 0.0 || q.is_zero()) {
            return v;
        }
    }
    // Scale big or tiny values through their bit lengths.
    let n = q.numer();
    let d = q.denom();
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift = nb - db;
    let scaled = if shift > 0 {
        Rat::new(n.clone(), d << (shift as u64))
    } else {
        Rat::new(n << ((-shift) as u64), d.clone())
    };
    scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift.clamp(-2000, 2000) as i32)
}

/// Exact rational with the value of a finite `f64`.
pub fn f64_to_rat(x: f64) -> Rat {
    Rat::from_float(x).unwrap_or_else(Rat::zero)
}

/// `floor(q * 2^bits) / 2^bits`
pub fn round_dyadic(q: &Rat, bits: u32) -> Rat {
    let scale = BigInt::one() << bits;
    let n = (q * Rat::from_integer(scale.clone())).floor().to_integer();
    Rat::new(n, scale)
}

/// Rational upper bound for `sqrt(v)`, accurate to about `2^-bits`.
pub fn sqrt_upper(v: &Rat, bits: u32) -> Rat {
    assert!(!v.is_negative());
    if v.is_zero() {
        return Rat::zero();
    }
    let scale = BigInt::one() << (2 * bits);
    let t = (v * Rat::from_integer(scale)).ceil().to_integer();
    let mut r = t.sqrt();
    if &r * &r < t {
        r += 1;
    }
    Rat::new(r, BigInt::one() << bits)
}

/// Rational lower bound for `sqrt(v)`, accurate to about `2^-bits`.
pub fn sqrt_lower(v: &Rat, bits: u32) -> Rat {
    assert!(!v.is_negative());
    let scale = BigInt::one() << (2 * bits);
    let t = (v * Rat::from_integer(scale)).floor().to_integer();
    Rat::new(t.sqrt(), BigInt::one() << bits)
}

/// Decimal rendering with `digits` significant digits, correctly rounded.
pub fn format_sig(q: &Rat, digits: usize) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let neg = q.is_negative();
    let a = q.abs();
    let ten = BigInt::from(10);
    let est = rat_to_f64(&a).log10().floor() as i64;
    let mut e = est;
    let pow = |k: i64| -> Rat {
        if k >= 0 {
            Rat::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            Rat::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while a < pow(e) {
        e -= 1;
    }
    while a >= pow(e + 1) {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let scaled = &a * pow(shift);
    let mut m = (scaled + Rat::new(1.into(), 2.into())).floor().to_integer();
    if m >= num_traits::pow(ten.clone(), digits) {
        m /= &ten;
        e += 1;
    }
    let ds = m.to_string();
    let mut s = String::new();
    if neg {
        s.push('-');
    }
    if e >= 0 {
        let e = e as usize;
        if e + 1 >= ds.len() {
            s.push_str(&ds);
            s.push_str(&"0".repeat(e + 1 - ds.len()));
        } else {
            s.push_str(&ds[..=e]);
            let frac = ds[e + 1..].trim_end_matches('0');
            if !frac.is_empty() {
                s.push('.');
                s.push_str(frac);
            }
        }
    } else {
        s.push_str("0.");
        s.push_str(&"0".repeat((-e - 1) as usize));
        s.push_str(ds.trim_end_matches('0'));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_encloses() {
        let a = RationalInterval::new(r(-1, 2), r(1, 1));
        let b = RationalInterval::new(r(2, 1), r(3, 1));
        assert_eq!(a.mul(&b), RationalInterval::new(r(-3, 2), r(3, 1)));
        assert_eq!(a.sqr(), RationalInterval::new(r(0, 1), r(1, 1)));
        assert_eq!(b.recip().unwrap(), RationalInterval::new(r(1, 3), r(1, 2)));
        assert!(a.recip().is_none());
    }

    #[test]
    fn sqrt_bounds() {
        let two = r(2, 1);
        let u = sqrt_upper(&two, 40);
        let l = sqrt_lower(&two, 40);
        assert!(&u * &u >= two && &l * &l <= two);
        assert!(&u - &l < r(1, 1 << 30));
    }

    #[test]
    fn decimal_format() {
        assert_eq!(format_sig(&r(1, 1), 17), "1");
        assert_eq!(format_sig(&r(-3, 2), 17), "-1.5");
        assert_eq!(format_sig(&r(1, 3), 17), "0.33333333333333333");
        assert_eq!(format_sig(&r(2, 3), 5), "0.66667");
        assert_eq!(format_sig(&r(123456, 1), 3), "123000");
        assert_eq!(format_sig(&r(-1, 1000), 17), "-0.001");
        assert_eq!(format_sig(&r(999999, 1000000), 3), "1");
    }
}
