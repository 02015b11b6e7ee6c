//! Dense integer polynomials, stored low degree first.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::interval::RationalInterval;
use crate::Rat;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyParseError {
    #[error("empty polynomial expression")]
    Empty,
    #[error("unexpected character {0:?} in polynomial expression")]
    BadChar(char),
    #[error("malformed term {0:?}")]
    BadTerm(String),
    #[error("invalid coefficient list: {0}")]
    BadList(String),
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<BigInt>", into = "Vec<BigInt>")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl TryFrom<Vec<BigInt>> for IntPolynomial {
    type Error = std::convert::Infallible;
    fn try_from(v: Vec<BigInt>) -> Result<Self, Self::Error> {
        Ok(IntPolynomial::new(v))
    }
}

impl From<IntPolynomial> for Vec<BigInt> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs
    }
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: vec![] }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `c * x^k`
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c.into();
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, zero past the degree.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `x^n p(1/x)` where `n` is the degree.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// `p(1 - x)`
    pub fn reflect_unit(&self) -> Self {
        let one_minus_x = Self::from_i64(&[1, -1]);
        self.compose(&one_minus_x)
    }

    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + bigint_to_f64(c);
        }
        acc
    }

    pub fn eval_interval(&self, x: &RationalInterval) -> RationalInterval {
        let mut acc = RationalInterval::point(Rat::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add_scalar(&Rat::from_integer(c.clone()));
        }
        acc
    }

    /// Pseudo-remainder scaled by a positive factor, so the sign of the true
    /// remainder is preserved.
    pub fn signed_prem(&self, b: &Self) -> Self {
        assert!(!b.is_zero(), "division by zero polynomial");
        let mut r = self.clone();
        let db = b.degree();
        let lb = b.leading();
        let lb_abs = lb.abs();
        let sign = if lb.is_negative() { -BigInt::one() } else { BigInt::one() };
        while !r.is_zero() && r.degree() >= db {
            let shift = r.degree() - db;
            let lr = r.leading();
            // r <- |lb| r - sign(lb) lr x^shift b
            let t = Self::monomial(&lr * &sign, shift);
            r = &r.scale(&lb_abs) - &(&t * b);
        }
        r
    }

    /// Exact division by a monic or dividing polynomial; `None` when the
    /// quotient is not integral or the remainder is nonzero.
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_rat(b);
        if !r.iter().all(|c| c.is_zero()) {
            return None;
        }
        if q.iter().all(|c| c.is_integer()) {
            Some(Self::new(q.into_iter().map(|c| c.to_integer()).collect()))
        } else {
            None
        }
    }

    /// Division over the rationals: (quotient, remainder) coefficient lists.
    pub fn div_rem_rat(&self, b: &Self) -> (Vec<Rat>, Vec<Rat>) {
        assert!(!b.is_zero(), "division by zero polynomial");
        let mut r: Vec<Rat> = self.coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect();
        let db = b.degree();
        let lb = Rat::from_integer(b.leading());
        if r.len() <= db {
            return (vec![], r);
        }
        let mut q = vec![Rat::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let f = &r[k + db] / &lb;
            if !f.is_zero() {
                for (j, bc) in b.coeffs.iter().enumerate() {
                    r[k + j] -= &f * Rat::from_integer(bc.clone());
                }
            }
            q[k] = f;
        }
        r.truncate(db);
        (q, r)
    }

    /// Remainder modulo a monic polynomial, in integer arithmetic.
    pub fn rem_monic(&self, m: &Self) -> Self {
        assert!(m.is_monic(), "rem_monic needs a monic modulus");
        let dm = m.degree();
        let mut r = self.coeffs.clone();
        while r.len() > dm {
            let top = r.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = r.len() - dm;
            for (j, c) in m.coeffs[..dm].iter().enumerate() {
                r[shift + j] -= &top * c;
            }
        }
        Self::new(r)
    }

    /// The cyclotomic polynomial `Phi_m`, by dividing `x^m - 1` by `Phi_d`
    /// for every proper divisor `d` of `m`.
    pub fn cyclotomic(m: usize) -> Self {
        assert!(m >= 1);
        let mut p = &Self::monomial(1, m) - &Self::constant(1);
        for d in 1..m {
            if m % d == 0 {
                p = p.div_exact(&Self::cyclotomic(d)).expect("cyclotomic factor divides x^m - 1");
            }
        }
        p
    }

    /// Greatest common divisor, primitive with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.signed_prem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).is_constant()
    }

    /// Squarefree part, primitive.
    pub fn squarefree_part(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.is_constant() {
            return self.primitive();
        }
        let (q, _) = self.primitive().div_rem_rat(&g);
        let den = q.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        Self::new(q.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect()).primitive()
    }

    /// Sturm chain `p, p', -rem(p, p'), ...` with positive rescaling.
    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone()];
        if self.degree() == 0 {
            return seq;
        }
        seq.push(self.derivative());
        loop {
            let n = seq.len();
            let r = seq[n - 2].signed_prem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            let r = -r;
            let c = r.content();
            seq.push(Self::new(r.coeffs.iter().map(|x| x / &c).collect()));
        }
        seq
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_roots_sturm(seq: &[Self], a: &Rat, b: &Rat) -> usize {
        let va = sign_variations(seq.iter().map(|p| p.eval_rat(a)));
        let vb = sign_variations(seq.iter().map(|p| p.eval_rat(b)));
        va.saturating_sub(vb)
    }

    /// Upper bound on the absolute value of every complex root.
    pub fn cauchy_bound(&self) -> Rat {
        let lead = Rat::from_integer(self.leading().abs());
        let m = self.coeffs[..self.coeffs.len().saturating_sub(1)]
            .iter()
            .map(|c| Rat::from_integer(c.abs()) / &lead)
            .max()
            .unwrap_or_else(Rat::zero);
        m + Rat::one()
    }

    /// Isolating intervals for the distinct real roots inside `[lo, hi]`, in
    /// increasing order. Roots hit by a bisection point come back as
    /// degenerate intervals; other intervals hold exactly one root in their
    /// open interior.
    pub fn real_root_intervals(&self, lo: &Rat, hi: &Rat) -> Vec<RationalInterval> {
        if self.is_zero() || self.degree() == 0 {
            return vec![];
        }
        let p = self.squarefree_part();
        let seq = p.sturm_sequence();
        let mut out = Vec::new();
        if p.eval_rat(lo).is_zero() {
            out.push(RationalInterval::point(lo.clone()));
        }
        let mut stack = vec![(lo.clone(), hi.clone())];
        let mut found = Vec::new();
        let two = Rat::from_integer(2.into());
        while let Some((a, b)) = stack.pop() {
            let n = Self::count_roots_sturm(&seq, &a, &b);
            if n == 0 {
                continue;
            }
            let b_root = p.eval_rat(&b).is_zero();
            if b_root {
                found.push(RationalInterval::point(b.clone()));
            }
            let inner = n - usize::from(b_root);
            if inner == 0 {
                continue;
            }
            if inner == 1 && !b_root && !p.eval_rat(&a).is_zero() {
                found.push(RationalInterval::new(a, b));
                continue;
            }
            let m = (&a + &b) / &two;
            stack.push((m.clone(), b));
            stack.push((a, m));
        }
        found.sort_by(|x, y| x.lo.cmp(&y.lo).then_with(|| x.hi.cmp(&y.hi)));
        found.dedup();
        out.extend(found);
        out
    }

    /// Integer roots of the polynomial (divisors of the constant term).
    pub fn integer_roots(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let c0 = self.coeffs[0].abs();
        if c0.is_zero() {
            let mut roots = vec![BigInt::zero()];
            let shifted = Self::new(self.coeffs[1..].to_vec());
            roots.extend(shifted.integer_roots().into_iter().filter(|r| !r.is_zero()));
            roots.sort();
            roots.dedup();
            return roots;
        }
        let mut roots: Vec<BigInt> = divisors(&c0)
            .into_iter()
            .flat_map(|d| [d.clone(), -d])
            .filter(|r| self.eval_int(r).is_zero())
            .collect();
        roots.sort();
        roots
    }

    /// Parse `"x^2+3x-1"`, `"2*x^3 - x + 1"` or a JSON list `"[-1,3,1]"`
    /// (low degree first).
    pub fn parse(s: &str) -> Result<Self, PolyParseError> {
        let t = s.trim();
        if t.is_empty() {
            return Err(PolyParseError::Empty);
        }
        if t.starts_with('[') {
            let v: Vec<serde_json::Value> =
                serde_json::from_str(t).map_err(|e| PolyParseError::BadList(e.to_string()))?;
            let mut coeffs = Vec::with_capacity(v.len());
            for x in v {
                let c = match x {
                    serde_json::Value::Number(n) => n
                        .as_i64()
                        .map(BigInt::from)
                        .ok_or_else(|| PolyParseError::BadList(format!("non-integer {n}")))?,
                    serde_json::Value::String(s) => s
                        .parse::<BigInt>()
                        .map_err(|_| PolyParseError::BadList(format!("bad integer {s:?}")))?,
                    other => return Err(PolyParseError::BadList(format!("unexpected {other}"))),
                };
                coeffs.push(c);
            }
            return Ok(Self::new(coeffs));
        }
        let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
        for ch in compact.chars() {
            if !(ch.is_ascii_digit() || "+-*^x".contains(ch)) {
                return Err(PolyParseError::BadChar(ch));
            }
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut coeffs: Vec<BigInt> = Vec::new();
        for term in terms {
            let (c, k) = parse_term(&term)?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] += c;
        }
        Ok(Self::new(coeffs))
    }

    /// Human-readable form in the variable `var`, highest degree first.
    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}{mono}"));
            }
        }
        s
    }
}

fn parse_term(term: &str) -> Result<(BigInt, usize), PolyParseError> {
    let bad = || PolyParseError::BadTerm(term.to_string());
    let (sign, body) = match term.as_bytes().first() {
        Some(b'+') => (BigInt::one(), &term[1..]),
        Some(b'-') => (-BigInt::one(), &term[1..]),
        _ => (BigInt::one(), term),
    };
    if body.is_empty() {
        return Err(bad());
    }
    match body.find('x') {
        None => {
            let c: BigInt = body.parse().map_err(|_| bad())?;
            Ok((sign * c, 0))
        }
        Some(pos) => {
            let coef = body[..pos].trim_end_matches('*');
            let c: BigInt = if coef.is_empty() { BigInt::one() } else { coef.parse().map_err(|_| bad())? };
            let rest = &body[pos + 1..];
            let k = if rest.is_empty() {
                1
            } else if let Some(e) = rest.strip_prefix('^') {
                e.parse::<usize>().map_err(|_| bad())?
            } else {
                return Err(bad());
            };
            Ok((sign * c, k))
        }
    }
}

fn sign_variations(vals: impl Iterator<Item = Rat>) -> usize {
    let mut last: Option<bool> = None;
    let mut n = 0;
    for v in vals {
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(l) = last {
            if l != pos {
                n += 1;
            }
        }
        last = Some(pos);
    }
    n
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            let q = n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN)
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("x"))
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl PartialOrd for IntPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree first, then coefficients from the top down.
impl Ord for IntPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        IntPolynomial::parse(s).unwrap()
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("x^2+3x-1").coeffs(), IntPolynomial::from_i64(&[-1, 3, 1]).coeffs());
        assert_eq!(p("x^4 - 2x^3 + 4*x^2 - 3x + 1"), IntPolynomial::from_i64(&[1, -3, 4, -2, 1]));
        assert_eq!(p("[-1, 3, 1]"), p("x^2+3x-1"));
        assert_eq!(p("-x"), IntPolynomial::from_i64(&[0, -1]));
        assert_eq!(p("x^2+3x-1").to_string(), "x^2 + 3x - 1");
        assert_eq!(p("2x^2-4x+1").to_string(), "2x^2 - 4x + 1");
        assert!(IntPolynomial::parse("x^2+y").is_err());
        assert!(IntPolynomial::parse("").is_err());
    }

    #[test]
    fn degree_and_trim() {
        let q = IntPolynomial::from_i64(&[1, 0, 0]);
        assert_eq!(q.degree(), 0);
        assert!(IntPolynomial::from_i64(&[0, 0]).is_zero());
    }

    #[test]
    fn gcd_and_squarefree() {
        let a = p("x^2-1");
        let b = p("x^2+2x+1");
        assert_eq!(a.gcd(&b), p("x+1"));
        assert!(!p("4x^2-4x+1").is_squarefree());
        assert_eq!(p("4x^2-4x+1").squarefree_part(), p("2x-1"));
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(IntPolynomial::cyclotomic(5), p("x^4+x^3+x^2+x+1"));
        assert_eq!(IntPolynomial::cyclotomic(8), p("x^4+1"));
        assert_eq!(IntPolynomial::cyclotomic(12), p("x^4-x^2+1"));
        assert_eq!(IntPolynomial::cyclotomic(30).degree(), 8);
        assert_eq!(p("x^5").rem_monic(&p("x^2+1")), p("x"));
    }

    #[test]
    fn sturm_counts() {
        let q = p("x^3-6x^2+5x-1");
        let seq = q.sturm_sequence();
        let n = IntPolynomial::count_roots_sturm(&seq, &Rat::from_integer((-10).into()), &Rat::from_integer(10.into()));
        assert_eq!(n, 3);
        let iv = q.real_root_intervals(&Rat::from_integer(0.into()), &Rat::from_integer(10.into()));
        assert_eq!(iv.len(), 3);
        let r = p("4x^2-4x+1").real_root_intervals(&Rat::from_integer(0.into()), &Rat::from_integer(1.into()));
        assert_eq!(r.len(), 1);
        assert!(r[0].contains(&Rat::new(1.into(), 2.into())));
    }

    #[test]
    fn exact_division() {
        let a = p("x^3-1");
        assert_eq!(a.div_exact(&p("x-1")), Some(p("x^2+x+1")));
        assert_eq!(a.div_exact(&p("x+1")), None);
        assert_eq!(p("x^3-x").integer_roots(), vec![BigInt::from(-1), 0.into(), 1.into()]);
    }
}
