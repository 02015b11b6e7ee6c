//! The ring `Z[lambda]` for a monic irreducible integer polynomial, with
//! certified embeddings at every conjugate.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::interval::{f64_to_rat, rat_to_f64, ComplexBox, RationalInterval};
use crate::poly::{bigint_to_f64, IntPolynomial};
use crate::roots::{IsolatedRoot, RootCache, RootError};
use crate::Rat;

pub const MAX_DEGREE: usize = 8;

/// Hard cap on refinement levels; each level adds about 32 bits.
const MAX_LEVEL: usize = 256;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("minimal polynomial must be monic, got {0}")]
    NotMonic(String),
    #[error("minimal polynomial must have degree at least 1")]
    ZeroDegree,
    #[error("degree {0} exceeds the supported maximum of 8")]
    DegreeTooLarge(usize),
    #[error("polynomial {0} is reducible over the rationals")]
    Reducible(String),
    #[error("root hint {0} does not single out one root")]
    AmbiguousHint(String),
    #[error("elements belong to different number fields")]
    ContextMismatch,
    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("root index {0} out of range")]
    BadRootIndex(usize),
    #[error("root {0} is not real")]
    NonRealRoot(usize),
    #[error("sign could not be separated within the refinement cap")]
    Undecided,
    #[error("root isolation failed: {0}")]
    Roots(#[from] RootError),
}

/// A number field `Q(lambda)` presented by the monic minimal polynomial of
/// `lambda`, together with isolated boxes for all conjugates.
#[derive(Debug)]
pub struct NumberField {
    minpoly: IntPolynomial,
    roots: Arc<RootCache>,
    lambda_index: usize,
    unit_interval: Vec<usize>,
    real: Vec<bool>,
    // Power-basis coordinates of lambda^(d + k) for k = 0..d-1.
    reduction: Vec<Vec<BigInt>>,
    roots_f64: Vec<Complex<f64>>,
}

pub type Context = Arc<NumberField>;

/// Options for [`make_context_with`].
#[derive(Clone, Debug)]
pub struct ContextOptions {
    /// Refinement stops declaring a hint ambiguous once boxes are this narrow.
    pub min_width: Rat,
}

impl Default for ContextOptions {
    fn default() -> Self {
        ContextOptions { min_width: Rat::new(1.into(), BigInt::one() << 200) }
    }
}

pub fn make_context(minpoly: &IntPolynomial, root_hint: Complex<f64>) -> Result<Context, AlgebraError> {
    make_context_with(minpoly, root_hint, &ContextOptions::default())
}

pub fn make_context_with(
    minpoly: &IntPolynomial,
    root_hint: Complex<f64>,
    opts: &ContextOptions,
) -> Result<Context, AlgebraError> {
    let (roots, _) = checked_roots(minpoly)?;
    let idx = pick_root(&roots, root_hint, &opts.min_width)
        .ok_or_else(|| AlgebraError::AmbiguousHint(format!("({}, {})", root_hint.re, root_hint.im)))?;
    Ok(build(minpoly.clone(), roots, idx))
}

/// Context whose designated root is the `index`-th root in the canonical
/// (real part, imaginary part) order.
pub fn make_context_at(minpoly: &IntPolynomial, index: usize) -> Result<Context, AlgebraError> {
    let (roots, d) = checked_roots(minpoly)?;
    if index >= d {
        return Err(AlgebraError::BadRootIndex(index));
    }
    Ok(build(minpoly.clone(), roots, index))
}

fn checked_roots(minpoly: &IntPolynomial) -> Result<(Arc<RootCache>, usize), AlgebraError> {
    let d = minpoly.degree();
    if minpoly.is_zero() || d == 0 {
        return Err(AlgebraError::ZeroDegree);
    }
    if !minpoly.is_monic() {
        return Err(AlgebraError::NotMonic(minpoly.to_string()));
    }
    if d > MAX_DEGREE {
        return Err(AlgebraError::DegreeTooLarge(d));
    }
    if !minpoly.is_squarefree() {
        return Err(AlgebraError::Reducible(minpoly.to_string()));
    }
    let roots = Arc::new(RootCache::new(minpoly)?);
    if !is_irreducible_with(minpoly, &roots) {
        return Err(AlgebraError::Reducible(minpoly.to_string()));
    }
    Ok((roots, d))
}

fn build(minpoly: IntPolynomial, roots: Arc<RootCache>, lambda_index: usize) -> Context {
    let d = minpoly.degree();
    let level0 = roots.level(0);
    let real: Vec<bool> = level0.iter().map(|r| r.real).collect();
    let mut reduction = Vec::with_capacity(d);
    // lambda^d = -(c_0 + c_1 lambda + ... + c_{d-1} lambda^{d-1})
    let mut cur: Vec<BigInt> = (0..d).map(|i| -minpoly.coeff(i)).collect();
    for _ in 0..d {
        reduction.push(cur.clone());
        // multiply by lambda
        let top = cur[d - 1].clone();
        let mut next = vec![BigInt::zero(); d];
        for i in (1..d).rev() {
            next[i] = cur[i - 1].clone();
        }
        for i in 0..d {
            next[i] -= &top * minpoly.coeff(i);
        }
        cur = next;
    }
    let unit_interval = (0..d).filter(|&i| real[i] && in_open_unit(&roots, i)).collect();
    let fine = Rat::new(1.into(), BigInt::one() << 64);
    let roots_f64 = (0..d)
        .map(|i| {
            let b = &roots.level(roots.level_for_width(i, &fine))[i].bx;
            Complex::new(rat_to_f64(&b.re.mid()), rat_to_f64(&b.im.mid()))
        })
        .collect();
    Arc::new(NumberField { minpoly, roots, lambda_index, unit_interval, real, reduction, roots_f64 })
}

fn in_open_unit(roots: &RootCache, i: usize) -> bool {
    for k in 0..MAX_LEVEL {
        let b = &roots.level(k)[i].bx.re;
        if b.hi <= Rat::zero() || b.lo >= Rat::one() {
            return false;
        }
        if b.lo > Rat::zero() && b.hi < Rat::one() {
            return true;
        }
        // A rational root in a degree-1 field sits exactly on its point box.
        if b.lo == b.hi {
            return b.lo > Rat::zero() && b.lo < Rat::one();
        }
    }
    false
}

fn pick_root(roots: &RootCache, hint: Complex<f64>, min_width: &Rat) -> Option<usize> {
    let hr = f64_to_rat(hint.re);
    let hi = f64_to_rat(hint.im);
    let d = roots.degree();
    if d == 1 {
        return Some(0);
    }
    for k in 0..MAX_LEVEL {
        let level = roots.level(k);
        let dist: Vec<RationalInterval> = level
            .iter()
            .map(|r| r.bx.add_real(&-hr.clone()).sub(&ComplexBox::point(Rat::zero(), hi.clone())).norm_sqr())
            .collect();
        for i in 0..d {
            if (0..d).all(|j| j == i || dist[i].hi < dist[j].lo) {
                return Some(i);
            }
        }
        if level.iter().all(|r| &r.bx.width() <= min_width) {
            return None;
        }
    }
    None
}

/// Irreducibility over the rationals of a monic polynomial; `None` for
/// non-monic input.
///
/// Any monic factor of degree `k` is the product of `x - r` over some `k`
/// roots, so its coefficients are integers lying in interval enclosures of
/// the elementary symmetric functions of that root subset. Every subset up to
/// half the degree is tested against the integer candidate by exact division.
pub fn is_irreducible(p: &IntPolynomial) -> Option<bool> {
    if !p.is_monic() {
        return None;
    }
    if p.degree() <= 1 {
        return Some(p.degree() == 1);
    }
    if !p.is_squarefree() {
        return Some(false);
    }
    Some(RootCache::new(p).map(|cache| is_irreducible_with(p, &cache)).unwrap_or(false))
}

fn is_irreducible_with(p: &IntPolynomial, roots: &RootCache) -> bool {
    let d = p.degree();
    if d <= 1 {
        return true;
    }
    if !p.integer_roots().is_empty() {
        return false;
    }
    for k in 2..=d / 2 {
        for subset in subsets(d, k) {
            if subset_factor(p, roots, &subset).is_some() {
                return false;
            }
        }
    }
    true
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Exact integer factor with roots `subset`, if one exists.
fn subset_factor(p: &IntPolynomial, roots: &RootCache, subset: &[usize]) -> Option<IntPolynomial> {
    let half = Rat::new(1.into(), 2.into());
    for k in 0..MAX_LEVEL {
        let level = roots.level(k);
        let mut coeffs = vec![ComplexBox::point(Rat::one(), Rat::zero())];
        for &i in subset {
            let r = &level[i].bx;
            let mut next = vec![ComplexBox::point(Rat::zero(), Rat::zero()); coeffs.len() + 1];
            for (j, c) in coeffs.iter().enumerate() {
                next[j + 1] = next[j + 1].add(c);
                next[j] = next[j].sub(&c.mul(r));
            }
            coeffs = next;
        }
        if coeffs.iter().any(|c| !c.im.contains(&Rat::zero())) {
            return None;
        }
        let mut ints = Vec::with_capacity(coeffs.len());
        for c in &coeffs {
            let lo = c.re.lo.ceil().to_integer();
            let hi = c.re.hi.floor().to_integer();
            if lo > hi {
                return None;
            }
            ints.push((lo, hi));
        }
        if coeffs.iter().all(|c| c.re.width() < half) {
            let cand = IntPolynomial::new(ints.into_iter().map(|(lo, _)| lo).collect());
            return p.div_exact(&cand).map(|_| cand);
        }
    }
    None
}

impl NumberField {
    pub fn degree(&self) -> usize {
        self.minpoly.degree()
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub fn lambda_index(&self) -> usize {
        self.lambda_index
    }

    /// Indices of the real conjugates in the open unit interval.
    pub fn real_unit_interval_indices(&self) -> &[usize] {
        &self.unit_interval
    }

    /// Unit-interval conjugates other than lambda itself.
    pub fn windowed_indices(&self) -> Vec<usize> {
        self.unit_interval.iter().copied().filter(|&i| i != self.lambda_index).collect()
    }

    pub fn is_real_root(&self, i: usize) -> bool {
        self.real[i]
    }

    pub fn lambda_is_real(&self) -> bool {
        self.real[self.lambda_index]
    }

    pub fn root_count(&self) -> usize {
        self.real.len()
    }

    /// Index of the complex conjugate of root `i` (itself when real).
    pub fn conjugate_index(&self, i: usize) -> usize {
        if self.real[i] {
            return i;
        }
        let l0 = self.roots.level(0);
        let c = l0[i].center_f64().conj();
        (0..l0.len())
            .filter(|&j| j != i && !self.real[j])
            .min_by(|&a, &b| (l0[a].center_f64() - c).norm().total_cmp(&(l0[b].center_f64() - c).norm()))
            .unwrap_or(i)
    }

    pub fn root_box(&self, i: usize, level: usize) -> IsolatedRoot {
        self.roots.level(level)[i].clone()
    }

    pub fn root_f64(&self, i: usize) -> Complex<f64> {
        self.roots_f64[i]
    }

    pub fn lambda_f64(&self) -> Complex<f64> {
        self.root_f64(self.lambda_index)
    }

    /// The same field with another designated root.
    pub fn with_lambda_index(&self, i: usize) -> Context {
        Arc::new(NumberField {
            minpoly: self.minpoly.clone(),
            roots: self.roots.clone(),
            lambda_index: i,
            unit_interval: self.unit_interval.clone(),
            real: self.real.clone(),
            reduction: self.reduction.clone(),
            roots_f64: self.roots_f64.clone(),
        })
    }

    pub fn same_field(&self, other: &NumberField) -> bool {
        std::ptr::eq(self, other) || (self.minpoly == other.minpoly && self.lambda_index == other.lambda_index)
    }
}

/// Element of `Z[lambda]` in power-basis coordinates.
#[derive(Clone)]
pub struct FieldElement {
    ctx: Context,
    coords: Vec<BigInt>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.ctx.same_field(&other.ctx)
    }
}
impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on coordinate vectors.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElement({})", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("lambda"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
    Neg,
    ScalarMul,
}

/// Enclosure of an element's image at one conjugate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enclosure {
    Real(RationalInterval),
    Complex(ComplexBox),
}

impl Enclosure {
    pub fn width(&self) -> Rat {
        match self {
            Enclosure::Real(i) => i.width(),
            Enclosure::Complex(b) => b.width(),
        }
    }

    pub fn as_box(&self) -> ComplexBox {
        match self {
            Enclosure::Real(i) => ComplexBox::real(i.clone()),
            Enclosure::Complex(b) => b.clone(),
        }
    }

    pub fn real(&self) -> Option<&RationalInterval> {
        match self {
            Enclosure::Real(i) => Some(i),
            Enclosure::Complex(_) => None,
        }
    }
}

/// `a op b`; `b` is ignored for `Neg`, and for `ScalarMul` the scalar is the
/// rational integer `b` represents.
pub fn ring_arith(a: &FieldElement, b: &FieldElement, op: RingOp) -> Result<FieldElement, AlgebraError> {
    if !a.ctx.same_field(&b.ctx) {
        return Err(AlgebraError::ContextMismatch);
    }
    Ok(match op {
        RingOp::Add => a.add_unchecked(b),
        RingOp::Sub => a.sub_unchecked(b),
        RingOp::Mul => a.mul_unchecked(b),
        RingOp::Neg => a.neg(),
        RingOp::ScalarMul => {
            let k = b.as_integer().ok_or(AlgebraError::ContextMismatch)?;
            a.scale(&k)
        }
    })
}

impl FieldElement {
    pub fn new(ctx: &Context, coords: Vec<BigInt>) -> Result<Self, AlgebraError> {
        let d = ctx.degree();
        if coords.len() != d {
            return Err(AlgebraError::WrongLength { expected: d, got: coords.len() });
        }
        Ok(FieldElement { ctx: ctx.clone(), coords })
    }

    pub fn from_i64(ctx: &Context, coords: &[i64]) -> Result<Self, AlgebraError> {
        Self::new(ctx, coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_int(ctx: &Context, n: impl Into<BigInt>) -> Self {
        let mut coords = vec![BigInt::zero(); ctx.degree()];
        coords[0] = n.into();
        FieldElement { ctx: ctx.clone(), coords }
    }

    pub fn zero(ctx: &Context) -> Self {
        Self::from_int(ctx, 0)
    }

    pub fn one(ctx: &Context) -> Self {
        Self::from_int(ctx, 1)
    }

    /// The designated root; in degree one this is the integer root itself.
    pub fn lambda(ctx: &Context) -> Self {
        Self::lambda_pow(ctx, 1)
    }

    pub fn lambda_pow(ctx: &Context, k: usize) -> Self {
        let d = ctx.degree();
        if d == 1 {
            return Self::from_int(ctx, num_traits::pow(-ctx.minpoly.coeff(0), k));
        }
        if k < d {
            let mut coords = vec![BigInt::zero(); d];
            coords[k] = BigInt::one();
            return FieldElement { ctx: ctx.clone(), coords };
        }
        Self::lambda_pow(ctx, 1).pow(k)
    }

    /// Element from polynomial coefficients in lambda, reduced.
    pub fn from_poly(ctx: &Context, p: &IntPolynomial) -> Self {
        let mut acc = Self::zero(ctx);
        let lam = Self::lambda(ctx);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul_unchecked(&lam).add_unchecked(&Self::from_int(ctx, c.clone()));
        }
        acc
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn degree(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The rational integer this element equals, if it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| self.coords[0].clone())
    }

    pub fn same_context(&self, other: &Self) -> bool {
        self.ctx.same_field(&other.ctx)
    }

    fn check(&self, other: &Self) {
        assert!(self.same_context(other), "elements belong to different number fields");
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, AlgebraError> {
        ring_arith(self, o, RingOp::Add)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, AlgebraError> {
        ring_arith(self, o, RingOp::Sub)
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, AlgebraError> {
        ring_arith(self, o, RingOp::Mul)
    }

    fn add_unchecked(&self, o: &Self) -> Self {
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect();
        FieldElement { ctx: self.ctx.clone(), coords }
    }

    fn sub_unchecked(&self, o: &Self) -> Self {
        let coords = self.coords.iter().zip(&o.coords).map(|(a, b)| a - b).collect();
        FieldElement { ctx: self.ctx.clone(), coords }
    }

    fn mul_unchecked(&self, o: &Self) -> Self {
        let d = self.coords.len();
        let mut full = vec![BigInt::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] += a * b;
                }
            }
        }
        let mut coords: Vec<BigInt> = full[..d].to_vec();
        if d == 1 {
            return FieldElement { ctx: self.ctx.clone(), coords };
        }
        for (k, c) in full[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, r) in self.ctx.reduction[k].iter().enumerate() {
                coords[t] += c * r;
            }
        }
        FieldElement { ctx: self.ctx.clone(), coords }
    }

    pub fn neg(&self) -> Self {
        FieldElement { ctx: self.ctx.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        FieldElement { ctx: self.ctx.clone(), coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn add_int(&self, k: impl Into<BigInt>) -> Self {
        let mut out = self.clone();
        out.coords[0] += k.into();
        out
    }

    pub fn pow(&self, mut k: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            k >>= 1;
        }
        acc
    }

    /// Matrix of multiplication by this element; column `j` holds the
    /// coordinates of `self * lambda^j`.
    pub fn mul_matrix(&self) -> Vec<Vec<BigInt>> {
        let d = self.degree();
        let lam = if d == 1 { Self::one(&self.ctx) } else { Self::lambda(&self.ctx) };
        let mut cols = Vec::with_capacity(d);
        let mut cur = self.clone();
        for _ in 0..d {
            cols.push(cur.coords.clone());
            cur = cur.mul_unchecked(&lam);
        }
        (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// Field norm, the product of all conjugate images.
    pub fn norm(&self) -> BigInt {
        determinant(&self.mul_matrix())
    }

    /// Characteristic polynomial of multiplication by this element.
    pub fn charpoly(&self) -> IntPolynomial {
        let d = self.degree();
        let m = self.mul_matrix();
        // det(tI - M) at t = 0..d, then Lagrange interpolation.
        let samples: Vec<(BigInt, BigInt)> = (0..=d as i64)
            .map(|t| {
                let mut a = m.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()).collect::<Vec<_>>();
                for (i, row) in a.iter_mut().enumerate() {
                    row[i] += t;
                }
                (BigInt::from(t), determinant(&a))
            })
            .collect();
        interpolate(&samples)
    }

    /// Monic minimal polynomial over the rationals.
    pub fn minimal_polynomial(&self) -> IntPolynomial {
        self.charpoly().squarefree_part()
    }

    /// Rational coordinates of `self / other`, or `None` when `other` is zero.
    pub fn div_rational(&self, other: &Self) -> Option<Vec<Rat>> {
        self.check(other);
        solve_rational(&other.mul_matrix(), &self.coords)
    }

    /// `self / other` when the quotient lies in `Z[lambda]`.
    pub fn exact_div(&self, other: &Self) -> Option<Self> {
        let q = self.div_rational(other)?;
        if q.iter().all(|c| c.is_integer()) {
            Some(FieldElement { ctx: self.ctx.clone(), coords: q.into_iter().map(|c| c.to_integer()).collect() })
        } else {
            None
        }
    }

    /// Inverse in `Z[lambda]`; exists iff the element is a unit.
    pub fn try_inverse(&self) -> Option<Self> {
        Self::one(&self.ctx).exact_div(self)
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    fn eval_box_at(&self, r: &ComplexBox) -> ComplexBox {
        let mut acc = ComplexBox::point(Rat::zero(), Rat::zero());
        for c in self.coords.iter().rev() {
            acc = acc.mul(r).add_real(&Rat::from_integer(c.clone()));
        }
        acc
    }

    fn eval_interval_at(&self, r: &RationalInterval) -> RationalInterval {
        let mut acc = RationalInterval::from_int(0);
        for c in self.coords.iter().rev() {
            acc = acc.mul(r).add_scalar(&Rat::from_integer(c.clone()));
        }
        acc
    }

    /// Enclosure of the image at root `i` using the level-`k` root boxes.
    pub fn enclosure_at_level(&self, i: usize, k: usize) -> Enclosure {
        let r = self.ctx.roots.level(k)[i].clone();
        if r.real {
            Enclosure::Real(self.eval_interval_at(&r.bx.re))
        } else {
            Enclosure::Complex(self.eval_box_at(&r.bx))
        }
    }

    /// Enclosure of the image at root `i` with width at most `max_width`.
    /// Enclosures for smaller widths are nested inside those for larger ones.
    pub fn embed_interval(&self, i: usize, max_width: &Rat) -> Result<Enclosure, AlgebraError> {
        if i >= self.degree() {
            return Err(AlgebraError::BadRootIndex(i));
        }
        if let Some(n) = self.as_integer() {
            let x = Rat::from_integer(n);
            return Ok(if self.ctx.real[i] {
                Enclosure::Real(RationalInterval::point(x))
            } else {
                Enclosure::Complex(ComplexBox::point(x, Rat::zero()))
            });
        }
        let mut k = 0;
        loop {
            let e = self.enclosure_at_level(i, k);
            if &e.width() <= max_width || k >= MAX_LEVEL {
                return Ok(e);
            }
            k += 1;
        }
    }

    /// Exact sign of `image_i(self) - q` at a real root `i`.
    pub fn sign_against(&self, q: &Rat, i: usize) -> Result<Ordering, AlgebraError> {
        if i >= self.degree() {
            return Err(AlgebraError::BadRootIndex(i));
        }
        if !self.ctx.real[i] {
            return Err(AlgebraError::NonRealRoot(i));
        }
        self.sign_of_real_image(q, i)
    }

    /// Sign of `image_i(self) - q` for an element whose image at root `i` is
    /// known to be real (for instance `z * conj(z)` at a non-real root).
    /// Equality holds iff the element is the rational `q`, since the
    /// embedding is injective.
    pub fn sign_of_real_image(&self, q: &Rat, i: usize) -> Result<Ordering, AlgebraError> {
        if let Some(n) = self.as_integer() {
            return Ok(Rat::from_integer(n).cmp(q));
        }
        for k in 0..MAX_LEVEL {
            let e = self.enclosure_at_level(i, k);
            let re = match &e {
                Enclosure::Real(r) => r.clone(),
                Enclosure::Complex(b) => b.re.clone(),
            };
            if let Some(o) = re.compare_to(q) {
                return Ok(o);
            }
        }
        Err(AlgebraError::Undecided)
    }

    /// Exact sign of the image at a real root.
    pub fn sign_at(&self, i: usize) -> Result<Ordering, AlgebraError> {
        self.sign_against(&Rat::zero(), i)
    }

    /// Compare two elements at a real root.
    pub fn cmp_at(&self, other: &Self, i: usize) -> Result<Ordering, AlgebraError> {
        self.check(other);
        self.sub_unchecked(other).sign_at(i)
    }

    /// Floating-point shadow of the image at root `i`, for display and
    /// search priority only.
    pub fn shadow(&self, i: usize) -> Complex<f64> {
        if let Some(n) = self.as_integer() {
            return Complex::new(bigint_to_f64(&n), 0.0);
        }
        let e = self.enclosure_at_level(i, 2);
        let b = e.as_box();
        Complex::new(rat_to_f64(&b.re.mid()), rat_to_f64(&b.im.mid()))
    }

    /// Shadow at the designated root.
    pub fn value_f64(&self) -> Complex<f64> {
        self.shadow(self.ctx.lambda_index)
    }

    /// Cheap double-precision estimate from the root centre; not rigorous.
    pub fn approx(&self) -> Complex<f64> {
        let r = self.ctx.root_f64(self.ctx.lambda_index);
        let mut acc = Complex::new(0.0, 0.0);
        for c in self.coords.iter().rev() {
            acc = acc * r + bigint_to_f64(c);
        }
        acc
    }

    pub fn to_string_var(&self, var: &str) -> String {
        let mut s = String::new();
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            let mag = c.abs();
            let body = if k == 0 {
                mag.to_string()
            } else if mag.is_one() {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            if s.is_empty() {
                if c.is_negative() {
                    s.push('-');
                }
            } else {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    pub fn coords_i64(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(|c| c.to_i64()).collect()
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, o: &FieldElement) -> FieldElement {
                self.check(o);
                self.$f(o)
            }
        }
        impl std::ops::$tr<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, o: FieldElement) -> FieldElement {
                (&self).$m(&o)
            }
        }
    };
}
binop!(Add, add, add_unchecked);
binop!(Sub, sub, sub_unchecked);
binop!(Mul, mul, mul_unchecked);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

/// Bareiss fraction-free determinant.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Solve `m x = b` over the rationals; `None` when `m` is singular.
pub fn solve_rational(m: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r: Vec<Rat> = row.iter().map(|x| Rat::from_integer(x.clone())).collect();
            r.push(Rat::from_integer(bi.clone()));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for j in col..=n {
            a[col][j] = &a[col][j] / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..=n {
                    let v = &a[col][j] * &f;
                    a[r][j] -= v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n].clone()).collect())
}

/// Integer polynomial through integer samples; the caller guarantees the
/// interpolant has integer coefficients.
fn interpolate(samples: &[(BigInt, BigInt)]) -> IntPolynomial {
    let n = samples.len();
    let mut coeffs = vec![Rat::zero(); n];
    for (i, (xi, yi)) in samples.iter().enumerate() {
        let mut basis = vec![Rat::one()];
        let mut denom = Rat::one();
        for (j, (xj, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![Rat::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * Rat::from_integer(xj.clone());
            }
            basis = next;
            denom *= Rat::from_integer(xi - xj);
        }
        let scale = Rat::from_integer(yi.clone()) / denom;
        for (k, c) in basis.iter().enumerate() {
            coeffs[k] += c * &scale;
        }
    }
    IntPolynomial::new(coeffs.into_iter().map(|c| c.to_integer()).collect())
}

/// Least common multiple of denominators, used when clearing fractions.
pub fn denom_lcm(v: &[Rat]) -> BigInt {
    v.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: &str, re: f64, im: f64) -> Context {
        make_context(&IntPolynomial::parse(p).unwrap(), Complex::new(re, im)).unwrap()
    }

    #[test]
    fn quadratic_context_has_one_unit_interval_conjugate() {
        let c = ctx("x^2+3x-1", -3.30, 0.0);
        assert_eq!(c.real_unit_interval_indices().len(), 1);
        let j = c.windowed_indices()[0];
        assert!((c.root_f64(j).re - 0.302776).abs() < 1e-6);
        assert!((c.lambda_f64().re + 3.302776).abs() < 1e-6);
    }

    #[test]
    fn lambda_squared_reduces() {
        let c = ctx("x^2+3x-1", -3.30, 0.0);
        let l = FieldElement::lambda(&c);
        assert_eq!((&l * &l).coords(), &[BigInt::from(1), BigInt::from(-3)]);
    }

    #[test]
    fn quartic_reduction() {
        let p = IntPolynomial::parse("x^4-2x^3+4x^2-3x+1").unwrap();
        let c = make_context_at(&p, 0).unwrap();
        let l = FieldElement::lambda(&c);
        let l4 = &(&l * &l) * &(&l * &l);
        assert_eq!(l4.coords_i64().unwrap(), vec![-1, 3, -4, 2]);
    }

    #[test]
    fn rejects_bad_polynomials() {
        let h = Complex::new(0.0, 0.0);
        let p = |s| IntPolynomial::parse(s).unwrap();
        assert!(matches!(make_context(&p("x^2-1"), h), Err(AlgebraError::Reducible(_))));
        assert!(matches!(make_context(&p("x^4+4"), h), Err(AlgebraError::Reducible(_))));
        assert!(matches!(make_context(&p("2x^2-1"), h), Err(AlgebraError::NotMonic(_))));
        assert!(matches!(make_context(&p("x^9-2"), h), Err(AlgebraError::DegreeTooLarge(9))));
        assert!(matches!(make_context(&p("x^2+1"), h), Err(AlgebraError::AmbiguousHint(_))));
    }

    #[test]
    fn fundamental_unit_value() {
        let c = ctx("x^2+3x-2", -3.56, 0.0);
        let u = FieldElement::from_i64(&c, &[9, -16]).unwrap();
        let e = u.embed_interval(c.lambda_index(), &Rat::new(1.into(), 1_000_000.into())).unwrap();
        let v = e.real().unwrap().to_f64();
        assert!((v - 65.9848).abs() < 1e-4);
        assert_eq!(u.norm().abs(), BigInt::one());
        assert_eq!(u.to_string(), "9 - 16*lambda");
    }

    #[test]
    fn signs() {
        let c = ctx("x^2+3x-1", -3.30, 0.0);
        let j = c.windowed_indices()[0];
        let two_l = FieldElement::from_i64(&c, &[0, 2]).unwrap();
        assert_eq!(two_l.sign_against(&Rat::one(), j).unwrap(), Ordering::Less);
        assert_eq!(two_l.sign_against(&Rat::zero(), j).unwrap(), Ordering::Greater);
        let one = FieldElement::one(&c);
        assert_eq!(one.sign_against(&Rat::one(), j).unwrap(), Ordering::Equal);
    }

    #[test]
    fn charpoly_and_inverse() {
        let c = ctx("x^2+3x-1", -3.30, 0.0);
        let l = FieldElement::lambda(&c);
        assert_eq!(l.minimal_polynomial(), IntPolynomial::parse("x^2+3x-1").unwrap());
        let inv = l.try_inverse().unwrap();
        assert_eq!(&inv * &l, FieldElement::one(&c));
        let two = FieldElement::from_int(&c, 2);
        assert!(two.try_inverse().is_none());
    }

    #[test]
    fn complex_cubic() {
        let c = ctx("x^3+x^2-1", -0.877, 0.745);
        assert!(!c.lambda_is_real());
        let w = c.windowed_indices();
        assert_eq!(w.len(), 1);
        assert!((c.root_f64(w[0]).re - 0.754878).abs() < 1e-6);
    }

    #[test]
    fn linear_context() {
        let c = ctx("x-1", 1.0, 0.0);
        assert_eq!(c.degree(), 1);
        assert_eq!(FieldElement::lambda(&c).as_integer(), Some(BigInt::one()));
        assert!(c.windowed_indices().is_empty());
    }
}
