//! Relative-density certificates: covering sets for a contracting unit,
//! the finite seed they induce, norm-decreasing reduction of model-set
//! points to that seed, and replication reduction for the unitary cases.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::contfrac::{surd_continued_fraction, PeriodicContinuedFraction, QuadraticSurd};
use crate::derivation::{ints_to_json, Derivation, DerivationArena};
use crate::field::{denom_lcm, AlgebraError, Context, Enclosure, FieldElement};
use crate::interval::{rat_to_f64, sqrt_lower, sqrt_upper, RationalInterval};
use crate::modelset::{enumerate_radius, ModelSetError, ModelSetSpec};
use crate::starset::PointSet;
use crate::Rat;

/// Refinement levels for interval comparisons at a non-real root.
const CMP_LEVELS: usize = 24;

#[derive(Debug, thiserror::Error)]
pub enum DensityError {
    #[error("need exactly one windowed conjugate (real quadratic or non-real cubic sPV)")]
    Unsupported,
    #[error("conjugate image of alpha must lie strictly inside (0, 1)")]
    NotContracting,
    #[error("alpha is not a unit")]
    NotUnit,
    #[error("cover set must contain 0 and 1")]
    MissingEndpoints,
    #[error("cover has a gap after point {0}")]
    Gap(usize),
    #[error("candidate pool cannot cover [0, 1]; enlarge the search radius")]
    PoolInsufficient,
    #[error("no point of the cover set contains the image of {0}")]
    NoCover(String),
    #[error("reduction step did not decrease the absolute value at {0}")]
    NoDecrease(String),
    #[error("reduction left the model set at {0}")]
    LeftModelSet(String),
    #[error("reduction ended at {0}, which is not in the seed")]
    NotInSeed(String),
    #[error("parameter is not in a supported replication family")]
    UnsupportedFamily,
    #[error("comparison undecided at available precision")]
    Undecided,
    #[error(transparent)]
    ModelSet(#[from] ModelSetError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Data from the continued-fraction construction of a quadratic cover.
#[derive(Clone, Debug)]
pub struct QuadraticCoverInfo {
    pub cf: PeriodicContinuedFraction,
    /// Least `k` with `eta_k + eta_{k-1} <= beta / (1 - beta)`.
    pub k: usize,
    pub q_k: BigInt,
    pub n: i64,
    pub m: i64,
    /// `max |x|` over the cover, taken directly.
    pub max_abs: FieldElement,
    /// The same quantity from the closed form in `n`, `lambda`, `mu`.
    pub max_abs_formula: Option<FieldElement>,
}

/// A finite `X` in the model set whose scaled intervals
/// `[(1 - beta) x', (1 - beta) x' + beta]` cover `[0, 1]`, with `beta = alpha'`.
#[derive(Clone, Debug)]
pub struct CoverSet {
    pub ctx: Context,
    pub alpha: FieldElement,
    /// Root index of the windowed conjugate.
    pub index: usize,
    /// Points ordered by conjugate image.
    pub points: Vec<FieldElement>,
    pub quadratic: Option<QuadraticCoverInfo>,
}

impl CoverSet {
    /// Validate an explicit cover.
    pub fn from_points(ctx: &Context, alpha: &FieldElement, points: Vec<FieldElement>) -> Result<Self, DensityError> {
        let j = window_index(ctx)?;
        check_alpha(alpha, j)?;
        let points = sort_by_image(points, j)?;
        verify_cover(alpha, j, &points)?;
        Ok(CoverSet { ctx: ctx.clone(), alpha: alpha.clone(), index: j, points, quadratic: None })
    }

    pub fn beta_f64(&self) -> f64 {
        self.alpha.shadow(self.index).re
    }

    /// No proper subset covers: removing any single point opens a gap.
    pub fn is_minimal(&self) -> bool {
        (0..self.points.len()).all(|i| {
            let mut p = self.points.clone();
            p.remove(i);
            verify_cover(&self.alpha, self.index, &p).is_err()
        })
    }
}

fn window_index(ctx: &Context) -> Result<usize, DensityError> {
    let w = ctx.windowed_indices();
    let ok = match ctx.degree() {
        2 => ctx.lambda_is_real(),
        3 => !ctx.lambda_is_real(),
        _ => false,
    };
    if w.len() != 1 || !ok {
        return Err(DensityError::Unsupported);
    }
    Ok(w[0])
}

fn check_alpha(alpha: &FieldElement, j: usize) -> Result<(), DensityError> {
    if !alpha.is_unit() {
        return Err(DensityError::NotUnit);
    }
    if alpha.sign_at(j)? != Ordering::Greater || alpha.sign_against(&Rat::one(), j)? != Ordering::Less {
        return Err(DensityError::NotContracting);
    }
    Ok(())
}

fn sort_by_image(mut v: Vec<FieldElement>, j: usize) -> Result<Vec<FieldElement>, DensityError> {
    v.sort();
    v.dedup();
    let mut err = None;
    v.sort_by(|a, b| {
        a.cmp_at(b, j).unwrap_or_else(|e| {
            err = Some(e);
            Ordering::Equal
        })
    });
    match err {
        Some(e) => Err(e.into()),
        None => Ok(v),
    }
}

/// Exact check of the covering condition over points sorted by image.
fn verify_cover(alpha: &FieldElement, j: usize, pts: &[FieldElement]) -> Result<(), DensityError> {
    let ctx = alpha.context();
    let one = FieldElement::one(ctx);
    if pts.is_empty() {
        return Err(DensityError::Gap(0));
    }
    let has = |v: &FieldElement| pts.contains(v);
    if !has(&FieldElement::zero(ctx)) || !has(&one) {
        return Err(DensityError::MissingEndpoints);
    }
    let s = &one - alpha;
    if (&s * &pts[0]).sign_at(j)? == Ordering::Greater {
        return Err(DensityError::Gap(0));
    }
    for i in 0..pts.len() - 1 {
        // (1 - beta) x' + beta >= (1 - beta) y'
        let e = &(&(&s * &pts[i]) + alpha) - &(&s * &pts[i + 1]);
        if e.sign_at(j)? == Ordering::Less {
            return Err(DensityError::Gap(i));
        }
    }
    let last = &(&(&s * &pts[pts.len() - 1]) + alpha) - &one;
    if last.sign_at(j)? == Ordering::Less {
        return Err(DensityError::Gap(pts.len() - 1));
    }
    Ok(())
}

/// `mu` as a quadratic surd, from the minimal polynomial `x^2 + B x + C`.
fn conjugate_surd(ctx: &Context, j: usize) -> Result<QuadraticSurd, DensityError> {
    let mp = ctx.minpoly();
    let (b, c) = (mp.coeff(1), mp.coeff(0));
    let d: BigInt = &b * &b - BigInt::from(4) * &c;
    // roots are sorted ascending, so index 1 is (-B + sqrt D)/2
    let s = if j == 1 { QuadraticSurd::new(-b, d, 2) } else { QuadraticSurd::new(b, d, -2) };
    s.map_err(|_| DensityError::Unsupported)
}

/// `a + b mu` as the ring element `a + b lambda`.
fn linear(ctx: &Context, (a, b): (BigInt, BigInt)) -> FieldElement {
    FieldElement::new(ctx, vec![a, b]).expect("quadratic context")
}

/// Whether `eta_k + eta_{k-1} <= beta / (1 - beta)`, decided exactly.
pub fn gap_condition(cf: &PeriodicContinuedFraction, alpha: &FieldElement, j: usize, k: i64) -> Result<bool, DensityError> {
    let ctx = alpha.context();
    let eta = &linear(ctx, cf.eta(k)) + &linear(ctx, cf.eta(k - 1));
    // beta / (1 - beta) with 1 - beta > 0
    let lhs = &(&eta * &(&FieldElement::one(ctx) - alpha)) - alpha;
    Ok(lhs.sign_at(j)? != Ordering::Greater)
}

/// Least integer `>= b mu`, fixed up exactly from a floating estimate.
fn ceil_mul(ctx: &Context, j: usize, b: i64) -> Result<i64, DensityError> {
    let mu = ctx.root_f64(j).re;
    let mut c = (b as f64 * mu).ceil() as i64;
    let bl = FieldElement::from_i64(ctx, &[0, b])?;
    let diff = |c: i64| bl.add_int(-c).neg();
    // need c - b mu >= 0 and c - 1 - b mu < 0
    while diff(c).sign_at(j)? == Ordering::Less {
        c += 1;
    }
    while diff(c - 1).sign_at(j)? != Ordering::Less {
        c -= 1;
    }
    Ok(c)
}

/// Cover for a real quadratic parameter from the continued fraction of `mu`:
/// `X = {1} u {ceil(b mu) - b lambda : m <= b <= m + n}` with `n = q_k - 1`
/// for the least `k` meeting the gap condition, centred at `m`.
pub fn cover_set_quadratic(ctx: &Context, alpha: &FieldElement) -> Result<CoverSet, DensityError> {
    if ctx.degree() != 2 || !ctx.lambda_is_real() {
        return Err(DensityError::Unsupported);
    }
    let j = window_index(ctx)?;
    check_alpha(alpha, j)?;
    let one = FieldElement::one(ctx);
    let cf = surd_continued_fraction(&conjugate_surd(ctx, j)?).map_err(|_| DensityError::Unsupported)?;
    // beta / (1 - beta) >= 1 iff 2 beta >= 1
    if (alpha.scale(&2.into())).sign_against(&Rat::one(), j)? != Ordering::Less {
        let points = sort_by_image(vec![FieldElement::zero(ctx), one.clone()], j)?;
        verify_cover(alpha, j, &points)?;
        let info = QuadraticCoverInfo { cf, k: 0, q_k: BigInt::one(), n: 0, m: 0, max_abs: one, max_abs_formula: None };
        return Ok(CoverSet { ctx: ctx.clone(), alpha: alpha.clone(), index: j, points, quadratic: Some(info) });
    }
    let mut k = 0usize;
    while !gap_condition(&cf, alpha, j, k as i64)? {
        k += 1;
        if k > 10_000 {
            return Err(DensityError::PoolInsufficient);
        }
    }
    let q_k = cf.convergent(k as i64).1;
    let n = (&q_k - BigInt::one()).to_i64().ok_or(DensityError::PoolInsufficient)?;
    let lambda_pos = FieldElement::lambda(ctx).sign_at(ctx.lambda_index())? == Ordering::Greater;
    let m = if lambda_pos { -(n / 2) } else { -((n + 1) / 2) };
    let mut pts = vec![one];
    for b in m..=m + n {
        pts.push(FieldElement::from_i64(ctx, &[ceil_mul(ctx, j, b)?, -b])?);
    }
    let points = sort_by_image(pts, j)?;
    verify_cover(alpha, j, &points)?;
    let li = ctx.lambda_index();
    let mut max_abs = FieldElement::zero(ctx);
    for x in &points {
        let a = abs_real(x, li)?;
        if a.cmp_at(&max_abs, li)? == Ordering::Greater {
            max_abs = a;
        }
    }
    let max_abs_formula = (n > 0).then(|| max_abs_closed_form(ctx, j, n, lambda_pos)).transpose()?;
    let info = QuadraticCoverInfo { cf, k, q_k, n, m, max_abs, max_abs_formula };
    Ok(CoverSet { ctx: ctx.clone(), alpha: alpha.clone(), index: j, points, quadratic: Some(info) })
}

/// Closed form of `max |x|` for the centred cover.
fn max_abs_closed_form(ctx: &Context, j: usize, n: i64, lambda_pos: bool) -> Result<FieldElement, DensityError> {
    let floor_mul = |b: i64| -> Result<i64, DensityError> {
        let c = ceil_mul(ctx, j, b)?;
        let exact = FieldElement::from_i64(ctx, &[c, -b])?.is_zero();
        Ok(if exact { c } else { c - 1 })
    };
    let (h, even) = if n % 2 == 0 { (n / 2, true) } else { ((n + 1) / 2, false) };
    let e = if lambda_pos {
        let r = if even { floor_mul(h)? } else { ceil_mul(ctx, j, h)? };
        FieldElement::from_i64(ctx, &[-r, h])?
    } else {
        let r = if even { ceil_mul(ctx, j, h)? } else { floor_mul(h)? };
        FieldElement::from_i64(ctx, &[r, -h])?
    };
    Ok(e)
}

fn abs_real(x: &FieldElement, i: usize) -> Result<FieldElement, DensityError> {
    Ok(if x.sign_at(i)? == Ordering::Less { x.neg() } else { x.clone() })
}

/// Greedy cover from the model-set points of absolute value at most `radius`.
/// Starts from `{0, 1}` and repeatedly adds the candidate reaching furthest
/// past the current covered prefix; ties go to the smaller `|x|`.
pub fn cover_set_greedy(spec: &ModelSetSpec, alpha: &FieldElement, radius: &Rat) -> Result<CoverSet, DensityError> {
    let ctx = &spec.ctx;
    let j = window_index(ctx)?;
    check_alpha(alpha, j)?;
    let zero = FieldElement::zero(ctx);
    let one = FieldElement::one(ctx);
    let beta = alpha.shadow(j).re;
    let s = 1.0 - beta;
    let pool = enumerate_radius(spec, radius)?;
    let mut chosen = vec![zero, one];
    let img = |x: &FieldElement| x.shadow(j).re;
    let mut reach = beta;
    let stop = s;
    let mut cand: Vec<(f64, f64, FieldElement)> =
        pool.iter().map(|x| (img(x), x.approx().norm(), x.clone())).collect();
    cand.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.cmp(&b.2)));
    while reach < stop - 1e-15 {
        let mut best: Option<&(f64, f64, FieldElement)> = None;
        for c in &cand {
            if s * c.0 > reach + 1e-15 {
                break;
            }
            let better = match best {
                None => true,
                Some(b) => c.0 > b.0 || (c.0 == b.0 && c.1 < b.1),
            };
            if better {
                best = Some(c);
            }
        }
        match best {
            Some(b) if s * b.0 + beta > reach + 1e-15 => {
                reach = s * b.0 + beta;
                chosen.push(b.2.clone());
            }
            _ => return Err(DensityError::PoolInsufficient),
        }
    }
    let points = sort_by_image(chosen, j)?;
    verify_cover(alpha, j, &points).map_err(|_| DensityError::PoolInsufficient)?;
    Ok(CoverSet { ctx: ctx.clone(), alpha: alpha.clone(), index: j, points, quadratic: None })
}

/// The bound `M`, exact when `lambda` is real.
#[derive(Clone, Debug)]
pub struct SeedBound {
    /// Rational coordinates of `M` in the power basis, when real.
    pub exact: Option<Vec<Rat>>,
    pub enclosure: RationalInterval,
}

impl SeedBound {
    pub fn value(&self) -> f64 {
        rat_to_f64(&self.enclosure.mid())
    }

    /// `|y| <= M`; exact for real `lambda`, by refined intervals otherwise.
    pub fn admits(&self, y: &FieldElement) -> Result<bool, DensityError> {
        let ctx = y.context();
        let li = ctx.lambda_index();
        if let Some(c) = &self.exact {
            let den = denom_lcm(c);
            let num: Vec<BigInt> = c.iter().map(|q| (q * Rat::from_integer(den.clone())).to_integer()).collect();
            let n = FieldElement::new(ctx, num)?;
            let dy = y.scale(&den);
            return Ok((&n - &dy).sign_at(li)? != Ordering::Less && (&n + &dy).sign_at(li)? != Ordering::Less);
        }
        let m2 = self.enclosure.sqr();
        for k in 0..CMP_LEVELS {
            let n = y.enclosure_at_level(li, k).as_box().norm_sqr();
            if n.hi <= m2.lo {
                return Ok(true);
            }
            if n.lo > m2.hi {
                return Ok(false);
            }
        }
        Err(DensityError::Undecided)
    }
}

/// `M = |alpha - 1| / (|alpha| - 1) * max |x|` and the points of the model set
/// within `M` of the origin.
#[derive(Clone, Debug)]
pub struct SeedPlan {
    pub alpha: FieldElement,
    pub m: SeedBound,
    pub max_x: f64,
    pub y: PointSet,
}

impl SeedPlan {
    pub fn to_json(&self) -> Value {
        let ctx = self.alpha.context();
        let j = ctx.windowed_indices()[0];
        json!({
            "schema": "qlambda.seedplan/1",
            "alpha": ints_to_json(self.alpha.coords()),
            "beta": self.alpha.shadow(j).re,
            "M": {
                "decimal": crate::modelset::shadow_str(self.m.value()),
                "exact": self.m.exact.as_ref().map(|c| c.iter().map(|q| q.to_string()).collect::<Vec<_>>()),
            },
            "Y": self.y.iter().map(|y| ints_to_json(y.coords())).collect::<Vec<_>>(),
        })
    }
}

/// Interval for `|x|` at the designated root.
fn abs_enclosure(x: &FieldElement, level: usize) -> RationalInterval {
    let li = x.context().lambda_index();
    match x.enclosure_at_level(li, level) {
        Enclosure::Real(r) => r.abs(),
        Enclosure::Complex(b) => {
            let n = b.norm_sqr();
            RationalInterval::new(sqrt_lower(&n.lo, 80), sqrt_upper(&n.hi, 80))
        }
    }
}

pub fn seed_plan(cover: &CoverSet) -> Result<SeedPlan, DensityError> {
    let ctx = &cover.ctx;
    let li = ctx.lambda_index();
    let one = FieldElement::one(ctx);
    let a1 = &cover.alpha - &one;
    let spec = ModelSetSpec::unit(ctx)?;
    let (exact, enclosure) = if ctx.is_real_root(li) {
        let mut mx = FieldElement::zero(ctx);
        for x in &cover.points {
            let a = abs_real(x, li)?;
            if a.cmp_at(&mx, li)? == Ordering::Greater {
                mx = a;
            }
        }
        let num = &abs_real(&a1, li)? * &mx;
        let den = &abs_real(&cover.alpha, li)? - &one;
        let q = num.div_rational(&den).ok_or(DensityError::NotContracting)?;
        let den_l = denom_lcm(&q);
        let ints: Vec<BigInt> = q.iter().map(|c| (c * Rat::from_integer(den_l.clone())).to_integer()).collect();
        let e = FieldElement::new(ctx, ints)?;
        let w = Rat::new(1.into(), BigInt::from(1u64 << 50));
        let r = e.embed_interval(li, &w)?.real().cloned().ok_or(DensityError::Unsupported)?;
        let d = Rat::from_integer(den_l);
        (Some(q), RationalInterval::new(&r.lo / &d, &r.hi / &d))
    } else {
        let lvl = 12;
        let mut mx = RationalInterval::from_int(0);
        for x in &cover.points {
            let a = abs_enclosure(x, lvl);
            if a.hi > mx.hi {
                mx = RationalInterval::new(mx.lo.clone().max(a.lo.clone()), a.hi);
            } else if a.lo > mx.lo {
                mx = RationalInterval::new(a.lo, mx.hi.clone());
            }
        }
        let num = abs_enclosure(&a1, lvl).mul(&mx);
        let den = abs_enclosure(&cover.alpha, lvl).add_scalar(&-Rat::one());
        if den.lo <= Rat::zero() {
            return Err(DensityError::NotContracting);
        }
        let r = den.recip().ok_or(DensityError::NotContracting)?;
        (None, num.mul(&r))
    };
    let m = SeedBound { exact, enclosure };
    let mut radius = m.enclosure.hi.clone();
    if radius < Rat::one() {
        radius = Rat::one();
    }
    let pool = enumerate_radius(&spec, &radius)?;
    let mut ys = Vec::new();
    for y in pool.iter() {
        if m.admits(y)? {
            ys.push(y.clone());
        }
    }
    let max_x = cover.points.iter().map(|x| x.approx().norm()).fold(0.0, f64::max);
    Ok(SeedPlan { alpha: cover.alpha.clone(), m, max_x, y: PointSet::new(ctx, ys) })
}

/// `|a| < |b|` at the designated root, exact for real roots.
fn abs_lt(a: &FieldElement, b: &FieldElement) -> Result<bool, DensityError> {
    let ctx = a.context();
    let li = ctx.lambda_index();
    if ctx.is_real_root(li) {
        return Ok((&(b * b) - &(a * a)).sign_at(li)? == Ordering::Greater);
    }
    if a == b {
        return Ok(false);
    }
    for k in 0..CMP_LEVELS {
        let na = a.enclosure_at_level(li, k).as_box().norm_sqr();
        let nb = b.enclosure_at_level(li, k).as_box().norm_sqr();
        if na.hi < nb.lo {
            return Ok(true);
        }
        if na.lo >= nb.hi {
            return Ok(false);
        }
    }
    Err(DensityError::Undecided)
}

/// Reduce `z` to the seed: while `|z| > M`, write `z = x *_alpha y` with
/// `y = x + (z - x) / alpha` for a covering `x`. Each `y` is checked to lie
/// in the model set and to be strictly smaller than `z`.
pub fn reduce_to_seed(z: &FieldElement, plan: &SeedPlan, cover: &CoverSet) -> Result<Derivation, DensityError> {
    let ctx = &cover.ctx;
    let j = cover.index;
    let alpha = &cover.alpha;
    let inv = alpha.try_inverse().ok_or(DensityError::NotUnit)?;
    let one = FieldElement::one(ctx);
    let s = &one - alpha;
    let spec = ModelSetSpec::unit(ctx)?;
    let mut chain: Vec<(FieldElement, FieldElement)> = Vec::new();
    let mut cur = z.clone();
    // covering candidates ordered by |x| then coordinates
    let mut order = cover.points.clone();
    order.sort_by(|a, b| a.approx().norm().total_cmp(&b.approx().norm()).then(a.cmp(b)));
    while !plan.m.admits(&cur)? {
        let mut pick = None;
        for x in &order {
            let lo = &cur - &(&s * x);
            let hi = &(&(&s * x) + alpha) - &cur;
            if lo.sign_at(j)? != Ordering::Less && hi.sign_at(j)? != Ordering::Less {
                pick = Some(x.clone());
                break;
            }
        }
        let x = pick.ok_or_else(|| DensityError::NoCover(cur.to_string()))?;
        let y = &x + &(&(&cur - &x) * &inv);
        if !spec.window.contains(&y) {
            return Err(DensityError::LeftModelSet(y.to_string()));
        }
        if !abs_lt(&y, &cur)? {
            return Err(DensityError::NoDecrease(cur.to_string()));
        }
        chain.push((x, cur.clone()));
        cur = y;
    }
    if !plan.y.contains(&cur) {
        return Err(DensityError::NotInSeed(cur.to_string()));
    }
    let seed: Vec<FieldElement> = plan.y.elements().to_vec();
    Ok(chain_derivation(&cur, &chain, alpha, &seed, false))
}

/// Build a derivation from the base `b` upwards: step `i` produces
/// `chain[i].1` from the constant `chain[i].0` and the previous value. With
/// `const_left` false the previous value is the right operand; `swap` flips
/// the order of every step.
fn chain_derivation(
    base: &FieldElement,
    chain: &[(FieldElement, FieldElement)],
    param: &FieldElement,
    seed: &[FieldElement],
    swap: bool,
) -> Derivation {
    build_chain(base, &chain.iter().map(|(c, v)| (c.clone(), v.clone(), true)).collect::<Vec<_>>(), param, seed, swap)
}

/// Each entry `(c, v, const_left)`: `v = c * prev` if `const_left`, else
/// `v = prev * c`.
fn build_chain(
    base: &FieldElement,
    chain: &[(FieldElement, FieldElement, bool)],
    param: &FieldElement,
    seed: &[FieldElement],
    swap: bool,
) -> Derivation {
    let mut arena = DerivationArena::default();
    let mut nodes: HashMap<FieldElement, usize> = HashMap::new();
    let mut node = |arena: &mut DerivationArena, v: &FieldElement| -> usize {
        *nodes.entry(v.clone()).or_insert_with(|| arena.push(v.clone(), None))
    };
    let mut prev = node(&mut arena, base);
    for (c, v, const_left) in chain.iter().rev() {
        let ci = node(&mut arena, c);
        let (l, r) = if *const_left { (ci, prev) } else { (prev, ci) };
        let (l, r) = if swap { (r, l) } else { (l, r) };
        prev = arena.push(v.clone(), Some((l, r)));
    }
    arena.derivation(prev, param, seed)
}

/// The parameter normalised for replication and how it relates to `lambda`.
#[derive(Clone, Debug)]
pub struct ReplicationSetup {
    /// `lambda` or `1 - lambda`, whichever has the preferred conjugate.
    pub nu: FieldElement,
    /// True when `nu = 1 - lambda`; steps then swap operands.
    pub swapped: bool,
    pub golden: bool,
    pub base: Vec<FieldElement>,
}

/// Identify the replication family. The golden case normalises to
/// `nu = 1 + phi` (conjugate below 1/2); the others to the conjugate above 1/2.
pub fn replication_setup(ctx: &Context) -> Result<ReplicationSetup, DensityError> {
    if ctx.degree() != 2 || !ctx.lambda_is_real() {
        return Err(DensityError::UnsupportedFamily);
    }
    let mp = ctx.minpoly();
    let c: Vec<i64> = mp.coeffs().iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect();
    let golden = matches!(c.as_slice(), [1, -3, 1] | [-1, 1, 1]);
    let family = golden || matches!(c.as_slice(), [2, -4, 1] | [-1, 2, 1] | [1, -4, 1] | [-2, 2, 1]);
    if !family {
        return Err(DensityError::UnsupportedFamily);
    }
    let j = window_index(ctx).map_err(|_| DensityError::UnsupportedFamily)?;
    let l = FieldElement::lambda(ctx);
    let one = FieldElement::one(ctx);
    let half = Rat::new(1.into(), 2.into());
    let mu_big = l.sign_against(&half, j)? == Ordering::Greater;
    let swapped = if golden { mu_big } else { !mu_big };
    let nu = if swapped { &one - &l } else { l };
    let mut base = vec![FieldElement::zero(ctx), one.clone(), nu.clone(), &one - &nu];
    if golden {
        // nu * 0 = nu (1 - nu), the point of absolute value phi^3
        base.push(&nu * &(&one - &nu));
    }
    base.sort();
    Ok(ReplicationSetup { nu, swapped, golden, base })
}

/// Reduce a model-set point to the replication base by peeling off
/// extrapolations by 0 or 1. By conjugate image: `[0, 1 - mu]` undoes a right
/// extrapolation by 0, `[mu, 1]` one by 1, and the middle band undoes a left
/// extrapolation by 0 or 1 according to the residue of `z` mod `nu`.
pub fn replication_reduce(z: &FieldElement) -> Result<Derivation, DensityError> {
    let ctx = z.context();
    let set = replication_setup(ctx)?;
    let j = window_index(ctx)?;
    let spec = ModelSetSpec::unit(ctx)?;
    if !spec.window.contains(z) {
        return Err(DensityError::LeftModelSet(z.to_string()));
    }
    let nu = &set.nu;
    let one = FieldElement::one(ctx);
    let zero = FieldElement::zero(ctx);
    let one_nu = &one - nu;
    let mu_c = nu.clone(); // image at j is mu
    let mut chain: Vec<(FieldElement, FieldElement, bool)> = Vec::new();
    let mut cur = z.clone();
    let mut steps = 0;
    while !set.base.contains(&cur) {
        steps += 1;
        if steps > 100_000 {
            return Err(DensityError::NoDecrease(cur.to_string()));
        }
        // x' <= 1 - mu  <=>  (1 - nu) - x >= 0 at j
        let low = (&one_nu - &cur).sign_at(j)? != Ordering::Less;
        let high = (&cur - &mu_c).sign_at(j)? != Ordering::Less;
        let (c, y, const_left) = if low {
            // cur = y * 0 = (1 - nu) y
            (zero.clone(), cur.exact_div(&one_nu).ok_or(DensityError::NotUnit)?, false)
        } else if high {
            // cur = y * 1 = (1 - nu) y + nu
            (one.clone(), (&cur - nu).exact_div(&one_nu).ok_or(DensityError::NotUnit)?, false)
        } else if let Some(y) = cur.exact_div(nu) {
            // cur = 0 * y = nu y
            (zero.clone(), y, true)
        } else {
            // cur = 1 * y = 1 - nu + nu y
            (one.clone(), (&cur - &one_nu).exact_div(nu).ok_or(DensityError::NotUnit)?, true)
        };
        if !spec.window.contains(&y) {
            return Err(DensityError::LeftModelSet(y.to_string()));
        }
        if !abs_lt(&y, &cur)? && !set.base.contains(&y) {
            return Err(DensityError::NoDecrease(cur.to_string()));
        }
        chain.push((c, cur.clone(), const_left));
        cur = y;
    }
    let lam = FieldElement::lambda(ctx);
    Ok(build_chain(&cur, &chain, &lam, &set.base, set.swapped))
}

/// Integer vector helper for reports.
pub fn coords_vec(x: &FieldElement) -> Vec<String> {
    x.coords().iter().map(|c| c.to_string()).collect()
}

/// `true` when `x` is at most `bound` in absolute value at every real root;
/// used only to sanity-check enumerations in reports.
pub fn is_small(x: &FieldElement, bound: f64) -> bool {
    x.coords().iter().all(|c| c.abs().to_f64().is_some_and(|v| v <= bound))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::replay_derivation;
    use crate::field::make_context;
    use crate::poly::IntPolynomial;
    use crate::spv::{quadratic_from_mn, window_unit};
    use num_complex::Complex;

    fn el(ctx: &Context, c: &[i64]) -> FieldElement {
        FieldElement::from_i64(ctx, c).unwrap()
    }

    #[test]
    fn thirteen_case() {
        let c = quadratic_from_mn(3, 1).unwrap();
        let l = FieldElement::lambda(&c);
        let x = vec![el(&c, &[0, 0]), el(&c, &[1, 0]), el(&c, &[0, 1]), el(&c, &[0, 2])];
        let cover = CoverSet::from_points(&c, &l, x).unwrap();
        let plan = seed_plan(&cover).unwrap();
        let r = |a: i64, b: i64| Rat::new(a.into(), b.into());
        assert_eq!(plan.m.exact, Some(vec![r(4, 3), r(-10, 3)]));
        assert!((plan.m.value() - 12.342585).abs() < 1e-6);
        let want: Vec<FieldElement> =
            [[0, 3], [0, 2], [0, 1], [0, 0], [1, 0], [1, -1], [1, -2], [1, -3]].iter().map(|v| el(&c, v)).collect();
        assert_eq!(plan.y, PointSet::new(&c, want));
        let z = el(&c, &[2, -6]);
        let d = reduce_to_seed(&z, &plan, &cover).unwrap();
        assert_eq!(d.star_count(), 1);
        assert_eq!(replay_derivation(&d).unwrap(), z);
        assert_eq!(reduce_to_seed(&el(&c, &[0, 1]), &plan, &cover).unwrap().star_count(), 0);
    }

    #[test]
    fn seventeen_case() {
        let c = quadratic_from_mn(3, 2).unwrap();
        let a = window_unit(&c).unwrap();
        let cover = cover_set_quadratic(&c, &a).unwrap();
        let q = cover.quadratic.as_ref().unwrap();
        assert_eq!((q.k, q.n, q.m), (7, 72, -36));
        assert_eq!(cover.points.len(), 74);
        assert_eq!(q.max_abs_formula.as_ref(), Some(&q.max_abs));
        assert!(!gap_condition(&q.cf, &a, cover.index, 6).unwrap());
        assert!(cover.is_minimal());
    }

    #[test]
    fn cubic_greedy() {
        let c = make_context(&IntPolynomial::parse("x^3+x^2-1").unwrap(), Complex::new(-0.88, 0.74)).unwrap();
        let spec = ModelSetSpec::unit(&c).unwrap();
        let l = FieldElement::lambda(&c);
        let cover = cover_set_greedy(&spec, &l, &Rat::from_integer(4.into())).unwrap();
        assert_eq!(cover.points.len(), 2);
        let plan = seed_plan(&cover).unwrap();
        assert!((plan.m.value() - 13.379361).abs() < 1e-6);
    }

    #[test]
    fn replication_examples() {
        let c = make_context(&IntPolynomial::parse("x^2-3x+1").unwrap(), Complex::new(2.6, 0.0)).unwrap();
        let z = el(&c, &[0, 2]);
        let d = replication_reduce(&z).unwrap();
        assert_eq!(d.star_count(), 1);
        assert_eq!(replay_derivation(&d).unwrap(), z);
        // lambda * 0 = 1 - 2 lambda is a base point
        assert_eq!(replication_reduce(&el(&c, &[1, -2])).unwrap().star_count(), 0);
        assert_eq!(replication_reduce(&el(&c, &[0, 0])).unwrap().star_count(), 0);
        let bad = quadratic_from_mn(3, 1).unwrap();
        assert!(matches!(replication_reduce(&FieldElement::zero(&bad)), Err(DensityError::UnsupportedFamily)));
    }
}
