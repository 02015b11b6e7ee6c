//! The star operation, rank closures, saturation inside a region, derivation
//! search and convexity witnesses.

use std::cmp::{Ordering, Reverse};
use std::collections::{BinaryHeap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::derivation::{star_op, Derivation, DerivationArena};
use crate::field::{AlgebraError, Context, Enclosure, FieldElement};
use crate::interval::{rat_to_f64, RationalInterval};
use crate::modelset::Window;
use crate::spv::{convexity_region, ConvexityRegion};
use crate::Rat;

/// Refinement levels tried before an `|x| <= r` comparison against a
/// non-real embedding is treated as satisfied.
const ABS_LEVELS: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_points: usize,
    pub max_abs: Rat,
    pub max_depth: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_points: 200_000, max_abs: Rat::from_integer(10_000.into()), max_depth: 16 }
    }
}

impl SearchBudget {
    pub fn new(max_points: usize, max_abs: i64, max_depth: usize) -> Self {
        SearchBudget { max_points, max_abs: Rat::from_integer(max_abs.into()), max_depth }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum StarError {
    #[error("point budget of {max_points} exceeded at level {level}")]
    Budget { level: usize, max_points: usize, partial: Box<PointSet> },
    #[error("target not found within budget (this is not a proof of non-membership)")]
    NotFound,
    #[error("seed set is empty")]
    EmptySeed,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A deduplicated set of field elements in lexicographic coordinate order.
/// Equality compares the elements only, not the generation metadata.
#[derive(Clone, Debug)]
pub struct PointSet {
    ctx: Context,
    elements: Vec<FieldElement>,
    /// Closure level reached, when produced by a rank closure.
    pub rank: Option<usize>,
    /// Radius bound used to produce the set, if any.
    pub radius: Option<Rat>,
    pub saturated: bool,
}

impl PartialEq for PointSet {
    fn eq(&self, o: &Self) -> bool {
        self.elements == o.elements
    }
}

impl Eq for PointSet {}

impl PointSet {
    pub fn new(ctx: &Context, mut elements: Vec<FieldElement>) -> Self {
        elements.sort();
        elements.dedup();
        PointSet { ctx: ctx.clone(), elements, rank: None, radius: None, saturated: false }
    }

    pub fn from_coords(ctx: &Context, coords: &[&[i64]]) -> Result<Self, AlgebraError> {
        let els = coords.iter().map(|c| FieldElement::from_i64(ctx, c)).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(ctx, els))
    }

    /// `{0, 1}`.
    pub fn unit_seed(ctx: &Context) -> Self {
        Self::new(ctx, vec![FieldElement::zero(ctx), FieldElement::one(ctx)])
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<FieldElement> {
        self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FieldElement> {
        self.elements.iter()
    }

    /// Elements ordered by their value at the designated real root.
    pub fn sorted_by_value(&self) -> Vec<FieldElement> {
        let i = self.ctx.lambda_index();
        let mut v = self.elements.clone();
        v.sort_by(|a, b| a.cmp_at(b, i).unwrap_or_else(|_| a.cmp(b)));
        v
    }
}

/// `(1 - param) a + param b`.
pub fn star(a: &FieldElement, b: &FieldElement, param: &FieldElement) -> Result<FieldElement, AlgebraError> {
    if !a.same_context(b) || !a.same_context(param) {
        return Err(AlgebraError::ContextMismatch);
    }
    Ok(star_op(a, b, param))
}

/// Level `n` of the rank stratification under `lambda`, with the default point budget.
pub fn closure_rank(seed: &PointSet, n: usize) -> Result<PointSet, StarError> {
    let param = FieldElement::lambda(seed.context());
    closure_rank_with(seed, &param, n, SearchBudget::default().max_points)
}

/// Level `n` of the rank stratification under an arbitrary parameter: level
/// `k + 1` is every star of an ordered pair from level `k`.
pub fn closure_rank_with(seed: &PointSet, param: &FieldElement, n: usize, max_points: usize) -> Result<PointSet, StarError> {
    let ctx = seed.context().clone();
    let mut level: Vec<FieldElement> = seed.elements().to_vec();
    for k in 0..n {
        let next: HashSet<FieldElement> = level
            .par_iter()
            .flat_map_iter(|a| level.iter().map(move |b| star_op(a, b, param)).collect::<Vec<_>>())
            .collect();
        if next.len() > max_points {
            let mut partial = PointSet::new(&ctx, level);
            partial.rank = Some(k);
            return Err(StarError::Budget { level: k + 1, max_points, partial: Box::new(partial) });
        }
        let mut v: Vec<FieldElement> = next.into_iter().collect();
        v.sort();
        if v.len() == level.len() {
            level = v;
            break;
        }
        level = v;
    }
    let mut out = PointSet::new(&ctx, level);
    out.rank = Some(n);
    Ok(out)
}

/// `|x| <= r` at the designated root. Exact for a real root; for a non-real
/// root the comparison uses refined enclosures and counts an undecided
/// comparison as satisfied, so filtering never drops a point wrongly.
pub fn abs_le(x: &FieldElement, r: &Rat) -> bool {
    let ctx = x.context();
    let i = ctx.lambda_index();
    if ctx.is_real_root(i) {
        let up = x.sign_against(r, i).map(|o| o != Ordering::Greater).unwrap_or(true);
        let down = x.sign_against(&-r.clone(), i).map(|o| o != Ordering::Less).unwrap_or(true);
        return up && down;
    }
    let r2 = r * r;
    for k in 0..ABS_LEVELS {
        let n = x.enclosure_at_level(i, k).as_box().norm_sqr();
        if n.hi <= r2 {
            return true;
        }
        if n.lo > r2 {
            return false;
        }
    }
    true
}

/// Result of a saturation run; every point carries a derivation.
#[derive(Clone, Debug)]
pub struct Saturation {
    pub set: PointSet,
    pub saturated: bool,
    pub param: FieldElement,
    pub seed: Vec<FieldElement>,
    arena: DerivationArena,
    index: HashMap<FieldElement, usize>,
}

impl Saturation {
    pub fn derivation_of(&self, x: &FieldElement) -> Option<Derivation> {
        let &i = self.index.get(x)?;
        Some(self.arena.derivation(i, &self.param, &self.seed))
    }

    pub fn arena(&self) -> &DerivationArena {
        &self.arena
    }
}

/// Fixed-point iteration of the star operation over points inside the window
/// and within `radius` of the origin. Membership of returned points is
/// certified by their derivations; absence is not a non-membership proof.
pub fn saturate_region(seed: &PointSet, window: &Window, radius: &Rat, budget: &SearchBudget) -> Saturation {
    let param = FieldElement::lambda(seed.context());
    let mut s = saturate_with(seed, &param, budget, |c| window.contains(c) && abs_le(c, radius));
    s.set.radius = Some(radius.clone());
    s
}

/// Saturation under an arbitrary acceptance predicate.
pub fn saturate_with<F>(seed: &PointSet, param: &FieldElement, budget: &SearchBudget, accept: F) -> Saturation
where
    F: Fn(&FieldElement) -> bool + Sync,
{
    let ctx = seed.context().clone();
    let mut arena = DerivationArena::default();
    let mut index: HashMap<FieldElement, usize> = HashMap::new();
    for x in seed.elements() {
        let i = arena.push(x.clone(), None);
        index.insert(x.clone(), i);
    }
    let mut frontier: Vec<usize> = (0..arena.values.len()).collect();
    let mut saturated = false;
    loop {
        if frontier.is_empty() {
            saturated = true;
            break;
        }
        let values = &arena.values;
        let idx = &index;
        let mut cands: Vec<(FieldElement, usize, usize)> = frontier
            .par_iter()
            .flat_map_iter(|&p| {
                let mut local = Vec::new();
                let mut seen = HashSet::new();
                for q in 0..values.len() {
                    for (a, b) in [(p, q), (q, p)] {
                        let c = star_op(&values[a], &values[b], param);
                        if idx.contains_key(&c) || !seen.insert(c.clone()) {
                            continue;
                        }
                        if accept(&c) {
                            local.push((c, a, b));
                        }
                    }
                }
                local
            })
            .collect();
        cands.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
        cands.dedup_by(|x, y| x.0 == y.0);
        let mut next = Vec::new();
        let mut over = false;
        for (c, a, b) in cands {
            if arena.values.len() >= budget.max_points {
                over = true;
                break;
            }
            let i = arena.push(c.clone(), Some((a, b)));
            index.insert(c, i);
            next.push(i);
        }
        if over {
            break;
        }
        frontier = next;
    }
    let mut set = PointSet::new(&ctx, arena.values.clone());
    set.saturated = saturated;
    Saturation { set, saturated, param: param.clone(), seed: seed.elements().to_vec(), arena, index }
}

/// Best-first search for a derivation of `target` under `lambda`.
pub fn derivation_search(target: &FieldElement, seed: &PointSet, budget: &SearchBudget) -> Result<Derivation, StarError> {
    let param = FieldElement::lambda(seed.context());
    derivation_search_with(target, seed, &param, budget)
}

#[derive(PartialEq, PartialOrd)]
struct Priority(f64);
impl Eq for Priority {}
impl Ord for Priority {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.total_cmp(&o.0)
    }
}

/// Best-first search: the point of least absolute value (ties broken by
/// coordinate order) is settled next and starred with every settled point in
/// both orders. Budgets bound settled points, absolute value and depth.
pub fn derivation_search_with(
    target: &FieldElement,
    seed: &PointSet,
    param: &FieldElement,
    budget: &SearchBudget,
) -> Result<Derivation, StarError> {
    if seed.is_empty() {
        return Err(StarError::EmptySeed);
    }
    if !target.same_context(param) {
        return Err(AlgebraError::ContextMismatch.into());
    }
    let seeds = seed.elements().to_vec();
    let max_abs = rat_to_f64(&budget.max_abs);
    let mut arena = DerivationArena::default();
    let mut index: HashMap<FieldElement, usize> = HashMap::new();
    let mut depth: Vec<usize> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(Priority, Vec<BigInt>, usize)>> = BinaryHeap::new();
    for x in &seeds {
        let i = arena.push(x.clone(), None);
        index.insert(x.clone(), i);
        depth.push(0);
        if x == target {
            return Ok(arena.derivation(i, param, &seeds));
        }
        heap.push(Reverse((Priority(x.approx().norm()), x.coords().to_vec(), i)));
    }
    let mut settled: Vec<usize> = Vec::new();
    let mut is_settled = vec![false; arena.values.len()];
    while let Some(Reverse((_, _, p))) = heap.pop() {
        if is_settled[p] {
            continue;
        }
        is_settled[p] = true;
        settled.push(p);
        if settled.len() > budget.max_points {
            break;
        }
        for si in 0..settled.len() {
            let s = settled[si];
            let pairs: &[(usize, usize)] = if s == p { &[(p, p)] } else { &[(p, s), (s, p)] };
            for &(a, b) in pairs {
                let d = 1 + depth[a].max(depth[b]);
                if d > budget.max_depth {
                    continue;
                }
                let c = star_op(&arena.values[a], &arena.values[b], param);
                if index.contains_key(&c) {
                    continue;
                }
                let v = c.approx().norm();
                if v > max_abs {
                    continue;
                }
                let i = arena.push(c.clone(), Some((a, b)));
                index.insert(c.clone(), i);
                depth.push(d);
                is_settled.push(false);
                if &c == target {
                    return Ok(arena.derivation(i, param, &seeds));
                }
                heap.push(Reverse((Priority(v), c.coords().to_vec(), i)));
            }
        }
    }
    Err(StarError::NotFound)
}

/// Parameter for a convexity-witness search: an element of a number field,
/// or an exact Gaussian rational `re + i im`.
#[derive(Clone, Debug)]
pub enum LambdaValue {
    Element(FieldElement),
    Gaussian(Rat, Rat),
}

impl LambdaValue {
    /// Parse `"2.5"`, `"7/10"` or `"(re,im)"` as an exact value.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let mut it = inner.split(',');
            let re = parse_decimal(it.next()?)?;
            let im = parse_decimal(it.next()?)?;
            return it.next().is_none().then_some(LambdaValue::Gaussian(re, im));
        }
        Some(LambdaValue::Gaussian(parse_decimal(s)?, Rat::zero()))
    }
}

/// Exact value of a decimal or fraction literal.
pub fn parse_decimal(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        return (!d.is_zero()).then(|| Rat::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{ip}{fp}").trim_start_matches('0').parse().unwrap_or_else(|_| BigInt::zero());
    let v = Rat::new(digits, num_traits::pow(BigInt::from(10), fp.len()));
    Some(if neg { -v } else { v })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictKind {
    Convex,
    UnknownAtBudget,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexityVerdict {
    pub kind: VerdictKind,
    /// The set the closure equals when convex.
    pub region: Option<ConvexityRegion>,
    /// Two points of the closure at distance strictly between 0 and 1.
    pub witness: Option<(String, String)>,
    pub distance: Option<f64>,
}

/// Gaussian rational, used for exact closures at rational or complex
/// rational parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Gq(Rat, Rat);

impl Gq {
    fn int(n: i64) -> Self {
        Gq(Rat::from_integer(n.into()), Rat::zero())
    }
    fn sub(&self, o: &Self) -> Self {
        Gq(&self.0 - &o.0, &self.1 - &o.1)
    }
    fn add(&self, o: &Self) -> Self {
        Gq(&self.0 + &o.0, &self.1 + &o.1)
    }
    fn mul(&self, o: &Self) -> Self {
        Gq(&self.0 * &o.0 - &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }
    fn norm(&self) -> Rat {
        &self.0 * &self.0 + &self.1 * &self.1
    }
    fn star(a: &Self, b: &Self, l: &Self) -> Self {
        a.add(&l.mul(&b.sub(a)))
    }
    fn show(&self) -> String {
        if self.1.is_zero() {
            format!("{}", self.0)
        } else {
            format!("({}, {})", self.0, self.1)
        }
    }
}

fn gaussian_region(l: &Gq) -> ConvexityRegion {
    if !l.1.is_zero() {
        ConvexityRegion::ComplexPlane
    } else if l.0 >= Rat::zero() && l.0 <= Rat::one() {
        ConvexityRegion::UnitInterval
    } else {
        ConvexityRegion::RealLine
    }
}

/// Search for two closure points at distance in `(0, 1)`, which forces the
/// closure to be convex. Cheap candidates come first: `lambda` against 0 and
/// against `(lambda - 1)^2`, `lambda^2 - lambda + 1` against 0, then `1 - lambda`
/// and `lambda` against the remaining seed points; then the rank closure of `{0, 1}` is scanned
/// level by level within the budget.
pub fn convexity_witness(lambda: &LambdaValue, budget: &SearchBudget) -> ConvexityVerdict {
    match lambda {
        LambdaValue::Gaussian(re, im) => gaussian_witness(&Gq(re.clone(), im.clone()), budget),
        LambdaValue::Element(l) => element_witness(l, budget),
    }
}

fn unknown(region: Option<ConvexityRegion>) -> ConvexityVerdict {
    let _ = region;
    ConvexityVerdict { kind: VerdictKind::UnknownAtBudget, region: None, witness: None, distance: None }
}

fn gaussian_witness(l: &Gq, budget: &SearchBudget) -> ConvexityVerdict {
    let zero = Gq::int(0);
    let one = Gq::int(1);
    let region = gaussian_region(l);
    let found = |a: &Gq, b: &Gq| {
        let n = a.sub(b).norm();
        (n > Rat::zero() && n < Rat::one()).then(|| ConvexityVerdict {
            kind: VerdictKind::Convex,
            region: Some(region),
            witness: Some((a.show(), b.show())),
            distance: Some(rat_to_f64(&n).sqrt()),
        })
    };
    let lm1 = l.sub(&one);
    let beta = lm1.mul(&lm1);
    let mu = l.mul(l).sub(l).add(&one);
    let one_minus = one.sub(l);
    for (a, b) in [(l, &zero), (l, &beta), (&mu, &zero), (&one_minus, &zero), (l, &one)] {
        if let Some(v) = found(a, b) {
            return v;
        }
    }
    let mut level: Vec<Gq> = vec![zero, one];
    for _ in 0..budget.max_depth {
        let mut next: Vec<Gq> = level.iter().flat_map(|a| level.iter().map(move |b| Gq::star(a, b, l))).collect();
        next.sort();
        next.dedup();
        if next.len() > budget.max_points {
            break;
        }
        for i in 0..next.len() {
            for j in i + 1..next.len() {
                if let Some(v) = found(&next[i], &next[j]) {
                    return v;
                }
            }
        }
        if next.len() == level.len() {
            break;
        }
        level = next;
    }
    unknown(Some(region))
}

/// `0 < |a - b| < 1` at the designated root, decided exactly for real roots
/// and by interval separation otherwise.
pub fn distance_below_one(a: &FieldElement, b: &FieldElement) -> Option<f64> {
    let d = a - b;
    if d.is_zero() {
        return None;
    }
    let ctx = d.context();
    let i = ctx.lambda_index();
    if ctx.is_real_root(i) {
        let sq = &d * &d;
        return (sq.sign_against(&Rat::one(), i).ok()? == Ordering::Less).then(|| d.value_f64().norm());
    }
    for k in 0..ABS_LEVELS {
        let n: RationalInterval = match d.enclosure_at_level(i, k) {
            Enclosure::Complex(b) => b.norm_sqr(),
            Enclosure::Real(r) => r.sqr(),
        };
        if n.lo >= Rat::one() || n.hi <= Rat::zero() {
            return None;
        }
        if n.lo > Rat::zero() && n.hi < Rat::one() {
            return Some(d.value_f64().norm());
        }
    }
    None
}

fn element_witness(l: &FieldElement, budget: &SearchBudget) -> ConvexityVerdict {
    let ctx = l.context();
    let zero = FieldElement::zero(ctx);
    let one = FieldElement::one(ctx);
    let region = if l == &FieldElement::lambda(ctx) { convexity_region(ctx) } else { element_region(l) };
    let found = |a: &FieldElement, b: &FieldElement| {
        distance_below_one(a, b).map(|dist| ConvexityVerdict {
            kind: VerdictKind::Convex,
            region: Some(region),
            witness: Some((a.to_string(), b.to_string())),
            distance: Some(dist),
        })
    };
    let lm1 = l - &one;
    let beta = &lm1 * &lm1;
    let mu = &(&(l * l) - l) + &one;
    let one_minus = &one - l;
    for (a, b) in [(l, &zero), (l, &beta), (&mu, &zero), (&one_minus, &zero), (l, &one)] {
        if let Some(v) = found(a, b) {
            return v;
        }
    }
    let mut level: Vec<FieldElement> = vec![zero, one];
    for _ in 0..budget.max_depth {
        let mut next: Vec<FieldElement> =
            level.iter().flat_map(|a| level.iter().map(move |b| star_op(a, b, l))).collect();
        next.sort();
        next.dedup();
        if next.len() > budget.max_points {
            break;
        }
        // only pairs that are numerically close need the exact test
        let mut byval: Vec<(f64, f64, usize)> = next
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let v = x.approx();
                (v.re, v.im, i)
            })
            .collect();
        byval.sort_by(|a, b| a.0.total_cmp(&b.0));
        for i in 0..byval.len() {
            for j in i + 1..byval.len() {
                if byval[j].0 - byval[i].0 > 1.0 + 1e-9 {
                    break;
                }
                let (a, b) = (&next[byval[i].2], &next[byval[j].2]);
                let dv = (byval[j].1 - byval[i].1).abs();
                if dv > 1.0 + 1e-9 {
                    continue;
                }
                if let Some(v) = found(a, b) {
                    return v;
                }
            }
        }
        if next.len() == level.len() {
            break;
        }
        level = next;
    }
    unknown(Some(region))
}

fn element_region(l: &FieldElement) -> ConvexityRegion {
    let ctx = l.context();
    let i = ctx.lambda_index();
    if !ctx.is_real_root(i) {
        let v = l.value_f64();
        if v.im.abs() > 1e-12 {
            return ConvexityRegion::ComplexPlane;
        }
    }
    let ge0 = l.sign_of_real_image(&Rat::zero(), i).map(|o| o != Ordering::Less).unwrap_or(false);
    let le1 = l.sign_of_real_image(&Rat::one(), i).map(|o| o != Ordering::Greater).unwrap_or(false);
    if ge0 && le1 {
        ConvexityRegion::UnitInterval
    } else {
        ConvexityRegion::RealLine
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_context;
    use crate::poly::IntPolynomial;
    use num_complex::Complex;

    fn int_ctx(l: i64) -> Context {
        make_context(&IntPolynomial::from_i64(&[-l, 1]), Complex::new(l as f64, 0.0)).unwrap()
    }

    #[test]
    fn star_examples() {
        let c = make_context(&IntPolynomial::parse("x^2+x-1").unwrap(), Complex::new(-1.6, 0.0)).unwrap();
        let l = FieldElement::lambda(&c);
        let z = FieldElement::zero(&c);
        let o = FieldElement::one(&c);
        assert_eq!(star(&z, &o, &l).unwrap(), l);
        assert_eq!(star(&o, &z, &l).unwrap(), &o - &l);
        assert_eq!(star(&l, &z, &l).unwrap(), &l * &(&o - &l));
    }

    #[test]
    fn integer_closure_levels() {
        let c = int_ctx(2);
        let seed = PointSet::unit_seed(&c);
        let l1 = closure_rank(&seed, 1).unwrap();
        assert_eq!(l1.len(), 4); // 0, 1, 2 and 1 * 0 = -1
        let l2 = closure_rank(&seed, 2).unwrap();
        let vals: Vec<i64> = l2.iter().map(|x| x.coords_i64().unwrap()[0]).collect();
        assert_eq!(vals, (-4..=5).collect::<Vec<_>>());
    }

    #[test]
    fn search_finds_conjecture_instance() {
        let c = int_ctx(3);
        let d = derivation_search(&FieldElement::from_int(&c, 6), &PointSet::unit_seed(&c), &SearchBudget::default()).unwrap();
        assert_eq!(crate::derivation::replay_derivation(&d).unwrap(), FieldElement::from_int(&c, 6));
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_decimal("2.5"), Some(Rat::new(5.into(), 2.into())));
        assert_eq!(parse_decimal("-0.125"), Some(Rat::new((-1).into(), 8.into())));
        assert_eq!(parse_decimal("7/10"), Some(Rat::new(7.into(), 10.into())));
        assert_eq!(parse_decimal("x"), None);
    }

    #[test]
    fn witnesses() {
        let v = convexity_witness(&LambdaValue::parse("2.5").unwrap(), &SearchBudget::new(2000, 100, 4));
        assert_eq!(v.kind, VerdictKind::Convex);
        assert_eq!(v.witness.unwrap(), ("5/2".to_string(), "9/4".to_string()));
        let v = convexity_witness(&LambdaValue::parse("0.7").unwrap(), &SearchBudget::new(2000, 100, 4));
        assert_eq!(v.region, Some(ConvexityRegion::UnitInterval));
        assert_eq!(v.witness.unwrap().1, "0");
    }
}
