//! Windows and the model sets they cut out of `Z[lambda]`: exact membership,
//! enumeration by radius, progression intersection, the cut-and-project
//! matrices and integer congruence supersets.

use std::cmp::Ordering;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::derivation::ints_to_json;
use crate::field::{AlgebraError, Context, Enclosure, FieldElement};
use crate::interval::{f64_to_rat, format_sig, rat_to_f64, RationalInterval};
use crate::spv::classify_spv;
use crate::starset::{abs_le, PointSet};
use crate::Rat;

#[derive(Debug, thiserror::Error)]
pub enum ModelSetError {
    #[error("parameter is not strong PV, the window does not bound the closure")]
    NotSpv,
    #[error("seed set is empty")]
    EmptySeed,
    #[error("radius must be positive")]
    RadiusNotPositive,
    #[error("progression step is zero")]
    ZeroStep,
    #[error("no windowed coordinate bounds the progression")]
    UnboundedDirection,
    #[error("scheme identity fails at row {row}, column {col}")]
    SchemeIdentity { row: usize, col: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// One window endpoint at conjugate index `j`: a rational, or the image at `j`
/// of a ring element (an irrational endpoint kept exactly).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Rational(Rat),
    Element(FieldElement),
}

impl Bound {
    /// Sign of `image_j(x) - self`.
    fn cmp_image(&self, x: &FieldElement, j: usize) -> Result<Ordering, AlgebraError> {
        match self {
            Bound::Rational(q) => x.sign_against(q, j),
            Bound::Element(e) => (x - e).sign_at(j),
        }
    }

    fn outer(&self, j: usize, upper: bool) -> Rat {
        match self {
            Bound::Rational(q) => q.clone(),
            Bound::Element(e) => {
                let w = Rat::new(1.into(), BigInt::from(1u64 << 40));
                let r = e.embed_interval(j, &w).ok().and_then(|en| en.real().cloned()).expect("real index");
                if upper {
                    r.hi
                } else {
                    r.lo
                }
            }
        }
    }

    fn to_json(&self, j: usize) -> Value {
        match self {
            Bound::Rational(q) => json!({"rational": q.to_string(), "value": rat_to_f64(q)}),
            Bound::Element(e) => json!({"coords": ints_to_json(e.coords()), "value": e.shadow(j).re}),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowInterval {
    pub index: usize,
    pub lo: Bound,
    pub hi: Bound,
    /// Rational interval containing `[lo, hi]`.
    pub outer: RationalInterval,
}

/// A product of closed intervals, one per real conjugate of `lambda` in the
/// unit interval.
#[derive(Clone, Debug)]
pub struct Window {
    ctx: Context,
    pub intervals: Vec<WindowInterval>,
}

fn interval(j: usize, lo: Bound, hi: Bound) -> WindowInterval {
    let outer = RationalInterval::new(lo.outer(j, false), hi.outer(j, true));
    WindowInterval { index: j, lo, hi, outer }
}

impl PartialEq for Window {
    fn eq(&self, o: &Self) -> bool {
        self.intervals == o.intervals
    }
}

impl Window {
    /// `[0, 1]` on every windowed coordinate.
    pub fn unit(ctx: &Context) -> Self {
        Self::rational(ctx, Rat::zero(), Rat::from_integer(1.into()))
    }

    pub fn rational(ctx: &Context, lo: Rat, hi: Rat) -> Self {
        let intervals = ctx
            .windowed_indices()
            .into_iter()
            .map(|j| interval(j, Bound::Rational(lo.clone()), Bound::Rational(hi.clone())))
            .collect();
        Window { ctx: ctx.clone(), intervals }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// Closed-window membership, decided exactly.
    pub fn contains(&self, x: &FieldElement) -> bool {
        self.intervals.iter().all(|w| {
            w.lo.cmp_image(x, w.index).map(|o| o != Ordering::Less).unwrap_or(false)
                && w.hi.cmp_image(x, w.index).map(|o| o != Ordering::Greater).unwrap_or(false)
        })
    }

    /// Largest absolute outer endpoint over all coordinates.
    fn max_abs_endpoint(&self) -> f64 {
        self.intervals.iter().map(|w| rat_to_f64(&w.outer.mag())).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.intervals
                .iter()
                .map(|w| json!({"index": w.index, "lo": w.lo.to_json(w.index), "hi": w.hi.to_json(w.index)}))
                .collect(),
        )
    }
}

/// The smallest window containing every conjugate image of the seed.
pub fn window_from_seed(ctx: &Context, seed: &[FieldElement]) -> Result<Window, ModelSetError> {
    if seed.is_empty() {
        return Err(ModelSetError::EmptySeed);
    }
    let mut intervals = Vec::new();
    for j in ctx.windowed_indices() {
        let mut lo = &seed[0];
        let mut hi = &seed[0];
        for s in &seed[1..] {
            if s.cmp_at(lo, j)? == Ordering::Less {
                lo = s;
            }
            if s.cmp_at(hi, j)? == Ordering::Greater {
                hi = s;
            }
        }
        let bound = |e: &FieldElement| match e.as_integer() {
            Some(n) => Bound::Rational(Rat::from_integer(n)),
            None => Bound::Element(e.clone()),
        };
        intervals.push(interval(j, bound(lo), bound(hi)));
    }
    Ok(Window { ctx: ctx.clone(), intervals })
}

#[derive(Clone, Debug)]
pub struct ModelSetSpec {
    pub ctx: Context,
    pub window: Window,
}

impl ModelSetSpec {
    pub fn new(window: Window) -> Result<Self, ModelSetError> {
        let ctx = window.context().clone();
        if !classify_spv(&ctx).verdict.is_spv() {
            return Err(ModelSetError::NotSpv);
        }
        Ok(ModelSetSpec { ctx, window })
    }

    /// The model set cut out by `[0, 1]`.
    pub fn unit(ctx: &Context) -> Result<Self, ModelSetError> {
        Self::new(Window::unit(ctx))
    }
}

pub fn member(spec: &ModelSetSpec, x: &FieldElement) -> bool {
    x.same_context(&FieldElement::zero(&spec.ctx)) && spec.window.contains(x)
}

/// Per-coordinate search ranges used by an enumeration.
#[derive(Clone, Debug, PartialEq)]
pub struct Enumeration {
    pub points: PointSet,
    /// Inclusive integer range searched for each coordinate `a_1 .. a_{d-1}`.
    pub ranges: Vec<(i64, i64)>,
    pub candidates: usize,
}

/// All points of the model set with `|x| <= radius` at the designated root.
pub fn enumerate_radius(spec: &ModelSetSpec, radius: &Rat) -> Result<PointSet, ModelSetError> {
    Ok(enumerate_detailed(spec, radius)?.points)
}

/// As [`enumerate_radius`], choosing the quadratic, cubic or general path.
pub fn enumerate_detailed(spec: &ModelSetSpec, radius: &Rat) -> Result<Enumeration, ModelSetError> {
    let ctx = &spec.ctx;
    let nwin = spec.window.intervals.len();
    match ctx.degree() {
        2 if ctx.lambda_is_real() && nwin == 1 => enumerate_quadratic(spec, radius),
        3 if !ctx.lambda_is_real() && nwin == 1 => enumerate_cubic(spec, radius),
        _ => enumerate_lattice(spec, radius),
    }
}

fn check_radius(radius: &Rat) -> Result<f64, ModelSetError> {
    if radius <= &Rat::zero() {
        return Err(ModelSetError::RadiusNotPositive);
    }
    Ok(rat_to_f64(radius))
}

/// Real quadratic path: `x - x' = b (lambda - mu)`, so
/// `|b| <= (R + W) / |lambda - mu|` with `W` the largest window endpoint,
/// and `a` ranges over the window shifted by `-b mu`.
pub fn enumerate_quadratic(spec: &ModelSetSpec, radius: &Rat) -> Result<Enumeration, ModelSetError> {
    let r = check_radius(radius)?;
    let ctx = &spec.ctx;
    let w = &spec.window.intervals[0];
    let l = ctx.lambda_f64().re;
    let mu = ctx.root_f64(w.index).re;
    let bmax = ((r + spec.window.max_abs_endpoint()) / (l - mu).abs() + 1e-9).floor() as i64;
    let ranges = vec![(-bmax, bmax)];
    finish(spec, radius, ranges)
}

/// Coordinate bounds for a cubic with non-real designated root `lambda`
/// and real windowed conjugate `mu`. Writing `x - x' = (lambda - mu)(b + c(lambda + mu))`
/// and splitting real and imaginary parts gives
/// `|c| <= (R + W) / (y |mu - lambda|)` and `|b| <= r (R + W) / (y |mu - lambda|)`
/// with `y = Im lambda` and `r = |mu + lambda|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CubicBounds {
    pub b: f64,
    pub c: f64,
}

pub fn cubic_coordinate_bounds(spec: &ModelSetSpec, radius: &Rat) -> CubicBounds {
    let ctx = &spec.ctx;
    let l = ctx.lambda_f64();
    let mu = ctx.root_f64(spec.window.intervals[0].index).re;
    let base = (rat_to_f64(radius) + spec.window.max_abs_endpoint()) / (l.im.abs() * (l - mu).norm());
    CubicBounds { b: (l + mu).norm() * base, c: base }
}

pub fn enumerate_cubic(spec: &ModelSetSpec, radius: &Rat) -> Result<Enumeration, ModelSetError> {
    check_radius(radius)?;
    let cb = cubic_coordinate_bounds(spec, radius);
    let b = (cb.b + 1e-9).floor() as i64;
    let c = (cb.c + 1e-9).floor() as i64;
    finish(spec, radius, vec![(-b, b), (-c, c)])
}

/// General path: the real linear forms (physical coordinates of `x` plus its
/// windowed images) determine `a` through the inverse of a Vandermonde-type
/// matrix. Each coordinate range is the image of the form box under that
/// inverse, padded by one.
pub fn enumerate_lattice(spec: &ModelSetSpec, radius: &Rat) -> Result<Enumeration, ModelSetError> {
    let r = check_radius(radius)?;
    let ctx = &spec.ctx;
    let d = ctx.degree();
    let li = ctx.lambda_index();
    let lam = ctx.lambda_f64();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut centre: Vec<f64> = Vec::new();
    let mut half: Vec<f64> = Vec::new();
    let pow = |z: Complex<f64>, j: usize| z.powu(j as u32);
    if ctx.is_real_root(li) {
        rows.push((0..d).map(|j| pow(lam, j).re).collect());
        centre.push(0.0);
        half.push(r);
    } else {
        rows.push((0..d).map(|j| pow(lam, j).re).collect());
        rows.push((0..d).map(|j| pow(lam, j).im).collect());
        centre.extend([0.0, 0.0]);
        half.extend([r, r]);
    }
    for w in &spec.window.intervals {
        let mu = ctx.root_f64(w.index);
        rows.push((0..d).map(|j| pow(mu, j).re).collect());
        let (lo, hi) = (rat_to_f64(&w.outer.lo), rat_to_f64(&w.outer.hi));
        centre.push((lo + hi) / 2.0);
        half.push((hi - lo) / 2.0);
    }
    if rows.len() != d {
        return Err(ModelSetError::NotSpv);
    }
    let m = DMatrix::from_fn(d, d, |i, j| rows[i][j]);
    let inv = m.try_inverse().ok_or(ModelSetError::NotSpv)?;
    let ranges: Vec<(i64, i64)> = (0..d)
        .map(|j| {
            let c: f64 = (0..d).map(|k| inv[(j, k)] * centre[k]).sum();
            let h: f64 = (0..d).map(|k| inv[(j, k)].abs() * half[k]).sum();
            ((c - h).floor() as i64 - 1, (c + h).ceil() as i64 + 1)
        })
        .collect();
    if spec.window.intervals.is_empty() {
        // no window to pin a_0: search it too
        return finish_full(spec, radius, ranges);
    }
    finish(spec, radius, ranges[1..].to_vec())
}

/// Enumerate trailing coordinates over `ranges`, solve for `a_0` through the
/// first window interval, then filter exactly.
fn finish(spec: &ModelSetSpec, radius: &Rat, ranges: Vec<(i64, i64)>) -> Result<Enumeration, ModelSetError> {
    let ctx = &spec.ctx;
    let w = &spec.window.intervals[0];
    let mu = ctx.root_f64(w.index).re;
    let (lo, hi) = (rat_to_f64(&w.outer.lo), rat_to_f64(&w.outer.hi));
    let tails = box_points(&ranges);
    let candidates = std::sync::atomic::AtomicUsize::new(0);
    let mut pts: Vec<FieldElement> = tails
        .par_iter()
        .flat_map_iter(|t| {
            let mut s = 0.0;
            let mut scale = 1.0;
            for (j, &a) in t.iter().enumerate() {
                let v = a as f64 * mu.powi(j as i32 + 1);
                s += v;
                scale += v.abs();
            }
            let eps = 1e-9 * scale;
            let a0_lo = (lo - s - eps).ceil() as i64;
            let a0_hi = (hi - s + eps).floor() as i64;
            candidates.fetch_add((a0_hi - a0_lo + 1).max(0) as usize, std::sync::atomic::Ordering::Relaxed);
            (a0_lo..=a0_hi)
                .filter_map(|a0| {
                    let mut c = vec![a0];
                    c.extend_from_slice(t);
                    let x = FieldElement::from_i64(ctx, &c).ok()?;
                    (spec.window.contains(&x) && abs_le(&x, radius)).then_some(x)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    pts.sort();
    let mut points = PointSet::new(ctx, pts);
    points.radius = Some(radius.clone());
    Ok(Enumeration { points, ranges, candidates: candidates.into_inner() })
}

fn finish_full(spec: &ModelSetSpec, radius: &Rat, ranges: Vec<(i64, i64)>) -> Result<Enumeration, ModelSetError> {
    let ctx = &spec.ctx;
    let all = box_points(&ranges);
    let candidates = all.len();
    let pts: Vec<FieldElement> = all
        .par_iter()
        .filter_map(|c| {
            let x = FieldElement::from_i64(ctx, c).ok()?;
            abs_le(&x, radius).then_some(x)
        })
        .collect();
    let mut points = PointSet::new(ctx, pts);
    points.radius = Some(radius.clone());
    Ok(Enumeration { points, ranges: ranges[1..].to_vec(), candidates })
}

fn box_points(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out
}

/// Integers `j` with `x + j d` in the model set, in increasing order.
pub fn ap_intersection(spec: &ModelSetSpec, x: &FieldElement, d: &FieldElement) -> Result<Vec<i64>, ModelSetError> {
    if d.is_zero() {
        return Err(ModelSetError::ZeroStep);
    }
    if spec.window.intervals.is_empty() {
        return Err(ModelSetError::UnboundedDirection);
    }
    let (mut jlo, mut jhi) = (i64::MIN, i64::MAX);
    for w in &spec.window.intervals {
        let xi = x.shadow(w.index).re;
        let di = d.shadow(w.index).re;
        if di == 0.0 {
            // an exact zero image would contradict injectivity of the embedding
            return Err(ModelSetError::UnboundedDirection);
        }
        let (lo, hi) = (rat_to_f64(&w.outer.lo), rat_to_f64(&w.outer.hi));
        let (a, b) = ((lo - xi) / di, (hi - xi) / di);
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        jlo = jlo.max(a.floor() as i64 - 1);
        jhi = jhi.min(b.ceil() as i64 + 1);
    }
    Ok((jlo..=jhi).filter(|&j| spec.window.contains(&(x + &d.scale(&BigInt::from(j))))).collect())
}

/// Companion matrix, Vandermonde rows and diagonal of the cut-and-project
/// scheme, with the outcome of the identity and injectivity checks.
#[derive(Clone, Debug)]
pub struct SchemeMatrices {
    /// Ones on the subdiagonal, `-c_0 .. -c_{d-1}` down the last column.
    pub companion: Vec<Vec<BigInt>>,
    /// Root indices of the rows: windowed conjugates first, then `lambda`.
    pub row_roots: Vec<usize>,
    pub vandermonde: Vec<Vec<Complex<f64>>>,
    pub diagonal: Vec<Complex<f64>>,
    pub identity_holds: bool,
    pub injectivity_samples: usize,
    pub injectivity_ok: bool,
}

pub fn companion_matrix(ctx: &Context) -> Vec<Vec<BigInt>> {
    let d = ctx.degree();
    let p = ctx.minpoly();
    let mut m = vec![vec![BigInt::zero(); d]; d];
    for (l, row) in m.iter_mut().enumerate() {
        if l >= 1 {
            row[l - 1] = 1.into();
        }
        row[d - 1] = -p.coeff(l);
    }
    m
}

/// Build the scheme and verify `V Lambda_p = D V`. Entry `(i, j)` of the
/// difference is the image at root `i` of `sum_l lambda^l Lambda_p[l][j] - lambda^{j+1}`,
/// so it vanishes exactly when that ring element is zero; its enclosure is
/// checked to contain 0 as well.
pub fn build_scheme(ctx: &Context) -> Result<SchemeMatrices, ModelSetError> {
    let d = ctx.degree();
    let lam = FieldElement::lambda(ctx);
    let comp = companion_matrix(ctx);
    let mut rows: Vec<usize> = ctx.windowed_indices();
    rows.push(ctx.lambda_index());
    for j in 0..d {
        let mut e = -&lam.pow(j + 1);
        for (l, row) in comp.iter().enumerate() {
            e = &e + &lam.pow(l).scale(&row[j]);
        }
        for (ri, &i) in rows.iter().enumerate() {
            let zero_in = match e.enclosure_at_level(i, 0) {
                Enclosure::Real(r) => r.contains(&Rat::zero()),
                Enclosure::Complex(b) => b.contains_point(&Rat::zero(), &Rat::zero()),
            };
            if !e.is_zero() || !zero_in {
                return Err(ModelSetError::SchemeIdentity { row: ri, col: j });
            }
        }
    }
    let vandermonde = rows.iter().map(|&i| (0..d).map(|j| ctx.root_f64(i).powu(j as u32)).collect()).collect();
    let diagonal = rows.iter().map(|&i| ctx.root_f64(i)).collect();
    let (samples, ok) = injectivity_spot_check(ctx, 200);
    Ok(SchemeMatrices {
        companion: comp,
        row_roots: rows,
        vandermonde,
        diagonal,
        identity_holds: true,
        injectivity_samples: samples,
        injectivity_ok: ok,
    })
}

/// Nonzero lattice vectors with entries in `{-1, 0, 1}` must have nonzero
/// physical and internal images.
fn injectivity_spot_check(ctx: &Context, limit: usize) -> (usize, bool) {
    let d = ctx.degree();
    let li = ctx.lambda_index();
    let win = ctx.windowed_indices();
    let nonzero = |x: &FieldElement, i: usize| {
        (0..12).any(|k| match x.enclosure_at_level(i, k) {
            Enclosure::Real(r) => !r.contains(&Rat::zero()),
            Enclosure::Complex(b) => !b.contains_point(&Rat::zero(), &Rat::zero()),
        })
    };
    let mut n = 0;
    let mut ok = true;
    for code in 1..3usize.pow(d as u32) {
        if n >= limit {
            break;
        }
        let mut c = Vec::with_capacity(d);
        let mut t = code;
        for _ in 0..d {
            c.push((t % 3) as i64 - 1);
            t /= 3;
        }
        let x = FieldElement::from_i64(ctx, &c).expect("degree matches");
        if x.is_zero() {
            continue;
        }
        n += 1;
        ok &= nonzero(&x, li);
        if !win.is_empty() {
            ok &= win.iter().any(|&j| nonzero(&x, j));
        }
    }
    (n, ok)
}

/// `n` is `0` or `1` modulo both `lambda` and `lambda - 1`; a necessary
/// condition for membership in the closure of `{0, 1}` at an integer
/// parameter `lambda >= 2`.
pub fn integer_superset_member(lambda: i64, n: i64) -> bool {
    if lambda < 2 {
        return false;
    }
    let ok = |m: i64| m == 1 || matches!(n.mod_floor(&m), 0 | 1);
    ok(lambda) && ok(lambda - 1)
}

/// CSV with exact coordinates and 17-significant-digit shadows at the
/// designated root.
pub fn point_csv(points: &PointSet) -> String {
    let d = points.context().degree();
    let mut out = String::new();
    let header: Vec<String> = (0..d).map(|i| format!("coords_{i}")).chain(["re".into(), "im".into()]).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for x in points.iter() {
        let v = x.value_f64();
        let cs: Vec<String> = x.coords().iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "{},{},{}", cs.join(","), shadow_str(v.re), shadow_str(v.im));
    }
    out
}

/// 17 significant digits of a shadow value.
pub fn shadow_str(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    format_sig(&f64_to_rat(v), 17)
}

/// Numeric value of `x` at its designated root, for sorting and display.
pub fn shadow_value(x: &FieldElement) -> f64 {
    x.value_f64().re
}

/// Integer coordinates as `i64`, for compact reports.
pub fn small_coords(x: &FieldElement) -> Option<Vec<i64>> {
    x.coords().iter().map(ToPrimitive::to_i64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_context;
    use crate::poly::IntPolynomial;
    use crate::spv::quadratic_from_mn;

    fn el(ctx: &Context, c: &[i64]) -> FieldElement {
        FieldElement::from_i64(ctx, c).unwrap()
    }

    fn phi_plus_one() -> Context {
        // 1 + phi is the larger root of x^2 - 3x + 1
        make_context(&IntPolynomial::parse("x^2-3x+1").unwrap(), Complex::new(2.6, 0.0)).unwrap()
    }

    #[test]
    fn unit_window_and_members() {
        let c = quadratic_from_mn(3, 1).unwrap();
        let spec = ModelSetSpec::unit(&c).unwrap();
        assert!(member(&spec, &el(&c, &[0, 2])));
        assert!(!member(&spec, &el(&c, &[2, 0])));
        let c = phi_plus_one();
        let spec = ModelSetSpec::unit(&c).unwrap();
        // 2 + 2 phi = 2 lambda
        assert!(member(&spec, &el(&c, &[0, 2])));
    }

    #[test]
    fn seeded_windows() {
        let c = quadratic_from_mn(2, 2).unwrap();
        let seed: Vec<FieldElement> =
            [[0, 1], [1, 1], [0, 0], [2, 0], [1, -1], [2, -1]].iter().map(|v| el(&c, v)).collect();
        let w = window_from_seed(&c, &seed).unwrap();
        assert_eq!(w.intervals[0].lo, Bound::Rational(Rat::zero()));
        assert_eq!(w.intervals[0].hi, Bound::Rational(Rat::from_integer(2.into())));
        let w = window_from_seed(&c, &[el(&c, &[0, 0])]).unwrap();
        assert_eq!(w.intervals[0].lo, w.intervals[0].hi);
        assert!(window_from_seed(&c, &[]).is_err());
        // irrational endpoints stay exact
        let w = window_from_seed(&c, &[el(&c, &[0, 1]), el(&c, &[0, 0])]).unwrap();
        assert!(w.contains(&el(&c, &[0, 1])));
        assert!(matches!(w.intervals[0].hi, Bound::Element(_)));
    }

    #[test]
    fn golden_enumeration() {
        let c = phi_plus_one();
        let spec = ModelSetSpec::unit(&c).unwrap();
        let pts = enumerate_radius(&spec, &Rat::from_integer(6.into())).unwrap();
        let got: Vec<Vec<i64>> = pts.sorted_by_value().iter().map(|x| small_coords(x).unwrap()).collect();
        // lambda = 1 + phi: -1-3phi, -1-2phi, -phi, 0, 1, 1+phi, 2+2phi
        assert_eq!(got, vec![vec![2, -3], vec![1, -2], vec![1, -1], vec![0, 0], vec![1, 0], vec![0, 1], vec![0, 2]]);
        let small = enumerate_radius(&spec, &Rat::new(1.into(), 2.into())).unwrap();
        assert_eq!(small.len(), 1);
        assert!(enumerate_radius(&spec, &Rat::zero()).is_err());
    }

    #[test]
    fn progressions() {
        let c = phi_plus_one();
        let spec = ModelSetSpec::unit(&c).unwrap();
        assert_eq!(ap_intersection(&spec, &el(&c, &[0, 0]), &el(&c, &[1, 0])).unwrap(), vec![0, 1]);
        // phi = lambda - 1
        assert_eq!(ap_intersection(&spec, &el(&c, &[1, 0]), &el(&c, &[-1, 1])).unwrap(), vec![0, 1]);
        assert!(ap_intersection(&spec, &el(&c, &[0, 0]), &el(&c, &[0, 0])).is_err());
    }

    #[test]
    fn scheme() {
        let c = quadratic_from_mn(3, 2).unwrap();
        let s = build_scheme(&c).unwrap();
        let want: Vec<Vec<BigInt>> = vec![vec![0.into(), 2.into()], vec![1.into(), (-3).into()]];
        assert_eq!(s.companion, want);
        assert!(s.identity_holds && s.injectivity_ok);
        let c = make_context(&IntPolynomial::from_i64(&[-2, 1]), Complex::new(2.0, 0.0)).unwrap();
        assert_eq!(build_scheme(&c).unwrap().companion, vec![vec![BigInt::from(2)]]);
        let c = make_context(&IntPolynomial::parse("x^3+x^2-1").unwrap(), Complex::new(-0.88, 0.74)).unwrap();
        let s = build_scheme(&c).unwrap();
        assert_eq!(s.companion.len(), 3);
        assert!(s.injectivity_ok);
    }

    #[test]
    fn congruence_superset() {
        assert!((-20..20).all(|n| integer_superset_member(2, n)));
        assert!(integer_superset_member(3, 7));
        assert!(!integer_superset_member(3, 5));
    }

    #[test]
    fn csv_header() {
        let c = phi_plus_one();
        let spec = ModelSetSpec::unit(&c).unwrap();
        let pts = enumerate_radius(&spec, &Rat::from_integer(6.into())).unwrap();
        let csv = point_csv(&pts);
        assert!(csv.starts_with("coords_0,coords_1,re,im\n"));
        assert_eq!(csv.lines().count(), 8);
    }
}
