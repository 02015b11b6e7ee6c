//! Regular polygons in cyclotomic rings, their planar closures, projection
//! checks, symmetry checks, minimum distances and SVG output.

use std::cmp::Ordering;
use std::f64::consts::TAU;
use std::fmt::Write;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::interval::rat_to_f64;
use crate::field::{make_context, solve_rational, AlgebraError, Context, FieldElement};
use crate::modelset::{window_from_seed, Window};
use crate::poly::IntPolynomial;
use crate::starset::{abs_le, saturate_with, PointSet, Saturation, SearchBudget};
use crate::Rat;

#[derive(Debug, thiserror::Error)]
pub enum ShapeError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("the order-{order} ring has no primitive {n}-th root of unity")]
    NotDivisible { n: usize, order: usize },
    #[error("lambda_{0} is not an algebraic integer")]
    NotIntegral(usize),
    #[error("projection leaves the field of the parameter")]
    ProjectionOutsideField,
    #[error("projection direction is zero")]
    ZeroDirection,
    #[error("the parameter is not real")]
    NonRealParameter,
    #[error("need at least two points")]
    Singleton,
    #[error("point budget of {max_points} exhausted with {} points", partial.len())]
    Budget { max_points: usize, partial: Box<PlanarSet> },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `Z[zeta]` for `zeta = e^{2 pi i / m}`.
#[derive(Clone, Debug)]
pub struct CyclotomicContext {
    pub m: usize,
    pub ctx: Context,
}

pub fn cyclotomic_context(m: usize) -> Result<CyclotomicContext, ShapeError> {
    let phi = IntPolynomial::cyclotomic(m);
    let a = TAU / m as f64;
    let ctx = make_context(&phi, Complex::new(a.cos(), a.sin()))?;
    Ok(CyclotomicContext { m, ctx })
}

impl CyclotomicContext {
    pub fn degree(&self) -> usize {
        self.ctx.degree()
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        self.ctx.minpoly()
    }

    /// `zeta^k` for any integer `k`.
    pub fn zeta_pow(&self, k: i64) -> FieldElement {
        FieldElement::lambda_pow(&self.ctx, k.rem_euclid(self.m as i64) as usize)
    }

    /// `e^{2 pi i / n}` as a ring element.
    pub fn root_of_unity(&self, n: usize) -> Result<FieldElement, ShapeError> {
        if n == 0 || self.m % n != 0 {
            return Err(ShapeError::NotDivisible { n, order: self.m });
        }
        Ok(self.zeta_pow((self.m / n) as i64))
    }

    /// Complex conjugation, the automorphism `zeta -> zeta^{-1}`.
    pub fn conj(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(&self.ctx);
        for (i, c) in x.coords().iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &self.zeta_pow(-(i as i64)).scale(c);
            }
        }
        acc
    }

    /// `|x|^2`, a real element of the ring.
    pub fn norm_sqr(&self, x: &FieldElement) -> FieldElement {
        x * &self.conj(x)
    }
}

/// A finite planar point set in a cyclotomic ring, with the seed and
/// parameter it was generated from.
#[derive(Clone, Debug)]
pub struct PlanarSet {
    pub cyc: CyclotomicContext,
    pub points: PointSet,
    pub seed: Vec<FieldElement>,
    pub param: Option<FieldElement>,
    /// Vertex count of the seed polygon, when the seed is one.
    pub polygon: Option<usize>,
}

impl PlanarSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn elements(&self) -> &[FieldElement] {
        self.points.elements()
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        self.points.contains(x)
    }

    pub fn shadows(&self) -> Vec<Complex<f64>> {
        self.points.iter().map(FieldElement::approx).collect()
    }
}

/// `v_l = sum_{j < l} omega^j` for `l = 0..n`, in the order-`n` ring.
pub fn polygon_vertices(n: usize) -> Result<PlanarSet, ShapeError> {
    if n < 3 {
        return Err(ShapeError::TooFewVertices(n));
    }
    polygon_vertices_in(&cyclotomic_context(n)?, n)
}

/// The same polygon inside a larger cyclotomic ring.
pub fn polygon_vertices_in(cyc: &CyclotomicContext, n: usize) -> Result<PlanarSet, ShapeError> {
    if n < 3 {
        return Err(ShapeError::TooFewVertices(n));
    }
    let w = cyc.root_of_unity(n)?;
    let mut v = FieldElement::zero(&cyc.ctx);
    let mut p = FieldElement::one(&cyc.ctx);
    let mut verts = Vec::with_capacity(n);
    for _ in 0..n {
        verts.push(v.clone());
        v = &v + &p;
        p = &p * &w;
    }
    Ok(PlanarSet {
        cyc: cyc.clone(),
        points: PointSet::new(&cyc.ctx, verts.clone()),
        seed: verts,
        param: None,
        polygon: Some(n),
    })
}

/// `2 cos(pi / n)` in the ring.
fn two_cos_pi_over(n: usize, cyc: &CyclotomicContext) -> Result<FieldElement, ShapeError> {
    if cyc.m % (2 * n) == 0 {
        let z = cyc.root_of_unity(2 * n)?;
        return Ok(&z + &cyc.conj(&z));
    }
    // for odd n, -(omega^k + omega^-k) with k = (n - 1) / 2 and omega of order n
    if n % 2 == 1 && cyc.m % n == 0 {
        let step = (cyc.m / n) as i64;
        let k = ((n - 1) / 2) as i64;
        return Ok(-&(&cyc.zeta_pow(k * step) + &cyc.zeta_pow(-k * step)));
    }
    Err(ShapeError::NotDivisible { n: 2 * n, order: cyc.m })
}

/// `lambda_n = 1 / (2 - 2 cos(pi / n))`, the parameter at which extending
/// two non-adjacent sides of `P_n` meets at a lattice-like point.
pub fn lambda_n_element(n: usize, cyc: &CyclotomicContext) -> Result<FieldElement, ShapeError> {
    if n < 3 {
        return Err(ShapeError::TooFewVertices(n));
    }
    let c = two_cos_pi_over(n, cyc)?;
    let denom = (-&c).add_int(2);
    denom.try_inverse().ok_or(ShapeError::NotIntegral(n))
}

/// Relative slack for floating-point screening before exact decisions.
const FAST_TOL: f64 = 1e-9;

/// `n (z - centre)` for the centre of the seed polygon, an element of the ring.
fn centred(z: &FieldElement, n: usize, vertex_sum: &FieldElement) -> FieldElement {
    &z.scale(&BigInt::from(n)) - vertex_sum
}

/// Closure of a planar seed inside the disc of `radius` about the polygon
/// centre (or the origin for non-polygon seeds), pruned further by the
/// projection windows along the real axis and its perpendicular when both can
/// be built.
pub fn planar_closure(
    seed: &PlanarSet,
    param: &FieldElement,
    radius: &Rat,
    budget: &SearchBudget,
) -> Result<(PlanarSet, Saturation), ShapeError> {
    if !param.same_context(&FieldElement::zero(&seed.cyc.ctx)) {
        return Err(AlgebraError::ContextMismatch.into());
    }
    let n = seed.polygon.unwrap_or(1);
    let vertex_sum = if seed.polygon.is_some() {
        seed.seed.iter().fold(FieldElement::zero(&seed.cyc.ctx), |a, b| &a + b)
    } else {
        FieldElement::zero(&seed.cyc.ctx)
    };
    let scaled_r = radius * Rat::from_integer(BigInt::from(n));
    let projections: Vec<Projection> = default_directions(seed)
        .into_iter()
        .filter_map(|d| Projection::new(&seed.cyc, param, &seed.seed, &d).ok())
        .collect();
    let start = PointSet::new(&seed.cyc.ctx, seed.seed.clone());
    let centre = vertex_sum.approx() / n as f64;
    let r_f = rat_to_f64(radius);
    let in_disc = |z: &FieldElement| {
        let a = z.approx();
        let d = (a - centre).norm();
        let tol = FAST_TOL * (1.0 + a.norm() + r_f);
        if d > r_f + tol {
            false
        } else if d < r_f - tol {
            true
        } else {
            abs_le(&centred(z, n, &vertex_sum), &scaled_r)
        }
    };
    let sat = saturate_with(&start, param, budget, |z| in_disc(z) && projections.iter().all(|p| p.admits(z)));
    let mut points = sat.set.clone();
    points.radius = Some(radius.clone());
    let out = PlanarSet {
        cyc: seed.cyc.clone(),
        points,
        seed: seed.seed.clone(),
        param: Some(param.clone()),
        polygon: seed.polygon,
    };
    if !sat.saturated {
        return Err(ShapeError::Budget { max_points: budget.max_points, partial: Box::new(out) });
    }
    Ok((out, sat))
}

/// The real axis and the perpendicular direction `omega - conj(omega)`.
fn default_directions(seed: &PlanarSet) -> Vec<FieldElement> {
    let one = FieldElement::one(&seed.cyc.ctx);
    let w = seed.cyc.zeta_pow(1);
    let perp = &w - &seed.cyc.conj(&w);
    vec![one, perp]
}

/// Projection `z -> z conj(d) + conj(z) d` (twice the component of `z` along
/// `d`, scaled by `|d|`) expressed in `Z[lambda]` for a real parameter.
#[derive(Clone, Debug)]
pub struct Projection {
    pub direction: FieldElement,
    pub real_ctx: Context,
    /// Projected values are multiplied by this so that they become integral.
    pub scale: BigInt,
    pub window: Window,
    cyc: CyclotomicContext,
    powers: Vec<Vec<BigInt>>,
    rows: Vec<usize>,
    /// Per window interval: the conjugate image of the scaled projection as a
    /// linear form in ring coordinates, with the interval's outer bounds.
    fast: Vec<(Vec<f64>, f64, f64)>,
}

impl Projection {
    pub fn new(
        cyc: &CyclotomicContext,
        param: &FieldElement,
        seed: &[FieldElement],
        direction: &FieldElement,
    ) -> Result<Self, ShapeError> {
        if direction.is_zero() {
            return Err(ShapeError::ZeroDirection);
        }
        if *param != cyc.conj(param) {
            return Err(ShapeError::NonRealParameter);
        }
        let mp = param.minimal_polynomial();
        let real_ctx = make_context(&mp, Complex::new(param.value_f64().re, 0.0))?;
        let d = mp.degree();
        let big_d = cyc.degree();
        let powers: Vec<Vec<BigInt>> = (0..d)
            .map(|i| {
                let p = param.pow(i);
                (0..big_d).map(|r| p.coords().get(r).cloned().unwrap_or_default()).collect()
            })
            .collect();
        let rows = independent_rows(&powers, big_d);
        let mut proj = Projection {
            direction: direction.clone(),
            real_ctx: real_ctx.clone(),
            scale: BigInt::one(),
            window: Window::unit(&real_ctx),
            cyc: cyc.clone(),
            powers,
            rows,
            fast: Vec::new(),
        };
        let raw: Vec<Vec<Rat>> =
            seed.iter().map(|s| proj.rational_coords(s).ok_or(ShapeError::ProjectionOutsideField)).collect::<Result<_, _>>()?;
        proj.scale = raw.iter().fold(BigInt::one(), |l, v| v.iter().fold(l, |l, c| l.lcm(c.denom())));
        let projected: Vec<FieldElement> =
            raw.iter().map(|v| proj.integral(v).ok_or(ShapeError::ProjectionOutsideField)).collect::<Result<_, _>>()?;
        proj.window = window_from_seed(&real_ctx, &projected).map_err(|_| ShapeError::ProjectionOutsideField)?;
        let basis: Vec<Vec<Rat>> = (0..big_d)
            .map(|r| {
                let e = FieldElement::lambda_pow(&cyc.ctx, r);
                proj.rational_coords(&e).ok_or(ShapeError::ProjectionOutsideField)
            })
            .collect::<Result<_, _>>()?;
        let sc = Rat::from_integer(proj.scale.clone());
        proj.fast = proj
            .window
            .intervals
            .iter()
            .map(|w| {
                let mu = real_ctx.root_f64(w.index).re;
                let form = basis
                    .iter()
                    .map(|a| a.iter().rev().fold(0.0, |acc, c| acc * mu + rat_to_f64(&(c * &sc))))
                    .collect();
                (form, rat_to_f64(&w.outer.lo), rat_to_f64(&w.outer.hi))
            })
            .collect();
        Ok(proj)
    }

    fn raw(&self, z: &FieldElement) -> FieldElement {
        &(z * &self.cyc.conj(&self.direction)) + &(&self.cyc.conj(z) * &self.direction)
    }

    /// Coordinates of the raw projection in the power basis of the parameter.
    fn rational_coords(&self, z: &FieldElement) -> Option<Vec<Rat>> {
        let p = self.raw(z);
        let d = self.powers.len();
        let coord = |r: usize| p.coords().get(r).cloned().unwrap_or_default();
        let m: Vec<Vec<BigInt>> = self.rows.iter().map(|&r| (0..d).map(|i| self.powers[i][r].clone()).collect()).collect();
        let b: Vec<BigInt> = self.rows.iter().map(|&r| coord(r)).collect();
        let a = solve_rational(&m, &b)?;
        let ok = (0..self.cyc.degree()).all(|r| {
            let s: Rat = (0..d).map(|i| &a[i] * Rat::from_integer(self.powers[i][r].clone())).sum();
            s == Rat::from_integer(coord(r))
        });
        ok.then_some(a)
    }

    fn integral(&self, a: &[Rat]) -> Option<FieldElement> {
        let s = Rat::from_integer(self.scale.clone());
        let coords: Option<Vec<BigInt>> = a
            .iter()
            .map(|c| {
                let v = c * &s;
                v.is_integer().then(|| v.to_integer())
            })
            .collect();
        FieldElement::new(&self.real_ctx, coords?).ok()
    }

    /// The scaled projection as an element of `Z[lambda]`, if it is one.
    pub fn project(&self, z: &FieldElement) -> Option<FieldElement> {
        self.integral(&self.rational_coords(z)?)
    }

    /// Whether the projection lies in the window built from the seed. Points
    /// well inside are accepted on the floating-point screen alone, which is
    /// sound for closure points: their projections are integral combinations
    /// of the seed projections.
    pub fn admits(&self, z: &FieldElement) -> bool {
        let zc: Vec<f64> = z.coords().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        let mut decided = true;
        for (form, lo, hi) in &self.fast {
            let (v, mag) = form.iter().zip(&zc).fold((0.0, 0.0), |(v, m), (f, x)| (v + f * x, m + (f * x).abs()));
            let tol = FAST_TOL * (1.0 + mag);
            if v < lo - tol || v > hi + tol || v.is_nan() {
                if !v.is_nan() {
                    return false;
                }
                decided = false;
            } else if v < lo + tol || v > hi - tol {
                decided = false;
            }
        }
        if decided {
            return true;
        }
        self.project(z).is_some_and(|p| self.window.contains(&p))
    }
}

/// Indices of `d` coordinate rows on which the power vectors are independent.
fn independent_rows(powers: &[Vec<BigInt>], big_d: usize) -> Vec<usize> {
    let d = powers.len();
    let mut basis: Vec<(usize, Vec<Rat>)> = Vec::new();
    let mut rows = Vec::new();
    for r in 0..big_d {
        let mut v: Vec<Rat> = (0..d).map(|i| Rat::from_integer(powers[i][r].clone())).collect();
        for (piv, b) in &basis {
            if !v[*piv].is_zero() {
                let f = &v[*piv] / &b[*piv];
                for k in 0..d {
                    let t = &b[k] * &f;
                    v[k] -= t;
                }
            }
        }
        if let Some(piv) = v.iter().position(|c| !c.is_zero()) {
            basis.push((piv, v));
            rows.push(r);
            if rows.len() == d {
                break;
            }
        }
    }
    rows
}

#[derive(Clone, Debug)]
pub struct ProjectionReport {
    pub checked: usize,
    pub violations: Vec<FieldElement>,
}

impl ProjectionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Project every point along `direction` and check membership in the model-set
/// window spanned by the projected seed.
pub fn axis_projection_check(set: &PlanarSet, direction: &FieldElement) -> Result<ProjectionReport, ShapeError> {
    let param = set.param.clone().ok_or(ShapeError::NonRealParameter)?;
    let proj = Projection::new(&set.cyc, &param, &set.seed, direction)?;
    let violations: Vec<FieldElement> = set.points.iter().filter(|z| !proj.admits(z)).cloned().collect();
    Ok(ProjectionReport { checked: set.len(), violations })
}

/// Rotation `z -> omega z + 1` and reflection `z -> 1 - conj(z)` of a regular
/// `m`-gon with base `[0, 1]`.
#[derive(Clone, Debug)]
pub struct SymmetryReport {
    pub rotation_missing: Vec<FieldElement>,
    pub reflection_missing: Vec<FieldElement>,
}

impl SymmetryReport {
    pub fn passed(&self) -> bool {
        self.rotation_missing.is_empty() && self.reflection_missing.is_empty()
    }
}

pub fn symmetry_check(set: &PlanarSet, m: usize) -> Result<SymmetryReport, ShapeError> {
    let w = set.cyc.root_of_unity(m)?;
    let one = FieldElement::one(&set.cyc.ctx);
    let mut rotation_missing = Vec::new();
    let mut reflection_missing = Vec::new();
    for z in set.points.iter() {
        let r = &(&w * z) + &one;
        if !set.contains(&r) {
            rotation_missing.push(z.clone());
        }
        let f = &one - &set.cyc.conj(z);
        if !set.contains(&f) {
            reflection_missing.push(z.clone());
        }
    }
    Ok(SymmetryReport { rotation_missing, reflection_missing })
}

#[derive(Clone, Debug)]
pub struct DistanceStats {
    /// Exact squared minimum distance, a real element of the ring.
    pub min_sq: FieldElement,
    pub min: f64,
    /// Index pairs `(i, j)`, `i < j`, into the set's sorted elements.
    pub pairs: Vec<(usize, usize)>,
    /// `(lower edge, count)` over distance bins of width 1/4 below 3.
    pub histogram: Vec<(f64, usize)>,
}

const NEAR_MIN: f64 = 1e-6;


/// Minimum pairwise distance. Pairs are screened in double precision and the
/// candidates near the minimum are compared exactly.
pub fn distance_stats(set: &PlanarSet) -> Result<DistanceStats, ShapeError> {
    let n = set.len();
    if n < 2 {
        return Err(ShapeError::Singleton);
    }
    let sh = set.shadows();
    let mut best = f64::INFINITY;
    let mut hist = vec![0usize; 12];
    for i in 0..n {
        for j in i + 1..n {
            let d2 = (sh[i] - sh[j]).norm_sqr();
            best = best.min(d2);
            let b = (d2.sqrt() * 4.0) as usize;
            if b < hist.len() {
                hist[b] += 1;
            }
        }
    }
    let el = set.elements();
    let mut cands: Vec<(usize, usize, FieldElement)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if (sh[i] - sh[j]).norm_sqr() <= best + NEAR_MIN {
                cands.push((i, j, set.cyc.norm_sqr(&(&el[i] - &el[j]))));
            }
        }
    }
    let idx = set.cyc.ctx.lambda_index();
    let mut min_sq = cands[0].2.clone();
    for (_, _, v) in &cands[1..] {
        if real_cmp(v, &min_sq, idx)? == Ordering::Less {
            min_sq = v.clone();
        }
    }
    let pairs = cands.iter().filter(|c| c.2 == min_sq).map(|c| (c.0, c.1)).collect();
    Ok(DistanceStats {
        min: min_sq.value_f64().re.sqrt(),
        min_sq,
        pairs,
        histogram: hist.into_iter().enumerate().map(|(k, c)| (k as f64 / 4.0, c)).collect(),
    })
}

/// Exact comparison of two ring elements with real images.
fn real_cmp(a: &FieldElement, b: &FieldElement, idx: usize) -> Result<Ordering, AlgebraError> {
    if a == b {
        return Ok(Ordering::Equal);
    }
    (a - b).sign_of_real_image(&Rat::zero(), idx)
}

/// SVG with one circle per point in sorted element order, imaginary axis up.
pub fn render_svg(set: &PlanarSet) -> String {
    const R: f64 = 0.18;
    let pts = set.shadows();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in &pts {
        x0 = x0.min(p.re - R);
        x1 = x1.max(p.re + R);
        y0 = y0.min(-p.im - R);
        y1 = y1.max(-p.im + R);
    }
    if pts.is_empty() {
        (x0, x1, y0, y1) = (-1.0, 1.0, -1.0, 1.0);
    }
    let pad_x = 0.05 * (x1 - x0);
    let pad_y = 0.05 * (y1 - y0);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
        x0 - pad_x,
        y0 - pad_y,
        x1 - x0 + 2.0 * pad_x,
        y1 - y0 + 2.0 * pad_y
    );
    for p in &pts {
        let _ = writeln!(s, r#"<circle cx="{:.6}" cy="{:.6}" r="{R}"/>"#, p.re, -p.im);
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(a: i64) -> Rat {
        Rat::from_integer(a.into())
    }

    #[test]
    fn cyclotomic_degrees() {
        for (m, phi) in [(3, 2), (4, 2), (5, 4), (6, 2), (8, 4), (12, 4), (15, 8)] {
            assert_eq!(cyclotomic_context(m).unwrap().degree(), phi);
        }
    }

    #[test]
    fn polygon_shapes() {
        let p6 = polygon_vertices(6).unwrap();
        let mut re: Vec<i64> = p6.shadows().iter().map(|z| (z.re * 2.0).round() as i64).collect();
        re.sort();
        re.dedup();
        assert_eq!(re, vec![-1, 0, 2, 3]);
        let p4 = polygon_vertices(4).unwrap();
        let i = p4.cyc.zeta_pow(1);
        let one = FieldElement::one(&p4.cyc.ctx);
        for z in [FieldElement::zero(&p4.cyc.ctx), one.clone(), &one + &i, i] {
            assert!(p4.contains(&z));
        }
        let p5 = polygon_vertices(5).unwrap();
        let mut im: Vec<f64> = p5.shadows().iter().map(|z| z.im).collect();
        im.sort_by(f64::total_cmp);
        assert!((im[4] - 1.5388417685876268).abs() < 1e-12);
        assert!((im[2] - 0.9510565162951535).abs() < 1e-12);
        assert!(polygon_vertices(2).is_err());
    }

    #[test]
    fn lambda_values() {
        let c5 = cyclotomic_context(5).unwrap();
        let l5 = lambda_n_element(5, &c5).unwrap();
        assert!((l5.value_f64().re - 2.618033988749895).abs() < 1e-12);
        assert_eq!(l5.minimal_polynomial(), IntPolynomial::parse("x^2-3x+1").unwrap());
        let c3 = cyclotomic_context(3).unwrap();
        assert_eq!(lambda_n_element(3, &c3).unwrap(), FieldElement::one(&c3.ctx));
        let c12 = cyclotomic_context(12).unwrap();
        let l6 = lambda_n_element(6, &c12).unwrap();
        assert!((l6.value_f64().re - 3.732050807568877).abs() < 1e-12);
        let c8 = cyclotomic_context(8).unwrap();
        assert!(matches!(lambda_n_element(4, &c8), Err(ShapeError::NotIntegral(4))));
    }

    #[test]
    fn rank_zero_and_pair_distance() {
        let p6 = polygon_vertices(6).unwrap();
        let two = FieldElement::from_int(&p6.cyc.ctx, 2);
        let budget = SearchBudget::new(p6.len(), 100, 16);
        let (set, _) = planar_closure(&p6, &two, &rat(0), &budget).unwrap_or_else(|e| match e {
            ShapeError::Budget { partial, .. } => (*partial, unreachable_sat()),
            e => panic!("{e}"),
        });
        assert_eq!(set.elements(), p6.elements());
        let two_points = PlanarSet {
            points: PointSet::new(&p6.cyc.ctx, vec![FieldElement::zero(&p6.cyc.ctx), FieldElement::one(&p6.cyc.ctx)]),
            ..p6.clone()
        };
        let d = distance_stats(&two_points).unwrap();
        assert_eq!(d.min_sq, FieldElement::one(&p6.cyc.ctx));
        assert_eq!(d.pairs, vec![(0, 1)]);
    }

    fn unreachable_sat() -> Saturation {
        unreachable!("the seed alone exceeds no budget")
    }

    #[test]
    fn hexagon_closure_parity() {
        let p6 = polygon_vertices(6).unwrap();
        let two = FieldElement::from_int(&p6.cyc.ctx, 2);
        let (set, sat) = planar_closure(&p6, &two, &rat(6), &SearchBudget::default()).unwrap();
        // zeta_6 = 1 + eta with eta = e^{2 pi i / 3}, so c0 + c1 zeta_6 = (c0 + c1) + c1 eta
        for z in set.elements() {
            let c0 = z.coords()[0].clone();
            let c1 = z.coords().get(1).cloned().unwrap_or_default();
            assert!(((&c0 + &c1) * &c1).is_even(), "{z:?}");
        }
        let one_eta = p6.cyc.zeta_pow(1);
        assert!(!set.contains(&one_eta));
        assert!(symmetry_check(&set, 6).unwrap().passed());
        let z = set.elements().last().unwrap();
        assert!(sat.derivation_of(z).is_some());
        let svg = render_svg(&set);
        assert_eq!(svg.matches("<circle").count(), set.len());
    }
}
