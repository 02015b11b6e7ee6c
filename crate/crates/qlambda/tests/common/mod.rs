//! Property checks shared by the proptest suites and the acceptance harness.
#![allow(dead_code)]

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use qlambda::contfrac::{surd_continued_fraction, QuadraticSurd};
use qlambda::derivation::star_op;
use qlambda::modelset::{ap_intersection, build_scheme, companion_matrix, window_from_seed, ModelSetSpec};
use qlambda::qpoly::{from_star_basis, to_star_basis};
use qlambda::spv::quadratic_from_mn;
use qlambda::starset::{closure_rank_with, PointSet};
use qlambda::{make_context, Context, FieldElement, IntPolynomial};

/// Mixed pool: real quadratics, a complex cubic, integers and a Gaussian
/// parameter.
pub fn contexts() -> &'static [Context] {
    static POOL: OnceLock<Vec<Context>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mk = |p: &str, re: f64, im: f64| make_context(&IntPolynomial::parse(p).unwrap(), Complex::new(re, im)).unwrap();
        vec![
            quadratic_from_mn(1, 1).unwrap(),
            quadratic_from_mn(2, 1).unwrap(),
            quadratic_from_mn(3, 1).unwrap(),
            quadratic_from_mn(3, 2).unwrap(),
            mk("x^2-3x+1", 2.6, 0.0),
            mk("x^3+x^2-1", -0.88, 0.74),
            mk("x^3+x-1", -0.341, 1.162),
            mk("x-2", 2.0, 0.0),
            mk("x+1", -1.0, 0.0),
            mk("x^2-2x+2", 1.0, 1.0),
        ]
    })
}

/// The contexts above whose parameter has a model-set window.
pub fn windowed_contexts() -> &'static [Context] {
    &contexts()[..7]
}

pub fn el(ctx: &Context, c: &[i64]) -> FieldElement {
    let d = ctx.degree();
    FieldElement::from_i64(ctx, &c[..d]).unwrap()
}

pub type Coords = [i64; 3];

pub fn coords() -> impl Strategy<Value = Coords> {
    [-12i64..=12, -12i64..=12, -12i64..=12]
}

pub fn small_coords() -> impl Strategy<Value = Coords> {
    [-3i64..=3, -3i64..=3, -3i64..=3]
}

fn ck(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

/// `(a * b) * (c * d) = (a * c) * (b * d)` for an arbitrary parameter.
pub fn entropic(ci: usize, p: Coords, a: Coords, b: Coords, c: Coords, d: Coords) -> Result<(), TestCaseError> {
    let ctx = &contexts()[ci % contexts().len()];
    let p = el(ctx, &p);
    let [a, b, c, d] = [a, b, c, d].map(|v| el(ctx, &v));
    let lhs = star_op(&star_op(&a, &b, &p), &star_op(&c, &d, &p), &p);
    let rhs = star_op(&star_op(&a, &c, &p), &star_op(&b, &d, &p), &p);
    ck(lhs == rhs, "entropic law")
}

pub fn idempotent(ci: usize, p: Coords, a: Coords) -> Result<(), TestCaseError> {
    let ctx = &contexts()[ci % contexts().len()];
    let a = el(ctx, &a);
    ck(star_op(&a, &a, &el(ctx, &p)) == a, "idempotence")
}

/// Levels of the stratification agree for `lambda` and `1 - lambda`.
pub fn complement_levels(ci: usize, seed: Vec<Coords>, n: usize) -> Result<(), TestCaseError> {
    let ctx = &contexts()[ci % contexts().len()];
    let seed = PointSet::new(ctx, seed.iter().map(|v| el(ctx, v)).collect());
    let l = FieldElement::lambda(ctx);
    let m = (-&l).add_int(1);
    let a = closure_rank_with(&seed, &l, n, 1 << 20).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let b = closure_rank_with(&seed, &m, n, 1 << 20).map_err(|e| TestCaseError::fail(e.to_string()))?;
    ck(a == b, "levels differ between lambda and 1 - lambda")
}

/// `z -> a + (b - a) z` maps the levels over `{0, 1}` onto those over `{a, b}`.
pub fn affine(ci: usize, a: Coords, b: Coords, n: usize) -> Result<(), TestCaseError> {
    let ctx = &contexts()[ci % contexts().len()];
    let (a, b) = (el(ctx, &a), el(ctx, &b));
    if a == b {
        return Ok(());
    }
    let l = FieldElement::lambda(ctx);
    let unit = closure_rank_with(&PointSet::unit_seed(ctx), &l, n, 1 << 20).unwrap();
    let ab = closure_rank_with(&PointSet::new(ctx, vec![a.clone(), b.clone()]), &l, n, 1 << 20).unwrap();
    let span = &b - &a;
    let image = PointSet::new(ctx, unit.iter().map(|z| &a + &(&span * z)).collect());
    ck(image == ab, "affine image of the levels")
}

/// Every level point stays inside the window spanned by the seed's
/// conjugate images.
pub fn window_containment(ci: usize, seed: Vec<Coords>, n: usize) -> Result<(), TestCaseError> {
    let ctx = &windowed_contexts()[ci % windowed_contexts().len()];
    let seed: Vec<FieldElement> = seed.iter().map(|v| el(ctx, v)).collect();
    let w = window_from_seed(ctx, &seed).unwrap();
    let l = FieldElement::lambda(ctx);
    let lv = closure_rank_with(&PointSet::new(ctx, seed), &l, n, 1 << 20).unwrap();
    ck(lv.iter().all(|z| w.contains(z)), "point outside the seed window")
}

/// `V Lambda_p = D V`, both exactly and in floating point.
pub fn scheme_identity(m: i64, n: i64) -> Result<(), TestCaseError> {
    let ctx = quadratic_from_mn(m, n).unwrap();
    let s = build_scheme(&ctx).map_err(|e| TestCaseError::fail(e.to_string()))?;
    ck(s.identity_holds && s.injectivity_ok, "exact scheme identity")?;
    let comp = companion_matrix(&ctx);
    let d = ctx.degree();
    for (r, row) in s.vandermonde.iter().enumerate() {
        for j in 0..d {
            let lhs: Complex<f64> =
                (0..d).map(|l| row[l] * comp[l][j].to_string().parse::<f64>().unwrap()).sum();
            let rhs = s.diagonal[r] * row[j];
            ck((lhs - rhs).norm() < 1e-9 * (1.0 + rhs.norm()), "numeric scheme identity")?;
        }
    }
    Ok(())
}

/// Round trip through the star basis, and the Pascal rule for lifting.
pub fn star_basis_roundtrip(coeffs: Vec<i64>, extra: usize) -> Result<(), TestCaseError> {
    let f = IntPolynomial::from_i64(&coeffs);
    let deg = if f.is_zero() { 0 } else { f.degree() };
    let b = to_star_basis(&f, deg + extra).unwrap();
    ck(from_star_basis(&b) == f, "round trip")?;
    ck(b.lift() == to_star_basis(&f, deg + extra + 1).unwrap(), "Pascal recurrence")
}

/// `eta_k > 0` and `eta_{k+1} < eta_k` for `k >= 0`.
pub fn eta_monotone(d: i64, p: i64, qi: usize) -> Result<(), TestCaseError> {
    let r = (d as f64).sqrt() as i64;
    if r * r == d {
        return Ok(());
    }
    let num = d - p * p;
    let divs: Vec<i64> = (1..=num.abs()).filter(|q| num % q == 0).collect();
    if divs.is_empty() {
        return Ok(());
    }
    let q = divs[qi % divs.len()];
    let surd = QuadraticSurd::new(p, d, q).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let cf = surd_continued_fraction(&surd).unwrap();
    for k in 0..8i64 {
        let (a, b) = cf.eta(k);
        ck(cf.sign_linear(&a, &b).is_gt(), "eta positive")?;
        let (a1, b1) = cf.eta(k + 1);
        ck(cf.sign_linear(&(&a - &a1), &(&b - &b1)).is_gt(), "eta decreasing")?;
    }
    Ok(())
}

/// The window meets an arithmetic progression in a finite run, matching a
/// direct scan.
pub fn ap_finite(ci: usize, x: Coords, dv: Coords) -> Result<(), TestCaseError> {
    let ctx = &windowed_contexts()[ci % windowed_contexts().len()];
    let (x, d) = (el(ctx, &x), el(ctx, &dv));
    if d.is_zero() {
        return Ok(());
    }
    let spec = ModelSetSpec::unit(ctx).unwrap();
    let got = ap_intersection(&spec, &x, &d).unwrap();
    let j = spec.window.intervals[0].index;
    let reach = ((x.shadow(j).re.abs() + 2.0) / d.shadow(j).re.abs()).ceil().min(1e6) as i64 + 2;
    let scan: Vec<i64> =
        (-reach..=reach).filter(|&k| spec.window.contains(&(&x + &d.scale(&BigInt::from(k))))).collect();
    ck(got == scan, "progression meets the window as scanned")
}
