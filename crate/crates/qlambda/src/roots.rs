//! Certified isolation and refinement of all complex roots of a squarefree
//! integer polynomial.
//!
//! Level 0 starts from floating-point Aberth iterates, polishes them with
//! exact Newton steps and certifies them with Weierstrass inclusion disks:
//! for approximations `z_i` of a degree-`n` polynomial the disks
//! `|z - z_i| <= n |p(z_i) / (lc * prod_{j != i}(z_i - z_j))|` cover every root,
//! and a disk disjoint from the others holds exactly one. Disks centred on
//! the real axis then hold a real root. Later levels bisect real roots on
//! sign changes and re-certify complex roots, intersecting with the previous
//! box so enclosures are nested.

use std::sync::{Arc, RwLock};

use num_complex::Complex;
use num_traits::{One, Signed, Zero};

use crate::interval::{f64_to_rat, rat_to_f64, round_dyadic, sqrt_upper, ComplexBox, RationalInterval};
use crate::poly::{bigint_to_f64, IntPolynomial};
use crate::Rat;

type C64 = Complex<f64>;
type CRat = Complex<Rat>;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum RootError {
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial has degree 0")]
    Constant,
    #[error("root isolation did not certify after repeated refinement")]
    IsolationFailed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub bx: ComplexBox,
    pub real: bool,
}

impl IsolatedRoot {
    pub fn center_f64(&self) -> C64 {
        C64::new(self.bx.re.to_f64(), self.bx.im.to_f64())
    }
}

/// Lazily refined root boxes. Level `k + 1` is derived from level `k` only,
/// so every reader sees the same nested sequence.
#[derive(Debug)]
pub struct RootCache {
    poly: IntPolynomial,
    levels: RwLock<Vec<Arc<Vec<IsolatedRoot>>>>,
}

const LEVEL_BITS: u32 = 32;
const BASE_BITS: u32 = 64;

impl RootCache {
    pub fn new(poly: &IntPolynomial) -> Result<Self, RootError> {
        let level0 = isolate(poly)?;
        Ok(RootCache { poly: poly.clone(), levels: RwLock::new(vec![Arc::new(level0)]) })
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    pub fn level(&self, k: usize) -> Arc<Vec<IsolatedRoot>> {
        {
            let lv = self.levels.read().expect("root cache poisoned");
            if let Some(l) = lv.get(k) {
                return l.clone();
            }
        }
        let mut lv = self.levels.write().expect("root cache poisoned");
        while lv.len() <= k {
            let prev = lv.last().unwrap().clone();
            let next = refine_level(&self.poly, &prev, lv.len() as u32);
            lv.push(Arc::new(next));
        }
        lv[k].clone()
    }

    /// First level at which root `i` has box width at most `w`.
    pub fn level_for_width(&self, i: usize, w: &Rat) -> usize {
        let mut k = 0;
        loop {
            let l = self.level(k);
            if &l[i].bx.width() <= w || k >= 400 {
                return k;
            }
            k += 1;
        }
    }
}

/// Isolate all roots of a squarefree polynomial (level 0).
pub fn isolate(poly: &IntPolynomial) -> Result<Vec<IsolatedRoot>, RootError> {
    let d = poly.degree();
    if poly.is_zero() || d == 0 {
        return Err(RootError::Constant);
    }
    if d == 1 {
        let x = Rat::new(-poly.coeff(0), poly.coeff(1));
        return Ok(vec![IsolatedRoot { bx: ComplexBox::point(x, Rat::zero()), real: true }]);
    }
    if !poly.is_squarefree() {
        return Err(RootError::NotSquarefree);
    }
    let coeffs: Vec<f64> = poly.coeffs().iter().map(bigint_to_f64).collect();
    for attempt in 0..10u32 {
        let approx = aberth(&coeffs, 400 + 400 * attempt as usize, attempt);
        let bits = BASE_BITS + LEVEL_BITS * attempt;
        let snap = 1e-7 / 10f64.powi(attempt as i32);
        let mut z: Vec<CRat> = approx
            .iter()
            .map(|a| {
                let scale = 1.0 + a.norm();
                let im = if a.im.abs() < snap * scale { 0.0 } else { a.im };
                CRat::new(f64_to_rat(a.re), f64_to_rat(im))
            })
            .collect();
        for zi in z.iter_mut() {
            *zi = newton(poly, zi, bits, 6 + 2 * attempt as usize);
        }
        if let Some(radii) = weierstrass_radii(poly, &z, bits) {
            if disks_ok(&z, &radii) {
                let mut roots: Vec<IsolatedRoot> = z
                    .iter()
                    .zip(&radii)
                    .map(|(c, r)| disk_box(c, r))
                    .collect();
                roots.sort_by(|a, b| {
                    let ca = a.center_f64();
                    let cb = b.center_f64();
                    ca.re.total_cmp(&cb.re).then(ca.im.total_cmp(&cb.im))
                });
                return Ok(roots);
            }
        }
    }
    Err(RootError::IsolationFailed)
}

fn disk_box(c: &CRat, r: &Rat) -> IsolatedRoot {
    let re = RationalInterval::new(&c.re - r, &c.re + r);
    if c.im.is_zero() {
        IsolatedRoot { bx: ComplexBox::real(re), real: true }
    } else {
        let im = RationalInterval::new(&c.im - r, &c.im + r);
        IsolatedRoot { bx: ComplexBox { re, im }, real: false }
    }
}

fn disks_ok(z: &[CRat], r: &[Rat]) -> bool {
    for i in 0..z.len() {
        if !z[i].im.is_zero() && z[i].im.abs() <= r[i] {
            return false;
        }
        for j in i + 1..z.len() {
            let s = &r[i] + &r[j];
            if s.clone() * s >= norm_sqr(&(&z[i] - &z[j])) {
                return false;
            }
        }
    }
    true
}

fn norm_sqr(z: &CRat) -> Rat {
    &z.re * &z.re + &z.im * &z.im
}

fn eval_c(poly: &IntPolynomial, z: &CRat) -> CRat {
    let mut acc = CRat::new(Rat::zero(), Rat::zero());
    for c in poly.coeffs().iter().rev() {
        acc = &acc * z + CRat::new(Rat::from_integer(c.clone()), Rat::zero());
    }
    acc
}

fn newton(poly: &IntPolynomial, z0: &CRat, bits: u32, iters: usize) -> CRat {
    let dp = poly.derivative();
    let mut z = CRat::new(round_dyadic(&z0.re, bits), round_dyadic(&z0.im, bits));
    let real = z.im.is_zero();
    let eps = Rat::new(One::one(), num_bigint::BigInt::one() << bits);
    for _ in 0..iters {
        let pz = eval_c(poly, &z);
        let dz = eval_c(&dp, &z);
        if norm_sqr(&dz).is_zero() {
            break;
        }
        let step = &pz / &dz;
        let mut next = &z - &step;
        if real {
            next.im = Rat::zero();
        }
        next = CRat::new(round_dyadic(&next.re, bits), round_dyadic(&next.im, bits));
        let small = step.re.abs() < eps && step.im.abs() < eps;
        z = next;
        if small {
            break;
        }
    }
    z
}

/// Inclusion radii `n |w_i|`, rounded up; `None` if two centres coincide.
fn weierstrass_radii(poly: &IntPolynomial, z: &[CRat], bits: u32) -> Option<Vec<Rat>> {
    let n = z.len();
    let lc = Rat::from_integer(poly.leading());
    let nn = Rat::from_integer((n * n).into());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let pz = norm_sqr(&eval_c(poly, &z[i]));
        let mut den = &lc * &lc;
        for j in 0..n {
            if i != j {
                let d = norm_sqr(&(&z[i] - &z[j]));
                if d.is_zero() {
                    return None;
                }
                den *= d;
            }
        }
        out.push(sqrt_upper(&(&nn * pz / den), bits + 16));
    }
    Some(out)
}

fn refine_level(poly: &IntPolynomial, prev: &[IsolatedRoot], k: u32) -> Vec<IsolatedRoot> {
    let mut next: Vec<IsolatedRoot> = prev.to_vec();
    for r in next.iter_mut().filter(|r| r.real) {
        r.bx.re = bisect(poly, &r.bx.re, LEVEL_BITS);
    }
    if next.iter().all(|r| r.real) {
        return next;
    }
    for extra in 0..8u32 {
        let bits = BASE_BITS + LEVEL_BITS * (k + extra);
        let centers: Vec<CRat> = next
            .iter()
            .zip(prev)
            .map(|(r, p)| {
                if r.real {
                    CRat::new(r.bx.re.mid(), Rat::zero())
                } else {
                    newton(poly, &CRat::new(p.bx.re.mid(), p.bx.im.mid()), bits, 12)
                }
            })
            .collect();
        let Some(radii) = weierstrass_radii(poly, &centers, bits) else { continue };
        let mut fresh = next.clone();
        let mut ok = true;
        for i in 0..centers.len() {
            if next[i].real {
                continue;
            }
            if centers[i].im.abs() <= radii[i] {
                ok = false;
                break;
            }
            for j in 0..centers.len() {
                if j == i {
                    continue;
                }
                let s = &radii[i] + &radii[j];
                if s.clone() * s >= norm_sqr(&(&centers[i] - &centers[j])) {
                    ok = false;
                    break;
                }
            }
            let disk = disk_box(&centers[i], &radii[i]).bx;
            // The disk holds exactly one root; it lies in the previous box of
            // root i when the disk meets no other previous box.
            if !ok || !disk.intersects(&prev[i].bx) || (0..prev.len()).any(|j| j != i && disk.intersects(&prev[j].bx)) {
                ok = false;
                break;
            }
            match prev[i].bx.intersect(&disk) {
                Some(b) => fresh[i].bx = b,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return fresh;
        }
    }
    next
}

/// Halve a real isolating interval `steps` times, keeping the sign change.
fn bisect(poly: &IntPolynomial, iv: &RationalInterval, steps: u32) -> RationalInterval {
    if iv.lo == iv.hi {
        return iv.clone();
    }
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let slo = poly.eval_rat(&lo).is_positive();
    let two = Rat::from_integer(2.into());
    for _ in 0..steps {
        let m = (&lo + &hi) / &two;
        let v = poly.eval_rat(&m);
        if v.is_zero() {
            return RationalInterval::point(m);
        }
        if v.is_positive() == slo {
            lo = m;
        } else {
            hi = m;
        }
    }
    RationalInterval::new(lo, hi)
}

fn aberth(coeffs: &[f64], max_iter: usize, seed: u32) -> Vec<C64> {
    let n = coeffs.len() - 1;
    let lc = coeffs[n];
    let a: Vec<f64> = coeffs.iter().map(|c| c / lc).collect();
    let bound = 1.0 + a[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let radius = bound.min(1.0 + a[..n].iter().enumerate().fold(0.0f64, |m, (i, c)| m.max(c.abs().powf(1.0 / (n - i) as f64))));
    let phase = 0.4 + 0.17 * seed as f64;
    let mut z: Vec<C64> = (0..n)
        .map(|k| C64::from_polar(radius, std::f64::consts::TAU * k as f64 / n as f64 + phase))
        .collect();
    let eval = |x: C64| -> (C64, C64) {
        let mut p = C64::new(0.0, 0.0);
        let mut dp = C64::new(0.0, 0.0);
        for c in a.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..max_iter {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let s: C64 = (0..n).filter(|&j| j != k).map(|j| C64::new(1.0, 0.0) / (z[k] - z[j])).sum();
            let w = ratio / (C64::new(1.0, 0.0) - ratio * s);
            if w.re.is_finite() && w.im.is_finite() {
                z[k] -= w;
                moved = moved.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    z
}

/// Floating-point value of a root centre, for diagnostics and hints.
pub fn root_f64(r: &IsolatedRoot) -> C64 {
    C64::new(rat_to_f64(&r.bx.re.mid()), rat_to_f64(&r.bx.im.mid()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolates_cubic_with_complex_pair() {
        let p = IntPolynomial::from_i64(&[-1, 0, 1, 1]);
        let roots = isolate(&p).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots.iter().filter(|r| r.real).count(), 1);
        let real = roots.iter().find(|r| r.real).unwrap();
        assert!((real.center_f64().re - 0.754877666).abs() < 1e-6);
    }

    #[test]
    fn refinement_is_nested_and_shrinks() {
        let p = IntPolynomial::from_i64(&[1, -3, 4, -2, 1]);
        let cache = RootCache::new(&p).unwrap();
        let l0 = cache.level(0);
        let l3 = cache.level(3);
        for (a, b) in l0.iter().zip(l3.iter()) {
            assert!(a.bx.re.contains_interval(&b.bx.re) && a.bx.im.contains_interval(&b.bx.im));
            assert!(b.bx.width() < Rat::new(1.into(), num_bigint::BigInt::one() << 100));
        }
    }

    #[test]
    fn rejects_repeated_roots() {
        let p = IntPolynomial::from_i64(&[1, -2, 1]);
        assert_eq!(isolate(&p), Err(RootError::NotSquarefree));
    }
}
