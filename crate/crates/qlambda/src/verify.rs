//! Named verification suites. Each check reproduces one acceptance criterion
//! from the published tables, derivations and case studies and reports
//! pass or fail with the values it found.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use serde::Serialize;
use serde_json::{json, Value};

use crate::data;
use crate::density::{cover_set_greedy, cover_set_quadratic, gap_condition, replication_reduce, seed_plan, CoverSet};
use crate::interval::rat_to_f64;
use crate::modelset::{cubic_coordinate_bounds, enumerate_radius, integer_superset_member, ModelSetSpec, Window};
use crate::qpoly::{census, closure_level, enumerate_level, level_count};
use crate::shapes::{
    axis_projection_check, cyclotomic_context, distance_stats, lambda_n_element, planar_closure, polygon_vertices,
    polygon_vertices_in, symmetry_check, CyclotomicContext, PlanarSet,
};
use crate::spv::{classify_spv, polygon_lambda, quadratic_from_mn, window_unit};
use crate::starset::{closure_rank, derivation_search, derivation_search_with, saturate_region, PointSet, SearchBudget};
use crate::{make_context, replay_derivation, Context, FieldElement, IntPolynomial, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A failure whose cause has been analysed: the computed value is
    /// reported next to the expected one.
    KnownDeviation,
}

impl Status {
    pub fn is_failure(self) -> bool {
        self != Status::Pass
    }
}

struct Outcome {
    status: Status,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { status: Status::Pass, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { status: Status::Fail, detail: detail.into() }
}

fn verdict(ok: bool, detail: impl Into<String>) -> Outcome {
    if ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn ip(s: &str) -> IntPolynomial {
    IntPolynomial::parse(s).unwrap()
}

fn ctx_at(p: &str, re: f64, im: f64) -> Context {
    make_context(&ip(p), Complex::new(re, im)).unwrap()
}

fn el(ctx: &Context, c: &[i64]) -> FieldElement {
    FieldElement::from_i64(ctx, c).unwrap()
}

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn quadratic_table() -> Outcome {
    // (m, n), expected minimal polynomial, closed form of the negative root
    let sqrt = f64::sqrt;
    let cases = [
        ((1, 1), "x^2+x-1", -(1.0 + sqrt(5.0)) / 2.0),
        ((2, 1), "x^2+2x-1", -1.0 - sqrt(2.0)),
        ((2, 2), "x^2+2x-2", -1.0 - sqrt(3.0)),
        ((3, 1), "x^2+3x-1", -(3.0 + sqrt(13.0)) / 2.0),
    ];
    let mut bad = Vec::new();
    for ((m, n), mp, v) in cases {
        let c = quadratic_from_mn(m, n).unwrap();
        let l = FieldElement::lambda(&c);
        let ok = c.minpoly() == &ip(mp)
            && l.minimal_polynomial() == ip(mp)
            && (c.lambda_f64().re - v).abs() < 1e-12
            && c.lambda_f64().im == 0.0
            && classify_spv(&c).verdict.is_spv();
        if !ok {
            bad.push(format!("({m},{n})"));
        }
    }
    verdict(bad.is_empty(), format!("4 parameters matched exactly with sPV verdicts; mismatches: {bad:?}"))
}

fn polygon_constants() -> Outcome {
    let table = [
        (3, "x-1"),
        (4, "2x^2-4x+1"),
        (5, "x^2-3x+1"),
        (6, "x^2-4x+1"),
        (7, "x^3-6x^2+5x-1"),
        (9, "x^3-9x^2+6x-1"),
        (15, "x^4-24x^3+26x^2-9x+1"),
    ];
    let mut bad = Vec::new();
    for (n, mp) in table {
        if polygon_lambda(n).unwrap().minpoly != ip(mp) {
            bad.push(n);
        }
    }
    // the same polynomials from the cyclotomic route
    for n in [3usize, 5, 7, 9, 15] {
        let cyc = cyclotomic_context(n).unwrap();
        let l = lambda_n_element(n, &cyc).unwrap();
        if l.minimal_polynomial() != polygon_lambda(n).unwrap().minpoly {
            bad.push(100 + n);
        }
    }
    let spv: Vec<usize> = (3..=99).step_by(2).filter(|&n| polygon_lambda(n).unwrap().spv).collect();
    let ok = bad.is_empty() && spv == vec![3, 5, 7, 9, 15];
    verdict(ok, format!("table polynomials matched (mismatches {bad:?}); odd n in [3,99] with sPV: {spv:?}"))
}

fn golden_saturation() -> Outcome {
    let c = ctx_at("x^2-3x+1", 2.6, 0.0);
    let spec = ModelSetSpec::unit(&c).unwrap();
    let r = rat(20);
    let enumerated = enumerate_radius(&spec, &r).unwrap();
    let sat = saturate_region(&PointSet::unit_seed(&c), &Window::unit(&c), &r, &SearchBudget::default());
    let equal = sat.saturated && sat.set == enumerated;
    let pts = enumerated.sorted_by_value();
    let l = FieldElement::lambda(&c);
    let phi = l.add_int(-1);
    let zero = FieldElement::zero(&c);
    let one = FieldElement::one(&c);
    let mut odd = Vec::new();
    for w in pts.windows(2) {
        let g = &w[1] - &w[0];
        let unit_pair = w[0] == zero && w[1] == one;
        if !(g == phi || g == l || unit_pair) {
            odd.push(g.to_string());
        }
    }
    verdict(
        equal && odd.is_empty(),
        format!("{} points, saturation equals enumeration: {equal}; gaps outside {{phi, 1+phi}}: {odd:?}", pts.len()),
    )
}

fn replication() -> Outcome {
    let mut total = 0;
    let mut failures = Vec::new();
    for (p, v) in [("x^2-3x+1", 2.618), ("x^2-4x+2", 3.414), ("x^2-4x+1", 3.732)] {
        let c = ctx_at(p, v, 0.0);
        let spec = ModelSetSpec::unit(&c).unwrap();
        for z in enumerate_radius(&spec, &rat(30)).unwrap().iter() {
            total += 1;
            let ok = replication_reduce(z).ok().and_then(|d| replay_derivation(&d).ok()).is_some_and(|v| &v == z);
            if !ok {
                failures.push(format!("{p}: {z}"));
            }
        }
    }
    verdict(failures.is_empty(), format!("{total} points reduced and replayed; failures: {failures:?}"))
}

fn case_studies() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut check = |cond: bool, what: String| {
        ok &= cond;
        notes.push(format!("{what}: {}", if cond { "ok" } else { "MISMATCH" }));
    };

    // thirteen: explicit cover {0, 1, lambda, 2 lambda}
    let c13 = quadratic_from_mn(3, 1).unwrap();
    let l13 = FieldElement::lambda(&c13);
    let x13 = vec![el(&c13, &[0, 0]), el(&c13, &[1, 0]), el(&c13, &[0, 1]), el(&c13, &[0, 2])];
    let plan = seed_plan(&CoverSet::from_points(&c13, &l13, x13).unwrap()).unwrap();
    let third = |a: i64| Rat::new(a.into(), 3.into());
    let want_y: Vec<FieldElement> =
        [[0, 3], [0, 2], [0, 1], [0, 0], [1, 0], [1, -1], [1, -2], [1, -3]].iter().map(|v| el(&c13, v)).collect();
    check(
        plan.m.exact == Some(vec![third(4), third(-10)]) && (plan.m.value() - (19.0 + 5.0 * 13f64.sqrt()) / 3.0).abs() < 1e-9,
        "M = (19 + 5 sqrt 13)/3".into(),
    );
    check(plan.y == PointSet::new(&c13, want_y), format!("|Y| = {} with the listed points", plan.y.len()));

    // complex cubic x^3 + x^2 - 1
    let cc = ctx_at("x^3+x^2-1", -0.88, 0.74);
    let spec = ModelSetSpec::unit(&cc).unwrap();
    let cover = cover_set_greedy(&spec, &FieldElement::lambda(&cc), &rat(4)).unwrap();
    let m = seed_plan(&cover).unwrap().m;
    check((m.value() - 13.379361).abs() < 1e-6, format!("cubic M = {:.7}", m.value()));
    let (good, what) = cubic_bounds(&spec, &m.enclosure.hi, 11.41, 10.76);
    check(good, what);

    // complex cubic x^3 + x - 1
    let cd = ctx_at("x^3+x-1", -0.341, 1.162);
    let spec = ModelSetSpec::unit(&cd).unwrap();
    let cover = cover_set_greedy(&spec, &FieldElement::lambda(&cd), &rat(4)).unwrap();
    let m = seed_plan(&cover).unwrap().m;
    check((m.value() - 8.424341).abs() < 1e-6, format!("second cubic M = {:.7}", m.value()));
    let (good, what) = cubic_bounds(&spec, &m.enclosure.hi, 7.06, 5.24);
    check(good, what);

    // seventeen: continued-fraction cover for alpha = 9 - 16 lambda
    let c17 = quadratic_from_mn(3, 2).unwrap();
    let a = window_unit(&c17).unwrap();
    let cover = cover_set_quadratic(&c17, &a).unwrap();
    let q = cover.quadratic.as_ref().unwrap();
    let period: Vec<i64> = q.cf.period.iter().map(|x| x.try_into().unwrap()).collect();
    check(period == vec![1, 1, 3], format!("period {period:?}"));
    check(q.q_k == BigInt::from(73) && q.k == 7, format!("q_{} = {}", q.k, q.q_k));
    check((q.n, q.m) == (72, -36), format!("n = {}, m = {}", q.n, q.m));
    check(!gap_condition(&q.cf, &a, cover.index, 6).unwrap() && cover.is_minimal(), "k = 6 fails, X minimal".into());
    let max = q.max_abs.value_f64().re;
    let listed = el(&c17, &[20, -36]);
    let listed_ok = (max - 148.215901).abs() < 1e-6;
    notes.push(format!("max|x| = {} = {max:.6}", q.max_abs));
    let out = notes.join("; ");
    if !ok {
        return fail(out);
    }
    if listed_ok {
        return pass(out);
    }
    // analysed discrepancy: the cover contains 21 - 36 lambda, one more than
    // the listed 20 - 36 lambda, which is |x| at the b = -36 end only
    let analysed = q.max_abs == el(&c17, &[21, -36])
        && q.max_abs_formula.as_ref() == Some(&q.max_abs)
        && (listed.value_f64().re - 148.215901).abs() < 1e-6
        && cover.points.iter().any(|x| x == &el(&c17, &[21, -36]));
    if analysed {
        Outcome {
            status: Status::KnownDeviation,
            detail: format!("{out}; expected 20 - 36 lambda ~ 148.215901, but 21 - 36 lambda lies in the cover (known deviation)"),
        }
    } else {
        fail(out)
    }
}

/// Coordinate bounds for `ceil(b mu + c mu^2) - b lambda - c lambda^2` within
/// `M` of the origin. The printed |b| figures equal `r' |c|` with
/// `r' = |mu + i Im lambda|`, i.e. the real part of `lambda` dropped from
/// `x = Re(mu + lambda)`; the bound from the formula itself is smaller and is
/// checked here against a brute-force box.
fn cubic_bounds(spec: &ModelSetSpec, m: &Rat, printed_b: f64, printed_c: f64) -> (bool, String) {
    let cb = cubic_coordinate_bounds(spec, m);
    let ctx = &spec.ctx;
    let l = ctx.lambda_f64();
    let mu = ctx.root_f64(spec.window.intervals[0].index).re;
    let mf = rat_to_f64(m);
    let printed_reading = (mu * mu + l.im * l.im).sqrt() * cb.c;
    let mut outside = 0;
    let mut widest = (0i64, 0i64);
    for b in -40i64..=40 {
        for c in -40i64..=40 {
            let (bf, cf) = (b as f64, c as f64);
            let v = Complex::new((bf * mu + cf * mu * mu).ceil(), 0.0) - l * bf - l * l * cf;
            if v.norm() <= mf {
                widest = (widest.0.max(b.abs()), widest.1.max(c.abs()));
                if bf.abs() > cb.b || cf.abs() > cb.c {
                    outside += 1;
                }
            }
        }
    }
    let ok = (cb.c - printed_c).abs() <= 0.01
        && cb.b <= printed_b + 0.01
        && (printed_reading - printed_b).abs() <= 0.01
        && outside == 0;
    (
        ok,
        format!(
            "|b| <= {:.4} (printed {printed_b} = {printed_reading:.4} with Re lambda dropped), |c| <= {:.4}, brute force widest |b|,|c| = {widest:?}",
            cb.b, cb.c
        ),
    )
}

fn unit_certificate() -> Outcome {
    let d = data::load(data::UNIT_DERIVATION_X2_3X_2).unwrap();
    let replayed = replay_derivation(&d).unwrap();
    let c = d.context().clone();
    let alpha = el(&c, &[9, -16]);
    let searched = derivation_search(&alpha, &PointSet::unit_seed(&c), &SearchBudget::default());
    let found = searched.as_ref().ok().and_then(|s| replay_derivation(s).ok());
    verdict(
        replayed == alpha && found.as_ref() == Some(&alpha),
        format!(
            "shipped {}-step certificate replays to {replayed}; search found one with {} steps",
            d.star_count(),
            searched.map(|s| s.star_count().to_string()).unwrap_or_else(|e| e.to_string())
        ),
    )
}

fn quartic_chain() -> Outcome {
    let d = data::load(data::UNIT_CIRCLE_CHAIN_QUARTIC).unwrap();
    let c = d.context().clone();
    let mu = replay_derivation(&d).unwrap();
    // Re(lambda) = 1/2, so complex conjugation sends lambda to 1 - lambda
    let lb = (-&FieldElement::lambda(&c)).add_int(1);
    let mu_bar = &(&lb.scale(&2.into()) - &lb.pow(2)) + &lb.pow(3);
    let norm = &mu * &mu_bar;
    verdict(
        mu == el(&c, &[0, 2, -1, 1]) && norm == FieldElement::one(&c),
        format!("{} steps replay to {mu}; mu * conj(mu) = {norm}", d.star_count()),
    )
}

fn polynomial_groupoid() -> Outcome {
    let low = census(0, 4).members.len() + census(1, 4).members.len();
    let deg2 = census(2, 4);
    let mut counts = Vec::new();
    let mut ok = low == 4 && deg2.members.len() == 10;
    for n in 0..=4 {
        let lv = enumerate_level(n, 1000).unwrap();
        ok &= BigInt::from(lv.len()) == level_count(n);
        if n <= 3 {
            ok &= lv == closure_level(n);
        }
        counts.push(lv.len());
    }
    ok &= counts[4] == 700;
    verdict(
        ok,
        format!(
            "degree <= 1 members {low}, degree 2 members {} of {} searched; level sizes {counts:?}",
            deg2.members.len(),
            deg2.checked
        ),
    )
}

fn integer_conjecture(max_lambda: i64, budget: &SearchBudget) -> Outcome {
    let mut bad = Vec::new();
    for l in 2..=max_lambda {
        let c = ctx_at(&format!("x-{l}"), l as f64, 0.0);
        let t = FieldElement::from_int(&c, l * (l - 1));
        let found = derivation_search(&t, &PointSet::unit_seed(&c), budget)
            .ok()
            .and_then(|d| replay_derivation(&d).ok())
            .is_some_and(|v| v == t);
        let lv = closure_rank(&PointSet::unit_seed(&c), 4).unwrap();
        let sup = lv.iter().all(|x| integer_superset_member(l, x.coords_i64().unwrap()[0]));
        if !(found && sup) {
            bad.push(l);
        }
    }
    verdict(bad.is_empty(), format!(
            "lambda in 2..={max_lambda}: derivations found (max_points {}, max_abs {}, depth {}) and level-4 points admitted; failures {bad:?}",
            budget.max_points, budget.max_abs, budget.max_depth
        ),)
}

fn sample(m: usize, ring: usize, lam: FieldElement, radius: i64) -> (PlanarSet, PlanarSet) {
    let cyc = lam.context().clone();
    let cyc = CyclotomicContext { m: ring, ctx: cyc };
    let p = polygon_vertices_in(&cyc, m).unwrap();
    let (s, _) = planar_closure(&p, &lam, &rat(radius), &SearchBudget::new(50_000, 10_000, 64)).unwrap();
    (p, s)
}

fn planar_distances() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut all_ok = |cond: bool, what: String| {
        ok &= cond;
        notes.push(format!("{what}{}", if cond { "" } else { " MISMATCH" }));
    };
    let generic = |s: &PlanarSet, m: usize| -> bool {
        let dirs = [FieldElement::one(&s.cyc.ctx), {
            let w = s.cyc.zeta_pow(1);
            &w - &s.cyc.conj(&w)
        }];
        symmetry_check(s, m).unwrap().passed()
            && dirs.iter().all(|d| axis_projection_check(s, d).map(|r| r.passed()).unwrap_or(false))
    };

    let c5 = cyclotomic_context(5).unwrap();
    let (p5, s5) = sample(5, 5, lambda_n_element(5, &c5).unwrap(), 56);
    let d5 = distance_stats(&s5).unwrap();
    let el5 = s5.elements();
    let adjacent: BTreeSet<(FieldElement, FieldElement)> =
        (0..5).map(|l| (p5.seed[l].clone(), p5.seed[(l + 1) % 5].clone())).map(|(a, b)| if a < b { (a, b) } else { (b, a) }).collect();
    let attained: BTreeSet<(FieldElement, FieldElement)> = d5.pairs.iter().map(|&(i, j)| (el5[i].clone(), el5[j].clone())).collect();
    all_ok(
        s5.len() >= 2000 && d5.min_sq == FieldElement::one(&s5.cyc.ctx) && attained == adjacent && generic(&s5, 5),
        format!("pentagon: {} points, min 1 attained only by the 5 polygon edges", s5.len()),
    );

    let c8 = cyclotomic_context(8).unwrap();
    let l8 = (&c8.zeta_pow(1) + &c8.zeta_pow(-1)).add_int(2);
    let (_, s8) = sample(8, 8, l8, 56);
    let d8 = distance_stats(&s8).unwrap();
    let roots8: Vec<FieldElement> = (0..8).map(|k| s8.cyc.zeta_pow(k)).collect();
    let radial = d8.pairs.iter().all(|&(i, j)| roots8.contains(&(&s8.elements()[j] - &s8.elements()[i])));
    all_ok(
        s8.len() >= 2000 && d8.min_sq == FieldElement::one(&s8.cyc.ctx) && radial && d8.pairs.len() > 8 && generic(&s8, 8),
        format!("octagon: {} points, min 1 on {} pairs, all along multiples of tau/8", s8.len(), d8.pairs.len()),
    );

    let c12 = cyclotomic_context(12).unwrap();
    let (_, s12) = sample(12, 12, lambda_n_element(6, &c12).unwrap(), 56);
    let d12 = distance_stats(&s12).unwrap();
    all_ok(
        s12.len() >= 2000 && d12.min_sq == FieldElement::one(&s12.cyc.ctx) && generic(&s12, 12),
        format!("dodecagon: {} points, min 1 on {} pairs", s12.len(), d12.pairs.len()),
    );

    let c6 = cyclotomic_context(6).unwrap();
    let (_, s6) = sample(6, 6, FieldElement::from_int(&c6.ctx, 2), 28);
    // zeta_6 = 1 + eta for the third root eta, so c0 + c1 zeta_6 = (c0 + c1) + c1 eta
    let parity = s6.elements().iter().all(|z| {
        let c0 = z.coords()[0].clone();
        let c1 = z.coords()[1].clone();
        ((&c0 + &c1) * &c1).is_even()
    });
    let one_eta = s6.cyc.zeta_pow(1);
    let d6 = distance_stats(&s6).unwrap();
    all_ok(
        s6.len() >= 2000 && parity && !s6.contains(&one_eta) && d6.min_sq == FieldElement::one(&s6.cyc.ctx),
        format!("hexagon at 2: {} points, all a + b eta with ab even, 1 + eta absent", s6.len()),
    );
    verdict(ok, notes.join("; "))
}

fn planar_witnesses() -> Outcome {
    let c5 = cyclotomic_context(5).unwrap();
    let p5 = polygon_vertices(5).unwrap();
    let lam = lambda_n_element(5, &c5).unwrap();
    let seed = PointSet::new(&p5.cyc.ctx, p5.seed.clone());
    // sigma = e^{3 pi i / 5} is the vertex v_4 and sigma + phi the vertex v_2
    let sigma = p5.seed[4].clone();
    let phi = lam.add_int(-1);
    let budget = SearchBudget::default();
    let mut found = Vec::new();
    for (name, t) in [("sigma + phi", &sigma + &phi), ("1 + phi", lam.clone()), ("sigma", sigma.clone()), ("1", FieldElement::one(&p5.cyc.ctx))] {
        let ok = derivation_search_with(&t, &seed, &lam, &budget)
            .ok()
            .and_then(|d| replay_derivation(&d).ok())
            .is_some_and(|v| v == t);
        found.push((name, ok));
    }
    let p8 = polygon_vertices(8).unwrap();
    let i8 = p8.cyc.zeta_pow(2);
    let h8 = (&p8.cyc.zeta_pow(1) + &p8.cyc.zeta_pow(-1)).add_int(1);
    let one8 = FieldElement::one(&p8.cyc.ctx);
    let top8 = &i8 * &h8;
    let rect8 = [FieldElement::zero(&p8.cyc.ctx), one8.clone(), &one8 + &top8, top8.clone()].iter().all(|z| p8.contains(z));
    let p12 = polygon_vertices(12).unwrap();
    let i12 = p12.cyc.zeta_pow(3);
    let sqrt3 = &p12.cyc.zeta_pow(1) + &p12.cyc.zeta_pow(-1);
    let one12 = FieldElement::one(&p12.cyc.ctx);
    let rect = |h: &FieldElement| {
        let top = &i12 * h;
        [FieldElement::zero(&p12.cyc.ctx), one12.clone(), &one12 + &top, top].iter().all(|z| p12.contains(z))
    };
    // the dodecagon with unit base has height 2 + sqrt 3; the listed height 3 + sqrt 3 is not a vertex height
    let rect12 = rect(&sqrt3.add_int(2));
    let listed12 = rect(&sqrt3.add_int(3));
    let ok = found.iter().all(|f| f.1) && rect8 && rect12 && !listed12;
    verdict(
        ok,
        format!(
            "derivations {found:?}; octagon rectangle at height 1 + sqrt 2: {rect8}; dodecagon rectangle at height 2 + sqrt 3: {rect12} (listed height 3 + sqrt 3 gives vertices: {listed12}); density claims not reproduced"
        ),
    )
}

/// Knobs for the suites that search. The conjecture suite needs depth far
/// beyond the interactive default: derivations of `lambda(lambda - 1)` reach
/// 86 stars and intermediates near `1e5` by `lambda = 20`.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub max_lambda: i64,
    pub conjecture_budget: SearchBudget,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { max_lambda: 20, conjecture_budget: SearchBudget::new(200_000, 1_000_000, 128) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub criterion: u32,
    pub title: &'static str,
    pub status: Status,
    pub detail: String,
    /// Wall time; left out of JSON so reports stay byte-identical across runs.
    #[serde(skip)]
    pub seconds: f64,
}

impl CheckRecord {
    pub fn line(&self) -> String {
        let tag = if self.status == Status::Pass { "PASS" } else { "FAIL" };
        format!("criterion {:>2} {tag} {}: {} [{:.1}s]", self.criterion, self.title, self.detail, self.seconds)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub checks: Vec<CheckRecord>,
    /// Criteria no suite run here exercised.
    pub unexercised: Vec<u32>,
}

impl SuiteResult {
    pub fn exit_code(&self) -> i32 {
        i32::from(self.checks.iter().any(|c| c.status.is_failure()))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": "qlambda.suite/1",
            "suite": self.suite,
            "checks": self.checks,
            "unexercised": self.unexercised,
            "exit_code": self.exit_code(),
        })
    }
}

/// Suite names and the criteria each one runs.
pub const SUITES: &[(&str, &[u32])] = &[
    ("paper-tables", &[1, 2]),
    ("derivations", &[6, 7, 12]),
    ("model-sets", &[3, 4]),
    ("polygons", &[10]),
    ("qpoly", &[8]),
    ("density-cases", &[5]),
    ("conjecture-17-2", &[9]),
];

/// Criteria with no check here; the property suites run under `cargo test`.
pub const TEST_ONLY: &[u32] = &[11];

pub fn criterion_title(n: u32) -> Option<&'static str> {
    Some(match n {
        1 => "quadratic sPV table",
        2 => "polygon constants",
        3 => "golden saturation equals model set",
        4 => "replication reduction",
        5 => "case-study constants",
        6 => "unit certificate for x^2+3x-2",
        7 => "quartic unit-circle chain",
        8 => "polynomial groupoid",
        9 => "integer parameters",
        10 => "planar minimum distances",
        11 => "property suites",
        12 => "planar witness membership",
        _ => return None,
    })
}

fn id_of(n: u32, title: &str) -> String {
    format!("c{n:02}-{}", title.split(|c: char| !c.is_ascii_alphanumeric()).filter(|w| !w.is_empty()).collect::<Vec<_>>().join("-").to_lowercase())
}

/// Run one criterion; `None` for numbers without a check here.
pub fn run_criterion(n: u32, opts: &SuiteOptions) -> Option<CheckRecord> {
    let title = criterion_title(n)?;
    let job: Box<dyn Fn() -> Outcome> = match n {
        1 => Box::new(quadratic_table),
        2 => Box::new(polygon_constants),
        3 => Box::new(golden_saturation),
        4 => Box::new(replication),
        5 => Box::new(case_studies),
        6 => Box::new(unit_certificate),
        7 => Box::new(quartic_chain),
        8 => Box::new(polynomial_groupoid),
        9 => Box::new(|| integer_conjecture(opts.max_lambda, &opts.conjecture_budget)),
        10 => Box::new(planar_distances),
        12 => Box::new(planar_witnesses),
        _ => return None,
    };
    Some(timed(n, title, || job()))
}

/// Time a check and turn a panic into a failure record.
fn timed(n: u32, title: &'static str, job: impl FnOnce() -> Outcome) -> CheckRecord {
    let t = Instant::now();
    let out = catch_unwind(AssertUnwindSafe(job)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        fail(format!("panicked: {msg}"))
    });
    CheckRecord {
        id: id_of(n, title),
        criterion: n,
        title,
        status: out.status,
        detail: out.detail,
        seconds: t.elapsed().as_secs_f64(),
    }
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Option<SuiteResult> {
    let (_, criteria) = SUITES.iter().find(|(s, _)| *s == name)?;
    let checks: Vec<CheckRecord> = criteria.iter().filter_map(|&n| run_criterion(n, opts)).collect();
    let unexercised = (1..=12).filter(|n| !criteria.contains(n)).collect();
    Some(SuiteResult { suite: name.to_string(), checks, unexercised })
}
