use std::fmt::Display;

use num_complex::Complex;
use serde_json::{json, Value};

use qlambda::density::{cover_set_greedy, cover_set_quadratic, seed_plan, CoverSet};
use qlambda::derivation::ints_to_json;
use qlambda::modelset::{point_csv, shadow_str, window_from_seed};
use qlambda::qpoly::{census, enumerate_level, level_count, threshold_poly};
use qlambda::shapes::{cyclotomic_context, distance_stats, lambda_n_element, planar_closure, polygon_vertices_in, render_svg, symmetry_check};
use qlambda::spv::window_unit;
use qlambda::starset::{closure_rank_with, derivation_search, parse_decimal, StarError};
use qlambda::verify::{run_suite, SuiteOptions, SUITES};
use qlambda::{
    classify_spv, enumerate_radius, make_context, membership, replay_derivation, saturate_region, Context, Derivation,
    FieldElement, IntPolynomial, ModelSetSpec, PointSet, Rat, SearchBudget,
};

use crate::args::*;
use crate::output::{emit_json, emit_text};
use crate::CliError;

fn usage(e: impl Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn execute(cmd: &Command) -> Result<(), CliError> {
    match cmd {
        Command::Classify(a) => classify(a),
        Command::Closure(a) => closure(a),
        Command::Modelset(a) => modelset(a),
        Command::Derive(a) => derive(a),
        Command::Replay(a) => replay(a),
        Command::Polygon(a) => polygon(a),
        Command::Qpoly(a) => qpoly(a),
        Command::Density(a) => density(a),
        Command::Verify(a) => verify(a),
    }
}

/// `"re"` or `"(re,im)"`.
pub fn parse_root(s: &str) -> Result<Complex<f64>, CliError> {
    let t = s.trim();
    let bad = || usage(format!("bad root {s:?}; expected \"re\" or \"(re,im)\""));
    if let Some(inner) = t.strip_prefix('(').and_then(|u| u.strip_suffix(')')) {
        let (re, im) = inner.split_once(',').ok_or_else(bad)?;
        Ok(Complex::new(re.trim().parse().map_err(|_| bad())?, im.trim().parse().map_err(|_| bad())?))
    } else {
        Ok(Complex::new(t.parse().map_err(|_| bad())?, 0.0))
    }
}

pub fn context(f: &FieldArgs) -> Result<Context, CliError> {
    let p = IntPolynomial::parse(&f.minpoly).map_err(usage)?;
    make_context(&p, parse_root(&f.root)?).map_err(usage)
}

/// A polynomial in the generator, written with `lambda`, `zeta`, `z` or `x`,
/// or a coordinate list `[c0, c1, ...]`.
pub fn parse_element(ctx: &Context, s: &str) -> Result<FieldElement, CliError> {
    let t = s.replace("lambda", "x").replace("zeta", "x").replace('z', "x").replace('*', "");
    let p = IntPolynomial::parse(&t).map_err(|e| usage(format!("element {s:?}: {e}")))?;
    Ok(FieldElement::from_poly(ctx, &p))
}

fn parse_set(ctx: &Context, s: &str) -> Result<PointSet, CliError> {
    let elems = s.split(';').filter(|p| !p.trim().is_empty()).map(|p| parse_element(ctx, p)).collect::<Result<Vec<_>, _>>()?;
    if elems.is_empty() {
        return Err(usage("empty seed"));
    }
    Ok(PointSet::new(ctx, elems))
}

fn parse_rat(s: &str) -> Result<Rat, CliError> {
    parse_decimal(s).ok_or_else(|| usage(format!("bad rational {s:?}")))
}

fn budget(b: &BudgetArgs) -> SearchBudget {
    SearchBudget::new(b.max_points, b.max_abs, b.max_depth)
}

fn element_json(x: &FieldElement) -> Value {
    let v = x.value_f64();
    json!({"coords": ints_to_json(x.coords()), "value": x.to_string(), "re": shadow_str(v.re), "im": shadow_str(v.im)})
}

fn field_json(ctx: &Context) -> Value {
    let r = ctx.lambda_f64();
    json!({"minpoly": ctx.minpoly().to_string(), "root": [shadow_str(r.re), shadow_str(r.im)]})
}

fn points_json(set: &PointSet) -> Vec<Value> {
    set.iter().map(element_json).collect()
}

fn classify(a: &FieldArgs) -> Result<(), CliError> {
    let ctx = context(a)?;
    let report = classify_spv(&ctx);
    let mut v = json!({"schema": "qlambda.spv/1", "field": field_json(&ctx)});
    v["report"] = serde_json::to_value(&report).expect("report serialises");
    emit_json(&v, None)
}

fn closure(a: &ClosureArgs) -> Result<(), CliError> {
    let ctx = context(&a.field)?;
    let seed = parse_set(&ctx, &a.seed)?;
    let lambda = FieldElement::lambda(&ctx);
    let (set, mode, saturated) = match (a.rank, &a.radius) {
        (Some(n), _) => match closure_rank_with(&seed, &lambda, n, a.budget.max_points) {
            Ok(s) => (s, json!({"rank": n}), None),
            Err(StarError::Budget { level, max_points, .. }) => {
                return Err(CliError::Budget(format!("point budget {max_points} exceeded at level {level}")));
            }
            Err(e) => return Err(usage(e)),
        },
        (None, Some(r)) => {
            let radius = parse_rat(r)?;
            let window = window_from_seed(&ctx, seed.elements()).map_err(usage)?;
            let sat = saturate_region(&seed, &window, &radius, &budget(&a.budget));
            (sat.set, json!({"radius": radius.to_string()}), Some(sat.saturated))
        }
        (None, None) => return Err(usage("closure needs --rank or --radius")),
    };
    if let Some(p) = &a.output.csv {
        emit_text(&point_csv(&set), Some(p))?;
    }
    let v = json!({
        "schema": "qlambda.closure/1",
        "field": field_json(&ctx),
        "seed": points_json(&seed),
        "mode": mode,
        "saturated": saturated,
        "count": set.len(),
        "points": points_json(&set),
    });
    emit_json(&v, a.output.out.as_deref())?;
    match saturated {
        Some(false) => Err(CliError::Budget("saturation stopped at the budget; the set is partial".into())),
        _ => Ok(()),
    }
}

fn modelset(a: &ModelsetArgs) -> Result<(), CliError> {
    let ctx = context(&a.field)?;
    let spec = ModelSetSpec::unit(&ctx).map_err(usage)?;
    let radius = parse_rat(&a.radius)?;
    let set = enumerate_radius(&spec, &radius).map_err(usage)?;
    if let Some(p) = &a.output.csv {
        emit_text(&point_csv(&set), Some(p))?;
    }
    let v = json!({
        "schema": "qlambda.modelset/1",
        "field": field_json(&ctx),
        "window": spec.window.to_json(),
        "radius": radius.to_string(),
        "count": set.len(),
        "points": points_json(&set),
    });
    emit_json(&v, a.output.out.as_deref())
}

fn derive(a: &DeriveArgs) -> Result<(), CliError> {
    let ctx = context(&a.field)?;
    let target = parse_element(&ctx, &a.target)?;
    let seed = parse_set(&ctx, &a.seed)?;
    match derivation_search(&target, &seed, &budget(&a.budget)) {
        Ok(d) => {
            eprintln!("target = {target}, found with {} stars", d.star_count());
            emit_json(&d.to_json(), a.out.as_deref())
        }
        Err(StarError::NotFound) => Err(CliError::Budget(format!("{target}: not found within budget"))),
        Err(e) => Err(usage(e)),
    }
}

fn replay(a: &ReplayArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&a.input)?;
    let v: Value = serde_json::from_str(&text).map_err(usage)?;
    let d = Derivation::from_json(&v).map_err(usage)?;
    let value = replay_derivation(&d).map_err(|e| CliError::Verification(e.to_string()))?;
    if let Some(t) = d.target_value() {
        if t != &value {
            return Err(CliError::Verification(format!("replayed {value}, declared target {t}")));
        }
    }
    println!("target = {value}, VERIFIED");
    Ok(())
}

fn polygon(a: &PolygonArgs) -> Result<(), CliError> {
    let ring = a.ring.unwrap_or(a.n);
    let cyc = cyclotomic_context(ring).map_err(usage)?;
    let param = match a.param.strip_prefix("lambda_") {
        Some("n") => lambda_n_element(a.n, &cyc).map_err(usage)?,
        Some(k) => lambda_n_element(k.parse().map_err(|_| usage(format!("bad parameter {:?}", a.param)))?, &cyc).map_err(usage)?,
        None => parse_element(&cyc.ctx, &a.param)?,
    };
    let seed = polygon_vertices_in(&cyc, a.n).map_err(usage)?;
    let radius = parse_rat(&a.radius)?;
    let b = SearchBudget::new(a.max_points, 10_000, a.rank.unwrap_or(64));
    let (set, sat) = match planar_closure(&seed, &param, &radius, &b) {
        Ok((s, sat)) => (s, sat.saturated),
        Err(qlambda::shapes::ShapeError::Budget { partial, .. }) => (*partial, false),
        Err(e) => return Err(usage(e)),
    };
    if let Some(p) = &a.svg {
        emit_text(&render_svg(&set), Some(p))?;
    }
    if let Some(p) = &a.output.csv {
        emit_text(&point_csv(&set.points), Some(p))?;
    }
    let dist = distance_stats(&set).ok();
    let sym = symmetry_check(&set, a.n).map_err(usage)?;
    let v = json!({
        "schema": "qlambda.polygon/1",
        "n": a.n,
        "ring": ring,
        "param": element_json(&param),
        "radius": radius.to_string(),
        "depth_cap": b.max_depth,
        "saturated": sat,
        "count": set.len(),
        "min_distance": dist.as_ref().map(|d| json!({"squared": d.min_sq.to_string(), "value": shadow_str(d.min), "pairs": d.pairs.len()})),
        "symmetric": sym.passed(),
        "points": points_json(&set.points),
    });
    emit_json(&v, a.output.out.as_deref())?;
    if sat || a.rank.is_some() {
        Ok(())
    } else {
        Err(CliError::Budget("closure stopped at the point budget; outputs are partial".into()))
    }
}

fn poly_json(p: &IntPolynomial) -> Value {
    json!({"poly": p.to_string(), "coeffs": ints_to_json(p.coeffs())})
}

fn qpoly(a: &QpolyArgs) -> Result<(), CliError> {
    let v = if let Some(f) = &a.member {
        let p = IntPolynomial::parse(f).map_err(usage)?;
        json!({"schema": "qlambda.qpoly.membership/1", "poly": p.to_string(), "verdict": membership(&p).to_json()})
    } else if let Some(n) = a.level {
        let polys = enumerate_level(n, a.max_points).map_err(|e| CliError::Budget(e.to_string()))?;
        json!({
            "schema": "qlambda.qpoly.level/1",
            "n": n,
            "count": polys.len(),
            "expected": level_count(n).to_string(),
            "polys": polys.iter().map(poly_json).collect::<Vec<_>>(),
        })
    } else if let Some(d) = a.census {
        let c = census(d, a.bound);
        json!({
            "schema": "qlambda.qpoly.census/1",
            "degree": d,
            "bound": a.bound,
            "checked": c.checked,
            "members": c.members.iter().map(poly_json).collect::<Vec<_>>(),
        })
    } else if let Some(t) = &a.threshold {
        let (g, e) = t.split_once(',').ok_or_else(|| usage("--threshold takes \"gamma,eps\""))?;
        let th = threshold_poly(&parse_rat(g)?, &parse_rat(e)?).map_err(usage)?;
        json!({"schema": "qlambda.qpoly.threshold/1", "n": th.n, "poly": poly_json(&th.poly), "member": membership(&th.poly).is_member()})
    } else {
        return Err(usage("qpoly needs one of --member, --level, --census, --threshold"));
    };
    emit_json(&v, a.out.as_deref())
}

fn density(a: &DensityArgs) -> Result<(), CliError> {
    let ctx = context(&a.field)?;
    let quadratic = ctx.degree() == 2 && ctx.lambda_is_real();
    let alpha = match &a.alpha {
        Some(s) => parse_element(&ctx, s)?,
        None if quadratic => window_unit(&ctx).map_err(usage)?,
        None => FieldElement::lambda(&ctx),
    };
    let cover = match &a.cover {
        Some(s) => CoverSet::from_points(&ctx, &alpha, parse_set(&ctx, s)?.into_elements()).map_err(usage)?,
        None if quadratic => cover_set_quadratic(&ctx, &alpha).map_err(usage)?,
        None => {
            let spec = ModelSetSpec::unit(&ctx).map_err(usage)?;
            cover_set_greedy(&spec, &alpha, &parse_rat(&a.pool_radius)?).map_err(usage)?
        }
    };
    let plan = seed_plan(&cover).map_err(usage)?;
    let quad = cover.quadratic.as_ref().map(|q| {
        json!({
            "period": q.cf.period.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "k": q.k,
            "q_k": q.q_k.to_string(),
            "n": q.n,
            "m": q.m,
            "max_abs": element_json(&q.max_abs),
        })
    });
    let v = json!({
        "schema": "qlambda.density/1",
        "field": field_json(&ctx),
        "alpha": element_json(&alpha),
        "cover": {"size": cover.points.len(), "minimal": cover.is_minimal(), "quadratic": quad},
        "plan": plan.to_json(),
    });
    emit_json(&v, a.out.as_deref())
}

fn verify(a: &VerifyArgs) -> Result<(), CliError> {
    let names: Vec<&str> = if a.suite == "all" {
        SUITES.iter().map(|(s, _)| *s).collect()
    } else if SUITES.iter().any(|(s, _)| *s == a.suite) {
        vec![a.suite.as_str()]
    } else {
        let known: Vec<&str> = SUITES.iter().map(|(s, _)| *s).collect();
        return Err(usage(format!("unknown suite {:?}; known: {}", a.suite, known.join(", "))));
    };
    let opts = SuiteOptions {
        max_lambda: a.max_lambda,
        conjecture_budget: SearchBudget::new(a.max_points, a.max_abs, a.max_depth),
    };
    let mut reports = Vec::new();
    let mut failed = Vec::new();
    let mut covered: Vec<u32> = Vec::new();
    for name in names {
        let r = run_suite(name, &opts).expect("suite names checked above");
        for c in &r.checks {
            eprintln!("{}", c.line());
            covered.push(c.criterion);
            if c.status.is_failure() {
                failed.push(c.id.clone());
            }
        }
        reports.push(r.to_json());
    }
    let unexercised: Vec<u32> = (1..=12).filter(|n| !covered.contains(n)).collect();
    let v = json!({
        "schema": "qlambda.verify/1",
        "suites": reports,
        "unexercised": unexercised,
        "failed": failed,
    });
    emit_json(&v, a.out.as_deref())?;
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Verification(failed.join(", ")))
    }
}
