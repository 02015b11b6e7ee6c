//! Replayable star-operation certificates and their JSON form.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::field::{make_context, AlgebraError, Context, FieldElement};
use crate::poly::IntPolynomial;

pub const DERIVATION_SCHEMA: &str = "qlambda.derivation/1";

#[derive(Debug, thiserror::Error)]
pub enum ReplayError {
    #[error("step {id}: recorded value does not match the recomputed star")]
    Mismatch { id: String },
    #[error("step {id}: base point is not in the declared seed")]
    BaseNotInSeed { id: String },
    #[error("step {id}: reference to unknown step {missing}")]
    UnknownRef { id: String, missing: String },
    #[error("step {id} is defined twice")]
    DuplicateId { id: String },
    #[error("step {id}: star step needs both operands")]
    MissingOperand { id: String },
    #[error("target {0} is not a step")]
    MissingTarget(String),
    #[error("malformed derivation JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepOp {
    Base,
    Star,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub id: String,
    pub op: StepOp,
    pub left: Option<String>,
    pub right: Option<String>,
    pub value: FieldElement,
}

/// A DAG of star steps: each star step claims
/// `value = (1 - param) left + param right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub param: FieldElement,
    pub seed: Vec<FieldElement>,
    pub steps: Vec<Step>,
    pub target: String,
}

/// `(1 - param) a + param b`.
pub fn star_op(a: &FieldElement, b: &FieldElement, param: &FieldElement) -> FieldElement {
    a + &(param * &(b - a))
}

impl Derivation {
    pub fn context(&self) -> &Context {
        self.param.context()
    }

    pub fn target_value(&self) -> Option<&FieldElement> {
        self.steps.iter().find(|s| s.id == self.target).map(|s| &s.value)
    }

    pub fn star_count(&self) -> usize {
        self.steps.iter().filter(|s| s.op == StepOp::Star).count()
    }

    /// Longest chain of star steps ending at the target.
    pub fn depth(&self) -> usize {
        let mut depth: HashMap<&str, usize> = HashMap::new();
        for s in &self.steps {
            let d = match s.op {
                StepOp::Base => 0,
                StepOp::Star => {
                    let l = s.left.as_deref().and_then(|x| depth.get(x)).copied().unwrap_or(0);
                    let r = s.right.as_deref().and_then(|x| depth.get(x)).copied().unwrap_or(0);
                    1 + l.max(r)
                }
            };
            depth.insert(&s.id, d);
        }
        depth.get(self.target.as_str()).copied().unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        let ctx = self.context();
        let root = ctx.lambda_f64();
        serde_json::json!({
            "schema": DERIVATION_SCHEMA,
            "minpoly": ints_to_json(ctx.minpoly().coeffs()),
            "root": [root.re, root.im],
            "param": ints_to_json(self.param.coords()),
            "seed": self.seed.iter().map(|s| ints_to_json(s.coords())).collect::<Vec<_>>(),
            "target": self.target,
            "steps": self.steps.iter().map(|s| {
                let mut m = serde_json::Map::new();
                m.insert("id".into(), Value::String(s.id.clone()));
                m.insert("op".into(), Value::String(match s.op { StepOp::Base => "base", StepOp::Star => "star" }.into()));
                if let Some(l) = &s.left {
                    m.insert("left".into(), Value::String(l.clone()));
                }
                if let Some(r) = &s.right {
                    m.insert("right".into(), Value::String(r.clone()));
                }
                m.insert("coords".into(), ints_to_json(s.value.coords()));
                Value::Object(m)
            }).collect::<Vec<_>>(),
        })
    }

    /// Parse a derivation, building its context from the recorded minimal
    /// polynomial and root.
    pub fn from_json(v: &Value) -> Result<Self, ReplayError> {
        let mp = IntPolynomial::new(json_to_ints(v.get("minpoly").ok_or_else(|| jerr("missing minpoly"))?)?);
        let root = v.get("root").and_then(Value::as_array).ok_or_else(|| jerr("missing root"))?;
        let re = root.first().and_then(Value::as_f64).ok_or_else(|| jerr("bad root"))?;
        let im = root.get(1).and_then(Value::as_f64).unwrap_or(0.0);
        let ctx = make_context(&mp, Complex::new(re, im))?;
        Self::from_json_in(&ctx, v)
    }

    /// Parse a derivation inside an existing context.
    pub fn from_json_in(ctx: &Context, v: &Value) -> Result<Self, ReplayError> {
        let elem = |x: &Value| -> Result<FieldElement, ReplayError> { Ok(FieldElement::new(ctx, json_to_ints(x)?)?) };
        let param = match v.get("param") {
            Some(p) => elem(p)?,
            None => FieldElement::lambda(ctx),
        };
        let seed = v
            .get("seed")
            .and_then(Value::as_array)
            .ok_or_else(|| jerr("missing seed"))?
            .iter()
            .map(elem)
            .collect::<Result<Vec<_>, _>>()?;
        let target = v.get("target").and_then(Value::as_str).ok_or_else(|| jerr("missing target"))?.to_string();
        let mut steps = Vec::new();
        for s in v.get("steps").and_then(Value::as_array).ok_or_else(|| jerr("missing steps"))? {
            let id = s.get("id").and_then(Value::as_str).ok_or_else(|| jerr("step without id"))?.to_string();
            let op = match s.get("op").and_then(Value::as_str) {
                Some("base") => StepOp::Base,
                Some("star") => StepOp::Star,
                _ => return Err(jerr(&format!("step {id}: op must be base or star"))),
            };
            let left = s.get("left").and_then(Value::as_str).map(str::to_string);
            let right = s.get("right").and_then(Value::as_str).map(str::to_string);
            let value = elem(s.get("coords").ok_or_else(|| jerr(&format!("step {id}: missing coords")))?)?;
            steps.push(Step { id, op, left, right, value });
        }
        Ok(Derivation { param, seed, steps, target })
    }
}

fn jerr(s: &str) -> ReplayError {
    ReplayError::Json(s.to_string())
}

/// Integers as JSON numbers when they fit in 64 bits, otherwise as strings.
pub fn ints_to_json(v: &[BigInt]) -> Value {
    Value::Array(
        v.iter()
            .map(|c| match c.to_i64() {
                Some(x) => Value::from(x),
                None => Value::String(c.to_string()),
            })
            .collect(),
    )
}

pub fn json_to_ints(v: &Value) -> Result<Vec<BigInt>, ReplayError> {
    v.as_array()
        .ok_or_else(|| jerr("expected an integer list"))?
        .iter()
        .map(|x| match x {
            Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| jerr("non-integer coordinate")),
            Value::String(s) => s.parse::<BigInt>().map_err(|_| jerr("bad integer string")),
            _ => Err(jerr("coordinate must be an integer")),
        })
        .collect()
}

/// Recompute every step exactly and return the target value.
pub fn replay_derivation(d: &Derivation) -> Result<FieldElement, ReplayError> {
    let mut vals: HashMap<&str, &FieldElement> = HashMap::new();
    for s in &d.steps {
        if vals.contains_key(s.id.as_str()) {
            return Err(ReplayError::DuplicateId { id: s.id.clone() });
        }
        if !s.value.same_context(&d.param) {
            return Err(AlgebraError::ContextMismatch.into());
        }
        match s.op {
            StepOp::Base => {
                if !d.seed.contains(&s.value) {
                    return Err(ReplayError::BaseNotInSeed { id: s.id.clone() });
                }
            }
            StepOp::Star => {
                let get = |r: &Option<String>| -> Result<&FieldElement, ReplayError> {
                    let name = r.as_deref().ok_or_else(|| ReplayError::MissingOperand { id: s.id.clone() })?;
                    vals.get(name)
                        .copied()
                        .ok_or_else(|| ReplayError::UnknownRef { id: s.id.clone(), missing: name.to_string() })
                };
                let l = get(&s.left)?;
                let r = get(&s.right)?;
                if star_op(l, r, &d.param) != s.value {
                    return Err(ReplayError::Mismatch { id: s.id.clone() });
                }
            }
        }
        vals.insert(&s.id, &s.value);
    }
    vals.get(d.target.as_str()).map(|v| (*v).clone()).ok_or_else(|| ReplayError::MissingTarget(d.target.clone()))
}

/// Builds derivations from a parent arena: node `i` is either a seed point or
/// the star of two earlier nodes.
#[derive(Clone, Debug, Default)]
pub struct DerivationArena {
    pub values: Vec<FieldElement>,
    pub parents: Vec<Option<(usize, usize)>>,
}

impl DerivationArena {
    pub fn push(&mut self, v: FieldElement, parents: Option<(usize, usize)>) -> usize {
        self.values.push(v);
        self.parents.push(parents);
        self.values.len() - 1
    }

    pub fn derivation(&self, target: usize, param: &FieldElement, seed: &[FieldElement]) -> Derivation {
        // post-order over the ancestors of `target`
        let mut order = Vec::new();
        let mut state = vec![0u8; self.values.len()];
        let mut stack = vec![(target, false)];
        while let Some((n, done)) = stack.pop() {
            if done {
                if state[n] != 2 {
                    state[n] = 2;
                    order.push(n);
                }
                continue;
            }
            if state[n] != 0 {
                continue;
            }
            state[n] = 1;
            stack.push((n, true));
            if let Some((l, r)) = self.parents[n] {
                stack.push((r, false));
                stack.push((l, false));
            }
        }
        let name = |n: usize| format!("p{n}");
        let steps = order
            .iter()
            .map(|&n| match self.parents[n] {
                None => Step { id: name(n), op: StepOp::Base, left: None, right: None, value: self.values[n].clone() },
                Some((l, r)) => Step {
                    id: name(n),
                    op: StepOp::Star,
                    left: Some(name(l)),
                    right: Some(name(r)),
                    value: self.values[n].clone(),
                },
            })
            .collect();
        Derivation { param: param.clone(), seed: seed.to_vec(), steps, target: name(target) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_context_at;

    #[test]
    fn replay_detects_tampering() {
        let ctx = make_context_at(&IntPolynomial::parse("x^2+x-1").unwrap(), 0).unwrap();
        let l = FieldElement::lambda(&ctx);
        let zero = FieldElement::zero(&ctx);
        let one = FieldElement::one(&ctx);
        let mut arena = DerivationArena::default();
        let a = arena.push(zero.clone(), None);
        let b = arena.push(one.clone(), None);
        let c = arena.push(l.clone(), Some((a, b)));
        let seed = vec![zero.clone(), one.clone()];
        let d = arena.derivation(c, &l, &seed);
        assert_eq!(replay_derivation(&d).unwrap(), l);
        let back = Derivation::from_json_in(&ctx, &d.to_json()).unwrap();
        assert_eq!(back, d);

        let mut bad = d.clone();
        bad.steps[2].value = one.clone();
        assert!(matches!(replay_derivation(&bad), Err(ReplayError::Mismatch { .. })));
        let mut bad = d.clone();
        bad.seed = vec![one];
        assert!(matches!(replay_derivation(&bad), Err(ReplayError::BaseNotInSeed { .. })));
    }
}
