use std::collections::BTreeMap;
use std::fmt;

use super::expr::{AstPath, Expr};
use super::{GriError, GriResult};
use crate::rings::{RingContext, RingElement};

/// A ring together with named constants from it.
#[derive(Debug, Clone)]
pub struct Environment<E: RingElement> {
    pub ring: E::Ring,
    constants: BTreeMap<String, E>,
}

impl<E: RingElement> Environment<E> {
    pub fn new(ring: E::Ring) -> Self {
        Environment {
            ring,
            constants: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: &str, value: E) -> GriResult<Self> {
        self.bind(name, value)?;
        Ok(self)
    }

    pub fn bind(&mut self, name: &str, value: E) -> GriResult<()> {
        self.ring.check_same(value.ring())?;
        self.constants.insert(name.to_string(), value);
        Ok(())
    }

    pub fn constant(&self, name: &str) -> Option<&E> {
        self.constants.get(name)
    }

    pub fn constant_names(&self) -> impl Iterator<Item = &str> + Clone {
        self.constants.keys().map(String::as_str)
    }

    /// `e` with every identifier bound here reclassified as a constant.
    pub fn bind_constants(&self, e: &Expr) -> Expr {
        e.with_constants(self.constant_names())
    }
}

/// Assignment of ring elements to variable names.
#[derive(Debug, Clone, PartialEq)]
pub struct Substitution<E>(pub BTreeMap<String, E>);

impl<E> Default for Substitution<E> {
    fn default() -> Self {
        Substitution(BTreeMap::new())
    }
}

impl<E> Substitution<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: E) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn get(&self, name: &str) -> Option<&E> {
        self.0.get(name)
    }
}

impl<E: fmt::Display> fmt::Display for Substitution<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (name, value)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{name}={value}")?;
        }
        Ok(())
    }
}

/// Result of a substitution: a value, or the AST path of the first inversion
/// (in evaluation order) that received a non-invertible value.
#[derive(Debug, Clone, PartialEq)]
pub enum EvalOutcome<E> {
    Value(E),
    NonPermissible { path: AstPath },
}

impl<E> EvalOutcome<E> {
    pub fn value(self) -> Option<E> {
        match self {
            EvalOutcome::Value(v) => Some(v),
            EvalOutcome::NonPermissible { .. } => None,
        }
    }

    pub fn is_permissible(&self) -> bool {
        matches!(self, EvalOutcome::Value(_))
    }
}

/// Evaluate `e` bottom-up. Identifiers parsed as variables fall back to environment
/// constants of the same name when the substitution does not cover them.
pub fn eval_expr<E: RingElement>(
    e: &Expr,
    env: &Environment<E>,
    s: &Substitution<E>,
) -> GriResult<EvalOutcome<E>> {
    let mut path = Vec::new();
    match eval_at(e, env, s, &mut path)? {
        Ok(v) => Ok(EvalOutcome::Value(v)),
        Err(path) => Ok(EvalOutcome::NonPermissible { path }),
    }
}

type Step<E> = GriResult<Result<E, AstPath>>;

fn lookup<E: RingElement>(env: &Environment<E>, found: Option<&E>, name: &str) -> GriResult<E> {
    let v = found.ok_or_else(|| GriError::Unbound {
        name: name.to_string(),
    })?;
    env.ring.check_same(v.ring())?;
    Ok(v.clone())
}

fn eval_at<E: RingElement>(
    e: &Expr,
    env: &Environment<E>,
    s: &Substitution<E>,
    path: &mut AstPath,
) -> Step<E> {
    macro_rules! child {
        ($idx:expr, $node:expr) => {{
            path.push($idx);
            let r = eval_at($node, env, s, path)?;
            path.pop();
            match r {
                Ok(v) => v,
                Err(p) => return Ok(Err(p)),
            }
        }};
    }
    let v = match e {
        Expr::Literal(q) => env.ring.from_rational(q),
        Expr::Constant(n) => lookup(env, env.constant(n), n)?,
        Expr::Variable(n) => lookup(env, s.get(n).or_else(|| env.constant(n)), n)?,
        Expr::Sum(xs) => {
            let mut acc: Option<E> = None;
            for (k, x) in xs.iter().enumerate() {
                let v = child!(k, x);
                acc = Some(match acc {
                    None => v,
                    Some(a) => a.add(&v)?,
                });
            }
            acc.unwrap_or_else(|| env.ring.zero())
        }
        Expr::Product(xs) => {
            let mut acc: Option<E> = None;
            for (k, x) in xs.iter().enumerate() {
                let v = child!(k, x);
                acc = Some(match acc {
                    None => v,
                    Some(a) => a.mul(&v)?,
                });
            }
            acc.unwrap_or_else(|| env.ring.one())
        }
        Expr::Neg(x) => child!(0, x).neg(),
        Expr::Power(b, k) => {
            let base = child!(0, b);
            match base.pow(*k) {
                Ok(v) => v,
                Err(err) if *k < 0 && err.is_non_invertible() => return Ok(Err(path.clone())),
                Err(err) => return Err(err.into()),
            }
        }
    };
    Ok(Ok(v))
}
