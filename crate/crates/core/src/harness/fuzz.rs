use super::{sub_seed, HarnessError, HarnessResult, Report, ScenarioConfig, Status};
use crate::gri::{
    eval_expr, is_gri_monte_carlo_with, parse_expr, trial_rng, ElementSampler, Environment,
    EvalOutcome, Expr, GriError, MonteCarlo, Sample, SampleSpec, Substitution, Verdict,
};
use crate::quat::{QuatAlgebra, Quaternion};
use crate::rings::{QuadField, Rational, RationalField, RingContext};
use crate::series::SeriesRing;

/// Rings whose elements can be written on the command line.
pub trait LiteralRing: Sample {
    fn parse_literal(&self, text: &str) -> Result<Self::Elem, String>;
}

impl LiteralRing for RationalField {
    fn parse_literal(&self, text: &str) -> Result<Rational, String> {
        text.parse()
            .map_err(|e: crate::rings::ParseRationalError| e.to_string())
    }
}

impl LiteralRing for QuadField {
    /// `(u,v)` for `u + v·sqrt(d)`, or a bare rational.
    fn parse_literal(&self, text: &str) -> Result<Self::Elem, String> {
        let t = text.trim();
        match t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
            Some(inner) => {
                let parts: Vec<&str> = inner.split(',').collect();
                let [u, v] = parts.as_slice() else {
                    return Err(format!("expected (u,v), got `{text}`"));
                };
                let u: Rational = u
                    .parse()
                    .map_err(|e: crate::rings::ParseRationalError| e.to_string())?;
                let v: Rational = v
                    .parse()
                    .map_err(|e: crate::rings::ParseRationalError| e.to_string())?;
                Ok(self.elem(u, v))
            }
            None => Ok(self.from_rational(&RationalField.parse_literal(t)?)),
        }
    }
}

impl LiteralRing for QuatAlgebra {
    fn parse_literal(&self, text: &str) -> Result<Quaternion, String> {
        self.parse(text).map_err(|e| e.to_string())
    }
}

impl LiteralRing for SeriesRing<Quaternion> {
    /// A quaternion constant, or a series literal such as `(0,1,0,0) + 1*t^2 + O(t^8)`.
    fn parse_literal(&self, text: &str) -> Result<Self::Elem, String> {
        if let Ok(q) = self.base().parse(text) {
            return self.constant(q).map_err(|e| e.to_string());
        }
        self.parse(text, |c| self.base().parse(c).ok())
            .map_err(|e| e.to_string())
    }
}

fn environment<R: LiteralRing>(
    ring: &R,
    lets: &[(String, String)],
) -> HarnessResult<Environment<R::Elem>> {
    let mut env = Environment::new(ring.clone());
    for (name, literal) in lets {
        let value = ring
            .parse_literal(literal)
            .map_err(|e| HarnessError::Config(format!("--let {name}: {e}")))?;
        env.bind(name, value)?;
    }
    Ok(env)
}

fn sample_spec(cfg: &ScenarioConfig) -> SampleSpec {
    SampleSpec::new(cfg.height).with_degrees(0, 3)
}

/// Expressions of an expression file with their 1-based line numbers; `#` starts a
/// comment and blank lines are skipped.
pub fn expression_lines(text: &str) -> HarnessResult<Vec<(usize, Expr)>> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let e = parse_expr(body).map_err(|source| HarnessError::Parse {
            line: k + 1,
            source,
        })?;
        out.push((k + 1, e));
    }
    Ok(out)
}

/// Monte-Carlo identity test of every expression in `text`. A counterexample is a
/// fail, a never-permissible expression a skip.
pub fn cmd_fuzz<R: LiteralRing>(
    ring: R,
    text: &str,
    lets: &[(String, String)],
    cfg: &ScenarioConfig,
) -> HarnessResult<Report> {
    cfg.validate()?;
    let mut report = cfg.header("fuzz");
    report.note(format!("ring={ring}"));
    let env = environment(&ring, lets)?;
    let sampler = ElementSampler::new(ring.clone(), sample_spec(cfg));
    for (line, e) in expression_lines(text)? {
        let mc = MonteCarlo::new(cfg.trials, sub_seed(cfg.seed, &format!("fuzz.line{line}")))
            .parallel(cfg.parallel);
        let name = format!("fuzz.line{line}");
        let shown = env.bind_constants(&e);
        match is_gri_monte_carlo_with(&e, &env, &sampler, &mc) {
            Ok(v @ Verdict::NoCounterexample { .. }) => {
                report.check(name, Status::Pass, format!("expr={shown}: {v}"))
            }
            Ok(v) => report.check(name, Status::Fail, format!("expr={shown}: {v}")),
            Err(e @ GriError::ResampleCapExhausted { .. }) => {
                report.check(name, Status::Skip, format!("expr={shown}: {e}"))
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(report)
}

/// Evaluate one expression. Variables not bound by `--let` are drawn from the seed and
/// reported with the value.
pub fn cmd_eval<R: LiteralRing>(
    ring: R,
    expr: &str,
    lets: &[(String, String)],
    cfg: &ScenarioConfig,
) -> HarnessResult<Report> {
    cfg.validate()?;
    let mut report = cfg.header("eval");
    report.note(format!("ring={ring}"));
    let env = environment(&ring, lets)?;
    let e = env.bind_constants(
        &parse_expr(expr).map_err(|source| HarnessError::Parse { line: 1, source })?,
    );
    let spec = sample_spec(cfg);
    let mut rng = trial_rng(sub_seed(cfg.seed, "eval"), 0);
    let mut s = Substitution::new();
    for v in e.free_variables() {
        s = s.with(&v, ring.sample(&mut rng, &spec));
    }
    let assigned = if s.0.is_empty() {
        String::new()
    } else {
        format!(" at {s}")
    };
    match eval_expr(&e, &env, &s)? {
        EvalOutcome::Value(v) => report.check(
            "eval",
            Status::Pass,
            format!("expr={e}{assigned}: value={v}"),
        ),
        EvalOutcome::NonPermissible { path } => report.check(
            "eval",
            Status::Skip,
            format!("expr={e}{assigned}: non-permissible at AST path {path:?}"),
        ),
    }
    Ok(report)
}
