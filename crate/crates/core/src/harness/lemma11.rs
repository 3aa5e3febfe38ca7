use super::{convention_note, sub_seed, HarnessError, HarnessResult, Report, ScenarioConfig};
use crate::gri::{
    eval_gn_dp, gn_variable, random_rational, run_monte_carlo, trial_rng, EvalOutcome, MonteCarlo,
    Sample, SampleSpec, Substitution, Verdict,
};
use crate::linalg::rank;
use crate::quat::{QuatAlgebra, Quaternion};
use crate::rings::{AlgebraResult, Rational, RingContext, RingElement};
use crate::series::{OuterElem, OuterRing, SeriesRing, TruncSeries};

type QSeries = TruncSeries<Quaternion>;

/// Both sides of `(c−1)(1+b⁻¹t)⁻¹ + 1 = a(b+t)a⁻¹(b+t)⁻¹` with `c = aba⁻¹b⁻¹`.
fn identity_sides(
    s: &SeriesRing<Quaternion>,
    a: &Quaternion,
    b: &Quaternion,
) -> HarnessResult<(QSeries, QSeries)> {
    let h = a.algebra();
    let t = s.var();
    let c = a.commutator(b)?;
    let one = s.one();
    let c_minus_1 = s.constant(c.sub(&h.one())?)?;
    let binv_t = s.constant(b.inv()?)?.mul(&t)?;
    let lhs = c_minus_1.mul(&one.add(&binv_t)?.inv()?)?.add(&one)?;
    let a_s = s.constant(a.clone())?;
    let b_t = s.constant(b.clone())?.add(&t)?;
    let rhs = a_s.mul(&b_t)?.mul(&a_s.inv()?)?.mul(&b_t.inv()?)?;
    Ok((lhs, rhs))
}

/// `u = (c−1)⁻¹ + β t` and `β = b⁻¹(c−1)⁻¹`.
fn u_and_beta(
    s: &SeriesRing<Quaternion>,
    a: &Quaternion,
    b: &Quaternion,
) -> HarnessResult<(QSeries, Quaternion)> {
    let h = a.algebra();
    let inv_c1 = a.commutator(b)?.sub(&h.one())?.inv()?;
    let beta = b.inv()?.mul(&inv_c1)?;
    let u = s
        .constant(inv_c1)?
        .add(&s.constant(beta.clone())?.mul(&s.var())?)?;
    Ok((u, beta))
}

/// Leading-power check: `[t^m] u^m = β^m ≠ 0` for `m = 1..=m_max`.
fn leading_powers(u: &QSeries, beta: &Quaternion, m_max: i64) -> HarnessResult<Option<String>> {
    let mut um = u.clone();
    let mut bm = beta.clone();
    for m in 1..=m_max {
        if m > 1 {
            um = um.mul(u)?;
            bm = bm.mul(beta)?;
        }
        let coeff = um.coeff(m)?;
        if coeff != bm || bm.is_zero() {
            return Ok(Some(format!("m={m}: [t^m]u^m = {coeff}, beta^m = {bm}")));
        }
    }
    Ok(None)
}

/// Exact rank of the coefficient vectors of `1, u, …, u^m` below degree `prec`.
fn power_rank(u: &QSeries, m: i64, prec: i64) -> HarnessResult<usize> {
    let mut rows = Vec::new();
    let mut power = u.series_ring().one();
    for k in 0..=m {
        if k > 0 {
            power = power.mul(u)?;
        }
        let mut row = Vec::new();
        for d in 0..prec {
            row.extend(power.coeff(d)?.coords().into_iter().cloned());
        }
        rows.push(row);
    }
    Ok(rank(&rows))
}

fn noncommuting_pair(
    h: &QuatAlgebra,
    seed: u64,
    idx: u64,
    spec: &SampleSpec,
) -> HarnessResult<(Quaternion, Quaternion)> {
    let mut rng = trial_rng(seed, idx);
    loop {
        let a = h.sample(&mut rng, spec);
        let b = h.sample(&mut rng, spec);
        if !a.mul(&b)?.sub(&b.mul(&a)?)?.is_zero() {
            return Ok((a, b));
        }
    }
}

/// `r = q_0 + c·t_{-m} + q_1·t`: the tower part sits at the bottom of the window, so
/// each left factor `t^k` with `k ≤ 2m` shifts it to an index still inside.
fn witness_sampler<'a>(
    o: &'a OuterRing,
    spec: &SampleSpec,
) -> impl Fn(&mut rand_chacha::ChaCha8Rng) -> AlgebraResult<OuterElem> + Sync + 'a {
    let spec = spec.clone();
    move |rng| {
        let h = o.algebra();
        let m = o.depth() as i64;
        let q0 = o.quat(h.sample(rng, &spec))?;
        let c = random_rational(rng, spec.height, true);
        let low = o.tower_var(-m)?.mul(&o.rational(&c))?;
        let q1 = o.quat(h.sample(rng, &spec))?.mul(&o.t())?;
        q0.add(&low)?.add(&q1)
    }
}

/// Least tower depth `m` whose window `P = 2m+1` reaches `t^(n(n+1)/2)`.
pub(super) fn witness_depth(n: usize) -> u32 {
    let lead = (n * (n + 1) / 2) as u32;
    lead.div_ceil(2)
}

pub fn cmd_verify_lemma11(cfg: &ScenarioConfig) -> HarnessResult<Report> {
    cfg.validate()?;
    let p = cfg.prec;
    if p < 6 {
        return Err(HarnessError::Config(format!(
            "lemma11 needs prec >= 6 (insufficient precision {p})"
        )));
    }
    let mut report = cfg.header("lemma11");
    report.note(convention_note());
    let h = cfg.quat_algebra();
    let s: SeriesRing<Quaternion> = SeriesRing::untwisted(h.clone()).with_precision(p);
    let spec = SampleSpec::new(cfg.height).units();
    let m_max = p / 2;

    // a = i, b = j: c = -1 and both sides equal -1 - 2 sum_{n>=1} j^n t^n
    let (a, b) = (h.i(), h.j());
    let (lhs, rhs) = identity_sides(&s, &a, &b)?;
    let mut expected = vec![(0, h.int(-1, 0, 0, 0))];
    let mut jn = h.one();
    for n in 1..p {
        jn = jn.mul(&h.j())?;
        expected.push((n, jn.scale(&Rational::from(-2))));
    }
    let expected = s.series(expected, p)?;
    report.assert(
        "lemma11.identity.example_i_j",
        lhs.eq_to_prec(&expected, p)? && rhs.eq_to_prec(&expected, p)?,
        format!("a=i b=j c={}: lhs = rhs = {expected}", a.commutator(&b)?),
    );

    let seed = sub_seed(cfg.seed, "lemma11.identity");
    let n_pairs = cfg.share(8);
    let mut failure = None;
    for idx in 0..n_pairs {
        let (a, b) = noncommuting_pair(&h, seed, idx as u64, &spec)?;
        let (lhs, rhs) = identity_sides(&s, &a, &b)?;
        if !lhs.eq_to_prec(&rhs, p)? {
            failure = Some(format!("a={a} b={b}: lhs {lhs} != rhs {rhs}"));
            break;
        }
    }
    report.assert(
        "lemma11.identity.random_pairs",
        failure.is_none(),
        failure.unwrap_or(format!(
            "identity holds coefficientwise below t^{p} for {n_pairs} random non-commuting pairs"
        )),
    );

    // a = i, b = j: u = -1/2 + (j/2) t and beta = j/2
    let (u, beta) = u_and_beta(&s, &h.i(), &h.j())?;
    let half_j = h.j().scale(&Rational::new(1, 2)?);
    let u3_t3 = u.pow(3)?.coeff(3)?;
    let minus_j_8 = h.j().scale(&Rational::new(-1, 8)?);
    report.assert(
        "lemma11.leading_power.example_i_j",
        beta == half_j && u3_t3 == minus_j_8 && leading_powers(&u, &beta, m_max)?.is_none(),
        format!("u={u}, beta={beta}, [t^3]u^3={u3_t3}"),
    );
    let r4 = power_rank(&u, 4, p)?;
    report.assert(
        "lemma11.independence.example_i_j",
        r4 == 5,
        format!("rank of 1,u,...,u^4 = {r4}"),
    );

    let seed = sub_seed(cfg.seed, "lemma11.independence");
    let n_pairs = cfg.share(20);
    let (mut lead_fail, mut rank_fail) = (None, None);
    for idx in 0..n_pairs {
        let (a, b) = noncommuting_pair(&h, seed, idx as u64, &spec)?;
        let (u, beta) = u_and_beta(&s, &a, &b)?;
        if lead_fail.is_none() {
            if let Some(why) = leading_powers(&u, &beta, m_max)? {
                lead_fail = Some(format!("a={a} b={b}: {why}"));
            }
        }
        let r = power_rank(&u, m_max, p)?;
        if r != (m_max + 1) as usize && rank_fail.is_none() {
            rank_fail = Some(format!("a={a} b={b}: rank {r}"));
        }
    }
    report.assert(
        "lemma11.leading_power.random_pairs",
        lead_fail.is_none(),
        lead_fail.unwrap_or(format!(
            "[t^m]u^m = beta^m != 0 for m <= {m_max} on {n_pairs} random pairs"
        )),
    );
    report.assert(
        "lemma11.independence.random_pairs",
        rank_fail.is_none(),
        rank_fail.unwrap_or(format!(
            "1,u,...,u^{m_max} have exact rank {} over Q on {n_pairs} random pairs",
            m_max + 1
        )),
    );

    // g_n(X, r) != 0 in the outer ring, whose center is Q. g_n(X) = g_n(X+1) and X+1 has
    // t-valuation 1, so g_n(X, r) starts at t^(n(n+1)/2); each r keeps its tower part at
    // t_{-m}, which left factors t^k with k <= 2m keep inside the window
    let (a, b) = (h.i(), h.j());
    for n in [2usize, 3] {
        let m = cfg.tower_depth.max(witness_depth(n));
        let prec = 2 * m as i64 + 1;
        let o = OuterRing::new(h.clone(), m, prec);
        let a_o = o.quat(a.clone())?;
        let b_t = o.quat(b.clone())?.add(&o.t())?;
        let x = a_o.mul(&b_t)?.mul(&a_o.inv()?)?.mul(&b_t.inv()?)?;
        let draw = witness_sampler(&o, &SampleSpec::new(cfg.height));
        let mc = MonteCarlo::new(
            cfg.trials,
            sub_seed(cfg.seed, &format!("lemma11.witness.{n}")),
        )
        .parallel(cfg.parallel);
        let verdict = run_monte_carlo(&mc, |rng| {
            let ys = (0..n)
                .map(|_| draw(rng))
                .collect::<AlgebraResult<Vec<_>>>()?;
            let value = eval_gn_dp(&x, &ys)?;
            let mut sub = Substitution::new();
            for (k, y) in ys.into_iter().enumerate() {
                sub = sub.with(&gn_variable(k + 1), y);
            }
            Ok((sub, EvalOutcome::Value(value)))
        })?;
        let name = format!("lemma11.witness.g{n}");
        match verdict {
            Verdict::Counterexample {
                substitution,
                value,
                attempt,
            } => report.assert(
                name,
                true,
                format!(
                    "x=a(b+t)a^-1(b+t)^-1 with a=i b=j in depth-{m} outer ring, P={prec}: draw \
                     {attempt}: {substitution} gives g_{n} = {value}"
                ),
            ),
            v => report.assert(
                name,
                false,
                format!("no witness in depth-{m} outer ring, P={prec}: {v}"),
            ),
        }
    }
    Ok(report)
}
