use super::{convention_note, sub_seed, HarnessResult, Report, ScenarioConfig};
use crate::gri::{
    algebraic_degree_probe, eval_gn_dp, gn_variable, quaternion_degree_check, run_monte_carlo,
    trial_rng, ElementSampler, EvalOutcome, MonteCarlo, Sample, SampleSpec, Substitution, Verdict,
};
use crate::quat::{QuatAlgebra, Quaternion};
use crate::rings::{RingContext, RingElement};

/// Budget within which a `g_1` counterexample must appear for a non-central element.
const G1_BUDGET: usize = 50;

fn gn_verdict(
    a: &Quaternion,
    n: usize,
    sampler: &ElementSampler<QuatAlgebra>,
    mc: &MonteCarlo,
) -> HarnessResult<Verdict<Quaternion>> {
    Ok(run_monte_carlo(mc, |rng| {
        let ys: Vec<Quaternion> = (0..n)
            .map(|_| sampler.ring.sample(rng, &sampler.spec))
            .collect();
        let v = eval_gn_dp(a, &ys)?;
        let mut s = Substitution::new().with("x", a.clone());
        for (k, y) in ys.into_iter().enumerate() {
            s = s.with(&gn_variable(k + 1), y);
        }
        Ok((s, EvalOutcome::Value(v)))
    })?)
}

fn first_failure(failures: &[String], total: usize, ok_text: String) -> (bool, String) {
    match failures.first() {
        None => (true, ok_text),
        Some(f) => (
            false,
            format!("{} of {total} failed; first: {f}", failures.len()),
        ),
    }
}

pub fn cmd_verify_lemma31(cfg: &ScenarioConfig) -> HarnessResult<Report> {
    cfg.validate()?;
    let mut report = cfg.header("lemma31");
    report.note(convention_note());
    let h = cfg.quat_algebra();
    let sampler = ElementSampler::new(h.clone(), SampleSpec::new(cfg.height));
    let substitutions = cfg.share(2);
    let mc = |label: &str, idx: usize, trials: usize| {
        MonteCarlo::new(trials, sub_seed(cfg.seed, &format!("{label}.{idx}")))
            .parallel(cfg.parallel)
    };

    for (name, a) in [("i", h.i()), ("seven", h.from_rational(&7.into()))] {
        let probe =
            algebraic_degree_probe(&a, &sampler, 3, &mc("lemma31.example", 0, substitutions))?;
        let deg = a.min_poly().degree();
        report.assert(
            format!("lemma31.example.{name}"),
            probe.least_vanishing == Some(deg),
            format!(
                "a={a}: least vanishing k={:?}, min_poly {} of degree {deg}, counterexamples at k={:?}",
                probe.least_vanishing,
                a.min_poly(),
                probe.counterexamples().map(|(k, _)| k).collect::<Vec<_>>()
            ),
        );
    }

    let mut sampled: Vec<Quaternion> = Vec::new();
    let (mut g1_fail, mut g2_fail, mut g3_fail, mut disagree) = (vec![], vec![], vec![], vec![]);
    let seed = sub_seed(cfg.seed, "lemma31.noncentral");
    let mut draw = 0u64;
    while sampled.len() < substitutions {
        let a = h.sample(&mut trial_rng(seed, draw), &sampler.spec);
        draw += 1;
        if a.is_central() {
            continue;
        }
        let idx = sampled.len();
        let g1 = gn_verdict(&a, 1, &sampler, &mc("lemma31.g1", idx, G1_BUDGET))?;
        let g2 = gn_verdict(&a, 2, &sampler, &mc("lemma31.g2", idx, substitutions))?;
        let g3 = gn_verdict(&a, 3, &sampler, &mc("lemma31.g3", idx, substitutions))?;
        if !g1.is_counterexample() {
            g1_fail.push(format!("a={a}: {g1}"));
        }
        if g2.is_counterexample() {
            g2_fail.push(format!("a={a}: {g2}"));
        }
        if g3.is_counterexample() {
            g3_fail.push(format!("a={a}: {g3}"));
        }
        // g_1 refuted and g_2 vanishing put the probe's least vanishing degree at 2
        let probe_degree = match (g1.is_counterexample(), g2.is_counterexample()) {
            (false, _) => Some(1),
            (true, false) => Some(2),
            (true, true) => None,
        };
        if probe_degree != Some(a.min_poly().degree()) {
            disagree.push(format!(
                "a={a}: probe {probe_degree:?} vs min_poly degree {}",
                a.min_poly().degree()
            ));
        }
        sampled.push(a);
    }
    let n = sampled.len();
    let (ok, d) = first_failure(
        &g1_fail,
        n,
        format!("{n} of {n} non-central a refuted by g_1 within {G1_BUDGET} trials"),
    );
    report.assert("lemma31.noncentral.g1_counterexample", ok, d);
    for (name, fails, k) in [("g2", &g2_fail, 2), ("g3", &g3_fail, 3)] {
        let (ok, d) = first_failure(
            fails,
            n,
            format!(
                "g_{k}(a,.) = 0 on {substitutions} substitutions for each of {n} non-central a"
            ),
        );
        report.assert(format!("lemma31.noncentral.{name}_vanishes"), ok, d);
    }

    let mut central_fail = vec![];
    let n_central = cfg.share(10);
    let seed = sub_seed(cfg.seed, "lemma31.central");
    for idx in 0..n_central {
        let q = crate::gri::random_rational(&mut trial_rng(seed, idx as u64), cfg.height, false);
        let a = h.from_rational(&q);
        let c =
            quaternion_degree_check(&a, &sampler, 1, &mc("lemma31.central", idx, substitutions))?;
        if !c.agrees() {
            central_fail.push(format!(
                "a={a}: {:?}",
                c.probe.per_degree.first().map(|(_, v)| v.to_string())
            ));
            disagree.push(format!("a={a}: central but g_1 refuted"));
        }
        sampled.push(a);
    }
    let (ok, d) = first_failure(
        &central_fail,
        n_central,
        format!("g_1(a,.) = 0 on {substitutions} substitutions for each of {n_central} central a"),
    );
    report.assert("lemma31.central.g1_vanishes", ok, d);

    let total = n + n_central;
    let agree = total - disagree.len();
    let (ok, d) = first_failure(
        &disagree,
        total,
        format!("probe degree equals min_poly degree for {agree} of {total} elements (100%)"),
    );
    report.assert("lemma31.min_poly_agreement", ok, d);

    let mut ch_fail = vec![];
    for q in &sampled {
        let h = q.algebra();
        let ch = q
            .mul(q)?
            .sub(&q.scale(&q.trd()))?
            .add(&h.from_rational(&q.nrd()))?;
        if !ch.is_zero() {
            ch_fail.push(format!("q={q}"));
        }
    }
    let (ok, d) = first_failure(
        &ch_fail,
        sampled.len(),
        format!(
            "q^2 - trd(q) q + nrd(q) = 0 exactly for all {} sampled q",
            sampled.len()
        ),
    );
    report.assert("lemma31.cayley_hamilton", ok, d);
    Ok(report)
}
