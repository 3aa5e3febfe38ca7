use rand_chacha::ChaCha8Rng;

use super::{sub_seed, HarnessResult, Report, ScenarioConfig, Status};
use crate::gri::{random_rational, trial_rng, Sample, SampleSpec};
use crate::quat::Quaternion;
use crate::rings::{AlgebraError, Automorphism, QuadField, RingContext, RingElement, Twistable};
use crate::series::{center_probe, CenterVerdict, OuterRing, SeriesRing, TruncSeries};

/// Every candidate must pass the probe.
pub(super) fn expect_central<E: RingElement>(
    report: &mut Report,
    name: &str,
    candidates: &[E],
    probes: &[E],
    p: i64,
) -> HarnessResult<()> {
    for (idx, c) in candidates.iter().enumerate() {
        if let CenterVerdict::NotCentral {
            probe_index,
            bracket,
            ..
        } = center_probe(c, probes, p)?
        {
            report.assert(
                name,
                false,
                format!(
                    "candidate #{idx} = {c} fails against probe #{probe_index}, bracket {bracket}"
                ),
            );
            return Ok(());
        }
    }
    report.assert(
        name,
        true,
        format!(
            "{} of {} candidates CENTRAL-UP-TO-P (P={p}, {} probes; one-sided, not a proof)",
            candidates.len(),
            candidates.len(),
            probes.len()
        ),
    );
    Ok(())
}

/// The candidate must be refuted by some probe. A probe computation leaving the tower
/// window is reported as a skip.
pub(super) fn expect_noncentral<E: RingElement>(
    report: &mut Report,
    name: &str,
    candidate: &E,
    probes: &[E],
    p: i64,
) -> HarnessResult<()> {
    match center_probe(candidate, probes, p) {
        Ok(CenterVerdict::NotCentral {
            probe_index, probe, ..
        }) => report.assert(
            name,
            true,
            format!("{candidate}: NOT-CENTRAL (fails against probe #{probe_index} = {probe})"),
        ),
        Ok(v) => report.assert(
            name,
            false,
            format!("{candidate}: {v}, expected NOT-CENTRAL"),
        ),
        Err(e @ AlgebraError::WindowOverflow { .. }) => {
            report.check(name, Status::Skip, format!("{candidate}: {e}"))
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

/// Series with random rational coefficients on the degrees `lo..=hi` selected by `keep`.
fn rational_series<C: Twistable>(
    ring: &SeriesRing<C>,
    rng: &mut ChaCha8Rng,
    height: u32,
    (lo, hi): (i64, i64),
    keep: impl Fn(i64) -> bool,
) -> HarnessResult<TruncSeries<C>> {
    let terms: Vec<_> = (lo..=hi)
        .filter(|&d| keep(d))
        .map(|d| {
            (
                d,
                ring.base()
                    .from_rational(&random_rational(rng, height, false)),
            )
        })
        .collect();
    Ok(ring.series(terms, ring.default_precision())?)
}

pub fn cmd_verify_lemma21(cfg: &ScenarioConfig) -> HarnessResult<Report> {
    cfg.validate()?;
    let mut report = cfg.header("lemma21");
    let p = cfg.prec;
    // candidates reach degree -2 and probes have valuation >= 0, so elements known
    // below p + 2 give products known below p
    let elem_prec = p + 2;
    let degrees = (-2, p - 1);
    let n_candidates = cfg.share(4);

    // phi = identity (s = 1): the center is Q((t))
    let h = cfg.quat_algebra();
    let s1: SeriesRing<Quaternion> = SeriesRing::untwisted(h.clone()).with_precision(elem_prec);
    let t1 = s1.var();
    let q1 = |q: Quaternion| s1.constant(q);
    let probes = vec![
        q1(h.i())?,
        q1(h.j())?,
        q1(h.i())?.add(&t1)?,
        q1(h.j())?.add(&q1(h.k())?.mul(&t1)?)?,
    ];
    let seed = sub_seed(cfg.seed, "lemma21.untwisted");
    let candidates = (0..n_candidates)
        .map(|k| {
            rational_series(
                &s1,
                &mut trial_rng(seed, k as u64),
                cfg.height,
                degrees,
                |_| true,
            )
        })
        .collect::<HarnessResult<Vec<_>>>()?;
    expect_central(
        &mut report,
        "lemma21.untwisted.center",
        &candidates,
        &probes,
        p,
    )?;
    for (name, x) in [("i", q1(h.i())?), ("i_plus_t", q1(h.i())?.add(&t1)?)] {
        let check = format!("lemma21.untwisted.noncentral.{name}");
        expect_noncentral(&mut report, &check, &x, &probes, p)?;
    }

    // phi = conjugation of Q(sqrt d) (s = 2): the center is Q((t^2))
    let f = QuadField::new(cfg.quad_d.clone())?;
    let s2 = SeriesRing::new(f.clone(), Automorphism::QuadConjugation)?.with_precision(elem_prec);
    let t2 = s2.var();
    let sqrt_d = s2.constant(f.generator())?;
    let mut probes = vec![
        sqrt_d.clone(),
        sqrt_d.add(&s2.one())?,
        t2.clone(),
        sqrt_d.mul(&t2)?,
    ];
    let seed = sub_seed(cfg.seed, "lemma21.conjugation");
    let spec = SampleSpec::new(cfg.height).with_degrees(0, 3);
    let mut k = 0u64;
    while probes.len() < n_candidates.max(5) {
        probes.push(s2.sample(&mut trial_rng(seed ^ 1, k), &spec));
        k += 1;
    }
    let mut candidates = vec![t2.mul(&t2)?];
    candidates.extend(
        (0..n_candidates)
            .map(|k| {
                let mut rng = trial_rng(seed, k as u64);
                rational_series(&s2, &mut rng, cfg.height, degrees, |d| d % 2 == 0)
            })
            .collect::<HarnessResult<Vec<_>>>()?,
    );
    expect_central(
        &mut report,
        "lemma21.conjugation.center",
        &candidates,
        &probes,
        p,
    )?;
    let t2_sq = t2.mul(&t2)?;
    for (name, x) in [
        ("t", t2.clone()),
        ("sqrt_d", sqrt_d.clone()),
        ("sqrt_d_t2", sqrt_d.mul(&t2_sq)?),
    ] {
        let check = format!("lemma21.conjugation.noncentral.{name}");
        expect_noncentral(&mut report, &check, &x, &probes, p)?;
    }

    // phi = f of infinite order on the tower: the center is Q
    let o = OuterRing::new(h.clone(), cfg.tower_depth, elem_prec);
    let probes = vec![o.quat(h.i())?, o.quat(h.j())?, o.t(), o.tower_var(0)?];
    let seed = sub_seed(cfg.seed, "lemma21.outer");
    let mut candidates = vec![o.rational(&crate::Rational::new(3, 7)?)];
    candidates.extend((0..cfg.share(10)).map(|k| {
        o.rational(&random_rational(
            &mut trial_rng(seed, k as u64),
            cfg.height,
            false,
        ))
    }));
    expect_central(
        &mut report,
        "lemma21.outer.rationals",
        &candidates,
        &probes,
        p,
    )?;
    let mut noncentral = vec![("i", Ok(o.quat(h.i())?)), ("t0", o.tower_var(0))];
    noncentral.push(("t1", o.tower_var(1)));
    noncentral.push(("t", Ok(o.t())));
    for (name, x) in noncentral {
        let check = format!("lemma21.outer.noncentral.{name}");
        match x {
            Ok(x) => expect_noncentral(&mut report, &check, &x, &probes, p)?,
            Err(e) => report.check(check, Status::Skip, e.to_string()),
        }
    }
    Ok(report)
}
