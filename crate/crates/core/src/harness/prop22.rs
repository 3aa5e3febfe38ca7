use super::lemma21::{expect_central, expect_noncentral};
use super::{sub_seed, HarnessResult, Report, ScenarioConfig, Status};
use crate::gri::{trial_rng, Sample, SampleSpec};
use crate::rings::RingElement;
use crate::series::{center_probe, CenterVerdict, OuterElem, OuterRing};

fn is_rational(x: &OuterElem) -> bool {
    x.terms().all(|(d, c)| d == 0 && c.as_rational().is_some())
}

pub fn cmd_verify_prop22(cfg: &ScenarioConfig) -> HarnessResult<Report> {
    cfg.validate()?;
    let mut report = cfg.header("prop22");
    report.note(
        "center probes are one-sided: NOT-CENTRAL is a certificate, CENTRAL-UP-TO-P is evidence",
    );
    let p = cfg.prec;
    let h = cfg.quat_algebra();
    let o = OuterRing::new(h.clone(), cfg.tower_depth, p + 2);
    let probes = vec![o.quat(h.i())?, o.quat(h.j())?, o.t(), o.tower_var(0)?];

    // samples use t-degrees 0..=1 and t_i with i < depth, so every product with a
    // probe stays inside the tower window
    let spec = SampleSpec::new(cfg.height).with_degrees(0, 1);
    let seed = sub_seed(cfg.seed, "prop22.samples");
    let wanted = cfg.share(2);
    let (mut refuted, mut draws) = (0usize, 0u64);
    let mut failure = None;
    while refuted < wanted && failure.is_none() {
        let x = o.series_ring().sample(&mut trial_rng(seed, draws), &spec);
        draws += 1;
        if is_rational(&x) {
            continue;
        }
        match center_probe(&x, &probes, p)? {
            CenterVerdict::NotCentral { .. } => refuted += 1,
            v => failure = Some(format!("sample #{} = {x}: {v}", draws - 1)),
        }
    }
    match failure {
        Some(detail) => report.assert("prop22.random_noncentral", false, detail),
        None => report.assert(
            "prop22.random_noncentral",
            true,
            format!(
                "{refuted} of {wanted} random non-rational elements NOT-CENTRAL at P={p} \
                 ({draws} draws)"
            ),
        ),
    }

    let i_plus_t0 = o.quat(h.i())?.add(&o.tower_var(0)?)?;
    expect_noncentral(
        &mut report,
        "prop22.noncentral.i_plus_t0",
        &i_plus_t0,
        &probes,
        p,
    )?;
    match o.tower_var(1) {
        Ok(t1) => expect_noncentral(&mut report, "prop22.noncentral.t1", &t1, &probes, p)?,
        Err(e) => report.check("prop22.noncentral.t1", Status::Skip, e.to_string()),
    }
    let zero = o.series_ring().zero_to(p + 2);
    expect_central(
        &mut report,
        "prop22.zero_and_rationals",
        &[zero, o.rational(&5.into())],
        &probes,
        p,
    )?;
    Ok(report)
}
