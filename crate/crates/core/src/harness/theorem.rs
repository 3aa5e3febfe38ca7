use super::{sub_seed, HarnessResult, Report, ScenarioConfig};
use crate::gri::{trial_rng, Sample, SampleSpec};
use crate::quat::{QuatAlgebra, Quaternion};
use crate::rings::{Rational, RingContext, RingElement};

/// Default non-central elements whose commutators are searched: `i`, `1+i`, `1+i+j`.
pub fn theorem_candidates(h: &QuatAlgebra) -> Vec<(&'static str, Quaternion)> {
    vec![
        ("i", h.i()),
        ("1+i", h.int(1, 1, 0, 0)),
        ("1+i+j", h.int(1, 1, 1, 0)),
    ]
}

/// `1` where `c^k` is central, `0` otherwise, for `k = 1..=d`.
fn centrality_pattern(c: &Quaternion, d: u32) -> HarnessResult<String> {
    let mut out = String::new();
    let mut p = c.clone();
    for k in 1..=d {
        if k > 1 {
            p = p.mul(c)?;
        }
        out.push(if p.is_central() { '1' } else { '0' });
    }
    Ok(out)
}

/// `Some(c)` when `c = [a, r]` has no central power `c^k`, `k ≤ d`.
fn witness_commutator(a: &Quaternion, r: &Quaternion, d: u32) -> HarnessResult<Option<Quaternion>> {
    let c = a.commutator(r)?;
    Ok(match c.central_order(d)? {
        None => Some(c),
        Some(_) => None,
    })
}

pub fn cmd_verify_theorem(cfg: &ScenarioConfig) -> HarnessResult<Report> {
    cfg.validate()?;
    let mut report = cfg.header("theorem");
    report.note(
        "mechanism only: a commutator a r a^-1 r^-1 with no central power up to dmax shows the \
         subgroup it generates with a is not radical of bounded degree; normal subgroups are not \
         enumerated",
    );
    let h = cfg.quat_algebra();
    let d = cfg.d_bound;
    let spec = SampleSpec::new(cfg.height).units();
    let budget = cfg.trials.saturating_mul(5);

    // 1+i against 1+2j: c = (1+4i-2j+2k)/5
    let (a, r) = (h.int(1, 1, 0, 0), h.int(1, 0, 2, 0));
    let c = a.commutator(&r)?;
    let fifth = Rational::new(1, 5)?;
    let expected = h.int(1, 4, -2, 2).scale(&fifth);
    let direct = witness_commutator(&a, &r, d)?.is_some();
    report.assert(
        "theorem.direct_pair",
        c == expected && c.trd() == Rational::new(2, 5)? && c.nrd().is_one() && direct,
        format!(
            "a={a} r={r}: c={c} trd={} nrd={} central powers k<={d}: {}",
            c.trd(),
            c.nrd(),
            centrality_pattern(&c, d)?
        ),
    );

    let c = h.i().commutator(&h.j())?;
    report.assert(
        "theorem.rejects_i_j",
        witness_commutator(&h.i(), &h.j(), d)?.is_none(),
        format!(
            "a=i r=j: c={c} has central order {:?}, rejected as witness",
            c.central_order(d)?
        ),
    );

    for (idx, (name, a)) in theorem_candidates(&h).into_iter().enumerate() {
        let seed = sub_seed(cfg.seed, &format!("theorem.{idx}"));
        let mut found = None;
        for draw in 0..budget {
            let r = h.sample(&mut trial_rng(seed, draw as u64), &spec);
            if let Some(c) = witness_commutator(&a, &r, d)? {
                found = Some((draw, r, c));
                break;
            }
        }
        let check = format!("theorem.witness.{name}");
        match found {
            Some((draw, r, c)) => {
                // the recorded literal must re-verify on its own
                let reparsed = h.parse(&r.to_string()).ok();
                let again = match &reparsed {
                    Some(r2) => witness_commutator(&a, r2, d)?.as_ref() == Some(&c),
                    None => false,
                };
                report.assert(
                    check,
                    again,
                    format!(
                        "a={a} r={r} (draw {draw}): c={c} central powers k<={d}: {}",
                        centrality_pattern(&c, d)?
                    ),
                );
            }
            None => report.assert(
                check,
                false,
                format!(
                    "a={a}: no witness in {budget} draws (rng seed {seed}, streams 0..{budget})"
                ),
            ),
        }
    }

    let five = h.from_rational(&5.into());
    let seed = sub_seed(cfg.seed, "theorem.central");
    let draws = cfg.share(10);
    let mut bad = None;
    for draw in 0..draws {
        let r = h.sample(&mut trial_rng(seed, draw as u64), &spec);
        let c = five.commutator(&r)?;
        if c != h.one() {
            bad = Some(format!("r={r}: c={c}"));
            break;
        }
    }
    report.assert(
        "theorem.central_commutator",
        bad.is_none(),
        bad.unwrap_or(format!("a=5: commutator with {draws} random r is 1")),
    );
    Ok(report)
}
