use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use solrep_core::families::catalog;
use solrep_core::genset::{
    m_bruteforce, satisfies_replacement, satisfies_strong_replacement, Budget, MSource, MValue,
    SearchStatus,
};
use solrep_core::structure::{
    chief_series, chief_series_randomized, classify_strong_form, hawkes_mu, m_via_chief,
};
use solrep_core::{enumerate_subgroups, Group, Result};

use crate::{emit, Failure, Settings, Suite, EXIT_CHECK_FAILED, EXIT_INCONCLUSIVE};

enum Verdict {
    Pass(String),
    Violation(String),
    Inconclusive(String),
}

fn exact_m(g: &Group, budget: &Budget) -> Option<MValue> {
    let r = m_bruteforce(g, budget);
    (r.status == SearchStatus::Exact).then_some(MValue {
        m: r.m,
        source: MSource::BruteForce,
    })
}

fn equivalence(g: &Group, s: &Settings) -> Result<Verdict> {
    let l = enumerate_subgroups(g, s.analysis.max_subgroups)?;
    let Some(m) = exact_m(g, &Budget::new(s.analysis.budget_nodes)) else {
        return Ok(Verdict::Inconclusive("m search".into()));
    };
    let v = satisfies_replacement(g, m, &Budget::new(s.analysis.budget_nodes));
    let Some(rep) = v.decided() else {
        return Ok(Verdict::Inconclusive("replacement search".into()));
    };
    let k = l.is_k_group();
    let mu = l.mobius(l.bottom());
    let detail = format!("replacement={rep} k_group={} mobius_1={mu}", k.holds);
    if rep == k.holds && k.holds == (mu != 0) {
        return Ok(Verdict::Pass(detail));
    }
    let mut witness = detail;
    if let Some(c) = &v.counterexample {
        write!(witness, " counterexample {}", c.describe(g)).unwrap();
    }
    if let Some(h) = k.witness {
        write!(
            witness,
            " uncomplemented subgroup {h} members={:?}",
            l.subgroup(h).to_vec()
        )
        .unwrap();
    }
    Ok(Verdict::Violation(witness))
}

fn strong_form(g: &Group, s: &Settings) -> Result<Verdict> {
    let l = enumerate_subgroups(g, s.analysis.max_subgroups)?;
    let class = classify_strong_form(&l);
    let v = satisfies_strong_replacement(g, &Budget::new(s.analysis.budget_nodes));
    let Some(strong) = v.decided() else {
        return Ok(Verdict::Inconclusive("strong replacement search".into()));
    };
    let detail = format!("strong={strong} classification={class}");
    if strong == class.is_classified() {
        return Ok(Verdict::Pass(detail));
    }
    let witness = v.counterexample.map(|c| c.describe(g)).unwrap_or_default();
    Ok(Verdict::Violation(format!("{detail} {witness}")))
}

fn hawkes(g: &Group, s: &Settings) -> Result<Verdict> {
    let l = enumerate_subgroups(g, s.analysis.max_subgroups)?;
    let mu = l.mobius(l.bottom());
    let series = chief_series(&l);
    let canonical = hawkes_mu(&series)?;
    if canonical != mu {
        return Ok(Verdict::Violation(format!(
            "hawkes_mu={canonical} mobius_1={mu} k={:?}",
            series.k_values()
        )));
    }
    for seed in s.seed..s.seed + 5 {
        let r = chief_series_randomized(&l, seed);
        let h = hawkes_mu(&r)?;
        if h != mu || r.len() != series.len() {
            return Ok(Verdict::Violation(format!(
                "seed {seed}: hawkes_mu={h} mobius_1={mu} n={} k={:?}",
                r.len(),
                r.k_values()
            )));
        }
    }
    Ok(Verdict::Pass(format!(
        "hawkes_mu={canonical} k={:?}",
        series.k_values()
    )))
}

fn archmin(g: &Group, s: &Settings) -> Result<Verdict> {
    let l = enumerate_subgroups(g, s.analysis.max_subgroups)?;
    let series = chief_series(&l);
    let chief = m_via_chief(&series)?;
    let Some(brute) = exact_m(g, &Budget::new(s.analysis.budget_nodes)) else {
        return Ok(Verdict::Inconclusive("m search".into()));
    };
    let detail = format!(
        "m_chief={chief} m_bruteforce={} k={:?}",
        brute.m,
        series.k_values()
    );
    Ok(if chief == brute.m {
        Verdict::Pass(detail)
    } else {
        Verdict::Violation(detail)
    })
}

pub fn run(
    suite: Suite,
    settings: &Settings,
    out: Option<&Path>,
) -> std::result::Result<u8, Failure> {
    let check: fn(&Group, &Settings) -> Result<Verdict> = match suite {
        Suite::Theorem1 => equivalence,
        Suite::Theorem2 => strong_form,
        Suite::Hawkes => hawkes,
        Suite::Archmin => archmin,
    };
    let specs = catalog();
    let results: Vec<Option<(String, Verdict)>> = settings.pool().install(|| {
        specs
            .par_iter()
            .map(|spec| {
                let g = spec.build(&settings.limits).ok()?;
                if g.order() > settings.limits.max_order {
                    return None;
                }
                let verdict =
                    check(&g, settings).unwrap_or_else(|e| Verdict::Violation(e.to_string()));
                Some((spec.to_string(), verdict))
            })
            .collect()
    });
    let mut text = String::new();
    let (mut groups, mut violations, mut inconclusive) = (0, 0, 0);
    for (name, verdict) in results.into_iter().flatten() {
        groups += 1;
        match verdict {
            Verdict::Pass(d) => writeln!(text, "ok\t{name}\t{d}"),
            Verdict::Violation(d) => {
                violations += 1;
                writeln!(text, "FAIL\t{name}\t{d}")
            }
            Verdict::Inconclusive(d) => {
                inconclusive += 1;
                writeln!(text, "inconclusive\t{name}\t{d}")
            }
        }
        .unwrap();
    }
    let status = if violations > 0 {
        "fail"
    } else if inconclusive > 0 {
        "inconclusive"
    } else {
        "pass"
    };
    writeln!(
        text,
        "suite {}: {status} ({groups} groups, {violations} violations, {inconclusive} inconclusive)",
        suite_name(suite)
    )
    .unwrap();
    emit(out, &text)?;
    Ok(if violations > 0 {
        EXIT_CHECK_FAILED
    } else if inconclusive > 0 {
        EXIT_INCONCLUSIVE
    } else {
        0
    })
}

fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::Theorem1 => "theorem1",
        Suite::Theorem2 => "theorem2",
        Suite::Hawkes => "hawkes",
        Suite::Archmin => "archmin",
    }
}
