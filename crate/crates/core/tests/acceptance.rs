mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::{catalog_groups, exact_m, name, seeded_subgroups, two_seed_subgroups};
use solrep_core::analysis::{analyze, AnalysisOptions};
use solrep_core::families::{cyclic, psl2, symmetric};
use solrep_core::genset::{
    compute_d, m_bruteforce, satisfies_replacement, satisfies_strong_replacement, Budget,
    SearchStatus,
};
use solrep_core::structure::{
    chief_series, chief_series_randomized, classify_strong_form, hawkes_mu, is_soluble, m_via_chief,
};
use solrep_core::{enumerate_subgroups, ElementSubset, Group};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn soluble_up_to(max: usize) -> Vec<Group> {
    catalog_groups()
        .into_iter()
        .filter(|g| g.order() <= max && is_soluble(g))
        .collect()
}

fn replacement_equivalence() -> Outcome {
    let groups = soluble_up_to(100);
    for g in &groups {
        let l = enumerate_subgroups(g, 25_000).map_err(|e| e.to_string())?;
        let v = satisfies_replacement(g, exact_m(g), &Budget::unlimited());
        let rep = v.decided().ok_or("replacement search inconclusive")?;
        let k = l.is_k_group().holds;
        let mu = l.mobius(l.bottom());
        ensure(rep == k && k == (mu != 0), || {
            let witness = v
                .counterexample
                .as_ref()
                .map(|c| c.describe(g))
                .unwrap_or_default();
            format!(
                "{}: replacement={rep} k_group={k} mu={mu} {witness}",
                name(g)
            )
        })?;
    }
    Ok(format!("{} groups, three predicates agree", groups.len()))
}

fn chief_count_equals_m() -> Outcome {
    let groups = soluble_up_to(100);
    for g in &groups {
        let l = enumerate_subgroups(g, 25_000).map_err(|e| e.to_string())?;
        let chief = m_via_chief(&chief_series(&l)).map_err(|e| e.to_string())?;
        let brute = exact_m(g).m;
        ensure(chief == brute, || {
            format!("{}: m_chief={chief} m_bruteforce={brute}", name(g))
        })?;
    }
    Ok(format!("{} groups, exact equality", groups.len()))
}

fn hawkes_identity() -> Outcome {
    let groups = soluble_up_to(usize::MAX);
    for g in &groups {
        let l = enumerate_subgroups(g, 25_000).map_err(|e| e.to_string())?;
        let mu = l.mobius(l.bottom());
        let canonical = hawkes_mu(&chief_series(&l)).map_err(|e| e.to_string())?;
        ensure(canonical == mu, || {
            format!("{}: hawkes={canonical} mobius={mu}", name(g))
        })?;
        for seed in 1..=5 {
            let s = chief_series_randomized(&l, seed);
            let h = hawkes_mu(&s).map_err(|e| e.to_string())?;
            ensure(h == mu, || {
                format!(
                    "{} seed {seed}: hawkes={h} mobius={mu} k={:?}",
                    name(g),
                    s.k_values()
                )
            })?;
        }
    }
    Ok(format!(
        "{} groups, canonical plus 5 seeded rebuilds each",
        groups.len()
    ))
}

fn strong_classification() -> Outcome {
    let groups = soluble_up_to(60);
    let mut rows = Vec::new();
    for g in &groups {
        let l = enumerate_subgroups(g, 25_000).map_err(|e| e.to_string())?;
        let class = classify_strong_form(&l);
        let v = satisfies_strong_replacement(g, &Budget::unlimited());
        let strong = v.decided().ok_or("strong search inconclusive")?;
        ensure(strong == class.is_classified(), || {
            let witness = v
                .counterexample
                .as_ref()
                .map(|c| c.describe(g))
                .unwrap_or_default();
            format!(
                "{}: strong={strong} classification={class} {witness}",
                name(g)
            )
        })?;
        rows.push((name(g).to_string(), strong));
    }
    for (row, expect) in [
        ("elemabelian:2,3", true),
        ("vtcq:2,3,1", true),
        ("cyclic:6", false),
        ("dihedral:4", false),
    ] {
        let got = rows.iter().find(|(n, _)| n == row).map(|r| r.1);
        ensure(got == Some(expect), || {
            format!("{row}: strong={got:?}, expected {expect}")
        })?;
    }
    Ok(format!(
        "{} groups, strong replacement iff classified",
        groups.len()
    ))
}

fn psl_constants() -> Outcome {
    let opts = AnalysisOptions {
        skip_genset: true,
        ..AnalysisOptions::default()
    };
    let r7 = analyze(&psl2(7).map_err(|e| e.to_string())?, &opts).map_err(|e| e.to_string())?;
    ensure(r7.mobius_1 == 0 && r7.k_group && !r7.soluble, || {
        format!(
            "psl2:7 mobius_1={} k_group={} soluble={}",
            r7.mobius_1, r7.k_group, r7.soluble
        )
    })?;
    ensure(r7.theorem1_consistent == Some(false), || {
        format!("psl2:7 consistency flag {:?}", r7.theorem1_consistent)
    })?;
    let g11 = psl2(11).map_err(|e| e.to_string())?;
    let l11 = enumerate_subgroups(&g11, 25_000).map_err(|e| e.to_string())?;
    let mu11 = l11.mobius(l11.bottom());
    ensure(mu11 == 660, || format!("psl2:11 mobius_1={mu11}"))?;
    Ok(format!(
        "psl2:7 mobius_1=0 k_group=true inconsistent; psl2:11 mobius_1=660 over {} subgroups",
        l11.len()
    ))
}

fn extended() -> bool {
    std::env::var("ACCEPTANCE_EXTENDED").is_ok_and(|v| v == "1")
}

fn psl_m() -> Outcome {
    let mut primes = vec![7];
    if extended() {
        primes.push(11);
    }
    let mut parts = Vec::new();
    for p in primes {
        let g = psl2(p).map_err(|e| e.to_string())?;
        let r = m_bruteforce(&g, &Budget::new(20_000_000_000));
        ensure(r.m == 4, || {
            format!("psl2:{p} m={} status={}", r.m, r.status)
        })?;
        parts.push(format!("psl2:{p} m=4 ({}, {} nodes)", r.status, r.nodes));
    }
    if !extended() {
        parts.push("psl2:11 skipped, set ACCEPTANCE_EXTENDED=1".into());
    }
    Ok(parts.join("; "))
}

fn oracle_completeness() -> Outcome {
    let groups: Vec<Group> = catalog_groups()
        .into_iter()
        .filter(|g| g.order() <= 48)
        .collect();
    let mut beyond_two = Vec::new();
    for g in &groups {
        let l = enumerate_subgroups(g, 25_000).map_err(|e| e.to_string())?;
        let found: HashSet<ElementSubset> = l.subgroups().iter().cloned().collect();
        ensure(found.len() == l.len(), || {
            format!("{}: duplicate subgroups", name(g))
        })?;
        let oracle = seeded_subgroups(g);
        ensure(found == oracle, || {
            format!(
                "{}: lattice {} vs oracle {}",
                name(g),
                found.len(),
                oracle.len()
            )
        })?;
        let two = two_seed_subgroups(g);
        ensure(two.is_subset(&found), || {
            format!("{}: 2-seed closure outside lattice", name(g))
        })?;
        if two != found {
            beyond_two.push(format!("{}({})", name(g), found.len() - two.len()));
        }
    }
    Ok(format!(
        "{} groups identical to the seed-closure oracle; 2-seed closures miss only subgroups needing 3+ generators in {}",
        groups.len(),
        beyond_two.join(" ")
    ))
}

fn regression_values() -> Outcome {
    let mu = |g: &Group| {
        let l = enumerate_subgroups(g, 25_000).unwrap();
        l.mobius(l.bottom())
    };
    let s3 = symmetric(3).unwrap();
    let s4 = symmetric(4).unwrap();
    let c4 = cyclic(4).unwrap();
    let c6 = cyclic(6).unwrap();
    ensure(mu(&s3) == 3 && mu(&c4) == 0 && mu(&s4) == -12, || {
        "mobius values".into()
    })?;
    let l4 = enumerate_subgroups(&s4, 25_000).unwrap();
    let k = chief_series(&l4).k_values();
    ensure(k == [4, 3, 1], || format!("S4 chief k={k:?}"))?;
    let m4 = m_bruteforce(&s4, &Budget::unlimited());
    ensure(m4.m == 3 && m4.status == SearchStatus::Exact, || {
        format!("m(S4)={}", m4.m)
    })?;
    let d3 = compute_d(&s3, &Budget::unlimited());
    ensure(d3.exact() == Some(&2), || format!("d(S3)={:?}", d3))?;
    let rep = satisfies_replacement(&c6, exact_m(&c6), &Budget::unlimited());
    ensure(rep.decided() == Some(true), || "C6 replacement".into())?;
    let strong = satisfies_strong_replacement(&c6, &Budget::unlimited());
    let c = strong
        .counterexample
        .as_ref()
        .ok_or("C6 strong: no counterexample")?;
    ensure(
        strong.decided() == Some(false)
            && c.omega.len() == 1
            && c6.element_order(c.omega[0]) == 6
            && c6.element_order(c.g) == 2
            && c.verify(&c6),
        || format!("C6 strong counterexample {}", c.describe(&c6)),
    )?;
    Ok(format!(
        "all values match; C6 counterexample {}",
        c.describe(&c6)
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            1,
            "replacement <=> K-group <=> mobius(1) != 0",
            replacement_equivalence,
        ),
        (
            2,
            "m via chief series equals brute-force m",
            chief_count_equals_m,
        ),
        (3, "Hawkes product equals mobius(1)", hawkes_identity),
        (
            4,
            "strong replacement <=> classified strong form",
            strong_classification,
        ),
        (5, "PSL(2,7) and PSL(2,11) constants", psl_constants),
        (6, "m(PSL(2,7)) = 4", psl_m),
        (
            7,
            "subgroup enumeration matches the closure oracle",
            oracle_completeness,
        ),
        (8, "regression values", regression_values),
    ];
    let mut failed = 0;
    for (n, label, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {n}: {label} [{secs:.1}s] {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {n}: {label} [{secs:.1}s] {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
