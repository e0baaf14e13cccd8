#![allow(dead_code)]

use std::collections::HashSet;

use solrep_core::families::catalog;
use solrep_core::genset::{m_bruteforce, Budget, MSource, MValue, SearchStatus};
use solrep_core::{ElementSubset, Group, Limits};

pub fn catalog_groups() -> Vec<Group> {
    catalog()
        .iter()
        .map(|s| s.build(&Limits::default()).unwrap())
        .collect()
}

pub fn name(g: &Group) -> &str {
    g.name().unwrap_or("?")
}

pub fn exact_m(g: &Group) -> MValue {
    let r = m_bruteforce(g, &Budget::unlimited());
    assert_eq!(r.status, SearchStatus::Exact);
    MValue {
        m: r.m,
        source: MSource::BruteForce,
    }
}

/// Closure under multiplication, starting from `seed` plus the identity.
pub fn naive_closure(g: &Group, seed: &[usize]) -> ElementSubset {
    let mut set = ElementSubset::from_indices(g.order(), seed.iter().copied());
    set.insert(g.identity());
    let mut frontier: Vec<usize> = set.to_vec();
    while let Some(x) = frontier.pop() {
        for &s in seed {
            let y = g.mul(x, s);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

/// Subgroups generated by at most two elements.
pub fn two_seed_subgroups(g: &Group) -> HashSet<ElementSubset> {
    let n = g.order();
    let mut out = HashSet::new();
    for a in 0..n {
        for b in a..n {
            out.insert(naive_closure(g, &[a, b]));
        }
    }
    out
}

/// Every subgroup: closures of index-increasing seeds in which each new
/// element lies outside the closure so far. A chain of such seeds has
/// length at most log2 |G|, so the depth bound loses nothing.
pub fn seeded_subgroups(g: &Group) -> HashSet<ElementSubset> {
    fn rec(
        g: &Group,
        seed: &mut Vec<usize>,
        closure: &ElementSubset,
        out: &mut HashSet<ElementSubset>,
    ) {
        out.insert(closure.clone());
        let start = seed.last().map_or(0, |&l| l + 1);
        for x in start..g.order() {
            if closure.contains(x) {
                continue;
            }
            seed.push(x);
            let next = naive_closure(g, seed);
            rec(g, seed, &next, out);
            seed.pop();
        }
    }
    let mut out = HashSet::new();
    rec(g, &mut Vec::new(), &naive_closure(g, &[]), &mut out);
    out
}
