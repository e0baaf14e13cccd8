//! Soluble structure: derived and lower central series, the Fitting
//! subgroup, chief series and the strong-form classifier.

mod chief;
mod classify;

pub use chief::{
    chief_series, chief_series_randomized, hawkes_mu, m_via_chief, ChiefFactor, ChiefSeries,
};
pub use classify::{charpoly_mod_p, classify_strong_form, StrongFormClassification};

use serde::Serialize;

use crate::bitset::ElementSubset;
use crate::genset::{satisfies_replacement, Budget, MValue, ReplacementVerdict};
use crate::group::Group;
use crate::lattice::{SubgroupId, SubgroupLattice};

/// Subgroup generated by `[x, y]` for `x` in `a`, `y` in `b`.
pub fn commutator_subgroup(g: &Group, a: &ElementSubset, b: &ElementSubset) -> ElementSubset {
    let mut seed = g.trivial_subset();
    for x in a.iter() {
        for y in b.iter() {
            seed.insert(g.commutator(x, y));
        }
    }
    g.generated_subgroup(&seed)
}

/// `G, G', G'', ...` up to and including the first repeated term.
pub fn derived_series(g: &Group) -> Vec<ElementSubset> {
    let mut series = vec![g.whole()];
    loop {
        let last = series.last().unwrap();
        let next = commutator_subgroup(g, last, last);
        if next == *last {
            return series;
        }
        series.push(next);
    }
}

pub fn is_soluble(g: &Group) -> bool {
    derived_series(g).last().unwrap().len() == 1
}

/// Lower central series of the subgroup `h`, stopping once it stabilizes.
pub fn lower_central_series(g: &Group, h: &ElementSubset) -> Vec<ElementSubset> {
    let mut series = vec![h.clone()];
    loop {
        let last = series.last().unwrap();
        let next = commutator_subgroup(g, last, h);
        if next == *last {
            return series;
        }
        series.push(next);
    }
}

pub fn is_nilpotent_subgroup(g: &Group, h: &ElementSubset) -> bool {
    lower_central_series(g, h).last().unwrap().len() == 1
}

pub fn is_nilpotent(g: &Group) -> bool {
    is_nilpotent_subgroup(g, &g.whole())
}

/// Join of all nilpotent normal subgroups.
pub fn fitting(lattice: &SubgroupLattice<'_>) -> SubgroupId {
    let g = lattice.group();
    lattice
        .normal_subgroups()
        .into_iter()
        .filter(|&id| is_nilpotent_subgroup(g, lattice.subgroup(id)))
        .fold(lattice.bottom(), |acc, id| lattice.join(acc, id))
}

/// The three equivalent conditions for a soluble group, each computed on its own.
#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub soluble: bool,
    pub replacement: Option<bool>,
    pub k_group: bool,
    pub mobius_nonzero: bool,
    /// `None` while the replacement search is undecided and the other two agree.
    pub consistent: Option<bool>,
    #[serde(skip)]
    pub verdict: Option<ReplacementVerdict>,
}

impl EquivalenceReport {
    pub fn from_parts(
        soluble: bool,
        replacement: Option<bool>,
        k_group: bool,
        mobius_nonzero: bool,
    ) -> Self {
        let consistent = if k_group != mobius_nonzero || replacement.is_some_and(|r| r != k_group) {
            Some(false)
        } else {
            replacement.map(|_| true)
        };
        EquivalenceReport {
            soluble,
            replacement,
            k_group,
            mobius_nonzero,
            consistent,
            verdict: None,
        }
    }

    /// A disagreement in a soluble group contradicts the equivalence.
    pub fn is_violation(&self) -> bool {
        self.soluble && self.consistent == Some(false)
    }
}

pub fn equivalence_report(
    lattice: &SubgroupLattice<'_>,
    m: MValue,
    budget: &Budget,
) -> EquivalenceReport {
    let g = lattice.group();
    let verdict = satisfies_replacement(g, m, budget);
    let mut report = EquivalenceReport::from_parts(
        is_soluble(g),
        verdict.decided(),
        lattice.is_k_group().holds,
        lattice.mobius(lattice.bottom()) != 0,
    );
    report.verdict = Some(verdict);
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{alternating, cyclic, dihedral, elementary_abelian, symmetric};
    use crate::genset::{m_bruteforce, MSource};
    use crate::lattice::enumerate_subgroups;

    // Derived subgroup straight from the definition: words in commutators.
    fn derived_oracle(g: &Group, h: &ElementSubset) -> ElementSubset {
        let mut set = g.trivial_subset();
        for x in h.iter() {
            for y in h.iter() {
                set.insert(g.commutator(x, y));
            }
        }
        loop {
            let mut grown = set.clone();
            for a in set.iter() {
                for b in set.iter() {
                    grown.insert(g.mul(a, b));
                }
            }
            if grown == set {
                return set;
            }
            set = grown;
        }
    }

    #[test]
    fn derived_series_shapes() {
        let orders = |g: &Group| {
            derived_series(g)
                .iter()
                .map(|s| s.len())
                .collect::<Vec<_>>()
        };
        assert_eq!(orders(&cyclic(6).unwrap()), vec![6, 1]);
        assert_eq!(orders(&symmetric(4).unwrap()), vec![24, 12, 4, 1]);
        assert!(is_soluble(&symmetric(4).unwrap()));
        let a5 = alternating(5).unwrap();
        assert_eq!(orders(&a5), vec![60]);
        assert!(!is_soluble(&a5));
        assert!(is_soluble(&cyclic(1).unwrap()));
    }

    #[test]
    fn derived_subgroup_matches_closure_oracle() {
        for g in [
            symmetric(4).unwrap(),
            dihedral(6).unwrap(),
            alternating(4).unwrap(),
        ] {
            for s in derived_series(&g).windows(2) {
                assert_eq!(s[1], derived_oracle(&g, &s[0]));
            }
        }
    }

    #[test]
    fn nilpotency() {
        assert!(is_nilpotent(&dihedral(4).unwrap()));
        assert!(is_nilpotent(&elementary_abelian(3, 2).unwrap()));
        assert!(!is_nilpotent(&symmetric(3).unwrap()));
        assert!(!is_nilpotent(&dihedral(3).unwrap()));
        assert!(is_nilpotent(&cyclic(12).unwrap()));
    }

    #[test]
    fn fitting_examples() {
        let order = |g: &Group| {
            let l = enumerate_subgroups(g, 10_000).unwrap();
            l.order_of(fitting(&l))
        };
        assert_eq!(order(&symmetric(3).unwrap()), 3);
        assert_eq!(order(&alternating(4).unwrap()), 4);
        assert_eq!(order(&symmetric(4).unwrap()), 4);
        assert_eq!(order(&dihedral(4).unwrap()), 8);
        assert_eq!(order(&dihedral(6).unwrap()), 6);
    }

    #[test]
    fn equivalence_examples() {
        for (g, expect) in [(symmetric(3).unwrap(), true), (cyclic(4).unwrap(), false)] {
            let l = enumerate_subgroups(&g, 10_000).unwrap();
            let m = MValue {
                m: m_bruteforce(&g, &Budget::unlimited()).m,
                source: MSource::BruteForce,
            };
            let r = equivalence_report(&l, m, &Budget::unlimited());
            assert_eq!(
                (r.replacement, r.k_group, r.mobius_nonzero),
                (Some(expect), expect, expect)
            );
            assert!(r.soluble);
            assert_eq!(r.consistent, Some(true));
        }
    }

    #[test]
    fn consistency_flag() {
        let r = EquivalenceReport::from_parts(false, None, true, false);
        assert_eq!(r.consistent, Some(false));
        assert!(!r.is_violation());
        assert_eq!(
            EquivalenceReport::from_parts(true, None, true, true).consistent,
            None
        );
        assert!(EquivalenceReport::from_parts(true, Some(false), true, true).is_violation());
    }
}
