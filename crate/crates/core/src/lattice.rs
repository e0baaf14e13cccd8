//! The complete subgroup lattice of a [`Group`].
//!
//! Subgroups are found by starting from every cyclic subgroup and joining
//! each discovered subgroup with every cyclic subgroup until nothing new
//! appears. Every subgroup `<g_1, ..., g_k>` is reached this way through the
//! chain `<g_1>`, `<g_1, g_2>`, ..., so the fixed point is complete.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use crate::bitset::{BitSet, ElementSubset};
use crate::error::{Error, Result};
use crate::group::{ElementIndex, Group, Span};

pub const DEFAULT_MAX_SUBGROUPS: usize = 25_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubgroupId(pub usize);

impl fmt::Display for SubgroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub struct SubgroupLattice<'g> {
    group: &'g Group,
    subgroups: Vec<ElementSubset>,
    // supers[a] holds every b with a <= b, including a itself
    supers: Vec<BitSet>,
    normal: Vec<bool>,
    mobius: Vec<i64>,
    lookup: HashMap<ElementSubset, SubgroupId>,
    cyclic: Vec<SubgroupId>,
}

impl fmt::Debug for SubgroupLattice<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubgroupLattice")
            .field("group_order", &self.group.order())
            .field("subgroups", &self.subgroups.len())
            .finish()
    }
}

/// Verdict of the complemented-lattice test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KGroupVerdict {
    pub holds: bool,
    /// First subgroup (canonical order) without a complement.
    pub witness: Option<SubgroupId>,
}

pub fn enumerate_subgroups(group: &Group, cap: usize) -> Result<SubgroupLattice<'_>> {
    let n = group.order();

    let mut spans: Vec<Span> = Vec::new();
    let mut found: HashMap<ElementSubset, usize> = HashMap::new();
    let mut cyclic_gens: Vec<ElementIndex> = Vec::new();
    let mut cyclic_slot = vec![usize::MAX; n];
    for (x, slot_of_x) in cyclic_slot.iter_mut().enumerate() {
        let span = group.span_of([x]);
        let slot = match found.get(&span.set) {
            Some(&i) => i,
            None => {
                if spans.len() >= cap {
                    return Err(Error::LatticeCap { cap });
                }
                found.insert(span.set.clone(), spans.len());
                cyclic_gens.push(x);
                spans.push(span);
                spans.len() - 1
            }
        };
        *slot_of_x = slot;
    }

    let mut i = 0;
    while i < spans.len() {
        for &g in &cyclic_gens {
            if spans[i].set.contains(g) {
                continue;
            }
            let joined = group.extend(&spans[i], g);
            if !found.contains_key(&joined.set) {
                if spans.len() >= cap {
                    return Err(Error::LatticeCap { cap });
                }
                found.insert(joined.set.clone(), spans.len());
                spans.push(joined);
            }
        }
        i += 1;
    }

    // canonical order, then remap the cyclic lookup
    let mut order: Vec<usize> = (0..spans.len()).collect();
    order.sort_by(|&a, &b| spans[a].set.cmp(&spans[b].set));
    let mut rank = vec![0; spans.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let subgroups: Vec<ElementSubset> = order.iter().map(|&old| spans[old].set.clone()).collect();
    let cyclic = cyclic_slot.iter().map(|&s| SubgroupId(rank[s])).collect();
    drop(spans);

    let count = subgroups.len();
    let mut supers: Vec<BitSet> = (0..count).map(|_| BitSet::new(count)).collect();
    for a in 0..count {
        supers[a].insert(a);
        let sa = &subgroups[a];
        for (b, sb) in subgroups.iter().enumerate().skip(a + 1) {
            if sb.len().is_multiple_of(sa.len()) && sa.is_subset(sb) {
                supers[a].insert(b);
            }
        }
    }

    let normal = subgroups
        .iter()
        .map(|h| group.is_normal_unchecked(h))
        .collect();
    let lookup = subgroups
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), SubgroupId(i)))
        .collect();

    let mut lattice = SubgroupLattice {
        group,
        subgroups,
        supers,
        normal,
        mobius: Vec::new(),
        lookup,
        cyclic,
    };
    lattice.mobius = compute_mobius(&lattice);
    Ok(lattice)
}

/// `mu(G) = 1` and `mu(H) = -sum of mu(K)` over `H < K <= G`, top down.
pub fn compute_mobius(lattice: &SubgroupLattice<'_>) -> Vec<i64> {
    let count = lattice.subgroups.len();
    let mut mu = vec![0i64; count];
    let top = count - 1;
    mu[top] = 1;
    for h in (0..top).rev() {
        let sum: i64 = lattice.supers[h]
            .iter()
            .filter(|&k| k != h)
            .map(|k| mu[k])
            .sum();
        mu[h] = -sum;
    }
    mu
}

impl<'g> SubgroupLattice<'g> {
    pub fn group(&self) -> &'g Group {
        self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn ids(&self) -> impl DoubleEndedIterator<Item = SubgroupId> + ExactSizeIterator {
        (0..self.subgroups.len()).map(SubgroupId)
    }

    pub fn bottom(&self) -> SubgroupId {
        SubgroupId(0)
    }

    pub fn top(&self) -> SubgroupId {
        SubgroupId(self.subgroups.len() - 1)
    }

    pub fn subgroup(&self, id: SubgroupId) -> &ElementSubset {
        &self.subgroups[id.0]
    }

    pub fn subgroups(&self) -> &[ElementSubset] {
        &self.subgroups
    }

    pub fn order_of(&self, id: SubgroupId) -> usize {
        self.subgroups[id.0].len()
    }

    pub fn id_of(&self, set: &ElementSubset) -> Option<SubgroupId> {
        self.lookup.get(set).copied()
    }

    /// The cyclic subgroup generated by an element.
    pub fn cyclic_of(&self, x: ElementIndex) -> SubgroupId {
        self.cyclic[x]
    }

    pub fn is_normal(&self, id: SubgroupId) -> bool {
        self.normal[id.0]
    }

    pub fn mobius(&self, id: SubgroupId) -> i64 {
        self.mobius[id.0]
    }

    pub fn mobius_values(&self) -> &[i64] {
        &self.mobius
    }

    pub fn leq(&self, a: SubgroupId, b: SubgroupId) -> bool {
        self.supers[a.0].contains(b.0)
    }

    /// Every subgroup containing `a`, including `a`.
    pub fn supergroups(&self, a: SubgroupId) -> impl Iterator<Item = SubgroupId> + '_ {
        self.supers[a.0].iter().map(SubgroupId)
    }

    pub fn meet(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        let inter = self.subgroups[a.0].intersection(&self.subgroups[b.0]);
        self.lookup[&inter]
    }

    /// Least common upper bound. Upper bounds are listed by ascending order,
    /// so the first common one is the join.
    pub fn join(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        SubgroupId(
            self.supers[a.0]
                .first_common(&self.supers[b.0])
                .expect("top bounds everything"),
        )
    }

    fn joins_to_top(&self, a: usize, b: usize) -> bool {
        self.supers[a].first_common(&self.supers[b]) == Some(self.subgroups.len() - 1)
    }

    fn meets_trivially(&self, a: usize, b: usize) -> bool {
        self.subgroups[a].intersection(&self.subgroups[b]).len() == 1
    }

    pub fn complements(&self, h: SubgroupId) -> Vec<SubgroupId> {
        (0..self.subgroups.len())
            .filter(|&x| self.meets_trivially(h.0, x) && self.joins_to_top(h.0, x))
            .map(SubgroupId)
            .collect()
    }

    fn has_complement(&self, h: usize) -> bool {
        (0..self.subgroups.len()).any(|x| self.meets_trivially(h, x) && self.joins_to_top(h, x))
    }

    pub fn is_k_group(&self) -> KGroupVerdict {
        match (0..self.subgroups.len()).find(|&h| !self.has_complement(h)) {
            Some(h) => KGroupVerdict {
                holds: false,
                witness: Some(SubgroupId(h)),
            },
            None => KGroupVerdict {
                holds: true,
                witness: None,
            },
        }
    }

    pub fn maximal_subgroups(&self) -> Vec<SubgroupId> {
        let top = self.subgroups.len() - 1;
        (0..top)
            .filter(|&a| self.supers[a].count() == 2)
            .map(SubgroupId)
            .collect()
    }

    pub fn normal_subgroups(&self) -> Vec<SubgroupId> {
        self.ids().filter(|&id| self.is_normal(id)).collect()
    }

    /// Minimal elements among the nontrivial normal subgroups.
    pub fn minimal_normal_subgroups(&self) -> Vec<SubgroupId> {
        let nontrivial: Vec<usize> = (1..self.subgroups.len())
            .filter(|&i| self.normal[i])
            .collect();
        nontrivial
            .iter()
            .copied()
            .filter(|&n| {
                !nontrivial
                    .iter()
                    .any(|&m| m != n && self.supers[m].contains(n))
            })
            .map(SubgroupId)
            .collect()
    }

    /// Intersection of the maximal subgroups; the whole group when there are none.
    pub fn frattini(&self) -> SubgroupId {
        let mut acc = ElementSubset::full(self.group.order());
        for m in self.maximal_subgroups() {
            acc = acc.intersection(&self.subgroups[m.0]);
        }
        self.lookup[&acc]
    }

    /// Number of `X` with `X ∩ top = bottom` and `<X, top> = G`.
    ///
    /// For normal `bottom <= top` these are exactly the preimages of the
    /// complements of `top/bottom` in `G/bottom`.
    pub fn count_chief_complements(&self, bottom: SubgroupId, top: SubgroupId) -> Result<usize> {
        for id in [bottom, top] {
            if !self.normal[id.0] {
                return Err(Error::NotNormal(id.0));
            }
        }
        if !self.leq(bottom, top) {
            return Err(Error::NotNested {
                bottom: bottom.0,
                top: top.0,
            });
        }
        let (b, t) = (&self.subgroups[bottom.0], &self.subgroups[top.0]);
        Ok((0..self.subgroups.len())
            .filter(|&x| self.subgroups[x].intersection(t) == *b && self.joins_to_top(x, top.0))
            .count())
    }

    /// One line per subgroup: `id order normal mobius members=i,j,...`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.subgroups.iter().enumerate() {
            let members = s
                .iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(",");
            writeln!(
                out,
                "{i} {} {} {} members={members}",
                s.len(),
                self.normal[i],
                self.mobius[i]
            )
            .unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::close_generators;
    use crate::perm::parse_permutation;

    fn group(n: usize, gens: &[&str]) -> Group {
        let gens = gens
            .iter()
            .map(|s| parse_permutation(s, n).unwrap())
            .collect();
        close_generators(n, gens, 10_000).unwrap()
    }

    fn lattice(g: &Group) -> SubgroupLattice<'_> {
        enumerate_subgroups(g, DEFAULT_MAX_SUBGROUPS).unwrap()
    }

    fn of_order(l: &SubgroupLattice<'_>, k: usize) -> Vec<SubgroupId> {
        l.ids().filter(|&id| l.order_of(id) == k).collect()
    }

    // Exhaustive oracle: test every subset of a tiny group for closure.
    fn all_closed_subsets(g: &Group) -> Vec<ElementSubset> {
        let n = g.order();
        let mut out: Vec<ElementSubset> = (0u32..1 << n)
            .map(|mask| ElementSubset::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1)))
            .filter(|s| {
                s.contains(g.identity())
                    && s.iter().all(|a| s.iter().all(|b| s.contains(g.mul(a, b))))
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn trivial_group() {
        let g = group(1, &[]);
        let l = lattice(&g);
        assert_eq!(l.len(), 1);
        assert_eq!(l.bottom(), l.top());
        assert_eq!(l.mobius(l.bottom()), 1);
        assert!(l.maximal_subgroups().is_empty());
        assert_eq!(l.frattini(), l.top());
        assert!(l.is_k_group().holds);
    }

    #[test]
    fn s3_matches_subset_oracle() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let l = lattice(&s3);
        assert_eq!(l.len(), 6);
        assert_eq!(l.subgroups(), all_closed_subsets(&s3).as_slice());
        assert_eq!(of_order(&l, 2).len(), 3);
        assert_eq!(of_order(&l, 3).len(), 1);
    }

    #[test]
    fn c4_is_a_chain() {
        let c4 = group(4, &["(1 2 3 4)"]);
        let l = lattice(&c4);
        assert_eq!(l.len(), 3);
        assert_eq!(l.subgroups(), all_closed_subsets(&c4).as_slice());
        let mu: Vec<i64> = l.ids().map(|id| l.mobius(id)).collect();
        assert_eq!(mu, vec![0, -1, 1]);
    }

    #[test]
    fn mobius_examples() {
        let c5 = group(5, &["(1 2 3 4 5)"]);
        let l = lattice(&c5);
        assert_eq!(l.mobius(l.bottom()), -1);

        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let l = lattice(&s3);
        assert_eq!(l.mobius(l.top()), 1);
        assert_eq!(l.mobius(of_order(&l, 3)[0]), -1);
        for id in of_order(&l, 2) {
            assert_eq!(l.mobius(id), -1);
        }
        assert_eq!(l.mobius(l.bottom()), 3);
    }

    #[test]
    fn mobius_sums_vanish_below_top() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        let l = lattice(&s4);
        assert_eq!(l.len(), 30);
        for h in l.ids() {
            let s: i64 = l.supergroups(h).map(|k| l.mobius(k)).sum();
            assert_eq!(s, if h == l.top() { 1 } else { 0 });
        }
        assert_eq!(l.mobius(l.bottom()), -12);
    }

    #[test]
    fn meet_and_join() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let l = lattice(&s3);
        let t12 = l.cyclic_of(
            s3.index_of(&parse_permutation("(1 2)", 3).unwrap())
                .unwrap(),
        );
        let t13 = l.cyclic_of(
            s3.index_of(&parse_permutation("(1 3)", 3).unwrap())
                .unwrap(),
        );
        assert_eq!(l.join(t12, t13), l.top());
        assert_eq!(l.meet(t12, t13), l.bottom());
        for h in l.ids() {
            assert_eq!(l.meet(h, h), h);
            assert_eq!(l.join(h, h), h);
            assert_eq!(l.meet(l.bottom(), h), l.bottom());
            assert_eq!(l.join(l.top(), h), l.top());
        }
    }

    #[test]
    fn join_equals_generated_union() {
        let d8 = group(4, &["(1 2 3 4)", "(1 4)(2 3)"]);
        let l = lattice(&d8);
        for a in l.ids() {
            for b in l.ids() {
                let gen = d8.generated_subgroup(&l.subgroup(a).union(l.subgroup(b)));
                assert_eq!(l.subgroup(l.join(a, b)), &gen);
            }
        }
    }

    #[test]
    fn complements_examples() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let l = lattice(&s3);
        assert_eq!(l.complements(l.top()), vec![l.bottom()]);
        assert_eq!(l.complements(l.bottom()), vec![l.top()]);
        assert_eq!(l.complements(of_order(&l, 3)[0]), of_order(&l, 2));

        let c4 = group(4, &["(1 2 3 4)"]);
        let l = lattice(&c4);
        assert!(l.complements(SubgroupId(1)).is_empty());
    }

    #[test]
    fn k_group_examples() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        assert!(lattice(&s3).is_k_group().holds);
        let c4 = group(4, &["(1 2 3 4)"]);
        let v = lattice(&c4).is_k_group();
        assert!(!v.holds);
        assert_eq!(v.witness, Some(SubgroupId(1)));
        let v4 = group(4, &["(1 2)", "(3 4)"]);
        assert!(lattice(&v4).is_k_group().holds);
    }

    #[test]
    fn maximal_and_minimal_normal() {
        let c5 = group(5, &["(1 2 3 4 5)"]);
        let l = lattice(&c5);
        assert_eq!(l.maximal_subgroups(), vec![l.bottom()]);
        assert_eq!(l.minimal_normal_subgroups(), vec![l.top()]);

        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let l = lattice(&s3);
        assert_eq!(l.minimal_normal_subgroups(), of_order(&l, 3));
        assert_eq!(l.normal_subgroups().len(), 3);

        let v4 = group(4, &["(1 2)", "(3 4)"]);
        let l = lattice(&v4);
        assert_eq!(l.minimal_normal_subgroups(), of_order(&l, 2));
    }

    #[test]
    fn frattini_examples() {
        let c4 = group(4, &["(1 2 3 4)"]);
        let l = lattice(&c4);
        assert_eq!(l.order_of(l.frattini()), 2);
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let l = lattice(&s3);
        assert_eq!(l.frattini(), l.bottom());
        let d8 = group(4, &["(1 2 3 4)", "(1 4)(2 3)"]);
        let l = lattice(&d8);
        let z = l.frattini();
        assert_eq!(l.order_of(z), 2);
        assert!(l.subgroup(z).contains(
            d8.index_of(&parse_permutation("(1 3)(2 4)", 4).unwrap())
                .unwrap()
        ));
    }

    #[test]
    fn chief_complement_counts() {
        let s3 = group(3, &["(1 2)", "(1 2 3)"]);
        let l = lattice(&s3);
        let c3 = of_order(&l, 3)[0];
        assert_eq!(l.count_chief_complements(l.bottom(), c3).unwrap(), 3);
        assert_eq!(l.count_chief_complements(c3, l.top()).unwrap(), 1);
        let c2 = of_order(&l, 2)[0];
        assert!(matches!(
            l.count_chief_complements(l.bottom(), c2),
            Err(Error::NotNormal(_))
        ));
        assert!(matches!(
            l.count_chief_complements(c3, l.bottom()),
            Err(Error::NotNested { .. })
        ));

        let c4 = group(4, &["(1 2 3 4)"]);
        let l = lattice(&c4);
        assert_eq!(
            l.count_chief_complements(l.bottom(), SubgroupId(1))
                .unwrap(),
            0
        );
    }

    #[test]
    fn lattice_cap() {
        let s4 = group(4, &["(1 2)", "(1 2 3 4)"]);
        assert!(matches!(
            enumerate_subgroups(&s4, 29),
            Err(Error::LatticeCap { cap: 29 })
        ));
        assert_eq!(enumerate_subgroups(&s4, 30).unwrap().len(), 30);
    }

    #[test]
    fn dump_format() {
        let c4 = group(4, &["(1 2 3 4)"]);
        let l = lattice(&c4);
        let text = l.dump();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "0 1 true 0 members=0");
        assert!(lines[2].starts_with("2 4 true 1 members=0,1,2,3"));
    }
}
