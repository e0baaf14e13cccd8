//! Fully enumerated permutation groups.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::bitset::ElementSubset;
use crate::error::{Error, Result};
use crate::perm::{compose_unchecked, inverse, Permutation};

/// Position of an element in a group's canonical element table.
pub type ElementIndex = usize;

pub const DEFAULT_MAX_ORDER: usize = 10_000;
pub const DEFAULT_MAX_DEGREE: usize = 64;

// Groups up to this order get a full Cayley table (u16 entries).
const TABLE_LIMIT: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
    pub max_degree: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: DEFAULT_MAX_ORDER,
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }
}

/// A permutation group with every element listed.
///
/// Elements are sorted lexicographically by image table, so two groups
/// with the same element set have identical tables and indices.
#[derive(Clone)]
pub struct Group {
    degree: usize,
    name: Option<String>,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, ElementIndex>,
    identity: ElementIndex,
    inverses: Vec<u32>,
    table: Option<Vec<u16>>,
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

/// Closes `gens` under composition, failing once more than `cap` elements appear.
pub fn close_generators(degree: usize, gens: Vec<Permutation>, cap: usize) -> Result<Group> {
    Group::close(
        degree,
        gens,
        &Limits {
            max_order: cap,
            ..Limits::default()
        },
    )
}

impl Group {
    pub fn close(degree: usize, gens: Vec<Permutation>, limits: &Limits) -> Result<Group> {
        if degree == 0 {
            return Err(Error::InvalidParameter("degree must be positive".into()));
        }
        if degree > limits.max_degree {
            return Err(Error::DegreeLimit {
                degree,
                limit: limits.max_degree,
            });
        }
        if limits.max_order == 0 {
            return Err(Error::InvalidParameter(
                "order cap must be at least 1".into(),
            ));
        }
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }

        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = compose_unchecked(&x, g);
                if !seen.contains(&y) {
                    if seen.len() >= limits.max_order {
                        return Err(Error::OrderCap {
                            cap: limits.max_order,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }

        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort();
        Ok(Group::from_sorted(degree, gens, elements))
    }

    fn from_sorted(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
    ) -> Group {
        let index: HashMap<Permutation, ElementIndex> = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        // the identity image table is the lexicographically least
        let identity = 0;
        debug_assert!(elements[identity].is_identity());
        let inverses = elements.iter().map(|p| index[&inverse(p)] as u32).collect();
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&compose_unchecked(a, b)] as u16);
                }
            }
            t
        });
        Group {
            degree,
            name: None,
            generators,
            elements,
            index,
            identity,
            inverses,
            table,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.degree
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Element indices of the generators, deduplicated, ascending.
    pub fn generator_indices(&self) -> Vec<ElementIndex> {
        let mut v: Vec<_> = self.generators.iter().map(|g| self.index[g]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    #[inline]
    pub fn element(&self, i: ElementIndex) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<ElementIndex> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn identity(&self) -> ElementIndex {
        self.identity
    }

    /// Product `a * b`: apply `a`, then `b`.
    #[inline]
    pub fn mul(&self, a: ElementIndex, b: ElementIndex) -> ElementIndex {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&compose_unchecked(&self.elements[a], &self.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: ElementIndex) -> ElementIndex {
        self.inverses[a] as usize
    }

    /// `g^-1 * h * g`.
    #[inline]
    pub fn conjugate(&self, h: ElementIndex, g: ElementIndex) -> ElementIndex {
        self.mul(self.mul(self.inv(g), h), g)
    }

    /// `a^-1 * b^-1 * a * b`.
    #[inline]
    pub fn commutator(&self, a: ElementIndex, b: ElementIndex) -> ElementIndex {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    pub fn element_order(&self, i: ElementIndex) -> usize {
        let mut k = 1;
        let mut x = i;
        while x != self.identity {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generator_indices();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn trivial_subset(&self) -> ElementSubset {
        ElementSubset::from_indices(self.order(), [self.identity])
    }

    pub fn whole(&self) -> ElementSubset {
        ElementSubset::full(self.order())
    }

    /// The subgroup generated by `seed`.
    pub fn generated_subgroup(&self, seed: &ElementSubset) -> ElementSubset {
        self.span_of(seed.iter()).set
    }

    pub(crate) fn span_of<I: IntoIterator<Item = ElementIndex>>(&self, seed: I) -> Span {
        let mut span = Span::trivial(self);
        for s in seed {
            if !span.set.contains(s) {
                span = self.extend(&span, s);
            }
        }
        span
    }

    /// `<span, g>`, built coset by coset: the result is a union of right
    /// cosets `H r`, so only coset representatives need multiplying by generators.
    pub(crate) fn extend(&self, span: &Span, g: ElementIndex) -> Span {
        if span.set.contains(g) {
            return span.clone();
        }
        let base: Vec<ElementIndex> = span.set.iter().collect();
        let mut gens = span.gens.clone();
        gens.push(g);
        let mut set = span.set.clone();
        let mut reps = vec![self.identity];
        let add_coset = |set: &mut ElementSubset, reps: &mut Vec<ElementIndex>, r: ElementIndex| {
            for &h in &base {
                set.insert(self.mul(h, r));
            }
            reps.push(r);
        };
        add_coset(&mut set, &mut reps, g);
        // rep 0 is the identity, whose products with the generators are already present
        let mut i = 1;
        while i < reps.len() {
            let r = reps[i];
            for &s in &gens {
                let y = self.mul(r, s);
                if !set.contains(y) {
                    add_coset(&mut set, &mut reps, y);
                }
            }
            i += 1;
        }
        Span { set, gens }
    }

    /// True iff `h` is closed under multiplication.
    pub fn is_subgroup(&self, h: &ElementSubset) -> bool {
        h.universe() == self.order()
            && h.contains(self.identity)
            && self.generated_subgroup(h) == *h
    }

    /// Normality of a subgroup, tested against the group's generators.
    pub fn is_normal(&self, h: &ElementSubset) -> Result<bool> {
        if !self.is_subgroup(h) {
            return Err(Error::NotClosed);
        }
        Ok(self.is_normal_unchecked(h))
    }

    pub(crate) fn is_normal_unchecked(&self, h: &ElementSubset) -> bool {
        let gens = self.generator_indices();
        h.iter()
            .all(|x| gens.iter().all(|&g| h.contains(self.conjugate(x, g))))
    }

    /// Permutation group induced on the right cosets of `h`.
    pub fn coset_action(&self, h: &ElementSubset) -> Result<Group> {
        Ok(CosetAction::new(self, h)?.group)
    }
}

/// A subgroup together with the generators it was built from.
#[derive(Clone, Debug)]
pub(crate) struct Span {
    pub set: ElementSubset,
    pub gens: Vec<ElementIndex>,
}

impl Span {
    pub fn trivial(g: &Group) -> Span {
        Span {
            set: g.trivial_subset(),
            gens: Vec::new(),
        }
    }

    pub fn is_whole(&self) -> bool {
        self.set.len() == self.set.universe()
    }
}

/// The action of a group on the right cosets of a subgroup.
#[derive(Debug)]
pub struct CosetAction {
    /// Coset number (0-based point) of each element; the subgroup itself is coset 0.
    pub coset_of: Vec<usize>,
    pub representatives: Vec<ElementIndex>,
    pub group: Group,
}

impl CosetAction {
    pub fn new(g: &Group, h: &ElementSubset) -> Result<CosetAction> {
        if !g.is_subgroup(h) {
            return Err(Error::NotClosed);
        }
        let n = g.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = representatives.len();
            representatives.push(x);
            for y in h.iter() {
                coset_of[g.mul(y, x)] = c;
            }
        }
        let degree = representatives.len();
        let gens = g
            .generators()
            .iter()
            .map(|p| {
                let elem = g.index_of(p).expect("generator in group");
                coset_permutation(g, &coset_of, &representatives, elem)
            })
            .collect();
        let group = Group::close(
            degree,
            gens,
            &Limits {
                max_order: n,
                max_degree: degree.max(DEFAULT_MAX_DEGREE),
            },
        )?;
        Ok(CosetAction {
            coset_of,
            representatives,
            group,
        })
    }

    pub fn degree(&self) -> usize {
        self.representatives.len()
    }

    /// The permutation `Hx -> Hxg` of the cosets.
    pub fn permutation_of(&self, g: &Group, elem: ElementIndex) -> Permutation {
        coset_permutation(g, &self.coset_of, &self.representatives, elem)
    }

    /// Elements acting trivially on every coset.
    pub fn kernel(&self, g: &Group) -> ElementSubset {
        ElementSubset::from_indices(
            g.order(),
            (0..g.order()).filter(|&x| self.permutation_of(g, x).is_identity()),
        )
    }
}

fn coset_permutation(
    g: &Group,
    coset_of: &[usize],
    representatives: &[ElementIndex],
    elem: ElementIndex,
) -> Permutation {
    let images = representatives
        .iter()
        .map(|&r| coset_of[g.mul(r, elem)] as u16)
        .collect();
    Permutation::from_zero_based(images)
}
