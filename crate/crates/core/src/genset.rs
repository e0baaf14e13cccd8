//! Brute-force search over irredundant generating sets.
//!
//! Sets are canonicalized to ascending element indices. A set is irredundant
//! iff no member lies in the span of the others, and every subset of an
//! irredundant set is irredundant, so the search walks index-increasing
//! prefixes and abandons any prefix that stops being irredundant. Each
//! irredundant set is reached exactly once, through its own sorted prefixes.
//!
//! Work is metered by a [`Budget`] counting closure computations; running out
//! yields an inconclusive result instead of a guess.

use std::cell::Cell;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::bitset::ElementSubset;
use crate::error::{Error, Result};
use crate::group::{ElementIndex, Group, Span};

pub const DEFAULT_BUDGET_NODES: u64 = 200_000_000;

/// A node budget: one node is one subgroup closure.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    used: Cell<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Exhausted;

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget {
            limit,
            used: Cell::new(0),
        }
    }

    pub fn unlimited() -> Self {
        Budget::new(u64::MAX)
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }

    fn charge(&self, nodes: u64) -> Result<(), Exhausted> {
        let next = self.used.get().saturating_add(nodes);
        if next > self.limit {
            return Err(Exhausted);
        }
        self.used.set(next);
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStatus {
    Exact,
    Inconclusive,
}

impl fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchStatus::Exact => "exact",
            SearchStatus::Inconclusive => "inconclusive",
        })
    }
}

/// A searched quantity with its status. When inconclusive, `value` is the
/// best bound established before the budget ran out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Outcome<T> {
    pub value: T,
    pub status: SearchStatus,
}

impl<T> Outcome<T> {
    pub fn exact(&self) -> Option<&T> {
        (self.status == SearchStatus::Exact).then_some(&self.value)
    }
}

pub fn is_generating(g: &Group, s: &ElementSubset) -> bool {
    g.generated_subgroup(s).len() == g.order()
}

/// No member of `s` lies in the subgroup generated by the others.
pub fn is_irredundant(g: &Group, s: &ElementSubset) -> bool {
    let members = s.to_vec();
    members.iter().enumerate().all(|(i, &x)| {
        let others = members
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &y)| y);
        !g.span_of(others).set.contains(x)
    })
}

/// An irredundant generating set found by the search, with the subgroups
/// generated after dropping each member in turn.
#[derive(Clone, Debug)]
pub struct IrredundantSet {
    pub elements: Vec<ElementIndex>,
    drops: Vec<Span>,
}

impl IrredundantSet {
    pub fn drop_closures(&self) -> impl Iterator<Item = &ElementSubset> {
        self.drops.iter().map(|s| &s.set)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

struct Frame {
    span: Span,
    drops: Vec<Span>,
    next: ElementIndex,
    expanded: bool,
}

/// Depth-first stream of irredundant generating sets of size at most `max_depth`,
/// in lexicographic order of their sorted element lists.
pub struct IrredundantSearch<'a> {
    group: &'a Group,
    budget: Option<&'a Budget>,
    max_depth: usize,
    prefix: Vec<ElementIndex>,
    stack: Vec<Frame>,
    exhausted: bool,
}

impl<'a> IrredundantSearch<'a> {
    pub fn new(group: &'a Group, max_depth: usize, budget: &'a Budget) -> Self {
        Self::with_budget(group, max_depth, Some(budget))
    }

    pub fn unbounded(group: &'a Group, max_depth: usize) -> Self {
        Self::with_budget(group, max_depth, None)
    }

    fn with_budget(group: &'a Group, max_depth: usize, budget: Option<&'a Budget>) -> Self {
        IrredundantSearch {
            group,
            budget,
            max_depth,
            prefix: Vec::new(),
            stack: vec![Frame {
                span: Span::trivial(group),
                drops: Vec::new(),
                next: 0,
                expanded: false,
            }],
            exhausted: false,
        }
    }

    /// Lowers the depth bound; deeper frames already on the stack drain without yielding.
    pub fn set_max_depth(&mut self, depth: usize) {
        self.max_depth = depth;
    }

    fn pop(&mut self) -> Frame {
        let frame = self.stack.pop().expect("non-empty stack");
        if !self.stack.is_empty() {
            self.prefix.pop();
        }
        frame
    }

    fn charge(&self, nodes: u64) -> Result<(), Exhausted> {
        self.budget.map_or(Ok(()), |b| b.charge(nodes))
    }

    // Child frame for appending `e`, or None if the extended set is redundant.
    fn child(&self, frame: &Frame, e: ElementIndex) -> Result<Option<Frame>, Exhausted> {
        let g = self.group;
        self.charge(1)?;
        let span = g.extend(&frame.span, e);
        let mut drops = Vec::with_capacity(frame.drops.len() + 1);
        for (i, d) in frame.drops.iter().enumerate() {
            self.charge(1)?;
            let ext = g.extend(d, e);
            if ext.set.contains(self.prefix[i]) {
                return Ok(None);
            }
            drops.push(ext);
        }
        drops.push(frame.span.clone());
        Ok(Some(Frame {
            span,
            drops,
            next: e + 1,
            expanded: false,
        }))
    }
}

impl Iterator for IrredundantSearch<'_> {
    type Item = Result<IrredundantSet, Exhausted>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.exhausted {
            return None;
        }
        let n = self.group.order();
        loop {
            let depth = self.prefix.len();
            let top = self.stack.last_mut()?;
            if !top.expanded {
                top.expanded = true;
                if top.span.is_whole() {
                    let elements = self.prefix.clone();
                    let frame = self.pop();
                    if elements.len() <= self.max_depth {
                        return Some(Ok(IrredundantSet {
                            elements,
                            drops: frame.drops,
                        }));
                    }
                    continue;
                }
            }
            if depth >= self.max_depth {
                self.pop();
                continue;
            }
            let top = self.stack.last_mut().unwrap();
            let mut candidate = None;
            while top.next < n {
                let e = top.next;
                top.next += 1;
                if !top.span.set.contains(e) {
                    candidate = Some(e);
                    break;
                }
            }
            let Some(e) = candidate else {
                self.pop();
                continue;
            };
            match self.child(self.stack.last().unwrap(), e) {
                Err(Exhausted) => {
                    self.exhausted = true;
                    return Some(Err(Exhausted));
                }
                Ok(Some(frame)) => {
                    self.prefix.push(e);
                    self.stack.push(frame);
                }
                Ok(None) => {}
            }
        }
    }
}

/// Every irredundant generating set of size exactly `k`, ascending indices.
pub fn enumerate_irredundant_generating_sets(
    g: &Group,
    k: usize,
) -> impl Iterator<Item = ElementSubset> + '_ {
    IrredundantSearch::unbounded(g, k)
        .filter_map(|r| r.ok())
        .filter(move |s| s.len() == k)
        .map(move |s| ElementSubset::from_indices(g.order(), s.elements))
}

/// Least size of a generating set.
pub fn compute_d(g: &Group, budget: &Budget) -> Outcome<usize> {
    for k in 0.. {
        let mut search = IrredundantSearch::new(g, k, budget);
        match search.next() {
            Some(Ok(_)) => {
                return Outcome {
                    value: k,
                    status: SearchStatus::Exact,
                }
            }
            Some(Err(Exhausted)) => {
                return Outcome {
                    value: k,
                    status: SearchStatus::Inconclusive,
                }
            }
            None => {}
        }
    }
    unreachable!("the whole group generates itself")
}

/// Result of the exhaustive maximum search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSetReport {
    /// Smallest generating set met (exact when `status` is exact).
    pub d: usize,
    /// Largest irredundant generating set size; a lower bound when inconclusive.
    pub m: usize,
    /// First irredundant generating set of size `m` in search order.
    pub m_witness: Vec<ElementIndex>,
    pub status: SearchStatus,
    pub nodes: u64,
}

pub fn m_bruteforce(g: &Group, budget: &Budget) -> GeneratingSetReport {
    let mut d: Option<usize> = None;
    let mut best: Option<Vec<ElementIndex>> = None;
    let mut status = SearchStatus::Exact;
    for item in IrredundantSearch::new(g, usize::MAX, budget) {
        match item {
            Ok(set) => {
                d = Some(d.map_or(set.len(), |d| d.min(set.len())));
                if best.as_ref().is_none_or(|b| set.len() > b.len()) {
                    best = Some(set.elements);
                }
            }
            Err(Exhausted) => {
                status = SearchStatus::Inconclusive;
                break;
            }
        }
    }
    let witness = best.unwrap_or_default();
    GeneratingSetReport {
        d: d.unwrap_or(0),
        m: witness.len(),
        m_witness: witness,
        status,
        nodes: budget.used(),
    }
}

/// Position (0-based) of the first member of `omega` whose replacement by `g`
/// still generates the group.
pub fn replacement_for_sequence(
    g: &Group,
    omega: &[ElementIndex],
    x: ElementIndex,
) -> Result<Option<usize>> {
    if x == g.identity() {
        return Err(Error::IdentityReplacement);
    }
    Ok((0..omega.len()).find(|&i| {
        let seed = omega
            .iter()
            .enumerate()
            .map(|(j, &y)| if j == i { x } else { y });
        g.span_of(seed).is_whole()
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MSource {
    BruteForce,
    ChiefSeries,
}

/// The value of `m(G)` handed to the replacement check, with its provenance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MValue {
    pub m: usize,
    pub source: MSource,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub omega: Vec<ElementIndex>,
    pub g: ElementIndex,
}

impl Counterexample {
    /// Re-checks from scratch: `omega` is an irredundant generating set and
    /// no single replacement by `g` generates the group.
    pub fn verify(&self, group: &Group) -> bool {
        let set = ElementSubset::from_indices(group.order(), self.omega.iter().copied());
        set.len() == self.omega.len()
            && is_generating(group, &set)
            && is_irredundant(group, &set)
            && matches!(
                replacement_for_sequence(group, &self.omega, self.g),
                Ok(None)
            )
    }

    /// `omega=[3:(1 2), 5:(1 2 3)] g=4:(1 3)`
    pub fn describe(&self, group: &Group) -> String {
        let omega = self
            .omega
            .iter()
            .map(|&i| format!("{i}:{}", group.element(i)))
            .collect::<Vec<_>>()
            .join(", ");
        format!("omega=[{omega}] g={}:{}", self.g, group.element(self.g))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplacementVerdict {
    /// Meaningful only when `status` is exact.
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
    pub checked_sequences: u64,
    pub status: SearchStatus,
    pub m_source: Option<MSource>,
}

impl ReplacementVerdict {
    pub fn decided(&self) -> Option<bool> {
        (self.status == SearchStatus::Exact).then_some(self.holds)
    }
}

// For each proper subgroup M met as a drop closure, the set of g with <M, g> = G.
struct ReplacementTester<'a> {
    group: &'a Group,
    budget: &'a Budget,
    completing: HashMap<ElementSubset, ElementSubset>,
    // nontrivial elements by ascending order, then index
    candidates: Vec<ElementIndex>,
}

impl<'a> ReplacementTester<'a> {
    fn new(group: &'a Group, budget: &'a Budget) -> Self {
        let mut candidates: Vec<ElementIndex> = (0..group.order())
            .filter(|&x| x != group.identity())
            .collect();
        candidates.sort_by_key(|&x| (group.element_order(x), x));
        ReplacementTester {
            group,
            budget,
            completing: HashMap::new(),
            candidates,
        }
    }

    fn completing_set(&mut self, drop: &Span) -> Result<&ElementSubset, Exhausted> {
        if !self.completing.contains_key(&drop.set) {
            let n = self.group.order();
            self.budget.charge(n as u64)?;
            let good = ElementSubset::from_indices(
                n,
                (0..n).filter(|&x| !drop.set.contains(x) && self.group.extend(drop, x).is_whole()),
            );
            self.completing.insert(drop.set.clone(), good);
        }
        Ok(&self.completing[&drop.set])
    }

    /// First element (by order, then index) that replaces no member of the set.
    fn failing_element(&mut self, set: &IrredundantSet) -> Result<Option<ElementIndex>, Exhausted> {
        let n = self.group.order();
        let mut covered = ElementSubset::empty(n);
        for d in &set.drops {
            covered = covered.union(self.completing_set(d)?);
        }
        // replacing a member by itself always works
        for &x in &set.elements {
            covered.insert(x);
        }
        Ok(self
            .candidates
            .iter()
            .copied()
            .find(|&x| !covered.contains(x)))
    }
}

/// Replacement property over the irredundant generating sets of size `m`.
pub fn satisfies_replacement(g: &Group, m: MValue, budget: &Budget) -> ReplacementVerdict {
    let mut tester = ReplacementTester::new(g, budget);
    let mut checked = 0;
    for item in IrredundantSearch::new(g, m.m, budget) {
        let set = match item {
            Ok(set) if set.len() == m.m => set,
            Ok(_) => continue,
            Err(Exhausted) => return inconclusive(checked, Some(m.source)),
        };
        checked += 1;
        match tester.failing_element(&set) {
            Err(Exhausted) => return inconclusive(checked, Some(m.source)),
            Ok(Some(x)) => {
                return ReplacementVerdict {
                    holds: false,
                    counterexample: Some(Counterexample {
                        omega: set.elements,
                        g: x,
                    }),
                    checked_sequences: checked,
                    status: SearchStatus::Exact,
                    m_source: Some(m.source),
                }
            }
            Ok(None) => {}
        }
    }
    ReplacementVerdict {
        holds: true,
        counterexample: None,
        checked_sequences: checked,
        status: SearchStatus::Exact,
        m_source: Some(m.source),
    }
}

/// Replacement property over every irredundant generating set, of any size.
/// The reported counterexample has the least size, then comes first lexicographically.
pub fn satisfies_strong_replacement(g: &Group, budget: &Budget) -> ReplacementVerdict {
    let mut tester = ReplacementTester::new(g, budget);
    let mut checked = 0;
    let mut found: Option<Counterexample> = None;
    let mut search = IrredundantSearch::new(g, usize::MAX, budget);
    let mut exhausted = false;
    while let Some(item) = search.next() {
        let set = match item {
            Ok(set) => set,
            Err(Exhausted) => {
                exhausted = true;
                break;
            }
        };
        checked += 1;
        match tester.failing_element(&set) {
            Err(Exhausted) => {
                exhausted = true;
                break;
            }
            Ok(Some(x)) => {
                // only strictly smaller sets can still beat this one
                search.set_max_depth(set.len().saturating_sub(1));
                found = Some(Counterexample {
                    omega: set.elements,
                    g: x,
                });
                if search.max_depth == 0 {
                    break;
                }
            }
            Ok(None) => {}
        }
    }
    match found {
        Some(c) => ReplacementVerdict {
            holds: false,
            counterexample: Some(c),
            checked_sequences: checked,
            status: SearchStatus::Exact,
            m_source: None,
        },
        None if exhausted => inconclusive(checked, None),
        None => ReplacementVerdict {
            holds: true,
            counterexample: None,
            checked_sequences: checked,
            status: SearchStatus::Exact,
            m_source: None,
        },
    }
}

fn inconclusive(checked: u64, m_source: Option<MSource>) -> ReplacementVerdict {
    ReplacementVerdict {
        holds: true,
        counterexample: None,
        checked_sequences: checked,
        status: SearchStatus::Inconclusive,
        m_source,
    }
}
