//! The full invariant record for one group.

use serde::Serialize;

use crate::error::Result;
use crate::genset::{
    compute_d, m_bruteforce, satisfies_replacement, satisfies_strong_replacement, Budget, MSource,
    MValue, SearchStatus, DEFAULT_BUDGET_NODES,
};
use crate::group::Group;
use crate::lattice::{enumerate_subgroups, DEFAULT_MAX_SUBGROUPS};
use crate::structure::{
    chief_series, classify_strong_form, fitting, hawkes_mu, is_nilpotent, m_via_chief, ChiefFactor,
    EquivalenceReport,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug)]
pub struct AnalysisOptions {
    pub max_subgroups: usize,
    /// Node budget for each search separately.
    pub budget_nodes: u64,
    pub skip_genset: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            max_subgroups: DEFAULT_MAX_SUBGROUPS,
            budget_nodes: DEFAULT_BUDGET_NODES,
            skip_genset: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Exact,
    Inconclusive,
    Skipped,
}

impl From<SearchStatus> for Status {
    fn from(s: SearchStatus) -> Self {
        match s {
            SearchStatus::Exact => Status::Exact,
            SearchStatus::Inconclusive => Status::Inconclusive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Statuses {
    pub d: Status,
    pub m_bruteforce: Status,
    pub replacement: Status,
    pub strong_replacement: Status,
}

impl Statuses {
    pub fn any_inconclusive(&self) -> bool {
        [
            self.d,
            self.m_bruteforce,
            self.replacement,
            self.strong_replacement,
        ]
        .contains(&Status::Inconclusive)
    }
}

/// When a search is inconclusive, `d` and `m_bruteforce` carry the lower
/// bound reached; the replacement fields are null.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub name: String,
    pub degree: usize,
    pub order: usize,
    pub soluble: bool,
    pub nilpotent: bool,
    pub frattini_order: usize,
    pub fitting_order: usize,
    pub d: Option<usize>,
    pub m_bruteforce: Option<usize>,
    pub m_chief: Option<usize>,
    pub mobius_1: i64,
    pub hawkes_mu: Option<i64>,
    pub k_group: bool,
    pub replacement: Option<bool>,
    pub strong_replacement: Option<bool>,
    pub classification: String,
    pub theorem1_consistent: Option<bool>,
    pub statuses: Statuses,
    pub chief_series: Vec<ChiefFactor>,
}

pub fn analyze(group: &Group, options: &AnalysisOptions) -> Result<AnalysisReport> {
    let lattice = enumerate_subgroups(group, options.max_subgroups)?;
    let series = chief_series(&lattice);
    let m_chief = m_via_chief(&series).ok();
    let mobius_1 = lattice.mobius(lattice.bottom());
    let k_group = lattice.is_k_group().holds;

    let mut statuses = Statuses {
        d: Status::Skipped,
        m_bruteforce: Status::Skipped,
        replacement: Status::Skipped,
        strong_replacement: Status::Skipped,
    };
    let (mut d, mut m_brute, mut replacement, mut strong) = (None, None, None, None);
    if !options.skip_genset {
        let budget = || Budget::new(options.budget_nodes);
        let d_out = compute_d(group, &budget());
        d = Some(d_out.value);
        statuses.d = d_out.status.into();

        let m_out = m_bruteforce(group, &budget());
        m_brute = Some(m_out.m);
        statuses.m_bruteforce = m_out.status.into();

        let m = match (m_out.status, m_chief) {
            (SearchStatus::Exact, _) => Some(MValue {
                m: m_out.m,
                source: MSource::BruteForce,
            }),
            (_, Some(m)) => Some(MValue {
                m,
                source: MSource::ChiefSeries,
            }),
            _ => None,
        };
        match m {
            Some(m) => {
                let v = satisfies_replacement(group, m, &budget());
                replacement = v.decided();
                statuses.replacement = v.status.into();
            }
            None => statuses.replacement = Status::Inconclusive,
        }

        let v = satisfies_strong_replacement(group, &budget());
        strong = v.decided();
        statuses.strong_replacement = v.status.into();
    }

    let soluble = series.soluble;
    Ok(AnalysisReport {
        schema: SCHEMA_VERSION,
        name: group.name().unwrap_or("group").to_string(),
        degree: group.degree(),
        order: group.order(),
        soluble,
        nilpotent: is_nilpotent(group),
        frattini_order: lattice.order_of(lattice.frattini()),
        fitting_order: lattice.order_of(fitting(&lattice)),
        d,
        m_bruteforce: m_brute,
        m_chief,
        mobius_1,
        hawkes_mu: hawkes_mu(&series).ok(),
        k_group,
        replacement,
        strong_replacement: strong,
        classification: classify_strong_form(&lattice).to_string(),
        theorem1_consistent: EquivalenceReport::from_parts(
            soluble,
            replacement,
            k_group,
            mobius_1 != 0,
        )
        .consistent,
        statuses,
        chief_series: series.factors,
    })
}
