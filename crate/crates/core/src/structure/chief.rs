use std::fmt::Write as _;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{SubgroupId, SubgroupLattice};

use super::is_soluble;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChiefFactor {
    /// `|H_i|`.
    pub order: usize,
    /// `|H_i / H_{i-1}|`.
    pub factor_order: usize,
    pub k: usize,
    pub complemented: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiefSeries {
    /// `H_0 = 1 < H_1 < ... < H_n = G`.
    pub chain: Vec<SubgroupId>,
    pub factors: Vec<ChiefFactor>,
    pub soluble: bool,
}

impl ChiefSeries {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn k_values(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.k).collect()
    }

    /// Factor lines `i |H_i| factor_order k_i complemented`, then the
    /// `n=.. hawkes_mu=.. m_chief=..` trailer.
    pub fn dump(&self) -> Result<String> {
        let mu = hawkes_mu(self)?;
        let m = m_via_chief(self)?;
        let mut out = String::new();
        for (i, f) in self.factors.iter().enumerate() {
            writeln!(
                out,
                "{} {} {} {} {}",
                i + 1,
                f.order,
                f.factor_order,
                f.k,
                f.complemented
            )
            .unwrap();
        }
        writeln!(out, "n={} hawkes_mu={mu} m_chief={m}", self.len()).unwrap();
        Ok(out)
    }
}

/// Normal subgroups covering `current` with nothing normal strictly between.
fn covers(
    lattice: &SubgroupLattice<'_>,
    normals: &[SubgroupId],
    current: SubgroupId,
) -> Vec<SubgroupId> {
    let above: Vec<SubgroupId> = normals
        .iter()
        .copied()
        .filter(|&n| n != current && lattice.leq(current, n))
        .collect();
    above
        .iter()
        .copied()
        .filter(|&n| !above.iter().any(|&m| m != n && lattice.leq(m, n)))
        .collect()
}

fn build(
    lattice: &SubgroupLattice<'_>,
    mut pick: impl FnMut(&[SubgroupId]) -> SubgroupId,
) -> ChiefSeries {
    let normals = lattice.normal_subgroups();
    let mut chain = vec![lattice.bottom()];
    let mut factors = Vec::new();
    let mut current = lattice.bottom();
    while current != lattice.top() {
        let next = pick(&covers(lattice, &normals, current));
        let k = lattice
            .count_chief_complements(current, next)
            .expect("chain terms are normal and nested");
        factors.push(ChiefFactor {
            order: lattice.order_of(next),
            factor_order: lattice.order_of(next) / lattice.order_of(current),
            k,
            complemented: k >= 1,
        });
        chain.push(next);
        current = next;
    }
    ChiefSeries {
        chain,
        factors,
        soluble: is_soluble(lattice.group()),
    }
}

/// Bottom-up, taking the canonical-least cover at every step.
pub fn chief_series(lattice: &SubgroupLattice<'_>) -> ChiefSeries {
    build(lattice, |covers| *covers.iter().min().unwrap())
}

/// Same construction with a seeded random choice among the covers.
pub fn chief_series_randomized(lattice: &SubgroupLattice<'_>, seed: u64) -> ChiefSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    build(lattice, |covers| *covers.choose(&mut rng).unwrap())
}

/// Number of complemented chief factors.
pub fn m_via_chief(series: &ChiefSeries) -> Result<usize> {
    if !series.soluble {
        return Err(Error::NonSoluble);
    }
    Ok(series.factors.iter().filter(|f| f.complemented).count())
}

/// `(-1)^n k_1 k_2 ... k_n`.
pub fn hawkes_mu(series: &ChiefSeries) -> Result<i64> {
    if !series.soluble {
        return Err(Error::NonSoluble);
    }
    let product = series.factors.iter().map(|f| f.k as i64).product::<i64>();
    Ok(if series.len().is_multiple_of(2) {
        product
    } else {
        -product
    })
}
