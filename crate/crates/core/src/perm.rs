//! Permutations of `{1..n}` stored as image tables.
//!
//! Composition is left to right throughout the crate: `compose(p, q)` is the
//! map `i -> q(p(i))`, i.e. apply `p` first.

use std::fmt;

use crate::error::{Error, Result};

/// A bijection on `{1..degree}`. Internally 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    /// Builds a permutation from 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut table = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n {
                return Err(invalid(images, format!("image {img} out of range 1..{n}")));
            }
            if std::mem::replace(&mut seen[img - 1], true) {
                return Err(invalid(images, format!("repeated image {img}")));
            }
            table.push((img - 1) as u16);
        }
        Ok(Permutation {
            images: table.into_boxed_slice(),
        })
    }

    /// Builds a permutation from 0-based images without validation.
    pub(crate) fn from_zero_based(images: Vec<u16>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v as usize)
        });
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation of `degree` points from 1-based disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for (k, &pt) in cycle.iter().enumerate() {
                if pt == 0 || pt > degree {
                    return Err(Error::ParsePermutation {
                        text: format!("{cycles:?}"),
                        reason: format!("point {pt} out of range 1..{degree}"),
                    });
                }
                if std::mem::replace(&mut used[pt - 1], true) {
                    return Err(Error::ParsePermutation {
                        text: format!("{cycles:?}"),
                        reason: format!("repeated point {pt}"),
                    });
                }
                let next = cycle[(k + 1) % cycle.len()];
                images[pt - 1] = (next - 1) as u16;
            }
        }
        Ok(Permutation::from_zero_based(images))
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 0-based point `i`, 0-based.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// 1-based image table.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &v)| i == v as usize)
    }

    /// Disjoint cycles of length at least two, 1-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.apply(x);
            }
            out.push(cycle);
        }
        out
    }
}

fn invalid(images: &[usize], reason: String) -> Error {
    Error::ParsePermutation {
        text: format!("{images:?}"),
        reason,
    }
}

/// The map `i -> q(p(i))`.
pub fn compose(p: &Permutation, q: &Permutation) -> Result<Permutation> {
    if p.degree() != q.degree() {
        return Err(Error::DegreeMismatch {
            left: p.degree(),
            right: q.degree(),
        });
    }
    Ok(compose_unchecked(p, q))
}

#[inline]
pub(crate) fn compose_unchecked(p: &Permutation, q: &Permutation) -> Permutation {
    Permutation {
        images: p.images.iter().map(|&i| q.images[i as usize]).collect(),
    }
}

pub fn inverse(p: &Permutation) -> Permutation {
    let mut images = vec![0u16; p.degree()];
    for (i, &v) in p.images.iter().enumerate() {
        images[v as usize] = i as u16;
    }
    Permutation::from_zero_based(images)
}

/// Parses either an image list (`"2 3 1"`) or disjoint cycles (`"(1 2 3)(4 5)"`).
///
/// Cycle entries may be separated by spaces or commas; `()` is the identity.
pub fn parse_permutation(text: &str, degree: usize) -> Result<Permutation> {
    let trimmed = text.trim();
    let err = |reason: String| Error::ParsePermutation {
        text: text.to_string(),
        reason,
    };
    if trimmed.contains('(') || trimmed.contains(')') {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = trimmed;
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(err(format!("expected '(' at {rest:?}")));
            };
            let Some(close) = body.find(')') else {
                return Err(err("unbalanced parentheses".into()));
            };
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(err("nested parentheses".into()));
            }
            let mut cycle = Vec::new();
            for tok in inner.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                let pt: usize = tok.parse().map_err(|_| err(format!("bad point {tok:?}")))?;
                cycle.push(pt);
            }
            cycles.push(cycle);
            rest = body[close + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(degree, &refs).map_err(|e| match e {
            Error::ParsePermutation { reason, .. } => err(reason),
            other => other,
        })
    } else {
        let images: Vec<usize> = trimmed
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| err(format!("bad image {t:?}"))))
            .collect::<Result<_>>()?;
        if images.len() != degree {
            return Err(err(format!(
                "expected {degree} images, found {}",
                images.len()
            )));
        }
        Permutation::from_images(&images).map_err(|e| match e {
            Error::ParsePermutation { reason, .. } => err(reason),
            other => other,
        })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, pt) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{pt}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images())
    }
}
