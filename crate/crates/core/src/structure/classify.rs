use std::fmt;

use serde::Serialize;

use crate::bitset::ElementSubset;
use crate::error::{Error, Result};
use crate::group::{ElementIndex, Group};
use crate::lattice::SubgroupLattice;
use crate::poly;

use super::{fitting, is_soluble};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StrongFormClassification {
    /// The trivial group is reported with `p = 1` and rank 0.
    ElementaryAbelian {
        p: u64,
        rank: u32,
    },
    /// `V^t ⋊ H` with `|H| = q` and `V` of dimension `r` over `GF(p)`.
    VtSemidirect {
        p: u64,
        q: u64,
        t: u32,
        r: u32,
    },
    NotClassified,
}

impl StrongFormClassification {
    pub fn is_classified(&self) -> bool {
        !matches!(self, StrongFormClassification::NotClassified)
    }
}

impl fmt::Display for StrongFormClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrongFormClassification::ElementaryAbelian { p, rank } => {
                write!(f, "ElementaryAbelian({p},{rank})")
            }
            StrongFormClassification::VtSemidirect { p, q, t, r } => {
                write!(f, "VtSemidirect({p},{q},{t},{r})")
            }
            StrongFormClassification::NotClassified => f.write_str("NotClassified"),
        }
    }
}

/// `(p, rank)` when `s` is an elementary abelian `p`-subgroup; `(1, 0)` when trivial.
fn elementary_abelian_type(g: &Group, s: &ElementSubset) -> Option<(u64, u32)> {
    let members = s.to_vec();
    let mut p = 1;
    for &x in &members {
        if x == g.identity() {
            continue;
        }
        let o = g.element_order(x) as u64;
        if !poly::is_prime(o) || (p != 1 && o != p) {
            return None;
        }
        p = o;
    }
    if !members
        .iter()
        .all(|&x| members.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
    {
        return None;
    }
    let mut rank = 0;
    let mut n = members.len() as u64;
    while n > 1 {
        n /= p;
        rank += 1;
    }
    Some((p, rank))
}

pub fn classify_strong_form(lattice: &SubgroupLattice<'_>) -> StrongFormClassification {
    use StrongFormClassification::*;
    let g = lattice.group();
    if let Some((p, rank)) = elementary_abelian_type(g, &g.whole()) {
        return ElementaryAbelian { p, rank };
    }
    if !is_soluble(g) || lattice.order_of(lattice.frattini()) != 1 {
        return NotClassified;
    }
    let f = fitting(lattice);
    let Some((p, d)) = elementary_abelian_type(g, lattice.subgroup(f)) else {
        return NotClassified;
    };
    let q = (g.order() / lattice.order_of(f)) as u64;
    if f == lattice.top() || !poly::is_prime(q) {
        return NotClassified;
    }
    let Some(&h_group) = lattice.complements(f).first() else {
        return NotClassified;
    };
    let h = lattice
        .subgroup(h_group)
        .iter()
        .find(|&x| x != g.identity())
        .unwrap();

    let minimal = lattice.minimal_normal_subgroups();
    let mut common: Option<Vec<u64>> = None;
    let mut join = lattice.bottom();
    for &m in &minimal {
        let set = lattice.subgroup(m);
        if !lattice.leq(m, f) || set.iter().all(|x| g.conjugate(x, h) == x) {
            return NotClassified;
        }
        let Ok(cp) = charpoly_mod_p(g, set, h) else {
            return NotClassified;
        };
        match &common {
            Some(c) if *c != cp => return NotClassified,
            Some(_) => {}
            None => common = Some(cp),
        }
        join = lattice.join(join, m);
    }
    if join != f {
        return NotClassified;
    }
    let r = (common.unwrap().len() - 1) as u32;
    VtSemidirect { p, q, t: d / r, r }
}

/// Characteristic polynomial (monic, ascending coefficients mod `p`) of
/// `x -> h^-1 x h` on the elementary abelian `p`-subgroup `m`.
///
/// The basis is built greedily from the members of `m` in index order.
pub fn charpoly_mod_p(g: &Group, m: &ElementSubset, h: ElementIndex) -> Result<Vec<u64>> {
    if !g.is_subgroup(m) {
        return Err(Error::NotElementaryAbelian);
    }
    let (p, _) = elementary_abelian_type(g, m).ok_or(Error::NotElementaryAbelian)?;
    if m.iter().any(|x| !m.contains(g.conjugate(x, h))) {
        return Err(Error::NotNormalizing);
    }
    let mut coords: Vec<Option<Vec<u64>>> = vec![None; g.order()];
    coords[g.identity()] = Some(Vec::new());
    let mut span = vec![g.identity()];
    let mut basis = Vec::new();
    for x in m.iter() {
        if coords[x].is_some() {
            continue;
        }
        let r = basis.len();
        for &v in &span {
            let mut c = coords[v].clone().unwrap();
            c.push(0);
            coords[v] = Some(c);
        }
        let mut grown = Vec::with_capacity(span.len() * p as usize);
        for &s in &span {
            let mut y = s;
            for power in 0..p {
                if power > 0 {
                    y = g.mul(y, x);
                    let mut c = coords[s].clone().unwrap();
                    c[r] = power;
                    coords[y] = Some(c);
                }
                grown.push(y);
            }
        }
        span = grown;
        basis.push(x);
    }
    let r = basis.len();
    let mut a = vec![vec![0u64; r]; r];
    for (j, &b) in basis.iter().enumerate() {
        let image = coords[g.conjugate(b, h)].as_ref().unwrap();
        for (i, &c) in image.iter().enumerate() {
            a[i][j] = c;
        }
    }
    Ok(charpoly_matrix(a, p))
}

/// Characteristic polynomial of a square matrix over `GF(p)` via reduction
/// to upper Hessenberg form.
pub(crate) fn charpoly_matrix(mut a: Vec<Vec<u64>>, p: u64) -> Vec<u64> {
    let n = a.len();
    let sub = |x: u64, y: u64| (x + p - y % p) % p;
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| a[i][j] != 0) else {
            continue;
        };
        if piv != j + 1 {
            a.swap(piv, j + 1);
            for row in a.iter_mut() {
                row.swap(piv, j + 1);
            }
        }
        let inv = poly::inv_mod(a[j + 1][j], p);
        for k in j + 2..n {
            let u = a[k][j] * inv % p;
            if u == 0 {
                continue;
            }
            let pivot_row = a[j + 1].clone();
            for (x, &y) in a[k].iter_mut().zip(&pivot_row) {
                *x = sub(*x, u * y);
            }
            for row in a.iter_mut() {
                row[j + 1] = (row[j + 1] + u * row[k]) % p;
            }
        }
    }
    // polys[m] = charpoly of the leading m x m block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let prev = &polys[m];
        let mut next = vec![0; m + 2];
        for (i, &c) in prev.iter().enumerate() {
            next[i + 1] = (next[i + 1] + c) % p;
            next[i] = sub(next[i], a[m][m] * c);
        }
        let mut prod = 1;
        for i in (0..m).rev() {
            prod = prod * a[i + 1][i] % p;
            let coef = prod * a[i][m] % p;
            for (e, &c) in polys[i].iter().enumerate() {
                next[e] = sub(next[e], coef * c);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{
        alternating, cyclic, dihedral, elementary_abelian, symmetric, vt_semidirect,
    };
    use crate::lattice::enumerate_subgroups;
    use crate::perm::parse_permutation;
    use proptest::prelude::*;

    fn classify(g: &Group) -> StrongFormClassification {
        classify_strong_form(&enumerate_subgroups(g, 10_000).unwrap())
    }

    fn idx(g: &Group, text: &str) -> ElementIndex {
        g.index_of(&parse_permutation(text, g.degree()).unwrap())
            .unwrap()
    }

    // det(xI - A) by expansion over all permutations.
    fn leibniz(a: &[Vec<u64>], p: u64) -> Vec<u64> {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![Vec::new()];
            }
            let mut out = Vec::new();
            for q in perms(n - 1) {
                for pos in 0..n {
                    let mut v = q.clone();
                    v.insert(pos, n - 1);
                    out.push(v);
                }
            }
            out
        }
        let n = a.len();
        let mut total = vec![0u64; n + 1];
        for s in perms(n) {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| s[i] > s[j])
                .count();
            let mut term = vec![1u64];
            for (i, &si) in s.iter().enumerate() {
                let entry = if i == si {
                    vec![(p - a[i][i] % p) % p, 1]
                } else {
                    vec![(p - a[i][si] % p) % p]
                };
                term = poly::mul(&term, &entry, p);
            }
            for (e, &c) in term.iter().enumerate() {
                let c = if inversions % 2 == 1 { (p - c) % p } else { c };
                total[e] = (total[e] + c) % p;
            }
        }
        total
    }

    #[test]
    fn classifications() {
        use StrongFormClassification::*;
        assert_eq!(
            classify(&elementary_abelian(3, 2).unwrap()),
            ElementaryAbelian { p: 3, rank: 2 }
        );
        assert_eq!(
            classify(&cyclic(1).unwrap()),
            ElementaryAbelian { p: 1, rank: 0 }
        );
        assert_eq!(
            classify(&alternating(4).unwrap()),
            VtSemidirect {
                p: 2,
                q: 3,
                t: 1,
                r: 2
            }
        );
        assert_eq!(
            classify(&symmetric(3).unwrap()).to_string(),
            "VtSemidirect(3,2,1,1)"
        );
        assert_eq!(classify(&cyclic(6).unwrap()), NotClassified);
        assert_eq!(classify(&dihedral(4).unwrap()), NotClassified);
        assert_eq!(classify(&cyclic(4).unwrap()), NotClassified);
        assert_eq!(classify(&symmetric(4).unwrap()), NotClassified);
        assert_eq!(
            classify(&vt_semidirect(3, 2, 3).unwrap()),
            VtSemidirect {
                p: 3,
                q: 2,
                t: 3,
                r: 1
            }
        );
        assert_eq!(
            classify(&vt_semidirect(2, 7, 1).unwrap()),
            VtSemidirect {
                p: 2,
                q: 7,
                t: 1,
                r: 3
            }
        );
        assert_eq!(
            ElementaryAbelian { p: 2, rank: 3 }.to_string(),
            "ElementaryAbelian(2,3)"
        );
    }

    #[test]
    fn charpoly_examples() {
        let a4 = alternating(4).unwrap();
        let v4 = ElementSubset::from_indices(
            12,
            ["()", "(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"].map(|t| idx(&a4, t)),
        );
        let h = idx(&a4, "(1 2 3)");
        assert_eq!(charpoly_mod_p(&a4, &v4, h).unwrap(), vec![1, 1, 1]);
        assert_eq!(
            charpoly_mod_p(&a4, &v4, idx(&a4, "(1 2)(3 4)")).unwrap(),
            vec![1, 0, 1]
        );

        let s3 = symmetric(3).unwrap();
        let c3 = ElementSubset::from_indices(6, ["()", "(1 2 3)", "(1 3 2)"].map(|t| idx(&s3, t)));
        assert_eq!(
            charpoly_mod_p(&s3, &c3, idx(&s3, "(1 2)")).unwrap(),
            vec![1, 1]
        );
        // centralizing: x - 1
        assert_eq!(
            charpoly_mod_p(&s3, &c3, idx(&s3, "(1 2 3)")).unwrap(),
            vec![2, 1]
        );
    }

    #[test]
    fn charpoly_errors() {
        let s3 = symmetric(3).unwrap();
        let c2 = ElementSubset::from_indices(6, ["()", "(1 2)"].map(|t| idx(&s3, t)));
        assert!(matches!(
            charpoly_mod_p(&s3, &c2, idx(&s3, "(1 2 3)")),
            Err(Error::NotNormalizing)
        ));
        let c4 = cyclic(4).unwrap();
        assert!(matches!(
            charpoly_mod_p(&c4, &c4.whole(), c4.identity()),
            Err(Error::NotElementaryAbelian)
        ));
    }

    #[test]
    fn vt_charpolys_are_irreducible() {
        for (p, q) in [(2, 3), (2, 7), (3, 2), (5, 2), (7, 3)] {
            let g = vt_semidirect(p, q, 1).unwrap();
            let l = enumerate_subgroups(&g, 10_000).unwrap();
            let f = fitting(&l);
            let h = l
                .subgroup(l.complements(f)[0])
                .iter()
                .find(|&x| x != g.identity())
                .unwrap();
            let cp = charpoly_mod_p(&g, l.subgroup(f), h).unwrap();
            assert!(poly::is_irreducible(&cp, p), "p={p} q={q} {cp:?}");
        }
    }

    proptest! {
        #[test]
        fn hessenberg_matches_expansion(
            p in prop::sample::select(vec![2u64, 3, 5, 7]),
            n in 0usize..5,
            seed in prop::collection::vec(0u64..7, 25),
        ) {
            let a: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| seed[i * 5 + j] % p).collect()).collect();
            prop_assert_eq!(charpoly_matrix(a.clone(), p), leibniz(&a, p));
        }
    }
}
