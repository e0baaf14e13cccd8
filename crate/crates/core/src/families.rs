//! Constructors for the test catalog, group spec strings and the group file loader.

use std::fmt;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::group::{Group, Limits};
use crate::perm::{parse_permutation, Permutation};
use crate::poly;

fn close_named(
    degree: usize,
    gens: Vec<Permutation>,
    name: String,
    limits: &Limits,
) -> Result<Group> {
    Ok(Group::close(degree, gens, limits)?.with_name(name))
}

fn from_zero_based(images: Vec<usize>) -> Permutation {
    Permutation::from_zero_based(images.into_iter().map(|v| v as u16).collect())
}

fn n_cycle(degree: usize, points: &[usize]) -> Permutation {
    Permutation::from_cycles(degree, &[points]).expect("valid cycle")
}

pub fn cyclic(n: usize) -> Result<Group> {
    cyclic_with(n, &Limits::default())
}

fn cyclic_with(n: usize, limits: &Limits) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic needs n >= 1".into()));
    }
    let pts: Vec<usize> = (1..=n).collect();
    let gens = if n > 1 {
        vec![n_cycle(n, &pts)]
    } else {
        Vec::new()
    };
    close_named(n, gens, format!("cyclic:{n}"), limits)
}

/// Symmetries of the regular `n`-gon: a rotation and the reflection `i -> n + 1 - i`.
pub fn dihedral(n: usize) -> Result<Group> {
    dihedral_with(n, &Limits::default())
}

fn dihedral_with(n: usize, limits: &Limits) -> Result<Group> {
    if n < 3 {
        return Err(Error::InvalidParameter("dihedral needs n >= 3".into()));
    }
    let pts: Vec<usize> = (1..=n).collect();
    let reflection = from_zero_based((0..n).map(|i| n - 1 - i).collect());
    close_named(
        n,
        vec![n_cycle(n, &pts), reflection],
        format!("dihedral:{n}"),
        limits,
    )
}

pub fn symmetric(n: usize) -> Result<Group> {
    symmetric_with(n, &Limits::default())
}

fn symmetric_with(n: usize, limits: &Limits) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameter("symmetric needs n >= 1".into()));
    }
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(n_cycle(n, &[1, 2]));
    }
    if n >= 3 {
        let pts: Vec<usize> = (1..=n).collect();
        gens.push(n_cycle(n, &pts));
    }
    close_named(n, gens, format!("symmetric:{n}"), limits)
}

/// Generated by the 3-cycles `(1 2 i)`, `3 <= i <= n`.
pub fn alternating(n: usize) -> Result<Group> {
    alternating_with(n, &Limits::default())
}

fn alternating_with(n: usize, limits: &Limits) -> Result<Group> {
    if n == 0 {
        return Err(Error::InvalidParameter("alternating needs n >= 1".into()));
    }
    let gens = (3..=n).map(|i| n_cycle(n, &[1, 2, i])).collect();
    close_named(n, gens, format!("alternating:{n}"), limits)
}

/// `k` disjoint `p`-cycles on `p * k` points.
pub fn elementary_abelian(p: u64, k: usize) -> Result<Group> {
    elementary_abelian_with(p, k, &Limits::default())
}

fn elementary_abelian_with(p: u64, k: usize, limits: &Limits) -> Result<Group> {
    if !poly::is_prime(p) {
        return Err(Error::InvalidParameter(format!("{p} is not prime")));
    }
    let p = p as usize;
    let degree = (p * k).max(1);
    let gens = (0..k)
        .map(|c| {
            let pts: Vec<usize> = (c * p + 1..=c * p + p).collect();
            n_cycle(degree, &pts)
        })
        .collect();
    close_named(degree, gens, format!("elemabelian:{p},{k}"), limits)
}

/// `V^t ⋊ C_q` where `V` is the field with `p^r` elements, `r` the order of
/// `p` mod `q`, and `C_q` acts by multiplication with a fixed element of order `q`.
///
/// The group acts on `t` disjoint copies of `V`: generator `i < t` translates
/// copy `i` by `1` and the last generator multiplies every copy by `ζ`.
pub fn vt_semidirect(p: u64, q: u64, t: usize) -> Result<Group> {
    vt_semidirect_with(p, q, t, &Limits::default())
}

fn vt_semidirect_with(p: u64, q: u64, t: usize, limits: &Limits) -> Result<Group> {
    for x in [p, q] {
        if !poly::is_prime(x) {
            return Err(Error::InvalidParameter(format!("{x} is not prime")));
        }
    }
    if p == q {
        return Err(Error::InvalidParameter(format!("q = {q} divides p = {p}")));
    }
    if t == 0 {
        return Err(Error::InvalidParameter("vtcq needs t >= 1".into()));
    }
    let r = poly::multiplicative_order(p, q) as usize;
    let field = PrimePowerField::new(p, r);
    let size = field.size();
    let degree = size
        .checked_mul(t)
        .filter(|&d| d <= limits.max_degree)
        .ok_or(Error::DegreeLimit {
            degree: size.saturating_mul(t),
            limit: limits.max_degree,
        })?;
    let zeta = (1..size)
        .find(|&z| field.multiplicative_order(z) == q as usize)
        .expect("q divides p^r - 1");

    let mut gens = Vec::with_capacity(t + 1);
    for copy in 0..t {
        let images = (0..degree)
            .map(|pt| {
                if pt / size == copy {
                    copy * size + field.add(pt % size, 1)
                } else {
                    pt
                }
            })
            .collect();
        gens.push(from_zero_based(images));
    }
    let images = (0..degree)
        .map(|pt| (pt / size) * size + field.mul(pt % size, zeta))
        .collect();
    gens.push(from_zero_based(images));
    close_named(degree, gens, format!("vtcq:{p},{q},{t}"), limits)
}

/// `GF(p^r)` as residues modulo the least irreducible monic of degree `r`.
/// Elements are encoded as base-`p` integers, constant coefficient lowest.
struct PrimePowerField {
    p: u64,
    r: usize,
    modulus: Vec<u64>,
}

impl PrimePowerField {
    fn new(p: u64, r: usize) -> Self {
        PrimePowerField {
            p,
            r,
            modulus: poly::least_irreducible(r, p),
        }
    }

    fn size(&self) -> usize {
        self.p.pow(self.r as u32) as usize
    }

    fn decode(&self, mut x: usize) -> Vec<u64> {
        let mut c = Vec::with_capacity(self.r);
        for _ in 0..self.r {
            c.push(x as u64 % self.p);
            x /= self.p as usize;
        }
        c
    }

    fn encode(&self, c: &[u64]) -> usize {
        c.iter()
            .rev()
            .fold(0, |acc, &d| acc * self.p as usize + d as usize)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.decode(a), self.decode(b));
        let s: Vec<u64> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.encode(&s)
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let prod = poly::mul(
            &poly::trim(self.decode(a)),
            &poly::trim(self.decode(b)),
            self.p,
        );
        let mut red = poly::rem(&prod, &self.modulus, self.p);
        red.resize(self.r, 0);
        self.encode(&red)
    }

    fn multiplicative_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

/// `PSL(2, p)` on the projective line: points `0..p-1` then `∞`,
/// generated by `x -> x + 1` and `x -> -1/x`.
pub fn psl2(p: u64) -> Result<Group> {
    psl2_with(p, &Limits::default())
}

fn psl2_with(p: u64, limits: &Limits) -> Result<Group> {
    if !poly::is_prime(p) || p < 5 {
        return Err(Error::InvalidParameter(format!(
            "psl2 needs a prime p >= 5, got {p}"
        )));
    }
    let n = p as usize;
    let inf = n;
    let shift = from_zero_based(
        (0..=n)
            .map(|x| if x == inf { inf } else { (x + 1) % n })
            .collect(),
    );
    let invert = from_zero_based(
        (0..=n)
            .map(|x| match x {
                0 => inf,
                x if x == inf => 0,
                x => (n - poly::inv_mod(x as u64, p) as usize) % n,
            })
            .collect(),
    );
    close_named(n + 1, vec![shift, invert], format!("psl2:{p}"), limits)
}

/// `A × B` acting on the disjoint union of the two point sets.
pub fn direct_product(a: &Group, b: &Group) -> Result<Group> {
    direct_product_with(a, b, &Limits::default())
}

fn direct_product_with(a: &Group, b: &Group, limits: &Limits) -> Result<Group> {
    let (da, db) = (a.degree(), b.degree());
    let degree = da + db;
    let mut gens = Vec::new();
    for g in a.generators() {
        let images = (0..degree)
            .map(|i| if i < da { g.apply(i) } else { i })
            .collect();
        gens.push(from_zero_based(images));
    }
    for g in b.generators() {
        let images = (0..degree)
            .map(|i| if i < da { i } else { da + g.apply(i - da) })
            .collect();
        gens.push(from_zero_based(images));
    }
    let name = format!("{}×{}", a.name().unwrap_or("?"), b.name().unwrap_or("?"));
    close_named(degree, gens, name, limits)
}

/// Loads a group file; the name defaults to the file stem.
pub fn from_file(path: impl AsRef<Path>) -> Result<Group> {
    from_file_with(path.as_ref(), &Limits::default())
}

fn from_file_with(path: &Path, limits: &Limits) -> Result<Group> {
    let text = std::fs::read_to_string(path)?;
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    parse_group_file(&text, path, &stem, limits)
}

/// Parses the line-oriented group format:
///
/// ```text
/// # comment
/// name <label>
/// degree <n>
/// gen <permutation>
/// ```
///
/// `degree` must appear exactly once, before any `gen`.
pub fn parse_group_file(
    text: &str,
    path: &Path,
    default_name: &str,
    limits: &Limits,
) -> Result<Group> {
    let fail = |line: usize, message: String| Error::GroupFile {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut name: Option<String> = None;
    let mut degree: Option<usize> = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, rest) = line
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim()))
            .unwrap_or((line, ""));
        match key {
            "name" => {
                if rest.is_empty() {
                    return Err(fail(lineno, "empty name".into()));
                }
                name = Some(rest.to_string());
            }
            "degree" => {
                if degree.is_some() {
                    return Err(fail(lineno, "duplicate degree line".into()));
                }
                let n: usize = rest
                    .parse()
                    .map_err(|_| fail(lineno, format!("bad degree {rest:?}")))?;
                if n == 0 {
                    return Err(fail(lineno, "degree must be positive".into()));
                }
                if n > limits.max_degree {
                    return Err(Error::DegreeLimit {
                        degree: n,
                        limit: limits.max_degree,
                    });
                }
                degree = Some(n);
            }
            "gen" => {
                let n = degree.ok_or_else(|| fail(lineno, "gen before degree".into()))?;
                let p = parse_permutation(rest, n).map_err(|e| fail(lineno, e.to_string()))?;
                gens.push(p);
            }
            other => return Err(fail(lineno, format!("unknown directive {other:?}"))),
        }
    }
    let degree =
        degree.ok_or_else(|| fail(text.lines().count().max(1), "missing degree line".into()))?;
    let name = name.unwrap_or_else(|| default_name.to_string());
    close_named(degree, gens, name, limits)
}

/// A parsed group spec string such as `dihedral:4` or `product:cyclic:2+symmetric:3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    ElementaryAbelian(u64, usize),
    VtSemidirect(u64, u64, usize),
    Psl2(u64),
    Product(Vec<GroupSpec>),
    File(PathBuf),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Alternating(n) => write!(f, "alternating:{n}"),
            GroupSpec::ElementaryAbelian(p, k) => write!(f, "elemabelian:{p},{k}"),
            GroupSpec::VtSemidirect(p, q, t) => write!(f, "vtcq:{p},{q},{t}"),
            GroupSpec::Psl2(p) => write!(f, "psl2:{p}"),
            GroupSpec::Product(parts) => {
                f.write_str("product:")?;
                for (i, part) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{part}")?;
                }
                Ok(())
            }
            GroupSpec::File(path) => write!(f, "file:{}", path.display()),
        }
    }
}

impl GroupSpec {
    /// Parses a single spec; ranges are rejected here, see [`expand_specs`].
    pub fn parse(text: &str) -> Result<GroupSpec> {
        let mut all = expand_specs(text)?;
        if all.len() != 1 {
            return Err(spec_error(text, "a range expands to several groups"));
        }
        Ok(all.remove(0))
    }

    pub fn build(&self, limits: &Limits) -> Result<Group> {
        let group = match *self {
            GroupSpec::Cyclic(n) => cyclic_with(n, limits)?,
            GroupSpec::Dihedral(n) => dihedral_with(n, limits)?,
            GroupSpec::Symmetric(n) => symmetric_with(n, limits)?,
            GroupSpec::Alternating(n) => alternating_with(n, limits)?,
            GroupSpec::ElementaryAbelian(p, k) => elementary_abelian_with(p, k, limits)?,
            GroupSpec::VtSemidirect(p, q, t) => vt_semidirect_with(p, q, t, limits)?,
            GroupSpec::Psl2(p) => psl2_with(p, limits)?,
            GroupSpec::Product(ref parts) => {
                let mut iter = parts.iter();
                let first = iter
                    .next()
                    .ok_or_else(|| spec_error("product:", "empty product"))?;
                let mut acc = first.build(limits)?;
                for part in iter {
                    acc = direct_product_with(&acc, &part.build(limits)?, limits)?;
                }
                acc
            }
            GroupSpec::File(ref path) => return from_file_with(path, limits),
        };
        Ok(group.with_name(self.to_string()))
    }
}

fn spec_error(spec: &str, message: impl Into<String>) -> Error {
    Error::GroupSpec {
        spec: spec.to_string(),
        message: message.into(),
    }
}

fn parse_range(spec: &str, tok: &str) -> Result<Vec<u64>> {
    let num = |s: &str| -> Result<u64> {
        s.trim()
            .parse()
            .map_err(|_| spec_error(spec, format!("bad integer {s:?}")))
    };
    match tok.split_once("..") {
        Some((a, b)) => {
            let (lo, hi) = (num(a)?, num(b)?);
            if lo > hi {
                return Err(spec_error(spec, format!("empty range {tok}")));
            }
            Ok((lo..=hi).collect())
        }
        None => Ok(vec![num(tok)?]),
    }
}

fn cartesian(lists: &[Vec<u64>]) -> Vec<Vec<u64>> {
    lists.iter().fold(vec![Vec::new()], |acc, list| {
        acc.iter()
            .flat_map(|prefix| {
                list.iter().map(move |&v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect()
    })
}

/// Parses a spec string, expanding inclusive ranges such as `dihedral:3..12`
/// or `elemabelian:2,1..5` in order.
pub fn expand_specs(text: &str) -> Result<Vec<GroupSpec>> {
    let text = text.trim();
    let (family, args) = text
        .split_once(':')
        .ok_or_else(|| spec_error(text, "expected <family>:<args>"))?;
    match family {
        "file" => {
            if args.is_empty() {
                return Err(spec_error(text, "missing path"));
            }
            return Ok(vec![GroupSpec::File(PathBuf::from(args))]);
        }
        "product" => {
            let parts: Vec<Vec<GroupSpec>> =
                args.split('+').map(expand_specs).collect::<Result<_>>()?;
            if parts.is_empty() {
                return Err(spec_error(text, "empty product"));
            }
            let mut combos: Vec<Vec<GroupSpec>> = vec![Vec::new()];
            for choices in parts {
                combos = combos
                    .into_iter()
                    .flat_map(|prefix| {
                        choices.iter().map(move |c| {
                            let mut next = prefix.clone();
                            next.push(c.clone());
                            next
                        })
                    })
                    .collect();
            }
            return Ok(combos.into_iter().map(GroupSpec::Product).collect());
        }
        _ => {}
    }
    let lists: Vec<Vec<u64>> = args
        .split(',')
        .map(|tok| parse_range(text, tok))
        .collect::<Result<_>>()?;
    let arity = match family {
        "cyclic" | "dihedral" | "symmetric" | "alternating" | "psl2" => 1,
        "elemabelian" => 2,
        "vtcq" => 3,
        other => return Err(spec_error(text, format!("unknown family {other:?}"))),
    };
    if lists.len() != arity {
        return Err(spec_error(
            text,
            format!("{family} takes {arity} parameter(s)"),
        ));
    }
    Ok(cartesian(&lists)
        .into_iter()
        .map(|v| match family {
            "cyclic" => GroupSpec::Cyclic(v[0] as usize),
            "dihedral" => GroupSpec::Dihedral(v[0] as usize),
            "symmetric" => GroupSpec::Symmetric(v[0] as usize),
            "alternating" => GroupSpec::Alternating(v[0] as usize),
            "psl2" => GroupSpec::Psl2(v[0]),
            "elemabelian" => GroupSpec::ElementaryAbelian(v[0], v[1] as usize),
            _ => GroupSpec::VtSemidirect(v[0], v[1], v[2] as usize),
        })
        .collect())
}

/// The fixed soluble catalog used by the cross-check suites.
pub fn catalog() -> Vec<GroupSpec> {
    let mut out = Vec::new();
    out.extend((2..=24).map(GroupSpec::Cyclic));
    out.extend((3..=12).map(GroupSpec::Dihedral));
    out.extend((1..=5).map(|k| GroupSpec::ElementaryAbelian(2, k)));
    out.extend((1..=3).map(|k| GroupSpec::ElementaryAbelian(3, k)));
    out.extend((1..=2).map(|k| GroupSpec::ElementaryAbelian(5, k)));
    out.extend((3..=4).map(GroupSpec::Symmetric));
    out.push(GroupSpec::Alternating(4));
    out.extend((1..=3).map(|t| GroupSpec::VtSemidirect(3, 2, t)));
    out.extend((1..=2).map(|t| GroupSpec::VtSemidirect(2, 3, t)));
    out.extend((1..=2).map(|t| GroupSpec::VtSemidirect(5, 2, t)));
    out.push(GroupSpec::VtSemidirect(7, 3, 1));
    out.push(GroupSpec::VtSemidirect(2, 7, 1));
    out.push(GroupSpec::Product(vec![
        GroupSpec::Cyclic(2),
        GroupSpec::Cyclic(2),
        GroupSpec::Cyclic(3),
    ]));
    out.push(GroupSpec::Product(vec![
        GroupSpec::Symmetric(3),
        GroupSpec::Cyclic(2),
    ]));
    out.push(GroupSpec::Product(vec![
        GroupSpec::Dihedral(4),
        GroupSpec::Cyclic(3),
    ]));
    out
}

/// Non-soluble groups kept apart from the catalog.
pub fn nonsoluble_demo() -> Vec<GroupSpec> {
    vec![GroupSpec::Psl2(5), GroupSpec::Psl2(7)]
}
