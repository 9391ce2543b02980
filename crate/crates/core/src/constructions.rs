//! Builders for the group families used by the harness, generic
//! direct/semidirect products, permutation-group ingestion and the JSON
//! group-spec format.
//!
//! Element ordering is lexicographic on each construction's natural tuple
//! encoding, with the identity first.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{GroupError, Result};
use crate::group::{Elem, Group, Subgroup};

pub const DEFAULT_MAX_ORDER: usize = 5000;

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn require_prime(p: usize) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(GroupError::NotPrime(p))
    }
}

fn out_of_range(msg: impl Into<String>) -> GroupError {
    GroupError::ParameterOutOfRange(msg.into())
}

fn table_from_fn(n: usize, label: String, f: impl Fn(usize, usize) -> usize) -> Result<Group> {
    let mut flat = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            flat.push(f(a, b) as u32);
        }
    }
    Group::from_trusted(n, flat, label)
}

/// `Z/n` under addition; element `i` is the residue `i`.
pub fn cyclic(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(out_of_range("cyclic(n) needs n >= 1"));
    }
    table_from_fn(n, format!("cyclic({n})"), |a, b| (a + b) % n)
}

/// Dihedral group of order `2n`. Index `i < n` is the rotation `r^i`,
/// index `n + i` is the reflection `r^i s`.
pub fn dihedral(n: usize) -> Result<Group> {
    if n == 0 {
        return Err(out_of_range("dihedral(n) needs n >= 1"));
    }
    table_from_fn(2 * n, format!("dihedral({n})"), |a, b| {
        let (fa, ia) = (a / n, a % n);
        let (fb, ib) = (b / n, b % n);
        // r^ia s^fa r^ib s^fb = r^(ia ± ib) s^(fa+fb)
        let i = if fa == 0 { ia + ib } else { ia + n - ib } % n;
        ((fa + fb) % 2) * n + i
    })
}

/// Quaternion group `{±1, ±i, ±j, ±k}`, ordered `1, −1, i, −i, j, −j, k, −k`.
pub fn quaternion8() -> Result<Group> {
    // unit products: (unit, sign flip) for units 1, i, j, k
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    table_from_fn(8, "quaternion8".into(), |a, b| {
        let (u, s) = UNIT[a / 2][b / 2];
        2 * u + ((a % 2 + b % 2 + s) % 2)
    })
}

/// Multiplicative group of `GF(p)`; index `i` is the unit `i + 1`.
pub fn units_mod(p: usize) -> Result<Group> {
    require_prime(p)?;
    table_from_fn(p - 1, format!("units({p})"), |a, b| {
        ((a + 1) * (b + 1)) % p - 1
    })
}

/// The extraspecial group of order `p³` and exponent `p`, as upper
/// unitriangular 3×3 matrices over `GF(p)`.
///
/// Index `x·p² + y·p + z` is the matrix with `x` at (1,2), `y` at (2,3) and
/// `z` at (1,3).
pub fn extraspecial_p3(p: usize, max_order: usize) -> Result<Group> {
    require_prime(p)?;
    if p == 2 {
        return Err(out_of_range("extraspecial_p3 needs an odd prime"));
    }
    if p.pow(3) > max_order {
        return Err(GroupError::OrderCapExceeded { cap: max_order });
    }
    let dec = |e: usize| (e / (p * p), (e / p) % p, e % p);
    table_from_fn(p * p * p, format!("extraspecial_p3({p})"), |a, b| {
        let (x, y, z) = dec(a);
        let (x2, y2, z2) = dec(b);
        ((x + x2) % p) * p * p + ((y + y2) % p) * p + (z + z2 + x * y2) % p
    })
}

/// Affine group `x ↦ mx + t` over `GF(p)`, of order `p(p−1)`; `frobenius(5)`
/// is the Frobenius group of order 20.
pub fn frobenius(p: usize) -> Result<Group> {
    require_prime(p)?;
    let (k, m, action) = affine_parts(p)?;
    semidirect_product(&k, &m, &action).map(|g| g.with_label(format!("frobenius({p})")))
}

fn affine_parts(p: usize) -> Result<(Group, Group, Vec<Vec<Elem>>)> {
    let k = cyclic(p)?;
    let m = units_mod(p)?;
    let action = (0..p - 1)
        .map(|u| (0..p).map(|t| (t * (u + 1)) % p).collect())
        .collect();
    Ok((k, m, action))
}

/// Closes a set of permutations of `0..degree` under composition.
///
/// Permutations compose left to right: `(στ)(x) = τ(σ(x))`. Elements are
/// numbered in lexicographic order of their image tuples.
pub fn from_permutations(
    degree: usize,
    generators: &[Vec<usize>],
    max_order: usize,
) -> Result<Group> {
    if degree == 0 {
        return Err(out_of_range("permutation degree must be positive"));
    }
    for gen in generators {
        let mut seen = vec![false; degree];
        let ok = gen.len() == degree
            && gen
                .iter()
                .all(|&x| x < degree && !std::mem::replace(&mut seen[x], true));
        if !ok {
            return Err(GroupError::NotAPermutation {
                degree,
                images: gen.clone(),
            });
        }
    }
    let identity: Vec<usize> = (0..degree).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut perms = vec![identity.clone()];
    seen.insert(identity);
    let mut i = 0;
    while i < perms.len() {
        for gen in generators {
            let next: Vec<usize> = perms[i].iter().map(|&x| gen[x]).collect();
            if !seen.contains(&next) {
                if perms.len() >= max_order {
                    return Err(GroupError::OrderCapExceeded { cap: max_order });
                }
                seen.insert(next.clone());
                perms.push(next);
            }
        }
        i += 1;
    }
    perms.sort();
    let index: HashMap<&[usize], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    let n = perms.len();
    let mut flat = Vec::with_capacity(n * n);
    let mut buf = vec![0; degree];
    for p in &perms {
        for q in &perms {
            for x in 0..degree {
                buf[x] = q[p[x]];
            }
            flat.push(index[buf.as_slice()] as u32);
        }
    }
    let label = format!("perm(degree {degree}, gens {generators:?})");
    Group::from_trusted(n, flat, label)
}

fn cycle(degree: usize, points: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..degree).collect();
    for w in 0..points.len() {
        p[points[w]] = points[(w + 1) % points.len()];
    }
    p
}

/// Symmetric group on `n ≤ 6` points, elements in lexicographic order of
/// their image tuples.
pub fn symmetric(n: usize) -> Result<Group> {
    if !(1..=6).contains(&n) {
        return Err(out_of_range("symmetric(n) needs 1 <= n <= 6"));
    }
    let full: Vec<usize> = (0..n).collect();
    let gens = vec![cycle(n, &[0, 1.min(n - 1)]), cycle(n, &full)];
    from_permutations(n, &gens, usize::MAX).map(|g| g.with_label(format!("symmetric({n})")))
}

/// Alternating group on `n ≤ 6` points.
pub fn alternating(n: usize) -> Result<Group> {
    if !(1..=6).contains(&n) {
        return Err(out_of_range("alternating(n) needs 1 <= n <= 6"));
    }
    let gens: Vec<Vec<usize>> = (2..n).map(|k| cycle(n, &[0, 1, k])).collect();
    from_permutations(n, &gens, usize::MAX).map(|g| g.with_label(format!("alternating({n})")))
}

/// `G × H`; index `g·|H| + h`.
pub fn direct_product(g: &Group, h: &Group) -> Result<Group> {
    let m = h.order();
    table_from_fn(
        g.order() * m,
        format!("{} x {}", g.label(), h.label()),
        |a, b| g.mul(a / m, b / m) * m + h.mul(a % m, b % m),
    )
}

/// `K ⋊ M` with `(k₁, m₁)(k₂, m₂) = (k₁·φ(m₁)(k₂), m₁m₂)`.
///
/// `action[m][k]` is `φ(m)(k)`. Every row must be an automorphism of `K` and
/// `φ(m₁m₂) = φ(m₁) ∘ φ(m₂)` must hold. Index of `(k, m)` is `k·|M| + m`.
pub fn semidirect_product(k: &Group, m: &Group, action: &[Vec<Elem>]) -> Result<Group> {
    let (nk, nm) = (k.order(), m.order());
    if action.len() != nm {
        return Err(out_of_range(format!(
            "action table has {} rows, acting group has order {nm}",
            action.len()
        )));
    }
    for (mi, row) in action.iter().enumerate() {
        let mut seen = vec![false; nk];
        let bijective = row.len() == nk
            && row
                .iter()
                .all(|&x| x < nk && !std::mem::replace(&mut seen[x], true));
        if !bijective {
            return Err(GroupError::NotAnAutomorphism { element: mi });
        }
        for a in 0..nk {
            for b in 0..nk {
                if row[k.mul(a, b)] != k.mul(row[a], row[b]) {
                    return Err(GroupError::NotAnAutomorphism { element: mi });
                }
            }
        }
    }
    for m1 in 0..nm {
        for m2 in 0..nm {
            let prod = &action[m.mul(m1, m2)];
            if (0..nk).any(|x| prod[x] != action[m1][action[m2][x]]) {
                return Err(GroupError::NotAnAction(m1, m2));
            }
        }
    }
    table_from_fn(nk * nm, format!("{} : {}", k.label(), m.label()), |a, b| {
        let (k1, m1) = (a / nm, a % nm);
        let (k2, m2) = (b / nm, b % nm);
        k.mul(k1, action[m1][k2]) * nm + m.mul(m1, m2)
    })
}

/// The wreath-type group `G = K ⋊ M` over `GF(p)` together with the
/// subgroup `H = K ⋊ F` and the distinguished element `a`.
#[derive(Debug, Clone)]
pub struct WreathExample {
    pub g: Group,
    /// `K ⋊ F`, the regular wreath product `C_p ≀ C_p`.
    pub h: Subgroup,
    /// The base group `K = C_p^p`.
    pub base: Subgroup,
    /// `(c, 1, …, 1)`.
    pub a: Elem,
}

/// `K = C_p^p` is indexed by `GF(p)` and stored as exponent vectors; the
/// affine group `M = {x ↦ mx + t}` acts by `f ↦ f ∘ μ⁻¹`. Translations act as
/// the regular coordinate shift, the units by coordinate scaling.
pub fn example21_groups(p: usize, max_order: usize) -> Result<WreathExample> {
    require_prime(p)?;
    let order = p
        .checked_pow(p as u32)
        .and_then(|x| x.checked_mul(p * (p - 1)))
        .ok_or_else(|| out_of_range("example21 order overflows"))?;
    if order > max_order {
        return Err(out_of_range(format!(
            "example21({p}) has order {order}, above the cap {max_order}"
        )));
    }
    let nk = p.pow(p as u32);
    let encode = |f: &[usize]| f.iter().fold(0, |acc, &x| acc * p + x);
    let decode = |mut e: usize| {
        let mut f = vec![0; p];
        for x in (0..p).rev() {
            f[x] = e % p;
            e /= p;
        }
        f
    };
    let base = table_from_fn(nk, format!("C{p}^{p}"), |a, b| {
        let (fa, fb) = (decode(a), decode(b));
        let s: Vec<usize> = fa.iter().zip(&fb).map(|(x, y)| (x + y) % p).collect();
        encode(&s)
    })?;
    let (tk, tm, taction) = affine_parts(p)?;
    let affine = semidirect_product(&tk, &tm, &taction)?.with_label(format!("AGL(1,{p})"));
    let nm = affine.order();
    // affine index t·(p−1) + (m−1) is the map x ↦ m·x + t
    let affine_map = |idx: usize| (idx / (p - 1), idx % (p - 1) + 1);
    let action: Vec<Vec<Elem>> = (0..nm)
        .map(|mu| {
            let (t, m) = affine_map(affine.inv(mu));
            (0..nk)
                .map(|e| {
                    let f = decode(e);
                    let g: Vec<usize> = (0..p).map(|x| f[(m * x + t) % p]).collect();
                    encode(&g)
                })
                .collect()
        })
        .collect();
    let g = semidirect_product(&base, &affine, &action)?.with_label(format!("example21({p})"));
    let translations: Vec<Elem> = (0..nm).filter(|&mu| affine_map(mu).1 == 1).collect();
    let h_set = g.set_of((0..nk).flat_map(|k| translations.iter().map(move |&t| k * nm + t)))?;
    let h = Subgroup::new(&g, h_set)?;
    let base_set = g.set_of((0..nk).map(|k| k * nm))?;
    let base_sub = Subgroup::new(&g, base_set)?;
    let mut e0 = vec![0; p];
    e0[0] = 1;
    let a = encode(&e0) * nm;
    Ok(WreathExample {
        g,
        h,
        base: base_sub,
        a,
    })
}

/// Declarative description of a group, as read from JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum GroupSpec {
    Named {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        p: Option<usize>,
    },
    Permutation {
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
    Direct {
        components: Vec<GroupSpec>,
    },
    Semidirect {
        normal: Box<GroupSpec>,
        acting: Box<GroupSpec>,
        action: Vec<Vec<usize>>,
    },
    Table {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        label: Option<String>,
    },
}

const FAMILIES: &[(&str, Param)] = &[
    ("cyclic", Param::N),
    ("dihedral", Param::N),
    ("symmetric", Param::N),
    ("alternating", Param::N),
    ("quaternion8", Param::None),
    ("extraspecial_p3", Param::P),
    ("frobenius", Param::P),
    ("units", Param::P),
    ("example21", Param::P),
];

#[derive(Clone, Copy)]
enum Param {
    None,
    N,
    P,
}

impl GroupSpec {
    pub fn named(name: &str, n: Option<usize>, p: Option<usize>) -> GroupSpec {
        GroupSpec::Named {
            name: name.to_string(),
            n,
            p,
        }
    }

    pub fn cyclic(n: usize) -> GroupSpec {
        GroupSpec::named("cyclic", Some(n), None)
    }

    pub fn dihedral(n: usize) -> GroupSpec {
        GroupSpec::named("dihedral", Some(n), None)
    }

    pub fn symmetric(n: usize) -> GroupSpec {
        GroupSpec::named("symmetric", Some(n), None)
    }

    pub fn alternating(n: usize) -> GroupSpec {
        GroupSpec::named("alternating", Some(n), None)
    }

    pub fn prime_family(name: &str, p: usize) -> GroupSpec {
        GroupSpec::named(name, None, Some(p))
    }

    pub fn direct(components: Vec<GroupSpec>) -> GroupSpec {
        GroupSpec::Direct { components }
    }

    /// Checks family names, parameter presence and ranges, and primality.
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupSpec::Named { name, n, p } => {
                let (_, param) = FAMILIES
                    .iter()
                    .find(|(f, _)| f == name)
                    .ok_or_else(|| GroupError::UnknownFamily(name.clone()))?;
                match param {
                    Param::None => Ok(()),
                    Param::N => {
                        let n = n.ok_or_else(|| out_of_range(format!("{name} needs \"n\"")))?;
                        let max = match name.as_str() {
                            "symmetric" | "alternating" => 6,
                            _ => usize::MAX,
                        };
                        if n == 0 || n > max {
                            return Err(out_of_range(format!("{name}: n = {n}")));
                        }
                        Ok(())
                    }
                    Param::P => {
                        let p = p.ok_or_else(|| out_of_range(format!("{name} needs \"p\"")))?;
                        require_prime(p)?;
                        if name == "extraspecial_p3" && p == 2 {
                            return Err(out_of_range("extraspecial_p3 needs an odd prime"));
                        }
                        Ok(())
                    }
                }
            }
            GroupSpec::Permutation { degree, .. } if *degree == 0 => {
                Err(out_of_range("permutation degree must be positive"))
            }
            GroupSpec::Permutation { .. } | GroupSpec::Table { .. } => Ok(()),
            GroupSpec::Direct { components } => {
                if components.is_empty() {
                    return Err(out_of_range("direct product needs components"));
                }
                components.iter().try_for_each(GroupSpec::validate)
            }
            GroupSpec::Semidirect { normal, acting, .. } => {
                normal.validate()?;
                acting.validate()
            }
        }
    }

    /// Short human-readable name, used as the group label.
    pub fn label(&self) -> String {
        match self {
            GroupSpec::Named { name, n, p } => match (n, p) {
                (Some(n), _) => format!("{name}({n})"),
                (None, Some(p)) => format!("{name}({p})"),
                (None, None) => name.clone(),
            },
            GroupSpec::Permutation { degree, generators } => {
                format!("perm(degree {degree}, gens {generators:?})")
            }
            GroupSpec::Direct { components } => components
                .iter()
                .map(GroupSpec::label)
                .collect::<Vec<_>>()
                .join(" x "),
            GroupSpec::Semidirect { normal, acting, .. } => {
                format!("({}) : ({})", normal.label(), acting.label())
            }
            GroupSpec::Table { table, label } => label
                .clone()
                .unwrap_or_else(|| format!("table(order {})", table.len())),
        }
    }

    pub fn build(&self, max_order: usize) -> Result<Group> {
        self.validate()?;
        let g = match self {
            GroupSpec::Named { name, n, p } => {
                let n = n.unwrap_or(0);
                let p = p.unwrap_or(0);
                let expected = match name.as_str() {
                    "cyclic" => Some(n),
                    "dihedral" => Some(n.saturating_mul(2)),
                    "extraspecial_p3" => Some(p.saturating_pow(3)),
                    "frobenius" => Some(p.saturating_mul(p - 1)),
                    "units" => Some(p - 1),
                    _ => None,
                };
                if expected.is_some_and(|o| o > max_order) {
                    return Err(GroupError::OrderCapExceeded { cap: max_order });
                }
                match name.as_str() {
                    "cyclic" => cyclic(n)?,
                    "dihedral" => dihedral(n)?,
                    "symmetric" => symmetric(n)?,
                    "alternating" => alternating(n)?,
                    "quaternion8" => quaternion8()?,
                    "extraspecial_p3" => extraspecial_p3(p, max_order)?,
                    "frobenius" => frobenius(p)?,
                    "units" => units_mod(p)?,
                    "example21" => example21_groups(p, max_order)?.g,
                    other => return Err(GroupError::UnknownFamily(other.to_string())),
                }
            }
            GroupSpec::Permutation { degree, generators } => {
                from_permutations(*degree, generators, max_order)?
            }
            GroupSpec::Direct { components } => {
                let mut acc = components[0].build(max_order)?;
                for c in &components[1..] {
                    let h = c.build(max_order)?;
                    if acc.order().saturating_mul(h.order()) > max_order {
                        return Err(GroupError::OrderCapExceeded { cap: max_order });
                    }
                    acc = direct_product(&acc, &h)?;
                }
                acc
            }
            GroupSpec::Semidirect {
                normal,
                acting,
                action,
            } => {
                let k = normal.build(max_order)?;
                let m = acting.build(max_order)?;
                if k.order().saturating_mul(m.order()) > max_order {
                    return Err(GroupError::OrderCapExceeded { cap: max_order });
                }
                semidirect_product(&k, &m, action)?
            }
            GroupSpec::Table { table, .. } => {
                if table.len() > max_order {
                    return Err(GroupError::OrderCapExceeded { cap: max_order });
                }
                Group::from_table(table, "")?
            }
        };
        if g.order() > max_order {
            return Err(GroupError::OrderCapExceeded { cap: max_order });
        }
        Ok(g.with_label(self.label()))
    }
}

fn parse_error(e: serde_json::Error, line_offset: usize) -> GroupError {
    GroupError::Parse {
        line: e.line() + line_offset,
        column: e.column(),
        message: e.to_string(),
    }
}

/// Parses and validates one group spec.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let spec: GroupSpec = serde_json::from_str(text).map_err(|e| parse_error(e, 0))?;
    spec.validate()?;
    Ok(spec)
}

/// Parses a corpus file: a single spec, a JSON array of specs, or JSON lines
/// (blank lines and lines starting with `#` are ignored).
pub fn parse_corpus(text: &str) -> Result<Vec<GroupSpec>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        let specs: Vec<GroupSpec> = serde_json::from_str(text).map_err(|e| parse_error(e, 0))?;
        specs.iter().try_for_each(GroupSpec::validate)?;
        return Ok(specs);
    }
    if let Ok(spec) = serde_json::from_str::<GroupSpec>(text) {
        spec.validate()?;
        return Ok(vec![spec]);
    }
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let spec: GroupSpec = serde_json::from_str(line).map_err(|e| parse_error(e, i))?;
        spec.validate()?;
        out.push(spec);
    }
    Ok(out)
}
