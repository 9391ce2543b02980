//! Subgroup machinery: centralizers, centers, cores, normal closures,
//! derived/chief/upper-central series, quotients and the `C_N` subgroup.

use std::collections::HashSet;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::classes::partition;
use crate::error::{GroupError, Result};
use crate::group::{Elem, ElementSet, Group, Subgroup, SubgroupBuilder};

/// Derived length, with non-solvable sections ordered above every finite length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DerivedLength {
    Solvable(usize),
    /// The derived series stabilized before reaching the target subgroup.
    NotSolvable,
}

impl DerivedLength {
    pub fn value(self) -> Option<usize> {
        match self {
            DerivedLength::Solvable(d) => Some(d),
            DerivedLength::NotSolvable => None,
        }
    }

    pub fn is_solvable(self) -> bool {
        matches!(self, DerivedLength::Solvable(_))
    }

    pub fn plus(self, k: usize) -> DerivedLength {
        match self {
            DerivedLength::Solvable(d) => DerivedLength::Solvable(d + k),
            DerivedLength::NotSolvable => DerivedLength::NotSolvable,
        }
    }
}

impl fmt::Display for DerivedLength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivedLength::Solvable(d) => write!(f, "{d}"),
            DerivedLength::NotSolvable => f.write_str("nonsolvable"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    Derived,
    Chief,
    UpperCentral,
}

/// A subgroup series. Derived series are descending; chief and upper
/// central series ascend from the trivial subgroup.
#[derive(Debug, Clone)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subgroup>,
    /// `|terms[i]| / |terms[i+1]|` (descending) or the reverse ratio (ascending).
    pub factor_orders: Vec<usize>,
    /// Whether the series runs all the way between `{e}` and the top group.
    pub complete: bool,
}

fn factor_orders(terms: &[Subgroup]) -> Vec<usize> {
    terms
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0].order(), w[1].order());
            if a >= b {
                a / b
            } else {
                b / a
            }
        })
        .collect()
}

fn same_group(g: &Group, h: &Subgroup) -> Result<()> {
    if h.set().group_id() == g.id() {
        Ok(())
    } else {
        Err(GroupError::NotASubgroup(
            "subgroup of a different group".into(),
        ))
    }
}

/// `C_G(a)`.
pub fn centralizer(g: &Group, a: Elem) -> Subgroup {
    let set = {
        let mut s = g.empty_set();
        for x in g.elements() {
            if g.mul(a, x) == g.mul(x, a) {
                s.insert(x);
            }
        }
        s
    };
    Subgroup::from_closed_set(g, set)
}

/// Elements of `within` commuting with every element of `x`.
pub fn centralizer_in(g: &Group, within: &Subgroup, x: &ElementSet) -> Result<Subgroup> {
    if x.is_empty() {
        return Err(GroupError::EmptySet);
    }
    if x.group_id() != g.id() {
        return Err(GroupError::AmbientMismatch);
    }
    // centralizing a generating set of ⟨X⟩ is enough
    let gens = g.closure(x.iter()).gens().to_vec();
    let mut s = g.empty_set();
    for h in within.iter() {
        if gens.iter().all(|&y| g.mul(h, y) == g.mul(y, h)) {
            s.insert(h);
        }
    }
    Ok(Subgroup::from_closed_set(g, s))
}

/// `C_G(X) = { g : x^g = x for all x ∈ X }`.
pub fn centralizer_of_set(g: &Group, x: &ElementSet) -> Result<Subgroup> {
    centralizer_in(g, &g.whole(), x)
}

pub fn center(g: &Group) -> Subgroup {
    let mut s = g.empty_set();
    let gens = g.generators();
    for x in g.elements() {
        if gens.iter().all(|&y| g.mul(x, y) == g.mul(y, x)) {
            s.insert(x);
        }
    }
    Subgroup::from_closed_set(g, s)
}

/// `Z(H)` for a subgroup `H`.
pub fn center_of(g: &Group, h: &Subgroup) -> Subgroup {
    centralizer_in(g, h, h.set()).expect("subgroups are nonempty")
}

/// `Z₂(G) = { a : [a, g] ∈ Z(G) for all g }`.
pub fn second_center(g: &Group) -> Subgroup {
    let z = center(g);
    let gens = g.generators();
    let mut s = g.empty_set();
    for a in g.elements() {
        if gens.iter().all(|&y| z.contains(g.commutator(a, y))) {
            s.insert(a);
        }
    }
    Subgroup::from_closed_set(g, s)
}

/// Upper central series `{e} = Z₀ ≤ Z₁ ≤ …` until it stabilizes.
pub fn upper_central_series(g: &Group) -> SeriesReport {
    let gens = g.generators();
    let mut terms = vec![g.trivial_subgroup()];
    loop {
        let prev = terms.last().unwrap();
        let mut s = g.empty_set();
        for a in g.elements() {
            if gens.iter().all(|&y| prev.contains(g.commutator(a, y))) {
                s.insert(a);
            }
        }
        if s.len() == prev.order() {
            break;
        }
        terms.push(Subgroup::from_closed_set(g, s));
    }
    SeriesReport {
        kind: SeriesKind::UpperCentral,
        factor_orders: factor_orders(&terms),
        complete: terms.last().unwrap().order() == g.order(),
        terms,
    }
}

pub fn is_normal(g: &Group, h: &Subgroup) -> Result<bool> {
    is_normal_in(g, &g.whole(), h)
}

/// Whether `h` is normalized by `ambient` (which must contain it).
pub fn is_normal_in(g: &Group, ambient: &Subgroup, h: &Subgroup) -> Result<bool> {
    same_group(g, h)?;
    if !h.is_subgroup_of(ambient) {
        return Err(GroupError::NotASubgroup(
            "not contained in the ambient subgroup".into(),
        ));
    }
    Ok(ambient
        .gens()
        .iter()
        .all(|&t| h.gens().iter().all(|&x| h.contains(g.conjugate(x, t)))))
}

fn require_normal(g: &Group, n: &Subgroup) -> Result<()> {
    if is_normal(g, n)? {
        Ok(())
    } else {
        Err(GroupError::NotNormal)
    }
}

fn close_normally(g: &Group, ambient_gens: &[Elem], b: &mut SubgroupBuilder<'_>) {
    let mut i = 0;
    while i < b.gens_len() {
        let x = b.gen(i);
        for &t in ambient_gens {
            b.add(g.conjugate(x, t));
        }
        i += 1;
    }
}

/// Smallest normal subgroup of `G` containing `s`.
pub fn normal_closure(g: &Group, s: &ElementSet) -> Result<Subgroup> {
    normal_closure_in(g, &g.whole(), s)
}

/// Smallest subgroup containing `s` normalized by `ambient`.
pub fn normal_closure_in(g: &Group, ambient: &Subgroup, s: &ElementSet) -> Result<Subgroup> {
    if s.group_id() != g.id() {
        return Err(GroupError::AmbientMismatch);
    }
    let mut b = SubgroupBuilder::new(g);
    for x in s.iter() {
        b.add(x);
    }
    close_normally(g, ambient.gens(), &mut b);
    Ok(b.finish())
}

/// Normal closure of `base ∪ {x}`, for `base` already normal in `G`.
fn normal_closure_over(g: &Group, base: &Subgroup, x: Elem) -> Subgroup {
    let mut b = SubgroupBuilder::from_subgroup(g, base);
    b.add(x);
    close_normally(g, g.generators(), &mut b);
    b.finish()
}

/// `core_G(H) = ∩_g H^g`, the largest normal subgroup of `G` inside `H`.
///
/// Computed as the union of the classes of `G` lying entirely inside `H`:
/// `h ∈ ∩_g H^g` iff `h^G ⊆ H`.
pub fn core(g: &Group, h: &Subgroup) -> Result<Subgroup> {
    same_group(g, h)?;
    let part = partition(g);
    let mut s = g.empty_set();
    for c in part.classes() {
        if c.members().is_subset(h.set()) {
            s.union_with(c.members());
        }
    }
    let out = Subgroup::from_closed_set(g, s);
    debug_assert!(is_normal(g, &out).unwrap());
    Ok(out)
}

/// `core_H(K)` for `K ≤ H`: elements of `K` whose whole `H`-conjugation orbit stays in `K`.
pub fn core_in(g: &Group, ambient: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
    same_group(g, k)?;
    if !k.is_subgroup_of(ambient) {
        return Err(GroupError::NotASubgroup(
            "not contained in the ambient subgroup".into(),
        ));
    }
    let n = g.order();
    let mut decided = FixedBitSet::with_capacity(n);
    let mut s = g.empty_set();
    let mut orbit = Vec::new();
    for x in k.iter() {
        if decided.contains(x) {
            continue;
        }
        orbit.clear();
        orbit.push(x);
        decided.insert(x);
        let mut inside = true;
        let mut i = 0;
        while i < orbit.len() {
            for &t in ambient.gens() {
                let y = g.conjugate(orbit[i], t);
                if !decided.contains(y) {
                    decided.insert(y);
                    orbit.push(y);
                    inside &= k.contains(y);
                }
            }
            i += 1;
        }
        if inside {
            for &y in &orbit {
                s.insert(y);
            }
        }
    }
    Ok(Subgroup::from_closed_set(g, s))
}

/// `[H, H]`: the normal closure in `H` of commutators of generator pairs.
pub fn derived_subgroup(g: &Group, h: &Subgroup) -> Result<Subgroup> {
    same_group(g, h)?;
    let gens = h.gens();
    let mut b = SubgroupBuilder::new(g);
    for (i, &x) in gens.iter().enumerate() {
        for &y in &gens[i + 1..] {
            b.add(g.commutator(x, y));
        }
    }
    close_normally(g, gens, &mut b);
    Ok(b.finish())
}

/// Derived series `H ⊇ [H,H] ⊇ …`, stopping at `{e}` or where it stabilizes.
pub fn derived_series(g: &Group, h: &Subgroup) -> Result<SeriesReport> {
    same_group(g, h)?;
    let mut terms = vec![h.clone()];
    loop {
        let last = terms.last().unwrap();
        if last.is_trivial() {
            break;
        }
        let next = derived_subgroup(g, last)?;
        if next.order() == last.order() {
            break;
        }
        terms.push(next);
    }
    Ok(SeriesReport {
        kind: SeriesKind::Derived,
        factor_orders: factor_orders(&terms),
        complete: terms.last().unwrap().is_trivial(),
        terms,
    })
}

pub fn derived_length(g: &Group) -> DerivedLength {
    relative_derived_length(g, &g.trivial_subgroup()).expect("trivial subgroup is normal")
}

/// `dl(G/N)`: least `i` with `G^(i) ⊆ N`, without building the quotient.
pub fn relative_derived_length(g: &Group, n: &Subgroup) -> Result<DerivedLength> {
    require_normal(g, n)?;
    derived_steps_into(g, g.whole(), n)
}

/// `dl(H/K)` for `K` normal in `H`.
pub fn relative_derived_length_in(g: &Group, h: &Subgroup, k: &Subgroup) -> Result<DerivedLength> {
    if !is_normal_in(g, h, k)? {
        return Err(GroupError::NotNormal);
    }
    derived_steps_into(g, h.clone(), k)
}

fn derived_steps_into(g: &Group, top: Subgroup, target: &Subgroup) -> Result<DerivedLength> {
    let mut d = top;
    let mut steps = 0;
    while !d.is_subgroup_of(target) {
        let next = derived_subgroup(g, &d)?;
        if next.order() == d.order() {
            return Ok(DerivedLength::NotSolvable);
        }
        d = next;
        steps += 1;
    }
    Ok(DerivedLength::Solvable(steps))
}

/// `G/N` with the natural projection and a least-index lift of every coset.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: Group,
    /// `projection[g]` is the coset index of `gN`.
    pub projection: Vec<Elem>,
    /// `lifts[i]` is the least element of coset `i`.
    pub lifts: Vec<Elem>,
}

impl Quotient {
    pub fn project(&self, x: Elem) -> Elem {
        self.projection[x]
    }

    /// Image `ρ(S)` of a set of `G`.
    pub fn project_set(&self, s: &ElementSet) -> ElementSet {
        let mut out = self.group.empty_set();
        for x in s.iter() {
            out.insert(self.projection[x]);
        }
        out
    }
}

pub fn quotient(g: &Group, n: &Subgroup) -> Result<Quotient> {
    require_normal(g, n)?;
    let mut projection = vec![usize::MAX; g.order()];
    let mut lifts = Vec::new();
    for x in g.elements() {
        if projection[x] != usize::MAX {
            continue;
        }
        let idx = lifts.len();
        lifts.push(x);
        for y in n.iter() {
            projection[g.mul(x, y)] = idx;
        }
    }
    let m = lifts.len();
    let mut flat = Vec::with_capacity(m * m);
    for &a in &lifts {
        for &b in &lifts {
            flat.push(projection[g.mul(a, b)] as u32);
        }
    }
    let group = Group::from_trusted(m, flat, format!("{} / N(order {})", g.label(), n.order()))?;
    Ok(Quotient {
        group,
        projection,
        lifts,
    })
}

/// `C_N = { g : [a, g] ∈ N }`, the preimage of `C_{G/N}(aN)`.
pub fn cn_subgroup(g: &Group, a: Elem, n: &Subgroup) -> Result<Subgroup> {
    g.check_index(a)?;
    require_normal(g, n)?;
    let mut s = g.empty_set();
    for x in g.elements() {
        if n.contains(g.commutator(a, x)) {
            s.insert(x);
        }
    }
    Ok(Subgroup::from_closed_set(g, s))
}

/// Distinct normal closures of single elements, in order of first appearance
/// (one element per conjugacy class is enough).
pub fn element_normal_closures(g: &Group) -> Vec<Subgroup> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for c in partition(g).classes() {
        let n = normal_closure(g, &g.singleton(c.representative())).expect("same group");
        if seen.insert(n.set().clone()) {
            out.push(n);
        }
    }
    out
}

/// Minimal normal subgroups of `G`, ordered by least nonidentity element.
pub fn minimal_normal_subgroups(g: &Group) -> Vec<Subgroup> {
    let closures = element_normal_closures(g);
    let mut mins: Vec<Subgroup> = closures
        .iter()
        .filter(|m| !m.is_trivial())
        .filter(|m| {
            !closures
                .iter()
                .any(|k| !k.is_trivial() && k.order() < m.order() && k.is_subgroup_of(m))
        })
        .cloned()
        .collect();
    mins.sort_by_key(|m| m.iter().nth(1));
    mins
}

/// Chief series `{e} = N₀ < N₁ < … < N_k = G`.
///
/// Each step takes, among normal closures `⟨N_i, x⟩^G` for `x ∉ N_i`, one of
/// least order, ties broken by least `x`.
pub fn chief_series(g: &Group) -> SeriesReport {
    let part = partition(g);
    let mut terms = vec![g.trivial_subgroup()];
    while terms.last().unwrap().order() < g.order() {
        let current = terms.last().unwrap();
        let mut done = current.set().clone();
        let mut best: Option<Subgroup> = None;
        for x in g.elements() {
            if done.contains(x) {
                continue;
            }
            let m = normal_closure_over(g, current, x);
            for y in part.class_of(x).members().iter() {
                for c in current.iter() {
                    done.insert(g.mul(y, c));
                }
            }
            if best.as_ref().is_none_or(|b| m.order() < b.order()) {
                best = Some(m);
            }
        }
        terms.push(best.expect("a proper normal subgroup has an element outside it"));
    }
    SeriesReport {
        kind: SeriesKind::Chief,
        factor_orders: factor_orders(&terms),
        complete: true,
        terms,
    }
}

pub fn is_solvable(g: &Group) -> bool {
    derived_length(g).is_solvable()
}

/// Every chief factor has prime order.
pub fn is_supersolvable(g: &Group) -> bool {
    is_solvable(g)
        && chief_series(g)
            .factor_orders
            .iter()
            .all(|&o| crate::constructions::is_prime(o))
}

/// Every normal subgroup, by closing element normal closures under joins.
/// Intended for small groups.
pub fn normal_subgroups_exhaustive(g: &Group) -> Vec<Subgroup> {
    join_closure(g, element_normal_closures(g), |g, a, b| {
        let mut s = a.set().clone();
        s.union_with(b.set());
        normal_closure(g, &s).expect("same group")
    })
}

/// Every subgroup, by closing cyclic subgroups under joins. Intended for
/// small groups.
pub fn subgroups_exhaustive(g: &Group) -> Vec<Subgroup> {
    let mut seen = HashSet::new();
    let mut cyclic = Vec::new();
    for x in g.elements() {
        let c = g.closure([x]);
        if seen.insert(c.set().clone()) {
            cyclic.push(c);
        }
    }
    join_closure(g, cyclic, |g, a, b| a.join(g, b))
}

fn join_closure(
    g: &Group,
    seeds: Vec<Subgroup>,
    join: impl Fn(&Group, &Subgroup, &Subgroup) -> Subgroup,
) -> Vec<Subgroup> {
    let mut seen: HashSet<ElementSet> = seeds.iter().map(|s| s.set().clone()).collect();
    let mut all = seeds;
    let atoms = all.len();
    let mut i = 0;
    while i < all.len() {
        for j in 0..atoms {
            if all[j].is_subgroup_of(&all[i]) {
                continue;
            }
            let k = join(g, &all[i], &all[j]);
            if seen.insert(k.set().clone()) {
                all.push(k);
            }
        }
        i += 1;
    }
    all.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.set().to_vec().cmp(&b.set().to_vec()))
    });
    all
}
