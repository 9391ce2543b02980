//! Dense multiplication-table groups, element sets and subgroups.
//!
//! Elements are indices `0..order` with the identity always at index 0.
//! Conjugation is written on the right, `a^g = g⁻¹·a·g`, and the commutator
//! is `[a, g] = a⁻¹·a^g = a⁻¹g⁻¹ag`, so that `a^G = a·[a, G]` holds pointwise.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};

use crate::classes::ClassPartition;
use crate::error::{GroupError, Result};

/// Element index inside a [`Group`].
pub type Elem = usize;

/// Orders up to this bound get an exhaustive associativity check.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 512;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed)
}

/// A finite group given by its multiplication table.
///
/// Immutable after construction. Derived data (a generating set and the
/// conjugacy-class partition) is computed lazily behind `OnceLock`, so a
/// `Group` can be shared freely across threads.
#[derive(Clone)]
pub struct Group {
    id: u64,
    order: usize,
    mult: Vec<u32>,
    inv: Vec<u32>,
    label: String,
    generators: OnceLock<Vec<Elem>>,
    classes: OnceLock<ClassPartition>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("label", &self.label)
            .field("order", &self.order)
            .finish()
    }
}

impl Group {
    /// Validates a multiplication table and builds a group from it.
    ///
    /// If the identity is not at index 0 it is swapped with element 0, so
    /// indices in the returned group may differ from the input table.
    pub fn from_table(table: &[Vec<usize>], label: impl Into<String>) -> Result<Group> {
        let n = table.len();
        if n == 0 {
            return Err(not_a_group("empty table", None));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (r, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(not_a_group(
                    &format!("row {r} has length {} instead of {n}", row.len()),
                    None,
                ));
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(not_a_group(
                        &format!("entry {v} out of range"),
                        Some([r, c, v]),
                    ));
                }
                flat.push(v as u32);
            }
        }
        check_latin(n, &flat)?;
        let e = (0..n)
            .find(|&x| {
                (0..n).all(|y| flat[x * n + y] as usize == y && flat[y * n + x] as usize == y)
            })
            .ok_or_else(|| not_a_group("no two-sided identity", None))?;
        if e != 0 {
            flat = relabel_swap(n, &flat, 0, e);
        }
        let inv = derive_inverses(n, &flat)?;
        check_associative(n, &flat)?;
        Ok(Group::from_parts(n, flat, inv, label.into()))
    }

    /// Builds a group from a table that is associative by construction
    /// (direct/semidirect products, permutation closures, matrix models).
    ///
    /// Identity placement, the Latin-square property and inverses are still
    /// checked; associativity is not.
    pub(crate) fn from_trusted(n: usize, flat: Vec<u32>, label: String) -> Result<Group> {
        debug_assert_eq!(flat.len(), n * n);
        if !(0..n).all(|y| flat[y] as usize == y && flat[y * n] as usize == y) {
            return Err(not_a_group("index 0 is not the identity", None));
        }
        check_latin(n, &flat)?;
        let inv = derive_inverses(n, &flat)?;
        Ok(Group::from_parts(n, flat, inv, label))
    }

    fn from_parts(order: usize, mult: Vec<u32>, inv: Vec<u32>, label: String) -> Group {
        Group {
            id: fresh_id(),
            order,
            mult,
            inv,
            label,
            generators: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    /// Re-runs every table invariant, including the full associativity check
    /// (sampled above [`FULL_ASSOCIATIVITY_LIMIT`]).
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(not_a_group("identity law", Some([0, x, x])));
            }
            if self.mul(x, self.inv(x)) != 0 || self.mul(self.inv(x), x) != 0 {
                return Err(not_a_group("inverse law", Some([x, self.inv(x), 0])));
            }
        }
        check_latin(n, &self.mult)?;
        check_associative(n, &self.mult)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Group {
        self.label = label.into();
        self
    }

    pub const fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mult[a * self.order + b] as Elem
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inv[a] as Elem
    }

    /// `a^g = g⁻¹ a g`.
    #[inline]
    pub fn conjugate(&self, a: Elem, g: Elem) -> Elem {
        self.mul(self.inv(g), self.mul(a, g))
    }

    /// `[a, g] = a⁻¹ a^g`, so `a · [a, g] = a^g`.
    #[inline]
    pub fn commutator(&self, a: Elem, g: Elem) -> Elem {
        self.mul(self.inv(a), self.conjugate(a, g))
    }

    pub fn check_index(&self, a: Elem) -> Result<Elem> {
        if a < self.order {
            Ok(a)
        } else {
            Err(GroupError::IndexOutOfRange {
                index: a,
                order: self.order,
            })
        }
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().enumerate().all(|(i, &x)| {
            gens[i + 1..]
                .iter()
                .all(|&y| self.mul(x, y) == self.mul(y, x))
        })
    }

    /// A small generating set, chosen greedily in index order.
    pub fn generators(&self) -> &[Elem] {
        self.generators.get_or_init(|| {
            let mut b = SubgroupBuilder::new(self);
            for x in self.elements() {
                if b.len() == self.order {
                    break;
                }
                b.add(x);
            }
            b.gens
        })
    }

    pub(crate) fn class_cache(&self) -> &OnceLock<ClassPartition> {
        &self.classes
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet {
            group: self.id,
            bits: FixedBitSet::with_capacity(self.order),
        }
    }

    pub fn full_set(&self) -> ElementSet {
        let mut s = self.empty_set();
        s.bits.insert_range(..);
        s
    }

    pub fn singleton(&self, a: Elem) -> ElementSet {
        let mut s = self.empty_set();
        s.bits.insert(a);
        s
    }

    pub fn set_of<I: IntoIterator<Item = Elem>>(&self, elems: I) -> Result<ElementSet> {
        let mut s = self.empty_set();
        for x in elems {
            s.bits.insert(self.check_index(x)?);
        }
        Ok(s)
    }

    fn owns(&self, x: &ElementSet) -> Result<()> {
        if x.group == self.id {
            Ok(())
        } else {
            Err(GroupError::AmbientMismatch)
        }
    }

    fn owns_nonempty(&self, x: &ElementSet) -> Result<()> {
        self.owns(x)?;
        if x.is_empty() {
            Err(GroupError::EmptySet)
        } else {
            Ok(())
        }
    }

    /// `XY = { xy : x ∈ X, y ∈ Y }`.
    pub fn product_set(&self, x: &ElementSet, y: &ElementSet) -> Result<ElementSet> {
        self.owns_nonempty(x)?;
        self.owns_nonempty(y)?;
        let ys: Vec<Elem> = y.iter().collect();
        let mut out = self.empty_set();
        for a in x.iter() {
            let row = &self.mult[a * self.order..(a + 1) * self.order];
            for &b in &ys {
                out.bits.insert(row[b] as usize);
            }
        }
        Ok(out)
    }

    pub fn inverse_set(&self, x: &ElementSet) -> Result<ElementSet> {
        self.owns_nonempty(x)?;
        let mut out = self.empty_set();
        for a in x.iter() {
            out.bits.insert(self.inv(a));
        }
        Ok(out)
    }

    /// `X^g = { g⁻¹xg : x ∈ X }`.
    pub fn conjugate_set(&self, x: &ElementSet, g: Elem) -> Result<ElementSet> {
        self.owns(x)?;
        let mut out = self.empty_set();
        for a in x.iter() {
            out.bits.insert(self.conjugate(a, g));
        }
        Ok(out)
    }

    /// `[a, S] = { [a, s] : s ∈ S }`.
    pub fn commutator_set(&self, a: Elem, s: &ElementSet) -> Result<ElementSet> {
        self.owns_nonempty(s)?;
        let mut out = self.empty_set();
        for g in s.iter() {
            out.bits.insert(self.commutator(a, g));
        }
        Ok(out)
    }

    /// Left translate `aX`.
    pub fn translate_left(&self, a: Elem, x: &ElementSet) -> Result<ElementSet> {
        self.owns(x)?;
        let mut out = self.empty_set();
        for b in x.iter() {
            out.bits.insert(self.mul(a, b));
        }
        Ok(out)
    }

    /// Right translate `Xa`.
    pub fn translate_right(&self, x: &ElementSet, a: Elem) -> Result<ElementSet> {
        self.owns(x)?;
        let mut out = self.empty_set();
        for b in x.iter() {
            out.bits.insert(self.mul(b, a));
        }
        Ok(out)
    }

    /// The subgroup generated by `gens`.
    pub fn closure<I: IntoIterator<Item = Elem>>(&self, gens: I) -> Subgroup {
        let mut b = SubgroupBuilder::new(self);
        for s in gens {
            b.add(s);
        }
        b.finish()
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        SubgroupBuilder::new(self).finish()
    }

    pub fn whole(&self) -> Subgroup {
        let mut b = SubgroupBuilder::new(self);
        for &s in self.generators() {
            b.add(s);
        }
        b.finish()
    }
}

fn not_a_group(reason: &str, witness: Option<[usize; 3]>) -> GroupError {
    GroupError::NotAGroup {
        reason: reason.to_string(),
        witness,
    }
}

fn check_latin(n: usize, flat: &[u32]) -> Result<()> {
    let mut seen = FixedBitSet::with_capacity(n);
    for r in 0..n {
        seen.clear();
        for c in 0..n {
            let v = flat[r * n + c] as usize;
            if seen.put(v) {
                return Err(not_a_group(
                    "row repeats an entry (Latin square)",
                    Some([r, c, v]),
                ));
            }
        }
    }
    for c in 0..n {
        seen.clear();
        for r in 0..n {
            let v = flat[r * n + c] as usize;
            if seen.put(v) {
                return Err(not_a_group(
                    "column repeats an entry (Latin square)",
                    Some([r, c, v]),
                ));
            }
        }
    }
    Ok(())
}

fn derive_inverses(n: usize, flat: &[u32]) -> Result<Vec<u32>> {
    let mut inv = vec![0u32; n];
    for x in 0..n {
        let y = (0..n)
            .find(|&y| flat[x * n + y] == 0)
            .ok_or_else(|| not_a_group("missing right inverse", Some([x, x, 0])))?;
        if flat[y * n + x] != 0 {
            return Err(not_a_group(
                "left and right inverses differ",
                Some([x, y, 0]),
            ));
        }
        inv[x] = y as u32;
    }
    Ok(inv)
}

fn check_associative(n: usize, flat: &[u32]) -> Result<()> {
    let m = |a: usize, b: usize| flat[a * n + b] as usize;
    let fail = |a, b, c| not_a_group("associativity", Some([a, b, c]));
    if n <= FULL_ASSOCIATIVITY_LIMIT {
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(fail(a, b, c));
                    }
                }
            }
        }
    } else {
        let mut rng = StdRng::seed_from_u64(n as u64);
        for _ in 0..10 * n {
            let (a, b, c) = (
                rng.random_range(0..n),
                rng.random_range(0..n),
                rng.random_range(0..n),
            );
            if m(m(a, b), c) != m(a, m(b, c)) {
                return Err(fail(a, b, c));
            }
        }
    }
    Ok(())
}

/// Swaps the labels `i` and `j` throughout a table.
fn relabel_swap(n: usize, flat: &[u32], i: usize, j: usize) -> Vec<u32> {
    let sigma = |x: usize| {
        if x == i {
            j
        } else if x == j {
            i
        } else {
            x
        }
    };
    let mut out = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            out[sigma(a) * n + sigma(b)] = sigma(flat[a * n + b] as usize) as u32;
        }
    }
    out
}

/// A subset of a group's elements, stored as a bit vector keyed by element index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    group: u64,
    bits: FixedBitSet,
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl ElementSet {
    pub fn group_id(&self) -> u64 {
        self.group
    }

    /// Width of the bit vector, i.e. the ambient order.
    pub fn capacity(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.bits.contains(x)
    }

    pub fn insert(&mut self, x: Elem) {
        self.bits.insert(x);
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<Elem> {
        self.bits.minimum()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.group == other.group && self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.bits.is_disjoint(&other.bits)
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        debug_assert_eq!(self.group, other.group);
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        debug_assert_eq!(self.group, other.group);
        self.bits.intersect_with(&other.bits);
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        let mut s = self.clone();
        s.bits.difference_with(&other.bits);
        s
    }
}

/// A subgroup of an ambient [`Group`]: its elements plus a generating set.
#[derive(Clone)]
pub struct Subgroup {
    elements: ElementSet,
    gens: Vec<Elem>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("order", &self.order())
            .field("gens", &self.gens)
            .finish()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state)
    }
}

impl Subgroup {
    /// Checks that `set` contains the identity, is closed, and has order
    /// dividing `|G|`.
    pub fn new(g: &Group, set: ElementSet) -> Result<Subgroup> {
        g.owns(&set)?;
        if !set.contains(0) {
            return Err(GroupError::NotASubgroup("missing identity".into()));
        }
        let mut b = SubgroupBuilder::new(g);
        for x in set.iter() {
            b.add(x);
            if !b.bits.is_subset(&set.bits) {
                return Err(GroupError::NotASubgroup(format!(
                    "not closed: generated by elements up to {x} escapes the set"
                )));
            }
        }
        let h = b.finish();
        if !g.order().is_multiple_of(h.order()) {
            return Err(GroupError::NotASubgroup("order does not divide |G|".into()));
        }
        Ok(h)
    }

    /// Wraps a set already known to be a subgroup; computes a generating set.
    pub(crate) fn from_closed_set(g: &Group, set: ElementSet) -> Subgroup {
        let mut b = SubgroupBuilder::new(g);
        for x in set.iter() {
            if b.len() == set.len() {
                break;
            }
            b.add(x);
        }
        debug_assert_eq!(b.bits, set.bits);
        b.finish()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn set(&self) -> &ElementSet {
        &self.elements
    }

    pub fn into_set(self) -> ElementSet {
        self.elements
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elements.iter()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn intersect(&self, g: &Group, other: &Subgroup) -> Subgroup {
        Subgroup::from_closed_set(g, self.elements.intersection(&other.elements))
    }

    /// The subgroup generated by `self ∪ other`.
    pub fn join(&self, g: &Group, other: &Subgroup) -> Subgroup {
        let mut b = SubgroupBuilder::from_subgroup(g, self);
        for &s in other.gens() {
            b.add(s);
        }
        b.finish()
    }

    /// This subgroup as a group in its own right.
    ///
    /// Returns the new group and the embedding `local index → ambient index`;
    /// local indices follow ambient index order, so the identity stays at 0.
    pub fn to_group(&self, g: &Group, label: impl Into<String>) -> (Group, Vec<Elem>) {
        let embed = self.elements.to_vec();
        let mut local = vec![usize::MAX; g.order()];
        for (i, &x) in embed.iter().enumerate() {
            local[x] = i;
        }
        let m = embed.len();
        let mut flat = Vec::with_capacity(m * m);
        for &x in &embed {
            for &y in &embed {
                flat.push(local[g.mul(x, y)] as u32);
            }
        }
        let h = Group::from_trusted(m, flat, label.into())
            .expect("subgroup of a valid group is a valid group");
        (h, embed)
    }
}

/// Incremental subgroup closure by right-coset enumeration.
///
/// Adding a generator `s ∉ H` extends `H` to `⟨H, s⟩` by adjoining whole
/// right cosets `H·r`, closing the set of coset representatives under right
/// multiplication by all generators so far.
pub(crate) struct SubgroupBuilder<'g> {
    g: &'g Group,
    elems: Vec<Elem>,
    bits: FixedBitSet,
    gens: Vec<Elem>,
}

impl<'g> SubgroupBuilder<'g> {
    pub(crate) fn new(g: &'g Group) -> Self {
        let mut bits = FixedBitSet::with_capacity(g.order());
        bits.insert(0);
        SubgroupBuilder {
            g,
            elems: vec![0],
            bits,
            gens: Vec::new(),
        }
    }

    pub(crate) fn from_subgroup(g: &'g Group, h: &Subgroup) -> Self {
        SubgroupBuilder {
            g,
            elems: h.elements.to_vec(),
            bits: h.elements.bits.clone(),
            gens: h.gens.clone(),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.elems.len()
    }

    pub(crate) fn gens_len(&self) -> usize {
        self.gens.len()
    }

    pub(crate) fn gen(&self, i: usize) -> Elem {
        self.gens[i]
    }

    /// Returns whether the subgroup grew.
    pub(crate) fn add(&mut self, s: Elem) -> bool {
        if self.bits.contains(s) {
            return false;
        }
        self.gens.push(s);
        let base_len = self.elems.len();
        let mut reps = vec![0];
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            for k in 0..self.gens.len() {
                let y = self.g.mul(r, self.gens[k]);
                if !self.bits.contains(y) {
                    self.push_coset(base_len, y);
                    reps.push(y);
                }
            }
            i += 1;
        }
        true
    }

    fn push_coset(&mut self, base_len: usize, r: Elem) {
        for i in 0..base_len {
            let y = self.g.mul(self.elems[i], r);
            debug_assert!(!self.bits.contains(y));
            self.bits.insert(y);
            self.elems.push(y);
        }
    }

    pub(crate) fn finish(self) -> Subgroup {
        Subgroup {
            elements: ElementSet {
                group: self.g.id,
                bits: self.bits,
            },
            gens: self.gens,
        }
    }
}
