//! Brute-force recomputations straight from the definitions.
//!
//! These share no shortcuts with the optimized paths in [`crate::classes`]
//! and [`crate::structure`]: classes by conjugating with every element,
//! class products as full double products, centralizers by testing every
//! element against every member, cores as intersections of all conjugates,
//! derived subgroups as closures of all commutators, and `dl(G/N)` on an
//! explicit quotient. They back failure confirmation in the theorem checks
//! and the equivalence checks.

use crate::error::Result;
use crate::group::{Elem, ElementSet, Group, Subgroup};
use crate::structure::{quotient, DerivedLength};

pub fn class(g: &Group, a: Elem) -> ElementSet {
    let mut s = g.empty_set();
    for x in g.elements() {
        s.insert(g.conjugate(a, x));
    }
    s
}

/// Number of distinct classes meeting `x`, classes computed by [`class`].
pub fn count_classes_in(g: &Group, x: &ElementSet) -> usize {
    let mut seen = g.empty_set();
    let mut count = 0;
    for a in x.iter() {
        if !seen.contains(a) {
            seen.union_with(&class(g, a));
            count += 1;
        }
    }
    count
}

/// `η(A A⁻¹)` from the full double product.
pub fn eta_aa_inv(g: &Group, a: Elem) -> usize {
    let c = class(g, a);
    let mut prod = g.empty_set();
    for x in c.iter() {
        for y in c.iter() {
            prod.insert(g.mul(x, g.inv(y)));
        }
    }
    count_classes_in(g, &prod)
}

/// `a^G · b^G` from all `|A|·|B|` products.
pub fn class_product(g: &Group, a: Elem, b: Elem) -> ElementSet {
    let (ca, cb) = (class(g, a), class(g, b));
    let mut out = g.empty_set();
    for x in ca.iter() {
        for y in cb.iter() {
            out.insert(g.mul(x, y));
        }
    }
    out
}

pub fn centralizer_of_set(g: &Group, x: &ElementSet) -> ElementSet {
    let mut s = g.empty_set();
    for h in g.elements() {
        if x.iter().all(|a| g.conjugate(a, h) == a) {
            s.insert(h);
        }
    }
    s
}

/// `∩_{g ∈ G} H^g`.
pub fn core(g: &Group, h: &ElementSet) -> ElementSet {
    let mut s = h.clone();
    for x in g.elements() {
        let mut conj = g.empty_set();
        for y in h.iter() {
            conj.insert(g.conjugate(y, x));
        }
        s.intersect_with(&conj);
    }
    s
}

/// Closure of `{[x, y] : x, y ∈ H}`.
pub fn derived_subgroup(g: &Group, h: &ElementSet) -> ElementSet {
    let mut comms = Vec::new();
    for x in h.iter() {
        for y in h.iter() {
            comms.push(g.commutator(x, y));
        }
    }
    g.closure(comms).into_set()
}

pub fn derived_length(g: &Group) -> DerivedLength {
    let mut d = g.full_set();
    let mut steps = 0;
    while d.len() > 1 {
        let next = derived_subgroup(g, &d);
        if next.len() == d.len() {
            return DerivedLength::NotSolvable;
        }
        d = next;
        steps += 1;
    }
    DerivedLength::Solvable(steps)
}

/// `dl(G/N)` computed on the quotient group.
pub fn derived_length_mod(g: &Group, n: &Subgroup) -> Result<DerivedLength> {
    let q = quotient(g, n)?;
    Ok(derived_length(&q.group))
}
