//! The built-in group corpus.

use crate::constructions::{GroupSpec, DEFAULT_MAX_ORDER};

/// Largest order of a pairwise direct product in the corpus.
pub const PRODUCT_ORDER_LIMIT: usize = 200;

fn base_members() -> Vec<GroupSpec> {
    let mut v: Vec<GroupSpec> = (1..=30).map(GroupSpec::cyclic).collect();
    v.extend((1..=15).map(GroupSpec::dihedral));
    v.push(GroupSpec::named("quaternion8", None, None));
    v.push(GroupSpec::prime_family("extraspecial_p3", 3));
    v.push(GroupSpec::symmetric(3));
    v.push(GroupSpec::prime_family("frobenius", 5));
    v
}

/// The supersolvable corpus: cyclic groups up to order 30, dihedral groups
/// up to order 30, `Q8`, the extraspecial group of order 27, `S3`, the
/// Frobenius group of order 20, and every direct product of two nontrivial
/// members (unordered, repetition allowed) of order at most
/// [`PRODUCT_ORDER_LIMIT`].
pub fn supersolvable_corpus() -> Vec<GroupSpec> {
    let base = base_members();
    let orders: Vec<usize> = base
        .iter()
        .map(|s| {
            s.build(DEFAULT_MAX_ORDER)
                .expect("corpus member builds")
                .order()
        })
        .collect();
    let mut out = base.clone();
    for i in 0..base.len() {
        for j in i..base.len() {
            let (a, b) = (orders[i], orders[j]);
            if a > 1 && b > 1 && a * b <= PRODUCT_ORDER_LIMIT {
                out.push(GroupSpec::direct(vec![base[i].clone(), base[j].clone()]));
            }
        }
    }
    out
}

/// [`supersolvable_corpus`] plus `S4` and `A4`.
pub fn standard_corpus() -> Vec<GroupSpec> {
    let mut v = supersolvable_corpus();
    v.push(GroupSpec::symmetric(4));
    v.push(GroupSpec::alternating(4));
    v
}
