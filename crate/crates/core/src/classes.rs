//! Conjugacy classes, G-invariant sets, class products and the class-count
//! function η.

use fixedbitset::FixedBitSet;

use crate::error::{GroupError, Result};
use crate::group::{Elem, ElementSet, Group, Subgroup};

/// A single conjugation orbit, named by its least element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    members: ElementSet,
    representative: Elem,
}

impl ConjugacyClass {
    pub fn representative(&self) -> Elem {
        self.representative
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }
}

/// The partition of a group into conjugacy classes, ordered by representative.
#[derive(Debug, Clone)]
pub struct ClassPartition {
    class_of: Vec<u32>,
    classes: Vec<ConjugacyClass>,
}

impl ClassPartition {
    fn compute(g: &Group) -> ClassPartition {
        let n = g.order();
        let gens = g.generators();
        let mut class_of = vec![u32::MAX; n];
        let mut classes = Vec::new();
        for a in g.elements() {
            if class_of[a] != u32::MAX {
                continue;
            }
            let idx = classes.len() as u32;
            let mut members = g.empty_set();
            let mut queue = vec![a];
            class_of[a] = idx;
            members.insert(a);
            while let Some(x) = queue.pop() {
                for &s in gens {
                    let y = g.conjugate(x, s);
                    if class_of[y] == u32::MAX {
                        class_of[y] = idx;
                        members.insert(y);
                        queue.push(y);
                    }
                }
            }
            classes.push(ConjugacyClass {
                members,
                representative: a,
            });
        }
        ClassPartition { class_of, classes }
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_index(&self, a: Elem) -> usize {
        self.class_of[a] as usize
    }

    pub fn class_of(&self, a: Elem) -> &ConjugacyClass {
        &self.classes[self.class_index(a)]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

/// Cached class partition of `g`.
pub fn partition(g: &Group) -> &ClassPartition {
    g.class_cache().get_or_init(|| ClassPartition::compute(g))
}

pub fn all_classes(g: &Group) -> &[ConjugacyClass] {
    partition(g).classes()
}

/// `a^G`.
pub fn conjugacy_class(g: &Group, a: Elem) -> Result<&ConjugacyClass> {
    g.check_index(a)?;
    Ok(partition(g).class_of(a))
}

/// Class indices met by `x`, plus whether every met class lies inside `x`.
fn classes_met(g: &Group, x: &ElementSet) -> Result<(Vec<usize>, bool)> {
    if x.group_id() != g.id() {
        return Err(GroupError::AmbientMismatch);
    }
    if x.is_empty() {
        return Err(GroupError::EmptySet);
    }
    let part = partition(g);
    let mut met = FixedBitSet::with_capacity(part.len());
    for a in x.iter() {
        met.insert(part.class_index(a));
    }
    let met: Vec<usize> = met.ones().collect();
    let whole = met.iter().all(|&c| part.classes[c].members.is_subset(x));
    Ok((met, whole))
}

/// Whether `x^g = x` for all `g`, i.e. `x` is a union of classes.
pub fn is_g_invariant(g: &Group, x: &ElementSet) -> Result<bool> {
    classes_met(g, x).map(|(_, whole)| whole)
}

/// Number of classes whose union is the G-invariant set `x`.
pub fn eta(g: &Group, x: &ElementSet) -> Result<usize> {
    match classes_met(g, x)? {
        (met, true) => Ok(met.len()),
        (_, false) => Err(GroupError::NotInvariant),
    }
}

/// The classes whose union is `x`, ordered by representative.
pub fn decompose<'g>(g: &'g Group, x: &ElementSet) -> Result<Vec<&'g ConjugacyClass>> {
    match classes_met(g, x)? {
        (met, true) => {
            let part = partition(g);
            Ok(met.into_iter().map(|c| &part.classes[c]).collect())
        }
        (_, false) => Err(GroupError::NotInvariant),
    }
}

/// Smallest G-invariant set containing `x`: the union of the classes it meets.
pub fn invariant_closure(g: &Group, x: &ElementSet) -> Result<ElementSet> {
    let (met, _) = classes_met(g, x)?;
    let part = partition(g);
    let mut out = g.empty_set();
    for c in met {
        out.union_with(&part.classes[c].members);
    }
    Ok(out)
}

/// `a^G · b^G` and its η.
///
/// Uses `a^G b^G = ∪_{x ∈ a^G} (x b)^G`, which touches `|a^G|` products
/// instead of `|a^G|·|b^G|`.
pub fn class_product_eta(g: &Group, a: Elem, b: Elem) -> Result<(ElementSet, usize)> {
    g.check_index(a)?;
    g.check_index(b)?;
    let part = partition(g);
    let mut met = FixedBitSet::with_capacity(part.len());
    for x in part.class_of(a).members.iter() {
        met.insert(part.class_index(g.mul(x, b)));
    }
    let mut out = g.empty_set();
    let mut count = 0;
    for c in met.ones() {
        out.union_with(&part.classes[c].members);
        count += 1;
    }
    Ok((out, count))
}

/// `η(A A⁻¹)` for the class `A` of `a`.
pub fn eta_aa_inv(g: &Group, a: Elem) -> Result<usize> {
    class_product_eta(g, a, g.inv(a)).map(|(_, e)| e)
}

/// Orbit of `a` under conjugation by the subgroup `h`, i.e. `a^H`.
pub fn orbit_under(g: &Group, a: Elem, h: &Subgroup) -> ElementSet {
    let mut orbit = g.singleton(a);
    let mut queue = vec![a];
    while let Some(x) = queue.pop() {
        for &s in h.gens() {
            let y = g.conjugate(x, s);
            if !orbit.contains(y) {
                orbit.insert(y);
                queue.push(y);
            }
        }
    }
    orbit
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        cyclic, extraspecial_p3, quaternion8, symmetric, DEFAULT_MAX_ORDER,
    };

    fn transposition(g: &Group) -> Elem {
        g.elements().find(|&x| g.element_order(x) == 2).unwrap()
    }

    #[test]
    fn identity_class_is_singleton() {
        let g = symmetric(4).unwrap();
        let c = conjugacy_class(&g, 0).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c.representative(), 0);
    }

    #[test]
    fn abelian_classes_are_singletons() {
        let g = cyclic(6).unwrap();
        assert_eq!(all_classes(&g).len(), 6);
        assert!(all_classes(&g).iter().all(|c| c.len() == 1));
    }

    #[test]
    fn s3_transposition_class() {
        let g = symmetric(3).unwrap();
        let t = transposition(&g);
        let c = conjugacy_class(&g, t).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.members().iter().all(|x| g.element_order(x) == 2));
    }

    #[test]
    fn s4_class_sizes() {
        let g = symmetric(4).unwrap();
        let mut sizes: Vec<usize> = all_classes(&g).iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn extraspecial_classes() {
        let g = extraspecial_p3(3, DEFAULT_MAX_ORDER).unwrap();
        let cl = all_classes(&g);
        assert_eq!(cl.len(), 11);
        assert_eq!(cl.iter().filter(|c| c.len() == 1).count(), 3);
        assert_eq!(cl.iter().filter(|c| c.len() == 3).count(), 8);
    }

    #[test]
    fn invariance_and_eta() {
        let g = symmetric(3).unwrap();
        let t = transposition(&g);
        assert!(!is_g_invariant(&g, &g.singleton(t)).unwrap());
        assert_eq!(eta(&g, &g.singleton(t)), Err(GroupError::NotInvariant));
        assert_eq!(eta(&g, &g.singleton(0)), Ok(1));
        assert_eq!(eta(&g, &g.empty_set()), Err(GroupError::EmptySet));
        let a = conjugacy_class(&g, t).unwrap().members().clone();
        let aa = g.product_set(&a, &g.inverse_set(&a).unwrap()).unwrap();
        assert!(is_g_invariant(&g, &aa).unwrap());
        assert_eq!(eta(&g, &aa), Ok(2));
        let parts = decompose(&g, &aa).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].representative(), 0);
        assert_eq!(parts[1].len(), 2);
    }

    #[test]
    fn quaternion_i_class() {
        let g = quaternion8().unwrap();
        let (i, minus_i) = (2, 3);
        let a = g.set_of([i, minus_i]).unwrap();
        assert_eq!(conjugacy_class(&g, i).unwrap().members(), &a);
        let x = g.product_set(&a, &g.inverse_set(&a).unwrap()).unwrap();
        assert_eq!(x, g.set_of([0, 1]).unwrap());
        let parts = decompose(&g, &x).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn class_product_matches_naive_on_s4() {
        let g = symmetric(4).unwrap();
        for a in all_classes(&g) {
            for b in all_classes(&g) {
                let naive = g.product_set(a.members(), b.members()).unwrap();
                let (fast, e) =
                    class_product_eta(&g, a.representative(), b.representative()).unwrap();
                assert_eq!(fast, naive);
                assert_eq!(eta(&g, &naive).unwrap(), e);
            }
        }
    }

    #[test]
    fn extraspecial_eta_is_p() {
        let g = extraspecial_p3(3, DEFAULT_MAX_ORDER).unwrap();
        let a = 1 + 3; // y = 1, z = 1: not central
        assert_eq!(eta_aa_inv(&g, a).unwrap(), 3);
        assert_eq!(eta_aa_inv(&g, 1).unwrap(), 1);
    }

    #[test]
    fn orbit_under_whole_group_is_class() {
        let g = symmetric(4).unwrap();
        let whole = g.whole();
        for c in all_classes(&g) {
            assert_eq!(&orbit_under(&g, c.representative(), &whole), c.members());
        }
    }
}
