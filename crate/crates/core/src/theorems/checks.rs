use std::collections::HashSet;

use crate::classes::{
    all_classes, class_product_eta, eta, eta_aa_inv, invariant_closure, orbit_under, partition,
};
use crate::group::{Elem, Group, Subgroup};
use crate::naive;
use crate::structure::{
    center_of, centralizer, centralizer_of_set, cn_subgroup, core, core_in, derived_subgroup,
    minimal_normal_subgroups, quotient, relative_derived_length, second_center,
    subgroups_exhaustive, DerivedLength,
};

use super::report::{ReportBuilder, VerificationReport, Witness};
use super::{Analysis, DerivedCache, ALL_PAIRS_LIMIT, EXHAUSTIVE_LIMIT};

/// Witness encoding of a derived length; `-1` stands for a non-solvable section.
fn dl_value(d: DerivedLength) -> i64 {
    d.value().map_or(-1, |v| v as i64)
}

fn bound(eta: usize) -> DerivedLength {
    DerivedLength::Solvable(2 * eta - 1)
}

fn is_abelian_subgroup(g: &Group, h: &Subgroup) -> bool {
    let gens = h.gens();
    gens.iter()
        .enumerate()
        .all(|(i, &x)| gens[i + 1..].iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
}

fn is_cyclic_subgroup(g: &Group, h: &Subgroup) -> bool {
    h.iter().any(|x| g.element_order(x) == h.order())
}

/// For `a, b ∈ Z₂(G)`: `C_G(a^G) ∩ C_G(b^G) ⊇ [G,G]` and `dl(G/C_G(a^G)) ≤ 1`.
pub fn check_theorem_a(an: &Analysis<'_>) -> VerificationReport {
    let g = an.group();
    let mut rb = ReportBuilder::new("theorem_A", g.label());
    let z2 = second_center(g);
    if z2.is_trivial() {
        return rb.skip_all("Z2(G) is trivial");
    }
    rb.scope(format!("all pairs a, b in Z2(G), |Z2(G)| = {}", z2.order()));
    let part = partition(g);
    let cc = an.class_centralizers();
    let derived = derived_subgroup(g, an.whole()).expect("same group");
    let mut cache = DerivedCache::new(g);
    let z2_elems: Vec<Elem> = z2.iter().collect();
    let dls: Vec<Option<DerivedLength>> = (0..part.len())
        .map(|ci| {
            z2.contains(part.classes()[ci].representative())
                .then(|| cache.dl(an.whole(), &cc[ci]))
        })
        .collect();
    for &a in &z2_elems {
        let ia = part.class_index(a);
        let dl_a = dls[ia].expect("Z2 is a union of classes");
        for &b in &z2_elems {
            let ib = part.class_index(b);
            let inter = cc[ia].set().intersection(cc[ib].set());
            let contains = derived.set().is_subset(&inter);
            rb.check(contains && dl_a <= DerivedLength::Solvable(1), || {
                Witness::new("pair in Z2(G)")
                    .with("a", a)
                    .with("b", b)
                    .with("derived_in_intersection", contains as i64)
                    .with("dl", dl_value(dl_a))
            });
        }
    }
    rb.note(
        Witness::new("summary")
            .with("z2_order", z2.order())
            .with("derived_order", derived.order()),
    );
    rb.finish("")
}

/// Supersolvable `G`: `dl(G/C_G(A)) ≤ 2η(AA⁻¹) − 1` for every class `A`.
///
/// A violation is recomputed on the brute-force path before it is reported.
pub fn check_theorem_b(an: &Analysis<'_>) -> VerificationReport {
    let g = an.group();
    let mut rb = ReportBuilder::new("theorem_B", g.label());
    if !an.is_supersolvable() {
        return rb.skip_all("not supersolvable");
    }
    rb.scope("every conjugacy class");
    let cc = an.class_centralizers();
    let etas = an.eta_aa();
    let mut cache = DerivedCache::new(g);
    for (ci, class) in all_classes(g).iter().enumerate() {
        let rep = class.representative();
        let eta = etas[ci];
        let dl = cache.dl(an.whole(), &cc[ci]);
        let mut ok = dl <= bound(eta);
        let mut note = "class";
        if !ok {
            let n_eta = naive::eta_aa_inv(g, rep);
            let n_cent = naive::centralizer_of_set(g, class.members());
            let n_sub = Subgroup::new(g, n_cent).expect("centralizers are subgroups");
            let n_dl =
                naive::derived_length_mod(g, &n_sub).expect("centralizer of a class is normal");
            if n_dl <= bound(n_eta) {
                note = "class: optimized path disagrees with naive recomputation";
            } else {
                note = "class: violation confirmed by naive recomputation";
            }
            ok = false;
        }
        rb.record(
            ok,
            Witness::new(note)
                .with("rep", rep)
                .with("class_size", class.len())
                .with("eta_aa", eta)
                .with("dl", dl_value(dl))
                .with("bound", 2 * eta as i64 - 1),
        );
    }
    rb.finish("")
}

/// Supersolvable `G`, classes with `AB ∩ Z(G) ≠ ∅`: `dl(G/C_G(A)) ≤ 2η(AB) − 1`,
/// together with `η(AB) = η(AA⁻¹)`.
pub fn check_corollary_c(an: &Analysis<'_>) -> VerificationReport {
    let g = an.group();
    let mut rb = ReportBuilder::new("corollary_C", g.label());
    if !an.is_supersolvable() {
        return rb.skip_all("not supersolvable");
    }
    rb.scope("all class pairs (A, B) with AB meeting Z(G)");
    let classes = all_classes(g);
    let z = an.center();
    let cc = an.class_centralizers();
    let etas = an.eta_aa();
    let mut cache = DerivedCache::new(g);
    for (ia, ca) in classes.iter().enumerate() {
        let dl = cache.dl(an.whole(), &cc[ia]);
        for cb in classes {
            let (ab, eta_ab) =
                class_product_eta(g, ca.representative(), cb.representative()).expect("valid");
            if ab.is_disjoint(z.set()) {
                rb.skip_case("AB misses Z(G)");
                continue;
            }
            let same_eta = eta_ab == etas[ia];
            rb.check(same_eta && dl <= bound(eta_ab), || {
                Witness::new("class pair")
                    .with("a", ca.representative())
                    .with("b", cb.representative())
                    .with("eta_ab", eta_ab)
                    .with("eta_aa", etas[ia])
                    .with("dl", dl_value(dl))
                    .with("bound", 2 * eta_ab as i64 - 1)
            });
        }
    }
    rb.finish("no class pair with AB meeting Z(G)")
}

/// `a^N b^N = ab·[a,N]^b·[b,N]` as sets.
pub fn check_lemma_3_1(an: &Analysis<'_>) -> VerificationReport {
    let g = an.group();
    let mut rb = ReportBuilder::new("lemma_3_1", g.label());
    let normals = an.normals();
    let all_pairs = g.order() <= ALL_PAIRS_LIMIT;
    let a_range: Vec<Elem> = if all_pairs {
        g.elements().collect()
    } else {
        all_classes(g).iter().map(|c| c.representative()).collect()
    };
    rb.scope(format!(
        "{}; a over {}, b over all of G",
        normals.describe(),
        if all_pairs {
            "all of G"
        } else {
            "class representatives"
        }
    ));
    for (ni, n) in normals.subgroups.iter().enumerate() {
        let orbits: Vec<_> = g.elements().map(|x| orbit_under(g, x, n)).collect();
        let comms: Vec<_> = g
            .elements()
            .map(|x| g.commutator_set(x, n.set()).expect("nonempty"))
            .collect();
        for &a in &a_range {
            for b in g.elements() {
                let lhs = g.product_set(&orbits[a], &orbits[b]).expect("nonempty");
                let shifted = g
                    .translate_left(g.mul(a, b), &g.conjugate_set(&comms[a], b).expect("same"))
                    .expect("same");
                let rhs = g.product_set(&shifted, &comms[b]).expect("nonempty");
                rb.check(lhs == rhs, || {
                    Witness::new("a^N b^N != ab[a,N]^b[b,N]")
                        .with("normal_index", ni)
                        .with("normal_order", n.order())
                        .with("a", a)
                        .with("b", b)
                        .with("lhs_size", lhs.len())
                        .with("rhs_size", rhs.len())
                });
            }
        }
    }
    rb.finish("")
}

/// If `AB ⊆ ab·Z(N)` then `C_N(A) ∩ C_N(B) ⊇ [N,N]` and `dl(N/C_N(A)) ≤ 1`.
pub fn check_lemma_3_2(an: &Analysis<'_>) -> VerificationReport {
    let g = an.group();
    let mut rb = ReportBuilder::new("lemma_3_2", g.label());
    let normals = an.normals();
    rb.scope(format!("{}; all class pairs", normals.describe()));
    let classes = all_classes(g);
    let cc = an.class_centralizers();
    let mut cache = DerivedCache::new(g);
    let mut qualifying = 0usize;
    for (ni, n) in normals.subgroups.iter().enumerate() {
        let zn = center_of(g, n);
        let nn = derived_subgroup(g, n).expect("same group");
        let mut cn: Vec<Option<(Subgroup, DerivedLength)>> = vec![None; classes.len()];
        for (ia, ca) in classes.iter().enumerate() {
            for (ib, cb) in classes.iter().enumerate() {
                let (ab, _) =
                    class_product_eta(g, ca.representative(), cb.representative()).expect("valid");
                let p_inv = g.inv(ab.min().expect("nonempty"));
                if !ab.iter().all(|x| zn.contains(g.mul(p_inv, x))) {
                    rb.skip_case("AB not contained in one coset of Z(N)");
                    continue;
                }
                qualifying += 1;
                for i in [ia, ib] {
                    if cn[i].is_none() {
                        let sub = cc[i].intersect(g, n);
                        let dl = cache.dl(n, &sub);
                        cn[i] = Some((sub, dl));
                    }
                }
                let (cna, dla) = cn[ia].as_ref().unwrap();
                let (cnb, _) = cn[ib].as_ref().unwrap();
                let contains = nn.is_subgroup_of(cna) && nn.is_subgroup_of(cnb);
                let dla = *dla;
                rb.check(contains && dla <= DerivedLength::Solvable(1), || {
                    Witness::new("qualifying triple")
                        .with("normal_index", ni)
                        .with("normal_order", n.order())
                        .with("a", ca.representative())
                        .with("b", cb.representative())
                        .with("derived_centralizes", contains as i64)
                        .with("dl", dl_value(dla))
                });
            }
        }
    }
    rb.note(Witness::new("summary").with("qualifying_triples", qualifying));
    rb.finish("no (N, A, B) with AB inside a coset of Z(N)")
}

/// `C_N ⊇ C·N`, `C_N/N = C_{G/N}(aN)` and
/// `η(āā⁻¹ in G/N) + η((a^{C_N}(a⁻¹)^{C_N})^G) − 1 ≤ η(a^G(a⁻¹)^G)`.
pub fn check_lemma_4_2(an: &Analysis<'_>) -> VerificationReport {
    let g = an.group();
    let mut rb = ReportBuilder::new("lemma_4_2", g.label());
    let normals = an.normals();
    rb.scope(format!(
        "{}; every class representative",
        normals.describe()
    ));
    let classes = all_classes(g);
    let ec = an.element_centralizers();
    let etas = an.eta_aa();
    for (ni, n) in normals.subgroups.iter().enumerate() {
        let q = quotient(g, n).expect("family members are normal");
        for (ci, class) in classes.iter().enumerate() {
            let a = class.representative();
            let c = &ec[ci];
            let cn = cn_subgroup(g, a, n).expect("normal");
            let cn_contains = g
                .product_set(c.set(), n.set())
                .expect("nonempty")
                .is_subset(cn.set());
            let abar = q.project(a);
            let image_ok = q.project_set(cn.set()) == *centralizer(&q.group, abar).set();
            let eta_bar = eta_aa_inv(&q.group, abar).expect("valid");
            let orbit = orbit_under(g, a, &cn);
            let s = g
                .product_set(&orbit, &g.inverse_set(&orbit).expect("nonempty"))
                .expect("nonempty");
            let middle = eta(g, &invariant_closure(g, &s).expect("nonempty")).expect("invariant");
            let ineq = eta_bar + middle - 1 <= etas[ci];
            rb.check(cn_contains && image_ok && ineq, || {
                Witness::new("(N, a)")
                    .with("normal_index", ni)
                    .with("normal_order", n.order())
                    .with("a", a)
                    .with("cn_contains_cn", cn_contains as i64)
                    .with("image_is_centralizer", image_ok as i64)
                    .with("eta_quotient", eta_bar)
                    .with("eta_middle", middle)
                    .with("eta_aa", etas[ci])
            });
        }
    }
    rb.finish("")
}

/// `dl(core_G(H)/core_G(K)) ≤ dl(H/core_H(K))` for `K ≤ H`.
pub fn check_lemma_4_3(an: &Analysis<'_>) -> VerificationReport {
    let g = an.group();
    let mut rb = ReportBuilder::new("lemma_4_3", g.label());
    let subgroups = curated_subgroups(an);
    rb.scope(if g.order() <= EXHAUSTIVE_LIMIT {
        format!("all {} subgroups, all nested pairs", subgroups.len())
    } else {
        format!(
            "{} subgroups (G, 1, element centralizers, C_N, normal family), all nested pairs",
            subgroups.len()
        )
    });
    let cores: Vec<Subgroup> = subgroups
        .iter()
        .map(|h| core(g, h).expect("same group"))
        .collect();
    let mut cache = DerivedCache::new(g);
    for (hi, h) in subgroups.iter().enumerate() {
        for (ki, k) in subgroups.iter().enumerate() {
            if !k.is_subgroup_of(h) {
                continue;
            }
            let lhs = cache.dl(&cores[hi], &cores[ki]);
            let core_hk = core_in(g, h, k).expect("K inside H");
            let rhs = cache.dl(h, &core_hk);
            rb.check(lhs <= rhs, || {
                Witness::new("K <= H")
                    .with("h_order", h.order())
                    .with("k_order", k.order())
                    .with("h_min_gen", h.gens().first().copied().unwrap_or(0))
                    .with("k_min_gen", k.gens().first().copied().unwrap_or(0))
                    .with("lhs", dl_value(lhs))
                    .with("rhs", dl_value(rhs))
            });
        }
    }
    rb.finish("")
}

fn curated_subgroups(an: &Analysis<'_>) -> Vec<Subgroup> {
    let g = an.group();
    if g.order() <= EXHAUSTIVE_LIMIT {
        return subgroups_exhaustive(g);
    }
    let mut list = vec![an.whole().clone(), g.trivial_subgroup()];
    list.extend(an.element_centralizers().iter().cloned());
    list.extend(an.normals().subgroups.iter().cloned());
    for c in all_classes(g) {
        for n in &an.normals().subgroups {
            list.push(cn_subgroup(g, c.representative(), n).expect("normal"));
        }
    }
    let mut seen = HashSet::new();
    list.retain(|h| seen.insert(h.set().clone()));
    list
}

/// Abelian normal `N`: `dl(C_N/core_{C_N}(C)) ≤ dl(C_N/(C_N ∩ C_G(N))) + 1`,
/// and `≤ 2` when `N` is cyclic.
pub fn check_lemma_4_4(an: &Analysis<'_>) -> VerificationReport {
    let g = an.group();
    let mut rb = ReportBuilder::new("lemma_4_4", g.label());
    let normals = an.normals();
    rb.scope(format!(
        "abelian members of {}; every class representative",
        normals.describe()
    ));
    let classes = all_classes(g);
    let ec = an.element_centralizers();
    let mut cache = DerivedCache::new(g);
    for (ni, n) in normals.subgroups.iter().enumerate() {
        if !is_abelian_subgroup(g, n) {
            continue;
        }
        let cyclic = is_cyclic_subgroup(g, n);
        let cgn = centralizer_of_set(g, n.set()).expect("nonempty");
        for (ci, class) in classes.iter().enumerate() {
            let a = class.representative();
            let cn = cn_subgroup(g, a, n).expect("normal");
            let core_c = core_in(g, &cn, &ec[ci]).expect("C inside C_N");
            let lhs = cache.dl(&cn, &core_c);
            let h = cn.intersect(g, &cgn);
            let rhs = cache.dl(&cn, &h).plus(1);
            let eq4 = !cyclic || lhs <= DerivedLength::Solvable(2);
            rb.check(lhs <= rhs && eq4, || {
                Witness::new("(N, a)")
                    .with("normal_index", ni)
                    .with("normal_order", n.order())
                    .with("cyclic", cyclic as i64)
                    .with("a", a)
                    .with("lhs", dl_value(lhs))
                    .with("rhs", dl_value(rhs))
            });
        }
    }
    rb.finish("no abelian normal subgroup")
}

/// Minimal normal `N` with `η(āā⁻¹) = η(aa⁻¹)`: `N ⊆ C_G(a) = C_N` and
/// `dl(G/core_G(C_G(a))) = dl(Ḡ/core_Ḡ(C_Ḡ(ā)))`.
pub fn check_lemma_4_5(an: &Analysis<'_>) -> VerificationReport {
    let g = an.group();
    let mut rb = ReportBuilder::new("lemma_4_5", g.label());
    let mins = minimal_normal_subgroups(g);
    rb.scope(format!(
        "{} minimal normal subgroups of G; every class representative",
        mins.len()
    ));
    let classes = all_classes(g);
    let ec = an.element_centralizers();
    let etas = an.eta_aa();
    let mut cache = DerivedCache::new(g);
    for (ni, n) in mins.iter().enumerate() {
        let q = quotient(g, n).expect("normal");
        for (ci, class) in classes.iter().enumerate() {
            let a = class.representative();
            let abar = q.project(a);
            let eta_bar = eta_aa_inv(&q.group, abar).expect("valid");
            if eta_bar != etas[ci] {
                rb.skip_case("eta in G/N differs from eta in G");
                continue;
            }
            let c = &ec[ci];
            let inside = n.is_subgroup_of(c);
            let equal = cn_subgroup(g, a, n).expect("normal") == *c;
            let core_c = core(g, c).expect("same group");
            let dl_g = cache.dl(an.whole(), &core_c);
            let cq = centralizer(&q.group, abar);
            let core_q = core(&q.group, &cq).expect("same group");
            let dl_q = relative_derived_length(&q.group, &core_q).expect("cores are normal");
            rb.check(inside && equal && dl_g == dl_q, || {
                Witness::new("(N, a) with equal eta")
                    .with("normal_index", ni)
                    .with("normal_order", n.order())
                    .with("a", a)
                    .with("n_in_centralizer", inside as i64)
                    .with("centralizer_is_cn", equal as i64)
                    .with("dl_g", dl_value(dl_g))
                    .with("dl_quotient", dl_value(dl_q))
            });
        }
    }
    rb.finish("no (N, a) with equal eta")
}

/// `AB ∩ Z(G) ∋ z`: `η(AB) = η(AA⁻¹)` and `AB = (AA⁻¹)z` exactly.
pub fn check_lemma_5_1(an: &Analysis<'_>) -> VerificationReport {
    let g = an.group();
    let mut rb = ReportBuilder::new("lemma_5_1", g.label());
    rb.scope("all class pairs (A, B) with AB meeting Z(G)");
    let classes = all_classes(g);
    let z = an.center();
    let aa: Vec<_> = classes
        .iter()
        .map(|c| {
            let r = c.representative();
            class_product_eta(g, r, g.inv(r)).expect("valid")
        })
        .collect();
    for (ia, ca) in classes.iter().enumerate() {
        for cb in classes {
            let (ab, eta_ab) =
                class_product_eta(g, ca.representative(), cb.representative()).expect("valid");
            let Some(zz) = ab.intersection(z.set()).min() else {
                rb.skip_case("AB misses Z(G)");
                continue;
            };
            let translated = g.translate_right(&aa[ia].0, zz).expect("same group");
            let same_eta = eta_ab == aa[ia].1;
            let same_set = translated == ab;
            rb.check(same_eta && same_set, || {
                Witness::new("class pair")
                    .with("a", ca.representative())
                    .with("b", cb.representative())
                    .with("z", zz)
                    .with("eta_ab", eta_ab)
                    .with("eta_aa", aa[ia].1)
                    .with("translation_identity", same_set as i64)
            });
        }
    }
    rb.finish("no class pair with AB meeting Z(G)")
}
