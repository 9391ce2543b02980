//! Cross-checks against an independent permutation-group implementation
//! and against the brute-force module.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use classprod::classes::{all_classes, class_product_eta, eta_aa_inv};
use classprod::constructions::{
    alternating, dihedral, example21_groups, extraspecial_p3, quaternion8, symmetric,
    DEFAULT_MAX_ORDER,
};
use classprod::naive;
use classprod::structure::{
    centralizer, centralizer_of_set, core, derived_subgroup, normal_subgroups_exhaustive,
    relative_derived_length, subgroups_exhaustive,
};
use classprod::theorems::eta_in_subgroup;
use classprod::{Group, Subgroup};

type Perm = Vec<usize>;

/// Apply `p` then `q`.
fn compose(p: &Perm, q: &Perm) -> Perm {
    p.iter().map(|&i| q[i]).collect()
}

fn inverse(p: &Perm) -> Perm {
    let mut r = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        r[j] = i;
    }
    r
}

/// A permutation group held as a sorted element list.
struct PermGroup {
    elems: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl PermGroup {
    fn generated(gens: &[Perm]) -> PermGroup {
        let id: Perm = (0..gens[0].len()).collect();
        let mut set = BTreeSet::from([id]);
        let mut frontier: Vec<Perm> = set.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for s in gens {
                let y = compose(&x, s);
                if set.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let elems: Vec<Perm> = set.into_iter().collect();
        let index = elems
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        PermGroup { elems, index }
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&compose(&self.elems[a], &self.elems[b])]
    }

    fn inv(&self, a: usize) -> usize {
        self.index[&inverse(&self.elems[a])]
    }

    fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    fn class_in(&self, a: usize, within: &BTreeSet<usize>) -> BTreeSet<usize> {
        within.iter().map(|&g| self.conj(a, g)).collect()
    }

    fn all(&self) -> BTreeSet<usize> {
        (0..self.elems.len()).collect()
    }

    /// Number of `within`-classes meeting `x`.
    fn count_classes(&self, x: &BTreeSet<usize>, within: &BTreeSet<usize>) -> usize {
        let mut seen = BTreeSet::new();
        let mut n = 0;
        for &a in x {
            if !seen.contains(&a) {
                seen.extend(self.class_in(a, within));
                n += 1;
            }
        }
        n
    }

    /// `η(a^H (a⁻¹)^H)` with classes taken inside `within`.
    fn eta_aa(&self, a: usize, within: &BTreeSet<usize>) -> usize {
        let c = self.class_in(a, within);
        let prod: BTreeSet<usize> = c
            .iter()
            .flat_map(|&x| c.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.mul(x, self.inv(y)))
            .collect();
        self.count_classes(&prod, within)
    }

    fn closure(&self, gens: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let gens: Vec<usize> = gens.into_iter().collect();
        let id = self.index[&(0..self.elems[0].len()).collect::<Perm>()];
        let mut set = BTreeSet::from([id]);
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for &s in &gens {
                let y = self.mul(x, s);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set
    }

    fn derived(&self, h: &BTreeSet<usize>) -> BTreeSet<usize> {
        let comms: Vec<usize> = h
            .iter()
            .flat_map(|&x| {
                h.iter()
                    .map(move |&y| self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y)))
            })
            .collect();
        self.closure(comms)
    }

    /// Least `i` with `G^(i) ⊆ n`, or `None`.
    fn dl_mod(&self, n: &BTreeSet<usize>) -> Option<usize> {
        let mut d = self.all();
        for i in 0.. {
            if d.is_subset(n) {
                return Some(i);
            }
            let next = self.derived(&d);
            if next == d {
                return None;
            }
            d = next;
        }
        unreachable!()
    }

    /// Multiset of `(class size, η(AA⁻¹), dl(G/C_G(A)))` over classes.
    fn class_profile(&self) -> BTreeMap<(usize, usize, Option<usize>), usize> {
        let all = self.all();
        let mut seen = BTreeSet::new();
        let mut out = BTreeMap::new();
        for a in 0..self.elems.len() {
            if seen.contains(&a) {
                continue;
            }
            let c = self.class_in(a, &all);
            seen.extend(c.iter().copied());
            let cent: BTreeSet<usize> = all
                .iter()
                .copied()
                .filter(|&g| c.iter().all(|&x| self.conj(x, g) == x))
                .collect();
            *out.entry((c.len(), self.eta_aa(a, &all), self.dl_mod(&cent)))
                .or_default() += 1;
        }
        out
    }
}

fn library_profile(g: &Group) -> BTreeMap<(usize, usize, Option<usize>), usize> {
    let mut out = BTreeMap::new();
    for c in all_classes(g) {
        let cent = centralizer_of_set(g, c.members()).unwrap();
        let dl = relative_derived_length(g, &cent).unwrap().value();
        let eta = eta_aa_inv(g, c.representative()).unwrap();
        *out.entry((c.len(), eta, dl)).or_default() += 1;
    }
    out
}

fn cycle(n: usize, cyc: &[usize]) -> Perm {
    let mut p: Perm = (0..n).collect();
    for w in 0..cyc.len() {
        p[cyc[w]] = cyc[(w + 1) % cyc.len()];
    }
    p
}

#[test]
fn class_profiles_match_permutation_oracle() {
    let s3 = PermGroup::generated(&[cycle(3, &[0, 1, 2]), cycle(3, &[0, 1])]);
    let s4 = PermGroup::generated(&[cycle(4, &[0, 1, 2, 3]), cycle(4, &[0, 1])]);
    let a4 = PermGroup::generated(&[cycle(4, &[0, 1, 2]), cycle(4, &[1, 2, 3])]);
    let d4 = PermGroup::generated(&[cycle(4, &[0, 1, 2, 3]), cycle(4, &[1, 3])]);
    let cases = [
        (s3, symmetric(3).unwrap()),
        (s4, symmetric(4).unwrap()),
        (a4, alternating(4).unwrap()),
        (d4, dihedral(4).unwrap()),
    ];
    for (oracle, g) in cases {
        assert_eq!(oracle.elems.len(), g.order());
        assert_eq!(oracle.class_profile(), library_profile(&g), "{}", g.label());
    }
}

#[test]
fn s4_four_cycle_values() {
    let s4 = PermGroup::generated(&[cycle(4, &[0, 1, 2, 3]), cycle(4, &[0, 1])]);
    let profile = s4.class_profile();
    // the 4-cycles and the transpositions both have 6 members
    assert_eq!(profile.get(&(6, 3, Some(3))), Some(&2));
    let lib = library_profile(&symmetric(4).unwrap());
    assert_eq!(lib.get(&(6, 3, Some(3))), Some(&2));
}

/// Upper unitriangular 3×3 matrices over `F_p` acting on `F_p³` by the right,
/// as permutations of the `p³` vectors.
fn heisenberg_perms(p: usize) -> PermGroup {
    let idx = |v: [usize; 3]| (v[0] * p + v[1]) * p + v[2];
    let mat = |m: [[usize; 3]; 3]| -> Perm {
        let mut out = vec![0; p * p * p];
        for a in 0..p {
            for b in 0..p {
                for c in 0..p {
                    let v = [a, b, c];
                    let w: Vec<usize> = (0..3)
                        .map(|j| (0..3).map(|i| v[i] * m[i][j]).sum::<usize>() % p)
                        .collect();
                    out[idx(v)] = idx([w[0], w[1], w[2]]);
                }
            }
        }
        out
    };
    PermGroup::generated(&[
        mat([[1, 1, 0], [0, 1, 0], [0, 0, 1]]),
        mat([[1, 0, 0], [0, 1, 1], [0, 0, 1]]),
    ])
}

#[test]
fn extraspecial_eta_against_matrix_oracle() {
    for p in [3, 5] {
        let o = heisenberg_perms(p);
        assert_eq!(o.elems.len(), p * p * p);
        let all = o.all();
        let a = (0..o.elems.len())
            .find(|&x| o.class_in(x, &all).len() > 1)
            .unwrap();
        let h: BTreeSet<usize> = all
            .iter()
            .copied()
            .filter(|&g| o.mul(a, g) == o.mul(g, a))
            .collect();
        assert_eq!((o.eta_aa(a, &h), o.eta_aa(a, &all)), (1, p));

        let g = extraspecial_p3(p, DEFAULT_MAX_ORDER).unwrap();
        let z = classprod::structure::center(&g);
        let la = g.elements().find(|&x| !z.contains(x)).unwrap();
        let lh = centralizer(&g, la);
        assert_eq!(eta_in_subgroup(&g, &lh, la).unwrap(), o.eta_aa(a, &h));
        assert_eq!(eta_aa_inv(&g, la).unwrap(), o.eta_aa(a, &all));
    }
}

/// `C_p^p ⋊ AGL(1, p)` acting on `F_p × F_p`: a base function `f` sends
/// `(x, y)` to `(x, y + f(x))`, an affine map `μ` sends `(x, y)` to `(μx, y)`.
#[test]
fn wreath_example_against_permutation_oracle() {
    for (p, expected) in [(2usize, (2usize, 2usize)), (3, (3, 2))] {
        let pt = |x: usize, y: usize| x * p + y;
        let perm = |f: &dyn Fn(usize, usize) -> (usize, usize)| -> Perm {
            let mut out = vec![0; p * p];
            for x in 0..p {
                for y in 0..p {
                    let (u, v) = f(x, y);
                    out[pt(x, y)] = pt(u, v);
                }
            }
            out
        };
        let base = perm(&|x, y| (x, if x == 0 { (y + 1) % p } else { y }));
        let shift = perm(&|x, y| ((x + 1) % p, y));
        let mut gens = vec![base.clone(), shift.clone()];
        if p > 2 {
            gens.push(perm(&|x, y| ((2 * x) % p, y)));
        }
        let o = PermGroup::generated(&gens);
        assert_eq!(o.elems.len(), p.pow(p as u32) * p * (p - 1));
        let h = o.closure([o.index[&base], o.index[&shift]]);
        assert_eq!(h.len(), p.pow(p as u32) * p);
        let a = o.index[&base];
        let got = (o.eta_aa(a, &h), o.eta_aa(a, &o.all()));
        assert_eq!(got, expected);

        let ex = example21_groups(p, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(ex.g.order(), o.elems.len());
        assert_eq!(ex.h.order(), h.len());
        let lib = (
            eta_in_subgroup(&ex.g, &ex.h, ex.a).unwrap(),
            eta_aa_inv(&ex.g, ex.a).unwrap(),
        );
        assert_eq!(lib, expected);
    }
}

#[test]
fn subgroup_counts_against_permutation_oracle() {
    let s4 = PermGroup::generated(&[cycle(4, &[0, 1, 2, 3]), cycle(4, &[0, 1])]);
    // every subgroup of S4 is generated by at most two elements
    let n = s4.elems.len();
    let mut subs = BTreeSet::new();
    for x in 0..n {
        for y in x..n {
            subs.insert(s4.closure([x, y]));
        }
    }
    let all = s4.all();
    let normal = subs
        .iter()
        .filter(|h| {
            h.iter()
                .all(|&x| all.iter().all(|&g| h.contains(&s4.conj(x, g))))
        })
        .count();
    let g = symmetric(4).unwrap();
    assert_eq!(subgroups_exhaustive(&g).len(), subs.len());
    assert_eq!(normal_subgroups_exhaustive(&g).len(), normal);
}

fn small_groups() -> Vec<Group> {
    vec![
        symmetric(3).unwrap(),
        symmetric(4).unwrap(),
        alternating(4).unwrap(),
        dihedral(4).unwrap(),
        dihedral(6).unwrap(),
        quaternion8().unwrap(),
        extraspecial_p3(3, DEFAULT_MAX_ORDER).unwrap(),
        classprod::constructions::frobenius(5).unwrap(),
    ]
}

#[test]
fn optimized_paths_match_naive() {
    for g in small_groups() {
        for c in all_classes(&g) {
            let a = c.representative();
            assert_eq!(*c.members(), naive::class(&g, a));
            assert_eq!(eta_aa_inv(&g, a).unwrap(), naive::eta_aa_inv(&g, a));
            let cent = centralizer_of_set(&g, c.members()).unwrap();
            assert_eq!(*cent.set(), naive::centralizer_of_set(&g, c.members()));
            assert_eq!(
                *core(&g, &centralizer(&g, a)).unwrap().set(),
                *cent.set(),
                "{}",
                g.label()
            );
        }
        if g.order() <= 24 {
            for a in g.elements() {
                for b in g.elements() {
                    let (set, eta) = class_product_eta(&g, a, b).unwrap();
                    let naive_set = naive::class_product(&g, a, b);
                    assert_eq!(set, naive_set);
                    assert_eq!(eta, naive::count_classes_in(&g, &naive_set));
                }
            }
            for h in subgroups_exhaustive(&g) {
                assert_eq!(*core(&g, &h).unwrap().set(), naive::core(&g, h.set()));
                assert_eq!(
                    *derived_subgroup(&g, &h).unwrap().set(),
                    naive::derived_subgroup(&g, h.set())
                );
            }
        }
        for n in normal_subgroups_exhaustive_or_closures(&g) {
            assert_eq!(
                relative_derived_length(&g, &n).unwrap(),
                naive::derived_length_mod(&g, &n).unwrap()
            );
        }
    }
}

fn normal_subgroups_exhaustive_or_closures(g: &Group) -> Vec<Subgroup> {
    if g.order() <= 24 {
        normal_subgroups_exhaustive(g)
    } else {
        classprod::structure::element_normal_closures(g)
    }
}
